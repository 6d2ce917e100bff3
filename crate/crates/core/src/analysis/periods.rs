use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_LLOYD_ITERATIONS: usize = 100;

/// Per-instance analysis output feeding the timeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineRecord {
    pub id: usize,
    pub midpoint: f64,
    /// MDS coordinates; the first one is the plotted axis.
    pub mds: Vec<f64>,
    pub period: usize,
    pub cluster: Option<usize>,
    pub hour_of_day: u32,
    /// 0 is Monday.
    pub day_of_week: u32,
}

/// Consecutive run of records `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSegment {
    pub index: usize,
    pub start: usize,
    pub end: usize,
    /// Shorter than the period length (only ever the last segment).
    pub partial: bool,
}

impl PeriodSegment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

pub fn split_periods(record_count: usize, period_length: usize) -> Result<Vec<PeriodSegment>> {
    if period_length == 0 {
        return Err(Error::InvalidParameter("period length must be at least 1".into()));
    }
    Ok((0..record_count)
        .step_by(period_length)
        .enumerate()
        .map(|(index, start)| {
            let end = (start + period_length).min(record_count);
            PeriodSegment { index, start, end, partial: end - start < period_length }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeans {
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    /// Inertia after each assignment step.
    pub inertia_history: Vec<f64>,
}

impl KMeans {
    pub fn inertia(&self) -> f64 {
        self.inertia_history.last().copied().unwrap_or(0.0)
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(point, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// Lloyd's algorithm with k-means++ seeding; stops when assignments repeat or after
/// 100 iterations. Empty clusters keep their previous centroid.
pub fn kmeans(points: &[Vec<f64>], k: usize, seed: u64) -> Result<KMeans> {
    if k == 0 || k > points.len() {
        return Err(Error::TooManyClusters { k, available: points.len() });
    }
    let dim = points[0].len();
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch(dim, p.len()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = vec![points[rng.gen_range(0..points.len())].clone()];
    while centroids.len() < k {
        let weights: Vec<f64> = points.iter().map(|p| nearest(p, &centroids).1).collect();
        let total: f64 = weights.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut chosen = points.len() - 1;
            for (i, w) in weights.iter().enumerate() {
                if target < *w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        } else {
            rng.gen_range(0..points.len())
        };
        centroids.push(points[pick].clone());
    }

    let mut assignments: Vec<usize> = Vec::new();
    let mut inertia_history = Vec::new();
    for _ in 0..MAX_LLOYD_ITERATIONS {
        let mut inertia = 0.0;
        let next: Vec<usize> = points
            .iter()
            .map(|p| {
                let (c, d) = nearest(p, &centroids);
                inertia += d;
                c
            })
            .collect();
        inertia_history.push(inertia);
        if next == assignments {
            break;
        }
        assignments = next;

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in points.iter().zip(&assignments) {
            counts[c] += 1;
            for (s, x) in sums[c].iter_mut().zip(p) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
    }
    Ok(KMeans { assignments, centroids, inertia_history })
}

/// Clusters the full segments by their sequence of first MDS coordinates.
///
/// `assignments[i]` belongs to the `i`-th full segment; partial segments are skipped.
pub fn kmeans_periods(records: &[TimelineRecord], segments: &[PeriodSegment], k: usize, seed: u64) -> Result<KMeans> {
    let features = period_features(records, segments);
    if k > features.len() {
        return Err(Error::TooManyClusters { k, available: features.len() });
    }
    kmeans(&features, k, seed)
}

pub fn period_features(records: &[TimelineRecord], segments: &[PeriodSegment]) -> Vec<Vec<f64>> {
    segments
        .iter()
        .filter(|s| !s.partial)
        .map(|s| records[s.start..s.end].iter().map(|r| r.mds.first().copied().unwrap_or(0.0)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting() {
        let full = split_periods(14, 7).unwrap();
        assert_eq!(full.len(), 2);
        assert!(full.iter().all(|s| !s.partial && s.len() == 7));
        let ragged = split_periods(15, 7).unwrap();
        assert_eq!(ragged.len(), 3);
        assert!(ragged[2].partial && ragged[2].len() == 1);
        assert_eq!(split_periods(5, 1).unwrap().len(), 5);
        assert!(split_periods(5, 0).is_err());
    }

    #[test]
    fn k_equals_count_has_zero_inertia() {
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let km = kmeans(&pts, 5, 3).unwrap();
        assert_eq!(km.inertia(), 0.0);
    }

    #[test]
    fn single_cluster_is_the_mean() {
        let pts = vec![vec![0.0, 1.0], vec![2.0, 3.0], vec![4.0, 8.0]];
        let km = kmeans(&pts, 1, 0).unwrap();
        assert_eq!(km.centroids, vec![vec![2.0, 4.0]]);
    }

    #[test]
    fn separates_two_groups() {
        let mut pts = vec![vec![0.0; 7]; 3];
        pts.extend(vec![vec![10.0; 7]; 4]);
        let km = kmeans(&pts, 2, 11).unwrap();
        assert!(km.assignments[..3].iter().all(|&c| c == km.assignments[0]));
        assert!(km.assignments[3..].iter().all(|&c| c == km.assignments[3]));
        assert_ne!(km.assignments[0], km.assignments[3]);
        assert_eq!(km.inertia(), 0.0);
    }

    #[test]
    fn too_many_clusters() {
        assert!(matches!(kmeans(&[vec![1.0]], 2, 0), Err(Error::TooManyClusters { k: 2, available: 1 })));
        assert!(kmeans(&[vec![1.0]], 0, 0).is_err());
    }

    #[test]
    fn periods_use_first_mds_coordinate() {
        let records: Vec<TimelineRecord> = (0..5)
            .map(|i| TimelineRecord {
                id: i,
                midpoint: i as f64,
                mds: vec![i as f64, -1.0],
                period: i / 2,
                cluster: None,
                hour_of_day: 0,
                day_of_week: 0,
            })
            .collect();
        let segments = split_periods(5, 2).unwrap();
        assert_eq!(period_features(&records, &segments), vec![vec![0.0, 1.0], vec![2.0, 3.0]]);
        assert!(kmeans_periods(&records, &segments, 3, 0).is_err());
    }
}
