use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Classical MDS: top eigenpairs of the double-centered `B = -1/2 J D^2 J`.
///
/// Returns one row of `dims` coordinates per input point. Columns follow descending
/// eigenvalue; negative eigenvalues are clipped to zero; each column is signed so its
/// largest-magnitude entry is positive.
pub fn classical_mds(dist: &[Vec<f64>], dims: usize) -> Result<Vec<Vec<f64>>> {
    if dims == 0 {
        return Err(Error::InvalidParameter("MDS needs at least one dimension".into()));
    }
    let n = dist.len();
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch(n, row.len()));
        }
        if let Some(j) = row.iter().position(|d| !d.is_finite()) {
            return Err(Error::NonFinite(i, j));
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let sq = DMatrix::from_fn(n, n, |i, j| dist[i][j] * dist[i][j]);
    let row_means: Vec<f64> = (0..n).map(|i| sq.row(i).mean()).collect();
    let col_means: Vec<f64> = (0..n).map(|j| sq.column(j).mean()).collect();
    let grand = sq.mean();
    let b = DMatrix::from_fn(n, n, |i, j| -0.5 * (sq[(i, j)] - row_means[i] - col_means[j] + grand));

    let eig = b.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &c| eig.eigenvalues[c].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&c)));

    let mut coords = vec![vec![0.0; dims]; n];
    for (col, &k) in order.iter().take(dims).enumerate() {
        let scale = eig.eigenvalues[k].max(0.0).sqrt();
        // B annihilates the constant vector, so recentering only strips rounding noise; it
        // also zeroes a column whose "eigenvector" is that null direction.
        let column = eig.eigenvectors.column(k);
        let mean = column.mean();
        let v: Vec<f64> = column.iter().map(|x| x - mean).collect();
        let mut pivot = 0;
        for i in 1..n {
            if v[i].abs() > v[pivot].abs() {
                pivot = i;
            }
        }
        let sign = if v[pivot] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            coords[i][col] = sign * v[i] * scale;
        }
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairwise(coords: &[Vec<f64>]) -> Vec<Vec<f64>> {
        coords
            .iter()
            .map(|a| coords.iter().map(|b| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()).collect())
            .collect()
    }

    #[test]
    fn zero_matrix() {
        let out = classical_mds(&vec![vec![0.0; 3]; 3], 2).unwrap();
        assert!(out.iter().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn collinear_points() {
        let pts = [0.0, 1.0, 3.0];
        let d: Vec<Vec<f64>> = pts.iter().map(|a| pts.iter().map(|b| f64::abs(a - b)).collect()).collect();
        let out = classical_mds(&d, 1).unwrap();
        let back = pairwise(&out);
        for i in 0..3 {
            for j in 0..3 {
                assert!((back[i][j] - d[i][j]).abs() < 1e-9);
            }
        }
        // Largest-magnitude entry is positive: the point at 3 is farthest from the mean.
        assert!(out[2][0] > 0.0);
    }

    #[test]
    fn unit_square() {
        let s = 2f64.sqrt();
        let d = vec![vec![0.0, 1.0, s, 1.0], vec![1.0, 0.0, 1.0, s], vec![s, 1.0, 0.0, 1.0], vec![1.0, s, 1.0, 0.0]];
        let back = pairwise(&classical_mds(&d, 2).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert!((back[i][j] - d[i][j]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_non_finite() {
        let d = vec![vec![0.0, f64::INFINITY], vec![f64::INFINITY, 0.0]];
        assert!(matches!(classical_mds(&d, 1), Err(Error::NonFinite(0, 1))));
    }
}
