use super::{Filtration, PersistenceDiagram, PersistencePoint};

const NONE: usize = usize::MAX;

/// Z/2 sum of two ascending index lists.
fn add_columns(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Boundary columns in filtration-index space, ascending.
fn boundaries(f: &Filtration) -> Vec<Vec<usize>> {
    let n = f.vertex_count;
    let mut vertex_pos = vec![NONE; n];
    let mut edge_pos = vec![NONE; n * n];
    for (k, s) in f.simplices.iter().enumerate() {
        match *s.vertices() {
            [v] => vertex_pos[v] = k,
            [a, b] => edge_pos[a * n + b] = k,
            _ => {}
        }
    }
    f.simplices
        .iter()
        .map(|s| {
            let mut col = match *s.vertices() {
                [_] => Vec::new(),
                [a, b] => vec![vertex_pos[a], vertex_pos[b]],
                [a, b, c] => vec![edge_pos[a * n + b], edge_pos[a * n + c], edge_pos[b * n + c]],
                _ => unreachable!("simplices have at most three vertices"),
            };
            col.sort_unstable();
            col
        })
        .collect()
}

/// Standard column reduction of the boundary matrix over Z/2.
///
/// Triangles are reduced before edges so that edges already known to be pivots of a
/// triangle column are skipped (their own columns reduce to zero).
pub fn compute_persistence(f: &Filtration) -> (PersistenceDiagram, PersistenceDiagram) {
    let m = f.len();
    let mut columns = boundaries(f);
    let mut owner = vec![NONE; m];
    let mut cleared = vec![false; m];
    let mut scratch = Vec::new();

    for dim in [2, 1] {
        for j in 0..m {
            if f.simplices[j].dim != dim || cleared[j] {
                continue;
            }
            let mut col = std::mem::take(&mut columns[j]);
            while let Some(&pivot) = col.last() {
                let k = owner[pivot];
                if k == NONE {
                    break;
                }
                add_columns(&col, &columns[k], &mut scratch);
                std::mem::swap(&mut col, &mut scratch);
            }
            if let Some(&pivot) = col.last() {
                owner[pivot] = j;
                cleared[pivot] = true;
            }
            columns[j] = col;
        }
    }

    let value = |k: usize| f.simplices[k].value;
    let (mut finite0, mut finite1) = (Vec::new(), Vec::new());
    let (mut essential0, mut essential1) = (Vec::new(), Vec::new());
    for (k, s) in f.simplices.iter().enumerate() {
        if s.dim > 1 {
            continue;
        }
        let positive = cleared[k] || columns[k].is_empty();
        if !positive {
            continue;
        }
        let target = if s.dim == 0 { (&mut finite0, &mut essential0) } else { (&mut finite1, &mut essential1) };
        match owner[k] {
            NONE => target.1.push(value(k)),
            killer => target.0.push(PersistencePoint::new(value(k), value(killer))),
        }
    }
    (PersistenceDiagram::new(0, finite0, essential0), PersistenceDiagram::new(1, finite1, essential1))
}
