//! Hopcroft-Karp maximum bipartite matching.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Size of a maximum matching between `left` vertices (with the given adjacency lists)
/// and `right_count` right vertices.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_count: usize) -> usize {
    let n = adj.len();
    let mut match_left = vec![FREE; n];
    let mut match_right = vec![FREE; right_count];
    let mut dist = vec![0usize; n];
    let mut size = 0;

    loop {
        // Layer free left vertices by BFS over alternating paths.
        let mut queue = VecDeque::new();
        for u in 0..n {
            if match_left[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_right[v] {
                    FREE => found = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return size;
        }

        let mut next_edge = vec![0usize; n];
        for u in 0..n {
            if match_left[u] == FREE && augment(u, adj, &mut match_left, &mut match_right, &mut dist, &mut next_edge) {
                size += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    while next_edge[u] < adj[u].len() {
        let v = adj[u][next_edge[u]];
        next_edge[u] += 1;
        let w = match_right[v];
        let extends =
            w == FREE || (dist[w] == dist[u] + 1 && augment(w, adj, match_left, match_right, dist, next_edge));
        if extends {
            match_left[u] = v;
            match_right[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
