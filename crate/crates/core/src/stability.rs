//! Global minimum cuts of binding graphs and τ-stability.

use std::collections::HashMap;

use crate::assembly::{Assembly, BindingGraph};
use crate::model::TileSystem;

/// Weight of a global minimum cut, found with the Stoer–Wagner algorithm.
///
/// Returns `None` for graphs with fewer than two vertices, which have no
/// cut at all. A disconnected graph has a minimum cut of weight 0.
pub fn min_cut_weight(graph: &BindingGraph) -> Option<u32> {
    let n = graph.vertices.len();
    if n < 2 {
        return None;
    }
    let index: HashMap<_, _> = graph.vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut w = vec![vec![0u32; n]; n];
    for e in &graph.edges {
        let (a, b) = (index[&e.a], index[&e.b]);
        w[a][b] += e.weight;
        w[b][a] += e.weight;
    }

    // Vertices still present after merges.
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    while alive.len() > 1 {
        // Maximum adjacency ordering starting from alive[0].
        let m = alive.len();
        let mut added = vec![false; m];
        let mut conn = vec![0u32; m];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..m {
            let next = (0..m)
                .filter(|&i| !added[i])
                .max_by(|&i, &j| conn[i].cmp(&conn[j]).then(j.cmp(&i)))
                .unwrap();
            added[next] = true;
            if step == m - 1 {
                best = best.min(conn[next]);
            }
            prev = last;
            last = next;
            for i in 0..m {
                if !added[i] {
                    conn[i] += w[alive[next]][alive[i]];
                }
            }
        }
        // Merge `last` into `prev`.
        let (s, t) = (alive[prev], alive[last]);
        for &v in &alive {
            if v != s && v != t {
                w[s][v] += w[t][v];
                w[v][s] = w[s][v];
            }
        }
        alive.remove(last);
    }
    Some(best)
}

/// True iff every cut of the binding graph of `assembly` has weight at least
/// `tau`. Single-tile assemblies have no cut and are stable.
pub fn is_tau_stable(assembly: &Assembly, sys: &TileSystem, tau: u32) -> bool {
    match BindingGraph::of(assembly, sys) {
        Ok(g) => min_cut_weight(&g).is_none_or(|c| c >= tau),
        Err(_) => false,
    }
}
