//! Exact canonical labeling by equitable refinement plus individualization
//! backtracking. The canonical form is the relabeling whose upper-triangle
//! adjacency encoding is lexicographically minimal over the whole search
//! tree, which makes it invariant under any input labeling.

use crate::graph::SimpleGraph;
use crate::graph6::to_graph6;

/// Key equal for two graphs iff they are isomorphic. Encoded as the graph6
/// string of the canonical form, so keys are also valid corpus entries.
pub fn canonical_key(g: &SimpleGraph) -> String {
    to_graph6(&canonical_form(g))
}

/// The canonically relabeled copy of `g`.
pub fn canonical_form(g: &SimpleGraph) -> SimpleGraph {
    let n = g.n() as usize;
    if n == 0 {
        return g.clone();
    }
    let initial = vec![(0..g.n()).collect::<Vec<u32>>()];
    let mut best: Option<Vec<u8>> = None;
    let mut best_perm: Vec<u32> = (0..g.n()).collect();
    search(g, initial, &mut best, &mut best_perm);
    g.relabel(&best_perm).expect("canonical labeling is a permutation")
}

fn search(
    g: &SimpleGraph,
    partition: Vec<Vec<u32>>,
    best: &mut Option<Vec<u8>>,
    best_perm: &mut Vec<u32>,
) {
    let partition = refine(g, partition);
    if let Some(cell_idx) = partition.iter().position(|c| c.len() > 1) {
        // Branch on every vertex of the first non-singleton cell; exploring
        // the full cell keeps the minimum label-invariant.
        for &v in &partition[cell_idx] {
            let mut next = Vec::with_capacity(partition.len() + 1);
            for (i, cell) in partition.iter().enumerate() {
                if i == cell_idx {
                    next.push(vec![v]);
                    next.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    next.push(cell.clone());
                }
            }
            search(g, next, best, best_perm);
        }
        return;
    }
    // Discrete partition: cell order is the candidate labeling.
    let mut perm = vec![0u32; g.n() as usize];
    for (new, cell) in partition.iter().enumerate() {
        perm[cell[0] as usize] = new as u32;
    }
    let enc = encode(g, &perm);
    if best.as_ref().is_none_or(|b| enc < *b) {
        *best = Some(enc);
        *best_perm = perm;
    }
}

/// Upper-triangle adjacency bits of the relabeled graph, column-major.
fn encode(g: &SimpleGraph, perm: &[u32]) -> Vec<u8> {
    let n = g.n() as usize;
    let mut inv = vec![0u32; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new as usize] = old as u32;
    }
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(inv[i], inv[j]) as u8);
        }
    }
    bits
}

/// Equitable refinement of an ordered partition: repeatedly splits cells by
/// neighbor counts into other cells, subcells ordered by ascending count.
/// The procedure depends only on cell positions and counts, never on vertex
/// labels, so it commutes with relabeling.
fn refine(g: &SimpleGraph, mut partition: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    loop {
        let mut changed = false;
        'scan: for t in 0..partition.len() {
            if partition[t].len() <= 1 {
                continue;
            }
            for s in 0..partition.len() {
                let counts: Vec<usize> = partition[t]
                    .iter()
                    .map(|&v| {
                        g.neighbors(v)
                            .iter()
                            .filter(|&&u| partition[s].contains(&u))
                            .count()
                    })
                    .collect();
                if counts.iter().any(|&c| c != counts[0]) {
                    let mut groups: Vec<(usize, Vec<u32>)> = Vec::new();
                    for (&v, &c) in partition[t].iter().zip(&counts) {
                        match groups.iter_mut().find(|(gc, _)| *gc == c) {
                            Some((_, members)) => members.push(v),
                            None => groups.push((c, vec![v])),
                        }
                    }
                    groups.sort_by_key(|(c, _)| *c);
                    let replacement: Vec<Vec<u32>> =
                        groups.into_iter().map(|(_, members)| members).collect();
                    partition.splice(t..=t, replacement);
                    changed = true;
                    break 'scan;
                }
            }
        }
        if !changed {
            return partition;
        }
    }
}
