//! Exact clique number and maximum-clique enumeration.

use fixedbitset::FixedBitSet;

use crate::graph::SimpleGraph;

/// Candidates reordered by greedy colour class, with the colour number of
/// each position (1-based). The colour of position `i` bounds the size of
/// any clique drawn from `order[..=i]`.
fn colour_sort(g: &SimpleGraph, cand: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = cand.clone();
    let mut order = Vec::with_capacity(cand.count_ones(..));
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut colour = 0;
    while !uncoloured.is_clear() {
        colour += 1;
        let mut open = uncoloured.clone();
        while let Some(v) = open.minimum() {
            open.set(v, false);
            open.difference_with(g.neighbors(v));
            uncoloured.set(v, false);
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}

fn expand(g: &SimpleGraph, clique: &mut Vec<usize>, mut cand: FixedBitSet, best: &mut Vec<usize>) {
    let (order, bounds) = colour_sort(g, &cand);
    for i in (0..order.len()).rev() {
        if clique.len() + bounds[i] <= best.len() {
            return;
        }
        let v = order[i];
        clique.push(v);
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        if next.is_clear() {
            if clique.len() > best.len() {
                *best = clique.clone();
            }
        } else {
            expand(g, clique, next, best);
        }
        clique.pop();
        cand.set(v, false);
    }
}

/// A maximum clique, sorted. Found by branch and bound with a greedy
/// colouring bound on the candidate set.
pub fn maximum_clique(g: &SimpleGraph) -> Vec<usize> {
    let n = g.order();
    let mut best = Vec::new();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    expand(g, &mut Vec::new(), all, &mut best);
    best.sort_unstable();
    best
}

/// `ω(X)`. A single vertex is a clique, so the null graph has `ω = 1`.
pub fn clique_number(g: &SimpleGraph) -> usize {
    maximum_clique(g).len()
}

/// Every clique of size exactly `ω(X)`, each sorted, in lexicographic order.
pub fn max_cliques(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let omega = clique_number(g);
    let mut out = Vec::new();
    let mut all = FixedBitSet::with_capacity(g.order());
    all.insert_range(..);
    collect_cliques(g, omega, &mut Vec::new(), &all, &mut out);
    out
}

fn collect_cliques(
    g: &SimpleGraph,
    target: usize,
    clique: &mut Vec<usize>,
    cand: &FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if clique.len() == target {
        out.push(clique.clone());
        return;
    }
    if clique.len() + cand.count_ones(..) < target {
        return;
    }
    for v in cand.ones() {
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        next.remove_range(..v + 1);
        clique.push(v);
        collect_cliques(g, target, clique, &next, out);
        clique.pop();
    }
}
