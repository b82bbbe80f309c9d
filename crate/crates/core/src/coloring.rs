//! Exact chromatic number by iterative deepening over the colour count,
//! with DSATUR-ordered backtracking at each depth.

use crate::clique::clique_number;
use crate::graph::SimpleGraph;

const UNCOLOURED: usize = usize::MAX;

struct Dsatur<'a> {
    g: &'a SimpleGraph,
    k: usize,
    colour: Vec<usize>,
    // neighbour_count[v][c]: coloured neighbours of v with colour c
    neighbour_count: Vec<Vec<u32>>,
    saturation: Vec<usize>,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a SimpleGraph, k: usize) -> Self {
        let n = g.order();
        Self {
            g,
            k,
            colour: vec![UNCOLOURED; n],
            neighbour_count: vec![vec![0; k]; n],
            saturation: vec![0; n],
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.order())
            .filter(|&v| self.colour[v] == UNCOLOURED)
            .max_by(|&a, &b| {
                (self.saturation[a], self.g.degree(a))
                    .cmp(&(self.saturation[b], self.g.degree(b)))
                    .then(b.cmp(&a))
            })
    }

    fn set(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        for u in self.g.neighbors(v).ones() {
            if self.neighbour_count[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.neighbour_count[u][c] += 1;
        }
    }

    fn unset(&mut self, v: usize) {
        let c = self.colour[v];
        self.colour[v] = UNCOLOURED;
        for u in self.g.neighbors(v).ones() {
            self.neighbour_count[u][c] -= 1;
            if self.neighbour_count[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        // colours above `used` are interchangeable, so try only one new colour
        for c in 0..self.k.min(used + 1) {
            if self.neighbour_count[v][c] == 0 {
                self.set(v, c);
                if self.solve(used.max(c + 1)) {
                    return true;
                }
                self.unset(v);
            }
        }
        false
    }
}

/// A proper colouring with at most `k` colours, if one exists.
pub fn colour_with(g: &SimpleGraph, k: usize) -> Option<Vec<usize>> {
    if g.order() == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut search = Dsatur::new(g, k);
    search.solve(0).then_some(search.colour)
}

/// `χ(X)` together with an optimal colouring (colours `0..χ`).
pub fn chromatic_colouring(g: &SimpleGraph) -> (usize, Vec<usize>) {
    let lower = clique_number(g).max(1);
    for k in lower..=g.order().max(1) {
        if let Some(colouring) = colour_with(g, k) {
            return (k, colouring);
        }
    }
    unreachable!("n colours always suffice")
}

pub fn chromatic_number(g: &SimpleGraph) -> usize {
    chromatic_colouring(g).0
}
