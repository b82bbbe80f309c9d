//! Small-graph enumeration, labeled or up to isomorphism.
//!
//! A graph on `n` vertices is encoded by its upper-triangle adjacency
//! bitstring in column order `{1,2}, {1,3}, {2,3}, {1,4}, ...` (the order of
//! [`crate::sync::pair_index`]), first position most significant. The
//! canonical form of a graph is the lexicographically least bitstring over
//! all `n!` relabelings.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::sync::{pair_at, pair_count};

/// Largest `n` accepted in canonical mode.
pub const MAX_CANONICAL_DEGREE: usize = 8;

/// Largest `n` accepted in labeled mode (`2^{n(n-1)/2}` fits in `u64`).
pub const MAX_LABELED_DEGREE: usize = 11;

fn graph_from_mask(n: usize, mask: u64) -> SimpleGraph {
    let mut g = SimpleGraph::null(n);
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        m &= m - 1;
        let (v, w) = pair_at(p);
        g.add_edge(v, w);
    }
    g
}

/// All `2^{n(n-1)/2}` labeled graphs on `n` vertices.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    assert!(
        (1..=MAX_LABELED_DEGREE).contains(&n),
        "labeled enumeration needs 1 <= n <= {MAX_LABELED_DEGREE}"
    );
    (0..1u64 << pair_count(n)).map(move |mask| graph_from_mask(n, mask))
}

/// Outcome of comparing relabelings against a reference bitstring.
enum Search {
    Smaller,
    Done,
}

/// Relabeling search. `sigma[j]` is the original vertex placed at position
/// `j`; column `j` of the relabeled string depends only on `sigma[..=j]`.
struct Relabel<'a> {
    g: &'a SimpleGraph,
    n: usize,
}

impl Relabel<'_> {
    fn column(&self, sigma: &[usize], j: usize) -> impl Iterator<Item = bool> + '_ {
        let sj = sigma[j];
        let prefix: Vec<usize> = sigma[..j].to_vec();
        prefix.into_iter().map(move |si| self.g.has_edge(si, sj))
    }

    /// Is there a relabeling strictly below `reference`?
    fn find_smaller(
        &self,
        reference: &[bool],
        sigma: &mut Vec<usize>,
        used: &mut [bool],
    ) -> Search {
        let j = sigma.len();
        if j == self.n {
            return Search::Done;
        }
        for v in 0..self.n {
            if used[v] {
                continue;
            }
            sigma.push(v);
            let start = j * j.saturating_sub(1) / 2;
            let mut verdict = std::cmp::Ordering::Equal;
            for (i, bit) in self.column(sigma, j).enumerate() {
                verdict = bit.cmp(&reference[start + i]);
                if verdict != std::cmp::Ordering::Equal {
                    break;
                }
            }
            match verdict {
                std::cmp::Ordering::Less => {
                    sigma.pop();
                    return Search::Smaller;
                }
                std::cmp::Ordering::Greater => {}
                std::cmp::Ordering::Equal => {
                    used[v] = true;
                    let r = self.find_smaller(reference, sigma, used);
                    used[v] = false;
                    if let Search::Smaller = r {
                        sigma.pop();
                        return r;
                    }
                }
            }
            sigma.pop();
        }
        Search::Done
    }

    fn minimize(
        &self,
        best: &mut Vec<bool>,
        current: &mut Vec<bool>,
        sigma: &mut Vec<usize>,
        used: &mut [bool],
    ) {
        let j = sigma.len();
        if j == self.n {
            if current < best {
                *best = current.clone();
            }
            return;
        }
        for v in 0..self.n {
            if used[v] {
                continue;
            }
            sigma.push(v);
            let mark = current.len();
            current.extend(self.column(sigma, j));
            if current[..] <= best[..current.len()] {
                used[v] = true;
                self.minimize(best, current, sigma, used);
                used[v] = false;
            }
            current.truncate(mark);
            sigma.pop();
        }
    }
}

fn bitstring(g: &SimpleGraph) -> Vec<bool> {
    (0..pair_count(g.order()))
        .map(|p| {
            let (v, w) = pair_at(p);
            g.has_edge(v, w)
        })
        .collect()
}

fn from_bitstring(n: usize, bits: &[bool]) -> SimpleGraph {
    let mut g = SimpleGraph::null(n);
    for (p, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
        let (v, w) = pair_at(p);
        g.add_edge(v, w);
    }
    g
}

fn check_canonical_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CANONICAL_DEGREE {
        return Err(Error::TooLarge(format!(
            "canonical forms support 1 <= n <= {MAX_CANONICAL_DEGREE}, got {n}"
        )));
    }
    Ok(())
}

/// The relabeling of `g` with the least adjacency bitstring.
pub fn canonical_form(g: &SimpleGraph) -> Result<SimpleGraph> {
    let n = g.order();
    check_canonical_degree(n)?;
    let r = Relabel { g, n };
    let mut best = bitstring(g);
    r.minimize(
        &mut best,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut vec![false; n],
    );
    Ok(from_bitstring(n, &best))
}

/// Whether `g` is already its own canonical form.
pub fn is_canonical(g: &SimpleGraph) -> bool {
    let n = g.order();
    let r = Relabel { g, n };
    let reference = bitstring(g);
    matches!(
        r.find_smaller(&reference, &mut Vec::new(), &mut vec![false; n]),
        Search::Done
    )
}

/// One canonical representative per isomorphism class.
///
/// Orderly generation on complements: a graph `G` is canonical (least
/// string) exactly when its complement `H` has the greatest string in its
/// class, and deleting the last edge of such an `H` keeps it greatest. So
/// the greatest-string graphs form a tree rooted at the null graph, grown by
/// adding edges after the current last edge.
pub fn canonical_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    check_canonical_degree(n)?;
    let pairs = pair_count(n);
    let mut out = Vec::new();
    // stack of (complement graph H, first free position)
    let mut stack = vec![(SimpleGraph::null(n), 0usize)];
    while let Some((h, from)) = stack.pop() {
        let g = h.complement();
        out.push(g);
        for p in (from..pairs).rev() {
            let (v, w) = pair_at(p);
            let mut child = h.clone();
            child.add_edge(v, w);
            if is_canonical(&child.complement()) {
                stack.push((child, p + 1));
            }
        }
    }
    Ok(out)
}

/// Labeled (`canonical = false`) or one-per-class enumeration.
pub fn enumerate_graphs(n: usize, canonical: bool) -> Result<Vec<SimpleGraph>> {
    if canonical {
        canonical_graphs(n)
    } else if (1..=MAX_LABELED_DEGREE).contains(&n) {
        Ok(labeled_graphs(n).collect())
    } else {
        Err(Error::TooLarge(format!(
            "labeled enumeration supports 1 <= n <= {MAX_LABELED_DEGREE}, got {n}"
        )))
    }
}
