//! Graph endomorphisms: a backtracking CSP with forward checking, full
//! enumeration, counting, and the hull `Gr(End(X))`.
//!
//! An endomorphism maps every edge to an edge. Non-edges are unconstrained.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::transform::Endofunction;

/// Default cap on enumerated endomorphisms.
pub const DEFAULT_ENDO_CAP: usize = 1_000_000;

struct Csp<'a> {
    g: &'a SimpleGraph,
    order: Vec<usize>,
    merge: Option<(usize, usize)>,
}

impl<'a> Csp<'a> {
    /// Pinned vertices first, then by decreasing degree, then by index.
    fn new(
        g: &'a SimpleGraph,
        vars: Vec<usize>,
        pinned: &[usize],
        merge: Option<(usize, usize)>,
    ) -> Self {
        let mut order = vars;
        order.sort_by_key(|&v| (!pinned.contains(&v), std::cmp::Reverse(g.degree(v)), v));
        Self { g, order, merge }
    }

    fn partner(&self, v: usize) -> Option<usize> {
        match self.merge {
            Some((a, b)) if a == v => Some(b),
            Some((a, b)) if b == v => Some(a),
            _ => None,
        }
    }

    fn search<F>(
        &self,
        depth: usize,
        assigned: &mut [bool],
        image: &mut [u32],
        domains: &mut Vec<FixedBitSet>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(image);
        }
        let v = self.order[depth];
        let choices: Vec<usize> = domains[v].ones().collect();
        assigned[v] = true;
        for x in choices {
            image[v] = x as u32;
            let saved = domains.clone();
            let mut ok = true;
            for u in self.g.neighbors(v).ones() {
                if !assigned[u] {
                    domains[u].intersect_with(self.g.neighbors(x));
                    if domains[u].is_clear() {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                if let Some(p) = self.partner(v).filter(|&p| !assigned[p]) {
                    let keep = domains[p].contains(x);
                    domains[p].clear();
                    if keep {
                        domains[p].insert(x);
                    } else {
                        ok = false;
                    }
                }
            }
            if ok {
                self.search(depth + 1, assigned, image, domains, visit)?;
            }
            *domains = saved;
        }
        assigned[v] = false;
        ControlFlow::Continue(())
    }
}

fn initial_domains(n: usize, pins: &[(usize, usize)]) -> Option<Vec<FixedBitSet>> {
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let mut domains = vec![full; n];
    for &(v, x) in pins {
        if domains[v].contains(x) {
            domains[v].clear();
            domains[v].insert(x);
        } else {
            return None;
        }
    }
    Some(domains)
}

/// Runs the CSP over all vertices and reports each solution to `visit`.
fn solve_all<F>(
    g: &SimpleGraph,
    pins: &[(usize, usize)],
    merge: Option<(usize, usize)>,
    mut visit: F,
) where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let n = g.order();
    let Some(mut domains) = initial_domains(n, pins) else {
        return;
    };
    if let Some((a, b)) = merge {
        if a == b {
            // trivially merged
        } else if g.has_edge(a, b) {
            return;
        }
    }
    let pinned: Vec<usize> = pins.iter().map(|&(v, _)| v).collect();
    // pins must respect edges among themselves before the search starts
    for &(u, x) in pins {
        for &(v, y) in pins {
            if g.has_edge(u, v) && !g.has_edge(x, y) {
                return;
            }
        }
    }
    let csp = Csp::new(g, (0..n).collect(), &pinned, merge);
    let mut assigned = vec![false; n];
    let mut image = vec![0u32; n];
    let _ = csp.search(0, &mut assigned, &mut image, &mut domains, &mut visit);
}

/// Any endomorphism honouring `pins` (0-based `(vertex, image)`) and, if
/// given, mapping both ends of `require_merge` to one vertex.
///
/// The search order is fixed, so the answer is reproducible. Inconsistent
/// pins simply yield `None`.
pub fn endomorphism_search(
    g: &SimpleGraph,
    pins: &[(usize, usize)],
    require_merge: Option<(usize, usize)>,
) -> Option<Endofunction> {
    let mut found = None;
    solve_all(g, pins, require_merge, |image| {
        found = Some(Endofunction::from_images_unchecked(image.to_vec()));
        ControlFlow::Break(())
    });
    found
}

pub fn is_endomorphism(g: &SimpleGraph, f: &Endofunction) -> bool {
    f.degree() == g.order()
        && g.edges()
            .iter()
            .all(|&(u, v)| g.has_edge(f.apply(u), f.apply(v)))
}

/// Every endomorphism of `g`, sorted lexicographically.
pub fn enumerate_endomorphisms(g: &SimpleGraph, cap: usize) -> Result<Vec<Endofunction>> {
    let mut out = Vec::new();
    let mut over = false;
    solve_all(g, &[], None, |image| {
        if out.len() >= cap {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(Endofunction::from_images_unchecked(image.to_vec()));
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::CapExceeded {
            what: "endomorphism enumeration",
            cap: cap as u64,
            partial: out.len() as u64,
        });
    }
    out.sort_unstable();
    Ok(out)
}

/// `|End(X)|`.
///
/// Isolated vertices may go anywhere, so they contribute a factor of `n`
/// each; only the remaining vertices are searched, and `cap` bounds the
/// number of partial solutions visited there.
pub fn endomorphism_count(g: &SimpleGraph, cap: u64) -> Result<BigUint> {
    let n = g.order();
    let (isolated, active): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| g.degree(v) == 0);
    let mut count: u64 = 0;
    let mut over = false;
    if active.is_empty() {
        count = 1;
    } else {
        let csp = Csp::new(g, active, &[], None);
        let mut domains = initial_domains(n, &[]).unwrap();
        let mut assigned = vec![false; n];
        let mut image = vec![0u32; n];
        let _ = csp.search(
            0,
            &mut assigned,
            &mut image,
            &mut domains,
            &mut |_: &[u32]| {
                if count >= cap {
                    over = true;
                    return ControlFlow::Break(());
                }
                count += 1;
                ControlFlow::Continue(())
            },
        );
    }
    if over {
        return Err(Error::CapExceeded {
            what: "endomorphism count",
            cap,
            partial: count,
        });
    }
    Ok(BigUint::from(count) * BigUint::from(n).pow(isolated.len() as u32))
}

/// `Gr(End(X))`: the pair `{v, w}` is an edge unless some endomorphism
/// merges it. One merge-constrained CSP per non-edge.
pub fn hull(g: &SimpleGraph) -> SimpleGraph {
    let n = g.order();
    let mut h = g.clone();
    for v in 0..n {
        for w in v + 1..n {
            if !g.has_edge(v, w) && endomorphism_search(g, &[], Some((v, w))).is_none() {
                h.add_edge(v, w);
            }
        }
    }
    h
}

pub fn is_hull(g: &SimpleGraph) -> bool {
    hull(g) == *g
}
