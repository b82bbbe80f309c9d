//! Derived graphs and maximal non-synchronizing endomorphism monoids.

use std::collections::HashSet;

use serde::Serialize;

use crate::clique::{clique_number, max_cliques};
use crate::coloring::chromatic_number;
use crate::endo::{enumerate_endomorphisms, hull, DEFAULT_ENDO_CAP};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::sync::PairAutomaton;
use crate::transform::all_endofunctions;

/// Largest degree for [`maximality_bruteforce`], which scans all `n^n` maps.
pub const MAX_BRUTEFORCE_DEGREE: usize = 7;

/// `X'`: the spanning subgraph keeping only edges that lie in some clique
/// of size `ω(X)`.
pub fn derived_graph(g: &SimpleGraph) -> SimpleGraph {
    let mut out = SimpleGraph::null(g.order());
    for clique in max_cliques(g) {
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                out.add_edge(u, v);
            }
        }
    }
    out
}

/// Sufficient conditions for `End(X)` to be maximal non-synchronizing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearconReport {
    pub is_hull: bool,
    pub omega: usize,
    pub chi: usize,
    pub every_edge_in_max_clique: bool,
    pub passes: bool,
}

/// Checks: `X` is a hull, `ω = χ`, every edge lies in an `ω`-clique, and `X`
/// has an edge. When all hold, `End(X)` is maximal non-synchronizing.
pub fn nearcon_check(g: &SimpleGraph) -> NearconReport {
    let is_hull = hull(g) == *g;
    let omega = clique_number(g);
    let chi = chromatic_number(g);
    let every_edge_in_max_clique = derived_graph(g) == *g;
    let passes = is_hull && omega == chi && every_edge_in_max_clique && !g.is_null();
    NearconReport {
        is_hull,
        omega,
        chi,
        every_edge_in_max_clique,
        passes,
    }
}

/// Literal maximality test: `End(X)` is non-synchronizing and adjoining any
/// map outside it yields a synchronizing monoid.
pub fn maximality_bruteforce(g: &SimpleGraph) -> Result<bool> {
    maximality_bruteforce_capped(g, DEFAULT_ENDO_CAP)
}

pub fn maximality_bruteforce_capped(g: &SimpleGraph, cap: usize) -> Result<bool> {
    let n = g.order();
    if n > MAX_BRUTEFORCE_DEGREE {
        return Err(Error::TooLarge(format!(
            "brute-force maximality supports n <= {MAX_BRUTEFORCE_DEGREE}, got {n}"
        )));
    }
    let endos = enumerate_endomorphisms(g, cap)?;
    let base = PairAutomaton::from_generators(n, &endos);
    if base.is_synchronizing() {
        return Ok(false);
    }
    let members: HashSet<_> = endos.into_iter().collect();
    for f in all_endofunctions(n) {
        if members.contains(&f) {
            continue;
        }
        let mut extended = base.clone();
        extended.add_generator(&f);
        if !extended.is_synchronizing() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::is_endomorphism;
    use crate::enumerate::labeled_graphs;

    fn triangle_pendant() -> SimpleGraph {
        SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn derived_examples() {
        assert_eq!(
            derived_graph(&SimpleGraph::complete(5)),
            SimpleGraph::complete(5)
        );
        assert_eq!(derived_graph(&SimpleGraph::cycle(5)), SimpleGraph::cycle(5));
        let expected = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(derived_graph(&triangle_pendant()), expected);
        assert_eq!(derived_graph(&SimpleGraph::null(3)), SimpleGraph::null(3));
    }

    #[test]
    fn nearcon_examples() {
        let e = SimpleGraph::from_edges(4, &[(0, 1)]).unwrap();
        let r = nearcon_check(&e);
        assert_eq!(
            r,
            NearconReport {
                is_hull: true,
                omega: 2,
                chi: 2,
                every_edge_in_max_clique: true,
                passes: true
            }
        );
        let k = nearcon_check(&SimpleGraph::complete(4));
        assert!(k.is_hull && k.passes);
        assert_eq!((k.omega, k.chi), (4, 4));
        let tp = nearcon_check(&triangle_pendant());
        assert!(!tp.every_edge_in_max_clique);
        assert!(!tp.passes);
        let null = nearcon_check(&SimpleGraph::null(4));
        assert!(null.is_hull && !null.passes);
    }

    #[test]
    fn maximality_examples() {
        let e3 = SimpleGraph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(maximality_bruteforce(&e3).unwrap());
        assert!(!maximality_bruteforce(&SimpleGraph::null(3)).unwrap());
        // S_n is maximal non-synchronizing
        assert!(maximality_bruteforce(&SimpleGraph::complete(4)).unwrap());
        // regression value from the brute-force scan
        assert_eq!(
            maximality_bruteforce(&SimpleGraph::cycle(4)).unwrap(),
            C4_IS_MAXIMAL
        );
        assert!(maximality_bruteforce(&SimpleGraph::null(8)).is_err());
    }

    const C4_IS_MAXIMAL: bool = true;

    #[test]
    fn endomorphisms_survive_derivation_n4() {
        for g in labeled_graphs(4) {
            let d = derived_graph(&g);
            assert!(d.is_spanning_subgraph_of(&g));
            for f in enumerate_endomorphisms(&g, 10_000).unwrap() {
                assert!(is_endomorphism(&d, &f));
            }
        }
    }
}
