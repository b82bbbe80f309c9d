//! Transformation monoids, their graphs, and random synchronization.
//!
//! A transformation monoid `M` on `{1..n}` is *synchronizing* when it
//! contains a constant map. `Gr(M)` joins `v` and `w` when no element of
//! `M` maps them to the same point; its clique number, its chromatic number
//! and the minimum rank over `M` all coincide. In the other direction a
//! graph `X` gives the monoid `End(X)`, and `Hull(X) = Gr(End(X))`.
//!
//! Maps compose left to right throughout: `f.then(&g)` sends `v` to
//! `(vf)g`. Points are 0-based in the API and 1-based in every file format.

pub mod clique;
pub mod coloring;
pub mod dixon;
pub mod endo;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod maximal;
pub mod rng;
pub mod stats;
pub mod sync;
pub mod transform;

pub use clique::{clique_number, max_cliques, maximum_clique};
pub use coloring::{chromatic_colouring, chromatic_number};
pub use dixon::{cn_table, intransitive_union_bound, is_transitive, orbits, CnTable};
pub use endo::{
    endomorphism_count, endomorphism_search, enumerate_endomorphisms, hull, is_endomorphism,
    is_hull,
};
pub use enumerate::{canonical_form, enumerate_graphs};
pub use error::{Error, Result};
pub use experiments::{ExactResult, ExperimentConfig};
pub use graph::SimpleGraph;
pub use maximal::{derived_graph, maximality_bruteforce, nearcon_check, NearconReport};
pub use stats::EstimateWithCI;
pub use sync::{
    collapsibility_closure, gr_of_generators, gr_of_monoid, is_synchronizing, merging_word,
    min_rank_witness, monoid_closure, shortest_synchronizing_word, CollapsibilityTable,
    GeneratorSet, Word,
};
pub use transform::{compose, Endofunction, KernelPartition, PeriodicitySummary};
