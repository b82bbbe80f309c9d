//! Random and exhaustive synchronization experiments.
//!
//! Generators are drawn independently with replacement: `r` uniform
//! permutations followed by `s` uniform endofunctions, so exact
//! probabilities are over `(n!)^r (n^n)^s` ordered tuples.

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::clique::clique_number;
use crate::coloring::chromatic_number;
use crate::endo::{endomorphism_count, hull};
use crate::enumerate::enumerate_graphs;
use crate::error::{Error, Result};
use crate::exact::{factorial, fraction_string, ratio, to_f64};
use crate::graph::SimpleGraph;
use crate::maximal::{derived_graph, maximality_bruteforce, nearcon_check, NearconReport};
use crate::rng::substream;
use crate::stats::EstimateWithCI;
use crate::sync::{is_synchronizing, min_rank_witness, GeneratorSet};
use crate::transform::{
    all_endofunctions, all_permutations, random_endofunction, random_permutation, Endofunction,
};

/// Guard on the number of tuples [`exact_sync_probability`] will enumerate.
pub const EXACT_ENUMERATION_LIMIT: u64 = 100_000_000;

/// One trial in this many is audited with a rank-1 certificate.
pub const AUDIT_PERIOD: u64 = 100;

/// Cap on `|End(X)|` counted by the explorer.
pub const EXPLORER_ENDO_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    /// Number of random permutation generators.
    pub perms: usize,
    /// Number of random endofunction generators.
    pub maps: usize,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        if self.perms + self.maps == 0 {
            return Err(Error::InvalidConfig("need at least one generator".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Draws `r` permutations then `s` endofunctions.
pub fn sample_generators<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    s: usize,
    rng: &mut R,
) -> GeneratorSet {
    let mut gens = Vec::with_capacity(r + s);
    gens.extend((0..r).map(|_| random_permutation(n, rng)));
    gens.extend((0..s).map(|_| random_endofunction(n, rng)));
    GeneratorSet::new(gens).expect("at least one generator")
}

/// Monte Carlo estimate of `P(<r perms, s maps> is synchronizing)`.
///
/// Trial `i` uses its own stream, so the result depends only on the
/// config. Every [`AUDIT_PERIOD`]-th synchronizing trial is re-checked with
/// an explicit rank-1 witness word.
pub fn estimate_sync_probability(config: &ExperimentConfig) -> Result<EstimateWithCI> {
    config.validate()?;
    let ExperimentConfig {
        n,
        perms,
        maps,
        trials,
        seed,
    } = *config;
    let (successes, failed_audits): (u64, u64) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i);
            let s = sample_generators(n, perms, maps, &mut rng);
            if !is_synchronizing(&s) {
                return (0, 0);
            }
            if i % AUDIT_PERIOD == 0 {
                let (word, f) = min_rank_witness(&s);
                if f.rank() != 1 || s.evaluate(&word) != f {
                    return (1, 1);
                }
            }
            (1, 0)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if failed_audits > 0 {
        return Err(Error::Certificate(format!(
            "{failed_audits} synchronizing trials lacked a rank-1 witness"
        )));
    }
    Ok(EstimateWithCI::wilson(successes, trials))
}

/// An exact probability as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub value: BigRational,
    pub context: String,
}

impl ExactResult {
    pub fn numerator(&self) -> BigUint {
        self.value.numer().to_biguint().expect("nonnegative")
    }

    pub fn denominator(&self) -> BigUint {
        self.value.denom().to_biguint().expect("positive")
    }

    pub fn fraction(&self) -> String {
        fraction_string(&self.value)
    }
}

fn tuple_count(n: usize, r: usize, s: usize) -> BigUint {
    factorial(n).pow(r as u32) * BigUint::from(n).pow((n * s) as u32)
}

/// Exhaustive count of synchronizing tuples: `(synchronizing, total)`.
pub fn count_synchronizing_tuples(n: usize, r: usize, s: usize) -> Result<(u64, u64)> {
    if n == 0 || r + s == 0 {
        return Err(Error::InvalidConfig("need n >= 1 and r + s >= 1".into()));
    }
    let total = tuple_count(n, r, s);
    if total > BigUint::from(EXACT_ENUMERATION_LIMIT) {
        return Err(Error::TooLarge(format!(
            "{total} generator tuples exceed the enumeration limit {EXACT_ENUMERATION_LIMIT}; \
             use the closed form for (r, s) = (0, 1) or a Monte Carlo estimate"
        )));
    }
    let perms = all_permutations(n);
    let maps: Vec<Endofunction> = all_endofunctions(n).collect();
    let pools: Vec<&[Endofunction]> = std::iter::repeat_n(&perms[..], r)
        .chain(std::iter::repeat_n(&maps[..], s))
        .collect();
    let total: u64 = pools.iter().map(|p| p.len() as u64).product();
    // mixed-radix decode of the tuple index; parallel over the index range
    let hits: u64 = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut gens = Vec::with_capacity(pools.len());
            for pool in pools.iter().rev() {
                let len = pool.len() as u64;
                gens.push(pool[(code % len) as usize].clone());
                code /= len;
            }
            gens.reverse();
            u64::from(is_synchronizing(&GeneratorSet::new(gens).unwrap()))
        })
        .sum();
    Ok((hits, total))
}

/// Exact `P(<r perms, s maps> is synchronizing)`.
///
/// `(r, s) = (0, 1)` uses the rooted-tree count `n^{n-1} / n^n`; other
/// shapes are enumerated when small enough.
pub fn exact_sync_probability(n: usize, r: usize, s: usize) -> Result<ExactResult> {
    if n == 0 || r + s == 0 {
        return Err(Error::InvalidConfig("need n >= 1 and r + s >= 1".into()));
    }
    if (r, s) == (0, 1) {
        let nn = BigUint::from(n);
        return Ok(ExactResult {
            value: ratio(nn.clone().pow((n - 1) as u32), nn.pow(n as u32)),
            context: format!("closed form n^(n-1)/n^n, n={n}"),
        });
    }
    let (hits, total) = count_synchronizing_tuples(n, r, s)?;
    Ok(ExactResult {
        value: ratio(BigUint::from(hits), BigUint::from(total)),
        context: format!("enumerated {total} tuples, n={n} r={r} s={s}"),
    })
}

/// `(n(n-1)/2) n^{2(n-2)} / n^{2n}`, the displayed single-edge bound.
pub fn edge_graph_bound(n: usize) -> BigRational {
    assert!(n >= 2);
    let nn = BigUint::from(n);
    let graphs = BigUint::from(n * (n - 1) / 2);
    ratio(
        graphs * nn.clone().pow((2 * (n - 2)) as u32),
        nn.pow((2 * n) as u32),
    )
}

/// Union bound with each graph's exact share: `(n(n-1)/2) (2 n^{n-2} / n^n)^2`.
pub fn edge_graph_union_bound(n: usize) -> BigRational {
    assert!(n >= 2);
    let nn = BigUint::from(n);
    let endos = BigUint::from(2u32) * nn.clone().pow((n - 2) as u32);
    let per_graph = &endos * &endos;
    ratio(
        BigUint::from(n * (n - 1) / 2) * per_graph,
        nn.pow((2 * n) as u32),
    )
}

/// Both maps are endomorphisms of some single-edge graph, i.e. there is a
/// pair `{a, b}` that each map sends bijectively onto itself.
pub fn share_single_edge_graph(f: &Endofunction, g: &Endofunction) -> bool {
    let n = f.degree();
    let keeps = |h: &Endofunction, a: usize, b: usize| {
        let (x, y) = (h.apply(a), h.apply(b));
        (x == a && y == b) || (x == b && y == a)
    };
    (0..n).any(|a| (a + 1..n).any(|b| keeps(f, a, b) && keeps(g, a, b)))
}

/// Exhaustive probability that two maps share a single-edge graph.
pub fn edge_graph_exact(n: usize) -> Result<BigRational> {
    let total = (n as u64).pow(2 * n as u32);
    if n < 2 || total > EXACT_ENUMERATION_LIMIT {
        return Err(Error::TooLarge(format!(
            "exhaustive edge-graph count needs 2 <= n with n^(2n) <= {EXACT_ENUMERATION_LIMIT}"
        )));
    }
    let maps: Vec<Endofunction> = all_endofunctions(n).collect();
    let hits: u64 = maps
        .par_iter()
        .map(|f| {
            maps.iter()
                .filter(|g| share_single_edge_graph(f, g))
                .count() as u64
        })
        .sum();
    Ok(ratio(BigUint::from(hits), BigUint::from(total)))
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeGraphReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// The displayed bound `(n(n-1)/2) n^{2(n-2)}/n^{2n}`.
    pub bound: String,
    pub bound_float: f64,
    /// The union bound with the factor `2^2` from `2 n^{n-2}` endomorphisms.
    pub union_bound: String,
    pub union_bound_float: f64,
    pub estimate: EstimateWithCI,
    pub sigma: f64,
    /// `estimate <= bound + 3 sigma`.
    pub within_bound: bool,
    /// `estimate <= union_bound + 3 sigma`.
    pub within_union_bound: bool,
}

pub fn edge_graph_experiment(n: usize, trials: u64, seed: u64) -> Result<EdgeGraphReport> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "edge-graph experiment needs n >= 2, got {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i);
            let f = random_endofunction(n, &mut rng);
            let g = random_endofunction(n, &mut rng);
            u64::from(share_single_edge_graph(&f, &g))
        })
        .sum();
    let estimate = EstimateWithCI::wilson(successes, trials);
    let sigma = estimate.sigma();
    let bound = edge_graph_bound(n);
    let union = edge_graph_union_bound(n);
    Ok(EdgeGraphReport {
        n,
        trials,
        seed,
        bound: fraction_string(&bound),
        bound_float: to_f64(&bound),
        union_bound: fraction_string(&union),
        union_bound_float: to_f64(&union),
        within_bound: estimate.estimate <= to_f64(&bound) + 3.0 * sigma,
        within_union_bound: estimate.estimate <= to_f64(&union) + 3.0 * sigma,
        estimate,
        sigma,
    })
}

/// One graph's explorer record.
#[derive(Debug, Clone, Serialize)]
pub struct ExplorerRecord {
    pub n: usize,
    /// 1-based sorted edges.
    pub edges: Vec<[usize; 2]>,
    pub null: bool,
    pub complete: bool,
    /// `None` for the excluded null graph.
    pub nearcon: Option<NearconReport>,
    /// `|End(X)|` as a decimal string, for graphs passing the check.
    pub end_count: Option<String>,
    /// Literal maximality, for `n <= 5`.
    pub maximal_bruteforce: Option<bool>,
    /// `X' = X`.
    pub derived_equal: bool,
    /// `X != X'` yet `End(X) = End(X')`, `X = Hull(X')` and all of
    /// `ω, χ` agree.
    pub distinct_pair: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ExplorerSummary {
    pub n: usize,
    pub canonical: bool,
    pub graphs: usize,
    pub passing: usize,
    pub bruteforce_checked: usize,
    pub bruteforce_maximal: usize,
    /// Passing graphs that brute force found non-maximal.
    pub violations: usize,
    /// Maximal by brute force yet failing the check.
    pub unexplained_maximal: usize,
    pub distinct_pairs: usize,
    pub skipped: usize,
}

/// Largest `n` for the brute-force maximality pass inside the explorer.
pub const EXPLORER_BRUTEFORCE_DEGREE: usize = 5;

fn explore_graph(g: &SimpleGraph) -> ExplorerRecord {
    let n = g.order();
    let mut rec = ExplorerRecord {
        n,
        edges: g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
        null: g.is_null(),
        complete: g.is_complete() && n > 1,
        nearcon: None,
        end_count: None,
        maximal_bruteforce: None,
        derived_equal: true,
        distinct_pair: false,
        notes: Vec::new(),
    };
    if rec.null {
        rec.notes.push("null graph excluded".into());
        return rec;
    }
    let report = nearcon_check(g);
    if report.passes {
        match endomorphism_count(g, EXPLORER_ENDO_CAP) {
            Ok(c) => rec.end_count = Some(c.to_string()),
            Err(e) => rec.notes.push(format!("skipped |End(X)|: {e}")),
        }
    }
    if rec.complete {
        rec.notes
            .push("complete graph: End(X) is the symmetric group".into());
    }
    if n <= EXPLORER_BRUTEFORCE_DEGREE {
        match maximality_bruteforce(g) {
            Ok(b) => rec.maximal_bruteforce = Some(b),
            Err(e) => rec.notes.push(format!("skipped brute force: {e}")),
        }
    }
    let derived = derived_graph(g);
    rec.derived_equal = derived == *g;
    if !rec.derived_equal {
        let omega = clique_number(g);
        let same_numbers = report.chi == omega
            && clique_number(&derived) == omega
            && chromatic_number(&derived) == omega;
        if same_numbers && hull(&derived) == *g {
            // End(X) <= End(X') always, so equal counts mean equal monoids
            match (
                endomorphism_count(g, EXPLORER_ENDO_CAP),
                endomorphism_count(&derived, EXPLORER_ENDO_CAP),
            ) {
                (Ok(a), Ok(b)) => rec.distinct_pair = a == b,
                _ => rec
                    .notes
                    .push("skipped End(X) = End(X') comparison: cap exceeded".into()),
            }
        }
    }
    rec.nearcon = Some(report);
    rec
}

/// Runs the checks over every graph on `n` vertices (labeled, or one per
/// isomorphism class).
pub fn explore_maximal_nonsync(
    n: usize,
    canonical: bool,
) -> Result<(Vec<ExplorerRecord>, ExplorerSummary)> {
    let limit = if canonical { 7 } else { 6 };
    if n == 0 || n > limit {
        return Err(Error::TooLarge(format!(
            "explorer supports 1 <= n <= {limit} in {} mode, got {n}",
            if canonical { "canonical" } else { "labeled" }
        )));
    }
    let graphs = enumerate_graphs(n, canonical)?;
    let records: Vec<ExplorerRecord> = graphs.par_iter().map(explore_graph).collect();
    let mut summary = ExplorerSummary {
        n,
        canonical,
        graphs: records.len(),
        ..Default::default()
    };
    for r in &records {
        let passes = r.nearcon.as_ref().is_some_and(|c| c.passes);
        summary.passing += usize::from(passes);
        if let Some(max) = r.maximal_bruteforce {
            summary.bruteforce_checked += 1;
            summary.bruteforce_maximal += usize::from(max);
            summary.violations += usize::from(passes && !max);
            summary.unexplained_maximal += usize::from(!passes && max);
        }
        summary.distinct_pairs += usize::from(r.distinct_pair);
        summary.skipped += usize::from(r.notes.iter().any(|n| n.starts_with("skipped")));
    }
    Ok((records, summary))
}

/// The JSON-lines record schema shared by `estimate` and `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub experiment: String,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub exact: Option<String>,
}

/// Closed forms known without enumeration.
pub fn known_exact(n: usize, r: usize, s: usize) -> Option<BigRational> {
    match (r, s) {
        _ if n == 1 => Some(BigRational::one()),
        (0, 1) => Some(ratio(BigUint::one(), BigUint::from(n))),
        (_, 0) => Some(BigRational::zero()),
        _ => None,
    }
}

pub fn estimate_record(config: &ExperimentConfig) -> Result<SweepRecord> {
    let e = estimate_sync_probability(config)?;
    Ok(SweepRecord {
        experiment: "sync_probability".into(),
        n: config.n,
        r: config.perms,
        s: config.maps,
        trials: config.trials,
        seed: config.seed,
        successes: e.successes,
        estimate: e.estimate,
        ci_low: e.ci_low,
        ci_high: e.ci_high,
        exact: known_exact(config.n, config.perms, config.maps).map(|q| fraction_string(&q)),
    })
}

/// One record per `(n, (r, s))`, all using `seed`. Wall time of each run is
/// returned alongside but kept out of the record so output bytes are
/// reproducible.
pub fn sweep(
    n_list: &[usize],
    shapes: &[(usize, usize)],
    trials: u64,
    seed: u64,
) -> Result<Vec<(SweepRecord, f64)>> {
    let mut out = Vec::new();
    for &n in n_list {
        for &(r, s) in shapes {
            let start = Instant::now();
            let rec = estimate_record(&ExperimentConfig {
                n,
                perms: r,
                maps: s,
                trials,
                seed,
            })?;
            out.push((rec, start.elapsed().as_secs_f64()));
        }
    }
    Ok(out)
}

pub fn to_json_lines<T: Serialize>(records: &[T]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn config_validation() {
        let base = ExperimentConfig {
            n: 3,
            perms: 0,
            maps: 1,
            trials: 10,
            seed: 1,
        };
        assert!(base.validate().is_ok());
        assert!(ExperimentConfig {
            perms: 0,
            maps: 0,
            ..base
        }
        .validate()
        .is_err());
        assert!(ExperimentConfig { trials: 0, ..base }.validate().is_err());
        assert!(ExperimentConfig { n: 0, ..base }.validate().is_err());
    }

    #[test]
    fn exact_single_map_is_one_over_n() {
        for n in 2..=7 {
            let e = exact_sync_probability(n, 0, 1).unwrap();
            assert_eq!(e.value, q(1, n as i64));
            assert_eq!(e.fraction(), format!("1/{n}"));
        }
        for n in 2..=5 {
            let (hits, total) = count_synchronizing_tuples(n, 0, 1).unwrap();
            assert_eq!(q(hits as i64, total as i64), q(1, n as i64));
        }
    }

    #[test]
    fn exact_small_shapes() {
        // synchronizing iff at least one of the two maps on 2 points is constant
        let brute = all_endofunctions(2)
            .flat_map(|f| all_endofunctions(2).map(move |g| (f.clone(), g)))
            .filter(|(f, g)| f.rank() == 1 || g.rank() == 1)
            .count();
        assert_eq!(brute, 12);
        assert_eq!(exact_sync_probability(2, 0, 2).unwrap().value, q(3, 4));
        // perm x map on 2 points: 2 * 4 tuples, synchronizing iff the map is constant
        assert_eq!(count_synchronizing_tuples(2, 1, 1).unwrap(), (4, 8));
        assert_eq!(exact_sync_probability(2, 1, 1).unwrap().value, q(1, 2));
        assert_eq!(exact_sync_probability(3, 2, 0).unwrap().value, q(0, 1));
    }

    #[test]
    fn exact_rejects_huge_shapes() {
        let err = exact_sync_probability(10, 0, 2).unwrap_err();
        assert!(err.to_string().contains("closed form"));
        assert!(err.to_string().contains("Monte Carlo"));
    }

    #[test]
    fn estimate_is_deterministic_and_certified() {
        let cfg = ExperimentConfig {
            n: 6,
            perms: 1,
            maps: 1,
            trials: 3000,
            seed: 17,
        };
        let a = estimate_sync_probability(&cfg).unwrap();
        let b = estimate_sync_probability(&cfg).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = pool.install(|| estimate_sync_probability(&cfg).unwrap());
        assert_eq!(a, c);
    }

    #[test]
    fn permutations_never_synchronize() {
        let cfg = ExperimentConfig {
            n: 5,
            perms: 2,
            maps: 0,
            trials: 500,
            seed: 3,
        };
        assert_eq!(estimate_sync_probability(&cfg).unwrap().successes, 0);
    }

    #[test]
    fn two_point_two_maps_brackets_three_quarters() {
        let cfg = ExperimentConfig {
            n: 2,
            perms: 0,
            maps: 2,
            trials: 20_000,
            seed: 8,
        };
        assert!(estimate_sync_probability(&cfg).unwrap().contains(0.75));
    }

    #[test]
    fn edge_graph_bounds() {
        assert_eq!(edge_graph_bound(4), q(3, 128));
        assert_eq!(edge_graph_bound(2), q(1, 16));
        assert_eq!(edge_graph_union_bound(4), q(3, 32));
        assert_eq!(edge_graph_union_bound(2), q(1, 4));
    }

    #[test]
    fn edge_graph_exact_small() {
        // on two points the only single-edge graph is {1,2}; both maps must be bijections
        assert_eq!(edge_graph_exact(2).unwrap(), q(4, 16));
        for n in 2..=4 {
            assert!(edge_graph_exact(n).unwrap() <= edge_graph_union_bound(n));
        }
    }

    #[test]
    fn sweep_records_are_reproducible() {
        let a = sweep(&[5, 7], &[(0, 1), (1, 1)], 500, 4).unwrap();
        let b = sweep(&[5, 7], &[(0, 1), (1, 1)], 500, 4).unwrap();
        let ra: Vec<_> = a.into_iter().map(|(r, _)| r).collect();
        let rb: Vec<_> = b.into_iter().map(|(r, _)| r).collect();
        assert_eq!(to_json_lines(&ra), to_json_lines(&rb));
        assert_eq!(ra.len(), 4);
        assert_eq!(ra[0].exact.as_deref(), Some("1/5"));
        assert_eq!(ra[1].exact, None);
        assert!(sweep(&[], &[(0, 1)], 10, 1).unwrap().is_empty());
    }

    #[test]
    fn explorer_n4() {
        let (records, summary) = explore_maximal_nonsync(4, false).unwrap();
        assert_eq!(records.len(), 64);
        assert_eq!(summary.violations, 0);
        let single_edges: Vec<_> = records.iter().filter(|r| r.edges.len() == 1).collect();
        assert_eq!(single_edges.len(), 6);
        for r in single_edges {
            assert!(r.nearcon.as_ref().unwrap().passes);
            assert_eq!(r.maximal_bruteforce, Some(true));
            assert_eq!(r.end_count.as_deref(), Some("32"));
        }
        let null = records.iter().find(|r| r.null).unwrap();
        assert!(null.nearcon.is_none());
        let (canon, _) = explore_maximal_nonsync(4, true).unwrap();
        assert_eq!(canon.len(), 11);
    }
}
