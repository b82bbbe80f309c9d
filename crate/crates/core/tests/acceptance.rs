//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and then
//! asserts; run with `--nocapture` to see the lines.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use syncmon::dixon::{cn_table, intransitive_union_bound, is_transitive, monte_carlo_transitive};
use syncmon::endo::{endomorphism_count, enumerate_endomorphisms, hull, is_endomorphism};
use syncmon::enumerate::labeled_graphs;
use syncmon::experiments::{
    count_synchronizing_tuples, edge_graph_bound, edge_graph_experiment, estimate_sync_probability,
    exact_sync_probability, explore_maximal_nonsync, sweep, to_json_lines, ExperimentConfig,
};
use syncmon::maximal::{derived_graph, maximality_bruteforce, nearcon_check};
use syncmon::rng::substream;
use syncmon::sync::DEFAULT_CLOSURE_CAP;
use syncmon::transform::{all_endofunctions, all_permutations, random_endofunction};
use syncmon::{
    chromatic_number, clique_number, gr_of_generators, gr_of_monoid, min_rank_witness,
    monoid_closure, GeneratorSet, SimpleGraph,
};

fn report(id: u32, ok: bool, detail: impl std::fmt::Display) {
    println!(
        "criterion {id:>2}: {} - {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn q(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The 200 generator sets shared by criteria 4 to 6: n in 1..=5, k in 1..=3.
fn instances() -> Vec<GeneratorSet> {
    (0..200u64)
        .map(|i| {
            let mut rng = substream(20_251_015, i);
            let n = 1 + (i as usize % 5);
            let k = 1 + (i as usize / 5 % 3);
            GeneratorSet::new((0..k).map(|_| random_endofunction(n, &mut rng)).collect()).unwrap()
        })
        .collect()
}

#[test]
fn criterion_01_exact_one_over_n() {
    let start = Instant::now();
    let mut ok = true;
    for n in 2..=7 {
        ok &= exact_sync_probability(n, 0, 1).unwrap().value == q(1, n as u64);
    }
    for n in 2..=5 {
        let (hits, total) = count_synchronizing_tuples(n, 0, 1).unwrap();
        ok &= total == (n as u64).pow(n as u32) && q(hits, total) == q(1, n as u64);
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(10);
    report(
        1,
        ok,
        format!("1/n for n=2..7, enumeration n<=5, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_02_rooted_tree_count() {
    let start = Instant::now();
    let mut ok = true;
    for n in 2..=7usize {
        let count = all_endofunctions(n)
            .filter(|f| f.has_unique_periodic_point())
            .count();
        ok &= count == n.pow(n as u32 - 1);
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    report(
        2,
        ok,
        format!("n^(n-1) unique-periodic maps for n=2..7, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_03_single_edge_endomorphisms() {
    let mut ok = true;
    for n in 3..=6usize {
        let g = SimpleGraph::from_edges(n, &[(0, 1)]).unwrap();
        let listed = enumerate_endomorphisms(&g, 1_000_000).unwrap().len();
        let expected = 2 * n.pow(n as u32 - 2);
        ok &= listed == expected;
        ok &= endomorphism_count(&g, 1_000_000).unwrap() == BigUint::from(expected);
    }
    report(3, ok, "|End(single edge)| = 2n^(n-2) for n=3..6");
    assert!(ok);
}

#[test]
fn criterion_04_gr_oracle_equivalence() {
    let failures = instances()
        .iter()
        .filter(|s| {
            let closure = monoid_closure(s, DEFAULT_CLOSURE_CAP).unwrap();
            gr_of_generators(s) != gr_of_monoid(s.degree(), &closure)
        })
        .count();
    report(
        4,
        failures == 0,
        format!("{failures} mismatches over 200 generator sets"),
    );
    assert_eq!(failures, 0);
}

#[test]
fn criterion_05_min_rank_certification() {
    let mut failures = 0;
    for s in instances() {
        let gr = gr_of_generators(&s);
        let closure = monoid_closure(&s, DEFAULT_CLOSURE_CAP).unwrap();
        let min_rank = closure.iter().map(|f| f.rank()).min().unwrap();
        let (word, witness) = min_rank_witness(&s);
        let consistent = clique_number(&gr) == min_rank
            && chromatic_number(&gr) == min_rank
            && witness.rank() == min_rank
            && s.evaluate(&word) == witness;
        failures += usize::from(!consistent);
    }
    report(
        5,
        failures == 0,
        format!("omega = chi = witness rank = min rank; {failures} failures"),
    );
    assert_eq!(failures, 0);
}

#[test]
fn criterion_06_endomorphisms_and_hulls() {
    let start = Instant::now();
    let mut failures = 0;
    for s in instances() {
        let gr = gr_of_generators(&s);
        let closure = monoid_closure(&s, DEFAULT_CLOSURE_CAP).unwrap();
        failures += usize::from(!closure.iter().all(|f| is_endomorphism(&gr, f)));
        failures += usize::from(hull(&gr) != gr);
    }
    let mut idempotence = 0;
    for g in labeled_graphs(5) {
        let h = hull(&g);
        idempotence += usize::from(hull(&h) != h);
    }
    let elapsed = start.elapsed();
    let ok = failures == 0 && idempotence == 0 && elapsed < Duration::from_secs(300);
    report(
        6,
        ok,
        format!("{failures} instance failures, {idempotence} non-idempotent hulls of 1024, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_07_derived_graph_keeps_endomorphisms() {
    let mut checked = 0;
    let mut failures = 0;
    for n in 1..=5 {
        for g in labeled_graphs(n) {
            let d = derived_graph(&g);
            for f in enumerate_endomorphisms(&g, 1_000_000).unwrap() {
                failures += usize::from(!is_endomorphism(&d, &f));
            }
            checked += 1;
        }
    }
    report(
        7,
        failures == 0,
        format!("End(X) <= End(X') on {checked} labeled graphs"),
    );
    assert_eq!(failures, 0);
}

#[test]
fn criterion_08_maximality_small_n() {
    let mut ok = true;
    for n in 3..=4 {
        for v in 0..n {
            for w in v + 1..n {
                let g = SimpleGraph::from_edges(n, &[(v, w)]).unwrap();
                ok &= nearcon_check(&g).passes;
                ok &= maximality_bruteforce(&g).unwrap();
            }
        }
    }
    let (records, summary) = explore_maximal_nonsync(5, true).unwrap();
    ok &= records.len() == 34 && summary.bruteforce_checked > 0 && summary.violations == 0;
    report(
        8,
        ok,
        format!(
            "single edges n=3,4 maximal; n=5 canonical: {} graphs, {} brute-forced, {} violations",
            records.len(),
            summary.bruteforce_checked,
            summary.violations
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_09_dixon_baseline() {
    let table = cn_table(40);
    let expected = [(2, 3u64), (3, 26), (4, 426), (5, 11064)];
    let mut ok = true;
    for (n, cn) in expected {
        let perms = all_permutations(n);
        let mut brute = 0u64;
        for a in &perms {
            for b in &perms {
                brute += u64::from(is_transitive(&[a.clone(), b.clone()]).unwrap());
            }
        }
        ok &= brute == cn && *table.get(n) == BigUint::from(cn);
    }
    for n in 1..=40 {
        ok &= table.recurrence_holds(n);
        if n >= 2 {
            ok &= intransitive_union_bound(n).unwrap()
                >= BigRational::one() - table.transitive_probability(n);
        }
    }
    report(
        9,
        ok,
        "c_2..c_5 match orbit counts; recurrence and union bound to n=40",
    );
    assert!(ok);
}

#[test]
fn criterion_10_monte_carlo_calibration() {
    let start = Instant::now();
    let single = estimate_sync_probability(&ExperimentConfig {
        n: 30,
        perms: 0,
        maps: 1,
        trials: 100_000,
        seed: 30,
    })
    .unwrap();
    let t1 = start.elapsed();
    let start = Instant::now();
    let pairs = monte_carlo_transitive(4, true, 100_000, 4).unwrap();
    let t2 = start.elapsed();
    let target = (426.0f64) / 576.0;
    let ok = single.contains(1.0 / 30.0)
        && pairs.contains(target)
        && t1 < Duration::from_secs(60)
        && t2 < Duration::from_secs(60);
    report(
        10,
        ok,
        format!(
            "n=30 single map [{:.5}, {:.5}] vs 1/30 ({t1:.2?}); n=4 perm pairs [{:.5}, {:.5}] vs 426/576 ({t2:.2?})",
            single.ci_low, single.ci_high, pairs.ci_low, pairs.ci_high
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_11_single_edge_bound() {
    let mut ok = true;
    let mut lines = Vec::new();
    for n in 4..=8 {
        let r = edge_graph_experiment(n, 100_000, 1100 + n as u64).unwrap();
        let bound = edge_graph_bound(n).to_f64().unwrap();
        let pass = r.estimate.estimate <= bound + 3.0 * r.sigma;
        ok &= pass;
        lines.push(format!(
            "n={n} est={:.5} bound={bound:.5} 3sigma={:.5}",
            r.estimate.estimate,
            3.0 * r.sigma
        ));
    }
    report(11, ok, lines.join("; "));
    assert!(ok);
}

#[test]
fn criterion_12_sweep_schema_and_determinism() {
    let run = || {
        let recs: Vec<_> = sweep(&[10, 20, 40, 80], &[(0, 2)], 10_000, 12)
            .unwrap()
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        to_json_lines(&recs)
    };
    let first = run();
    let second = run();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let serial = pool.install(run);
    let keys: HashSet<&str> = [
        "experiment",
        "n",
        "r",
        "s",
        "trials",
        "seed",
        "successes",
        "estimate",
        "ci_low",
        "ci_high",
        "exact",
    ]
    .into_iter()
    .collect();
    let mut ok = first == second && first == serial;
    let lines: Vec<&str> = first.lines().collect();
    ok &= lines.len() == 4;
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let obj = v.as_object().unwrap();
        ok &= obj.keys().map(String::as_str).collect::<HashSet<_>>() == keys;
        let (lo, est, hi) = (
            v["ci_low"].as_f64().unwrap(),
            v["estimate"].as_f64().unwrap(),
            v["ci_high"].as_f64().unwrap(),
        );
        ok &= 0.0 <= lo && lo <= est && est <= hi && hi <= 1.0;
        ok &= v["exact"].is_null() && v["r"] == 0 && v["s"] == 2 && v["trials"] == 10_000;
    }
    let estimates: Vec<String> = lines
        .iter()
        .map(|l| {
            format!(
                "{:.4}",
                serde_json::from_str::<serde_json::Value>(l).unwrap()["estimate"]
                    .as_f64()
                    .unwrap()
            )
        })
        .collect();
    report(
        12,
        ok,
        format!(
            "(r,s)=(0,2) estimates for n=10,20,40,80: {}",
            estimates.join(", ")
        ),
    );
    assert!(ok);
}
