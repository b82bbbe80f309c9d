//! Cross-module properties of monoids, graphs and the experiment drivers.

use syncmon::experiments::{estimate_sync_probability, ExperimentConfig};
use syncmon::rng::substream;
use syncmon::transform::random_endofunction;
use syncmon::{
    chromatic_number, clique_number, gr_of_generators, is_synchronizing, min_rank_witness,
    GeneratorSet,
};

fn random_set(seed: u64, index: u64, n: usize, k: usize) -> GeneratorSet {
    let mut rng = substream(seed, index);
    GeneratorSet::new((0..k).map(|_| random_endofunction(n, &mut rng)).collect()).unwrap()
}

#[test]
fn clique_equals_chromatic_on_monoid_graphs_n6() {
    for i in 0..300 {
        let s = random_set(601, i, 6, 1 + (i as usize % 3));
        let gr = gr_of_generators(&s);
        let omega = clique_number(&gr);
        assert_eq!(omega, chromatic_number(&gr));
        assert_eq!(min_rank_witness(&s).1.rank(), omega);
    }
}

#[test]
fn larger_monoids_have_smaller_graphs() {
    for i in 0..300 {
        let n = 2 + (i as usize % 6);
        let small = random_set(9, i, n, 1 + (i as usize % 2));
        let mut rng = substream(10, i);
        let big = small
            .with_generator(random_endofunction(n, &mut rng))
            .unwrap();
        let (g_small, g_big) = (gr_of_generators(&small), gr_of_generators(&big));
        assert!(g_big.is_spanning_subgraph_of(&g_small));
        if is_synchronizing(&small) {
            assert!(is_synchronizing(&big));
        }
    }
}

#[test]
fn min_rank_witness_image_is_a_clique() {
    for i in 0..200 {
        let n = 3 + (i as usize % 8);
        let s = random_set(33, i, n, 2);
        let gr = gr_of_generators(&s);
        let (word, f) = min_rank_witness(&s);
        assert!(gr.is_clique(&f.image_set()));
        assert!(word.len() <= n * n * n);
    }
}

#[test]
fn wilson_interval_coverage() {
    // 200 experiments of 1000 trials at n = 5, r = 0, s = 1, where p = 1/5
    let covered = (0..200u64)
        .filter(|&rep| {
            let cfg = ExperimentConfig {
                n: 5,
                perms: 0,
                maps: 1,
                trials: 1000,
                seed: 1_000 + rep,
            };
            estimate_sync_probability(&cfg).unwrap().contains(0.2)
        })
        .count();
    assert!(covered >= 180, "covered {covered} of 200");
}

#[test]
fn single_edge_probability_respects_full_union_bound() {
    use num_traits::ToPrimitive;
    use syncmon::experiments::{
        edge_graph_bound, edge_graph_exact, edge_graph_experiment, edge_graph_union_bound,
    };

    // exhaustive values sit between the displayed expression and the full union bound
    for n in 2..=4 {
        let exact = edge_graph_exact(n).unwrap();
        assert!(exact <= edge_graph_union_bound(n));
        assert!(exact > edge_graph_bound(n));
    }
    for n in 4..=8 {
        let r = edge_graph_experiment(n, 100_000, 1100 + n as u64).unwrap();
        assert!(r.within_union_bound, "n = {n}: {r:?}");
        assert!(r.estimate.estimate <= edge_graph_union_bound(n).to_f64().unwrap() + 3.0 * r.sigma);
    }
}
