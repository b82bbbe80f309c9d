//! Fixtures shared by the criterion benches.

use syncmon::rng::substream;
use syncmon::transform::random_endofunction;
use syncmon::{GeneratorSet, SimpleGraph};

pub fn random_generators(n: usize, k: usize, seed: u64) -> GeneratorSet {
    let mut rng = substream(seed, 0);
    GeneratorSet::new((0..k).map(|_| random_endofunction(n, &mut rng)).collect()).unwrap()
}

/// A non-synchronizing instance with a nontrivial Gr: maps that preserve
/// the parity classes of `{0..n}`, so points of different parity never merge.
pub fn parity_preserving(n: usize) -> GeneratorSet {
    let a = (0..n as u32).map(|v| (v + 2) % n as u32).collect();
    let b = (0..n as u32).map(|v| v % 2).collect();
    GeneratorSet::new(vec![
        syncmon::Endofunction::from_images(a).unwrap(),
        syncmon::Endofunction::from_images(b).unwrap(),
    ])
    .unwrap()
}

pub fn petersen() -> SimpleGraph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let edges: Vec<_> = outer.chain(spokes).chain(inner).collect();
    SimpleGraph::from_edges(10, &edges).unwrap()
}
