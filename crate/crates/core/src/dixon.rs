//! The permutation baseline: transitivity of random permutation pairs.
//!
//! `c_n` counts ordered pairs in `S_n` generating a transitive group.
//! Sorting all `(n!)^2` pairs by the orbit of the point 1 gives
//!
//! ```text
//! sum_{k=1}^{n} C(n-1, k-1) c_k ((n-k)!)^2 = (n!)^2
//! ```
//!
//! which determines `c_n` from `c_1..c_{n-1}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, fraction_string, ratio, to_f64};
use crate::rng::substream;
use crate::stats::EstimateWithCI;
use crate::transform::{random_permutation, Endofunction};

/// Default table length.
pub const DEFAULT_MAX_N: usize = 40;

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbits of the group generated by `perms`, as sorted 0-based blocks
/// ordered by least element.
pub fn orbits(perms: &[Endofunction]) -> Result<Vec<Vec<usize>>> {
    let first = perms.first().ok_or(Error::EmptyGeneratorSet)?;
    let n = first.degree();
    for (index, p) in perms.iter().enumerate() {
        if p.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: p.degree(),
            });
        }
        if !p.is_permutation() {
            return Err(Error::NotPermutation { index: index + 1 });
        }
    }
    let mut sets = DisjointSets::new(n);
    for p in perms {
        for v in 0..n {
            sets.union(v, p.apply(v));
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = sets.find(v);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(v);
    }
    Ok(blocks)
}

pub fn is_transitive(perms: &[Endofunction]) -> Result<bool> {
    Ok(orbits(perms)?.len() == 1)
}

/// `c_1..c_max_n`.
#[derive(Debug, Clone)]
pub struct CnTable {
    values: Vec<BigUint>,
}

impl CnTable {
    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    /// `c_n` for `1 <= n <= max_n`.
    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n - 1]
    }

    /// Re-substitutes the table into the recurrence at `n`.
    pub fn recurrence_holds(&self, n: usize) -> bool {
        let lhs = (1..=n).fold(BigUint::zero(), |acc, k| {
            let rest = factorial(n - k);
            acc + binomial(n - 1, k - 1) * self.get(k) * &rest * &rest
        });
        let nf = factorial(n);
        lhs == &nf * &nf
    }

    /// `c_n / (n!)^2`.
    pub fn transitive_probability(&self, n: usize) -> BigRational {
        let nf = factorial(n);
        ratio(self.get(n).clone(), &nf * &nf)
    }
}

pub fn cn_table(max_n: usize) -> CnTable {
    assert!(max_n >= 1, "max_n must be positive");
    let mut values: Vec<BigUint> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let nf = factorial(n);
        let total = &nf * &nf;
        let others = (1..n).fold(BigUint::zero(), |acc, k| {
            let rest = factorial(n - k);
            acc + binomial(n - 1, k - 1) * &values[k - 1] * &rest * &rest
        });
        values.push(total - others);
    }
    CnTable { values }
}

pub fn transitive_pair_probability(n: usize) -> BigRational {
    cn_table(n).transitive_probability(n)
}

/// Union bound over the maximal intransitive subgroups `S_k x S_{n-k}`:
/// `(1/(n!)^2) sum_{k=1}^{floor(n/2)} C(n,k) (k!)^2 ((n-k)!)^2`.
pub fn intransitive_union_bound(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "union bound needs n >= 2, got {n}"
        )));
    }
    let sum = (1..=n / 2).fold(BigUint::zero(), |acc, k| {
        let a = factorial(k);
        let b = factorial(n - k);
        acc + binomial(n, k) * &a * &a * &b * &b
    });
    let nf = factorial(n);
    Ok(ratio(sum, &nf * &nf))
}

/// A single permutation is transitive exactly when it is an `n`-cycle, and
/// there are `(n-1)!` of those.
pub fn single_permutation_transitive_probability(n: usize) -> BigRational {
    assert!(n >= 1);
    ratio(factorial(n - 1), factorial(n))
}

/// Fraction of sampled permutations (`pairs = false`) or pairs that
/// generate a transitive group.
pub fn monte_carlo_transitive(
    n: usize,
    pairs: bool,
    trials: u64,
    seed: u64,
) -> Result<EstimateWithCI> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    let count = if pairs { 2 } else { 1 };
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i);
            let perms: Vec<_> = (0..count)
                .map(|_| random_permutation(n, &mut rng))
                .collect();
            u64::from(is_transitive(&perms).expect("sampled permutations are valid"))
        })
        .sum();
    Ok(EstimateWithCI::wilson(successes, trials))
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub float: f64,
}

impl From<&BigRational> for ExactValue {
    fn from(r: &BigRational) -> Self {
        Self {
            exact: fraction_string(r),
            float: to_f64(r),
        }
    }
}

/// One row of the emitted table.
#[derive(Debug, Clone, Serialize)]
pub struct DixonRow {
    pub n: usize,
    pub c_n: String,
    pub prob_transitive: ExactValue,
    /// `null` at `n = 1`, where there is no intransitive subgroup.
    pub union_bound: Option<ExactValue>,
    pub one_over_n: f64,
    /// `n^2 ((1 - c_n/(n!)^2) - 1/n)`.
    pub n2_times_gap: f64,
}

pub fn dixon_rows(max_n: usize) -> Vec<DixonRow> {
    let table = cn_table(max_n);
    (1..=max_n)
        .map(|n| {
            let p = table.transitive_probability(n);
            let fail = BigRational::one() - &p;
            let nn = BigInt::from(n);
            let gap = (&fail - BigRational::new(BigInt::one(), nn.clone()))
                * BigRational::from_integer(&nn * &nn);
            DixonRow {
                n,
                c_n: table.get(n).to_string(),
                prob_transitive: ExactValue::from(&p),
                union_bound: intransitive_union_bound(n)
                    .ok()
                    .as_ref()
                    .map(ExactValue::from),
                one_over_n: 1.0 / n as f64,
                n2_times_gap: to_f64(&gap),
            }
        })
        .collect()
}
