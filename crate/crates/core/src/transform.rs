//! Endofunctions of `{1..n}` and their elementary structure.
//!
//! Maps are stored 0-based internally. Points and images are reported
//! 1-based only at the file-format boundary (see [`crate::io`]).
//!
//! Composition is **left-to-right**: `f.then(&g)` is the map `v -> (vf)g`,
//! matching the `vf` notation for transformations. Most libraries compose
//! the other way round.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A total map on `{0..n}` stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endofunction {
    images: Vec<u32>,
}

impl Endofunction {
    /// Builds a map from 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        if let Some((point, &image)) = images.iter().enumerate().find(|(_, &x)| x as usize >= n) {
            return Err(Error::ImageOutOfRange {
                point: point + 1,
                image: image as usize + 1,
                n,
            });
        }
        Ok(Self { images })
    }

    /// Builds a map from 1-based images, e.g. `[2, 3, 1]` for the 3-cycle.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        let mut out = Vec::with_capacity(n);
        for (point, &image) in images.iter().enumerate() {
            if image == 0 || image > n {
                return Err(Error::ImageOutOfRange {
                    point: point + 1,
                    image,
                    n,
                });
            }
            out.push((image - 1) as u32);
        }
        Ok(Self { images: out })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(!images.is_empty());
        debug_assert!(images.iter().all(|&x| (x as usize) < images.len()));
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "degree must be positive");
        Self {
            images: (0..n as u32).collect(),
        }
    }

    /// The constant map onto the 0-based point `c`.
    pub fn constant(n: usize, c: usize) -> Self {
        assert!(c < n, "constant value out of range");
        Self {
            images: vec![c as u32; n],
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `v`.
    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// Left-to-right product: `v(fg) = (vf)g`.
    pub fn then(&self, g: &Endofunction) -> Result<Endofunction> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: g.degree(),
            });
        }
        Ok(self.then_unchecked(g))
    }

    #[inline]
    pub(crate) fn then_unchecked(&self, g: &Endofunction) -> Endofunction {
        Endofunction {
            images: self.images.iter().map(|&x| g.images[x as usize]).collect(),
        }
    }

    /// `f^k` for `k >= 0`.
    pub fn power(&self, k: usize) -> Endofunction {
        let mut acc = Endofunction::identity(self.degree());
        for _ in 0..k {
            acc = acc.then_unchecked(self);
        }
        acc
    }

    /// Sorted 0-based image points.
    pub fn image_set(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        for &x in &self.images {
            seen[x as usize] = true;
        }
        seen.iter()
            .enumerate()
            .filter_map(|(v, &s)| s.then_some(v))
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut rank = 0;
        for &x in &self.images {
            if !seen[x as usize] {
                seen[x as usize] = true;
                rank += 1;
            }
        }
        rank
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn kernel(&self) -> KernelPartition {
        let n = self.degree();
        let mut slot = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let x = self.apply(v);
            if slot[x] == usize::MAX {
                slot[x] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[x]].push(v);
        }
        KernelPartition { n, blocks }
    }

    /// Periodic points and cycle structure of the functional graph.
    ///
    /// Iterates the image set `S -> f(S)` from `S = {0..n}` until it stops
    /// shrinking; the fixed point is the set of periodic points.
    pub fn periodicity(&self) -> PeriodicitySummary {
        let n = self.degree();
        let mut current = vec![true; n];
        let mut size = n;
        loop {
            let mut next = vec![false; n];
            for v in (0..n).filter(|&v| current[v]) {
                next[self.apply(v)] = true;
            }
            let next_size = next.iter().filter(|&&b| b).count();
            current = next;
            if next_size == size {
                break;
            }
            size = next_size;
        }
        let periodic_points: Vec<usize> = (0..n).filter(|&v| current[v]).collect();

        let mut visited = vec![false; n];
        let mut cycle_lengths = Vec::new();
        for &start in &periodic_points {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !visited[v] {
                visited[v] = true;
                len += 1;
                v = self.apply(v);
            }
            cycle_lengths.push(len);
        }
        cycle_lengths.sort_unstable();
        PeriodicitySummary {
            periodic_points,
            cycle_lengths,
        }
    }

    /// `<f>` is synchronizing exactly when `f` has a single periodic point.
    pub fn has_unique_periodic_point(&self) -> bool {
        self.periodicity().periodic_points.len() == 1
    }
}

impl fmt::Debug for Endofunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endofunction{:?}", self.to_one_based())
    }
}

/// Left-to-right composition, see [`Endofunction::then`].
pub fn compose(f: &Endofunction, g: &Endofunction) -> Result<Endofunction> {
    f.then(g)
}

/// Partition of the domain into preimage classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPartition {
    pub n: usize,
    /// 0-based blocks, each sorted, ordered by smallest element.
    pub blocks: Vec<Vec<usize>>,
}

impl KernelPartition {
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicitySummary {
    /// Sorted 0-based periodic points.
    pub periodic_points: Vec<usize>,
    /// Cycle lengths in nondecreasing order.
    pub cycle_lengths: Vec<usize>,
}

/// Uniform over all `n^n` maps.
pub fn random_endofunction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endofunction {
    assert!(n > 0, "degree must be positive");
    let images = (0..n).map(|_| rng.random_range(0..n as u32)).collect();
    Endofunction { images }
}

/// Uniform over all `n!` permutations (Fisher-Yates shuffle).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Endofunction {
    assert!(n > 0, "degree must be positive");
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Endofunction { images }
}

/// Every map on `n` points, in lexicographic order of image tables.
pub fn all_endofunctions(n: usize) -> impl Iterator<Item = Endofunction> {
    assert!(n > 0, "degree must be positive");
    let total = (n as u64).checked_pow(n as u32).expect("n^n overflows u64");
    (0..total).map(move |mut code| {
        let mut images = vec![0u32; n];
        for slot in images.iter_mut().rev() {
            *slot = (code % n as u64) as u32;
            code /= n as u64;
        }
        Endofunction { images }
    })
}

/// Every permutation of `n` points in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Endofunction> {
    assert!(n > 0, "degree must be positive");
    let mut current: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![Endofunction {
        images: current.clone(),
    }];
    // next lexicographic permutation
    while let Some(i) = (0..n.saturating_sub(1))
        .rev()
        .find(|&i| current[i] < current[i + 1])
    {
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(Endofunction {
            images: current.clone(),
        });
    }
    out
}
