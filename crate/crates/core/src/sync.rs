//! Synchronization of finitely generated transformation monoids.
//!
//! The central object is the pair automaton: generators act on unordered
//! pairs `{v, w}`, and a pair is *collapsible* when some element of the
//! monoid maps both points to the same image. Collapsibility is computed by
//! backward breadth-first search from the pairs merged by a single
//! generator, in `O(k n^2)` time, without enumerating the monoid.
//!
//! `Gr(M)` has an edge for every pair that is *not* collapsible.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::transform::Endofunction;

/// Default element cap for [`monoid_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Largest degree accepted by [`shortest_synchronizing_word`].
pub const MAX_SUBSET_BFS_DEGREE: usize = 64;

/// Number of unordered pairs of distinct points of `{0..n}`.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the pair `{v, w}` in colexicographic order.
#[inline]
pub fn pair_index(v: usize, w: usize) -> usize {
    debug_assert!(v != w);
    let (lo, hi) = if v < w { (v, w) } else { (w, v) };
    hi * (hi - 1) / 2 + lo
}

/// Inverse of [`pair_index`]; returns `(lo, hi)`.
pub fn pair_at(index: usize) -> (usize, usize) {
    // hi is the largest h with h(h-1)/2 <= index
    let mut hi = (((8 * index + 1) as f64).sqrt() as usize).div_ceil(2);
    while hi * (hi - 1) / 2 > index {
        hi -= 1;
    }
    while (hi + 1) * hi / 2 <= index {
        hi += 1;
    }
    (index - hi * (hi - 1) / 2, hi)
}

/// An ordered, nonempty list of maps of a common degree.
///
/// Represents the monoid they generate; the identity is always a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    generators: Vec<Endofunction>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Endofunction>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyGeneratorSet)?;
        let n = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: g.degree(),
            });
        }
        Ok(Self { n, generators })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Endofunction] {
        &self.generators
    }

    pub fn with_generator(&self, g: Endofunction) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(gens)
    }

    /// Evaluates a word left to right; the empty word is the identity.
    pub fn evaluate(&self, word: &Word) -> Endofunction {
        word.0
            .iter()
            .fold(Endofunction::identity(self.n), |acc, &i| {
                acc.then_unchecked(&self.generators[i])
            })
    }
}

/// A sequence of 0-based generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }
}

/// How a collapsible pair was first reached by the backward search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// The generator merges the pair outright.
    Direct { generator: usize },
    /// The generator maps the pair onto the collapsible pair `next`
    /// (a [`pair_index`]).
    Step { generator: usize, next: usize },
}

/// Collapsibility of every unordered pair, with back-pointers that rebuild
/// a merging word.
#[derive(Debug, Clone)]
pub struct CollapsibilityTable {
    n: usize,
    witness: Vec<Option<Witness>>,
    collapsible: usize,
}

impl CollapsibilityTable {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_collapsible(&self, v: usize, w: usize) -> bool {
        v != w && self.witness[pair_index(v, w)].is_some()
    }

    pub fn witness(&self, v: usize, w: usize) -> Option<Witness> {
        if v == w {
            None
        } else {
            self.witness[pair_index(v, w)]
        }
    }

    pub fn collapsible_count(&self) -> usize {
        self.collapsible
    }

    pub fn all_collapsible(&self) -> bool {
        self.collapsible == pair_count(self.n)
    }

    /// Follows the witness chain for `{v, w}`.
    pub fn merging_word(&self, v: usize, w: usize) -> Result<Word> {
        if v == w {
            return Err(Error::DegeneratePair { v: v + 1 });
        }
        let mut p = pair_index(v, w);
        let mut word = Vec::new();
        loop {
            match self.witness[p] {
                None => return Err(Error::NotCollapsible { v: v + 1, w: w + 1 }),
                Some(Witness::Direct { generator }) => {
                    word.push(generator);
                    return Ok(Word(word));
                }
                Some(Witness::Step { generator, next }) => {
                    word.push(generator);
                    p = next;
                }
            }
        }
    }

    /// `Gr(M)`: edges are the non-collapsible pairs.
    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::null(self.n);
        for w in 0..self.n {
            for v in 0..w {
                if self.witness[pair_index(v, w)].is_none() {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }
}

/// Backward closure on the pair automaton.
///
/// Seeds are the pairs merged by a single generator (lowest generator index
/// wins); the search then walks reverse edges `p --g--> q` from collapsible
/// `q` to uncollapsed `p`. Reverse lists are ordered by generator, then by
/// source pair, so witnesses are deterministic.
pub fn collapsibility_closure(s: &GeneratorSet) -> CollapsibilityTable {
    let n = s.degree();
    let pairs = pair_count(n);
    let mut witness: Vec<Option<Witness>> = vec![None; pairs];

    // CSR reverse adjacency: for each target pair, the (source, generator) edges.
    let mut offsets = vec![0u32; pairs + 1];
    let mut targets = Vec::with_capacity(s.len() * pairs);
    for g in s.generators() {
        for w in 0..n {
            for v in 0..w {
                let (a, b) = (g.apply(v), g.apply(w));
                let t = if a == b {
                    u32::MAX
                } else {
                    pair_index(a, b) as u32
                };
                if t != u32::MAX {
                    offsets[t as usize + 1] += 1;
                }
                targets.push(t);
            }
        }
    }
    for i in 0..pairs {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut rev = vec![(0u32, 0u32); offsets[pairs] as usize];
    for (gi, chunk) in targets.chunks(pairs.max(1)).enumerate() {
        for (p, &t) in chunk.iter().enumerate() {
            if t == u32::MAX {
                if witness[p].is_none() {
                    witness[p] = Some(Witness::Direct { generator: gi });
                }
            } else {
                let slot = &mut fill[t as usize];
                rev[*slot as usize] = (p as u32, gi as u32);
                *slot += 1;
            }
        }
    }

    let mut queue: VecDeque<usize> = (0..pairs).filter(|&p| witness[p].is_some()).collect();
    let mut collapsible = queue.len();
    while let Some(q) = queue.pop_front() {
        for &(p, g) in &rev[offsets[q] as usize..offsets[q + 1] as usize] {
            let p = p as usize;
            if witness[p].is_none() {
                witness[p] = Some(Witness::Step {
                    generator: g as usize,
                    next: q,
                });
                collapsible += 1;
                queue.push_back(p);
            }
        }
    }

    CollapsibilityTable {
        n,
        witness,
        collapsible,
    }
}

/// `Gr(<S>)` computed from the generators alone.
pub fn gr_of_generators(s: &GeneratorSet) -> SimpleGraph {
    collapsibility_closure(s).graph()
}

/// True when `<S>` contains a constant map.
pub fn is_synchronizing(s: &GeneratorSet) -> bool {
    collapsibility_closure(s).all_collapsible()
}

/// A word whose evaluation maps the 0-based points `v` and `w` together.
pub fn merging_word(s: &GeneratorSet, v: usize, w: usize) -> Result<Word> {
    collapsibility_closure(s).merging_word(v, w)
}

/// Greedy collapse to an element of minimum rank.
///
/// Starting from the identity, repeatedly takes the lexicographically
/// smallest collapsible pair `(v, w)` inside the current image and appends
/// its merging word. The final image is a clique of `Gr(M)`, so its size is
/// the minimum rank over the monoid.
pub fn min_rank_witness(s: &GeneratorSet) -> (Word, Endofunction) {
    let table = collapsibility_closure(s);
    let mut word = Word::default();
    let mut current = Endofunction::identity(s.degree());
    'collapse: loop {
        let image = current.image_set();
        for (i, &v) in image.iter().enumerate() {
            for &w in &image[i + 1..] {
                if let Ok(step) = table.merging_word(v, w) {
                    current = current.then_unchecked(&s.evaluate(&step));
                    word.extend(&step);
                    continue 'collapse;
                }
            }
        }
        break;
    }
    (word, current)
}

/// Minimum-length synchronizing word by breadth-first search over subsets.
///
/// Ties are broken towards the lexicographically least index sequence.
/// Returns `Ok(None)` when the monoid is not synchronizing.
pub fn shortest_synchronizing_word(s: &GeneratorSet) -> Result<Option<Word>> {
    let n = s.degree();
    if n > MAX_SUBSET_BFS_DEGREE {
        return Err(Error::TooLarge(format!(
            "subset search supports n <= {MAX_SUBSET_BFS_DEGREE}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(Some(Word::default()));
    }
    if !is_synchronizing(s) {
        return Ok(None);
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let apply = |g: &Endofunction, mut set: u64| -> u64 {
        let mut out = 0u64;
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            out |= 1u64 << g.apply(v);
        }
        out
    };

    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut queue = VecDeque::from([full]);
    parent.insert(full, (full, usize::MAX));
    while let Some(set) = queue.pop_front() {
        for (gi, g) in s.generators().iter().enumerate() {
            let next = apply(g, set);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, (set, gi));
            if next.count_ones() == 1 {
                let mut letters = Vec::new();
                let mut cur = next;
                while cur != full {
                    let (prev, g) = parent[&cur];
                    letters.push(g);
                    cur = prev;
                }
                letters.reverse();
                return Ok(Some(Word(letters)));
            }
            queue.push_back(next);
        }
    }
    unreachable!("synchronizing monoid must reach a singleton")
}

/// All elements of `<S>`, in breadth-first order from the identity.
pub fn monoid_closure(s: &GeneratorSet, cap: usize) -> Result<Vec<Endofunction>> {
    let id = Endofunction::identity(s.degree());
    let mut seen: HashSet<Endofunction> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut head = 0;
    while head < order.len() {
        let x = order[head].clone();
        head += 1;
        for g in s.generators() {
            let y = x.then_unchecked(g);
            if !seen.contains(&y) {
                if order.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "monoid closure",
                        cap: cap as u64,
                        partial: order.len() as u64,
                    });
                }
                seen.insert(y.clone());
                order.push(y);
            }
        }
    }
    Ok(order)
}

/// `Gr` evaluated directly from an explicit element list.
pub fn gr_of_monoid(n: usize, elements: &[Endofunction]) -> SimpleGraph {
    let mut g = SimpleGraph::complete(n);
    for f in elements {
        debug_assert_eq!(f.degree(), n);
        for w in 0..n {
            for v in 0..w {
                if f.apply(v) == f.apply(w) {
                    g.remove_edge(v, w);
                }
            }
        }
    }
    g
}

/// Pair automaton for very large generator sets.
///
/// Stores only the aggregate action on pairs (one predecessor bitset per
/// pair), so thousands of generators cost no more than the `P x P` relation
/// they induce. Used where a whole endomorphism monoid is a generator set.
#[derive(Debug, Clone)]
pub struct PairAutomaton {
    n: usize,
    direct: FixedBitSet,
    preds: Vec<FixedBitSet>,
}

impl PairAutomaton {
    pub fn new(n: usize) -> Self {
        let pairs = pair_count(n);
        Self {
            n,
            direct: FixedBitSet::with_capacity(pairs),
            preds: vec![FixedBitSet::with_capacity(pairs); pairs],
        }
    }

    pub fn from_generators<'a>(n: usize, gens: impl IntoIterator<Item = &'a Endofunction>) -> Self {
        let mut a = Self::new(n);
        for g in gens {
            a.add_generator(g);
        }
        a
    }

    pub fn add_generator(&mut self, g: &Endofunction) {
        assert_eq!(g.degree(), self.n);
        for w in 0..self.n {
            for v in 0..w {
                let p = pair_index(v, w);
                let (a, b) = (g.apply(v), g.apply(w));
                if a == b {
                    self.direct.insert(p);
                } else {
                    self.preds[pair_index(a, b)].insert(p);
                }
            }
        }
    }

    /// The set of collapsible pairs (by [`pair_index`]).
    pub fn collapsible(&self) -> FixedBitSet {
        let mut done = self.direct.clone();
        let mut stack: Vec<usize> = done.ones().collect();
        while let Some(q) = stack.pop() {
            for p in self.preds[q].ones() {
                if !done.contains(p) {
                    done.insert(p);
                    stack.push(p);
                }
            }
        }
        done
    }

    pub fn is_synchronizing(&self) -> bool {
        self.collapsible().count_ones(..) == pair_count(self.n)
    }
}
