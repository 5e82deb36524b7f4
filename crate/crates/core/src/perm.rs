//! Permutations of `{1..n}`: composition, inverses, cycle structure, Cayley
//! distance, and full-group enumeration for brute-force oracles.
//!
//! Elements are stored 0-based internally; every external representation
//! (text format, tuple queries, cycle listings) is 1-based. The composition
//! convention is `compose(a, b)(i) = a(b(i))`, i.e. `b` acts first.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Ceiling for full-group enumeration (9! = 362,880 elements).
pub const ENUMERATION_CAP: usize = 9;

/// A permutation in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

/// Cycle type of a permutation: the multiset of cycle lengths as a partition
/// of n. The cycle count is `n` minus the Cayley distance to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType {
    partition: Partition,
}

impl CycleType {
    pub fn new(partition: Partition) -> Self {
        CycleType { partition }
    }

    /// Cycle lengths, weakly decreasing.
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn cycle_count(&self) -> usize {
        self.partition.parts().len()
    }

    pub fn n(&self) -> usize {
        self.partition.weight()
    }
}

impl Permutation {
    /// The identity of S_n.
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u8).collect(),
        }
    }

    /// Build from a 1-based one-line image `[sigma(1), ..., sigma(n)]`.
    pub fn from_one_line(image: &[usize]) -> Result<Self> {
        let n = image.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("bad length {n}")));
        }
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &v in image {
            if v < 1 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v - 1] = true;
            img.push((v - 1) as u8);
        }
        Ok(Permutation { image: img })
    }

    pub(crate) fn from_zero_based_unchecked(image: Vec<u8>) -> Self {
        Permutation { image }
    }

    /// The transposition swapping 1-based elements `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b || a < 1 || b < 1 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) invalid for n = {n}"
            )));
        }
        let mut p = Permutation::identity(n);
        p.image.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Image of the 1-based element `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize + 1
    }

    /// Image of the 0-based element `i`.
    #[inline]
    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// Group product: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let image = other
            .image
            .iter()
            .map(|&b| self.image[b as usize])
            .collect();
        Ok(Permutation { image })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize] = i as u8;
        }
        Permutation { image }
    }

    /// Cycle decomposition as 1-based cycles, each starting at its smallest
    /// element, listed in increasing order of that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.image[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths (fixed points count as 1-cycles).
    pub fn cycle_type(&self) -> CycleType {
        let mut lens: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        CycleType::new(Partition::from_sorted_unchecked(lens))
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Number of non-fixed points.
    pub fn moved_count(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize != *i)
            .count()
    }

    /// Cayley distance `d(a, b) = n - cycles(a b^{-1})`: the least number of
    /// transpositions taking `b` to `a`.
    pub fn cayley_distance(&self, other: &Permutation) -> Result<usize> {
        let q = self.compose(&other.inverse())?;
        Ok(q.n() - q.cycle_count())
    }

    /// Lexicographic rank of the one-line word among all of S_n.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0usize;
        let mut fact = (1..n).product::<usize>(); // (n-1)!
        for i in 0..n {
            let smaller = self.image[i + 1..]
                .iter()
                .filter(|&&v| v < self.image[i])
                .count();
            rank += smaller * fact;
            if i + 1 < n {
                fact /= n - 1 - i;
            }
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Result<Permutation> {
        let total = factorial_usize(n)?;
        if rank >= total {
            return Err(Error::InvalidPermutation(format!(
                "rank {rank} out of range for S_{n}"
            )));
        }
        let mut avail: Vec<u8> = (0..n as u8).collect();
        let mut image = Vec::with_capacity(n);
        let mut fact = total / n.max(1);
        for i in 0..n {
            let pos = rank / fact;
            rank %= fact;
            image.push(avail.remove(pos));
            if i + 1 < n {
                fact /= n - 1 - i;
            }
        }
        Ok(Permutation { image })
    }

    /// Uniform random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
        let mut image: Vec<u8> = (0..n as u8).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            image.swap(i, j);
        }
        Permutation { image }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .image
            .iter()
            .map(|&v| (v as usize + 1).to_string())
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses comma-separated 1-based one-line notation, e.g. `"2,3,1"`.
    fn from_str(s: &str) -> Result<Permutation> {
        let values: Result<Vec<usize>> = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad permutation entry {tok:?}: {e}")))
            })
            .collect();
        Permutation::from_one_line(&values?)
    }
}

pub(crate) fn factorial_usize(n: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for i in 2..=n {
        acc = acc.checked_mul(i).ok_or(Error::Overflow("factorial"))?;
    }
    Ok(acc)
}

pub(crate) fn factorial_u128(n: usize) -> Result<u128> {
    let mut acc: u128 = 1;
    for i in 2..=n as u128 {
        acc = acc.checked_mul(i).ok_or(Error::Overflow("factorial"))?;
    }
    Ok(acc)
}

/// All of S_n in lexicographic one-line order; the first element is the
/// identity. Errors when `n` exceeds [`ENUMERATION_CAP`].
pub fn enumerate_sn(n: usize) -> Result<Vec<Permutation>> {
    enumerate_sn_capped(n, ENUMERATION_CAP)
}

/// [`enumerate_sn`] with an explicit cap.
pub fn enumerate_sn_capped(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let total = factorial_usize(n)?;
    let mut out = Vec::with_capacity(total);
    let mut image: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Permutation {
            image: image.clone(),
        });
        if !next_lex(&mut image) {
            break;
        }
    }
    Ok(out)
}

/// Advances `image` to its lexicographic successor; false at the last word.
fn next_lex(image: &mut [u8]) -> bool {
    let n = image.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && image[i - 1] >= image[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while image[j] <= image[i - 1] {
        j -= 1;
    }
    image.swap(i - 1, j);
    image[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{HashMap, HashSet, VecDeque};

    #[test]
    fn compose_identity_and_involution() {
        let e = Permutation::identity(4);
        let s = Permutation::from_one_line(&[3, 1, 4, 2]).unwrap();
        assert_eq!(e.compose(&s).unwrap(), s);
        assert_eq!(s.compose(&e).unwrap(), s);
        let t = Permutation::transposition(4, 1, 2).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_example_applies_b_first() {
        // (a . b)(i) = a(b(i)), frozen from a hand trace.
        let a = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let b = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, Permutation::from_one_line(&[3, 2, 1]).unwrap());
        for i in 1..=3 {
            assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
    }

    #[test]
    fn compose_size_mismatch_errors() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::SizeMismatch(3, 4))));
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(5).inverse().is_identity());
        let t = Permutation::transposition(5, 2, 4).unwrap();
        assert_eq!(t.inverse(), t);
        let s = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(s.inverse(), Permutation::from_one_line(&[3, 1, 2]).unwrap());
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
    }

    #[test]
    fn group_laws_exhaustive_s4() {
        let all = enumerate_sn(4).unwrap();
        for a in &all {
            assert!(a.compose(&a.inverse()).unwrap().is_identity());
            for b in &all {
                let ab = a.compose(b).unwrap();
                for c in &all {
                    let left = ab.compose(c).unwrap();
                    let right = a.compose(&b.compose(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn cycle_type_examples() {
        let e = Permutation::identity(5);
        assert_eq!(e.cycle_type().partition().parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(e.cycle_type().cycle_count(), 5);

        let t = Permutation::transposition(5, 1, 3).unwrap();
        assert_eq!(t.cycle_type().partition().parts(), &[2, 1, 1, 1]);
        assert_eq!(t.cycle_type().cycle_count(), 4);

        let s = Permutation::from_one_line(&[2, 3, 1, 5, 4]).unwrap();
        assert_eq!(s.cycle_type().partition().parts(), &[3, 2]);
        assert_eq!(s.cycle_type().cycle_count(), 2);
    }

    /// BFS distance in the transposition Cayley graph, as an oracle.
    fn bfs_distances(n: usize) -> HashMap<Permutation, usize> {
        let mut dist = HashMap::new();
        let e = Permutation::identity(n);
        dist.insert(e.clone(), 0usize);
        let mut queue = VecDeque::from([e]);
        let transpositions: Vec<Permutation> = (1..=n)
            .flat_map(|a| ((a + 1)..=n).map(move |b| (a, b)))
            .map(|(a, b)| Permutation::transposition(n, a, b).unwrap())
            .collect();
        while let Some(cur) = queue.pop_front() {
            let d = dist[&cur];
            for t in &transpositions {
                let next = t.compose(&cur).unwrap();
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    #[test]
    fn cayley_distance_matches_bfs_on_s4() {
        let oracle = bfs_distances(4);
        let all = enumerate_sn(4).unwrap();
        for a in &all {
            for b in &all {
                let q = a.compose(&b.inverse()).unwrap();
                assert_eq!(a.cayley_distance(b).unwrap(), oracle[&q]);
            }
        }
    }

    #[test]
    fn cayley_distance_examples() {
        let s = Permutation::from_one_line(&[4, 2, 1, 5, 3]).unwrap();
        assert_eq!(s.cayley_distance(&s).unwrap(), 0);
        let t = Permutation::transposition(5, 2, 5).unwrap();
        assert_eq!(t.compose(&s).unwrap().cayley_distance(&s).unwrap(), 1);
        // A 3-cycle is two transpositions away from the identity.
        let c = Permutation::from_one_line(&[2, 3, 1, 4, 5]).unwrap();
        assert_eq!(c.cayley_distance(&Permutation::identity(5)).unwrap(), 2);
    }

    #[test]
    fn cayley_right_invariance_random_s6() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = Permutation::random(6, &mut rng);
            let b = Permutation::random(6, &mut rng);
            let t = Permutation::random(6, &mut rng);
            let lhs = a
                .compose(&t)
                .unwrap()
                .cayley_distance(&b.compose(&t).unwrap())
                .unwrap();
            assert_eq!(lhs, a.cayley_distance(&b).unwrap());
        }
    }

    #[test]
    fn enumerate_counts_and_order() {
        assert_eq!(enumerate_sn(3).unwrap().len(), 6);
        let s5 = enumerate_sn(5).unwrap();
        assert_eq!(s5.len(), 120);
        assert!(s5[0].is_identity());
        let distinct: HashSet<_> = s5.iter().cloned().collect();
        assert_eq!(distinct.len(), 120);
        assert!(enumerate_sn(10).is_err());
    }

    #[test]
    fn rank_unrank_round_trip() {
        for (r, p) in enumerate_sn(5).unwrap().iter().enumerate() {
            assert_eq!(p.rank(), r);
            assert_eq!(&Permutation::unrank(5, r).unwrap(), p);
        }
    }

    #[test]
    fn text_format_round_trip() {
        let p: Permutation = "2,3,1".parse().unwrap();
        assert_eq!(p, Permutation::from_one_line(&[2, 3, 1]).unwrap());
        assert_eq!(p.to_string(), "2,3,1");
        assert!("2,2,1".parse::<Permutation>().is_err());
        assert!("2,4,1".parse::<Permutation>().is_err());
    }

    proptest! {
        #[test]
        fn prop_cayley_right_invariant(seed in 0u64..5000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Permutation::random(6, &mut rng);
            let b = Permutation::random(6, &mut rng);
            let t = Permutation::random(6, &mut rng);
            prop_assert_eq!(
                a.compose(&t).unwrap().cayley_distance(&b.compose(&t).unwrap()).unwrap(),
                a.cayley_distance(&b).unwrap()
            );
        }

        #[test]
        fn prop_inverse_cancels(seed in 0u64..5000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Permutation::random(7, &mut rng);
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        }
    }
}
