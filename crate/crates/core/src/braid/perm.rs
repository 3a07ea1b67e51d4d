use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MAX_STRANDS;

/// A set of Artin generator indices `1..n-1`, stored as a bitmask (bit `i-1` is `σ_i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u16);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    /// All generators of `B_n`.
    pub fn full(n: usize) -> Self {
        GenSet(((1u32 << (n - 1)) - 1) as u16)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u16;
        for i in indices {
            debug_assert!((1..MAX_STRANDS).contains(&i));
            bits |= 1 << (i - 1);
        }
        GenSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i < MAX_STRANDS && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest generator index in the set.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..MAX_STRANDS).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Element of the symmetric group `S_n` in array form.
///
/// `image(i)` is the final position of the strand that starts at position `i`
/// (both 1-based). Words compose left to right: the leftmost letter acts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    img: [u8; MAX_STRANDS],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_STRANDS);
        let mut img = [0u8; MAX_STRANDS];
        for (i, slot) in img.iter_mut().enumerate().take(n) {
            *slot = (i + 1) as u8;
        }
        Permutation { n: n as u8, img }
    }

    /// Validating constructor from a 1-based image sequence.
    pub fn new(image: &[usize]) -> Result<Self> {
        let n = image.len();
        if !(crate::MIN_STRANDS..=MAX_STRANDS).contains(&n) {
            return Err(Error::StrandCount(n));
        }
        let mut seen = 0u32;
        let mut img = [0u8; MAX_STRANDS];
        for (i, &v) in image.iter().enumerate() {
            if v == 0 || v > n || seen & (1 << v) != 0 {
                return Err(Error::NotAPermutation(n));
            }
            seen |= 1 << v;
            img[i] = v as u8;
        }
        Ok(Permutation { n: n as u8, img })
    }

    /// Position reversal `i ↦ n+1-i`, the permutation of `Δ`.
    pub fn reversal(n: usize) -> Self {
        let mut p = Self::identity(n);
        for i in 0..n {
            p.img[i] = (n - i) as u8;
        }
        p
    }

    /// Transposition of positions `i` and `i+1`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.img.swap(i - 1, i);
        p
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn image(&self, i: usize) -> usize {
        self.img[i - 1] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.img[..self.n()].iter().map(|&v| v as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.images().collect()
    }

    pub fn inverse(&self) -> Self {
        let mut q = *self;
        for i in 0..self.n() {
            q.img[self.img[i] as usize - 1] = (i + 1) as u8;
        }
        q
    }

    /// `self` followed by `other`: strand at `i` ends at `other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut r = *self;
        for i in 0..self.n() {
            r.img[i] = other.img[self.img[i] as usize - 1];
        }
        r
    }

    /// Swap the values `i` and `i+1` in the image (post-compose with `σ_i`).
    pub(crate) fn swap_values(&mut self, i: usize) {
        let n = self.n();
        for v in self.img[..n].iter_mut() {
            if *v as usize == i {
                *v += 1;
            } else if *v as usize == i + 1 {
                *v -= 1;
            }
        }
    }

    /// Swap the entries at positions `i` and `i+1` (pre-compose with `σ_i`).
    pub(crate) fn swap_positions(&mut self, i: usize) {
        self.img.swap(i - 1, i);
    }

    /// Positions `i` with `π(i) > π(i+1)`.
    pub fn descents(&self) -> GenSet {
        let mut bits = 0u16;
        for i in 0..self.n() - 1 {
            if self.img[i] > self.img[i + 1] {
                bits |= 1 << i;
            }
        }
        GenSet(bits)
    }

    /// `i ↦ n+1-π(n+1-i)`, conjugation by the reversal.
    pub fn flip(&self) -> Self {
        let n = self.n();
        let mut r = *self;
        for i in 0..n {
            r.img[i] = (n + 1 - self.img[n - 1 - i] as usize) as u8;
        }
        r
    }

    pub fn inversions(&self) -> usize {
        let s = &self.img[..self.n()];
        let mut count = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] > s[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.images().enumerate().all(|(i, v)| v == i + 1)
    }

    /// Every permutation of `1..=n` in lexicographic order of the image.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation::new(&cur).expect("valid permutation"));
            // next lexicographic permutation
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.images().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::new(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(&[1, 1, 3]).is_err());
        assert!(Permutation::new(&[1, 2, 4]).is_err());
        assert!(Permutation::new(&[2, 1]).is_err());
    }

    #[test]
    fn lexicographic_enumeration() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], Permutation::identity(4));
        assert_eq!(all[23], Permutation::reversal(4));
    }

    #[test]
    fn inverse_and_flip_are_involutions() {
        for p in Permutation::all(5) {
            assert_eq!(p.inverse().inverse(), p);
            assert_eq!(p.flip().flip(), p);
            assert!(p.then(&p.inverse()).is_identity());
        }
    }

    #[test]
    fn genset_ops() {
        let a = GenSet::from_indices([1, 3]);
        assert!(a.contains(3) && !a.contains(2));
        assert_eq!(a.min(), Some(1));
        assert!(a.is_subset(GenSet::full(4)));
        assert_eq!(a.to_string(), "{1,3}");
        assert_eq!(GenSet::full(3).difference(a), GenSet::from_indices([2]));
    }
}
