use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm::{GenSet, Permutation};
use crate::error::{Error, Result};

/// A positive prefix of `Δ`, identified with its permutation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimpleBraid(Permutation);

impl SimpleBraid {
    pub fn identity(n: usize) -> Self {
        SimpleBraid(Permutation::identity(n))
    }

    pub fn from_permutation(perm: Permutation) -> Self {
        SimpleBraid(perm)
    }

    pub fn from_image(image: &[usize]) -> Result<Self> {
        Permutation::new(image).map(SimpleBraid)
    }

    /// The generator `σ_i`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        check_index(n, i)?;
        Ok(SimpleBraid(Permutation::transposition(n, i)))
    }

    /// Product of a positive word, failing if the word is not reduced (the product is not simple).
    pub fn from_positive_word(n: usize, letters: &[usize]) -> Result<Self> {
        let mut s = SimpleBraid::identity(n);
        for &i in letters {
            check_index(n, i)?;
            s = s.mul_generator(i).ok_or_else(|| {
                Error::Invalid(format!("positive word {letters:?} is not a simple braid"))
            })?;
        }
        Ok(s)
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_delta(&self) -> bool {
        self.0 == Permutation::reversal(self.n())
    }

    /// Word length, equal to the number of crossings.
    pub fn len(&self) -> usize {
        self.0.inversions()
    }

    pub fn starting_set(&self) -> GenSet {
        self.0.descents()
    }

    pub fn finishing_set(&self) -> GenSet {
        self.0.inverse().descents()
    }

    /// `self · σ_i` if it is still simple.
    pub fn mul_generator(&self, i: usize) -> Option<Self> {
        if self.finishing_set().contains(i) {
            return None;
        }
        let mut p = self.0;
        p.swap_values(i);
        Some(SimpleBraid(p))
    }

    /// `σ_i^{-1} · self` if `σ_i` is a prefix.
    pub fn strip_generator(&self, i: usize) -> Option<Self> {
        if !self.starting_set().contains(i) {
            return None;
        }
        let mut p = self.0;
        p.swap_positions(i);
        Some(SimpleBraid(p))
    }

    /// `Δ · self^{-1}`: the simple braid `c` with `c · self = Δ`.
    pub fn left_complement(&self) -> Self {
        SimpleBraid(Permutation::reversal(self.n()).then(&self.0.inverse()))
    }

    /// `self^{-1} · Δ`: the simple braid `c` with `self · c = Δ`.
    pub fn right_complement(&self) -> Self {
        SimpleBraid(self.0.inverse().then(&Permutation::reversal(self.n())))
    }

    /// Product `self · other` of permutations; only a braid product when lengths add.
    pub fn then_perm(&self, other: &SimpleBraid) -> SimpleBraid {
        SimpleBraid(self.0.then(&other.0))
    }

    /// Lexicographically least reduced word (1-based generator indices).
    pub fn word(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut s = *self;
        while let Some(i) = s.starting_set().min() {
            out.push(i);
            s = s.strip_generator(i).expect("i is a prefix");
        }
        out
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::GeneratorIndex { index: i, n })
    } else {
        Ok(())
    }
}

impl fmt::Debug for SimpleBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Generator word such as `s1 s2`; the identity prints as `1`.
impl fmt::Display for SimpleBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return write!(f, "1");
        }
        for (k, i) in w.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

/// `{i : π(i) > π(i+1)}`, the generators that are prefixes of `s`.
pub fn starting_set(s: &SimpleBraid) -> GenSet {
    s.starting_set()
}

/// `{i : π⁻¹(i) > π⁻¹(i+1)}`, the generators that are suffixes of `s`.
pub fn finishing_set(s: &SimpleBraid) -> GenSet {
    s.finishing_set()
}

/// Whether `(s1, s2)` is left-weighted, i.e. `init(s2) ⊆ final(s1)`.
pub fn is_left_weighted(s1: &SimpleBraid, s2: &SimpleBraid) -> Result<bool> {
    if s1.n() != s2.n() {
        return Err(Error::StrandMismatch(s1.n(), s2.n()));
    }
    Ok(lw(s1, s2))
}

#[inline]
pub(crate) fn lw(s1: &SimpleBraid, s2: &SimpleBraid) -> bool {
    s2.starting_set().is_subset(s1.finishing_set())
}

/// Slide generators from the front of `b` onto the back of `a`, smallest index first,
/// until the pair is left-weighted. The product `a·b` is unchanged.
pub fn left_weight_pair(a: &SimpleBraid, b: &SimpleBraid) -> (SimpleBraid, SimpleBraid) {
    let (mut a, mut b) = (*a, *b);
    while let Some(i) = b.starting_set().difference(a.finishing_set()).min() {
        a = a.mul_generator(i).expect("i is not in final(a)");
        b = b.strip_generator(i).expect("i is in init(b)");
    }
    (a, b)
}

/// The half twist `Δ` on `n` strands.
pub fn delta(n: usize) -> SimpleBraid {
    SimpleBraid(Permutation::reversal(n))
}

/// Half twist on the strand block `i..=j`; its permutation reverses that block.
pub fn delta_ij(i: usize, j: usize, n: usize) -> Result<SimpleBraid> {
    if i == 0 || i > j || j > n {
        return Err(Error::HalfTwistBounds { i, j, n });
    }
    let image: Vec<usize> = (1..=n)
        .map(|k| if (i..=j).contains(&k) { i + j - k } else { k })
        .collect();
    SimpleBraid::from_image(&image)
}

/// Conjugation by `Δ`, sending `σ_i` to `σ_{n-i}`.
pub fn tau(s: &SimpleBraid) -> SimpleBraid {
    SimpleBraid(s.0.flip())
}

/// `τ^k(s)`; only the parity of `k` matters.
pub fn tau_pow(s: &SimpleBraid, k: i64) -> SimpleBraid {
    if k.rem_euclid(2) == 1 {
        tau(s)
    } else {
        *s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, letters: &[usize]) -> SimpleBraid {
        SimpleBraid::from_positive_word(n, letters).unwrap()
    }

    #[test]
    fn descent_sets_on_small_examples() {
        let s12 = w(3, &[1, 2]);
        assert_eq!(s12.perm().to_vec(), vec![3, 1, 2]);
        assert_eq!(s12.starting_set(), GenSet::from_indices([1]));
        assert_eq!(s12.finishing_set(), GenSet::from_indices([2]));
        assert_eq!(w(3, &[2, 1]).finishing_set(), GenSet::from_indices([1]));
        assert_eq!(delta(3).starting_set(), GenSet::full(3));
        assert_eq!(delta(5).finishing_set(), GenSet::full(5));
        assert_eq!(w(4, &[2]).starting_set(), GenSet::from_indices([2]));
    }

    #[test]
    fn left_weighting_examples() {
        let s1 = w(3, &[1]);
        let s12 = w(3, &[1, 2]);
        assert!(is_left_weighted(&s1, &s12).unwrap());
        assert!(!is_left_weighted(&s12, &s12).unwrap());
        for p in Permutation::all(3) {
            let s = SimpleBraid::from_permutation(p);
            assert!(is_left_weighted(&delta(3), &s).unwrap());
        }
        assert!(is_left_weighted(&s1, &w(4, &[1])).is_err());
    }

    #[test]
    fn left_weight_pair_examples() {
        // one slide gives (σ2σ1, σ2), and then σ2 still slides
        let (a, b) = left_weight_pair(&w(3, &[2]), &w(3, &[1, 2]));
        assert!(a.is_delta() && b.is_identity());
        let s1 = w(3, &[1]);
        assert_eq!(left_weight_pair(&s1, &s1), (s1, s1));
        let (a, b) = left_weight_pair(&w(3, &[2, 1]), &w(3, &[2]));
        assert!(a.is_delta() && b.is_identity());
    }

    #[test]
    fn half_twists() {
        assert_eq!(delta(3).perm().to_vec(), vec![3, 2, 1]);
        assert_eq!(delta_ij(2, 3, 4).unwrap().perm().to_vec(), vec![1, 3, 2, 4]);
        assert_eq!(tau(&w(3, &[1])), w(3, &[2]));
        assert!(delta_ij(3, 2, 4).is_err());
        assert!(delta_ij(1, 5, 4).is_err());
        // Δ_{ij} = (σ_i⋯σ_{j-1})(σ_i⋯σ_{j-2})⋯σ_i
        for n in 3..=6 {
            for i in 1..n {
                for j in i + 1..=n {
                    let mut letters = Vec::new();
                    for top in (i..j).rev() {
                        letters.extend(i..=top);
                    }
                    assert_eq!(w(n, &letters), delta_ij(i, j, n).unwrap());
                }
            }
            assert_eq!(delta_ij(1, n, n).unwrap(), delta(n));
        }
    }

    #[test]
    fn complements() {
        for p in Permutation::all(4) {
            let s = SimpleBraid::from_permutation(p);
            let l = s.left_complement();
            let r = s.right_complement();
            assert_eq!(l.len() + s.len(), 6);
            assert!(l.then_perm(&s).is_delta());
            assert!(s.then_perm(&r).is_delta());
            assert_eq!(tau(&tau(&s)), s);
            assert_eq!(SimpleBraid::from_positive_word(4, &s.word()).unwrap(), s);
        }
    }

    #[test]
    fn non_reduced_word_is_not_simple() {
        assert!(SimpleBraid::from_positive_word(3, &[1, 1]).is_err());
        assert!(SimpleBraid::generator(3, 3).is_err());
    }
}
