//! Round curves in the punctured disk, their transport along normal forms, and
//! strand-crossing profiles of factor sequences.
//!
//! A simple braid maps the round curve around the puncture interval `I` to a
//! round curve exactly when `π(I)` is again an interval; the image is the round
//! curve around `π(I)`. Transport along `Δ^p x_1 ⋯ x_r` is checked factor by
//! factor, stopping at the first non-round image.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::braid::{NormalForm, SimpleBraid};
use crate::error::{Error, Result};

/// The circle enclosing punctures `lo..=hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoundCurve {
    n: usize,
    lo: usize,
    hi: usize,
}

impl RoundCurve {
    pub fn new(n: usize, lo: usize, hi: usize) -> Result<Self> {
        if lo < 1 || lo >= hi || hi > n || (lo == 1 && hi == n) {
            return Err(Error::DegenerateCurve { lo, hi, n });
        }
        Ok(RoundCurve { n, lo, hi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Every round curve on `n` punctures, ordered by `(lo, hi)`.
    pub fn all(n: usize) -> Vec<RoundCurve> {
        let mut out = Vec::new();
        for lo in 1..n {
            for hi in lo + 1..=n {
                if let Ok(c) = RoundCurve::new(n, lo, hi) {
                    out.push(c);
                }
            }
        }
        out
    }

    fn reflect(&self) -> RoundCurve {
        RoundCurve { n: self.n, lo: self.n + 1 - self.hi, hi: self.n + 1 - self.lo }
    }
}

impl fmt::Debug for RoundCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Display for RoundCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl Serialize for RoundCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

/// Image of a round curve under one simple braid, or `None` if it is not round.
pub fn image_round(s: &SimpleBraid, c: &RoundCurve) -> Option<RoundCurve> {
    assert_eq!(s.n(), c.n, "strand counts differ");
    let perm = s.perm();
    let (mut lo, mut hi) = (usize::MAX, 0);
    for i in c.lo..=c.hi {
        let j = perm.image(i);
        lo = lo.min(j);
        hi = hi.max(j);
    }
    // |π(I)| = |I|, so the image is an interval iff its span has the same size
    (hi - lo == c.hi - c.lo).then_some(RoundCurve { n: c.n, lo, hi })
}

/// Image of `c` under `Δ^p x_1 ⋯ x_r`, applying `Δ^p` first, or `None` at the first
/// factor whose image is not round.
pub fn transport_round(x: &NormalForm, c: &RoundCurve) -> Option<RoundCurve> {
    assert_eq!(x.n(), c.n, "strand counts differ");
    let mut cur = if x.inf().rem_euclid(2) == 1 { c.reflect() } else { *c };
    for f in x.factors() {
        cur = image_round(f, &cur)?;
    }
    Some(cur)
}

/// First `(k, c)` with `1 ≤ k ≤ k_max` and `x^k(c) = c`, searching `k` then curves in order.
pub fn preserved_round_curve_power(x: &NormalForm, k_max: usize) -> Option<(usize, RoundCurve)> {
    let curves = RoundCurve::all(x.n());
    (1..=k_max).find_map(|k| {
        let p = x.power(k as i64);
        curves.iter().find(|c| transport_round(&p, c) == Some(**c)).map(|c| (k, *c))
    })
}

/// For each unordered strand pair, the factors in which that pair crosses.
///
/// Strands are labelled by their starting positions before the first factor;
/// factor indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingProfile {
    n: usize,
    len: usize,
    crossings: Vec<Vec<usize>>,
}

impl CrossingProfile {
    fn pair_index(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        // row-major over a < b, 1-based labels
        (a - 1) * self.n - (a - 1) * a / 2 + (b - a - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of factors.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Factor indices in which strands `a` and `b` cross.
    pub fn crossings(&self, a: usize, b: usize) -> &[usize] {
        &self.crossings[self.pair_index(a, b)]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| (a, b)))
    }
}

pub fn crossing_profile(factors: &[SimpleBraid]) -> Result<CrossingProfile> {
    let first = factors.first().ok_or(Error::EmptyNormalForm)?;
    let n = first.n();
    if let Some(f) = factors.iter().find(|f| f.n() != n) {
        return Err(Error::StrandMismatch(n, f.n()));
    }
    let mut profile = CrossingProfile { n, len: factors.len(), crossings: vec![] };
    profile.crossings = vec![Vec::new(); n * (n - 1) / 2];
    // position[strand - 1] = current position
    let mut position: Vec<usize> = (1..=n).collect();
    for (t, f) in factors.iter().enumerate() {
        let perm = f.perm();
        for a in 1..=n {
            for b in a + 1..=n {
                let (pa, pb) = (position[a - 1], position[b - 1]);
                if (pa < pb) != (perm.image(pa) < perm.image(pb)) {
                    let k = profile.pair_index(a, b);
                    profile.crossings[k].push(t + 1);
                }
            }
        }
        for p in position.iter_mut() {
            *p = perm.image(*p);
        }
    }
    Ok(profile)
}

/// Strand pairs that cross in no factor.
pub fn never_crossing_pairs(p: &CrossingProfile) -> Vec<(usize, usize)> {
    p.pairs().filter(|&(a, b)| p.crossings(a, b).is_empty()).collect()
}

/// Strand pairs that cross in every factor.
pub fn always_crossing_pairs(p: &CrossingProfile) -> Vec<(usize, usize)> {
    p.pairs().filter(|&(a, b)| p.crossings(a, b).len() == p.len).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{delta, normal_form, x_a, x_b, BraidWord};

    fn s(n: usize, letters: &[usize]) -> SimpleBraid {
        SimpleBraid::from_positive_word(n, letters).unwrap()
    }

    fn c(n: usize, lo: usize, hi: usize) -> RoundCurve {
        RoundCurve::new(n, lo, hi).unwrap()
    }

    #[test]
    fn curve_validation() {
        assert!(RoundCurve::new(3, 1, 3).is_err());
        assert!(RoundCurve::new(3, 2, 2).is_err());
        assert!(RoundCurve::new(3, 0, 2).is_err());
        assert_eq!(RoundCurve::all(3), vec![c(3, 1, 2), c(3, 2, 3)]);
        assert_eq!(RoundCurve::all(5).len(), 9);
        assert_eq!(serde_json::to_string(&c(5, 2, 4)).unwrap(), "[2,4]");
    }

    #[test]
    fn single_factor_images() {
        assert_eq!(image_round(&s(3, &[1]), &c(3, 1, 2)), Some(c(3, 1, 2)));
        assert_eq!(image_round(&s(3, &[2]), &c(3, 1, 2)), None);
        for n in 3..=6 {
            for cur in RoundCurve::all(n) {
                let want = c(n, n + 1 - cur.hi(), n + 1 - cur.lo());
                assert_eq!(image_round(&delta(n), &cur), Some(want));
            }
        }
    }

    #[test]
    fn transport_examples() {
        let x = normal_form(&BraidWord::parse(3, "s1 S2").unwrap());
        // Δ^{-1} reflects [2,3] to [1,2]; σ2 breaks it
        assert_eq!(transport_round(&x, &c(3, 2, 3)), None);
        // [1,2] -> [2,3] -> σ2 -> [2,3] -> σ2σ1 -> {3,1}: not round
        assert_eq!(transport_round(&x, &c(3, 1, 2)), None);
        let id = NormalForm::identity(4);
        for cur in RoundCurve::all(4) {
            assert_eq!(transport_round(&id, &cur), Some(cur));
        }
        for n in 3..=6 {
            let xa = x_a(n).unwrap();
            assert!(RoundCurve::all(n).iter().all(|cur| transport_round(&xa, cur).is_none()));
        }
    }

    #[test]
    fn preserved_curves() {
        let x = normal_form(&BraidWord::parse(3, "s1 s1").unwrap());
        assert_eq!(preserved_round_curve_power(&x, 3), Some((1, c(3, 1, 2))));
        let y = normal_form(&BraidWord::parse(3, "s2 s2 s2").unwrap());
        assert_eq!(preserved_round_curve_power(&y, 3), Some((1, c(3, 2, 3))));
        let xa = x_a(4).unwrap();
        assert_eq!(preserved_round_curve_power(&xa, 4), None);
    }

    #[test]
    fn crossing_profiles() {
        let p = crossing_profile(&[s(3, &[1])]).unwrap();
        assert_eq!(never_crossing_pairs(&p), vec![(1, 3), (2, 3)]);
        assert_eq!(always_crossing_pairs(&p), vec![(1, 2)]);

        let p = crossing_profile(x_b(3).unwrap().factors()).unwrap();
        assert!(never_crossing_pairs(&p).is_empty());
        assert!(always_crossing_pairs(&p).is_empty());

        let p = crossing_profile(&[delta(3), delta(3)]).unwrap();
        assert_eq!(always_crossing_pairs(&p), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(never_crossing_pairs(&p).is_empty());
        assert!(crossing_profile(&[]).is_err());
    }

    #[test]
    fn crossings_per_factor_match_lengths() {
        let factors = [s(4, &[1, 2, 3]), s(4, &[3]), s(4, &[3, 2]), s(4, &[2, 1])];
        let p = crossing_profile(&factors).unwrap();
        for (t, f) in factors.iter().enumerate() {
            let count = p.pairs().filter(|&(a, b)| p.crossings(a, b).contains(&(t + 1))).count();
            assert_eq!(count, f.len());
        }
    }
}
