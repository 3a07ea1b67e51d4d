use std::fmt;

use super::simple::{delta, left_weight_pair, lw, tau, tau_pow, SimpleBraid};
use super::word::{BraidWord, Letter};
use crate::error::{Error, Result};

/// Left normal form `Δ^p x_1 ⋯ x_r`: no factor is `1` or `Δ`, adjacent factors are left-weighted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    n: usize,
    inf: i64,
    factors: Vec<SimpleBraid>,
}

impl NormalForm {
    pub fn identity(n: usize) -> Self {
        NormalForm { n, inf: 0, factors: Vec::new() }
    }

    /// `Δ^p`.
    pub fn delta_power(n: usize, p: i64) -> Self {
        NormalForm { n, inf: p, factors: Vec::new() }
    }

    /// Validating constructor from an already normal factor sequence.
    pub fn from_parts(n: usize, inf: i64, factors: Vec<SimpleBraid>) -> Result<Self> {
        crate::check_strands(n)?;
        for (k, f) in factors.iter().enumerate() {
            if f.n() != n {
                return Err(Error::StrandMismatch(n, f.n()));
            }
            if f.is_identity() || f.is_delta() {
                return Err(Error::InvalidNormalForm(format!("factor {} is 1 or Δ", k + 1)));
            }
        }
        if let Some(k) = factors.windows(2).position(|w| !lw(&w[0], &w[1])) {
            return Err(Error::InvalidNormalForm(format!(
                "factors {} and {} are not left-weighted",
                k + 1,
                k + 2
            )));
        }
        Ok(NormalForm { n, inf, factors })
    }

    /// Normal form of an arbitrary product `Δ^p s_1 ⋯ s_m` of simple braids.
    pub fn from_simple_product(n: usize, inf: i64, simples: &[SimpleBraid]) -> Self {
        let mut x = NormalForm::delta_power(n, inf);
        for s in simples {
            x.push_simple(s);
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[SimpleBraid] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// `ι(x) = Δ^p x_1 Δ^{-p}`.
    pub fn initial_factor(&self) -> Result<SimpleBraid> {
        let first = self.factors.first().ok_or(Error::EmptyNormalForm)?;
        Ok(tau_pow(first, self.inf))
    }

    /// `φ(x) = x_r`.
    pub fn final_factor(&self) -> Result<SimpleBraid> {
        self.factors.last().copied().ok_or(Error::EmptyNormalForm)
    }

    /// Whether `(φ(x), ι(x))` is left-weighted.
    pub fn is_rigid(&self) -> Result<bool> {
        Ok(lw(&self.final_factor()?, &self.initial_factor()?))
    }

    /// Right multiplication by `Δ^k`: `x Δ^k = Δ^{p+k} τ^k(x_1) ⋯ τ^k(x_r)`.
    fn mul_delta_power(&mut self, k: i64) {
        self.inf += k;
        if k.rem_euclid(2) == 1 {
            for f in &mut self.factors {
                *f = tau(f);
            }
        }
    }

    /// Right multiplication by a simple braid.
    pub(crate) fn push_simple(&mut self, s: &SimpleBraid) {
        debug_assert_eq!(s.n(), self.n);
        if s.is_identity() {
            return;
        }
        if s.is_delta() {
            self.mul_delta_power(1);
            return;
        }
        self.factors.push(*s);
        let mut i = self.factors.len() - 1;
        while i > 0 {
            let (a, b) = left_weight_pair(&self.factors[i - 1], &self.factors[i]);
            if a == self.factors[i - 1] {
                break;
            }
            self.factors[i - 1] = a;
            self.factors[i] = b;
            i -= 1;
        }
        if !self.is_left_weighted_sequence() {
            self.stabilize();
        }
        self.tidy();
    }

    /// Right multiplication by the inverse of a simple braid:
    /// `x s^{-1} = x Δ^{-1} (Δ s^{-1})`.
    pub(crate) fn push_simple_inverse(&mut self, s: &SimpleBraid) {
        if s.is_identity() {
            return;
        }
        self.mul_delta_power(-1);
        self.push_simple(&s.left_complement());
    }

    fn is_left_weighted_sequence(&self) -> bool {
        self.factors.windows(2).all(|w| lw(&w[0], &w[1]))
    }

    // Fallback: repeat full right-to-left passes until every pair is left-weighted.
    fn stabilize(&mut self) {
        loop {
            let mut changed = false;
            for i in (1..self.factors.len()).rev() {
                let (a, b) = left_weight_pair(&self.factors[i - 1], &self.factors[i]);
                if a != self.factors[i - 1] {
                    self.factors[i - 1] = a;
                    self.factors[i] = b;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Absorb leading `Δ` factors into the infimum and drop trailing identities.
    fn tidy(&mut self) {
        while self.factors.last().is_some_and(|f| f.is_identity()) {
            self.factors.pop();
        }
        let leading = self.factors.iter().take_while(|f| f.is_delta()).count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.inf += leading as i64;
        }
        debug_assert!(self.factors.iter().all(|f| !f.is_identity() && !f.is_delta()));
    }

    pub fn multiply(&self, other: &NormalForm) -> Result<NormalForm> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut x = self.clone();
        x.mul_delta_power(other.inf);
        for f in &other.factors {
            x.push_simple(f);
        }
        Ok(x)
    }

    /// `x^{-1} = x_r^{-1} ⋯ x_1^{-1} Δ^{-p}`.
    pub fn invert(&self) -> NormalForm {
        let mut x = NormalForm::identity(self.n);
        for f in self.factors.iter().rev() {
            x.push_simple_inverse(f);
        }
        x.mul_delta_power(-self.inf);
        x
    }

    /// `x^k`; rigid braids use the closed form of their powers.
    pub fn power(&self, k: i64) -> NormalForm {
        if k < 0 {
            return self.invert().power(-k);
        }
        if k == 0 {
            return NormalForm::identity(self.n);
        }
        if self.is_rigid().unwrap_or(false) {
            return self.rigid_power(k as usize);
        }
        self.power_generic(k)
    }

    /// `x^k` by repeated squaring, without the rigid shortcut.
    pub fn power_generic(&self, k: i64) -> NormalForm {
        if k < 0 {
            return self.invert().power_generic(-k);
        }
        let mut result = NormalForm::identity(self.n);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base).expect("same n");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same n");
            }
        }
        result
    }

    /// `(Δ^ε s_1⋯s_l)^k = Δ^{kε} ∏_j τ^{(k-j)ε}(s_1)⋯τ^{(k-j)ε}(s_l)` for rigid `x`.
    fn rigid_power(&self, k: usize) -> NormalForm {
        let eps = self.inf;
        let mut factors = Vec::with_capacity(k * self.factors.len());
        for j in 1..=k {
            let twist = (k - j) as i64 * eps;
            factors.extend(self.factors.iter().map(|s| tau_pow(s, twist)));
        }
        NormalForm { n: self.n, inf: k as i64 * eps, factors }
    }

    /// A word spelling this normal form.
    pub fn to_word(&self) -> BraidWord {
        let mut letters = Vec::new();
        let d = delta(self.n).word();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                letters.extend(d.iter().map(|&i| Letter::pos(i)));
            }
        } else {
            for _ in 0..-self.inf {
                letters.extend(d.iter().rev().map(|&i| Letter::neg(i)));
            }
        }
        for f in &self.factors {
            letters.extend(f.word().into_iter().map(Letter::pos));
        }
        BraidWord::new(self.n, letters).expect("letters in range")
    }
}

/// The left normal form of the braid spelled by `w`.
pub fn normal_form(w: &BraidWord) -> NormalForm {
    let n = w.n();
    let mut x = NormalForm::identity(n);
    for l in w.letters() {
        let g = SimpleBraid::generator(n, l.index).expect("word letters are in range");
        if l.positive {
            x.push_simple(&g);
        } else {
            x.push_simple_inverse(&g);
        }
    }
    x
}

/// Canonical text form `D^p | f1 . f2 . ...`.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} |", self.inf)?;
        for (k, s) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " .")?;
            }
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm(n={}, {})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(n: usize, text: &str) -> NormalForm {
        normal_form(&BraidWord::parse(n, text).unwrap())
    }

    fn s(n: usize, letters: &[usize]) -> SimpleBraid {
        SimpleBraid::from_positive_word(n, letters).unwrap()
    }

    #[test]
    fn delta_word_collapses() {
        let x = nf(3, "s2 s1 s2");
        assert_eq!((x.inf(), x.canonical_length()), (1, 0));
        assert_eq!(x.to_string(), "D^1 |");
        assert_eq!(nf(3, "").to_string(), "D^0 |");
    }

    #[test]
    fn negative_letter_example() {
        let x = nf(3, "s1 S2");
        assert_eq!(x.inf(), -1);
        assert_eq!(x.factors(), &[s(3, &[2]), s(3, &[2, 1])]);
        assert_eq!(x.to_string(), "D^-1 | s2 . s2 s1");
        assert_eq!(x.sup(), 1);
        assert_eq!(x.initial_factor().unwrap(), s(3, &[1]));
        assert_eq!(x.final_factor().unwrap(), s(3, &[2, 1]));
        assert!(x.is_rigid().unwrap());
    }

    #[test]
    fn initial_and_final_factors() {
        let x = nf(3, "s1 s1");
        assert_eq!((x.inf(), x.sup()), (0, 2));
        assert_eq!(x.initial_factor().unwrap(), s(3, &[1]));
        assert_eq!(x.final_factor().unwrap(), s(3, &[1]));
        assert!(x.is_rigid().unwrap());

        let y = nf(3, "D D s1 s2");
        assert_eq!(y.inf(), 2);
        assert_eq!(y.initial_factor().unwrap(), s(3, &[1, 2]));

        assert!(!nf(3, "s1 s2").is_rigid().unwrap());
        assert_eq!(nf(3, "D").initial_factor(), Err(Error::EmptyNormalForm));
        assert_eq!(nf(3, "").is_rigid(), Err(Error::EmptyNormalForm));
    }

    #[test]
    fn products_and_powers() {
        let a = nf(3, "s1");
        let b = nf(3, "S1");
        assert!(a.multiply(&b).unwrap().is_identity());
        assert_eq!(nf(3, "s1 s2 s1").power(2), NormalForm::delta_power(3, 2));

        let x = nf(3, "s1 s1");
        let p3 = x.power(3);
        assert_eq!(p3.inf(), 0);
        assert_eq!(p3.factors(), &[s(3, &[1]); 6]);
        assert_eq!(p3, x.power_generic(3));
        assert!(a.multiply(&nf(4, "s1")).is_err());
    }

    #[test]
    fn from_parts_validates() {
        assert!(NormalForm::from_parts(3, 0, vec![s(3, &[1]), s(3, &[1, 2])]).is_ok());
        assert!(NormalForm::from_parts(3, 0, vec![s(3, &[1, 2]), s(3, &[1, 2])]).is_err());
        assert!(NormalForm::from_parts(3, 0, vec![delta(3)]).is_err());
        assert!(NormalForm::from_parts(3, 0, vec![SimpleBraid::identity(3)]).is_err());
    }

    #[test]
    fn idempotent_on_own_word() {
        for text in ["s1 S2 s3 s3 S1", "d s2 s2 s1 S3", "D D S1 S2 S3 s2"] {
            let x = nf(4, text);
            assert_eq!(normal_form(&x.to_word()), x);
        }
    }
}
