//! Three-valued certification of rigid braids: pseudo-Anosov by the two-pattern
//! criterion, a reducibility witness, or inconclusive.

use serde::Serialize;

use crate::braid::{tau_pow, x_a, x_b, NormalForm, SimpleBraid};
use crate::curves::{
    always_crossing_pairs, crossing_profile, never_crossing_pairs, preserved_round_curve_power,
    RoundCurve,
};
use crate::error::{Error, Result};

/// 1-based position of the first occurrence of `pattern` as consecutive factors.
pub fn contains_subword(x: &NormalForm, pattern: &[SimpleBraid]) -> Option<usize> {
    find_subword(x.factors(), pattern)
}

pub(crate) fn find_subword(factors: &[SimpleBraid], pattern: &[SimpleBraid]) -> Option<usize> {
    if pattern.is_empty() || pattern.len() > factors.len() {
        return None;
    }
    factors.windows(pattern.len()).position(|w| w == pattern).map(|i| i + 1)
}

/// Rigid braids are periodic only when they are powers of `Δ`.
pub fn is_periodic_rigid(x: &NormalForm) -> Result<bool> {
    if x.canonical_length() == 0 {
        return Ok(true);
    }
    if !x.is_rigid()? {
        return Err(Error::NotRigid);
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    CertifiedPseudoAnosov,
    ReducibilityWitness,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictDetail {
    Subwords { x_a: usize, x_b: usize },
    PreservedRoundCurve { k: usize, curve: RoundCurve },
    NeverCrossingPair { a: usize, b: usize },
    AlwaysCrossingPair { a: usize, b: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubwordPositions {
    pub x_a: Option<usize>,
    pub x_b: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub detail: Option<VerdictDetail>,
    pub subword_positions: SubwordPositions,
    pub n: usize,
    pub inf: i64,
    pub len: usize,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

/// Where the two patterns are looked for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubwordReading {
    /// In the factor sequence `x_1 ⋯ x_r` as written.
    #[default]
    Literal,
    /// In `τ^p(x_1 ⋯ x_r) · x_1 ⋯ x_r`, the factors of the square. Positions then
    /// index that doubled sequence.
    TauClosed,
}

/// Certifier for one strand count, holding the two patterns.
#[derive(Clone, Debug)]
pub struct Certifier {
    n: usize,
    x_a: Vec<SimpleBraid>,
    x_b: Vec<SimpleBraid>,
    reading: SubwordReading,
}

impl Certifier {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Certifier {
            n,
            x_a: x_a(n)?.factors().to_vec(),
            x_b: x_b(n)?.factors().to_vec(),
            reading: SubwordReading::Literal,
        })
    }

    pub fn with_reading(mut self, reading: SubwordReading) -> Self {
        self.reading = reading;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subword_positions(&self, x: &NormalForm) -> SubwordPositions {
        let doubled;
        let factors = match self.reading {
            SubwordReading::Literal => x.factors(),
            SubwordReading::TauClosed => {
                doubled = x
                    .factors()
                    .iter()
                    .map(|f| tau_pow(f, x.inf()))
                    .chain(x.factors().iter().copied())
                    .collect::<Vec<_>>();
                &doubled
            }
        };
        SubwordPositions { x_a: find_subword(factors, &self.x_a), x_b: find_subword(factors, &self.x_b) }
    }

    pub fn certify(&self, x: &NormalForm) -> Result<Verdict> {
        if x.n() != self.n {
            return Err(Error::StrandMismatch(self.n, x.n()));
        }
        if x.canonical_length() == 0 {
            return Err(Error::EmptyNormalForm);
        }
        if !x.is_rigid()? {
            return Err(Error::NotRigid);
        }
        let pos = self.subword_positions(x);
        let verdict = |kind, detail| Verdict {
            kind,
            detail,
            subword_positions: pos,
            n: self.n,
            inf: x.inf(),
            len: x.canonical_length(),
        };
        if let (Some(a), Some(b)) = (pos.x_a, pos.x_b) {
            return Ok(verdict(VerdictKind::CertifiedPseudoAnosov, Some(VerdictDetail::Subwords { x_a: a, x_b: b })));
        }
        if let Some((k, curve)) = preserved_round_curve_power(x, self.n) {
            return Ok(verdict(
                VerdictKind::ReducibilityWitness,
                Some(VerdictDetail::PreservedRoundCurve { k, curve }),
            ));
        }
        let profile = crossing_profile(x.factors())?;
        if let Some(&(a, b)) = never_crossing_pairs(&profile).first() {
            return Ok(verdict(VerdictKind::ReducibilityWitness, Some(VerdictDetail::NeverCrossingPair { a, b })));
        }
        if let Some(&(a, b)) = always_crossing_pairs(&profile).first() {
            return Ok(verdict(VerdictKind::ReducibilityWitness, Some(VerdictDetail::AlwaysCrossingPair { a, b })));
        }
        Ok(verdict(VerdictKind::Inconclusive, None))
    }
}

/// Certify with the literal reading.
pub fn certify(x: &NormalForm) -> Result<Verdict> {
    Certifier::new(x.n())?.certify(x)
}

/// Re-check a witness against the braid it was reported for.
pub fn witness_holds(x: &NormalForm, detail: &VerdictDetail) -> bool {
    match *detail {
        VerdictDetail::Subwords { x_a: a, x_b: b } => {
            let (Ok(pa), Ok(pb)) = (x_a(x.n()), x_b(x.n())) else { return false };
            let f = x.factors();
            let at = |i: usize, p: &NormalForm| {
                i >= 1 && f.get(i - 1..i - 1 + p.canonical_length()) == Some(p.factors())
            };
            at(a, &pa) && at(b, &pb)
        }
        VerdictDetail::PreservedRoundCurve { k, curve } => {
            crate::curves::transport_round(&x.power(k as i64), &curve) == Some(curve)
        }
        VerdictDetail::NeverCrossingPair { a, b } => {
            crossing_profile(x.factors()).map(|p| p.crossings(a, b).is_empty()).unwrap_or(false)
        }
        VerdictDetail::AlwaysCrossingPair { a, b } => crossing_profile(x.factors())
            .map(|p| p.crossings(a, b).len() == p.len())
            .unwrap_or(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{normal_form, BraidWord};

    fn nf(n: usize, w: &str) -> NormalForm {
        normal_form(&BraidWord::parse(n, w).unwrap())
    }

    fn s(n: usize, w: &[usize]) -> SimpleBraid {
        SimpleBraid::from_positive_word(n, w).unwrap()
    }

    #[test]
    fn subword_positions_are_one_based() {
        let x = NormalForm::from_parts(3, 0, vec![s(3, &[2]), s(3, &[1]), s(3, &[1, 2]), s(3, &[2, 1])]);
        // (σ2, σ1) is not left-weighted, so only the raw factor search applies here
        assert!(x.is_err());
        let f = [s(3, &[2]), s(3, &[1]), s(3, &[1, 2]), s(3, &[2, 1])];
        assert_eq!(find_subword(&f, &[s(3, &[1]), s(3, &[1, 2])]), Some(2));
        assert_eq!(find_subword(&f[..1], &f), None);
    }

    #[test]
    fn periodic_only_for_delta_powers() {
        assert!(is_periodic_rigid(&NormalForm::delta_power(3, 3)).unwrap());
        assert!(!is_periodic_rigid(&nf(3, "s1 s1")).unwrap());
        let x = nf(3, "d s2 s2 s1");
        assert_eq!(x.to_string(), "D^-1 | s2 . s2 s1");
        assert!(!is_periodic_rigid(&x).unwrap());
    }

    #[test]
    fn sigma1_squared_preserves_a_round_curve() {
        let v = certify(&nf(3, "s1 s1")).unwrap();
        assert_eq!(v.kind, VerdictKind::ReducibilityWitness);
        let c = RoundCurve::new(3, 1, 2).unwrap();
        assert_eq!(v.detail, Some(VerdictDetail::PreservedRoundCurve { k: 1, curve: c }));
        assert!(witness_holds(&nf(3, "s1 s1"), &v.detail.unwrap()));
    }

    #[test]
    fn sigma1_powers_leave_strand_n_alone() {
        for n in 3..=5 {
            let x = nf(n, &"s1 ".repeat(7));
            let v = certify(&x).unwrap();
            assert_eq!(v.kind, VerdictKind::ReducibilityWitness);
            let p = crossing_profile(x.factors()).unwrap();
            assert!(never_crossing_pairs(&p).contains(&(n - 1, n)));
        }
    }

    #[test]
    fn rejects_non_rigid() {
        // σ1 σ2 has final {2}, initial {1}: (φ, ι) is not left-weighted
        assert!(matches!(certify(&nf(3, "s1 s2")), Err(Error::NotRigid)));
        assert!(matches!(certify(&NormalForm::identity(3)), Err(Error::EmptyNormalForm)));
    }

    #[test]
    fn json_shape() {
        let v = certify(&nf(3, "s1 s1")).unwrap();
        let j: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
        for key in ["kind", "detail", "subword_positions", "n", "inf", "len"] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["detail"]["PreservedRoundCurve"]["curve"], serde_json::json!([1, 2]));
    }
}
