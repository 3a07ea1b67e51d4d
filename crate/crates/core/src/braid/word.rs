use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// Generator index, `1..n-1`.
    pub index: usize,
    /// `false` for `σ_i^{-1}`.
    pub positive: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, positive: true }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, positive: false }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, positive: !self.positive }
    }
}

/// A word in the Artin generators and their inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        crate::check_strands(n)?;
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= n) {
            return Err(Error::GeneratorIndex { index: l.index, n });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Signed indices: `3` is `σ_3`, `-3` is `σ_3^{-1}`.
    pub fn from_signed(n: usize, letters: &[i32]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&k| Letter { index: k.unsigned_abs() as usize, positive: k > 0 })
            .collect();
        Self::new(n, letters)
    }

    /// Parses whitespace-separated tokens: `s3` is `σ_3`, `S3` is `σ_3^{-1}`,
    /// `D` and `d` are `Δ` and `Δ^{-1}` (expanded into generators).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        crate::check_strands(n)?;
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in text.split_whitespace() {
            let pos = offset + text[offset..].find(tok).expect("token comes from text");
            offset = pos + tok.len();
            let err = |msg: String| Error::Parse { pos, msg };
            match tok {
                "D" => letters.extend(delta_letters(n)),
                "d" => letters.extend(delta_letters(n).into_iter().rev().map(Letter::inverse)),
                _ => {
                    let (positive, digits) = if let Some(rest) = tok.strip_prefix('s') {
                        (true, rest)
                    } else if let Some(rest) = tok.strip_prefix('S') {
                        (false, rest)
                    } else {
                        return Err(err(format!("unexpected token `{tok}`")));
                    };
                    let index: usize = digits
                        .parse()
                        .map_err(|_| err(format!("bad generator index in `{tok}`")))?;
                    if index == 0 || index >= n {
                        return Err(err(format!("generator s{index} out of range for n = {n}")));
                    }
                    letters.push(Letter { index, positive });
                }
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord { n: self.n, letters }
    }
}

/// `Δ = (σ_1⋯σ_{n-1})(σ_1⋯σ_{n-2})⋯σ_1`.
fn delta_letters(n: usize) -> Vec<Letter> {
    (1..n).rev().flat_map(|top| (1..=top).map(Letter::pos)).collect()
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if l.positive { 's' } else { 'S' }, l.index)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tokens() {
        let w = BraidWord::parse(4, "s1  S3 s2").unwrap();
        assert_eq!(w.letters(), &[Letter::pos(1), Letter::neg(3), Letter::pos(2)]);
        assert_eq!(w.to_string(), "s1 S3 s2");
        assert!(BraidWord::parse(3, "").unwrap().is_empty());
        assert_eq!(BraidWord::parse(3, "D").unwrap().to_string(), "s1 s2 s1");
        assert_eq!(BraidWord::parse(3, "d").unwrap().to_string(), "S1 S2 S1");
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            BraidWord::parse(3, "s1 s3").unwrap_err(),
            Error::Parse { pos: 3, msg: "generator s3 out of range for n = 3".into() }
        );
        assert!(matches!(BraidWord::parse(3, "s1 x2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(BraidWord::parse(3, "sx"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(BraidWord::parse(3, "σ1"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(BraidWord::parse(3, "s0"), Err(Error::Parse { .. })));
        assert!(BraidWord::parse(2, "s1").is_err());
    }
}
