//! The two fixed normal-form patterns whose joint presence certifies a rigid
//! braid as pseudo-Anosov.

use super::normal_form::NormalForm;
use super::simple::{delta_ij, SimpleBraid};
use crate::error::{Error, Result};

fn product(n: usize, letters: &[usize]) -> Result<SimpleBraid> {
    SimpleBraid::from_positive_word(n, letters).map_err(|e| Error::Convention(e.to_string()))
}

fn verified(n: usize, factors: Vec<SimpleBraid>, name: &str) -> Result<NormalForm> {
    NormalForm::from_parts(n, 0, factors).map_err(|e| Error::Convention(format!("{name}({n}): {e}")))
}

/// `σ_1σ_3⋯σ_{2⌊n/2⌋-1} . σ_1σ_3⋯σ_{2⌊n/2⌋-1} σ_2σ_4⋯σ_{2⌈n/2⌉-2}` (two factors).
///
/// No round curve is sent to a round curve by this pair of factors.
pub fn x_a(n: usize) -> Result<NormalForm> {
    crate::check_strands(n)?;
    let odd: Vec<usize> = (1..n).step_by(2).collect();
    let even: Vec<usize> = (2..=2 * n.div_ceil(2) - 2).step_by(2).collect();
    let first = product(n, &odd)?;
    let second = product(n, &[odd, even].concat())?;
    verified(n, vec![first, second], "x_A")
}

/// `Δ_{2,n}σ_1 . σ_1 . σ_1σ_2⋯σ_{n-1} . σ_{n-1}` (four factors).
///
/// Every pair of strands crosses in some factor and does not cross in another.
pub fn x_b(n: usize) -> Result<NormalForm> {
    crate::check_strands(n)?;
    let mut head = delta_ij(2, n, n)?.word();
    head.push(1);
    let factors = vec![
        product(n, &head)?,
        product(n, &[1])?,
        product(n, &(1..n).collect::<Vec<_>>())?,
        product(n, &[n - 1])?,
    ];
    verified(n, factors, "x_B")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, letters: &[usize]) -> SimpleBraid {
        SimpleBraid::from_positive_word(n, letters).unwrap()
    }

    #[test]
    fn x_a_small_cases() {
        assert_eq!(x_a(3).unwrap().factors(), &[s(3, &[1]), s(3, &[1, 2])]);
        assert_eq!(x_a(6).unwrap().factors(), &[s(6, &[1, 3, 5]), s(6, &[1, 3, 5, 2, 4])]);
        assert_eq!(x_a(5).unwrap().factors(), &[s(5, &[1, 3]), s(5, &[1, 3, 2, 4])]);
    }

    #[test]
    fn x_b_small_cases() {
        assert_eq!(
            x_b(3).unwrap().factors(),
            &[s(3, &[2, 1]), s(3, &[1]), s(3, &[1, 2]), s(3, &[2])]
        );
        for n in 3..=8 {
            let b = x_b(n).unwrap();
            assert_eq!(b.canonical_length(), 4);
            assert_eq!(x_a(n).unwrap().canonical_length(), 2);
        }
    }
}
