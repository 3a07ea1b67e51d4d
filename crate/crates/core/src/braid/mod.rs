//! Exact arithmetic in `B_n` with its classical Garside structure.

mod normal_form;
mod patterns;
mod perm;
mod simple;
mod word;

pub use normal_form::{normal_form, NormalForm};
pub use patterns::{x_a, x_b};
pub use perm::{GenSet, Permutation};
pub use simple::{
    delta, delta_ij, finishing_set, is_left_weighted, left_weight_pair, starting_set, tau, tau_pow,
    SimpleBraid,
};
pub(crate) use simple::lw;
pub use word::{BraidWord, Letter};
