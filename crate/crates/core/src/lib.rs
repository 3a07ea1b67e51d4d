//! Garside normal forms in the braid groups `B_n`, the left-weighting graph of
//! simple braids, exact path and loop counting over it, and a certifier for
//! rigid pseudo-Anosov braids.
//!
//! Generator indices and strand positions are 1-based throughout the public API.

pub mod braid;
pub mod census;
pub mod certify;
pub mod curves;
pub mod error;
pub mod graph;
pub mod verify;

pub use error::{Error, Result};

pub(crate) const MIN_STRANDS: usize = 3;

/// Largest supported strand count (bounded by the fixed-width permutation storage).
pub const MAX_STRANDS: usize = 16;

pub(crate) fn check_strands(n: usize) -> Result<()> {
    if (MIN_STRANDS..=MAX_STRANDS).contains(&n) {
        Ok(())
    } else {
        Err(Error::StrandCount(n))
    }
}

/// `(0..len).map(f)`, in parallel when the `parallel` feature is on; order is kept.
pub(crate) fn par_map<T: Send, F: Fn(usize) -> T + Sync>(len: usize, f: F) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..len).into_par_iter().map(&f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}
