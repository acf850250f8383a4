//! Exact perturbative (S_n, Δ_n) and WRT invariants of rational homology
//! spheres from surgery presentations, together with the identities the
//! stationary-phase construction rests on.
//!
//! Everything here is exact: rationals, Gaussian rationals with formal powers
//! of pi, and cyclotomic fields of order 8K. No floating point.
#![no_std]
extern crate alloc;

mod error;
pub mod cyclotomic;
pub mod jones;
pub mod linalg;
pub mod orbit;
pub mod powerseries;
pub mod scalartower;
pub mod stationaryphase;
pub mod surgery;
pub mod wrt;

pub use error::{Error, Result};
