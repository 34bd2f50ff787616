//! Numerical toolkit for basic bilateral hypergeometric series and
//! q-integrals over the real line.
//!
//! The crate is layered bottom-up:
//!
//! * [`qcore`]: q-Pochhammer symbols, q-gamma, h-products and q-Bessel functions.
//! * [`bilateral`]: two-tailed summation of `rψr` series, unilateral `rφs`,
//!   very-well-poised `8W7` and the classical closed forms.
//! * [`foldquad`]: period-folded quadrature over the real line and the
//!   Jackson q-integral.
//! * [`identities`]: a registry of closed-form identities with seeded
//!   samplers and a verification harness.
//!
//! Everything works in double precision complex arithmetic ([`CNum`]).

pub mod bilateral;
pub mod error;
pub mod exec;
pub mod foldquad;
pub mod identities;
pub mod qcore;

pub use error::{QError, QResult};
pub use qcore::{CNum, QBase, TruncationReceipt};
