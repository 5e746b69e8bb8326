//! Soft-decision decoding of binary BCH codes by Chase-style test patterns,
//! with hard-decision key solving in a module of halved dimension and test
//! patterns traversed as a tree of one-constraint Kötter updates.

pub mod bch;
pub mod channel;
pub mod chase;
pub mod cli;
pub mod error;
pub mod field;
pub mod keysolve;
pub mod modorder;
pub mod pipeline;
pub mod poly;

pub use bch::{BchCode, Syndrome};
pub use chase::{chase_decode, ChaseConfig, ChaseOutcome, EvalMethod};
pub use error::{Error, Result};
pub use field::{Elem, Field, MulCounter};
pub use keysolve::{hd_decode, solve_key_basis, HdOutcome, KeyBasis};
pub use modorder::{Monomial, Pair, Side, Weight};
pub use pipeline::{decode, DecodeReport, DecodeStage};
pub use poly::Poly;
