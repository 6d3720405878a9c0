//! Exact-arithmetic WZ summation.
//!
//! This crate derives telescoping recurrences for proper hypergeometric
//! terms (Gosper / Zeilberger), normalizes them into WZ pairs with certified
//! rational certificates, emits the resulting accelerated series in a
//! canonical closed form, and evaluates the target constants (ζ(3), Catalan,
//! 1/π², …) to arbitrary decimal precision with rigorous tail bounds.

pub mod bigfloat;
pub mod bipoly;
pub mod dougall;
pub mod error;
pub mod gosper;
pub mod linsys;
pub mod numerics;
pub mod pipeline;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod runner;
pub mod series;
pub mod term;
pub mod zeilberger;
