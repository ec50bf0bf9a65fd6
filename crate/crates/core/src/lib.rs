//! Colored Jones degrees and boundary slopes for the Montesinos knots
//! `M(1/r, 1/(s - 1/u), 1/t)` with `r, u, t` odd, `s` even, `u <= -1` and
//! `r < -1 < 1 < s, t`.
//!
//! The crate evaluates the colored Jones polynomial exactly through a
//! knotted-trivalent-graph state sum ([`jones`]), maximizes the quadratic
//! degree objective of that sum three independent ways ([`degopt`]), builds
//! the Hatcher–Oertel edgepath systems that realize the predicted boundary
//! slopes ([`edgepath`]), and ties it all together in [`pipeline`].

pub mod degopt;
pub mod edgepath;
pub mod error;
pub mod jones;
pub mod ktg;
pub mod params;
pub mod pipeline;
pub mod qlaurent;
pub mod rational;

pub use error::{Error, Result};
pub use params::KnotParams;
pub use qlaurent::{LaurentPoly, PolyFraction};
pub use rational::Rational;
