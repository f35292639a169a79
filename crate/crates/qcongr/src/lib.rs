//! Exact-arithmetic verification of q-congruences for truncated basic
//! hypergeometric series, their parametric generalizations, and the p-adic
//! supercongruences obtained in the q -> 1 limit.
//!
//! Everything is computed over arbitrary-precision rationals; a congruence
//! PASSes only when the reduced residue is exactly zero.

pub mod rational;
pub mod polycore;
pub mod quotient;
pub mod multipoly;
pub mod qseries;
pub mod engine;
pub mod dsl;
pub mod claims;
pub mod padlim;

pub use rational::Rational;
