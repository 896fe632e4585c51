//! Exact computation of the categorical genus-one, one-puncture Gromov-Witten
//! potential of an elliptic curve from a cyclic A-infinity model of its derived
//! category.
//!
//! The crate is organized in layers:
//!
//! - [`qmod`] — exact arithmetic in the ring generated by the Eisenstein series
//!   `E2, E4, E6`, the almost-holomorphic generator `Y = 1/(2*pi*i*(tau - taubar))`
//!   and the invertible unit `Z = 2*pi*i`, together with q-expansions and the
//!   Kaneko-Zagier correspondence.
//! - [`ainf`] — the six-dimensional cyclic A-infinity algebra of the elliptic
//!   curve in both its modular and holomorphic gauges, with relation checking,
//!   the `psi3` exactness identity and the gauge morphism between the two gauges.
//! - [`hoch`] — Hochschild chains, the differentials `b` and `B`, cochain
//!   insertion operators, the Getzler-Gauss-Manin connection and homology
//!   reduction.
//! - [`ribbon`] — the chi = -1 sector of the decorated ribbon-graph complex,
//!   the quantum master equation and the action of graphs on chains.
//! - [`solver`] — graded sector enumeration and exact sparse linear solving for
//!   the lifting equations.
//! - [`potential`] — assembly of the Gromov-Witten potential and the
//!   verification suites.

pub mod ainf;
pub mod error;
pub mod hoch;
pub mod potential;
pub mod qmod;
pub mod ribbon;
pub mod sign;
pub mod solver;

pub use error::Error;
pub use qmod::{FormElement, FormFraction, QSeries};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Rational scalar used throughout; all arithmetic in the crate is exact.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integers as rationals.
pub fn rint(n: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::from(BigInt::from(n))
}
