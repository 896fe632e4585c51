//! Exact arithmetic for quasi-modular and almost-holomorphic modular forms.
//!
//! Elements live in the ring `Q[E2, E4, E6, Y][Z, Z^-1]` where
//!
//! - `E2, E4, E6` are the normalized Eisenstein series (constant term 1),
//! - `Y = 1/(2*pi*i*(tau - taubar))`, the weight-two almost-holomorphic generator,
//! - `Z = 2*pi*i`, an invertible weight-zero unit kept symbolic so that every
//!   coefficient in the pipeline stays rational.
//!
//! The almost-holomorphic modular subring is generated by `E2* = E2 + 12*Y`,
//! `E4`, `E6`; the Kaneko-Zagier map `phi` sets `Y = 0` and its inverse `kz`
//! substitutes `E2 -> E2 + 12*Y`.

mod form;
mod fraction;
mod parse;
mod qseries;

pub use form::{DeriveMode, FormElement, Mono};
pub use fraction::FormFraction;
pub use parse::{parse_form_element, parse_form_fraction};
pub use qseries::QSeries;
