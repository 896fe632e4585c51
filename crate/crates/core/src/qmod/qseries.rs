use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::FormElement;
use crate::{rint, Error, Rat, Result};

/// Truncated q-expansion with exact rational coefficients `c0..cN`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

/// Default truncation order used by the CLI when none is requested.
pub const DEFAULT_ORDER: usize = 30;

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum of k-th powers of divisors of n (n >= 1).
    pub fn sigma(k: u32, n: u64) -> Rat {
        let mut acc = Rat::zero();
        for d in 1..=n {
            if n % d == 0 {
                let mut p = rint(1);
                for _ in 0..k {
                    p *= rint(d as i64);
                }
                acc += p;
            }
        }
        acc
    }

    fn eisenstein(weight: u32, scale: i64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = rint(1);
        for n in 1..=order {
            s.coeffs[n] = Self::sigma(weight - 1, n as u64) * rint(scale);
        }
        s
    }

    /// `E2 = 1 - 24 sum sigma_1(n) q^n`.
    pub fn e2(order: usize) -> Self {
        Self::eisenstein(2, -24, order)
    }

    /// `E4 = 1 + 240 sum sigma_3(n) q^n`.
    pub fn e4(order: usize) -> Self {
        Self::eisenstein(4, 240, order)
    }

    /// `E6 = 1 - 504 sum sigma_5(n) q^n`.
    pub fn e6(order: usize) -> Self {
        Self::eisenstein(6, -504, order)
    }

    /// `q d/dq`, term by term.
    pub fn q_dq(&self) -> Self {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * rint(n as i64))
                .collect(),
        }
    }

    pub fn expand(f: &FormElement, order: usize) -> Result<QSeries> {
        if !f.is_holomorphic() {
            return Err(Error::NotHolomorphic);
        }
        if !f.is_z_free() {
            return Err(Error::ResidualZPower);
        }
        let e2 = Self::e2(order);
        let e4 = Self::e4(order);
        let e6 = Self::e6(order);
        let mut acc = Self::zero(order);
        for (m, c) in f.terms() {
            let mut t = Self::constant(c.clone(), order);
            for _ in 0..m.e2 {
                t = &t * &e2;
            }
            for _ in 0..m.e4 {
                t = &t * &e4;
            }
            for _ in 0..m.e6 {
                t = &t * &e6;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        QSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        QSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        QSeries { coeffs: out }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            wrote = true;
            let mag_str = if mag.denom() == &num_bigint::BigInt::from(1) {
                format!("{}", mag.numer())
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match n {
                0 => write!(f, "{}", mag_str)?,
                1 if mag.is_one() => write!(f, "q")?,
                1 => write!(f, "{}*q", mag_str)?,
                _ if mag.is_one() => write!(f, "q^{}", n)?,
                _ => write!(f, "{}*q^{}", mag_str, n)?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

use num_traits::One;
