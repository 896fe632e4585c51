use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;

use super::form::{form_gcd, FormElement};
use crate::{Error, Rat, Result};

/// Fraction of [`FormElement`]s with weight-homogeneous denominator.
///
/// Equality is exact (cross multiplication); the stored representative is
/// reduced by the multivariate gcd and normalized so that the denominator is
/// monic in the lexicographic monomial order with Z-power zero.
#[derive(Clone)]
pub struct FormFraction {
    num: FormElement,
    den: FormElement,
}

impl FormFraction {
    pub fn new(num: FormElement, den: FormElement) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !den.is_weight_homogeneous() {
            return Err(Error::InhomogeneousDenominator);
        }
        let mut f = FormFraction { num, den };
        f.reduce();
        Ok(f)
    }

    pub fn from_element(num: FormElement) -> Self {
        FormFraction { num, den: FormElement::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_element(FormElement::from_rat(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_element(FormElement::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_element(FormElement::zero())
    }

    pub fn one() -> Self {
        Self::from_element(FormElement::one())
    }

    pub fn numerator(&self) -> &FormElement {
        &self.num
    }

    pub fn denominator(&self) -> &FormElement {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Weight of the fraction (numerator weight minus denominator weight);
    /// requires a weight-homogeneous numerator.
    pub fn weight(&self) -> Result<i64> {
        if self.is_zero() {
            return Ok(0);
        }
        Ok(self.num.weight()? - self.den.weight()?)
    }

    pub fn is_weight_homogeneous(&self) -> bool {
        self.is_zero() || self.num.is_weight_homogeneous()
    }

    /// True when the element is a polynomial (denominator 1 after reduction).
    pub fn as_element(&self) -> Option<&FormElement> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.as_element().and_then(|e| e.as_rational())
    }

    pub fn is_holomorphic(&self) -> bool {
        self.num.is_holomorphic() && self.den.is_holomorphic()
    }

    pub fn phi(&self) -> Result<FormFraction> {
        FormFraction::new(self.num.phi(), self.den.phi())
    }

    pub fn kz(&self) -> Result<FormFraction> {
        FormFraction::new(self.num.kz()?, self.den.kz()?)
    }

    pub fn is_modular(&self) -> bool {
        self.num.is_modular() && self.den.is_modular()
    }

    /// Quotient-rule derivative, any mode of [`FormElement::derive`].
    pub fn derive(&self, mode: super::DeriveMode) -> Result<FormFraction> {
        use super::DeriveMode::*;
        match mode {
            Tau | TauBar => {
                let n = &(&self.num.derive(mode) * &self.den)
                    - &(&self.num * &self.den.derive(mode));
                FormFraction::new(n, &self.den * &self.den)
            }
            Hat => {
                // Hat is a weight-graded derivation; apply the quotient rule
                // with Hat on both parts (weights subtract correctly).
                let n = &(&self.num.derive(Hat) * &self.den)
                    - &(&self.num * &self.den.derive(Hat));
                FormFraction::new(n, &self.den * &self.den)
            }
        }
    }

    pub fn inv(&self) -> Result<FormFraction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.num.is_weight_homogeneous() {
            return Err(Error::InhomogeneousDenominator);
        }
        FormFraction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> FormFraction {
        FormFraction { num: self.num.scale(c), den: self.den.clone() }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = FormElement::one();
            return;
        }
        let g = form_gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.try_exact_div(&g).expect("gcd divides numerator");
            self.den = self.den.try_exact_div(&g).expect("gcd divides denominator");
        }
        // Shift Z entirely into the numerator and make the denominator monic.
        let zden = self.den.min_z();
        if zden != 0 {
            self.den = self.den.mul_z_pow(-zden);
            self.num = self.num.mul_z_pow(-zden);
        }
        let lc = self.den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }
}

impl PartialEq for FormFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for FormFraction {}

impl Add for &FormFraction {
    type Output = FormFraction;
    fn add(self, rhs: &FormFraction) -> FormFraction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        FormFraction::new(num, &self.den * &rhs.den).expect("denominators nonzero")
    }
}

impl Sub for &FormFraction {
    type Output = FormFraction;
    fn sub(self, rhs: &FormFraction) -> FormFraction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        FormFraction::new(num, &self.den * &rhs.den).expect("denominators nonzero")
    }
}

impl Mul for &FormFraction {
    type Output = FormFraction;
    fn mul(self, rhs: &FormFraction) -> FormFraction {
        FormFraction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("denominators nonzero")
    }
}

impl Div for &FormFraction {
    type Output = FormFraction;
    fn div(self, rhs: &FormFraction) -> FormFraction {
        assert!(!rhs.is_zero(), "division by zero fraction");
        FormFraction::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("denominators nonzero")
    }
}

impl Neg for &FormFraction {
    type Output = FormFraction;
    fn neg(self) -> FormFraction {
        FormFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&FormElement> for &FormFraction {
    type Output = FormFraction;
    fn mul(self, rhs: &FormElement) -> FormFraction {
        FormFraction::new(&self.num * rhs, self.den.clone()).expect("denominator nonzero")
    }
}

impl fmt::Display for FormFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(f, "{}", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            let n = if self.num.num_terms() > 1 {
                format!("({})", self.num)
            } else {
                format!("{}", self.num)
            };
            let d = if self.den.num_terms() > 1 {
                format!("({})", self.den)
            } else {
                format!("{}", self.den)
            };
            write!(f, "{}/{}", n, d)
        }
    }
}

impl fmt::Debug for FormFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
