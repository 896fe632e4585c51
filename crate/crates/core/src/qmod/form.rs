use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{rat, rint, Error, Rat, Result};

/// Exponent vector of a monomial `E2^e2 * E4^e4 * E6^e6 * Y^y * Z^z`.
///
/// The `BTreeMap` ordering on this key is the lexicographic monomial order
/// used for canonical printing and fraction normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub e2: u32,
    pub e4: u32,
    pub e6: u32,
    pub y: u32,
    pub z: i32,
}

impl Mono {
    pub const ONE: Mono = Mono { e2: 0, e4: 0, e6: 0, y: 0, z: 0 };

    pub fn weight(&self) -> i64 {
        2 * self.e2 as i64 + 4 * self.e4 as i64 + 6 * self.e6 as i64 + 2 * self.y as i64
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono {
            e2: self.e2 + other.e2,
            e4: self.e4 + other.e4,
            e6: self.e6 + other.e6,
            y: self.y + other.y,
            z: self.z + other.z,
        }
    }

    /// Componentwise division; `None` if not divisible (Z is invertible, so
    /// the z-exponent never obstructs).
    fn try_div(&self, other: &Mono) -> Option<Mono> {
        if self.e2 >= other.e2 && self.e4 >= other.e4 && self.e6 >= other.e6 && self.y >= other.y {
            Some(Mono {
                e2: self.e2 - other.e2,
                e4: self.e4 - other.e4,
                e6: self.e6 - other.e6,
                y: self.y - other.y,
                z: self.z - other.z,
            })
        } else {
            None
        }
    }

    fn gcd(&self, other: &Mono) -> Mono {
        Mono {
            e2: self.e2.min(other.e2),
            e4: self.e4.min(other.e4),
            e6: self.e6.min(other.e6),
            y: self.y.min(other.y),
            z: self.z.min(other.z),
        }
    }
}

/// Mode selector for [`FormElement::derive`]: all three return the derivative
/// divided by `2*pi*i`, so `Tau` is `q d/dq` on holomorphic elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeriveMode {
    /// `(1/2*pi*i) d/dtau`
    Tau,
    /// `(1/2*pi*i) d/dtaubar`
    TauBar,
    /// `(1/2*pi*i) (d/dtau + wt/(tau - taubar))`, the Shimura-Maass type
    /// operator preserving the modular subring.
    Hat,
}

/// Exact element of `Q[E2, E4, E6, Y][Z^{±1}]`, stored as a sorted monomial map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FormElement {
    terms: BTreeMap<Mono, Rat>,
}

impl FormElement {
    pub fn zero() -> Self {
        FormElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        FormElement { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rint(n))
    }

    pub fn monomial(c: Rat, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        FormElement { terms }
    }

    pub fn e2() -> Self {
        Self::monomial(Rat::one(), Mono { e2: 1, ..Mono::ONE })
    }

    pub fn e4() -> Self {
        Self::monomial(Rat::one(), Mono { e4: 1, ..Mono::ONE })
    }

    pub fn e6() -> Self {
        Self::monomial(Rat::one(), Mono { e6: 1, ..Mono::ONE })
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), Mono { y: 1, ..Mono::ONE })
    }

    pub fn z() -> Self {
        Self::monomial(Rat::one(), Mono { z: 1, ..Mono::ONE })
    }

    pub fn z_pow(t: i32) -> Self {
        Self::monomial(Rat::one(), Mono { z: t, ..Mono::ONE })
    }

    /// `E2* = E2 + 12 Y`, the weight-two almost-holomorphic modular generator.
    pub fn e2_star() -> Self {
        Self::e2() + Self::monomial(rint(12), Mono { y: 1, ..Mono::ONE })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Mono::ONE) {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormElement {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        FormElement {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// True when every monomial is free of `Y`.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.y == 0)
    }

    /// True when every monomial is free of `Z`.
    pub fn is_z_free(&self) -> bool {
        self.terms.keys().all(|m| m.z == 0)
    }

    /// Weight of a weight-homogeneous element; error otherwise.
    pub fn weight(&self) -> Result<i64> {
        let mut it = self.terms.keys();
        let w = match it.next() {
            None => return Ok(0),
            Some(m) => m.weight(),
        };
        if it.all(|m| m.weight() == w) {
            Ok(w)
        } else {
            Err(Error::WeightInhomogeneous)
        }
    }

    pub fn is_weight_homogeneous(&self) -> bool {
        self.weight().is_ok()
    }

    /// Splits into weight-homogeneous parts, sorted by weight; zero gives `[]`.
    pub fn weight_decompose(&self) -> Vec<(i64, FormElement)> {
        let mut parts: BTreeMap<i64, FormElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.weight()).or_default().insert(*m, c.clone());
        }
        parts.into_iter().collect()
    }

    /// The Kaneko-Zagier "constant term" map: substitutes `Y = 0`.
    pub fn phi(&self) -> FormElement {
        FormElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.y == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The inverse of `phi` on holomorphic input: substitutes `E2 -> E2 + 12 Y`.
    pub fn kz(&self) -> Result<FormElement> {
        if !self.is_holomorphic() {
            return Err(Error::NotHolomorphic);
        }
        let e2s = Self::e2_star();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let rest = Mono { e2: 0, ..*m };
            out += e2s.pow(m.e2).mul_mono(&rest).scale(c);
        }
        Ok(out)
    }

    /// True when the element lies in the modular subring `Q[E2*, E4, E6][Z^{±1}]`.
    pub fn is_modular(&self) -> bool {
        match self.phi().kz() {
            Ok(f) => f == *self,
            Err(_) => false,
        }
    }

    /// Derivation rules, all divided by `2*pi*i`.
    ///
    /// `Tau` uses the Ramanujan identities on `E2, E4, E6` and `D Y = -Y^2`;
    /// `TauBar` kills the Eisenstein generators and sends `Y` to `+Y^2`;
    /// `Hat` adds `wt * Y` per weight-homogeneous component.
    pub fn derive(&self, mode: DeriveMode) -> FormElement {
        match mode {
            DeriveMode::Tau => self.derive_inner(false),
            DeriveMode::TauBar => self.derive_inner(true),
            DeriveMode::Hat => {
                let mut out = Self::zero();
                for (w, part) in self.weight_decompose() {
                    out += part.derive_inner(false);
                    out += (&part * &Self::y()).scale(&rint(w));
                }
                out
            }
        }
    }

    fn derive_inner(&self, bar: bool) -> FormElement {
        // d(E2)/dq-normalized derivatives; TauBar annihilates the holomorphic
        // generators.
        let d_e2 = (&(&Self::e2() * &Self::e2()) - &Self::e4()).scale(&rat(1, 12));
        let d_e4 = (&(&Self::e2() * &Self::e4()) - &Self::e6()).scale(&rat(1, 3));
        let d_e6 = (&(&Self::e2() * &Self::e6()) - &(&Self::e4() * &Self::e4())).scale(&rat(1, 2));
        let d_y = if bar {
            &Self::y() * &Self::y()
        } else {
            (&Self::y() * &Self::y()).scale(&rint(-1))
        };

        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if !bar {
                if m.e2 > 0 {
                    let rest = Mono { e2: m.e2 - 1, ..*m };
                    out += d_e2.mul_mono(&rest).scale(&(c * rint(m.e2 as i64)));
                }
                if m.e4 > 0 {
                    let rest = Mono { e4: m.e4 - 1, ..*m };
                    out += d_e4.mul_mono(&rest).scale(&(c * rint(m.e4 as i64)));
                }
                if m.e6 > 0 {
                    let rest = Mono { e6: m.e6 - 1, ..*m };
                    out += d_e6.mul_mono(&rest).scale(&(c * rint(m.e6 as i64)));
                }
            }
            if m.y > 0 {
                let rest = Mono { y: m.y - 1, ..*m };
                out += d_y.mul_mono(&rest).scale(&(c * rint(m.y as i64)));
            }
        }
        out
    }

    /// Formal antiderivative in `taubar`, acting on `Y`-monomials as
    /// `Y^m -> Y^(m-1) / (Z * (m-1))` for `m >= 2`. Terms with `m < 2` are
    /// rejected: the integration rule is only defined there.
    pub fn integrate_taubar(&self) -> Result<FormElement> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.y < 2 {
                return Err(Error::IntegralUndefined(m.y));
            }
            let nm = Mono { y: m.y - 1, z: m.z - 1, ..*m };
            out.insert(nm, c / rint((m.y - 1) as i64));
        }
        Ok(out)
    }

    /// Leading monomial in the canonical (lexicographic) order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Minimum z-exponent across monomials (0 for the zero element).
    pub fn min_z(&self) -> i32 {
        self.terms.keys().map(|m| m.z).min().unwrap_or(0)
    }

    pub fn mul_z_pow(&self, t: i32) -> FormElement {
        self.mul_mono(&Mono { z: t, ..Mono::ONE })
    }

    /// Exact polynomial division: `self / d`, `None` when not divisible.
    pub fn try_exact_div(&self, d: &FormElement) -> Option<FormElement> {
        if d.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quo = FormElement::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (*m, c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (*m, c.clone())
            };
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            let t = FormElement::monomial(qc, qm);
            rem = &rem - &(&t * d);
            quo += t;
            // Leading term strictly decreases; divisibility fails otherwise.
            if let Some((m, _)) = rem.leading() {
                if *m >= rm {
                    return None;
                }
            }
        }
        Some(quo)
    }

    /// Content (gcd of all monomials) as a monomial factor.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Mono::ONE,
            Some(m) => *m,
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Evaluate by substituting exact rational values for the generators.
    /// Only meaningful in tests backed by floating point oracles; here used
    /// to spot-check identities at pseudo-random rational points.
    pub fn eval_rat(&self, e2: &Rat, e4: &Rat, e6: &Rat, y: &Rat, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.e2 {
                t *= e2;
            }
            for _ in 0..m.e4 {
                t *= e4;
            }
            for _ in 0..m.e6 {
                t *= e6;
            }
            for _ in 0..m.y {
                t *= y;
            }
            if m.z >= 0 {
                for _ in 0..m.z {
                    t *= z;
                }
            } else {
                for _ in 0..(-m.z) {
                    t /= z;
                }
            }
            acc += t;
        }
        acc
    }
}

impl AddAssign<FormElement> for FormElement {
    fn add_assign(&mut self, rhs: FormElement) {
        for (m, c) in rhs.terms {
            self.insert(m, c);
        }
    }
}

impl Add for &FormElement {
    type Output = FormElement;
    fn add(self, rhs: &FormElement) -> FormElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, c.clone());
        }
        out
    }
}

impl Add for FormElement {
    type Output = FormElement;
    fn add(mut self, rhs: FormElement) -> FormElement {
        self += rhs;
        self
    }
}

impl Sub for &FormElement {
    type Output = FormElement;
    fn sub(self, rhs: &FormElement) -> FormElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, -c.clone());
        }
        out
    }
}

impl Neg for FormElement {
    type Output = FormElement;
    fn neg(self) -> FormElement {
        FormElement {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &FormElement {
    type Output = FormElement;
    fn neg(self) -> FormElement {
        FormElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &FormElement {
    type Output = FormElement;
    fn mul(self, rhs: &FormElement) -> FormElement {
        let mut out = FormElement::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Multivariate gcd by primitive pseudo-remainder sequences, recursing through
/// the variables E2 > E4 > E6 > Y. Z-exponents are units and stripped first.
pub(crate) fn form_gcd(a: &FormElement, b: &FormElement) -> FormElement {
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    let a0 = a.mul_z_pow(-a.min_z());
    let b0 = b.mul_z_pow(-b.min_z());
    let g = gcd_rec(&a0, &b0, 0);
    normalize_unit(&g)
}

fn normalize_unit(f: &FormElement) -> FormElement {
    // Canonical associate: strip Z, make the leading coefficient 1.
    if f.is_zero() {
        return FormElement::zero();
    }
    let f = f.mul_z_pow(-f.min_z());
    let lc = f.leading().unwrap().1.clone();
    f.scale(&(Rat::one() / lc))
}

const NVARS: usize = 4;

fn var_deg(m: &Mono, v: usize) -> u32 {
    match v {
        0 => m.e2,
        1 => m.e4,
        2 => m.e6,
        _ => m.y,
    }
}

/// View `f` as a univariate polynomial in variable `v`; returns coefficients
/// indexed by degree.
fn coeffs_in_var(f: &FormElement, v: usize) -> Vec<FormElement> {
    let d = f.terms.keys().map(|m| var_deg(m, v)).max().unwrap_or(0) as usize;
    let mut out = vec![FormElement::zero(); d + 1];
    for (m, c) in &f.terms {
        let k = var_deg(m, v) as usize;
        let mut m0 = *m;
        match v {
            0 => m0.e2 = 0,
            1 => m0.e4 = 0,
            2 => m0.e6 = 0,
            _ => m0.y = 0,
        }
        out[k].insert(m0, c.clone());
    }
    out
}

fn assemble_in_var(coeffs: &[FormElement], v: usize) -> FormElement {
    let mut out = FormElement::zero();
    for (k, c) in coeffs.iter().enumerate() {
        for (m, q) in &c.terms {
            let mut m2 = *m;
            match v {
                0 => m2.e2 += k as u32,
                1 => m2.e4 += k as u32,
                2 => m2.e6 += k as u32,
                _ => m2.y += k as u32,
            }
            out.insert(m2, q.clone());
        }
    }
    out
}

fn gcd_rec(a: &FormElement, b: &FormElement, v: usize) -> FormElement {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if v >= NVARS {
        // Both are nonzero rationals times Z-units.
        return FormElement::one();
    }
    let da = a.terms.keys().map(|m| var_deg(m, v)).max().unwrap_or(0);
    let db = b.terms.keys().map(|m| var_deg(m, v)).max().unwrap_or(0);
    if da == 0 && db == 0 {
        return gcd_rec(a, b, v + 1);
    }

    let cont = |f: &FormElement| -> FormElement {
        let cs = coeffs_in_var(f, v);
        let mut g = FormElement::zero();
        for c in cs {
            if !c.is_zero() {
                g = gcd_rec(&g, &c, v + 1);
            }
        }
        g
    };
    let ca = cont(a);
    let cb = cont(b);
    let cont_gcd = gcd_rec(&ca, &cb, v + 1);

    let pa = a.try_exact_div(&ca).expect("content divides");
    let pb = b.try_exact_div(&cb).expect("content divides");

    // Primitive PRS on the primitive parts.
    let (mut f, mut g) = if da >= db { (pa, pb) } else { (pb, pa) };
    loop {
        if g.is_zero() {
            break;
        }
        let r = pseudo_rem(&f, &g, v);
        f = g;
        g = match r {
            None => FormElement::zero(),
            Some(r) => {
                if r.is_zero() {
                    FormElement::zero()
                } else {
                    let cr = cont(&r);
                    r.try_exact_div(&cr).expect("content divides")
                }
            }
        };
    }
    let pf = {
        let cf = cont(&f);
        f.try_exact_div(&cf).expect("content divides")
    };
    &cont_gcd * &pf
}

/// Pseudo-remainder of `f` by `g` in variable `v`. Returns `None` when `g`
/// has larger degree (remainder is `f` itself, handled by the caller swap).
fn pseudo_rem(f: &FormElement, g: &FormElement, v: usize) -> Option<FormElement> {
    let mut fc = coeffs_in_var(f, v);
    let gc = coeffs_in_var(g, v);
    let dg = gc.len() - 1;
    let lg = gc[dg].clone();
    loop {
        while fc.len() > 1 && fc.last().unwrap().is_zero() {
            fc.pop();
        }
        let df = fc.len() - 1;
        if df < dg || (df == 0 && fc[0].is_zero()) {
            return Some(assemble_in_var(&fc, v));
        }
        let lf = fc[df].clone();
        // f := lg * f - lf * x^(df-dg) * g
        for c in fc.iter_mut() {
            *c = &*c * &lg;
        }
        for (k, gk) in gc.iter().enumerate() {
            let t = &lf * gk;
            fc[df - dg + k] = &fc[df - dg + k] - &t;
        }
    }
}

impl fmt::Display for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Canonical order: descending in the lexicographic monomial order.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let one = BigInt::one();
            if !mag.is_one() || *m == Mono::ONE {
                if mag.denom() == &one {
                    factors.push(format!("{}", mag.numer()));
                } else {
                    factors.push(format!("{}/{}", mag.numer(), mag.denom()));
                }
            }
            let mut push_pow = |sym: &str, e: i64| {
                if e == 1 {
                    factors.push(sym.to_string());
                } else if e != 0 {
                    factors.push(format!("{}^{}", sym, e));
                }
            };
            push_pow("E2", m.e2 as i64);
            push_pow("E4", m.e4 as i64);
            push_pow("E6", m.e6 as i64);
            push_pow("Y", m.y as i64);
            push_pow("Z", m.z as i64);
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
