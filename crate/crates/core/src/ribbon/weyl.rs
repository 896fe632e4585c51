use std::fmt;

use crate::ainf::Gen;
use crate::qmod::FormFraction;

/// A generator of the Weyl algebra appearing in graph outputs: a basis chain
/// entry with a (negative) power of u.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeylFactor {
    pub gen: Gen,
    pub upow: i32,
}

/// Formal sum of ordered products of Weyl generators with form-fraction
/// scalars.
#[derive(Clone, Debug, Default)]
pub struct WeylWord {
    pub terms: Vec<(FormFraction, Vec<WeylFactor>)>,
}

impl WeylWord {
    pub fn zero() -> WeylWord {
        WeylWord::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_zero())
    }

    pub fn add(&mut self, coeff: FormFraction, factors: Vec<WeylFactor>) {
        if coeff.is_zero() {
            return;
        }
        for (c, f) in &mut self.terms {
            if *f == factors {
                *c = &*c + &coeff;
                return;
            }
        }
        self.terms.push((coeff, factors));
    }

    pub fn compress(&mut self) {
        self.terms.retain(|(c, _)| !c.is_zero());
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, fs) in &self.terms {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for wf in fs {
                write!(f, "·({}u^{})", wf.gen, wf.upow)?;
            }
        }
        Ok(())
    }
}

/// Normal-orders a product of two Weyl factors against a residue pairing
/// callback: `x y = y x (Koszul) + <x, y>_res`, where the residue pairing is
/// the coefficient of `u^{-1}` in `(-1)^i <x, y>_M u^{i+j}`.
///
/// The callback supplies the Mukai pairing of the underlying generators; the
/// caller fixes its convention once. Confluence of this rewriting on the
/// small words produced by graph actions is exercised in tests.
pub fn normal_order(
    word: &WeylWord,
    mukai: &dyn Fn(Gen, Gen) -> FormFraction,
) -> WeylWord {
    let mut out = WeylWord::zero();
    for (c, fs) in &word.terms {
        normal_order_rec(c.clone(), fs.clone(), mukai, &mut out);
    }
    out.compress();
    out
}

fn normal_order_rec(
    coeff: FormFraction,
    factors: Vec<WeylFactor>,
    mukai: &dyn Fn(Gen, Gen) -> FormFraction,
    out: &mut WeylWord,
) {
    // Order by descending upow (creation operators, more negative u, to the
    // right); swap adjacent out-of-order pairs with the commutator correction.
    for i in 0..factors.len().saturating_sub(1) {
        let (a, b) = (factors[i], factors[i + 1]);
        if a.upow > b.upow {
            // Koszul sign over shifted parities of the chain entries.
            let sgn = if a.gen.parity() && b.gen.parity() { -1 } else { 1 };
            let mut swapped = factors.clone();
            swapped.swap(i, i + 1);
            normal_order_rec(
                coeff.scale(&crate::rint(sgn)),
                swapped,
                mukai,
                out,
            );
            // Residue term: only when the u-powers sum to -1.
            if a.upow + b.upow == -1 {
                let sres = if a.upow % 2 == 0 { 1 } else { -1 };
                let p = mukai(a.gen, b.gen).scale(&crate::rint(sres));
                if !p.is_zero() {
                    let mut rest = factors.clone();
                    rest.remove(i + 1);
                    rest.remove(i);
                    normal_order_rec(&coeff * &p, rest, mukai, out);
                }
            }
            return;
        }
    }
    out.add(coeff, factors);
}
