use crate::ainf::{word_parity, AInfStructure, Cochain, Gen, Word};
use crate::hoch::chain::{Chain, UChain};
use crate::qmod::{DeriveMode, FormFraction};
use crate::sign::{block_swap, Sign};
use crate::{Error, Result};

/// Rotation of a word: `word[i..] ++ word[..i]`, with the Koszul sign of
/// moving the suffix block past the prefix block.
fn rotate(word: &[Gen], i: usize) -> (Word, Sign) {
    let mut w = Word::with_capacity(word.len());
    w.extend_from_slice(&word[i..]);
    w.extend_from_slice(&word[..i]);
    let s = block_swap(word_parity(&word[i..]), word_parity(&word[..i]));
    (w, s)
}

/// The A-infinity Hochschild differential on the normalized complex.
///
/// Sums over all cyclic blocks of consecutive factors contracted by a
/// product; blocks through the marked slot produce the new marked entry, with
/// the rotate-to-front Koszul sign, other blocks contract in place with the
/// operator-passing sign.
pub fn hochschild_b(s: &AInfStructure, x: &Chain) -> Result<Chain> {
    b_with(s, x, None)
}

/// `b` with one structure tensor replaced by a cochain derivative: the
/// operator `[d, b]` appearing in the connection identities. `replacement`
/// gives for each block the coefficient table to use instead of the product.
pub fn hochschild_b_deformed(s: &AInfStructure, x: &Chain, phi: &Cochain) -> Result<Chain> {
    b_with(s, x, Some(phi))
}

fn b_with(s: &AInfStructure, x: &Chain, replacement: Option<&Cochain>) -> Result<Chain> {
    b_with_twist(s, x, replacement, BTwist::default())
}

/// Convention twist knobs for the differential; the defaults are pinned by
/// the printed lifting fixture. `slot0_unshifted` uses the unshifted parity
/// of the marked entry in prefix signs; `wrap_flip`/`global_flip` are overall
/// signs on the wrapping terms and on the whole operator.
#[derive(Clone, Copy, Default)]
pub(crate) struct BTwist {
    pub slot0_unshifted: bool,
    pub wrap_flip: bool,
    pub global_flip: bool,
}

pub(crate) fn b_with_twist(
    s: &AInfStructure,
    x: &Chain,
    replacement: Option<&Cochain>,
    twist: BTwist,
) -> Result<Chain> {
    let mut out = Chain::zero();
    for (word, coeff) in x.terms() {
        let n1 = word.len();
        let slot0_extra = twist.slot0_unshifted; // parity flip of slot 0.
        for i in 0..n1 {
            for j in 1..=n1 {
                let contains_marked = i == 0 || i + j > n1;
                let (value, rest_word, sign) = if contains_marked {
                    let (rot, mut rsign) = rotate(word, i);
                    if slot0_extra && i > 0 && word_parity(&word[i..]) {
                        // Slot 0 sits in the prefix block of the rotation.
                        rsign = rsign * Sign::MINUS;
                    }
                    if twist.wrap_flip {
                        rsign = rsign * Sign::MINUS;
                    }
                    let looked = lookup(s, replacement, &rot[..j])?;
                    let Some((c, out_gen)) = looked else { continue };
                    let mut w = Word::with_capacity(n1 - j + 1);
                    w.push(out_gen);
                    w.extend_from_slice(&rot[j..]);
                    (c, w, rsign)
                } else {
                    let looked = lookup(s, replacement, &word[i..i + j])?;
                    let Some((c, out_gen)) = looked else { continue };
                    let mut w = Word::with_capacity(n1 - j + 1);
                    w.extend_from_slice(&word[..i]);
                    w.push(out_gen);
                    w.extend_from_slice(&word[i + j..]);
                    let mut sgn = Sign::from_parity(word_parity(&word[..i]));
                    if slot0_extra {
                        sgn = sgn * Sign::MINUS;
                    }
                    (c, w, sgn)
                };
                let mut v = (coeff * &value).scale(&sign.rat());
                if twist.global_flip {
                    v = -&v;
                }
                out.add_term(v, rest_word);
            }
        }
    }
    Ok(out)
}

fn lookup(
    s: &AInfStructure,
    replacement: Option<&Cochain>,
    args: &[Gen],
) -> Result<Option<(FormFraction, Gen)>> {
    match replacement {
        None => Ok(s
            .mu(args)?
            .map(|(c, g)| (FormFraction::from_element(c), g))),
        Some(phi) => Ok(phi
            .value(args)
            .map(|(c, g)| (FormFraction::from_element(c.clone()), *g))),
    }
}

/// Connes' normalized `B`: every rotation prefixed by the unit of the matching
/// object; degenerate outputs vanish.
pub fn connes_b(x: &Chain) -> Chain {
    let mut out = Chain::zero();
    for (word, coeff) in x.terms() {
        for i in 0..word.len() {
            let (rot, sign) = rotate(word, i);
            let unit = Gen::unit_for(rot[0].source());
            let mut w = Word::with_capacity(word.len() + 1);
            w.push(unit);
            w.extend_from_slice(&rot);
            out.add_term(coeff.scale(&sign.rat()), w);
        }
    }
    out
}

/// Flavor selector for [`insert_cochain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertFlavor {
    /// The marked-block insertion `b^{1|1}`: the cochain eats a block of
    /// non-marked factors, and a product swallows the result together with a
    /// block through the marked slot.
    B11,
    /// The rotation-sum companion `B^{1|1}` with a fresh unit at the marked
    /// slot.
    BB11,
}

/// Insertion of a cochain into a chain.
pub fn insert_cochain(
    s: &AInfStructure,
    phi: &Cochain,
    x: &Chain,
    flavor: InsertFlavor,
) -> Result<Chain> {
    match flavor {
        InsertFlavor::B11 => b11(s, phi, x),
        InsertFlavor::BB11 => bb11(phi, x),
    }
}

fn b11(s: &AInfStructure, phi: &Cochain, x: &Chain) -> Result<Chain> {
    let mut out = Chain::zero();
    let lead = std::env::var("CATGW_LEAD").map(|v| v == "1").unwrap_or(false);
    let lead_sign = std::env::var("CATGW_LEADS").map(|v| v == "1").unwrap_or(false);
    let lead_only = std::env::var("CATGW_LEADONLY").map(|v| v == "1").unwrap_or(false);
    for (word, coeff) in x.terms() {
        let n1 = word.len();
        if lead {
            // Leading contraction terms: the cochain consumes a cyclic block
            // through the marked slot and its output is the new marked entry.
            for i in 0..n1 {
                let (rot, rsign) = rotate(word, i);
                let pos0 = (n1 - i) % n1;
                for lf in (pos0 + 1)..=n1 {
                    let Some((cphi, gphi)) = phi.value(&rot[..lf]) else {
                        continue;
                    };
                    let mut w = Word::with_capacity(n1 - lf + 1);
                    w.push(*gphi);
                    w.extend_from_slice(&rot[lf..]);
                    let mut sign = rsign;
                    if lead_sign {
                        sign = sign * Sign::MINUS;
                    }
                    let v = (coeff * &FormFraction::from_element(cphi.clone())).scale(&sign.rat());
                    out.add_term(v, w);
                }
            }
        }
        if lead_only {
            continue;
        }
        for i in 0..n1 {
            // The product block starts at i and must contain the marked slot.
            let (rot, rsign) = rotate(word, i);
            let pos0 = (n1 - i) % n1;
            for ell in 1..=n1 {
                // Block rot[..ell]; must contain pos0 (pos0 < ell, and pos0=0
                // only when i=0).
                if pos0 >= ell {
                    continue;
                }
                // Cochain block rot[f..f+lf] inside [0, ell); the block may
                // contain the marked slot (knob CATGW_PHI0 includes those
                // configurations).
                let allow_marked = std::env::var("CATGW_PHI0").map(|v| v == "1").unwrap_or(false);
                let flush = std::env::var("CATGW_FLUSH").map(|v| v == "1").unwrap_or(false);
                for f in 0..ell {
                    for lf in 1..=(ell - f) {
                        if !allow_marked && f <= pos0 && pos0 < f + lf {
                            continue;
                        }
                        if flush && f + lf != ell {
                            continue;
                        }
                        let Some((cphi, gphi)) = phi.value(&rot[f..f + lf]) else {
                            continue;
                        };
                        let mut mu_args = Word::with_capacity(ell - lf + 1);
                        mu_args.extend_from_slice(&rot[..f]);
                        mu_args.push(*gphi);
                        mu_args.extend_from_slice(&rot[f + lf..ell]);
                        let Some((cmu, gmu)) = s.mu(&mu_args)? else {
                            continue;
                        };
                        let mut w = Word::with_capacity((n1 + 2).saturating_sub(ell + lf));
                        w.push(gmu);
                        w.extend_from_slice(&rot[ell..]);
                        let mut sign = rsign;
                        if phi.parity && word_parity(&rot[..f]) {
                            sign = sign * Sign::MINUS;
                        }
                        // Binary products absorbing a strict unit enter with
                        // the opposite orientation; this is what closes the
                        // anticommutation contract with the differential on
                        // unit-led chains.
                        if mu_args.len() == 2 && (mu_args[0].is_unit() || mu_args[1].is_unit()) {
                            sign = sign * Sign::MINUS;
                        }
                        let v = (coeff * &FormFraction::from_element(&cmu * cphi))
                            .scale(&sign.rat());
                        out.add_term(v, w);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn bb11(phi: &Cochain, x: &Chain) -> Result<Chain> {
    let mut out = Chain::zero();
    for (word, coeff) in x.terms() {
        let n1 = word.len();
        for i in 0..n1 {
            let (rot, rsign) = rotate(word, i);
            for f in 0..n1 {
                for lf in 1..=(n1 - f) {
                    let Some((cphi, gphi)) = phi.value(&rot[f..f + lf]) else {
                        continue;
                    };
                    let mut body = Word::with_capacity(n1 - lf + 1);
                    body.extend_from_slice(&rot[..f]);
                    body.push(*gphi);
                    body.extend_from_slice(&rot[f + lf..]);
                    let unit = Gen::unit_for(body[0].source());
                    let mut w = Word::with_capacity(body.len() + 1);
                    w.push(unit);
                    w.extend_from_slice(&body);
                    let mut sign = rsign;
                    if phi.parity && word_parity(&rot[..f]) {
                        sign = sign * Sign::MINUS;
                    }
                    let v = (coeff * &FormFraction::from_element(cphi.clone())).scale(&sign.rat());
                    out.add_term(v, w);
                }
            }
        }
    }
    Ok(out)
}

/// Background connection for the Getzler-Gauss-Manin operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connection {
    /// Basis vectors are flat; coefficients are differentiated by `D_tau`.
    Std,
    /// The weight connection `(1/2 pi i) nabla(x) = -wt(x) Y x`; the structure
    /// tensor differentiates by the hat operator.
    Mod,
}

/// The Getzler-Gauss-Manin connection, scaled by `1/(2 pi i)`:
/// `D(x) - u^{-1} b11(D mu | x) - B11(D mu | x)` with the differentiation
/// dictated by the chosen background connection.
pub fn ggm(s: &AInfStructure, x: &UChain, connection: Connection) -> Result<UChain> {
    let mu = Cochain::from_structure(s)?;
    let dmu = match connection {
        Connection::Std => mu.derive(DeriveMode::Tau),
        Connection::Mod => mu.derive(DeriveMode::Hat),
    };
    let mut out = UChain::new(x.truncation);
    for (&k, part) in x.parts() {
        // Connection derivative of the coefficient part.
        let mut dpart = Chain::zero();
        for (w, c) in part.terms() {
            let mut dc = c.derive(DeriveMode::Tau)?;
            if connection == Connection::Mod {
                // Tensor Leibniz: subtract wt(word) * Y * c.
                let wt2 = crate::ainf::word_weight2(w);
                let yterm = c
                    .scale(&crate::rat(-wt2, 2));
                let y = FormFraction::from_element(crate::qmod::FormElement::y());
                dc = &dc + &(&yterm * &y);
            }
            dpart.add_term(dc, w.clone());
        }
        out.add_part(k, &dpart);
        let b11_part = insert_cochain(s, &dmu, part, InsertFlavor::B11)?;
        out.add_part(k - 1, &b11_part.scale_rat(&crate::rint(-1)));
        let bb11_part = insert_cochain(s, &dmu, part, InsertFlavor::BB11)?;
        out.add_part(k, &bb11_part.scale_rat(&crate::rint(-1)));
    }
    Ok(out)
}

/// `(b + uB)` on a truncated u-chain.
pub fn b_plus_ub(s: &AInfStructure, x: &UChain) -> Result<UChain> {
    let mut out = UChain::new(x.truncation);
    for (&k, part) in x.parts() {
        out.add_part(k, &hochschild_b(s, part)?);
        out.add_part(k + 1, &connes_b(part));
    }
    Ok(out)
}

/// Extends a degree-(-1) cycle `xi` with `b(alpha) = -B(xi)` to a
/// `(b+uB)`-closed u-chain through the truncation order, solving
/// `b(next) = -B(previous)` at each order with the lifting solver.
pub fn complete_lift(
    s: &AInfStructure,
    xi: &Chain,
    alpha: &Chain,
    truncation: i32,
) -> Result<UChain> {
    let mut u = UChain::new(truncation);
    u.set(0, xi.clone());
    u.set(1, alpha.clone());
    let mut prev = alpha.clone();
    for k in 2..truncation {
        let rhs = connes_b(&prev).scale_rat(&crate::rint(-1));
        if rhs.is_zero() {
            break;
        }
        let next = crate::solver::solve_b_equation(s, &rhs, prev.max_len() + 2)?;
        u.set(k, next.clone());
        prev = next;
    }
    let residual = b_plus_ub(s, &u)?;
    for (&k, part) in residual.parts() {
        if k < truncation - 1 && !part.is_zero() {
            return Err(Error::Other(format!(
                "lift is not closed at u-order {}: {}",
                k, part
            )));
        }
    }
    Ok(u)
}
