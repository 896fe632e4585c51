use num_traits::Zero;

use crate::ainf::{AInfStructure, Cochain};
use crate::hoch::chain::Chain;
use crate::hoch::ops::{hochschild_b, insert_cochain, InsertFlavor};
use crate::qmod::{DeriveMode, FormFraction};
use crate::solver::lift::{solve_graded, AnsatzSpec, GradedEquation};
use crate::solver::{enumerate_sector, xi_chain, WeightParity};
use crate::{Error, Result};

/// A homology class in the one-dimensional degree sectors: a coordinate
/// against the reference basis (`[Omega]` in degree 1, `[xi]` in degree -1)
/// together with the bounding chain certificate for the exact part.
#[derive(Clone, Debug)]
pub struct HomologyClass {
    pub degree: i64,
    pub coordinate: FormFraction,
    pub basis: &'static str,
    pub certificate: Chain,
}

/// Solves `y = c * basis + b(w)` jointly for the exact scalar coordinate `c`
/// and a bounding chain `w`, with `c` ranging over weight-homogeneous
/// fractions. This is the certificate-level homology reduction: it requires
/// no pairing and no convention beyond the differential itself.
pub fn reduce_coordinate(
    s: &AInfStructure,
    y: &Chain,
    basis: &Chain,
    max_len: usize,
) -> Result<(FormFraction, Chain)> {
    if y.is_zero() {
        return Ok((FormFraction::zero(), Chain::zero()));
    }
    let Some(w2) = y.weight2()? else {
        return Ok((FormFraction::zero(), Chain::zero()));
    };
    let Some(deg) = y.degree()? else {
        return Ok((FormFraction::zero(), Chain::zero()));
    };
    let ladder = [
        AnsatzSpec::general(2, 2),
        AnsatzSpec::general(3, 4),
        AnsatzSpec::general(4, 5),
    ];
    let sector = enumerate_sector(max_len, deg + 1, WeightParity::Any);
    solve_with_scalar(s, y, basis, &sector.words, w2, &ladder)
}

fn solve_with_scalar(
    s: &AInfStructure,
    y: &Chain,
    basis: &Chain,
    words: &[crate::ainf::Word],
    total_w2: i64,
    ladder: &[AnsatzSpec],
) -> Result<(FormFraction, Chain)> {
    use crate::qmod::{FormElement, Mono};
    use crate::Rat;
    use std::collections::BTreeMap;

    let mut images = Vec::with_capacity(words.len());
    for w in words {
        let e = Chain::term(FormFraction::one(), w.clone())?;
        images.push(hochschild_b(s, &e)?);
    }
    let basis_w2 = basis
        .weight2()?
        .ok_or_else(|| Error::Other("basis chain has no weight".into()))?;

    let mut last: Option<Error> = None;
    for spec in ladder {
        // Columns: bounding-chain coordinates plus the scalar coordinate in
        // its own weight-homogeneous ansatz.
        let denom_w = match spec.denom.weight() {
            Ok(w) => w,
            Err(_) => continue,
        };
        let mut columns: Vec<(usize, FormElement)> = Vec::new();
        for (wi, w) in words.iter().enumerate() {
            let cw2 = total_w2 - crate::ainf::word_weight2(w);
            if cw2 % 2 != 0 {
                continue;
            }
            for p in spec.numerator_basis(cw2 / 2 + denom_w) {
                columns.push((wi, p));
            }
        }
        let scalar_base = columns.len();
        let cw2 = total_w2 - basis_w2;
        let mut scalar_basis = Vec::new();
        if cw2 % 2 == 0 {
            scalar_basis = spec.numerator_basis(cw2 / 2 + denom_w);
        }
        let ncols = scalar_base + scalar_basis.len();

        let mut row_index: BTreeMap<(crate::ainf::Word, Mono), usize> = BTreeMap::new();
        let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
        let mut rhs_v: Vec<Rat> = Vec::new();
        let mut row_of = |key: (crate::ainf::Word, Mono),
                          rows: &mut Vec<Vec<(usize, Rat)>>,
                          rhs_v: &mut Vec<Rat>| {
            *row_index.entry(key).or_insert_with(|| {
                rows.push(Vec::new());
                rhs_v.push(Rat::zero());
                rows.len() - 1
            })
        };
        let mut push = |col: usize,
                        image: &Chain,
                        p: &FormElement,
                        rows: &mut Vec<Vec<(usize, Rat)>>,
                        rhs_v: &mut Vec<Rat>|
         -> Result<()> {
            for (tw, tc) in image.terms() {
                let cpoly = tc
                    .as_element()
                    .ok_or_else(|| Error::Other("image with denominator".into()))?;
                for (m, q) in (cpoly * p).terms() {
                    let r = row_of((tw.clone(), *m), rows, rhs_v);
                    rows[r].push((col, q.clone()));
                }
            }
            Ok(())
        };
        let mut failed = false;
        for (col, (wi, p)) in columns.iter().enumerate() {
            if push(col, &images[*wi], p, &mut rows, &mut rhs_v).is_err() {
                failed = true;
                break;
            }
        }
        if failed {
            continue;
        }
        for (k, p) in scalar_basis.iter().enumerate() {
            if push(scalar_base + k, basis, p, &mut rows, &mut rhs_v).is_err() {
                failed = true;
                break;
            }
        }
        if failed {
            continue;
        }
        // rhs: y * denom.
        for (tw, tc) in y.terms() {
            let cpoly = match tc.as_element() {
                Some(c) => c.clone(),
                None => {
                    // Clear the denominator through the whole system instead:
                    // scale rhs-entry by denom and give up if not polynomial.
                    let scaled = tc * &FormFraction::from_element(spec.denom.clone());
                    match scaled.as_element() {
                        Some(c) => c.clone(),
                        None => {
                            failed = true;
                            break;
                        }
                    }
                }
            };
            // If tc was polynomial we still need the denom factor.
            let eff = if tc.as_element().is_some() {
                &cpoly * &spec.denom
            } else {
                cpoly
            };
            for (m, q) in eff.terms() {
                let r = row_of((tw.clone(), *m), &mut rows, &mut rhs_v);
                rhs_v[r] += q.clone();
            }
        }
        if failed {
            continue;
        }

        match crate::solver::rational_gauss(&rows, &rhs_v, ncols) {
            Err(e) => last = Some(e),
            Ok(out) => {
                let denom_frac = FormFraction::from_element(spec.denom.clone());
                let mut cert = Chain::zero();
                for (col, (wi, p)) in columns.iter().enumerate() {
                    let x = &out.solution[col];
                    if x.is_zero() {
                        continue;
                    }
                    cert.add_term(
                        &FormFraction::from_element(p.scale(x)) / &denom_frac,
                        words[*wi].clone(),
                    );
                }
                let mut coord = FormFraction::zero();
                for (k, p) in scalar_basis.iter().enumerate() {
                    let x = &out.solution[scalar_base + k];
                    if !x.is_zero() {
                        coord = &coord + &(&FormFraction::from_element(p.scale(x)) / &denom_frac);
                    }
                }
                // Exact verification: y - c*basis = b(cert).
                let lhs = y.sub(&basis.scale(&coord));
                if hochschild_b(s, &cert)? == lhs {
                    return Ok((coord, cert));
                }
                last = Some(Error::ReductionFailed("certificate verification".into()));
            }
        }
    }
    Err(last.unwrap_or_else(|| Error::ReductionFailed("no reduction found".into())))
}

/// A degree-one cycle representing the holomorphic volume class, normalized
/// through the structure tensor: the insertion of the differentiated
/// products sends it exactly to `[xi]` plus a boundary, with coordinate one
/// (contraction against the deformation class is an isomorphism, which pins
/// the representative without reference to any pairing).
///
/// Solved as one joint exact system: `b(z) = 0` and
/// `b11(Dmu | z) - b(v) = xi` over two graded unknown blocks.
pub fn omega_representative(s: &AInfStructure, max_len: usize) -> Result<Chain> {
    use crate::qmod::{FormElement, Mono};
    use crate::Rat;
    use std::collections::BTreeMap;

    let mu = Cochain::from_structure(s)?;
    let dmu = mu.derive(DeriveMode::Tau);
    let zsector = enumerate_sector(max_len, 1, WeightParity::Any);
    let vsector = enumerate_sector(max_len.max(5), 0, WeightParity::Any);
    let mut b_images = Vec::with_capacity(zsector.len());
    let mut ins_images = Vec::with_capacity(zsector.len());
    for w in &zsector.words {
        let e = Chain::term(FormFraction::one(), w.clone())?;
        b_images.push(hochschild_b(s, &e)?);
        ins_images.push(insert_cochain(s, &dmu, &e, InsertFlavor::B11)?);
    }
    let mut v_images = Vec::with_capacity(vsector.len());
    for w in &vsector.words {
        let e = Chain::term(FormFraction::one(), w.clone())?;
        v_images.push(hochschild_b(s, &e)?);
    }
    let xi = xi_chain();

    let ladder = [AnsatzSpec::general(1, 2), AnsatzSpec::general(2, 3), AnsatzSpec::general(3, 4)];
    let mut last: Option<Error> = None;
    for spec in &ladder {
        let denom_w = spec.denom.weight()?;
        // Columns: z-block (total weight2 = -2) then v-block (+2).
        let mut columns: Vec<(bool, usize, FormElement)> = Vec::new();
        for (wi, w) in zsector.words.iter().enumerate() {
            let cw2 = -2 - crate::ainf::word_weight2(w);
            if cw2 % 2 != 0 {
                continue;
            }
            for p in spec.numerator_basis(cw2 / 2 + denom_w) {
                columns.push((true, wi, p));
            }
        }
        for (wi, w) in vsector.words.iter().enumerate() {
            let cw2 = 2 - crate::ainf::word_weight2(w);
            if cw2 % 2 != 0 {
                continue;
            }
            for p in spec.numerator_basis(cw2 / 2 + denom_w) {
                columns.push((false, wi, p));
            }
        }
        let ncols = columns.len();
        let mut row_index: BTreeMap<(usize, crate::ainf::Word, Mono), usize> = BTreeMap::new();
        let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
        let mut rhs_v: Vec<Rat> = Vec::new();
        let mut row_of = |key: (usize, crate::ainf::Word, Mono),
                          rows: &mut Vec<Vec<(usize, Rat)>>,
                          rhs_v: &mut Vec<Rat>| {
            *row_index.entry(key).or_insert_with(|| {
                rows.push(Vec::new());
                rhs_v.push(Rat::zero());
                rows.len() - 1
            })
        };
        let mut ok = true;
        for (col, (is_z, wi, p)) in columns.iter().enumerate() {
            // Equation 1 (b(z) = 0) and equation 2 (ins(z) - b(v) = xi).
            let contributions: [(usize, Option<&Chain>, i64); 2] = if *is_z {
                [(0, Some(&b_images[*wi]), 1), (1, Some(&ins_images[*wi]), 1)]
            } else {
                [(1, Some(&v_images[*wi]), -1), (0, None, 0)]
            };
            for (ei, im, sgn) in contributions {
                let Some(im) = im else { continue };
                for (tw, tc) in im.terms() {
                    let Some(cpoly) = tc.as_element() else {
                        ok = false;
                        break;
                    };
                    for (m, q) in (cpoly * p).terms() {
                        let r = row_of((ei, tw.clone(), *m), &mut rows, &mut rhs_v);
                        rows[r].push((col, q * crate::rint(sgn)));
                    }
                }
                if !ok {
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        for (tw, tc) in xi.terms() {
            let cpoly = tc.as_element().expect("xi is integral");
            for (m, q) in (cpoly * &spec.denom).terms() {
                let r = row_of((1, tw.clone(), *m), &mut rows, &mut rhs_v);
                rhs_v[r] += q.clone();
            }
        }
        match crate::solver::rational_gauss(&rows, &rhs_v, ncols) {
            Err(e) => last = Some(e),
            Ok(out) => {
                let denom_frac = FormFraction::from_element(spec.denom.clone());
                let mut z = Chain::zero();
                for (col, (is_z, wi, p)) in columns.iter().enumerate() {
                    if !is_z {
                        continue;
                    }
                    let x = &out.solution[col];
                    if !x.is_zero() {
                        z.add_term(
                            &FormFraction::from_element(p.scale(x)) / &denom_frac,
                            zsector.words[*wi].clone(),
                        );
                    }
                }
                if z.is_zero() {
                    last = Some(Error::ReductionFailed("omega solve returned zero".into()));
                    continue;
                }
                // Exact verification of both defining conditions.
                if !hochschild_b(s, &z)?.is_zero() {
                    last = Some(Error::Other("omega candidate is not a cycle".into()));
                    continue;
                }
                let ins = insert_cochain(s, &dmu, &z, InsertFlavor::B11)?;
                let budget = ins.max_len().max(4) + 2;
                let (c0, _) = reduce_coordinate(s, &ins, &xi, budget)?;
                if c0 != FormFraction::one() {
                    last = Some(Error::Other(format!(
                        "omega normalization drifted: {}",
                        c0
                    )));
                    continue;
                }
                return Ok(z);
            }
        }
    }
    Err(last.unwrap_or_else(|| Error::ReductionFailed("no omega representative".into())))
}


/// Expresses a cycle in the reference basis of the one-dimensional homology
/// sectors, with an explicit bounding certificate and a stabilization
/// re-check two lengths higher.
pub fn homology_reduce(s: &AInfStructure, z: &Chain, max_len: usize) -> Result<HomologyClass> {
    if !hochschild_b(s, z)?.is_zero() {
        return Err(Error::NotACycle);
    }
    if z.is_zero() {
        return Ok(HomologyClass {
            degree: 0,
            coordinate: FormFraction::zero(),
            basis: "0",
            certificate: Chain::zero(),
        });
    }
    let deg = z.degree()?.expect("nonzero chain");
    let (basis, name): (Chain, &'static str) = match deg {
        1 => (omega_representative(s, max_len.max(5))?, "[Omega]"),
        -1 => (xi_chain(), "[xi]"),
        _ => {
            return Err(Error::ReductionFailed(format!(
                "no reference basis for degree {}",
                deg
            )))
        }
    };
    let budget = z.max_len().max(basis.max_len()) + 2;
    let (coordinate, certificate) = reduce_coordinate(s, z, &basis, budget)?;
    // Stabilization: the same reduction two lengths higher must agree.
    let (coord2, _) = reduce_coordinate(s, z, &basis, budget + 2)?;
    if coord2 != coordinate {
        return Err(Error::ReductionFailed(format!(
            "coordinate did not stabilize: {} vs {}",
            coordinate, coord2
        )));
    }
    Ok(HomologyClass { degree: deg, coordinate, basis: name, certificate })
}

/// The flatness-defect scalar: `c` with `[b11(D mu | alpha)] = c [xi]`.
/// Vanishes exactly when `alpha` generates the flat splitting.
pub fn flatness_defect(s: &AInfStructure, alpha: &Chain, max_len: usize) -> Result<FormFraction> {
    let b = hochschild_b(s, alpha)?;
    if b != crate::solver::lift_rhs() {
        return Err(Error::Other(
            "flatness defect needs b(alpha) = -B(xi)".into(),
        ));
    }
    let mu = Cochain::from_structure(s)?;
    let dmu = mu.derive(DeriveMode::Tau);
    let ins = insert_cochain(s, &dmu, alpha, InsertFlavor::B11)?;
    if ins.is_zero() {
        return Ok(FormFraction::zero());
    }
    let budget = ins.max_len().max(max_len) + 2;
    let (c, _) = reduce_coordinate(s, &ins, &xi_chain(), budget)?;
    Ok(c)
}
