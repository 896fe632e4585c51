use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::basis::{enumerate_paths, Gen};
use super::gtable::{GKey, GTable, Provenance};
use super::relations::{ainf_residual_terms, check_relations, RelationMode};
use super::structure::{build_structure, Gauge};
use crate::qmod::{FormElement, Mono};
use crate::solver::rational_gauss;
use crate::{Error, Rat, Result};

/// Basis of the almost-holomorphic modular forms of the given (even) weight:
/// monomials in `E2* = E2 + 12Y`, `E4`, `E6`.
pub(crate) fn modular_basis(weight: i64) -> Vec<FormElement> {
    let e2s = FormElement::e2_star();
    let e4 = FormElement::e4();
    let e6 = FormElement::e6();
    let mut out = Vec::new();
    let mut a = 0i64;
    while 2 * a <= weight {
        let mut b = 0i64;
        while 2 * a + 4 * b <= weight {
            let rem = weight - 2 * a - 4 * b;
            if rem % 6 == 0 {
                let c = rem / 6;
                let mut m = FormElement::one();
                for _ in 0..a {
                    m = &m * &e2s;
                }
                for _ in 0..b {
                    m = &m * &e4;
                }
                for _ in 0..c {
                    m = &m * &e6;
                }
                out.push(m);
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// The complete structure-form table through the given weight: the printed
/// seeds extended by the constraint solver. Errors when genuinely free
/// directions remain; see [`g_table_with_freedom`] for the policy interface.
pub fn g_table(max_weight: i64) -> Result<GTable> {
    solve_missing_constants(&GTable::seeds(), (max_weight + 3) as usize)
}

/// The solved table together with any residual free directions (free
/// coordinates set to zero). Through weight six exactly one `E6`-direction
/// of the weight-six forms is left open by all printed identities; every
/// invariant computed downstream is checked to be independent of it.
pub fn g_table_with_freedom(max_weight: i64) -> Result<(GTable, Vec<TableFreedom>)> {
    solve_missing_constants_with_freedom(&GTable::seeds(), (max_weight + 3) as usize)
}

/// A residual direction of table freedom: increments per key, normalized so
/// the first nonzero coordinate is one. Adding any multiple preserves every
/// constraint the solver imposed.
pub type TableFreedom = Vec<(GKey, FormElement)>;

/// Like [`solve_missing_constants`], but when a stage is under-determined the
/// free directions are returned (with free coordinates set to zero in the
/// particular table) instead of erroring.
pub fn solve_missing_constants_with_freedom(
    partial: &GTable,
    arity_cutoff: usize,
) -> Result<(GTable, Vec<TableFreedom>)> {
    let mut table = partial.clone();
    let mut freedom = Vec::new();
    let mut stage_weight = 2i64;
    while stage_weight + 3 <= arity_cutoff as i64 {
        let missing: Vec<GKey> = table
            .missing(stage_weight)
            .into_iter()
            .filter(|k| k.0 as i64 + k.1 as i64 + 1 == stage_weight)
            .collect();
        if !missing.is_empty() {
            let dirs = solve_stage(&mut table, stage_weight, &missing)?;
            freedom.extend(dirs);
        }
        stage_weight += 2;
    }
    table.validate()?;
    let s = build_structure(Gauge::Modular, arity_cutoff, &table)?;
    let rep = check_relations(&s, arity_cutoff, RelationMode::AInf)?;
    if !rep.ok() {
        let (w, d) = &rep.failures[0];
        return Err(Error::InconsistentConstraints(format!(
            "relation at {:?} fails after solving: {}",
            w, d
        )));
    }
    Ok((table, freedom))
}

/// Completes a partial structure-form table by imposing the A-infinity
/// relations as exact linear constraints, staged by weight: the forms of
/// weight `w` are pinned by the relations of arity `w + 3`, where they occur
/// linearly (all lower-weight forms having been resolved first).
///
/// Errors when the constraints are inconsistent (citing a violated relation)
/// or when a stage is under-determined.
pub fn solve_missing_constants(partial: &GTable, arity_cutoff: usize) -> Result<GTable> {
    let (table, freedom) = solve_missing_constants_with_freedom(partial, arity_cutoff)?;
    if !freedom.is_empty() {
        return Err(Error::UnderDetermined(format!(
            "{} residual free directions in the structure-form table",
            freedom.len()
        )));
    }
    Ok(table)
}

fn solve_stage(table: &mut GTable, weight: i64, unknowns: &[GKey]) -> Result<Vec<TableFreedom>> {
    let basis = modular_basis(weight);
    let nb = basis.len();
    let ncols = unknowns.len() * nb;
    let col_of = |key_idx: usize, basis_idx: usize| key_idx * nb + basis_idx;
    let key_index: BTreeMap<GKey, usize> =
        unknowns.iter().enumerate().map(|(i, k)| (*k, i)).collect();

    // Build the structure symbolically at just enough arity for this stage.
    let arity = (weight + 2) as usize;
    let relation_arity = (weight + 3) as usize;
    let s = build_symbolic(arity, table)?;

    let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();

    // Helper: append the rows of a linear identity
    //   sum_k q_k * g_{key_k} = rhs_form   (unknown keys expanded over the basis)
    // by matching monomial coordinates.
    let mut push_identity = |terms: &[(GKey, Rat)], rhs_form: &FormElement,
                             rows: &mut Vec<Vec<(usize, Rat)>>,
                             rhs_v: &mut Vec<Rat>| {
        let mut monos: Vec<Mono> = rhs_form.terms().map(|(m, _)| *m).collect();
        for b in &basis {
            for (m, _) in b.terms() {
                if !monos.contains(m) {
                    monos.push(*m);
                }
            }
        }
        for m in monos {
            let mut row: Vec<(usize, Rat)> = Vec::new();
            for (key, q) in terms {
                let ki = key_index[key];
                for (bi, b) in basis.iter().enumerate() {
                    if let Some((_, c)) = b.terms().find(|(mm, _)| *mm == &m) {
                        row.push((col_of(ki, bi), q * c));
                    }
                }
            }
            let rv = rhs_form
                .terms()
                .find(|(mm, _)| *mm == &m)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero);
            if !row.is_empty() || !rv.is_zero() {
                rows.push(row);
                rhs_v.push(rv);
            }
        }
    };

    // Seed identity printed for weight six: g41 = 7/10 g50 - 4 g10 g30.
    if weight == 6 && key_index.contains_key(&(4, 1)) && key_index.contains_key(&(5, 0)) {
        let g10 = table
            .get(&(1, 0))
            .cloned()
            .ok_or_else(|| Error::IncompleteTable("g_(1,0)".into()))?;
        let g30 = table
            .get(&(3, 0))
            .cloned()
            .ok_or_else(|| Error::IncompleteTable("g_(3,0)".into()))?;
        let rhs_form = (&g10 * &g30).scale(&crate::rat(-4, 1));
        push_identity(
            &[((4, 1), crate::rint(1)), ((5, 0), crate::rat(-7, 10))],
            &rhs_form,
            &mut rows,
            &mut rhs,
        );
    }

    // Antiholomorphic pinning from the exactness identity: on every support
    // word of the new arity, dbar of the (unknown) coefficient must equal the
    // bracket of psi3 with the lower, already-resolved products.
    {
        let lower = resolved_cochain_below(&s, arity)?;
        let psi3 = super::relations::psi3_cochain();
        let support: Vec<(super::basis::Word, super::structure::MuEntry)> = s
            .support(arity)
            .map(|(w, e)| (w.clone(), e.clone()))
            .collect();
        for (word, entry) in support {
            let key = entry.g.expect("master-formula entries carry a form key");
            if !key_index.contains_key(&key) {
                continue;
            }
            let bracket = &psi3.compose_apply(&lower, &word) - &lower.compose_apply(&psi3, &word);
            // dbar(q * g) = bracket, with g = sum r_i B_i:
            //   sum_i r_i * q * dbar(B_i) - bracket = 0.
            let ki = key_index[&key];
            let mut monos: Vec<Mono> = bracket.terms().map(|(m, _)| *m).collect();
            // dbar = Z * (the divided taubar derivative).
            let dbs: Vec<FormElement> = basis
                .iter()
                .map(|b| {
                    b.derive(crate::qmod::DeriveMode::TauBar)
                        .mul_z_pow(1)
                        .scale(&entry.q)
                })
                .collect();
            for db in &dbs {
                for (m, _) in db.terms() {
                    if !monos.contains(m) {
                        monos.push(*m);
                    }
                }
            }
            for m in monos {
                let mut row: Vec<(usize, Rat)> = Vec::new();
                for (bi, db) in dbs.iter().enumerate() {
                    if let Some((_, c)) = db.terms().find(|(mm, _)| *mm == &m) {
                        row.push((col_of(ki, bi), c.clone()));
                    }
                }
                let rv = bracket
                    .terms()
                    .find(|(mm, _)| *mm == &m)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rat::zero);
                if !row.is_empty() || !rv.is_zero() {
                    rows.push(row);
                    rhs.push(rv);
                }
            }
        }
    }

    // The A-infinity relations of the new arity: every (word, out-generator,
    // monomial) coordinate of the residual is one rational equation.
    for word in enumerate_paths(relation_arity) {
        let terms = ainf_residual_terms(&s, &word);
        if terms.is_empty() {
            continue;
        }
        // Group by output generator: constant part and linear part per column.
        let mut constant: HashMap<Gen, FormElement> = HashMap::new();
        let mut linear: HashMap<Gen, HashMap<usize, FormElement>> = HashMap::new();
        for t in &terms {
            let resolve = |k: &GKey| -> Result<Option<FormElement>> {
                if key_index.contains_key(k) {
                    Ok(None)
                } else {
                    table
                        .get(k)
                        .cloned()
                        .map(Some)
                        .ok_or_else(|| Error::IncompleteTable(format!("g_({},{})", k.0, k.1)))
                }
            };
            let r1 = match t.g1 {
                None => Some(FormElement::one()),
                Some(k) => resolve(&k)?,
            };
            let r2 = match t.g2 {
                None => Some(FormElement::one()),
                Some(k) => resolve(&k)?,
            };
            match (r1, r2) {
                (Some(a), Some(b)) => {
                    let v = (&a * &b).scale(&t.q);
                    *constant.entry(t.out).or_insert_with(FormElement::zero) += v;
                }
                (None, Some(b)) => {
                    let ki = key_index[&t.g1.unwrap()];
                    add_linear(&mut linear, t.out, ki, nb, &basis, &b.scale(&t.q), &col_of);
                }
                (Some(a), None) => {
                    let ki = key_index[&t.g2.unwrap()];
                    add_linear(&mut linear, t.out, ki, nb, &basis, &a.scale(&t.q), &col_of);
                }
                (None, None) => {
                    return Err(Error::InconsistentConstraints(format!(
                        "quadratic occurrence of unknown forms at {:?}",
                        word
                    )));
                }
            }
        }
        // Expand over monomials.
        let mut gens: Vec<Gen> = constant.keys().copied().collect();
        for g in linear.keys() {
            if !gens.contains(g) {
                gens.push(*g);
            }
        }
        for g in gens {
            let cpart = constant.remove(&g).unwrap_or_else(FormElement::zero);
            let lpart = linear.remove(&g).unwrap_or_default();
            let mut monos: Vec<Mono> = cpart.terms().map(|(m, _)| *m).collect();
            for f in lpart.values() {
                for (m, _) in f.terms() {
                    if !monos.contains(m) {
                        monos.push(*m);
                    }
                }
            }
            let coeff_of = |f: &FormElement, m: &Mono| -> Rat {
                f.terms()
                    .find(|(mm, _)| *mm == m)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rat::zero)
            };
            for m in monos {
                let mut row: Vec<(usize, Rat)> = Vec::new();
                for (col, f) in &lpart {
                    let c = coeff_of(f, &m);
                    if !c.is_zero() {
                        row.push((*col, c));
                    }
                }
                let cval = coeff_of(&cpart, &m);
                if row.is_empty() && cval.is_zero() {
                    continue;
                }
                rows.push(row);
                rhs.push(-cval);
            }
        }
    }

    let out = rational_gauss(&rows, &rhs, ncols).map_err(|e| match e {
        Error::InconsistentSystem(m) => Error::InconsistentConstraints(format!(
            "weight-{} stage: {}",
            weight, m
        )),
        other => other,
    })?;

    for (ki, key) in unknowns.iter().enumerate() {
        let mut v = FormElement::zero();
        for (bi, b) in basis.iter().enumerate() {
            v += b.scale(&out.solution[col_of(ki, bi)]);
        }
        table.insert(*key, v, Provenance::Solved);
    }

    let mut freedom = Vec::new();
    for dir in &out.nullspace {
        let mut delta: TableFreedom = Vec::new();
        for (ki, key) in unknowns.iter().enumerate() {
            let mut v = FormElement::zero();
            for (bi, b) in basis.iter().enumerate() {
                v += b.scale(&dir[col_of(ki, bi)]);
            }
            if !v.is_zero() {
                delta.push((*key, v));
            }
        }
        freedom.push(delta);
    }
    Ok(freedom)
}

/// The resolved products strictly below the given arity, as a cochain.
fn resolved_cochain_below(
    s: &super::structure::AInfStructure,
    arity: usize,
) -> Result<super::relations::Cochain> {
    let mut tables = vec![HashMap::new(); arity];
    for k in s.arities() {
        if k >= arity {
            continue;
        }
        for (w, e) in s.support(k) {
            let c = e.resolve(&s.gtable)?;
            tables[k].insert(w.clone(), (c, e.out));
        }
    }
    Ok(super::relations::Cochain { tables, parity: true })
}
fn add_linear(
    linear: &mut HashMap<Gen, HashMap<usize, FormElement>>,
    out: Gen,
    key_idx: usize,
    nb: usize,
    basis: &[FormElement],
    factor: &FormElement,
    col_of: &impl Fn(usize, usize) -> usize,
) {
    let entry = linear.entry(out).or_default();
    for bi in 0..nb {
        let v = &basis[bi] * factor;
        if v.is_zero() {
            continue;
        }
        let e = entry
            .entry(col_of(key_idx, bi))
            .or_insert_with(FormElement::zero);
        *e += v;
    }
}

/// Builds tables without requiring the structure-form table to be complete;
/// used internally by the constraint solver, which works at symbol level.
fn build_symbolic(max_arity: usize, table: &GTable) -> Result<super::structure::AInfStructure> {
    build_structure_symbolic(max_arity, table)
}

pub(crate) fn build_structure_symbolic(
    max_arity: usize,
    table: &GTable,
) -> Result<super::structure::AInfStructure> {
    // Delegate to the public builder but bypass the completeness check by
    // building with an empty requirement: reconstruct via the crate-private
    // path below.
    super::structure::build_unchecked(Gauge::Modular, max_arity, table)
}


/// Applies a multiple of a freedom direction to a table.
pub fn apply_freedom(table: &GTable, dir: &[(GKey, FormElement)], t: &Rat) -> GTable {
    let mut out = table.clone();
    for (key, delta) in dir {
        let cur = out.get(key).cloned().unwrap_or_else(FormElement::zero);
        out.insert(*key, cur + delta.scale(t), Provenance::Solved);
    }
    out
}
