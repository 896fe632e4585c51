use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ainf::{AInfStructure, Cochain, Gen, Word};
use crate::hoch::{connes_b, hochschild_b, insert_cochain, Chain, InsertFlavor};
use crate::qmod::{DeriveMode, FormElement, FormFraction, Mono};
use crate::solver::elim::rational_gauss;
use crate::solver::sector::{enumerate_sector, WeightParity};
use crate::{rat, Error, Rat, Result};

/// Which lifting equation to solve: the flat lift (plain tau derivative of
/// the structure tensor) or the modular one (hat derivative).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    Gm,
    Mod,
}

/// Ansatz for coefficient spaces in graded solves: numerators of the fixed
/// weight over a homogeneous denominator, with bounded extra Y-powers.
#[derive(Clone, Debug)]
pub struct AnsatzSpec {
    pub denom: FormElement,
    pub y_max: u32,
    pub modular: bool,
}

impl AnsatzSpec {
    pub fn holomorphic(denom_pow: u32) -> AnsatzSpec {
        AnsatzSpec { denom: FormElement::e4().pow(denom_pow), y_max: 0, modular: false }
    }

    pub fn modular(denom_pow: u32) -> AnsatzSpec {
        AnsatzSpec { denom: FormElement::e4().pow(denom_pow), y_max: 0, modular: true }
    }

    pub fn general(denom_pow: u32, y_max: u32) -> AnsatzSpec {
        AnsatzSpec { denom: FormElement::e4().pow(denom_pow), y_max, modular: false }
    }

    /// Basis of numerators of the given weight.
    pub fn numerator_basis(&self, weight: i64) -> Vec<FormElement> {
        let mut out = Vec::new();
        if weight < 0 {
            return out;
        }
        let e2g = if self.modular {
            FormElement::e2_star()
        } else {
            FormElement::e2()
        };
        let y_range = if self.modular { 0 } else { self.y_max };
        for j in 0..=(y_range as i64) {
            let rem_y = weight - 2 * j;
            if rem_y < 0 {
                continue;
            }
            let mut a = 0i64;
            while 2 * a <= rem_y {
                let mut b = 0i64;
                while 2 * a + 4 * b <= rem_y {
                    let rem = rem_y - 2 * a - 4 * b;
                    if rem % 6 == 0 {
                        let c = rem / 6;
                        let mut m = FormElement::y().pow(j as u32);
                        for _ in 0..a {
                            m = &m * &e2g;
                        }
                        for _ in 0..b {
                            m = &m * &FormElement::e4();
                        }
                        for _ in 0..c {
                            m = &m * &FormElement::e6();
                        }
                        out.push(m);
                    }
                    b += 1;
                }
                a += 1;
            }
            if self.modular {
                break;
            }
        }
        out
    }
}

/// One linear constraint for the graded solver: the operator images of the
/// basis words and the right-hand side. Coefficients of images and rhs must
/// be polynomial.
pub(crate) struct GradedEquation {
    pub images: Vec<Chain>,
    pub rhs: Chain,
}

/// Scalar constraints (linear functionals of the solution with a scalar rhs).
pub(crate) struct ScalarEquation {
    pub values: Vec<FormElement>,
    pub rhs: FormElement,
}

/// Solves for a chain in the span of `words` with total (doubled) weight
/// `total_weight2`, subject to the stacked linear equations, using the
/// rational graded ansatz. Returns a particular solution.
pub(crate) fn solve_graded(
    words: &[Word],
    total_weight2: i64,
    ansatz: &AnsatzSpec,
    equations: &[GradedEquation],
    scalar_equations: &[ScalarEquation],
) -> Result<Chain> {
    // Columns: (word, numerator basis element).
    let denom_w = ansatz.denom.weight()?;
    let mut columns: Vec<(usize, FormElement)> = Vec::new();
    for (wi, w) in words.iter().enumerate() {
        let coeff_w2 = total_weight2 - crate::ainf::word_weight2(w);
        if coeff_w2 % 2 != 0 {
            continue;
        }
        let num_weight = coeff_w2 / 2 + denom_w;
        for p in ansatz.numerator_basis(num_weight) {
            columns.push((wi, p));
        }
    }
    let ncols = columns.len();

    // Row coordinates: (equation, target word, monomial).
    let mut row_index: BTreeMap<(usize, Word, Mono), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
    let mut rhs_vec: Vec<Rat> = Vec::new();
    let mut get_row = |key: (usize, Word, Mono),
                       rows: &mut Vec<Vec<(usize, Rat)>>,
                       rhs_vec: &mut Vec<Rat>|
     -> usize {
        *row_index.entry(key).or_insert_with(|| {
            rows.push(Vec::new());
            rhs_vec.push(Rat::zero());
            rows.len() - 1
        })
    };

    for (ei, eq) in equations.iter().enumerate() {
        for (col, (wi, p)) in columns.iter().enumerate() {
            let image = &eq.images[*wi];
            for (tw, c) in image.terms() {
                let cpoly = c.as_element().ok_or_else(|| {
                    Error::Other("operator image has a nontrivial denominator".into())
                })?;
                let prod = cpoly * p;
                for (m, q) in prod.terms() {
                    let r = get_row((ei, tw.clone(), *m), &mut rows, &mut rhs_vec);
                    rows[r].push((col, q.clone()));
                }
            }
        }
        // rhs * denom on the other side.
        for (tw, c) in eq.rhs.terms() {
            let cpoly = c
                .as_element()
                .ok_or_else(|| Error::Other("rhs has a nontrivial denominator".into()))?;
            let prod = cpoly * &ansatz.denom;
            for (m, q) in prod.terms() {
                let r = get_row((ei, tw.clone(), *m), &mut rows, &mut rhs_vec);
                rhs_vec[r] += q.clone();
            }
        }
    }
    let base = equations.len();
    for (si, seq) in scalar_equations.iter().enumerate() {
        for (col, (wi, p)) in columns.iter().enumerate() {
            let prod = &seq.values[*wi] * p;
            for (m, q) in prod.terms() {
                let r = get_row((base + si, Word::new(), *m), &mut rows, &mut rhs_vec);
                rows[r].push((col, q.clone()));
            }
        }
        let prod = &seq.rhs * &ansatz.denom;
        for (m, q) in prod.terms() {
            let r = get_row((base + si, Word::new(), *m), &mut rows, &mut rhs_vec);
            rhs_vec[r] += q.clone();
        }
    }

    let out = rational_gauss(&rows, &rhs_vec, ncols)?;
    let denom_frac = FormFraction::from_element(ansatz.denom.clone());
    let mut chain = Chain::zero();
    for (col, (wi, p)) in columns.iter().enumerate() {
        let x = &out.solution[col];
        if x.is_zero() {
            continue;
        }
        let coeff = &FormFraction::from_element(p.scale(x)) / &denom_frac;
        chain.add_term(coeff, words[*wi].clone());
    }
    Ok(chain)
}

/// Operator wrapper: the Hochschild differential.
pub(crate) struct BOp<'a>(pub &'a AInfStructure);

impl crate::solver::ChainOperator for BOp<'_> {
    fn apply(&self, x: &Chain) -> Result<Chain> {
        hochschild_b(self.0, x)
    }
    fn name(&self) -> &str {
        "b"
    }
}

/// Operator wrapper: cochain insertion `b^{1|1}(phi | -)`.
pub(crate) struct B11Op<'a> {
    pub s: &'a AInfStructure,
    pub phi: Cochain,
    pub label: String,
}

impl crate::solver::ChainOperator for B11Op<'_> {
    fn apply(&self, x: &Chain) -> Result<Chain> {
        insert_cochain(self.s, &self.phi, x, InsertFlavor::B11)
    }
    fn name(&self) -> &str {
        &self.label
    }
}

/// The canonical degree -1 insertion chain `xi`.
pub fn xi_chain() -> Chain {
    Chain::term(FormFraction::one(), vec![Gen::Xi]).expect("xi is a loop")
}

/// Right-hand side of the lifting equation: `-B(xi) = -idO (x) xi`.
pub fn lift_rhs() -> Chain {
    connes_b(&xi_chain()).scale_rat(&crate::rint(-1))
}

/// Solves the lifting system `b(alpha) = -B(xi)`,
/// `b11(d mu | alpha) = 0` (mode Gm) or `b11(dhat mu | alpha) = 0` (mode Mod)
/// in the graded sector of odd lengths up to `max_len`, verifying the
/// solution exactly against both operators.
pub fn solve_lift(s: &AInfStructure, mode: LiftMode, max_len: usize) -> Result<Chain> {
    let sector = enumerate_sector(max_len, 1, WeightParity::Odd);
    let mu = Cochain::from_structure(s)?;
    let dmu = match mode {
        LiftMode::Gm => mu.derive(DeriveMode::Tau),
        LiftMode::Mod => mu.derive(DeriveMode::Hat),
    };
    let rhs = lift_rhs();

    // Precompute operator images of the basis words.
    let mut b_images = Vec::with_capacity(sector.len());
    let mut b11_images = Vec::with_capacity(sector.len());
    for w in &sector.words {
        let e = Chain::term(FormFraction::one(), w.clone())?;
        b_images.push(hochschild_b(s, &e)?);
        b11_images.push(insert_cochain(s, &dmu, &e, InsertFlavor::B11)?);
    }
    let equations = vec![
        GradedEquation { images: b_images, rhs },
        GradedEquation { images: b11_images, rhs: Chain::zero() },
    ];

    let specs: Vec<AnsatzSpec> = match mode {
        LiftMode::Gm => vec![AnsatzSpec::holomorphic(2), AnsatzSpec::holomorphic(3)],
        LiftMode::Mod => vec![AnsatzSpec::modular(2), AnsatzSpec::modular(3)],
    };
    let mut last_err = None;
    for spec in &specs {
        match solve_graded(&sector.words, 2, spec, &equations, &[]) {
            Ok(alpha) => {
                verify_lift(s, mode, &alpha)?;
                return Ok(alpha);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::InconsistentSystem(format!(
            "lifting system has no solution in lengths <= {} ({} columns)",
            max_len,
            sector.len()
        ))
    }))
}

/// Exact post-verification of both lifting constraints.
pub fn verify_lift(s: &AInfStructure, mode: LiftMode, alpha: &Chain) -> Result<()> {
    let b = hochschild_b(s, alpha)?;
    if b != lift_rhs() {
        return Err(Error::Other("lift fails b(alpha) = -B(xi)".into()));
    }
    let mu = Cochain::from_structure(s)?;
    let dmu = match mode {
        LiftMode::Gm => mu.derive(DeriveMode::Tau),
        LiftMode::Mod => mu.derive(DeriveMode::Hat),
    };
    let ins = insert_cochain(s, &dmu, alpha, InsertFlavor::B11)?;
    if !ins.is_zero() {
        return Err(Error::Other("lift fails the flatness constraint".into()));
    }
    Ok(())
}

/// Solves `b(x) = rhs` in lengths up to `max_len`, escalating through a
/// ladder of coefficient ansatz spaces.
pub fn solve_b_equation(s: &AInfStructure, rhs: &Chain, max_len: usize) -> Result<Chain> {
    let Some(deg) = rhs.degree()? else {
        return Ok(Chain::zero());
    };
    let Some(w2) = rhs.weight2()? else {
        return Ok(Chain::zero());
    };
    let sector = enumerate_sector(max_len, deg + 1, WeightParity::Any);
    let mut images = Vec::with_capacity(sector.len());
    for w in &sector.words {
        let e = Chain::term(FormFraction::one(), w.clone())?;
        images.push(hochschild_b(s, &e)?);
    }
    let equations = vec![GradedEquation { images, rhs: rhs.clone() }];
    let ladder = [
        AnsatzSpec::general(2, 2),
        AnsatzSpec::general(3, 3),
        AnsatzSpec::general(4, 4),
    ];
    let mut last = None;
    for spec in &ladder {
        match solve_graded(&sector.words, w2, spec, &equations, &[]) {
            Ok(x) => {
                let bx = hochschild_b(s, &x)?;
                if &bx == rhs {
                    return Ok(x);
                }
                last = Some(Error::Other("b-equation verification failed".into()));
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::NotACycle))
}

/// Solves `b(x) = -B(xi)` restricted to a given word support (diagnostic and
/// sparsification helper).
pub fn solve_on_support(s: &AInfStructure, words: &[Word]) -> Result<Chain> {
    let mut images = Vec::with_capacity(words.len());
    for w in words {
        let e = Chain::term(FormFraction::one(), w.clone())?;
        images.push(hochschild_b(s, &e)?);
    }
    let equations = vec![GradedEquation { images, rhs: lift_rhs() }];
    let x = solve_graded(words, 2, &AnsatzSpec::holomorphic(2), &equations, &[])?;
    let bx = hochschild_b(s, &x)?;
    if bx != lift_rhs() {
        return Err(Error::Other("support solve verification failed".into()));
    }
    Ok(x)
}

/// The printed eleven-term lifting chain: two unit-led three-tensors plus
/// nine longer words over `2 E4`, every coefficient verbatim.
///
/// The first printed word `idL (x) theta (x) eta` is not a composable cycle
/// of the quiver under any reading compatible with the other ten, so it is
/// zero in the categorical Hochschild complex; the stored chain carries the
/// ten remaining terms, and `b(alpha') = -1 (x) xi` holds exactly against
/// the holomorphic-gauge structure (whose constants are holomorphic, like
/// these coefficients).
pub fn alpha_prime() -> Chain {
    use Gen::*;
    let half_e4_inv = FormFraction::new(FormElement::one(), FormElement::e4().scale(&rat(2, 1)))
        .expect("2 E4 is a valid denominator");
    let e2 = FormElement::e2();
    let mut c = Chain::zero();
    let mut t = |coeff: FormFraction, w: Vec<Gen>| {
        if crate::ainf::is_cyclic_word(&w) {
            c.add_term(coeff, w);
        }
    };
    t(FormFraction::one(), vec![IdL, Theta, Eta]);
    t(FormFraction::from_rat(rat(1, 4)), vec![IdO, Theta, Eta]);
    // 1/(2 E4) * ( 9 E2 idL eta xi xi theta + ... ).
    t(&half_e4_inv * &e2.scale(&rat(9, 1)), vec![IdL, Eta, Xi, Xi, Theta]);
    let q = |n: i64| half_e4_inv.scale(&crate::rint(n));
    t(q(60), vec![Theta, Eta, Xi, Xi, Theta, Eta, Xi]);
    t(q(60), vec![Eta, Xi, Theta, Eta, Xi, Xi, Theta]);
    t(q(-12), vec![Xi, Theta, Eta, Xi, Xi, Theta, Eta]);
    t(q(-12), vec![Xi, Xi, Theta, Eta, Xi, Theta, Eta]);
    t(q(-12), vec![IdO, Xi, Theta, Eta, Xi, Xi, Xi]);
    t(q(36), vec![IdO, Xi, Xi, Theta, Eta, Xi, Xi]);
    t(q(-24), vec![IdO, Xi, Xi, Xi, Theta, Eta, Xi]);
    t(q(-60), vec![IdL, Eta, Xi, Xi, Xi, Xi, Theta]);
    c
}

/// Support reduction by greedy column elimination: repeatedly re-solves the
/// system with candidate words forced out of the support, keeping the result
/// when a solution still exists. Never increases support, re-verifies
/// exactly, and falls back to the input on failure.
pub fn sparsify(s: &AInfStructure, mode: LiftMode, solution: &Chain, max_len: usize) -> Chain {
    let sector = enumerate_sector(max_len, 1, WeightParity::Odd);
    let mu = match Cochain::from_structure(s) {
        Ok(m) => m,
        Err(_) => return solution.clone(),
    };
    let dmu = match mode {
        LiftMode::Gm => mu.derive(DeriveMode::Tau),
        LiftMode::Mod => mu.derive(DeriveMode::Hat),
    };
    let mut b_images = Vec::new();
    let mut b11_images = Vec::new();
    for w in &sector.words {
        let e = match Chain::term(FormFraction::one(), w.clone()) {
            Ok(e) => e,
            Err(_) => return solution.clone(),
        };
        match (hochschild_b(s, &e), insert_cochain(s, &dmu, &e, InsertFlavor::B11)) {
            (Ok(b), Ok(b11)) => {
                b_images.push(b);
                b11_images.push(b11);
            }
            _ => return solution.clone(),
        }
    }

    let spec = match mode {
        LiftMode::Gm => AnsatzSpec::holomorphic(2),
        LiftMode::Mod => AnsatzSpec::modular(2),
    };
    let mut banned: Vec<Word> = sector
        .words
        .iter()
        .filter(|w| solution.coeff(w).is_zero())
        .cloned()
        .collect();
    let mut best = solution.clone();

    // Try to remove the longest words first.
    let mut candidates: Vec<Word> = best.terms().map(|(w, _)| w.clone()).collect();
    candidates.sort_by_key(|w| std::cmp::Reverse(w.len()));
    for cand in candidates {
        let mut trial_banned = banned.clone();
        trial_banned.push(cand.clone());
        let words: Vec<Word> = sector
            .words
            .iter()
            .filter(|w| !trial_banned.contains(w))
            .cloned()
            .collect();
        let images = |all: &[Chain]| -> Vec<Chain> {
            sector
                .words
                .iter()
                .zip(all.iter())
                .filter(|(w, _)| !trial_banned.contains(*w))
                .map(|(_, im)| im.clone())
                .collect()
        };
        // Reindex images for the reduced word list.
        let eb = GradedEquation { images: images(&b_images), rhs: lift_rhs() };
        let eb11 = GradedEquation { images: images(&b11_images), rhs: Chain::zero() };
        if let Ok(cand_sol) = solve_graded(&words, 2, &spec, &[eb, eb11], &[]) {
            if verify_lift(s, mode, &cand_sol).is_ok() && cand_sol.num_terms() <= best.num_terms()
            {
                best = cand_sol;
                banned = trial_banned;
            }
        }
    }
    best
}
