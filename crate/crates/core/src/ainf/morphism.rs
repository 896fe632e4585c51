use std::collections::HashMap;

use super::basis::{enumerate_paths, pairing, word_parity, Gen, Word};
use super::relations::psi3_cochain;
use super::structure::AInfStructure;
use crate::qmod::FormElement;
use crate::{Error, Result};

/// The gauge quasi-isomorphism from the modular to the holomorphic algebra:
/// multilinear maps `f_n` built recursively by integrating `psi3` against
/// lower maps, `f_1 = id` and
/// `f_n = sum over i+j+k=n of integral of psi3(f_i x f_j x f_k) dtaubar`.
///
/// The formal antiderivative acts on coefficients as
/// `Y^m -> Y^(m-1)/(Z (m-1))` for `m >= 2`; every integrand produced by the
/// recursion carries at least `Y^2` from `psi3`, so the `m = 1` case never
/// arises (this is asserted, not assumed).
#[derive(Clone)]
pub struct GaugeMorphism {
    tables: Vec<HashMap<Word, (FormElement, Gen)>>,
}

impl GaugeMorphism {
    pub fn build(max_arity: usize) -> Result<GaugeMorphism> {
        let psi3 = psi3_cochain();
        let mut tables: Vec<HashMap<Word, (FormElement, Gen)>> =
            vec![HashMap::new(); max_arity + 1];
        if max_arity >= 1 {
            for &g in &super::basis::GENERATORS {
                tables[1].insert(vec![g], (FormElement::one(), g));
            }
        }
        for n in 2..=max_arity {
            let mut t: HashMap<Word, (FormElement, Gen)> = HashMap::new();
            for word in enumerate_paths(n) {
                let mut acc: Option<(FormElement, Gen)> = None;
                for i in 1..n {
                    for j in 1..n - i {
                        let k = n - i - j;
                        let Some((ci, gi)) = lookup(&tables, &word[..i]) else {
                            continue;
                        };
                        let Some((cj, gj)) = lookup(&tables, &word[i..i + j]) else {
                            continue;
                        };
                        let Some((ck, gk)) = lookup(&tables, &word[i + j..]) else {
                            continue;
                        };
                        let Some((cp, out)) = psi3.value(&[gi, gj, gk]) else {
                            continue;
                        };
                        // f_i, f_j, f_k are even operators: no Koszul signs.
                        let integrand = &(&(&ci * &cj) * &ck) * cp;
                        let v = integrand.integrate_taubar()?;
                        match &mut acc {
                            None => acc = Some((v, *out)),
                            Some((c0, g0)) => {
                                if *g0 != *out {
                                    return Err(Error::Other(format!(
                                        "gauge morphism output mismatch at {:?}",
                                        word
                                    )));
                                }
                                *c0 += v;
                            }
                        }
                    }
                }
                if let Some((c, g)) = acc {
                    if !c.is_zero() {
                        t.insert(word, (c, g));
                    }
                }
            }
            tables[n] = t;
        }
        Ok(GaugeMorphism { tables })
    }

    pub fn value(&self, args: &[Gen]) -> Option<&(FormElement, Gen)> {
        self.tables.get(args.len()).and_then(|t| t.get(args))
    }

    pub fn max_arity(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn component_size(&self, n: usize) -> usize {
        self.tables.get(n).map(|t| t.len()).unwrap_or(0)
    }

    /// Checks the A-infinity morphism identities from the modular structure to
    /// the holomorphic one through `arity_cutoff`, plus the cyclic-morphism
    /// pairing conditions.
    pub fn verify(
        &self,
        modular: &AInfStructure,
        holomorphic: &AInfStructure,
        arity_cutoff: usize,
    ) -> Result<MorphismReport> {
        let mut report = MorphismReport::default();
        for n in 2..=arity_cutoff.min(self.max_arity()) {
            for word in enumerate_paths(n) {
                // LHS: sum_f (1 x mu^mod x 1).
                let mut lhs: HashMap<Gen, FormElement> = HashMap::new();
                for j in 1..=n {
                    for p in 0..=(n - j) {
                        let Some((cmu, gmu)) = modular.mu(&word[p..p + j])? else {
                            continue;
                        };
                        let mut outer: Word = Vec::with_capacity(n - j + 1);
                        outer.extend_from_slice(&word[..p]);
                        outer.push(gmu);
                        outer.extend_from_slice(&word[p + j..]);
                        let Some((cf, gf)) = self.value(&outer) else {
                            continue;
                        };
                        let mut v = &cmu * cf;
                        if word_parity(&word[..p]) {
                            v = -v;
                        }
                        *lhs.entry(*gf).or_insert_with(FormElement::zero) += v;
                    }
                }
                // RHS: sum over compositions, mu^hol of f-blocks.
                let mut rhs: HashMap<Gen, FormElement> = HashMap::new();
                for comp in compositions(n) {
                    let mut gens: Word = Vec::with_capacity(comp.len());
                    let mut coeff = FormElement::one();
                    let mut pos = 0usize;
                    let mut dead = false;
                    for &len in &comp {
                        match self.value(&word[pos..pos + len]) {
                            None => {
                                dead = true;
                                break;
                            }
                            Some((c, g)) => {
                                coeff = &coeff * c;
                                gens.push(*g);
                            }
                        }
                        pos += len;
                    }
                    if dead {
                        continue;
                    }
                    if let Some((cmu, gmu)) = holomorphic.mu(&gens)? {
                        *rhs.entry(gmu).or_insert_with(FormElement::zero) += &coeff * &cmu;
                    }
                }
                let mut all: Vec<Gen> = lhs.keys().copied().collect();
                for g in rhs.keys() {
                    if !all.contains(g) {
                        all.push(*g);
                    }
                }
                for g in all {
                    let l = lhs.get(&g).cloned().unwrap_or_else(FormElement::zero);
                    let r = rhs.get(&g).cloned().unwrap_or_else(FormElement::zero);
                    if l != r {
                        report
                            .failures
                            .push((word.clone(), format!("{}: lhs {} vs rhs {}", g, l, r)));
                    }
                }
                report.checked += 1;

                // Cyclic morphism condition: sum <f_i(..), f_j(..)> over
                // i + j = n equals the pairing itself at n = 2 and vanishes
                // for n >= 3.
                let mut pair_sum = FormElement::zero();
                for i in 1..n {
                    let (Some((ci, gi)), Some((cj, gj))) =
                        (self.value(&word[..i]), self.value(&word[i..]))
                    else {
                        continue;
                    };
                    pair_sum += (ci * cj).scale(&pairing(*gi, *gj));
                }
                let expected = if n == 2 {
                    FormElement::from_rat(pairing(word[0], word[1]))
                } else {
                    FormElement::zero()
                };
                if pair_sum != expected {
                    report
                        .failures
                        .push((word.clone(), format!("cyclic pairing defect {}", pair_sum)));
                }
            }
        }
        Ok(report)
    }
}

fn lookup<'a>(
    tables: &'a [HashMap<Word, (FormElement, Gen)>],
    w: &[Gen],
) -> Option<(FormElement, Gen)> {
    tables
        .get(w.len())
        .and_then(|t| t.get(w))
        .map(|(c, g)| (c.clone(), *g))
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=rest {
            cur.push(k);
            rec(rest - k, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

#[derive(Debug, Default)]
pub struct MorphismReport {
    pub checked: usize,
    pub failures: Vec<(Word, String)>,
}

impl MorphismReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}
