use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::ainf::Word;
use crate::hoch::Chain;
use crate::qmod::FormFraction;
use crate::solver::sector::SectorBasis;
use crate::{Error, Result};

/// A linear operator on chains, used to stack lifting equations.
pub trait ChainOperator {
    fn apply(&self, x: &Chain) -> Result<Chain>;
    fn name(&self) -> &str;
}

/// Weight/degree graded exact linear system over the form fraction field:
/// columns indexed by a sector basis, rows by target words.
pub struct SparseSystem {
    pub columns: SectorBasis,
    pub target_words: Vec<Word>,
    /// Rows as sparse (column, entry) lists, one row per target word, stacked
    /// per operator.
    pub rows: Vec<Vec<(usize, FormFraction)>>,
    pub rhs: Vec<FormFraction>,
    pub operator_names: Vec<String>,
}

impl SparseSystem {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// Coordinate-triplet dump for external solvers.
    pub fn to_json(&self) -> Value {
        let mut trips = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                trips.push(json!([r, c, format!("{}", v)]));
            }
        }
        json!({
            "ncols": self.ncols(),
            "nrows": self.nrows(),
            "columns": self
                .columns
                .words
                .iter()
                .map(|w| w.iter().map(|g| g.name()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "entries": trips,
            "rhs": self.rhs.iter().map(|v| format!("{}", v)).collect::<Vec<_>>(),
            "operators": self.operator_names,
        })
    }
}

/// Applies each operator to every basis word and stacks the resulting rows;
/// the right-hand side contributes to the rows of the first operator (the
/// remaining operators are homogeneous constraints).
pub fn assemble(
    ops: &[&dyn ChainOperator],
    basis: &SectorBasis,
    rhs: &Chain,
) -> Result<SparseSystem> {
    let mut target_words: Vec<Word> = Vec::new();
    let mut word_index: BTreeMap<Word, usize> = BTreeMap::new();
    // (operator, target word) -> row index happens per operator block.
    let mut rows: Vec<Vec<(usize, FormFraction)>> = Vec::new();
    let mut rhs_vec: Vec<FormFraction> = Vec::new();
    let mut op_names = Vec::new();

    for (oi, op) in ops.iter().enumerate() {
        op_names.push(op.name().to_string());
        let mut block: BTreeMap<usize, Vec<(usize, FormFraction)>> = BTreeMap::new();
        for (col, w) in basis.words.iter().enumerate() {
            let e = Chain::term(FormFraction::one(), w.clone())?;
            let image = op.apply(&e)?;
            for (tw, c) in image.terms() {
                let ti = *word_index.entry(tw.clone()).or_insert_with(|| {
                    target_words.push(tw.clone());
                    target_words.len() - 1
                });
                block.entry(ti).or_default().push((col, c.clone()));
            }
        }
        // Target words hit by the rhs must appear even if no column does.
        if oi == 0 {
            for (tw, _) in rhs.terms() {
                word_index.entry(tw.clone()).or_insert_with(|| {
                    target_words.push(tw.clone());
                    target_words.len() - 1
                });
            }
        }
        let max_ti = target_words.len();
        for ti in 0..max_ti {
            let row = block.remove(&ti).unwrap_or_default();
            let b = if oi == 0 {
                rhs.coeff(&target_words[ti])
            } else {
                FormFraction::zero()
            };
            if row.is_empty() && b.is_zero() {
                continue;
            }
            rows.push(row);
            rhs_vec.push(b);
        }
    }

    // Grading sanity: every entry must be weight-consistent with its row and
    // column words.
    for (r, row) in rows.iter().enumerate() {
        let _ = r;
        for (c, v) in row {
            if !v.is_weight_homogeneous() {
                return Err(Error::Other(format!(
                    "inhomogeneous system entry at column {}",
                    c
                )));
            }
        }
    }

    Ok(SparseSystem { columns: basis.clone(), target_words, rows, rhs: rhs_vec, operator_names: op_names })
}

/// Solves an assembled system over the fraction field by fraction-free
/// elimination and re-verifies the solution exactly.
pub fn solve_system(system: &SparseSystem) -> Result<Chain> {
    let sol = crate::solver::bareiss_solve(&system.rows, &system.rhs, system.ncols())?;
    let mut out = Chain::zero();
    for (c, w) in sol.into_iter().zip(system.columns.words.iter()) {
        out.add_term(c, w.clone());
    }
    Ok(out)
}
