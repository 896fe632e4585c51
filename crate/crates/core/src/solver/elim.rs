//! Exact elimination back-ends.
//!
//! [`rational_gauss`] solves sparse systems over Q (big rationals); it is the
//! workhorse behind the graded ansatz reductions, where every unknown is a
//! rational coordinate in a fixed weight-homogeneous basis.
//!
//! [`bareiss_solve`] is fraction-free Bareiss elimination over the polynomial
//! ring of form elements, used when a system must be solved directly over the
//! form fraction field.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::qmod::{FormElement, FormFraction};
use crate::{Error, Rat, Result};

/// Result of a rational elimination.
pub struct GaussOutcome {
    /// One particular solution (free variables set to zero).
    pub solution: Vec<Rat>,
    /// Indices of the free (undetermined) columns.
    pub free_columns: Vec<usize>,
    pub rank: usize,
    /// A basis of the homogeneous solution space, one vector per free column.
    pub nullspace: Vec<Vec<Rat>>,
}

/// Solves `A x = rhs` exactly over Q. Rows are sparse `(col, coeff)` lists.
/// Returns `InconsistentSystem` when no solution exists.
pub fn rational_gauss(
    rows: &[Vec<(usize, Rat)>],
    rhs: &[Rat],
    ncols: usize,
) -> Result<GaussOutcome> {
    assert_eq!(rows.len(), rhs.len());
    let mut mat: Vec<HashMap<usize, Rat>> = rows
        .iter()
        .map(|r| {
            let mut m = HashMap::new();
            for (c, v) in r {
                if !v.is_zero() {
                    let e = m.entry(*c).or_insert_with(Rat::zero);
                    *e += v.clone();
                    if e.is_zero() {
                        m.remove(c);
                    }
                }
            }
            m
        })
        .collect();
    let mut b: Vec<Rat> = rhs.to_vec();

    let nrows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut used_row = vec![false; nrows];

    for col in 0..ncols {
        // Choose the sparsest available row with a nonzero entry in this column.
        let mut best: Option<(usize, usize)> = None;
        for r in 0..nrows {
            if used_row[r] {
                continue;
            }
            if mat[r].contains_key(&col) {
                let len = mat[r].len();
                if best.map(|(_, l)| len < l).unwrap_or(true) {
                    best = Some((r, len));
                }
            }
        }
        let Some((prow, _)) = best else { continue };
        used_row[prow] = true;
        pivot_of_col[col] = Some(prow);
        pivot_cols.push(col);

        let pval = mat[prow][&col].clone();
        let prow_data: Vec<(usize, Rat)> = mat[prow].iter().map(|(c, v)| (*c, v.clone())).collect();
        let pb = b[prow].clone();

        for r in 0..nrows {
            if r == prow || !mat[r].contains_key(&col) {
                continue;
            }
            let factor = &mat[r][&col] / &pval;
            for (c, v) in &prow_data {
                let delta = v * &factor;
                let e = mat[r].entry(*c).or_insert_with(Rat::zero);
                *e -= delta;
                if e.is_zero() {
                    mat[r].remove(c);
                }
            }
            let db = &pb * &factor;
            b[r] -= db;
        }
    }

    // Inconsistency: a zero row with nonzero rhs.
    for r in 0..nrows {
        if !used_row[r] && mat[r].is_empty() && !b[r].is_zero() {
            return Err(Error::InconsistentSystem(format!("row {}", r)));
        }
    }

    let mut solution = vec![Rat::zero(); ncols];
    // Back substitution in reverse pivot order; free variables stay zero.
    for &col in pivot_cols.iter().rev() {
        let r = pivot_of_col[col].unwrap();
        let mut acc = b[r].clone();
        for (c, v) in &mat[r] {
            if *c != col {
                acc -= v * &solution[*c];
            }
        }
        solution[col] = acc / &mat[r][&col];
    }

    let free_columns: Vec<usize> = (0..ncols).filter(|c| pivot_of_col[*c].is_none()).collect();

    // Nullspace basis: one vector per free column.
    let mut nullspace = Vec::with_capacity(free_columns.len());
    for &fc in &free_columns {
        let mut v = vec![Rat::zero(); ncols];
        v[fc] = Rat::one();
        for &col in pivot_cols.iter().rev() {
            let r = pivot_of_col[col].unwrap();
            let mut acc = Rat::zero();
            for (c, w) in &mat[r] {
                if *c != col {
                    acc -= w * &v[*c];
                }
            }
            v[col] = acc / &mat[r][&col];
        }
        nullspace.push(v);
    }
    Ok(GaussOutcome { rank: pivot_cols.len(), solution, free_columns, nullspace })
}

/// Fraction-free Bareiss elimination over the form polynomial ring.
///
/// Solves `A x = rhs` where entries are [`FormFraction`]s; internally clears
/// denominators row by row and keeps all intermediate entries polynomial, so
/// no gcd computations are needed during elimination. Returns a solution over
/// the fraction field and verifies it against the original rows.
pub fn bareiss_solve(
    rows: &[Vec<(usize, FormFraction)>],
    rhs: &[FormFraction],
    ncols: usize,
) -> Result<Vec<FormFraction>> {
    let nrows = rows.len();
    // Clear denominators: each row becomes polynomial entries.
    let mut mat: Vec<Vec<FormElement>> = Vec::with_capacity(nrows);
    let mut b: Vec<FormElement> = Vec::with_capacity(nrows);
    for (r, row) in rows.iter().enumerate() {
        let mut lcm = FormElement::one();
        for (_, v) in row {
            lcm = &lcm * v.denominator();
        }
        lcm = &lcm * rhs[r].denominator();
        let mut dense = vec![FormElement::zero(); ncols];
        for (c, v) in row {
            let scaled = &(&lcm * v.numerator()).try_exact_div(v.denominator()).expect("lcm divisible");
            dense[*c] = &dense[*c] + scaled;
        }
        let brow = (&lcm * rhs[r].numerator())
            .try_exact_div(rhs[r].denominator())
            .expect("lcm divisible");
        mat.push(dense);
        b.push(brow);
    }

    let mut piv_rows: Vec<usize> = Vec::new();
    let mut piv_cols: Vec<usize> = Vec::new();
    let mut used = vec![false; nrows];
    let mut prev_pivot = FormElement::one();

    for col in 0..ncols {
        let Some(prow) = (0..nrows).find(|&r| !used[r] && !mat[r][col].is_zero()) else {
            continue;
        };
        used[prow] = true;
        let pivot = mat[prow][col].clone();
        let prow_data: Vec<FormElement> = mat[prow].clone();
        let pb = b[prow].clone();
        for r in 0..nrows {
            if used[r] {
                continue;
            }
            // Bareiss update: row_r := (pivot*row_r - a_rc*row_p) / prev_pivot.
            let arc = mat[r][col].clone();
            for c in 0..ncols {
                let t = if arc.is_zero() {
                    &pivot * &mat[r][c]
                } else {
                    &(&pivot * &mat[r][c]) - &(&arc * &prow_data[c])
                };
                mat[r][c] = t.try_exact_div(&prev_pivot).expect("Bareiss divisibility");
            }
            let t = if arc.is_zero() {
                &pivot * &b[r]
            } else {
                &(&pivot * &b[r]) - &(&arc * &pb)
            };
            b[r] = t.try_exact_div(&prev_pivot).expect("Bareiss divisibility");
        }
        prev_pivot = pivot;
        piv_rows.push(prow);
        piv_cols.push(col);
    }

    for r in 0..nrows {
        if !used[r] && mat[r].iter().all(|e| e.is_zero()) && !b[r].is_zero() {
            return Err(Error::InconsistentSystem(format!("row {}", r)));
        }
    }

    let mut solution = vec![FormFraction::zero(); ncols];
    for i in (0..piv_cols.len()).rev() {
        let col = piv_cols[i];
        let r = piv_rows[i];
        let mut acc = FormFraction::from_element(b[r].clone());
        for c in 0..ncols {
            if c != col && !mat[r][c].is_zero() && !solution[c].is_zero() {
                acc = &acc - &(&FormFraction::from_element(mat[r][c].clone()) * &solution[c]);
            }
        }
        solution[col] = &acc / &FormFraction::from_element(mat[r][col].clone());
    }

    // Exact post-verification against the original system.
    for (r, row) in rows.iter().enumerate() {
        let mut acc = FormFraction::zero();
        for (c, v) in row {
            acc = &acc + &(v * &solution[*c]);
        }
        if acc != rhs[r] {
            return Err(Error::InconsistentSystem(format!(
                "verification failed at row {}",
                r
            )));
        }
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn gauss_small_system() {
        // x + y = 3, x - y = 1 -> x = 2, y = 1.
        let rows = vec![
            vec![(0, rint(1)), (1, rint(1))],
            vec![(0, rint(1)), (1, rint(-1))],
        ];
        let rhs = vec![rint(3), rint(1)];
        let out = rational_gauss(&rows, &rhs, 2).unwrap();
        assert_eq!(out.solution, vec![rint(2), rint(1)]);
        assert!(out.free_columns.is_empty());
    }

    #[test]
    fn gauss_underdetermined_and_inconsistent() {
        let rows = vec![vec![(0, rint(1)), (1, rint(1))]];
        let rhs = vec![rint(3)];
        let out = rational_gauss(&rows, &rhs, 2).unwrap();
        assert_eq!(out.free_columns.len(), 1);
        let rows = vec![vec![(0, rint(1))], vec![(0, rint(1))]];
        let rhs = vec![rint(1), rint(2)];
        assert!(rational_gauss(&rows, &rhs, 1).is_err());
    }

    #[test]
    fn gauss_rational_entries() {
        // (1/2)x = 5 -> x = 10.
        let rows = vec![vec![(0, rat(1, 2))]];
        let rhs = vec![rint(5)];
        let out = rational_gauss(&rows, &rhs, 1).unwrap();
        assert_eq!(out.solution[0], rint(10));
    }

    #[test]
    fn bareiss_over_forms() {
        use crate::qmod::FormElement;
        // E2 * x = E2^2  ->  x = E2.
        let e2 = FormFraction::from_element(FormElement::e2());
        let rows = vec![vec![(0, e2.clone())]];
        let rhs = vec![&e2 * &e2];
        let sol = bareiss_solve(&rows, &rhs, 1).unwrap();
        assert_eq!(sol[0], e2);
    }
}
