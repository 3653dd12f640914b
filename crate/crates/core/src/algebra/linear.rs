//! Fraction-free linear solving over a field of rational functions.
//!
//! Variables that are not declared unknowns act as parameters, so the
//! coefficient field is ℚ when no parameters occur and ℚ(params) otherwise.
//! A parametric solution is obtained by leaving the free unknowns out of the
//! unknown list.

use thiserror::Error;

use super::monomial::MonomialOrder;
use super::poly::MultiPoly;
use super::ratfunc::{substitute_into, RationalFunction};
use super::vars::Ring;
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no solution: elimination leaves the nonzero residue {witness} = 0")]
    Inconsistent { witness: String },
    #[error("underdetermined: rank {rank} for {unknowns} unknowns; candidate free unknowns: {}", candidates.join(", "))]
    Underdetermined {
        rank: usize,
        unknowns: usize,
        candidates: Vec<String>,
    },
    #[error("equation {index} is not linear in the unknowns: {equation}")]
    Nonlinear { index: usize, equation: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Unique solution of a linear system.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    /// Values in the order the unknowns were given.
    pub values: Vec<(usize, RationalFunction)>,
    /// Fraction-free determinant; the solution is valid where it is nonzero.
    pub determinant: MultiPoly,
}

impl LinearSolution {
    pub fn get(&self, var: usize) -> Option<&RationalFunction> {
        self.values.iter().find(|(v, _)| *v == var).map(|(_, r)| r)
    }
}

/// Split each equation into a coefficient row and a right-hand side.
fn build_rows(
    eqs: &[MultiPoly],
    unknowns: &[usize],
) -> Result<Vec<Vec<MultiPoly>>, SolveError> {
    let mut rows = Vec::with_capacity(eqs.len());
    for (index, eq) in eqs.iter().enumerate() {
        let ring = eq.ring();
        let mut row = vec![MultiPoly::zero(ring); unknowns.len() + 1];
        for (m, c) in eq.terms() {
            let hits: Vec<usize> = unknowns
                .iter()
                .enumerate()
                .filter(|(_, &u)| m.exp(u) > 0)
                .map(|(k, _)| k)
                .collect();
            match hits.as_slice() {
                [] => row[unknowns.len()].add_term(m.clone(), -c.clone()),
                [k] if m.exp(unknowns[*k]) == 1 => {
                    row[*k].add_term(m.with_exp(unknowns[*k], 0), c.clone())
                }
                _ => {
                    return Err(SolveError::Nonlinear {
                        index,
                        equation: eq.to_string(),
                    })
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Bareiss elimination to row echelon form. Returns the pivot columns; the
/// rows are permuted so that row `r` holds the pivot for `pivots[r]`.
fn eliminate(rows: &mut [Vec<MultiPoly>], ncols: usize) -> Result<Vec<usize>, AlgebraError> {
    let ring = match rows.first() {
        Some(r) => r[0].ring().clone(),
        None => return Ok(Vec::new()),
    };
    let mut prev = MultiPoly::one(&ring);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Prefer the simplest nonzero pivot to keep entries small.
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (rows[i][col].total_degree(), rows[i][col].num_terms()))
        else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            for j in col + 1..rows[i].len() {
                let t = &(&rows[r][col] * &rows[i][j]) - &(&rows[i][col] * &rows[r][j]);
                rows[i][j] = t.exact_div(&prev)?;
            }
            rows[i][col] = MultiPoly::zero(&ring);
        }
        prev = rows[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    Ok(pivots)
}

fn rank_of(rows: &[Vec<MultiPoly>], cols: &[usize]) -> Result<usize, AlgebraError> {
    let mut sub: Vec<Vec<MultiPoly>> = rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    Ok(eliminate(&mut sub, cols.len())?.len())
}

/// Solve `eqs = 0` for `unknowns` by fraction-free elimination.
///
/// Each equation must have degree at most one in the unknowns jointly.
/// Every other variable of the ring is treated as a parameter.
pub fn linear_solve(eqs: &[MultiPoly], unknowns: &[usize]) -> Result<LinearSolution, SolveError> {
    let Some(first) = eqs.first() else {
        return Err(SolveError::Underdetermined {
            rank: 0,
            unknowns: unknowns.len(),
            candidates: Vec::new(),
        });
    };
    let ring: Ring = first.ring().clone();
    for e in eqs {
        first.check_ring(e)?;
    }
    let n = unknowns.len();
    let original = build_rows(eqs, unknowns)?;
    let mut rows = original.clone();
    let pivots = eliminate(&mut rows, n)?;
    let rank = pivots.len();

    for row in &rows[rank..] {
        let residue = &row[n];
        if !residue.is_zero() {
            return Err(SolveError::Inconsistent {
                witness: residue.primitive(MonomialOrder::Lex).to_string(),
            });
        }
    }
    if rank < n {
        let all: Vec<usize> = (0..n).collect();
        let mut candidates = Vec::new();
        for k in 0..n {
            let cols: Vec<usize> = all.iter().copied().filter(|&c| c != k).collect();
            if rank_of(&original, &cols)? == rank {
                candidates.push(ring.name(unknowns[k]).to_string());
            }
        }
        return Err(SolveError::Underdetermined {
            rank,
            unknowns: n,
            candidates,
        });
    }

    // Back substitution with numerators N_j over the common denominator D.
    let det = rows[n - 1][n - 1].clone();
    let mut nums: Vec<MultiPoly> = vec![MultiPoly::zero(&ring); n];
    for j in (0..n).rev() {
        let mut acc = &det * &rows[j][n];
        for k in j + 1..n {
            acc -= &(&rows[j][k] * &nums[k]);
        }
        nums[j] = acc.exact_div(&rows[j][j])?;
    }
    let values = nums
        .into_iter()
        .enumerate()
        .map(|(j, num)| Ok((unknowns[j], RationalFunction::new(num, det.clone())?)))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Ok(LinearSolution {
        values,
        determinant: det,
    })
}

/// Substitute a solution into equations; every result should be zero.
pub fn residuals(
    eqs: &[MultiPoly],
    solution: &LinearSolution,
) -> Result<Vec<RationalFunction>, AlgebraError> {
    eqs.iter()
        .map(|e| substitute_into(e, &solution.values))
        .collect()
}

/// Whether `solution` makes every equation vanish identically.
pub fn satisfies(eqs: &[MultiPoly], solution: &LinearSolution) -> Result<bool, AlgebraError> {
    Ok(residuals(eqs, solution)?.iter().all(|r| r.numerator().is_zero()))
}
