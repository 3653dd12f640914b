//! Butcher tableaux with exact entries: validation, order verification,
//! the built-in catalogue, embedded pairs and text forms.

mod catalogue;
mod embed;
mod format;

use num_traits::Zero;
use thiserror::Error;

pub use catalogue::{catalogue, lookup, CatalogueEntry};
pub use embed::{embed_lower_order, EmbeddedFamily};
pub use format::{from_text_form, to_latex, to_text_form};

use crate::algebra::{format_rational, Rational};
use crate::conditions::{rk_ring, tree_conditions, ConditionError, Origin};
use crate::solver::SolverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("invalid tableau: {0}")]
    Invalid(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown tableau `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Conditions(#[from] ConditionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Explicit Runge-Kutta coefficients. Row `i` of `a` holds the `i`
/// entries to the left of the diagonal, so `a[0]` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButcherTableau {
    pub label: Option<String>,
    pub c: Vec<Rational>,
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    /// Second weight row of an embedded pair.
    pub bhat: Option<Vec<Rational>>,
    /// Nominal order, if known.
    pub order: Option<u32>,
}

/// Stage whose node differs from the sum of its row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSumViolation {
    /// 1-based stage index.
    pub stage: usize,
    pub c: Rational,
    pub row_sum: Rational,
}

#[derive(Clone, Debug)]
pub struct ConditionResidual {
    pub label: String,
    /// 1/γ − Σ bᵢΦᵢ evaluated exactly.
    pub residual: Rational,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub order: u32,
    pub residuals: Vec<ConditionResidual>,
    pub row_sum: Vec<RowSumViolation>,
}

impl VerifyReport {
    /// Every condition residual is exactly zero and the row sums hold.
    pub fn satisfied(&self) -> bool {
        self.row_sum.is_empty() && self.residuals.iter().all(|r| r.residual.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionResidual> {
        self.residuals.iter().filter(|r| !r.residual.is_zero())
    }
}

fn r(n: i64, d: i64) -> Rational {
    crate::algebra::rat(n, d)
}

impl ButcherTableau {
    /// Builds a tableau and checks its shape. `a` may be given ragged
    /// (row i has i entries) or square with zeros on and above the diagonal.
    pub fn new(c: Vec<Rational>, a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self, TableauError> {
        let s = b.len();
        if s == 0 {
            return Err(TableauError::Invalid("at least one stage is required".into()));
        }
        if c.len() != s {
            return Err(TableauError::Invalid(format!("c has {} entries, expected {s}", c.len())));
        }
        if a.len() != s {
            return Err(TableauError::Invalid(format!("a has {} rows, expected {s}", a.len())));
        }
        let mut rows = Vec::with_capacity(s);
        for (i, row) in a.into_iter().enumerate() {
            let row = if row.len() == i {
                row
            } else if row.len() == s {
                if let Some(j) = (i..s).find(|&j| !row[j].is_zero()) {
                    return Err(TableauError::Invalid(format!(
                        "a[{}][{}] = {} lies on or above the diagonal; only explicit methods are supported",
                        i + 1,
                        j + 1,
                        row[j]
                    )));
                }
                row.into_iter().take(i).collect()
            } else {
                return Err(TableauError::Invalid(format!(
                    "row {} of a has {} entries, expected {i} or {s}",
                    i + 1,
                    row.len()
                )));
            };
            rows.push(row);
        }
        if !c[0].is_zero() {
            return Err(TableauError::Invalid(format!("c1 must be 0, found {}", c[0])));
        }
        Ok(ButcherTableau {
            label: None,
            c,
            a: rows,
            b,
            bhat: None,
            order: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = Some(order);
        self
    }

    pub fn with_bhat(mut self, bhat: Vec<Rational>) -> Result<Self, TableauError> {
        if bhat.len() != self.stages() {
            return Err(TableauError::Invalid(format!(
                "bhat has {} entries, expected {}",
                bhat.len(),
                self.stages()
            )));
        }
        self.bhat = Some(bhat);
        Ok(self)
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    /// a_ij with 1-based indices; zero on and above the diagonal.
    pub fn a(&self, i: usize, j: usize) -> Rational {
        if j < i {
            self.a[i - 1][j - 1].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn row_sum_violations(&self) -> Vec<RowSumViolation> {
        self.a
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                let sum: Rational = row.iter().sum();
                (sum != self.c[i]).then(|| RowSumViolation {
                    stage: i + 1,
                    c: self.c[i].clone(),
                    row_sum: sum,
                })
            })
            .collect()
    }

    /// The method that uses the second weight row, if there is one.
    pub fn hat_method(&self) -> Option<ButcherTableau> {
        let bhat = self.bhat.clone()?;
        Some(ButcherTableau {
            label: self.label.as_ref().map(|l| format!("{l} (second weights)")),
            c: self.c.clone(),
            a: self.a.clone(),
            b: bhat,
            bhat: None,
            order: None,
        })
    }

    /// Values of the standard coefficient variables, in the layout of
    /// [`rk_ring`].
    pub fn coefficient_point(&self) -> Vec<Rational> {
        let s = self.stages();
        let mut point = Vec::new();
        for i in 2..=s {
            for j in 1..i {
                point.push(self.a(i, j));
            }
        }
        point.extend(self.b.iter().cloned());
        point.extend(self.c.iter().skip(1).cloned());
        point
    }

    /// Exact check against the rooted-tree conditions up to order `p`.
    pub fn verify_order(&self, p: u32) -> Result<VerifyReport, TableauError> {
        let s = self.stages();
        let cs = tree_conditions(s, p)?;
        debug_assert_eq!(cs.ring.len(), rk_ring(s).len());
        let point = self.coefficient_point();
        let residuals = cs
            .conditions
            .iter()
            .map(|cond| {
                let label = match cond.origins.first() {
                    Some(Origin::Tree { tree }) => tree.to_string(),
                    Some(other) => other.to_string(),
                    None => String::new(),
                };
                ConditionResidual {
                    label,
                    residual: cond.equation.eval(&point),
                }
            })
            .collect();
        Ok(VerifyReport {
            order: p,
            residuals,
            row_sum: self.row_sum_violations(),
        })
    }

    /// Largest p ≤ `max` for which [`ButcherTableau::verify_order`] passes.
    pub fn attained_order(&self, max: u32) -> Result<u32, TableauError> {
        let mut best = 0;
        for p in 1..=max {
            if !self.verify_order(p)?.satisfied() {
                break;
            }
            best = p;
        }
        Ok(best)
    }

    pub fn to_f64(&self) -> NumericTableau {
        use crate::algebra::rational::to_f64;
        NumericTableau {
            c: self.c.iter().map(to_f64).collect(),
            a: self.a.iter().map(|row| row.iter().map(to_f64).collect()).collect(),
            b: self.b.iter().map(to_f64).collect(),
        }
    }

    /// Plain Butcher array with aligned columns.
    pub fn to_plain(&self) -> String {
        let s = self.stages();
        let mut grid: Vec<Vec<String>> = Vec::new();
        for (i, row) in self.a.iter().enumerate() {
            let mut cells = vec![format_rational(&self.c[i])];
            cells.extend(row.iter().map(format_rational));
            grid.push(cells);
        }
        let rule = grid.len();
        for w in std::iter::once(&self.b).chain(self.bhat.as_ref()) {
            let mut cells = vec![String::new()];
            cells.extend(w.iter().map(format_rational));
            grid.push(cells);
        }
        let mut width = vec![0; s + 1];
        for row in &grid {
            for (k, cell) in row.iter().enumerate() {
                width[k] = width[k].max(cell.len());
            }
        }
        let mut out = String::new();
        if let Some(l) = &self.label {
            out.push_str(&format!("# {l}\n"));
        }
        for (r, row) in grid.iter().enumerate() {
            if r == rule {
                let total: usize = width[1..].iter().map(|w| w + 1).sum();
                out.push_str(&format!("{}-+{}\n", "-".repeat(width[0]), "-".repeat(total)));
            }
            let mut line = format!("{:>w$} |", row[0], w = width[0]);
            for (k, cell) in row.iter().enumerate().skip(1) {
                line.push_str(&format!(" {:>w$}", cell, w = width[k]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Binary64 copy of a tableau for the numerical harness.
#[derive(Clone, Debug)]
pub struct NumericTableau {
    pub c: Vec<f64>,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| r(n, d)).collect()
}

