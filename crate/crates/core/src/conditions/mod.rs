//! Order-condition systems for explicit Runge-Kutta methods, from the
//! series expansion and from rooted trees.

mod oracle;
mod trees;

use std::fmt;

use num_traits::One;
use thiserror::Error;

pub use oracle::{compare_with_trees, Inclusion, OracleComparison};
pub use trees::{enumerate_trees, RootedTree};

use crate::algebra::{AlgebraError, MonomialOrder, MultiPoly, Rational, Ring, VarTable};
use crate::series::{self, DiffMonomial, Mode, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("stage count and order must be at least 1 (got s = {stages}, p = {order})")]
    InvalidSize { stages: usize, order: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub fn a_name(s: usize, i: usize, j: usize) -> String {
    if s >= 10 {
        format!("a{i}_{j}")
    } else {
        format!("a{i}{j}")
    }
}

pub fn b_name(i: usize) -> String {
    format!("b{i}")
}

pub fn c_name(i: usize) -> String {
    format!("c{i}")
}

/// Variable names for an s-stage explicit method: a_ij (i > j) row by row,
/// then b_1..b_s, then c_2..c_s.
pub fn rk_variable_names(s: usize) -> Vec<String> {
    let mut names = Vec::new();
    for i in 2..=s {
        for j in 1..i {
            names.push(a_name(s, i, j));
        }
    }
    names.extend((1..=s).map(b_name));
    names.extend((2..=s).map(c_name));
    names
}

pub fn rk_ring(s: usize) -> Ring {
    VarTable::new(rk_variable_names(s)).expect("generated names are valid and distinct")
}

/// Symbolic coefficients of an s-stage method inside a ring containing the
/// standard names (see [`rk_variable_names`]).
#[derive(Clone, Debug)]
pub struct SymbolicMethod {
    pub ring: Ring,
    /// s×s, zero on and above the diagonal.
    pub a: Vec<Vec<MultiPoly>>,
    pub b: Vec<MultiPoly>,
    /// c₁ is the constant 0.
    pub c: Vec<MultiPoly>,
}

impl SymbolicMethod {
    pub fn new(ring: &Ring, s: usize) -> Result<Self, AlgebraError> {
        let zero = MultiPoly::zero(ring);
        let mut a = vec![vec![zero.clone(); s]; s];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate().take(i) {
                *entry = MultiPoly::var(ring, &a_name(s, i + 1, j + 1))?;
            }
        }
        let b = (1..=s)
            .map(|i| MultiPoly::var(ring, &b_name(i)))
            .collect::<Result<_, _>>()?;
        let mut c = vec![zero];
        for i in 2..=s {
            c.push(MultiPoly::var(ring, &c_name(i))?);
        }
        Ok(SymbolicMethod {
            ring: ring.clone(),
            a,
            b,
            c,
        })
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }
}

/// Replace each a_{i1} by c_i − Σ_{j≥2} a_ij.
pub fn apply_row_sum(p: &MultiPoly, s: usize) -> Result<MultiPoly, AlgebraError> {
    let ring = p.ring();
    let mut subs = Vec::new();
    for i in 2..=s {
        let mut image = MultiPoly::var(ring, &c_name(i))?;
        for j in 2..i {
            image -= &MultiPoly::var(ring, &a_name(s, i, j))?;
        }
        let idx = ring
            .index_of(&a_name(s, i, 1))
            .ok_or_else(|| AlgebraError::UnknownVariable(a_name(s, i, 1)))?;
        subs.push((idx, image));
    }
    Ok(p.subs(&subs))
}

/// Where an equation came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Coefficient of h^h_power · mono in T − RK.
    Series { h_power: u32, mono: DiffMonomial },
    /// Σ bᵢΦᵢ(t) = 1/γ(t) for a rooted tree t.
    Tree { tree: RootedTree },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Series { h_power: 0, mono } => write!(f, "{mono}"),
            Origin::Series { h_power: 1, mono } => write!(f, "h * {mono}"),
            Origin::Series { h_power, mono } => write!(f, "h^{h_power} * {mono}"),
            Origin::Tree { tree } => write!(f, "tree {tree} (gamma = {})", tree.density()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Condition {
    /// The polynomial that must vanish.
    pub equation: MultiPoly,
    /// All sources that produced this equation (up to a scalar multiple).
    pub origins: Vec<Origin>,
}

impl Condition {
    /// Normalized display form: integer coefficients, positive leading
    /// coefficient under graded-lex.
    pub fn normalized(&self) -> MultiPoly {
        self.equation.primitive(MonomialOrder::GradedLex)
    }
}

/// A system of order conditions, each understood as `equation = 0`.
#[derive(Clone, Debug)]
pub struct ConditionSet {
    pub stages: usize,
    pub order: u32,
    pub mode: Mode,
    pub row_sum_applied: bool,
    pub ring: Ring,
    pub conditions: Vec<Condition>,
}

impl ConditionSet {
    fn new(stages: usize, order: u32, mode: Mode, row_sum_applied: bool, ring: Ring) -> Self {
        ConditionSet {
            stages,
            order,
            mode,
            row_sum_applied,
            ring,
            conditions: Vec::new(),
        }
    }

    /// Add an equation, merging it with an existing scalar multiple.
    fn push(&mut self, equation: MultiPoly, origin: Origin) {
        if equation.is_zero() {
            return;
        }
        let key = equation.primitive(MonomialOrder::GradedLex);
        match self
            .conditions
            .iter_mut()
            .find(|c| c.equation.primitive(MonomialOrder::GradedLex) == key)
        {
            Some(existing) => existing.origins.push(origin),
            None => self.conditions.push(Condition {
                equation,
                origins: vec![origin],
            }),
        }
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn equations(&self) -> Vec<MultiPoly> {
        self.conditions.iter().map(|c| c.equation.clone()).collect()
    }
}

fn check_size(s: usize, p: u32) -> Result<(), ConditionError> {
    if s == 0 || p == 0 {
        return Err(ConditionError::InvalidSize { stages: s, order: p });
    }
    Ok(())
}

/// Order conditions of an s-stage explicit method for order p, read off
/// as the nonzero coefficients of T − RK.
pub fn generate_conditions(s: usize, p: u32, mode: Mode, row_sum: bool) -> Result<ConditionSet, ConditionError> {
    check_size(s, p)?;
    let ring = rk_ring(s);
    let m = SymbolicMethod::new(&ring, s)?;
    let ks = series::expand_stages(&m.a, &m.c, p, mode)?;
    let rk = series::combine(&m.b, &ks)?;
    let t = series::taylor_target(&ring, p, mode);
    let diff = series::collect_difference(&t, &rk)?;
    let mut set = ConditionSet::new(s, p, mode, row_sum, ring);
    for ((h_power, mono), coeff) in diff {
        let eq = if row_sum { apply_row_sum(&coeff, s)? } else { coeff };
        set.push(eq, Origin::Series { h_power, mono });
    }
    Ok(set)
}

/// Elementary weights Φᵢ(t) for i = 1..s under the row-sum convention: a
/// leaf child contributes cᵢ, any other child u contributes Σⱼ aᵢⱼΦⱼ(u).
pub fn elementary_weights(m: &SymbolicMethod, t: &RootedTree) -> Vec<MultiPoly> {
    let child_weights: Vec<Option<Vec<MultiPoly>>> = t
        .children()
        .iter()
        .map(|u| (!u.is_leaf()).then(|| elementary_weights(m, u)))
        .collect();
    (0..m.stages())
        .map(|i| {
            let mut prod = MultiPoly::one(&m.ring);
            for w in &child_weights {
                let factor = match w {
                    None => m.c[i].clone(),
                    Some(phi) => {
                        let mut acc = MultiPoly::zero(&m.ring);
                        for (aij, phij) in m.a[i].iter().zip(phi).take(i) {
                            acc += &(aij * phij);
                        }
                        acc
                    }
                };
                prod = &prod * &factor;
            }
            prod
        })
        .collect()
}

/// One condition 1/γ(t) − Σ bᵢΦᵢ(t) per rooted tree of order ≤ p.
pub fn tree_conditions(s: usize, p: u32) -> Result<ConditionSet, ConditionError> {
    check_size(s, p)?;
    let ring = rk_ring(s);
    let m = SymbolicMethod::new(&ring, s)?;
    let mut set = ConditionSet::new(s, p, Mode::General, true, ring.clone());
    for tree in enumerate_trees(p as usize) {
        let phis = elementary_weights(&m, &tree);
        let mut eq = MultiPoly::constant(&ring, Rational::one() / Rational::from_integer(tree.density().into()));
        for (bi, phi) in m.b.iter().zip(&phis) {
            eq -= &(bi * phi);
        }
        set.push(eq, Origin::Tree { tree });
    }
    Ok(set)
}
