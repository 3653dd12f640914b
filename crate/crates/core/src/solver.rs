//! Staged symbolic solving of order-condition systems.
//!
//! Each scenario fixes which unknowns are solved together; equations are
//! picked automatically at each stage as those that are linear in the
//! stage's unknowns and free of unknowns belonging to later stages.

use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::linear::linear_solve;
use crate::algebra::ratfunc::substitute_into;
use crate::algebra::{
    buchberger, ideal_contains, interreduce, AlgebraError, MonomialOrder, MultiPoly, Rational,
    RationalFunction, Ring, SolveError, VarTable,
};
use crate::conditions::{ConditionError, ConditionSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: SolveError,
    },
    #[error("{0}")]
    Unsupported(String),
    #[error("the point lies on the excluded locus {locus} = 0")]
    ExcludedLocus { locus: String },
    #[error("residual equation does not vanish: {0}")]
    ResidualNonzero(String),
    #[error("{0} is not in the ideal of the reduced system")]
    NotInIdeal(String),
    #[error("no rational solution: the discriminant {0} is not a square")]
    NoRationalRoot(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Conditions(#[from] ConditionError),
}

fn var(ring: &Ring, name: &str) -> Result<usize, AlgebraError> {
    ring.index_of(name)
        .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
}

fn vars(ring: &Ring, names: &[&str]) -> Result<Vec<usize>, AlgebraError> {
    names.iter().map(|n| var(ring, n)).collect()
}

/// A family of solutions parametrized by free variables.
#[derive(Clone, Debug)]
pub struct FamilySolution {
    pub ring: Ring,
    /// Solved variables with their values, in the order they were obtained.
    pub solved: Vec<(usize, RationalFunction)>,
    pub free: Vec<usize>,
    /// Equations that were not used by any linear stage and were verified
    /// to vanish identically on the family.
    pub residuals: Vec<MultiPoly>,
    /// Distinct non-constant denominators; the family is valid only where
    /// none of them vanishes.
    pub excluded: Vec<MultiPoly>,
}

impl FamilySolution {
    fn new(ring: &Ring, solved: Vec<(usize, RationalFunction)>, free: Vec<usize>, residuals: Vec<MultiPoly>) -> Self {
        let mut excluded: Vec<MultiPoly> = Vec::new();
        for (_, v) in &solved {
            let d = v.denominator();
            if d.is_constant() {
                continue;
            }
            let key = d.primitive(MonomialOrder::Lex);
            if !excluded.contains(&key) {
                excluded.push(key);
            }
        }
        FamilySolution {
            ring: ring.clone(),
            solved,
            free,
            residuals,
            excluded,
        }
    }

    pub fn get(&self, name: &str) -> Option<&RationalFunction> {
        let i = self.ring.index_of(name)?;
        self.solved.iter().find(|(v, _)| *v == i).map(|(_, r)| r)
    }

    pub fn free_names(&self) -> Vec<&str> {
        self.free.iter().map(|&i| self.ring.name(i)).collect()
    }

    /// Substitute the family into a polynomial over the same ring.
    pub fn substitute(&self, p: &MultiPoly) -> Result<RationalFunction, AlgebraError> {
        substitute_into(p, &self.solved)
    }

    /// Whether every polynomial vanishes identically on the family.
    pub fn satisfies(&self, eqs: &[MultiPoly]) -> Result<bool, AlgebraError> {
        for e in eqs {
            if !self.substitute(e)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether some excluded denominator is divisible by `factor`.
    pub fn excludes_factor(&self, factor: &MultiPoly) -> bool {
        self.excluded.iter().any(|d| d.exact_div(factor).is_ok())
    }

    /// Fix some free variables to rational values. Fails if a denominator
    /// vanishes at the requested point.
    pub fn specialize(&self, values: &[(&str, Rational)]) -> Result<FamilySolution, SolverError> {
        let mut assign = Vec::new();
        for (name, v) in values {
            let i = var(&self.ring, name)?;
            assign.push((i, RationalFunction::constant(&self.ring, v.clone())));
        }
        let mut solved = Vec::with_capacity(self.solved.len() + assign.len());
        for (i, v) in &self.solved {
            let num = substitute_into(v.numerator(), &assign)?;
            let den = substitute_into(v.denominator(), &assign)?;
            if den.is_zero() {
                return Err(SolverError::ExcludedLocus {
                    locus: v.denominator().primitive(MonomialOrder::Lex).to_string(),
                });
            }
            solved.push((*i, num.checked_div(&den)?.reduced()));
        }
        solved.extend(assign.iter().cloned());
        let fixed: Vec<usize> = assign.iter().map(|(i, _)| *i).collect();
        let free = self.free.iter().copied().filter(|i| !fixed.contains(i)).collect();
        let residuals = self
            .residuals
            .iter()
            .map(|r| substitute_into(r, &assign).map(|x| x.numerator().clone()))
            .collect::<Result<_, _>>()?;
        Ok(FamilySolution::new(&self.ring, solved, free, residuals))
    }

    /// All values, when every solved variable is a constant.
    pub fn constants(&self) -> Option<Vec<(String, Rational)>> {
        self.solved
            .iter()
            .map(|(i, v)| v.as_constant().map(|c| (self.ring.name(*i).to_string(), c)))
            .collect()
    }

    pub fn constant(&self, name: &str) -> Option<Rational> {
        self.get(name).and_then(RationalFunction::as_constant)
    }

    pub fn to_json(&self) -> Value {
        let solved: serde_json::Map<String, Value> = self
            .solved
            .iter()
            .map(|(i, v)| (self.ring.name(*i).to_string(), Value::String(v.to_string())))
            .collect();
        json!({
            "solved": solved,
            "free": self.free_names(),
            "residuals": self.residuals.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "excluded": self.excluded.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Working state of a staged solve.
struct Staged {
    ring: Ring,
    /// Current equations with all solved values substituted (numerators).
    eqs: Vec<MultiPoly>,
    /// Original form of each equation, for residual reporting.
    source: Vec<MultiPoly>,
    used: Vec<bool>,
    solved: Vec<(usize, RationalFunction)>,
}

impl Staged {
    fn new(eqs: &[MultiPoly]) -> Result<Self, SolverError> {
        let ring = eqs
            .first()
            .map(|e| e.ring().clone())
            .ok_or_else(|| SolverError::Unsupported("empty system".into()))?;
        Ok(Staged {
            ring,
            eqs: eqs.to_vec(),
            source: eqs.to_vec(),
            used: vec![false; eqs.len()],
            solved: Vec::new(),
        })
    }

    fn is_linear_in(p: &MultiPoly, unknowns: &[usize]) -> bool {
        p.terms()
            .all(|(m, _)| unknowns.iter().map(|&u| m.exp(u)).sum::<u32>() <= 1)
    }

    /// Record values and substitute them into all equations.
    fn assign(&mut self, values: Vec<(usize, RationalFunction)>) -> Result<(), SolverError> {
        let values: Vec<(usize, RationalFunction)> =
            values.into_iter().map(|(i, v)| (i, v.reduced())).collect();
        for e in &mut self.eqs {
            if values.iter().any(|(v, _)| e.contains_var(*v)) {
                *e = substitute_into(e, &values)?.numerator().clone();
            }
        }
        for (_, v) in &mut self.solved {
            if values.iter().any(|(var, _)| v.variables().contains(var)) {
                *v = v.substitute(&values)?.reduced();
            }
        }
        self.solved.extend(values);
        Ok(())
    }

    /// Solve for `unknowns` using every unused equation that is linear in
    /// them and free of the `later` unknowns.
    fn stage(&mut self, label: &str, unknowns: &[usize], later: &[usize]) -> Result<(), SolverError> {
        let picked: Vec<usize> = (0..self.eqs.len())
            .filter(|&i| {
                let e = &self.eqs[i];
                !self.used[i]
                    && !e.is_zero()
                    && unknowns.iter().any(|&u| e.contains_var(u))
                    && !later.iter().any(|&v| e.contains_var(v))
                    && Self::is_linear_in(e, unknowns)
            })
            .collect();
        let system: Vec<MultiPoly> = picked.iter().map(|&i| self.eqs[i].clone()).collect();
        let sol = linear_solve(&system, unknowns).map_err(|source| SolverError::Stage {
            stage: label.to_string(),
            source,
        })?;
        for i in picked {
            self.used[i] = true;
        }
        self.assign(sol.values)
    }

    /// Like [`Staged::stage`], but on rank deficiency binds the first
    /// candidate free unknown to `param` and retries.
    fn stage_with_retry(
        &mut self,
        label: &str,
        unknowns: &[usize],
        later: &[usize],
        param: usize,
    ) -> Result<Option<usize>, SolverError> {
        match self.stage(label, unknowns, later) {
            Ok(()) => Ok(None),
            Err(SolverError::Stage {
                source: SolveError::Underdetermined { candidates, .. },
                ..
            }) if !candidates.is_empty() => {
                let chosen = var(&self.ring, &candidates[0])?;
                let p = RationalFunction::from_poly(MultiPoly::var_index(&self.ring, param));
                self.assign(vec![(chosen, p)])?;
                let rest: Vec<usize> = unknowns.iter().copied().filter(|&u| u != chosen).collect();
                self.stage(label, &rest, later)?;
                Ok(Some(chosen))
            }
            Err(e) => Err(e),
        }
    }

    /// Equations not consumed by a stage must vanish identically.
    fn residuals(&self) -> Result<Vec<MultiPoly>, SolverError> {
        let mut out = Vec::new();
        for (i, e) in self.eqs.iter().enumerate() {
            if self.used[i] {
                continue;
            }
            if !e.is_zero() {
                return Err(SolverError::ResidualNonzero(self.source[i].to_string()));
            }
            out.push(self.source[i].clone());
        }
        Ok(out)
    }

    /// Append values given as polynomials in already solved variables.
    fn derive(&mut self, name: &str, expr: &MultiPoly) -> Result<(), SolverError> {
        let v = substitute_into(expr, &self.solved)?.reduced();
        let i = var(&self.ring, name)?;
        self.solved.push((i, v));
        Ok(())
    }

    fn finish(self, free: Vec<usize>) -> Result<FamilySolution, SolverError> {
        let residuals = self.residuals()?;
        let family = FamilySolution::new(&self.ring, self.solved, free, residuals);
        if !family.satisfies(&self.source)? {
            return Err(SolverError::ResidualNonzero("source system".into()));
        }
        Ok(family)
    }
}

fn poly(ring: &Ring, src: &str) -> Result<MultiPoly, AlgebraError> {
    crate::algebra::parse_poly(src, ring)
}

/// The general third-order family in c₂, c₃ from the raw (row-sum free)
/// three-stage conditions.
pub fn solve_order3_family(cs: &ConditionSet) -> Result<FamilySolution, SolverError> {
    if cs.stages != 3 || cs.order != 3 {
        return Err(SolverError::Unsupported("expected the s = 3, p = 3 system".into()));
    }
    let ring = cs.ring.clone();
    let mut st = Staged::new(&cs.equations())?;
    let b = vars(&ring, &["b1", "b2", "b3"])?;
    let a32 = vars(&ring, &["a32"])?;
    let a_rest = vars(&ring, &["a21", "a31"])?;
    st.stage("weights", &b, &[a32.clone(), a_rest.clone()].concat())?;
    st.stage("a32", &a32, &a_rest)?;
    st.stage("first column", &a_rest, &[])?;
    st.finish(vars(&ring, &["c2", "c3"])?)
}

/// Interreduced basis of an order-4 system (row-sum applied), with the
/// check that c₄ − 1 lies in its ideal.
pub fn order4_basis(cs: &ConditionSet) -> Result<Vec<MultiPoly>, SolverError> {
    let ib = interreduce(&cs.equations(), MonomialOrder::Lex)?;
    let gb = buchberger(&ib, MonomialOrder::GradedLex)?;
    let c4 = poly(&cs.ring, "c4 - 1")?;
    if !ideal_contains(&gb, &c4, MonomialOrder::GradedLex)? {
        return Err(SolverError::NotInIdeal("c4 - 1".into()));
    }
    Ok(ib)
}

fn check_order4(cs: &ConditionSet) -> Result<(), SolverError> {
    if cs.stages != 4 || cs.order != 4 || !cs.row_sum_applied {
        return Err(SolverError::Unsupported(
            "expected the s = 4, p = 4 system with the row-sum substitution".into(),
        ));
    }
    Ok(())
}

fn set_c4(eqs: &[MultiPoly], ring: &Ring) -> Result<Vec<MultiPoly>, SolverError> {
    let c4 = var(ring, "c4")?;
    Ok(eqs
        .iter()
        .map(|e| e.subs(&[(c4, MultiPoly::one(ring))]))
        .filter(|e| !e.is_zero())
        .collect())
}

fn derive_first_column(st: &mut Staged, ring: &Ring, c2: &str, c3: &str) -> Result<(), SolverError> {
    st.derive("a21", &poly(ring, c2)?)?;
    st.derive("a31", &poly(ring, &format!("{c3} - a32"))?)?;
    st.derive("a41", &poly(ring, "1 - a42 - a43")?)?;
    Ok(())
}

/// The general fourth-order family in c₂, c₃ (with c₄ = 1).
pub fn solve_order4_family(cs: &ConditionSet) -> Result<FamilySolution, SolverError> {
    check_order4(cs)?;
    let ring = cs.ring.clone();
    let ib = order4_basis(cs)?;
    let mut st = Staged::new(&set_c4(&ib, &ring)?)?;
    let c4 = var(&ring, "c4")?;
    st.solved.push((c4, RationalFunction::constant(&ring, Rational::one())));
    let b = vars(&ring, &["b1", "b2", "b3", "b4"])?;
    let a = vars(&ring, &["a32", "a42", "a43"])?;
    st.stage("weights", &b, &a)?;
    st.stage("couplings", &a, &[])?;
    derive_first_column(&mut st, &ring, "c2", "c3")?;
    st.finish(vars(&ring, &["c2", "c3"])?)
}

/// Ring for the equal-node case: c₂ = c₃ = u, c₄ = 1, with a spare
/// parameter r1.
pub fn equal_c_ring() -> Ring {
    VarTable::new([
        "a21", "a31", "a32", "a41", "a42", "a43", "b1", "b2", "b3", "b4", "u", "r1",
    ])
    .expect("valid names")
}

/// Map the order-4 row-sum system into [`equal_c_ring`] and interreduce.
pub fn equal_c_basis(cs: &ConditionSet) -> Result<Vec<MultiPoly>, SolverError> {
    check_order4(cs)?;
    let target = equal_c_ring();
    let images: Vec<MultiPoly> = cs
        .ring
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "c2" | "c3" => MultiPoly::var(&target, "u"),
            "c4" => Ok(MultiPoly::one(&target)),
            other => MultiPoly::var(&target, other),
        })
        .collect::<Result<_, _>>()?;
    let eqs: Vec<MultiPoly> = cs
        .equations()
        .iter()
        .map(|e| e.compose(&target, &images))
        .collect();
    Ok(interreduce(&eqs, MonomialOrder::Lex)?)
}

/// The c₂ = c₃ family: u is forced to 1/2 and one weight becomes the free
/// parameter r1.
pub fn solve_order4_equal_c(cs: &ConditionSet) -> Result<FamilySolution, SolverError> {
    let ib = equal_c_basis(cs)?;
    let ring = equal_c_ring();
    let mut st = Staged::new(&ib)?;
    let u = vars(&ring, &["u"])?;
    let b = vars(&ring, &["b1", "b2", "b3", "b4"])?;
    let a32 = vars(&ring, &["a32"])?;
    let a4 = vars(&ring, &["a42", "a43"])?;
    let later_b = [a32.clone(), a4.clone()].concat();
    st.stage("node", &u, &[b.clone(), later_b.clone()].concat())?;
    let r1 = var(&ring, "r1")?;
    st.stage_with_retry("weights", &b, &later_b, r1)?;
    st.stage("a32", &a32, &a4)?;
    st.stage("last row", &a4, &[])?;
    derive_first_column(&mut st, &ring, "u", "u")?;
    st.finish(vec![r1])
}

/// Roots of a polynomial of degree ≤ 2 in `x` over the rational functions
/// in the remaining variables.
fn quadratic_roots(p: &MultiPoly, x: usize) -> Result<Vec<RationalFunction>, SolverError> {
    let co = p.coefficients_in(x);
    let rf = |q: &MultiPoly| RationalFunction::from_poly(q.clone());
    match co.len() {
        2 => Ok(vec![(-&rf(&co[0])).checked_div(&rf(&co[1]))?]),
        3 => {
            let (c0, c1, c2) = (&co[0], &co[1], &co[2]);
            let four = MultiPoly::constant(p.ring(), Rational::from_integer(4.into()));
            let disc = &(c1 * c1) - &(&(&four * c2) * c0);
            let root = disc
                .sqrt_exact()
                .ok_or_else(|| SolverError::NoRationalRoot(disc.to_string()))?;
            let two_a = rf(&c2.scale(&Rational::from_integer(2.into())));
            let mut out = Vec::new();
            for sign in [-1, 1] {
                let num = &(-c1) + &root.scale(&Rational::from_integer(sign.into()));
                let r = rf(&num).checked_div(&two_a)?;
                if !out.contains(&r) {
                    out.push(r);
                }
            }
            Ok(out)
        }
        _ => Err(SolverError::Unsupported(format!(
            "expected a quadratic, found degree {}",
            co.len().saturating_sub(1)
        ))),
    }
}

/// Fourth-order families from the autonomous conditions (row-sum applied,
/// c₄ = 1). The coupling equations are not jointly linear: a₄₂, a₄₃ are
/// solved in terms of a₃₂ from the two linear equations, and the remaining
/// equation is a quadratic in a₃₂. One family is returned per root.
pub fn solve_order4_autonomous(cs: &ConditionSet) -> Result<Vec<FamilySolution>, SolverError> {
    check_order4(cs)?;
    let ring = cs.ring.clone();
    let eqs = set_c4(&cs.equations(), &ring)?;
    let b = vars(&ring, &["b1", "b2", "b3", "b4"])?;
    let a_all = vars(&ring, &["a32", "a42", "a43"])?;
    let a4 = vars(&ring, &["a42", "a43"])?;
    let a32 = var(&ring, "a32")?;

    let mut st = Staged::new(&eqs)?;
    let c4 = var(&ring, "c4")?;
    st.solved.push((c4, RationalFunction::constant(&ring, Rational::one())));
    st.stage("weights", &b, &a_all)?;

    // Jointly linear coupling equations determine a42, a43 given a32.
    let linear: Vec<usize> = (0..st.eqs.len())
        .filter(|&i| !st.used[i] && !st.eqs[i].is_zero() && Staged::is_linear_in(&st.eqs[i], &a_all))
        .collect();
    let system: Vec<MultiPoly> = linear.iter().map(|&i| st.eqs[i].clone()).collect();
    let partial = linear_solve(&system, &a4).map_err(|source| SolverError::Stage {
        stage: "couplings".into(),
        source,
    })?;
    for i in linear {
        st.used[i] = true;
    }
    st.assign(partial.values)?;

    let remaining: Vec<usize> = (0..st.eqs.len())
        .filter(|&i| !st.used[i] && !st.eqs[i].is_zero())
        .collect();
    let [q] = remaining.as_slice() else {
        return Err(SolverError::Unsupported(format!(
            "expected one remaining equation, found {}",
            remaining.len()
        )));
    };
    let q = *q;
    let roots = quadratic_roots(&st.eqs[q], a32)?;
    st.used[q] = true;

    let mut out = Vec::new();
    for root in roots {
        let mut branch = Staged {
            ring: st.ring.clone(),
            eqs: st.eqs.clone(),
            source: st.source.clone(),
            used: st.used.clone(),
            solved: st.solved.clone(),
        };
        branch.assign(vec![(a32, root)])?;
        derive_first_column(&mut branch, &ring, "c2", "c3")?;
        out.push(branch.finish(vars(&ring, &["c2", "c3"])?)?);
    }
    Ok(out)
}

/// Solve an affine system for `unknowns`. When the system leaves some
/// unknowns undetermined, trailing candidates are bound in turn to the
/// parameters listed in `free`.
pub fn parametrize(eqs: &[MultiPoly], unknowns: &[usize], free: &[usize]) -> Result<FamilySolution, SolverError> {
    if let Some(f) = free.iter().find(|f| unknowns.contains(f)) {
        return Err(SolverError::Unsupported(format!(
            "variable index {f} is both free and unknown"
        )));
    }
    let mut st = Staged::new(eqs)?;
    let mut remaining = unknowns.to_vec();
    let mut params = free.iter().copied();
    loop {
        match st.stage("parametrize", &remaining, &[]) {
            Ok(()) => break,
            Err(SolverError::Stage {
                source: SolveError::Underdetermined { candidates, rank, unknowns },
                stage,
            }) => {
                let Some(param) = params.next() else {
                    return Err(SolverError::Stage {
                        stage,
                        source: SolveError::Underdetermined { candidates, rank, unknowns },
                    });
                };
                let last = candidates.last().expect("rank deficiency has a candidate");
                let chosen = var(&st.ring, last)?;
                let value = RationalFunction::from_poly(MultiPoly::var_index(&st.ring, param));
                st.assign(vec![(chosen, value)])?;
                remaining.retain(|&u| u != chosen);
            }
            Err(e) => return Err(e),
        }
    }
    let mut appearing: Vec<usize> = st
        .solved
        .iter()
        .flat_map(|(_, v)| v.variables())
        .filter(|v| !unknowns.contains(v))
        .collect();
    appearing.sort_unstable();
    appearing.dedup();
    st.finish(appearing)
}
