use num_traits::Zero;

use super::{ButcherTableau, TableauError};
use crate::algebra::{MultiPoly, Rational, Ring, VarTable};
use crate::series::{self, Mode};
use crate::solver::{parametrize, FamilySolution};

/// Family of lower-order second weight rows for a base method extended by
/// one stage whose coupling row equals the base weights.
#[derive(Clone, Debug)]
pub struct EmbeddedFamily {
    pub base: ButcherTableau,
    /// The base method with the extra stage; its weights end in 0.
    pub extended: ButcherTableau,
    /// Order imposed on the second weights.
    pub order: u32,
    pub ring: Ring,
    /// Second-weight variables s1..s(n+1).
    pub hat_vars: Vec<usize>,
    pub equations: Vec<MultiPoly>,
    pub family: FamilySolution,
}

impl EmbeddedFamily {
    /// Fix every free parameter and return the extended tableau with its
    /// second weight row.
    pub fn specialize(&self, values: &[(&str, Rational)]) -> Result<ButcherTableau, TableauError> {
        let fam = self.family.specialize(values)?;
        if !fam.free.is_empty() {
            return Err(TableauError::Invalid(format!(
                "free parameters left unset: {}",
                fam.free_names().join(", ")
            )));
        }
        let bhat = self
            .hat_vars
            .iter()
            .map(|&v| {
                let name = self.ring.name(v);
                fam.constant(name)
                    .ok_or_else(|| TableauError::Invalid(format!("{name} is not a constant")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.extended.clone().with_bhat(bhat)
    }
}

/// Append the stage c = Σbᵢ, aᵢ = b to `base` and solve the autonomous
/// order-(p−1) conditions for the new weight row. Undetermined weights
/// become parameters r1, r2, … (the last weight first).
pub fn embed_lower_order(base: &ButcherTableau) -> Result<EmbeddedFamily, TableauError> {
    let p = base
        .order
        .map(Ok)
        .unwrap_or_else(|| base.attained_order(8))?;
    if p < 2 || !base.verify_order(p)?.satisfied() {
        return Err(TableauError::Invalid(format!(
            "the base method must have verified order at least 2 (nominal order {p})"
        )));
    }
    let s = base.stages();
    let n = s + 1;
    let c_new: Rational = base.b.iter().sum();
    let mut c = base.c.clone();
    c.push(c_new);
    let mut a = base.a.clone();
    a.push(base.b.clone());
    let mut b = base.b.clone();
    b.push(Rational::zero());
    let mut extended = ButcherTableau::new(c, a, b)?.with_order(p);
    if let Some(l) = &base.label {
        extended = extended.with_label(format!("{l} with embedded order {}", p - 1));
    }

    let mut names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    names.extend((1..=n).map(|i| format!("r{i}")));
    let ring = VarTable::new(names).expect("distinct names");
    let konst = |q: &Rational| MultiPoly::constant(&ring, q.clone());
    let a_sym: Vec<Vec<MultiPoly>> = (1..=n)
        .map(|i| (1..=n).map(|j| konst(&extended.a(i, j))).collect())
        .collect();
    let c_sym: Vec<MultiPoly> = extended.c.iter().map(konst).collect();
    let hat: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var_index(&ring, i)).collect();
    let q = p - 1;
    let ks = series::expand_stages(&a_sym, &c_sym, q, Mode::Autonomous).map_err(conditions_error)?;
    let rk = series::combine(&hat, &ks).map_err(conditions_error)?;
    let target = series::taylor_target(&ring, q, Mode::Autonomous);
    let equations: Vec<MultiPoly> = series::collect_difference(&target, &rk)
        .map_err(conditions_error)?
        .into_values()
        .collect();
    let hat_vars: Vec<usize> = (0..n).collect();
    let params: Vec<usize> = (n..2 * n).collect();
    let family = parametrize(&equations, &hat_vars, &params)?;
    Ok(EmbeddedFamily {
        base: base.clone(),
        extended,
        order: q,
        ring,
        hat_vars,
        equations,
        family,
    })
}

fn conditions_error(e: series::SeriesError) -> TableauError {
    TableauError::Conditions(e.into())
}
