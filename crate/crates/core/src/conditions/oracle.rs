use num_traits::Zero;

use super::{generate_conditions, tree_conditions, ConditionError, ConditionSet};
use crate::algebra::{buchberger, ideal_contains, MonomialOrder, MultiPoly, Rational};
use crate::series::Mode;

/// How one inclusion between the two ideals was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    /// Every generator reduces to zero modulo a Gröbner basis.
    Holds,
    /// These generators have nonzero normal forms.
    FailsByReduction(Vec<MultiPoly>),
    /// At the given point every generator of the larger side vanishes
    /// while this generator does not, so it is not even in the radical.
    FailsAtPoint { point: Vec<Rational>, generator: MultiPoly },
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }
}

#[derive(Clone, Debug)]
pub struct OracleComparison {
    pub direct: ConditionSet,
    pub trees: ConditionSet,
    /// ⟨direct⟩ ⊆ ⟨trees⟩.
    pub direct_in_trees: Inclusion,
    /// ⟨trees⟩ ⊆ ⟨direct⟩.
    pub trees_in_direct: Inclusion,
}

impl OracleComparison {
    pub fn equal(&self) -> bool {
        self.direct_in_trees.holds() && self.trees_in_direct.holds()
    }
}

fn inclusion(
    small: &[MultiPoly],
    large: &[MultiPoly],
    points: &[Vec<Rational>],
) -> Result<Inclusion, ConditionError> {
    for point in points {
        if large.iter().all(|g| g.eval(point).is_zero()) {
            if let Some(g) = small.iter().find(|g| !g.eval(point).is_zero()) {
                return Ok(Inclusion::FailsAtPoint {
                    point: point.clone(),
                    generator: g.clone(),
                });
            }
        }
    }
    let ord = MonomialOrder::GradedLex;
    let gb = buchberger(large, ord)?;
    let mut missing = Vec::new();
    for g in small {
        if !ideal_contains(&gb, g, ord)? {
            missing.push(g.clone());
        }
    }
    Ok(if missing.is_empty() {
        Inclusion::Holds
    } else {
        Inclusion::FailsByReduction(missing)
    })
}

/// Compare the series conditions (row-sum applied) with the rooted-tree
/// conditions as ideals. `points` are optional candidate witnesses in the
/// coefficient ring; one that annihilates a side but not a generator of
/// the other settles that inclusion without a Gröbner basis.
pub fn compare_with_trees(
    s: usize,
    p: u32,
    mode: Mode,
    points: &[Vec<Rational>],
) -> Result<OracleComparison, ConditionError> {
    let direct = generate_conditions(s, p, mode, true)?;
    let trees = tree_conditions(s, p)?;
    let d = direct.equations();
    let t = trees.equations();
    let direct_in_trees = inclusion(&d, &t, points)?;
    let trees_in_direct = inclusion(&t, &d, points)?;
    Ok(OracleComparison {
        direct,
        trees,
        direct_in_trees,
        trees_in_direct,
    })
}
