use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::rational::{format_rational, Rational};

/// The partial derivative ∂^{dx+dy} f / ∂x^{dx} ∂y^{dy}, rendered `F`, `Fx`,
/// `Fyy`, `Fxxy`, …
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DerivSymbol {
    pub dx: u32,
    pub dy: u32,
}

impl DerivSymbol {
    pub const F: DerivSymbol = DerivSymbol { dx: 0, dy: 0 };

    pub fn new(dx: u32, dy: u32) -> Self {
        DerivSymbol { dx, dy }
    }

    pub fn order(&self) -> u32 {
        self.dx + self.dy
    }

    pub fn d_dx(self) -> Self {
        DerivSymbol::new(self.dx + 1, self.dy)
    }

    pub fn d_dy(self) -> Self {
        DerivSymbol::new(self.dx, self.dy + 1)
    }
}

/// Higher derivatives sort first; among equal orders, more x-derivatives
/// first. This is the order in which factors are printed.
impl Ord for DerivSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .order()
            .cmp(&self.order())
            .then(other.dx.cmp(&self.dx))
    }
}

impl PartialOrd for DerivSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DerivSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("F")?;
        for _ in 0..self.dx {
            f.write_str("x")?;
        }
        for _ in 0..self.dy {
            f.write_str("y")?;
        }
        Ok(())
    }
}

impl FromStr for DerivSymbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let rest = s
            .strip_prefix('F')
            .ok_or_else(|| format!("`{s}` is not a derivative symbol"))?;
        let dx = rest.chars().take_while(|&c| c == 'x').count();
        let tail = &rest[dx..];
        if !tail.chars().all(|c| c == 'y') {
            return Err(format!("`{s}` is not a derivative symbol"));
        }
        Ok(DerivSymbol::new(dx as u32, tail.len() as u32))
    }
}

/// A product of derivative symbols with positive exponents (an elementary
/// differential of the scalar equation), kept sorted so equal products
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DiffMonomial(Vec<(DerivSymbol, u32)>);

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial(Vec::new())
    }

    pub fn symbol(s: DerivSymbol) -> Self {
        DiffMonomial(vec![(s, 1)])
    }

    pub fn from_factors<I: IntoIterator<Item = (DerivSymbol, u32)>>(factors: I) -> Self {
        let mut m = DiffMonomial::one();
        for (s, e) in factors {
            m.mul_symbol(s, e);
        }
        m
    }

    pub fn factors(&self) -> &[(DerivSymbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: DerivSymbol) -> u32 {
        self.0
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Number of factors counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Total number of differentiations. In the expansion of the step
    /// increment this is the power of h the monomial appears with.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(s, e)| s.order() * e).sum()
    }

    /// Whether any factor carries an x-derivative.
    pub fn has_x(&self) -> bool {
        self.0.iter().any(|(s, _)| s.dx > 0)
    }

    fn mul_symbol(&mut self, s: DerivSymbol, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.binary_search_by(|(t, _)| t.cmp(&s)) {
            Ok(i) => self.0[i].1 += e,
            Err(i) => self.0.insert(i, (s, e)),
        }
    }

    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut out = self.clone();
        for &(s, e) in &other.0 {
            out.mul_symbol(s, e);
        }
        out
    }

    /// Remove one factor `s`; `None` if it does not occur.
    fn without_one(&self, s: DerivSymbol) -> Option<DiffMonomial> {
        let i = self.0.iter().position(|(t, _)| *t == s)?;
        let mut out = self.clone();
        if out.0[i].1 == 1 {
            out.0.remove(i);
        } else {
            out.0[i].1 -= 1;
        }
        Some(out)
    }

    /// Evaluate with numeric values for the partial derivatives.
    pub fn eval_f64(&self, partial: &dyn Fn(DerivSymbol) -> f64) -> f64 {
        self.0
            .iter()
            .map(|&(s, e)| partial(s).powi(e as i32))
            .product()
    }
}

impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .weight()
            .cmp(&self.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{s}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for DiffMonomial {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "1" {
            return Ok(DiffMonomial::one());
        }
        let mut m = DiffMonomial::one();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (sym, exp) = match factor.split_once('^') {
                Some((a, b)) => (a, b.parse::<u32>().map_err(|e| format!("`{factor}`: {e}"))?),
                None => (factor, 1),
            };
            m.mul_symbol(sym.parse()?, exp);
        }
        Ok(m)
    }
}

/// A polynomial in derivative symbols with rational coefficients, used for
/// the total derivatives F₁, F₂, …
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffPoly(BTreeMap<DiffMonomial, Rational>);

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly(BTreeMap::new())
    }

    pub fn monomial(m: DiffMonomial, c: Rational) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn symbol(s: DerivSymbol) -> Self {
        DiffPoly::monomial(DiffMonomial::symbol(s), Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &DiffMonomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: DiffMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Drop every monomial containing an x-derivative.
    pub fn autonomous_part(&self) -> DiffPoly {
        DiffPoly(
            self.0
                .iter()
                .filter(|(m, _)| !m.has_x())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Total derivative along solutions of y' = f(x, y):
    /// D ∂^{i,j}f = ∂^{i+1,j}f + ∂^{i,j+1}f · F, extended by the product
    /// rule. In autonomous mode the x-part is omitted.
    pub fn total_derivative(&self, autonomous: bool) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.0 {
            for &(s, e) in m.factors() {
                let rest = m.without_one(s).expect("factor present");
                let ce = c * Rational::from_integer(e.into());
                if !autonomous {
                    let mut t = rest.clone();
                    t.mul_symbol(s.d_dx(), 1);
                    out.add_term(t, ce.clone());
                }
                let mut t = rest;
                t.mul_symbol(s.d_dy(), 1);
                t.mul_symbol(DerivSymbol::F, 1);
                out.add_term(t, ce);
            }
        }
        out
    }

    pub fn eval_f64(&self, partial: &dyn Fn(DerivSymbol) -> f64) -> f64 {
        self.0
            .iter()
            .map(|(m, c)| crate::algebra::rational::to_f64(c) * m.eval_f64(partial))
            .sum()
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl FromStr for DiffPoly {
    type Err = String;

    /// Parses sums of `coef*monomial` terms such as `Fyy*F^2 + 2*Fy^2*F`.
    /// Parentheses are not supported.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = DiffPoly::zero();
        let normalized = s.replace(" - ", " + -").replace('−', "-");
        for raw in normalized.split(" + ") {
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let (neg, body) = match raw.strip_prefix('-') {
                Some(b) => (true, b.trim()),
                None => (false, raw),
            };
            let (coef, mono) = match body.split_once('*') {
                Some((head, tail)) if !head.starts_with('F') => {
                    (crate::algebra::parse_rational(head).map_err(|e| e.to_string())?, tail)
                }
                _ if !body.starts_with('F') => {
                    (crate::algebra::parse_rational(body).map_err(|e| e.to_string())?, "1")
                }
                _ => (Rational::one(), body),
            };
            let coef = if neg { -coef } else { coef };
            out.add_term(mono.parse()?, coef);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_names_round_trip() {
        for (dx, dy, name) in [(0, 0, "F"), (1, 0, "Fx"), (0, 2, "Fyy"), (2, 1, "Fxxy")] {
            let s = DerivSymbol::new(dx, dy);
            assert_eq!(s.to_string(), name);
            assert_eq!(name.parse::<DerivSymbol>().unwrap(), s);
        }
        assert!("Fyx".parse::<DerivSymbol>().is_err());
        assert!("G".parse::<DerivSymbol>().is_err());
    }

    #[test]
    fn monomials_are_canonical() {
        let a: DiffMonomial = "F^2*Fyy*Fy".parse().unwrap();
        let b: DiffMonomial = "Fy*F*Fyy*F".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "Fyy*Fy*F^2");
        assert_eq!(a.weight(), 3);
    }

    #[test]
    fn first_total_derivatives() {
        let f = DiffPoly::symbol(DerivSymbol::F);
        let f1 = f.total_derivative(false);
        assert_eq!(f1, "Fy*F + Fx".parse().unwrap());
        let f2 = f1.total_derivative(false);
        let expected: DiffPoly = "Fyy*F^2 + 2*Fxy*F + Fy^2*F + Fy*Fx + Fxx".parse().unwrap();
        assert_eq!(f2, expected);
        assert_eq!(f2.autonomous_part(), f1.total_derivative(true).autonomous_part());
    }
}
