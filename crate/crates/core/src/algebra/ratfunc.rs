use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::poly::MultiPoly;
use super::rational::Rational;
use super::vars::Ring;
use super::AlgebraError;

/// A quotient of two polynomials over the same ring.
///
/// No polynomial gcd is taken. Constant denominators are absorbed into the
/// numerator, other denominators are kept monic, and exact divisibility of
/// the numerator by the denominator is detected. Equality is decided by
/// cross-multiplication, so it is exact regardless of the representation.
#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        num.check_ring(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.ring());
        RationalFunction { num: p, den }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(ring, c))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_poly(MultiPoly::zero(ring))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if let Some(c) = den.as_constant() {
            let ring = num.ring().clone();
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(&ring),
            };
        }
        if num.is_zero() {
            return Self::zero(num.ring());
        }
        if let Ok(q) = num.exact_div(&den) {
            return Self::from_poly(q);
        }
        let lc = den
            .leading_coeff(MonomialOrder::Lex)
            .cloned()
            .unwrap_or_else(Rational::one);
        let inv = lc.recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.num.ring()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_constant().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(MultiPoly::as_constant)
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Cancel the polynomial gcd of numerator and denominator.
    pub fn reduced(&self) -> Self {
        if self.den.is_constant() {
            return self.clone();
        }
        let g = super::gcd::poly_gcd(&self.num, &self.den);
        if g.is_constant() {
            return self.clone();
        }
        let num = self.num.exact_div(&g).expect("gcd divides the numerator");
        let den = self.den.exact_div(&g).expect("gcd divides the denominator");
        Self::normalized(num, den)
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.recip()?)
    }

    /// Value at a point, or `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Substitute rational functions for variables of `self`.
    pub fn substitute(&self, assignments: &[(usize, RationalFunction)]) -> Result<Self, AlgebraError> {
        let n = substitute_into(&self.num, assignments)?;
        let d = substitute_into(&self.den, assignments)?;
        n.checked_div(&d)
    }
}

/// Substitute rational functions for variables of a polynomial.
///
/// Assignments sharing a denominator are grouped, and each term is
/// homogenized against the largest combined degree of its group, so the
/// result is a single fraction whose denominator is a product of powers of
/// the distinct denominators.
pub fn substitute_into(
    p: &MultiPoly,
    assignments: &[(usize, RationalFunction)],
) -> Result<RationalFunction, AlgebraError> {
    let ring = p.ring().clone();
    for (_, v) in assignments {
        p.check_ring(&v.num)?;
    }
    // Group variables by denominator.
    let mut groups: Vec<(MultiPoly, Vec<usize>)> = Vec::new();
    let mut image: Vec<Option<(usize, &MultiPoly)>> = vec![None; ring.len()];
    for (var, v) in assignments {
        let g = match groups.iter().position(|(d, _)| *d == v.den) {
            Some(g) => g,
            None => {
                groups.push((v.den.clone(), Vec::new()));
                groups.len() - 1
            }
        };
        groups[g].1.push(*var);
        image[*var] = Some((g, &v.num));
    }
    let group_deg: Vec<u32> = groups.iter().map(|(_, vars)| p.degree_in_set(vars)).collect();

    let mut pow_cache: std::collections::HashMap<(usize, u32), MultiPoly> = Default::default();
    let mut den_cache: std::collections::HashMap<(usize, u32), MultiPoly> = Default::default();
    let mut total = MultiPoly::zero(&ring);
    for (m, c) in p.terms() {
        let mut kept = Monomial::one(ring.len());
        let mut used = vec![0u32; groups.len()];
        let mut factor = MultiPoly::constant(&ring, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            match image[i] {
                Some((g, num)) => {
                    used[g] += e;
                    let pw = pow_cache.entry((i, e)).or_insert_with(|| num.pow(e));
                    factor = &factor * pw;
                }
                None => kept = kept.with_exp(i, e),
            }
        }
        for (g, (den, _)) in groups.iter().enumerate() {
            let k = group_deg[g] - used[g];
            if k > 0 {
                let pw = den_cache.entry((g, k)).or_insert_with(|| den.pow(k));
                factor = &factor * pw;
            }
        }
        total += &factor.mul_term(&kept, &Rational::one());
    }
    let mut den = MultiPoly::one(&ring);
    for (g, (d, _)) in groups.iter().enumerate() {
        den = &den * &d.pow(group_deg[g]);
    }
    RationalFunction::new(total, den)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MultiPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        let den = self.den.to_string();
        if self.den.num_terms() > 1 || den.contains('*') {
            write!(f, "{}/({den})", wrap(&self.num))
        } else {
            write!(f, "{}/{den}", wrap(&self.num))
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, VarTable};

    fn rf(r: &Ring, n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(parse_poly(n, r).unwrap(), parse_poly(d, r).unwrap()).unwrap()
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = VarTable::new(["x"]).unwrap();
        let err = RationalFunction::new(MultiPoly::one(&r), MultiPoly::zero(&r)).unwrap_err();
        assert_eq!(err, AlgebraError::ZeroDenominator);
    }

    #[test]
    fn cross_multiplied_equality() {
        let r = VarTable::new(["x", "y"]).unwrap();
        assert_eq!(rf(&r, "x^2 - y^2", "x*y - y^2"), rf(&r, "x + y", "y"));
        assert_ne!(rf(&r, "x", "y"), rf(&r, "y", "x"));
        assert_eq!(rf(&r, "2*x", "4").to_string(), "1/2*x");
        assert_eq!(rf(&r, "x^2 - 1", "x - 1").to_string(), "x + 1");
    }

    #[test]
    fn field_operations() {
        let r = VarTable::new(["x"]).unwrap();
        let a = rf(&r, "1", "x");
        let b = rf(&r, "1", "x + 1");
        assert_eq!(&a - &b, rf(&r, "1", "x^2 + x"));
        assert_eq!(&(&a * &b).recip().unwrap(), &rf(&r, "x^2 + x", "1"));
        assert_eq!(a.eval(&[rat(2, 1)]), Some(rat(1, 2)));
        assert_eq!(a.eval(&[rat(0, 1)]), None);
    }

    #[test]
    fn substitution_shares_denominators() {
        let r = VarTable::new(["x", "y", "t"]).unwrap();
        let p = parse_poly("x*y + x + 1", &r).unwrap();
        let xs = [
            (0, rf(&r, "1", "t")),
            (1, rf(&r, "t - 1", "t")),
        ];
        let out = substitute_into(&p, &xs).unwrap();
        assert_eq!(out, rf(&r, "t - 1 + t + t^2", "t^2"));
        assert_eq!(out.denominator().to_string(), "t^2");
    }
}
