use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::rational::Rational;
use super::vars::{same_ring, Ring};
use super::AlgebraError;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map keyed by exponent vector and never store a zero
/// coefficient, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.len()), c);
        p
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, AlgebraError> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(ring, i))
    }

    pub fn var_index(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.len(), i, 1), Rational::one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ring.len(), "monomial arity does not match ring");
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.len(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ring.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        match ord {
            MonomialOrder::Lex => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0)),
        }
    }

    pub fn leading_monomial(&self, ord: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub fn leading_coeff(&self, ord: MonomialOrder) -> Option<&Rational> {
        self.leading_term(ord).map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Joint degree in a set of variables.
    pub fn degree_in_set(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exp(v)).sum())
            .max()
            .unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| u.then_some(i))
            .collect()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: MonomialOrder) -> Self {
        match self.leading_coeff(ord) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer polynomial with coprime coefficients and positive leading
    /// coefficient under `ord`: the canonical representative of the line
    /// `{λ·p : λ ∈ ℚ*}`.
    pub fn primitive(&self, ord: MonomialOrder) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let scaled = self.scale(&Rational::from_integer(den));
        let mut content = BigInt::zero();
        for c in scaled.terms.values() {
            content = content.gcd(c.numer());
        }
        let lc_negative = scaled.leading_coeff(ord).map(|c| c.is_negative()).unwrap_or(false);
        let mut factor = Rational::new(BigInt::one(), content);
        if lc_negative {
            factor = -factor;
        }
        scaled.scale(&factor)
    }

    /// The polynomial `r` with `r² = self` and positive leading coefficient
    /// under lex, if one exists over ℚ.
    pub fn sqrt_exact(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let ord = MonomialOrder::Lex;
        let (m0, c0) = self.leading_term(ord)?;
        if m0.exponents().iter().any(|e| e % 2 == 1) {
            return None;
        }
        let root_c = rational_sqrt(c0)?;
        let root_m = Monomial::from_exponents(m0.exponents().iter().map(|e| e / 2).collect());
        let max_deg = self.total_degree() / 2;
        let two_lead = &root_c * Rational::from_integer(2.into());
        let mut r = MultiPoly::term(&self.ring, root_m.clone(), root_c);
        loop {
            let rem = self - &(&r * &r);
            let Some((mr, cr)) = rem.leading_term(ord) else {
                return Some(r);
            };
            let tm = root_m.quotient_of(mr)?;
            if tm >= root_m || tm.degree() > max_deg {
                return None;
            }
            let tc = cr / &two_lead;
            r.add_term(tm, tc);
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`;
    /// entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            out[k].add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Substitutes `images[i]` (a polynomial over `target`) for variable `i`.
    pub fn compose(&self, target: &Ring, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.ring.len());
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|img| {
                assert!(same_ring(img.ring(), target), "image over a different ring");
                vec![MultiPoly::one(target)]
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out += &t;
        }
        out
    }

    /// Substitutes polynomials (over the same ring) for some variables.
    pub fn subs(&self, assignments: &[(usize, MultiPoly)]) -> Self {
        let mut images: Vec<MultiPoly> = (0..self.ring.len())
            .map(|i| MultiPoly::var_index(&self.ring, i))
            .collect();
        for (v, p) in assignments {
            assert!(same_ring(p.ring(), &self.ring), "substitution over a different ring");
            images[*v] = p.clone();
        }
        self.compose(&self.ring.clone(), &images)
    }

    /// Substitutes by variable name.
    pub fn subs_named(&self, assignments: &[(&str, MultiPoly)]) -> Result<Self, AlgebraError> {
        let mut resolved = Vec::with_capacity(assignments.len());
        for (name, p) in assignments {
            let i = self
                .ring
                .index_of(name)
                .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
            resolved.push((i, p.clone()));
        }
        Ok(self.subs(&resolved))
    }

    /// Moves the polynomial into another ring, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Self, AlgebraError> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let used = self.variables();
        let mut map = vec![0usize; self.ring.len()];
        for i in used {
            let name = self.ring.name(i);
            map[i] = target
                .index_of(name)
                .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        }
        Ok(MultiPoly {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.remap(&map, target.len()), c.clone()))
                .collect(),
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .fold(super::rational::to_f64(c), |acc, (i, &e)| {
                        acc * point[i].powi(e as i32)
                    })
            })
            .sum()
    }

    /// Exact quotient `self / divisor`, failing unless the division leaves no
    /// remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let (mut q, r) = super::groebner::divide(self, std::slice::from_ref(divisor), MonomialOrder::Lex)?;
        if !r.is_zero() {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(q.pop().expect("one divisor"))
    }

    pub(crate) fn check_ring(&self, other: &MultiPoly) -> Result<(), AlgebraError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    fn assert_ring(&self, other: &MultiPoly) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials over different rings: [{}] vs [{}]",
            self.ring,
            other.ring
        );
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_ring(other);
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c;
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_impl(rhs)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_impl(&rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.assert_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.assert_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

fn rational_sqrt(c: &Rational) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| Rational::new(n, d))
}
