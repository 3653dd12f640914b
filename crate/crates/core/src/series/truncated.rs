use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::symbols::{DiffMonomial, DiffPoly};
use super::SeriesError;
use crate::algebra::{MultiPoly, Rational, Ring};

/// Key of a series term: the power of h and the elementary differential.
pub type SeriesKey = (u32, DiffMonomial);

/// A formal series in h whose coefficients are polynomials in the method
/// coefficients attached to elementary differentials. Every term with
/// h-power at or above `cutoff` is dropped as soon as it is produced.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: Ring,
    cutoff: u32,
    terms: BTreeMap<SeriesKey, MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(ring: &Ring, cutoff: u32) -> Self {
        TruncatedSeries {
            ring: ring.clone(),
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    /// The single term `coeff · h^h_power · mono`.
    pub fn term(ring: &Ring, cutoff: u32, h_power: u32, mono: DiffMonomial, coeff: MultiPoly) -> Self {
        let mut s = Self::zero(ring, cutoff);
        s.add_term(h_power, mono, coeff);
        s
    }

    /// `scale · h^h_power · p` for a polynomial in derivative symbols.
    pub fn from_diff_poly(ring: &Ring, cutoff: u32, h_power: u32, p: &DiffPoly, scale: &Rational) -> Self {
        let mut s = Self::zero(ring, cutoff);
        for (m, c) in p.terms() {
            s.add_term(h_power, m.clone(), MultiPoly::constant(ring, c * scale));
        }
        s
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeriesKey, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, h_power: u32, mono: &DiffMonomial) -> MultiPoly {
        self.terms
            .get(&(h_power, mono.clone()))
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.ring))
    }

    /// Smallest h-power present, if any.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|(h, _)| *h).min()
    }

    pub fn add_term(&mut self, h_power: u32, mono: DiffMonomial, coeff: MultiPoly) {
        if h_power >= self.cutoff || coeff.is_zero() {
            return;
        }
        match self.terms.entry((h_power, mono)) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.cutoff != other.cutoff {
            return Err(SeriesError::CutoffMismatch {
                left: self.cutoff,
                right: other.cutoff,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = self.clone();
        for ((h, m), c) in &other.terms {
            out.add_term(*h, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = Self::zero(&self.ring, self.cutoff);
        for ((h1, m1), c1) in &self.terms {
            for ((h2, m2), c2) in &other.terms {
                if h1 + h2 < self.cutoff {
                    out.add_term(h1 + h2, m1.mul(m2), c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// Multiply every coefficient by a polynomial in the method coefficients.
    pub fn scale(&self, p: &MultiPoly) -> Self {
        let mut out = Self::zero(&self.ring, self.cutoff);
        for ((h, m), c) in &self.terms {
            out.add_term(*h, m.clone(), c * p);
        }
        out
    }

    /// Multiply by `coeff · h^h_shift · mono`.
    pub fn mul_term(&self, h_shift: u32, mono: &DiffMonomial, coeff: &MultiPoly) -> Self {
        let mut out = Self::zero(&self.ring, self.cutoff);
        for ((h, m), c) in &self.terms {
            out.add_term(h + h_shift, m.mul(mono), c * coeff);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Result<Self, SeriesError> {
        let mut out = Self::term(
            &self.ring,
            self.cutoff,
            0,
            DiffMonomial::one(),
            MultiPoly::one(&self.ring),
        );
        for _ in 0..k {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Discard terms of h-power ≥ `q` (for `q` no larger than the cutoff).
    pub fn truncate_to(&self, q: u32) -> Self {
        let cutoff = q.min(self.cutoff);
        TruncatedSeries {
            ring: self.ring.clone(),
            cutoff,
            terms: self
                .terms
                .iter()
                .filter(|((h, _), _)| *h < cutoff)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop every term whose elementary differential contains an x-partial.
    pub fn autonomous_part(&self) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            cutoff: self.cutoff,
            terms: self
                .terms
                .iter()
                .filter(|((_, m), _)| !m.has_x())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Numeric value for given method coefficients, partial derivatives
    /// and step size.
    pub fn eval_f64(&self, point: &[f64], partial: &dyn Fn(super::DerivSymbol) -> f64, h: f64) -> f64 {
        self.terms
            .iter()
            .map(|((k, m), c)| c.eval_f64(point) * h.powi(*k as i32) * m.eval_f64(partial))
            .sum()
    }

    pub(crate) fn one(ring: &Ring, cutoff: u32) -> Self {
        Self::term(ring, cutoff, 0, DiffMonomial::one(), MultiPoly::constant(ring, Rational::one()))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((h, m), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let hpart = match h {
                0 => String::new(),
                1 => "h * ".to_string(),
                k => format!("h^{k} * "),
            };
            write!(f, "{hpart}({c}) * {m}")?;
        }
        Ok(())
    }
}
