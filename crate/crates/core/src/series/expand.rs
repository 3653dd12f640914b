use std::collections::BTreeMap;

use num_traits::One;

use super::symbols::{DerivSymbol, DiffMonomial, DiffPoly};
use super::truncated::{SeriesKey, TruncatedSeries};
use super::{Mode, SeriesError};
use crate::algebra::{MultiPoly, Rational, Ring};

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer(k.into()))
}

/// Total derivatives F₁, …, F_{p−1} of f along solutions of y' = f.
pub fn total_derivatives(p: u32, mode: Mode) -> Vec<DiffPoly> {
    let autonomous = mode == Mode::Autonomous;
    let mut out = Vec::new();
    let mut cur = DiffPoly::symbol(DerivSymbol::F);
    for _ in 1..p {
        cur = cur.total_derivative(autonomous);
        out.push(cur.clone());
    }
    out
}

/// The exact step increment (y(x+h) − y(x))/h to order p:
/// F + Σ_{k=1}^{p−1} h^k/(k+1)! · F_k, truncated at h^p.
pub fn taylor_target(ring: &Ring, p: u32, mode: Mode) -> TruncatedSeries {
    let mut t = TruncatedSeries::from_diff_poly(ring, p, 0, &DiffPoly::symbol(DerivSymbol::F), &Rational::one());
    for (k, fk) in total_derivatives(p, mode).iter().enumerate() {
        let k = k as u32 + 1;
        let scale = factorial(k + 1).recip();
        let term = TruncatedSeries::from_diff_poly(ring, p, k, fk, &scale);
        t = t.checked_add(&term).expect("same cutoff");
    }
    t
}

/// Bivariate Taylor polynomial of f about (x, y), of total degree p − 1 in
/// the offsets, evaluated on series offsets.
#[derive(Clone, Copy, Debug)]
pub struct StageTemplate {
    pub order: u32,
    pub mode: Mode,
}

impl StageTemplate {
    pub fn new(order: u32, mode: Mode) -> Self {
        StageTemplate { order, mode }
    }

    /// f(x + a, y + b) as a series. Both offsets must be O(h). In
    /// autonomous mode the x-offset is ignored.
    pub fn apply(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        for off in [a, b] {
            if off.valuation() == Some(0) {
                return Err(SeriesError::OffsetHasConstantTerm);
            }
        }
        let ring = b.ring().clone();
        let cutoff = self.order;
        let deg = self.order.saturating_sub(1);
        let mut a_pows = vec![TruncatedSeries::one(&ring, cutoff)];
        let mut b_pows = vec![TruncatedSeries::one(&ring, cutoff)];
        for k in 1..=deg {
            b_pows.push(b_pows[k as usize - 1].checked_mul(b)?);
            if self.mode == Mode::General {
                a_pows.push(a_pows[k as usize - 1].checked_mul(a)?);
            }
        }
        let mut out = TruncatedSeries::zero(&ring, cutoff);
        let max_m = if self.mode == Mode::General { deg } else { 0 };
        for m in 0..=max_m {
            for n in 0..=deg - m {
                let prod = a_pows[m as usize].checked_mul(&b_pows[n as usize])?;
                if prod.is_zero() {
                    continue;
                }
                let coeff = MultiPoly::constant(&ring, (factorial(m) * factorial(n)).recip());
                let sym = DiffMonomial::symbol(DerivSymbol::new(m, n));
                out = out.checked_add(&prod.mul_term(0, &sym, &coeff))?;
            }
        }
        Ok(out)
    }
}

/// Stage series k₁, …, k_s of an explicit method with coefficient matrix
/// `a` (s×s, zero on and above the diagonal) and nodes `c`:
/// kᵢ = f(x + cᵢh, y + h Σⱼ aᵢⱼkⱼ), each truncated at h^p.
pub fn expand_stages(
    a: &[Vec<MultiPoly>],
    c: &[MultiPoly],
    p: u32,
    mode: Mode,
) -> Result<Vec<TruncatedSeries>, SeriesError> {
    let s = c.len();
    let Some(ring) = c.first().map(|x| x.ring().clone()) else {
        return Ok(Vec::new());
    };
    if a.len() != s || a.iter().any(|row| row.len() != s) {
        return Err(SeriesError::UnsupportedStructure(format!(
            "coefficient matrix must be {s}×{s}"
        )));
    }
    for (i, row) in a.iter().enumerate() {
        for (j, entry) in row.iter().enumerate().skip(i) {
            if !entry.is_zero() {
                return Err(SeriesError::UnsupportedStructure(format!(
                    "entry ({}, {}) is on or above the diagonal; only explicit methods are supported",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let template = StageTemplate::new(p, mode);
    let mut ks: Vec<TruncatedSeries> = Vec::with_capacity(s);
    for i in 0..s {
        let x_off = TruncatedSeries::term(&ring, p, 1, DiffMonomial::one(), c[i].clone());
        let mut y_off = TruncatedSeries::zero(&ring, p);
        for (j, kj) in ks.iter().enumerate() {
            if !a[i][j].is_zero() {
                y_off = y_off.checked_add(&kj.mul_term(1, &DiffMonomial::one(), &a[i][j]))?;
            }
        }
        ks.push(template.apply(&x_off, &y_off)?);
    }
    Ok(ks)
}

/// Σ bᵢkᵢ.
pub fn combine(b: &[MultiPoly], ks: &[TruncatedSeries]) -> Result<TruncatedSeries, SeriesError> {
    let Some(first) = ks.first() else {
        return Err(SeriesError::UnsupportedStructure("no stages".into()));
    };
    if b.len() != ks.len() {
        return Err(SeriesError::UnsupportedStructure(format!(
            "{} weights for {} stages",
            b.len(),
            ks.len()
        )));
    }
    let mut out = TruncatedSeries::zero(first.ring(), first.cutoff());
    for (bi, ki) in b.iter().zip(ks) {
        out = out.checked_add(&ki.scale(bi))?;
    }
    Ok(out)
}

/// Coefficients of T − RK grouped by h-power and elementary differential;
/// zero coefficients are omitted.
pub fn collect_difference(
    t: &TruncatedSeries,
    rk: &TruncatedSeries,
) -> Result<BTreeMap<SeriesKey, MultiPoly>, SeriesError> {
    let d = t.checked_sub(rk)?;
    Ok(d.terms().map(|(k, c)| (k.clone(), c.clone())).collect())
}

