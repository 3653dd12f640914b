//! Multivariate division, Buchberger's algorithm and interreduction.
//!
//! Internally polynomials are held as maps from order keys (see
//! [`MonomialOrder::key`]) to coefficients, so the leading term is always
//! the last map entry and monomial products are elementwise key sums.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::monomial::MonomialOrder;
use super::poly::MultiPoly;
use super::rational::Rational;
use super::vars::Ring;
use super::AlgebraError;

type Key = Vec<u32>;
type Terms = BTreeMap<Key, Rational>;

#[derive(Clone)]
struct Elem {
    lead: Key,
    /// Coefficient of `lead`; 1 for monic basis elements.
    lc: Rational,
    /// Remaining terms, leading term excluded.
    tail: Vec<(Key, Rational)>,
}

impl Elem {
    fn from_terms(mut t: Terms) -> Option<Elem> {
        let (lead, lc) = t.pop_last()?;
        Some(Elem {
            lead,
            lc,
            tail: t.into_iter().rev().collect(),
        })
    }

    fn monic(mut self) -> Elem {
        if !self.lc.is_one() {
            let inv = self.lc.recip();
            for (_, c) in &mut self.tail {
                *c *= &inv;
            }
            self.lc = Rational::one();
        }
        self
    }

    fn to_terms(&self) -> Terms {
        let mut t: Terms = self.tail.iter().cloned().collect();
        t.insert(self.lead.clone(), self.lc.clone());
        t
    }
}

fn key_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn key_sub(b: &[u32], a: &[u32]) -> Key {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn key_add(a: &[u32], b: &[u32]) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Sums and differences of graded keys keep the degree slot consistent,
/// but the lcm does not, so the degree is recomputed.
fn key_lcm(a: &[u32], b: &[u32], ord: MonomialOrder) -> Key {
    let mut k: Key = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
    if ord == MonomialOrder::GradedLex {
        k[0] = k[1..].iter().sum();
    }
    k
}

/// The graded key stores the degree in slot 0, which must not count as a
/// variable when testing coprimality.
fn key_coprime(a: &[u32], b: &[u32], ord: MonomialOrder) -> bool {
    let skip = usize::from(ord == MonomialOrder::GradedLex);
    a[skip..]
        .iter()
        .zip(&b[skip..])
        .all(|(x, y)| *x == 0 || *y == 0)
}

fn to_terms(p: &MultiPoly, ord: MonomialOrder) -> Terms {
    p.terms().map(|(m, c)| (ord.key(m), c.clone())).collect()
}

fn from_terms(ring: &Ring, t: &Terms, ord: MonomialOrder) -> MultiPoly {
    MultiPoly::from_terms(ring, t.iter().map(|(k, c)| (ord.unkey(k), c.clone())))
}

/// `p -= coef * x^shift * g` (the leading term of `g` is included).
fn sub_multiple(p: &mut Terms, coef: &Rational, shift: &[u32], g: &Elem) {
    use std::collections::btree_map::Entry;
    for (k, c) in std::iter::once((&g.lead, &g.lc)).chain(g.tail.iter().map(|(k, c)| (k, c))) {
        let prod = key_add(k, shift);
        let delta = coef * c;
        match p.entry(prod) {
            Entry::Vacant(v) => {
                v.insert(-delta);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() -= delta;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// Full normal form of `p` modulo `basis` (every term is reduced).
fn normal_form(mut p: Terms, basis: &[&Elem]) -> Terms {
    let mut rem = Terms::new();
    while let Some((k, c)) = p.pop_last() {
        match basis.iter().find(|g| key_divides(&g.lead, &k)) {
            Some(g) => {
                let shift = key_sub(&k, &g.lead);
                let coef = &c / &g.lc;
                // The leading term cancels exactly; only the tail is subtracted.
                for (tk, tc) in &g.tail {
                    let prod = key_add(tk, &shift);
                    let delta = &coef * tc;
                    let e = p.entry(prod.clone()).or_insert_with(Rational::zero);
                    *e -= delta;
                    if e.is_zero() {
                        p.remove(&prod);
                    }
                }
            }
            None => {
                rem.insert(k, c);
            }
        }
    }
    rem
}

fn check_rings(polys: &[&MultiPoly]) -> Result<Option<Ring>, AlgebraError> {
    let Some(first) = polys.first() else {
        return Ok(None);
    };
    for p in &polys[1..] {
        first.check_ring(p)?;
    }
    Ok(Some(first.ring().clone()))
}

/// Normal form of `p` after multivariate division by `basis`.
///
/// When `basis` is a Gröbner basis the result is the unique normal form;
/// otherwise it is a remainder whose terms are not divisible by any leading
/// term of `basis`.
pub fn poly_reduce(
    p: &MultiPoly,
    basis: &[MultiPoly],
    ord: MonomialOrder,
) -> Result<MultiPoly, AlgebraError> {
    for b in basis {
        p.check_ring(b)?;
    }
    let elems: Vec<Elem> = basis
        .iter()
        .filter_map(|b| Elem::from_terms(to_terms(b, ord)))
        .collect();
    let refs: Vec<&Elem> = elems.iter().collect();
    Ok(from_terms(p.ring(), &normal_form(to_terms(p, ord), &refs), ord))
}

/// Division with quotients: returns `(q, r)` with `p = Σ q[i]·basis[i] + r`.
pub fn divide(
    p: &MultiPoly,
    basis: &[MultiPoly],
    ord: MonomialOrder,
) -> Result<(Vec<MultiPoly>, MultiPoly), AlgebraError> {
    for b in basis {
        p.check_ring(b)?;
    }
    let ring = p.ring();
    let elems: Vec<Option<Elem>> = basis.iter().map(|b| Elem::from_terms(to_terms(b, ord))).collect();
    let mut quotients: Vec<Terms> = vec![Terms::new(); basis.len()];
    let mut rem = Terms::new();
    let mut work = to_terms(p, ord);
    while let Some((k, c)) = work.pop_last() {
        let hit = elems
            .iter()
            .enumerate()
            .find_map(|(i, g)| g.as_ref().filter(|g| key_divides(&g.lead, &k)).map(|g| (i, g)));
        match hit {
            Some((i, g)) => {
                let shift = key_sub(&k, &g.lead);
                let coef = &c / &g.lc;
                work.insert(k, c);
                sub_multiple(&mut work, &coef, &shift, g);
                *quotients[i].entry(shift).or_insert_with(Rational::zero) += coef;
            }
            None => {
                rem.insert(k, c);
            }
        }
    }
    let qs = quotients.iter().map(|t| from_terms(ring, t, ord)).collect();
    Ok((qs, from_terms(ring, &rem, ord)))
}

/// S-polynomial of `f` and `g`.
pub fn s_polynomial(
    f: &MultiPoly,
    g: &MultiPoly,
    ord: MonomialOrder,
) -> Result<MultiPoly, AlgebraError> {
    f.check_ring(g)?;
    let (Some(ef), Some(eg)) = (
        Elem::from_terms(to_terms(f, ord)),
        Elem::from_terms(to_terms(g, ord)),
    ) else {
        return Ok(MultiPoly::zero(f.ring()));
    };
    Ok(from_terms(f.ring(), &spoly(&ef, &eg, ord), ord))
}

fn spoly(f: &Elem, g: &Elem, ord: MonomialOrder) -> Terms {
    let l = key_lcm(&f.lead, &g.lead, ord);
    let mut out = Terms::new();
    let sf = key_sub(&l, &f.lead);
    let sg = key_sub(&l, &g.lead);
    let cf = f.lc.recip();
    let cg = g.lc.recip();
    for (k, c) in &f.tail {
        out.insert(key_add(k, &sf), c * &cf);
    }
    for (k, c) in &g.tail {
        *out.entry(key_add(k, &sg)).or_insert_with(Rational::zero) -= c * &cg;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Key,
}

/// Gröbner basis of the ideal generated by `gens`.
///
/// Buchberger's algorithm with the normal selection strategy and the
/// Gebauer–Möller installation of Buchberger's two criteria. The result is
/// monic but not necessarily reduced; see [`interreduce`].
pub fn buchberger(gens: &[MultiPoly], ord: MonomialOrder) -> Result<Vec<MultiPoly>, AlgebraError> {
    let refs: Vec<&MultiPoly> = gens.iter().collect();
    let Some(ring) = check_rings(&refs)? else {
        return Ok(Vec::new());
    };
    let mut basis: Vec<Elem> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let active_refs: Vec<&Elem> = basis
            .iter()
            .zip(&active)
            .filter_map(|(e, &a)| a.then_some(e))
            .collect();
        let h = normal_form(to_terms(g, ord), &active_refs);
        if let Some(e) = Elem::from_terms(h) {
            basis.push(e.monic());
            active.push(false);
            update(&basis, &mut active, &mut pairs, basis.len() - 1, ord);
        }
    }

    while !pairs.is_empty() {
        let pos = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.lcm.cmp(&b.lcm).then((a.j, a.i).cmp(&(b.j, b.i))))
            .map(|(i, _)| i)
            .expect("nonempty");
        let pair = pairs.swap_remove(pos);
        let s = spoly(&basis[pair.i], &basis[pair.j], ord);
        let active_refs: Vec<&Elem> = basis
            .iter()
            .zip(&active)
            .filter_map(|(e, &a)| a.then_some(e))
            .collect();
        let h = normal_form(s, &active_refs);
        if let Some(e) = Elem::from_terms(h) {
            basis.push(e.monic());
            active.push(false);
            update(&basis, &mut active, &mut pairs, basis.len() - 1, ord);
        }
    }

    Ok(basis
        .iter()
        .zip(&active)
        .filter(|(_, &a)| a)
        .map(|(e, _)| from_terms(&ring, &e.to_terms(), ord))
        .collect())
}

fn update(basis: &[Elem], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize, ord: MonomialOrder) {
    let lh = &basis[h].lead;
    let candidates: Vec<usize> = (0..h).filter(|&g| active[g]).collect();
    let lcm_with = |g: usize| key_lcm(lh, &basis[g].lead, ord);

    let mut kept: Vec<usize> = Vec::new();
    for (idx, &g) in candidates.iter().enumerate() {
        let l = lcm_with(g);
        let coprime = key_coprime(lh, &basis[g].lead, ord);
        let dominated = candidates[idx + 1..]
            .iter()
            .chain(kept.iter())
            .any(|&g2| key_divides(&lcm_with(g2), &l));
        if coprime || !dominated {
            kept.push(g);
        }
    }
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|&g| !key_coprime(lh, &basis[g].lead, ord))
        .map(|g| Pair {
            i: g,
            j: h,
            lcm: lcm_with(g),
        })
        .collect();

    pairs.retain(|p| {
        let l1h = key_lcm(&basis[p.i].lead, lh, ord);
        let l2h = key_lcm(&basis[p.j].lead, lh, ord);
        !(key_divides(lh, &p.lcm) && l1h != p.lcm && l2h != p.lcm)
    });
    pairs.extend(new_pairs);

    for g in 0..h {
        if active[g] && key_divides(lh, &basis[g].lead) {
            active[g] = false;
        }
    }
    active[h] = true;
}

/// Mutual reduction of a generating set.
///
/// Every element is made monic and fully reduced modulo the others until
/// no term of any element is divisible by another element's leading term;
/// zeros are dropped. Applied to a Gröbner basis this yields the unique
/// reduced Gröbner basis. Applied to an arbitrary generating set it yields
/// an interreduced set generating the same ideal, which need not be a
/// Gröbner basis. Output is sorted by decreasing leading monomial.
pub fn interreduce(basis: &[MultiPoly], ord: MonomialOrder) -> Result<Vec<MultiPoly>, AlgebraError> {
    let refs: Vec<&MultiPoly> = basis.iter().collect();
    let Some(ring) = check_rings(&refs)? else {
        return Ok(Vec::new());
    };
    let mut elems: Vec<Elem> = basis
        .iter()
        .filter_map(|p| Elem::from_terms(to_terms(p, ord)).map(Elem::monic))
        .collect();
    loop {
        elems.sort_by(|a, b| b.lead.cmp(&a.lead));
        let mut changed = false;
        let mut i = 0;
        while i < elems.len() {
            let others: Vec<&Elem> = elems
                .iter()
                .enumerate()
                .filter_map(|(j, e)| (j != i).then_some(e))
                .collect();
            let reducible = std::iter::once(&elems[i].lead)
                .chain(elems[i].tail.iter().map(|(k, _)| k))
                .any(|k| others.iter().any(|g| key_divides(&g.lead, k)));
            if reducible {
                let nf = normal_form(elems[i].to_terms(), &others);
                changed = true;
                match Elem::from_terms(nf) {
                    Some(e) => {
                        elems[i] = e.monic();
                        i += 1;
                    }
                    None => {
                        elems.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    elems.sort_by(|a, b| b.lead.cmp(&a.lead));
    Ok(elems
        .iter()
        .map(|e| from_terms(&ring, &e.to_terms(), ord))
        .collect())
}

/// The reduced Gröbner basis: [`buchberger`] followed by [`interreduce`].
pub fn reduced_groebner_basis(
    gens: &[MultiPoly],
    ord: MonomialOrder,
) -> Result<Vec<MultiPoly>, AlgebraError> {
    interreduce(&buchberger(gens, ord)?, ord)
}

/// Whether `p` lies in the ideal whose Gröbner basis is `gb`.
pub fn ideal_contains(gb: &[MultiPoly], p: &MultiPoly, ord: MonomialOrder) -> Result<bool, AlgebraError> {
    Ok(poly_reduce(p, gb, ord)?.is_zero())
}

/// Whether two generating sets generate the same ideal: every element of
/// each reduces to zero modulo a Gröbner basis of the other.
pub fn same_ideal(
    left: &[MultiPoly],
    right: &[MultiPoly],
    ord: MonomialOrder,
) -> Result<bool, AlgebraError> {
    let gl = buchberger(left, ord)?;
    let gr = buchberger(right, ord)?;
    for p in left {
        if !ideal_contains(&gr, p, ord)? {
            return Ok(false);
        }
    }
    for p in right {
        if !ideal_contains(&gl, p, ord)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[MultiPoly], ord: MonomialOrder) -> Result<bool, AlgebraError> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], ord)?;
            if !poly_reduce(&s, basis, ord)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
