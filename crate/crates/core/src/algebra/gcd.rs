//! Multivariate polynomial gcd over the rationals by the primitive
//! remainder sequence, recursing on the highest-index variable.

use super::{MonomialOrder, MultiPoly};

/// Greatest common divisor, monic under lex. The gcd of two nonzero
/// constants is 1, and `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let ring = a.ring();
    if a.is_zero() {
        return b.monic(MonomialOrder::Lex);
    }
    if b.is_zero() {
        return a.monic(MonomialOrder::Lex);
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(ring);
    }
    let x = a
        .variables()
        .into_iter()
        .chain(b.variables())
        .max()
        .expect("non-constant");
    match (a.contains_var(x), b.contains_var(x)) {
        (true, false) => return poly_gcd(&content(a, x), b),
        (false, true) => return poly_gcd(a, &content(b, x)),
        _ => {}
    }
    let ca = content(a, x);
    let cb = content(b, x);
    let c = poly_gcd(&ca, &cb);
    let mut f = divide_out(a, &ca).primitive(MonomialOrder::Lex);
    let mut g = divide_out(b, &cb).primitive(MonomialOrder::Lex);
    if f.degree_in(x) < g.degree_in(x) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_remainder(&f, &g, x);
        f = g;
        if r.is_zero() {
            g = r;
        } else if !r.contains_var(x) {
            return c;
        } else {
            g = primitive_part(&r, x).primitive(MonomialOrder::Lex);
        }
    }
    (&c * &primitive_part(&f, x)).monic(MonomialOrder::Lex)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &MultiPoly, x: usize) -> MultiPoly {
    p.coefficients_in(x)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(MultiPoly::zero(p.ring()), |acc, c| poly_gcd(&acc, c))
}

fn primitive_part(p: &MultiPoly, x: usize) -> MultiPoly {
    divide_out(p, &content(p, x))
}

fn divide_out(p: &MultiPoly, d: &MultiPoly) -> MultiPoly {
    p.exact_div(d).expect("divisor is a factor")
}

fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, x: usize) -> MultiPoly {
    let dg = g.degree_in(x);
    let lc_g = g.coefficients_in(x).pop().expect("nonzero");
    let xv = MultiPoly::var_index(f.ring(), x);
    let mut r = f.clone();
    while !r.is_zero() && r.contains_var(x) && r.degree_in(x) >= dg {
        let dr = r.degree_in(x);
        let lc_r = r.coefficients_in(x).pop().expect("nonzero");
        let shift = &lc_r * &xv.pow(dr - dg);
        r = (&(&lc_g * &r) - &(&shift * g)).primitive(MonomialOrder::Lex);
    }
    r
}
