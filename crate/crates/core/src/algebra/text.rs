//! Plain-text canonical form for polynomials.
//!
//! Terms are printed in decreasing lex order as `coef*var^exp*...`, joined
//! by ` + ` / ` - `, with rationals written `p/q`. The parser accepts that
//! form plus parentheses, division by constants, integer powers and an
//! optional `lhs = rhs` equation.

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::rational::Rational;
use super::vars::{is_identifier, Ring, VarTable};
use super::AlgebraError;

pub(crate) fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mono = format_monomial(ring, m);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

pub(crate) fn format_monomial(ring: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.name(i), e)),
        }
    }
    parts.join("*")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '+' => toks.push((Tok::Plus, col)),
            '-' | '−' => toks.push((Tok::Minus, col)),
            '*' | '·' => toks.push((Tok::Star, col)),
            '/' => toks.push((Tok::Slash, col)),
            '^' => toks.push((Tok::Caret, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            '=' => toks.push((Tok::Eq, col)),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                    return Err(AlgebraError::Parse {
                        column: i + 1,
                        message: "floating-point literals are not accepted; use p/q".into(),
                    });
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Num(s.parse().expect("digits")), start + 1));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), start + 1));
                continue;
            }
            other => {
                return Err(AlgebraError::Parse {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Ring,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn equation(&mut self) -> Result<MultiPoly, AlgebraError> {
        let lhs = self.expr()?;
        if self.peek() == Some(&Tok::Eq) {
            self.bump();
            let rhs = self.expr()?;
            self.finish()?;
            return Ok(&lhs - &rhs);
        }
        self.finish()?;
        Ok(lhs)
    }

    fn finish(&self) -> Result<(), AlgebraError> {
        if self.pos < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.col();
                    let d = self.power()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => {
                            return Err(AlgebraError::Parse {
                                column: col,
                                message: "division is only allowed by a nonzero constant".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| AlgebraError::Parse {
                        column: self.col(),
                        message: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected a non-negative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgebraError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(MultiPoly::constant(self.ring, Rational::from_integer(n))),
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => Ok(MultiPoly::var_index(self.ring, i)),
                None => Err(AlgebraError::Parse {
                    column: col,
                    message: format!("unknown variable `{name}`"),
                }),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Minus) => Ok(-self.power()?),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err("expected a number, variable or `(`")
            }
        }
    }
}

/// Parses a polynomial (or `lhs = rhs`, returned as `lhs - rhs`) over `ring`.
pub fn parse_poly(src: &str, ring: &Ring) -> Result<MultiPoly, AlgebraError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse {
            column: 1,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        end_col: src.chars().count() + 1,
    };
    p.equation()
}

/// Identifiers that occur in `src`, in order of first appearance.
pub fn identifiers(src: &str) -> Result<Vec<String>, AlgebraError> {
    let mut out: Vec<String> = Vec::new();
    for (t, _) in tokenize(src)? {
        if let Tok::Ident(name) = t {
            debug_assert!(is_identifier(&name));
            if !out.contains(&name) {
                out.push(name);
            }
        }
    }
    Ok(out)
}

/// Parses an equation list: one polynomial (or equation) per line, `#`
/// starts a comment, blank lines are skipped. Errors carry the line number.
pub fn parse_equations(src: &str, ring: &Ring) -> Result<Vec<MultiPoly>, AlgebraError> {
    let mut out = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let body = strip_comment(line);
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_poly(body, ring).map_err(|e| e.at_line(lineno + 1))?);
    }
    Ok(out)
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> Ring {
        VarTable::new(["a32", "a43", "b4", "c2", "x", "y"]).unwrap()
    }

    #[test]
    fn canonical_form() {
        let r = ring();
        let p = parse_poly("a32*a43*b4*c2 - 1/24", &r).unwrap();
        assert_eq!(p.to_string(), "a32*a43*b4*c2 - 1/24");
        let q = parse_poly("-(x + 2*y)^2/4 + 1/6", &r).unwrap();
        assert_eq!(q.to_string(), "-1/4*x^2 - x*y - y^2 + 1/6");
        assert_eq!(parse_poly("x = 1/2", &r).unwrap().to_string(), "x - 1/2");
        assert_eq!(parse_poly("0", &r).unwrap().to_string(), "0");
        assert_eq!(parse_poly("−x", &r).unwrap().to_string(), "-x");
    }

    #[test]
    fn parse_errors_report_columns() {
        let r = ring();
        match parse_poly("x + 0.5", &r) {
            Err(AlgebraError::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        match parse_poly("x + q", &r) {
            Err(AlgebraError::Parse { column, message }) => {
                assert_eq!(column, 5);
                assert!(message.contains("q"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x/y", &r).is_err());
        assert!(parse_poly("(x", &r).is_err());
        assert!(parse_poly("x y", &r).is_err());
    }

    #[test]
    fn equation_lists() {
        let r = ring();
        let src = "# header\nx - 1   # first\n\ny = x\n";
        let eqs = parse_equations(src, &r).unwrap();
        assert_eq!(eqs.len(), 2);
        assert_eq!(eqs[1].to_string(), "-x + y");
        match parse_equations("x\nx +\n", &r) {
            Err(AlgebraError::AtLine { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(ts in proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 6), -5i64..6, 1i64..5), 0..6)) {
            let r = ring();
            let p = MultiPoly::from_terms(&r, ts.into_iter().map(|(e, n, d)|
                (Monomial::from_exponents(e), super::super::rational::rat(n, d))));
            let back = parse_poly(&p.to_string(), &r).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
