use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use super::{ButcherTableau, TableauError};
use crate::algebra::{format_rational, parse_rational, Rational};

/// A rational entry written as a JSON string such as `"-3/8"`.
struct Exact(Rational);

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exact;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string such as \"1/3\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                parse_rational(v).map(Exact).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exact, E> {
                Err(E::custom(format!(
                    "bare number {v} is not allowed; write entries as rational strings such as \"1/3\""
                )))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Err(E::custom(format!("bare number {v} is not allowed; write it as \"{v}\"")))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Err(E::custom(format!("bare number {v} is not allowed; write it as \"{v}\"")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    s: usize,
    c: Vec<Exact>,
    a: Vec<Vec<Exact>>,
    b: Vec<Exact>,
    #[serde(default)]
    bhat: Option<Vec<Exact>>,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    order: Option<u32>,
}

fn unwrap(v: Vec<Exact>) -> Vec<Rational> {
    v.into_iter().map(|e| e.0).collect()
}

fn json_list(v: &[Rational]) -> String {
    let items: Vec<String> = v.iter().map(|r| format!("\"{}\"", format_rational(r))).collect();
    format!("[{}]", items.join(", "))
}

/// Structured text form: a JSON object whose numeric entries are rational
/// strings.
pub fn to_text_form(t: &ButcherTableau) -> String {
    let mut lines = Vec::new();
    if let Some(l) = &t.label {
        lines.push(format!("  \"label\": {}", serde_json::Value::String(l.clone())));
    }
    if let Some(p) = t.order {
        lines.push(format!("  \"order\": {p}"));
    }
    lines.push(format!("  \"s\": {}", t.stages()));
    lines.push(format!("  \"c\": {}", json_list(&t.c)));
    let rows: Vec<String> = t.a.iter().map(|row| format!("    {}", json_list(row))).collect();
    lines.push(format!("  \"a\": [\n{}\n  ]", rows.join(",\n")));
    lines.push(format!("  \"b\": {}", json_list(&t.b)));
    if let Some(bh) = &t.bhat {
        lines.push(format!("  \"bhat\": {}", json_list(bh)));
    }
    format!("{{\n{}\n}}\n", lines.join(",\n"))
}

pub fn from_text_form(doc: &str) -> Result<ButcherTableau, TableauError> {
    let d: Document = serde_json::from_str(doc).map_err(|e| {
        let text = e.to_string();
        let message = match text.rfind(" at line ") {
            Some(i) => text[..i].to_string(),
            None => text,
        };
        TableauError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    })?;
    if d.b.len() != d.s {
        return Err(TableauError::Invalid(format!(
            "s = {} but b has {} entries",
            d.s,
            d.b.len()
        )));
    }
    let mut t = ButcherTableau::new(unwrap(d.c), d.a.into_iter().map(unwrap).collect(), unwrap(d.b))?;
    t.label = d.label;
    t.order = d.order;
    if let Some(bh) = d.bhat {
        t = t.with_bhat(unwrap(bh))?;
    }
    Ok(t)
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let sign = if r.numer() < &0.into() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
}

/// Butcher array as a LaTeX `array`: node column, lower-triangular
/// couplings, a rule, then the weight row(s).
pub fn to_latex(t: &ButcherTableau) -> String {
    let s = t.stages();
    let mut out = format!("\\begin{{array}}{{c|{}}}\n", "c".repeat(s));
    for (i, row) in t.a.iter().enumerate() {
        let mut cells = vec![latex_rational(&t.c[i])];
        cells.extend(row.iter().map(latex_rational));
        cells.resize(s + 1, String::new());
        out.push_str(&format!("{} \\\\\n", cells.join(" & ")));
    }
    out.push_str("\\hline\n");
    let weights = |w: &[Rational]| {
        let mut cells = vec![String::new()];
        cells.extend(w.iter().map(latex_rational));
        format!("{} \\\\\n", cells.join(" & "))
    };
    out.push_str(&weights(&t.b));
    if let Some(bh) = &t.bhat {
        out.push_str(&weights(bh));
    }
    out.push_str("\\end{array}\n");
    out
}
