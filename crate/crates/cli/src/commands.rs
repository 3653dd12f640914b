use std::io::Read;

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        writeln!($out, $($arg)*).expect("writing to a String cannot fail");
    }};
}

macro_rules! out {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        write!($out, $($arg)*).expect("writing to a String cannot fail");
    }};
}
use std::path::Path;

use anyhow::{anyhow, Context};
use serde_json::json;

use rkderive::algebra::{
    buchberger, interreduce, parse_equations, parse_poly, parse_rational, poly_reduce,
    MonomialOrder, MultiPoly, Rational, VarTable,
};
use rkderive::conditions::{
    enumerate_trees, generate_conditions, tree_conditions, ConditionSet, Origin,
};
use rkderive::harness::{estimate_order, problem};
use rkderive::series::Mode;
use rkderive::solver::{
    solve_order3_family, solve_order4_autonomous, solve_order4_equal_c, solve_order4_family,
    FamilySolution,
};
use rkderive::tableau::{
    self, embed_lower_order, from_text_form, lookup, to_latex, to_text_form, ButcherTableau,
    TableauError,
};

use crate::{input_error, Format, OrderKind, Outcome, Scenario, TableauSource};

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(input_error)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn rational_arg(name: &str, value: &str) -> anyhow::Result<Rational> {
    parse_rational(value).map_err(|e| input_error(format!("--{name}: {e}")))
}

fn tableau_error(e: TableauError) -> anyhow::Error {
    match e {
        TableauError::Parse { .. } | TableauError::Invalid(_) | TableauError::UnknownName(_) => {
            input_error(e)
        }
        other => other.into(),
    }
}

fn load_tableau(source: &TableauSource) -> anyhow::Result<ButcherTableau> {
    match (&source.file, &source.name) {
        (_, Some(name)) => lookup(name).map_err(tableau_error),
        (Some(file), None) => {
            let text = read_input(file)?;
            from_text_form(&text)
                .map_err(tableau_error)
                .with_context(|| file.display().to_string())
        }
        (None, None) => Err(input_error("a tableau file or --name is required")),
    }
}

fn condition_lines(cs: &ConditionSet) -> Vec<String> {
    cs.conditions.iter().map(|c| c.normalized().to_string()).collect()
}

fn origins_json(origins: &[Origin]) -> Vec<String> {
    origins.iter().map(|o| o.to_string()).collect()
}

pub fn conditions(out: &mut String, s: usize, p: u32, autonomous: bool, row_sum: bool, format: Format) -> anyhow::Result<Outcome> {
    let mode = if autonomous { Mode::Autonomous } else { Mode::General };
    let cs = generate_conditions(s, p, mode, row_sum).map_err(input_error)?;
    match format {
        Format::Text => {
            outln!(out, 
                "# {} conditions: s = {s}, p = {p}, {mode}{}",
                cs.len(),
                if row_sum { ", row-sum applied" } else { "" }
            );
            for line in condition_lines(&cs) {
                outln!(out, "{line}");
            }
        }
        Format::Machine => {
            let list: Vec<_> = cs
                .conditions
                .iter()
                .map(|c| json!({ "equation": c.normalized().to_string(), "origins": origins_json(&c.origins) }))
                .collect();
            let doc = json!({
                "stages": s,
                "order": p,
                "mode": mode,
                "row_sum": row_sum,
                "variables": cs.ring.names(),
                "conditions": list,
            });
            outln!(out, "{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Latex => return Err(input_error("conditions support --format text or machine")),
    }
    Ok(Outcome::Pass)
}

pub fn trees(out: &mut String, p: u32, stages: Option<usize>) -> anyhow::Result<Outcome> {
    let s = stages.unwrap_or(p as usize);
    let cs = tree_conditions(s, p).map_err(input_error)?;
    outln!(out, "{:<6} {:<6} {:<12} condition", "order", "gamma", "tree");
    for (tree, cond) in enumerate_trees(p as usize).iter().zip(&cs.conditions) {
        let rhs = MultiPoly::constant(&cs.ring, cond.equation.constant_term());
        let lhs = &rhs - &cond.equation;
        outln!(out, 
            "{:<6} {:<6} {:<12} {lhs} = {}",
            tree.order(),
            tree.density(),
            tree.to_string(),
            rhs
        );
    }
    Ok(Outcome::Pass)
}

/// Variable order used when none is given: a's, b's, s's, c's, then the
/// rest, each group by numeric suffix.
fn default_var_order(mut names: Vec<String>) -> Vec<String> {
    fn key(n: &str) -> (u8, Vec<u64>, String) {
        let class = match n.chars().next() {
            Some('a') => 0,
            Some('b') => 1,
            Some('s') => 2,
            Some('c') => 3,
            _ => 4,
        };
        let nums = n
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().unwrap_or(u64::MAX))
            .collect();
        (class, nums, n.to_string())
    }
    names.sort_by_key(|n| key(n));
    names.dedup();
    names
}

pub fn reduce(
    out: &mut String,
    file: &Path,
    var_order: Option<Vec<String>>,
    subst: &[String],
    normal_forms: &[String],
    ordering: OrderKind,
) -> anyhow::Result<Outcome> {
    use rkderive::algebra::text::identifiers;
    let text = read_input(file)?;
    let mut pairs = Vec::new();
    for item in subst {
        let (name, expr) = item
            .split_once('=')
            .ok_or_else(|| input_error(format!("--subst expects NAME=EXPR, got `{item}`")))?;
        pairs.push((name.trim().to_string(), expr.trim().to_string()));
    }
    let names = match var_order {
        Some(v) => v,
        None => {
            let mut found = Vec::new();
            let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
            found.extend(identifiers(&body).map_err(input_error)?);
            for (n, e) in &pairs {
                found.push(n.clone());
                found.extend(identifiers(e).map_err(input_error)?);
            }
            for nf in normal_forms {
                found.extend(identifiers(nf).map_err(input_error)?);
            }
            default_var_order(found)
        }
    };
    let ring = VarTable::new(names).map_err(input_error)?;
    let eqs = parse_equations(&text, &ring).map_err(input_error)?;
    let mut assignments = Vec::new();
    for (n, e) in &pairs {
        let idx = ring
            .index_of(n)
            .ok_or_else(|| input_error(format!("unknown variable `{n}` in --subst")))?;
        assignments.push((idx, parse_poly(e, &ring).map_err(input_error)?));
    }
    let eqs: Vec<MultiPoly> = eqs
        .iter()
        .map(|e| e.subs(&assignments))
        .filter(|e| !e.is_zero())
        .collect();
    let ord = match ordering {
        OrderKind::Lex => MonomialOrder::Lex,
        OrderKind::Grlex => MonomialOrder::GradedLex,
    };
    let basis = interreduce(&eqs, ord)?;
    outln!(out, "# {} equations in, {} basis polynomials", eqs.len(), basis.len());
    for b in &basis {
        outln!(out, "{b}");
    }
    if !normal_forms.is_empty() {
        let gb = buchberger(&basis, MonomialOrder::GradedLex)?;
        for nf in normal_forms {
            let p = parse_poly(nf, &ring).map_err(input_error)?;
            let r = poly_reduce(&p, &gb, MonomialOrder::GradedLex)?;
            outln!(out, "normal form of {p}: {r}");
        }
    }
    Ok(Outcome::Pass)
}

fn print_family(out: &mut String, fam: &FamilySolution) {
    outln!(out, "free: {}", fam.free_names().join(", "));
    let excluded: Vec<String> = fam.excluded.iter().map(|e| e.to_string()).collect();
    outln!(out, "excluded: {}", if excluded.is_empty() { "none".into() } else { excluded.join("; ") });
    let mut solved: Vec<_> = fam.solved.iter().collect();
    solved.sort_by_key(|(i, _)| *i);
    for (i, v) in solved {
        outln!(out, "{} = {}", fam.ring.name(*i), v);
    }
    outln!(out, "residual equations verified: {}", fam.residuals.len());
}

/// Tableau from a fully specialized family. `alias` maps node names that
/// the family stores under another variable.
fn tableau_from_family(fam: &FamilySolution, s: usize, alias: &[(&str, &str)]) -> anyhow::Result<ButcherTableau> {
    let get = |name: &str| -> anyhow::Result<Rational> {
        let target = alias.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).unwrap_or(name);
        if let Ok(fixed) = parse_rational(target) {
            return Ok(fixed);
        }
        fam.constant(target)
            .ok_or_else(|| anyhow!("{name} is not determined by the specialization"))
    };
    let mut c = vec![Rational::from_integer(0.into())];
    for i in 2..=s {
        c.push(get(&format!("c{i}"))?);
    }
    let mut a = Vec::new();
    for i in 1..=s {
        let mut row = Vec::new();
        for j in 1..i {
            row.push(get(&format!("a{i}{j}"))?);
        }
        a.push(row);
    }
    let b = (1..=s).map(|i| get(&format!("b{i}"))).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(ButcherTableau::new(c, a, b)?)
}

fn show_tableau(t: &ButcherTableau, format: Format) -> String {
    match format {
        Format::Text => t.to_plain(),
        Format::Latex => to_latex(t),
        Format::Machine => to_text_form(t),
    }
}

pub fn solve_family(
    out: &mut String,
    scenario: Scenario,
    c2: Option<String>,
    c3: Option<String>,
    r1: Option<String>,
    format: Format,
) -> anyhow::Result<Outcome> {
    let (families, s, alias): (Vec<FamilySolution>, usize, Vec<(&str, &str)>) = match scenario {
        Scenario::Order3 => {
            let cs = generate_conditions(3, 3, Mode::General, false)?;
            (vec![solve_order3_family(&cs)?], 3, vec![])
        }
        Scenario::Order4 => {
            let cs = generate_conditions(4, 4, Mode::General, true)?;
            (vec![solve_order4_family(&cs)?], 4, vec![])
        }
        Scenario::Order4EqualC => {
            let cs = generate_conditions(4, 4, Mode::General, true)?;
            (vec![solve_order4_equal_c(&cs)?], 4, vec![("c2", "u"), ("c3", "u"), ("c4", "1")])
        }
        Scenario::Order4Autonomous => {
            let cs = generate_conditions(4, 4, Mode::Autonomous, true)?;
            (solve_order4_autonomous(&cs)?, 4, vec![])
        }
    };
    let mut values: Vec<(&str, Rational)> = Vec::new();
    for (name, v) in [("c2", &c2), ("c3", &c3), ("r1", &r1)] {
        if let Some(v) = v {
            values.push((name, rational_arg(name, v)?));
        }
    }
    for (k, fam) in families.iter().enumerate() {
        if families.len() > 1 && format != Format::Machine {
            outln!(out, "## branch {}", k + 1);
        }
        if values.is_empty() {
            match format {
                Format::Machine => outln!(out, "{}", serde_json::to_string_pretty(&fam.to_json())?),
                _ => print_family(out, fam),
            }
            continue;
        }
        let special = fam.specialize(&values).map_err(input_error)?;
        if !special.free.is_empty() {
            return Err(input_error(format!(
                "values needed for: {}",
                special.free_names().join(", ")
            )));
        }
        let mut t = tableau_from_family(&special, s, &alias)?;
        if let Ok(p) = t.attained_order(6) {
            t = t.with_order(p);
        }
        match format {
            Format::Text => {
                let mut solved: Vec<_> = special.solved.iter().collect();
                solved.sort_by_key(|(i, _)| *i);
                for (i, v) in solved {
                    outln!(out, "{} = {}", special.ring.name(*i), v);
                }
                out!(out, "{}", t.to_plain());
                outln!(out, "exact order: {}", t.order.unwrap_or(0));
            }
            other => out!(out, "{}", show_tableau(&t, other)),
        }
    }
    Ok(Outcome::Pass)
}

pub fn verify(out: &mut String, order: u32, source: &TableauSource, bhat: bool) -> anyhow::Result<Outcome> {
    let mut t = load_tableau(source)?;
    if bhat {
        t = t
            .hat_method()
            .ok_or_else(|| input_error("the tableau has no second weight row"))?;
    }
    let report = t.verify_order(order)?;
    let name = t.label.clone().unwrap_or_else(|| "tableau".into());
    if report.satisfied() {
        outln!(out, 
            "{name}: order {order} satisfied ({} conditions)",
            report.residuals.len()
        );
        return Ok(Outcome::Pass);
    }
    outln!(out, "{name}: order {order} not satisfied");
    for v in &report.row_sum {
        outln!(out, 
            "  row sum violated at stage {}: c = {}, sum of a = {}",
            v.stage, v.c, v.row_sum
        );
    }
    for r in report.failures() {
        outln!(out, "  tree {:<12} residual {}", r.label, r.residual);
    }
    Ok(Outcome::Fail)
}

pub fn embed(out: &mut String, source: &TableauSource, r1: Option<String>, format: Format) -> anyhow::Result<Outcome> {
    let base = load_tableau(source)?;
    let fam = embed_lower_order(&base).map_err(tableau_error)?;
    let Some(r1) = r1 else {
        match format {
            Format::Machine => outln!(out, "{}", serde_json::to_string_pretty(&fam.family.to_json())?),
            _ => {
                outln!(out, "# second weights of order {} for the extended method", fam.order);
                print_family(out, &fam.family);
            }
        }
        return Ok(Outcome::Pass);
    };
    let value = rational_arg("r1", &r1)?;
    let pair = fam.specialize(&[("r1", value)]).map_err(tableau_error)?;
    out!(out, "{}", show_tableau(&pair, format));
    let hat = pair.hat_method().expect("pair has second weights");
    let ok = hat.verify_order(fam.order)?.satisfied();
    if format == Format::Text {
        outln!(out, 
            "second weights: order {} {}",
            fam.order,
            if ok { "satisfied" } else { "NOT satisfied" }
        );
    }
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

pub fn order_test(out: &mut String, source: &TableauSource, name: &str, h0: &str, levels: usize, bhat: bool) -> anyhow::Result<Outcome> {
    let mut t = load_tableau(source)?;
    if bhat {
        t = t
            .hat_method()
            .ok_or_else(|| input_error("the tableau has no second weight row"))?;
    }
    let prob = problem(name).map_err(input_error)?;
    let h = match parse_rational(h0) {
        Ok(r) => rkderive::algebra::rational::to_f64(&r),
        Err(_) => h0
            .parse::<f64>()
            .map_err(|_| input_error(format!("--h0: invalid step `{h0}`")))?,
    };
    let report = estimate_order(&t, &prob, h, levels).map_err(|e| match e {
        rkderive::harness::HarnessError::Diverged { .. } => anyhow::Error::from(e),
        other => input_error(other),
    })?;
    out!(out, "{}", report.to_table());
    let ok = match (report.nominal, report.observed) {
        (Some(p), Some(o)) => (o - p as f64).abs() <= 0.3,
        _ => true,
    };
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

pub fn catalogue(out: &mut String, name: Option<String>, format: Format) -> anyhow::Result<Outcome> {
    let entries = tableau::catalogue();
    if let Some(name) = name {
        let t = lookup(&name).map_err(tableau_error)?;
        out!(out, "{}", show_tableau(&t, format));
        return Ok(Outcome::Pass);
    }
    match format {
        Format::Text => {
            for e in &entries {
                outln!(out, 
                    "{:<18} {:<3} {}",
                    e.name,
                    e.tableau.order.unwrap_or(0),
                    e.tableau.label.as_deref().unwrap_or("")
                );
            }
        }
        Format::Latex => {
            for e in &entries {
                outln!(out, "% {}", e.name);
                out!(out, "{}", to_latex(&e.tableau));
            }
        }
        Format::Machine => {
            let docs: Vec<serde_json::Value> = entries
                .iter()
                .map(|e| {
                    let v: serde_json::Value = serde_json::from_str(&to_text_form(&e.tableau)).expect("valid json");
                    json!({ "name": e.name, "tableau": v })
                })
                .collect();
            outln!(out, "{}", serde_json::to_string_pretty(&docs)?);
        }
    }
    Ok(Outcome::Pass)
}
