//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero only when a criterion that is expected to hold fails.
//! Criteria 8 and 10 contain claims that do not hold mathematically; they
//! are run faithfully and reported, but do not fail the build.

use std::collections::BTreeSet;
use std::process::{Command, Stdio};
use std::io::Write;
use std::time::Instant;

use anyhow::{anyhow, ensure, Context, Result};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rkderive::algebra::{
    parse_poly, rat, same_ideal, MonomialOrder, MultiPoly, Rational, RationalFunction, Ring,
};
use rkderive::conditions::{compare_with_trees, generate_conditions, rk_ring, Inclusion};
use rkderive::harness::{estimate_order, EXP, LINEAR};
use rkderive::series::{total_derivatives, DiffPoly, Mode};
use rkderive::solver::{
    equal_c_basis, equal_c_ring, solve_order3_family, solve_order4_autonomous,
    solve_order4_equal_c, solve_order4_family, FamilySolution,
};
use rkderive::tableau::{embed_lower_order, lookup, ButcherTableau};

const BIN: &str = env!("CARGO_BIN_EXE_rkderive");

const ORDER3_EQUATIONS: [&str; 8] = [
    "-a32^2*b3/2 - a31*a32*b3 - a31^2*b3/2 - a21^2*b2/2 + 1/6",
    "1/6 - a21*a32*b3",
    "-a32*b3*c3 - a31*b3*c3 - a21*b2*c2 + 1/3",
    "-a32*b3 - a31*b3 - a21*b2 + 1/2",
    "-b3 - b2 - b1 + 1",
    "1/6 - a32*b3*c2",
    "-b3*c3^2/2 - b2*c2^2/2 + 1/6",
    "-b3*c3 - b2*c2 + 1/2",
];

const ORDER4_BASIS: [&str; 8] = [
    "a32*a43*b4*c2 - 1/24",
    "a32*b3*c2 + a42*b4*c2 + a43*b4*c3 - 1/6",
    "a42*b4*c2*c3 - a42*b4*c2*c4 + a43*b4*c3^2 - a43*b4*c3*c4 - 1/6*c3 + 1/8",
    "a43*b4*c2*c3 - a43*b4*c3^2 - 1/6*c2 + 1/12",
    "b1 + b2 + b3 + b4 - 1",
    "b2*c2 + b3*c3 + b4*c4 - 1/2",
    "b3*c2*c3 - b3*c3^2 + b4*c2*c4 - b4*c4^2 - 1/2*c2 + 1/3",
    "b4*c2*c3*c4 - b4*c2*c4^2 - b4*c3*c4^2 + b4*c4^3 - 1/2*c2*c3 + 1/3*c2 + 1/3*c3 - 1/4",
];

const EQUAL_C_BASIS: [&str; 7] = [
    "a32*a43 - 1/2",
    "a32*b3 - 1/6",
    "a42 + a43 - 1",
    "b1 - 1/6",
    "b2 + b3 - 2/3",
    "b4 - 1/6",
    "u - 1/2",
];

const AUTONOMOUS_SYSTEM: [&str; 7] = [
    "-1/6*b2*c2^3 - 1/6*b3*c3^3 - 1/6*b4*c4^3 + 1/24",
    "-1/2*a32*b3*c2^2 - 1/2*a42*b4*c2^2 - a32*b3*c2*c3 - 1/2*a43*b4*c3^2 - a42*b4*c2*c4 - a43*b4*c3*c4 + 1/6",
    "-1/2*b2*c2^2 - 1/2*b3*c3^2 - 1/2*b4*c4^2 + 1/6",
    "-a32*a43*b4*c2 + 1/24",
    "-a32*b3*c2 - a42*b4*c2 - a43*b4*c3 + 1/6",
    "-b2*c2 - b3*c3 - b4*c4 + 1/2",
    "-b1 - b2 - b3 - b4 + 1",
];

const AUTONOMOUS_DERIVATIVES: [&str; 3] = [
    "Fy*F",
    "Fyy*F^2 + Fy^2*F",
    "Fyyy*F^3 + 4*Fy*Fyy*F^2 + Fy^3*F",
];

struct Verdict {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Verdict {
    Verdict { pass: false, detail: detail.into() }
}

fn run_cli(args: &[&str], stdin: Option<&str>) -> Result<String> {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .context("spawning the CLI")?;
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes())?;
    }
    drop(child.stdin.take());
    let out = child.wait_with_output()?;
    ensure!(
        out.status.success(),
        "rkderive {} exited with {}: {}",
        args.join(" "),
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(String::from_utf8(out.stdout)?)
}

fn polys_from_output(text: &str, ring: &Ring) -> Result<Vec<MultiPoly>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.contains(':'))
        .map(|l| parse_poly(l, ring).map_err(|e| anyhow!("{l}: {e}")))
        .collect()
}

fn monic_set(polys: &[MultiPoly]) -> BTreeSet<String> {
    polys.iter().map(|p| p.monic(MonomialOrder::Lex).to_string()).collect()
}

fn ratfunc(num: &str, den: &str, ring: &Ring) -> Result<RationalFunction> {
    Ok(RationalFunction::new(parse_poly(num, ring)?, parse_poly(den, ring)?)?)
}

/// Compare named family values against closed forms `(name, num, den)`.
fn match_closed_forms(fam: &FamilySolution, forms: &[(&str, &str, &str)]) -> Result<Vec<String>> {
    let mut mismatches = Vec::new();
    for (name, num, den) in forms {
        let expected = ratfunc(num, den, &fam.ring)?;
        match fam.get(name) {
            Some(v) if *v == expected => {}
            Some(v) => mismatches.push(format!("{name} = {v}, expected ({num})/({den})")),
            None => mismatches.push(format!("{name} not solved")),
        }
    }
    Ok(mismatches)
}

fn expect_constants(fam: &FamilySolution, expected: &[(&str, Rational)]) -> Vec<String> {
    expected
        .iter()
        .filter(|(name, v)| fam.constant(name).as_ref() != Some(v))
        .map(|(name, v)| format!("{name} = {:?}, expected {v}", fam.constant(name)))
        .collect()
}

/// Tableau from a fully specialized family in the standard coefficient layout.
fn tableau_from(fam: &FamilySolution, s: usize, fixed: &[(&str, Rational)]) -> Result<ButcherTableau> {
    let value = |name: &str| -> Result<Rational> {
        fixed
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v.clone())
            .or_else(|| fam.constant(name))
            .ok_or_else(|| anyhow!("{name} has no constant value"))
    };
    let mut c = vec![Rational::zero()];
    let mut a = vec![vec![]];
    for i in 2..=s {
        c.push(value(&format!("c{i}"))?);
        a.push((1..i).map(|j| value(&format!("a{i}{j}"))).collect::<Result<_>>()?);
    }
    let b = (1..=s).map(|i| value(&format!("b{i}"))).collect::<Result<_>>()?;
    Ok(ButcherTableau::new(c, a, b)?)
}

fn criterion1() -> Result<Verdict> {
    let out = run_cli(&["conditions", "--stages", "3", "--order", "3"], None)?;
    let ring = rk_ring(3);
    let got = polys_from_output(&out, &ring)?;
    let expected: Vec<MultiPoly> = ORDER3_EQUATIONS
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    if got.len() == 8 && monic_set(&got) == monic_set(&expected) {
        Ok(pass("8 equations, equal to the published list up to scalar multiples"))
    } else {
        Ok(fail(format!("got {} equations: {:?}", got.len(), monic_set(&got))))
    }
}

fn criterion2() -> Result<Verdict> {
    let cs = generate_conditions(3, 3, Mode::General, false)?;
    let fam = solve_order3_family(&cs)?;
    let mut problems = match_closed_forms(
        &fam,
        &[
            ("a21", "c2", "1"),
            ("a31", "3*(c2^2 - c2)*c3 + c3^2", "3*c2^2 - 2*c2"),
            ("a32", "c2*c3 - c3^2", "3*c2^2 - 2*c2"),
            ("b1", "3*(2*c2 - 1)*c3 - 3*c2 + 2", "6*c2*c3"),
            ("b2", "-(3*c3 - 2)", "6*(c2^2 - c2*c3)"),
            ("b3", "3*c2 - 2", "6*(c2*c3 - c3^2)"),
        ],
    )?;
    let c3 = RationalFunction::from_poly(parse_poly("c3", &fam.ring)?);
    let (a31, a32) = (fam.get("a31").unwrap(), fam.get("a32").unwrap());
    if (a31 + a32) != c3 {
        problems.push("a31 + a32 != c3".into());
    }
    let spots = [
        ((-1, 1), (1, 1), [(-1, 1), (7, 5), (-2, 5), (2, 3), (-1, 12), (5, 12)]),
        ((1, 2), (1, 1), [(1, 2), (-1, 1), (2, 1), (1, 6), (2, 3), (1, 6)]),
        ((1, 3), (2, 3), [(1, 3), (0, 1), (2, 3), (1, 4), (0, 1), (3, 4)]),
    ];
    let names = ["a21", "a31", "a32", "b1", "b2", "b3"];
    for (c2, c3, values) in spots {
        let point = fam.specialize(&[("c2", rat(c2.0, c2.1)), ("c3", rat(c3.0, c3.1))])?;
        let expected: Vec<(&str, Rational)> =
            names.iter().zip(values).map(|(n, (p, q))| (*n, rat(p, q))).collect();
        problems.extend(expect_constants(&point, &expected));
    }
    Ok(if problems.is_empty() {
        pass("six closed forms, row sums, and spot values (-1,1), (1/2,1), (1/3,2/3)")
    } else {
        fail(problems.join("; "))
    })
}

fn criterion3() -> Result<Verdict> {
    let generated = run_cli(&["conditions", "--stages", "4", "--order", "4"], None)?;
    let ring = rk_ring(4);
    let count = polys_from_output(&generated, &ring)?.len();
    if count != 19 {
        return Ok(fail(format!("{count} equations generated, expected 19")));
    }
    let reduced = run_cli(
        &[
            "reduce", "-",
            "--subst", "a21=c2",
            "--subst", "a31=c3-a32",
            "--subst", "a41=c4-a42-a43",
            "--normal-form", "c4 - 1",
        ],
        Some(&generated),
    )?;
    let basis = polys_from_output(&reduced, &ring)?;
    let published: Vec<MultiPoly> = ORDER4_BASIS
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let equal = monic_set(&basis) == monic_set(&published)
        || same_ideal(&basis, &published, MonomialOrder::GradedLex)?;
    let normal_form = reduced
        .lines()
        .find_map(|l| l.strip_prefix("normal form of c4 - 1: "))
        .map(str::trim);
    Ok(match (equal, normal_form) {
        (true, Some("0")) => pass(format!(
            "19 equations, {} basis polynomials equal to the published ideal, c4 - 1 reduces to 0",
            basis.len()
        )),
        (eq, nf) => fail(format!("ideal equal: {eq}, normal form of c4 - 1: {nf:?}")),
    })
}

fn order4_forms() -> [(&'static str, &'static str, &'static str); 7] {
    [
        ("b1", "6*c2*c3 - 2*c2 - 2*c3 + 1", "12*c2*c3"),
        ("b2", "2*c3 - 1", "12*(c2 - c3)*(c2 - 1)*c2"),
        ("b3", "-(2*c2 - 1)", "12*(c2 - c3)*(c3 - 1)*c3"),
        ("b4", "6*c2*c3 - 4*c2 - 4*c3 + 3", "12*(c2 - 1)*(c3 - 1)"),
        ("a32", "(c2 - c3)*c3", "2*(2*c2 - 1)*c2"),
        (
            "a42",
            "-(4*c3^2 - c2 - 5*c3 + 2)*(c2 - 1)",
            "2*(6*c2*c3 - 4*c2 - 4*c3 + 3)*(c2 - c3)*c2",
        ),
        (
            "a43",
            "(2*c2 - 1)*(c2 - 1)*(c3 - 1)",
            "(6*c2*c3 - 4*c2 - 4*c3 + 3)*(c2 - c3)*c3",
        ),
    ]
}

fn criterion4() -> Result<Verdict> {
    let cs = generate_conditions(4, 4, Mode::General, true)?;
    let fam = solve_order4_family(&cs)?;
    let mut problems = match_closed_forms(&fam, &order4_forms())?;
    let product = ["a32", "a43", "b4", "c2"].iter().try_fold(
        RationalFunction::constant(&fam.ring, rat(1, 1)),
        |acc, name| -> Result<RationalFunction> {
            let v = match fam.get(name) {
                Some(v) => v.clone(),
                None => RationalFunction::from_poly(parse_poly(name, &fam.ring)?),
            };
            Ok(&acc * &v)
        },
    )?;
    if product.as_constant() != Some(rat(1, 24)) && product.reduced().as_constant() != Some(rat(1, 24)) {
        problems.push(format!("a32*a43*b4*c2 = {product}"));
    }
    let raw = generate_conditions(4, 4, Mode::General, false)?;
    if raw.len() != 19 {
        problems.push(format!("{} raw equations", raw.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut samples = 0;
    while samples < 5 {
        let c2 = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
        let c3 = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
        let Ok(point) = fam.specialize(&[("c2", c2.clone()), ("c3", c3.clone())]) else {
            continue;
        };
        if !point.satisfies(&raw.equations())? {
            problems.push(format!("sample ({c2}, {c3}) does not zero the 19 equations"));
        }
        samples += 1;
    }
    Ok(if problems.is_empty() {
        pass("b and a closed forms, a32*a43*b4*c2 = 1/24, 5 random samples zero all 19 equations")
    } else {
        fail(problems.join("; "))
    })
}

fn criterion5() -> Result<Verdict> {
    let cs = generate_conditions(4, 4, Mode::General, true)?;
    let basis = equal_c_basis(&cs)?;
    let ring = equal_c_ring();
    let published: Vec<MultiPoly> = EQUAL_C_BASIS
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let mut problems = Vec::new();
    if monic_set(&basis) != monic_set(&published) {
        problems.push(format!("basis {:?}", monic_set(&basis)));
    }
    let fam = solve_order4_equal_c(&cs)?;
    problems.extend(match_closed_forms(
        &fam,
        &[
            ("u", "1/2", "1"),
            ("b1", "1/6", "1"),
            ("b2", "r1", "1"),
            ("b3", "2/3 - r1", "1"),
            ("b4", "1/6", "1"),
            ("a32", "1", "2*(2 - 3*r1)"),
            ("a42", "3*r1 - 1", "1"),
            ("a43", "2 - 3*r1", "1"),
        ],
    )?);
    let third = fam.specialize(&[("r1", rat(1, 3))])?;
    let fixed = [("c2", rat(1, 2)), ("c3", rat(1, 2)), ("c4", rat(1, 1))];
    let mut derived = tableau_from(&third, 4, &fixed)?;
    derived.label = None;
    let mut rk4 = lookup("rk4")?;
    rk4.label = None;
    rk4.order = None;
    if derived != rk4 {
        problems.push(format!("r1 = 1/3 gives\n{}", derived.to_plain()));
    }
    Ok(if problems.is_empty() {
        pass("7-element basis, r1 family, r1 = 1/3 is classic RK4")
    } else {
        fail(problems.join("; "))
    })
}

fn criterion6() -> Result<Verdict> {
    let mut problems = Vec::new();
    let derivs = total_derivatives(4, Mode::Autonomous);
    for (k, text) in AUTONOMOUS_DERIVATIVES.iter().enumerate() {
        let expected: DiffPoly = text.parse().map_err(|e| anyhow!("{text}: {e}"))?;
        if derivs.get(k) != Some(&expected) {
            problems.push(format!("F{} = {:?}", k + 1, derivs.get(k).map(ToString::to_string)));
        }
    }
    let cs = generate_conditions(4, 4, Mode::Autonomous, true)?;
    let published: Vec<MultiPoly> = AUTONOMOUS_SYSTEM
        .iter()
        .map(|s| parse_poly(s, &cs.ring))
        .collect::<Result<_, _>>()?;
    if monic_set(&cs.equations()) != monic_set(&published) {
        problems.push(format!("system {:?}", monic_set(&cs.equations())));
    }
    let branches = solve_order4_autonomous(&cs)?;
    let general = solve_order4_family(&generate_conditions(4, 4, Mode::General, true)?)?;
    let names = ["b1", "b2", "b3", "b4", "a32", "a42", "a43", "a21", "a31", "a41", "c4"];
    let same = |fam: &FamilySolution| {
        names.iter().all(|n| match (fam.get(n), general.get(n)) {
            (Some(x), Some(y)) => x.to_string() == y.to_string() || x == y,
            _ => false,
        })
    };
    if !branches.iter().any(same) {
        problems.push(format!("none of {} branches equals the order-4 family", branches.len()));
    }
    Ok(if problems.is_empty() {
        pass(format!(
            "F1-F3 and the 7 equations reproduced; one of {} solution branches equals the order-4 family",
            branches.len()
        ))
    } else {
        fail(problems.join("; "))
    })
}

fn criterion7() -> Result<Verdict> {
    let base = lookup("kutta38")?;
    let fam = embed_lower_order(&base)?;
    let mut problems = match_closed_forms(
        &fam.family,
        &[
            ("s1", "-1/4*r1 + 1/8", "1"),
            ("s2", "3/4*r1 + 3/8", "1"),
            ("s3", "-3/4*r1 + 3/8", "1"),
            ("s4", "-3/4*r1 + 1/8", "1"),
            ("s5", "r1", "1"),
        ],
    )?;
    let cases = [
        (rat(1, 1), [(-1, 8), (9, 8), (-3, 8), (-5, 8), (1, 1)]),
        (rat(1, 6), [(1, 12), (1, 2), (1, 4), (0, 1), (1, 6)]),
    ];
    for (r1, expected) in cases {
        let pair = fam.specialize(&[("r1", r1.clone())])?;
        let want: Vec<Rational> = expected.iter().map(|&(p, q)| rat(p, q)).collect();
        if pair.bhat.as_ref() != Some(&want) {
            problems.push(format!("r1 = {r1}: {:?}", pair.bhat));
        }
        let hat = pair.hat_method().ok_or_else(|| anyhow!("no second weights"))?;
        if !hat.verify_order(3)?.satisfied() {
            problems.push(format!("r1 = {r1}: second weights fail order 3"));
        }
    }
    Ok(if problems.is_empty() {
        pass("affine family, r1 = 1 and r1 = 1/6 vectors, second weights verify to order 3")
    } else {
        fail(problems.join("; "))
    })
}

/// A point of the autonomous order-4 system that violates one tree
/// condition: the spurious branch at c2 = 1/3, c3 = 2/3.
fn autonomous_witness() -> Result<Vec<Rational>> {
    let cs = generate_conditions(4, 4, Mode::Autonomous, true)?;
    let branches = solve_order4_autonomous(&cs)?;
    let fixed = [("c2", rat(1, 3)), ("c3", rat(2, 3))];
    let mut points = Vec::new();
    for b in &branches {
        let fixed_point = b.specialize(&fixed)?;
        let t = tableau_from(&fixed_point, 4, &fixed)?;
        if !t.verify_order(4)?.satisfied() {
            points.push(t.coefficient_point());
        }
    }
    points.into_iter().next().ok_or_else(|| anyhow!("no spurious branch"))
}

fn criterion8() -> Result<Verdict> {
    let witness = autonomous_witness()?;
    let mut parts = Vec::new();
    let mut all = true;
    for (s, p) in [(2usize, 2u32), (3, 3), (4, 4)] {
        for mode in [Mode::General, Mode::Autonomous] {
            let points = if s == 4 { vec![witness.clone()] } else { vec![] };
            let cmp = compare_with_trees(s, p, mode, &points)?;
            let tag = format!("({s},{p}) {mode:?}");
            if cmp.equal() {
                parts.push(format!("{tag} equal"));
            } else {
                all = false;
                let why = match &cmp.trees_in_direct {
                    Inclusion::FailsAtPoint { generator, .. } => {
                        format!("tree condition {generator} is nonzero at a zero of the direct system")
                    }
                    Inclusion::FailsByReduction(g) => format!("{} tree conditions not reduced", g.len()),
                    Inclusion::Holds => "direct side not contained in trees".into(),
                };
                parts.push(format!("{tag} differs ({why})"));
            }
        }
    }
    Ok(Verdict { pass: all, detail: parts.join(", ") })
}

fn criterion9() -> Result<Verdict> {
    let hat = embed_lower_order(&lookup("kutta38")?)?
        .specialize(&[("r1", rat(1, 6))])?
        .hat_method()
        .ok_or_else(|| anyhow!("no second weights"))?;
    let methods = [
        ("rk4", lookup("rk4")?, 4.0),
        ("kutta3", lookup("kutta3")?, 3.0),
        ("heun3", lookup("heun3")?, 3.0),
        ("improved-euler", lookup("improved-euler")?, 2.0),
        ("embedded r1=1/6", hat, 3.0),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for prob in [EXP, LINEAR] {
        for (name, t, nominal) in &methods {
            let report = estimate_order(t, &prob, 0.1, 5)?;
            let observed = report.observed.unwrap_or(f64::NAN);
            ok &= (observed - nominal).abs() <= 0.3;
            parts.push(format!("{}/{name} {observed:.2}", prob.name));
        }
    }
    Ok(Verdict { pass: ok, detail: parts.join(", ") })
}

fn criterion10() -> Result<Verdict> {
    let rk4 = lookup("rk4")?;
    let mut b = rk4.b.clone();
    b[1] += rat(1, 100);
    let perturbed = ButcherTableau::new(rk4.c.clone(), rk4.a.clone(), b)?;
    let rejected = !perturbed.verify_order(2)?.satisfied();
    let observed = estimate_order(&perturbed, &EXP, 0.1, 5)?.observed.unwrap_or(f64::NAN);

    // Same shift taken from b1, so the weights still sum to one.
    let mut b = rk4.b.clone();
    b[1] += rat(1, 100);
    b[0] -= rat(1, 100);
    let compensated = ButcherTableau::new(rk4.c.clone(), rk4.a.clone(), b)?;
    let compensated_order = estimate_order(&compensated, &EXP, 0.1, 5)?.observed.unwrap_or(f64::NAN);

    let mut c = rk4.c.clone();
    c[1] = rat(1, 3);
    let skewed = ButcherTableau::new(c, rk4.a.clone(), rk4.b.clone())?;
    let flagged = !skewed.row_sum_violations().is_empty() && !skewed.verify_order(1)?.satisfied();

    let order_one = (observed - 1.0).abs() <= 0.3;
    Ok(Verdict {
        pass: rejected && order_one && flagged,
        detail: format!(
            "order-2 check rejects b2 + 1/100: {rejected}; observed order {observed:.2} \
             (weights sum to 101/100, so the global error tends to a nonzero constant); \
             with b1 compensated: {compensated_order:.2}; row-sum violation flagged: {flagged}"
        ),
    })
}

fn main() {
    let criteria: [(u32, fn() -> Result<Verdict>, bool); 10] = [
        (1, criterion1, true),
        (2, criterion2, true),
        (3, criterion3, true),
        (4, criterion4, true),
        (5, criterion5, true),
        (6, criterion6, true),
        (7, criterion7, true),
        (8, criterion8, false),
        (9, criterion9, true),
        (10, criterion10, false),
    ];
    let start = Instant::now();
    let mut unexpected = Vec::new();
    for (n, run, required) in criteria {
        let t = Instant::now();
        let verdict = run().unwrap_or_else(|e| fail(format!("error: {e:#}")));
        let status = if verdict.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2}: {status} ({:.1}s) {}",
            t.elapsed().as_secs_f64(),
            verdict.detail
        );
        if required && !verdict.pass {
            unexpected.push(n);
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        eprintln!("required criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
}
