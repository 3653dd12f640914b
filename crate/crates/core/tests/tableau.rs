use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rkderive::algebra::{rat, Rational};
use rkderive::conditions::generate_conditions;
use rkderive::series::Mode;
use rkderive::tableau::{
    catalogue, embed_lower_order, from_text_form, lookup, to_latex, to_text_form, ButcherTableau,
    TableauError,
};

fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

#[test]
fn catalogue_entries_reach_their_order() {
    for e in catalogue() {
        let t = &e.tableau;
        let p = t.order.unwrap();
        assert!(t.row_sum_violations().is_empty(), "{}", e.name);
        assert!(t.verify_order(p).unwrap().satisfied(), "{} at {p}", e.name);
        assert!(!t.verify_order(p + 1).unwrap().satisfied(), "{} at {}", e.name, p + 1);
        for q in 1..p {
            assert!(t.verify_order(q).unwrap().satisfied());
        }
    }
}

#[test]
fn catalogue_zeroes_series_conditions() {
    for e in catalogue() {
        let t = &e.tableau;
        let point = t.coefficient_point();
        for mode in [Mode::General, Mode::Autonomous] {
            let cs = generate_conditions(t.stages(), t.order.unwrap(), mode, false).unwrap();
            for eq in cs.equations() {
                assert!(eq.eval(&point).is_zero(), "{} {mode}: {eq}", e.name);
            }
        }
    }
}

#[test]
fn euler_residual_at_order_two() {
    let euler = lookup("euler").unwrap();
    let report = euler.verify_order(2).unwrap();
    let failures: Vec<_> = report.failures().collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].residual, rat(1, 2));
    assert_eq!(failures[0].label, "[t]");
}

#[test]
fn kutta38_weights() {
    let t = lookup("kutta38").unwrap();
    assert_eq!(t.b, rats(&[(1, 8), (3, 8), (3, 8), (1, 8)]));
}

#[test]
fn shape_errors() {
    let bad = ButcherTableau::new(
        rats(&[(0, 1), (1, 1)]),
        vec![rats(&[(0, 1), (1, 1)]), rats(&[(1, 1), (0, 1)])],
        rats(&[(1, 2), (1, 2)]),
    );
    assert!(matches!(bad, Err(TableauError::Invalid(_))));
    let square = ButcherTableau::new(
        rats(&[(0, 1), (1, 1)]),
        vec![rats(&[(0, 1), (0, 1)]), rats(&[(1, 1), (0, 1)])],
        rats(&[(1, 2), (1, 2)]),
    )
    .unwrap();
    assert_eq!(square, lookup("improved-euler").unwrap().with_label_cleared());
}

trait Clear {
    fn with_label_cleared(self) -> Self;
}

impl Clear for ButcherTableau {
    fn with_label_cleared(mut self) -> Self {
        self.label = None;
        self.order = None;
        self
    }
}

#[test]
fn row_sum_violation_is_reported() {
    let t = ButcherTableau::new(
        rats(&[(0, 1), (1, 2)]),
        vec![vec![], rats(&[(1, 3)])],
        rats(&[(0, 1), (1, 1)]),
    )
    .unwrap();
    let v = t.row_sum_violations();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].stage, 2);
    assert!(!t.verify_order(1).unwrap().satisfied());
}

#[test]
fn text_form_round_trips() {
    for e in catalogue() {
        let text = to_text_form(&e.tableau);
        assert_eq!(from_text_form(&text).unwrap(), e.tableau, "{text}");
    }
}

#[test]
fn random_tableaux_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let s = rng.gen_range(1..6);
        let mut q = || rat(rng.gen_range(-20..20), rng.gen_range(1..12));
        let a: Vec<Vec<Rational>> = (0..s).map(|i| (0..i).map(|_| q()).collect()).collect();
        let c = a.iter().map(|row| row.iter().sum()).collect();
        let b = (0..s).map(|_| q()).collect();
        let t = ButcherTableau::new(c, a, b).unwrap();
        assert_eq!(from_text_form(&to_text_form(&t)).unwrap(), t);
    }
}

#[test]
fn floats_are_rejected_with_position() {
    let doc = "{\n  \"s\": 1,\n  \"c\": [\"0\"],\n  \"a\": [[]],\n  \"b\": [1.0]\n}";
    match from_text_form(doc) {
        Err(TableauError::Parse { line, message, .. }) => {
            assert_eq!(line, 5);
            assert!(message.contains("rational string"), "{message}");
        }
        other => panic!("unexpected {other:?}"),
    }
    let ok = from_text_form("{\"s\": 1, \"c\": [\"0\"], \"a\": [[]], \"b\": [\"1/3\"]}").unwrap();
    assert_eq!(ok.b, vec![rat(1, 3)]);
    assert!(matches!(
        from_text_form("{\"s\": 1, \"c\": [\"0\"], \"a\": [[]], \"b\": [\"0.5\"]}"),
        Err(TableauError::Parse { .. })
    ));
}

#[test]
fn embedded_pair_from_kutta38() {
    let base = lookup("kutta38").unwrap();
    let fam = embed_lower_order(&base).unwrap();
    assert_eq!(fam.family.free_names(), ["r1"]);
    let pair = fam.specialize(&[("r1", rat(1, 1))]).unwrap();
    assert_eq!(
        pair.bhat.clone().unwrap(),
        rats(&[(-1, 8), (9, 8), (-3, 8), (-5, 8), (1, 1)])
    );
    let hat = pair.hat_method().unwrap();
    assert!(hat.verify_order(3).unwrap().satisfied());
    let latex = to_latex(&pair);
    assert!(latex.contains("-\\frac{1}{8} & \\frac{9}{8}"), "{latex}");
    let sixth = fam.specialize(&[("r1", rat(1, 6))]).unwrap();
    assert_eq!(
        sixth.bhat.unwrap(),
        rats(&[(1, 12), (1, 2), (1, 4), (0, 1), (1, 6)])
    );
}
