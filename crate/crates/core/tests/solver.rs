use rkderive::algebra::{parse_poly, rat};
use rkderive::conditions::generate_conditions;
use rkderive::series::Mode;
use rkderive::solver::{
    solve_order3_family, solve_order4_autonomous, solve_order4_equal_c, solve_order4_family,
    SolverError,
};

#[test]
fn order3_family_matches_classical_formulas() {
    let cs = generate_conditions(3, 3, Mode::General, false).unwrap();
    let fam = solve_order3_family(&cs).unwrap();
    assert_eq!(fam.free_names(), ["c2", "c3"]);
    let kutta = fam
        .specialize(&[("c2", rat(1, 2)), ("c3", rat(1, 1))])
        .unwrap();
    assert_eq!(kutta.constant("b1"), Some(rat(1, 6)));
    assert_eq!(kutta.constant("b2"), Some(rat(2, 3)));
    assert_eq!(kutta.constant("a32"), Some(rat(2, 1)));
    assert_eq!(kutta.constant("a31"), Some(rat(-1, 1)));
}

#[test]
fn order3_family_excludes_equal_nodes() {
    let cs = generate_conditions(3, 3, Mode::General, false).unwrap();
    let fam = solve_order3_family(&cs).unwrap();
    let c2_minus_c3 = parse_poly("c2 - c3", &fam.ring).unwrap();
    assert!(fam.excludes_factor(&c2_minus_c3));
    let err = fam.specialize(&[("c2", rat(1, 2)), ("c3", rat(1, 2))]).unwrap_err();
    assert!(matches!(err, SolverError::ExcludedLocus { .. }));
}

#[test]
fn order4_family_recovers_rk4() {
    let cs = generate_conditions(4, 4, Mode::General, true).unwrap();
    let fam = solve_order4_family(&cs).unwrap();
    assert_eq!(fam.constant("c4"), Some(rat(1, 1)));
    let c2_minus_c3 = parse_poly("c2 - c3", &fam.ring).unwrap();
    assert!(fam.excludes_factor(&c2_minus_c3));
    let k38 = fam
        .specialize(&[("c2", rat(1, 3)), ("c3", rat(2, 3))])
        .unwrap();
    assert_eq!(k38.constant("b1"), Some(rat(1, 8)));
    assert_eq!(k38.constant("b2"), Some(rat(3, 8)));
    assert_eq!(k38.constant("a32"), Some(rat(1, 1)));
    assert_eq!(k38.constant("a41"), Some(rat(1, 1)));
    assert_eq!(k38.constant("a42"), Some(rat(-1, 1)));
}

#[test]
fn equal_nodes_force_one_half() {
    let cs = generate_conditions(4, 4, Mode::General, true).unwrap();
    let fam = solve_order4_equal_c(&cs).unwrap();
    assert_eq!(fam.constant("u"), Some(rat(1, 2)));
    let rk4 = fam.specialize(&[("r1", rat(1, 3))]).unwrap();
    assert_eq!(rk4.constant("b2"), Some(rat(1, 3)));
    assert_eq!(rk4.constant("b3"), Some(rat(1, 3)));
    assert_eq!(rk4.constant("a32"), Some(rat(1, 2)));
    assert_eq!(rk4.constant("a42"), Some(rat(0, 1)));
    assert_eq!(rk4.constant("a43"), Some(rat(1, 1)));
}

#[test]
fn autonomous_system_has_two_branches() {
    let cs = generate_conditions(4, 4, Mode::Autonomous, true).unwrap();
    let fams = solve_order4_autonomous(&cs).unwrap();
    assert_eq!(fams.len(), 2);
    for f in &fams {
        assert!(f.satisfies(&cs.equations()).unwrap());
    }
    let second = fams[1]
        .specialize(&[("c2", rat(1, 3)), ("c3", rat(2, 3))])
        .unwrap();
    assert_eq!(second.constant("a32"), Some(rat(-1, 3)));
    assert_eq!(second.constant("a41"), Some(rat(-7, 1)));
}
