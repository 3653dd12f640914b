use rkderive::harness::{estimate_order, integrate, problem, problems, HarnessError, EXP};
use rkderive::tableau::lookup;

#[test]
fn exact_solutions_solve_their_equations() {
    for p in problems() {
        assert!(p.exact_defect() < 1e-8, "{}", p.name);
    }
}

#[test]
fn single_steps_on_exponential_growth() {
    let one_step = |name: &str| integrate(&lookup(name).unwrap(), &EXP, 1.0).unwrap();
    assert_eq!(one_step("euler"), 2.0);
    assert_eq!(one_step("improved-euler"), 2.5);
    assert!((one_step("rk4") - 65.0 / 24.0).abs() < 1e-15);
}

#[test]
fn observed_orders() {
    for (name, lo, hi) in [("rk4", 3.8, 4.2), ("kutta3", 2.8, 3.2), ("improved-euler", 1.8, 2.2)] {
        for prob in problems() {
            let r = estimate_order(&lookup(name).unwrap(), &prob, 0.1, 5).unwrap();
            let o = r.observed.unwrap();
            assert!((lo..=hi).contains(&o), "{name} on {}: {o}\n{}", prob.name, r.to_table());
        }
    }
}

#[test]
fn bad_step_and_problem() {
    let rk4 = lookup("rk4").unwrap();
    assert!(matches!(integrate(&rk4, &EXP, 0.3), Err(HarnessError::StepMismatch { .. })));
    assert!(matches!(problem("stiff"), Err(HarnessError::UnknownProblem(_))));
    assert!(matches!(
        estimate_order(&rk4, &EXP, 0.1, 2),
        Err(HarnessError::TooFewLevels { .. })
    ));
}

#[test]
fn divergence_names_the_step() {
    let blowup = rkderive::harness::TestProblem {
        name: "blowup",
        description: "y' = y^2",
        f: |_, y| y * y * 1e200,
        x0: 0.0,
        y0: 1.0,
        x_end: 1.0,
        exact: |x| 1.0 / (1.0 - x),
    };
    let err = integrate(&lookup("euler").unwrap(), &blowup, 0.25).unwrap_err();
    assert!(matches!(err, HarnessError::Diverged { step: 2, .. }), "{err:?}");
}
