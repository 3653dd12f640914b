//! Fixed-step integration of scalar test problems in binary64 and
//! empirical convergence orders.

use thiserror::Error;

use crate::tableau::{ButcherTableau, NumericTableau};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("integration diverged at step {step} (state {value})")]
    Diverged { step: usize, value: f64 },
    #[error("step {h} does not divide the interval of length {span}")]
    StepMismatch { h: f64, span: f64 },
    #[error("unknown test problem `{0}` (known: exp, linear, riccati)")]
    UnknownProblem(String),
    #[error("at least {min} levels are required, got {got}")]
    TooFewLevels { min: usize, got: usize },
}

/// Scalar initial value problem with a closed-form solution.
#[derive(Clone, Copy)]
pub struct TestProblem {
    pub name: &'static str,
    pub description: &'static str,
    pub f: fn(f64, f64) -> f64,
    pub x0: f64,
    pub y0: f64,
    pub x_end: f64,
    pub exact: fn(f64) -> f64,
}

impl std::fmt::Debug for TestProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestProblem").field("name", &self.name).finish()
    }
}

pub const EXP: TestProblem = TestProblem {
    name: "exp",
    description: "y' = y, y(0) = 1, exact e^x",
    f: |_, y| y,
    x0: 0.0,
    y0: 1.0,
    x_end: 1.0,
    exact: f64::exp,
};

pub const LINEAR: TestProblem = TestProblem {
    name: "linear",
    description: "y' = x + y, y(0) = 1, exact 2e^x - x - 1",
    f: |x, y| x + y,
    x0: 0.0,
    y0: 1.0,
    x_end: 1.0,
    exact: |x| 2.0 * x.exp() - x - 1.0,
};

pub const RICCATI: TestProblem = TestProblem {
    name: "riccati",
    description: "y' = -y^2, y(0) = 1, exact 1/(1 + x)",
    f: |_, y| -y * y,
    x0: 0.0,
    y0: 1.0,
    x_end: 1.0,
    exact: |x| 1.0 / (1.0 + x),
};

pub fn problems() -> [TestProblem; 3] {
    [EXP, LINEAR, RICCATI]
}

pub fn problem(name: &str) -> Result<TestProblem, HarnessError> {
    problems()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| HarnessError::UnknownProblem(name.to_string()))
}

impl TestProblem {
    /// Largest central-difference defect of the exact solution over a few
    /// interior points.
    pub fn exact_defect(&self) -> f64 {
        let d = 1e-5;
        (1..10)
            .map(|k| {
                let x = self.x0 + (self.x_end - self.x0) * k as f64 / 10.0;
                let slope = ((self.exact)(x + d) - (self.exact)(x - d)) / (2.0 * d);
                (slope - (self.f)(x, (self.exact)(x))).abs()
            })
            .fold(0.0, f64::max)
    }
}

fn steps_for(prob: &TestProblem, h: f64) -> Result<usize, HarnessError> {
    let span = prob.x_end - prob.x0;
    let n = (span / h).round();
    if !(h > 0.0) || n < 1.0 || ((n * h - span) / span).abs() > 1e-9 {
        return Err(HarnessError::StepMismatch { h, span });
    }
    Ok(n as usize)
}

/// One explicit step from (x, y).
pub fn step(t: &NumericTableau, f: fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> f64 {
    let mut k: Vec<f64> = Vec::with_capacity(t.b.len());
    for (i, row) in t.a.iter().enumerate() {
        let incr: f64 = row.iter().zip(&k).map(|(a, k)| a * k).sum();
        k.push(f(x + t.c[i] * h, y + h * incr));
    }
    y + h * t.b.iter().zip(&k).map(|(b, k)| b * k).sum::<f64>()
}

/// Approximate y(x_end) with a fixed step h.
pub fn integrate(t: &ButcherTableau, prob: &TestProblem, h: f64) -> Result<f64, HarnessError> {
    let n = steps_for(prob, h)?;
    let num = t.to_f64();
    let mut y = prob.y0;
    for i in 0..n {
        let x = prob.x0 + i as f64 * h;
        y = step(&num, prob.f, x, y, h);
        if !y.is_finite() {
            return Err(HarnessError::Diverged { step: i + 1, value: y });
        }
    }
    Ok(y)
}

/// Errors below this are treated as rounding noise.
pub const ROUNDING_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct ConvergenceSample {
    pub h: f64,
    pub error: f64,
    pub below_floor: bool,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub problem: String,
    pub label: String,
    pub nominal: Option<u32>,
    pub samples: Vec<ConvergenceSample>,
    /// log₂(eᵢ/eᵢ₊₁) for consecutive levels above the floor.
    pub ratios: Vec<f64>,
    /// Mean of `ratios`; `None` if fewer than two levels are usable.
    pub observed: Option<f64>,
}

impl ConvergenceReport {
    pub fn to_table(&self) -> String {
        let mut out = format!("problem: {}\nmethod: {}\n", self.problem, self.label);
        if let Some(p) = self.nominal {
            out.push_str(&format!("nominal order: {p}\n"));
        }
        out.push_str(&format!("{:>12}  {:>12}  {:>8}\n", "h", "error", "ratio"));
        for (i, s) in self.samples.iter().enumerate() {
            let ratio = if i == 0 {
                String::new()
            } else {
                let prev = &self.samples[i - 1];
                if s.below_floor || prev.below_floor {
                    "floor".into()
                } else {
                    format!("{:.3}", (prev.error / s.error).log2())
                }
            };
            out.push_str(&format!("{:>12.6e}  {:>12.4e}  {:>8}\n", s.h, s.error, ratio));
        }
        match self.observed {
            Some(o) => out.push_str(&format!("observed order: {o:.3}\n")),
            None => out.push_str("observed order: n/a (errors at rounding floor)\n"),
        }
        out
    }
}

/// Global errors at h₀/2ⁱ for i = 0..levels and the mean observed order.
pub fn estimate_order(
    t: &ButcherTableau,
    prob: &TestProblem,
    h0: f64,
    levels: usize,
) -> Result<ConvergenceReport, HarnessError> {
    if levels < 3 {
        return Err(HarnessError::TooFewLevels { min: 3, got: levels });
    }
    let exact = (prob.exact)(prob.x_end);
    let mut samples = Vec::with_capacity(levels);
    let mut h = h0;
    for _ in 0..levels {
        let y = integrate(t, prob, h)?;
        let error = (y - exact).abs();
        samples.push(ConvergenceSample {
            h,
            error,
            below_floor: error < ROUNDING_FLOOR,
        });
        h /= 2.0;
    }
    let ratios: Vec<f64> = samples
        .windows(2)
        .filter(|w| !w[0].below_floor && !w[1].below_floor)
        .map(|w| (w[0].error / w[1].error).log2())
        .collect();
    let observed = (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);
    Ok(ConvergenceReport {
        problem: prob.name.to_string(),
        label: t.label.clone().unwrap_or_else(|| "tableau".into()),
        nominal: t.order,
        samples,
        ratios,
        observed,
    })
}
