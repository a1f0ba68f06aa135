//! Identity checks over compiled-in grids.
//!
//! Each check has its own acceptance threshold; `--tol` can only loosen it.
//! Identities that hold exactly are compared with `==` in exact mode and
//! ignore `--tol` there.
//!
//! | suite       | grid                                                                 |
//! |-------------|----------------------------------------------------------------------|
//! | `ode`       | a ∈ {-1..-6}, b, c ∈ {1..4}, plus (1,1,2) and (1/2,1/2,3/2); N = 10   |
//! | `triple`    | (e,f,h) ∈ {0,1,2}³, x ∈ {0, 1/4, 1/2}                                 |
//! | `integrals` | n, i ∈ {0..3}, a ∈ {0.1, 0.3, 0.5, 0.7}                               |
//! | `binom`     | m ∈ {-10..10} ∪ {±1/2, ±3/2}, k ∈ {0..12}; n, i ∈ {0..6}             |
//! | `transform` | a, b ∈ {-5/2, -1, 1/2, 3/2, 3}, c ∈ {-3/2, 1/2, 2, 7/2}, x ∈ {0..0.8} |

use std::fmt;
use std::str::FromStr;

use hyperxform_core::integrals::{
    integral_i, integral_ii, quad_i, quad_i_over, quad_ii, quad_ii_over, transformation_bridge, verify_ratio_identity,
    verify_sign_bridge, verify_theta_identity, IntegralSpec,
};
use hyperxform_core::series::nested_operator_residual;
use hyperxform_core::transform::RelationCheck;
use hyperxform_core::{
    binom_char, coefficients, euler_transform_params, eval_series, eval_transformed, ode_residual,
    operator_identity_residual, reflect_char, substitution_residual, termination_index, verify_triple_relations,
    Error, EvalPoint, HypergeometricParams, Kind, Scalar, TripleParams,
};

use crate::report::{int, num, text, Fields, Report};
use crate::{exit_code, RunConfig, EXIT_IDENTITY};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ode,
    Triple,
    Integrals,
    Binom,
    Transform,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Ode, Suite::Triple, Suite::Integrals, Suite::Binom, Suite::Transform];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ode => "ode",
            Suite::Triple => "triple",
            Suite::Integrals => "integrals",
            Suite::Binom => "binom",
            Suite::Transform => "transform",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}, expected ode, triple, integrals, binom, transform or all"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Aggregated outcome of one identity over its grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub suite: Suite,
    pub name: &'static str,
    /// Compared with `==` rather than a threshold.
    pub exact: bool,
    pub threshold: f64,
    pub cases: usize,
    pub failures: usize,
    pub skipped: usize,
    pub worst_residual: f64,
    pub error: Option<Error>,
}

impl CheckSummary {
    fn new(suite: Suite, name: &'static str, exact: bool, threshold: f64) -> Self {
        CheckSummary {
            suite,
            name,
            exact,
            threshold: if exact { 0.0 } else { threshold },
            cases: 0,
            failures: 0,
            skipped: 0,
            worst_residual: 0.0,
            error: None,
        }
    }

    fn record(&mut self, residual: f64, passed: bool) {
        self.cases += 1;
        if !passed {
            self.failures += 1;
        }
        if residual.is_nan() || residual > self.worst_residual {
            self.worst_residual = residual;
        }
    }

    /// Scaled residual against the threshold.
    fn record_scaled(&mut self, residual: f64) {
        let threshold = self.threshold;
        self.record(residual, residual <= threshold);
    }

    fn record_error(&mut self, err: Error) {
        self.cases += 1;
        self.failures += 1;
        if self.error.is_none() {
            self.error = Some(err);
        }
    }

    fn record_result(&mut self, r: Result<f64, Error>) {
        match r {
            Ok(residual) => self.record_scaled(residual),
            Err(e) => self.record_error(e),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.error.is_none()
    }

    fn to_fields(&self) -> Fields {
        let mut f = Fields::new();
        f.insert("suite".into(), text(self.suite.name()));
        f.insert("check".into(), text(self.name));
        f.insert("exact".into(), self.exact.into());
        f.insert("threshold".into(), num(self.threshold));
        f.insert("cases".into(), int(self.cases));
        f.insert("failures".into(), int(self.failures));
        f.insert("skipped".into(), int(self.skipped));
        f.insert("worst_residual".into(), num(self.worst_residual));
        f.insert("passed".into(), self.passed().into());
        f.insert("error".into(), self.error.as_ref().map_or(serde_json::Value::Null, |e| text(e.to_string())));
        f
    }
}

fn threshold(builtin: f64, config: &RunConfig) -> f64 {
    builtin.max(config.tol)
}

/// Series tolerance well below an acceptance threshold.
fn series_tol(threshold: f64) -> f64 {
    (threshold * 1e-3).max(1e-16)
}

fn scalar(text: &str, kind: Kind) -> Scalar {
    Scalar::parse(text, kind).expect("built-in grid values parse")
}

fn diff_f64(a: &Scalar, b: &Scalar) -> f64 {
    (a - b).abs_f64()
}

/// Record `lhs == rhs` exactly in exact mode, or within `threshold`
/// relative to `1 + |lhs|` otherwise.
fn record_equal(check: &mut CheckSummary, lhs: &Scalar, rhs: &Scalar) {
    let residual = diff_f64(lhs, rhs);
    if check.exact {
        check.record(residual, lhs == rhs);
    } else {
        check.record_scaled(residual / (1.0 + lhs.abs_f64()));
    }
}

pub const ODE_DEGREE: usize = 10;

/// Parameters of the `ode` suite.
pub fn ode_grid(kind: Kind) -> Vec<HypergeometricParams> {
    let mut grid = Vec::new();
    for a in -6..=-1 {
        for b in 1..=4 {
            for c in 1..=4 {
                grid.push((a.to_string(), b.to_string(), c.to_string()));
            }
        }
    }
    grid.push(("1".into(), "1".into(), "2".into()));
    grid.push(("1/2".into(), "1/2".into(), "3/2".into()));
    grid.iter()
        .map(|(a, b, c)| HypergeometricParams::new(scalar(a, kind), scalar(b, kind), scalar(c, kind)).unwrap())
        .collect()
}

/// Size of the terms that cancel in the degree-`n` residuals.
fn residual_scale(params: &HypergeometricParams, n: usize) -> Result<f64, Error> {
    let list = coefficients(params, n + 1)?;
    let (a, b, c) = (params.a().abs_f64(), params.b().abs_f64(), params.c().abs_f64());
    Ok(list.coefficients.iter().enumerate().fold(1.0, |acc: f64, (k, ck)| {
        let k = k as f64;
        acc.max(ck.abs_f64() * (a + k + 1.0) * (b + k + 1.0) * (c + k + 1.0))
    }))
}

fn ode_suite(config: &RunConfig) -> Vec<CheckSummary> {
    let kind = config.mode.kind();
    let exact = kind == Kind::Exact;
    let th = threshold(1e-12, config);
    let n = ODE_DEGREE;
    let mut ode = CheckSummary::new(Suite::Ode, "ode_residual", exact, th);
    let mut leading = CheckSummary::new(Suite::Ode, "ode_leading_coefficient", exact, th);
    let mut expanded = CheckSummary::new(Suite::Ode, "operator_identity", exact, th);
    let mut nested = CheckSummary::new(Suite::Ode, "nested_operator_identity", exact, th);
    for params in ode_grid(kind) {
        let scale = match residual_scale(&params, n) {
            Ok(s) => s,
            Err(e) => {
                ode.record_error(e);
                continue;
            }
        };
        let zeros = |values: &[Scalar], check: &mut CheckSummary| {
            let worst = values.iter().map(Scalar::abs_f64).fold(0.0, f64::max);
            if check.exact {
                check.record(worst, values.iter().all(Scalar::is_zero));
            } else {
                check.record_scaled(worst / scale);
            }
        };
        match ode_residual(&params, n) {
            Ok(res) => {
                zeros(&res.residual_coefficients[..n], &mut ode);
                let c_n = coefficients(&params, n).expect("degree already accepted").coefficients[n].clone();
                let expected = -(&(&params.a().add_int(n as i64) * &params.b().add_int(n as i64)) * &c_n);
                let got = &res.residual_coefficients[n];
                if exact {
                    leading.record(diff_f64(got, &expected), *got == expected);
                } else {
                    leading.record_scaled(diff_f64(got, &expected) / scale);
                }
            }
            Err(e) => ode.record_error(e),
        }
        for (check, result) in [
            (&mut expanded, operator_identity_residual(&params, n)),
            (&mut nested, nested_operator_residual(&params, n)),
        ] {
            match result {
                Ok(res) => zeros(&res.differences[..res.guaranteed_zero_len()], check),
                Err(e) => check.record_error(e),
            }
        }
    }

    let mut substitution = CheckSummary::new(Suite::Ode, "substitution", false, threshold(1e-8, config));
    let params = [(0.5, 0.5, 1.5), (1.0, 2.0, 3.0), (-1.5, 0.7, 2.2), (2.5, -0.5, 1.5), (0.3, 0.4, -0.5)];
    for (a, b, c) in params {
        let p = HypergeometricParams::new(Scalar::float(a), Scalar::float(b), Scalar::float(c)).unwrap();
        for n_exp in [c - a - b, -1.7, 0.5, 2.0] {
            for x in [0.1, 0.45, 0.8] {
                substitution.record_result(substitution_residual(&p, &Scalar::float(n_exp), x).map(f64::abs));
            }
        }
    }
    vec![ode, leading, expanded, nested, substitution]
}

fn triple_suite(config: &RunConfig) -> Vec<CheckSummary> {
    let kind = config.mode.kind();
    let th = threshold(1e-10, config);
    let names = ["triple_relation_a_b", "triple_relation_a_c", "triple_relation_b_c"];
    let mut checks: Vec<CheckSummary> = names.iter().map(|n| CheckSummary::new(Suite::Triple, n, false, th)).collect();
    for e in 0..=2 {
        for f in 0..=2 {
            for h in 0..=2 {
                let tp = TripleParams::new(Scalar::int(e), Scalar::int(f), Scalar::int(h)).unwrap();
                for x in ["0", "1/4", "1/2"] {
                    let point = EvalPoint::new(scalar(x, kind)).unwrap();
                    match verify_triple_relations(&tp, &point, th) {
                        Ok(check) => {
                            for (summary, relation) in checks.iter_mut().zip(&check.relations) {
                                match relation {
                                    RelationCheck::Checked { lhs, residual, passed, .. } => {
                                        summary.record(residual / (1.0 + lhs.abs()), *passed)
                                    }
                                    RelationCheck::NotApplicable => summary.skipped += 1,
                                }
                            }
                        }
                        Err(err) => checks.iter_mut().for_each(|c| c.record_error(err.clone())),
                    }
                }
            }
        }
    }
    checks
}

pub const INTEGRAL_MODULI: [f64; 4] = [0.1, 0.3, 0.5, 0.7];

fn integral_specs() -> Vec<IntegralSpec> {
    let mut specs = Vec::new();
    for n in 0..=3 {
        for i in 0..=3 {
            for a in INTEGRAL_MODULI {
                specs.push(IntegralSpec::new(a, n, i).unwrap());
            }
        }
    }
    specs
}

fn integrals_suite(config: &RunConfig) -> Vec<CheckSummary> {
    let th = threshold(1e-8, config);
    let bridge_th = threshold(1e-10, config);
    let mut first = CheckSummary::new(Suite::Integrals, "closed_form_first", false, th);
    let mut second = CheckSummary::new(Suite::Integrals, "closed_form_second", false, th);
    let mut ratio = CheckSummary::new(Suite::Integrals, "ratio_identity", false, th);
    let mut theta = CheckSummary::new(Suite::Integrals, "theta_identity", false, th);
    let mut bridge = CheckSummary::new(Suite::Integrals, "v_bridge", false, bridge_th);
    for spec in integral_specs() {
        let stol = series_tol(bridge_th);
        first.record_result(integral_i(&spec, stol).map(|r| (r.quadrature - r.closed_form).abs()));
        second.record_result(integral_ii(&spec, stol).map(|r| (r.quadrature - r.closed_form).abs()));
        for (check, result) in [(&mut ratio, verify_ratio_identity(&spec, th)), (&mut theta, verify_theta_identity(&spec, th))] {
            match result {
                Ok(c) => check.record(c.residual / (1.0 + c.lhs.abs()), c.passed),
                Err(e) => check.record_error(e),
            }
        }
        bridge.record_result(transformation_bridge(&spec, stol).map(|b| {
            (b.v - b.via_raw).abs().max((b.v - b.via_transformed).abs()) / (1.0 + b.v.abs())
        }));
    }

    let mut signs = CheckSummary::new(Suite::Integrals, "sign_bridge", true, 0.0);
    for n in 0..=6 {
        for i in 0..=6 {
            let ok = verify_sign_bridge(n, i);
            signs.record(if ok { 0.0 } else { 1.0 }, ok);
        }
    }

    let mut half = CheckSummary::new(Suite::Integrals, "half_period", false, threshold(1e-9, config));
    for a in INTEGRAL_MODULI {
        for n in 0..=1 {
            for i in 1..=3 {
                let spec = IntegralSpec::new(a, n, i).unwrap();
                let pi2 = 2.0 * std::f64::consts::PI;
                half.record_result((|| {
                    let d1 = (quad_i(&spec)? - quad_i_over(&spec, 0.0, pi2)? / 2.0).abs();
                    let d2 = (quad_ii(&spec)? - quad_ii_over(&spec, 0.0, pi2)? / 2.0).abs();
                    Ok(d1.max(d2))
                })());
            }
        }
    }
    vec![first, second, ratio, theta, bridge, signs, half]
}

/// Upper indices of the `binom` suite.
pub fn binom_uppers() -> Vec<String> {
    let mut m: Vec<String> = (-10..=10).map(|v: i32| v.to_string()).collect();
    m.extend(["1/2", "-1/2", "3/2", "-3/2"].map(String::from));
    m
}

fn binom_suite(config: &RunConfig) -> Vec<CheckSummary> {
    let kind = config.mode.kind();
    let exact = kind == Kind::Exact;
    let th = threshold(1e-13, config);
    let mut reflection = CheckSummary::new(Suite::Binom, "reflection", exact, th);
    let mut pascal = CheckSummary::new(Suite::Binom, "pascal", exact, th);
    for m in binom_uppers() {
        let m = scalar(&m, kind);
        for k in 0..=12 {
            record_equal(&mut reflection, &binom_char(&-&m, k), &reflect_char(&m, k));
            if k >= 1 {
                let m1 = m.add_int(-1);
                record_equal(&mut pascal, &binom_char(&m, k), &(&binom_char(&m1, k) + &binom_char(&m1, k - 1)));
            }
        }
    }
    let mut factorials = CheckSummary::new(Suite::Binom, "integer_factorials", exact, th);
    for m in 0u64..=12 {
        for k in 0..=m {
            let fact = |n: u64| (1..=n).product::<u64>();
            let expected = Scalar::int((fact(m) / (fact(k) * fact(m - k))) as i64).to_kind(kind);
            record_equal(&mut factorials, &binom_char(&Scalar::int(m as i64).to_kind(kind), k as usize), &expected);
        }
    }
    let mut proportion = CheckSummary::new(Suite::Binom, "sign_proportion", true, 0.0);
    for n in 0..=6 {
        for i in 0..=6 {
            let ok = verify_sign_bridge(n, i);
            proportion.record(if ok { 0.0 } else { 1.0 }, ok);
        }
    }
    vec![reflection, pascal, factorials, proportion]
}

fn transform_suite(config: &RunConfig) -> Vec<CheckSummary> {
    let kind = config.mode.kind();
    let th = threshold(1e-10, config);
    let mut agree = CheckSummary::new(Suite::Transform, "raw_equals_transformed", false, th);
    let mut swap = CheckSummary::new(Suite::Transform, "termination_swap", true, 0.0);
    let values = ["-5/2", "-1", "1/2", "3/2", "3"];
    for a in values {
        for b in values {
            for c in ["-3/2", "1/2", "2", "7/2"] {
                let p = HypergeometricParams::new(scalar(a, kind), scalar(b, kind), scalar(c, kind)).unwrap();
                let tp = euler_transform_params(&p);
                let expected = tp.alpha.is_nonpositive_integer() || tp.beta.is_nonpositive_integer();
                let ok = termination_index(&tp.series_params()).is_some() == expected;
                swap.record(if ok { 0.0 } else { 1.0 }, ok);
                for x in ["0", "0.2", "0.4", "0.6", "0.8"] {
                    let point = EvalPoint::new(scalar(x, kind)).unwrap();
                    let stol = series_tol(th);
                    agree.record_result((|| {
                        let raw = eval_series(&p, &point, stol, config.max_terms)?.value;
                        let transformed = eval_transformed(&p, &point, stol, config.max_terms)?.value;
                        Ok(diff_f64(&raw, &transformed) / (1.0 + raw.abs_f64()))
                    })());
                }
            }
        }
    }
    vec![agree, swap]
}

pub fn run_suite(suite: Suite, config: &RunConfig) -> Vec<CheckSummary> {
    match suite {
        Suite::Ode => ode_suite(config),
        Suite::Triple => triple_suite(config),
        Suite::Integrals => integrals_suite(config),
        Suite::Binom => binom_suite(config),
        Suite::Transform => transform_suite(config),
        Suite::All => Suite::EACH.into_iter().flat_map(|s| run_suite(s, config)).collect(),
    }
}

pub fn cmd_verify(suite: Suite, config: &RunConfig) -> Report {
    let mut inputs = Fields::new();
    inputs.insert("suite".into(), text(suite.name()));
    inputs.insert("mode".into(), text(config.mode.to_string()));
    inputs.insert("tol".into(), num(config.tol));
    inputs.insert("max_terms".into(), int(config.max_terms));
    let mut report = Report::new("verify", inputs);

    let checks = run_suite(suite, config);
    let failed: Vec<&CheckSummary> = checks.iter().filter(|c| !c.passed()).collect();
    report.outputs.insert("total_checks".into(), int(checks.len()));
    report.outputs.insert("failed_checks".into(), int(failed.len()));
    report.rows = checks.iter().map(CheckSummary::to_fields).collect();
    report.outputs.insert("checks".into(), serde_json::Value::Array(report.rows.iter().cloned().map(Into::into).collect()));
    for check in &failed {
        let code = check.error.as_ref().map_or(EXIT_IDENTITY, exit_code);
        let detail = match &check.error {
            Some(e) => format!("{}/{}: {e}", check.suite, check.name),
            None => format!(
                "{}/{}: {} of {} cases failed, worst residual {:e}",
                check.suite, check.name, check.failures, check.cases, check.worst_residual
            ),
        };
        report.fail(code, Some(detail));
    }
    report
}
