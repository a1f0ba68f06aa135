use hyperxform_core::transform::{Selection, SelectionReason};
use hyperxform_core::{
    euler_transform_params, eval_series, eval_transformed, select_representation, EvalPoint, HypergeometricParams,
    Representation, Scalar, SeriesEvaluation,
};

use crate::report::{insert_scalar, int, num, text, Fields, Report};
use crate::{exit_code, CliError, RunConfig};

pub fn representation_name(r: Representation) -> &'static str {
    match r {
        Representation::Raw => "raw",
        Representation::Transformed => "transformed",
    }
}

pub fn reason_name(r: SelectionReason) -> &'static str {
    match r {
        SelectionReason::RawTerminates => "raw_terminates",
        SelectionReason::TransformedTerminates => "transformed_terminates",
        SelectionReason::FewerEstimatedTerms => "fewer_estimated_terms",
        SelectionReason::Tie => "tie",
    }
}

/// Parse `(a, b, c, x)` in the configured mode.
pub fn parse_point(a: &str, b: &str, c: &str, x: &str, config: &RunConfig) -> Result<(HypergeometricParams, EvalPoint), CliError> {
    let kind = config.mode.kind();
    let parse = |name: &str, v: &str| {
        Scalar::parse(v, kind).map_err(|_| CliError::Usage(format!("-{name}: cannot parse {v:?} as a number")))
    };
    let params = HypergeometricParams::new(parse("a", a)?, parse("b", b)?, parse("c", c)?)?;
    let point = EvalPoint::new(parse("x", x)?)?;
    Ok((params, point))
}

fn insert_evaluation(fields: &mut Fields, prefix: &str, e: &SeriesEvaluation) {
    insert_scalar(fields, prefix, &e.value);
    fields.insert(format!("{prefix}_terms_used"), int(e.terms_used));
    fields.insert(format!("{prefix}_terminated"), e.terminated.into());
    fields.insert(format!("{prefix}_tail_bound"), num(e.tail_bound));
}

fn insert_selection(fields: &mut Fields, s: &Selection) {
    fields.insert("chosen".into(), text(representation_name(s.representation)));
    fields.insert("reason".into(), text(reason_name(s.reason)));
    fields.insert("raw_estimate".into(), int(s.raw_estimate));
    fields.insert("transformed_estimate".into(), int(s.transformed_estimate));
}

/// Evaluate the series both ways at one point.
pub fn cmd_eval(a: &str, b: &str, c: &str, x: &str, config: &RunConfig) -> Report {
    let mut inputs = Fields::new();
    for (name, v) in [("a", a), ("b", b), ("c", c), ("x", x)] {
        inputs.insert(name.into(), text(v));
    }
    inputs.insert("mode".into(), text(config.mode.to_string()));
    inputs.insert("tol".into(), num(config.tol));
    inputs.insert("max_terms".into(), int(config.max_terms));
    let mut report = Report::new("eval", inputs);

    let (params, point) = match parse_point(a, b, c, x, config) {
        Ok(v) => v,
        Err(e) => {
            report.fail(e.exit_code(), Some(e.to_string()));
            return report;
        }
    };
    let tp = euler_transform_params(&params);
    insert_scalar(&mut report.outputs, "exponent", &tp.exponent);

    let raw = eval_series(&params, &point, config.tol, config.max_terms);
    let transformed = eval_transformed(&params, &point, config.tol, config.max_terms);
    for (prefix, result) in [("raw", &raw), ("transformed", &transformed)] {
        match result {
            Ok(e) => insert_evaluation(&mut report.outputs, prefix, e),
            Err(err) => {
                report.outputs.insert(format!("{prefix}_error"), text(err.to_string()));
                report.fail(exit_code(err), Some(format!("{prefix}: {err}")));
            }
        }
    }
    if let (Ok(r), Ok(t)) = (&raw, &transformed) {
        let diff = (&r.value - &t.value).abs();
        insert_scalar(&mut report.outputs, "difference", &diff);
    }
    insert_selection(&mut report.outputs, &select_representation(&params, &point, config.tol));
    report
}
