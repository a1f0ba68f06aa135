//! Term counts of the raw and transformed series over a parameter grid.

use hyperxform_core::transform::Selection;
use hyperxform_core::{eval_series, eval_transformed, select_representation, Error, Representation, SeriesEvaluation};

use crate::eval::{parse_point, reason_name, representation_name};
use crate::grid::Grid;
use crate::report::{int, num, text, Fields, Report};
use crate::{RunConfig, EXIT_DOMAIN, EXIT_IDENTITY};

/// Outcome of summing one representation.
#[derive(Debug, Clone, PartialEq)]
pub enum SideOutcome {
    Converged(SeriesEvaluation),
    NonConvergent,
    Failed(String),
}

impl SideOutcome {
    fn from_result(r: Result<SeriesEvaluation, Error>) -> Self {
        match r {
            Ok(e) => SideOutcome::Converged(e),
            Err(Error::NoConvergence { .. }) => SideOutcome::NonConvergent,
            Err(e) => SideOutcome::Failed(e.to_string()),
        }
    }

    pub fn terms_used(&self) -> Option<usize> {
        match self {
            SideOutcome::Converged(e) => Some(e.terms_used),
            _ => None,
        }
    }

    pub fn terminated(&self) -> bool {
        matches!(self, SideOutcome::Converged(e) if e.terminated)
    }

    fn status(&self) -> &'static str {
        match self {
            SideOutcome::Converged(_) => "ok",
            SideOutcome::NonConvergent => "nonconvergent",
            SideOutcome::Failed(_) => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub a: String,
    pub b: String,
    pub c: String,
    pub x: String,
    pub raw: SideOutcome,
    pub transformed: SideOutcome,
    pub selection: Selection,
}

impl BenchRow {
    fn chosen_and_other(&self) -> (&SideOutcome, &SideOutcome) {
        match self.selection.representation {
            Representation::Raw => (&self.raw, &self.transformed),
            Representation::Transformed => (&self.transformed, &self.raw),
        }
    }

    /// Exactly one of the two sides is a polynomial.
    pub fn exactly_one_terminates(&self) -> bool {
        self.raw.terminated() != self.transformed.terminated()
    }

    /// When either side terminates, the chosen side terminates and needs no
    /// more terms than the other. A side that did not converge counts as
    /// needing more terms than any side that did.
    pub fn selector_ok(&self) -> bool {
        if !(self.raw.terminated() || self.transformed.terminated()) {
            return true;
        }
        let (chosen, other) = self.chosen_and_other();
        if !chosen.terminated() {
            return false;
        }
        match (chosen.terms_used(), other.terms_used()) {
            (Some(c), Some(o)) => c <= o,
            (Some(_), None) => true,
            _ => false,
        }
    }

    /// The chosen side needs strictly fewer terms than the other.
    pub fn chosen_strictly_fewer(&self) -> bool {
        let (chosen, other) = self.chosen_and_other();
        match (chosen.terms_used(), other.terms_used()) {
            (Some(c), Some(o)) => c < o,
            (Some(_), None) => true,
            _ => false,
        }
    }

    fn to_fields(&self) -> Fields {
        let mut f = Fields::new();
        for (name, v) in [("a", &self.a), ("b", &self.b), ("c", &self.c), ("x", &self.x)] {
            f.insert(name.into(), text(v.clone()));
        }
        for (prefix, side) in [("raw", &self.raw), ("transformed", &self.transformed)] {
            f.insert(format!("{prefix}_terms_used"), side.terms_used().map_or(serde_json::Value::Null, int));
            f.insert(format!("{prefix}_terminated"), side.terminated().into());
            f.insert(format!("{prefix}_status"), text(side.status()));
        }
        f.insert("chosen".into(), text(representation_name(self.selection.representation)));
        f.insert("reason".into(), text(reason_name(self.selection.reason)));
        f.insert("selector_ok".into(), self.selector_ok().into());
        f
    }
}

/// One grid point, or the reason its inputs were rejected.
pub fn bench_point(a: &str, b: &str, c: &str, x: &str, config: &RunConfig) -> Result<BenchRow, String> {
    let (params, point) = parse_point(a, b, c, x, config).map_err(|e| e.to_string())?;
    let raw = SideOutcome::from_result(eval_series(&params, &point, config.tol, config.max_terms));
    let transformed = SideOutcome::from_result(eval_transformed(&params, &point, config.tol, config.max_terms));
    let selection = select_representation(&params, &point, config.tol);
    Ok(BenchRow { a: a.into(), b: b.into(), c: c.into(), x: x.into(), raw, transformed, selection })
}

pub fn cmd_bench(grid: &Grid, config: &RunConfig) -> Report {
    let mut inputs = Fields::new();
    for (name, axis) in [("a", &grid.a), ("b", &grid.b), ("c", &grid.c), ("x", &grid.x)] {
        inputs.insert(name.into(), text(axis.join(",")));
    }
    inputs.insert("mode".into(), text(config.mode.to_string()));
    inputs.insert("tol".into(), num(config.tol));
    inputs.insert("max_terms".into(), int(config.max_terms));
    let mut report = Report::new("bench", inputs);

    let (mut nonconvergent, mut violations, mut rejected) = (0, 0, 0);
    for (a, b, c, x) in grid.points() {
        match bench_point(a, b, c, x, config) {
            Ok(row) => {
                if [&row.raw, &row.transformed].iter().any(|s| matches!(s, SideOutcome::NonConvergent)) {
                    nonconvergent += 1;
                }
                if !row.selector_ok() {
                    violations += 1;
                }
                report.rows.push(row.to_fields());
            }
            Err(msg) => {
                rejected += 1;
                let mut f = Fields::new();
                for (name, v) in [("a", a), ("b", b), ("c", c), ("x", x)] {
                    f.insert(name.into(), text(v));
                }
                f.insert("raw_status".into(), text("rejected"));
                f.insert("transformed_status".into(), text("rejected"));
                f.insert("error".into(), text(msg));
                report.rows.push(f);
            }
        }
    }
    report.outputs.insert("points".into(), int(grid.len()));
    report.outputs.insert("nonconvergent".into(), int(nonconvergent));
    report.outputs.insert("rejected".into(), int(rejected));
    report.outputs.insert("selector_violations".into(), int(violations));
    report.outputs.insert("rows".into(), serde_json::Value::Array(report.rows.iter().cloned().map(Into::into).collect()));
    if violations > 0 {
        report.fail(EXIT_IDENTITY, Some(format!("{violations} grid points where the selector missed a terminating side")));
    }
    if rejected > 0 {
        report.fail(EXIT_DOMAIN, Some(format!("{rejected} grid points had invalid parameters")));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transformed_polynomial_wins() {
        let row = bench_point("3", "1", "2", "0.9", &RunConfig::default()).unwrap();
        assert_eq!(row.transformed.terms_used(), Some(2));
        assert!(row.raw.terms_used().unwrap() > 100);
        assert_eq!(row.selection.representation, Representation::Transformed);
        assert!(row.selector_ok() && row.chosen_strictly_fewer());
    }

    #[test]
    fn raw_polynomial_uses_three_terms() {
        for x in ["0.1", "0.5", "-0.9"] {
            let row = bench_point("-2", "3", "1", x, &RunConfig::default()).unwrap();
            assert_eq!(row.raw.terms_used(), Some(3));
        }
    }

    #[test]
    fn origin_needs_one_term_each() {
        let row = bench_point("1", "1", "2", "0", &RunConfig::default()).unwrap();
        assert_eq!(row.raw.terms_used(), Some(1));
        assert_eq!(row.transformed.terms_used(), Some(1));
    }

    #[test]
    fn nonconvergent_rows_do_not_abort() {
        let config = RunConfig { max_terms: 20, ..RunConfig::default() };
        let grid = Grid::parse("a=3,1/2;b=1;c=2;x=0.9").unwrap();
        let report = cmd_bench(&grid, &config);
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.outputs["nonconvergent"], 2);
        assert_eq!(report.rows[0]["transformed_terms_used"], 2);
        assert_eq!(report.rows[0]["raw_status"], "nonconvergent");
        assert_eq!(report.exit_code, 0);
    }

    #[test]
    fn invalid_points_are_marked() {
        let grid = Grid::parse("a=1;b=1;c=-1,2;x=0.5").unwrap();
        let report = cmd_bench(&grid, &RunConfig::default());
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0]["raw_status"], "rejected");
        assert_eq!(report.exit_code, EXIT_DOMAIN);
    }
}
