use std::fmt::Write;

use eulersum_core::registry::{CaseResult, IdentityCase, Kind, VerificationReport};

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:e}"))
}

fn case_line(c: &CaseResult) -> String {
    let mut line = format!(
        "{:<5} {:<28} abs={:<24} rel={:<24} tol={:e} evals={} {:.3}ms",
        c.status.to_string().to_uppercase(),
        c.id,
        opt(c.abs_residual),
        opt(c.rel_residual),
        c.tol,
        c.evaluations,
        c.elapsed_ms,
    );
    if let (Some(l), Some(r)) = (&c.lhs_value, &c.rhs_value) {
        let _ = write!(line, " lhs={l} rhs={r}");
    }
    if let Some(m) = &c.message {
        let _ = write!(line, " ({m})");
    }
    line
}

pub fn text_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    for c in &report.cases {
        out.push_str(&case_line(c));
        out.push('\n');
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "total={} passed={} failed={} errored={} elapsed={:.1}ms",
        s.total, s.passed, s.failed, s.errored, report.suite_elapsed_ms
    );
    out
}

pub fn listing(cases: &[IdentityCase]) -> String {
    let mut out = String::new();
    for c in cases {
        let kind = match c.kind {
            Kind::Exact => "exact".to_string(),
            Kind::Numeric => format!("numeric tol={:e}", c.tol),
        };
        let _ = writeln!(out, "{}\t{}\t{}\t\"{}\"", c.id, kind, c.description, c.anchor);
    }
    out
}
