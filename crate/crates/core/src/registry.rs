//! The catalogue of identities and the runner that checks them.
//!
//! Each [`IdentityCase`] evaluates its two sides independently. Exact cases
//! compare canonical rationals structurally; numeric cases compare a
//! residual against their own tolerance, absolute or relative.

use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;
#[cfg(target_arch = "wasm32")]
use web_time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::constants::zeta;
use crate::eulersums::{
    inner_integral, inner_integral_quadrature, landen_components, log_power_integral,
    polylog_log_integral, quadratic_sum_double_integral_detailed,
    quadratic_sum_q2_via_outer_detailed, sum_gp_closed_form, sum_series, sum_via_integral_detailed,
    EulerSumSpec, SERIES_CUTOFF,
};
use crate::exactmath::{alt_binomial_sum, factorial, harmonic_exact, moment_integral_exact, Rational};
use crate::quad::integrate;
use crate::specfun::{dilog_neg_ratio, polylog, polylog_complement};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Real(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64(),
            Value::Real(x) => *x,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Real(x) => write!(f, "{x:e}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => r.serialize(serializer),
            Value::Real(x) => serializer.serialize_f64(*x),
        }
    }
}

/// One side of an identity, and the number of function evaluations spent on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: Value,
    pub evaluations: u64,
}

impl Evaluation {
    pub fn real(value: f64, evaluations: u64) -> Self {
        Evaluation { value: Value::Real(value), evaluations }
    }

    pub fn exact(value: Rational) -> Self {
        Evaluation { value: Value::Exact(value), evaluations: 1 }
    }
}

pub type Evaluator = Arc<dyn Fn() -> Result<Evaluation, String> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Numeric,
}

/// How a numeric residual is compared with the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Absolute,
    Relative,
}

#[derive(Clone)]
pub struct IdentityCase {
    pub id: String,
    pub description: String,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    pub kind: Kind,
    pub criterion: Criterion,
    /// Zero for exact cases.
    pub tol: f64,
    /// Accuracy limit of the method; a tolerance override never goes below it.
    pub tol_floor: f64,
    /// Short verbatim phrase locating the identity in the source note.
    pub anchor: &'static str,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("criterion", &self.criterion)
            .field("tol", &self.tol)
            .finish_non_exhaustive()
    }
}

impl IdentityCase {
    fn exact(
        id: impl Into<String>,
        description: impl Into<String>,
        anchor: &'static str,
        lhs: impl Fn() -> Result<Evaluation, String> + Send + Sync + 'static,
        rhs: impl Fn() -> Result<Evaluation, String> + Send + Sync + 'static,
    ) -> Self {
        IdentityCase {
            id: id.into(),
            description: description.into(),
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
            kind: Kind::Exact,
            criterion: Criterion::Absolute,
            tol: 0.0,
            tol_floor: 0.0,
            anchor,
        }
    }

    fn numeric(
        id: impl Into<String>,
        description: impl Into<String>,
        anchor: &'static str,
        tol: f64,
        lhs: impl Fn() -> Result<Evaluation, String> + Send + Sync + 'static,
        rhs: impl Fn() -> Result<Evaluation, String> + Send + Sync + 'static,
    ) -> Self {
        IdentityCase {
            id: id.into(),
            description: description.into(),
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
            kind: Kind::Numeric,
            criterion: Criterion::Absolute,
            tol,
            tol_floor: 0.0,
            anchor,
        }
    }

    fn with_floor(mut self, floor: f64) -> Self {
        self.tol_floor = floor;
        self
    }

    /// Tolerance after applying an optional suite-wide override.
    pub fn effective_tol(&self, tol_override: Option<f64>) -> f64 {
        match (self.kind, tol_override) {
            (Kind::Exact, _) => 0.0,
            (Kind::Numeric, Some(t)) => t.max(self.tol_floor),
            (Kind::Numeric, None) => self.tol,
        }
    }

    /// A negative control: the right-hand side moved by 100× the tolerance
    /// (by one, for exact cases).
    pub fn corrupted(&self) -> Self {
        let rhs = Arc::clone(&self.rhs);
        let (kind, criterion, tol) = (self.kind, self.criterion, self.tol);
        let mut out = self.clone();
        out.description = format!("{} [corrupted]", self.description);
        out.rhs = Arc::new(move || {
            let e = rhs()?;
            let value = match (kind, e.value) {
                (Kind::Exact, Value::Exact(r)) => Value::Exact(r + Rational::one()),
                (_, v) => {
                    let x = v.to_f64();
                    let step = match criterion {
                        _ if tol <= 0.0 => 1.0,
                        Criterion::Absolute => 100.0 * tol,
                        Criterion::Relative => 100.0 * tol * x.abs().max(f64::MIN_POSITIVE),
                    };
                    Value::Real(x + step)
                }
            };
            Ok(Evaluation { value, evaluations: e.evaluations })
        });
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub status: Status,
    pub lhs_value: Option<Value>,
    pub rhs_value: Option<Value>,
    pub abs_residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub tol: f64,
    pub evaluations: u64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    pub suite_elapsed_ms: f64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errored == 0
    }
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic with non-string payload".to_string()
    }
}

fn evaluate(side: &Evaluator) -> Result<Evaluation, String> {
    match panic::catch_unwind(AssertUnwindSafe(|| side())) {
        Ok(r) => r,
        Err(payload) => Err(format!("evaluator panicked: {}", panic_message(payload))),
    }
}

/// Evaluates both sides of `case` with its declared tolerance.
pub fn run_case(case: &IdentityCase) -> CaseResult {
    run_case_with(case, None)
}

/// As [`run_case`], with an optional tolerance override for numeric cases.
pub fn run_case_with(case: &IdentityCase, tol_override: Option<f64>) -> CaseResult {
    let start = Instant::now();
    let tol = case.effective_tol(tol_override);
    let lhs = evaluate(&case.lhs);
    let rhs = evaluate(&case.rhs);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (lhs, rhs) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            let message = [l.as_ref().err(), r.as_ref().err()]
                .into_iter()
                .flatten()
                .cloned()
                .collect::<Vec<_>>()
                .join("; ");
            let evaluations = l.as_ref().map_or(0, |e| e.evaluations) + r.as_ref().map_or(0, |e| e.evaluations);
            return CaseResult {
                id: case.id.clone(),
                status: Status::Error,
                lhs_value: l.ok().map(|e| e.value),
                rhs_value: r.ok().map(|e| e.value),
                abs_residual: None,
                rel_residual: None,
                tol,
                evaluations,
                elapsed_ms,
                message: Some(message),
            };
        }
    };

    let (status, abs, rel) = match (&lhs.value, &rhs.value) {
        (Value::Exact(a), Value::Exact(b)) if case.kind == Kind::Exact => {
            let diff = (a - b).abs();
            let rel = if diff.is_zero() {
                0.0
            } else {
                diff.checked_div(&a.abs().max(b.abs())).map(|r| r.to_f64()).unwrap_or(f64::INFINITY)
            };
            let status = if a == b { Status::Pass } else { Status::Fail };
            (status, diff.to_f64(), rel)
        }
        (a, b) => {
            let (a, b) = (a.to_f64(), b.to_f64());
            let abs = (a - b).abs();
            let scale = a.abs().max(b.abs());
            let rel = if abs == 0.0 { 0.0 } else { abs / scale };
            let ok = match (case.kind, case.criterion) {
                (Kind::Exact, _) => false,
                (Kind::Numeric, Criterion::Absolute) => abs <= tol,
                (Kind::Numeric, Criterion::Relative) => rel <= tol,
            };
            (if ok { Status::Pass } else { Status::Fail }, abs, rel)
        }
    };
    CaseResult {
        id: case.id.clone(),
        status,
        lhs_value: Some(lhs.value),
        rhs_value: Some(rhs.value),
        abs_residual: Some(abs),
        rel_residual: Some(rel),
        tol,
        evaluations: lhs.evaluations + rhs.evaluations,
        elapsed_ms,
        message: None,
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Only ids starting with this prefix.
    pub filter: Option<String>,
    pub tol_override: Option<f64>,
    pub parallel: bool,
    /// Id of a case to replace by its [`IdentityCase::corrupted`] form.
    pub inject_failure: Option<String>,
}

/// Runs every registered case matching `filter`, in parallel.
pub fn run_suite(filter: Option<&str>, tol_override: Option<f64>) -> VerificationReport {
    run_cases(
        builtin_registry(),
        &SuiteOptions {
            filter: filter.map(str::to_string),
            tol_override,
            parallel: true,
            inject_failure: None,
        },
    )
}

pub fn run_cases(cases: Vec<IdentityCase>, options: &SuiteOptions) -> VerificationReport {
    let start = Instant::now();
    let selected: Vec<IdentityCase> = cases
        .into_iter()
        .filter(|c| options.filter.as_deref().is_none_or(|p| c.id.starts_with(p)))
        .map(|c| {
            if options.inject_failure.as_deref() == Some(c.id.as_str()) {
                c.corrupted()
            } else {
                c
            }
        })
        .collect();
    let mut results: Vec<CaseResult> = if options.parallel {
        selected.par_iter().map(|c| run_case_with(c, options.tol_override)).collect()
    } else {
        selected.iter().map(|c| run_case_with(c, options.tol_override)).collect()
    };
    results.sort_by(|a, b| a.id.cmp(&b.id));
    let mut summary = Summary { total: results.len(), ..Summary::default() };
    for r in &results {
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Error => summary.errored += 1,
        }
    }
    VerificationReport {
        cases: results,
        summary,
        suite_elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn z(s: i64) -> Result<f64, String> {
    zeta(s).map_err(err)
}

fn series(m: u32, q: u32) -> Result<Evaluation, String> {
    let spec = EulerSumSpec::new(m, q).map_err(err)?;
    let v = sum_series(spec, 1e-12).map_err(err)?;
    Ok(Evaluation::real(v, 3 * SERIES_CUTOFF))
}

const QUAD_TOL: f64 = 1e-12;
const DOUBLE_TOL: f64 = 1e-8;

/// Every identity the crate knows how to check, in id order.
pub fn builtin_registry() -> Vec<IdentityCase> {
    let mut cases = Vec::new();

    for n in 1..=12u64 {
        for p in 1..=4u32 {
            cases.push(IdentityCase::exact(
                format!("binomial-exact/n={n},p={p}"),
                format!("{p}!·Σ C({n},k)(−1)ᵏ/kᵖ equals (−1)^(p+1)·{n}·∫(1−t)^{}·logᵖt by monomial moments", n - 1),
                "It was shown by the author",
                move || {
                    let s = alt_binomial_sum(n, p).map_err(err)?;
                    Ok(Evaluation::exact(Rational::from_integer(factorial(p as u64)) * s))
                },
                move || moment_integral_exact(n, p).map(Evaluation::exact).map_err(err),
            ));
        }
    }

    for n in 1..=60u64 {
        cases.push(IdentityCase::exact(
            format!("alt-harmonic/n={n}"),
            format!("Σ C({n},k)(−1)ᵏ/k = −H_{n}"),
            "and with p = 1 we obtain",
            move || alt_binomial_sum(n, 1).map(Evaluation::exact).map_err(err),
            move || harmonic_exact(n, 1).map(|h| Evaluation::exact(-h)).map_err(err),
        ));
    }

    for n in 1..=10u64 {
        cases.push(IdentityCase::exact(
            format!("harmonic-product/n={n}"),
            format!("[n∫(1−t)ⁿ⁻¹log t]² = H_{n}² at n = {n}"),
            "We also have the product",
            move || moment_integral_exact(n, 1).map(|m| Evaluation::exact(m.pow(2))).map_err(err),
            move || harmonic_exact(n, 1).map(|h| Evaluation::exact(h.pow(2))).map_err(err),
        ));
    }

    let two_zeta3 = || Ok(Evaluation::real(2.0 * z(3)?, 1));
    let half_zeta2_sq = || Ok(Evaluation::real(0.5 * z(2)?.powi(2), 1));
    let dedoelder = || Ok(Evaluation::real(4.25 * z(4)?, 1));

    cases.push(IdentityCase::numeric(
        "euler-q2",
        "Σ Hₙ/n² by accelerated series equals 2ζ(3)",
        "originally derived by Euler",
        1e-10,
        || series(1, 2),
        two_zeta3,
    ));
    cases.push(IdentityCase::numeric(
        "euler-q2-integral",
        "−∫ Li₁(1−t) log t/(1−t) dt equals 2ζ(3)",
        "The summation then gives us",
        1e-10,
        || quad_eval(sum_via_integral_detailed(2, QUAD_TOL)),
        two_zeta3,
    ));
    cases.push(IdentityCase::numeric(
        "euler-q2-logsq",
        "∫ log²t/(1−t) dt equals 2ζ(3)",
        "With integration by parts we have",
        1e-11,
        || quad_eval(log_power_integral(2, QUAD_TOL)),
        two_zeta3,
    ));
    cases.push(IdentityCase::numeric(
        "euler-q2-antiderivative",
        "F(t) = 2Li₃(t) − 2Li₂(t)log t − log(1−t)log²t differentiates to log²t/(1−t) on [0.2, 0.7]",
        "With integration by parts we have",
        1e-12,
        || {
            let r = integrate(|t| t.ln().powi(2) / (1.0 - t), 0.2, 0.7, 1e-14).map_err(err)?;
            quad_eval(r.into_result())
        },
        || {
            let anti = |t: f64| -> Result<f64, String> {
                let l = t.ln();
                Ok(2.0 * polylog(3, t).map_err(err)? - 2.0 * polylog(2, t).map_err(err)? * l
                    - (1.0 - t).ln() * l * l)
            };
            Ok(Evaluation::real(anti(0.7)? - anti(0.2)?, 6))
        },
    ));
    cases.push(IdentityCase::numeric(
        "euler-q3",
        "Σ Hₙ/n³ by accelerated series equals ½ζ²(2)",
        "gives us the known result",
        1e-10,
        || series(1, 3),
        half_zeta2_sq,
    ));
    cases.push(IdentityCase::numeric(
        "euler-q3-integral",
        "−∫ Li₂(1−t) log t/(1−t) dt equals ½ζ²(2)",
        "gives us the known result",
        1e-10,
        || quad_eval(sum_via_integral_detailed(3, QUAD_TOL)),
        half_zeta2_sq,
    ));
    cases.push(IdentityCase::numeric(
        "euler-q3-antiderivative",
        "½[Li₂(1−t)]² differentiates to Li₂(1−t) log t/(1−t) on [0.2, 0.7]",
        "and we see that",
        1e-12,
        || {
            let r = integrate(
                |t| polylog_complement(2, t).unwrap_or(f64::NAN) * t.ln() / (1.0 - t),
                0.2,
                0.7,
                1e-14,
            )
            .map_err(err)?;
            quad_eval(r.into_result())
        },
        || {
            let half_sq = |t: f64| -> Result<f64, String> { Ok(0.5 * polylog_complement(2, t).map_err(err)?.powi(2)) };
            Ok(Evaluation::real(half_sq(0.7)? - half_sq(0.2)?, 2))
        },
    ));

    for p in 1..=3u32 {
        cases.push(IdentityCase::numeric(
            format!("gp-p{p}"),
            format!("Σ Hₙ/n^{} by series equals ½Σ_{{j=2}}^{{{}}} (−1)ʲζ(j)ζ({}−j)", 2 * p + 1, 2 * p, 2 * p + 2),
            "derived the following formula in 1983",
            1e-10,
            move || series(1, 2 * p + 1),
            move || sum_gp_closed_form(p).map(|v| Evaluation::real(v, 1)).map_err(err),
        ));
    }
    for p in 1..=2u32 {
        cases.push(IdentityCase::numeric(
            format!("gp-integral-p{p}"),
            format!(
                "−∫ Li_{}(1−t) log t/(1−t) dt equals the zeta combination (the integral itself is its negative)",
                2 * p
            ),
            "deduce the corresponding integral",
            1e-9,
            move || {
                let mut r = polylog_log_integral(2 * p, QUAD_TOL).map_err(err)?;
                r.value = -r.value;
                Ok(Evaluation::real(r.value, r.evaluations))
            },
            move || sum_gp_closed_form(p).map(|v| Evaluation::real(v, 1)).map_err(err),
        ));
    }

    for &u in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        cases.push(IdentityCase::numeric(
            format!("inner-integral/u={u}"),
            format!("∫ log t/(1−(1−t)(1−u)) dt equals Li₂(−(1−u)/u)/(1−u) at u = {u}"),
            "Wolfram Integrator instantly gives",
            1e-10,
            move || quad_eval(inner_integral_quadrature(u, QUAD_TOL)),
            move || inner_integral(u).map(|v| Evaluation::real(v, 1)).map_err(err),
        ));
    }

    cases.push(IdentityCase::numeric(
        "landen",
        "max over 1000 u in [0.51, 0.999] of |Li₂(−(1−u)/u) − (−½ln²u − Li₂(1−u))|, series vs Landen form",
        "originally obtained by Landen",
        1e-12,
        || {
            let mut worst = 0.0f64;
            for i in 0..1000 {
                let u = 0.51 + (0.999 - 0.51) * i as f64 / 999.0;
                let direct = polylog(2, -(1.0 - u) / u).map_err(err)?;
                let landen = dilog_neg_ratio(u).map_err(err)?;
                worst = worst.max((direct - landen).abs());
            }
            Ok(Evaluation::real(worst, 2000))
        },
        || Ok(Evaluation::real(0.0, 0)),
    ));

    cases.push(IdentityCase::numeric(
        "log-cubed",
        "∫ log³u/(1−u) du equals −6ζ(4)",
        "It is well known that",
        1e-11,
        || quad_eval(log_power_integral(3, QUAD_TOL)),
        || Ok(Evaluation::real(-6.0 * z(4)?, 1)),
    ));
    cases.push(IdentityCase::numeric(
        "zeta2-squared",
        "ζ(2)² equals (5/2)ζ(4)",
        "We accordingly get",
        1e-14,
        || Ok(Evaluation::real(z(2)?.powi(2), 1)),
        || Ok(Evaluation::real(2.5 * z(4)?, 1)),
    ));

    cases.push(IdentityCase::numeric(
        "dedoelder-q2",
        "Σ [Hₙ]²/n² by accelerated series equals 17/4 ζ(4)",
        "originally discovered by de Doelder",
        1e-10,
        || series(2, 2),
        dedoelder,
    ));
    cases.push(IdentityCase::numeric(
        "dedoelder-q2-outer",
        "∫ (log u/(1−u)) Li₂(−(1−u)/u) du, Landen form inside, equals 17/4 ζ(4)",
        "We then obtain",
        1e-10,
        || quad_eval(quadratic_sum_q2_via_outer_detailed(QUAD_TOL)),
        dedoelder,
    ));
    cases.push(IdentityCase::numeric(
        "dedoelder-q2-split",
        "−½∫ log³u/(1−u) − ∫ Li₂(1−u) log u/(1−u) equals 17/4 ζ(4)",
        "with the result that",
        1e-10,
        || {
            let (cubic, dilog) = landen_components(QUAD_TOL).map_err(err)?;
            Ok(Evaluation::real(cubic + dilog, 0))
        },
        dedoelder,
    ));
    cases.push(
        IdentityCase::numeric(
            "dedoelder-q2-double",
            "∫∫ log t log u/(1−(1−t)(1−u)) dt du by iterated quadrature equals 17/4 ζ(4)",
            "Letting q = 2 we have",
            DOUBLE_TOL,
            || quad_eval(quadratic_sum_double_integral_detailed(2, DOUBLE_TOL)),
            dedoelder,
        )
        .with_floor(DOUBLE_TOL),
    );
    cases.push(
        IdentityCase::numeric(
            "quadratic-q3-double",
            "∫∫ Li₁[(1−t)(1−u)] log t log u/((1−t)(1−u)) by iterated quadrature agrees with Σ [Hₙ]²/n³ by series",
            "additional work is required",
            1e-6,
            || quad_eval(quadratic_sum_double_integral_detailed(3, DOUBLE_TOL)),
            || series(2, 3),
        )
        .with_floor(1e-6),
    );

    cases.sort_by(|a, b| a.id.cmp(&b.id));
    cases
}

fn quad_eval(r: crate::Result<crate::quad::QuadratureResult>) -> Result<Evaluation, String> {
    let r = r.map_err(err)?;
    Ok(Evaluation::real(r.value, r.evaluations))
}
