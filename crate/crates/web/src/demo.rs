//! Plain-Rust bodies of the exported operations, so they can be tested
//! without a JavaScript host.

use serde::Serialize;

use eulersum_core::constants::zeta;
use eulersum_core::eulersums::{
    quadratic_sum_double_integral, quadratic_sum_q2_via_outer, sum_gp_closed_form, sum_series, sum_via_integral,
    EulerSumSpec,
};
use eulersum_core::registry::{builtin_registry, run_cases, SuiteOptions, VerificationReport};
use eulersum_core::specfun::polylog;

pub const MAX_CURVE_POINTS: u32 = 4096;
pub const MAX_DEMO_Q: u32 = 64;

/// Li_s sampled at `points` evenly spaced x in [lo, hi]; NaN where undefined.
pub fn polylog_curve(s: i64, lo: f64, hi: f64, points: u32) -> Result<Vec<f64>, String> {
    if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) || !(lo < hi) {
        return Err(format!("need -1 <= lo < hi <= 1, got [{lo}, {hi}]"));
    }
    if !(2..=MAX_CURVE_POINTS).contains(&points) {
        return Err(format!("points must be in 2..={MAX_CURVE_POINTS}, got {points}"));
    }
    // the order is checked once up front so a bad s is an error, not a curve of NaNs
    polylog(s, 0.0).map_err(|e| e.to_string())?;
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let x = if i == points - 1 { hi } else { lo + step * i as f64 };
            polylog(s, x).unwrap_or(f64::NAN)
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct Route {
    pub name: &'static str,
    pub value: f64,
    /// value − series value
    pub difference: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Routes {
    pub m: u32,
    pub q: u32,
    pub series: f64,
    pub routes: Vec<Route>,
}

/// Σ Hₙᵐ/nᑫ by every route available for (m, q).
pub fn euler_sum_routes(m: u32, q: u32) -> Result<Routes, String> {
    if q > MAX_DEMO_Q {
        return Err(format!("q is capped at {MAX_DEMO_Q} in the demo"));
    }
    let e = |e: eulersum_core::Error| e.to_string();
    let spec = EulerSumSpec::new(m, q).map_err(e)?;
    let series = sum_series(spec, 1e-12).map_err(e)?;
    let mut found: Vec<(&'static str, f64)> = Vec::new();
    if m == 1 {
        found.push(("integral of Li(1-t) log t/(1-t)", sum_via_integral(q, 1e-12).map_err(e)?));
        if q % 2 == 1 {
            found.push(("zeta closed form", sum_gp_closed_form((q - 1) / 2).map_err(e)?));
        }
        if q == 2 {
            found.push(("2 zeta(3)", 2.0 * zeta(3).map_err(e)?));
        }
    } else {
        if q == 2 {
            found.push(("outer integral (Landen)", quadratic_sum_q2_via_outer(1e-12).map_err(e)?));
            found.push(("17/4 zeta(4)", 4.25 * zeta(4).map_err(e)?));
        }
        if q <= 3 {
            found.push(("double integral", quadratic_sum_double_integral(q, 1e-8).map_err(e)?));
        }
    }
    let routes = found
        .into_iter()
        .map(|(name, value)| Route { name, value, difference: value - series })
        .collect();
    Ok(Routes { m, q, series, routes })
}

/// The builtin suite, run serially, restricted to ids starting with `filter`.
pub fn verify(filter: &str) -> VerificationReport {
    let options = SuiteOptions {
        filter: (!filter.is_empty()).then(|| filter.to_string()),
        ..SuiteOptions::default()
    };
    run_cases(builtin_registry(), &options)
}
