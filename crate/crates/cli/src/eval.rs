use std::str::FromStr;

use eulersum_core::constants::zeta;
use eulersum_core::eulersums::{sum_gp_closed_form, sum_series, sum_via_integral, EulerSumSpec};
use eulersum_core::specfun::polylog;

pub const USAGE: &str = "usage: eulersum eval zeta S | polylog S X | hsum M Q | gp P | integral Q";

fn arg<T: FromStr>(params: &[String], i: usize, what: &str) -> Result<T, String> {
    let raw = params.get(i).ok_or_else(|| format!("missing parameter {what}"))?;
    raw.parse().map_err(|_| format!("cannot parse {what} from {raw:?}"))
}

fn arity(params: &[String], n: usize) -> Result<(), String> {
    if params.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} parameter(s), got {}", params.len()))
    }
}

/// Evaluates a named quantity; every failure is a usage problem.
pub fn evaluate(name: &str, params: &[String], tol: f64) -> Result<f64, String> {
    let core = |r: eulersum_core::Result<f64>| r.map_err(|e| e.to_string());
    match name {
        "zeta" => {
            arity(params, 1)?;
            core(zeta(arg(params, 0, "S")?))
        }
        "polylog" => {
            arity(params, 2)?;
            core(polylog(arg(params, 0, "S")?, arg(params, 1, "X")?))
        }
        "hsum" => {
            arity(params, 2)?;
            let spec = EulerSumSpec::new(arg(params, 0, "M")?, arg(params, 1, "Q")?).map_err(|e| e.to_string())?;
            core(sum_series(spec, tol))
        }
        "gp" => {
            arity(params, 1)?;
            core(sum_gp_closed_form(arg(params, 0, "P")?))
        }
        "integral" => {
            arity(params, 1)?;
            core(sum_via_integral(arg(params, 0, "Q")?, tol))
        }
        other => Err(format!("unknown quantity {other:?}")),
    }
}
