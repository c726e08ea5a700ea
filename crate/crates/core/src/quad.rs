//! Tanh-sinh (double-exponential) quadrature on finite intervals, plus an
//! iterated version on the unit square.
//!
//! The unit interval is mapped by s = 1/(1 + e^{−π sinh τ}), so both s and
//! 1 − s are available without cancellation; integrands with logarithmic
//! singularities at either end can use [`integrate_unit`] to receive the
//! exact distance to the far endpoint. Levels use step h = 2⁻ˡ, l = 1..=12,
//! each level reusing the previous sum and adding only the odd nodes. The
//! error estimate is the difference between the last two levels plus
//! ε·∫|f|, the rounding floor of the node sum.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{domain, Result};

pub const MAX_LEVELS: usize = 12;

/// Nodes closer than this to an endpoint are dropped; their weights are
/// below underflow anyway.
pub const ENDPOINT_GUARD: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
    /// Level-to-level differences, one per refinement after the first level.
    pub error_history: Vec<f64>,
}

impl QuadratureResult {
    /// Converged result or the corresponding error.
    pub fn into_result(self) -> Result<QuadratureResult> {
        if self.converged {
            Ok(self)
        } else {
            Err(crate::error::Error::Quadrature(self))
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    /// s ∈ (0, ½]
    near: f64,
    /// 1 − s
    far: f64,
    /// ds/dτ
    weight: f64,
    /// τ = 0 is the only node without a mirror
    centre: bool,
}

fn node_at(tau: f64) -> Option<Node> {
    let e = (-PI * tau.sinh()).exp();
    let near = e / (1.0 + e);
    if near < ENDPOINT_GUARD {
        return None;
    }
    let far = 1.0 / (1.0 + e);
    Some(Node {
        near,
        far,
        weight: PI * tau.cosh() * near * far,
        centre: tau == 0.0,
    })
}

/// Nodes introduced at each level, for τ ≥ 0, ordered outward.
fn level_nodes() -> &'static [Vec<Node>] {
    static TABLE: OnceLock<Vec<Vec<Node>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=MAX_LEVELS)
            .map(|level| {
                let h = 0.5f64.powi(level as i32);
                let (start, step) = if level == 1 { (0u64, 1u64) } else { (1, 2) };
                (0..)
                    .map(|j| (start + step * j) as f64 * h)
                    .map_while(node_at)
                    .collect()
            })
            .collect()
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return domain(format!("quadrature tolerance must be positive and finite, got {tol}"));
    }
    Ok(())
}

/// Value and error contributions of one node; `None` signals a non-finite value.
trait UnitIntegrand {
    fn eval(&mut self, s: f64, sc: f64, weight: f64) -> Option<(f64, f64)>;
    fn evaluations(&self) -> u64;
}

struct Plain<F> {
    f: F,
    evals: u64,
}

impl<F: FnMut(f64, f64) -> f64> UnitIntegrand for Plain<F> {
    fn eval(&mut self, s: f64, sc: f64, _weight: f64) -> Option<(f64, f64)> {
        self.evals += 1;
        let v = (self.f)(s, sc);
        v.is_finite().then_some((v, 0.0))
    }

    fn evaluations(&self) -> u64 {
        self.evals
    }
}

fn run_levels(g: &mut impl UnitIntegrand, tol: f64) -> QuadratureResult {
    let mut value = 0.0;
    let mut inner_err = 0.0;
    let mut magnitude = 0.0;
    let mut history = Vec::new();
    let mut prev: Option<f64> = None;
    for (index, nodes) in level_nodes().iter().enumerate() {
        let h = 0.5f64.powi(index as i32 + 1);
        let mut sum = 0.0;
        let mut err_sum = 0.0;
        let mut abs_sum = 0.0;
        for node in nodes {
            let points: &[(f64, f64)] = if node.centre {
                &[(0.5, 0.5)]
            } else {
                &[(node.near, node.far), (node.far, node.near)]
            };
            for &(s, sc) in points {
                match g.eval(s, sc, node.weight) {
                    Some((v, e)) => {
                        sum += node.weight * v;
                        abs_sum += node.weight * v.abs();
                        err_sum += node.weight * e;
                    }
                    None => {
                        return QuadratureResult {
                            value: prev.unwrap_or(f64::NAN),
                            abs_error_estimate: f64::INFINITY,
                            evaluations: g.evaluations(),
                            converged: false,
                            error_history: history,
                        };
                    }
                }
            }
        }
        if index == 0 {
            value = h * sum;
            inner_err = h * err_sum;
            magnitude = h * abs_sum;
        } else {
            value = 0.5 * value + h * sum;
            inner_err = 0.5 * inner_err + h * err_sum;
            magnitude = 0.5 * magnitude + h * abs_sum;
        }
        // rounding in the node sum; keeps the estimate nonzero once
        // successive levels agree to the last bit
        let rounding = f64::EPSILON * magnitude;
        if let Some(p) = prev {
            let diff = (value - p).abs();
            history.push(diff);
            let estimate = diff + inner_err + rounding;
            if estimate < tol {
                return QuadratureResult {
                    value,
                    abs_error_estimate: estimate,
                    evaluations: g.evaluations(),
                    converged: true,
                    error_history: history,
                };
            }
        }
        prev = Some(value);
    }
    let estimate = history.last().copied().unwrap_or(f64::INFINITY) + inner_err + f64::EPSILON * magnitude;
    QuadratureResult {
        value,
        abs_error_estimate: estimate,
        evaluations: g.evaluations(),
        converged: false,
        error_history: history,
    }
}

/// ∫₀¹ f(s, 1−s) ds, where the second argument is the exact complement of the first.
pub fn integrate_unit<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> f64,
{
    check_tol(tol)?;
    Ok(run_levels(&mut Plain { f, evals: 0 }, tol))
}

/// ∫ₐᵇ f(x) dx. `f` is never evaluated at a or b.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    check_tol(tol)?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return domain(format!("integration bounds must be finite with a < b, got ({a}, {b})"));
    }
    let width = b - a;
    let mut r = run_levels(
        &mut Plain {
            f: |s: f64, sc: f64| {
                // map from whichever end s is measured
                let x = if s <= 0.5 { a + width * s } else { b - width * sc };
                if x <= a || x >= b {
                    0.0
                } else {
                    f(x)
                }
            },
            evals: 0,
        },
        tol / width,
    );
    r.value *= width;
    r.abs_error_estimate *= width;
    for d in &mut r.error_history {
        *d *= width;
    }
    r.converged = r.converged && r.abs_error_estimate <= tol;
    Ok(r)
}

/// Central-node weight ds/dτ at τ = 0.
const CENTRE_WEIGHT: f64 = PI / 4.0;

struct Iterated<F> {
    f: F,
    tol: f64,
    evals: u64,
}

impl<F: FnMut(f64, f64, f64, f64) -> f64> UnitIntegrand for Iterated<F> {
    fn eval(&mut self, u: f64, uc: f64, weight: f64) -> Option<(f64, f64)> {
        // scale the inner tolerance by how little this outer node contributes
        let scale = (CENTRE_WEIGHT / weight).max(1.0);
        let inner_tol = (self.tol / 10.0) * scale;
        let f = &mut self.f;
        let inner = run_levels(
            &mut Plain {
                f: |t: f64, tc: f64| f(t, tc, u, uc),
                evals: 0,
            },
            inner_tol,
        );
        self.evals += inner.evaluations;
        if !inner.abs_error_estimate.is_finite() || !inner.value.is_finite() {
            return None;
        }
        Some((inner.value, inner.abs_error_estimate))
    }

    fn evaluations(&self) -> u64 {
        self.evals
    }
}

/// ∫₀¹∫₀¹ f(t, 1−t, u, 1−u) dt du, outer over u, inner over t.
///
/// The reported error is the outer level difference plus the weighted sum
/// of inner estimates. Inner tolerance is tol/10 at the central outer node
/// and grows as the outer weight shrinks, so a non-converged inner integral
/// only fails the whole when its weighted error is visible.
pub fn integrate2d_unit<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64, f64, f64) -> f64,
{
    check_tol(tol)?;
    Ok(run_levels(&mut Iterated { f, tol, evals: 0 }, tol))
}

/// ∫₀¹∫₀¹ f(t, u) dt du.
pub fn integrate2d<F>(mut f: F, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> f64,
{
    integrate2d_unit(move |t, _, u, _| f(t, u), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA3: f64 = 1.2020569031595942;
    const ZETA4: f64 = 1.0823232337111381;

    #[test]
    fn node_tables() {
        let levels = level_nodes();
        assert_eq!(levels.len(), MAX_LEVELS);
        for nodes in levels {
            for n in nodes {
                assert!(n.near >= ENDPOINT_GUARD && n.near <= 0.5);
                assert!((n.near + n.far - 1.0).abs() <= f64::EPSILON);
                assert!(n.weight > 0.0);
            }
        }
        // level l adds as many nodes as all earlier levels combined, roughly
        assert!(levels[5].len() > levels[4].len());
    }

    #[test]
    fn constant() {
        let r = integrate(|_| 1.0, 0.0, 1.0, 1e-14).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() <= 1e-15);
        assert!(r.evaluations >= 1);
    }

    #[test]
    fn log_endpoint_integrals() {
        let r = integrate_unit(|t, tc| t.ln().powi(2) / tc, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0 * ZETA3).abs() <= 1e-12, "{}", r.value);
        let r = integrate_unit(|u, uc| u.ln().powi(3) / uc, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value + 6.0 * ZETA4).abs() <= 1e-12, "{}", r.value);
        // the plain interface should do just as well on these
        let r = integrate(|t| t.ln().powi(2) / (1.0 - t), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 2.0 * ZETA3).abs() <= 1e-12);
    }

    #[test]
    fn general_interval_and_additivity() {
        let f = |x: f64| (3.0 * x).sin() + x * x;
        let whole = integrate(f, 0.0, 1.0, 1e-13).unwrap();
        let left = integrate(f, 0.0, 0.3, 1e-13).unwrap();
        let right = integrate(f, 0.3, 1.0, 1e-13).unwrap();
        let exact = (1.0 - 3f64.cos()) / 3.0 + 1.0 / 3.0;
        assert!((whole.value - exact).abs() < 1e-13);
        let combined = whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate;
        assert!((whole.value - left.value - right.value).abs() <= 2.0 * combined.max(1e-15));
        let r = integrate(|x| x, -2.0, 3.0, 1e-12).unwrap();
        assert!((r.value - 2.5).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(integrate(|_| 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(integrate(|_| 1.0, 0.0, 1.0, -1.0).is_err());
        assert!(integrate(|_| 1.0, 1.0, 0.0, 1e-8).is_err());
        assert!(integrate(|_| 1.0, 0.0, f64::INFINITY, 1e-8).is_err());
        let r = integrate(|x| if x > 0.7 { f64::NAN } else { 1.0 }, 0.0, 1.0, 1e-10).unwrap();
        assert!(!r.converged);
        assert!(r.clone().into_result().is_err());
        let r = integrate(|x| 1.0 / (x - 0.5), 0.0, 1.0, 1e-10).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn two_dimensional() {
        let r = integrate2d(|_, _| 1.0, 1e-12).unwrap();
        assert!(r.converged && (r.value - 1.0).abs() < 1e-13);
        let r = integrate2d(|t, u| t * u, 1e-12).unwrap();
        assert!(r.converged && (r.value - 0.25).abs() < 1e-13);
        let r = integrate2d(|_, u| if u > 0.9 { f64::INFINITY } else { 1.0 }, 1e-8).unwrap();
        assert!(!r.converged);
    }
}
