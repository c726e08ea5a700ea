//! Euler sums Σ_{n≥1} [Hₙ]ᵐ/nᑫ for m ∈ {1, 2} by three independent routes:
//! the series itself with an Euler–Maclaurin tail, closed forms in zeta
//! values, and quadrature on polylogarithmic integral representations.

use crate::compensated::CompensatedSum;
use crate::constants::{euler_gamma, zeta};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate2d_unit, integrate_unit, QuadratureResult};
use crate::specfun::{dilog_neg_ratio, polylog, polylog_complement, HarmonicSequence};

/// Σ_{n≥1} [Hₙ]^h_power / nᑫ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EulerSumSpec {
    h_power: u32,
    q: u32,
}

impl EulerSumSpec {
    pub fn new(h_power: u32, q: u32) -> Result<Self> {
        if !(1..=2).contains(&h_power) {
            return domain(format!("harmonic power must be 1 or 2, got {h_power}"));
        }
        if q < 2 {
            return domain(format!("Euler sum with q = {q} diverges"));
        }
        Ok(EulerSumSpec { h_power, q })
    }

    pub fn h_power(&self) -> u32 {
        self.h_power
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

/// Default series cutoff before the tail correction takes over.
pub const SERIES_CUTOFF: u64 = 10_000;

/// Smallest tolerance `sum_series` accepts.
pub const SERIES_MIN_TOL: f64 = 1e-12;

/// One term c · (ln x + γ)ʲ · x^{−α} of a log-power expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
struct LogPowerTerm {
    coef: f64,
    log_pow: u32,
    inv_pow: u32,
}

/// Finite sums of [`LogPowerTerm`]s: closed under d/dx and with elementary ∫_N^∞.
#[derive(Debug, Clone, Default, PartialEq)]
struct LogPowerSum(Vec<LogPowerTerm>);

impl LogPowerSum {
    /// (ln x + γ + 1/(2x) − 1/(12x²) + 1/(120x⁴))ᵐ / xᑫ, dropping x^{−r} with r > 4
    /// inside the power.
    fn harmonic_summand(m: u32, q: u32) -> Self {
        let corrections = [(1u32, 0.5), (2, -1.0 / 12.0), (4, 1.0 / 120.0)];
        // A as a polynomial in (L, 1/x): entries (coef, log_pow, inv_pow)
        let mut base = vec![LogPowerTerm { coef: 1.0, log_pow: 1, inv_pow: 0 }];
        base.extend(corrections.iter().map(|&(r, c)| LogPowerTerm { coef: c, log_pow: 0, inv_pow: r }));
        let mut acc = vec![LogPowerTerm { coef: 1.0, log_pow: 0, inv_pow: 0 }];
        for _ in 0..m {
            let mut next: Vec<LogPowerTerm> = Vec::new();
            for a in &acc {
                for b in &base {
                    let t = LogPowerTerm {
                        coef: a.coef * b.coef,
                        log_pow: a.log_pow + b.log_pow,
                        inv_pow: a.inv_pow + b.inv_pow,
                    };
                    if t.inv_pow > 4 {
                        continue;
                    }
                    match next.iter_mut().find(|e| e.log_pow == t.log_pow && e.inv_pow == t.inv_pow) {
                        Some(e) => e.coef += t.coef,
                        None => next.push(t),
                    }
                }
            }
            acc = next;
        }
        for t in &mut acc {
            t.inv_pow += q;
        }
        LogPowerSum(acc)
    }

    fn eval(&self, x: f64) -> f64 {
        let l = x.ln() + euler_gamma();
        self.0
            .iter()
            .map(|t| t.coef * l.powi(t.log_pow as i32) * x.powi(-(t.inv_pow as i32)))
            .sum()
    }

    fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.0 {
            if t.log_pow > 0 {
                out.push(LogPowerTerm {
                    coef: t.coef * t.log_pow as f64,
                    log_pow: t.log_pow - 1,
                    inv_pow: t.inv_pow + 1,
                });
            }
            if t.inv_pow > 0 {
                out.push(LogPowerTerm {
                    coef: -t.coef * t.inv_pow as f64,
                    log_pow: t.log_pow,
                    inv_pow: t.inv_pow + 1,
                });
            }
        }
        LogPowerSum(out)
    }

    /// ∫_N^∞, valid when every x-power exceeds 1:
    /// ∫_N^∞ Lʲ x^{−α} dx = N^{1−α} Σ_{i=0}^{j} j!/(j−i)! · L(N)^{j−i}/(α−1)^{i+1}.
    fn integral_to_infinity(&self, n: f64) -> f64 {
        let l = n.ln() + euler_gamma();
        self.0
            .iter()
            .map(|t| {
                debug_assert!(t.inv_pow >= 2);
                let a1 = (t.inv_pow - 1) as f64;
                let mut falling = 1.0;
                let mut s = 0.0;
                for i in 0..=t.log_pow {
                    if i > 0 {
                        falling *= (t.log_pow - i + 1) as f64;
                    }
                    s += falling * l.powi((t.log_pow - i) as i32) / a1.powi(i as i32 + 1);
                }
                t.coef * n.powf(-a1) * s
            })
            .sum()
    }
}

/// Σ_{n>N} f(n) ≈ ∫_N^∞ f − f(N)/2 − Σ_{k=1}^{3} B_{2k}/(2k)! f^{(2k−1)}(N).
fn euler_maclaurin_tail(f: &LogPowerSum, n: f64) -> f64 {
    // B₂/2!, B₄/4!, B₆/6!
    const COEFS: [f64; 3] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0];
    let mut tail = f.integral_to_infinity(n) - 0.5 * f.eval(n);
    let mut d = f.derivative();
    for (k, c) in COEFS.iter().enumerate() {
        tail -= c * d.eval(n);
        if k + 1 < COEFS.len() {
            d = d.derivative().derivative();
        }
    }
    tail
}

/// Partial sum to `cutoff` plus the Euler–Maclaurin tail.
pub fn sum_series_with_cutoff(spec: EulerSumSpec, cutoff: u64) -> Result<f64> {
    if cutoff < 10 {
        return domain(format!("series cutoff {cutoff} too small for the asymptotic tail"));
    }
    let (m, q) = (spec.h_power as i32, spec.q as i32);
    let mut acc = CompensatedSum::new();
    for (n, h) in HarmonicSequence::new().take(cutoff as usize) {
        acc.add(h.powi(m) / (n as f64).powi(q));
    }
    let f = LogPowerSum::harmonic_summand(spec.h_power, spec.q);
    acc.add(euler_maclaurin_tail(&f, cutoff as f64));
    Ok(acc.value())
}

/// Σ [Hₙ]ᵐ/nᑫ via the accelerated series. The cutoff is doubled once as a
/// self-check; a change larger than `tol` is reported as an error.
pub fn sum_series(spec: EulerSumSpec, tol: f64) -> Result<f64> {
    if !(tol >= SERIES_MIN_TOL) {
        return domain(format!("series tolerance must be >= {SERIES_MIN_TOL:e}, got {tol}"));
    }
    let coarse = sum_series_with_cutoff(spec, SERIES_CUTOFF)?;
    let fine = sum_series_with_cutoff(spec, 2 * SERIES_CUTOFF)?;
    let delta = (fine - coarse).abs();
    if delta > tol {
        return Err(Error::Series { delta, tol });
    }
    Ok(fine)
}

/// ½ Σ_{j=2}^{2p} (−1)ʲ ζ(j) ζ(2p−j+2), the closed form of Σ Hₙ/n^{2p+1}.
pub fn sum_gp_closed_form(p: u32) -> Result<f64> {
    if p < 1 {
        return domain("closed form requires p >= 1");
    }
    let mut acc = CompensatedSum::new();
    for j in 2..=2 * p {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(sign * zeta(j as i64)? * zeta((2 * p - j + 2) as i64)?);
    }
    Ok(0.5 * acc.value())
}

/// ln t from the pair (t, 1−t), using whichever is exact.
fn log_of(t: f64, tc: f64) -> f64 {
    if t < 0.5 {
        t.ln()
    } else {
        (-tc).ln_1p()
    }
}

/// ∫₀¹ Li_order(1−t) log t/(1−t) dt.
pub fn polylog_log_integral(order: u32, tol: f64) -> Result<QuadratureResult> {
    if order < 1 {
        return domain("integrand requires Li order >= 1");
    }
    let r = integrate_unit(
        |t, tc| polylog_complement(order as i64, t).unwrap_or(f64::NAN) * log_of(t, tc) / tc,
        tol,
    )?;
    r.into_result()
}

/// −∫₀¹ Li_{q−1}(1−t) log t/(1−t) dt with its quadrature record.
pub fn sum_via_integral_detailed(q: u32, tol: f64) -> Result<QuadratureResult> {
    if q < 2 {
        return domain(format!("integral representation requires q >= 2, got {q}"));
    }
    let mut r = polylog_log_integral(q - 1, tol)?;
    r.value = -r.value;
    Ok(r)
}

/// Σ Hₙ/nᑫ as −∫₀¹ Li_{q−1}(1−t) log t/(1−t) dt.
pub fn sum_via_integral(q: u32, tol: f64) -> Result<f64> {
    sum_via_integral_detailed(q, tol).map(|r| r.value)
}

/// ∫₀¹ logᵖu/(1−u) du by quadrature; equals (−1)ᵖ p! ζ(p+1).
pub fn log_power_integral(p: u32, tol: f64) -> Result<QuadratureResult> {
    integrate_unit(|u, uc| log_of(u, uc).powi(p as i32) / uc, tol)?.into_result()
}

fn check_open_unit(u: f64) -> Result<()> {
    if !(u > 0.0 && u < 1.0) {
        return domain(format!("u must lie in (0, 1), got {u}"));
    }
    Ok(())
}

/// ∫₀¹ log t/(1−(1−t)(1−u)) dt in closed form, Li₂(−(1−u)/u)/(1−u).
pub fn inner_integral(u: f64) -> Result<f64> {
    check_open_unit(u)?;
    Ok(dilog_neg_ratio(u)? / (1.0 - u))
}

/// The same inner integral by quadrature.
pub fn inner_integral_quadrature(u: f64, tol: f64) -> Result<QuadratureResult> {
    check_open_unit(u)?;
    // 1 − (1−t)(1−u) = t + u(1−t)
    integrate_unit(|t, tc| log_of(t, tc) / (t + u * tc), tol)?.into_result()
}

/// Σ[Hₙ]²/n² as the outer integral ∫₀¹ (log u/(1−u)) Li₂(−(1−u)/u) du,
/// with the dilogarithm taken through its Landen form.
pub fn quadratic_sum_q2_via_outer_detailed(tol: f64) -> Result<QuadratureResult> {
    if !(tol >= SERIES_MIN_TOL) {
        return domain(format!("tolerance must be >= {SERIES_MIN_TOL:e}, got {tol}"));
    }
    integrate_unit(
        |u, uc| log_of(u, uc) / uc * dilog_neg_ratio(u).unwrap_or(f64::NAN),
        tol,
    )?
    .into_result()
}

pub fn quadratic_sum_q2_via_outer(tol: f64) -> Result<f64> {
    quadratic_sum_q2_via_outer_detailed(tol).map(|r| r.value)
}

/// The two pieces the Landen substitution splits the outer integral into:
/// (−½∫ log³u/(1−u), −∫ Li₂(1−u) log u/(1−u)).
pub fn landen_components(tol: f64) -> Result<(f64, f64)> {
    let cubic = -0.5 * log_power_integral(3, tol)?.value;
    let dilog = -polylog_log_integral(2, tol)?.value;
    Ok((cubic, dilog))
}

/// Li_{q−2}(p)/p with p = (1−t)(1−u) ≤ ½ or order ≥ 2, finite as p → 0.
fn polylog_over_arg(order: u32, p: f64) -> f64 {
    match order {
        0 => 1.0 / (1.0 - p),
        1 if p < 1e-300 => 1.0,
        1 => -(-p).ln_1p() / p,
        _ if p < 1e-300 => 1.0,
        _ => polylog(order as i64, p).unwrap_or(f64::NAN) / p,
    }
}

/// Li_{q−2}[(1−t)(1−u)] log t log u / ((1−t)(1−u)), given both coordinates
/// and their complements.
pub fn quadratic_kernel_split(q: u32, t: f64, tc: f64, u: f64, uc: f64) -> f64 {
    let logs = log_of(t, tc) * log_of(u, uc);
    // 1 − (1−t)(1−u), without cancellation when t and u are small
    let one_minus_p = (t + u) - t * u;
    let p = tc * uc;
    match q {
        2 => logs / one_minus_p,
        3 if p > 0.5 => -one_minus_p.ln() / p * logs,
        _ => logs * polylog_over_arg(q - 2, p),
    }
}

/// Pointwise kernel of the double-integral representation, for t, u ∈ (0, 1).
pub fn quadratic_kernel(q: u32, t: f64, u: f64) -> f64 {
    quadratic_kernel_split(q, t, 1.0 - t, u, 1.0 - u)
}

/// Smallest tolerance the 2-D representation is asked for.
pub const DOUBLE_INTEGRAL_MIN_TOL: f64 = 1e-8;

/// Σ[Hₙ]²/nᑫ for q ∈ {2, 3} as a raw 2-D quadrature.
pub fn quadratic_sum_double_integral_detailed(q: u32, tol: f64) -> Result<QuadratureResult> {
    if !(q == 2 || q == 3) {
        return domain(format!("double integral implemented for q = 2, 3 only, got {q}"));
    }
    if !(tol >= DOUBLE_INTEGRAL_MIN_TOL) {
        return domain(format!("2-D tolerance must be >= {DOUBLE_INTEGRAL_MIN_TOL:e}, got {tol}"));
    }
    integrate2d_unit(|t, tc, u, uc| quadratic_kernel_split(q, t, tc, u, uc), tol)?.into_result()
}

pub fn quadratic_sum_double_integral(q: u32, tol: f64) -> Result<f64> {
    quadratic_sum_double_integral_detailed(q, tol).map(|r| r.value)
}
