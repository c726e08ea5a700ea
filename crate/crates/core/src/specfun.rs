//! Integer-order polylogarithms on [−1, 1], harmonic numbers in floating
//! point, and the Landen form of the dilogarithm at −(1−u)/u.
//!
//! Li_s(x) is evaluated by its Taylor series for |x| ≤ ½ and by the
//! expansion in powers of ln x for ½ < x < 1,
//!
//! Li_n(x) = Σ_{k≠n−1} ζ(n−k) lnᵏx/k! + ln^{n−1}x/(n−1)! · (H_{n−1} − ln(−ln x)),
//!
//! which converges geometrically (ratio |ln x|/2π) and stays accurate all
//! the way to x → 1. Arguments in [−1, −½) go through the duplication
//! relation Li_s(x) = 2^{1−s} Li_s(x²) − Li_s(−x).

use crate::compensated::CompensatedSum;
use crate::constants::{euler_gamma, zeta, zeta_nonpositive, ZETA_ABS_ERROR};
use crate::error::{domain, Result};

const EPS: f64 = f64::EPSILON;
const SERIES_REL_STOP: f64 = 1e-17;
const TINY: f64 = 1e-308;

/// A polylogarithm value together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogEval {
    pub order: u32,
    pub argument: f64,
    pub value: f64,
    pub abs_error_bound: f64,
}

#[derive(Clone, Copy)]
struct Approx {
    value: f64,
    bound: f64,
}

fn check_order(s: i64) -> Result<u32> {
    if s < 0 {
        return domain(format!("polylog order {s} < 0"));
    }
    u32::try_from(s).or_else(|_| domain(format!("polylog order {s} too large")))
}

/// Li_s(x) with an error bound.
pub fn polylog_eval(s: i64, x: f64) -> Result<PolylogEval> {
    let order = check_order(s)?;
    if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
        return domain(format!("polylog argument {x} outside [-1, 1]"));
    }
    if x == 1.0 && order <= 1 {
        return domain(format!("Li_{order}(1) diverges"));
    }
    let a = li(order, x);
    Ok(PolylogEval {
        order,
        argument: x,
        value: a.value,
        abs_error_bound: a.bound,
    })
}

/// Li_s(x) for integer s ≥ 0 and x ∈ [−1, 1) (x = 1 allowed when s ≥ 2).
pub fn polylog(s: i64, x: f64) -> Result<f64> {
    polylog_eval(s, x).map(|e| e.value)
}

/// Li_s(1 − t), taking the distance t from 1 directly so the argument is
/// never rounded; t ∈ [0, 2] (t = 0 needs s ≥ 2).
pub fn polylog_complement(s: i64, t: f64) -> Result<f64> {
    let order = check_order(s)?;
    if !t.is_finite() || !(0.0..=2.0).contains(&t) {
        return domain(format!("polylog complement {t} outside [0, 2]"));
    }
    if t == 0.0 && order <= 1 {
        return domain(format!("Li_{order}(1) diverges"));
    }
    Ok(li_complement(order, t).value)
}

fn li(order: u32, x: f64) -> Approx {
    match order {
        0 => Approx {
            value: x / (1.0 - x),
            bound: 2.0 * EPS * (x / (1.0 - x)).abs(),
        },
        1 => {
            let v = -(-x).ln_1p();
            Approx { value: v, bound: 2.0 * EPS * v.abs() }
        }
        _ => {
            if x == 1.0 {
                let z = zeta(order as i64).expect("order >= 2");
                Approx { value: z, bound: ZETA_ABS_ERROR }
            } else if x.abs() <= 0.5 {
                taylor(order, x)
            } else if x > 0.5 {
                near_one(order, x.ln(), x.ln().abs() * EPS)
            } else {
                // x ∈ [−1, −½): x² ∈ (¼, 1], −x ∈ (½, 1]
                let sq = li(order, x * x);
                let neg = li(order, -x);
                let scale = 2f64.powi(1 - order as i32);
                let value = scale * sq.value - neg.value;
                Approx {
                    value,
                    bound: scale * sq.bound + neg.bound + EPS * value.abs(),
                }
            }
        }
    }
}

fn li_complement(order: u32, t: f64) -> Approx {
    match order {
        0 => {
            let v = (1.0 - t) / t;
            Approx { value: v, bound: 2.0 * EPS * v.abs() }
        }
        1 => {
            let v = -t.ln();
            Approx { value: v, bound: 2.0 * EPS * v.abs() }
        }
        _ if t >= 0.5 => li(order, 1.0 - t),
        _ if t == 0.0 => li(order, 1.0),
        _ => near_one(order, (-t).ln_1p(), EPS * t),
    }
}

/// Σ xᵏ/kˢ, stopping once a term drops below 1e−17 of the partial sum.
fn taylor(order: u32, x: f64) -> Approx {
    let mut acc = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut pow = 1.0;
    for k in 1..=2000u32 {
        pow *= x;
        let term = pow / (k as f64).powi(order as i32);
        acc.add(term);
        abs_sum += term.abs();
        if term.abs() < SERIES_REL_STOP * acc.value().abs().max(TINY) {
            break;
        }
    }
    Approx {
        value: acc.value(),
        bound: 4.0 * EPS * abs_sum + EPS * acc.value().abs(),
    }
}

/// The ln x expansion, with `log_x = ln x ∈ [−ln 2, 0)` and `log_err` its
/// absolute uncertainty.
fn near_one(order: u32, log_x: f64, log_err: f64) -> Approx {
    let n = order;
    let mut acc = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut zeta_err = 0.0;
    // lnᵏx / k!
    let mut pw = 1.0;
    let mut k = 0u32;
    loop {
        if k > 0 {
            pw *= log_x / k as f64;
        }
        if k + 1 == n {
            let h: f64 = (1..n).map(|j| 1.0 / j as f64).sum();
            let term = pw * (h - (-log_x).ln());
            acc.add(term);
            abs_sum += term.abs();
        } else if k + 1 < n {
            let z = zeta((n - k) as i64).expect("n - k >= 2");
            let term = z * pw;
            acc.add(term);
            abs_sum += term.abs();
            zeta_err += ZETA_ABS_ERROR * pw.abs();
        } else {
            let m = k - n;
            let z = zeta_nonpositive(m);
            if z.is_nan() {
                break;
            }
            if z != 0.0 {
                let term = z * pw;
                acc.add(term);
                abs_sum += term.abs();
                if term.abs() < SERIES_REL_STOP * acc.value().abs().max(TINY) {
                    break;
                }
            }
        }
        k += 1;
    }
    // d/d(ln x) Li_n = Li_{n−1}, which is bounded by ζ(n−1) or ~|ln(−ln x)| for n = 2
    let sensitivity = if n == 2 { 1.0 + (-log_x).ln().abs() } else { 2.0 };
    Approx {
        value: acc.value(),
        bound: 4.0 * EPS * abs_sum + zeta_err + sensitivity * log_err,
    }
}

/// Li₂(−(1−u)/u) through the Landen right-hand side −½ln²u − Li₂(1−u),
/// which stays finite and well conditioned as u → 0.
pub fn dilog_neg_ratio(u: f64) -> Result<f64> {
    if !(u > 0.0 && u <= 1.0) {
        return domain(format!("dilog_neg_ratio requires 0 < u <= 1, got {u}"));
    }
    let l = u.ln();
    Ok(-0.5 * l * l - li_complement(2, u).value)
}

/// Above this, harmonic_float switches to the asymptotic expansion.
pub const HARMONIC_DIRECT_MAX: u64 = 1_000_000;

/// Hₙ in double precision.
pub fn harmonic_float(n: u64) -> Result<f64> {
    if n == 0 {
        return domain("harmonic number requires n >= 1");
    }
    if n <= HARMONIC_DIRECT_MAX {
        let acc: CompensatedSum = (1..=n).rev().map(|k| 1.0 / k as f64).collect();
        Ok(acc.value())
    } else {
        Ok(harmonic_asymptotic(n as f64))
    }
}

/// ln x + γ + 1/(2x) − 1/(12x²) + 1/(120x⁴).
pub fn harmonic_asymptotic(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x.ln() + euler_gamma() + 0.5 * inv - inv2 / 12.0 + inv2 * inv2 / 120.0
}

/// Running Hₙ for consecutive n, compensated against drift.
#[derive(Debug, Clone, Default)]
pub struct HarmonicSequence {
    n: u64,
    acc: CompensatedSum,
}

impl HarmonicSequence {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for HarmonicSequence {
    /// (n, Hₙ)
    type Item = (u64, f64);

    fn next(&mut self) -> Option<(u64, f64)> {
        self.n += 1;
        self.acc.add(1.0 / self.n as f64);
        Some((self.n, self.acc.value()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::harmonic_exact;

    /// mpmath values, rounded to nearest double.
    const LI_REF: &[(i64, f64, f64)] = &[
        (2, 0.5, 0.5822405264650125),
        (2, 0.9, 1.2997147230049588),
        (2, 0.999, 1.6370226052761176),
        (3, 0.75, 0.8444258088622044),
        (3, -0.75, -0.6917036036904595),
        (4, 0.6, 0.6258516695036639),
        (6, 0.99, 1.006976049428916),
        (2, -0.5, -0.4484142069236462),
        (5, 0.3, 0.3029324080381147),
    ];

    #[test]
    fn spot_values() {
        assert_eq!(polylog(0, 0.5).unwrap(), 1.0);
        assert!((polylog(2, 1.0).unwrap() - 1.6449340668482264).abs() < 1e-15);
        assert!((polylog(2, -1.0).unwrap() + 0.8224670334241132).abs() < 1e-14);
        assert!((polylog(1, 0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-16);
        for &(s, x, want) in LI_REF {
            let got = polylog_eval(s, x).unwrap();
            assert!((got.value - want).abs() <= 1e-14, "Li_{s}({x}) = {} want {want}", got.value);
            assert!(got.abs_error_bound < 1e-14);
            assert!((got.value - want).abs() <= got.abs_error_bound.max(2.0 * EPS));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(polylog(2, 1.5).is_err());
        assert!(polylog(2, -1.01).is_err());
        assert!(polylog(1, 1.0).is_err());
        assert!(polylog(0, 1.0).is_err());
        assert!(polylog(-1, 0.5).is_err());
        assert!(polylog(2, f64::NAN).is_err());
        assert!(polylog_complement(1, 0.0).is_err());
        assert!(dilog_neg_ratio(0.0).is_err());
        assert!(dilog_neg_ratio(-0.5).is_err());
        assert!(dilog_neg_ratio(1.5).is_err());
    }

    #[test]
    fn complement_matches_direct() {
        for i in 1..200 {
            let t = i as f64 / 200.0;
            for s in 0..6 {
                let a = polylog_complement(s, t).unwrap();
                let b = polylog(s, 1.0 - t).unwrap();
                assert!((a - b).abs() <= 1e-14 * b.abs().max(1.0), "s={s} t={t}");
            }
        }
        // the complement path keeps working where 1 − t rounds to 1
        assert!((polylog_complement(1, 1e-20).unwrap() - 46.051701859880914).abs() < 1e-13);
        assert!((polylog_complement(2, 1e-20).unwrap() - 1.6449340668482264).abs() < 1e-15);
    }

    #[test]
    fn branch_seams_are_continuous() {
        for s in 2..8 {
            for &x in &[0.5, -0.5] {
                let lo = polylog(s, x - 1e-12).unwrap();
                let hi = polylog(s, x + 1e-12).unwrap();
                assert!((lo - hi).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn derivative_relation() {
        let h = 1e-6;
        for s in 1..6i64 {
            for i in 0..=18 {
                let x = 0.05 + 0.05 * i as f64;
                let d = (polylog(s, x + h).unwrap() - polylog(s, x - h).unwrap()) / (2.0 * h);
                let want = polylog(s - 1, x).unwrap();
                assert!(((x * d - want) / want).abs() <= 1e-6, "s={s} x={x}");
            }
        }
    }

    #[test]
    fn monotone_in_order_and_dominated() {
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let li0 = x / (1.0 - x);
            let mut prev = polylog(0, x).unwrap();
            assert!((prev - li0).abs() <= 2.0 * EPS * li0);
            for s in 1..10 {
                let v = polylog(s, x).unwrap();
                assert!(v > 0.0 && v < prev && v <= li0, "s={s} x={x}");
                prev = v;
            }
        }
    }

    #[test]
    fn li1_is_log() {
        for i in 0..=199 {
            let x = -1.0 + i as f64 * (1.99 / 199.0);
            assert!((polylog(1, x).unwrap() + (1.0 - x).ln()).abs() <= 1e-15);
        }
    }

    #[test]
    fn landen_values() {
        assert_eq!(dilog_neg_ratio(1.0).unwrap(), 0.0);
        assert!((dilog_neg_ratio(0.5).unwrap() + 0.8224670334241132).abs() < 1e-15);
        // Li₂(−3)
        assert!((dilog_neg_ratio(0.25).unwrap() + 1.9393754207667089).abs() < 1e-14);
    }

    #[test]
    fn landen_two_paths() {
        for i in 0..1000 {
            let u = 0.51 + (0.999 - 0.51) * i as f64 / 999.0;
            let a = dilog_neg_ratio(u).unwrap();
            let b = polylog(2, -(1.0 - u) / u).unwrap();
            assert!((a - b).abs() <= 1e-12, "u={u}");
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic_float(1).unwrap(), 1.0);
        assert_eq!(harmonic_float(3).unwrap(), 1.8333333333333333);
        let exact = harmonic_exact(100, 1).unwrap().to_f64();
        assert!((harmonic_float(100).unwrap() - exact).abs() <= 1e-13);
        assert!(harmonic_float(0).is_err());
        let seq: Vec<f64> = HarmonicSequence::new().take(100).map(|(_, h)| h).collect();
        assert!((seq[99] - exact).abs() <= 1e-15);
    }

    #[test]
    fn gamma_consistency_with_harmonic() {
        let n = 1_000_000u64;
        let d = harmonic_float(n).unwrap() - (n as f64).ln() - euler_gamma();
        assert!(d > 0.0 && d < 1e-6, "{d}");
        let above = harmonic_float(n + 1).unwrap();
        assert!((above - harmonic_float(n).unwrap() - 1.0 / (n + 1) as f64).abs() < 1e-14);
    }
}
