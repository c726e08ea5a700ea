//! Double-precision ζ(s) for integer s ≥ 2 and the Euler–Mascheroni constant.

use std::sync::OnceLock;

use crate::error::{domain, Result};
use crate::exactmath::{bernoulli, harmonic_exact, Rational};

pub use std::f64::consts::PI;

/// Largest s held in the precomputed table.
pub const ZETA_TABLE_MAX: u32 = 20;

/// Uniform absolute error bound claimed for every value from [`zeta`].
pub const ZETA_ABS_ERROR: f64 = 1e-15;

/// Number of terms in the accelerated eta sum; the acceleration error is
/// about (3+√8)⁻ⁿ, far below double precision at this length.
const ETA_TERMS: usize = 30;

#[derive(Debug, Clone)]
pub struct ZetaTable {
    values: Vec<f64>,
    certified_abs_error: f64,
}

impl ZetaTable {
    fn build() -> Self {
        let mut values = vec![f64::NAN; ZETA_TABLE_MAX as usize + 1];
        for s in 2..=ZETA_TABLE_MAX {
            values[s as usize] = zeta_from_eta(s);
        }
        ZetaTable {
            values,
            certified_abs_error: ZETA_ABS_ERROR,
        }
    }

    /// ζ(s) for 2 ≤ s ≤ [`ZETA_TABLE_MAX`].
    pub fn get(&self, s: u32) -> Option<f64> {
        if (2..=ZETA_TABLE_MAX).contains(&s) {
            Some(self.values[s as usize])
        } else {
            None
        }
    }

    pub fn certified_abs_error(&self) -> f64 {
        self.certified_abs_error
    }

    /// (s, ζ(s)) pairs in increasing s.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        (2..=ZETA_TABLE_MAX).map(move |s| (s, self.values[s as usize]))
    }
}

/// The process-wide table, built on first use and read-only afterwards.
pub fn zeta_table() -> &'static ZetaTable {
    static TABLE: OnceLock<ZetaTable> = OnceLock::new();
    TABLE.get_or_init(ZetaTable::build)
}

/// Cohen–Rodriguez Villegas–Zagier acceleration of the alternating eta
/// series η(s) = Σ (−1)ᵏ/(k+1)ˢ, then ζ(s) = η(s)/(1 − 2¹⁻ˢ).
fn zeta_from_eta(s: u32) -> f64 {
    let n = ETA_TERMS;
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut acc = 0.0;
    for k in 0..n {
        c = b - c;
        acc += c * ((k + 1) as f64).powi(-(s as i32));
        let (kf, nf) = (k as f64, n as f64);
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    let eta = acc / d;
    eta / (1.0 - 2f64.powi(1 - s as i32))
}

/// Direct Σ n⁻ˢ for large s, summed from the smallest term up.
fn zeta_direct(s: u32) -> f64 {
    let mut n_max = 1u32;
    while (n_max as f64 + 1.0).powi(-(s as i32)) > 1e-18 {
        n_max += 1;
    }
    (2..=n_max)
        .rev()
        .map(|n| (n as f64).powi(-(s as i32)))
        .sum::<f64>()
        + 1.0
}

/// Riemann ζ(s) for integer s ≥ 2, accurate to [`ZETA_ABS_ERROR`].
pub fn zeta(s: i64) -> Result<f64> {
    if s < 2 {
        return domain(format!("zeta({s}): only integer s >= 2 is supported"));
    }
    let s = u32::try_from(s).unwrap_or(u32::MAX);
    Ok(zeta_table().get(s).unwrap_or_else(|| {
        if s > 1100 {
            1.0
        } else {
            zeta_direct(s)
        }
    }))
}

/// ζ(−m) for 0 ≤ m ≤ 29: ζ(0) = −½, ζ(−m) = −B_{m+1}/(m+1) otherwise
/// (zero at the even m). Used by the near-one polylog expansion.
pub(crate) fn zeta_nonpositive(m: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..=29u32)
            .map(|m| {
                if m == 0 {
                    -0.5
                } else if m % 2 == 0 {
                    0.0
                } else {
                    // ζ(−m) = −B_{m+1}/(m+1) for odd m
                    let b = bernoulli(m + 1).expect("even index");
                    -b.to_f64() / (m + 1) as f64
                }
            })
            .collect()
    });
    table.get(m as usize).copied().unwrap_or(f64::NAN)
}

/// Euler–Mascheroni γ from the Euler–Maclaurin expansion of H_N at N = 10:
/// γ = H_N − ln N − 1/(2N) + Σ_{k=1}^{6} B_{2k}/(2k N^{2k}).
///
/// The rational part is summed exactly so only two roundings reach the result.
pub fn euler_gamma() -> f64 {
    static GAMMA: OnceLock<f64> = OnceLock::new();
    *GAMMA.get_or_init(|| {
        const N: i64 = 10;
        let mut rational = harmonic_exact(N as u64, 1).expect("n >= 1")
            - Rational::new(1, 2 * N).expect("nonzero");
        for k in 1..=6u32 {
            let b = bernoulli(2 * k).expect("even index");
            let denom = Rational::from_integer(2 * k as i64) * Rational::from_integer(N).pow(2 * k);
            rational = rational + b.checked_div(&denom).expect("nonzero");
        }
        rational.to_f64() - std::f64::consts::LN_10
    })
}
