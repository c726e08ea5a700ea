//! Exact integer and rational arithmetic.
//!
//! Everything here is computed without rounding. The finite sums are the
//! generalised harmonic numbers, the alternating binomial sums and the
//! monomial-moment expansion of `n ∫₀¹ (1−t)ⁿ⁻¹ logᵖt dt`; the latter is an
//! independent route to the alternating sums, so the two can be compared
//! by structural equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};

/// Exact fraction, always held in canonical form (reduced, positive denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`; a zero denominator is a domain error.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return domain("rational with zero denominator");
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// `self / other`; division by zero is a domain error instead of a panic.
    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.is_zero() {
            return domain("rational division by zero");
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Nearest-ish `f64`. Numerator and denominator are scaled first so that
    /// huge operands (factorials, Bernoulli denominators) do not overflow.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        let n = self.numer();
        let d = self.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let ns = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let ds = (d >> shift).to_f64().unwrap_or(f64::NAN);
        ns / ds
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return domain(format!("binomial({n}, {k}) requires k <= n"));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Generalised harmonic number Σ_{k=1..n} 1/kʳ.
pub fn harmonic_exact(n: u64, r: u32) -> Result<Rational> {
    if n == 0 {
        return domain("harmonic number requires n >= 1");
    }
    if r == 0 {
        return domain("harmonic number requires r >= 1");
    }
    // common-denominator accumulation keeps the intermediate fractions unreduced
    let mut numer = BigInt::zero();
    let mut denom = BigInt::one();
    for k in 1..=n {
        let kr = num_traits::pow(BigInt::from(k), r as usize);
        numer = numer * &kr + &denom;
        denom *= kr;
        let g = numer.gcd(&denom);
        if !g.is_one() {
            numer /= &g;
            denom /= &g;
        }
    }
    Rational::new(numer, denom)
}

/// Σ_{k=1..n} C(n,k)(−1)ᵏ/kᵖ.
pub fn alt_binomial_sum(n: u64, p: u32) -> Result<Rational> {
    if n == 0 || p == 0 {
        return domain("alternating binomial sum requires n >= 1 and p >= 1");
    }
    let mut terms = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let c = binomial(n, k)?;
        let signed = if k % 2 == 1 { -c } else { c };
        terms.push(Rational::new(signed, num_traits::pow(BigInt::from(k), p as usize))?);
    }
    Ok(terms.into_iter().sum())
}

/// (−1)^{p+1} · n · ∫₀¹(1−t)ⁿ⁻¹ logᵖt dt, expanded term by term.
///
/// Uses (1−t)ⁿ⁻¹ = Σ_j C(n−1,j)(−t)ʲ and ∫₀¹ tʲ logᵖt dt = (−1)ᵖ p!/(j+1)ᵖ⁺¹.
/// The signs combine to an overall −n·p!, leaving
/// −n·p! · Σ_{j=0}^{n−1} C(n−1,j)(−1)ʲ/(j+1)ᵖ⁺¹.
pub fn moment_integral_exact(n: u64, p: u32) -> Result<Rational> {
    if n == 0 || p == 0 {
        return domain("moment integral requires n >= 1 and p >= 1");
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        let c = binomial(n - 1, j)?;
        let signed = if j % 2 == 1 { -c } else { c };
        acc = acc + Rational::new(signed, num_traits::pow(BigInt::from(j + 1), p as usize + 1))?;
    }
    let scale = Rational::from_integer(-(BigInt::from(n) * factorial(p as u64)));
    Ok(scale * acc)
}

const BERNOULLI_MEMO: usize = 30;

fn bernoulli_table(upto: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(upto + 1);
    table.push(Rational::one());
    for m in 1..=upto {
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let mut acc = Rational::zero();
        for (k, bk) in table.iter().enumerate() {
            if bk.is_zero() {
                continue;
            }
            let c = binomial(m as u64 + 1, k as u64).expect("k <= m + 1");
            acc = acc + Rational::from_integer(c) * bk.clone();
        }
        let bm = Rational::new(-acc.numer().clone(), acc.denom() * BigInt::from(m + 1))
            .expect("nonzero denominator");
        table.push(bm);
    }
    table
}

fn memo() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_table(BERNOULLI_MEMO))
}

/// Bernoulli number B_m for even m.
pub fn bernoulli(m: u32) -> Result<Rational> {
    if m % 2 == 1 {
        return domain(format!("bernoulli({m}): only even indices are exposed"));
    }
    let m = m as usize;
    if m <= BERNOULLI_MEMO {
        Ok(memo()[m].clone())
    } else {
        Ok(bernoulli_table(m).swap_remove(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// Pascal triangle, independent of the multiplicative formula.
    fn pascal_row(n: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2).unwrap(), BigInt::from(10));
        for n in 0..20 {
            assert_eq!(binomial(n, 0).unwrap(), BigInt::one());
        }
        assert_eq!(binomial(30, 15).unwrap(), BigInt::from(155_117_520u64));
        let row = pascal_row(30);
        for (k, v) in row.iter().enumerate() {
            assert_eq!(&binomial(30, k as u64).unwrap(), v);
        }
        assert!(binomial(3, 4).is_err());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic_exact(1, 1).unwrap(), Rational::one());
        assert_eq!(harmonic_exact(3, 1).unwrap(), q(11, 6));
        assert_eq!(harmonic_exact(3, 2).unwrap(), q(49, 36));
        assert!(harmonic_exact(0, 1).is_err());
        assert!(harmonic_exact(4, 0).is_err());
    }

    #[test]
    fn harmonic_step() {
        for r in 1..4u32 {
            for n in 2..40u64 {
                let d = harmonic_exact(n, r).unwrap() - harmonic_exact(n - 1, r).unwrap();
                assert_eq!(d, Rational::new(1, num_traits::pow(BigInt::from(n), r as usize)).unwrap());
            }
        }
    }

    #[test]
    fn alt_sum_values() {
        assert_eq!(alt_binomial_sum(1, 1).unwrap(), q(-1, 1));
        assert_eq!(alt_binomial_sum(3, 1).unwrap(), q(-11, 6));
        assert_eq!(alt_binomial_sum(2, 2).unwrap(), q(-7, 4));
        assert!(alt_binomial_sum(0, 1).is_err());
        assert!(alt_binomial_sum(3, 0).is_err());
    }

    #[test]
    fn moment_values() {
        assert_eq!(moment_integral_exact(1, 1).unwrap(), q(-1, 1));
        assert_eq!(moment_integral_exact(2, 2).unwrap(), q(-7, 2));
        assert_eq!(moment_integral_exact(3, 1).unwrap(), alt_binomial_sum(3, 1).unwrap());
        assert!(moment_integral_exact(0, 2).is_err());
    }

    #[test]
    fn alt_sum_is_negative_harmonic() {
        for n in 1..=60 {
            assert_eq!(alt_binomial_sum(n, 1).unwrap(), -harmonic_exact(n, 1).unwrap());
        }
    }

    #[test]
    fn binomial_moment_identity() {
        for n in 1..=12u64 {
            for p in 1..=4u32 {
                let lhs = Rational::from_integer(factorial(p as u64)) * alt_binomial_sum(n, p).unwrap();
                assert_eq!(lhs, moment_integral_exact(n, p).unwrap(), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), Rational::one());
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert_eq!(bernoulli(30).unwrap(), Rational::new(8_615_841_276_005i64, 14322).unwrap());
        assert_eq!(bernoulli(32).unwrap(), Rational::new(-7_709_321_041_217i64, 510).unwrap());
        assert!(bernoulli(3).is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(q(1, 2).checked_div(&Rational::zero()).is_err());
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn display_and_float() {
        assert_eq!(q(-14, 4).to_string(), "-7/2");
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(1, 3).to_f64(), 1.0 / 3.0);
        let big = Rational::from_integer(factorial(200)).checked_div(&Rational::from_integer(factorial(199))).unwrap();
        assert_eq!(big.to_f64(), 200.0);
        let ratio = Rational::new(factorial(400) + BigInt::one(), factorial(400) * BigInt::from(3)).unwrap();
        assert!((ratio.to_f64() - 1.0 / 3.0).abs() < 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn frac() -> impl Strategy<Value = Rational> {
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
        }

        fn is_canonical(r: &Rational) -> bool {
            r.denom().is_positive() && r.numer().abs().gcd(r.denom()).is_one()
        }

        proptest! {
            #[test]
            fn add_sub_round_trip(a in frac(), b in frac()) {
                let s = &a + &b;
                prop_assert!(is_canonical(&s));
                prop_assert_eq!(&s - &b, a);
            }

            #[test]
            fn products_are_canonical(a in frac(), b in frac()) {
                let p = &a * &b;
                prop_assert!(is_canonical(&p));
                if !b.is_zero() {
                    let back = p.checked_div(&b).unwrap();
                    prop_assert!(is_canonical(&back));
                    prop_assert_eq!(back, a);
                }
            }
        }
    }
}
