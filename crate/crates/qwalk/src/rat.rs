//! Exact rational scalars and small integer helpers shared across the crate.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (`num_rational` maintains both invariants).
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// n-th Catalan number `binom(2n,n)/(n+1)`.
pub fn catalan(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binomial(2 * n, n) / BigInt::from(n + 1)
}

pub fn factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// `num/den` as an f64, correct to one ulp even when both sides are far
/// outside the f64 range. Used only for asymptotic ratio reports.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if num.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let n = num.magnitude();
    let d = den.magnitude();
    // Shift so that the integer quotient carries ~60 significant bits.
    let shift = d.bits() as i64 + 60 - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as u64) / d
    } else {
        n / (d << (-shift) as u64)
    };
    let mantissa = q.to_f64().expect("quotient fits after shifting");
    sign * mantissa * 2f64.powi(-shift as i32)
}

/// Exact u64 extraction for counts known to be small.
pub fn biguint_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_and_catalan() {
        assert_eq!(binomial(6, 3), big(20));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(5, 7), big(0));
        let cats: Vec<BigInt> = (0..8).map(catalan).collect();
        let want = [1, 1, 2, 5, 14, 42, 132, 429];
        for (c, w) in cats.iter().zip(want) {
            assert_eq!(c, &big(w));
        }
    }

    #[test]
    fn ratio_conversion_handles_huge_values() {
        // 10^400 / (2 * 10^400) = 0.5 exactly, far outside f64 range.
        let n = BigInt::from(10u32).pow(400);
        let d = &n * big(2);
        let r = ratio_to_f64(&n, &d);
        assert!((r - 0.5).abs() < 1e-15);
        let neg = ratio_to_f64(&(-&n), &d);
        assert!((neg + 0.5).abs() < 1e-15);
    }
}
