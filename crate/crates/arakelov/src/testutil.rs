//! Assertion helpers for comparing enclosures against decimal references.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rigor::{BigFloat, Interval};

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn bigfloat_to_rational(f: &BigFloat) -> BigRational {
    let (num, den_pow2) = f.to_int_scaled();
    BigRational::new(num, BigInt::one() << den_pow2 as usize)
}

pub fn rational_from_decimal(s: &str) -> BigRational {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse::<BigInt>().unwrap() * BigInt::from(sign);
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    BigRational::new(num, den)
}

/// The enclosure must sit within `10^-tol_pow10` of the reference digits
/// and be at most twice that wide itself.
pub fn assert_encloses(iv: &Interval, reference: &str, tol_pow10: u32) {
    let oracle = rational_from_decimal(reference);
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(tol_pow10));
    let lo = bigfloat_to_rational(iv.lo());
    let hi = bigfloat_to_rational(iv.hi());
    assert!(lo <= &oracle + &tol, "lo too high for {reference}: {iv}");
    assert!(hi >= &oracle - &tol, "hi too low for {reference}: {iv}");
    assert!(
        &hi - &lo <= &tol + &tol,
        "enclosure too wide for {reference}: {iv}"
    );
}

/// The enclosure must contain the exact rational.
pub fn assert_contains_rational(iv: &Interval, value: &BigRational) {
    let lo = bigfloat_to_rational(iv.lo());
    let hi = bigfloat_to_rational(iv.hi());
    assert!(
        &lo <= value && value <= &hi,
        "enclosure {iv} does not contain {value}"
    );
}
