//! Closed real intervals with outward rounding.
//!
//! Every operation returns an interval that contains the exact image of its
//! inputs: lower endpoints are rounded toward negative infinity and upper
//! endpoints toward positive infinity at the requested working precision.
//! Transcendental functions are evaluated from scratch (argument reduction
//! plus a Taylor series with an explicit remainder bound), so no external
//! table or library sits in the trusted path.

use crate::error::RigorError;
use crate::float::{BigFloat, Round};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A closed interval `[lo, hi]` of exact binary floats.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

impl Interval {
    /// Builds `[lo, hi]`, rejecting reversed endpoints.
    pub fn new(lo: BigFloat, hi: BigFloat) -> Result<Self, RigorError> {
        if lo > hi {
            return Err(RigorError::EmptyInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn singleton(v: BigFloat) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Self::singleton(BigFloat::zero())
    }

    pub fn one() -> Self {
        Self::singleton(BigFloat::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::singleton(BigFloat::from_i64(v))
    }

    pub fn from_u64(v: u64) -> Self {
        Self::singleton(BigFloat::from_u64(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::singleton(BigFloat::from_bigint(v))
    }

    /// Exact rational `p/q` as a two-ulp enclosure at `prec` bits.
    pub fn from_ratio(p: &BigInt, q: &BigInt, prec: u32) -> Result<Self, RigorError> {
        if q.is_zero() {
            return Err(RigorError::InvalidInput("zero denominator".into()));
        }
        Ok(Interval {
            lo: BigFloat::from_ratio(p, q, prec, Round::Floor),
            hi: BigFloat::from_ratio(p, q, prec, Round::Ceil),
        })
    }

    pub fn from_ratio_i64(p: i64, q: i64, prec: u32) -> Result<Self, RigorError> {
        Self::from_ratio(&BigInt::from(p), &BigInt::from(q), prec)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Result<Self, RigorError> {
        BigFloat::from_f64(x)
            .map(Self::singleton)
            .ok_or_else(|| RigorError::InvalidInput("non-finite float".into()))
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn into_parts(self) -> (BigFloat, BigFloat) {
        (self.lo, self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &BigFloat) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Upper bound on the width `hi - lo`.
    pub fn width_upper(&self, prec: u32) -> BigFloat {
        BigFloat::sub(&self.hi, &self.lo, prec, Round::Ceil)
    }

    /// Exact midpoint `(lo + hi) / 2`.
    pub fn midpoint(&self) -> BigFloat {
        BigFloat::add_exact(&self.lo, &self.hi).scale_pow2(-1)
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: BigFloat::min_of(&self.lo, &other.lo).clone(),
            hi: BigFloat::max_of(&self.hi, &other.hi).clone(),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = BigFloat::max_of(&self.lo, &other.lo).clone();
        let hi = BigFloat::min_of(&self.hi, &other.hi).clone();
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Re-rounds both endpoints outward to `prec` bits.
    pub fn round_outward(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Floor),
            hi: self.hi.round(prec, Round::Ceil),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    /// Enclosure of `|x|` over the interval; exact on endpoints.
    pub fn abs_i(&self) -> Interval {
        if self.contains_zero() {
            Interval {
                lo: BigFloat::zero(),
                hi: BigFloat::max_of(&self.lo.abs(), &self.hi.abs()).clone(),
            }
        } else if self.hi.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, rhs: &Interval, prec: u32) -> Interval {
        Interval {
            lo: BigFloat::add(&self.lo, &rhs.lo, prec, Round::Floor),
            hi: BigFloat::add(&self.hi, &rhs.hi, prec, Round::Ceil),
        }
    }

    pub fn sub(&self, rhs: &Interval, prec: u32) -> Interval {
        Interval {
            lo: BigFloat::sub(&self.lo, &rhs.hi, prec, Round::Floor),
            hi: BigFloat::sub(&self.hi, &rhs.lo, prec, Round::Ceil),
        }
    }

    pub fn mul(&self, rhs: &Interval, prec: u32) -> Interval {
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in pairs {
            let down = BigFloat::mul(a, b, prec, Round::Floor);
            let up = BigFloat::mul(a, b, prec, Round::Ceil);
            lo = Some(match lo {
                None => down,
                Some(c) => BigFloat::min_of(&c, &down).clone(),
            });
            hi = Some(match hi {
                None => up,
                Some(c) => BigFloat::max_of(&c, &up).clone(),
            });
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Division; errors when the divisor straddles or touches zero.
    pub fn div(&self, rhs: &Interval, prec: u32) -> Result<Interval, RigorError> {
        if rhs.contains_zero() {
            return Err(RigorError::DivisionByZero);
        }
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in pairs {
            let down = BigFloat::div(a, b, prec, Round::Floor);
            let up = BigFloat::div(a, b, prec, Round::Ceil);
            lo = Some(match lo {
                None => down,
                Some(c) => BigFloat::min_of(&c, &down).clone(),
            });
            hi = Some(match hi {
                None => up,
                Some(c) => BigFloat::max_of(&c, &up).clone(),
            });
        }
        Ok(Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        })
    }

    /// Integer power with the usual even-power tightening at zero.
    pub fn powi(&self, n: u32, prec: u32) -> Interval {
        if n == 0 {
            return Interval::one();
        }
        if n == 1 {
            return self.clone();
        }
        let even = n % 2 == 0;
        if even && self.contains_zero() {
            let m = BigFloat::max_of(&self.lo.abs(), &self.hi.abs()).clone();
            return Interval {
                lo: BigFloat::zero(),
                hi: BigFloat::powi_mag(&m, n, prec, Round::Ceil),
            };
        }
        if !self.lo.is_negative() {
            return Interval {
                lo: BigFloat::powi_mag(&self.lo, n, prec, Round::Floor),
                hi: BigFloat::powi_mag(&self.hi, n, prec, Round::Ceil),
            };
        }
        if self.hi.is_negative() || (even && self.hi.is_zero()) {
            // entirely nonpositive
            let lo_mag = self.lo.abs();
            let hi_mag = self.hi.abs();
            return if even {
                Interval {
                    lo: BigFloat::powi_mag(&hi_mag, n, prec, Round::Floor),
                    hi: BigFloat::powi_mag(&lo_mag, n, prec, Round::Ceil),
                }
            } else {
                Interval {
                    lo: BigFloat::powi_mag(&lo_mag, n, prec, Round::Ceil).neg(),
                    hi: BigFloat::powi_mag(&hi_mag, n, prec, Round::Floor).neg(),
                }
            };
        }
        // straddles zero with odd exponent: monotone
        Interval {
            lo: BigFloat::powi_mag(&self.lo.abs(), n, prec, Round::Ceil).neg(),
            hi: BigFloat::powi_mag(&self.hi, n, prec, Round::Ceil),
        }
    }

    /// Square root; requires the interval to be nonnegative.
    pub fn sqrt(&self, prec: u32) -> Result<Interval, RigorError> {
        if self.lo.is_negative() {
            return Err(RigorError::SqrtNegative);
        }
        Ok(Interval {
            lo: BigFloat::sqrt(&self.lo, prec, Round::Floor),
            hi: BigFloat::sqrt(&self.hi, prec, Round::Ceil),
        })
    }

    /// Endpoint-wise minimum (enclosure of `min(x, y)`); exact.
    pub fn min_i(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: BigFloat::min_of(&self.lo, &rhs.lo).clone(),
            hi: BigFloat::min_of(&self.hi, &rhs.hi).clone(),
        }
    }

    /// Endpoint-wise maximum (enclosure of `max(x, y)`); exact.
    pub fn max_i(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: BigFloat::max_of(&self.lo, &rhs.lo).clone(),
            hi: BigFloat::max_of(&self.hi, &rhs.hi).clone(),
        }
    }

    /// Exponential, monotone on endpoints.
    pub fn exp(&self, prec: u32) -> Interval {
        let lo = exp_point(&self.lo, prec);
        let hi = exp_point(&self.hi, prec);
        Interval {
            lo: lo.lo,
            hi: hi.hi,
        }
    }

    /// Natural logarithm; requires `lo > 0`.
    pub fn log(&self, prec: u32) -> Result<Interval, RigorError> {
        if !self.lo.is_positive() {
            return Err(RigorError::LogNonPositive);
        }
        let lo = log_point(&self.lo, prec);
        let hi = log_point(&self.hi, prec);
        Ok(Interval {
            lo: lo.lo,
            hi: hi.hi,
        })
    }

    /// `n`-th root via `exp(log(x)/n)`; requires `lo > 0` for `n >= 2`.
    pub fn nth_root(&self, n: u32, prec: u32) -> Result<Interval, RigorError> {
        assert!(n >= 1);
        if n == 1 {
            return Ok(self.clone());
        }
        if n == 2 {
            return self.sqrt(prec);
        }
        let w = prec + 16;
        let ln = self.log(w)?;
        Ok(ln.div(&Interval::from_u64(n as u64), w)?.exp(w).round_outward(prec))
    }

    /// Enclosure of pi, cached per precision; width at most two ulps.
    pub fn pi(prec: u32) -> Interval {
        static CACHE: OnceLock<Mutex<BTreeMap<u32, Interval>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
        if let Some(v) = cache.lock().unwrap().get(&prec) {
            return v.clone();
        }
        let v = compute_pi(prec);
        cache.lock().unwrap().insert(prec, v.clone());
        v
    }

    /// Enclosure of log(2), cached per precision.
    pub fn ln2(prec: u32) -> Interval {
        static CACHE: OnceLock<Mutex<BTreeMap<u32, Interval>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
        if let Some(v) = cache.lock().unwrap().get(&prec) {
            return v.clone();
        }
        let w = prec + 16;
        let third = Interval::from_ratio_i64(1, 3, w).unwrap();
        let v = atanh_small(&third, w).scale_pow2(1).round_outward(prec);
        cache.lock().unwrap().insert(prec, v.clone());
        v
    }

    /// Multiplies by `2^k` exactly.
    pub fn scale_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.scale_pow2(k),
            hi: self.hi.scale_pow2(k),
        }
    }

    /// Outward decimal rendering: lower endpoint rounded down, upper up.
    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (
            self.lo.to_decimal(digits, Round::Floor),
            self.hi.to_decimal(digits, Round::Ceil),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_pair(20);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Picks the Taylor length for `exp` on `|r| <= 1/16` so the remainder is
/// below `2^-(wbits + 8)`. The estimate errs long, never short.
fn exp_terms(wbits: u32) -> u32 {
    let mut log2_fact = 0.0f64;
    let mut t = 1u32;
    loop {
        log2_fact += ((t + 1) as f64).log2();
        if 4.0 * (t + 1) as f64 + log2_fact >= wbits as f64 + 8.0 {
            return t;
        }
        t += 1;
    }
}

fn factorial(n: u32) -> BigUint {
    let mut f = BigUint::one();
    for k in 2..=n {
        f *= BigUint::from(k);
    }
    f
}

/// Tight enclosure of `exp(x)` for an exact point `x`.
///
/// Argument reduction `r = x / 2^s` with `|r| <= 1/16` (exact, an exponent
/// shift), a Taylor polynomial with remainder `|R| <= 2 |r|^(T+1) / (T+1)!`,
/// then `s` interval squarings.
fn exp_point(x: &BigFloat, prec: u32) -> Interval {
    let w = prec + 32;
    if x.is_zero() {
        return Interval::one();
    }
    let s = (x.msb_pos().unwrap() + 4).max(0) as u32;
    let r = x.scale_pow2(-(s as i64));
    let r_i = Interval::singleton(r.clone());
    let t_terms = exp_terms(w);
    let mut sum = Interval::one();
    let mut term = Interval::one();
    for k in 1..=t_terms {
        term = term.mul(&r_i, w);
        term = term
            .div(&Interval::from_u64(k as u64), w)
            .expect("nonzero literal");
        sum = sum.add(&term, w);
    }
    // remainder bound: the tail is dominated by twice the first omitted term
    let r_pow = BigFloat::powi_mag(&r.abs(), t_terms + 1, w, Round::Ceil);
    let fact = BigFloat::from_biguint(factorial(t_terms + 1));
    let rem = BigFloat::div(&r_pow, &fact, w, Round::Ceil).scale_pow2(1);
    let rem_i = Interval::new(rem.neg(), rem).unwrap();
    sum = sum.add(&rem_i, w);
    for _ in 0..s {
        sum = sum.mul(&sum, w);
    }
    sum.round_outward(prec)
}

/// Enclosure of `atanh(t)` for `t` inside `[0, 0.35]`: odd-power series with
/// tail at most twice `t^(2K+3) / (2K+3)`.
fn atanh_small(t: &Interval, w: u32) -> Interval {
    debug_assert!(!t.lo.is_negative());
    let t2 = t.mul(t, w);
    let mut sum = t.clone();
    let mut power = t.clone(); // t^(2k+1)
    let mut k = 1u64;
    loop {
        power = power.mul(&t2, w);
        let contrib = power
            .div(&Interval::from_u64(2 * k + 1), w)
            .expect("odd denominator");
        sum = sum.add(&contrib, w);
        let small = power
            .hi
            .msb_pos()
            .map_or(true, |m| m < -((w as i64) + 8));
        if small {
            // remaining tail <= t^(2k+3)/(2k+3) * 1/(1 - t^2) <= 2 * t^(2k+3)
            let tail = BigFloat::mul(&power.hi, &t2.hi, w, Round::Ceil).scale_pow2(1);
            let tail_i = Interval::new(BigFloat::zero(), tail).unwrap();
            sum = sum.add(&tail_i, w);
            return sum;
        }
        k += 1;
    }
}

/// Enclosure of `log(x)` for an exact point `x > 0`: write `x = m 2^e` with
/// `m` in `[1, 2)`, then `log x = e log 2 + 2 atanh((m-1)/(m+1))`.
fn log_point(x: &BigFloat, prec: u32) -> Interval {
    debug_assert!(x.is_positive());
    let w = prec + 32;
    let e = x.msb_pos().unwrap() - 1;
    let m = x.scale_pow2(-e);
    let e_ln2 = if e == 0 {
        Interval::zero()
    } else {
        Interval::ln2(w).mul(&Interval::from_i64(e), w)
    };
    if m == BigFloat::one() {
        return e_ln2.round_outward(prec);
    }
    let num = BigFloat::add_exact(&m, &BigFloat::one().neg());
    let den = BigFloat::add_exact(&m, &BigFloat::one());
    let t = Interval {
        lo: BigFloat::div(&num, &den, w, Round::Floor),
        hi: BigFloat::div(&num, &den, w, Round::Ceil),
    };
    let ln_m = atanh_small(&t, w).scale_pow2(1);
    e_ln2.add(&ln_m, w).round_outward(prec)
}

/// Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)` with exact rational
/// terms; the alternating tail is bounded by the last added term.
fn compute_pi(prec: u32) -> Interval {
    let w = prec + 16;
    let a5 = atan_inv(5, w);
    let a239 = atan_inv(239, w);
    a5.scale_pow2(4)
        .sub(&a239.scale_pow2(2), w)
        .round_outward(prec)
}

fn atan_inv(n: i64, w: u32) -> Interval {
    let n2 = BigInt::from(n * n);
    let mut den_pow = BigInt::from(n); // n^(2k+1)
    let mut sum = Interval::zero();
    let mut k = 0u64;
    loop {
        let denom = &den_pow * BigInt::from(2 * k + 1);
        let term = Interval::from_ratio(&BigInt::one(), &denom, w).unwrap();
        sum = if k % 2 == 0 {
            sum.add(&term, w)
        } else {
            sum.sub(&term, w)
        };
        let done = term
            .hi
            .msb_pos()
            .map_or(true, |m| m < -((w as i64) + 8));
        if done {
            // alternating and decreasing: the tail is at most the last term
            let pad = Interval::new(term.hi.neg(), term.hi.clone()).unwrap();
            return sum.add(&pad, w);
        }
        den_pow *= &n2;
        k += 1;
    }
}
