//! Arbitrary-precision binary floating point with directed rounding.
//!
//! `BigFloat` stores a sign, an odd (or zero) magnitude, and a binary
//! exponent, so every value has exactly one representation and comparison is
//! exact. Operations that can be inexact take an explicit target precision
//! and a [`Round`] direction; interval code rounds lower endpoints toward
//! negative infinity and upper endpoints toward positive infinity, so
//! enclosures never lose the true value.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for inexact operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Round toward negative infinity.
    Floor,
    /// Round toward positive infinity.
    Ceil,
}

impl Round {
    /// The opposite direction.
    pub fn flip(self) -> Round {
        match self {
            Round::Floor => Round::Ceil,
            Round::Ceil => Round::Floor,
        }
    }
}

/// A binary floating point number `(-1)^neg * mant * 2^exp` of unbounded
/// precision. The mantissa is kept odd (trailing zero bits are folded into
/// the exponent), and zero is stored as a non-negative empty mantissa, so
/// structural equality coincides with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    neg: bool,
    mant: BigUint,
    exp: i64,
}

impl BigFloat {
    /// The value zero.
    pub fn zero() -> Self {
        BigFloat {
            neg: false,
            mant: BigUint::zero(),
            exp: 0,
        }
    }

    /// The value one.
    pub fn one() -> Self {
        BigFloat {
            neg: false,
            mant: BigUint::one(),
            exp: 0,
        }
    }

    /// Builds the canonical form of `(-1)^neg * mant * 2^exp`.
    fn from_raw(neg: bool, mut mant: BigUint, mut exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mant >>= tz;
            exp += tz as i64;
        }
        debug_assert!(exp.abs() < (1 << 62), "exponent out of supported range");
        BigFloat { neg, mant, exp }
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_raw(false, BigUint::from(v), 0)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_raw(v < 0, BigUint::from(v.unsigned_abs()), 0)
    }

    pub fn from_biguint(v: BigUint) -> Self {
        Self::from_raw(false, v, 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::from_raw(v.sign() == Sign::Minus, v.magnitude().clone(), 0)
    }

    /// Converts a finite `f64` exactly. Returns `None` for NaN or infinity.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Some(Self::from_raw(neg, BigUint::from(m), e))
    }

    /// `num / den` rounded to `prec` bits. `den` must be nonzero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Self {
        assert!(!den.is_zero(), "from_ratio: zero denominator");
        let a = Self::from_bigint(num);
        let b = Self::from_bigint(den);
        Self::div(&a, &b, prec, dir)
    }

    /// `p / q` for machine integers, rounded to `prec` bits.
    pub fn from_ratio_i64(p: i64, q: i64, prec: u32, dir: Round) -> Self {
        Self::from_ratio(&BigInt::from(p), &BigInt::from(q), prec, dir)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg && !self.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.neg && !self.is_zero()
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    /// Position of the most significant bit: `2^(msb-1) <= |v| < 2^msb`.
    /// Only meaningful for nonzero values.
    fn msb(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mant.bits() as i64
    }

    /// `msb` exposed for width/ulp bookkeeping; `None` for zero.
    pub fn msb_pos(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.msb())
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            BigFloat {
                neg: !self.neg,
                mant: self.mant.clone(),
                exp: self.exp,
            }
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            neg: false,
            mant: self.mant.clone(),
            exp: self.exp,
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn scale_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            BigFloat {
                neg: self.neg,
                mant: self.mant.clone(),
                exp: self.exp + k,
            }
        }
    }

    /// Core rounding step. The true magnitude lies in
    /// `[mant * 2^exp, (mant + 1) * 2^exp)`, strictly above the lower end
    /// exactly when `sticky` is set. Keeps at most `prec` mantissa bits and
    /// rounds in direction `dir` (of the signed value).
    fn round_parts(
        neg: bool,
        mut mant: BigUint,
        mut exp: i64,
        prec: u32,
        dir: Round,
        mut sticky: bool,
    ) -> Self {
        let away = matches!((dir, neg), (Round::Ceil, false) | (Round::Floor, true));
        if mant.is_zero() {
            if sticky && away {
                // the true magnitude is in (0, 2^exp); its away-rounding is 2^exp
                return Self::from_raw(neg, BigUint::one(), exp);
            }
            return Self::zero();
        }
        let bl = mant.bits();
        if bl > prec as u64 {
            let drop = bl - prec as u64;
            let tz = mant.trailing_zeros().unwrap_or(0);
            if tz < drop {
                sticky = true;
            }
            mant >>= drop;
            exp += drop as i64;
        }
        if sticky && away {
            mant += 1u32;
        }
        Self::from_raw(neg, mant, exp)
    }

    /// Re-rounds an exact value to `prec` bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        Self::round_parts(self.neg, self.mant.clone(), self.exp, prec, dir, false)
    }

    /// Exact signed sum; no rounding.
    pub fn add_exact(a: &BigFloat, b: &BigFloat) -> Self {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let common = a.exp.min(b.exp);
        let sa = (a.exp - common) as u64;
        let sb = (b.exp - common) as u64;
        debug_assert!(sa < (1 << 24) && sb < (1 << 24), "exact add alignment blowup");
        let ia = BigInt::from_biguint(sign_of(a.neg), &a.mant << sa);
        let ib = BigInt::from_biguint(sign_of(b.neg), &b.mant << sb);
        let s = ia + ib;
        Self::from_raw(s.sign() == Sign::Minus, s.magnitude().clone(), common)
    }

    /// Exact product; no rounding.
    pub fn mul_exact(a: &BigFloat, b: &BigFloat) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        Self::from_raw(a.neg != b.neg, &a.mant * &b.mant, a.exp + b.exp)
    }

    /// `a + b` rounded to `prec` bits. When the operands' scales are too far
    /// apart for an economical exact sum, the smaller one is replaced by a
    /// bound of `2^k` applied in the rounding direction, which keeps the
    /// result on the correct side of the true sum.
    pub fn add(a: &BigFloat, b: &BigFloat, prec: u32, dir: Round) -> Self {
        if a.is_zero() {
            return b.round(prec, dir);
        }
        if b.is_zero() {
            return a.round(prec, dir);
        }
        let hi = a.msb().max(b.msb());
        let guard = hi - prec as i64 - 64;
        let a_small = a.msb() <= guard;
        let b_small = b.msb() <= guard;
        debug_assert!(!(a_small && b_small));
        let (exact, omitted) = if a_small {
            (b.clone(), true)
        } else if b_small {
            (a.clone(), true)
        } else {
            (Self::add_exact(a, b), false)
        };
        if omitted {
            // |dropped operand| < 2^guard
            let eps = BigFloat {
                neg: dir == Round::Floor,
                mant: BigUint::one(),
                exp: guard,
            };
            Self::add_exact(&exact, &eps).round(prec, dir)
        } else {
            exact.round(prec, dir)
        }
    }

    /// `a - b` rounded to `prec` bits.
    pub fn sub(a: &BigFloat, b: &BigFloat, prec: u32, dir: Round) -> Self {
        Self::add(a, &b.neg(), prec, dir)
    }

    /// `a * b` rounded to `prec` bits.
    pub fn mul(a: &BigFloat, b: &BigFloat, prec: u32, dir: Round) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        Self::round_parts(
            a.neg != b.neg,
            &a.mant * &b.mant,
            a.exp + b.exp,
            prec,
            dir,
            false,
        )
    }

    /// `a / b` rounded to `prec` bits. `b` must be nonzero.
    pub fn div(a: &BigFloat, b: &BigFloat, prec: u32, dir: Round) -> Self {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return Self::zero();
        }
        let need = prec as u64 + 2;
        let s = (need + b.mant.bits()).saturating_sub(a.mant.bits());
        let num = &a.mant << s;
        let (q, r) = num.div_rem(&b.mant);
        Self::round_parts(
            a.neg != b.neg,
            q,
            a.exp - b.exp - s as i64,
            prec,
            dir,
            !r.is_zero(),
        )
    }

    /// Square root rounded to `prec` bits. `a` must be nonnegative.
    pub fn sqrt(a: &BigFloat, prec: u32, dir: Round) -> Self {
        assert!(!a.is_negative(), "sqrt of negative value");
        if a.is_zero() {
            return Self::zero();
        }
        let target = 2 * (prec as u64 + 2);
        let mut s = target.saturating_sub(a.mant.bits());
        if (a.exp - s as i64) % 2 != 0 {
            s += 1;
        }
        let m = &a.mant << s;
        let r = m.sqrt();
        let sticky = &r * &r != m;
        Self::round_parts(false, r, (a.exp - s as i64) / 2, prec, dir, sticky)
    }

    /// `a^n` for a nonnegative base, rounded in `dir`. Directed rounding
    /// composes monotonically on nonnegative values, so every intermediate
    /// product is rounded the same way at a guarded precision.
    pub fn powi_mag(a: &BigFloat, n: u32, prec: u32, dir: Round) -> Self {
        assert!(!a.is_negative(), "powi_mag needs a nonnegative base");
        if n == 0 {
            return Self::one();
        }
        if a.is_zero() {
            return Self::zero();
        }
        let w = prec + 16;
        let mut base = a.round(w, dir);
        let mut acc: Option<BigFloat> = None;
        let mut e = n;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => Self::mul(&r, &base, w, dir),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = Self::mul(&base, &base, w, dir);
        }
        acc.unwrap().round(prec, dir)
    }

    /// Exact total-order comparison.
    pub fn cmp_exact(&self, other: &BigFloat) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => {
                if other.neg {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (false, true) => {
                if self.neg {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (false, false) => {
                if self.neg != other.neg {
                    return if self.neg {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
                let mag = {
                    let (ma, mb) = (self.msb(), other.msb());
                    if ma != mb {
                        ma.cmp(&mb)
                    } else if self.exp >= other.exp {
                        (&self.mant << (self.exp - other.exp) as u64).cmp(&other.mant)
                    } else {
                        self.mant
                            .cmp(&(&other.mant << (other.exp - self.exp) as u64))
                    }
                };
                if self.neg {
                    mag.reverse()
                } else {
                    mag
                }
            }
        }
    }

    pub fn min_of<'a>(a: &'a BigFloat, b: &'a BigFloat) -> &'a BigFloat {
        if a.cmp_exact(b) == Ordering::Greater {
            b
        } else {
            a
        }
    }

    pub fn max_of<'a>(a: &'a BigFloat, b: &'a BigFloat) -> &'a BigFloat {
        if a.cmp_exact(b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    /// Exact rational value as `(numerator, denominator_pow2)` with
    /// `v = num / 2^den_pow2`; useful for exact cross-checks.
    pub fn to_int_scaled(&self) -> (BigInt, i64) {
        let i = BigInt::from_biguint(sign_of(self.neg), self.mant.clone());
        if self.exp >= 0 {
            (i << self.exp as u64, 0)
        } else {
            (i, -self.exp)
        }
    }

    /// Lossy `f64` approximation for diagnostics and heuristics only.
    pub fn to_f64_approx(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let take = bits.min(54);
        let top: BigUint = &self.mant >> (bits - take);
        let digits = top.to_u64_digits();
        let m = digits.first().copied().unwrap_or(0) as f64;
        let e = self.exp as f64 + (bits - take) as f64;
        let v = m * e.exp2();
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Decimal string with `digits` significant digits, rounded in `dir`
    /// (direction of the signed value, so intervals stay outward). The
    /// output is deterministic: plain notation for moderate exponents,
    /// otherwise scientific.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let away = matches!((dir, self.neg), (Round::Ceil, false) | (Round::Floor, true));
        let ten = BigUint::from(10u32);
        let low = ten.pow(digits - 1);
        let high = ten.pow(digits);
        // first guess for the decimal exponent d10 with |v| in [10^d10, 10^(d10+1))
        let mut d10 = ((self.msb() as f64 - 0.5) * std::f64::consts::LOG10_2).floor() as i64;
        let (mut scaled, sticky);
        loop {
            let k = digits as i64 - 1 - d10;
            let (q, rem) = self.scale_decimal(k);
            if q < low {
                d10 -= 1;
                continue;
            }
            if q >= high {
                d10 += 1;
                continue;
            }
            scaled = q;
            sticky = rem;
            break;
        }
        if sticky && away {
            scaled += 1u32;
            if scaled == high {
                scaled = low.clone();
                d10 += 1;
            }
        }
        let digits_str = scaled.to_string();
        debug_assert_eq!(digits_str.len(), digits as usize);
        let mut out = String::new();
        if self.neg {
            out.push('-');
        }
        if (-5..digits as i64 + 6).contains(&d10) {
            if d10 >= 0 {
                let int_len = (d10 + 1) as usize;
                if int_len >= digits_str.len() {
                    out.push_str(&digits_str);
                    out.push_str(&"0".repeat(int_len - digits_str.len()));
                } else {
                    out.push_str(&digits_str[..int_len]);
                    let frac = digits_str[int_len..].trim_end_matches('0');
                    if !frac.is_empty() {
                        out.push('.');
                        out.push_str(frac);
                    }
                }
            } else {
                out.push_str("0.");
                out.push_str(&"0".repeat((-d10 - 1) as usize));
                out.push_str(digits_str.trim_end_matches('0'));
            }
        } else {
            out.push_str(&digits_str[..1]);
            let frac = digits_str[1..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
            out.push('e');
            out.push_str(&d10.to_string());
        }
        out
    }

    /// `floor(|v| * 10^k)` together with a flag for a nonzero discarded part.
    fn scale_decimal(&self, k: i64) -> (BigUint, bool) {
        let ten = BigUint::from(10u32);
        let mut num = self.mant.clone();
        let mut den = BigUint::one();
        if k >= 0 {
            num *= ten.pow(k as u32);
        } else {
            den *= ten.pow((-k) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let (q, r) = num.div_rem(&den);
        (q, !r.is_zero())
    }
}

fn sign_of(neg: bool) -> Sign {
    if neg {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({})", self.to_decimal(24, Round::Floor))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(24, Round::Floor))
    }
}
