//! Heights of rational points and the arithmetic side of the pipeline:
//! branch-set statistics, the Khadjavi constant controlling Belyi degrees,
//! Lenstra-style different bounds, the finite intersection bound, and the
//! closed-form height bounds for (non-Weierstrass) points on a cover.
//!
//! Everything here is exact where the data is exact: heights of rationals
//! and the Khadjavi exponents are integers or rationals, and the assembly
//! steps of the height bounds are certified in integer arithmetic. Only
//! genuinely transcendental quantities (logs, the lambda chain) pass
//! through intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rigor::{check_rel, CertResult, Interval, PrecisionConfig, Rel, RigorError};
use std::fmt;
use std::str::FromStr;

use crate::merkl;
use crate::modlambda;

/// An exact rational `p/q` in lowest terms with `q ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(p: BigInt, q: BigInt) -> Result<Rational, RigorError> {
        if q.is_zero() {
            return Err(RigorError::InvalidInput("denominator must be nonzero".into()));
        }
        Ok(Rational(BigRational::new(p, q)))
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Rational, RigorError> {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Rational {
        Rational(r)
    }
}

impl FromStr for Rational {
    type Err = RigorError;

    fn from_str(s: &str) -> Result<Rational, RigorError> {
        let bad = |_| RigorError::InvalidInput(format!("malformed rational {s:?}"));
        match s.trim().split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(bad)?;
                let q: BigInt = q.trim().parse().map_err(bad)?;
                Rational::new(p, q)
            }
            None => {
                let p: BigInt = s.trim().parse().map_err(bad)?;
                Ok(Rational(BigRational::from_integer(p)))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// `max(|p|, q)`, the exponential height of `p/q` in lowest terms; the
/// height of `0 = 0/1` is 1.
pub fn exp_height(a: &Rational) -> BigInt {
    a.numer().abs().max(a.denom().clone())
}

/// `log max(|p|, q)`. Always well defined since the exponential height
/// is at least 1.
pub fn naive_height(a: &Rational, prec: u32) -> Interval {
    Interval::from_bigint(&exp_height(a))
        .log(prec)
        .expect("exponential heights are at least one")
}

/// A branch point: a rational number or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchPoint {
    Finite(Rational),
    Infinity,
}

impl FromStr for BranchPoint {
    type Err = RigorError;

    fn from_str(s: &str) -> Result<BranchPoint, RigorError> {
        match s.trim() {
            "inf" => Ok(BranchPoint::Infinity),
            other => Ok(BranchPoint::Finite(other.parse()?)),
        }
    }
}

impl fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchPoint::Finite(a) => write!(f, "{a}"),
            BranchPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A finite branch set with its two statistics: the cardinality `n` and
/// the maximal exponential height `h_max ≥ 1` (infinity counts with
/// height 1). For sets of rational points both are computed by
/// [`branch_stats`]; [`BranchSet::with_stats`] lets a caller supply the
/// statistics of a non-rational Galois-stable set directly.
#[derive(Clone, Debug)]
pub struct BranchSet {
    pub points: Vec<BranchPoint>,
    pub n: u64,
    pub h_max: Interval,
}

impl BranchSet {
    /// Builds a branch set from externally computed statistics, for sets
    /// whose points are not all rational.
    pub fn with_stats(points: Vec<BranchPoint>, n: u64, h_max: Interval) -> Result<BranchSet, RigorError> {
        if n == 0 {
            return Err(RigorError::InvalidInput("a branch set cannot be empty".into()));
        }
        if h_max.lo().cmp_exact(&rigor::BigFloat::one()) == std::cmp::Ordering::Less {
            return Err(RigorError::InvalidInput(
                "the maximal height of a branch set is at least 1".into(),
            ));
        }
        Ok(BranchSet { points, n, h_max })
    }
}

/// Deduplicates the points and computes the branch-set statistics: the
/// cardinality and the maximum of the exponential heights, with infinity
/// contributing height 1.
pub fn branch_stats(points: &[BranchPoint]) -> Result<BranchSet, RigorError> {
    let mut set = points.to_vec();
    set.sort();
    set.dedup();
    if set.is_empty() {
        return Err(RigorError::InvalidInput("a branch set cannot be empty".into()));
    }
    let mut h = BigInt::one();
    for p in &set {
        if let BranchPoint::Finite(a) = p {
            h = h.max(exp_height(a));
        }
    }
    let n = set.len() as u64;
    Ok(BranchSet {
        points: set,
        n,
        h_max: Interval::from_bigint(&h),
    })
}

fn check_khadjavi_inputs(n: u64) -> Result<(), RigorError> {
    if n == 0 {
        return Err(RigorError::InvalidInput("branch-set cardinality must be positive".into()));
    }
    if n > 100_000 {
        return Err(RigorError::InvalidInput(
            "branch-set cardinality too large for an exact factorial exponent".into(),
        ));
    }
    Ok(())
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// `coeff · n³ · 2^(n-2) · n!` as an exact rational (for `n = 1` the
/// power of two is `1/2`).
fn scaled_exponent(coeff: u64, n: u64) -> BigRational {
    let num = BigInt::from(coeff) * BigInt::from(n).pow(3) * factorial(n) * (BigInt::one() << n as usize);
    BigRational::new(num, BigInt::from(4))
}

/// The exponent `45·n³·2^(n-2)·n!` in the degree-detection constant,
/// kept exact.
pub fn khadjavi_exponent(n: u64) -> Result<BigRational, RigorError> {
    check_khadjavi_inputs(n)?;
    Ok(scaled_exponent(45, n))
}

/// The exponent `9·n³·2^(n-2)·n!` bounding the degree of the number
/// field generated in the detection argument, kept exact.
pub fn khadjavi_degree_exponent(n: u64) -> Result<BigRational, RigorError> {
    check_khadjavi_inputs(n)?;
    Ok(scaled_exponent(9, n))
}

/// `log c_B = 45·n³·2^(n-2)·n! · log(4·n·h_max)` for a branch set with
/// cardinality `n` and maximal exponential height `h_max ≥ 1`.
pub fn log_khadjavi(n: u64, h_max: &Interval, prec: u32) -> Result<Interval, RigorError> {
    let exponent = khadjavi_exponent(n)?;
    if h_max.lo().cmp_exact(&rigor::BigFloat::one()) == std::cmp::Ordering::Less {
        return Err(RigorError::InvalidInput(
            "the maximal height of a branch set is at least 1".into(),
        ));
    }
    let exp_iv = Interval::from_ratio(exponent.numer(), exponent.denom(), prec)?;
    let base = Interval::from_u64(4 * n).mul(h_max, prec).log(prec)?;
    Ok(exp_iv.mul(&base, prec))
}

/// Ramification data at one place: the ramification index `e`, the
/// valuation `ord_n` of the relevant integer, and optionally the residue
/// characteristic `p` together with the extension degree `d`, from which
/// the wild exponent cap `m = ⌊log d / log p⌋` is derived.
#[derive(Clone, Copy, Debug)]
pub struct LocalRamification {
    pub e: u64,
    pub ord_n: u64,
    pub residue: Option<(u64, u64)>,
}

impl LocalRamification {
    pub fn validate(&self) -> Result<(), RigorError> {
        if self.e == 0 {
            return Err(RigorError::InvalidInput("ramification index must be at least 1".into()));
        }
        if let Some((p, d)) = self.residue {
            if !is_prime(p) {
                return Err(RigorError::InvalidInput(format!(
                    "residue characteristic {p} is not prime"
                )));
            }
            if d == 0 {
                return Err(RigorError::InvalidInput("extension degree must be at least 1".into()));
            }
        }
        Ok(())
    }

    /// `⌊log d / log p⌋` when the residue pair is present.
    pub fn wild_cap(&self) -> Option<u64> {
        self.residue.map(|(p, d)| floor_log(d, p).expect("validated residue pair"))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Largest `m ≥ 0` with `p^m ≤ d`, computed by integer arithmetic only.
pub fn floor_log(d: u64, p: u64) -> Result<u64, RigorError> {
    if p < 2 {
        return Err(RigorError::InvalidInput("floor_log needs a base of at least 2".into()));
    }
    if d == 0 {
        return Err(RigorError::InvalidInput("floor_log needs a positive argument".into()));
    }
    let mut m = 0;
    let mut acc = 1u64;
    while acc <= d / p {
        acc *= p;
        m += 1;
    }
    Ok(m)
}

fn to_u64(v: u128, what: &str) -> Result<u64, RigorError> {
    u64::try_from(v).map_err(|_| RigorError::InvalidInput(format!("{what} overflows")))
}

/// Different-exponent bound `e - 1 + e·ord_n` at one place.
pub fn lenstra_bound(l: &LocalRamification) -> Result<u64, RigorError> {
    l.validate()?;
    let r = l.e as u128 - 1 + l.e as u128 * l.ord_n as u128;
    to_u64(r, "different bound")
}

/// Different-exponent bound through the residue characteristic:
/// `e_beta - 1 + e_beta·m·ord_p` with `m = ⌊log d / log p⌋`. For `p > d`
/// the cap `m` is zero and the bound collapses to the tame value
/// `e_beta - 1`.
pub fn lenstra_bound_p(e_beta: u64, p: u64, d: u64, ord_p: u64) -> Result<u64, RigorError> {
    if e_beta == 0 {
        return Err(RigorError::InvalidInput("ramification index must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(RigorError::InvalidInput(format!("residue characteristic {p} is not prime")));
    }
    let m = floor_log(d, p)?;
    let r = e_beta as u128 - 1 + e_beta as u128 * m as u128 * ord_p as u128;
    to_u64(r, "different bound")
}

/// Wild different bound `2·e_ij·m_i·e_p`. Requires `m_i ≥ 1`: the tame
/// case must go through [`lenstra_bound`] instead, since the absorption
/// `e - 1 + e·m·e_p ≤ 2·e·m·e_p` needs a positive cap.
pub fn wild_bound(e_ij: u64, m_i: u64, e_p: u64) -> Result<u64, RigorError> {
    if e_ij == 0 || e_p == 0 {
        return Err(RigorError::InvalidInput("ramification indices must be at least 1".into()));
    }
    if m_i == 0 {
        return Err(RigorError::InvalidInput(
            "the wild bound needs m ≥ 1; use the tame bound when the cap is zero".into(),
        ));
    }
    let wild = 2 * e_ij as u128 * m_i as u128 * e_p as u128;
    let tame_form = e_ij as u128 - 1 + e_ij as u128 * m_i as u128 * e_p as u128;
    assert!(tame_form <= wild, "absorption step failed");
    to_u64(wild, "wild bound")
}

/// Inputs of the finite intersection bound: the degree of the map, the
/// finite intersection number per unit field degree, and the field degree.
#[derive(Clone, Debug)]
pub struct IntersectionData {
    pub deg_pi: u64,
    pub d1_q: Interval,
    pub field_degree: u64,
}

impl IntersectionData {
    pub fn validate(&self) -> Result<(), RigorError> {
        if self.deg_pi == 0 || self.field_degree == 0 {
            return Err(RigorError::InvalidInput("degrees must be at least 1".into()));
        }
        if self.d1_q.lo().is_negative() {
            return Err(RigorError::InvalidInput(
                "the finite intersection number is non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// The finite intersection bound `deg·d1_q + 2·deg²·log(deg)`, reported
/// per unit field degree and scaled by the field degree.
#[derive(Clone, Debug)]
pub struct FiniteIntersectionBound {
    pub per_degree: Interval,
    pub raw: Interval,
}

pub fn finite_intersection_bound(
    x: &IntersectionData,
    prec: u32,
) -> Result<FiniteIntersectionBound, RigorError> {
    x.validate()?;
    let deg = Interval::from_u64(x.deg_pi);
    let log_term = Interval::from_bigint(&(BigInt::from(2u32) * BigInt::from(x.deg_pi).pow(2)))
        .mul(&deg.log(prec)?, prec);
    let per_degree = deg.mul(&x.d1_q, prec).add(&log_term, prec);
    let raw = per_degree.mul(&Interval::from_u64(x.field_degree), prec);
    Ok(FiniteIntersectionBound { per_degree, raw })
}

fn exact_le(lhs: BigInt, rhs: BigInt) -> CertResult {
    if lhs <= rhs {
        CertResult::certified(0)
    } else {
        CertResult::refuted(
            vec![Interval::from_bigint(&lhs), Interval::from_bigint(&rhs)],
            0,
        )
    }
}

fn check_degree_genus(d: u64, g: u64) -> Result<(), RigorError> {
    if d < 3 || d > u32::MAX as u64 {
        return Err(RigorError::InvalidInput("the cover degree must satisfy 3 ≤ d ≤ 2³²-1".into()));
    }
    if g == 0 {
        return Err(RigorError::InvalidInput("the genus must be at least 1".into()));
    }
    Ok(())
}

/// Height bound `3·h(a)·d² + 6378031·d⁵/g` for any point of the cover
/// over `a ∈ (0, 2/3]`. The accompanying certificate checks that the
/// assembly of the bound closes: the non-constant pieces `2d³ + 2` fit
/// into the gap `4·d⁵/g` left between the Green constant and the stated
/// coefficient, i.e. `(2d³ + 2)·g ≤ 4·d⁵` in exact integers.
pub fn height_point_bound(
    d: u64,
    g: u64,
    a: &Rational,
    prec: u32,
) -> Result<(Interval, CertResult), RigorError> {
    check_degree_genus(d, g)?;
    let ratio = a.as_ratio();
    if !ratio.is_positive() || ratio > &BigRational::new(2.into(), 3.into()) {
        return Err(RigorError::InvalidInput(
            "the base point must lie in (0, 2/3] so that its lift stays in the chart".into(),
        ));
    }
    let d_big = BigInt::from(d);
    let d5 = d_big.pow(5);
    let h_term = naive_height(a, prec).mul(
        &Interval::from_bigint(&(BigInt::from(3u32) * d_big.pow(2))),
        prec,
    );
    let main = Interval::from_ratio(&(BigInt::from(6378031u64) * &d5), &BigInt::from(g), prec)?;
    let assembly = exact_le(
        (BigInt::from(2u32) * d_big.pow(3) + 2) * BigInt::from(g),
        BigInt::from(4u32) * d5,
    );
    Ok((h_term.add(&main, prec), assembly))
}

/// Height bound `6378033·d⁵/g` valid for some non-Weierstrass point of
/// the cover, obtained by searching the fibers over the first `d²` values
/// of the sequence `1/2, 2/3, 3/5, ...` whose heights stay below
/// `log(2d²)`. The certificate checks the absorbing step
/// `3·log(2d²)·d² ≤ 2·d⁵/g`.
pub fn nonweierstrass_height_bound(
    d: u64,
    g: u64,
    prec: u32,
) -> Result<(Interval, CertResult), RigorError> {
    check_degree_genus(d, g)?;
    if g > d {
        return Err(RigorError::InvalidInput("the genus must satisfy g ≤ d".into()));
    }
    let d_big = BigInt::from(d);
    let d5 = d_big.pow(5);
    let value = Interval::from_ratio(&(BigInt::from(6378033u64) * &d5), &BigInt::from(g), prec)?;
    let lhs = Interval::from_bigint(&(BigInt::from(2u32) * d_big.pow(2)))
        .log(prec)?
        .mul(&Interval::from_bigint(&(BigInt::from(3u32) * d_big.pow(2))), prec);
    let rhs = Interval::from_ratio(&(BigInt::from(2u32) * &d5), &BigInt::from(g), prec)?;
    Ok((value, CertResult::all_of([check_rel(&lhs, &rhs, Rel::Le, prec)])))
}

/// Certifies the archimedean chain feeding the height bounds: the lower
/// bound 3/20 for the lambda derivative on the relevant window, its
/// comparison against `e⁻²`, the location of `λ⁻¹(2/3)` (above `√½` and
/// inside `[4/5, 1]`), and the Green-function bound of the derived atlas
/// for the given degree and genus.
pub fn archimedean_chain(d: u64, g: u64, cfg: &PrecisionConfig) -> Result<CertResult, RigorError> {
    check_degree_genus(d, g)?;
    if g > d {
        return Err(RigorError::InvalidInput("the genus must satisfy g ≤ d".into()));
    }
    let prec = cfg.working_bits;
    let slope = modlambda::certify_clambda(cfg)?;
    let threshold = check_rel(
        &Interval::from_ratio_i64(3, 20, prec)?,
        &Interval::from_i64(-2).exp(prec),
        Rel::Ge,
        prec,
    );
    let y = modlambda::lambda_inverse(&BigRational::new(2.into(), 3.into()), prec)?;
    let above_s1 = check_rel(
        &y,
        &Interval::from_ratio_i64(1, 2, prec)?.sqrt(prec)?,
        Rel::Gt,
        prec,
    );
    let window_lo = check_rel(&y, &Interval::from_ratio_i64(4, 5, prec)?, Rel::Ge, prec);
    let window_hi = check_rel(&y, &Interval::one(), Rel::Le, prec);
    let (_, green) = merkl::green_bound_belyi(d, g, 1, prec)?;
    Ok(CertResult::all_of([
        slope, threshold, above_s1, window_lo, window_hi, green,
    ]))
}

/// The per-prime ramification sum `Σ_p ⌊log d / log p⌋ · log p` over the
/// primes `p ≤ d`, together with the certificate that it is absorbed by
/// the displayed bound `d·log d`. The sum itself is sharper and reported
/// for diagnostics only; every downstream bound uses `d·log d`.
pub fn ramification_log_sum(d: u64, prec: u32) -> Result<(Interval, CertResult), RigorError> {
    if d < 2 {
        return Err(RigorError::InvalidInput("the degree must be at least 2".into()));
    }
    if d > 1_000_000 {
        return Err(RigorError::InvalidInput("diagnostic sum capped at d ≤ 10⁶".into()));
    }
    let mut composite = vec![false; d as usize + 1];
    let mut sum = Interval::zero();
    for p in 2..=d {
        if composite[p as usize] {
            continue;
        }
        let mut k = p as u128 * p as u128;
        while k <= d as u128 {
            composite[k as usize] = true;
            k += p as u128;
        }
        let m = floor_log(d, p)?;
        sum = sum.add(
            &Interval::from_u64(p).log(prec)?.mul(&Interval::from_u64(m), prec),
            prec,
        );
    }
    let displayed = Interval::from_u64(d).log(prec)?.mul(&Interval::from_u64(d), prec);
    Ok((sum.clone(), check_rel(&sum, &displayed, Rel::Le, prec)))
}
