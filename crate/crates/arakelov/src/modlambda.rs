//! The modular lambda function on the imaginary axis, evaluated rigorously.
//!
//! For `τ = iy` with `y > 0`, the nome is `q = exp(-πy)` and λ is the
//! fourth-power quotient of the theta null values `θ₂`, `θ₃`. Because
//! `θ₂ = 2 q^{1/4} Σ q^{n(n+1)}`, the fractional powers cancel in every
//! quantity this module computes:
//!
//! * `λ(iy) = 16 q P₂(q)⁴ / θ₃(q)⁴` with `P₂ = Σ_{n≥0} q^{n(n+1)}`,
//! * `q·dλ/dq = λ · (W/P₂ - 4 S₃/θ₃)` with `W = Σ (2n+1)² q^{n(n+1)}` and
//!   `S₃ = 2 Σ n² q^{n²}`,
//!
//! so everything reduces to power series in `q` with positive terms and
//! quadratically growing exponents. Truncations carry certified geometric
//! tail bounds, making every returned interval a true enclosure.
//!
//! The inverse on `(0,1)` is the classical arithmetic-geometric-mean ratio:
//! `λ(iy) = α` exactly when `y = M(1, √(1-α)) / M(1, √α)`.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rigor::{certify_margin_on_box, BigFloat, CertResult, Interval, PrecisionConfig, Rel, RigorError};

/// A point `τ = iy` on the imaginary axis together with an enclosure of
/// its nome `q = exp(-πy)`.
#[derive(Clone, Debug)]
pub struct ImaginaryTau {
    y: Interval,
    q: Interval,
}

impl ImaginaryTau {
    pub fn new(y: Interval, prec: u32) -> Result<ImaginaryTau, RigorError> {
        if !y.is_strictly_positive() {
            return Err(RigorError::InvalidInput(
                "tau = iy requires y > 0".into(),
            ));
        }
        let q = Interval::pi(prec).mul(&y, prec).neg().exp(prec);
        Ok(ImaginaryTau { y, q })
    }

    pub fn from_ratio_i64(p: i64, q: i64, prec: u32) -> Result<ImaginaryTau, RigorError> {
        ImaginaryTau::new(Interval::from_ratio_i64(p, q, prec)?, prec)
    }

    pub fn y(&self) -> &Interval {
        &self.y
    }

    pub fn q(&self) -> &Interval {
        &self.q
    }
}

/// Truncation and precision budget for the theta series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSeriesConfig {
    /// Number of series terms kept beyond the constant one. The certified
    /// tail bound starts at the first dropped term; if it cannot be made
    /// finite for the given `q`, evaluation fails with
    /// [`RigorError::TailDivergence`] instead of degrading silently.
    pub truncation: usize,
    pub working_bits: u32,
}

impl Default for ThetaSeriesConfig {
    fn default() -> Self {
        ThetaSeriesConfig {
            truncation: 16,
            working_bits: 128,
        }
    }
}

impl ThetaSeriesConfig {
    pub fn with_bits(working_bits: u32) -> Self {
        ThetaSeriesConfig {
            working_bits,
            ..ThetaSeriesConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), RigorError> {
        if self.truncation == 0 || self.truncation > 30_000 {
            return Err(RigorError::InvalidConfig(
                "theta truncation must be in 1..=30000".into(),
            ));
        }
        if self.working_bits < 53 {
            return Err(RigorError::InvalidConfig(
                "theta evaluation needs at least 53 working bits".into(),
            ));
        }
        Ok(())
    }
}

fn check_q(q: &Interval) -> Result<(), RigorError> {
    if q.lo().is_negative() || q.hi().cmp_exact(&BigFloat::one()) != Ordering::Less {
        return Err(RigorError::InvalidInput("the nome must lie in [0, 1)".into()));
    }
    Ok(())
}

/// `[0, first/(1-ratio)]`, the tail of a series dominated term-to-term by
/// the geometric ratio `ratio` starting from `first`.
fn geometric_tail(
    first: &Interval,
    ratio: &Interval,
    n_terms: usize,
    prec: u32,
) -> Result<Interval, RigorError> {
    let denom = Interval::one().sub(ratio, prec);
    if !denom.is_strictly_positive() {
        return Err(RigorError::TailDivergence(format!(
            "truncation {n_terms} is too small for this nome; increase it"
        )));
    }
    let bound = first.div(&denom, prec)?;
    Interval::new(BigFloat::zero(), bound.hi().clone())
}

/// `θ₃ = 1 + 2 Σ_{n≥1} q^{n²}`, with tail `2 q^{(N+1)²} / (1 - q^{2N+3})`
/// (consecutive exponents differ by at least `2N+3` past the cut).
fn theta3_series(q: &Interval, n_terms: usize, prec: u32) -> Result<Interval, RigorError> {
    let q2 = q.powi(2, prec);
    let mut sum = Interval::one();
    let mut pow = Interval::one();
    let mut odd = q.clone();
    for _ in 1..=n_terms {
        pow = pow.mul(&odd, prec);
        sum = sum.add(&pow.scale_pow2(1), prec);
        odd = odd.mul(&q2, prec);
    }
    let qh = Interval::singleton(q.hi().clone());
    let n = n_terms as u32;
    let first = qh.powi((n + 1) * (n + 1), prec).scale_pow2(1);
    let ratio = qh.powi(2 * n + 3, prec);
    let tail = geometric_tail(&first, &ratio, n_terms, prec)?;
    Ok(sum.add(&tail, prec))
}

/// `P₂ = Σ_{n≥0} q^{n(n+1)}`, with tail starting at `q^{(N+1)(N+2)}` and
/// ratio `q^{2N+2}` (exponent gaps are `2(n+1)`).
fn p2_series(q: &Interval, n_terms: usize, prec: u32) -> Result<Interval, RigorError> {
    let q2 = q.powi(2, prec);
    let mut sum = Interval::one();
    let mut pow = Interval::one();
    let mut even = q2.clone();
    for _ in 1..=n_terms {
        pow = pow.mul(&even, prec);
        sum = sum.add(&pow, prec);
        even = even.mul(&q2, prec);
    }
    let qh = Interval::singleton(q.hi().clone());
    let n = n_terms as u32;
    let first = qh.powi((n + 1) * (n + 2), prec);
    let ratio = qh.powi(2 * n + 2, prec);
    let tail = geometric_tail(&first, &ratio, n_terms, prec)?;
    Ok(sum.add(&tail, prec))
}

/// `W = Σ_{n≥0} (2n+1)² q^{n(n+1)}` (four times the logarithmic θ₂
/// derivative's numerator). The coefficient growth is absorbed into the
/// tail ratio: for `n > N`, consecutive terms differ by at most
/// `((N+2)/(N+1))² q^{2N+2}`.
fn w_series(q: &Interval, n_terms: usize, prec: u32) -> Result<Interval, RigorError> {
    let q2 = q.powi(2, prec);
    let mut sum = Interval::one();
    let mut pow = Interval::one();
    let mut even = q2.clone();
    for n in 1..=n_terms as u64 {
        pow = pow.mul(&even, prec);
        let coeff = Interval::from_u64((2 * n + 1) * (2 * n + 1));
        sum = sum.add(&coeff.mul(&pow, prec), prec);
        even = even.mul(&q2, prec);
    }
    let qh = Interval::singleton(q.hi().clone());
    let n = n_terms as u32;
    let first = Interval::from_u64((2 * n_terms as u64 + 3) * (2 * n_terms as u64 + 3))
        .mul(&qh.powi((n + 1) * (n + 2), prec), prec);
    let ratio = Interval::from_ratio_i64(
        (n_terms as i64 + 2) * (n_terms as i64 + 2),
        (n_terms as i64 + 1) * (n_terms as i64 + 1),
        prec,
    )?
    .mul(&qh.powi(2 * n + 2, prec), prec);
    let tail = geometric_tail(&first, &ratio, n_terms, prec)?;
    Ok(sum.add(&tail, prec))
}

/// `S₃ = 2 Σ_{n≥1} n² q^{n²}`, the logarithmic θ₃ derivative's numerator,
/// with the same coefficient-absorbing tail ratio as [`w_series`].
fn s3_series(q: &Interval, n_terms: usize, prec: u32) -> Result<Interval, RigorError> {
    let q2 = q.powi(2, prec);
    let mut sum = Interval::zero();
    let mut pow = Interval::one();
    let mut odd = q.clone();
    for n in 1..=n_terms as u64 {
        pow = pow.mul(&odd, prec);
        sum = sum.add(&Interval::from_u64(n * n).mul(&pow, prec), prec);
        odd = odd.mul(&q2, prec);
    }
    let qh = Interval::singleton(q.hi().clone());
    let n = n_terms as u32;
    let first = Interval::from_u64((n_terms as u64 + 1) * (n_terms as u64 + 1))
        .mul(&qh.powi((n + 1) * (n + 1), prec), prec);
    let ratio = Interval::from_ratio_i64(
        (n_terms as i64 + 2) * (n_terms as i64 + 2),
        (n_terms as i64 + 1) * (n_terms as i64 + 1),
        prec,
    )?
    .mul(&qh.powi(2 * n + 3, prec), prec);
    let tail = geometric_tail(&first, &ratio, n_terms, prec)?;
    Ok(sum.scale_pow2(1).add(&tail.scale_pow2(1), prec))
}

/// Encloses the arithmetic-geometric mean `M(a, b)` of positive inputs.
///
/// The iteration `(a, b) ← ((a+b)/2, √(ab))` is run in interval arithmetic
/// until the hull of the two iterates has relative width below
/// `2^-(prec-8)`; since `min(a,b) ≤ M(a,b) ≤ max(a,b)` pointwise, the hull
/// of the final pair encloses the limit at every stopping point.
pub fn agm(a: &Interval, b: &Interval, prec: u32) -> Result<Interval, RigorError> {
    if !a.is_strictly_positive() || !b.is_strictly_positive() {
        return Err(RigorError::SqrtNegative);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    for _ in 0..64 + prec / 2 {
        let hull = x.hull(&y);
        let tol = hull.hi().abs().scale_pow2(8 - prec as i64);
        if hull.width_upper(prec).cmp_exact(&tol) != Ordering::Greater {
            break;
        }
        let am = x.add(&y, prec).scale_pow2(-1);
        let gm = x.mul(&y, prec).sqrt(prec)?;
        x = am;
        y = gm;
    }
    Ok(x.hull(&y))
}

/// The `y > 0` with `λ(iy) = α`, as `M(1, √(1-α)) / M(1, √α)`.
pub fn lambda_inverse(alpha: &BigRational, prec: u32) -> Result<Interval, RigorError> {
    if alpha <= &BigRational::zero() || alpha >= &BigRational::one() {
        return Err(RigorError::InvalidInput(format!(
            "lambda_inverse needs 0 < alpha < 1, got {alpha}"
        )));
    }
    let a = Interval::from_ratio(alpha.numer(), alpha.denom(), prec)?;
    let one = Interval::one();
    let num = agm(&one, &one.sub(&a, prec).sqrt(prec)?, prec)?;
    let den = agm(&one, &a.sqrt(prec)?, prec)?;
    num.div(&den, prec)
}

/// Encloses `λ(iy) = 16 q P₂⁴ / θ₃⁴`.
pub fn lambda_eval(t: &ImaginaryTau, cfg: &ThetaSeriesConfig) -> Result<Interval, RigorError> {
    cfg.validate()?;
    check_q(t.q())?;
    let (n, prec) = (cfg.truncation, cfg.working_bits);
    let p2 = p2_series(t.q(), n, prec)?;
    let th3 = theta3_series(t.q(), n, prec)?;
    let quot = p2.div(&th3, prec)?;
    Ok(t.q().mul(&quot.powi(4, prec), prec).scale_pow2(4))
}

/// Encloses `q·dλ/dq` at `iy`, via the logarithmic derivative
/// `λ · (W/P₂ - 4 S₃/θ₃)` of the theta quotient.
pub fn q_dlambda_dq(t: &ImaginaryTau, cfg: &ThetaSeriesConfig) -> Result<Interval, RigorError> {
    cfg.validate()?;
    check_q(t.q())?;
    let (n, prec) = (cfg.truncation, cfg.working_bits);
    let p2 = p2_series(t.q(), n, prec)?;
    let th3 = theta3_series(t.q(), n, prec)?;
    let w = w_series(t.q(), n, prec)?;
    let s3 = s3_series(t.q(), n, prec)?;
    let quot = p2.div(&th3, prec)?;
    let lam = t.q().mul(&quot.powi(4, prec), prec).scale_pow2(4);
    let inner = w.div(&p2, prec)?.sub(&s3.div(&th3, prec)?.scale_pow2(2), prec);
    Ok(lam.mul(&inner, prec))
}

/// Certifies `|q·dλ/dq|(iy) ≥ threshold` for every `y` in `y_range` by
/// bisection on `y`.
pub fn certify_qdlambda_lower(
    y_range: &Interval,
    threshold: &BigRational,
    truncation: usize,
    cfg: &PrecisionConfig,
) -> Result<CertResult, RigorError> {
    if !y_range.is_strictly_positive() {
        return Err(RigorError::InvalidInput(
            "the y range must be strictly positive".into(),
        ));
    }
    let thr = Interval::from_ratio(threshold.numer(), threshold.denom(), cfg.working_bits)?;
    certify_margin_on_box(
        |bx, prec| {
            let t = ImaginaryTau::new(bx[0].clone(), prec)?;
            let scfg = ThetaSeriesConfig {
                truncation,
                working_bits: prec,
            };
            let qd = q_dlambda_dq(&t, &scfg)?;
            Ok(qd.abs_i().sub(&thr, prec))
        },
        Rel::Ge,
        std::slice::from_ref(y_range),
        cfg,
    )
}

/// Certifies that `λ(iy)` is strictly decreasing on `y_range`, via the
/// sign of the derivative: `dλ/dy = -π q · dλ/dq`, so it suffices that
/// `q·dλ/dq > 0` on the range.
pub fn certify_lambda_decreasing(
    y_range: &Interval,
    truncation: usize,
    cfg: &PrecisionConfig,
) -> Result<CertResult, RigorError> {
    if !y_range.is_strictly_positive() {
        return Err(RigorError::InvalidInput(
            "the y range must be strictly positive".into(),
        ));
    }
    certify_margin_on_box(
        |bx, prec| {
            let t = ImaginaryTau::new(bx[0].clone(), prec)?;
            let scfg = ThetaSeriesConfig {
                truncation,
                working_bits: prec,
            };
            q_dlambda_dq(&t, &scfg)
        },
        Rel::Gt,
        std::slice::from_ref(y_range),
        cfg,
    )
}

/// The range `[4/5, 1]` (outward-rounded at the lower endpoint) on which
/// the derivative lower bound is certified.
pub fn clambda_range(prec: u32) -> Interval {
    Interval::from_ratio_i64(4, 5, prec)
        .expect("constant range")
        .hull(&Interval::one())
}

/// Certifies `|q·dλ/dq|(iy) ≥ 3/20` for every `y ∈ [4/5, 1]`.
///
/// Since `3/20 > e⁻²`, this bounds `-log |q·dλ/dq|` by 2 on the range.
pub fn certify_clambda(cfg: &PrecisionConfig) -> Result<CertResult, RigorError> {
    let threshold = BigRational::new(3.into(), 20.into());
    certify_qdlambda_lower(
        &clambda_range(cfg.working_bits),
        &threshold,
        ThetaSeriesConfig::default().truncation,
        cfg,
    )
}
