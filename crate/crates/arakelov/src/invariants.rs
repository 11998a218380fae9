//! The inequality suite relating the stable invariants of a curve: theta
//! bounds, the Noether identity, per-invariant upper and lower bounds in
//! terms of the height of one non-Weierstrass point and the Wronskian
//! norm at it, and the composition that turns the certified cover bounds
//! into the headline constants `13·10⁶ g d⁵`, `3·10⁷ (g-1) d⁵`,
//! `5·10⁸ g² d⁵`, and `[-10⁸ g² d⁵, 2·10⁸ g d⁵]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rigor::{check_rel, CertResult, Interval, Rel, RigorError};
use std::cmp::Ordering;

use crate::heights;
use crate::merkl;

/// Stable invariants of one curve: Faltings height, archimedean and
/// finite discriminant parts, and the delta invariant, plus the optional
/// theta-geometry values some identities need.
#[derive(Clone, Debug)]
pub struct InvariantVector {
    pub h_fal: Interval,
    pub e: Interval,
    pub delta: Interval,
    pub disc: Interval,
    pub log_s: Option<Interval>,
    pub log_r: Option<Interval>,
    pub log_theta_max: Option<Interval>,
}

/// The two inputs of the per-invariant bounds: the genus, the height of
/// a chosen point `b`, and the log of the Arakelov norm of the Wronskian
/// at `b`.
#[derive(Clone, Debug)]
pub struct HeightData {
    pub g: u64,
    pub h_b: Interval,
    pub log_wr: Interval,
}

/// A lower and an upper bound for one invariant.
#[derive(Clone, Debug)]
pub struct BoundPair {
    pub lower: Interval,
    pub upper: Interval,
}

/// Bounds for all four invariants.
#[derive(Clone, Debug)]
pub struct BoundSet {
    pub h_fal: BoundPair,
    pub e: BoundPair,
    pub disc: BoundPair,
    pub delta: BoundPair,
}

impl BoundSet {
    /// True when every pair has its lower endpoint at or below its upper
    /// endpoint, i.e. the bounds describe a non-empty region.
    pub fn is_consistent(&self) -> bool {
        [&self.h_fal, &self.e, &self.disc, &self.delta]
            .iter()
            .all(|p| p.lower.lo().cmp_exact(p.upper.hi()) != Ordering::Greater)
    }
}

fn require_genus(g: u64, min: u64) -> Result<(), RigorError> {
    if g < min {
        return Err(RigorError::InvalidInput(format!("the genus must be at least {min}")));
    }
    if g > 100_000 {
        return Err(RigorError::InvalidInput("genus too large for exact bookkeeping".into()));
    }
    Ok(())
}

fn log_2pi(prec: u32) -> Interval {
    Interval::pi(prec)
        .scale_pow2(1)
        .log(prec)
        .expect("2*pi is positive")
}

/// `(g/4)·log max(1, h_fal) + (4g³+5g+1)·log 2`, the sup bound for the
/// log of the maximal theta value in terms of the Faltings height.
pub fn theta_max_bound(g: u64, h_fal: &Interval, prec: u32) -> Result<Interval, RigorError> {
    require_genus(g, 1)?;
    let clamped = h_fal.max_i(&Interval::one());
    let head = Interval::from_u64(g)
        .scale_pow2(-2)
        .mul(&clamped.log(prec)?, prec);
    let coeff = BigInt::from(4u32) * BigInt::from(g).pow(3) + BigInt::from(5 * g) + 1;
    Ok(head.add(&Interval::from_bigint(&coeff).mul(&Interval::ln2(prec), prec), prec))
}

fn minkowski_exact(g: u64) -> BigRational {
    let four_over_g3 = BigRational::new(BigInt::from(4u32), BigInt::from(g).pow(3));
    let three_quarters = BigRational::new(3.into(), 4.into());
    let mut c = BigRational::from_integer(1.into());
    for _ in 1..g {
        c *= &four_over_g3;
    }
    for _ in 0..(g * (g - 1) / 2) {
        c *= &three_quarters;
    }
    c
}

/// The Minkowski-type lattice constant `(4/g³)^(g-1)·(3/4)^(g(g-1)/2)`,
/// computed exactly and enclosed outward.
pub fn minkowski_c(g: u64, prec: u32) -> Result<Interval, RigorError> {
    require_genus(g, 1)?;
    let c = minkowski_exact(g);
    Interval::from_ratio(c.numer(), c.denom(), prec)
}

/// The left side of the theta-sum comparison,
/// `2^g·(1 + 2/(π√3·c(g)))^g`.
pub fn theta_sum_lhs(g: u64, prec: u32) -> Result<Interval, RigorError> {
    require_genus(g, 1)?;
    let c = minkowski_c(g, prec)?;
    let den = Interval::pi(prec)
        .mul(&Interval::from_u64(3).sqrt(prec)?, prec)
        .mul(&c, prec);
    let t = Interval::from_u64(2).div(&den, prec)?;
    Ok(Interval::one().add(&t, prec).powi(g as u32, prec).scale_pow2(g as i64))
}

/// Certifies `2^g·(1 + 2/(π√3·c(g)))^g ≤ 2^(3g³+5g)`, the counting step
/// behind [`theta_max_bound`].
pub fn theta_sum_cert(g: u64, prec: u32) -> Result<CertResult, RigorError> {
    let lhs = theta_sum_lhs(g, prec)?;
    let exponent = 3 * (g as i64).pow(3) + 5 * g as i64;
    let rhs = Interval::one().scale_pow2(exponent);
    Ok(check_rel(&lhs, &rhs, Rel::Le, prec))
}

fn intervals_equal(a: &Interval, b: &Interval) -> bool {
    a.lo().cmp_exact(b.lo()) == Ordering::Equal && a.hi().cmp_exact(b.hi()) == Ordering::Equal
}

fn ineq_cert_impl(
    a: &Interval,
    b: &Interval,
    x_range: &Interval,
    with_critical_branch: bool,
    prec: u32,
) -> Result<CertResult, RigorError> {
    if !a.is_strictly_positive() {
        return Err(RigorError::InvalidInput("the slope parameter a must be positive".into()));
    }
    let one = Interval::one();
    if b.hi().cmp_exact(one.hi()) == Ordering::Greater {
        return Err(RigorError::InvalidInput("the floor parameter b must be at most 1".into()));
    }

    let two_a = a.scale_pow2(1);
    let r1 = b.scale_pow2(-1);
    let r2 = a.sub(&a.mul(&two_a.log(prec)?, prec), prec);
    let rhs_min = if with_critical_branch { r1.min_i(&r2) } else { r1.clone() };

    // The left side x/2 - a·log max(1,x) is increasing below 1,
    // decreasing on [1, 2a], and increasing past 2a, so its infimum over
    // the range is attained at an endpoint, at 1, or at 2a. Each
    // candidate is compared against the right side; a candidate whose
    // enclosure coincides with one of the right side's branches is an
    // equality case and counts as covered.
    let x_lo = Interval::singleton(x_range.lo().clone());
    let x_hi = Interval::singleton(x_range.hi().clone());
    let clamp = |t: &Interval| x_lo.max_i(&x_hi.min_i(t));
    let candidates = [x_lo.clone(), x_hi.clone(), clamp(&one), clamp(&two_a)];
    let range_starts_at_b = x_range.lo().cmp_exact(b.lo()) == Ordering::Equal;

    let phi = |c: &Interval| -> Result<Interval, RigorError> {
        let log_part = c.max_i(&one).log(prec)?;
        Ok(c.scale_pow2(-1).sub(&a.mul(&log_part, prec), prec))
    };

    let mut first_open: Option<Vec<Interval>> = None;
    for c in &candidates {
        let v = phi(c)?;
        // On the flat piece the left side is c/2 with c at least the
        // range's start; when that start is b itself, c/2 ≥ b/2 holds
        // identically and needs no numeric margin.
        let on_flat_piece = c.hi().cmp_exact(one.hi()) != Ordering::Greater;
        if range_starts_at_b && on_flat_piece {
            continue;
        }
        if intervals_equal(&v, &r1) || (with_critical_branch && intervals_equal(&v, &r2)) {
            continue;
        }
        let dominates = |r: &Interval| v.lo().cmp_exact(r.hi()) != Ordering::Less;
        if dominates(&r1) || (with_critical_branch && dominates(&r2)) {
            continue;
        }
        if v.hi().cmp_exact(rhs_min.lo()) == Ordering::Less {
            return Ok(CertResult::refuted(vec![c.clone(), v], 0));
        }
        if first_open.is_none() {
            first_open = Some(vec![c.clone(), v]);
        }
    }
    Ok(match first_open {
        None => CertResult::certified(0),
        Some(w) => CertResult::undecided(w, 0),
    })
}

/// Certifies `x - a·log max(1,x) ≥ x/2 + min(b/2, a - a·log 2a)` for all
/// `x` in `x_range` (equivalently, that `x/2 - a·log max(1,x)` stays
/// above the two-branch floor). Equality is attained at `x = b` and at
/// `x = 2a`, so the certificate works through the function's three
/// monotone pieces rather than by blind subdivision.
pub fn ineq_lemma_cert(
    a: &Interval,
    b: &Interval,
    x_range: &Interval,
    prec: u32,
) -> Result<CertResult, RigorError> {
    ineq_cert_impl(a, b, x_range, true, prec)
}

/// Control variant of [`ineq_lemma_cert`] that keeps only the `b/2`
/// branch of the floor. The strengthened claim is false for large `a`,
/// which exercises the refutation path.
pub fn ineq_lemma_floor_cert(
    a: &Interval,
    b: &Interval,
    x_range: &Interval,
    prec: u32,
) -> Result<CertResult, RigorError> {
    ineq_cert_impl(a, b, x_range, false, prec)
}

/// The unconditional lower bound `-g·log 2π` for the Faltings height.
pub fn bost_lower(g: u64, prec: u32) -> Result<Interval, RigorError> {
    require_genus(g, 1)?;
    Ok(Interval::from_u64(g).mul(&log_2pi(prec), prec).neg())
}

/// `12·h_fal - (e + disc + delta - 4g·log 2π)`; an invariant vector is
/// Noether-consistent exactly when this residual encloses zero.
pub fn noether_residual(v: &InvariantVector, g: u64, prec: u32) -> Result<Interval, RigorError> {
    require_genus(g, 1)?;
    let four_g = Interval::from_u64(4 * g).mul(&log_2pi(prec), prec);
    let rhs = v
        .e
        .add(&v.disc, prec)
        .add(&v.delta, prec)
        .sub(&four_g, prec);
    Ok(v.h_fal.scale_pow2(2).mul(&Interval::from_u64(3), prec).sub(&rhs, prec))
}

/// `log_s - (delta/8 + log_r)`; zero for vectors satisfying the
/// surface-volume identity. Errors when the optional theta-geometry
/// fields are absent.
pub fn sr_identity_residual(v: &InvariantVector, prec: u32) -> Result<Interval, RigorError> {
    let (log_s, log_r) = match (&v.log_s, &v.log_r) {
        (Some(s), Some(r)) => (s, r),
        _ => {
            return Err(RigorError::InvalidInput(
                "log S and log R are unavailable for this vector".into(),
            ))
        }
    };
    Ok(log_s.sub(&v.delta.scale_pow2(-3).add(log_r, prec), prec))
}

/// The scalar link certified inside [`faltingsomega1`]:
/// `(4g³+5g+1)·log 2 + max(g/2·log 2π, g/4·log(g/2) - g/4)`.
pub fn faltings_link(g: u64, prec: u32) -> Result<Interval, RigorError> {
    require_genus(g, 2)?;
    let coeff = BigInt::from(4u32) * BigInt::from(g).pow(3) + BigInt::from(5 * g) + 1;
    let head = Interval::from_bigint(&coeff).mul(&Interval::ln2(prec), prec);
    let first = Interval::from_u64(g).scale_pow2(-1).mul(&log_2pi(prec), prec);
    let half_g = Interval::from_u64(g).scale_pow2(-1);
    let second = Interval::from_u64(g)
        .scale_pow2(-2)
        .mul(&half_g.log(prec)?.sub(&Interval::one(), prec), prec);
    Ok(head.add(&first.max_i(&second), prec))
}

/// Upper bounds for the Faltings height and the discriminant in terms of
/// the archimedean part `e` and `delta`, for genus at least 2:
/// `h_fal ≤ (2g-1)(g+1)/(4(g-1))·e + delta/4 + 20g³` and
/// `disc ≤ 3(2g-1)(g+1)/(g-1)·e + 2·delta + 248g³`, together with the
/// certificate of the scalar link `faltings_link(g) ≤ 10g³` the proof of
/// the constant `20g³` rests on.
pub fn faltingsomega1(
    g: u64,
    e: &Interval,
    delta: &Interval,
    prec: u32,
) -> Result<(Interval, Interval, CertResult), RigorError> {
    require_genus(g, 2)?;
    let num = BigInt::from(2 * g - 1) * BigInt::from(g + 1);
    let e_coeff = Interval::from_ratio(&num, &(BigInt::from(4u32) * BigInt::from(g - 1)), prec)?;
    let g3 = BigInt::from(g).pow(3);
    let h_upper = e_coeff
        .mul(e, prec)
        .add(&delta.scale_pow2(-2), prec)
        .add(&Interval::from_bigint(&(BigInt::from(20u32) * &g3)), prec);
    let disc_coeff = Interval::from_ratio(&(BigInt::from(3u32) * num), &BigInt::from(g - 1), prec)?;
    let disc_upper = disc_coeff
        .mul(e, prec)
        .add(&delta.scale_pow2(1), prec)
        .add(&Interval::from_bigint(&(BigInt::from(248u32) * &g3)), prec);
    let link = check_rel(
        &faltings_link(g, prec)?,
        &Interval::from_bigint(&(BigInt::from(10u32) * &g3)),
        Rel::Le,
        prec,
    );
    Ok((h_upper, disc_upper, link))
}

/// The per-invariant bounds from one non-Weierstrass point `b`:
///
/// * `0 ≤ e ≤ 4g(g-1)·h_b`
/// * `-g·log 2π ≤ h_fal ≤ ½g(g+1)·h_b + log_wr`
/// * `-90g³ - 4g(2g-1)(g+1)·h_b ≤ delta ≤ 6g(g+1)·h_b + 12·log_wr + 4g·log 2π`
/// * `0 ≤ disc ≤ 2g(g+1)(4g+1)·h_b + 12·log_wr + 93g³`
pub fn upperboundinv(h: &HeightData, prec: u32) -> Result<BoundSet, RigorError> {
    require_genus(h.g, 1)?;
    if h.h_b.lo().is_negative() {
        return Err(RigorError::InvalidInput("the height of the point must be non-negative".into()));
    }
    let g = BigInt::from(h.g);
    let g3 = g.pow(3);
    let coeff = |n: BigInt| Interval::from_bigint(&n);
    let twelve_wr = h.log_wr.scale_pow2(2).mul(&Interval::from_u64(3), prec);
    let four_g_log2pi = Interval::from_u64(4 * h.g).mul(&log_2pi(prec), prec);

    let e_upper = coeff(BigInt::from(4u32) * &g * (&g - 1)).mul(&h.h_b, prec);
    let h_fal_upper = coeff(&g * (&g + 1))
        .scale_pow2(-1)
        .mul(&h.h_b, prec)
        .add(&h.log_wr, prec);
    let delta_lower = coeff(BigInt::from(90u32) * &g3)
        .add(
            &coeff(BigInt::from(4u32) * &g * (BigInt::from(2u32) * &g - 1) * (&g + 1))
                .mul(&h.h_b, prec),
            prec,
        )
        .neg();
    let delta_upper = coeff(BigInt::from(6u32) * &g * (&g + 1))
        .mul(&h.h_b, prec)
        .add(&twelve_wr, prec)
        .add(&four_g_log2pi, prec);
    let disc_upper = coeff(BigInt::from(2u32) * &g * (&g + 1) * (BigInt::from(4u32) * &g + 1))
        .mul(&h.h_b, prec)
        .add(&twelve_wr, prec)
        .add(&coeff(BigInt::from(93u32) * &g3), prec);

    Ok(BoundSet {
        h_fal: BoundPair { lower: bost_lower(h.g, prec)?, upper: h_fal_upper },
        e: BoundPair { lower: Interval::zero(), upper: e_upper },
        disc: BoundPair { lower: Interval::zero(), upper: disc_upper },
        delta: BoundPair { lower: delta_lower, upper: delta_upper },
    })
}

/// The headline targets `13·10⁶ g d⁵`, `3·10⁷ (g-1) d⁵`, `5·10⁸ g² d⁵`
/// and the delta window `[-10⁸ g² d⁵, 2·10⁸ g d⁵]`, as exact point
/// enclosures.
#[derive(Clone, Debug)]
pub struct MainTheoremTargets {
    pub h_fal: Interval,
    pub e: Interval,
    pub disc: Interval,
    pub delta_lower: Interval,
    pub delta_upper: Interval,
}

pub fn mainthm_targets(d: u64, g: u64) -> MainTheoremTargets {
    let d5 = BigInt::from(d).pow(5);
    let g_big = BigInt::from(g);
    let point = |n: BigInt| Interval::from_bigint(&n);
    MainTheoremTargets {
        h_fal: point(BigInt::from(13_000_000u64) * &g_big * &d5),
        e: point(BigInt::from(30_000_000u64) * (&g_big - 1) * &d5),
        disc: point(BigInt::from(500_000_000u64) * &g_big * &g_big * &d5),
        delta_lower: point(-(BigInt::from(100_000_000u64) * &g_big * &g_big * &d5)),
        delta_upper: point(BigInt::from(200_000_000u64) * &g_big * &d5),
    }
}

/// Composes the certified cover bounds (the non-Weierstrass height bound
/// and the Wronskian norm bound) through [`upperboundinv`] and certifies
/// that the result is dominated by [`mainthm_targets`]. The returned
/// bound set carries the composed values; the certificate conjoins the
/// two ingredient certificates with the four dominations.
pub fn compose_mainthm(d: u64, g: u64, prec: u32) -> Result<(BoundSet, CertResult), RigorError> {
    let (h_b, h_cert) = heights::nonweierstrass_height_bound(d, g, prec)?;
    let (log_wr, wr_cert) = merkl::wronskian_bound(d, g, prec)?;
    let bounds = upperboundinv(&HeightData { g, h_b, log_wr }, prec)?;
    let t = mainthm_targets(d, g);
    let cert = CertResult::all_of([
        h_cert,
        wr_cert,
        check_rel(&bounds.h_fal.upper, &t.h_fal, Rel::Le, prec),
        check_rel(&bounds.e.upper, &t.e, Rel::Le, prec),
        check_rel(&bounds.disc.upper, &t.disc, Rel::Le, prec),
        check_rel(&bounds.delta.upper, &t.delta_upper, Rel::Le, prec),
        check_rel(&bounds.delta.lower, &t.delta_lower, Rel::Ge, prec),
    ]);
    Ok((bounds, cert))
}
