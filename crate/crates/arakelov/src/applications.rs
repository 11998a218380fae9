//! Specializations of the headline discriminant and height bounds to
//! standard curve families: modular curves, Galois Belyi curves,
//! congruence quotients, and covers of the line with a fixed branch
//! locus. The branch-locus constant grows like `(4NH)^(45N³·2^(N-2)·N!)`
//! and dwarfs every fixed-width float range, so those bounds are carried
//! in log space throughout.

use num_bigint::BigInt;
use rigor::{check_rel, CertResult, Interval, Rel, RigorError};

use crate::heights::{self, BranchSet};

/// The curve families the bounds specialize to. The parametrized
/// variants carry a level or an explicitly known Belyi degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveClass {
    Modular,
    GaloisBelyi,
    CongruenceIndex(u64),
    X1Level(u64),
    ExplicitBelyi(u64),
}

impl CurveClass {
    pub fn validate(&self) -> Result<(), RigorError> {
        let param = match self {
            CurveClass::Modular | CurveClass::GaloisBelyi => return Ok(()),
            CurveClass::CongruenceIndex(d) => d,
            CurveClass::X1Level(n) => n,
            CurveClass::ExplicitBelyi(d) => d,
        };
        if *param == 0 {
            return Err(RigorError::InvalidInput("class parameters must be positive".into()));
        }
        Ok(())
    }
}

/// A cover of the line together with the data its bound depends on: the
/// branch locus, the degree of the defining map, the degree of the extra
/// projection, and the genus.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub branch: BranchSet,
    pub deg_f: u64,
    pub deg_pi: u64,
    pub g: u64,
}

impl CoverSpec {
    pub fn validate(&self) -> Result<(), RigorError> {
        if self.deg_f == 0 || self.deg_pi == 0 || self.g == 0 {
            return Err(RigorError::InvalidInput(
                "cover degrees and genus must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The index of the level-`n` congruence subgroup,
/// `n²·∏_{p|n}(1 - 1/p²)`, as an exact integer.
pub fn gamma1_index(n: u64) -> Result<BigInt, RigorError> {
    if n == 0 {
        return Err(RigorError::InvalidInput("the level must be positive".into()));
    }
    if n > 1_000_000_000_000 {
        return Err(RigorError::InvalidInput("level too large to factor".into()));
    }
    let mut index = BigInt::from(n) * BigInt::from(n);
    // Peel one factor of (p²-1)/p² per distinct prime; n² carries at
    // least p² for each, so the division stays exact.
    let mut reduce = |p: u64| {
        let p2 = BigInt::from(p) * BigInt::from(p);
        index = &index / &p2 * (&p2 - 1);
    };
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            reduce(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        reduce(m);
    }
    Ok(index)
}

/// An upper bound for the Belyi degree of a curve in the given class:
/// `128(g+1)` for modular curves, `84(g-1)` for Galois Belyi curves of
/// genus at least 2, and the class's own index or degree for the
/// parametrized families.
pub fn belyi_degree_bound(class: &CurveClass, g: u64) -> Result<BigInt, RigorError> {
    class.validate()?;
    match class {
        CurveClass::Modular => {
            if g == 0 {
                return Err(RigorError::InvalidInput(
                    "the modular bound needs genus at least 1".into(),
                ));
            }
            Ok(BigInt::from(128u32) * (BigInt::from(g) + 1))
        }
        CurveClass::GaloisBelyi => {
            if g < 2 {
                return Err(RigorError::InvalidInput(
                    "the Galois Belyi bound needs genus at least 2".into(),
                ));
            }
            Ok(BigInt::from(84u32) * (BigInt::from(g) - 1))
        }
        CurveClass::CongruenceIndex(d) | CurveClass::ExplicitBelyi(d) => Ok(BigInt::from(*d)),
        CurveClass::X1Level(n) => gamma1_index(*n),
    }
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

/// The discriminant bound `2·10¹⁹·g²·(g+1)⁵` for modular and Galois
/// Belyi curves, with the certificate that it absorbs
/// `5·10⁸·g²·(128(g+1))⁵` and that the Galois Belyi degree bound
/// `84(g-1)` is dominated by the modular one `128(g+1)`.
pub fn modferwol_bound(g: u64) -> Result<(Interval, CertResult), RigorError> {
    if g == 0 {
        return Err(RigorError::InvalidInput("the genus must be positive".into()));
    }
    let g_big = BigInt::from(g);
    let g2 = &g_big * &g_big;
    let g1_5 = (&g_big + BigInt::from(1u32)).pow(5);
    let value = BigInt::from(2u32) * BigInt::from(10u64.pow(19)) * &g2 * &g1_5;
    let specialized =
        BigInt::from(500_000_000u64) * &g2 * (BigInt::from(128u32) * (&g_big + BigInt::from(1u32))).pow(5);
    let cert = CertResult::all_of([
        exact_le(
            BigInt::from(500_000_000u64) * BigInt::from(128u64).pow(5),
            BigInt::from(2u32) * BigInt::from(10u64.pow(19)),
        ),
        exact_le(
            BigInt::from(84u32) * (&g_big - 1),
            BigInt::from(128u32) * (&g_big + 1),
        ),
        exact_le(specialized, value.clone()),
    ]);
    Ok((Interval::from_bigint(&value), cert))
}

/// The discriminant bound `10⁹·d⁷` for a congruence quotient of index
/// `d`, with the certificate that it absorbs `5·10⁸·g²·d⁵` for every
/// genus up to `d`.
pub fn congruence_bound(d: u64) -> Result<(Interval, CertResult), RigorError> {
    if d == 0 {
        return Err(RigorError::InvalidInput("the index must be positive".into()));
    }
    let d_big = BigInt::from(d);
    let value = BigInt::from(10u64.pow(9)) * d_big.pow(7);
    let worst = BigInt::from(500_000_000u64) * d_big.pow(7);
    let cert = exact_le(worst, value.clone());
    Ok((Interval::from_bigint(&value), cert))
}

/// The discriminant bound `5·10⁸·n¹⁴` for the level-`n` modular curve,
/// via genus ≤ Belyi degree ≤ index ≤ n².
pub fn x1_discriminant_bound(n: u64) -> Result<Interval, RigorError> {
    if n == 0 {
        return Err(RigorError::InvalidInput("the level must be positive".into()));
    }
    Ok(Interval::from_bigint(
        &(BigInt::from(500_000_000u64) * BigInt::from(n).pow(14)),
    ))
}

/// Log-space upper bounds for the invariants of a cover with fixed
/// branch locus. Each field is the natural log of the corresponding
/// headline target multiplied by the branch-locus constant; the delta
/// lower bound is negative, so its magnitude is reported instead, and
/// the archimedean bound is absent at genus 1 where it is exactly zero.
#[derive(Clone, Debug)]
pub struct Mainthm2Bounds {
    pub log_c_b: Interval,
    pub log_h_fal: Interval,
    pub log_e: Option<Interval>,
    pub log_disc: Interval,
    pub log_delta_upper: Interval,
    pub log_delta_lower_magnitude: Interval,
}

/// Specializes the headline bounds to a cover with the given branch
/// locus and degrees, in log space.
pub fn mainthm2_bounds(spec: &CoverSpec, prec: u32) -> Result<Mainthm2Bounds, RigorError> {
    spec.validate()?;
    let log_c_b = heights::log_khadjavi(spec.branch.n, &spec.branch.h_max, prec)?;
    let d5 = (BigInt::from(spec.deg_f) * BigInt::from(spec.deg_pi)).pow(5);
    let g = BigInt::from(spec.g);
    let log_target = |coeff: u64, genus_part: BigInt| -> Result<Interval, RigorError> {
        let target = BigInt::from(coeff) * genus_part * &d5;
        Ok(Interval::from_bigint(&target).log(prec)?.add(&log_c_b, prec))
    };
    let log_e = if spec.g >= 2 {
        Some(log_target(30_000_000, &g - 1)?)
    } else {
        None
    };
    Ok(Mainthm2Bounds {
        log_h_fal: log_target(13_000_000, g.clone())?,
        log_e,
        log_disc: log_target(500_000_000, &g * &g)?,
        log_delta_upper: log_target(200_000_000, g.clone())?,
        log_delta_lower_magnitude: log_target(100_000_000, &g * &g)?,
        log_c_b,
    })
}

fn log_class_constant(n: u64, h_b: u64, prec: u32) -> Result<Interval, RigorError> {
    if n == 0 || h_b == 0 {
        return Err(RigorError::InvalidInput(
            "the branch count and height bound must be positive".into(),
        ));
    }
    let log_c_b = heights::log_khadjavi(n, &Interval::from_u64(h_b), prec)?;
    Ok(Interval::from_bigint(&(BigInt::from(13_000_000u64) * BigInt::from(n)))
        .log(prec)?
        .add(&log_c_b, prec))
}

/// The exponent `a = 6 + log(13·10⁶·N·c_B)` in the polynomial bound
/// `d^a` for covers with `N` branch points of height at most `h_b`.
pub fn edjs_exponent(n: u64, h_b: u64, prec: u32) -> Result<Interval, RigorError> {
    Ok(Interval::from_u64(6).add(&log_class_constant(n, h_b, prec)?, prec))
}

/// Certifies the absorption step behind [`edjs_exponent`]: for the
/// queried degree `d`, the genus-dependent constant `13·10⁶·g·c_B` with
/// `g ≤ N·d` is at most `d^(a-6+1)`. The step needs `log d ≥ 1`, so
/// degree 2 is honestly refused.
pub fn edjs_absorption_cert(
    n: u64,
    h_b: u64,
    d: u64,
    prec: u32,
) -> Result<CertResult, RigorError> {
    if d < 2 {
        return Err(RigorError::InvalidInput("the degree must be at least 2".into()));
    }
    let log_constant = log_class_constant(n, h_b, prec)?;
    let log_d = Interval::from_u64(d).log(prec)?;
    let lhs = log_constant.add(&log_d, prec);
    let rhs = Interval::one().add(&log_constant, prec).mul(&log_d, prec);
    Ok(check_rel(&lhs, &rhs, Rel::Le, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heights::{branch_stats, BranchPoint, Rational};
    use crate::testutil::{assert_encloses, bigfloat_to_rational};
    use num_rational::BigRational;
    use rigor::CertStatus;

    const PREC: u32 = 128;

    fn assert_exact_int(iv: &Interval, digits: &str) {
        assert!(iv.is_point());
        let expected: BigInt = digits.parse().unwrap();
        assert_eq!(
            bigfloat_to_rational(iv.lo()),
            BigRational::from_integer(expected)
        );
    }

    #[test]
    fn gamma1_index_examples_and_multiplicativity() {
        assert_eq!(gamma1_index(1).unwrap(), BigInt::from(1));
        assert_eq!(gamma1_index(5).unwrap(), BigInt::from(24));
        assert_eq!(gamma1_index(6).unwrap(), BigInt::from(24));
        assert_eq!(gamma1_index(7).unwrap(), BigInt::from(48));
        assert_eq!(gamma1_index(12).unwrap(), BigInt::from(96));
        assert_eq!(gamma1_index(1024).unwrap(), BigInt::from(786432));
        for (m, n) in [(4u64, 9u64), (5, 7), (8, 27), (25, 36)] {
            let product = gamma1_index(m).unwrap() * gamma1_index(n).unwrap();
            assert_eq!(gamma1_index(m * n).unwrap(), product, "coprime pair ({m},{n})");
        }
        assert!(gamma1_index(0).is_err());
    }

    #[test]
    fn belyi_degree_bound_per_class() {
        assert_eq!(
            belyi_degree_bound(&CurveClass::Modular, 2).unwrap(),
            BigInt::from(384)
        );
        assert_eq!(
            belyi_degree_bound(&CurveClass::Modular, 1).unwrap(),
            BigInt::from(256)
        );
        assert_eq!(
            belyi_degree_bound(&CurveClass::GaloisBelyi, 2).unwrap(),
            BigInt::from(84)
        );
        assert_eq!(
            belyi_degree_bound(&CurveClass::X1Level(5), 1).unwrap(),
            BigInt::from(24)
        );
        assert_eq!(
            belyi_degree_bound(&CurveClass::CongruenceIndex(7), 1).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(
            belyi_degree_bound(&CurveClass::ExplicitBelyi(9), 3).unwrap(),
            BigInt::from(9)
        );
        assert!(belyi_degree_bound(&CurveClass::Modular, 0).is_err());
        assert!(belyi_degree_bound(&CurveClass::GaloisBelyi, 1).is_err());
        assert!(belyi_degree_bound(&CurveClass::X1Level(0), 1).is_err());
        assert!(belyi_degree_bound(&CurveClass::CongruenceIndex(0), 1).is_err());
    }

    #[test]
    fn modferwol_bound_values_and_certificates() {
        let (value, cert) = modferwol_bound(1).unwrap();
        assert_exact_int(&value, "640000000000000000000");
        assert_eq!(cert.status, CertStatus::Certified);

        assert_eq!(
            BigInt::from(128u64).pow(5),
            "34359738368".parse::<BigInt>().unwrap()
        );
        assert_eq!(
            BigInt::from(500_000_000u64) * BigInt::from(128u64).pow(5),
            "17179869184000000000".parse::<BigInt>().unwrap()
        );

        for g in [1u64, 2, 10, 100, 1000] {
            let (_, c) = modferwol_bound(g).unwrap();
            assert_eq!(c.status, CertStatus::Certified, "failed at g={g}");
        }
        assert!(modferwol_bound(0).is_err());
    }

    #[test]
    fn congruence_bound_values_and_certificates() {
        let (value, cert) = congruence_bound(12).unwrap();
        assert_exact_int(&value, "35831808000000000");
        assert_eq!(cert.status, CertStatus::Certified);

        let (unit, _) = congruence_bound(1).unwrap();
        assert_exact_int(&unit, "1000000000");

        for d in [1u64, 2, 12, 1000] {
            let (_, c) = congruence_bound(d).unwrap();
            assert_eq!(c.status, CertStatus::Certified, "failed at d={d}");
        }
        assert!(congruence_bound(0).is_err());
    }

    #[test]
    fn x1_discriminant_bound_is_exact_and_matches_the_chain() {
        assert_exact_int(&x1_discriminant_bound(5).unwrap(), "3051757812500000000");
        assert_exact_int(&x1_discriminant_bound(1).unwrap(), "500000000");

        let at2 = x1_discriminant_bound(2).unwrap();
        let at3 = x1_discriminant_bound(3).unwrap();
        assert!(bigfloat_to_rational(at2.hi()) < bigfloat_to_rational(at3.lo()));

        // Same value as running the generic bound at genus n² and
        // degree n²: 5·10⁸·(n²)²·(n²)⁵.
        for n in [2u64, 3, 5, 11] {
            let n2 = BigInt::from(n) * BigInt::from(n);
            let chain = BigInt::from(500_000_000u64) * (&n2 * &n2) * n2.pow(5);
            let direct = x1_discriminant_bound(n).unwrap();
            assert_eq!(
                bigfloat_to_rational(direct.lo()),
                BigRational::from_integer(chain)
            );
            assert!(direct.is_point());
        }
        assert!(x1_discriminant_bound(0).is_err());
    }

    fn standard_branch() -> BranchSet {
        branch_stats(&[
            BranchPoint::Finite(Rational::from_i64(0, 1).unwrap()),
            BranchPoint::Finite(Rational::from_i64(1, 1).unwrap()),
            BranchPoint::Infinity,
        ])
        .unwrap()
    }

    #[test]
    fn mainthm2_bounds_in_log_space() {
        let unit = mainthm2_bounds(
            &CoverSpec { branch: standard_branch(), deg_f: 1, deg_pi: 1, g: 1 },
            PREC,
        )
        .unwrap();
        assert_encloses(
            &unit.log_c_b,
            "36229.9389539090445231491642160508534988419963",
            25,
        );
        assert_encloses(
            &unit.log_h_fal,
            "36246.3194138244703339893256522205250026924081",
            25,
        );
        assert!(unit.log_e.is_none());

        let d3 = mainthm2_bounds(
            &CoverSpec { branch: standard_branch(), deg_f: 1, deg_pi: 3, g: 1 },
            PREC,
        )
        .unwrap();
        assert_encloses(
            &d3.log_h_fal,
            "36251.8124752678108824463018784051376312156456",
            25,
        );
        assert_encloses(
            &d3.log_disc,
            "36255.4621340087715374528851332061672286655681",
            25,
        );
        assert_encloses(
            &d3.log_delta_upper,
            "36254.5458432768973823877016059943992175941180",
            25,
        );
        assert_encloses(
            &d3.log_delta_lower_magnitude,
            "36253.8526960963374370782843738729410410260425",
            25,
        );

        let g2 = mainthm2_bounds(
            &CoverSpec { branch: standard_branch(), deg_f: 3, deg_pi: 1, g: 2 },
            PREC,
        )
        .unwrap();
        assert_encloses(
            g2.log_e.as_ref().unwrap(),
            "36252.6487232920115010856616276551792025230889",
            25,
        );

        assert!(mainthm2_bounds(
            &CoverSpec { branch: standard_branch(), deg_f: 0, deg_pi: 1, g: 1 },
            PREC
        )
        .is_err());
    }

    #[test]
    fn mainthm2_wider_branch_locus_raises_the_constant() {
        let four_points = branch_stats(&[
            BranchPoint::Finite(Rational::from_i64(0, 1).unwrap()),
            BranchPoint::Finite(Rational::from_i64(1, 1).unwrap()),
            BranchPoint::Finite(Rational::new(BigInt::from(1), BigInt::from(2)).unwrap()),
            BranchPoint::Infinity,
        ])
        .unwrap();
        assert_eq!(four_points.n, 4);
        let bounds = mainthm2_bounds(
            &CoverSpec { branch: four_points, deg_f: 1, deg_pi: 1, g: 1 },
            PREC,
        )
        .unwrap();
        assert_encloses(
            &bounds.log_c_b,
            "958206.662406068395738381684703783287707571386",
            20,
        );
        assert_encloses(
            &bounds.log_h_fal,
            "958223.042865983821549221846139952959211421798",
            20,
        );
    }

    #[test]
    fn edjs_exponent_values_and_monotonicity() {
        let a31 = edjs_exponent(3, 1, PREC).unwrap();
        assert_encloses(&a31, "36253.4180261131384436807208974574475283970556", 25);
        let a11 = edjs_exponent(1, 1, PREC).unwrap();
        assert_encloses(&a11, "53.5720830406233497639368816352894494138093829", 28);

        let a41 = edjs_exponent(4, 1, PREC).unwrap();
        let a32 = edjs_exponent(3, 2, PREC).unwrap();
        assert!(bigfloat_to_rational(a31.hi()) < bigfloat_to_rational(a41.lo()));
        assert!(bigfloat_to_rational(a31.hi()) < bigfloat_to_rational(a32.lo()));

        assert!(edjs_exponent(0, 1, PREC).is_err());
        assert!(edjs_exponent(3, 0, PREC).is_err());
    }

    #[test]
    fn edjs_absorption_certifies_from_degree_three_only() {
        for d in [3u64, 4, 10, 1000] {
            let cert = edjs_absorption_cert(3, 1, d, PREC).unwrap();
            assert_eq!(cert.status, CertStatus::Certified, "failed at d={d}");
        }
        // log 2 < 1, so the d^(a-5) absorption genuinely fails at d=2.
        let at_two = edjs_absorption_cert(3, 1, 2, PREC).unwrap();
        assert_eq!(at_two.status, CertStatus::Refuted);
        assert!(edjs_absorption_cert(3, 1, 1, PREC).is_err());
    }
}
