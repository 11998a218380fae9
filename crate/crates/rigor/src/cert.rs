//! Branch-and-bound certification of inequalities over boxes.
//!
//! A claim is certified by evaluating an interval enclosure of its margin on
//! a box: if the sign is decided everywhere, the box is resolved; otherwise
//! the box is bisected along its widest dimension (relative to the initial
//! box) and the halves are processed lower-half first. The search is
//! sequential and allocation order is fixed, so results are bit-identical
//! across runs.
//!
//! Three outcomes are possible and all three are first-class: `Certified`
//! (the claim holds on every point of the domain), `Refuted` (a sub-box was
//! found on which the claim fails at every point), and `Undecided` (the
//! budget ran out first). A domain error during evaluation (for example a
//! division whose denominator enclosure straddles zero) is not fatal: the
//! box is split further, and only if it still cannot be resolved at the
//! depth cap does it surface as `Undecided`.

use crate::error::RigorError;
use crate::float::BigFloat;
use crate::interval::Interval;

/// Outcome of a certification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertStatus {
    /// The claim holds at every point of the domain.
    Certified,
    /// Some sub-box consists entirely of counterexamples.
    Refuted,
    /// Neither direction could be established within the budget.
    Undecided,
}

impl CertStatus {
    /// Short lowercase name, used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            CertStatus::Certified => "certified",
            CertStatus::Refuted => "refuted",
            CertStatus::Undecided => "undecided",
        }
    }

    /// Severity order for aggregation: refuted > undecided > certified.
    fn severity(self) -> u8 {
        match self {
            CertStatus::Certified => 0,
            CertStatus::Undecided => 1,
            CertStatus::Refuted => 2,
        }
    }
}

/// Result of certifying one claim.
///
/// `witness_box` is present exactly when the status is not `Certified`: for
/// `Refuted` it is a box of counterexamples, for `Undecided` it is the first
/// box the search had to give up on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertResult {
    pub status: CertStatus,
    pub witness_box: Option<Vec<Interval>>,
    pub depth_used: u32,
}

impl CertResult {
    pub fn certified(depth_used: u32) -> Self {
        CertResult {
            status: CertStatus::Certified,
            witness_box: None,
            depth_used,
        }
    }

    pub fn refuted(witness: Vec<Interval>, depth_used: u32) -> Self {
        CertResult {
            status: CertStatus::Refuted,
            witness_box: Some(witness),
            depth_used,
        }
    }

    pub fn undecided(witness: Vec<Interval>, depth_used: u32) -> Self {
        CertResult {
            status: CertStatus::Undecided,
            witness_box: Some(witness),
            depth_used,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }

    /// Conjunction of several results: the worst status wins, the witness of
    /// the first offender is kept, and the depth is the maximum.
    pub fn all_of<I: IntoIterator<Item = CertResult>>(results: I) -> CertResult {
        let mut out = CertResult::certified(0);
        for r in results {
            out.depth_used = out.depth_used.max(r.depth_used);
            if r.status.severity() > out.status.severity() {
                out.status = r.status;
                out.witness_box = r.witness_box;
            }
        }
        out
    }
}

/// Comparison relation for a claim `lhs REL rhs`, certified via the sign of
/// the margin `lhs - rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Gt,
    Le,
    Lt,
}

/// Numeric budget for a certification run.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionConfig {
    /// Mantissa bits carried through every interval operation. At least 53.
    pub working_bits: u32,
    /// Maximum bisection depth. At least 1.
    pub max_depth: u32,
    /// Boxes whose every side is at most this wide are no longer split; zero
    /// disables the floor and leaves the depth cap in charge.
    pub min_box_width: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            working_bits: 128,
            max_depth: 40,
            min_box_width: 0.0,
        }
    }
}

impl PrecisionConfig {
    pub fn with_bits(working_bits: u32) -> Self {
        PrecisionConfig {
            working_bits,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), RigorError> {
        if self.working_bits < 53 {
            return Err(RigorError::InvalidConfig(format!(
                "working_bits must be at least 53, got {}",
                self.working_bits
            )));
        }
        if self.max_depth < 1 {
            return Err(RigorError::InvalidConfig("max_depth must be at least 1".into()));
        }
        if !(self.min_box_width >= 0.0 && self.min_box_width.is_finite()) {
            return Err(RigorError::InvalidConfig(
                "min_box_width must be finite and nonnegative".into(),
            ));
        }
        Ok(())
    }
}

enum BoxVerdict {
    Holds,
    Fails,
    Unknown,
}

fn classify(margin: &Interval, rel: Rel) -> BoxVerdict {
    let lo = margin.lo();
    let hi = margin.hi();
    let (holds, fails) = match rel {
        Rel::Ge => (!lo.is_negative(), hi.is_negative()),
        Rel::Gt => (lo.is_positive(), !hi.is_positive()),
        Rel::Le => (!hi.is_positive(), lo.is_positive()),
        Rel::Lt => (hi.is_negative(), !lo.is_negative()),
    };
    if holds {
        BoxVerdict::Holds
    } else if fails {
        BoxVerdict::Fails
    } else {
        BoxVerdict::Unknown
    }
}

/// Pointwise certification of `lhs REL rhs` from already-computed
/// enclosures, with no subdivision: `Certified` when the margin's sign
/// settles the claim, `Refuted` when it settles the negation, `Undecided`
/// otherwise. The margin enclosure is kept as the witness in the latter
/// two cases.
pub fn check_rel(lhs: &Interval, rhs: &Interval, rel: Rel, prec: u32) -> CertResult {
    let margin = lhs.sub(rhs, prec);
    match classify(&margin, rel) {
        BoxVerdict::Holds => CertResult::certified(0),
        BoxVerdict::Fails => CertResult::refuted(vec![margin], 0),
        BoxVerdict::Unknown => CertResult::undecided(vec![margin], 0),
    }
}

/// Certifies `margin(x) REL 0` for every `x` in `domain`.
///
/// `margin` receives the current box and the working precision and returns
/// an enclosure of the claim's margin on that box. Returning a domain error
/// marks the box as unresolved rather than aborting.
pub fn certify_margin_on_box<F>(
    margin: F,
    rel: Rel,
    domain: &[Interval],
    cfg: &PrecisionConfig,
) -> Result<CertResult, RigorError>
where
    F: Fn(&[Interval], u32) -> Result<Interval, RigorError>,
{
    cfg.validate()?;
    let init_widths: Vec<BigFloat> = domain.iter().map(|iv| iv.width_upper(64)).collect();
    let width_floor = if cfg.min_box_width > 0.0 {
        BigFloat::from_f64(cfg.min_box_width)
    } else {
        None
    };

    let mut stack: Vec<(Vec<Interval>, u32)> = vec![(domain.to_vec(), 0)];
    let mut depth_used = 0u32;
    let mut first_undecided: Option<Vec<Interval>> = None;

    while let Some((bx, depth)) = stack.pop() {
        depth_used = depth_used.max(depth);
        let verdict = match margin(&bx, cfg.working_bits) {
            Ok(m) => classify(&m, rel),
            Err(e) if e.is_domain() => BoxVerdict::Unknown,
            Err(e) => return Err(e),
        };
        match verdict {
            BoxVerdict::Holds => {}
            BoxVerdict::Fails => return Ok(CertResult::refuted(bx, depth_used)),
            BoxVerdict::Unknown => {
                let too_small = width_floor.as_ref().map_or(false, |floor| {
                    bx.iter().all(|iv| iv.width_upper(64) <= *floor)
                });
                let split = if depth >= cfg.max_depth || too_small {
                    None
                } else {
                    pick_split_dim(&bx, &init_widths)
                };
                match split {
                    Some(dim) => {
                        let mid = bx[dim].midpoint();
                        let mut lower = bx.clone();
                        let mut upper = bx;
                        lower[dim] =
                            Interval::new(lower[dim].lo().clone(), mid.clone()).expect("ordered");
                        upper[dim] =
                            Interval::new(mid, upper[dim].hi().clone()).expect("ordered");
                        // lower half is processed first
                        stack.push((upper, depth + 1));
                        stack.push((lower, depth + 1));
                    }
                    None => {
                        if first_undecided.is_none() {
                            first_undecided = Some(bx);
                        }
                    }
                }
            }
        }
    }

    Ok(match first_undecided {
        Some(w) => CertResult::undecided(w, depth_used),
        None => CertResult::certified(depth_used),
    })
}

/// Picks the dimension with the largest width relative to the initial box;
/// ties go to the lowest index. Returns `None` when nothing can be split.
fn pick_split_dim(bx: &[Interval], init_widths: &[BigFloat]) -> Option<usize> {
    let mut best: Option<(usize, BigFloat, BigFloat)> = None; // (dim, w, w0)
    for (i, iv) in bx.iter().enumerate() {
        let w0 = &init_widths[i];
        if w0.is_zero() {
            continue;
        }
        let w = iv.width_upper(64);
        if w.is_zero() || iv.midpoint() <= *iv.lo() || iv.midpoint() >= *iv.hi() {
            continue;
        }
        match &best {
            None => best = Some((i, w, w0.clone())),
            Some((_, bw, bw0)) => {
                // w / w0 > bw / bw0  <=>  w * bw0 > bw * w0 (all nonnegative)
                let lhs = BigFloat::mul_exact(&w, bw0);
                let rhs = BigFloat::mul_exact(bw, w0);
                if lhs > rhs {
                    best = Some((i, w, w0.clone()));
                }
            }
        }
    }
    best.map(|(i, _, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(BigFloat::from_i64(lo), BigFloat::from_i64(hi)).unwrap()
    }

    #[test]
    fn square_is_nonnegative() {
        let cfg = PrecisionConfig::default();
        let r = certify_margin_on_box(
            |bx, bits| Ok(bx[0].powi(2, bits)),
            Rel::Ge,
            &[iv(-1, 1)],
            &cfg,
        )
        .unwrap();
        assert_eq!(r.status, CertStatus::Certified);
        assert!(r.witness_box.is_none());
    }

    #[test]
    fn strictly_greater_than_one_is_refuted_on_wide_box() {
        let cfg = PrecisionConfig::default();
        let one = Interval::one();
        let r = certify_margin_on_box(
            |bx, bits| Ok(bx[0].sub(&one, bits)),
            Rel::Gt,
            &[iv(0, 2)],
            &cfg,
        )
        .unwrap();
        assert_eq!(r.status, CertStatus::Refuted);
        let w = r.witness_box.unwrap();
        // every point of the witness box violates x > 1
        assert!(!w[0].hi().is_positive() || w[0].hi() <= &BigFloat::one());
    }

    #[test]
    fn domain_error_at_cap_is_undecided_with_witness() {
        let cfg = PrecisionConfig {
            working_bits: 64,
            max_depth: 6,
            min_box_width: 0.0,
        };
        // 1/x > 0 on [0, 1]: true on the interior, but every box touching
        // zero raises a division error, so the left edge never resolves
        let one = Interval::one();
        let r = certify_margin_on_box(
            |bx, bits| one.div(&bx[0], bits),
            Rel::Gt,
            &[iv(0, 1)],
            &cfg,
        )
        .unwrap();
        assert_eq!(r.status, CertStatus::Undecided);
        let w = r.witness_box.unwrap();
        assert!(w[0].contains_zero());
        assert_eq!(r.depth_used, 6);
    }

    #[test]
    fn single_point_domain_resolves_without_splitting() {
        let cfg = PrecisionConfig::default();
        let r = certify_margin_on_box(
            |bx, bits| Ok(bx[0].sub(&Interval::from_i64(2), bits)),
            Rel::Lt,
            &[Interval::from_i64(1)],
            &cfg,
        )
        .unwrap();
        assert_eq!(r.status, CertStatus::Certified);
        assert_eq!(r.depth_used, 0);
    }

    #[test]
    fn results_are_deterministic_across_runs() {
        let cfg = PrecisionConfig {
            working_bits: 64,
            max_depth: 12,
            min_box_width: 0.0,
        };
        let run = || {
            certify_margin_on_box(
                |bx, bits| {
                    let x2 = bx[0].powi(2, bits);
                    let y = &bx[1];
                    Ok(x2.sub(y, bits))
                },
                Rel::Ge,
                &[iv(-2, 2), iv(-1, 3)],
                &cfg,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
        assert_eq!(a.status, CertStatus::Refuted);
    }

    #[test]
    fn min_box_width_stops_refinement() {
        let cfg = PrecisionConfig {
            working_bits: 64,
            max_depth: 60,
            min_box_width: 0.25,
        };
        // x >= 1 on [0, 2] is false, but with a coarse width floor the search
        // may stop early; it must never claim Certified
        let one = Interval::one();
        let r = certify_margin_on_box(
            |bx, bits| Ok(bx[0].sub(&one, bits)),
            Rel::Ge,
            &[iv(0, 2)],
            &cfg,
        )
        .unwrap();
        assert_eq!(r.status, CertStatus::Refuted);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = PrecisionConfig {
            working_bits: 10,
            max_depth: 4,
            min_box_width: 0.0,
        };
        let err = certify_margin_on_box(|_, _| Ok(Interval::one()), Rel::Ge, &[iv(0, 1)], &cfg)
            .unwrap_err();
        assert!(matches!(err, RigorError::InvalidConfig(_)));
    }

    #[test]
    fn all_of_keeps_worst_status() {
        let c = CertResult::certified(3);
        let u = CertResult::undecided(vec![iv(0, 1)], 5);
        let r = CertResult::refuted(vec![iv(1, 2)], 2);
        let agg = CertResult::all_of([c.clone(), u.clone(), r.clone()]);
        assert_eq!(agg.status, CertStatus::Refuted);
        assert_eq!(agg.depth_used, 5);
        assert_eq!(agg.witness_box, r.witness_box);
        let agg2 = CertResult::all_of([c.clone(), u.clone()]);
        assert_eq!(agg2.status, CertStatus::Undecided);
        let agg3 = CertResult::all_of([c.clone(), c]);
        assert_eq!(agg3.status, CertStatus::Certified);
    }
}
