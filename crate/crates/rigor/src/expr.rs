//! Symbolic claims: small expression trees evaluated in interval arithmetic.
//!
//! This is the convenience layer over [`crate::cert`]: a [`Claim`] pairs two
//! expressions with a comparison, and [`certify_on_box`] runs the bisection
//! engine on its margin. Anything not expressible here (special-function
//! enclosures, exact integer side conditions) uses
//! [`crate::cert::certify_margin_on_box`] directly.

use crate::cert::{certify_margin_on_box, CertResult, PrecisionConfig, Rel};
use crate::error::RigorError;
use crate::interval::Interval;

/// An arithmetic expression over box variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// The i-th coordinate of the box.
    Var(usize),
    Int(i64),
    /// Exact rational constant `p / q`.
    Ratio(i64, i64),
    Pi,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Powi(Box<Expr>, u32),
    Sqrt(Box<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn int(v: i64) -> Expr {
        Expr::Int(v)
    }

    pub fn ratio(p: i64, q: i64) -> Expr {
        Expr::Ratio(p, q)
    }

    pub fn pi() -> Expr {
        Expr::Pi
    }

    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    pub fn powi(self, n: u32) -> Expr {
        Expr::Powi(Box::new(self), n)
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn log(self) -> Expr {
        Expr::Log(Box::new(self))
    }

    pub fn min(self, rhs: Expr) -> Expr {
        Expr::Min(Box::new(self), Box::new(rhs))
    }

    pub fn max(self, rhs: Expr) -> Expr {
        Expr::Max(Box::new(self), Box::new(rhs))
    }

    /// Interval enclosure of the expression over `vars`.
    pub fn eval(&self, vars: &[Interval], prec: u32) -> Result<Interval, RigorError> {
        match self {
            Expr::Var(i) => vars.get(*i).cloned().ok_or_else(|| {
                RigorError::InvalidInput(format!("variable {i} outside a {}-dim box", vars.len()))
            }),
            Expr::Int(v) => Ok(Interval::from_i64(*v)),
            Expr::Ratio(p, q) => Interval::from_ratio_i64(*p, *q, prec),
            Expr::Pi => Ok(Interval::pi(prec)),
            Expr::Add(a, b) => Ok(a.eval(vars, prec)?.add(&b.eval(vars, prec)?, prec)),
            Expr::Sub(a, b) => Ok(a.eval(vars, prec)?.sub(&b.eval(vars, prec)?, prec)),
            Expr::Mul(a, b) => Ok(a.eval(vars, prec)?.mul(&b.eval(vars, prec)?, prec)),
            Expr::Div(a, b) => a.eval(vars, prec)?.div(&b.eval(vars, prec)?, prec),
            Expr::Neg(a) => Ok(a.eval(vars, prec)?.neg()),
            Expr::Powi(a, n) => Ok(a.eval(vars, prec)?.powi(*n, prec)),
            Expr::Sqrt(a) => a.eval(vars, prec)?.sqrt(prec),
            Expr::Exp(a) => Ok(a.eval(vars, prec)?.exp(prec)),
            Expr::Log(a) => a.eval(vars, prec)?.log(prec),
            Expr::Min(a, b) => Ok(a.eval(vars, prec)?.min_i(&b.eval(vars, prec)?)),
            Expr::Max(a, b) => Ok(a.eval(vars, prec)?.max_i(&b.eval(vars, prec)?)),
        }
    }
}

/// A comparison between two expressions, quantified over a box.
#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub lhs: Expr,
    pub rel: Rel,
    pub rhs: Expr,
}

impl Claim {
    pub fn ge(lhs: Expr, rhs: Expr) -> Claim {
        Claim { lhs, rel: Rel::Ge, rhs }
    }

    pub fn gt(lhs: Expr, rhs: Expr) -> Claim {
        Claim { lhs, rel: Rel::Gt, rhs }
    }

    pub fn le(lhs: Expr, rhs: Expr) -> Claim {
        Claim { lhs, rel: Rel::Le, rhs }
    }

    pub fn lt(lhs: Expr, rhs: Expr) -> Claim {
        Claim { lhs, rel: Rel::Lt, rhs }
    }
}

/// Certifies `claim` over the box `domain` by adaptive bisection.
pub fn certify_on_box(
    claim: &Claim,
    domain: &[Interval],
    cfg: &PrecisionConfig,
) -> Result<CertResult, RigorError> {
    certify_margin_on_box(
        |bx, bits| {
            let l = claim.lhs.eval(bx, bits)?;
            let r = claim.rhs.eval(bx, bits)?;
            Ok(l.sub(&r, bits))
        },
        claim.rel,
        domain,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::CertStatus;
    use crate::float::BigFloat;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(BigFloat::from_i64(lo), BigFloat::from_i64(hi)).unwrap()
    }

    #[test]
    fn log_growth_claim_certifies() {
        // 3 log(2 x^2) <= 2 x^2 on [3, 50]
        let claim = Claim::le(
            Expr::int(3).mul(Expr::int(2).mul(Expr::var(0).powi(2)).log()),
            Expr::int(2).mul(Expr::var(0).powi(2)),
        );
        let r = certify_on_box(&claim, &[iv(3, 50)], &PrecisionConfig::default()).unwrap();
        assert_eq!(r.status, CertStatus::Certified);
    }

    #[test]
    fn false_claim_is_refuted_with_witness() {
        let claim = Claim::gt(Expr::var(0), Expr::int(1));
        let r = certify_on_box(&claim, &[iv(0, 2)], &PrecisionConfig::default()).unwrap();
        assert_eq!(r.status, CertStatus::Refuted);
        assert!(r.witness_box.is_some());
    }

    #[test]
    fn pi_constant_participates() {
        // pi^2 < 10 on a point box
        let claim = Claim::lt(Expr::pi().powi(2), Expr::int(10));
        let r = certify_on_box(&claim, &[], &PrecisionConfig::default()).unwrap();
        assert_eq!(r.status, CertStatus::Certified);
    }

    #[test]
    fn min_max_follow_envelopes() {
        // max(1, x) >= min(b, x) for b = 1/2, over x in [-4, 4]
        let claim = Claim::ge(
            Expr::int(1).max(Expr::var(0)),
            Expr::ratio(1, 2).min(Expr::var(0)),
        );
        let r = certify_on_box(&claim, &[iv(-4, 4)], &PrecisionConfig::default()).unwrap();
        assert_eq!(r.status, CertStatus::Certified);
    }

    #[test]
    fn unknown_variable_is_an_input_error() {
        let claim = Claim::ge(Expr::var(3), Expr::int(0));
        let err = certify_on_box(&claim, &[iv(0, 1)], &PrecisionConfig::default()).unwrap_err();
        assert!(matches!(err, RigorError::InvalidInput(_)));
    }
}
