//! Report assembly and rendering. Reports serialize to JSON with every
//! numeric value carried as an outward-rounded decimal string, so a
//! report never claims more precision than the computation certified.

use num_rational::BigRational;
use rigor::{CertResult, CertStatus, Interval, Rel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Significant digits for serialized enclosures: lower ends round down,
/// upper ends round up.
pub const REPORT_DIGITS: u32 = 30;

/// Digits for the serialized slack, which is itself a safe lower bound.
const SLACK_DIGITS: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub precision_bits: u32,
    pub max_depth: u32,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    /// One of `Certified`, `Refuted`, `Undecided`, or `Value` for rows
    /// that report a quantity without an attached certificate.
    pub status: String,
    pub value_lo: String,
    pub value_hi: String,
    /// Exact rational reference the value is compared against, as `p` or
    /// `p/q`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference_value: Option<String>,
    /// Safe lower bound on the relative slack against the reference, in
    /// percent.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slack: Option<String>,
}

pub fn status_name(status: CertStatus) -> &'static str {
    match status {
        CertStatus::Certified => "Certified",
        CertStatus::Refuted => "Refuted",
        CertStatus::Undecided => "Undecided",
    }
}

/// A row that reports a quantity with no certificate attached.
pub fn value_claim(name: &str, value: &Interval) -> Claim {
    let (value_lo, value_hi) = value.to_decimal_pair(REPORT_DIGITS);
    Claim {
        name: name.to_string(),
        status: "Value".to_string(),
        value_lo,
        value_hi,
        reference_value: None,
        slack: None,
    }
}

/// A row for a certified comparison of `value` against an exact rational
/// reference. The slack column carries a safe lower bound on the
/// relative margin in the direction of `rel`, as a percentage.
pub fn compared_claim(
    name: &str,
    value: &Interval,
    reference: &BigRational,
    rel: Rel,
    cert: &CertResult,
    prec: u32,
) -> Claim {
    let (value_lo, value_hi) = value.to_decimal_pair(REPORT_DIGITS);
    Claim {
        name: name.to_string(),
        status: status_name(cert.status).to_string(),
        value_lo,
        value_hi,
        reference_value: Some(reference.to_string()),
        slack: relative_slack(value, reference, rel, prec),
    }
}

/// A row for a certificate about a fixed constant (a coefficient or
/// threshold); the value columns carry that constant.
pub fn cert_claim(name: &str, constant: &Interval, cert: &CertResult) -> Claim {
    let (value_lo, value_hi) = constant.to_decimal_pair(REPORT_DIGITS);
    Claim {
        name: name.to_string(),
        status: status_name(cert.status).to_string(),
        value_lo,
        value_hi,
        reference_value: None,
        slack: None,
    }
}

fn relative_slack(
    value: &Interval,
    reference: &BigRational,
    rel: Rel,
    prec: u32,
) -> Option<String> {
    let reference = Interval::from_ratio(reference.numer(), reference.denom(), prec).ok()?;
    let margin = match rel {
        Rel::Le | Rel::Lt => reference.sub(value, prec),
        Rel::Ge | Rel::Gt => value.sub(&reference, prec),
    };
    let denom = reference.abs_i();
    if !denom.is_strictly_positive() {
        return None;
    }
    let ratio = margin.div(&denom, prec).ok()?;
    let percent = ratio.mul(&Interval::from_u64(100), prec);
    Some(percent.to_decimal_pair(SLACK_DIGITS).0)
}

impl Report {
    pub fn new(command: &str, precision_bits: u32, max_depth: u32) -> Report {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            precision_bits,
            max_depth,
            claims: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    /// Process exit code: 1 if any claim is refuted, 2 if any is
    /// undecided (and none refuted), 0 otherwise.
    pub fn exit_code(&self) -> u8 {
        let mut code = 0;
        for claim in &self.claims {
            match claim.status.as_str() {
                "Refuted" => return 1,
                "Undecided" => code = 2,
                _ => {}
            }
        }
        code
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization");
        out.push('\n');
        out
    }

    /// Two-column table: each claim's enclosure against its reference,
    /// with the slack as a percentage where available.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (key, value) in &self.inputs {
            let _ = writeln!(out, "  {key}: {value}");
        }
        let _ = writeln!(
            out,
            "  precision: {} bits, depth cap {}",
            self.precision_bits, self.max_depth
        );
        let _ = writeln!(out, "{:<42} {:<10} {}", "claim", "status", "value");
        for claim in &self.claims {
            let mut value = format!("[{}, {}]", short(&claim.value_lo), short(&claim.value_hi));
            if let Some(reference) = &claim.reference_value {
                let _ = write!(value, " vs {}", short(reference));
            }
            if let Some(slack) = &claim.slack {
                let _ = write!(value, " (slack >= {slack}%)");
            }
            let _ = writeln!(out, "{:<42} {:<10} {}", claim.name, claim.status, value);
        }
        out
    }
}

fn short(s: &str) -> String {
    const LIMIT: usize = 24;
    if s.len() <= LIMIT {
        s.to_string()
    } else {
        format!("{}...", &s[..LIMIT])
    }
}
