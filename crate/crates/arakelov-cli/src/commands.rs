//! One function per subcommand, each returning a [`Report`]. Input and
//! domain errors come back as strings; the caller maps them to exit
//! code 3.

use crate::report::{cert_claim, compared_claim, status_name, value_claim, Claim, Report};
use arakelov::applications::{
    congruence_bound, edjs_absorption_cert, edjs_exponent, gamma1_index, mainthm2_bounds,
    modferwol_bound, x1_discriminant_bound, CoverSpec,
};
use arakelov::dessins::BelyiTriple;
use arakelov::heights::{branch_stats, khadjavi_exponent, nonweierstrass_height_bound, BranchPoint, BranchSet};
use arakelov::invariants::{compose_mainthm, mainthm_targets, minkowski_c, theta_sum_cert, theta_sum_lhs};
use arakelov::merkl::{
    certify_appendix_reduction, certify_theorem_lift, green_bound_actual, green_bound_belyi,
    green_target, wronskian_bound, wronskian_link,
};
use arakelov::modlambda::{
    certify_clambda, lambda_eval, lambda_inverse, q_dlambda_dq, ImaginaryTau, ThetaSeriesConfig,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rigor::{check_rel, CertStatus, Interval, PrecisionConfig, Rel};

/// Resolved global settings: precision and depth after applying flag,
/// environment, and default in that order.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub precision_bits: u32,
    pub max_depth: u32,
}

impl Settings {
    fn precision_config(&self) -> PrecisionConfig {
        PrecisionConfig {
            working_bits: self.precision_bits,
            max_depth: self.max_depth,
            min_box_width: 0.0,
        }
    }
}

fn big(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn interval_to_rational_reference(iv: &Interval) -> Option<BigRational> {
    if !iv.is_point() {
        return None;
    }
    let (num, den_pow2) = iv.lo().to_int_scaled();
    Some(BigRational::new(num, BigInt::from(1u32) << den_pow2 as usize))
}

/// `bound --genus g --belyi-degree d` or `bound --triple FILE`: the
/// composed invariant bounds for one cover, with the intermediate Green,
/// Wronskian, and height bounds.
pub fn cmd_bound(
    genus: Option<u64>,
    belyi_degree: Option<u64>,
    triple_path: Option<&std::path::Path>,
    settings: Settings,
) -> Result<Report, String> {
    let mut report = Report::new("bound", settings.precision_bits, settings.max_depth);
    let prec = settings.precision_bits;

    let (d, g, n_cusps, from_triple) = match (triple_path, genus, belyi_degree) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let triple = BelyiTriple::parse(&text).map_err(|e| e.to_string())?;
            let summary = triple.validate().map_err(|e| e.to_string())?;
            report.input("triple", path.display());
            report.input("cusps", summary.n);
            (summary.d as u64, summary.g as u64, summary.n as u64, true)
        }
        (None, Some(g), Some(d)) => (d, g, 3 * d, false),
        _ => {
            return Err(
                "provide either --triple FILE or both --genus and --belyi-degree".to_string(),
            )
        }
    };
    report.input("belyi_degree", d);
    report.input("genus", g);

    let (green, green_cert) = green_bound_belyi(d, g, n_cusps, prec).map_err(|e| e.to_string())?;
    let target = green_target(d, g, prec).map_err(|e| e.to_string())?;
    let target_ref = interval_to_rational_reference(&target)
        .unwrap_or_else(|| big(6_378_027) * big(d).pow(5) / big(g));
    report.claims.push(compared_claim(
        "green_sup_bound",
        &green,
        &target_ref,
        Rel::Le,
        &green_cert,
        prec,
    ));
    if from_triple {
        let sharper = green_bound_actual(d, g, n_cusps, prec).map_err(|e| e.to_string())?;
        report
            .claims
            .push(value_claim("green_sup_bound_actual_cusps", &sharper));
    }

    let (wronskian, wr_cert) = wronskian_bound(d, g, prec).map_err(|e| e.to_string())?;
    report
        .claims
        .push(cert_claim("wronskian_norm_bound", &wronskian, &wr_cert));

    let (height, h_cert) = nonweierstrass_height_bound(d, g, prec).map_err(|e| e.to_string())?;
    report
        .claims
        .push(cert_claim("nonweierstrass_height_bound", &height, &h_cert));

    let (bounds, _) = compose_mainthm(d, g, prec).map_err(|e| e.to_string())?;
    let targets = mainthm_targets(d, g);
    let rows: [(&str, &Interval, &Interval, Rel); 5] = [
        ("h_fal_upper", &bounds.h_fal.upper, &targets.h_fal, Rel::Le),
        ("e_upper", &bounds.e.upper, &targets.e, Rel::Le),
        ("disc_upper", &bounds.disc.upper, &targets.disc, Rel::Le),
        ("delta_upper", &bounds.delta.upper, &targets.delta_upper, Rel::Le),
        ("delta_lower", &bounds.delta.lower, &targets.delta_lower, Rel::Ge),
    ];
    for (name, value, target, rel) in rows {
        let cert = check_rel(value, target, rel, prec);
        let reference = interval_to_rational_reference(target)
            .expect("composition targets are exact integers");
        report
            .claims
            .push(compared_claim(name, value, &reference, rel, &cert, prec));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Merkl,
    Appendix,
    Lambda,
    Theta,
    Pipeline,
    Applications,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Merkl => "merkl",
            Suite::Appendix => "appendix",
            Suite::Lambda => "lambda",
            Suite::Theta => "theta",
            Suite::Pipeline => "pipeline",
            Suite::Applications => "applications",
        }
    }
}

fn worst(a: CertStatus, b: CertStatus) -> CertStatus {
    use CertStatus::*;
    match (a, b) {
        (Refuted, _) | (_, Refuted) => Refuted,
        (Undecided, _) | (_, Undecided) => Undecided,
        _ => Certified,
    }
}

fn aggregate_claim(name: &str, value: &Interval, status: CertStatus) -> Claim {
    let mut claim = value_claim(name, value);
    claim.status = status_name(status).to_string();
    claim
}

fn suite_lambda(report: &mut Report, settings: Settings) -> Result<(), String> {
    let prec = settings.precision_bits;
    let cert = certify_clambda(&settings.precision_config()).map_err(|e| e.to_string())?;
    let floor = Interval::from_ratio_i64(3, 20, prec).map_err(|e| e.to_string())?;
    report
        .claims
        .push(cert_claim("qdlambda_floor_on_window", &floor, &cert));

    let cfg = ThetaSeriesConfig::with_bits(prec);
    let tau_i = ImaginaryTau::from_ratio_i64(1, 1, prec).map_err(|e| e.to_string())?;
    let spot = q_dlambda_dq(&tau_i, &cfg).map_err(|e| e.to_string())?;
    report.claims.push(value_claim("qdlambda_at_i", &spot));
    let lam = lambda_eval(&tau_i, &cfg).map_err(|e| e.to_string())?;
    let mut lam_claim = value_claim("lambda_at_i", &lam);
    lam_claim.reference_value = Some("1/2".to_string());
    report.claims.push(lam_claim);

    let alpha = BigRational::new(BigInt::from(2), BigInt::from(3));
    let inverse = lambda_inverse(&alpha, prec).map_err(|e| e.to_string())?;
    report
        .claims
        .push(value_claim("lambda_inverse_two_thirds", &inverse));
    Ok(())
}

fn suite_theta(report: &mut Report, settings: Settings) -> Result<(), String> {
    let prec = settings.precision_bits;
    for g in 1..=10u64 {
        let lhs = theta_sum_lhs(g, prec).map_err(|e| e.to_string())?;
        let cert = theta_sum_cert(g, prec).map_err(|e| e.to_string())?;
        let reference = BigRational::from_integer(BigInt::from(1u32) << (3 * g.pow(3) + 5 * g) as usize);
        report.claims.push(compared_claim(
            &format!("theta_sum_g{g}"),
            &lhs,
            &reference,
            Rel::Le,
            &cert,
            prec,
        ));
    }
    let c2 = minkowski_c(2, prec).map_err(|e| e.to_string())?;
    let mut c2_claim = value_claim("minkowski_c_2", &c2);
    c2_claim.reference_value = Some("3/8".to_string());
    report.claims.push(c2_claim);
    Ok(())
}

fn suite_merkl(report: &mut Report, settings: Settings) -> Result<(), String> {
    let prec = settings.precision_bits;
    let (green, cert) = green_bound_belyi(3, 1, 9, prec).map_err(|e| e.to_string())?;
    report.claims.push(compared_claim(
        "green_sup_bound_tightest",
        &green,
        &big(1_549_860_561),
        Rel::Le,
        &cert,
        prec,
    ));

    let link = wronskian_link(prec).map_err(|e| e.to_string())?;
    let link_cert = check_rel(&link, &Interval::from_u64(13), Rel::Le, prec);
    report.claims.push(compared_claim(
        "wronskian_scalar_link",
        &link,
        &big(13),
        Rel::Le,
        &link_cert,
        prec,
    ));

    let (wronskian, wr_cert) = wronskian_bound(3, 1, prec).map_err(|e| e.to_string())?;
    report
        .claims
        .push(cert_claim("wronskian_norm_bound_d3_g1", &wronskian, &wr_cert));
    Ok(())
}

fn suite_appendix(report: &mut Report, settings: Settings) -> Result<(), String> {
    let cfg = settings.precision_config();
    let prec = settings.precision_bits;
    let reduction = certify_appendix_reduction(&cfg).map_err(|e| e.to_string())?;
    let coefficient = Interval::from_ratio_i64(262, 5, prec).map_err(|e| e.to_string())?;
    report
        .claims
        .push(cert_claim("appendix_reduction_coefficient", &coefficient, &reduction));

    let lift = certify_theorem_lift(&cfg).map_err(|e| e.to_string())?;
    report
        .claims
        .push(cert_claim("green_coefficient_lift", &Interval::from_u64(330), &lift));
    Ok(())
}

fn suite_pipeline(report: &mut Report, settings: Settings, dmax: u64, gmax: Option<u64>) -> Result<(), String> {
    let prec = settings.precision_bits;
    if dmax < 3 {
        return Err("the sweep needs dmax >= 3".to_string());
    }
    let mut green_status = CertStatus::Certified;
    let mut compose_status = CertStatus::Certified;
    let mut cells = 0u64;
    for d in 3..=dmax {
        let g_cap = gmax.unwrap_or(d).min(d);
        for g in 1..=g_cap {
            let (_, green_cert) = green_bound_belyi(d, g, 3 * d, prec).map_err(|e| e.to_string())?;
            green_status = worst(green_status, green_cert.status);
            let (_, cert) = compose_mainthm(d, g, prec).map_err(|e| e.to_string())?;
            compose_status = worst(compose_status, cert.status);
            cells += 1;
        }
    }
    report.input("dmax", dmax);
    if let Some(gmax) = gmax {
        report.input("gmax", gmax);
    }
    report.input("sweep_cells", cells);

    let (tightest_green, _) = green_bound_belyi(3, 1, 9, prec).map_err(|e| e.to_string())?;
    report
        .claims
        .push(aggregate_claim("green_sup_bound_sweep", &tightest_green, green_status));
    let (bounds, _) = compose_mainthm(3, 1, prec).map_err(|e| e.to_string())?;
    report.claims.push(aggregate_claim(
        "composition_sweep",
        &bounds.h_fal.upper,
        compose_status,
    ));
    Ok(())
}

fn suite_applications(report: &mut Report, settings: Settings) -> Result<(), String> {
    let prec = settings.precision_bits;
    let mut modferwol_status = CertStatus::Certified;
    for g in 1..=1000 {
        let (_, cert) = modferwol_bound(g).map_err(|e| e.to_string())?;
        modferwol_status = worst(modferwol_status, cert.status);
    }
    let (modferwol_g1, _) = modferwol_bound(1).map_err(|e| e.to_string())?;
    report.claims.push(aggregate_claim(
        "modferwol_bound_sweep",
        &modferwol_g1,
        modferwol_status,
    ));

    let mut congruence_status = CertStatus::Certified;
    for d in 1..=1000 {
        let (_, cert) = congruence_bound(d).map_err(|e| e.to_string())?;
        congruence_status = worst(congruence_status, cert.status);
    }
    let (congruence_d12, _) = congruence_bound(12).map_err(|e| e.to_string())?;
    report.claims.push(aggregate_claim(
        "congruence_bound_sweep",
        &congruence_d12,
        congruence_status,
    ));

    for n in [5u64, 6] {
        let index = gamma1_index(n).map_err(|e| e.to_string())?;
        report.claims.push(value_claim(
            &format!("gamma1_index_{n}"),
            &Interval::from_bigint(&index),
        ));
    }
    let x1 = x1_discriminant_bound(5).map_err(|e| e.to_string())?;
    report.claims.push(value_claim("x1_discriminant_bound_5", &x1));

    let exponent = edjs_exponent(3, 1, prec).map_err(|e| e.to_string())?;
    let absorption = edjs_absorption_cert(3, 1, 3, prec).map_err(|e| e.to_string())?;
    let mut edjs_claim = cert_claim("edjs_exponent_three_points", &exponent, &absorption);
    edjs_claim.reference_value = None;
    report.claims.push(edjs_claim);
    Ok(())
}

/// `verify SUITE`: run a certification suite; the caller's exit code is
/// the worst claim status across the suite.
pub fn cmd_verify(
    suite: Suite,
    dmax: u64,
    gmax: Option<u64>,
    settings: Settings,
) -> Result<Report, String> {
    let mut report = Report::new("verify", settings.precision_bits, settings.max_depth);
    report.input("suite", suite.name());
    match suite {
        Suite::Lambda => suite_lambda(&mut report, settings)?,
        Suite::Theta => suite_theta(&mut report, settings)?,
        Suite::Merkl => suite_merkl(&mut report, settings)?,
        Suite::Appendix => suite_appendix(&mut report, settings)?,
        Suite::Pipeline => suite_pipeline(&mut report, settings, dmax, gmax)?,
        Suite::Applications => suite_applications(&mut report, settings)?,
        Suite::All => {
            suite_lambda(&mut report, settings)?;
            suite_theta(&mut report, settings)?;
            suite_merkl(&mut report, settings)?;
            suite_appendix(&mut report, settings)?;
            suite_pipeline(&mut report, settings, dmax, gmax)?;
            suite_applications(&mut report, settings)?;
        }
    }
    Ok(report)
}

/// `modular --x1 n | --congruence-index d`: discriminant bounds for the
/// two modular families.
pub fn cmd_modular(
    x1: Option<u64>,
    congruence_index: Option<u64>,
    settings: Settings,
) -> Result<Report, String> {
    let mut report = Report::new("modular", settings.precision_bits, settings.max_depth);
    match (x1, congruence_index) {
        (Some(n), None) => {
            report.input("x1_level", n);
            let index = gamma1_index(n).map_err(|e| e.to_string())?;
            report
                .claims
                .push(value_claim("congruence_subgroup_index", &Interval::from_bigint(&index)));
            let bound = x1_discriminant_bound(n).map_err(|e| e.to_string())?;
            report.claims.push(value_claim("discriminant_bound", &bound));
        }
        (None, Some(d)) => {
            report.input("congruence_index", d);
            let (bound, cert) = congruence_bound(d).map_err(|e| e.to_string())?;
            report.claims.push(cert_claim("discriminant_bound", &bound, &cert));
        }
        _ => return Err("provide exactly one of --x1 or --congruence-index".to_string()),
    }
    Ok(report)
}

fn parse_branch_list(list: &str) -> Result<BranchSet, String> {
    let points = list
        .split(',')
        .map(|token| token.trim().parse::<BranchPoint>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    branch_stats(&points).map_err(|e| e.to_string())
}

/// `cover --branch LIST --deg-f N --deg-pi M --genus G`: log-space
/// invariant bounds for a cover with fixed branch locus.
pub fn cmd_cover(
    branch: &str,
    deg_f: u64,
    deg_pi: u64,
    genus: u64,
    settings: Settings,
) -> Result<Report, String> {
    let mut report = Report::new("cover", settings.precision_bits, settings.max_depth);
    let branch_set = parse_branch_list(branch)?;
    report.input("branch", branch);
    report.input("branch_points", branch_set.n);
    report.input("deg_f", deg_f);
    report.input("deg_pi", deg_pi);
    report.input("genus", genus);
    let spec = CoverSpec {
        branch: branch_set,
        deg_f,
        deg_pi,
        g: genus,
    };
    let bounds = mainthm2_bounds(&spec, settings.precision_bits).map_err(|e| e.to_string())?;
    report
        .claims
        .push(value_claim("log_branch_constant", &bounds.log_c_b));
    report
        .claims
        .push(value_claim("log_h_fal_upper", &bounds.log_h_fal));
    if let Some(log_e) = &bounds.log_e {
        report.claims.push(value_claim("log_e_upper", log_e));
    }
    report
        .claims
        .push(value_claim("log_disc_upper", &bounds.log_disc));
    report
        .claims
        .push(value_claim("log_delta_upper", &bounds.log_delta_upper));
    report.claims.push(value_claim(
        "log_delta_lower_magnitude",
        &bounds.log_delta_lower_magnitude,
    ));
    Ok(report)
}

/// `khadjavi --branch LIST`: the branch-locus constant for a branch
/// list, in log space, with its exact exponent.
pub fn cmd_khadjavi(branch: &str, settings: Settings) -> Result<Report, String> {
    let prec = settings.precision_bits;
    let mut report = Report::new("khadjavi", settings.precision_bits, settings.max_depth);
    let branch_set = parse_branch_list(branch)?;
    report.input("branch", branch);
    report.input("branch_points", branch_set.n);
    report
        .claims
        .push(value_claim("height_bound", &branch_set.h_max));
    let exponent = khadjavi_exponent(branch_set.n).map_err(|e| e.to_string())?;
    let exponent_iv = Interval::from_ratio(exponent.numer(), exponent.denom(), prec)
        .map_err(|e| e.to_string())?;
    report.claims.push(value_claim("exponent", &exponent_iv));
    let log_c_b = arakelov::heights::log_khadjavi(branch_set.n, &branch_set.h_max, prec)
        .map_err(|e| e.to_string())?;
    report
        .claims
        .push(value_claim("log_branch_constant", &log_c_b));
    Ok(report)
}
