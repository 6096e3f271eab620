//! Orchestration of the `validate`, `verify`, `rank` and `sweep` commands.

use ecslab_core::geometry::{self, covariant_derivative, Geometry, Violation};
use ecslab_core::olszak::{
    kernel_is_dx1_line, null_parallel_check, olszak_rank_at, rank1_kernel_structure,
    KernelStructure, OlszakResult,
};
use ecslab_core::roter::{
    build_metric, check_agreement, closed_forms, metric_determinant_pair, predicted_rank, validate,
    RoterParams, Status,
};
use rayon::prelude::*;

use crate::config::CaseConfig;
use crate::report::{PointRank, ReportFile, Stage, VerificationReport};

pub const CHECK_PIPELINE: &str = "build metric and curvature";
pub const CHECK_METRIC_SYMMETRIC: &str = "metric symmetric";
pub const CHECK_DET: &str = "det g = -det G";
pub const CHECK_INVERSE: &str = "g g^-1 = I";
pub const CHECK_CHRISTOFFEL_SYMMETRIC: &str = "Christoffel symmetric in lower indices";
pub const CHECK_RIEMANN_SYMMETRIES: &str = "Riemann symmetries";
pub const CHECK_FIRST_BIANCHI: &str = "first Bianchi identity";
pub const CHECK_SECOND_BIANCHI: &str = "second Bianchi identity";
pub const CHECK_RICCI_SYMMETRIC: &str = "Ricci symmetric";
pub const CHECK_SCALAR: &str = "scalar curvature s = 0";
pub const CHECK_WEYL_SYMMETRIES: &str = "Weyl symmetries and first Bianchi";
pub const CHECK_WEYL_TRACE_FREE: &str = "Weyl trace-free";
pub const CHECK_NABLA_G: &str = "nabla g = 0";
pub const CHECK_NABLA_W: &str = "nabla W = 0";
pub const CHECK_W_NONZERO: &str = "W != 0";
pub const CHECK_NOT_LOCALLY_SYMMETRIC: &str = "nabla R != 0";
pub const CHECK_NULL: &str = "null parallel: g_nn = 0";
pub const CHECK_PARALLEL: &str = "null parallel: Gamma^j_in = 0";
pub const CHECK_DUAL: &str = "null parallel: g(d_n, .) = dx1";
pub const CHECK_DX1_KERNEL: &str = "null parallel: dx1 in Olszak kernel";
pub const CHECK_RANK: &str = "Olszak rank d = predicted";
pub const CHECK_CONSTANCY: &str = "rank constancy";
pub const CHECK_KERNEL_STRUCTURE: &str = "kernel structure";

pub fn closed_form_check_name(family: &str) -> String {
    format!("closed form: {family}")
}

fn verify_check_names() -> Vec<String> {
    let mut names = vec![
        CHECK_METRIC_SYMMETRIC.to_string(),
        CHECK_DET.to_string(),
        CHECK_INVERSE.to_string(),
    ];
    names.extend(
        [
            ecslab_core::roter::FAMILY_INVERSE,
            ecslab_core::roter::FAMILY_GAMMA_L11,
            ecslab_core::roter::FAMILY_GAMMA_N11,
            ecslab_core::roter::FAMILY_GAMMA_N1L,
            ecslab_core::roter::FAMILY_RIEMANN,
            ecslab_core::roter::FAMILY_RICCI,
            ecslab_core::roter::FAMILY_WEYL,
        ]
        .iter()
        .map(|f| closed_form_check_name(f)),
    );
    names.extend(
        [
            CHECK_CHRISTOFFEL_SYMMETRIC,
            CHECK_RIEMANN_SYMMETRIES,
            CHECK_FIRST_BIANCHI,
            CHECK_SECOND_BIANCHI,
            CHECK_RICCI_SYMMETRIC,
            CHECK_SCALAR,
            CHECK_WEYL_SYMMETRIES,
            CHECK_WEYL_TRACE_FREE,
            CHECK_NABLA_G,
            CHECK_NABLA_W,
            CHECK_W_NONZERO,
            CHECK_NOT_LOCALLY_SYMMETRIC,
            CHECK_NULL,
            CHECK_PARALLEL,
            CHECK_DUAL,
            CHECK_DX1_KERNEL,
        ]
        .map(String::from),
    );
    names
}

fn rank_check_names() -> Vec<String> {
    [CHECK_RANK, CHECK_CONSTANCY, CHECK_KERNEL_STRUCTURE]
        .map(String::from)
        .to_vec()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Verify,
    Rank,
    Sweep,
}

impl Command {
    fn parts(self) -> (bool, bool) {
        match self {
            Command::Validate => (false, false),
            Command::Verify => (true, false),
            Command::Rank => (false, true),
            Command::Sweep => (true, true),
        }
    }
}

fn one_based(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn identity_check(
    report: &mut VerificationReport,
    name: &str,
    violation: Option<Violation>,
    ok_detail: &str,
) {
    match violation {
        None => report.push(Stage::Invariant, name, Status::Pass, ok_detail),
        Some(v) => report.push(
            Stage::Invariant,
            name,
            Status::Fail,
            format!("component {} = {}", one_based(&v.index), v.residual),
        ),
    }
}

fn skip_all(report: &mut VerificationReport, names: Vec<String>, why: &str) {
    for name in names {
        let stage =
            if name == CHECK_RANK || name == CHECK_CONSTANCY || name == CHECK_KERNEL_STRUCTURE {
                Stage::Rank
            } else {
                Stage::Invariant
            };
        report.push(stage, name, Status::Skip, why);
    }
}

fn run_case(config: &CaseConfig, command: Command) -> VerificationReport {
    let (verify, rank) = command.parts();
    let mut report = VerificationReport::new(config);
    let params = config.params();
    let validation = validate(&params);
    for e in &validation.entries {
        report.push(
            Stage::Validation,
            format!("validate: {}", e.name),
            e.status,
            e.detail.clone(),
        );
    }

    let mut planned = Vec::new();
    if verify {
        planned.extend(verify_check_names());
    }
    if rank {
        planned.extend(rank_check_names());
    }
    if !validation.is_valid() {
        skip_all(&mut report, planned, "validation failed");
        report.finish();
        return report;
    }
    if planned.is_empty() {
        report.finish();
        return report;
    }

    let geo = match build_metric(&params).and_then(Geometry::from_metric) {
        Ok(geo) => geo,
        Err(e) => {
            report.push(
                Stage::Invariant,
                CHECK_PIPELINE,
                Status::Fail,
                e.to_string(),
            );
            skip_all(&mut report, planned, "curvature pipeline failed");
            report.finish();
            return report;
        }
    };
    let olszak: Vec<Result<OlszakResult, String>> = config
        .sample_points
        .iter()
        .map(|p| olszak_rank_at(&geo.weyl, p).map_err(|e| e.to_string()))
        .collect();

    if verify {
        verify_checks(&mut report, &params, &geo, &olszak);
    }
    if rank {
        rank_checks(&mut report, &params, &olszak);
    }
    report.finish();
    report
}

fn verify_checks(
    report: &mut VerificationReport,
    params: &RoterParams,
    geo: &Geometry,
    olszak: &[Result<OlszakResult, String>],
) {
    identity_check(
        report,
        CHECK_METRIC_SYMMETRIC,
        geometry::check_symmetric(&geo.metric),
        "g_ij = g_ji",
    );
    match metric_determinant_pair(params, &geo.metric) {
        Ok((det, expected)) if det == expected && det.is_constant() => report.push(
            Stage::Invariant,
            CHECK_DET,
            Status::Pass,
            format!("det g = {det}"),
        ),
        Ok((det, expected)) => report.push(
            Stage::Invariant,
            CHECK_DET,
            Status::Fail,
            format!("det g = {det}, -det G = {expected}"),
        ),
        Err(e) => report.push(Stage::Invariant, CHECK_DET, Status::Fail, e.to_string()),
    }
    identity_check(
        report,
        CHECK_INVERSE,
        geometry::check_inverse(&geo.metric, &geo.inverse),
        "exact polynomial identity",
    );

    match closed_forms(params) {
        Ok(cf) => {
            for (family, mismatch) in check_agreement(&cf, geo) {
                let name = closed_form_check_name(family);
                match mismatch {
                    None => report.push(Stage::Invariant, name, Status::Pass, "exact agreement"),
                    Some(m) => report.push(
                        Stage::Invariant,
                        name,
                        Status::Fail,
                        format!(
                            "component {}: closed form {}, pipeline {}",
                            one_based(&m.index),
                            m.expected,
                            m.computed
                        ),
                    ),
                }
            }
        }
        Err(e) => report.push(
            Stage::Invariant,
            closed_form_check_name("all families"),
            Status::Fail,
            e.to_string(),
        ),
    }

    identity_check(
        report,
        CHECK_CHRISTOFFEL_SYMMETRIC,
        geometry::check_christoffel_symmetry(&geo.christoffel),
        "G^k_ij = G^k_ji",
    );
    match geometry::check_curvature_symmetries(&geo.riemann.lowered) {
        None => report.push(
            Stage::Invariant,
            CHECK_RIEMANN_SYMMETRIES,
            Status::Pass,
            "R_ijkl = -R_jikl = -R_ijlk = R_klij",
        ),
        Some((rel, v)) => report.push(
            Stage::Invariant,
            CHECK_RIEMANN_SYMMETRIES,
            Status::Fail,
            format!("{rel} fails at {}: {}", one_based(&v.index), v.residual),
        ),
    }
    identity_check(
        report,
        CHECK_FIRST_BIANCHI,
        geometry::check_first_bianchi(&geo.riemann.lowered),
        "R_ijkl + R_jkil + R_kijl = 0",
    );
    match covariant_derivative(&geo.riemann.lowered, &geo.christoffel) {
        Ok(nabla_r) => {
            identity_check(
                report,
                CHECK_SECOND_BIANCHI,
                geometry::check_second_bianchi(&nabla_r),
                "cyclic sum of nabla R vanishes",
            );
            if nabla_r.is_zero() {
                report.push(
                    Stage::Invariant,
                    CHECK_NOT_LOCALLY_SYMMETRIC,
                    Status::Warn,
                    "nabla R = 0: locally symmetric, not ECS",
                );
            } else {
                report.push(
                    Stage::Invariant,
                    CHECK_NOT_LOCALLY_SYMMETRIC,
                    Status::Pass,
                    "some component of nabla R is nonzero",
                );
            }
        }
        Err(e) => {
            report.push(
                Stage::Invariant,
                CHECK_SECOND_BIANCHI,
                Status::Fail,
                e.to_string(),
            );
            report.push(
                Stage::Invariant,
                CHECK_NOT_LOCALLY_SYMMETRIC,
                Status::Fail,
                e.to_string(),
            );
        }
    }
    identity_check(
        report,
        CHECK_RICCI_SYMMETRIC,
        geometry::check_symmetric(&geo.ricci),
        "R_ij = R_ji",
    );
    if geo.scalar.is_zero() {
        report.push(Stage::Invariant, CHECK_SCALAR, Status::Pass, "s = 0");
    } else {
        report.push(
            Stage::Invariant,
            CHECK_SCALAR,
            Status::Fail,
            format!("s = {}", geo.scalar),
        );
    }
    let weyl_sym = geometry::check_curvature_symmetries(&geo.weyl)
        .map(|(_, v)| v)
        .or_else(|| geometry::check_first_bianchi(&geo.weyl));
    identity_check(
        report,
        CHECK_WEYL_SYMMETRIES,
        weyl_sym,
        "W has the algebraic symmetries of R",
    );
    identity_check(
        report,
        CHECK_WEYL_TRACE_FREE,
        geometry::check_trace_free(&geo.weyl, &geo.inverse),
        "g^ik W_ijkl = 0",
    );
    for (name, tensor) in [(CHECK_NABLA_G, &geo.metric), (CHECK_NABLA_W, &geo.weyl)] {
        match covariant_derivative(tensor, &geo.christoffel) {
            Ok(d) => identity_check(
                report,
                name,
                geometry::first_nonzero(&d),
                "every component is the zero polynomial",
            ),
            Err(e) => report.push(Stage::Invariant, name, Status::Fail, e.to_string()),
        }
    }
    match geometry::first_nonzero(&geo.weyl) {
        Some(v) => report.push(
            Stage::Invariant,
            CHECK_W_NONZERO,
            Status::Pass,
            format!("W{} = {}", one_based(&v.index), v.residual),
        ),
        None => report.push(
            Stage::Invariant,
            CHECK_W_NONZERO,
            Status::Fail,
            "W = 0: conformally flat",
        ),
    }

    let ok_results: Vec<OlszakResult> = olszak.iter().filter_map(|r| r.clone().ok()).collect();
    let np = null_parallel_check(&geo.metric, &geo.christoffel, &ok_results);
    let detail = |flag: bool, ok: &str, prefix: &str| -> (Status, String) {
        if flag {
            (Status::Pass, ok.to_string())
        } else {
            let lines: Vec<&str> = np
                .failures
                .iter()
                .filter(|f| f.starts_with(prefix))
                .map(String::as_str)
                .collect();
            (Status::Fail, lines.join("; "))
        }
    };
    let rows = [
        (CHECK_NULL, np.is_null, "g(d_n, d_n) = 0", "g_{"),
        (CHECK_PARALLEL, np.is_parallel, "nabla d_n = 0", "G^"),
        (CHECK_DUAL, np.dual_is_dx1, "g_in = delta_1i", "g_{"),
        (
            CHECK_DX1_KERNEL,
            np.dx1_in_kernel && ok_results.len() == olszak.len(),
            "at every sample point",
            "",
        ),
    ];
    for (name, flag, ok, prefix) in rows {
        let (status, text) = detail(flag, ok, prefix);
        report.push(Stage::Invariant, name, status, text);
    }
}

fn rank_checks(
    report: &mut VerificationReport,
    params: &RoterParams,
    olszak: &[Result<OlszakResult, String>],
) {
    let predicted = match predicted_rank(params) {
        Ok(d) => d,
        Err(e) => {
            skip_all(report, rank_check_names(), &e.to_string());
            return;
        }
    };
    report.d_predicted = Some(predicted);

    let mut results = Vec::with_capacity(olszak.len());
    for r in olszak {
        match r {
            Ok(r) => results.push(r),
            Err(e) => {
                report.push(Stage::Rank, CHECK_RANK, Status::Fail, e.clone());
                return;
            }
        }
    }
    report.d_by_point = results
        .iter()
        .map(|r| PointRank::new(r.point.coords(), r.d))
        .collect();

    let ds: Vec<String> = results.iter().map(|r| r.d.to_string()).collect();
    if let Some(bad) = results.iter().find(|r| r.degenerate) {
        report.push(
            Stage::Rank,
            CHECK_RANK,
            Status::Fail,
            format!(
                "{} at {}",
                bad.warning().unwrap_or_default(),
                PointRank::new(bad.point.coords(), bad.d).point.join(",")
            ),
        );
    } else if results.iter().all(|r| r.d == predicted) {
        report.push(
            Stage::Rank,
            CHECK_RANK,
            Status::Pass,
            format!("d = {predicted} at all {} points", results.len()),
        );
    } else {
        report.push(
            Stage::Rank,
            CHECK_RANK,
            Status::Fail,
            format!("predicted {predicted}, computed [{}]", ds.join(", ")),
        );
    }

    if results.len() < 2 {
        report.push(
            Stage::Rank,
            CHECK_CONSTANCY,
            Status::Skip,
            "need >= 2 points",
        );
    } else {
        let first = results[0];
        let same_rank = results.iter().all(|r| r.d == first.d);
        let same_kernel = results.iter().all(|r| r.kernel_basis == first.kernel_basis);
        let (status, detail) = match (same_rank, same_kernel) {
            (true, true) => (Status::Pass, "same d and kernel at every point".to_string()),
            (false, _) => (Status::Fail, format!("d varies: [{}]", ds.join(", "))),
            (true, false) => (Status::Fail, "kernel varies between points".to_string()),
        };
        report.push(Stage::Rank, CHECK_CONSTANCY, status, detail);
    }

    let mut failures = Vec::new();
    let mut direction = None;
    for r in &results {
        if predicted == 2 {
            match rank1_kernel_structure(params.a_block(), r) {
                KernelStructure::Pass { direction: w } => direction = Some(w),
                KernelStructure::Fail(msg) | KernelStructure::Skipped(msg) => failures.push(msg),
            }
        } else if !kernel_is_dx1_line(r) {
            failures.push(format!(
                "kernel has dimension {}, expected span{{dx1}}",
                r.d
            ));
        }
    }
    let (status, detail) = match (failures.first(), direction) {
        (Some(msg), _) => (Status::Fail, msg.clone()),
        (None, Some(w)) => {
            let w: Vec<String> = w
                .iter()
                .map(ecslab_core::algebra::format_rational)
                .collect();
            (
                Status::Pass,
                format!(
                    "kernel = span{{dx1, w}}, w = ({}), w_n = 0, w parallel to the rows of A",
                    w.join(", ")
                ),
            )
        }
        (None, None) => (Status::Pass, "kernel = span{dx1}".to_string()),
    };
    report.push(Stage::Rank, CHECK_KERNEL_STRUCTURE, status, detail);
}

pub fn run_validate(config: &CaseConfig) -> VerificationReport {
    run_case(config, Command::Validate)
}

pub fn run_verify(config: &CaseConfig) -> VerificationReport {
    run_case(config, Command::Verify)
}

pub fn run_rank(config: &CaseConfig) -> VerificationReport {
    run_case(config, Command::Rank)
}

/// Runs `command` on every case. Cases are processed in parallel; the
/// report keeps config order.
pub fn run_command(command: Command, configs: &[CaseConfig]) -> ReportFile {
    let cases = configs.par_iter().map(|c| run_case(c, command)).collect();
    ReportFile::new(cases)
}

/// `verify` and `rank` for every case.
pub fn run_sweep(configs: &[CaseConfig]) -> ReportFile {
    run_command(Command::Sweep, configs)
}
