//! Pipeline orchestration and machine/human-readable reports.
//!
//! A feasibility report runs classification, polytope construction,
//! balancing over the admissible subset of cones, and (when a gluing
//! parameter is supplied) the per-point tuning computations. Output is
//! deterministic byte for byte: all maps are ordered, all scalars exact
//! strings with float companions where useful.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::balancing::{
    solve_balancing, BalancingProblem, Curvature, WitnessJson,
};
use crate::error::{Error, Result};
use crate::exact::{EpsPower, PiRat, RadExpr};
use crate::fan::{parse_fan, classify_fan, Fan, SingularityReport};
use crate::polytope::{anticanonical_polytope, default_multiple, Polytope};
use crate::rat::{rat_frac, rat_to_string};
use crate::spectral::{dtn_matrix, eigenvalue, harmonic_dimension, invariant_harmonic_dimension, GroupAction, ModeIndex};
use crate::tuning::{
    b_coefficient, c_coefficient_tuned, check_tuning, epsilon_schedule, gluing_budget, tuned_b,
    w4_radial_coefficient, TuningInputs, W4Branch,
};
use crate::Rat;

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub k: Option<u32>,
    pub scalar_curvature: Option<Rat>,
    pub epsilon: Option<Rat>,
    pub delta: Option<Rat>,
    pub c_gamma: Option<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "FULL_DESINGULARIZATION")]
    FullDesingularization,
    #[serde(rename = "PARTIAL")]
    Partial,
    #[serde(rename = "NOT_BALANCED")]
    NotBalanced,
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::FullDesingularization => "FULL_DESINGULARIZATION",
            Verdict::Partial => "PARTIAL",
            Verdict::NotBalanced => "NOT_BALANCED",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceEntry {
    pub cone: String,
    pub vertex: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeSummary {
    pub multiple: u32,
    pub vertex_count: usize,
    pub vertices: Vec<Vec<String>>,
    pub cone_vertices: Vec<CorrespondenceEntry>,
    pub barycenter: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalancingSummary {
    pub scalar_curvature: String,
    /// Moment coordinates of the admissible points, one column per cone.
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
    pub full_rank: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandJson {
    pub name: String,
    pub eps_exponent: String,
    pub magnitude: f64,
    pub exceeds_principal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetJson {
    pub principal_exponent: String,
    pub bands: Vec<BandJson>,
    pub all_corrections_smaller: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointTuning {
    pub cone: String,
    pub order: String,
    pub b_weight: String,
    pub b_radicand: PiRat,
    pub b_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_coefficient: Option<PiRat>,
    pub w4_coefficient: String,
    pub w4_branch: String,
    pub tuned_leading: RadExpr,
    pub tuning_ok: bool,
    pub r_eps: EpsPower,
    pub big_r_eps: EpsPower,
    pub budget: BudgetJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub fan: String,
    pub dim: usize,
    pub verdict: Verdict,
    pub cones: Vec<SingularityReport>,
    pub polytope: PolytopeSummary,
    pub su_isolated_cones: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balancing: Option<BalancingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuning: Option<Vec<PointTuning>>,
}

fn vec_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn polytope_summary(poly: &Polytope) -> Result<PolytopeSummary> {
    Ok(PolytopeSummary {
        multiple: poly.multiple,
        vertex_count: poly.vertices.len(),
        vertices: poly.vertices.iter().map(|v| vec_strings(v)).collect(),
        cone_vertices: poly
            .cone_vertex_correspondence()
            .into_iter()
            .map(|(cone, vertex)| CorrespondenceEntry {
                cone,
                vertex: vec_strings(&vertex),
            })
            .collect(),
        barycenter: vec_strings(&poly.barycenter()?),
    })
}

/// Builds the full feasibility report for a parsed fan.
pub fn build_report(fan: &Fan, options: &ReportOptions) -> Result<FeasibilityReport> {
    let classification = classify_fan(fan)?;
    let k = match options.k.or(fan.polytope_multiple) {
        Some(k) => k,
        None => default_multiple(fan)?,
    };
    let poly = anticanonical_polytope(fan, k)?;
    let summary = polytope_summary(&poly)?;

    let curvature = match options
        .scalar_curvature
        .clone()
        .or_else(|| fan.scalar_curvature.clone())
    {
        Some(v) => Curvature::Value(v),
        None => Curvature::Symbolic,
    };

    let singular: Vec<&SingularityReport> =
        classification.iter().filter(|c| !c.is_smooth).collect();
    let eligible: Vec<String> = singular
        .iter()
        .filter(|c| c.is_isolated && c.is_su)
        .map(|c| c.label.clone())
        .collect();

    let mut verdict = Verdict::NotApplicable;
    let mut balancing = None;
    let mut tuning = None;

    if !eligible.is_empty() {
        let table = poly.potentials_at_points(&eligible)?;
        let phi = table.matrix.clone().expect("matrix populated");
        let problem = BalancingProblem::toric_einstein(fan.dim, phi, curvature.clone())?;
        let witness = solve_balancing(&problem)?;
        let (rank, full_rank) = match &witness {
            Some(w) => (w.rank, true),
            None => (crate::matrix::rank(&problem.phi), false),
        };
        verdict = match &witness {
            None => Verdict::NotBalanced,
            Some(_) if eligible.len() == singular.len() => Verdict::FullDesingularization,
            Some(_) => Verdict::Partial,
        };
        if let (Some(w), Some(eps), Some(c_gamma)) = (&witness, &options.epsilon, &options.c_gamma)
        {
            let s_value = curvature.value().cloned().ok_or_else(|| {
                Error::MissingData(
                    "tuning needs a concrete scalar curvature (flag or fan file)".into(),
                )
            })?;
            let delta = options
                .delta
                .clone()
                .unwrap_or_else(|| rat_frac(9 - 4 * fan.dim as i64, 2));
            let mut points = Vec::new();
            for (j, label) in eligible.iter().enumerate() {
                let report = classification
                    .iter()
                    .find(|c| &c.label == label)
                    .expect("classified");
                let order: u64 = report.order.parse().map_err(|_| {
                    Error::Unsupported("group order exceeds the tuning range".into())
                })?;
                let inputs = TuningInputs::new(
                    fan.dim,
                    s_value.clone(),
                    order,
                    w.b[j].clone(),
                    c_gamma.clone(),
                    eps.clone(),
                    delta.clone(),
                )?;
                points.push(point_tuning(label, &inputs, &w.b, &w.c, &curvature, j)?);
            }
            tuning = Some(points);
        }
        balancing = Some(BalancingSummary {
            scalar_curvature: curvature.to_string(),
            matrix: table.values.clone(),
            rank,
            full_rank,
            witness: witness.as_ref().map(|w| w.to_json()),
        });
    }

    Ok(FeasibilityReport {
        fan: fan.name.clone(),
        dim: fan.dim,
        verdict,
        cones: classification,
        polytope: summary,
        su_isolated_cones: eligible,
        balancing,
        tuning,
    })
}

fn point_tuning(
    label: &str,
    inputs: &TuningInputs,
    b: &[Rat],
    c: &crate::balancing::CoeffVec,
    curvature: &Curvature,
    _index: usize,
) -> Result<PointTuning> {
    let bc = b_coefficient(inputs)?;
    let c_coeff = if inputs.m >= 3 {
        Some(c_coefficient_tuned(inputs)?)
    } else {
        None
    };
    let w4 = w4_radial_coefficient(inputs)?;
    let tuning_ok = check_tuning(b, c, curvature)?;
    let zero = Rat::from_integer(crate::Int::from(0));
    let tuned = if inputs.m >= 3 {
        tuned_b(inputs, &bc.radicand, &zero, &zero, &zero)?
    } else {
        RadExpr::from_pi(&bc.radicand)
    };
    let (r_eps, big_r_eps) = epsilon_schedule(&inputs.epsilon, inputs.m)?;
    let budget = gluing_budget(inputs)?;
    Ok(PointTuning {
        cone: label.to_string(),
        order: inputs.order.to_string(),
        b_weight: rat_to_string(&inputs.b),
        b_radicand: bc.radicand,
        b_value: bc.value,
        c_coefficient: c_coeff,
        w4_coefficient: rat_to_string(&w4.coeff),
        w4_branch: match w4.branch {
            W4Branch::PowerLaw(p) => format!("|x|^{p}"),
            W4Branch::Log => "log|x|".to_string(),
        },
        tuned_leading: tuned,
        tuning_ok,
        r_eps,
        big_r_eps,
        budget: BudgetJson {
            principal_exponent: rat_to_string(&budget.principal_exponent),
            bands: budget
                .bands
                .iter()
                .map(|band| BandJson {
                    name: band.name.to_string(),
                    eps_exponent: rat_to_string(&band.eps_exponent),
                    magnitude: band.magnitude,
                    exceeds_principal: band.exceeds_principal,
                })
                .collect(),
            all_corrections_smaller: budget.all_corrections_smaller,
        },
    })
}

/// Runs the full pipeline on a fan file.
pub fn run_report(path: &Path, options: &ReportOptions) -> Result<FeasibilityReport> {
    let text = std::fs::read_to_string(path)?;
    let fan = parse_fan(&text)?;
    build_report(&fan, options)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BatchEntry {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<FeasibilityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BatchReport {
    pub entries: Vec<BatchEntry>,
    pub failures: usize,
}

/// Processes every fan file in a directory, order-stable (sorted by file
/// name); per-file failures are recorded and do not stop the run.
pub fn batch(dir: &Path, options: &ReportOptions) -> Result<BatchReport> {
    let mut files: Vec<std::path::PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.is_file()
                && matches!(
                    p.extension().and_then(|s| s.to_str()),
                    Some("json") | Some("fan")
                )
        })
        .collect();
    files.sort();
    let mut entries = Vec::new();
    let mut failures = 0;
    for path in files {
        let file = path
            .file_name()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        match run_report(&path, options) {
            Ok(report) => entries.push(BatchEntry {
                file,
                report: Some(report),
                error: None,
            }),
            Err(e) => {
                failures += 1;
                entries.push(BatchEntry {
                    file,
                    report: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    Ok(BatchReport { entries, failures })
}

/// Mode-indexed boundary-map table as CSV with exact rational entries.
/// A negative mode bound yields the header only.
pub fn dtn_table(m: usize, max_gamma: i64) -> Result<String> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let mut out = String::from("m,gamma,p11,p12,p21,p22,det\n");
    let mut gamma = 0i64;
    while gamma <= max_gamma {
        let d = dtn_matrix(ModeIndex::new(m, gamma as usize))?;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            m,
            gamma,
            rat_to_string(&d.entries[0][0]),
            rat_to_string(&d.entries[0][1]),
            rat_to_string(&d.entries[1][0]),
            rat_to_string(&d.entries[1][1]),
            rat_to_string(&d.determinant),
        )
        .expect("write to string");
        gamma += 1;
    }
    Ok(out)
}

/// Eigenvalue and dimension table, optionally with the invariant dimension
/// under a cyclic diagonal action.
pub fn harmonics_table(m: usize, max_gamma: i64, cyclic: Option<(u64, Vec<i64>)>) -> Result<String> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let action = match &cyclic {
        Some((n, nums)) => Some(GroupAction::cyclic(m, *n, nums)?),
        None => None,
    };
    let mut out = String::new();
    if action.is_some() {
        out.push_str("m,gamma,eigenvalue,dimension,invariant_dimension\n");
    } else {
        out.push_str("m,gamma,eigenvalue,dimension\n");
    }
    let mut gamma = 0i64;
    while gamma <= max_gamma {
        let mode = ModeIndex::new(m, gamma as usize);
        match &action {
            Some(a) => writeln!(
                out,
                "{},{},{},{},{}",
                m,
                gamma,
                eigenvalue(mode),
                harmonic_dimension(mode),
                invariant_harmonic_dimension(a, gamma as usize)
            ),
            None => writeln!(
                out,
                "{},{},{},{}",
                m,
                gamma,
                eigenvalue(mode),
                harmonic_dimension(mode)
            ),
        }
        .expect("write to string");
        gamma += 1;
    }
    Ok(out)
}

/// Aligned human-readable rendering, cone-by-cone with the vertex
/// correspondences.
pub fn render_text(report: &FeasibilityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fan {} (dim {}), anticanonical multiple {}",
        report.fan, report.dim, report.polytope.multiple
    );
    let _ = writeln!(out, "verdict: {}", report.verdict.as_str());
    let _ = writeln!(out, "cones:");
    for (cone, corr) in report.cones.iter().zip(&report.polytope.cone_vertices) {
        let su = if cone.is_su { "SU" } else { "--" };
        let iso = if cone.is_isolated { "isolated" } else { "non-isolated" };
        let functional = cone
            .gorenstein_functional
            .as_ref()
            .map(|u| format!(" u=({})", u.join(", ")))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {:<4} order {:<3} {:<12} {:<2}{}  <->  ({})",
            cone.label,
            cone.order,
            iso,
            su,
            functional,
            corr.vertex.join(", ")
        );
    }
    let _ = writeln!(
        out,
        "barycenter: ({})",
        report.polytope.barycenter.join(", ")
    );
    if let Some(b) = &report.balancing {
        let _ = writeln!(
            out,
            "balancing over {{{}}} with scalar curvature {}:",
            report.su_isolated_cones.join(", "),
            b.scalar_curvature
        );
        for row in &b.matrix {
            let _ = writeln!(out, "    [ {} ]", row.join("  "));
        }
        let _ = writeln!(out, "  rank {} (full rank: {})", b.rank, b.full_rank);
        match &b.witness {
            Some(w) => {
                let _ = writeln!(out, "  witness b = ({})", w.b.join(", "));
                let _ = writeln!(out, "  witness c = ({})", w.c.join(", "));
                if let Some(nu) = &w.nu {
                    let _ = writeln!(out, "  nu = {nu}");
                }
            }
            None => {
                let _ = writeln!(out, "  no strictly positive balanced weights exist");
            }
        }
    }
    if let Some(points) = &report.tuning {
        for p in points {
            let _ = writeln!(
                out,
                "tuning {}: B^(2m) = {}, B ~ {:.6}, w4 {} on {}, tuned ok: {}",
                p.cone,
                PiRat::new(
                    crate::rat::rat_from_str(&p.b_radicand.coeff).expect("well-formed"),
                    p.b_radicand.pi_pow
                ),
                p.b_value,
                p.w4_coefficient,
                p.w4_branch,
                p.tuning_ok
            );
            let _ = writeln!(
                out,
                "  schedule r = eps^{} (~{:.6e}), R = eps^{} (~{:.6e})",
                p.r_eps.exp, p.r_eps.approx, p.big_r_eps.exp, p.big_r_eps.approx
            );
            let _ = writeln!(
                out,
                "  budget (principal exponent {}):",
                p.budget.principal_exponent
            );
            for band in &p.budget.bands {
                let _ = writeln!(
                    out,
                    "    {:<24} eps^{:<8} {}",
                    band.name,
                    band.eps_exponent,
                    if band.exceeds_principal { "smaller than principal" } else { "NOT smaller" }
                );
            }
        }
    }
    out
}

/// Deterministic JSON rendering.
pub fn render_json(report: &FeasibilityReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
