use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cstar_core::banach::{
    banach_perturbation_orthogonal, banach_product, generalized_weyl_banach, make_regular_orthogonal,
    phi0gc_witness, BanachPerturbationReport, BanachProductReport, BanachWitness, RegularOperator,
    RegularResiduals,
};
use cstar_core::drazin::{
    commuting_browder_check, commuting_drazin_criterion, drazin_dual_check, drazin_inverse,
    CommutingBrowderReport, CriterionReport, DrazinReport, DrazinResiduals, DualReport,
};
use cstar_core::fredholm::{b_fredholm_report, fredholm_report, BFredholmReport, FredholmReport};
use cstar_core::geometry::{closed_sum_report, dixmier_angle, DixmierAngle, GeometryReport};
use cstar_core::json::{operator_from_str, submodule_from_str};
use cstar_core::probes::{family_diagnostic, Family, FamilyDiagnostic};
use cstar_core::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use cstar_core::{AdjointableMap, Error, Margin, Submodule};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::render::{csv_table, float, render};

pub enum Failure {
    /// Bad flags, unreadable or malformed input: exit code 2.
    Data(String),
    /// A checked property failed: exit code 1.
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IdentityViolation(_) => Failure::Violation(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

/// Rendered output and whether every check passed.
pub struct Output {
    pub text: String,
    pub pass: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_operator(path: &Path) -> Result<AdjointableMap, Failure> {
    operator_from_str(&read(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_submodule(path: &Path) -> Result<Submodule, Failure> {
    submodule_from_str(&read(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn rendered<T: Serialize>(value: &T, cfg: &RunConfig, pass: bool) -> Result<Output, Failure> {
    let text = render(value, cfg.format).map_err(Failure::Data)?;
    Ok(Output { text, pass })
}

#[derive(Serialize)]
struct DrazinSummary {
    drazin_index: usize,
    range: Submodule,
    null: Submodule,
    residuals: DrazinResiduals,
    closedness_margin: f64,
    core_gamma: f64,
    margin: Margin,
}

impl From<&DrazinReport> for DrazinSummary {
    fn from(r: &DrazinReport) -> Self {
        DrazinSummary {
            drazin_index: r.drazin_index,
            range: r.range.clone(),
            null: r.null.clone(),
            residuals: r.residuals.clone(),
            closedness_margin: r.closedness_margin,
            core_gamma: r.core_gamma,
            margin: r.margin,
        }
    }
}

#[derive(Serialize)]
struct AnalyzeBundle {
    fredholm: FredholmReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    drazin: Option<DrazinSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_fredholm: Option<BFredholmReport>,
    /// Closed-sum geometry of the pair `(ker F, Im F)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    geometry: Option<GeometryReport>,
}

pub fn analyze(path: &Path, cfg: &RunConfig) -> Result<Output, Failure> {
    let f = load_operator(path)?;
    let fredholm = fredholm_report(&f)?;
    let mut pass = true;
    let (drazin, b_fredholm, geometry) = if f.is_endomorphism() {
        let d = drazin_inverse(&f)?;
        pass &= d.residuals.max() <= cfg.tolerances.residual_tol;
        let g = closed_sum_report(&fredholm.kernel, &fredholm.image, cfg.seed, cfg.samples)?;
        pass &= g.violations == 0;
        (Some(DrazinSummary::from(&d)), Some(b_fredholm_report(&f)?), Some(g))
    } else {
        (None, None, None)
    };
    let bundle = AnalyzeBundle {
        fredholm,
        drazin,
        b_fredholm,
        geometry,
    };
    rendered(&bundle, cfg, pass)
}

#[derive(Serialize)]
struct DrazinBundle {
    report: DrazinReport,
    dual: DualReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    criterion: Option<CriterionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    browder: Option<CommutingBrowderReport>,
}

pub fn drazin(path: &Path, with: Option<&Path>, cfg: &RunConfig) -> Result<Output, Failure> {
    let f = load_operator(path)?;
    let report = drazin_inverse(&f)?;
    let dual = drazin_dual_check(&f)?;
    let mut pass = report.residuals.max() <= cfg.tolerances.residual_tol && dual.holds;
    let (criterion, browder) = match with {
        Some(p) => {
            let d = load_operator(p)?;
            let c = commuting_drazin_criterion(&f, &d)?;
            let b = commuting_browder_check(&f, &d)?;
            pass &= c.verdict == c.direct_verdict && b.holds;
            (Some(c), Some(b))
        }
        None => (None, None),
    };
    let bundle = DrazinBundle {
        report,
        dual,
        criterion,
        browder,
    };
    rendered(&bundle, cfg, pass)
}

#[derive(Serialize)]
struct GeometryBundle {
    angle: DixmierAngle,
    closed_sum: GeometryReport,
    pythagoras_residual: f64,
}

pub fn geometry(m: &Path, n: &Path, cfg: &RunConfig) -> Result<Output, Failure> {
    let m = load_submodule(m)?;
    let n = load_submodule(n)?;
    let angle = dixmier_angle(&m, &n)?;
    let closed_sum = closed_sum_report(&m, &n, cfg.seed, cfg.samples)?;
    let pythagoras_residual = closed_sum.pythagoras_residual();
    let pass = closed_sum.violations == 0
        && pythagoras_residual <= cfg.tolerances.angle_tol
        && (angle.c0 - angle.c0_supremum).abs() <= cfg.tolerances.angle_tol;
    let bundle = GeometryBundle {
        angle,
        closed_sum,
        pythagoras_residual,
    };
    rendered(&bundle, cfg, pass)
}

#[derive(Serialize)]
struct RegularSummary {
    rows: usize,
    cols: usize,
    dim_kernel: usize,
    codim_image: usize,
    index: i64,
    generalized_weyl: bool,
    witness: BanachWitness,
    residuals: RegularResiduals,
    projection_norm: f64,
    ill_posed: bool,
    margin: Margin,
}

impl From<&RegularOperator> for RegularSummary {
    fn from(t: &RegularOperator) -> Self {
        RegularSummary {
            rows: t.t.nrows(),
            cols: t.t.ncols(),
            dim_kernel: t.kernel.dim(),
            codim_image: t.codim_image(),
            index: t.index(),
            generalized_weyl: generalized_weyl_banach(t),
            witness: phi0gc_witness(t),
            residuals: t.residuals,
            projection_norm: t.projection_norm(),
            ill_posed: t.is_ill_posed(),
            margin: t.margin(),
        }
    }
}

#[derive(Serialize)]
struct BanachBundle {
    operator: RegularSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    perturbation: Option<BanachPerturbationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<BanachProductReport>,
}

/// Operators are read from module files and handled through their complex
/// realizations, as maps between finite-dimensional Banach spaces.
pub fn banach(path: &Path, perturb: Option<&Path>, left: Option<&Path>, cfg: &RunConfig) -> Result<Output, Failure> {
    let t = make_regular_orthogonal(load_operator(path)?.realization())?;
    let mut pass = t.residuals.max() <= cfg.tolerances.residual_tol;
    let perturbation = match perturb {
        Some(p) => Some(banach_perturbation_orthogonal(&t, load_operator(p)?.realization())?),
        None => None,
    };
    let product = match left {
        Some(p) => {
            let s = make_regular_orthogonal(load_operator(p)?.realization())?;
            let r = banach_product(&s, &t, None)?;
            pass &= r.verdict && r.phi0gc_composition;
            Some(r)
        }
        None => None,
    };
    let bundle = BanachBundle {
        operator: RegularSummary::from(&t),
        perturbation,
        product,
    };
    rendered(&bundle, cfg, pass)
}

pub fn verify(suite: &str, cfg: &RunConfig) -> Result<Output, Failure> {
    let suite: Suite = suite.parse()?;
    let mut vc = VerifyConfig::new(suite, cfg.seed);
    if let Some(n) = cfg.instances {
        vc.instances = n;
    }
    vc.samples = cfg.samples;
    let report = run_suite(suite, &vc);
    let text = match cfg.format {
        Format::Text => report.to_text(),
        Format::Json => render(&report, Format::Json).map_err(Failure::Data)?,
        Format::Csv => verify_csv(&report).map_err(Failure::Data)?,
    };
    Ok(Output {
        text,
        pass: report.all_passed,
    })
}

fn verify_csv(report: &SuiteReport) -> Result<String, String> {
    let rows: Vec<Vec<String>> = report
        .properties
        .iter()
        .map(|p| {
            vec![
                report.suite.to_string(),
                report.seed.to_string(),
                p.name.to_string(),
                p.passed.to_string(),
                p.total.to_string(),
                float(p.worst),
            ]
        })
        .collect();
    csv_table(&["suite", "seed", "property", "passed", "total", "worst"], &rows)
}

const PROBE_COLUMNS: [&str; 12] = [
    "n",
    "gamma_f",
    "gamma_f2",
    "margin_p",
    "margin_q",
    "c0",
    "delta",
    "sum_bounded_below",
    "square_bounded_below",
    "bridge_agrees",
    "bound_violations",
    "family",
];

fn probe_rows(d: &FamilyDiagnostic) -> Vec<Vec<String>> {
    d.rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                float(r.gamma_f),
                float(r.gamma_f2),
                float(r.margin_p),
                float(r.margin_q),
                float(r.c0),
                float(r.delta),
                r.sum_bounded_below.to_string(),
                r.square_bounded_below.to_string(),
                r.bridge_agrees.to_string(),
                r.bound_violations.to_string(),
                d.family.to_string(),
            ]
        })
        .collect()
}

pub fn probe(family: &str, sizes: &[usize], cfg: &RunConfig) -> Result<Output, Failure> {
    let family: Family = family.parse()?;
    let d = family_diagnostic(family, sizes)?;
    let pass = d.rows.iter().all(|r| r.bound_violations == 0);
    let text = match cfg.format {
        Format::Json => render(&d, Format::Json).map_err(Failure::Data)?,
        Format::Csv => csv_table(&PROBE_COLUMNS, &probe_rows(&d)).map_err(Failure::Data)?,
        Format::Text => probe_text(&d),
    };
    Ok(Output { text, pass })
}

fn probe_text(d: &FamilyDiagnostic) -> String {
    let mut s = format!("family {}\n", d.family);
    let _ = writeln!(s, "{:>5} {:>24} {:>24} {:>24} {:>24}", "n", "gamma_f", "gamma_f2", "margin_p", "delta");
    for r in &d.rows {
        let _ = writeln!(
            s,
            "{:>5} {:>24} {:>24} {:>24} {:>24}",
            r.n,
            float(r.gamma_f),
            float(r.gamma_f2),
            float(r.margin_p),
            float(r.delta)
        );
    }
    let m = &d.monotonicity;
    let _ = writeln!(s, "gamma_f strictly decreasing: {}", m.gamma_f_strictly_decreasing);
    let _ = writeln!(s, "gamma_f2 strictly decreasing: {}", m.gamma_f2_strictly_decreasing);
    let _ = writeln!(s, "margins strictly decreasing: {}", m.margins_strictly_decreasing);
    let _ = writeln!(s, "gamma_f floor: {}", float(m.gamma_f_floor));
    let exponent = |e: Option<f64>| e.map_or_else(|| "n/a".to_string(), float);
    let _ = writeln!(s, "gamma_f log-log slope: {}", exponent(d.gamma_f_exponent));
    let _ = writeln!(s, "gamma_f2 log-log slope: {}", exponent(d.gamma_f2_exponent));
    s
}
