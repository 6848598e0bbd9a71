//! Seeded randomized property suites. Each suite draws independent
//! instances from per-index random streams, evaluates them in parallel and
//! reports per-property pass counts and worst residuals in index order.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgebraShape;
use crate::banach::{banach_perturbation, banach_product, make_regular, RegularResiduals};
use crate::drazin::{commuting_browder_check, commuting_drazin_criterion, drazin_dual_check, drazin_inverse, BLOCK_TOL};
use crate::error::{Error, Result};
use crate::fredholm::{exact_sequence, product_chain, weyl_perturbation_chain};
use crate::geometry::{bouldin_criterion, closed_sum_report, DEFAULT_SAMPLES};
use crate::linalg::{decide_rank, singular_values, spectral_norm, Margin, Subspace};
use crate::linmap::AdjointableMap;
use crate::module::{ModuleAmbient, Submodule};
use crate::random::{
    instance_rng, low_rank_matrix, random_commuting_pair, random_drazin_map, random_low_rank_map, random_map,
    random_oblique_complement, random_regular, random_shape, random_subspace_pair,
};
use crate::tol::tolerances;

/// Rank decisions closer than this (relative) are regenerated.
pub const MARGIN_FLOOR: f64 = 1e-6;
/// Largest oblique projection norm accepted in the Banach suites.
pub const MAX_PROJECTION_NORM: f64 = 1e4;
/// Attempts per instance before it is reported as filtered.
const MAX_ATTEMPTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ExactSequence,
    PerturbationChain,
    ProductChain,
    DrazinAxioms,
    CommutingDrazin,
    Dual,
    Browder,
    Bouldin,
    ClosedSum,
    BanachPerturbation,
    BanachProduct,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::ExactSequence,
        Suite::PerturbationChain,
        Suite::ProductChain,
        Suite::DrazinAxioms,
        Suite::CommutingDrazin,
        Suite::Dual,
        Suite::Browder,
        Suite::Bouldin,
        Suite::ClosedSum,
        Suite::BanachPerturbation,
        Suite::BanachProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ExactSequence => "exact-sequence",
            Suite::PerturbationChain => "perturbation-chain",
            Suite::ProductChain => "product-chain",
            Suite::DrazinAxioms => "drazin-axioms",
            Suite::CommutingDrazin => "commuting-drazin",
            Suite::Dual => "dual",
            Suite::Browder => "browder",
            Suite::Bouldin => "bouldin",
            Suite::ClosedSum => "closed-sum",
            Suite::BanachPerturbation => "banach-perturbation",
            Suite::BanachProduct => "banach-product",
        }
    }

    pub fn default_instances(self) -> usize {
        match self {
            Suite::ExactSequence | Suite::DrazinAxioms | Suite::Dual | Suite::ClosedSum => 200,
            Suite::PerturbationChain | Suite::ProductChain | Suite::BanachPerturbation => 150,
            Suite::CommutingDrazin | Suite::Browder | Suite::Bouldin | Suite::BanachProduct => 100,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidInput(format!("unknown suite '{s}' (known: {})", known.join(", ")))
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub instances: usize,
    /// Random samples per instance for the closed-sum bound.
    pub samples: usize,
}

impl VerifyConfig {
    pub fn new(suite: Suite, seed: u64) -> Self {
        VerifyConfig {
            seed,
            instances: suite.default_instances(),
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    /// Residual or discrepancy behind the verdict; `0`/`1` for pure booleans.
    pub value: f64,
}

impl Check {
    fn at_most(name: &'static str, value: f64, tol: f64) -> Self {
        Check {
            name,
            pass: value <= tol,
            value,
        }
    }

    fn holds(name: &'static str, pass: bool) -> Self {
        Check {
            name,
            pass,
            value: if pass { 0.0 } else { 1.0 },
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Outcome {
    checks: Vec<Check>,
    note: Option<String>,
}

enum Attempt {
    Accept(Outcome),
    Reject,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyTally {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub worst: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub attempts: usize,
    pub passed: bool,
    pub filtered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub failed_checks: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub filtered: usize,
    pub properties: Vec<PropertyTally>,
    /// Failed instances, and instances that logged a note.
    pub records: Vec<InstanceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub all_passed: bool,
}

fn margin_ok(m: Margin) -> bool {
    m.kept >= MARGIN_FLOOR
}

fn pick_rank(rng: &mut impl Rng) -> usize {
    rng.random_range(1..=3)
}

fn exact_sequence_instance(rng: &mut ChaCha8Rng) -> Result<Attempt> {
    let shape = AlgebraShape::new(vec![2, 3])?;
    let (m, k, l) = (pick_rank(rng), pick_rank(rng), pick_rank(rng));
    let f = random_map(rng, &shape, m, k)?;
    let g = random_map(rng, &shape, k, l)?;
    let r = exact_sequence(&f, &g)?;
    if !margin_ok(r.margin) {
        return Ok(Attempt::Reject);
    }
    let tol = tolerances();
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::at_most("node exactness residual", r.core.max_residual(), tol.angle_tol),
            Check::at_most("alternating dimension sum", r.core.alternating_dim_sum.unsigned_abs() as f64, 0.0),
            Check::holds("K0 alternating sum vanishes", r.k0_alternating_sum.is_zero()),
            Check::holds("index additivity", r.index_additive),
        ],
        note: None,
    }))
}

fn perturbation_chain_instance(rng: &mut ChaCha8Rng) -> Result<Attempt> {
    let shape = AlgebraShape::new(vec![2, 3])?;
    let m = pick_rank(rng);
    let t = random_map(rng, &shape, m, m)?;
    let f = random_low_rank_map(rng, &shape, m, m, 2)?;
    let r = weyl_perturbation_chain(&t, &f)?;
    if !margin_ok(r.margin) {
        return Ok(Attempt::Reject);
    }
    let worst_step = r.steps.iter().map(|s| s.residual).fold(0.0, f64::max);
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::holds("K0 chain identity", r.identity_holds && r.lhs_total == r.rhs_total),
            Check {
                name: "construction steps",
                pass: r.steps.iter().all(|s| s.holds),
                value: worst_step,
            },
        ],
        note: None,
    }))
}

fn product_chain_instance(rng: &mut ChaCha8Rng) -> Result<Attempt> {
    let shape = AlgebraShape::new(vec![2, 3])?;
    let (m, k, l) = (pick_rank(rng), pick_rank(rng), pick_rank(rng));
    let f = random_map(rng, &shape, m, k)?;
    let d = random_map(rng, &shape, k, l)?;
    let r = product_chain(&d, &f)?;
    if !margin_ok(r.margin) {
        return Ok(Attempt::Reject);
    }
    let worst_step = r.steps.iter().map(|s| s.residual).fold(0.0, f64::max);
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::holds("K0 chain identity", r.identity_holds && r.lhs_total == r.rhs_total),
            Check {
                name: "construction steps",
                pass: r.steps.iter().all(|s| s.holds),
                value: worst_step,
            },
        ],
        note: None,
    }))
}

/// Ascent from the nullities of explicit dense powers.
pub fn brute_force_ascent(f: &AdjointableMap) -> usize {
    let fr = f.realization().clone();
    let n = fr.nrows();
    let norm = spectral_norm(&fr);
    let mut power = crate::linalg::eye(n);
    let mut scale = 1.0;
    let mut nullities = vec![0usize];
    for _ in 0..=n {
        power = &power * &fr;
        scale *= norm;
        let rank = decide_rank(&singular_values(&power), scale, n).rank;
        let nullity = n - rank;
        if nullity == *nullities.last().expect("nonempty") {
            return nullities.len() - 1;
        }
        nullities.push(nullity);
    }
    n
}

fn drazin_setting(rng: &mut ChaCha8Rng, index: u64) -> Result<AdjointableMap> {
    let shape = random_shape(rng, index);
    let m = pick_rank(rng);
    random_drazin_map(rng, &shape, m)
}

fn drazin_axioms_instance(rng: &mut ChaCha8Rng, index: u64) -> Result<Attempt> {
    let f = drazin_setting(rng, index)?;
    let r = drazin_inverse(&f)?;
    if !margin_ok(r.margin) {
        return Ok(Attempt::Reject);
    }
    let tol = tolerances().residual_tol;
    let brute = brute_force_ascent(&f);
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::at_most("XFX = X", r.residuals.xfx, tol),
            Check::at_most("FX = XF", r.residuals.commute, tol),
            Check::at_most("F^(p+1) X = F^p", r.residuals.power, tol),
            Check::holds("index equals brute-force ascent", r.drazin_index == brute),
        ],
        note: None,
    }))
}

fn dual_instance(rng: &mut ChaCha8Rng, index: u64) -> Result<Attempt> {
    let f = drazin_setting(rng, index)?;
    let r = drazin_inverse(&f)?;
    if !margin_ok(r.margin) {
        return Ok(Attempt::Reject);
    }
    let d = drazin_dual_check(&f)?;
    let tol = tolerances();
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::holds("index(F) = index(F*)", d.index == d.adjoint_index),
            Check::at_most("(F^D)* = (F*)^D entrywise", d.inverse_discrepancy, tol.residual_tol),
            Check::at_most("ker F*^k = (Im F^k)^⊥", d.orthogonality_residual, tol.angle_tol.sin()),
        ],
        note: None,
    }))
}

/// Shapes and ranks whose complex dimension lies in `6..=12`.
fn commuting_setting(rng: &mut ChaCha8Rng, index: u64) -> (AlgebraShape, usize) {
    match index % 3 {
        0 => (AlgebraShape::trivial(), rng.random_range(6..=12)),
        1 => {
            let k = rng.random_range(2..=4);
            let lo = 6usize.div_ceil(k);
            (AlgebraShape::commutative(k), rng.random_range(lo..=12 / k))
        }
        _ => (AlgebraShape::matrix(2), rng.random_range(2..=3)),
    }
}

fn commuting_drazin_instance(rng: &mut ChaCha8Rng, index: u64) -> Result<Attempt> {
    let (shape, m) = commuting_setting(rng, index);
    let (f, d) = random_commuting_pair(rng, &shape, m)?;
    let r = commuting_drazin_criterion(&f, &d)?;
    let note = match r.found {
        Some(h) => format!("p={} s={} t={} k={} k'={}", r.p, h.s, h.t, h.k, h.k_prime),
        None => format!("p={} no stabilization found", r.p),
    };
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::holds("criterion verdict = direct verdict", r.verdict == r.direct_verdict),
            Check::holds("stabilization indices found", r.found.is_some()),
        ],
        note: Some(note),
    }))
}

fn browder_instance(rng: &mut ChaCha8Rng, index: u64) -> Result<Attempt> {
    let (shape, m) = commuting_setting(rng, index);
    let (f, d) = random_commuting_pair(rng, &shape, m)?;
    let r = commuting_browder_check(&f, &d)?;
    let off = r
        .f_blocks
        .off_diagonal
        .0
        .max(r.f_blocks.off_diagonal.1)
        .max(r.d_blocks.off_diagonal.0)
        .max(r.d_blocks.off_diagonal.1);
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::at_most("off-diagonal blocks vanish", off, BLOCK_TOL),
            Check::holds(
                "first blocks invertible",
                r.f_blocks.first_block_invertible && r.d_blocks.first_block_invertible,
            ),
            Check::holds("shared decomposition", r.holds),
        ],
        note: None,
    }))
}

fn same_margin(a: f64, b: f64) -> f64 {
    if a.is_infinite() || b.is_infinite() {
        if a.is_infinite() && b.is_infinite() {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (a - b).abs()
    }
}

fn bouldin_instance(rng: &mut ChaCha8Rng, index: u64) -> Result<Attempt> {
    let shape = random_shape(rng, index);
    let m = rng.random_range(1..=2);
    let f = random_map(rng, &shape, m, m)?;
    let d = random_map(rng, &shape, m, m)?;
    let seed = rng.random();
    let r = bouldin_criterion(&f, &d, seed, 100)?;
    let dual = bouldin_criterion(&d.adjoint(), &f.adjoint(), seed, 100)?;
    let margin = Margin::worst_of([f.kernel().margin(), f.image().margin(), d.kernel().margin()]);
    if !margin_ok(margin) {
        return Ok(Attempt::Reject);
    }
    let tol = tolerances().angle_tol;
    let duality = same_margin(r.margin_p, dual.margin_p).max(same_margin(r.margin_q, dual.margin_q));
    let symmetric = if r.degenerate_p || r.degenerate_q {
        0.0
    } else {
        (r.margin_p - r.margin_q).abs()
    };
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::holds("margins agree under threshold", r.margins_agree),
            Check::holds("closed-sum bridge agrees", r.bridge_agrees),
            Check::at_most("adjoint duality of margins", duality, tol),
            Check::at_most("P and Q margins coincide", symmetric, tol),
            Check::holds("γ(DF) > 0", r.gamma_df > 0.0),
        ],
        note: None,
    }))
}

fn closed_sum_instance(rng: &mut ChaCha8Rng, samples: usize) -> Result<Attempt> {
    let n = rng.random_range(2..=40);
    let dm = rng.random_range(1..n);
    let dn = rng.random_range(1..=n - dm);
    let (qm, qn) = random_subspace_pair(rng, n, dm, dn);
    let amb = ModuleAmbient::new(&AlgebraShape::trivial(), n);
    let mm = Submodule::span_coords(&amb, &qm)?;
    let nn = Submodule::span_coords(&amb, &qn)?;
    let seed = rng.random();
    let r = closed_sum_report(&mm, &nn, seed, samples)?;
    if r.reduced_by_intersection || !margin_ok(mm.margin().worst(nn.margin())) {
        return Ok(Attempt::Reject);
    }
    let tol = tolerances().angle_tol;
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::at_most("|c0² + δ² − 1|", r.pythagoras_residual(), tol),
            Check::at_most("c0 computation paths agree", (r.c0 - r.c0_supremum).abs(), tol),
            Check::at_most("sampled bound violations", r.violations as f64, 0.0),
        ],
        note: None,
    }))
}

fn regular_residual(r: &RegularResiduals) -> f64 {
    r.max()
}

fn banach_perturbation_instance(rng: &mut ChaCha8Rng) -> Result<Attempt> {
    let rows = rng.random_range(2..=6);
    let cols = rng.random_range(2..=6);
    let rank = rng.random_range(0..=rows.min(cols));
    let skew = rng.random_range(0.2..=1.5);
    let t = random_regular(rng, rows, cols, rank, skew)?;
    let f_rank = rng.random_range(1..=2usize.min(rows).min(cols));
    let f = low_rank_matrix(rng, rows, cols, f_rank);
    let ker_f = Subspace::kernel_of(&f, spectral_norm(&f));
    let t_ker_f = ker_f.mapped(&t.t, spectral_norm(&t.t));
    let kfc = random_oblique_complement(rng, &ker_f, skew);
    let tkfc = random_oblique_complement(rng, &t_ker_f, skew);
    let r = banach_perturbation(&t, &f, &kfc, &tkfc)?;
    if r.projection_norm > MAX_PROJECTION_NORM || !margin_ok(r.margin) {
        return Ok(Attempt::Reject);
    }
    let tol = tolerances().residual_tol;
    let worst_step = r.steps.iter().map(|s| s.residual).fold(0.0, f64::max);
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::holds("dimension identity", r.identity_holds),
            Check {
                name: "construction steps",
                pass: r.steps.iter().all(|s| s.holds),
                value: worst_step,
            },
            Check::at_most(
                "generalized inverse residuals",
                regular_residual(&t.residuals).max(regular_residual(&r.sum_residuals)),
                tol,
            ),
        ],
        note: None,
    }))
}

fn banach_product_instance(rng: &mut ChaCha8Rng) -> Result<Attempt> {
    let n = rng.random_range(2..=6);
    let skew = rng.random_range(0.2..=1.5);
    let rs = rng.random_range(0..=n);
    let rt = rng.random_range(0..=n);
    let s = random_regular(rng, n, n, rs, skew)?;
    let t = random_regular(rng, n, n, rt, skew)?;
    let st = &s.t * &t.t;
    let scale = spectral_norm(&s.t) * spectral_norm(&t.t);
    let ker = Subspace::kernel_of(&st, scale);
    let im = Subspace::image_of(&st, scale);
    let kc = random_oblique_complement(rng, &ker, skew);
    let ic = random_oblique_complement(rng, &im, skew);
    let r = banach_product(&s, &t, Some((&kc, &ic)))?;
    if r.projection_norm > MAX_PROJECTION_NORM || !margin_ok(r.margin) {
        return Ok(Attempt::Reject);
    }
    let st_reg = make_regular(&st, &kc, &ic)?;
    let tol = tolerances();
    Ok(Attempt::Accept(Outcome {
        checks: vec![
            Check::holds("product generalized Weyl", r.verdict && r.st_weyl),
            Check::at_most("oblique sequence exactness", r.sequence.max_residual(), tol.angle_tol),
            Check::at_most(
                "alternating dimension sum",
                r.sequence.alternating_dim_sum.unsigned_abs() as f64,
                0.0,
            ),
            Check::holds("Φ₀ᵍᶜ composition", r.phi0gc_composition),
            Check::at_most("TU inverts S on Im T", r.restricted_inverse_residual, tol.residual_tol),
            Check::at_most(
                "generalized inverse residuals",
                regular_residual(&s.residuals)
                    .max(regular_residual(&t.residuals))
                    .max(regular_residual(&st_reg.residuals)),
                tol.residual_tol,
            ),
        ],
        note: None,
    }))
}

fn attempt(suite: Suite, rng: &mut ChaCha8Rng, index: u64, config: &VerifyConfig) -> Result<Attempt> {
    match suite {
        Suite::ExactSequence => exact_sequence_instance(rng),
        Suite::PerturbationChain => perturbation_chain_instance(rng),
        Suite::ProductChain => product_chain_instance(rng),
        Suite::DrazinAxioms => drazin_axioms_instance(rng, index),
        Suite::CommutingDrazin => commuting_drazin_instance(rng, index),
        Suite::Dual => dual_instance(rng, index),
        Suite::Browder => browder_instance(rng, index),
        Suite::Bouldin => bouldin_instance(rng, index),
        Suite::ClosedSum => closed_sum_instance(rng, config.samples),
        Suite::BanachPerturbation => banach_perturbation_instance(rng),
        Suite::BanachProduct => banach_product_instance(rng),
    }
}

struct InstanceResult {
    record: InstanceRecord,
    checks: Vec<Check>,
}

fn run_instance(suite: Suite, config: &VerifyConfig, index: usize) -> InstanceResult {
    let mut rng = instance_rng(config.seed, index as u64);
    let mut record = InstanceRecord {
        index,
        attempts: 0,
        passed: false,
        filtered: false,
        note: None,
        error: None,
        failed_checks: Vec::new(),
    };
    for _ in 0..MAX_ATTEMPTS {
        record.attempts += 1;
        match attempt(suite, &mut rng, index as u64, config) {
            Ok(Attempt::Reject) => continue,
            Ok(Attempt::Accept(outcome)) => {
                record.failed_checks = outcome.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
                record.passed = record.failed_checks.is_empty();
                record.note = outcome.note;
                return InstanceResult {
                    record,
                    checks: outcome.checks,
                };
            }
            Err(e) => {
                record.error = Some(e.to_string());
                return InstanceResult {
                    record,
                    checks: Vec::new(),
                };
            }
        }
    }
    record.filtered = true;
    InstanceResult {
        record,
        checks: Vec::new(),
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteReport {
    let results: Vec<InstanceResult> = (0..config.instances)
        .into_par_iter()
        .map(|i| run_instance(suite, config, i))
        .collect();
    let mut properties: Vec<PropertyTally> = Vec::new();
    let (mut passed, mut failed, mut filtered) = (0, 0, 0);
    let mut records = Vec::new();
    for r in results {
        for c in &r.checks {
            let tally = match properties.iter_mut().find(|p| p.name == c.name) {
                Some(t) => t,
                None => {
                    properties.push(PropertyTally {
                        name: c.name,
                        passed: 0,
                        total: 0,
                        worst: 0.0,
                    });
                    properties.last_mut().expect("just pushed")
                }
            };
            tally.total += 1;
            tally.passed += usize::from(c.pass);
            tally.worst = tally.worst.max(c.value);
        }
        if r.record.filtered {
            filtered += 1;
        } else if r.record.passed {
            passed += 1;
        } else {
            failed += 1;
        }
        if !r.record.passed || r.record.note.is_some() {
            records.push(r.record);
        }
    }
    let warning = (config.instances == 0).then(|| "no instances requested; the suite passes vacuously".to_string());
    SuiteReport {
        suite,
        seed: config.seed,
        instances: config.instances,
        passed,
        failed,
        filtered,
        properties,
        records,
        warning,
        all_passed: failed == 0,
    }
}

impl SuiteReport {
    /// Plain-text summary with one line per property.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "suite {} seed {}: {}/{} passed, {} failed, {} filtered",
            self.suite, self.seed, self.passed, self.instances, self.failed, self.filtered
        );
        if let Some(w) = &self.warning {
            let _ = writeln!(s, "warning: {w}");
        }
        for p in &self.properties {
            let _ = writeln!(s, "  {}: {}/{} worst {:.16e}", p.name, p.passed, p.total, p.worst);
        }
        for r in &self.records {
            let mut line = format!("  instance {}", r.index);
            if let Some(n) = &r.note {
                let _ = write!(line, " [{n}]");
            }
            if r.filtered {
                line.push_str(" filtered");
            }
            if let Some(e) = &r.error {
                let _ = write!(line, " error: {e}");
            }
            if !r.failed_checks.is_empty() {
                let _ = write!(line, " failed: {}", r.failed_checks.join(", "));
            }
            let _ = writeln!(s, "{line}");
        }
        let _ = writeln!(s, "{}", if self.all_passed { "PASS" } else { "FAIL" });
        s
    }
}
