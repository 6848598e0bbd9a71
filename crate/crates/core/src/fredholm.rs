//! Fredholm, generalized Weyl and B-Fredholm classification over a block
//! algebra, the six-term exact sequence, and the K₀ chain identities behind
//! the perturbation and product results.
//!
//! Every map between finitely generated free modules over a
//! finite-dimensional algebra is A-Fredholm with closed range, so bare
//! membership questions are trivial here. The reports instead record the
//! submodules that the constructive arguments produce and check the K₀
//! identities between them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{sequence_core, SequenceCore, SequenceSpaces};
use crate::linalg::{Margin, Subspace};
use crate::linmap::AdjointableMap;
use crate::module::{decomposes, split_nested, K0Class, Submodule};
use crate::tol::tolerances;

pub const MODEL_NOTE: &str = "finite-dimensional model: every map is A-Fredholm with closed range \
and every submodule is finitely generated; the identities below are the quantitative content";

#[derive(Clone, Debug, Serialize)]
pub struct FredholmReport {
    pub kernel: Submodule,
    pub image: Submodule,
    pub kernel_class: K0Class,
    pub coker_class: K0Class,
    pub index: K0Class,
    pub is_weyl_zero_index: bool,
    pub is_generalized_weyl: bool,
    pub margin: Margin,
    pub model_note: &'static str,
}

pub fn fredholm_report(f: &AdjointableMap) -> Result<FredholmReport> {
    let kernel = f.kernel();
    let image = f.image();
    let kernel_class = kernel.k0_class()?;
    let coker_class = image.orth_complement().k0_class()?;
    let index = &kernel_class - &coker_class;
    if f.is_endomorphism() && !index.is_zero() {
        return Err(Error::IdentityViolation(format!(
            "endomorphism with nonzero index {index}"
        )));
    }
    Ok(FredholmReport {
        margin: kernel.margin().worst(image.margin()),
        is_weyl_zero_index: index.is_zero(),
        is_generalized_weyl: kernel_class == coker_class,
        kernel,
        image,
        kernel_class,
        coker_class,
        index,
        model_note: MODEL_NOTE,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WeylCheck {
    pub verdict: bool,
    pub margin: Margin,
}

/// Whether `ker F ≅ Im F^⊥`, decided by K₀ equality.
pub fn generalized_weyl_check(f: &AdjointableMap) -> Result<WeylCheck> {
    let r = fredholm_report(f)?;
    Ok(WeylCheck {
        verdict: r.is_generalized_weyl,
        margin: r.margin,
    })
}

/// Componentwise-minimal `(N, Ñ)` with `N + [ker F] = Ñ + [Im F^⊥]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub n: K0Class,
    pub n_tilde: K0Class,
}

pub fn tilde_weyl_witness(f: &AdjointableMap) -> Result<WitnessPair> {
    let r = fredholm_report(f)?;
    Ok(witness_from(&r.kernel_class, &r.coker_class))
}

fn witness_from(kernel: &K0Class, coker: &K0Class) -> WitnessPair {
    WitnessPair {
        n: (coker - kernel).positive_part(),
        n_tilde: (kernel - coker).positive_part(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactSequenceReport {
    pub spaces: Vec<Submodule>,
    pub classes: Vec<K0Class>,
    #[serde(flatten)]
    pub core: SequenceCore,
    /// `Σ (−1)^i [space_i]` per block.
    pub k0_alternating_sum: K0Class,
    pub index_f: K0Class,
    pub index_g: K0Class,
    pub index_gf: K0Class,
    pub index_additive: bool,
    pub margin: Margin,
}

/// Sequence for `G ∘ F` with orthogonal complements.
pub fn exact_sequence(f: &AdjointableMap, g: &AdjointableMap) -> Result<ExactSequenceReport> {
    let gf = g.compose(f)?;
    let scale_gf = f.norm() * g.norm();
    let ker_f = f.kernel();
    let ker_gf = gf.kernel_scaled(scale_gf);
    let ker_g = g.kernel();
    let im_f = f.image();
    let im_gf = gf.image_scaled(scale_gf);
    let im_g = g.image();
    let mods = [
        ker_f.clone(),
        ker_gf.clone(),
        ker_g.clone(),
        im_f.orth_complement(),
        im_gf.orth_complement(),
        im_g.orth_complement(),
    ];
    let spaces = SequenceSpaces {
        ker_f: ker_f.space().clone(),
        ker_gf: ker_gf.space().clone(),
        ker_g: ker_g.space().clone(),
        im_f: im_f.space().clone(),
        im_gf: im_gf.space().clone(),
        im_g: im_g.space().clone(),
        im_f_c: mods[3].space().clone(),
        im_gf_c: mods[4].space().clone(),
        im_g_c: mods[5].space().clone(),
    };
    let core = sequence_core(f.realization(), g.realization(), &spaces)?;
    let classes = mods.iter().map(Submodule::k0_class).collect::<Result<Vec<_>>>()?;
    let k = f.shape().num_blocks();
    let mut alt = K0Class::zero(k);
    for (i, c) in classes.iter().enumerate() {
        alt = if i % 2 == 0 { &alt + c } else { &alt - c };
    }
    let index_f = &classes[0] - &classes[3];
    let index_g = &classes[2] - &classes[5];
    let index_gf = &classes[1] - &classes[4];
    let index_additive = index_gf == &index_f + &index_g;
    let margin = Margin::worst_of(
        [&ker_f, &ker_gf, &ker_g, &im_f, &im_gf, &im_g]
            .iter()
            .map(|m| m.margin()),
    );
    Ok(ExactSequenceReport {
        spaces: mods.to_vec(),
        classes,
        core,
        k0_alternating_sum: alt,
        index_f,
        index_g,
        index_gf,
        index_additive,
        margin,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainTerm {
    pub label: String,
    pub class: K0Class,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub description: String,
    pub holds: bool,
    pub residual: f64,
}

/// A verified chain of K₀ equalities with the submodules behind it.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub kind: &'static str,
    pub lhs: Vec<ChainTerm>,
    pub rhs: Vec<ChainTerm>,
    pub lhs_total: K0Class,
    pub rhs_total: K0Class,
    pub parts: Vec<(String, Submodule)>,
    pub steps: Vec<ChainStep>,
    pub identity_holds: bool,
    pub margin: Margin,
    pub model_note: &'static str,
}

struct ChainBuilder {
    blocks: usize,
    parts: Vec<(String, Submodule)>,
    steps: Vec<ChainStep>,
}

impl ChainBuilder {
    fn new(blocks: usize) -> Self {
        ChainBuilder {
            blocks,
            parts: Vec::new(),
            steps: Vec::new(),
        }
    }

    fn part(&mut self, label: &str, m: &Submodule) -> Result<K0Class> {
        self.parts.push((label.to_string(), m.clone()));
        m.k0_class()
    }

    fn step(&mut self, description: &str, holds: bool, residual: f64) {
        self.steps.push(ChainStep {
            description: description.to_string(),
            holds,
            residual,
        });
    }

    /// Records `target = a ⊕ b` (orthogonal when `orthogonal` is set).
    fn decomposition(
        &mut self,
        description: &str,
        a: &Submodule,
        b: &Submodule,
        target: &Submodule,
        orthogonal: bool,
    ) -> Result<()> {
        let verdict = decomposes(a, b, target)?;
        let holds = match verdict {
            Some(orth) => orth || !orthogonal,
            None => false,
        };
        let (sum, _) = a.sum_and_intersection(b)?;
        self.step(description, holds, sum.space().distance(target.space()));
        Ok(())
    }

    fn classes_equal(&mut self, description: &str, lhs: &[&K0Class], rhs: &[&K0Class]) {
        let l = K0Class::total(self.blocks, lhs.iter().copied());
        let r = K0Class::total(self.blocks, rhs.iter().copied());
        self.step(description, l == r, 0.0);
    }

    fn finish(
        self,
        kind: &'static str,
        lhs: Vec<(&str, K0Class)>,
        rhs: Vec<(&str, K0Class)>,
    ) -> Result<ChainReport> {
        let to_terms = |v: Vec<(&str, K0Class)>| -> Vec<ChainTerm> {
            v.into_iter()
                .map(|(l, c)| ChainTerm {
                    label: l.to_string(),
                    class: c,
                })
                .collect()
        };
        let lhs = to_terms(lhs);
        let rhs = to_terms(rhs);
        let lhs_total = K0Class::total(self.blocks, lhs.iter().map(|t| &t.class));
        let rhs_total = K0Class::total(self.blocks, rhs.iter().map(|t| &t.class));
        let margin = Margin::worst_of(self.parts.iter().map(|(_, m)| m.margin()));
        let report = ChainReport {
            kind,
            identity_holds: lhs_total == rhs_total,
            lhs,
            rhs,
            lhs_total,
            rhs_total,
            parts: self.parts,
            steps: self.steps,
            margin,
            model_note: MODEL_NOTE,
        };
        if !report.identity_holds {
            return Err(Error::IdentityViolation(format!(
                "{kind}: {} ≠ {}",
                report.lhs_total, report.rhs_total
            )));
        }
        if let Some(s) = report.steps.iter().find(|s| !s.holds) {
            return Err(Error::IdentityViolation(format!(
                "{kind}: step failed: {} (residual {:.3e})",
                s.description, s.residual
            )));
        }
        Ok(report)
    }
}

/// Constructs `M, M′, N, N′, R, R′` for `T + F` and checks
/// `[ker(T+F)] + [M] + [N] + [R] = [Im(T+F)^⊥] + [M′] + [N′] + [R′]`.
pub fn weyl_perturbation_chain(t: &AdjointableMap, f: &AdjointableMap) -> Result<ChainReport> {
    let s = t.add(f)?;
    if !t.is_endomorphism() {
        return Err(Error::RankMismatch("perturbation chain needs endomorphisms".into()));
    }
    let scale = t.norm().max(f.norm());
    let mut cb = ChainBuilder::new(t.shape().num_blocks());

    let ker_f = f.kernel();
    let ker_f_perp = ker_f.orth_complement();
    let t_ker_f = t.image_of(&ker_f)?;
    let im_t = t.image();
    let im_s = s.image_scaled(scale);
    let ker_t = t.kernel();
    let ker_s = s.kernel_scaled(scale);

    let n = im_t.minus(&t_ker_f)?;
    let n_prime = im_s.minus(&t_ker_f)?;
    cb.decomposition("Im T = T(ker F) ⊕ N", &t_ker_f, &n, &im_t, true)?;
    cb.decomposition("Im(T+F) = T(ker F) ⊕ N′", &t_ker_f, &n_prime, &im_s, true)?;
    let t_ker_f_perp = t_ker_f.orth_complement();
    cb.decomposition(
        "T(ker F)^⊥ = Im T^⊥ ⊕ N",
        &im_t.orth_complement(),
        &n,
        &t_ker_f_perp,
        true,
    )?;
    cb.decomposition(
        "T(ker F)^⊥ = Im(T+F)^⊥ ⊕ N′",
        &im_s.orth_complement(),
        &n_prime,
        &t_ker_f_perp,
        true,
    )?;

    // N = Q T(ker F^⊥) and N′ = Q (T+F)(ker F^⊥), Q the projection onto T(ker F)^⊥.
    let q = t_ker_f_perp.space().projector();
    for (label, op, target) in [
        ("N = Q T(ker F^⊥)", &t, &n),
        ("N′ = Q (T+F)(ker F^⊥)", &&s, &n_prime),
    ] {
        let v = Subspace::span(&(&q * op.restricted_to(&ker_f_perp)), scale);
        let d = v.distance(target.space());
        cb.step(label, d <= tolerances().angle_tol.sin(), d);
    }

    let k = ker_t.intersection(&ker_f)?;
    let k_s = ker_s.intersection(&ker_f)?;
    let d = k.space().distance(k_s.space());
    cb.step("ker T ∩ ker F = ker(T+F) ∩ ker F", d <= tolerances().angle_tol.sin(), d);
    let m = ker_t.minus(&k)?;
    let m_prime = ker_s.minus(&k)?;
    cb.decomposition("ker T = (ker T ∩ ker F) ⊕ M", &k, &m, &ker_t, true)?;
    cb.decomposition("ker(T+F) = (ker T ∩ ker F) ⊕ M′", &k, &m_prime, &ker_s, true)?;

    // P restricted to M is injective, with image P(ker T).
    let p = ker_f_perp.space().projector();
    let pm = Subspace::span(&(&p * m.basis()), 1.0);
    let pk = Subspace::span(&(&p * ker_t.basis()), 1.0);
    cb.step(
        "P|_M is an isomorphism onto P(ker T)",
        pm.dim() == m.dim() && pm.same_as(&pk),
        pm.distance(&pk),
    );

    let c_ker_s = cb.part("ker(T+F)", &ker_s)?;
    let c_im_s_perp = cb.part("Im(T+F)^⊥", &im_s.orth_complement())?;
    let c_ker_t = cb.part("ker T", &ker_t)?;
    let c_im_t_perp = cb.part("Im T^⊥", &im_t.orth_complement())?;
    let c_k = cb.part("ker T ∩ ker F", &k)?;
    let c_m = cb.part("M", &m)?;
    let c_mp = cb.part("M′", &m_prime)?;
    let c_n = cb.part("N", &n)?;
    let c_np = cb.part("N′", &n_prime)?;
    cb.part("T(ker F)", &t_ker_f)?;
    let w = witness_from(&c_ker_t, &c_im_t_perp);
    let (r, r_prime) = (w.n, w.n_tilde);

    cb.classes_equal(
        "[ker(T+F)] + [M] + [N] + [R] = [ker T ∩ ker F] + [M′] + [M] + [N] + [R]",
        &[&c_ker_s, &c_m, &c_n, &r],
        &[&c_k, &c_mp, &c_m, &c_n, &r],
    );
    cb.classes_equal(
        "… = [ker T] + [M′] + [N] + [R]",
        &[&c_k, &c_mp, &c_m, &c_n, &r],
        &[&c_ker_t, &c_mp, &c_n, &r],
    );
    cb.classes_equal(
        "… = [Im T^⊥] + [M′] + [N] + [R′]",
        &[&c_ker_t, &c_mp, &c_n, &r],
        &[&c_im_t_perp, &c_mp, &c_n, &r_prime],
    );
    cb.classes_equal(
        "… = [Im(T+F)^⊥] + [M′] + [N′] + [R′]",
        &[&c_im_t_perp, &c_mp, &c_n, &r_prime],
        &[&c_im_s_perp, &c_mp, &c_np, &r_prime],
    );

    cb.finish(
        "perturbation",
        vec![("ker(T+F)", c_ker_s), ("M", c_m), ("N", c_n), ("R", r)],
        vec![
            ("Im(T+F)^⊥", c_im_s_perp),
            ("M′", c_mp),
            ("N′", c_np),
            ("R′", r_prime),
        ],
    )
}

/// Chain for the product `D F` of two maps with witness pairs `(N, Ñ)` for
/// `F` and `(N′, Ñ′)` for `D`:
/// `[ker DF] + N + N′ = [Im DF^⊥] + Ñ + Ñ′`.
pub fn product_chain(d: &AdjointableMap, f: &AdjointableMap) -> Result<ChainReport> {
    let df = d.compose(f)?;
    let scale = d.norm() * f.norm();
    let mut cb = ChainBuilder::new(f.shape().num_blocks());

    let ker_df = df.kernel_scaled(scale);
    let ker_f = f.kernel();
    let im_f = f.image();
    let ker_d = d.kernel();
    let im_d = d.image();
    let im_df = df.image_scaled(scale);

    let meet = ker_d.intersection(&im_f)?;
    let split = split_nested(&meet, &ker_d, &meet.orth_complement())?;
    let m = split.second;
    cb.step("ker D = (ker D ∩ Im F) ⊕ M", split.orthogonal, 0.0);

    cb.step(
        "ker F ⊆ ker DF",
        ker_df.contains(&ker_f),
        ker_df.space().gap_from(ker_f.space()),
    );
    let f_ker_df = f.image_of(&ker_df)?;
    let dist = f_ker_df.space().distance(meet.space());
    cb.step("F(ker DF) = ker D ∩ Im F", dist <= tolerances().angle_tol.sin(), dist);

    let s = im_d.minus(&im_df)?;
    cb.decomposition(
        "Im DF^⊥ = Im D^⊥ ⊕ S",
        &im_d.orth_complement(),
        &s,
        &im_df.orth_complement(),
        true,
    )?;

    let c_ker_df = cb.part("ker DF", &ker_df)?;
    let c_ker_f = cb.part("ker F", &ker_f)?;
    let c_meet = cb.part("ker D ∩ Im F", &meet)?;
    let c_im_f_perp = cb.part("Im F^⊥", &im_f.orth_complement())?;
    let c_ker_d = cb.part("ker D", &ker_d)?;
    let c_im_d_perp = cb.part("Im D^⊥", &im_d.orth_complement())?;
    let c_im_df_perp = cb.part("Im DF^⊥", &im_df.orth_complement())?;
    let c_m = cb.part("M", &m)?;
    let c_s = cb.part("S", &s)?;
    let wf = witness_from(&c_ker_f, &c_im_f_perp);
    let wd = witness_from(&c_ker_d, &c_im_d_perp);

    cb.classes_equal(
        "[ker DF] + N + N′ = [ker F] + [ker D ∩ Im F] + N + N′",
        &[&c_ker_df],
        &[&c_ker_f, &c_meet],
    );
    cb.classes_equal(
        "… = [Im F^⊥] + [ker D ∩ Im F] + Ñ + N′",
        &[&c_ker_f, &wf.n],
        &[&c_im_f_perp, &wf.n_tilde],
    );
    cb.classes_equal(
        "… = [S] + [M] + [ker D ∩ Im F] + Ñ + N′",
        &[&c_im_f_perp],
        &[&c_s, &c_m],
    );
    cb.classes_equal("… = [S] + [ker D] + Ñ + N′", &[&c_m, &c_meet], &[&c_ker_d]);
    cb.classes_equal(
        "… = [S] + [Im D^⊥] + Ñ + Ñ′",
        &[&c_ker_d, &wd.n],
        &[&c_im_d_perp, &wd.n_tilde],
    );
    cb.classes_equal(
        "… = [Im DF^⊥] + Ñ + Ñ′",
        &[&c_s, &c_im_d_perp],
        &[&c_im_df_perp],
    );

    cb.finish(
        "product",
        vec![("ker DF", c_ker_df), ("N", wf.n), ("N′", wd.n)],
        vec![("Im DF^⊥", c_im_df_perp), ("Ñ", wf.n_tilde), ("Ñ′", wd.n_tilde)],
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct BFredholmReport {
    /// Least `n` with `rank Fⁿ = rank Fⁿ⁺¹`.
    pub stabilization_exponent: usize,
    pub range: Submodule,
    /// `ker F ∩ Im Fⁿ` and `Im Fⁿ ⊖ F(Im Fⁿ)`: kernel and cokernel of the
    /// restriction.
    pub restricted_kernel: Submodule,
    pub restricted_cokernel: Submodule,
    pub restricted_gamma: f64,
    pub b_index: K0Class,
    pub image_ranks: Vec<usize>,
}

/// The chain `Im Fʲ`, computed by repeated images, up to stabilization.
pub(crate) fn image_chain(f: &AdjointableMap) -> Result<Vec<Submodule>> {
    let mut chain = vec![Submodule::full(&f.domain())];
    loop {
        let next = f.image_of(chain.last().expect("nonempty"))?;
        let stable = next.dim() == chain.last().expect("nonempty").dim();
        chain.push(next);
        if stable {
            return Ok(chain);
        }
    }
}

pub fn b_fredholm_report(f: &AdjointableMap) -> Result<BFredholmReport> {
    if !f.is_endomorphism() {
        return Err(Error::RankMismatch("B-Fredholm analysis needs an endomorphism".into()));
    }
    let chain = image_chain(f)?;
    let n = chain.len() - 2;
    let range = chain[n].clone();
    let restricted_kernel = f.kernel().intersection(&range)?;
    let restricted_cokernel = range.minus(&chain[n + 1])?;
    let restricted = range.basis().adjoint() * f.restricted_to(&range);
    let restricted_gamma = crate::linalg::reduced_min_modulus(&restricted);
    let b_index = &restricted_kernel.k0_class()? - &restricted_cokernel.k0_class()?;
    if !b_index.is_zero() {
        return Err(Error::IdentityViolation(format!(
            "restriction to the stable range has index {b_index}"
        )));
    }
    Ok(BFredholmReport {
        stabilization_exponent: n,
        image_ranks: chain.iter().map(Submodule::dim).collect(),
        range,
        restricted_kernel,
        restricted_cokernel,
        restricted_gamma,
        b_index,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutingBFredholmReport {
    pub commutator_residual: f64,
    pub f: BFredholmReport,
    pub d: BFredholmReport,
    pub df: BFredholmReport,
    pub additive: bool,
    pub ker_f_in_range: Submodule,
    pub ker_d_in_range: Submodule,
}

/// Relative commutator `‖FD − DF‖ / (‖F‖‖D‖)`.
pub fn commutator_residual(f: &AdjointableMap, d: &AdjointableMap) -> Result<f64> {
    let fd = f.compose(d)?;
    let df = d.compose(f)?;
    let denom = f.norm() * d.norm();
    Ok(if denom == 0.0 { 0.0 } else { fd.distance(&df) / denom })
}

pub(crate) fn require_commuting(f: &AdjointableMap, d: &AdjointableMap) -> Result<f64> {
    let r = commutator_residual(f, d)?;
    if r > tolerances().comm_tol {
        return Err(Error::UnmetHypothesis(format!(
            "maps do not commute (relative commutator {r:.3e})"
        )));
    }
    Ok(r)
}

pub fn b_fredholm_commuting_check(
    f: &AdjointableMap,
    d: &AdjointableMap,
) -> Result<CommutingBFredholmReport> {
    let commutator_residual = require_commuting(f, d)?;
    let rf = b_fredholm_report(f)?;
    let rd = b_fredholm_report(d)?;
    let rdf = b_fredholm_report(&d.compose(f)?)?;
    let additive = rdf.b_index == &rd.b_index + &rf.b_index;
    let ker_f_in_range = f.kernel().intersection(&rdf.range)?;
    let ker_d_in_range = d.kernel().intersection(&rdf.range)?;
    ker_f_in_range.k0_class()?;
    ker_d_in_range.k0_class()?;
    Ok(CommutingBFredholmReport {
        commutator_residual,
        f: rf,
        d: rd,
        df: rdf,
        additive,
        ker_f_in_range,
        ker_d_in_range,
    })
}
