//! Regular operators between finite-dimensional spaces with explicitly
//! chosen (generally oblique) complements: generalized inverses, generalized
//! Weyl membership, `Φ₀ᵍᶜ` witnesses, finite-rank perturbations and products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{sequence_core, SequenceCore, SequenceSpaces};
use crate::fredholm::ChainStep;
use crate::linalg::{
    is_algebraic_complement, oblique_projection, pinv, rel_diff, spectral_norm, CMat, Margin, Subspace,
};
use crate::tol::tolerances;

/// An idempotent `E` together with `Im E` and `ker E`.
#[derive(Clone, Debug)]
pub struct ObliqueDecomposition {
    pub matrix: CMat,
    pub image: Subspace,
    pub kernel: Subspace,
    pub norm: f64,
}

impl ObliqueDecomposition {
    pub fn new(onto: &Subspace, along: &Subspace) -> Result<Self> {
        let p = oblique_projection(onto, along)?;
        Ok(ObliqueDecomposition {
            matrix: p.matrix,
            image: onto.clone(),
            kernel: along.clone(),
            norm: p.norm,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `‖E² − E‖ / max(1, ‖E‖)`.
    pub fn idempotency_residual(&self) -> f64 {
        let e = &self.matrix;
        spectral_norm(&(e * e - e)) / self.norm.max(1.0)
    }

    pub fn is_ill_posed(&self) -> bool {
        self.norm > tolerances().ill_posed_norm
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RegularResiduals {
    /// `‖TT′T − T‖ / ‖T‖`.
    pub tt_t: f64,
    /// `‖T′TT′ − T′‖ / ‖T′‖`.
    pub t_tt: f64,
    /// `TT′` against the projection onto `Im T` along the chosen complement.
    pub range_projection: f64,
    /// `T′T` against the projection onto the kernel complement along `ker T`.
    pub domain_projection: f64,
    pub range_idempotency: f64,
    pub domain_idempotency: f64,
}

impl RegularResiduals {
    pub fn max(&self) -> f64 {
        [
            self.tt_t,
            self.t_tt,
            self.range_projection,
            self.domain_projection,
            self.range_idempotency,
            self.domain_idempotency,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `T : X → Y` with a generalized inverse built from chosen complements of
/// `ker T` in `X` and of `Im T` in `Y`.
#[derive(Clone, Debug)]
pub struct RegularOperator {
    pub t: CMat,
    pub t_prime: CMat,
    pub kernel: Subspace,
    pub image: Subspace,
    /// Projection onto the kernel complement along `ker T` (equals `T′T`).
    pub domain_split: ObliqueDecomposition,
    /// Projection onto `Im T` along the image complement (equals `TT′`).
    pub range_split: ObliqueDecomposition,
    pub residuals: RegularResiduals,
}

fn scale_of(m: &CMat) -> f64 {
    spectral_norm(m).max(f64::MIN_POSITIVE)
}

fn check_complement(space: &Subspace, candidate: &Subspace, what: &str) -> Result<()> {
    if candidate.ambient_dim() != space.ambient_dim() {
        return Err(Error::ShapeMismatch(format!(
            "{what} complement lives in C^{}, expected C^{}",
            candidate.ambient_dim(),
            space.ambient_dim()
        )));
    }
    if !is_algebraic_complement(space, candidate) {
        let inter = space.intersection(candidate);
        return Err(Error::UnmetHypothesis(format!(
            "{what} complement of dimension {} does not complement a subspace of dimension {} in C^{} (intersection dimension {})",
            candidate.dim(),
            space.dim(),
            space.ambient_dim(),
            inter.dim()
        )));
    }
    Ok(())
}

/// Builds `T′` inverting `T` from `ker_complement` onto `Im T` and vanishing
/// on `im_complement`.
pub fn make_regular(t: &CMat, ker_complement: &Subspace, im_complement: &Subspace) -> Result<RegularOperator> {
    let scale = scale_of(t);
    let kernel = Subspace::kernel_of(t, scale);
    let image = Subspace::image_of(t, scale);
    check_complement(&kernel, ker_complement, "kernel")?;
    check_complement(&image, im_complement, "image")?;
    let domain_split = ObliqueDecomposition::new(ker_complement, &kernel)?;
    let range_split = ObliqueDecomposition::new(&image, im_complement)?;
    let q = ker_complement.basis();
    let (restricted_inv, _) = pinv(&(t * q), scale);
    let t_prime = q * restricted_inv * &range_split.matrix;
    let tp_scale = spectral_norm(&t_prime).max(f64::MIN_POSITIVE);
    let ttp = t * &t_prime;
    let tpt = &t_prime * t;
    let residuals = RegularResiduals {
        tt_t: spectral_norm(&(&ttp * t - t)) / scale,
        t_tt: spectral_norm(&(&tpt * &t_prime - &t_prime)) / tp_scale,
        range_projection: rel_diff(&ttp, &range_split.matrix),
        domain_projection: rel_diff(&tpt, &domain_split.matrix),
        range_idempotency: range_split.idempotency_residual(),
        domain_idempotency: domain_split.idempotency_residual(),
    };
    Ok(RegularOperator {
        t: t.clone(),
        t_prime,
        kernel,
        image,
        domain_split,
        range_split,
        residuals,
    })
}

/// [`make_regular`] with orthogonal complements; `T′` is then the
/// Moore–Penrose pseudoinverse.
pub fn make_regular_orthogonal(t: &CMat) -> Result<RegularOperator> {
    let scale = scale_of(t);
    let kc = Subspace::kernel_of(t, scale).complement();
    let ic = Subspace::image_of(t, scale).complement();
    make_regular(t, &kc, &ic)
}

impl RegularOperator {
    pub fn kernel_complement(&self) -> &Subspace {
        &self.domain_split.image
    }

    pub fn image_complement(&self) -> &Subspace {
        &self.range_split.kernel
    }

    /// `dim Y − dim Im T`, realized as the dimension of the image complement.
    pub fn codim_image(&self) -> usize {
        self.image_complement().dim()
    }

    pub fn index(&self) -> i64 {
        self.kernel.dim() as i64 - self.codim_image() as i64
    }

    pub fn projection_norm(&self) -> f64 {
        self.domain_split.norm.max(self.range_split.norm)
    }

    pub fn is_ill_posed(&self) -> bool {
        self.domain_split.is_ill_posed() || self.range_split.is_ill_posed()
    }

    pub fn margin(&self) -> Margin {
        self.kernel.margin().worst(self.image.margin())
    }
}

/// `ker T ≅ Y / Im T`, i.e. `dim ker T = codim Im T`.
pub fn generalized_weyl_banach(t: &RegularOperator) -> bool {
    t.kernel.dim() == t.codim_image()
}

/// Dimensions of `Z₁`, `Z₂` with `ker T ⊕ Z₁ ≅ Im T° ⊕ Z₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BanachWitness {
    pub z1: usize,
    pub z2: usize,
}

/// The minimal witness.
pub fn phi0gc_witness(t: &RegularOperator) -> BanachWitness {
    let k = t.kernel.dim();
    let c = t.codim_image();
    BanachWitness {
        z1: c.saturating_sub(k),
        z2: k.saturating_sub(c),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BanachPerturbationReport {
    pub f_rank: usize,
    /// `rank F / min(dim X, dim Y)`.
    pub f_relative_rank: f64,
    pub dim_ker_t: usize,
    pub codim_im_t: usize,
    pub dim_ker_sum: usize,
    pub codim_im_sum: usize,
    /// `dim T(ker F)`.
    pub dim_t_ker_f: usize,
    pub dim_n: usize,
    pub dim_n_prime: usize,
    pub dim_m: usize,
    pub dim_m_prime: usize,
    pub dim_v: usize,
    /// `dim (ker T ∩ ker F)`.
    pub dim_common_kernel: usize,
    pub witness: BanachWitness,
    pub sum_witness: BanachWitness,
    /// `dim ker(T+F) + dim M + dim N + z₁`.
    pub lhs: usize,
    /// `codim Im(T+F) + dim M′ + dim N′ + z₂`.
    pub rhs: usize,
    pub identity_holds: bool,
    pub sum_residuals: RegularResiduals,
    pub sum_is_weyl: bool,
    pub steps: Vec<ChainStep>,
    /// Largest norm among the oblique projections used.
    pub projection_norm: f64,
    pub ill_posed: bool,
    pub margin: Margin,
}

struct Steps {
    steps: Vec<ChainStep>,
}

impl Steps {
    fn check(&mut self, description: impl Into<String>, holds: bool, residual: f64) {
        self.steps.push(ChainStep {
            description: description.into(),
            holds,
            residual,
        });
    }

    /// `whole = a ⊕̃ b`.
    fn split(&mut self, description: &str, whole: &Subspace, a: &Subspace, b: &Subspace) {
        let (sum, inter) = a.sum_and_intersection(b);
        let holds = inter.dim() == 0 && sum.same_as(whole);
        self.check(description, holds, sum.distance(whole));
    }

    fn same(&mut self, description: &str, a: &Subspace, b: &Subspace) {
        self.check(description, a.same_as(b), a.distance(b));
    }

    fn failures(&self) -> Vec<&str> {
        self.steps
            .iter()
            .filter(|s| !s.holds)
            .map(|s| s.description.as_str())
            .collect()
    }
}

/// Runs the finite-rank perturbation construction for `T + F` with oblique
/// projections: `Q` onto `t_ker_f_complement` along `T(ker F)` and `P` onto
/// `ker_f_complement` along `ker F`.
pub fn banach_perturbation(
    t: &RegularOperator,
    f: &CMat,
    ker_f_complement: &Subspace,
    t_ker_f_complement: &Subspace,
) -> Result<BanachPerturbationReport> {
    if f.shape() != t.t.shape() {
        return Err(Error::ShapeMismatch(format!(
            "T is {}x{} but F is {}x{}",
            t.t.nrows(),
            t.t.ncols(),
            f.nrows(),
            f.ncols()
        )));
    }
    let (ny, nx) = f.shape();
    let scale_t = scale_of(&t.t);
    let scale_f = scale_of(f);
    let sum = &t.t + f;
    let scale_sum = scale_t.max(scale_f);
    let ker_f = Subspace::kernel_of(f, scale_f);
    let f_rank = nx - ker_f.dim();
    check_complement(&ker_f, ker_f_complement, "ker F")?;
    let t_ker_f = ker_f.mapped(&t.t, scale_t);
    check_complement(&t_ker_f, t_ker_f_complement, "T(ker F)")?;
    let ker_sum = Subspace::kernel_of(&sum, scale_sum);
    let im_sum = Subspace::image_of(&sum, scale_sum);

    let p = ObliqueDecomposition::new(ker_f_complement, &ker_f)?;
    let q = ObliqueDecomposition::new(t_ker_f_complement, &t_ker_f)?;
    let mut steps = Steps { steps: Vec::new() };

    steps.check(
        "T(ker F) ⊆ Im T and T(ker F) ⊆ Im(T+F)",
        t.image.contains(&t_ker_f) && im_sum.contains(&t_ker_f),
        t.image.gap_from(&t_ker_f).max(im_sum.gap_from(&t_ker_f)),
    );
    let n = t.image.mapped(&q.matrix, q.norm);
    let n_prime = im_sum.mapped(&q.matrix, q.norm);
    steps.split("Im T = T(ker F) ⊕̃ N", &t.image, &t_ker_f, &n);
    steps.split("Im(T+F) = T(ker F) ⊕̃ N′", &im_sum, &t_ker_f, &n_prime);
    let n_from_complement = ker_f_complement.mapped(&(&q.matrix * &t.t), q.norm * scale_t);
    steps.same("N = QT(ker F°)", &n, &n_from_complement);
    let n_prime_from_complement = ker_f_complement.mapped(&(&q.matrix * &sum), q.norm * scale_sum);
    steps.same("N′ = Q(T+F)(ker F°)", &n_prime, &n_prime_from_complement);

    // T(ker F)° = Q(N′) ⊕̃ V, and then Y = Im(T+F) ⊕̃ V.
    let qn_prime = n_prime.mapped(&q.matrix, q.norm);
    let v = t_ker_f_complement.minus(&qn_prime);
    steps.split("T(ker F)° = Q(N′) ⊕̃ V", t_ker_f_complement, &qn_prime, &v);
    steps.check(
        "Y = Im(T+F) ⊕̃ V",
        is_algebraic_complement(&im_sum, &v),
        0.0,
    );

    let common = t.kernel.intersection(&ker_f);
    let common_sum = ker_sum.intersection(&ker_f);
    steps.same("ker T ∩ ker F = ker(T+F) ∩ ker F", &common, &common_sum);
    let m = t.kernel.minus(&common);
    let m_prime = ker_sum.minus(&common);
    steps.split("ker T = (ker T ∩ ker F) ⊕̃ M", &t.kernel, &common, &m);
    steps.split("ker(T+F) = (ker T ∩ ker F) ⊕̃ M′", &ker_sum, &common, &m_prime);
    let pm = m.mapped(&p.matrix, p.norm);
    let pker = t.kernel.mapped(&p.matrix, p.norm);
    steps.check(
        "P|_M is an isomorphism onto P(ker T)",
        pm.dim() == m.dim() && pm.same_as(&pker),
        pm.distance(&pker),
    );
    let pm_prime = m_prime.mapped(&p.matrix, p.norm);
    let pker_sum = ker_sum.mapped(&p.matrix, p.norm);
    steps.check(
        "P|_M′ is an isomorphism onto P(ker(T+F))",
        pm_prime.dim() == m_prime.dim() && pm_prime.same_as(&pker_sum),
        pm_prime.distance(&pker_sum),
    );

    let kernel_complement = ker_sum.complement();
    let regular_sum = make_regular(&sum, &kernel_complement, &v)?;
    let residual_tol = tolerances().residual_tol;
    steps.check(
        "T+F is regular",
        regular_sum.residuals.max() <= residual_tol.sqrt(),
        regular_sum.residuals.max(),
    );

    let witness = phi0gc_witness(t);
    let lhs = ker_sum.dim() + m.dim() + n.dim() + witness.z1;
    let rhs = v.dim() + m_prime.dim() + n_prime.dim() + witness.z2;
    let identity_holds = lhs == rhs;
    steps.check(
        "dim ker(T+F) + dim M + dim N + z₁ = codim Im(T+F) + dim M′ + dim N′ + z₂",
        identity_holds,
        (lhs as f64 - rhs as f64).abs(),
    );

    let failures = steps.failures();
    if !failures.is_empty() {
        return Err(Error::IdentityViolation(format!(
            "perturbation construction failed at: {}",
            failures.join("; ")
        )));
    }
    let projection_norm = p
        .norm
        .max(q.norm)
        .max(t.projection_norm())
        .max(regular_sum.projection_norm());
    let margin = Margin::worst_of([
        t.margin(),
        ker_f.margin(),
        t_ker_f.margin(),
        ker_sum.margin(),
        im_sum.margin(),
    ]);
    Ok(BanachPerturbationReport {
        f_rank,
        f_relative_rank: f_rank as f64 / nx.min(ny).max(1) as f64,
        dim_ker_t: t.kernel.dim(),
        codim_im_t: t.codim_image(),
        dim_ker_sum: ker_sum.dim(),
        codim_im_sum: v.dim(),
        dim_t_ker_f: t_ker_f.dim(),
        dim_n: n.dim(),
        dim_n_prime: n_prime.dim(),
        dim_m: m.dim(),
        dim_m_prime: m_prime.dim(),
        dim_v: v.dim(),
        dim_common_kernel: common.dim(),
        witness,
        sum_witness: phi0gc_witness(&regular_sum),
        lhs,
        rhs,
        identity_holds,
        sum_residuals: regular_sum.residuals,
        sum_is_weyl: generalized_weyl_banach(&regular_sum),
        steps: steps.steps,
        projection_norm,
        ill_posed: projection_norm > tolerances().ill_posed_norm,
        margin,
    })
}

/// [`banach_perturbation`] with orthogonal complements of `ker F` and
/// `T(ker F)`.
pub fn banach_perturbation_orthogonal(t: &RegularOperator, f: &CMat) -> Result<BanachPerturbationReport> {
    let ker_f = Subspace::kernel_of(f, scale_of(f));
    let t_ker_f = ker_f.mapped(&t.t, scale_of(&t.t));
    banach_perturbation(t, f, &ker_f.complement(), &t_ker_f.complement())
}

#[derive(Clone, Debug, Serialize)]
pub struct BanachProductReport {
    pub s_weyl: bool,
    pub t_weyl: bool,
    pub st_weyl: bool,
    /// `S, T` generalized Weyl ⇒ `ST` generalized Weyl.
    pub verdict: bool,
    /// `‖S(TU)ST − ST‖ / (‖S‖‖T‖)`, `U` the generalized inverse of `ST`.
    pub restricted_inverse_residual: f64,
    /// `dim (ker S ∩ Im T)`.
    pub dim_kernel_meet: usize,
    pub dim_ker_t: usize,
    pub dim_ker_st: usize,
    pub witness_s: BanachWitness,
    pub witness_t: BanachWitness,
    pub witness_st: BanachWitness,
    pub index_s: i64,
    pub index_t: i64,
    pub index_st: i64,
    /// `T, S ∈ Φ₀ᵍᶜ` with `ST` regular gives `ST ∈ Φ₀ᵍᶜ`; in finite
    /// dimension this is index additivity.
    pub phi0gc_composition: bool,
    pub sequence: SequenceCore,
    pub projection_norm: f64,
    pub ill_posed: bool,
    pub margin: Margin,
}

/// Product of regular operators `S : Y → Z` and `T : X → Y`. `st` supplies
/// complements for `ST`; orthogonal ones are used when absent.
pub fn banach_product(
    s: &RegularOperator,
    t: &RegularOperator,
    st: Option<(&Subspace, &Subspace)>,
) -> Result<BanachProductReport> {
    if s.t.ncols() != t.t.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "S is {}x{} and T is {}x{}",
            s.t.nrows(),
            s.t.ncols(),
            t.t.nrows(),
            t.t.ncols()
        )));
    }
    let prod = &s.t * &t.t;
    let st_reg = match st {
        Some((kc, ic)) => make_regular(&prod, kc, ic),
        None => make_regular_orthogonal(&prod),
    }
    .map_err(|e| Error::UnmetHypothesis(format!("ST is not regular with the given complements: {e}")))?;

    let tu = &t.t * &st_reg.t_prime;
    let denom = (scale_of(&s.t) * scale_of(&t.t)).max(f64::MIN_POSITIVE);
    let restricted_inverse_residual = spectral_norm(&(&s.t * &tu * &prod - &prod)) / denom;
    let meet = s.kernel.intersection(&t.image);

    let spaces = SequenceSpaces {
        ker_f: t.kernel.clone(),
        ker_gf: st_reg.kernel.clone(),
        ker_g: s.kernel.clone(),
        im_f: t.image.clone(),
        im_gf: st_reg.image.clone(),
        im_g: s.image.clone(),
        im_f_c: t.image_complement().clone(),
        im_gf_c: st_reg.image_complement().clone(),
        im_g_c: s.image_complement().clone(),
    };
    let sequence = sequence_core(&t.t, &s.t, &spaces)?;

    let s_weyl = generalized_weyl_banach(s);
    let t_weyl = generalized_weyl_banach(t);
    let st_weyl = generalized_weyl_banach(&st_reg);
    let verdict = !(s_weyl && t_weyl) || st_weyl;
    if !verdict {
        return Err(Error::IdentityViolation(
            "S and T are generalized Weyl but ST is not".into(),
        ));
    }
    let phi0gc_composition = st_reg.index() == s.index() + t.index();
    let projection_norm = s
        .projection_norm()
        .max(t.projection_norm())
        .max(st_reg.projection_norm())
        .max(sequence.projection_norm);
    Ok(BanachProductReport {
        s_weyl,
        t_weyl,
        st_weyl,
        verdict,
        restricted_inverse_residual,
        dim_kernel_meet: meet.dim(),
        dim_ker_t: t.kernel.dim(),
        dim_ker_st: st_reg.kernel.dim(),
        witness_s: phi0gc_witness(s),
        witness_t: phi0gc_witness(t),
        witness_st: phi0gc_witness(&st_reg),
        index_s: s.index(),
        index_t: t.index(),
        index_st: st_reg.index(),
        phi0gc_composition,
        sequence,
        projection_norm,
        ill_posed: projection_norm > tolerances().ill_posed_norm,
        margin: Margin::worst_of([s.margin(), t.margin(), st_reg.margin()]),
    })
}
