//! Angles between submodules, the restricted minimum modulus `δ`, sampled
//! checks of the closed-sum bound, and the closed-range criterion for
//! products.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{singular_values, svd, CMat, Subspace, C64};
use crate::linmap::AdjointableMap;
use crate::module::Submodule;
use crate::tol::tolerances;

/// Default number of random samples for the closed-sum bound.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DixmierAngle {
    /// `‖P_M P_N‖`, the largest singular value of `Q_M* Q_N`.
    pub c0: f64,
    /// `sup_{y ∈ N, ‖y‖=1} ‖(I − P_{M^⊥}) y‖`, through an explicit basis of
    /// `M^⊥`.
    pub c0_supremum: f64,
}

fn dixmier(m: &Subspace, n: &Subspace) -> DixmierAngle {
    if m.dim() == 0 || n.dim() == 0 {
        return DixmierAngle {
            c0: 0.0,
            c0_supremum: 0.0,
        };
    }
    let c0 = singular_values(&(m.basis().adjoint() * n.basis()))[0].min(1.0);
    let comp = m.complement();
    let qn = n.basis();
    let residual = qn - comp.basis() * (comp.basis().adjoint() * qn);
    let c0_supremum = singular_values(&residual)[0].min(1.0);
    DixmierAngle { c0, c0_supremum }
}

/// `δ = m(P|_N)` for `P` the projection onto `M^⊥`; `+∞` when `N = 0`.
fn restricted_min_modulus(m: &Subspace, n: &Subspace) -> f64 {
    if n.dim() == 0 {
        return f64::INFINITY;
    }
    let qn = n.basis();
    let pn = qn - m.basis() * (m.basis().adjoint() * qn);
    let s = singular_values(&pn);
    s.get(n.dim() - 1).copied().unwrap_or(0.0)
}

fn check_ambient(m: &Submodule, n: &Submodule) -> Result<()> {
    if m.ambient() != n.ambient() {
        return Err(Error::ShapeMismatch(format!(
            "submodules of {} and {}",
            m.ambient(),
            n.ambient()
        )));
    }
    Ok(())
}

pub fn dixmier_angle(m: &Submodule, n: &Submodule) -> Result<DixmierAngle> {
    check_ambient(m, n)?;
    Ok(dixmier(m.space(), n.space()))
}

pub fn min_modulus_restricted(m: &Submodule, n: &Submodule) -> Result<f64> {
    check_ambient(m, n)?;
    Ok(restricted_min_modulus(m.space(), n.space()))
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometryReport {
    pub c0: f64,
    pub c0_supremum: f64,
    pub delta: f64,
    /// `(δ + 1)/δ`; `+∞` when `δ = 0`.
    pub bound_c: f64,
    /// `N = 0`, so `δ` is vacuous.
    pub degenerate: bool,
    /// `M ∩ N ≠ 0`; `N` was replaced by `N ⊖ (M ∩ N)`.
    pub reduced_by_intersection: bool,
    pub intersection_dim: usize,
    /// `δ > τ`, the finite proxy for a closed sum.
    pub bounded_below: bool,
    pub samples: usize,
    /// Largest `‖x‖ / ‖x + y‖` over the samples.
    pub max_sampled_ratio: f64,
    pub violations: usize,
}

impl GeometryReport {
    /// `|c0² + δ² − 1|`, zero when degenerate.
    pub fn pythagoras_residual(&self) -> f64 {
        if self.degenerate {
            0.0
        } else {
            (self.c0 * self.c0 + self.delta * self.delta - 1.0).abs()
        }
    }
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<C64> {
    DVector::from_fn(n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    })
}

pub(crate) fn closed_sum_spaces(m: &Subspace, n: &Subspace, seed: u64, samples: usize) -> GeometryReport {
    let inter = m.intersection(n);
    let reduced_by_intersection = inter.dim() > 0;
    let n = if reduced_by_intersection {
        n.minus(&inter)
    } else {
        n.clone()
    };
    let angle = dixmier(m, &n);
    let delta = restricted_min_modulus(m, &n);
    let degenerate = n.dim() == 0;
    let bound_c = if degenerate {
        1.0
    } else if delta > 0.0 {
        (delta + 1.0) / delta
    } else {
        f64::INFINITY
    };
    let mut max_ratio = 0.0f64;
    let mut violations = 0;
    let mut taken = 0;
    if m.dim() > 0 && n.dim() > 0 && samples > 0 {
        let g = m.basis().adjoint() * n.basis();
        let slack = tolerances().residual_tol.sqrt();
        let mut check = |a: &DVector<C64>, b: &DVector<C64>| {
            let na = a.norm_squared();
            let cross = (a.adjoint() * &g * b)[(0, 0)].re;
            let sum = (na + b.norm_squared() + 2.0 * cross).max(0.0).sqrt();
            if sum > 0.0 {
                let r = na.sqrt() / sum;
                max_ratio = max_ratio.max(r);
                if r > bound_c * (1.0 + slack) {
                    violations += 1;
                }
            }
        };
        // The extremal pair: principal vectors of the smallest angle, with
        // opposite signs so that x + y is as short as possible.
        let d = svd(&g);
        let a = -d.u.column(0).into_owned();
        let b = d.v.column(0).into_owned();
        check(&a, &b);
        taken += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while taken < samples {
            let a = gaussian_vector(&mut rng, m.dim());
            let b = gaussian_vector(&mut rng, n.dim());
            check(&a, &b);
            taken += 1;
        }
    }
    GeometryReport {
        c0: angle.c0,
        c0_supremum: angle.c0_supremum,
        delta,
        bound_c,
        degenerate,
        reduced_by_intersection,
        intersection_dim: inter.dim(),
        bounded_below: delta > tolerances().bounded_below_tau,
        samples: taken,
        max_sampled_ratio: max_ratio,
        violations,
    }
}

/// Closedness diagnostics for `M + N` with the sampled bound
/// `‖x‖ ≤ (δ+1)/δ` whenever `‖x + y‖ ≤ 1`.
pub fn closed_sum_report(m: &Submodule, n: &Submodule, seed: u64, samples: usize) -> Result<GeometryReport> {
    check_ambient(m, n)?;
    Ok(closed_sum_spaces(m.space(), n.space(), seed, samples))
}

#[derive(Clone, Debug, Serialize)]
pub struct BouldinReport {
    /// `K = ker D ∩ Im F`.
    pub intersection: Submodule,
    /// `m(P|_{Im F ⊖ K})`, `P` the projection onto `(ker D)^⊥`.
    pub margin_p: f64,
    /// `m(Q|_{ker D ⊖ K})`, `Q` the projection onto `(Im F)^⊥`.
    pub margin_q: f64,
    pub degenerate_p: bool,
    pub degenerate_q: bool,
    /// Both margins clear `τ`, or both fail it.
    pub margins_agree: bool,
    pub gamma_df: f64,
    /// Closed-sum analysis of `ker D + Im F`.
    pub closed_sum: GeometryReport,
    /// The closed-sum verdict matches the restricted-projection verdict.
    pub bridge_agrees: bool,
}

pub fn bouldin_criterion(f: &AdjointableMap, d: &AdjointableMap, seed: u64, samples: usize) -> Result<BouldinReport> {
    let df = d.compose(f)?;
    let ker_d = d.kernel();
    let im_f = f.image();
    let k = ker_d.intersection(&im_f)?;
    let im_f_r = im_f.minus(&k)?;
    let ker_d_r = ker_d.minus(&k)?;
    let margin_p = restricted_min_modulus(ker_d.space(), im_f_r.space());
    let margin_q = restricted_min_modulus(im_f.space(), ker_d_r.space());
    let tau = tolerances().bounded_below_tau;
    let closed_sum = closed_sum_spaces(ker_d.space(), im_f.space(), seed, samples);
    let verdict_p = margin_p > tau;
    Ok(BouldinReport {
        margins_agree: verdict_p == (margin_q > tau),
        degenerate_p: im_f_r.dim() == 0,
        degenerate_q: ker_d_r.dim() == 0,
        gamma_df: df.reduced_min_modulus(),
        bridge_agrees: closed_sum.bounded_below == verdict_p,
        intersection: k,
        margin_p,
        margin_q,
        closed_sum,
    })
}

/// Restricted minimum moduli `m(P|_N)` directly from coordinate bases, for
/// callers that work with plain subspaces.
pub fn subspace_delta(m: &CMat, n: &CMat) -> f64 {
    restricted_min_modulus(&Subspace::span(m, 1.0), &Subspace::span(n, 1.0))
}
