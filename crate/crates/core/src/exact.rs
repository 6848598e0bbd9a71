//! The six-term sequence
//! `0 → ker F → ker GF → ker G → Im F° → Im GF° → Im G° → 0`
//! for a composable pair, with `°` denoting chosen complements.
//!
//! The connecting maps are the inclusion, `x ↦ Fx`, the projection of
//! `ker G` onto `Im F°` along `Im F`, `y ↦ E(Gy)` with `E` the projection
//! onto `Im GF°` along `Im GF`, and the projection of `Im GF°` onto `Im G°`
//! along `Im G`. Every space is carried by an orthonormal basis and every map
//! is recorded in those coordinates.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{oblique_projection, spectral_norm, CMat, Subspace};
use crate::tol::tolerances;

pub const NODE_NAMES: [&str; 6] = ["ker F", "ker GF", "ker G", "Im F°", "Im GF°", "Im G°"];

/// Subspaces feeding the sequence; `*_c` are the chosen complements.
pub struct SequenceSpaces {
    pub ker_f: Subspace,
    pub ker_gf: Subspace,
    pub ker_g: Subspace,
    pub im_f: Subspace,
    pub im_gf: Subspace,
    pub im_g: Subspace,
    pub im_f_c: Subspace,
    pub im_gf_c: Subspace,
    pub im_g_c: Subspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeResidual {
    pub node: &'static str,
    pub dim: usize,
    /// `‖b∘a‖` relative to the reference sizes of the incoming `a` and
    /// outgoing `b`.
    pub composition: f64,
    /// Sine distance between `ker b` and `Im a`; `1` on a dimension mismatch.
    pub kernel_vs_image: f64,
}

impl NodeResidual {
    pub fn worst(&self) -> f64 {
        self.composition.max(self.kernel_vs_image)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceCore {
    pub nodes: Vec<NodeResidual>,
    /// `Σ (−1)^i dim` over the six spaces.
    pub alternating_dim_sum: i64,
    /// Largest norm among the three complement projections.
    pub projection_norm: f64,
    pub exact: bool,
    #[serde(skip)]
    pub maps: Vec<CMat>,
}

impl SequenceCore {
    pub fn max_residual(&self) -> f64 {
        self.nodes.iter().map(NodeResidual::worst).fold(0.0, f64::max)
    }
}

fn coords(target: &Subspace, op: &CMat, source: &Subspace) -> CMat {
    target.basis().adjoint() * op * source.basis()
}

/// Builds the five maps and measures exactness at each node.
pub fn sequence_core(f: &CMat, g: &CMat, s: &SequenceSpaces) -> Result<SequenceCore> {
    let e1 = oblique_projection(&s.im_f_c, &s.im_f)?;
    let e2 = oblique_projection(&s.im_gf_c, &s.im_gf)?;
    let e3 = oblique_projection(&s.im_g_c, &s.im_g)?;
    let id_x = CMat::identity(f.ncols(), f.ncols());
    let m1 = coords(&s.ker_gf, &id_x, &s.ker_f);
    let m2 = coords(&s.ker_g, f, &s.ker_gf);
    let m3 = coords(&s.im_f_c, &e1.matrix, &s.ker_g);
    let m4 = coords(&s.im_gf_c, &(&e2.matrix * g), &s.im_f_c);
    let m5 = coords(&s.im_g_c, &e3.matrix, &s.im_gf_c);
    let spaces = [&s.ker_f, &s.ker_gf, &s.ker_g, &s.im_f_c, &s.im_gf_c, &s.im_g_c];
    let dims: Vec<usize> = spaces.iter().map(|v| v.dim()).collect();
    // Reference sizes for the rank decisions on each map.
    let scales = [
        1.0,
        spectral_norm(f),
        e1.norm,
        e2.norm * spectral_norm(g),
        e3.norm,
    ];
    let maps = vec![m1, m2, m3, m4, m5];
    let mut nodes = Vec::with_capacity(6);
    for j in 0..6 {
        let incoming = if j == 0 {
            CMat::zeros(dims[0], 0)
        } else {
            maps[j - 1].clone()
        };
        let outgoing = if j == 5 {
            CMat::zeros(0, dims[5])
        } else {
            maps[j].clone()
        };
        let out_scale = if j == 5 { 1.0 } else { scales[j] };
        let in_scale = if j == 0 { 1.0 } else { scales[j - 1] };
        let composition = if incoming.ncols() == 0 || outgoing.nrows() == 0 {
            0.0
        } else {
            let denom = out_scale * in_scale;
            if denom == 0.0 {
                0.0
            } else {
                spectral_norm(&(&outgoing * &incoming)) / denom
            }
        };
        let ker = Subspace::kernel_of(&outgoing, out_scale);
        let img = Subspace::image_of(&incoming, in_scale);
        nodes.push(NodeResidual {
            node: NODE_NAMES[j],
            dim: dims[j],
            composition,
            kernel_vs_image: ker.distance(&img),
        });
    }
    let alternating_dim_sum = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    let threshold = tolerances().angle_tol;
    let exact = nodes.iter().all(|n| n.worst() <= threshold) && alternating_dim_sum == 0;
    Ok(SequenceCore {
        nodes,
        alternating_dim_sum,
        projection_norm: e1.norm.max(e2.norm).max(e3.norm),
        exact,
        maps,
    })
}

/// Orthogonal choice of all three complements.
pub fn orthogonal_spaces(f: &CMat, g: &CMat, scale_f: f64, scale_g: f64) -> SequenceSpaces {
    let gf = g * f;
    let ker_f = Subspace::kernel_of(f, scale_f);
    let ker_gf = Subspace::kernel_of(&gf, scale_f * scale_g);
    let ker_g = Subspace::kernel_of(g, scale_g);
    let im_f = Subspace::image_of(f, scale_f);
    let im_gf = Subspace::image_of(&gf, scale_f * scale_g);
    let im_g = Subspace::image_of(g, scale_g);
    SequenceSpaces {
        im_f_c: im_f.complement(),
        im_gf_c: im_gf.complement(),
        im_g_c: im_g.complement(),
        ker_f,
        ker_gf,
        ker_g,
        im_f,
        im_gf,
        im_g,
    }
}
