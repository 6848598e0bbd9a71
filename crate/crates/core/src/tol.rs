//! Process-wide numerical tolerances.
//!
//! Every rank, angle and residual decision in the crate reads its threshold
//! from a single [`Tolerances`] value so that a borderline verdict can be
//! reproduced by re-running with the same configuration.

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Singular values below `rank_tol * scale * dim` count as zero.
    pub rank_tol: f64,
    /// Largest principal angle (radians) at which two subspaces are equal.
    pub angle_tol: f64,
    /// Relative residual accepted for algebraic identities.
    pub residual_tol: f64,
    /// `‖FD − DF‖ ≤ comm_tol · ‖F‖‖D‖` is accepted as commuting.
    pub comm_tol: f64,
    /// Finite proxy for "bounded below" in truncation diagnostics.
    pub bounded_below_tau: f64,
    /// Oblique projections with norm above this are flagged ill-posed.
    pub ill_posed_norm: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        rank_tol: 1e-10,
        angle_tol: 1e-8,
        residual_tol: 1e-9,
        comm_tol: 1e-10,
        bounded_below_tau: 1e-6,
        ill_posed_norm: 1e6,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

static TOLERANCES: RwLock<Tolerances> = RwLock::new(Tolerances::DEFAULT);

/// Current tolerance configuration.
pub fn tolerances() -> Tolerances {
    *TOLERANCES.read().unwrap_or_else(|e| e.into_inner())
}

/// Replace the process-wide tolerances. Intended for the CLI entry point.
pub fn set_tolerances(tol: Tolerances) {
    *TOLERANCES.write().unwrap_or_else(|e| e.into_inner()) = tol;
}
