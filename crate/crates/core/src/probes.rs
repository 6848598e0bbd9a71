//! Finite truncations of operators whose range, or the range of whose
//! square, fails to be closed in infinite dimension. Each family reports how
//! the relevant minimum moduli and angles decay with the truncation size.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgebraShape;
use crate::error::{Error, Result};
use crate::geometry::{bouldin_criterion, closed_sum_report};
use crate::linalg::{reduced_min_modulus, scalar, CMat};
use crate::linmap::AdjointableMap;
use crate::tol::tolerances;

/// Samples used for the closed-sum bound inside family diagnostics.
const PROBE_SAMPLES: usize = 1000;

/// `F(f) = f·id` on the diagonal algebra `C^n`, sampling `id` at
/// `j/(n+1)`.
pub fn multiplier_family(n: usize) -> Result<AdjointableMap> {
    if n == 0 {
        return Err(Error::InvalidInput("multiplier family needs n ≥ 1".into()));
    }
    let shape = AlgebraShape::commutative(n);
    let reduced = (1..=n)
        .map(|j| CMat::from_element(1, 1, scalar(j as f64 / (n + 1) as f64)))
        .collect();
    AdjointableMap::from_reduced(&shape, 1, 1, reduced)
}

/// `F(T) = ST` on `A = M_n` viewed as a module over itself.
pub fn left_multiplier_family(s: &CMat) -> Result<AdjointableMap> {
    if !s.is_square() || s.nrows() == 0 {
        return Err(Error::InvalidInput(format!(
            "left multiplier must be a nonempty square matrix, got {}x{}",
            s.nrows(),
            s.ncols()
        )));
    }
    let shape = AlgebraShape::matrix(s.nrows());
    let f = AdjointableMap::from_reduced(&shape, 1, 1, vec![s.clone()])?;
    let (gf, gs) = (f.reduced_min_modulus(), reduced_min_modulus(s));
    let agree = (gf.is_infinite() && gs.is_infinite()) || (gf - gs).abs() <= 1e-12 * gs.max(1.0);
    if !agree {
        return Err(Error::IdentityViolation(format!(
            "γ(F) = {gf:e} differs from γ(S) = {gs:e}"
        )));
    }
    Ok(f)
}

/// `diag(1, 1/2, …, 1/n)`.
pub fn harmonic_diagonal(n: usize) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_fn(n, |j, _| scalar(1.0 / (j + 1) as f64)))
}

/// The truncated shift `J_n` with ones on the superdiagonal.
pub fn truncated_shift(n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| if j == i + 1 { scalar(1.0) } else { scalar(0.0) })
}

/// The pair `M = span{e_{2j}}`, `N = span{e_{2j} + e_{2j+1}/j}` in `C^{2n}`
/// (`j = 1, …, n`, zero-based coordinates), as orthonormal bases.
pub fn graph_pair(n: usize) -> (CMat, CMat) {
    let mut m = CMat::zeros(2 * n, n);
    let mut nn = CMat::zeros(2 * n, n);
    for j in 1..=n {
        let w = 1.0 / j as f64;
        let norm = (1.0 + w * w).sqrt();
        m[(2 * (j - 1), j - 1)] = scalar(1.0);
        nn[(2 * (j - 1), j - 1)] = scalar(1.0 / norm);
        nn[(2 * (j - 1) + 1, j - 1)] = scalar(w / norm);
    }
    (m, nn)
}

/// `F = J U P` on `C^{2n}`: `P` projects onto `N^⊥`, `U` maps `N^⊥`
/// isometrically onto `M`, so `ker F = N` and `Im F = M`.
pub fn nonclosed_square_operator(n: usize) -> Result<AdjointableMap> {
    if n < 2 {
        return Err(Error::InvalidInput("nonclosed-square family needs n ≥ 2".into()));
    }
    let (m, nn) = graph_pair(n);
    // Orthonormal basis of N^⊥: the pairs e_{2j+1} − e_{2j}/j, normalized.
    let mut perp = CMat::zeros(2 * n, n);
    for j in 1..=n {
        let w = 1.0 / j as f64;
        let norm = (1.0 + w * w).sqrt();
        perp[(2 * (j - 1), j - 1)] = scalar(-w / norm);
        perp[(2 * (j - 1) + 1, j - 1)] = scalar(1.0 / norm);
    }
    debug_assert!((nn.adjoint() * &perp).norm() < 1e-14);
    let f = &m * perp.adjoint();
    AdjointableMap::from_reduced(&AlgebraShape::trivial(), 2 * n, 2 * n, vec![f])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Multiplier,
    LeftMultiplier,
    NonclosedSquare,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Multiplier, Family::LeftMultiplier, Family::NonclosedSquare];

    pub fn name(self) -> &'static str {
        match self {
            Family::Multiplier => "multiplier",
            Family::LeftMultiplier => "left-multiplier",
            Family::NonclosedSquare => "nonclosed-square",
        }
    }

    pub fn min_size(self) -> usize {
        match self {
            Family::NonclosedSquare => 2,
            _ => 1,
        }
    }

    pub fn operator(self, n: usize) -> Result<AdjointableMap> {
        match self {
            Family::Multiplier => multiplier_family(n),
            Family::LeftMultiplier => left_multiplier_family(&harmonic_diagonal(n)),
            Family::NonclosedSquare => nonclosed_square_operator(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::InvalidInput(format!("unknown family '{s}' (known: {})", known.join(", ")))
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRow {
    pub n: usize,
    pub gamma_f: f64,
    pub gamma_f2: f64,
    /// Restricted-projection margins of the closed-range criterion for `(F, F)`.
    pub margin_p: f64,
    pub margin_q: f64,
    /// Angle data for the pair `(Im F, ker F)`.
    pub c0: f64,
    pub delta: f64,
    pub sum_bounded_below: bool,
    /// `γ(F²) > τ` (or `F² = 0`).
    pub square_bounded_below: bool,
    /// The closed-sum verdict agrees with the `γ(F²)` verdict.
    pub bridge_agrees: bool,
    pub bound_violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Monotonicity {
    pub gamma_f_strictly_decreasing: bool,
    pub gamma_f2_strictly_decreasing: bool,
    pub margins_strictly_decreasing: bool,
    /// `min γ(F)` over the sizes.
    pub gamma_f_floor: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyDiagnostic {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub rows: Vec<FamilyRow>,
    pub monotonicity: Monotonicity,
    /// Least-squares slope of `log γ(F)` against `log n`.
    pub gamma_f_exponent: Option<f64>,
    /// Least-squares slope of `log γ(F²)` against `log n`.
    pub gamma_f2_exponent: Option<f64>,
}

fn row(family: Family, n: usize) -> Result<FamilyRow> {
    let f = family.operator(n)?;
    let f2 = f.compose(&f)?;
    let gamma_f = f.reduced_min_modulus();
    let gamma_f2 = f2.reduced_min_modulus();
    let b = bouldin_criterion(&f, &f, n as u64, PROBE_SAMPLES)?;
    let g = closed_sum_report(&f.image(), &f.kernel(), n as u64, PROBE_SAMPLES)?;
    let square_bounded_below = gamma_f2 > tolerances().bounded_below_tau;
    Ok(FamilyRow {
        n,
        gamma_f,
        gamma_f2,
        margin_p: b.margin_p,
        margin_q: b.margin_q,
        c0: g.c0,
        delta: g.delta,
        sum_bounded_below: g.bounded_below,
        square_bounded_below,
        bridge_agrees: g.bounded_below == square_bounded_below,
        bound_violations: g.violations,
    })
}

fn strictly_decreasing(values: impl Iterator<Item = f64>) -> bool {
    let v: Vec<f64> = values.collect();
    v.windows(2).all(|w| w[1] < w[0])
}

fn log_slope(points: impl Iterator<Item = (usize, f64)>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .filter(|(_, y)| y.is_finite() && *y > 0.0)
        .map(|(n, y)| ((n as f64).ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Evaluates a family at the given sizes (sorted, duplicates removed).
pub fn family_diagnostic(family: Family, sizes: &[usize]) -> Result<FamilyDiagnostic> {
    if sizes.is_empty() {
        return Err(Error::InvalidInput("no sizes given".into()));
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if let Some(&n) = sizes.iter().find(|&&n| n < family.min_size()) {
        return Err(Error::InvalidInput(format!(
            "size {n} is below the minimum {} for family {family}",
            family.min_size()
        )));
    }
    let rows = sizes
        .par_iter()
        .map(|&n| row(family, n))
        .collect::<Result<Vec<_>>>()?;
    let monotonicity = Monotonicity {
        gamma_f_strictly_decreasing: strictly_decreasing(rows.iter().map(|r| r.gamma_f)),
        gamma_f2_strictly_decreasing: strictly_decreasing(rows.iter().map(|r| r.gamma_f2)),
        margins_strictly_decreasing: strictly_decreasing(rows.iter().map(|r| r.margin_p))
            && strictly_decreasing(rows.iter().map(|r| r.margin_q)),
        gamma_f_floor: rows.iter().map(|r| r.gamma_f).fold(f64::INFINITY, f64::min),
    };
    Ok(FamilyDiagnostic {
        family,
        gamma_f_exponent: log_slope(rows.iter().map(|r| (r.n, r.gamma_f))),
        gamma_f2_exponent: log_slope(rows.iter().map(|r| (r.n, r.gamma_f2))),
        sizes,
        rows,
        monotonicity,
    })
}

/// The nonclosed-square operator together with its diagnostic at `n`.
pub fn nonclosed_square_family(n: usize) -> Result<(AdjointableMap, FamilyDiagnostic)> {
    let f = nonclosed_square_operator(n)?;
    Ok((f, family_diagnostic(Family::NonclosedSquare, &[n])?))
}
