//! Numeric homoclinic points of hyperbolic toral automorphisms.
//!
//! For hyperbolic `A`, the points `h_k = P_s·k mod ℤⁿ` (`k ∈ ℤⁿ`) are exactly the
//! points homoclinic to `0̄`: forward orbits follow `A^n P_s k → 0` and backward
//! orbits follow `A^{-n}(P_s k − k) = −A^{-n} P_u k → 0`.

mod oracle;
mod split;

pub use oracle::{pre_injectivity_oracle, OracleOutcome};
pub use split::{numeric_roots, stable_splitting, SpectralSplit, DEFAULT_PRECISION};

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, IntegerMatrix};
use crate::toral::ToralError;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_HORIZON: u32 = 30;

/// Most lattice points any single enumeration will visit.
pub const MAX_LATTICE_POINTS: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomoclinicError {
    #[error(transparent)]
    Toral(#[from] ToralError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("matrix is not hyperbolic")]
    NotHyperbolic,
    #[error("endomorphism does not commute with the base matrix")]
    NotCommuting,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("numeric roots of {0} disagree with the exact disk counts")]
    RootIsolation(String),
    #[error("projection residual {achieved:e} exceeds requested precision {requested:e}")]
    PrecisionUnattainable { achieved: f64, requested: f64 },
    #[error("float error bound {estimate:e} exceeds tolerance {tol:e} at horizon {horizon}; reduce the horizon")]
    FloatGrowth { horizon: u32, estimate: f64, tol: f64 },
    #[error("enumeration of {points} lattice points exceeds the limit")]
    SearchTooLarge { points: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl HomoclinicError {
    /// Bounds and budgets, as opposed to malformed input or failed preconditions.
    pub fn is_resource_limit(&self) -> bool {
        match self {
            HomoclinicError::PrecisionUnattainable { .. }
            | HomoclinicError::FloatGrowth { .. }
            | HomoclinicError::SearchTooLarge { .. } => true,
            HomoclinicError::Algebra(e) => e.is_resource_limit(),
            HomoclinicError::Toral(ToralError::Algebra(e)) => e.is_resource_limit(),
            _ => false,
        }
    }
}

/// Homoclinic point `h_k` with the real lift `P_s·k` it was reduced from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomoclinicSample {
    pub k: Vec<i64>,
    pub point: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lift: Vec<f64>,
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// ℓ∞ distance from `x` to `ℤⁿ`.
pub fn torus_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| (v - v.round()).abs()).fold(0.0, f64::max)
}

fn sup_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

fn check_len(split: &SpectralSplit, len: usize) -> Result<(), HomoclinicError> {
    if split.dim() != len {
        return Err(HomoclinicError::DimensionMismatch { expected: split.dim(), found: len });
    }
    Ok(())
}

pub(crate) fn apply(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(v)).iter().copied().collect()
}

/// `h_k = P_s·k mod ℤⁿ`.
pub fn homoclinic_point(split: &SpectralSplit, k: &[i64]) -> Result<HomoclinicSample, HomoclinicError> {
    check_len(split, k.len())?;
    let kf: Vec<f64> = k.iter().map(|&x| x as f64).collect();
    let lift = apply(split.stable(), &kf);
    let point = if k.iter().all(|&x| x == 0) {
        vec![0.0; k.len()]
    } else {
        lift.iter().map(|&x| frac(x)).collect()
    };
    Ok(HomoclinicSample { k: k.to_vec(), point, lift })
}

fn float_matrix(m: &IntegerMatrix) -> DMatrix<f64> {
    m.to_f64()
}

fn exact_inf_norm(m: &IntegerMatrix) -> f64 {
    m.rows()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `max_{0≤n≤horizon} ‖(proj·M)^n proj‖ / rateⁿ`, re-projecting every step so
/// rounding in the complementary direction is not amplified.
fn growth_constant(m: &DMatrix<f64>, proj: &DMatrix<f64>, rate: f64, horizon: u32) -> f64 {
    let mut q = proj.clone();
    let mut best = split::inf_norm(&q);
    for n in 1..=horizon {
        q = proj * (m * &q);
        best = best.max(split::inf_norm(&q) / rate.powi(n as i32));
    }
    best
}

/// A-priori bound on the rounding error of `horizon` mod-1 iterations with `m`,
/// started from a lift carrying `initial` absolute error.
fn iteration_error_bound(m: &IntegerMatrix, horizon: u32, initial: f64) -> f64 {
    let n = m.dim() as f64;
    let unit = f64::EPSILON / 2.0;
    let step = n * unit * exact_inf_norm(m);
    let mut power = IntegerMatrix::identity(m.dim());
    let mut powers = Vec::with_capacity(horizon as usize + 1);
    for _ in 0..=horizon {
        powers.push(exact_inf_norm(&power));
        power = m.mul(&power).expect("same dimension");
    }
    let accumulated: f64 = powers[..horizon as usize].iter().sum::<f64>() * step;
    powers[horizon as usize] * initial + accumulated
}

/// Checks `d(f_A^n(h), 0̄) ≤ C·λ^{|n|} + tol` for `|n| ≤ horizon`.
///
/// `λ` is the split's contraction rate and `C` is fitted at `n = 0` from the
/// sample's decomposition: the stable part `lift` and the unstable part
/// `lift − k`, each scaled by the largest observed `‖A^{±n} P‖/λⁿ`. Orbits are
/// computed by the integer matrix (forward) and its exact inverse (backward),
/// reducing mod 1 after every step.
pub fn verify_decay(
    split: &SpectralSplit,
    sample: &HomoclinicSample,
    horizon: u32,
    tol: f64,
) -> Result<bool, HomoclinicError> {
    if horizon == 0 {
        return Err(HomoclinicError::InvalidArgument("horizon must be at least 1".into()));
    }
    check_len(split, sample.k.len())?;
    check_len(split, sample.point.len())?;
    let lift = if sample.lift.is_empty() { &sample.point } else { &sample.lift };
    check_len(split, lift.len())?;
    let rate = split.contraction_rate();
    let fwd = float_matrix(split.matrix());
    let back = float_matrix(split.inverse());
    let kf: Vec<f64> = sample.k.iter().map(|&x| x as f64).collect();
    let unstable_part: Vec<f64> = lift.iter().zip(&kf).map(|(l, k)| l - k).collect();
    let c_fwd = growth_constant(&fwd, split.stable(), rate, horizon) * sup_norm(lift);
    let c_back = growth_constant(&back, split.unstable(), rate, horizon) * sup_norm(&unstable_part);
    let fit = c_fwd.max(c_back);

    let unit = f64::EPSILON / 2.0;
    // rounding of P_s·k; the split's identity residual measures product defects, not error in P_s
    let dim = split.dim() as f64;
    let initial = 2.0 * dim * unit * split::inf_norm(split.stable()) * sup_norm(&kf).max(1.0) + unit;
    let err = iteration_error_bound(split.matrix(), horizon, initial)
        .max(iteration_error_bound(split.inverse(), horizon, initial));
    if !(err <= tol) {
        return Err(HomoclinicError::FloatGrowth { horizon, estimate: err, tol });
    }

    for (m, start) in [(&fwd, lift.clone()), (&back, lift.clone())] {
        let mut x: Vec<f64> = start.iter().map(|&v| frac(v)).collect();
        for n in 0..=horizon {
            if n > 0 {
                x = apply(m, &x).into_iter().map(frac).collect();
            }
            if torus_norm(&x) > fit * rate.powi(n as i32) + tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Odometer over `[-bound, bound]^dim`.
pub(crate) struct LatticeBox {
    pub current: Vec<i64>,
    bound: i64,
}

impl LatticeBox {
    pub fn new(dim: usize, bound: i64) -> Self {
        Self { current: vec![-bound; dim], bound }
    }

    /// Advances and returns the coordinate that was incremented, resetting lower ones.
    pub fn step(&mut self) -> Option<usize> {
        for i in 0..self.current.len() {
            if self.current[i] < self.bound {
                self.current[i] += 1;
                return Some(i);
            }
            self.current[i] = -self.bound;
        }
        None
    }
}

pub(crate) fn box_size(dim: usize, bound: u32) -> Result<u64, HomoclinicError> {
    let side = 2 * bound as u128 + 1;
    let points = side.checked_pow(dim as u32).unwrap_or(u128::MAX);
    if points > MAX_LATTICE_POINTS as u128 {
        return Err(HomoclinicError::SearchTooLarge { points });
    }
    Ok(points as u64)
}

/// Grid-coverage report for one `(K, grid)` pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Coverage {
    #[serde(rename = "K")]
    pub bound: u32,
    pub grid: u32,
    pub coverage: f64,
}

/// Fraction of the `gridⁿ` cells of `𝕋ⁿ` hit by some `h_k` with `‖k‖∞ ≤ bound`.
pub fn density_coverage(split: &SpectralSplit, bound: u32, grid: u32) -> Result<Coverage, HomoclinicError> {
    if grid == 0 {
        return Err(HomoclinicError::InvalidArgument("grid must be positive".into()));
    }
    let n = split.dim();
    let cells = (grid as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if cells > MAX_LATTICE_POINTS as u128 {
        return Err(HomoclinicError::SearchTooLarge { points: cells });
    }
    box_size(n, bound)?;
    let ps = split.stable();
    let mut hit = vec![false; cells as usize];
    let mut lattice = LatticeBox::new(n, bound as i64);
    let start: Vec<f64> = lattice.current.iter().map(|&x| x as f64).collect();
    let mut lift = apply(ps, &start);
    loop {
        let mut cell = 0usize;
        for &v in &lift {
            let c = ((frac(v) * grid as f64) as usize).min(grid as usize - 1);
            cell = cell * grid as usize + c;
        }
        hit[cell] = true;
        let Some(i) = lattice.step() else { break };
        // recompute from scratch whenever a coordinate wraps, to bound drift
        if i == 0 {
            for (r, l) in lift.iter_mut().enumerate() {
                *l += ps[(r, 0)];
            }
        } else {
            let kf: Vec<f64> = lattice.current.iter().map(|&x| x as f64).collect();
            lift = apply(ps, &kf);
        }
    }
    let covered = hit.iter().filter(|&&h| h).count();
    Ok(Coverage { bound, grid, coverage: covered as f64 / cells as f64 })
}
