//! Bounded numeric search for two homoclinic points identified by an endomorphism.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::toral::{commutes, AffineToralMap};

use super::{apply, box_size, frac, torus_norm, HomoclinicError, LatticeBox, SpectralSplit};

/// Result of [`pre_injectivity_oracle`]. Heuristic: a bounded search, never a proof.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleOutcome {
    pub pre_injective: bool,
    /// Nonzero `k` with `τ(h_k) = τ(0̄)` but `h_k ≠ 0̄`, within tolerance.
    pub witness: Option<Vec<i64>>,
    #[serde(rename = "K")]
    pub bound: u32,
    pub tol: f64,
}

/// Cells of width `width` overlapping the wrap-around interval `[t − tol, t + tol]` of `[0, 1)`.
fn overlapping_cells(t: f64, tol: f64, width: f64) -> Vec<i64> {
    let mut cells = Vec::new();
    for shift in [-1.0, 0.0, 1.0] {
        let lo = (t + shift - tol).max(0.0);
        let hi = (t + shift + tol).min(1.0 - f64::EPSILON);
        if lo <= hi {
            cells.extend((lo / width).floor() as i64..=(hi / width).floor() as i64);
        }
    }
    cells.sort_unstable();
    cells.dedup();
    cells
}

fn close_mod_one(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| {
        let d = x - y;
        (d - d.round()).abs() <= tol
    })
}

/// Searches `0 < ‖k‖∞ ≤ bound` for `B·P_s·k ≡ 0` (within `tol`) while `P_s·k ≢ 0`.
///
/// `τ` is affine, so `τ(h_k) = τ(0̄)` exactly when `B·h_k = 0̄`; the translation
/// drops out. The box is split into two coordinate halves and matched through
/// a hash of tolerance-sized cells, which visits the same set of `k` as a plain
/// sweep but at square-root cost.
pub fn pre_injectivity_oracle(
    split: &SpectralSplit,
    tau: &AffineToralMap,
    bound: u32,
    tol: f64,
) -> Result<OracleOutcome, HomoclinicError> {
    let n = split.dim();
    if tau.dim() != n {
        return Err(HomoclinicError::DimensionMismatch { expected: n, found: tau.dim() });
    }
    if !(tol > 0.0 && tol < 0.25) {
        return Err(HomoclinicError::InvalidArgument(format!("tol must lie in (0, 1/4), got {tol}")));
    }
    if !commutes(tau, split.matrix())? {
        return Err(HomoclinicError::NotCommuting);
    }
    box_size(n, bound)?;
    let image = tau.matrix().to_f64() * split.stable();
    let head = n / 2;
    let left = image.columns(0, head).into_owned();
    let right = image.columns(head, n - head).into_owned();
    let width = 2.0 * tol;

    let mut table: HashMap<Vec<i64>, Vec<(Vec<i64>, Vec<f64>)>> = HashMap::new();
    let mut heads = LatticeBox::new(head, bound as i64);
    loop {
        let values = reduced(&left, &heads.current);
        let key = values.iter().map(|v| (v / width).floor() as i64).collect();
        table.entry(key).or_default().push((heads.current.clone(), values));
        if heads.step().is_none() {
            break;
        }
    }

    let mut tails = LatticeBox::new(n - head, bound as i64);
    loop {
        let target: Vec<f64> = reduced(&right, &tails.current).iter().map(|v| frac(-v)).collect();
        let per_axis: Vec<Vec<i64>> = target.iter().map(|&t| overlapping_cells(t, tol, width)).collect();
        let mut pick = vec![0usize; n];
        'cells: loop {
            let key: Vec<i64> = per_axis.iter().zip(&pick).map(|(c, &i)| c[i]).collect();
            if let Some(entries) = table.get(&key) {
                for (head_k, values) in entries {
                    if !close_mod_one(values, &target, tol) {
                        continue;
                    }
                    let k: Vec<i64> = head_k.iter().chain(&tails.current).copied().collect();
                    if k.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let kf: Vec<f64> = k.iter().map(|&x| x as f64).collect();
                    if torus_norm(&apply(split.stable(), &kf)) > tol {
                        return Ok(OracleOutcome { pre_injective: false, witness: Some(k), bound, tol });
                    }
                }
            }
            for axis in 0..n {
                pick[axis] += 1;
                if pick[axis] < per_axis[axis].len() {
                    continue 'cells;
                }
                pick[axis] = 0;
            }
            break;
        }
        if tails.step().is_none() {
            break;
        }
    }
    Ok(OracleOutcome { pre_injective: true, witness: None, bound, tol })
}

fn reduced(columns: &DMatrix<f64>, k: &[i64]) -> Vec<f64> {
    if k.is_empty() {
        return vec![0.0; columns.nrows()];
    }
    let kf: Vec<f64> = k.iter().map(|&x| x as f64).collect();
    apply(columns, &kf).into_iter().map(frac).collect()
}
