//! Stable/unstable projections of ℝⁿ for a hyperbolic integer matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{disk_root_counts, factor_rational, IntegerMatrix, IntegerPolynomial, DEFAULT_DEGREE_BOUND};
use crate::toral::classify_matrix;

use super::HomoclinicError;

/// Projections onto `E_s` along `E_u` and onto `E_u` along `E_s`.
#[derive(Clone, Debug)]
pub struct SpectralSplit {
    matrix: IntegerMatrix,
    inverse: IntegerMatrix,
    stable: DMatrix<f64>,
    unstable: DMatrix<f64>,
    stable_dim: usize,
    contraction_rate: f64,
    precision: f64,
    residual: f64,
}

pub const DEFAULT_PRECISION: f64 = 1e-9;

/// Infinity operator norm (max row sum).
pub(crate) fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn horner(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

/// Complex roots of a square-free real polynomial: companion eigenvalues, then
/// a few Newton steps on the polynomial itself.
pub fn numeric_roots(p: &IntegerPolynomial) -> Result<Vec<Complex64>, HomoclinicError> {
    let coeffs = p.to_f64();
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -monic[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut roots: Vec<Complex64> = companion.complex_eigenvalues().iter().copied().collect();
    for z in roots.iter_mut() {
        for _ in 0..8 {
            let (v, dv) = horner(&monic, *z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            *z -= step;
            if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
                break;
            }
        }
    }
    if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(HomoclinicError::RootIsolation(p.to_string()));
    }
    Ok(roots)
}

/// Real coefficients of `∏ (x − r)` over a conjugation-closed root list.
fn real_poly_from_roots(roots: &[Complex64]) -> Vec<f64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c.iter().map(|z| z.re).collect()
}

fn eval_matrix_poly(p: &[f64], a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut acc = DMatrix::zeros(n, n);
    for &c in p.iter().rev() {
        acc = &acc * a + DMatrix::identity(n, n) * c;
    }
    acc
}

impl SpectralSplit {
    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    /// Exact inverse of the base matrix (det ±1).
    pub fn inverse(&self) -> &IntegerMatrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn stable(&self) -> &DMatrix<f64> {
        &self.stable
    }

    pub fn unstable(&self) -> &DMatrix<f64> {
        &self.unstable
    }

    pub fn stable_dim(&self) -> usize {
        self.stable_dim
    }

    /// Rate `λ < 1` with `‖A^n P_s‖` and `‖A^{-n} P_u‖` eventually below `C·λⁿ`.
    pub fn contraction_rate(&self) -> f64 {
        self.contraction_rate
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    /// Largest of the projection residuals measured at construction.
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

fn residuals(a: &DMatrix<f64>, ps: &DMatrix<f64>, pu: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let sum = inf_norm(&(ps + pu - DMatrix::<f64>::identity(n, n)));
    let idem = inf_norm(&(ps * ps - ps));
    let cross = inf_norm(&(ps * pu));
    let inv = inf_norm(&(a * ps - ps * a));
    sum.max(idem).max(cross).max(inv)
}

/// Splitting `ℝⁿ = E_s ⊕ E_u` for a hyperbolic matrix.
///
/// Roots of every exact irreducible factor of `χ_A` are located numerically and
/// their inside/outside tally is checked against the exact disk counts. With
/// `p_s`, `p_u` the real polynomials over the inside and outside roots,
/// `P_s = (p_u(A) + p_s(A))⁻¹ · p_u(A)`.
pub fn stable_splitting(a: &IntegerMatrix, precision: f64) -> Result<SpectralSplit, HomoclinicError> {
    if !(precision > 0.0) {
        return Err(HomoclinicError::InvalidArgument(format!("precision must be positive, got {precision}")));
    }
    let class = classify_matrix(a)?;
    if !class.is_hyperbolic {
        return Err(HomoclinicError::NotHyperbolic);
    }
    let inverse = a.inverse_integer().ok_or(HomoclinicError::NotHyperbolic)?;
    let chi = a.char_poly();
    let factors = factor_rational(&chi, DEFAULT_DEGREE_BOUND.max(a.dim()))?;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for f in &factors {
        let exact = disk_root_counts(&f.factor)?;
        let roots = numeric_roots(&f.factor)?;
        let (ins, outs): (Vec<Complex64>, Vec<Complex64>) = roots.iter().partition(|z| z.norm() < 1.0);
        if ins.len() != exact.inside || outs.len() != exact.outside {
            return Err(HomoclinicError::RootIsolation(f.factor.to_string()));
        }
        for _ in 0..f.multiplicity {
            inside.extend_from_slice(&ins);
            outside.extend_from_slice(&outs);
        }
    }
    let rate_in = inside.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let rate_out = outside.iter().map(|z| 1.0 / z.norm()).fold(0.0, f64::max);
    let worst = rate_in.max(rate_out);
    let contraction_rate = worst + ((1.0 - worst) / 2.0).min(1e-3);

    let af = a.to_f64();
    let n = a.dim();
    let s = eval_matrix_poly(&real_poly_from_roots(&outside), &af);
    let u = eval_matrix_poly(&real_poly_from_roots(&inside), &af);
    let sum = &s + &u;
    let lu = sum.lu();
    let mut ps = lu
        .solve(&s)
        .ok_or(HomoclinicError::PrecisionUnattainable { achieved: f64::INFINITY, requested: precision })?;
    // Newton–Schulz style polish toward an exact idempotent
    for _ in 0..3 {
        let p2 = &ps * &ps;
        ps = &p2 * 3.0 - &p2 * &ps * 2.0;
    }
    let pu = DMatrix::<f64>::identity(n, n) - &ps;
    let residual = residuals(&af, &ps, &pu);
    if !(residual <= precision) {
        return Err(HomoclinicError::PrecisionUnattainable { achieved: residual, requested: precision });
    }
    let stable_dim = ps.trace().round() as usize;
    if stable_dim != inside.len() {
        return Err(HomoclinicError::PrecisionUnattainable { achieved: residual, requested: precision });
    }
    Ok(SpectralSplit {
        matrix: a.clone(),
        inverse,
        stable: ps,
        unstable: pu,
        stable_dim,
        contraction_rate,
        precision,
        residual,
    })
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl Serialize for SpectralSplit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            n: usize,
            #[serde(rename = "P_s")]
            stable: Vec<Vec<f64>>,
            #[serde(rename = "P_u")]
            unstable: Vec<Vec<f64>>,
            stable_dim: usize,
            contraction_rate: f64,
            precision: f64,
            residual: f64,
        }
        Json {
            n: self.dim(),
            stable: rows(&self.stable),
            unstable: rows(&self.unstable),
            stable_dim: self.stable_dim,
            contraction_rate: self.contraction_rate,
            precision: self.precision,
            residual: self.residual,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> IntegerMatrix {
        IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]])
    }

    fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    #[test]
    fn cat_map_matches_closed_form_eigenline() {
        let split = stable_splitting(&cat(), 1e-9).unwrap();
        // A symmetric: P_s is the orthogonal projection onto the stable eigenline
        let lambda = (3.0 - 5f64.sqrt()) / 2.0;
        let v = [1.0, lambda - 2.0];
        assert!((2.0 * v[0] + v[1] - lambda * v[0]).abs() < 1e-14);
        let norm2 = v[0] * v[0] + v[1] * v[1];
        let expected = DMatrix::from_fn(2, 2, |i, j| v[i] * v[j] / norm2);
        assert!(max_abs_diff(split.stable(), &expected) < 1e-12);
        assert!(split.residual() < 1e-9);
        assert_eq!(split.stable_dim(), 1);
        assert!(split.contraction_rate() > lambda && split.contraction_rate() < lambda + 2e-3);
    }

    #[test]
    fn inverse_swaps_projections() {
        let a = cat();
        let fwd = stable_splitting(&a, 1e-9).unwrap();
        let back = stable_splitting(&a.inverse_integer().unwrap(), 1e-9).unwrap();
        assert!(max_abs_diff(fwd.stable(), back.unstable()) < 1e-12);
        assert!(max_abs_diff(fwd.unstable(), back.stable()) < 1e-12);
    }

    #[test]
    fn block_diagonal_input_gives_block_projections() {
        let a = cat().direct_sum(&cat());
        let split = stable_splitting(&a, 1e-9).unwrap();
        let single = stable_splitting(&cat(), 1e-9).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i / 2 == j / 2 { single.stable()[(i % 2, j % 2)] } else { 0.0 };
                assert!((split.stable()[(i, j)] - expected).abs() < 1e-12);
            }
        }
        assert_eq!(split.stable_dim(), 2);
    }

    #[test]
    fn cubic_with_complex_stable_pair() {
        // x^3 - x - 1: one real root outside, a complex pair inside
        let p = IntegerPolynomial::from_i64(&[-1, -1, 0, 1]);
        let a = IntegerMatrix::companion(&p).unwrap();
        let split = stable_splitting(&a, 1e-9).unwrap();
        assert_eq!(split.stable_dim(), 2);
        let rho = 1.324717957244746f64;
        assert!((split.contraction_rate() - (1.0 / rho.sqrt()).max(1.0 / rho)).abs() < 2e-3);
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(matches!(
            stable_splitting(&IntegerMatrix::identity(2), 1e-9),
            Err(HomoclinicError::NotHyperbolic)
        ));
        let shear = IntegerMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(matches!(stable_splitting(&shear, 1e-9), Err(HomoclinicError::NotHyperbolic)));
    }

    #[test]
    fn numeric_roots_of_quadratic() {
        let roots = numeric_roots(&IntegerPolynomial::from_i64(&[1, -3, 1])).unwrap();
        let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((re[1] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }
}
