//! Integer matrices commuting with `A`, and enumeration of commuting affine maps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{integer_kernel, IntegerMatrix};

use super::{commutes, AffineToralMap, ToralError};

fn flatten(m: &IntegerMatrix) -> Vec<BigInt> {
    m.entries().to_vec()
}

fn unflatten(n: usize, v: &[BigInt]) -> IntegerMatrix {
    IntegerMatrix::from_rows(v.chunks(n).map(<[BigInt]>::to_vec).collect())
        .expect("n*n entries")
}

/// ℤ-basis of `{B ∈ M_n(ℤ) : AB = BA}` in Hermite normal form.
///
/// When `entry_bound` is given, every integer matrix with entries in
/// `[-bound, bound]` is additionally brute-forced and checked to lie in the
/// lattice spanned by the basis. That sweep costs `(2·bound + 1)^(n²)`.
pub fn commutant_basis(
    a: &IntegerMatrix,
    entry_bound: Option<u32>,
) -> Result<Vec<IntegerMatrix>, ToralError> {
    let n = a.dim();
    // equation (i, j): Σ_k A_ik B_kj − B_ik A_kj = 0, unknown B_kl at k*n + l
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![BigInt::zero(); n * n];
            for k in 0..n {
                row[k * n + j] += &a[(i, k)];
                row[i * n + k] -= &a[(k, j)];
            }
            rows.push(row);
        }
    }
    let basis: Vec<IntegerMatrix> = integer_kernel(&rows, n * n)
        .iter()
        .map(|v| unflatten(n, v))
        .collect();
    if let Some(bound) = entry_bound {
        verify_by_enumeration(a, &basis, bound)?;
    }
    Ok(basis)
}

fn verify_by_enumeration(
    a: &IntegerMatrix,
    basis: &[IntegerMatrix],
    bound: u32,
) -> Result<(), ToralError> {
    let n = a.dim();
    let b = bound as i64;
    let mut entries = vec![-b; n * n];
    loop {
        let m = IntegerMatrix::from_rows(
            entries
                .chunks(n)
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )?;
        if a.mul(&m)? == m.mul(a)? && !in_lattice_span(basis, &m) {
            return Err(ToralError::IncompleteBasis(
                entries.iter().map(ToString::to_string).collect(),
            ));
        }
        let mut pos = 0;
        loop {
            if pos == entries.len() {
                return Ok(());
            }
            entries[pos] += 1;
            if entries[pos] <= b {
                break;
            }
            entries[pos] = -b;
            pos += 1;
        }
    }
}

/// Whether `m` is an integer combination of an HNF basis (as returned by [`commutant_basis`]).
pub fn in_lattice_span(basis: &[IntegerMatrix], m: &IntegerMatrix) -> bool {
    let mut v = flatten(m);
    for b in basis {
        let row = flatten(b);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let (q, r) = v[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(&row) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// `Σ coeffs[i] · basis[i]`.
pub fn linear_combination(basis: &[IntegerMatrix], coeffs: &[i64]) -> IntegerMatrix {
    let n = basis[0].dim();
    basis
        .iter()
        .zip(coeffs)
        .fold(IntegerMatrix::zeros(n), |acc, (b, &c)| {
            acc.add(&b.scale(&BigInt::from(c))).expect("same dimension")
        })
}

/// Every affine map `(Σ cᵢ Bᵢ, t)` commuting with `A`, for coefficients in
/// `coeff_range` over the commutant basis and translations drawn coordinatewise
/// from `translation_values`. Ordered by coefficient vector, then translation.
pub fn commuting_affine_maps(
    a: &IntegerMatrix,
    basis: &[IntegerMatrix],
    coeff_range: std::ops::RangeInclusive<i64>,
    translation_values: &[BigRational],
) -> Result<Vec<AffineToralMap>, ToralError> {
    let n = a.dim();
    let lo = *coeff_range.start();
    let hi = *coeff_range.end();
    // translations that commute depend only on A
    let mut translations = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let c: Vec<BigRational> = idx.iter().map(|&i| translation_values[i].clone()).collect();
        let probe = AffineToralMap::new(IntegerMatrix::identity(n), c.clone())?;
        if commutes(&probe, a)? {
            translations.push(c);
        }
        if !advance(&mut idx, translation_values.len()) {
            break;
        }
    }
    let mut out = Vec::new();
    let mut coeffs = vec![lo; basis.len()];
    loop {
        let b = linear_combination(basis, &coeffs);
        for c in &translations {
            out.push(AffineToralMap::new(b.clone(), c.clone())?);
        }
        let mut pos = basis.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] <= hi {
                break;
            }
            coeffs[pos] = lo;
        }
    }
}

fn advance(idx: &mut [usize], radix: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < radix {
            return true;
        }
        idx[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> IntegerMatrix {
        IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]])
    }

    fn lattice_equal(a: &[IntegerMatrix], b: &[IntegerMatrix]) -> bool {
        a.len() == b.len()
            && a.iter().all(|m| in_lattice_span(b, m))
            && b.iter().all(|m| in_lattice_span(a, m))
    }

    #[test]
    fn cat_map_commutant_is_span_of_identity_and_itself() {
        let basis = commutant_basis(&cat(), Some(3)).unwrap();
        let expected =
            crate::algebra::hermite_normal_form(vec![flatten(&IntegerMatrix::identity(2)), flatten(&cat())])
                .iter()
                .map(|v| unflatten(2, v))
                .collect::<Vec<_>>();
        assert!(lattice_equal(&basis, &expected));
        assert!(in_lattice_span(&basis, &cat()));
        assert!(in_lattice_span(&basis, &IntegerMatrix::identity(2)));
        for b in &basis {
            assert_eq!(cat().mul(b).unwrap(), b.mul(&cat()).unwrap());
        }
    }

    #[test]
    fn identity_commutant_is_everything() {
        let basis = commutant_basis(&IntegerMatrix::identity(2), Some(1)).unwrap();
        assert_eq!(basis.len(), 4);
    }

    #[test]
    fn block_diagonal_commutant() {
        // cat ⊕ cat² have distinct spectra, so the commutant is block diagonal
        let a = cat().direct_sum(&cat().pow(2));
        let basis = commutant_basis(&a, None).unwrap();
        assert_eq!(basis.len(), 4);
        for b in &basis {
            for i in 0..2 {
                for j in 2..4 {
                    assert!(b[(i, j)].is_zero() && b[(j, i)].is_zero());
                }
            }
        }
        // brute force: no nonzero off-diagonal-block pattern with entries in [-1, 1] commutes
        let off: Vec<(usize, usize)> = (0..2)
            .flat_map(|i| (2..4).flat_map(move |j| [(i, j), (j, i)]))
            .collect();
        let mut idx = vec![0usize; off.len()];
        loop {
            let mut m = IntegerMatrix::zeros(4);
            for (&(i, j), &v) in off.iter().zip(&idx) {
                m[(i, j)] = BigInt::from(v as i64 - 1);
            }
            if !m.is_zero() {
                assert_ne!(a.mul(&m).unwrap(), m.mul(&a).unwrap());
            }
            if !advance(&mut idx, 3) {
                break;
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let basis = commutant_basis(&cat(), None).unwrap();
        let vals = crate::toral::rational_vec(&[(0, 1), (1, 2), (1, 3)]);
        let maps = commuting_affine_maps(&cat(), &basis, -1..=1, &vals).unwrap();
        // (A - I) = [[1,1],[1,0]] is unimodular, so only c = 0 commutes
        assert_eq!(maps.len(), 9);
        assert!(maps.iter().all(|t| commutes(t, &cat()).unwrap()));
    }
}
