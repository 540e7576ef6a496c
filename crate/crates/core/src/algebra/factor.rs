//! Factorization over ℚ for small degrees: square-free split, rational-root test,
//! then Kronecker's interpolation search for higher-degree factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{square_free_decomposition, IntegerPolynomial, RationalPolynomial};
use super::AlgebraError;

pub const DEFAULT_DEGREE_BOUND: usize = 8;

/// Upper bound on Kronecker candidate interpolations per factor degree.
const CANDIDATE_BUDGET: u64 = 2_000_000;

/// Irreducible factor of a polynomial together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Factor {
    pub factor: IntegerPolynomial,
    pub multiplicity: usize,
}

/// Primitive irreducible factors over ℚ with multiplicities, sorted by
/// `(degree, coefficients)`. Degrees above `degree_bound` are refused.
pub fn factor_rational(
    p: &IntegerPolynomial,
    degree_bound: usize,
) -> Result<Vec<Factor>, AlgebraError> {
    let deg = p.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if deg > degree_bound {
        return Err(AlgebraError::UnsupportedDegree {
            degree: deg,
            bound: degree_bound,
        });
    }
    let mut out: Vec<Factor> = Vec::new();
    for (s, mult) in square_free_decomposition(&p.to_rational())? {
        for f in factor_square_free(s.to_primitive_integer())? {
            out.push(Factor {
                factor: f,
                multiplicity: mult,
            });
        }
    }
    out.sort_by(|a, b| {
        a.factor
            .degree()
            .cmp(&b.factor.degree())
            .then_with(|| a.factor.coeffs().cmp(b.factor.coeffs()))
    });
    Ok(out)
}

/// Factors a primitive square-free polynomial into primitive irreducibles.
fn factor_square_free(p: IntegerPolynomial) -> Result<Vec<IntegerPolynomial>, AlgebraError> {
    let mut out = Vec::new();
    let mut rest = p;
    // x itself
    while rest.degree().unwrap_or(0) >= 1 && rest.coeff(0).is_zero() {
        out.push(IntegerPolynomial::from_i64(&[0, 1]));
        rest = IntegerPolynomial::new(rest.coeffs()[1..].to_vec());
    }
    for lin in rational_root_factors(&rest)? {
        rest = rest.div_exact(&lin).expect("root factor divides");
        out.push(lin);
    }
    let mut pending = vec![rest];
    while let Some(q) = pending.pop() {
        let d = q.degree().unwrap_or(0);
        if d == 0 {
            continue;
        }
        if d <= 3 {
            // no linear factor left, so degree ≤ 3 is irreducible
            out.push(q.primitive_part());
            continue;
        }
        match (2..=d / 2).find_map(|k| kronecker_factor(&q, k).transpose()) {
            Some(g) => {
                let g = g?;
                let h = q.div_exact(&g).expect("found factor divides");
                pending.push(g);
                pending.push(h.primitive_part());
            }
            None => out.push(q.primitive_part()),
        }
    }
    Ok(out)
}

fn small_divisors(v: &BigInt) -> Option<Vec<u64>> {
    let v = v.abs().to_u64()?;
    if v == 0 || v > 1_000_000_000_000 {
        return None;
    }
    let mut ds = Vec::new();
    let mut i = 1;
    while i * i <= v {
        if v % i == 0 {
            ds.push(i);
            if i != v / i {
                ds.push(v / i);
            }
        }
        i += 1;
    }
    ds.sort_unstable();
    Some(ds)
}

/// Linear factors `b·x − a` from the rational-root test, one per distinct root.
fn rational_root_factors(p: &IntegerPolynomial) -> Result<Vec<IntegerPolynomial>, AlgebraError> {
    let Some(d) = p.degree().filter(|&d| d >= 1) else {
        return Ok(Vec::new());
    };
    let c0 = p.coeff(0);
    let lead = p.coeff(d);
    let (Some(num), Some(den)) = (small_divisors(&c0), small_divisors(&lead)) else {
        return Err(AlgebraError::FactorSearchBudget);
    };
    let rp = p.to_rational();
    let mut found: Vec<BigRational> = Vec::new();
    for &a in &num {
        for &b in &den {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(sign) * BigInt::from(a), BigInt::from(b));
                if !found.contains(&r) && rp.eval(&r).is_zero() {
                    found.push(r);
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|r| IntegerPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]).primitive_part())
        .collect())
}

/// Lagrange interpolation through `(xs[i], ys[i])` over ℚ.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> RationalPolynomial {
    let mut acc = RationalPolynomial::zero();
    for (i, (&xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = RationalPolynomial::one();
        let mut denom = BigInt::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &RationalPolynomial::from_i64(&[-xj, 1]);
                denom *= BigInt::from(xi - xj);
            }
        }
        acc = &acc + &basis.scale(&BigRational::new(yi.clone(), denom));
    }
    acc
}

/// Searches a factor of exact degree `k` by Kronecker's method.
fn kronecker_factor(
    p: &IntegerPolynomial,
    k: usize,
) -> Result<Option<IntegerPolynomial>, AlgebraError> {
    // choose the k+1 evaluation points with the fewest divisor choices
    let mut pool: Vec<(i64, BigInt, Vec<u64>)> = (-12i64..=12)
        .filter_map(|x| {
            let v = p.eval_i64(x);
            small_divisors(&v).map(|ds| (x, v, ds))
        })
        .collect();
    if pool.len() < k + 1 {
        return Err(AlgebraError::FactorSearchBudget);
    }
    pool.sort_by_key(|(x, _, ds)| (ds.len(), x.abs()));
    pool.truncate(k + 1);
    let total: u64 = pool
        .iter()
        .enumerate()
        .map(|(i, (_, _, ds))| ds.len() as u64 * if i == 0 { 1 } else { 2 })
        .product();
    if total > CANDIDATE_BUDGET {
        return Err(AlgebraError::FactorSearchBudget);
    }
    let xs: Vec<i64> = pool.iter().map(|(x, _, _)| *x).collect();
    let lead = p.leading().unwrap().clone();
    let rp = p.to_rational();
    // odometer over signed divisor choices; the first value is kept positive
    let choices: Vec<Vec<BigInt>> = pool
        .iter()
        .enumerate()
        .map(|(i, (_, _, ds))| {
            let mut c: Vec<BigInt> = ds.iter().map(|&d| BigInt::from(d)).collect();
            if i > 0 {
                c.extend(ds.iter().map(|&d| -BigInt::from(d)));
            }
            c
        })
        .collect();
    let mut idx = vec![0usize; k + 1];
    loop {
        let ys: Vec<BigInt> = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        let g = interpolate(&xs, &ys);
        if g.degree() == Some(k) {
            if let Some(gi) = g.to_integer() {
                let gl = gi.leading().unwrap();
                if (&lead % gl).is_zero() && rp.rem(&gi.to_rational())?.is_zero() {
                    return Ok(Some(gi.primitive_part()));
                }
            }
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Product of factors raised to their multiplicities.
pub fn expand_factors(factors: &[Factor]) -> IntegerPolynomial {
    factors
        .iter()
        .fold(IntegerPolynomial::one(), |acc, f| &acc * &f.factor.pow(f.multiplicity))
}

/// `true` when `p` has exactly one irreducible factor over ℚ, with multiplicity one.
pub fn is_irreducible(p: &IntegerPolynomial, degree_bound: usize) -> Result<bool, AlgebraError> {
    let f = factor_rational(p, degree_bound)?;
    Ok(f.len() == 1 && f[0].multiplicity == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    fn f(c: &[i64], m: usize) -> Factor {
        Factor {
            factor: ip(c),
            multiplicity: m,
        }
    }

    #[test]
    fn examples() {
        assert_eq!(
            factor_rational(&ip(&[-1, 0, 0, 0, 1]), 8).unwrap(),
            vec![f(&[-1, 1], 1), f(&[1, 1], 1), f(&[1, 0, 1], 1)]
        );
        assert_eq!(
            factor_rational(&ip(&[1, -2, 1, -2, 1]), 8).unwrap(),
            vec![f(&[1, -2, 1, -2, 1], 1)]
        );
        assert_eq!(factor_rational(&ip(&[1, -2, 1]), 8).unwrap(), vec![f(&[-1, 1], 2)]);
    }

    #[test]
    fn quartic_into_quadratics() {
        // (x^2 - 3x + 1)(x^2 - 4x + 1)
        let p = &ip(&[1, -3, 1]) * &ip(&[1, -4, 1]);
        assert_eq!(
            factor_rational(&p, 8).unwrap(),
            vec![f(&[1, -4, 1], 1), f(&[1, -3, 1], 1)]
        );
    }

    #[test]
    fn non_monic_and_zero_root() {
        // x (2x - 1) (x^2 + 1)
        let p = &(&ip(&[0, 1]) * &ip(&[-1, 2])) * &ip(&[1, 0, 1]);
        let fs = factor_rational(&p, 8).unwrap();
        assert_eq!(fs, vec![f(&[-1, 2], 1), f(&[0, 1], 1), f(&[1, 0, 1], 1)]);
    }

    #[test]
    fn degree_bound_enforced() {
        let p = IntegerPolynomial::x_pow_minus_one(9);
        assert!(matches!(
            factor_rational(&p, 8),
            Err(AlgebraError::UnsupportedDegree { degree: 9, bound: 8 })
        ));
    }

    #[test]
    fn cyclotomic_product_of_degree_eight() {
        // x^8 - 1 = Φ1 Φ2 Φ4 Φ8
        let fs = factor_rational(&IntegerPolynomial::x_pow_minus_one(8), 8).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(expand_factors(&fs), IntegerPolynomial::x_pow_minus_one(8));
    }
}
