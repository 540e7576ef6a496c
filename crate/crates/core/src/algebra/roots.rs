//! Exact root-location queries: Sturm counts, cyclotomic divisors, and counts of
//! roots on, inside and outside the unit circle.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{poly_gcd, square_free_decomposition, IntegerPolynomial, RationalPolynomial};
use super::AlgebraError;

/// Where a real point sits for sign-variation counting.
#[derive(Clone, Debug)]
enum Point {
    NegInfinity,
    At(BigRational),
    PosInfinity,
}

fn sign_at(p: &RationalPolynomial, at: &Point) -> i32 {
    let Some(d) = p.degree() else { return 0 };
    let lead = p.leading().unwrap().signum();
    let s = match at {
        Point::At(x) => p.eval(x).signum(),
        Point::PosInfinity => lead,
        Point::NegInfinity => {
            if d % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
    };
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(chain: &[RationalPolynomial], at: &Point) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| sign_at(p, at))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Generalized Sturm chain `f, g, -rem(f, g), ...`.
fn sturm_chain(f: &RationalPolynomial, g: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut chain = vec![f.clone()];
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        chain.push(b.clone());
        let r = a.rem(&b).expect("nonzero divisor");
        a = b;
        b = -&r;
    }
    chain
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn sturm_count(
    p: &RationalPolynomial,
    a: &BigRational,
    b: &BigRational,
) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if a >= b {
        return Err(AlgebraError::EmptyInterval);
    }
    if p.eval(a).is_zero() || p.eval(b).is_zero() {
        return Err(AlgebraError::EndpointRoot);
    }
    let chain = sturm_chain(p, &p.derivative());
    let va = variations(&chain, &Point::At(a.clone()));
    let vb = variations(&chain, &Point::At(b.clone()));
    Ok(va - vb)
}

/// Number of distinct real roots of `p` on the whole line.
pub fn real_root_count(p: &RationalPolynomial) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let chain = sturm_chain(p, &p.derivative());
    Ok(variations(&chain, &Point::NegInfinity) - variations(&chain, &Point::PosInfinity))
}

/// Cauchy index of `g/f` over the real line.
fn cauchy_index(f: &RationalPolynomial, g: &RationalPolynomial) -> i64 {
    let chain = sturm_chain(f, g);
    variations(&chain, &Point::NegInfinity) as i64 - variations(&chain, &Point::PosInfinity) as i64
}

/// Euler's totient.
pub fn totient(mut d: u64) -> u64 {
    let mut result = d;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            while d.is_multiple_of(p) {
                d /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if d > 1 {
        result -= result / d;
    }
    result
}

/// The `d`-th cyclotomic polynomial via `Φ_d = (x^d − 1) / Π_{e | d, e < d} Φ_e`.
pub fn cyclotomic(d: u64) -> IntegerPolynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut q = IntegerPolynomial::x_pow_minus_one(d as usize);
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        q = q
            .div_exact(&cyclotomic(e))
            .expect("cyclotomic factors divide x^d - 1");
    }
    q
}

/// All `d` with `φ(d) ≤ deg p` such that `Φ_d` shares a root with `p`.
/// An empty set certifies that no root of `p` is a root of unity.
pub fn root_of_unity_divisors(p: &IntegerPolynomial) -> Result<BTreeSet<u64>, AlgebraError> {
    let n = p.degree().ok_or(AlgebraError::ZeroPolynomial)? as u64;
    let rp = p.to_rational();
    let mut out = BTreeSet::new();
    if n == 0 {
        return Ok(out);
    }
    // φ(d) ≥ sqrt(d/2), so d ≤ 2n² bounds the search
    for d in (1..=2 * n * n + 2).filter(|&d| totient(d) <= n) {
        let g = poly_gcd(&rp, &cyclotomic(d).to_rational())?;
        if !g.is_constant() {
            out.insert(d);
        }
    }
    Ok(out)
}

/// Writes a palindromic polynomial of degree `2m` as `x^m · h(x + 1/x)` and returns `h`.
fn trace_polynomial(g: &RationalPolynomial) -> RationalPolynomial {
    let deg = g.degree().unwrap_or(0);
    debug_assert!(deg.is_multiple_of(2));
    let m = deg / 2;
    let mut rem = g.clone();
    let mut h = vec![BigRational::zero(); m + 1];
    let x2p1 = RationalPolynomial::from_i64(&[1, 0, 1]);
    for j in (0..=m).rev() {
        let top = rem.coeffs().get(m + j).cloned().unwrap_or_else(BigRational::zero);
        if top.is_zero() {
            continue;
        }
        // x^{m-j} (x^2 + 1)^j
        let mut basis = RationalPolynomial::one();
        for _ in 0..j {
            basis = &basis * &x2p1;
        }
        let mut shifted = vec![BigRational::zero(); m - j];
        shifted.extend(basis.coeffs().iter().cloned());
        let term = RationalPolynomial::new(shifted).scale(&top);
        rem = &rem - &term;
        h[j] = top;
    }
    debug_assert!(rem.is_zero(), "input was not palindromic");
    RationalPolynomial::new(h)
}

fn reversal(p: &RationalPolynomial) -> RationalPolynomial {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    RationalPolynomial::new(c)
}

/// Root-location summary of a square-free factor with nonzero constant term.
struct CircleSplit {
    at_one: bool,
    at_minus_one: bool,
    /// distinct non-real roots on the circle
    complex_on_circle: usize,
    /// the factor with `x ∓ 1` divided out
    rest: RationalPolynomial,
}

fn circle_split(s: &RationalPolynomial) -> Result<CircleSplit, AlgebraError> {
    let one = BigRational::one();
    let minus_one = -BigRational::one();
    let mut rest = s.clone();
    let at_one = rest.eval(&one).is_zero();
    if at_one {
        rest = rest.div_rem(&RationalPolynomial::from_i64(&[-1, 1]))?.0;
    }
    let at_minus_one = rest.eval(&minus_one).is_zero();
    if at_minus_one {
        rest = rest.div_rem(&RationalPolynomial::from_i64(&[1, 1]))?.0;
    }
    let mut complex_on_circle = 0;
    if !rest.is_constant() {
        // every circle root λ has 1/λ = conj(λ) as a root too, so it lies in the
        // self-reciprocal part gcd(p, reversal(p))
        let g = poly_gcd(&rest, &reversal(&rest))?;
        if !g.is_constant() {
            let h = trace_polynomial(&g);
            let two = BigRational::from_integer(BigInt::from(2));
            complex_on_circle = 2 * sturm_count(&h, &-two.clone(), &two)?;
        }
    }
    Ok(CircleSplit {
        at_one,
        at_minus_one,
        complex_on_circle,
        rest,
    })
}

fn nonzero_constant_term(p: &IntegerPolynomial) -> Result<(), AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if p.coeff(0).is_zero() {
        return Err(AlgebraError::ZeroConstantTerm);
    }
    Ok(())
}

/// Number of complex roots of `p` on the unit circle, with multiplicity.
pub fn unit_circle_root_count(p: &IntegerPolynomial) -> Result<usize, AlgebraError> {
    nonzero_constant_term(p)?;
    let mut total = 0;
    for (s, mult) in square_free_decomposition(&p.to_rational())? {
        let split = circle_split(&s)?;
        let distinct =
            split.at_one as usize + split.at_minus_one as usize + split.complex_on_circle;
        total += mult * distinct;
    }
    Ok(total)
}

/// `(1 − z)^n · p((1 + z)/(1 − z))`: sends the open unit disk to the open left half-plane.
fn cayley_transform(p: &RationalPolynomial) -> RationalPolynomial {
    let n = p.degree().unwrap_or(0);
    let one_plus = RationalPolynomial::from_i64(&[1, 1]);
    let one_minus = RationalPolynomial::from_i64(&[1, -1]);
    let mut acc = RationalPolynomial::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        let mut term = RationalPolynomial::new(vec![c.clone()]);
        for _ in 0..j {
            term = &term * &one_plus;
        }
        for _ in j..n {
            term = &term * &one_minus;
        }
        acc = &acc + &term;
    }
    acc
}

/// `(n_left − n_right)` for a real polynomial whose imaginary-axis roots (if any)
/// are purely non-zero conjugate pairs. Uses the argument principle along `z = iy`.
fn half_plane_balance(r: &RationalPolynomial) -> i64 {
    let d = r.degree().unwrap_or(0);
    // r(iy) = re(y) + i·im(y)
    let mut re = vec![BigRational::zero(); d + 1];
    let mut im = vec![BigRational::zero(); d + 1];
    for (k, c) in r.coeffs().iter().enumerate() {
        // i^k
        match k % 4 {
            0 => re[k] += c,
            1 => im[k] += c,
            2 => re[k] -= c,
            _ => im[k] -= c,
        }
    }
    let re = RationalPolynomial::new(re);
    let im = RationalPolynomial::new(im);
    if d.is_multiple_of(2) {
        // arg r(iy) starts and ends on the real axis: count crossings of the imaginary axis
        -cauchy_index(&re, &im)
    } else {
        cauchy_index(&im, &re)
    }
}

/// Counts of roots strictly inside, on, and strictly outside the unit circle,
/// each with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiskCounts {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
}

/// Exact inside/on/outside root counts for a polynomial with nonzero constant term.
pub fn disk_root_counts(p: &IntegerPolynomial) -> Result<DiskCounts, AlgebraError> {
    nonzero_constant_term(p)?;
    let mut counts = DiskCounts {
        inside: 0,
        on_circle: 0,
        outside: 0,
    };
    for (s, mult) in square_free_decomposition(&p.to_rational())? {
        let split = circle_split(&s)?;
        let rest = split.rest;
        let n = rest.degree().unwrap_or(0);
        let (inside, outside) = if n == 0 {
            (0, 0)
        } else {
            let r = cayley_transform(&rest);
            let balance = half_plane_balance(&r);
            let off = (n - split.complex_on_circle) as i64;
            debug_assert!((off + balance) % 2 == 0);
            let inside = ((off + balance) / 2) as usize;
            (inside, off as usize - inside)
        };
        let on = split.at_one as usize + split.at_minus_one as usize + split.complex_on_circle;
        counts.inside += mult * inside;
        counts.outside += mult * outside;
        counts.on_circle += mult * on;
    }
    Ok(counts)
}
