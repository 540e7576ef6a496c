//! Dense univariate polynomials over ℤ and ℚ, coefficients in ascending degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

/// Integer-coefficient polynomial. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

/// Rational-coefficient polynomial, same normalization as [`IntegerPolynomial`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - r`
    pub fn linear(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    /// `x^d - 1`
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::from(-1);
        c[d] += BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `x^deg · p(1/x)`
    pub fn reversal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        RationalPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Exact quotient over ℤ, or `None` when `d` does not divide `self` in ℤ[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.to_rational().div_rem(&d.to_rational()).ok()?;
        if !r.is_zero() {
            return None;
        }
        q.to_integer()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntegerPolynomial::from_i64(coeffs).to_rational()
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division. Fails only for a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = d.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut q = vec![BigRational::zero(); n - dd + 1];
        for i in (dd..=n).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &f * dc;
                r[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, AlgebraError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Clears denominators, divides out the content and fixes a positive leading coefficient.
    pub fn to_primitive_integer(&self) -> IntegerPolynomial {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntegerPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntegerPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntegerPolynomial::new)
    }
}

/// Monic greatest common divisor over ℚ.
pub fn poly_gcd(
    p: &RationalPolynomial,
    q: &RationalPolynomial,
) -> Result<RationalPolynomial, AlgebraError> {
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::GcdOfZeros);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        // keeping the remainder monic stops coefficient growth
        b = r.monic();
    }
    Ok(a.monic())
}

/// Yun's square-free decomposition of a nonzero polynomial over ℚ:
/// returns `(s_i, i)` with `p = lead · Π s_i^i`, each `s_i` monic, square-free and nonconstant.
pub fn square_free_decomposition(
    p: &RationalPolynomial,
) -> Result<Vec<(RationalPolynomial, usize)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let f = p.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.div_rem(&a0)?.0;
    let mut c = df.div_rem(&a0)?.0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a)?.0;
        c = d.div_rem(&a)?.0;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

macro_rules! ring_ops {
    ($ty:ident, $coef:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                $ty::new(
                    (0..n)
                        .map(|i| {
                            let a = self.coeffs.get(i).cloned().unwrap_or_else(<$coef>::zero);
                            match rhs.coeffs.get(i) {
                                Some(b) => a + b,
                                None => a,
                            }
                        })
                        .collect(),
                )
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty::new(self.coeffs.iter().map(|c| -c).collect())
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }

        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                if self.is_zero() || rhs.is_zero() {
                    return $ty::zero();
                }
                let mut c = vec![<$coef>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        c[i + j] += a * b;
                    }
                }
                $ty::new(c)
            }
        }
    };
}

ring_ops!(IntegerPolynomial, BigInt);
ring_ops!(RationalPolynomial, BigRational);

fn write_terms<T: fmt::Display + Signed + Clone>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if i == 0 || !mag.is_one() {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// JSON integers: plain numbers when they fit in `i64`, decimal strings otherwise.
pub(crate) mod bigint_json {
    use super::*;
    use num_traits::ToPrimitive;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Big(String),
    }

    pub fn to_value(v: &BigInt) -> serde_json::Value {
        match v.to_i64() {
            Some(s) => serde_json::Value::from(s),
            None => serde_json::Value::from(v.to_string()),
        }
    }

    pub fn serialize_slice<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<Repr> = v
            .iter()
            .map(|c| match c.to_i64() {
                Some(x) => Repr::Small(x),
                None => Repr::Big(c.to_string()),
            })
            .collect();
        reprs.serialize(s)
    }

    pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let reprs = Vec::<Repr>::deserialize(d)?;
        reprs
            .into_iter()
            .map(|r| match r {
                Repr::Small(x) => Ok(BigInt::from(x)),
                Repr::Big(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        bigint_json::serialize_slice(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntegerPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        bigint_json::deserialize_vec(d).map(Self::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&rp(&[-1, 0, 1]), &rp(&[-1, 1])).unwrap(), rp(&[-1, 1]));
        let chi = rp(&[1, -2, 1, -2, 1]);
        assert_eq!(poly_gcd(&chi, &rp(&[1, 0, 1])).unwrap(), rp(&[1]));
        let p = rp(&[4, 0, 2]);
        assert_eq!(poly_gcd(&p, &RationalPolynomial::zero()).unwrap(), rp(&[2, 0, 1]));
        assert!(matches!(
            poly_gcd(&RationalPolynomial::zero(), &RationalPolynomial::zero()),
            Err(AlgebraError::GcdOfZeros)
        ));
    }

    #[test]
    fn division_and_display() {
        let p = IntegerPolynomial::from_i64(&[-1, 0, 0, 0, 1]);
        let q = IntegerPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(p.div_exact(&q).unwrap().to_string(), "x^2 - 1");
        assert!(p.div_exact(&IntegerPolynomial::from_i64(&[1, 2])).is_none());
        assert_eq!(
            IntegerPolynomial::from_i64(&[1, -2, 1, -2, 1]).to_string(),
            "x^4 - 2x^3 + x^2 - 2x + 1"
        );
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)
        let p = rp(&[2, -3, 0, 1]);
        let d = square_free_decomposition(&p).unwrap();
        assert_eq!(d, vec![(rp(&[2, 1]), 1), (rp(&[-1, 1]), 2)]);
    }

    #[test]
    fn json_round_trip_keeps_big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = IntegerPolynomial::new(vec![big, BigInt::from(-3), BigInt::one()]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["123456789012345678901234567890",-3,1]"#);
        let back: IntegerPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
