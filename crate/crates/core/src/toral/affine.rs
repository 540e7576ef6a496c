use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_matrix_lines, IntegerMatrix};

use super::ToralError;

/// The affine toral map `x̄ ↦ B·x + c (mod ℤⁿ)` with rational translation `c`,
/// kept reduced to `[0, 1)ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineToralMap {
    linear: IntegerMatrix,
    translation: Vec<BigRational>,
}

/// Representative of `q mod 1` in `[0, 1)`.
pub fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl AffineToralMap {
    pub fn new(linear: IntegerMatrix, translation: Vec<BigRational>) -> Result<Self, ToralError> {
        if linear.dim() != translation.len() {
            return Err(ToralError::DimensionMismatch {
                expected: linear.dim(),
                found: translation.len(),
            });
        }
        Ok(Self {
            linear,
            translation: translation.iter().map(frac).collect(),
        })
    }

    /// Group endomorphism `x̄ ↦ B·x̄`.
    pub fn linear(linear: IntegerMatrix) -> Self {
        let n = linear.dim();
        Self {
            linear,
            translation: vec![BigRational::zero(); n],
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::linear(IntegerMatrix::zeros(n))
    }

    /// Multiplication by `m` on 𝕋ⁿ.
    pub fn scalar(n: usize, m: i64) -> Self {
        Self::linear(IntegerMatrix::scalar(n, m))
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[BigRational] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn determinant(&self) -> BigInt {
        self.linear.det()
    }

    /// `τ₁ ⊕ τ₂` acting on `𝕋^{n₁} × 𝕋^{n₂}`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut t = self.translation.clone();
        t.extend(other.translation.iter().cloned());
        Self {
            linear: self.linear.direct_sum(&other.linear),
            translation: t,
        }
    }

    /// Image of a rational point, reduced mod ℤⁿ.
    pub fn apply(&self, x: &[BigRational]) -> Result<Vec<BigRational>, ToralError> {
        let bx = self.linear.mul_rational_vec(x)?;
        Ok(bx
            .iter()
            .zip(&self.translation)
            .map(|(a, c)| frac(&(a + c)))
            .collect())
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(t: &str) -> Result<BigRational, ToralError> {
    let bad = || ToralError::Parse(format!("bad rational {t:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Matrix block, then one line of `n` rationals `p/q`.
impl FromStr for AffineToralMap {
    type Err = ToralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let b = parse_matrix_lines(&mut lines)?;
        let c = match lines.next() {
            Some(line) => line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?,
            None => return Err(ToralError::Parse("missing translation line".into())),
        };
        if lines.next().is_some() {
            return Err(ToralError::Parse("trailing input after translation".into()));
        }
        Self::new(b, c)
    }
}

impl fmt::Display for AffineToralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.linear)?;
        let c: Vec<String> = self.translation.iter().map(fmt_rational).collect();
        writeln!(f, "{}", c.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct AffineJson {
    #[serde(rename = "B")]
    b: IntegerMatrix,
    c: Vec<String>,
}

impl Serialize for AffineToralMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AffineJson {
            b: self.linear.clone(),
            c: self.translation.iter().map(fmt_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineToralMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = AffineJson::deserialize(d)?;
        let c = j
            .c
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Self::new(j.b, c).map_err(serde::de::Error::custom)
    }
}

/// Rational vector with entries `p/q`, for tests and literals.
pub fn rational_vec(entries: &[(i64, i64)]) -> Vec<BigRational> {
    entries
        .iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_is_canonicalized() {
        let t = AffineToralMap::new(
            IntegerMatrix::identity(2),
            rational_vec(&[(3, 2), (-1, 3)]),
        )
        .unwrap();
        assert_eq!(t.translation(), rational_vec(&[(1, 2), (2, 3)]).as_slice());
    }

    #[test]
    fn text_format_round_trip() {
        let src = "2\n2 0\n0 2\n1/2 -1/3\n";
        let t: AffineToralMap = src.parse().unwrap();
        assert_eq!(t.to_string(), "2\n2 0\n0 2\n1/2 2/3\n");
        assert_eq!(t.to_string().parse::<AffineToralMap>().unwrap(), t);
        assert!("2\n2 0\n0 2\n".parse::<AffineToralMap>().is_err());
        assert!("2\n2 0\n0 2\n1/0 0\n".parse::<AffineToralMap>().is_err());
        assert!("2\n2 0\n0 2\n1 2 3\n".parse::<AffineToralMap>().is_err());
    }

    #[test]
    fn json_shape() {
        let t = AffineToralMap::new(IntegerMatrix::scalar(2, 3), rational_vec(&[(1, 2), (0, 1)]))
            .unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v, serde_json::json!({"B": [[3, 0], [0, 3]], "c": ["1/2", "0"]}));
        let back: AffineToralMap = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }
}
