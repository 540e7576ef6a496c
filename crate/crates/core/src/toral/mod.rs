//! Toral endomorphisms: spectral classification of integer matrices and the
//! Garden-of-Eden verdicts for affine maps commuting with a toral automorphism.
//!
//! Commuting continuous maps are taken in affine form `x̄ ↦ B·x + c`. For an
//! ergodic base automorphism every commuting continuous map has this shape, so the
//! input format loses nothing there.

mod affine;
mod commutant;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{
    bigint_json, disk_root_counts, factor_rational, root_of_unity_divisors, AlgebraError, Factor,
    IntegerMatrix, IntegerPolynomial, DEFAULT_DEGREE_BOUND,
};

pub use affine::{frac, rational_vec, AffineToralMap};
pub use commutant::{
    commutant_basis, commuting_affine_maps, in_lattice_span, linear_combination,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToralError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the endomorphism does not commute with the base automorphism")]
    NotCommuting,
    #[error("commuting matrix outside the span of the computed basis: {0:?}")]
    IncompleteBasis(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Spectral facts about an integer matrix `A` that decide how `f_A` behaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixClassification {
    pub dimension: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub determinant: BigInt,
    pub is_invertible_over_z: bool,
    pub is_hyperbolic: bool,
    pub is_ergodic: bool,
    pub unit_circle_roots: usize,
    pub roots_inside: usize,
    pub roots_outside: usize,
    pub unity_divisors: BTreeSet<u64>,
    pub char_poly: IntegerPolynomial,
    pub char_poly_irreducible: bool,
    pub factors: Vec<Factor>,
}

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    bigint_json::to_value(v).serialize(s)
}

/// Classifies `A` with the default factorization degree bound.
pub fn classify_matrix(a: &IntegerMatrix) -> Result<MatrixClassification, ToralError> {
    classify_matrix_with_bound(a, DEFAULT_DEGREE_BOUND)
}

pub fn classify_matrix_with_bound(
    a: &IntegerMatrix,
    degree_bound: usize,
) -> Result<MatrixClassification, ToralError> {
    let char_poly = a.char_poly();
    let determinant = a.det();
    let factors = factor_rational(&char_poly, degree_bound)?;
    // eigenvalue 0 sits strictly inside the disk; strip it before the circle machinery
    let zeros = char_poly.coeffs().iter().take_while(|c| c.is_zero()).count();
    let nonzero_part = IntegerPolynomial::new(char_poly.coeffs()[zeros..].to_vec());
    let counts = disk_root_counts(&nonzero_part)?;
    let unity_divisors = root_of_unity_divisors(&char_poly)?;
    let is_invertible_over_z = determinant.abs().is_one();
    Ok(MatrixClassification {
        dimension: a.dim(),
        is_invertible_over_z,
        is_hyperbolic: is_invertible_over_z && counts.on_circle == 0,
        is_ergodic: unity_divisors.is_empty(),
        unit_circle_roots: counts.on_circle,
        roots_inside: counts.inside + zeros,
        roots_outside: counts.outside,
        unity_divisors,
        char_poly_irreducible: factors.len() == 1 && factors[0].multiplicity == 1,
        char_poly,
        factors,
        determinant,
    })
}

/// Number of points in each fiber of the linear part: `|det B|`, or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(BigInt),
    Infinite,
}

impl Serialize for Cardinality {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinality::Finite(n) => bigint_json::to_value(n).serialize(s),
            Cardinality::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

/// Why a pre-injectivity answer is what it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PreInjectivityReason {
    /// Hyperbolic base: pre-injective exactly when `det B ≠ 0`.
    HyperbolicBase,
    /// Ergodic base with irreducible characteristic polynomial and circle roots:
    /// the homoclinicity group is trivial, so every endomorphism is pre-injective.
    TrivialHomoclinicGroup,
    /// No exact procedure applies.
    Undecided,
}

/// Garden-of-Eden summary of one commuting affine map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoeVerdict {
    pub surjective: bool,
    pub injective: bool,
    /// `None` when undecided.
    pub pre_injective: Option<bool>,
    pub pre_injective_reason: PreInjectivityReason,
    pub kernel: Cardinality,
    /// false only when surjective but known not pre-injective
    pub moore_consistent: bool,
    /// false only when known pre-injective but not surjective
    pub myhill_consistent: bool,
}

pub fn is_surjective(tau: &AffineToralMap) -> bool {
    !tau.determinant().is_zero()
}

pub fn is_injective(tau: &AffineToralMap) -> bool {
    tau.determinant().abs().is_one()
}

pub fn kernel_cardinality(tau: &AffineToralMap) -> Cardinality {
    let d = tau.determinant();
    if d.is_zero() {
        Cardinality::Infinite
    } else {
        Cardinality::Finite(d.abs())
    }
}

/// Whether `τ ∘ f_A = f_A ∘ τ`: `AB = BA` and `(A − I)c ∈ ℤⁿ`.
pub fn commutes(tau: &AffineToralMap, a: &IntegerMatrix) -> Result<bool, ToralError> {
    if tau.dim() != a.dim() {
        return Err(ToralError::DimensionMismatch {
            expected: a.dim(),
            found: tau.dim(),
        });
    }
    let b = tau.matrix();
    if a.mul(b)? != b.mul(a)? {
        return Ok(false);
    }
    let ac = a.mul_rational_vec(tau.translation())?;
    Ok(ac
        .iter()
        .zip(tau.translation())
        .all(|(x, c)| (x - c).is_integer()))
}

/// The exact translation `c` with `(A − I)c = z`, or `None` when `1` is an eigenvalue.
pub fn commuting_translation(
    a: &IntegerMatrix,
    z: &[BigInt],
) -> Result<Option<Vec<BigRational>>, ToralError> {
    let shifted = a.sub(&IntegerMatrix::identity(a.dim()))?;
    let rhs: Vec<BigRational> = z.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    Ok(shifted.solve_rational(&rhs)?)
}

/// A base automorphism `f_A` with its classification cached, for repeated queries.
#[derive(Clone, Debug)]
pub struct ToralSystem {
    matrix: IntegerMatrix,
    classification: MatrixClassification,
}

impl ToralSystem {
    pub fn new(matrix: IntegerMatrix) -> Result<Self, ToralError> {
        let classification = classify_matrix(&matrix)?;
        Ok(Self {
            matrix,
            classification,
        })
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn classification(&self) -> &MatrixClassification {
        &self.classification
    }

    fn require_commuting(&self, tau: &AffineToralMap) -> Result<(), ToralError> {
        if commutes(tau, &self.matrix)? {
            Ok(())
        } else {
            Err(ToralError::NotCommuting)
        }
    }

    pub fn pre_injectivity(
        &self,
        tau: &AffineToralMap,
    ) -> Result<(Option<bool>, PreInjectivityReason), ToralError> {
        self.require_commuting(tau)?;
        let c = &self.classification;
        if c.is_hyperbolic {
            Ok((Some(is_surjective(tau)), PreInjectivityReason::HyperbolicBase))
        } else if c.is_ergodic && c.char_poly_irreducible && c.unit_circle_roots > 0 {
            Ok((Some(true), PreInjectivityReason::TrivialHomoclinicGroup))
        } else {
            Ok((None, PreInjectivityReason::Undecided))
        }
    }

    pub fn verdict(&self, tau: &AffineToralMap) -> Result<GoeVerdict, ToralError> {
        let (pre_injective, reason) = self.pre_injectivity(tau)?;
        let surjective = is_surjective(tau);
        Ok(GoeVerdict {
            surjective,
            injective: is_injective(tau),
            pre_injective,
            pre_injective_reason: reason,
            kernel: kernel_cardinality(tau),
            moore_consistent: !(surjective && pre_injective == Some(false)),
            myhill_consistent: !(pre_injective == Some(true) && !surjective),
        })
    }
}

/// Pre-injectivity of `τ` with respect to `f_A`; `None` when undecided.
pub fn is_pre_injective(
    tau: &AffineToralMap,
    a: &IntegerMatrix,
) -> Result<Option<bool>, ToralError> {
    Ok(ToralSystem::new(a.clone())?.pre_injectivity(tau)?.0)
}

pub fn goe_verdict(tau: &AffineToralMap, a: &IntegerMatrix) -> Result<GoeVerdict, ToralError> {
    ToralSystem::new(a.clone())?.verdict(tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> IntegerMatrix {
        IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]])
    }

    fn ergodic4() -> IntegerMatrix {
        IntegerMatrix::from_i64(&[
            &[0, 0, 0, 1],
            &[-1, 0, 0, 2],
            &[0, -1, 0, 1],
            &[0, 0, -1, 2],
        ])
    }

    #[test]
    fn classify_examples() {
        let c = classify_matrix(&cat()).unwrap();
        assert!(c.is_invertible_over_z && c.is_hyperbolic && c.is_ergodic);
        assert_eq!(c.unit_circle_roots, 0);

        let c = classify_matrix(&ergodic4()).unwrap();
        assert!(c.is_invertible_over_z && !c.is_hyperbolic && c.is_ergodic);
        assert_eq!(c.unit_circle_roots, 2);
        assert!(c.char_poly_irreducible);

        let c = classify_matrix(&IntegerMatrix::identity(2)).unwrap();
        assert!(c.is_invertible_over_z && !c.is_hyperbolic && !c.is_ergodic);
        assert_eq!(c.unity_divisors, [1].into());
    }

    #[test]
    fn classify_non_invertible() {
        // [[2,1],[1,1]] doubled: det 4, hyperbolic spectrum but not in GL_2(Z)
        let c = classify_matrix(&IntegerMatrix::from_i64(&[&[4, 2], &[2, 2]])).unwrap();
        assert!(!c.is_invertible_over_z && !c.is_hyperbolic);
        let c = classify_matrix(&IntegerMatrix::zeros(2)).unwrap();
        assert_eq!((c.roots_inside, c.unit_circle_roots), (2, 0));
        assert!(c.is_ergodic == c.unity_divisors.is_empty());
    }

    #[test]
    fn commutes_examples() {
        for a in [cat(), ergodic4()] {
            let n = a.dim();
            assert!(commutes(&AffineToralMap::scalar(n, 2), &a).unwrap());
            assert!(commutes(&AffineToralMap::linear(a.clone()), &a).unwrap());
        }
        let shear = AffineToralMap::linear(IntegerMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert!(!commutes(&shear, &cat()).unwrap());
        assert!(matches!(
            commutes(&AffineToralMap::scalar(3, 1), &cat()),
            Err(ToralError::DimensionMismatch { .. })
        ));
        // (A - I)c must be integral: c = (1/2, 0) gives (1/2, 1/2)
        let t = AffineToralMap::new(IntegerMatrix::identity(2), rational_vec(&[(1, 2), (0, 1)]))
            .unwrap();
        assert!(!commutes(&t, &cat()).unwrap());
    }

    #[test]
    fn surjective_injective_kernel() {
        let two = AffineToralMap::scalar(2, 2);
        assert!(is_surjective(&two) && !is_injective(&two));
        assert_eq!(kernel_cardinality(&two), Cardinality::Finite(BigInt::from(4)));
        let z = AffineToralMap::new(IntegerMatrix::zeros(2), rational_vec(&[(1, 3), (0, 1)]))
            .unwrap();
        assert!(!is_surjective(&z) && !is_injective(&z));
        assert_eq!(kernel_cardinality(&z), Cardinality::Infinite);
        let a = AffineToralMap::new(cat(), rational_vec(&[(1, 5), (2, 5)])).unwrap();
        assert!(is_surjective(&a) && is_injective(&a));
    }

    #[test]
    fn pre_injectivity_examples() {
        assert_eq!(is_pre_injective(&AffineToralMap::scalar(2, 2), &cat()).unwrap(), Some(true));
        assert_eq!(is_pre_injective(&AffineToralMap::zero(4), &ergodic4()).unwrap(), Some(true));
        assert_eq!(is_pre_injective(&AffineToralMap::zero(2), &cat()).unwrap(), Some(false));
        // identity base: not ergodic, undecided
        let id = IntegerMatrix::identity(2);
        assert_eq!(is_pre_injective(&AffineToralMap::scalar(2, 2), &id).unwrap(), None);
        let shear = AffineToralMap::linear(IntegerMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert!(matches!(
            is_pre_injective(&shear, &cat()),
            Err(ToralError::NotCommuting)
        ));
    }

    #[test]
    fn verdict_examples() {
        let v = goe_verdict(&AffineToralMap::scalar(2, 3), &cat()).unwrap();
        assert!(v.surjective && !v.injective && v.pre_injective == Some(true));
        assert_eq!(v.kernel, Cardinality::Finite(BigInt::from(9)));
        assert!(v.moore_consistent && v.myhill_consistent);

        let v = goe_verdict(&AffineToralMap::zero(4), &ergodic4()).unwrap();
        assert!(!v.surjective && v.pre_injective == Some(true) && !v.myhill_consistent);
        assert!(v.moore_consistent);

        let v = goe_verdict(&AffineToralMap::scalar(2, 1), &cat()).unwrap();
        assert!(v.surjective && v.injective && v.pre_injective == Some(true));
        assert_eq!(v.kernel, Cardinality::Finite(BigInt::one()));
    }

    #[test]
    fn rational_translations_for_hyperbolic_base() {
        let z = [BigInt::from(1), BigInt::from(-2)];
        let c = commuting_translation(&cat(), &z).unwrap().unwrap();
        let t = AffineToralMap::new(IntegerMatrix::identity(2), c).unwrap();
        assert!(commutes(&t, &cat()).unwrap());
        assert!(commuting_translation(&IntegerMatrix::identity(2), &z).unwrap().is_none());
    }
}
