//! Odd diagonal unimodular intersection forms and integer class vectors.
//!
//! A [`DiagonalForm`] is `diag(+1^a, -1^b)` in a fixed basis: indices
//! `0..a` carry `+1`, indices `a..a+b` carry `-1`. Every pairing is computed
//! with checked arithmetic; overflow is reported, never wrapped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormsError {
    #[error("dimension mismatch: form has rank {rank}, vector has length {len}")]
    DimensionMismatch { rank: usize, len: usize },

    #[error("integer overflow during exact evaluation")]
    Overflow,

    #[error("vector is not characteristic for the form")]
    NotCharacteristic,
}

/// An integer cohomology class in the fixed basis of a [`DiagonalForm`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassVector {
    pub coeffs: Vec<i64>,
}

impl ClassVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        ClassVector { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        ClassVector { coeffs: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// A class is primitive iff the gcd of its coefficients is 1; the zero
    /// vector is not primitive (it generates no summand).
    pub fn is_primitive(&self) -> bool {
        let g = self
            .coeffs
            .iter()
            .fold(0u64, |acc, &c| num_integer::gcd(acc, c.unsigned_abs()));
        g == 1
    }
}

impl From<Vec<i64>> for ClassVector {
    fn from(coeffs: Vec<i64>) -> Self {
        ClassVector { coeffs }
    }
}

/// The intersection form `diag(+1^positive, -1^negative)`.
///
/// Always odd (type I): every diagonal entry is `+-1`. The `+1` block comes
/// first; this ordering is a fixed serialization convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalForm {
    #[serde(rename = "positive_summands")]
    pub positive: usize,
    #[serde(rename = "negative_summands")]
    pub negative: usize,
}

impl DiagonalForm {
    pub fn new(positive: usize, negative: usize) -> Self {
        assert!(positive + negative >= 1, "form must have rank at least 1");
        DiagonalForm { positive, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    /// Signature `a - b`.
    pub fn signature(&self) -> i64 {
        i64::try_from(self.positive).expect("rank fits in i64")
            - i64::try_from(self.negative).expect("rank fits in i64")
    }

    fn check_len(&self, v: &ClassVector) -> Result<(), FormsError> {
        if v.len() != self.rank() {
            return Err(FormsError::DimensionMismatch {
                rank: self.rank(),
                len: v.len(),
            });
        }
        Ok(())
    }

    /// The pairing `Q(u, v)`: the product sum over `+1` indices minus the
    /// product sum over `-1` indices. Exact; overflow is an error.
    pub fn evaluate(&self, u: &ClassVector, v: &ClassVector) -> Result<i64, FormsError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut acc: i128 = 0;
        for (t, (&ut, &vt)) in u.coeffs.iter().zip(&v.coeffs).enumerate() {
            let prod = i128::from(ut) * i128::from(vt);
            let signed = if t < self.positive { prod } else { -prod };
            acc = acc.checked_add(signed).ok_or(FormsError::Overflow)?;
        }
        i64::try_from(acc).map_err(|_| FormsError::Overflow)
    }

    /// Whether `v` is characteristic: `Q(v, w) == Q(w, w) (mod 2)` for all `w`.
    ///
    /// In a `+-1`-diagonal basis this reduces to "every coefficient of `v` is
    /// odd": on a basis vector the congruence reads `+-v_t == +-1 (mod 2)`,
    /// and the basis case extends to all `w` because mod 2 both sides are
    /// additive in `w` (`Q(w, w) == sum w_t^2 (+-1) == sum w_t (+-1)`).
    /// The reduction is cross-checked by an exhaustive oracle in the tests.
    pub fn is_characteristic(&self, v: &ClassVector) -> Result<bool, FormsError> {
        self.check_len(v)?;
        Ok(v.coeffs.iter().all(|&c| c.rem_euclid(2) == 1))
    }

    /// `(Q(v, v) - signature) mod 8` for characteristic `v`.
    ///
    /// Always 0 for a characteristic vector in an odd unimodular diagonal
    /// form (van der Blij); kept as a computed sanity invariant.
    pub fn characteristic_residue(&self, v: &ClassVector) -> Result<i64, FormsError> {
        if !self.is_characteristic(v)? {
            return Err(FormsError::NotCharacteristic);
        }
        let square = self.evaluate(v, v)?;
        let diff = square.checked_sub(self.signature()).ok_or(FormsError::Overflow)?;
        Ok(diff.rem_euclid(8))
    }

    /// Block sum with `other`; see [`DirectSum`] for the embedding layout.
    pub fn direct_sum(&self, other: &DiagonalForm) -> DirectSum {
        DirectSum {
            left: *self,
            right: *other,
            combined: DiagonalForm {
                positive: self.positive + other.positive,
                negative: self.negative + other.negative,
            },
        }
    }
}

/// The block sum `left (+) right` together with the coordinate embeddings.
///
/// Layout of the combined basis: left `+1` block, right `+1` block, left
/// `-1` block, right `-1` block. Embedded vectors are padded with zeros on
/// the complementary block, so pairings and signatures are additive.
#[derive(Debug, Clone, Copy)]
pub struct DirectSum {
    left: DiagonalForm,
    right: DiagonalForm,
    combined: DiagonalForm,
}

impl DirectSum {
    pub fn combined(&self) -> DiagonalForm {
        self.combined
    }

    pub fn embed_left(&self, v: &ClassVector) -> Result<ClassVector, FormsError> {
        self.left.check_len(v)?;
        let mut coeffs = vec![0; self.combined.rank()];
        for (t, &c) in v.coeffs.iter().enumerate() {
            let pos = if t < self.left.positive {
                t
            } else {
                self.combined.positive + (t - self.left.positive)
            };
            coeffs[pos] = c;
        }
        Ok(ClassVector { coeffs })
    }

    pub fn embed_right(&self, v: &ClassVector) -> Result<ClassVector, FormsError> {
        self.right.check_len(v)?;
        let mut coeffs = vec![0; self.combined.rank()];
        for (t, &c) in v.coeffs.iter().enumerate() {
            let pos = if t < self.right.positive {
                self.left.positive + t
            } else {
                self.combined.positive + self.left.negative + (t - self.right.positive)
            };
            coeffs[pos] = c;
        }
        Ok(ClassVector { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cv(coeffs: &[i64]) -> ClassVector {
        ClassVector::new(coeffs.to_vec())
    }

    /// The rank-37 class (7, 3, 3, 1 x 34) in diag(+1, -1^36).
    fn quintic_candidate() -> (DiagonalForm, ClassVector) {
        let mut coeffs = vec![7, 3, 3];
        coeffs.extend(std::iter::repeat(1).take(34));
        (DiagonalForm::new(1, 36), ClassVector::new(coeffs))
    }

    #[test]
    fn evaluate_null_vector() {
        let f = DiagonalForm::new(1, 1);
        let v = cv(&[1, 1]);
        assert_eq!(f.evaluate(&v, &v), Ok(0));
    }

    #[test]
    fn evaluate_generator_self_pairing() {
        let f = DiagonalForm::new(1, 1);
        let v = cv(&[1, 0]);
        assert_eq!(f.evaluate(&v, &v), Ok(1));
    }

    #[test]
    fn evaluate_quintic_candidate_square() {
        // 49 - 9 - 9 - 34 = -3
        let (f, v) = quintic_candidate();
        assert_eq!(f.evaluate(&v, &v), Ok(-3));
    }

    #[test]
    fn evaluate_length_mismatch() {
        let f = DiagonalForm::new(1, 1);
        assert_eq!(
            f.evaluate(&cv(&[1]), &cv(&[1, 0])),
            Err(FormsError::DimensionMismatch { rank: 2, len: 1 })
        );
    }

    #[test]
    fn evaluate_overflow_is_an_error() {
        let f = DiagonalForm::new(2, 0);
        let v = cv(&[i64::MAX, i64::MAX]);
        assert_eq!(f.evaluate(&v, &v), Err(FormsError::Overflow));
    }

    #[test]
    fn signature_values() {
        assert_eq!(DiagonalForm::new(1, 1).signature(), 0);
        assert_eq!(DiagonalForm::new(1, 36).signature(), -35);
        assert_eq!(DiagonalForm::new(17, 9).signature(), 8);
    }

    #[test]
    fn characteristic_examples() {
        let f = DiagonalForm::new(1, 1);
        assert_eq!(f.is_characteristic(&cv(&[1, 1])), Ok(true));
        assert_eq!(f.is_characteristic(&cv(&[2, 1])), Ok(false));
        assert_eq!(DiagonalForm::new(1, 0).is_characteristic(&cv(&[3])), Ok(true));
        assert_eq!(f.is_characteristic(&cv(&[-3, 5])), Ok(true));
    }

    #[test]
    fn primitive_examples() {
        assert!(!cv(&[2, 4]).is_primitive());
        assert!(!cv(&[0, 0]).is_primitive());
        let (_, v) = quintic_candidate();
        assert!(v.is_primitive());
    }

    #[test]
    fn direct_sum_counts_and_embedding() {
        let sum = DiagonalForm::new(1, 0).direct_sum(&DiagonalForm::new(0, 1));
        assert_eq!(sum.combined(), DiagonalForm::new(1, 1));

        let sum = DiagonalForm::new(1, 0).direct_sum(&DiagonalForm::new(0, 2));
        assert_eq!(sum.embed_left(&cv(&[1])), Ok(cv(&[1, 0, 0])));
        assert_eq!(sum.embed_right(&cv(&[5, 7])), Ok(cv(&[0, 5, 7])));
    }

    #[test]
    fn direct_sum_interleaves_sign_blocks() {
        // left diag(1,1), right diag(2,1): combined positives are
        // [left.pos, right.pos, right.pos], negatives [left.neg, right.neg].
        let left = DiagonalForm::new(1, 1);
        let right = DiagonalForm::new(2, 1);
        let sum = left.direct_sum(&right);
        let u = sum.embed_left(&cv(&[10, 20])).unwrap();
        let v = sum.embed_right(&cv(&[1, 2, 3])).unwrap();
        assert_eq!(u, cv(&[10, 0, 0, 20, 0]));
        assert_eq!(v, cv(&[0, 1, 2, 0, 3]));
        // Cross pairings vanish; same-side pairings are preserved.
        assert_eq!(sum.combined().evaluate(&u, &v), Ok(0));
        assert_eq!(
            sum.combined().evaluate(&u, &u),
            left.evaluate(&cv(&[10, 20]), &cv(&[10, 20]))
        );
    }

    #[test]
    fn characteristic_residue_examples() {
        let f = DiagonalForm::new(1, 1);
        assert_eq!(f.characteristic_residue(&cv(&[1, 1])), Ok(0));

        let f = DiagonalForm::new(17, 9);
        let mut coeffs = vec![1; 17];
        coeffs.push(3);
        coeffs.extend(std::iter::repeat(1).take(8));
        // Q(v,v) = 17 - 9 - 8 = 0, signature 8, (0 - 8) mod 8 = 0.
        assert_eq!(f.characteristic_residue(&ClassVector::new(coeffs)), Ok(0));

        assert_eq!(
            f.characteristic_residue(&ClassVector::zeros(26)),
            Err(FormsError::NotCharacteristic)
        );
    }

    /// The defining congruence checked on basis vectors, with no shortcut.
    fn characteristic_by_basis_congruence(f: &DiagonalForm, v: &ClassVector) -> bool {
        (0..f.rank()).all(|t| {
            let mut e = ClassVector::zeros(f.rank());
            e.coeffs[t] = 1;
            let lhs = f.evaluate(v, &e).unwrap();
            let rhs = f.evaluate(&e, &e).unwrap();
            (lhs - rhs).rem_euclid(2) == 0
        })
    }

    #[test]
    fn characteristic_shortcut_matches_definition_exhaustively() {
        // All forms of rank <= 4, all vectors with coefficients in [-3, 3].
        for rank in 1usize..=4 {
            for positive in 0..=rank {
                let f = DiagonalForm::new(positive, rank - positive);
                let mut v = vec![-3i64; rank];
                loop {
                    let vec = ClassVector::new(v.clone());
                    assert_eq!(
                        f.is_characteristic(&vec).unwrap(),
                        characteristic_by_basis_congruence(&f, &vec),
                        "form {f:?}, vector {v:?}"
                    );
                    // odometer over [-3, 3]^rank
                    let mut t = 0;
                    loop {
                        if t == rank {
                            break;
                        }
                        v[t] += 1;
                        if v[t] <= 3 {
                            break;
                        }
                        v[t] = -3;
                        t += 1;
                    }
                    if t == rank {
                        break;
                    }
                }
            }
        }
    }

    fn small_form() -> impl Strategy<Value = DiagonalForm> {
        (0usize..5, 0usize..5)
            .prop_filter("rank >= 1", |(a, b)| a + b >= 1)
            .prop_map(|(a, b)| DiagonalForm::new(a, b))
    }

    fn vector_for(f: DiagonalForm) -> impl Strategy<Value = ClassVector> {
        proptest::collection::vec(-50i64..=50, f.rank()).prop_map(ClassVector::new)
    }

    proptest! {
        #[test]
        fn evaluate_is_symmetric(f in small_form().prop_flat_map(|f| {
            (Just(f), vector_for(f), vector_for(f))
        })) {
            let (f, u, v) = f;
            prop_assert_eq!(f.evaluate(&u, &v), f.evaluate(&v, &u));
        }

        #[test]
        fn evaluate_is_bilinear(args in small_form().prop_flat_map(|f| {
            (Just(f), vector_for(f), vector_for(f), vector_for(f))
        })) {
            let (f, u, w, v) = args;
            let sum = ClassVector::new(
                u.coeffs.iter().zip(&w.coeffs).map(|(a, b)| a + b).collect(),
            );
            prop_assert_eq!(
                f.evaluate(&sum, &v).unwrap(),
                f.evaluate(&u, &v).unwrap() + f.evaluate(&w, &v).unwrap()
            );
        }

        #[test]
        fn van_der_blij_for_characteristic_vectors(args in small_form().prop_flat_map(|f| {
            (Just(f), proptest::collection::vec(-10i64..=10, f.rank()))
        })) {
            let (f, halves) = args;
            let v = ClassVector::new(halves.into_iter().map(|h| 2 * h + 1).collect());
            prop_assert_eq!(f.characteristic_residue(&v).unwrap(), 0);
        }

        #[test]
        fn direct_sum_is_additive(args in (small_form(), small_form()).prop_flat_map(|(f, g)| {
            (Just(f), Just(g), vector_for(f), vector_for(f), vector_for(g), vector_for(g))
        })) {
            let (f, g, u1, v1, u2, v2) = args;
            let sum = f.direct_sum(&g);
            prop_assert_eq!(sum.combined().rank(), f.rank() + g.rank());
            prop_assert_eq!(sum.combined().signature(), f.signature() + g.signature());
            let u = sum.embed_left(&u1).unwrap();
            let v = sum.embed_left(&v1).unwrap();
            prop_assert_eq!(sum.combined().evaluate(&u, &v), f.evaluate(&u1, &v1));
            let u = sum.embed_right(&u2).unwrap();
            let v = sum.embed_right(&v2).unwrap();
            prop_assert_eq!(sum.combined().evaluate(&u, &v), g.evaluate(&u2, &v2));
        }
    }
}
