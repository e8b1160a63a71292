//! Exact coefficient fields and canonical subspaces.
//!
//! Two coefficient fields are supported: prime fields `F_p` with `p < 2^31`
//! and the rationals. Everything above this module is generic over [`Field`],
//! so the same algebra code runs in either mode.
//!
//! Subspaces are stored as [`RowSpace`]s in reduced row-echelon form. The
//! reduced form is canonical, so two row spaces are equal exactly when their
//! row lists are equal, and `RowSpace` can be hashed directly.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldDescriptor, FieldDescriptor),
    #[error("scalar {value} does not belong to {field}")]
    ForeignScalar { value: String, field: FieldDescriptor },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
}

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldDescriptor {
    Prime(u32),
    Rational,
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime(p) => write!(f, "F{p}"),
            FieldDescriptor::Rational => write!(f, "Q"),
        }
    }
}

/// A field together with its element type.
///
/// The field value carries whatever runtime data the arithmetic needs (the
/// modulus for `F_p`); elements are plain values.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` is a legal representative (e.g. lies in `[0, p)`).
    fn contains(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;

    fn characteristic(&self) -> u64 {
        match self.descriptor() {
            FieldDescriptor::Prime(p) => p as u64,
            FieldDescriptor::Rational => 0,
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `y += c * x`, entrywise.
    fn axpy(&self, y: &mut [Self::Elem], c: &Self::Elem, x: &[Self::Elem]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(c, xi));
            }
        }
    }

    fn zero_vec(&self, n: usize) -> Vec<Self::Elem> {
        vec![self.zero(); n]
    }
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + (self.p - *b) as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn contains(&self, a: &u32) -> bool {
        *a < self.p
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn axpy(&self, y: &mut [u32], c: &u32, x: &[u32]) {
        let p = self.p as u64;
        let c = *c as u64;
        if c == 0 {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if *xi != 0 {
                *yi = ((*yi as u64 + c * *xi as u64) % p) as u32;
            }
        }
    }
}

/// The rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn contains(&self, a: &BigRational) -> bool {
        // Ratio keeps itself reduced with a positive denominator.
        a.denom().is_positive()
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// A subspace of `K^n` in reduced row-echelon form.
///
/// Pivot columns strictly increase, every pivot is `1`, pivot columns vanish
/// in all other rows, and there are no zero rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowSpace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        RowSpace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = field.zero_vec(ambient);
                v[i] = field.one();
                v
            })
            .collect();
        RowSpace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn rref<I>(field: &F, vectors: I, ambient: usize) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut builder = EchelonBuilder::new(field.clone(), ambient);
        for v in vectors {
            check_vector(field, &v, ambient)?;
            builder.insert(v);
        }
        Ok(builder.finish())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field.descriptor() != other.field.descriptor() {
            return Err(LinalgError::FieldMismatch(
                self.field.descriptor(),
                other.field.descriptor(),
            ));
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }

    /// Reduces `v` in place against the echelon rows; the remainder is zero
    /// iff `v` lies in the space.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        reduce_against(&self.field, &self.rows, &self.pivots, v);
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool, LinalgError> {
        check_vector(&self.field, v, self.ambient)?;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        Ok(w.iter().all(|x| self.field.is_zero(x)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(other)?;
        let mut builder = EchelonBuilder::from_space(self.clone());
        for r in &other.rows {
            builder.insert(r.clone());
        }
        Ok(builder.finish())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        for r in &self.rows {
            let mut w = r.clone();
            other.reduce(&mut w);
            if w.iter().any(|x| !self.field.is_zero(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The subspace of vectors supported on the coordinates in `support`.
    pub fn restrict_to_support(&self, support: &[usize]) -> Self {
        let mut inside = vec![false; self.ambient];
        for &c in support {
            inside[c] = true;
        }
        // Eliminate with the outside coordinates first: rows whose pivot lands
        // inside the support then vanish on every outside coordinate.
        let order: Vec<usize> = (0..self.ambient)
            .filter(|&c| !inside[c])
            .chain((0..self.ambient).filter(|&c| inside[c]))
            .collect();
        let permuted = self.rows.iter().map(|r| order.iter().map(|&c| r[c].clone()).collect());
        let echelon = RowSpace::rref(&self.field, permuted, self.ambient)
            .expect("rows already validated");
        let outside = order.iter().filter(|&&c| !inside[c]).count();
        let kept = echelon
            .rows
            .iter()
            .zip(&echelon.pivots)
            .filter(|(_, &p)| p >= outside)
            .map(|(r, _)| {
                let mut v = self.field.zero_vec(self.ambient);
                for (pos, &c) in order.iter().enumerate() {
                    v[c] = r[pos].clone();
                }
                v
            });
        RowSpace::rref(&self.field, kept, self.ambient).expect("rows already validated")
    }

    /// Image of the space under the linear map whose `j`-th column is `columns[j]`.
    pub fn image_under(&self, columns: &[Vec<F::Elem>]) -> Self {
        let f = &self.field;
        let images = self.rows.iter().map(|r| apply_columns(f, columns, r, self.ambient));
        RowSpace::rref(f, images, self.ambient).expect("image has ambient length")
    }
}

/// `sum_j v_j * columns[j]`.
pub fn apply_columns<F: Field>(
    field: &F,
    columns: &[Vec<F::Elem>],
    v: &[F::Elem],
    out_dim: usize,
) -> Vec<F::Elem> {
    let mut out = field.zero_vec(out_dim);
    for (j, c) in v.iter().enumerate() {
        if !field.is_zero(c) {
            field.axpy(&mut out, c, &columns[j]);
        }
    }
    out
}

fn check_vector<F: Field>(field: &F, v: &[F::Elem], ambient: usize) -> Result<(), LinalgError> {
    if v.len() != ambient {
        return Err(LinalgError::DimensionMismatch { expected: ambient, got: v.len() });
    }
    if let Some(bad) = v.iter().find(|x| !field.contains(x)) {
        return Err(LinalgError::ForeignScalar {
            value: format!("{bad:?}"),
            field: field.descriptor(),
        });
    }
    Ok(())
}

fn reduce_against<F: Field>(field: &F, rows: &[Vec<F::Elem>], pivots: &[usize], v: &mut [F::Elem]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if !field.is_zero(&v[p]) {
            let c = field.neg(&v[p]);
            field.axpy(v, &c, row);
        }
    }
}

/// Incremental reduced row-echelon form.
///
/// Rows stay fully reduced after every insertion, so membership tests are a
/// single pass. Row order is by insertion until [`EchelonBuilder::finish`].
#[derive(Debug, Clone)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        EchelonBuilder { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_space(space: RowSpace<F>) -> Self {
        EchelonBuilder {
            field: space.field,
            ambient: space.ambient,
            rows: space.rows,
            pivots: space.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reduce(&self, v: &mut [F::Elem]) {
        reduce_against(&self.field, &self.rows, &self.pivots, v);
    }

    /// Inserts `v`, returning the new normalized row when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        debug_assert_eq!(v.len(), self.ambient);
        if self.rows.len() == self.ambient {
            return None;
        }
        self.reduce(&mut v);
        let p = v.iter().position(|x| !self.field.is_zero(x))?;
        let inv = self.field.inv(&v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            if !self.field.is_zero(x) {
                *x = self.field.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if !self.field.is_zero(&row[p]) {
                let c = self.field.neg(&row[p]);
                self.field.axpy(row, &c, &v);
            }
        }
        self.rows.push(v.clone());
        self.pivots.push(p);
        Some(v)
    }

    pub fn finish(self) -> RowSpace<F> {
        let mut pairs: Vec<(usize, Vec<F::Elem>)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, rows) = pairs.into_iter().unzip();
        RowSpace { field: self.field, ambient: self.ambient, rows, pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert_eq!(f(2147483647).modulus(), 2147483647);
    }

    #[test]
    fn inverse_in_large_prime() {
        let k = f(2147483647);
        for a in [1u32, 2, 12345, 2147483646] {
            let b = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &b), 1);
        }
        assert_eq!(k.inv(&0), None);
    }

    #[test]
    fn rref_identity_over_f2() {
        let s = RowSpace::rref(&f(2), vec![vec![1, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(s.rows(), &[vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn rref_zero_vector() {
        let s = RowSpace::rref(&f(2), vec![vec![0, 0, 0]], 3).unwrap();
        assert!(s.rows().is_empty());
    }

    #[test]
    fn rref_duplicate_rows() {
        let s = RowSpace::rref(&f(2), vec![vec![1, 1], vec![1, 1]], 2).unwrap();
        assert_eq!(s.rows(), &[vec![1, 1]]);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn rref_rejects_wrong_length_and_foreign_scalars() {
        assert!(matches!(
            RowSpace::rref(&f(3), vec![vec![1, 0]], 3),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            RowSpace::rref(&f(3), vec![vec![5, 0]], 2),
            Err(LinalgError::ForeignScalar { .. })
        ));
    }

    #[test]
    fn sum_examples() {
        let k = f(2);
        let a = RowSpace::rref(&k, vec![vec![1, 0]], 2).unwrap();
        let zero = RowSpace::zero(k, 2);
        assert_eq!(a.sum(&zero).unwrap(), a);
        let b = RowSpace::rref(&k, vec![vec![0, 1]], 2).unwrap();
        assert_eq!(a.sum(&b).unwrap(), RowSpace::full(k, 2));

        let x = RowSpace::rref(&k, vec![vec![1, 1, 0]], 3).unwrap();
        let y = RowSpace::rref(&k, vec![vec![0, 1, 1]], 3).unwrap();
        let s = x.sum(&y).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[1, 0, 1]).unwrap());
    }

    #[test]
    fn sum_rejects_mismatch() {
        let a = RowSpace::zero(f(2), 2);
        assert!(matches!(a.sum(&RowSpace::zero(f(3), 2)), Err(LinalgError::FieldMismatch(..))));
        assert!(matches!(
            a.sum(&RowSpace::zero(f(2), 3)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn contains_examples() {
        let k = f(3);
        let s = RowSpace::rref(&k, vec![vec![1, 1]], 2).unwrap();
        assert!(s.contains(&[0, 0]).unwrap());
        assert!(s.contains(&[2, 2]).unwrap());
        let e1 = RowSpace::rref(&k, vec![vec![1, 0]], 2).unwrap();
        assert!(!e1.contains(&[0, 1]).unwrap());
        assert!(e1.contains(&[0, 1, 0]).is_err());
    }

    #[test]
    fn rational_rref() {
        let q = RationalField;
        let v = |a: i64, b: i64| vec![q.from_i64(a), q.from_i64(b)];
        let s = RowSpace::rref(&q, vec![v(2, 4), v(3, 6)], 2).unwrap();
        assert_eq!(s.rows(), &[v(1, 2)]);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(s.contains(&[half, q.one()]).unwrap());
    }

    #[test]
    fn support_restriction() {
        let k = f(2);
        // span{(1,1,0), (0,1,1)} meets the coordinates {0,2} in span{(1,0,1)}
        let s = RowSpace::rref(&k, vec![vec![1, 1, 0], vec![0, 1, 1]], 3).unwrap();
        let r = s.restrict_to_support(&[0, 2]);
        assert_eq!(r.rows(), &[vec![1, 0, 1]]);
    }
}
