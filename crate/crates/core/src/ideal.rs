//! Two-sided ideals of finite-dimensional algebras and the monoids they generate.

use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteDimAlgebra, LinearMap};
use crate::linalg::{EchelonBuilder, Field, LinalgError, RowSpace};

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("monoid has more than {0} elements")]
    CapExceeded(usize),
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("factors {0} and {1} of the orbit product do not commute")]
    NonCommutingFactors(usize, usize),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("monoid table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("table entry ({0}, {1}) disagrees with the direct ideal product")]
    TableMismatch(usize, usize),
}

impl From<LinalgError> for IdealError {
    fn from(e: LinalgError) -> Self {
        IdealError::Algebra(e.into())
    }
}

/// A two-sided ideal, stored as a canonical row space in basis coordinates.
///
/// Equality and hashing only look at the owning algebra and the subspace.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    algebra: u64,
    space: RowSpace<F>,
    generators: Vec<Vec<F::Elem>>,
}

impl<F: Field> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.space == other.space
    }
}

impl<F: Field> Eq for Ideal<F> {}

impl<F: Field> Hash for Ideal<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.algebra.hash(state);
        self.space.hash(state);
    }
}

/// Closes `builder` under multiplication by the algebra generators on the
/// right (and on the left too when `two_sided`), starting from `seeds`.
fn close<F: Field>(alg: &FiniteDimAlgebra<F>, builder: &mut EchelonBuilder<F>, seeds: Vec<Vec<F::Elem>>, two_sided: bool) {
    let mut work: Vec<Vec<F::Elem>> = seeds.into_iter().filter_map(|v| builder.insert(v)).collect();
    while let Some(v) = work.pop() {
        for g in alg.generators() {
            if builder.rank() == builder.ambient() {
                return;
            }
            if let Some(n) = builder.insert(alg.mul(&v, g)) {
                work.push(n);
            }
            if two_sided {
                if let Some(n) = builder.insert(alg.mul(g, &v)) {
                    work.push(n);
                }
            }
        }
    }
}

impl<F: Field> Ideal<F> {
    /// The two-sided ideal generated by `gens`.
    pub fn generated(alg: &FiniteDimAlgebra<F>, gens: &[Vec<F::Elem>]) -> Result<Self, IdealError> {
        let probe = RowSpace::rref(alg.field(), gens.iter().cloned(), alg.dim())?;
        let mut builder = EchelonBuilder::new(alg.field().clone(), alg.dim());
        close(alg, &mut builder, probe.rows().to_vec(), true);
        Ok(Ideal { algebra: alg.id(), space: builder.finish(), generators: gens.to_vec() })
    }

    pub fn unit(alg: &FiniteDimAlgebra<F>) -> Self {
        Ideal { algebra: alg.id(), space: RowSpace::full(alg.field().clone(), alg.dim()), generators: vec![alg.one().to_vec()] }
    }

    pub fn zero(alg: &FiniteDimAlgebra<F>) -> Self {
        Ideal { algebra: alg.id(), space: RowSpace::zero(alg.field().clone(), alg.dim()), generators: Vec::new() }
    }

    /// Wraps a subspace after checking that it is a two-sided ideal.
    pub fn from_space(alg: &FiniteDimAlgebra<F>, space: RowSpace<F>) -> Result<Self, IdealError> {
        if space.ambient() != alg.dim() {
            return Err(LinalgError::DimensionMismatch { expected: alg.dim(), got: space.ambient() }.into());
        }
        let ideal = Ideal { algebra: alg.id(), generators: space.rows().to_vec(), space };
        if !ideal.is_two_sided(alg)? {
            return Err(IdealError::NotAnIdeal);
        }
        Ok(ideal)
    }

    /// The ideal `A (1 - e) A` for an idempotent `e`.
    pub fn complement_of_idempotent(alg: &FiniteDimAlgebra<F>, e: &[F::Elem]) -> Result<Self, IdealError> {
        let f = alg.field();
        let mut x = alg.one().to_vec();
        let minus = f.neg(&f.one());
        f.axpy(&mut x, &minus, e);
        Ideal::generated(alg, &[x])
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn space(&self) -> &RowSpace<F> {
        &self.space
    }

    /// A set generating this ideal as a two-sided ideal.
    pub fn generators(&self) -> &[Vec<F::Elem>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub fn codim(&self) -> usize {
        self.space.ambient() - self.space.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.space.is_full()
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool, LinalgError> {
        self.space.contains(v)
    }

    fn check_parent(&self, alg: &FiniteDimAlgebra<F>) -> Result<(), IdealError> {
        if self.algebra != alg.id() {
            return Err(AlgebraError::ParentMismatch.into());
        }
        Ok(())
    }

    /// Closure under left and right multiplication by the algebra generators,
    /// which together with the unit span the algebra multiplicatively.
    pub fn is_two_sided(&self, alg: &FiniteDimAlgebra<F>) -> Result<bool, IdealError> {
        self.check_parent(alg)?;
        for row in self.space.rows() {
            for g in alg.generators() {
                if !self.space.contains(&alg.mul(g, row))? || !self.space.contains(&alg.mul(row, g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Image under an algebra automorphism given by basis images.
    pub fn image_under(&self, map: &LinearMap<F>) -> RowSpace<F> {
        self.space.image_under(&map.columns)
    }

    /// Whether the automorphism maps the ideal into itself.
    pub fn is_stable_under(&self, map: &LinearMap<F>) -> bool {
        self.image_under(map).is_subspace_of(&self.space).expect("same ambient")
    }
}

/// The product `I J = span{x y : x ∈ I, y ∈ J}`.
///
/// Computed as the right ideal generated by `x t` for `x` in the echelon rows
/// of `I` and `t` in the generating set of `J`; this equals `I J` because
/// `I A = I` and `J = A T A`.
pub fn ideal_product<F: Field>(alg: &FiniteDimAlgebra<F>, i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>, IdealError> {
    i.check_parent(alg)?;
    j.check_parent(alg)?;
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(alg));
    }
    if j.is_unit() {
        return Ok(i.clone());
    }
    if i.is_unit() {
        return Ok(j.clone());
    }
    let seeds: Vec<Vec<F::Elem>> =
        i.space.rows().iter().flat_map(|x| j.generators.iter().map(move |t| alg.mul(x, t))).collect();
    let mut builder = EchelonBuilder::new(alg.field().clone(), alg.dim());
    close(alg, &mut builder, seeds, false);
    let space = builder.finish();
    Ok(Ideal { algebra: alg.id(), generators: space.rows().to_vec(), space })
}

/// The ideal `∏ factors` after checking that the factors pairwise commute.
pub fn orbit_ideal<F: Field>(alg: &FiniteDimAlgebra<F>, factors: &[&Ideal<F>]) -> Result<Ideal<F>, IdealError> {
    for (a, x) in factors.iter().enumerate() {
        for (b, y) in factors.iter().enumerate().skip(a + 1) {
            if ideal_product(alg, x, y)? != ideal_product(alg, y, x)? {
                return Err(IdealError::NonCommutingFactors(a, b));
            }
        }
    }
    let mut acc = Ideal::unit(alg);
    for x in factors {
        acc = ideal_product(alg, &acc, x)?;
    }
    Ok(acc)
}

/// Left-to-right product of labelled generator ideals; the empty word gives
/// the unit ideal.
pub fn theta_prime<F: Field>(
    alg: &FiniteDimAlgebra<F>,
    generators: &[(String, Ideal<F>)],
    word: &[&str],
) -> Result<Ideal<F>, IdealError> {
    let mut acc = Ideal::unit(alg);
    for label in word {
        let (_, g) = generators
            .iter()
            .find(|(l, _)| l == label)
            .ok_or_else(|| IdealError::UnknownLabel(label.to_string()))?;
        acc = ideal_product(alg, &acc, g)?;
    }
    Ok(acc)
}

/// The monoid of ideals generated by a labelled family under ideal product.
#[derive(Debug, Clone)]
pub struct IdealMonoid<F: Field> {
    labels: Vec<String>,
    generator_ideals: Vec<Ideal<F>>,
    elements: Vec<Ideal<F>>,
    words: Vec<Vec<usize>>,
    right_gen: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    lookup: HashMap<Ideal<F>, usize>,
}

impl<F: Field> IdealMonoid<F> {
    /// Breadth-first closure from the unit ideal, multiplying by generators on
    /// the right. Element 0 is the unit ideal and every element carries a
    /// shortest word in the generators.
    pub fn closure(
        alg: &FiniteDimAlgebra<F>,
        generators: Vec<(String, Ideal<F>)>,
        element_cap: usize,
    ) -> Result<Self, IdealError> {
        let (labels, generator_ideals): (Vec<String>, Vec<Ideal<F>>) = generators.into_iter().unzip();
        for g in &generator_ideals {
            g.check_parent(alg)?;
        }
        let unit = Ideal::unit(alg);
        let mut lookup = HashMap::from([(unit.clone(), 0)]);
        let mut elements = vec![unit];
        let mut words = vec![Vec::new()];
        let mut right_gen: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(generator_ideals.len());
            for (k, g) in generator_ideals.iter().enumerate() {
                let y = ideal_product(alg, &elements[x], g)?;
                let idx = match lookup.get(&y) {
                    Some(&idx) => idx,
                    None => {
                        if elements.len() >= element_cap {
                            return Err(IdealError::CapExceeded(element_cap));
                        }
                        let idx = elements.len();
                        let mut w = words[x].clone();
                        w.push(k);
                        lookup.insert(y.clone(), idx);
                        elements.push(y);
                        words.push(w);
                        queue.push_back(idx);
                        idx
                    }
                };
                row.push(idx);
            }
            // queue order is index order, so row x lands at position x
            right_gen.push(row);
        }
        // x · y is x multiplied by the letters of y's word in turn.
        let table = (0..elements.len())
            .map(|x| (0..elements.len()).map(|y| words[y].iter().fold(x, |acc, &k| right_gen[acc][k])).collect())
            .collect();
        Ok(IdealMonoid { labels, generator_ideals, elements, words, right_gen, table, lookup })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_ideals(&self) -> &[Ideal<F>] {
        &self.generator_ideals
    }

    pub fn elements(&self) -> &[Ideal<F>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Ideal<F> {
        &self.elements[i]
    }

    /// A shortest word (generator indices) whose product is element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, ideal: &Ideal<F>) -> Option<usize> {
        self.lookup.get(ideal).copied()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn mul_generator(&self, x: usize, k: usize) -> usize {
        self.right_gen[x][k]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Product of a word of generator indices, via the table.
    pub fn evaluate(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &k| self.right_gen[acc][k])
    }

    pub fn zero_index(&self) -> Option<usize> {
        self.elements.iter().position(|e| e.is_zero())
    }

    pub fn check_associativity(&self) -> Result<(), IdealError> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let xy = self.table[x][y];
                for z in 0..n {
                    if self.table[xy][z] != self.table[x][self.table[y][z]] {
                        return Err(IdealError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Recomputes table entries as direct ideal products: all pairs when
    /// there are at most `max_pairs`, otherwise an evenly spaced selection.
    pub fn check_against_products(&self, alg: &FiniteDimAlgebra<F>, max_pairs: usize) -> Result<(), IdealError> {
        let n = self.len();
        let total = n * n;
        let step = total.div_ceil(max_pairs.max(1)).max(1);
        for flat in (0..total).step_by(step) {
            let (x, y) = (flat / n, flat % n);
            let direct = ideal_product(alg, &self.elements[x], &self.elements[y])?;
            if direct != self.elements[self.table[x][y]] {
                return Err(IdealError::TableMismatch(x, y));
            }
        }
        Ok(())
    }

    /// Indices of the elements stable under every given automorphism.
    pub fn invariant_elements(&self, maps: &[LinearMap<F>]) -> Vec<usize> {
        (0..self.len()).filter(|&i| maps.iter().all(|m| self.elements[i].is_stable_under(m))).collect()
    }

    pub fn report(&self, alg: &FiniteDimAlgebra<F>) -> MonoidReport {
        MonoidReport {
            element_count: self.len(),
            algebra_dimension: alg.dim(),
            generators: self.labels.clone(),
            table: self.table.clone(),
            elements: (0..self.len())
                .map(|i| ElementReport {
                    index: i,
                    dimension: self.elements[i].dim(),
                    is_zero_ideal: self.elements[i].is_zero(),
                    is_unit: self.elements[i].is_unit(),
                    word: self.words[i].iter().map(|&k| self.labels[k].clone()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub index: usize,
    pub dimension: usize,
    pub is_zero_ideal: bool,
    pub is_unit: bool,
    pub word: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidReport {
    pub element_count: usize,
    pub algebra_dimension: usize,
    pub generators: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub elements: Vec<ElementReport>,
}

/// The ideals `A (1 - e_v) A`, labelled by vertex names.
pub fn vertex_ideals<F: Field>(alg: &FiniteDimAlgebra<F>, names: &[String]) -> Result<Vec<(String, Ideal<F>)>, IdealError> {
    names
        .iter()
        .zip(alg.idempotents())
        .map(|(n, e)| Ok((n.clone(), Ideal::complement_of_idempotent(alg, e)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PresentedAlgebra;
    use crate::cartan::CartanTriple;
    use crate::groebner::EngineCaps;
    use crate::linalg::{PrimeField, RationalField};
    use crate::presentation::{gls_pi_presentation, preprojective_presentation};
    use crate::quiver::Quiver;

    fn pi<F: Field>(field: F, q: &Quiver) -> PresentedAlgebra<F> {
        let (p, _) = preprojective_presentation(field, q).unwrap();
        PresentedAlgebra::build(&p, EngineCaps::default()).unwrap()
    }

    fn a2() -> Quiver {
        Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap()
    }

    #[test]
    fn unit_and_zero_generation() {
        let pa = pi(RationalField, &a2());
        let alg = pa.algebra();
        assert!(Ideal::generated(alg, &[alg.one().to_vec()]).unwrap().is_unit());
        assert!(Ideal::generated(alg, &[]).unwrap().is_zero());
    }

    #[test]
    fn vertex_ideal_has_codimension_one() {
        let pa = pi(RationalField, &a2());
        let alg = pa.algebra();
        for (_, i) in vertex_ideals(alg, &["1".into(), "2".into()]).unwrap() {
            assert_eq!(i.codim(), 1);
            assert!(i.is_two_sided(alg).unwrap());
            assert_eq!(ideal_product(alg, &i, &i).unwrap(), i);
            assert_eq!(ideal_product(alg, &i, &Ideal::unit(alg)).unwrap(), i);
            assert!(ideal_product(alg, &i, &Ideal::zero(alg)).unwrap().is_zero());
        }
    }

    #[test]
    fn a2_monoid_has_six_elements() {
        let pa = pi(PrimeField::new(2).unwrap(), &a2());
        let alg = pa.algebra();
        let gens = vertex_ideals(alg, &["1".into(), "2".into()]).unwrap();
        let m = IdealMonoid::closure(alg, gens.clone(), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(m.len(), 6);
        m.check_associativity().unwrap();
        m.check_against_products(alg, usize::MAX).unwrap();
        let x = theta_prime(alg, &gens, &["1", "2", "1"]).unwrap();
        let y = theta_prime(alg, &gens, &["2", "1", "2"]).unwrap();
        assert_eq!(x, y);
        assert!(x.is_zero());
        assert_eq!(theta_prime(alg, &gens, &["1", "1"]).unwrap(), gens[0].1);
        assert!(matches!(theta_prime(alg, &gens, &["3"]), Err(IdealError::UnknownLabel(_))));
    }

    #[test]
    fn idempotent_generator_gives_two_elements() {
        let pa = pi(RationalField, &a2());
        let alg = pa.algebra();
        let gens = vertex_ideals(alg, &["1".into(), "2".into()]).unwrap();
        let m = IdealMonoid::closure(alg, vec![gens[0].clone()], 10).unwrap();
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn b2_vanishing_product() {
        let f2 = PrimeField::new(2).unwrap();
        let t = CartanTriple::from_names(
            vec!["1".into(), "2".into()],
            vec![vec![2, -1], vec![-2, 2]],
            vec![2, 1],
            &[("1".into(), "2".into())],
        )
        .unwrap();
        let pa = PresentedAlgebra::build(&gls_pi_presentation(f2, &t), EngineCaps::default()).unwrap();
        let alg = pa.algebra();
        let gens = vertex_ideals(alg, t.index()).unwrap();
        assert_eq!(gens[0].1.codim(), 2);
        assert_eq!(gens[1].1.codim(), 1);
        assert!(theta_prime(alg, &gens, &["1", "2", "1", "2"]).unwrap().is_zero());
        let m = IdealMonoid::closure(alg, gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(m.len(), 8);
        assert!(m.zero_index().is_some());
    }

    #[test]
    fn parent_mismatch_is_detected() {
        let x = pi(RationalField, &a2());
        let y = pi(RationalField, &a2());
        let i = Ideal::unit(x.algebra());
        let j = Ideal::unit(y.algebra());
        assert!(matches!(
            ideal_product(x.algebra(), &i, &j),
            Err(IdealError::Algebra(AlgebraError::ParentMismatch))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let pa = pi(RationalField, &a2());
        let alg = pa.algebra();
        let gens = vertex_ideals(alg, &["1".into(), "2".into()]).unwrap();
        assert_eq!(IdealMonoid::closure(alg, gens, 3).unwrap_err(), IdealError::CapExceeded(3));
    }
}
