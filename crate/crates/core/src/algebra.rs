//! Finite-dimensional algebras given by structure constants.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{complete, normal_words, EngineCaps, EngineError, RewritingSystem};
use crate::linalg::{Field, LinalgError};
use crate::path::{Path, PathPoly};
use crate::presentation::Presentation;
use crate::quiver::QuiverAutomorphism;

/// Dimension up to which triple-wise checks are exhaustive.
pub const EXHAUSTIVE_CHECK_DIM: usize = 200;
const SAMPLED_CHECKS: usize = 20_000;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("operands belong to different algebras")]
    ParentMismatch,
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit or idempotent law fails")]
    UnitLaw,
    #[error("relation {0} does not vanish in the quotient")]
    RelationSurvives(String),
    #[error("the automorphism does not preserve the relations: image of {0} is nonzero")]
    RelationNotPreserved(String),
    #[error("map is not multiplicative on basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("automorphism acts on a different quiver")]
    QuiverMismatch,
}

/// Sparse row of structure constants: `(k, c)` with `c ≠ 0`.
pub type SparseVec<E> = Vec<(u32, E)>;

/// An associative algebra with an explicit basis and multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteDimAlgebra<F: Field> {
    id: u64,
    field: F,
    labels: Vec<String>,
    table: Vec<SparseVec<F::Elem>>,
    one: Vec<F::Elem>,
    idempotents: Vec<Vec<F::Elem>>,
    generators: Vec<Vec<F::Elem>>,
}

impl<F: Field> FiniteDimAlgebra<F> {
    /// `table[i * dim + j]` holds the coordinates of `b_i · b_j`.
    /// `generators` must generate the algebra together with the unit.
    pub fn from_table(
        field: F,
        labels: Vec<String>,
        table: Vec<SparseVec<F::Elem>>,
        one: Vec<F::Elem>,
        idempotents: Vec<Vec<F::Elem>>,
        generators: Vec<Vec<F::Elem>>,
    ) -> Self {
        let n = labels.len();
        assert_eq!(table.len(), n * n, "structure table has wrong size");
        FiniteDimAlgebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            field,
            labels,
            table,
            one,
            idempotents,
            generators,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> &[F::Elem] {
        &self.one
    }

    pub fn idempotents(&self) -> &[Vec<F::Elem>] {
        &self.idempotents
    }

    /// Elements generating the algebra together with the unit.
    pub fn generators(&self) -> &[Vec<F::Elem>] {
        &self.generators
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        self.field.zero_vec(self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, F::Elem)] {
        &self.table[i * self.dim() + j]
    }

    fn check_vector(&self, v: &[F::Elem]) -> Result<(), LinalgError> {
        if v.len() != self.dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        if let Some(bad) = v.iter().find(|c| !self.field.contains(c)) {
            return Err(LinalgError::ForeignScalar { value: format!("{bad:?}"), field: self.field.descriptor() });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.mul(x, y))
    }

    /// Unchecked product; operands must have length `dim`.
    pub(crate) fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        let ys: Vec<(usize, &F::Elem)> = y.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for &(j, b) in &ys {
                let ab = f.mul(a, b);
                for (k, c) in self.basis_product(i, j) {
                    let k = *k as usize;
                    out[k] = f.add(&out[k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Product of a basis element with an element, on the left.
    pub(crate) fn mul_basis_left(&self, i: usize, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (j, b) in y.iter().enumerate() {
            if f.is_zero(b) {
                continue;
            }
            for (k, c) in self.basis_product(i, j) {
                let k = *k as usize;
                out[k] = f.add(&out[k], &f.mul(b, c));
            }
        }
        out
    }

    fn triples(&self, seed: u64) -> Box<dyn Iterator<Item = (usize, usize, usize)>> {
        let n = self.dim();
        if n <= EXHAUSTIVE_CHECK_DIM {
            Box::new((0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))))
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            Box::new((0..SAMPLED_CHECKS).map(move |_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))))
        }
    }

    fn pairs(&self, seed: u64) -> Box<dyn Iterator<Item = (usize, usize)>> {
        let n = self.dim();
        if n <= EXHAUSTIVE_CHECK_DIM {
            Box::new((0..n).flat_map(move |i| (0..n).map(move |j| (i, j))))
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            Box::new((0..SAMPLED_CHECKS).map(move |_| (rng.gen_range(0..n), rng.gen_range(0..n))))
        }
    }

    /// Associativity on basis triples: exhaustive up to dimension 200,
    /// sampled with a fixed seed above that.
    pub fn check_associativity(&self) -> Result<(), AlgebraError> {
        for (i, j, k) in self.triples(0x5eed) {
            let ij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
            let left = self.mul(&ij, &self.basis_vector(k));
            let jk = self.mul(&self.basis_vector(j), &self.basis_vector(k));
            let right = self.mul_basis_left(i, &jk);
            if left != right {
                return Err(AlgebraError::NotAssociative(i, j, k));
            }
        }
        Ok(())
    }

    /// `Σ e_i = 1`, `e_i e_j = δ_ij e_i`, and `1` is a two-sided unit.
    pub fn check_unit(&self) -> Result<(), AlgebraError> {
        let f = &self.field;
        let mut sum = self.zero();
        for e in &self.idempotents {
            f.axpy(&mut sum, &f.one(), e);
        }
        if sum != self.one {
            return Err(AlgebraError::UnitLaw);
        }
        for (a, e) in self.idempotents.iter().enumerate() {
            for (b, e2) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, e2);
                let expected = if a == b { e.clone() } else { self.zero() };
                if p != expected {
                    return Err(AlgebraError::UnitLaw);
                }
            }
        }
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if self.mul(&self.one, &b) != b || self.mul(&b, &self.one) != b {
                return Err(AlgebraError::UnitLaw);
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> AlgebraDump {
        let n = self.dim();
        let mut structure_constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    structure_constants.push((i, j, *k as usize, self.field.format(c)));
                }
            }
        }
        AlgebraDump {
            field: self.field.descriptor().to_string(),
            dimension: n,
            basis: self.labels.clone(),
            structure_constants,
        }
    }

    /// Formats an element as a sum of labelled basis vectors.
    pub fn format(&self, v: &[F::Elem]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| {
                if self.field.is_one(c) {
                    self.labels[i].clone()
                } else {
                    format!("{}*{}", self.field.format(c), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraDump {
    pub field: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub structure_constants: Vec<(usize, usize, usize, String)>,
}

/// A linear map between algebras given by the images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap<F: Field> {
    pub columns: Vec<Vec<F::Elem>>,
}

impl<F: Field> LinearMap<F> {
    pub fn apply(&self, field: &F, v: &[F::Elem], out_dim: usize) -> Vec<F::Elem> {
        crate::linalg::apply_columns(field, &self.columns, v, out_dim)
    }
}

/// The quotient of a path algebra by a presentation, with its normal-word basis.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra<F: Field> {
    algebra: FiniteDimAlgebra<F>,
    presentation: Presentation<F>,
    rewriting: RewritingSystem<F>,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl<F: Field> PresentedAlgebra<F> {
    /// Runs the normal-form engine and assembles the multiplication table.
    pub fn build(presentation: &Presentation<F>, caps: EngineCaps) -> Result<Self, EngineError> {
        let rewriting = complete(presentation, caps.degree_cap)?;
        let basis = normal_words(&rewriting, caps.dim_cap)?;
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let field = presentation.field().clone();
        let q = presentation.quiver();
        let n = basis.len();

        let coords = |f: &PathPoly<F>| -> Vec<F::Elem> {
            let mut v = field.zero_vec(n);
            for (p, c) in rewriting.reduce(f).terms() {
                v[index[p]] = c.clone();
            }
            v
        };
        let sparse = |v: Vec<F::Elem>| -> SparseVec<F::Elem> {
            v.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).map(|(k, c)| (k as u32, c)).collect()
        };

        let mut table = Vec::with_capacity(n * n);
        for bi in &basis {
            for bj in &basis {
                let row = match bi.compose(bj) {
                    None => Vec::new(),
                    Some(p) => match index.get(&p) {
                        Some(&k) => vec![(k as u32, field.one())],
                        None => sparse(coords(&PathPoly::monomial(field.clone(), p))),
                    },
                };
                table.push(row);
            }
        }
        let idempotents: Vec<Vec<F::Elem>> =
            (0..q.vertex_count()).map(|v| coords(&PathPoly::monomial(field.clone(), Path::trivial(v)))).collect();
        let mut one = field.zero_vec(n);
        for e in &idempotents {
            field.axpy(&mut one, &field.one(), e);
        }
        let mut generators = idempotents.clone();
        for a in 0..q.arrow_count() {
            let v = coords(&PathPoly::monomial(field.clone(), Path::arrow(q, a)));
            if v.iter().any(|c| !field.is_zero(c)) {
                generators.push(v);
            }
        }
        let labels = basis.iter().map(|p| p.display(q)).collect();
        let algebra = FiniteDimAlgebra::from_table(field.clone(), labels, table, one, idempotents, generators);
        Ok(PresentedAlgebra { algebra, presentation: presentation.clone(), rewriting, basis, index })
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra<F> {
        &self.algebra
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn rewriting_system(&self) -> &RewritingSystem<F> {
        &self.rewriting
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The quotient map from the path algebra.
    pub fn reduce(&self, f: &PathPoly<F>) -> Vec<F::Elem> {
        let mut v = self.algebra.zero();
        for (p, c) in self.rewriting.reduce(f).terms() {
            v[self.index[p]] = c.clone();
        }
        v
    }

    pub fn path_element(&self, p: &Path) -> Vec<F::Elem> {
        match self.index.get(p) {
            Some(&k) => self.algebra.basis_vector(k),
            None => self.reduce(&PathPoly::monomial(self.algebra.field().clone(), p.clone())),
        }
    }

    /// Image of a path under a word of ids such as `["a", "a*"]`.
    pub fn word_element(&self, ids: &[&str]) -> Option<Vec<F::Elem>> {
        let q = self.presentation.quiver();
        let arrows: Option<Vec<usize>> = ids.iter().map(|id| q.arrow(id)).collect();
        Path::from_arrows(q, &arrows?).map(|p| self.path_element(&p))
    }

    pub fn vertex_idempotent(&self, v: usize) -> &[F::Elem] {
        &self.algebra.idempotents()[v]
    }

    /// Every relation of the presentation maps to zero.
    pub fn check_relations(&self) -> Result<(), AlgebraError> {
        for r in self.presentation.relations() {
            if self.reduce(r).iter().any(|c| !self.algebra.field().is_zero(c)) {
                return Err(AlgebraError::RelationSurvives(r.display(self.presentation.quiver())));
            }
        }
        Ok(())
    }

    fn map_poly(&self, g: &QuiverAutomorphism, f: &PathPoly<F>) -> PathPoly<F> {
        let q = self.presentation.quiver();
        let mut out = PathPoly::zero(self.algebra.field().clone());
        for (p, c) in f.terms() {
            out.add_term(map_path(q, g, p), c);
        }
        out
    }

    /// Extends a quiver automorphism to the algebra: arrows are permuted and
    /// the image reduced. Checks that relations map into the ideal and that
    /// the result is multiplicative.
    pub fn induced_automorphism(&self, g: &QuiverAutomorphism) -> Result<LinearMap<F>, AlgebraError> {
        let q = self.presentation.quiver();
        if g.vertex_permutation().len() != q.vertex_count() || g.arrow_permutation().len() != q.arrow_count() {
            return Err(AlgebraError::QuiverMismatch);
        }
        let field = self.algebra.field();
        for r in self.presentation.relations() {
            let image = self.reduce(&self.map_poly(g, r));
            if image.iter().any(|c| !field.is_zero(c)) {
                return Err(AlgebraError::RelationNotPreserved(r.display(q)));
            }
        }
        let columns: Vec<Vec<F::Elem>> = self.basis.iter().map(|p| self.path_element(&map_path(q, g, p))).collect();
        let map = LinearMap { columns };
        check_multiplicative(&self.algebra, &self.algebra, &map)?;
        Ok(map)
    }
}

fn map_path(q: &crate::quiver::Quiver, g: &QuiverAutomorphism, p: &Path) -> Path {
    if p.is_trivial() {
        Path::trivial(g.vertex(p.source()))
    } else {
        let arrows: Vec<usize> = p.arrows().map(|a| g.arrow(a)).collect();
        Path::from_arrows(q, &arrows).expect("automorphisms preserve composability")
    }
}

/// Checks `φ(b_i b_j) = φ(b_i) φ(b_j)` on basis pairs (sampled above dimension 200).
pub fn check_multiplicative<F: Field>(
    source: &FiniteDimAlgebra<F>,
    target: &FiniteDimAlgebra<F>,
    map: &LinearMap<F>,
) -> Result<(), AlgebraError> {
    let f = source.field();
    for (i, j) in source.pairs(0xa11) {
        let prod = source.mul(&source.basis_vector(i), &source.basis_vector(j));
        let lhs = map.apply(f, &prod, target.dim());
        let rhs = target.mul(&map.columns[i], &map.columns[j]);
        if lhs != rhs {
            return Err(AlgebraError::NotMultiplicative(i, j));
        }
    }
    Ok(())
}
