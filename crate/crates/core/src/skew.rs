//! Skew group algebras `A#G` and the correspondence between invariant ideals
//! of `A` and graded ideals of `A#G`.

use thiserror::Error;

use crate::algebra::{check_multiplicative, AlgebraDump, AlgebraError, FiniteDimAlgebra, LinearMap, SparseVec};
use crate::ideal::{ideal_product, Ideal, IdealError, IdealMonoid};
use crate::linalg::{Field, RowSpace};
use crate::quiver::GroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("invalid group action: {0}")]
    ActionInvalid(String),
    #[error("ideal is not invariant under the group")]
    NotInvariant,
    #[error("induced ideals do not multiply like their bases at ({0}, {1})")]
    NotHomomorphic(usize, usize),
    #[error("distinct invariant ideals induce the same ideal")]
    NotInjective,
}

/// `A#G` with basis `b_i # g` at index `i * |G| + g`.
#[derive(Debug, Clone)]
pub struct SkewAlgebra<F: Field> {
    base_dim: usize,
    group: GroupTable,
    maps: Vec<LinearMap<F>>,
    algebra: FiniteDimAlgebra<F>,
}

/// `1, g1, g2, …` for a group of the given order.
pub fn default_group_labels(order: usize) -> Vec<String> {
    (0..order).map(|k| if k == 0 { "1".to_string() } else { format!("g{k}") }).collect()
}

fn is_identity_map<F: Field>(field: &F, map: &LinearMap<F>) -> bool {
    map.columns.iter().enumerate().all(|(j, col)| {
        col.iter().enumerate().all(|(i, c)| if i == j { field.is_one(c) } else { field.is_zero(c) })
    })
}

impl<F: Field> SkewAlgebra<F> {
    /// Builds `A#G` from automorphisms `maps[g]` of `A` (indexed like the
    /// group table, identity first) with `(a#g)(b#h) = a·g(b) # gh`.
    pub fn new(
        base: &FiniteDimAlgebra<F>,
        group: GroupTable,
        maps: Vec<LinearMap<F>>,
        group_labels: Vec<String>,
    ) -> Result<Self, SkewError> {
        let f = base.field().clone();
        let (n, m) = (base.dim(), group.order());
        if maps.len() != m || group_labels.len() != m {
            return Err(SkewError::ActionInvalid("one automorphism per group element is required".into()));
        }
        if maps.iter().any(|map| map.columns.len() != n || map.columns.iter().any(|c| c.len() != n)) {
            return Err(SkewError::ActionInvalid("automorphism has the wrong size".into()));
        }
        if !is_identity_map(&f, &maps[0]) {
            return Err(SkewError::ActionInvalid("identity element acts nontrivially".into()));
        }
        for g in 0..m {
            check_multiplicative(base, base, &maps[g])
                .map_err(|_| SkewError::ActionInvalid(format!("{} is not multiplicative", group_labels[g])))?;
            for h in 0..m {
                let gh = group.mul(g, h);
                for j in 0..n {
                    if maps[g].apply(&f, &maps[h].columns[j], n) != maps[gh].columns[j] {
                        return Err(SkewError::ActionInvalid(format!(
                            "{} ∘ {} differs from their product",
                            group_labels[g], group_labels[h]
                        )));
                    }
                }
            }
        }

        let idx = |i: usize, g: usize| i * m + g;
        let mut table: Vec<SparseVec<F::Elem>> = Vec::with_capacity(n * m * n * m);
        for i in 0..n {
            for g in 0..m {
                for j in 0..n {
                    for h in 0..m {
                        let prod = base.mul_basis_left(i, &maps[g].columns[j]);
                        let gh = group.mul(g, h);
                        table.push(
                            prod.into_iter()
                                .enumerate()
                                .filter(|(_, c)| !f.is_zero(c))
                                .map(|(k, c)| (idx(k, gh) as u32, c))
                                .collect(),
                        );
                    }
                }
            }
        }
        let labels =
            base.labels().iter().flat_map(|b| group_labels.iter().map(move |g| format!("{b}#{g}"))).collect();
        let embed = |a: &[F::Elem]| {
            let mut v = f.zero_vec(n * m);
            for (k, c) in a.iter().enumerate() {
                v[idx(k, 0)] = c.clone();
            }
            v
        };
        let one = embed(base.one());
        let idempotents = base.idempotents().iter().map(|e| embed(e)).collect();
        let mut generators: Vec<Vec<F::Elem>> = base.generators().iter().map(|a| embed(a)).collect();
        for g in 1..m {
            let mut v = f.zero_vec(n * m);
            for (k, c) in base.one().iter().enumerate() {
                v[idx(k, g)] = c.clone();
            }
            generators.push(v);
        }
        let algebra = FiniteDimAlgebra::from_table(f.clone(), labels, table, one, idempotents, generators);
        Ok(SkewAlgebra { base_dim: n, group, maps, algebra })
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra<F> {
        &self.algebra
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn maps(&self) -> &[LinearMap<F>] {
        &self.maps
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    fn index(&self, i: usize, g: usize) -> usize {
        i * self.group.order() + g
    }

    /// `a # g`.
    pub fn tensor(&self, a: &[F::Elem], g: usize) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let mut v = f.zero_vec(self.algebra.dim());
        for (k, c) in a.iter().enumerate() {
            v[self.index(k, g)] = c.clone();
        }
        v
    }

    /// `1_A # g`.
    pub fn group_element(&self, base: &FiniteDimAlgebra<F>, g: usize) -> Vec<F::Elem> {
        self.tensor(base.one(), g)
    }

    /// `(1#g)(b#1)(1#g⁻¹) = g(b)#1` on every basis element `b` and every `g`.
    pub fn check_conjugation(&self, base: &FiniteDimAlgebra<F>) -> bool {
        let s = &self.algebra;
        (0..self.group.order()).all(|g| {
            let left = self.group_element(base, g);
            let right = self.group_element(base, self.group.inverse(g));
            (0..self.base_dim).all(|j| {
                let b = self.tensor(&base.basis_vector(j), 0);
                s.mul(&s.mul(&left, &b), &right) == self.tensor(&self.maps[g].columns[j], 0)
            })
        })
    }

    /// Checks that `a ↦ a#1` is multiplicative and injective.
    pub fn check_embedding(&self, base: &FiniteDimAlgebra<F>) -> Result<(), SkewError> {
        let columns = (0..self.base_dim).map(|j| self.tensor(&base.basis_vector(j), 0)).collect();
        check_multiplicative(base, &self.algebra, &LinearMap { columns })?;
        Ok(())
    }

    pub fn is_g_invariant(&self, ideal: &Ideal<F>) -> bool {
        self.maps.iter().all(|m| ideal.is_stable_under(m))
    }

    /// `I#G = {Σ a_g # g : a_g ∈ I}`, verified to be a two-sided ideal.
    pub fn induced_ideal(&self, ideal: &Ideal<F>) -> Result<Ideal<F>, SkewError> {
        if !self.is_g_invariant(ideal) {
            return Err(SkewError::NotInvariant);
        }
        let f = self.algebra.field();
        let rows = ideal
            .space()
            .rows()
            .iter()
            .flat_map(|r| (0..self.group.order()).map(move |g| self.tensor(r, g)));
        let space = RowSpace::rref(f, rows, self.algebra.dim()).map_err(AlgebraError::from)?;
        Ok(Ideal::from_space(&self.algebra, space)?)
    }

    /// `{a : a#1 ∈ J}` together with whether `J` is the ideal it induces.
    pub fn graded_part(&self, base: &FiniteDimAlgebra<F>, j: &Ideal<F>) -> Result<(bool, Ideal<F>), SkewError> {
        let support: Vec<usize> = (0..self.base_dim).map(|k| self.index(k, 0)).collect();
        let restricted = j.space().restrict_to_support(&support);
        let rows = restricted.rows().iter().map(|r| support.iter().map(|&c| r[c].clone()).collect());
        let space = RowSpace::rref(base.field(), rows, self.base_dim).map_err(AlgebraError::from)?;
        let part = Ideal::from_space(base, space)?;
        let graded = self.induced_ideal(&part)? == *j;
        Ok((graded, part))
    }

    /// Induces every listed element of `monoid`, and checks that
    /// `(I#G)(J#G) = (IJ)#G` on all listed pairs and that distinct ideals
    /// stay distinct.
    pub fn induced_monoid_map(
        &self,
        monoid: &IdealMonoid<F>,
        elements: &[usize],
    ) -> Result<Vec<Ideal<F>>, SkewError> {
        let induced: Vec<Ideal<F>> =
            elements.iter().map(|&x| self.induced_ideal(monoid.element(x))).collect::<Result<_, _>>()?;
        let mut seen = std::collections::HashSet::new();
        if !induced.iter().all(|i| seen.insert(i.clone())) {
            return Err(SkewError::NotInjective);
        }
        let position = |x: usize| elements.iter().position(|&e| e == x);
        for (a, &x) in elements.iter().enumerate() {
            for (b, &y) in elements.iter().enumerate() {
                let prod = ideal_product(&self.algebra, &induced[a], &induced[b])?;
                let expected = match position(monoid.mul(x, y)) {
                    Some(k) => induced[k].clone(),
                    None => self.induced_ideal(monoid.element(monoid.mul(x, y)))?,
                };
                if prod != expected {
                    return Err(SkewError::NotHomomorphic(x, y));
                }
            }
        }
        Ok(induced)
    }

    pub fn dump(&self) -> AlgebraDump {
        self.algebra.dump()
    }
}
