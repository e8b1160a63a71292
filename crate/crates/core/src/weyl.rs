//! Weyl groups of generalized Cartan matrices, realized by integer matrices on
//! the root lattice, and their Weyl monoids realized by the Demazure product.
//!
//! Reflection convention: `r_i(α_j) = α_j − c_ij α_i`. Matrices act on
//! coordinate columns in the simple-root basis, so column `j` of `r_i` is the
//! image of `α_j`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::cartan::CartanTriple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("group has more than {0} elements")]
    CapExceeded(usize),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("generator index {0} out of range")]
    UnknownGenerator(usize),
}

/// A square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        IntMatrix { n, data: rows.iter().flatten().copied().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        data[i * n + j] += a * other.data[k * n + j];
                    }
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        (0..e).fold(IntMatrix::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    /// Whether `M[π(a)][π(b)] = M[a][b]` for all `a, b`.
    pub fn is_fixed_by(&self, perm: &[usize]) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.get(perm[a], perm[b]) == self.get(a, b)))
    }
}

/// Checks that `c` is a generalized Cartan matrix: diagonal 2, off-diagonal
/// entries non-positive, and `c_ij = 0` exactly when `c_ji = 0`.
pub fn validate_cartan(c: &[Vec<i64>]) -> Result<(), WeylError> {
    let n = c.len();
    if c.iter().any(|r| r.len() != n) {
        return Err(WeylError::InvalidCartan("matrix is not square".into()));
    }
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(WeylError::InvalidCartan(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..n {
            if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                return Err(WeylError::InvalidCartan(format!("entry ({i}, {j}) violates the sign pattern")));
            }
        }
    }
    Ok(())
}

/// Matrix of `r_i`: identity except row `i`, which is `δ_ij − c_ij`.
pub fn simple_reflection_matrix(c: &[Vec<i64>], i: usize) -> Result<IntMatrix, WeylError> {
    validate_cartan(c)?;
    if i >= c.len() {
        return Err(WeylError::UnknownGenerator(i));
    }
    let mut m = IntMatrix::identity(c.len());
    for j in 0..c.len() {
        m.data[i * c.len() + j] = i64::from(i == j) - c[i][j];
    }
    Ok(m)
}

/// Order of `r_i r_j` for `c_ij c_ji ∈ {0, 1, 2, 3}`; `None` when infinite.
pub fn coxeter_exponent(c: &[Vec<i64>], i: usize, j: usize) -> Option<u32> {
    match c[i][j] * c[j][i] {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylReport {
    pub order: usize,
    pub length_histogram: Vec<usize>,
    pub longest_element_reduced_word: Vec<String>,
    pub relations: Vec<RelationCheck>,
}

/// A finite Weyl group enumerated as a table of matrices.
///
/// Elements are indexed in breadth-first order, so index 0 is the identity
/// and lengths are non-decreasing in the index.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    labels: Vec<String>,
    cartan: Vec<Vec<i64>>,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
    lengths: Vec<usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

pub const DEFAULT_WEYL_CAP: usize = 100_000;

impl WeylGroup {
    pub fn enumerate(labels: Vec<String>, cartan: Vec<Vec<i64>>, element_cap: usize) -> Result<Self, WeylError> {
        validate_cartan(&cartan)?;
        let n = cartan.len();
        if labels.len() != n {
            return Err(WeylError::InvalidCartan("label count differs from rank".into()));
        }
        let generators: Vec<IntMatrix> =
            (0..n).map(|i| simple_reflection_matrix(&cartan, i)).collect::<Result<_, _>>()?;
        let id = IntMatrix::identity(n);
        let mut index = HashMap::from([(id.clone(), 0)]);
        let mut elements = vec![id];
        let mut lengths = vec![0];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for g in &generators {
                let y = elements[x].mul(g);
                let idx = match index.get(&y) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= element_cap {
                            return Err(WeylError::CapExceeded(element_cap));
                        }
                        let k = elements.len();
                        index.insert(y.clone(), k);
                        elements.push(y);
                        lengths.push(lengths[x] + 1);
                        queue.push_back(k);
                        k
                    }
                };
                row.push(idx);
            }
            right.push(row);
        }
        let left = elements.iter().map(|w| generators.iter().map(|g| index[&g.mul(w)]).collect()).collect();
        Ok(WeylGroup { labels, cartan, generators, elements, index, lengths, right, left })
    }

    pub fn of_triple(t: &CartanTriple, element_cap: usize) -> Result<Self, WeylError> {
        WeylGroup::enumerate(t.index().to_vec(), t.matrix().to_vec(), element_cap)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn matrix(&self, w: usize) -> &IntMatrix {
        &self.elements[w]
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the simple reflection `r_i`.
    pub fn generator(&self, i: usize) -> usize {
        self.right[0][i]
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    /// `w · r_i`.
    pub fn mul_right(&self, w: usize, i: usize) -> usize {
        self.right[w][i]
    }

    /// `r_i · w`.
    pub fn mul_left(&self, i: usize, w: usize) -> usize {
        self.left[w][i]
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.reduced_word(v).iter().fold(u, |acc, &i| self.right[acc][i])
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.reduced_word(w).iter().rev().fold(0, |acc, &i| self.right[acc][i])
    }

    pub fn left_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.lengths[self.left[w][i]] < self.lengths[w]).collect()
    }

    pub fn right_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.lengths[self.right[w][i]] < self.lengths[w]).collect()
    }

    /// Product of an arbitrary word of generator indices.
    pub fn word_element(&self, word: &[usize]) -> Result<usize, WeylError> {
        word.iter().try_fold(0, |acc, &i| {
            if i >= self.rank() {
                Err(WeylError::UnknownGenerator(i))
            } else {
                Ok(self.right[acc][i])
            }
        })
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool, WeylError> {
        Ok(self.length(self.word_element(word)?) == word.len())
    }

    /// A reduced word `[i_1, …, i_k]` with `w = r_{i_1} ⋯ r_{i_k}`, found by
    /// repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self, mut w: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.lengths[w]);
        while w != 0 {
            let i = (0..self.rank()).find(|&i| self.lengths[self.left[w][i]] < self.lengths[w]).unwrap();
            word.push(i);
            w = self.left[w][i];
        }
        word
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn all_reduced_words(&self, w: usize) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        self.reduced_words_memo(w, &mut memo)
    }

    fn reduced_words_memo(&self, w: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if w == 0 {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&w) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in self.left_descents(w) {
            for mut tail in self.reduced_words_memo(self.left[w][i], memo) {
                tail.insert(0, i);
                out.push(tail);
            }
        }
        memo.insert(w, out.clone());
        out
    }

    pub fn longest_element(&self) -> usize {
        (0..self.order()).max_by_key(|&w| self.lengths[w]).unwrap()
    }

    /// Demazure product: fold a reduced word of `v` into `u`, multiplying by
    /// a letter only when it increases the length.
    pub fn demazure_product(&self, u: usize, v: usize) -> usize {
        self.demazure_fold(u, &self.reduced_word(v))
    }

    pub fn demazure_fold(&self, u: usize, word: &[usize]) -> usize {
        word.iter().fold(u, |acc, &i| {
            let next = self.right[acc][i];
            if self.lengths[next] > self.lengths[acc] {
                next
            } else {
                acc
            }
        })
    }

    /// The Weyl monoid element `h_{i_1} ⋯ h_{i_k}` of an arbitrary word,
    /// represented by its carrier in the group.
    pub fn rho(&self, word: &[usize]) -> usize {
        self.demazure_fold(0, word)
    }

    fn alternating(i: usize, j: usize, m: u32) -> Vec<usize> {
        (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
    }

    /// Coxeter relations checked on the generator matrices.
    pub fn coxeter_relation_checks(&self) -> Vec<RelationCheck> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            out.push(RelationCheck {
                relation: format!("r_{}^2 = 1", self.labels[i]),
                holds: self.generators[i].pow(2).is_identity(),
            });
        }
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if let Some(m) = coxeter_exponent(&self.cartan, i, j) {
                    let rr = self.generators[i].mul(&self.generators[j]);
                    out.push(RelationCheck {
                        relation: format!("(r_{} r_{})^{m} = 1", self.labels[i], self.labels[j]),
                        holds: rr.pow(m).is_identity() && (1..m).all(|k| !rr.pow(k).is_identity()),
                    });
                }
            }
        }
        out
    }

    /// Weyl monoid relations checked on the Demazure realization: `f_i^2 = f_i`
    /// and the braid relation of length `m` for each pair with finite `m`.
    pub fn monoid_relation_checks(&self) -> Vec<RelationCheck> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            out.push(RelationCheck {
                relation: format!("f_{0} f_{0} = f_{0}", self.labels[i]),
                holds: self.rho(&[i, i]) == self.rho(&[i]),
            });
        }
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if let Some(m) = coxeter_exponent(&self.cartan, i, j) {
                    let lhs = Self::alternating(i, j, m);
                    let rhs = Self::alternating(j, i, m);
                    let show = |w: &[usize]| w.iter().map(|&k| format!("f_{}", self.labels[k])).collect::<Vec<_>>().join(" ");
                    out.push(RelationCheck {
                        relation: format!("{} = {}", show(&lhs), show(&rhs)),
                        holds: self.rho(&lhs) == self.rho(&rhs),
                    });
                }
            }
        }
        out
    }

    /// For all `u, v`, folding every reduced word of `v` into `u` gives the
    /// same element. Returns the first failing pair.
    pub fn check_demazure_well_defined(&self) -> Result<(), (usize, usize)> {
        let mut memo = HashMap::new();
        for v in 0..self.order() {
            let words = self.reduced_words_memo(v, &mut memo);
            for u in 0..self.order() {
                let first = self.demazure_fold(u, &words[0]);
                if words.iter().any(|w| self.demazure_fold(u, w) != first) {
                    return Err((u, v));
                }
            }
        }
        Ok(())
    }

    pub fn length_histogram(&self) -> Vec<usize> {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in &self.lengths {
            *hist.entry(l).or_default() += 1;
        }
        hist.values().copied().collect()
    }

    pub fn report(&self) -> WeylReport {
        let mut relations = self.coxeter_relation_checks();
        relations.extend(self.monoid_relation_checks());
        WeylReport {
            order: self.order(),
            length_histogram: self.length_histogram(),
            longest_element_reduced_word: self
                .reduced_word(self.longest_element())
                .iter()
                .map(|&i| self.labels[i].clone())
                .collect(),
            relations,
        }
    }
}

/// The folding homomorphism `ψ: W(C) → W(Q)`, `r_I ↦ ∏_{i ∈ I} s_i`.
#[derive(Debug, Clone)]
pub struct FoldingMap {
    folded: WeylGroup,
    unfolded: WeylGroup,
    orbits: Vec<Vec<usize>>,
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldingMapError {
    #[error("orbit count {0} differs from the rank {1} of the folded group")]
    Shape(usize, usize),
    #[error("reflections in orbit {0} do not commute")]
    NonCommutingOrbit(usize),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

impl FoldingMap {
    /// `orbits[I]` lists the generators of `unfolded` belonging to orbit `I`.
    pub fn new(folded: WeylGroup, unfolded: WeylGroup, orbits: Vec<Vec<usize>>) -> Result<Self, FoldingMapError> {
        if orbits.len() != folded.rank() {
            return Err(FoldingMapError::Shape(orbits.len(), folded.rank()));
        }
        for (k, orbit) in orbits.iter().enumerate() {
            for &a in orbit {
                for &b in orbit {
                    let (sa, sb) = (unfolded.generator(a), unfolded.generator(b));
                    if unfolded.mul(sa, sb) != unfolded.mul(sb, sa) {
                        return Err(FoldingMapError::NonCommutingOrbit(k));
                    }
                }
            }
        }
        let mut map = FoldingMap { folded, unfolded, orbits, images: Vec::new() };
        map.images = (0..map.folded.order()).map(|w| map.psi_of_word(&map.folded.reduced_word(w))).collect();
        Ok(map)
    }

    pub fn folded(&self) -> &WeylGroup {
        &self.folded
    }

    pub fn unfolded(&self) -> &WeylGroup {
        &self.unfolded
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Replaces each letter `I` by the members of orbit `I`.
    pub fn expand_word(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&k| self.orbits[k].iter().copied()).collect()
    }

    /// Image of an arbitrary word over the folded generators.
    pub fn psi_of_word(&self, word: &[usize]) -> usize {
        self.unfolded.word_element(&self.expand_word(word)).expect("orbit members are generators")
    }

    pub fn psi(&self, w: usize) -> usize {
        self.images[w]
    }

    /// The monoid map on carriers; equal to `ψ` because `ρ` is the identity
    /// on carriers and the expansion of a reduced word stays reduced.
    pub fn psi_prime(&self, m: usize) -> usize {
        self.unfolded.rho(&self.expand_word(&self.folded.reduced_word(m)))
    }

    /// For a reduced word of the folded group, whether its expansion is reduced.
    pub fn check_reduced_image(&self, word: &[usize]) -> Result<bool, WeylError> {
        if !self.folded.is_reduced(word)? {
            return Err(WeylError::NotReduced(word.to_vec()));
        }
        self.unfolded.is_reduced(&self.expand_word(word))
    }

    /// Every reduced word of every element gives the same image.
    pub fn check_word_independence(&self) -> bool {
        (0..self.folded.order())
            .all(|w| self.folded.all_reduced_words(w).iter().all(|word| self.psi_of_word(word) == self.images[w]))
    }

    pub fn check_homomorphism(&self) -> bool {
        let n = self.folded.order();
        (0..n).all(|u| (0..n).all(|v| self.psi(self.folded.mul(u, v)) == self.unfolded.mul(self.psi(u), self.psi(v))))
    }

    pub fn check_injective(&self) -> bool {
        let mut seen = self.images.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.images.len()
    }

    /// `ℓ(ψ(w)) = Σ_k |I_k|` over a reduced word `I_1 ⋯ I_r` of `w`.
    pub fn check_length_formula(&self) -> bool {
        (0..self.folded.order()).all(|w| {
            let expected: usize = self.folded.reduced_word(w).iter().map(|&k| self.orbits[k].len()).sum();
            self.unfolded.length(self.images[w]) == expected
        })
    }

    /// `ψ′(u ⋆ v) = ψ′(u) ⋆ ψ′(v)` for the Demazure products.
    pub fn check_psi_prime_multiplicative(&self) -> bool {
        let n = self.folded.order();
        (0..n).all(|u| {
            (0..n).all(|v| {
                self.psi_prime(self.folded.demazure_product(u, v))
                    == self.unfolded.demazure_product(self.psi_prime(u), self.psi_prime(v))
            })
        })
    }

    /// Sorted images of `ψ`.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v
    }
}

/// Elements whose matrices are fixed under simultaneous row and column
/// permutation by every vertex permutation in `perms`.
pub fn fixed_subgroup(w: &WeylGroup, perms: &[Vec<usize>]) -> Vec<usize> {
    (0..w.order()).filter(|&x| perms.iter().all(|p| w.matrix(x).is_fixed_by(p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(c: &[&[i64]]) -> WeylGroup {
        let rows: Vec<Vec<i64>> = c.iter().map(|r| r.to_vec()).collect();
        let labels = (1..=rows.len()).map(|i| i.to_string()).collect();
        WeylGroup::enumerate(labels, rows, DEFAULT_WEYL_CAP).unwrap()
    }

    fn a2() -> WeylGroup {
        group(&[&[2, -1], &[-1, 2]])
    }

    fn b2() -> WeylGroup {
        group(&[&[2, -1], &[-2, 2]])
    }

    fn g2() -> WeylGroup {
        group(&[&[2, -1], &[-3, 2]])
    }

    fn a3_star() -> WeylGroup {
        // vertex 0 in the middle
        group(&[&[2, -1, -1], &[-1, 2, 0], &[-1, 0, 2]])
    }

    #[test]
    fn reflection_matrices() {
        assert_eq!(simple_reflection_matrix(&[vec![2]], 0).unwrap().rows(), vec![vec![-1]]);
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(simple_reflection_matrix(&a2, 0).unwrap().rows(), vec![vec![-1, 1], vec![0, 1]]);
        // r_1(α_2) = α_2 + α_1 for the B2 matrix
        let b2 = vec![vec![2, -1], vec![-2, 2]];
        let r1 = simple_reflection_matrix(&b2, 0).unwrap();
        assert_eq!((r1.get(0, 1), r1.get(1, 1)), (1, 1));
        assert!(simple_reflection_matrix(&[vec![2, 1], vec![1, 2]], 0).is_err());
    }

    #[test]
    fn orders_and_longest_lengths() {
        for (w, order, top) in [(a2(), 6, 3), (b2(), 8, 4), (g2(), 12, 6), (a3_star(), 24, 6)] {
            assert_eq!(w.order(), order);
            assert_eq!(w.length(w.longest_element()), top);
        }
        let d4 = group(&[&[2, -1, -1, -1], &[-1, 2, 0, 0], &[-1, 0, 2, 0], &[-1, 0, 0, 2]]);
        assert_eq!(d4.order(), 192);
    }

    #[test]
    fn affine_type_hits_cap() {
        let labels = vec!["1".into(), "2".into()];
        let err = WeylGroup::enumerate(labels, vec![vec![2, -2], vec![-2, 2]], 500).unwrap_err();
        assert_eq!(err, WeylError::CapExceeded(500));
    }

    #[test]
    fn reduced_words() {
        let w = b2();
        assert!(w.reduced_word(0).is_empty());
        assert_eq!(w.reduced_word(w.generator(0)), vec![0]);
        let w0 = w.longest_element();
        assert_eq!(w.reduced_word(w0).len(), 4);
        assert_eq!(w.word_element(&[0, 1, 0, 1]).unwrap(), w0);
        assert_eq!(w.all_reduced_words(w0), vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
        for x in 0..w.order() {
            for word in w.all_reduced_words(x) {
                assert_eq!(w.word_element(&word).unwrap(), x);
                assert_eq!(word.len(), w.length(x));
            }
        }
    }

    #[test]
    fn demazure_products() {
        let w = a2();
        for i in 0..2 {
            let r = w.generator(i);
            assert_eq!(w.demazure_product(r, r), r);
        }
        assert_eq!(w.rho(&[0, 1, 0]), w.rho(&[1, 0, 1]));
        let w0 = w.longest_element();
        assert_eq!(w.rho(&[0, 1, 0, 1]), w0);
        assert_eq!(w.rho(&[]), 0);
        for v in 0..w.order() {
            assert_eq!(w.demazure_product(w0, v), w0);
        }
    }

    #[test]
    fn relation_checks_pass() {
        for w in [a2(), b2(), g2(), a3_star()] {
            assert!(w.coxeter_relation_checks().iter().all(|c| c.holds));
            assert!(w.monoid_relation_checks().iter().all(|c| c.holds));
            assert_eq!(w.check_demazure_well_defined(), Ok(()));
        }
    }

    #[test]
    fn report_shape() {
        let r = b2().report();
        assert_eq!(r.order, 8);
        assert_eq!(r.length_histogram, vec![1, 2, 2, 2, 1]);
        assert_eq!(r.longest_element_reduced_word.len(), 4);
    }

    #[test]
    fn fold_a3_onto_b2() {
        // folded index: 0 = {centre}, 1 = {the two leaves}
        let map = FoldingMap::new(b2(), a3_star(), vec![vec![0], vec![1, 2]]).unwrap();
        let q = map.unfolded();
        assert_eq!(map.psi(0), 0);
        assert_eq!(map.psi(map.folded().generator(1)), q.word_element(&[1, 2]).unwrap());
        let w0 = map.folded().word_element(&[0, 1, 0, 1]).unwrap();
        assert_eq!(map.psi(w0), q.word_element(&[0, 1, 2, 0, 1, 2]).unwrap());
        assert!(map.check_homomorphism());
        assert!(map.check_injective());
        assert!(map.check_word_independence());
        assert!(map.check_length_formula());
        assert!(map.check_psi_prime_multiplicative());
        assert_eq!(map.check_reduced_image(&[]), Ok(true));
        assert_eq!(map.check_reduced_image(&[0, 1]), Ok(true));
        assert_eq!(map.check_reduced_image(&[0, 0]), Err(WeylError::NotReduced(vec![0, 0])));
        let fixed = fixed_subgroup(q, &[vec![0, 2, 1]]);
        assert_eq!(fixed.len(), 8);
        assert_eq!(map.image(), fixed);
    }

    #[test]
    fn non_commuting_orbit_is_rejected() {
        let err = FoldingMap::new(group(&[&[2]]), a2(), vec![vec![0, 1]]).unwrap_err();
        assert_eq!(err, FoldingMapError::NonCommutingOrbit(0));
    }
}
