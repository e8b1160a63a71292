//! Paths and linear combinations of paths in a path algebra.
//!
//! Paths are written right to left like composition of maps: the path
//! `a b` traverses `b` first and then `a`. Concatenation of written words is
//! therefore the algebra product.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::linalg::Field;
use crate::quiver::Quiver;

/// A path in a quiver: a trivial path `e_v` or a composable arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: u32,
    target: u32,
    arrows: Vec<u32>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v as u32, target: v as u32, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        Path { source: q.source(a) as u32, target: q.target(a) as u32, arrows: vec![a as u32] }
    }

    /// Builds a path from arrows in written order; `None` if not composable.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Option<Self> {
        let (&first, rest) = arrows.split_first()?;
        let mut p = Path::arrow(q, first);
        for &a in rest {
            p = p.compose(&Path::arrow(q, a))?;
        }
        Some(p)
    }

    /// `ε^k` for a loop `ε` at `v`; `e_v` when `k = 0`.
    pub fn loop_power(q: &Quiver, v: usize, a: usize, k: usize) -> Self {
        debug_assert_eq!(q.source(a), v);
        debug_assert_eq!(q.target(a), v);
        if k == 0 {
            Path::trivial(v)
        } else {
            Path { source: v as u32, target: v as u32, arrows: vec![a as u32; k] }
        }
    }

    pub fn source(&self) -> usize {
        self.source as usize
    }

    pub fn target(&self) -> usize {
        self.target as usize
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.arrows.iter().map(|&a| a as usize)
    }

    /// The written product `self · other`, defined when `other` ends where
    /// `self` starts.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    /// Vertex sitting between the first `k` written arrows and the rest.
    fn vertex_at(&self, q: &Quiver, k: usize) -> usize {
        if k == 0 {
            self.target()
        } else {
            q.source(self.arrows[k - 1] as usize)
        }
    }

    /// Sub-path of written positions `start..end`.
    fn slice(&self, q: &Quiver, start: usize, end: usize) -> Path {
        if start == end {
            Path::trivial(self.vertex_at(q, start))
        } else {
            Path {
                source: q.source(self.arrows[end - 1] as usize) as u32,
                target: q.target(self.arrows[start] as usize) as u32,
                arrows: self.arrows[start..end].to_vec(),
            }
        }
    }

    /// All factorizations `self = left · pattern · right`.
    pub fn occurrences(&self, q: &Quiver, pattern: &Path) -> Vec<(Path, Path)> {
        let n = self.arrows.len();
        let m = pattern.arrows.len();
        let mut out = Vec::new();
        if m == 0 {
            for k in 0..=n {
                if self.vertex_at(q, k) == pattern.source() {
                    out.push((self.slice(q, 0, k), self.slice(q, k, n)));
                }
            }
        } else if m <= n {
            for k in 0..=n - m {
                if self.arrows[k..k + m] == pattern.arrows[..] {
                    out.push((self.slice(q, 0, k), self.slice(q, k + m, n)));
                }
            }
        }
        out
    }

    /// First factorization `self = left · pattern · right`, if any.
    pub fn find(&self, q: &Quiver, pattern: &Path) -> Option<(Path, Path)> {
        let n = self.arrows.len();
        let m = pattern.arrows.len();
        if m == 0 {
            return (0..=n)
                .find(|&k| self.vertex_at(q, k) == pattern.source())
                .map(|k| (self.slice(q, 0, k), self.slice(q, k, n)));
        }
        if m > n {
            return None;
        }
        (0..=n - m)
            .find(|&k| self.arrows[k..k + m] == pattern.arrows[..])
            .map(|k| (self.slice(q, 0, k), self.slice(q, k + m, n)))
    }

    pub fn divides(&self, q: &Quiver, other: &Path) -> bool {
        other.find(q, self).is_some()
    }

    /// Proper overlaps: `k` with `0 < k < min(len)` such that the last `k`
    /// written arrows of `self` are the first `k` of `other`.
    pub fn overlaps(&self, other: &Path) -> Vec<usize> {
        let (n, m) = (self.arrows.len(), other.arrows.len());
        (1..n.min(m)).filter(|&k| self.arrows[n - k..] == other.arrows[..k]).collect()
    }

    /// Prefix of `k` written arrows (with the right endpoint recomputed).
    pub fn prefix(&self, q: &Quiver, k: usize) -> Path {
        self.slice(q, 0, k)
    }

    pub fn suffix_from(&self, q: &Quiver, k: usize) -> Path {
        self.slice(q, k, self.arrows.len())
    }

    /// Readable form: `e_v` or arrow ids joined by `.`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices()[self.source()])
        } else {
            self.arrows.iter().map(|&a| q.arrows()[a as usize].id.as_str()).collect::<Vec<_>>().join(".")
        }
    }
}

/// Degree first, then lexicographic on arrow indices; trivial paths by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths. Zero coefficients are never stored
/// and terms are kept sorted by the path order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPoly<F: Field> {
    field: F,
    terms: BTreeMap<Path, F::Elem>,
}

impl<F: Field> PathPoly<F> {
    pub fn zero(field: F) -> Self {
        PathPoly { field, terms: BTreeMap::new() }
    }

    pub fn monomial(field: F, path: Path) -> Self {
        let one = field.one();
        let mut p = PathPoly::zero(field);
        p.add_term(path, &one);
        p
    }

    pub fn from_terms(field: F, terms: impl IntoIterator<Item = (Path, F::Elem)>) -> Self {
        let mut p = PathPoly::zero(field);
        for (path, c) in terms {
            p.add_term(path, &c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> F::Elem {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading (largest) term.
    pub fn lead(&self) -> Option<(&Path, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, path: Path, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&path) {
            Some(x) => {
                *x = self.field.add(x, c);
                if self.field.is_zero(x) {
                    self.terms.remove(&path);
                }
            }
            None => {
                self.terms.insert(path, c.clone());
            }
        }
    }

    /// `self += c * left · other · right`; products of non-composable paths vanish.
    pub fn add_scaled_product(&mut self, c: &F::Elem, left: &Path, other: &PathPoly<F>, right: &Path) {
        for (p, d) in &other.terms {
            if let Some(lp) = left.compose(p).and_then(|x| x.compose(right)) {
                let coeff = self.field.mul(c, d);
                self.add_term(lp, &coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = PathPoly::zero(self.field.clone());
        for (p, d) in &self.terms {
            out.add_term(p.clone(), &self.field.mul(c, d));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PathPoly::zero(self.field.clone());
        for (p, c) in &self.terms {
            for (r, d) in &other.terms {
                if let Some(pr) = p.compose(r) {
                    out.add_term(pr, &self.field.mul(c, d));
                }
            }
        }
        out
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero lead");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Splits into components `e_i · self · e_j`, each of which has all its
    /// paths running from `j` to `i`.
    pub fn uniform_components(&self) -> Vec<PathPoly<F>> {
        let mut parts: BTreeMap<(usize, usize), PathPoly<F>> = BTreeMap::new();
        for (p, c) in &self.terms {
            parts
                .entry((p.target(), p.source()))
                .or_insert_with(|| PathPoly::zero(self.field.clone()))
                .add_term(p.clone(), c);
        }
        parts.into_values().collect()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(p, c)| {
                let c = self.field.format(c);
                if c == "1" {
                    p.display(q)
                } else {
                    format!("{c}*{}", p.display(q))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
