//! Cartan triples `(C, D, Ω)`, folding of quivers with group action, and the
//! quivers `Q(C, Ω)` and `Q̃(C, Ω)` carrying the generalized preprojective
//! algebras.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::quiver::{GroupAction, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("index set, C and D have inconsistent sizes")]
    Shape,
    #[error("duplicate index `{0}`")]
    DuplicateIndex(String),
    #[error("unknown index `{0}` in orientation")]
    UnknownIndex(String),
    #[error("c_{{{0},{0}}} must be 2")]
    Diagonal(String),
    #[error("off-diagonal sign condition fails at ({0}, {1})")]
    OffDiagonal(String, String),
    #[error("symmetrizer entries must be positive")]
    Symmetrizer,
    #[error("DC is not symmetric at ({0}, {1})")]
    NotSymmetrized(String, String),
    #[error("orientation does not match the nonzero pattern of C at ({0}, {1})")]
    Orientation(String, String),
    #[error("orientation contains a directed cycle")]
    CyclicOrientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("quiver is not acyclic")]
    NotAcyclic,
    #[error("fold is not integral between orbits {0} and {1}")]
    NonIntegralFold(String, String),
    #[error("arrows run in both directions between orbits {0} and {1}")]
    MixedOrientation(String, String),
    #[error("folded data is not a Cartan triple: {0}")]
    InvalidTriple(#[from] CartanError),
}

/// A symmetrizable generalized Cartan matrix with symmetrizer and acyclic
/// orientation, indexed by an ordered set of names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanTriple {
    index: Vec<String>,
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    omega: BTreeSet<(usize, usize)>,
}

impl CartanTriple {
    pub fn new(
        index: Vec<String>,
        c: Vec<Vec<i64>>,
        d: Vec<i64>,
        omega: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, CartanError> {
        let n = index.len();
        if c.len() != n || c.iter().any(|r| r.len() != n) || d.len() != n {
            return Err(CartanError::Shape);
        }
        let omega: BTreeSet<(usize, usize)> = omega.into_iter().collect();
        if omega.iter().any(|&(i, j)| i >= n || j >= n) {
            return Err(CartanError::Shape);
        }
        let t = CartanTriple { index, c, d, omega };
        t.validate()?;
        Ok(t)
    }

    /// Like [`CartanTriple::new`] but with the orientation given by index names.
    pub fn from_names(
        index: Vec<String>,
        c: Vec<Vec<i64>>,
        d: Vec<i64>,
        omega: &[(String, String)],
    ) -> Result<Self, CartanError> {
        let pos: HashMap<&str, usize> = index.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let look = |s: &String| pos.get(s.as_str()).copied().ok_or_else(|| CartanError::UnknownIndex(s.clone()));
        let pairs = omega
            .iter()
            .map(|(i, j)| Ok((look(i)?, look(j)?)))
            .collect::<Result<Vec<_>, CartanError>>()?;
        CartanTriple::new(index, c, d, pairs)
    }

    fn validate(&self) -> Result<(), CartanError> {
        let n = self.rank();
        let name = |i: usize| self.index[i].clone();
        let mut seen = BTreeSet::new();
        for s in &self.index {
            if !seen.insert(s) {
                return Err(CartanError::DuplicateIndex(s.clone()));
            }
        }
        if self.d.iter().any(|&x| x <= 0) {
            return Err(CartanError::Symmetrizer);
        }
        for i in 0..n {
            if self.c[i][i] != 2 {
                return Err(CartanError::Diagonal(name(i)));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (self.c[i][j], self.c[j][i]);
                if a > 0 || (a < 0) != (b < 0) {
                    return Err(CartanError::OffDiagonal(name(i), name(j)));
                }
                if self.d[i] * a != self.d[j] * b {
                    return Err(CartanError::NotSymmetrized(name(i), name(j)));
                }
                let oriented = self.omega.contains(&(i, j)) || self.omega.contains(&(j, i));
                if oriented != (a < 0) {
                    return Err(CartanError::Orientation(name(i), name(j)));
                }
            }
            if self.omega.contains(&(i, i)) {
                return Err(CartanError::CyclicOrientation);
            }
        }
        // (O2): no directed cycle; Kahn's algorithm on the orientation graph.
        let mut indeg = vec![0usize; n];
        for &(_, j) in &self.omega {
            indeg[j] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for &(a, b) in &self.omega {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        if removed != n {
            return Err(CartanError::CyclicOrientation);
        }
        Ok(())
    }

    /// The symmetric triple of an acyclic quiver: `c_ij = -#{arrows between i and j}`,
    /// `D = 1`, and `(j, i) ∈ Ω` whenever there is an arrow `i -> j`.
    pub fn of_quiver(q: &Quiver) -> Result<Self, FoldError> {
        fold(q, &GroupAction::trivial(q)).map(|mut t| {
            t.index = q.vertices().to_vec();
            t
        })
    }

    pub fn rank(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[String] {
        &self.index
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.iter().position(|s| s == name)
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    /// Symmetrizer entry `c_i`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn omega(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.omega.iter().copied()
    }

    pub fn in_omega(&self, i: usize, j: usize) -> bool {
        self.omega.contains(&(i, j))
    }

    /// `gcd(c_ij, c_ji)`, taken positive.
    pub fn arrow_multiplicity(&self, i: usize, j: usize) -> i64 {
        gcd(self.c[i][j], self.c[j][i])
    }

    /// Orientation pairs by name.
    pub fn omega_names(&self) -> Vec<(String, String)> {
        self.omega.iter().map(|&(i, j)| (self.index[i].clone(), self.index[j].clone())).collect()
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Folds a quiver with group action into a Cartan triple indexed by vertex orbits.
///
/// `c_{I,J} = -N_{I,J} / |J|` where `N_{I,J}` counts arrows between the two
/// orbits, `c_I = |G| / |I|`, and `(J, I) ∈ Ω` when arrows run from `I` to `J`.
pub fn fold(q: &Quiver, action: &GroupAction) -> Result<CartanTriple, FoldError> {
    if !q.is_acyclic() {
        return Err(FoldError::NotAcyclic);
    }
    let orbits = action.orbits(q);
    let n = orbits.vertex_orbits.len();
    let names = orbits.vertex_orbit_names.clone();
    let size = |i: usize| orbits.vertex_orbits[i].len() as i64;
    let mut count = vec![vec![0i64; n]; n];
    let mut directed = BTreeSet::new();
    for arrow in q.arrows() {
        let (i, j) = (orbits.vertex_orbit_of[arrow.source], orbits.vertex_orbit_of[arrow.target]);
        assert_ne!(i, j, "acyclic quivers have no arrow inside an orbit");
        count[i][j] += 1;
        count[j][i] += 1;
        directed.insert((j, i));
    }
    for &(j, i) in &directed {
        if directed.contains(&(i, j)) {
            return Err(FoldError::MixedOrientation(names[i].clone(), names[j].clone()));
        }
    }
    let order = action.order() as i64;
    let mut c = vec![vec![0i64; n]; n];
    let mut d = vec![0i64; n];
    for i in 0..n {
        c[i][i] = 2;
        if order % size(i) != 0 {
            return Err(FoldError::NonIntegralFold(names[i].clone(), names[i].clone()));
        }
        d[i] = order / size(i);
        for j in 0..n {
            if i != j {
                if count[i][j] % size(j) != 0 {
                    return Err(FoldError::NonIntegralFold(names[i].clone(), names[j].clone()));
                }
                c[i][j] = -count[i][j] / size(j);
            }
        }
    }
    Ok(CartanTriple::new(names, c, d, directed)?)
}

/// One arrow `α_{ij}^{(g)}: j -> i` of `Q(C, Ω)` or `Q̃(C, Ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GlsArrow {
    pub i: usize,
    pub j: usize,
    pub g: usize,
    pub arrow: usize,
}

/// `Q(C, Ω)` (or its tilde variant) with bookkeeping for loops and arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlsQuiver {
    pub quiver: Quiver,
    /// `loops[i]` is the arrow index of `ε_i`.
    pub loops: Vec<usize>,
    pub arrows: Vec<GlsArrow>,
}

impl GlsQuiver {
    pub fn arrow(&self, i: usize, j: usize, g: usize) -> Option<usize> {
        self.arrows.iter().find(|a| a.i == i && a.j == j && a.g == g).map(|a| a.arrow)
    }
}

fn alpha_id(t: &CartanTriple, i: usize, j: usize, g: usize) -> String {
    if t.arrow_multiplicity(i, j) == 1 {
        format!("alpha[{},{}]", t.index[i], t.index[j])
    } else {
        format!("alpha[{},{};{}]", t.index[i], t.index[j], g)
    }
}

fn build_gls_quiver(t: &CartanTriple, tilde: bool) -> GlsQuiver {
    let n = t.rank();
    let mut specs: Vec<(String, String, String)> =
        (0..n).map(|i| (format!("eps[{}]", t.index[i]), t.index[i].clone(), t.index[i].clone())).collect();
    let mut pairs: Vec<(usize, usize)> = t.omega().collect();
    if tilde {
        pairs.extend(t.omega().map(|(i, j)| (j, i)));
    }
    let mut arrows = Vec::new();
    for (i, j) in pairs {
        for g in 1..=t.arrow_multiplicity(i, j) as usize {
            arrows.push(GlsArrow { i, j, g, arrow: specs.len() });
            specs.push((alpha_id(t, i, j, g), t.index[j].clone(), t.index[i].clone()));
        }
    }
    let quiver = Quiver::new(t.index.iter().cloned(), specs).expect("generated ids are distinct");
    GlsQuiver { quiver, loops: (0..n).collect(), arrows }
}

/// `Q(C, Ω)`: a loop `ε_i` at every vertex and `gcd(c_ij, c_ji)` arrows `j -> i`
/// for each `(i, j) ∈ Ω`.
pub fn quiver_of_cartan(t: &CartanTriple) -> GlsQuiver {
    build_gls_quiver(t, false)
}

/// `Q̃(C, Ω)`: `Q(C, Ω)` plus a reverse arrow `α_{ji}^{(g)}: i -> j` for every
/// `α_{ij}^{(g)}`. Loops are not doubled.
pub fn tilde_quiver_of_cartan(t: &CartanTriple) -> GlsQuiver {
    build_gls_quiver(t, true)
}
