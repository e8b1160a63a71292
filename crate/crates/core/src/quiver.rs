//! Quivers, quiver automorphisms and finite group actions.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("arrow `{0}` is not mapped compatibly with its endpoints")]
    Incompatible(String),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("quiver has a directed cycle")]
    NotAcyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver `Q = (Q0, Q1; s, t)` with string ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(id, from, to)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateId(v.clone()));
            }
        }
        let mut out = Vec::new();
        let mut arrow_index = HashMap::new();
        for (id, from, to) in arrows {
            let source = *vertex_index.get(&from).ok_or(QuiverError::UnknownVertex(from))?;
            let target = *vertex_index.get(&to).ok_or(QuiverError::UnknownVertex(to))?;
            if arrow_index.insert(id.clone(), out.len()).is_some() || vertex_index.contains_key(&id) {
                return Err(QuiverError::DuplicateId(id));
            }
            out.push(Arrow { id, source, target });
        }
        Ok(Quiver { vertices, arrows: out, vertex_index, arrow_index })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, QuiverError> {
        Quiver::new(
            vertices.iter().copied(),
            arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn source(&self, arrow: usize) -> usize {
        self.arrows[arrow].source
    }

    pub fn target(&self, arrow: usize) -> usize {
        self.arrows[arrow].target
    }

    /// True when there is no directed cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        seen == n
    }

    /// Number of arrows between `i` and `j` in either direction.
    pub fn arrows_between(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.source == i && a.target == j) || (a.source == j && a.target == i))
            .count()
    }
}

/// The double quiver together with the pairing `a <-> a*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleQuiver {
    pub quiver: Quiver,
    /// `star[a]` is the partner of arrow `a`.
    pub star: Vec<usize>,
    /// Arrows `0..original` come from `Q`, the rest are the starred ones.
    pub original: usize,
}

impl DoubleQuiver {
    pub fn is_starred(&self, arrow: usize) -> bool {
        arrow >= self.original
    }

    /// Extends an automorphism of `Q` by `g(a*) = g(a)*`.
    pub fn lift(&self, g: &QuiverAutomorphism) -> QuiverAutomorphism {
        let m = self.original;
        let mut arrows = vec![0; 2 * m];
        for a in 0..m {
            arrows[a] = g.arrows[a];
            arrows[a + m] = g.arrows[a] + m;
        }
        QuiverAutomorphism { vertices: g.vertices.clone(), arrows }
    }

    /// Forgets the starred arrows.
    pub fn retract(&self) -> Quiver {
        let q = &self.quiver;
        Quiver::new(
            q.vertices.iter().cloned(),
            q.arrows[..self.original].iter().map(|a| {
                (a.id.clone(), q.vertices[a.source].clone(), q.vertices[a.target].clone())
            }),
        )
        .expect("sub-quiver of a valid quiver")
    }
}

/// Adds a reverse arrow `a*: t(a) -> s(a)` for every arrow of `q`.
pub fn double_quiver(q: &Quiver) -> DoubleQuiver {
    let m = q.arrow_count();
    let name = |v: usize| q.vertices[v].clone();
    let forward = q.arrows.iter().map(|a| (a.id.clone(), name(a.source), name(a.target)));
    let backward = q.arrows.iter().map(|a| (format!("{}*", a.id), name(a.target), name(a.source)));
    let quiver = Quiver::new(q.vertices.iter().cloned(), forward.chain(backward).collect::<Vec<_>>())
        .expect("starred ids are fresh unless the input already uses them");
    let star = (0..2 * m).map(|a| if a < m { a + m } else { a - m }).collect();
    DoubleQuiver { quiver, star, original: m }
}

/// A pair of permutations of vertices and arrows commuting with `s` and `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuiverAutomorphism {
    vertices: Vec<usize>,
    arrows: Vec<usize>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl QuiverAutomorphism {
    pub fn new(q: &Quiver, vertices: Vec<usize>, arrows: Vec<usize>) -> Result<Self, QuiverError> {
        if vertices.len() != q.vertex_count() || !is_permutation(&vertices) {
            return Err(QuiverError::NotBijective("vertex map".into()));
        }
        if arrows.len() != q.arrow_count() || !is_permutation(&arrows) {
            return Err(QuiverError::NotBijective("arrow map".into()));
        }
        for (a, arrow) in q.arrows.iter().enumerate() {
            let image = &q.arrows[arrows[a]];
            if image.source != vertices[arrow.source] || image.target != vertices[arrow.target] {
                return Err(QuiverError::Incompatible(arrow.id.clone()));
            }
        }
        Ok(QuiverAutomorphism { vertices, arrows })
    }

    /// Builds an automorphism from id maps; ids missing from a map are fixed.
    pub fn from_maps<'a>(
        q: &Quiver,
        vertex_map: impl IntoIterator<Item = (&'a str, &'a str)>,
        arrow_map: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, QuiverError> {
        let mut vertices: Vec<usize> = (0..q.vertex_count()).collect();
        for (from, to) in vertex_map {
            let i = q.vertex(from).ok_or_else(|| QuiverError::UnknownVertex(from.into()))?;
            vertices[i] = q.vertex(to).ok_or_else(|| QuiverError::UnknownVertex(to.into()))?;
        }
        let mut arrows: Vec<usize> = (0..q.arrow_count()).collect();
        for (from, to) in arrow_map {
            let a = q.arrow(from).ok_or_else(|| QuiverError::UnknownArrow(from.into()))?;
            arrows[a] = q.arrow(to).ok_or_else(|| QuiverError::UnknownArrow(to.into()))?;
        }
        QuiverAutomorphism::new(q, vertices, arrows)
    }

    pub fn identity(q: &Quiver) -> Self {
        QuiverAutomorphism {
            vertices: (0..q.vertex_count()).collect(),
            arrows: (0..q.arrow_count()).collect(),
        }
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> usize {
        self.arrows[a]
    }

    pub fn vertex_permutation(&self) -> &[usize] {
        &self.vertices
    }

    pub fn arrow_permutation(&self) -> &[usize] {
        &self.arrows
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &x)| i == x)
            && self.arrows.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        QuiverAutomorphism {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            arrows: other.arrows.iter().map(|&a| self.arrows[a]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut vertices = vec![0; self.vertices.len()];
        for (i, &x) in self.vertices.iter().enumerate() {
            vertices[x] = i;
        }
        let mut arrows = vec![0; self.arrows.len()];
        for (i, &x) in self.arrows.iter().enumerate() {
            arrows[x] = i;
        }
        QuiverAutomorphism { vertices, arrows }
    }
}

/// Multiplication table of a finite group; element `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl GroupTable {
    pub fn from_table(mul: Vec<Vec<usize>>) -> Self {
        let n = mul.len();
        let inv = (0..n)
            .map(|g| (0..n).find(|&h| mul[g][h] == 0).expect("group has inverses"))
            .collect();
        GroupTable { mul, inv }
    }

    /// `Z/n` with element `k` standing for `σ^k`.
    pub fn cyclic(n: usize) -> Self {
        GroupTable::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul[x][g];
            k += 1;
        }
        k
    }
}

/// Upper bound on the size of a generated group.
pub const GROUP_CAP: usize = 10_000;

/// A finite group acting faithfully on a quiver, stored as explicit permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    generators: Vec<QuiverAutomorphism>,
    elements: Vec<QuiverAutomorphism>,
    table: GroupTable,
    cyclic_generator: Option<usize>,
}

impl GroupAction {
    /// Closes `generators` under composition (BFS, capped at [`GROUP_CAP`]).
    pub fn generate(q: &Quiver, generators: Vec<QuiverAutomorphism>) -> Result<Self, QuiverError> {
        let id = QuiverAutomorphism::identity(q);
        for g in &generators {
            if g.vertices.len() != q.vertex_count() || g.arrows.len() != q.arrow_count() {
                return Err(QuiverError::NotBijective("generator does not act on this quiver".into()));
            }
        }
        let mut elements = vec![id.clone()];
        let mut index: HashMap<QuiverAutomorphism, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&elements[x]);
                if !index.contains_key(&y) {
                    if elements.len() >= GROUP_CAP {
                        return Err(QuiverError::GroupTooLarge(GROUP_CAP));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let mul = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let table = GroupTable::from_table(mul);
        let n = table.order();
        let cyclic_generator = (0..n).find(|&g| table.element_order(g) == n);
        Ok(GroupAction { generators, elements, table, cyclic_generator })
    }

    pub fn trivial(q: &Quiver) -> Self {
        GroupAction::generate(q, Vec::new()).expect("trivial group")
    }

    pub fn generators(&self) -> &[QuiverAutomorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &[QuiverAutomorphism] {
        &self.elements
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of an element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.cyclic_generator
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator.is_some()
    }

    /// Computes orbits and stabilizers of vertices and arrows.
    pub fn orbits(&self, q: &Quiver) -> OrbitData {
        let part = |count: usize, image: &dyn Fn(&QuiverAutomorphism, usize) -> usize| {
            let mut orbit_of = vec![usize::MAX; count];
            let mut orbits: Vec<Vec<usize>> = Vec::new();
            for x in 0..count {
                if orbit_of[x] != usize::MAX {
                    continue;
                }
                let mut members: Vec<usize> =
                    self.elements.iter().map(|g| image(g, x)).collect::<HashSet<_>>().into_iter().collect();
                members.sort_unstable();
                for &m in &members {
                    orbit_of[m] = orbits.len();
                }
                orbits.push(members);
            }
            let stabilizers = (0..count)
                .map(|x| (0..self.elements.len()).filter(|&g| image(&self.elements[g], x) == x).collect())
                .collect();
            (orbits, orbit_of, stabilizers)
        };
        let (vertex_orbits, vertex_orbit_of, vertex_stabilizers) =
            part(q.vertex_count(), &|g, v| g.vertex(v));
        let (arrow_orbits, arrow_orbit_of, arrow_stabilizers) = part(q.arrow_count(), &|g, a| g.arrow(a));
        let vertex_orbit_names = vertex_orbits
            .iter()
            .map(|o| format!("o_{}", o.iter().map(|&v| q.vertices()[v].as_str()).min().unwrap()))
            .collect();
        OrbitData {
            vertex_orbits,
            vertex_orbit_of,
            vertex_orbit_names,
            vertex_stabilizers,
            arrow_orbits,
            arrow_orbit_of,
            arrow_stabilizers,
        }
    }

    /// Condition (*): every arrow stabilizer is the intersection of the
    /// stabilizers of its endpoints.
    pub fn satisfies_star_condition(&self, q: &Quiver) -> bool {
        let data = self.orbits(q);
        q.arrows().iter().enumerate().all(|(a, arrow)| {
            let s: HashSet<usize> = data.vertex_stabilizers[arrow.source].iter().copied().collect();
            let both: Vec<usize> = data.vertex_stabilizers[arrow.target]
                .iter()
                .copied()
                .filter(|g| s.contains(g))
                .collect();
            both == data.arrow_stabilizers[a]
        })
    }
}

/// Orbit partition of vertices and arrows. Orbits are listed in order of
/// their first member; stabilizers are lists of group element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub vertex_orbits: Vec<Vec<usize>>,
    pub vertex_orbit_of: Vec<usize>,
    /// `o_` followed by the lexicographically least member id.
    pub vertex_orbit_names: Vec<String>,
    pub vertex_stabilizers: Vec<Vec<usize>>,
    pub arrow_orbits: Vec<Vec<usize>>,
    pub arrow_orbit_of: Vec<usize>,
    pub arrow_stabilizers: Vec<Vec<usize>>,
}
