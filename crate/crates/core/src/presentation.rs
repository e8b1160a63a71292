//! Quiver presentations of the preprojective algebra `Π(Q)`, the algebra
//! `H(C, D, Ω)` and the generalized preprojective algebra `Π(C, D, Ω)`.

use thiserror::Error;

use crate::cartan::{gcd, quiver_of_cartan, tilde_quiver_of_cartan, CartanTriple, GlsQuiver};
use crate::linalg::Field;
use crate::path::{Path, PathPoly};
use crate::quiver::{double_quiver, DoubleQuiver, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("quiver is not acyclic")]
    NotAcyclic,
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("arrows {0:?} do not compose to a path")]
    NotAPath(Vec<String>),
}

/// `K Q / (relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation<F: Field> {
    field: F,
    quiver: Quiver,
    relations: Vec<PathPoly<F>>,
}

impl<F: Field> Presentation<F> {
    pub fn new(field: F, quiver: Quiver, relations: Vec<PathPoly<F>>) -> Result<Self, PresentationError> {
        if let Some(i) = relations.iter().position(PathPoly::is_zero) {
            return Err(PresentationError::ZeroRelation(i));
        }
        Ok(Presentation { field, quiver, relations })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathPoly<F>] {
        &self.relations
    }

    /// Same presentation with arrows renumbered: new arrow `k` is old arrow
    /// `order[k]`. Changes the path order used by the normal-form engine.
    pub fn reorder_arrows(&self, order: &[usize]) -> Self {
        let q = &self.quiver;
        let specs: Vec<(String, String, String)> = order
            .iter()
            .map(|&a| {
                let arr = &q.arrows()[a];
                (arr.id.clone(), q.vertices()[arr.source].clone(), q.vertices()[arr.target].clone())
            })
            .collect();
        let quiver = Quiver::new(q.vertices().iter().cloned(), specs).expect("permuted quiver");
        let mut new_index = vec![0; order.len()];
        for (k, &a) in order.iter().enumerate() {
            new_index[a] = k;
        }
        let relations = self
            .relations
            .iter()
            .map(|r| {
                PathPoly::from_terms(
                    self.field.clone(),
                    r.terms().map(|(p, c)| {
                        let path = if p.is_trivial() {
                            p.clone()
                        } else {
                            let arrows: Vec<usize> = p.arrows().map(|a| new_index[a]).collect();
                            Path::from_arrows(&quiver, &arrows).expect("renumbering keeps paths")
                        };
                        (path, c.clone())
                    }),
                )
            })
            .collect();
        Presentation { field: self.field.clone(), quiver, relations }
    }

    /// Builds a relation from `(coefficient, written arrow ids)` terms; an
    /// empty id list means the trivial path at `vertex`.
    pub fn relation_from_ids(
        field: &F,
        quiver: &Quiver,
        terms: &[(i64, Vec<String>, Option<String>)],
    ) -> Result<PathPoly<F>, PresentationError> {
        let mut poly = PathPoly::zero(field.clone());
        for (c, ids, vertex) in terms {
            let path = if ids.is_empty() {
                let v = vertex.clone().unwrap_or_default();
                let idx = quiver.vertex(&v).ok_or(PresentationError::UnknownVertex(v))?;
                Path::trivial(idx)
            } else {
                let arrows = ids
                    .iter()
                    .map(|id| quiver.arrow(id).ok_or_else(|| PresentationError::UnknownArrow(id.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                Path::from_arrows(quiver, &arrows).ok_or_else(|| PresentationError::NotAPath(ids.clone()))?
            };
            poly.add_term(path, &field.from_i64(*c));
        }
        Ok(poly)
    }
}

/// `Π(Q)` over the double quiver, with the relation
/// `Σ_{a ∈ Q1} (a a* − a* a)` split into its vertex components.
pub fn preprojective_presentation<F: Field>(
    field: F,
    q: &Quiver,
) -> Result<(Presentation<F>, DoubleQuiver), PresentationError> {
    if !q.is_acyclic() {
        return Err(PresentationError::NotAcyclic);
    }
    let dq = double_quiver(q);
    let dquiver = &dq.quiver;
    let one = field.one();
    let minus_one = field.neg(&one);
    let mut relations = Vec::new();
    for v in 0..q.vertex_count() {
        let mut rel = PathPoly::zero(field.clone());
        for a in 0..dq.original {
            let astar = dq.star[a];
            // a a* is a cycle at t(a), a* a a cycle at s(a)
            if dquiver.target(a) == v {
                rel.add_term(Path::from_arrows(dquiver, &[a, astar]).unwrap(), &one);
            }
            if dquiver.source(a) == v {
                rel.add_term(Path::from_arrows(dquiver, &[astar, a]).unwrap(), &minus_one);
            }
        }
        if !rel.is_zero() {
            relations.push(rel);
        }
    }
    let p = Presentation::new(field, dquiver.clone(), relations)?;
    Ok((p, dq))
}

fn eps_power(gq: &GlsQuiver, v: usize, k: i64) -> Path {
    Path::loop_power(&gq.quiver, v, gq.loops[v], k as usize)
}

fn nilpotency<F: Field>(field: &F, t: &CartanTriple, gq: &GlsQuiver) -> Vec<PathPoly<F>> {
    (0..t.rank()).map(|k| PathPoly::monomial(field.clone(), eps_power(gq, k, t.d(k)))).collect()
}

/// `ε_i^{c_i/g} α − α ε_j^{c_j/g}` with `g = gcd(c_i, c_j)`.
fn commutativity<F: Field>(field: &F, t: &CartanTriple, gq: &GlsQuiver, i: usize, j: usize) -> Vec<PathPoly<F>> {
    let g = gcd(t.d(i), t.d(j));
    let (ei, ej) = (eps_power(gq, i, t.d(i) / g), eps_power(gq, j, t.d(j) / g));
    let one = field.one();
    let minus_one = field.neg(&one);
    (1..=t.arrow_multiplicity(i, j) as usize)
        .map(|m| {
            let alpha = Path::arrow(&gq.quiver, gq.arrow(i, j, m).expect("arrow of Q(C, Ω)"));
            let mut r = PathPoly::zero(field.clone());
            r.add_term(ei.compose(&alpha).unwrap(), &one);
            r.add_term(alpha.compose(&ej).unwrap(), &minus_one);
            r
        })
        .collect()
}

/// `H(C, D, Ω)`: nilpotency and commutativity relations over `Q(C, Ω)`.
pub fn gls_h_presentation<F: Field>(field: F, t: &CartanTriple) -> Presentation<F> {
    let gq = quiver_of_cartan(t);
    let mut relations = nilpotency(&field, t, &gq);
    for (i, j) in t.omega() {
        relations.extend(commutativity(&field, t, &gq, i, j));
    }
    Presentation::new(field, gq.quiver, relations).expect("relations are nonzero")
}

/// `Π(C, D, Ω)` over `Q̃(C, Ω)`: nilpotency, commutativity for both
/// orientations, and the signed mesh relation at every vertex.
pub fn gls_pi_presentation<F: Field>(field: F, t: &CartanTriple) -> Presentation<F> {
    let gq = tilde_quiver_of_cartan(t);
    let mut relations = nilpotency(&field, t, &gq);
    let both: Vec<(usize, usize)> = t.omega().chain(t.omega().map(|(i, j)| (j, i))).collect();
    for &(i, j) in &both {
        relations.extend(commutativity(&field, t, &gq, i, j));
    }
    let q = &gq.quiver;
    for i in 0..t.rank() {
        let mut mesh = PathPoly::zero(field.clone());
        for &(a, j) in both.iter().filter(|(a, _)| *a == i) {
            let sign = if t.in_omega(a, j) { field.one() } else { field.neg(&field.one()) };
            let top = t.d(i) / gcd(t.d(i), t.d(j));
            for m in 1..=t.arrow_multiplicity(i, j) as usize {
                let there = Path::arrow(q, gq.arrow(i, j, m).unwrap());
                let back = Path::arrow(q, gq.arrow(j, i, m).unwrap());
                let cycle = there.compose(&back).unwrap();
                for l in 0..top {
                    let p = eps_power(&gq, i, l)
                        .compose(&cycle)
                        .and_then(|x| x.compose(&eps_power(&gq, i, top - 1 - l)))
                        .unwrap();
                    mesh.add_term(p, &sign);
                }
            }
        }
        if !mesh.is_zero() {
            relations.push(mesh);
        }
    }
    Presentation::new(field, gq.quiver, relations).expect("relations are nonzero")
}
