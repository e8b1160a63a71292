//! Noncommutative Gröbner completion in path algebras.
//!
//! Relations are first split into uniform components (all paths between the
//! same pair of vertices). Completion is Buchberger's algorithm for the free
//! algebra adapted to paths: leading paths are rewritten, overlaps between
//! leading paths produce S-elements, and pairs are processed by ascending
//! overlap length. Rules whose leading path contains another leading path are
//! retired and their remainder is fed back. After the main loop every overlap
//! of the final system is re-checked, so a returned system is confluent.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use thiserror::Error;

use crate::linalg::Field;
use crate::path::{Path, PathPoly};
use crate::presentation::Presentation;
use crate::quiver::Quiver;

pub const DEFAULT_DEGREE_CAP: usize = 40;
pub const DEFAULT_DIM_CAP: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("completion produced an overlap of degree {0}, above the degree cap")]
    DegreeCapExceeded(usize),
    #[error("more than {0} normal words; the quotient may be infinite-dimensional")]
    DimensionCapExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineCaps {
    pub degree_cap: usize,
    pub dim_cap: usize,
}

impl Default for EngineCaps {
    fn default() -> Self {
        EngineCaps { degree_cap: DEFAULT_DEGREE_CAP, dim_cap: DEFAULT_DIM_CAP }
    }
}

#[derive(Debug, Clone)]
struct Rule<F: Field> {
    lead: Path,
    poly: PathPoly<F>,
}

/// A completed (confluent) rewriting system for a presentation.
#[derive(Debug, Clone)]
pub struct RewritingSystem<F: Field> {
    field: F,
    quiver: Quiver,
    rules: Vec<Rule<F>>,
}

impl<F: Field> RewritingSystem<F> {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Leading paths of the rules.
    pub fn leading_paths(&self) -> impl Iterator<Item = &Path> {
        self.rules.iter().map(|r| &r.lead)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_normal(&self, p: &Path) -> bool {
        !self.rules.iter().any(|r| r.lead.divides(&self.quiver, p))
    }

    /// Normal form of a path-algebra element.
    pub fn reduce(&self, f: &PathPoly<F>) -> PathPoly<F> {
        reduce_with(&self.field, &self.quiver, self.rules.iter(), f)
    }
}

fn reduce_with<'a, F: Field>(
    field: &F,
    q: &Quiver,
    rules: impl Iterator<Item = &'a Rule<F>> + Clone,
    f: &PathPoly<F>,
) -> PathPoly<F> {
    let mut todo: BTreeMap<Path, F::Elem> = f.terms().map(|(p, c)| (p.clone(), c.clone())).collect();
    let mut done = PathPoly::zero(field.clone());
    while let Some((m, c)) = todo.pop_last() {
        let hit = rules.clone().find_map(|r| m.find(q, &r.lead).map(|lr| (r, lr)));
        match hit {
            None => done.add_term(m, &c),
            Some((rule, (left, right))) => {
                let minus = field.neg(&c);
                for (p, d) in rule.poly.terms() {
                    if *p == rule.lead {
                        continue;
                    }
                    let path = left.compose(p).and_then(|x| x.compose(&right)).expect("uniform rule");
                    let coeff = field.mul(&minus, d);
                    let slot = todo.entry(path.clone()).or_insert_with(|| field.zero());
                    *slot = field.add(slot, &coeff);
                    if field.is_zero(slot) {
                        todo.remove(&path);
                    }
                }
            }
        }
    }
    done
}

struct Completion<F: Field> {
    field: F,
    quiver: Quiver,
    rules: Vec<Option<Rule<F>>>,
    pairs: BinaryHeap<Reverse<(usize, usize, usize, usize)>>,
    pending: Vec<PathPoly<F>>,
    degree_cap: usize,
}

impl<F: Field> Completion<F> {
    fn alive(&self) -> impl Iterator<Item = &Rule<F>> + Clone {
        self.rules.iter().flatten()
    }

    fn reduce(&self, f: &PathPoly<F>) -> PathPoly<F> {
        reduce_with(&self.field, &self.quiver, self.alive(), f)
    }

    fn push_pairs(&mut self, id: usize) {
        let lead = self.rules[id].as_ref().unwrap().lead.clone();
        for (other, rule) in self.rules.iter().enumerate() {
            let Some(rule) = rule else { continue };
            for k in lead.overlaps(&rule.lead) {
                self.pairs.push(Reverse((lead.len() + rule.lead.len() - k, id, other, k)));
            }
            if other != id {
                for k in rule.lead.overlaps(&lead) {
                    self.pairs.push(Reverse((lead.len() + rule.lead.len() - k, other, id, k)));
                }
            }
        }
    }

    fn add(&mut self, f: PathPoly<F>) -> Result<(), EngineError> {
        let r = self.reduce(&f);
        if r.is_zero() {
            return Ok(());
        }
        let r = r.monic();
        let lead = r.lead().unwrap().0.clone();
        if lead.len() > self.degree_cap {
            return Err(EngineError::DegreeCapExceeded(lead.len()));
        }
        for slot in self.rules.iter_mut() {
            if slot.as_ref().is_some_and(|old| lead.divides(&self.quiver, &old.lead)) {
                let old = slot.take().unwrap();
                self.pending.push(old.poly);
            }
        }
        self.rules.push(Some(Rule { lead, poly: r }));
        self.push_pairs(self.rules.len() - 1);
        Ok(())
    }

    /// `f · C − A · g` for `lead(f) = A B`, `lead(g) = B C`, `|B| = k`.
    fn s_element(&self, a: usize, b: usize, k: usize) -> PathPoly<F> {
        let (f, g) = (self.rules[a].as_ref().unwrap(), self.rules[b].as_ref().unwrap());
        let q = &self.quiver;
        let left = f.lead.prefix(q, f.lead.len() - k);
        let right = g.lead.suffix_from(q, k);
        let one = self.field.one();
        let minus = self.field.neg(&one);
        let mut s = PathPoly::zero(self.field.clone());
        s.add_scaled_product(&one, &Path::trivial(f.lead.target()), &f.poly, &right);
        s.add_scaled_product(&minus, &left, &g.poly, &Path::trivial(g.lead.source()));
        s
    }

    fn run(&mut self) -> Result<(), EngineError> {
        loop {
            while let Some(f) = self.pending.pop() {
                self.add(f)?;
            }
            let Some(Reverse((deg, a, b, k))) = self.pairs.pop() else { break };
            if self.rules[a].is_none() || self.rules[b].is_none() {
                continue;
            }
            if deg > self.degree_cap {
                return Err(EngineError::DegreeCapExceeded(deg));
            }
            let s = self.s_element(a, b, k);
            self.pending.push(s);
        }
        Ok(())
    }

    /// Re-checks every overlap of the final system; requeues any that fail.
    fn certify(&mut self) -> bool {
        let ids: Vec<usize> = (0..self.rules.len()).filter(|&i| self.rules[i].is_some()).collect();
        let mut clean = true;
        for &a in &ids {
            for &b in &ids {
                let (la, lb) = (&self.rules[a].as_ref().unwrap().lead, &self.rules[b].as_ref().unwrap().lead);
                for k in la.overlaps(lb) {
                    let s = self.s_element(a, b, k);
                    if !self.reduce(&s).is_zero() {
                        self.pending.push(s);
                        clean = false;
                    }
                }
            }
        }
        clean
    }
}

/// Completes the relations of `p` into a confluent rewriting system.
pub fn complete<F: Field>(p: &Presentation<F>, degree_cap: usize) -> Result<RewritingSystem<F>, EngineError> {
    let mut c = Completion {
        field: p.field().clone(),
        quiver: p.quiver().clone(),
        rules: Vec::new(),
        pairs: BinaryHeap::new(),
        pending: Vec::new(),
        degree_cap,
    };
    let mut input: Vec<PathPoly<F>> = p.relations().iter().flat_map(PathPoly::uniform_components).collect();
    // largest first off the stack is wasteful; feed small leads first
    input.sort_by(|x, y| y.lead().map(|l| l.0).cmp(&x.lead().map(|l| l.0)));
    c.pending = input;
    loop {
        c.run()?;
        if c.certify() {
            break;
        }
    }
    let rules: Vec<Rule<F>> = c.rules.into_iter().flatten().collect();
    // tail-reduce so rules are in normal form
    let mut out = RewritingSystem { field: c.field, quiver: c.quiver, rules };
    for i in 0..out.rules.len() {
        let rule = &out.rules[i];
        let mut tail = rule.poly.clone();
        let lead_coeff = out.field.neg(&out.field.one());
        tail.add_term(rule.lead.clone(), &lead_coeff);
        let reduced = out.reduce(&tail);
        let mut poly = PathPoly::monomial(out.field.clone(), rule.lead.clone());
        poly = poly.add(&reduced);
        out.rules[i].poly = poly;
    }
    Ok(out)
}

/// Enumerates normal words by extending normal words one arrow at a time.
/// Normal words are closed under taking subpaths, so this terminates exactly
/// when no word of maximal length has a normal one-arrow extension.
pub fn normal_words<F: Field>(rs: &RewritingSystem<F>, dim_cap: usize) -> Result<Vec<Path>, EngineError> {
    let q = rs.quiver();
    let mut words: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).filter(|p| rs.is_normal(p)).collect();
    let mut frontier = words.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..q.arrow_count() {
                if let Some(ext) = w.compose(&Path::arrow(q, a)) {
                    if rs.is_normal(&ext) {
                        next.push(ext);
                    }
                }
            }
        }
        words.extend(next.iter().cloned());
        if words.len() > dim_cap {
            return Err(EngineError::DimensionCapExceeded(dim_cap));
        }
        frontier = next;
    }
    words.sort();
    Ok(words)
}
