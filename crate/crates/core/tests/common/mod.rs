//! Independent oracles shared by the integration tests. Nothing here goes
//! through the rewriting engine or the library's linear algebra.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, VecDeque};

use foldalg::io::{preset, InputFile};
use foldalg::quiver::{GroupAction, Quiver};

pub fn load(name: &str) -> (Quiver, GroupAction) {
    InputFile::parse(preset(name).unwrap()).unwrap().into_quiver().unwrap().build().unwrap()
}

pub fn a2() -> Quiver {
    Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap()
}

pub fn a3() -> Quiver {
    load("a3_swap").0
}

pub fn d4() -> Quiver {
    load("d4_rot3").0
}

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Graded dimensions of `Π(Q)` over `F_p`, computed degree by degree as
/// `#paths of length n` minus the rank of the degree-n part of the ideal,
/// which is spanned by `u ρ_v w` with `ρ_v` the mesh relation at `v`.
/// Paths are arrow sequences read left to right.
pub fn pi_graded_dims(q: &Quiver, p: u64) -> Vec<usize> {
    let n_arrows = q.arrow_count();
    // arrow k of Q is 2k, its reverse 2k + 1
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for a in 0..n_arrows {
        src.extend([q.source(a), q.target(a)]);
        tgt.extend([q.target(a), q.source(a)]);
    }
    let mut mesh: Vec<Vec<(u64, [usize; 2])>> = vec![Vec::new(); q.vertex_count()];
    for a in 0..n_arrows {
        let (s, t) = (q.source(a), q.target(a));
        mesh[t].push((1, [2 * a + 1, 2 * a]));
        mesh[s].push((p - 1, [2 * a, 2 * a + 1]));
    }

    // a path is its start vertex and its arrows
    let end = |(v, arrows): &(usize, Vec<usize>)| arrows.last().map_or(*v, |&x| tgt[x]);
    let mut by_length: Vec<Vec<(usize, Vec<usize>)>> = vec![(0..q.vertex_count()).map(|v| (v, Vec::new())).collect()];
    let mut dims = vec![q.vertex_count()];
    for n in 1..60 {
        let mut next = Vec::new();
        for path in &by_length[n - 1] {
            for x in (0..2 * n_arrows).filter(|&x| src[x] == end(path)) {
                let mut arrows = path.1.clone();
                arrows.push(x);
                next.push((path.0, arrows));
            }
        }
        let index: HashMap<&[usize], usize> = next.iter().enumerate().map(|(i, p)| (p.1.as_slice(), i)).collect();
        let mut rows = Vec::new();
        for left_len in 0..n - 1 {
            for left in &by_length[left_len] {
                let v = end(left);
                for right in by_length[n - 2 - left_len].iter().filter(|r| r.0 == v) {
                    let mut row = vec![0u64; next.len()];
                    for (c, pair) in &mesh[v] {
                        let word: Vec<usize> = left.1.iter().chain(pair).chain(&right.1).copied().collect();
                        let k = index[word.as_slice()];
                        row[k] = (row[k] + c) % p;
                    }
                    rows.push(row);
                }
            }
        }
        let dim = next.len() - rank_mod_p(rows, p);
        if dim == 0 {
            break;
        }
        dims.push(dim);
        by_length.push(next);
    }
    dims
}

pub fn pi_dim_oracle(q: &Quiver, p: u64) -> usize {
    pi_graded_dims(q, p).iter().sum()
}

/// A Weyl group given by the orbit of a regular weight: `s_i λ = λ − λ_i (row i of C)`.
/// The stabilizer of `(1, …, 1)` is trivial, so orbit points are group elements
/// and breadth-first distance is the length.
pub struct WeylOracle {
    cartan: Vec<Vec<i64>>,
    pub length: BTreeMap<Vec<i64>, usize>,
}

impl WeylOracle {
    pub fn new(cartan: &[Vec<i64>]) -> Self {
        let rank = cartan.len();
        let rho = vec![1i64; rank];
        let mut length = BTreeMap::from([(rho.clone(), 0)]);
        let mut queue = VecDeque::from([rho]);
        let oracle = WeylOracle { cartan: cartan.to_vec(), length: BTreeMap::new() };
        while let Some(x) = queue.pop_front() {
            let l = length[&x];
            for i in 0..rank {
                let y = oracle.reflect(i, &x);
                if !length.contains_key(&y) {
                    length.insert(y.clone(), l + 1);
                    queue.push_back(y);
                }
            }
        }
        WeylOracle { length, ..oracle }
    }

    fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.cartan[i]).map(|(xj, cij)| xj - x[i] * cij).collect()
    }

    pub fn order(&self) -> usize {
        self.length.len()
    }

    /// Image of the regular weight under `r_{w_1} ⋯ r_{w_k}`.
    pub fn act(&self, word: &[usize]) -> Vec<i64> {
        let mut x = vec![1i64; self.cartan.len()];
        for &i in word.iter().rev() {
            x = self.reflect(i, &x);
        }
        x
    }

    /// Every reduced word of every element, found by brute force over all
    /// words of each length up to the longest element's.
    pub fn all_reduced_words(&self) -> BTreeMap<Vec<i64>, Vec<Vec<usize>>> {
        let rank = self.cartan.len();
        let max = *self.length.values().max().unwrap();
        let mut out: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        for l in 0..=max {
            for w in &words {
                let x = self.act(w);
                if self.length[&x] == l {
                    out.entry(x).or_default().push(w.clone());
                }
            }
            words = words
                .iter()
                .flat_map(|w| {
                    (0..rank).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

pub const A2: [[i64; 2]; 2] = [[2, -1], [-1, 2]];
pub const B2: [[i64; 2]; 2] = [[2, -1], [-2, 2]];
pub const G2: [[i64; 2]; 2] = [[2, -1], [-3, 2]];

pub fn a3_cartan() -> Vec<Vec<i64>> {
    vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
}

pub fn rows<const N: usize>(m: [[i64; N]; N]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.to_vec()).collect()
}
