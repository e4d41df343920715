//! Exact Ising and even-set partition functions.
//!
//! `Z_Ising(G; b)` sums `b^m(σ)` over all 2-colourings, where `m(σ)` counts
//! monochromatic edges. `Z_even(G; x)` sums `x^|F|` over even edge sets. The
//! two are related by `Z_even(x) = (1-x)^|E| 2^-|V| Z_Ising((1+x)/(1-x))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph, Vertex};
use crate::limits::Limits;
use crate::poly::IntegerPolynomial;

/// Enumeration steps handled by one worker.
const CHUNK_BITS: u32 = 16;

/// A 2-colouring of the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinAssignment(pub Vec<bool>);

impl SpinAssignment {
    /// Colouring whose vertex `v` gets bit `v` of `bits`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        SpinAssignment((0..n).map(|v| bits >> v & 1 == 1).collect())
    }

    /// Number of edges whose endpoints share a colour; loops always do.
    pub fn monochromatic_edges(&self, g: &Graph) -> usize {
        g.edges()
            .iter()
            .filter(|e| self.0[e.u] == self.0[e.v])
            .count()
    }
}

/// Complex weights indexed by edge id.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct EdgeWeightMap(BTreeMap<EdgeId, Complex64>);

impl EdgeWeightMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Same weight on every edge of `g`.
    pub fn constant(g: &Graph, w: Complex64) -> Self {
        EdgeWeightMap(g.edges().iter().map(|e| (e.id, w)).collect())
    }

    pub fn insert(&mut self, id: EdgeId, w: Complex64) {
        self.0.insert(id, w);
    }

    pub fn get(&self, id: EdgeId) -> Result<Complex64> {
        self.0.get(&id).copied().ok_or(Error::MissingWeight(id))
    }

    /// Applies `f` to every weight.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        EdgeWeightMap(self.0.iter().map(|(&k, &v)| (k, f(v))).collect())
    }

    /// Weights in the order of `g.edges()`, failing on any missing edge.
    fn dense(&self, g: &Graph) -> Result<Vec<Complex64>> {
        g.edges().iter().map(|e| self.get(e.id)).collect()
    }
}

impl FromIterator<(EdgeId, Complex64)> for EdgeWeightMap {
    fn from_iter<I: IntoIterator<Item = (EdgeId, Complex64)>>(iter: I) -> Self {
        EdgeWeightMap(iter.into_iter().collect())
    }
}

fn check_ising_cap(g: &Graph, limits: &Limits) -> Result<()> {
    if g.vertex_count() > limits.ising_vertices {
        return Err(Error::Capacity {
            what: "vertex count for spin enumeration",
            value: g.vertex_count(),
            cap: limits.ising_vertices,
            hint: "; Z_even via the cycle space handles larger sparse graphs",
        });
    }
    Ok(())
}

/// Neighbour lists without loops, with parallel edges repeated.
fn loopless_neighbours(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut nb = vec![Vec::new(); g.vertex_count()];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        nb[e.u].push(e.v);
        nb[e.v].push(e.u);
    }
    nb
}

/// `Z_Ising(G; b)` by Gray-code enumeration of colourings. The last vertex
/// is pinned (global colour swap preserves `m`) and the histogram doubled.
pub fn z_ising_poly(g: &Graph, limits: &Limits) -> Result<IntegerPolynomial> {
    check_ising_cap(g, limits)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(IntegerPolynomial::one());
    }
    let loops = g.edges().iter().filter(|e| e.is_loop()).count();
    let nb = loopless_neighbours(g);
    let free = (n - 1) as u32;
    let total = 1u64 << free;
    let chunk = 1u64 << free.min(CHUNK_BITS);
    let hist = (0..total / chunk)
        .into_par_iter()
        .map(|c| ising_chunk(g, &nb, c * chunk, (c + 1) * chunk))
        .reduce(
            || vec![0u64; g.edge_count() + 1],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut coeffs = vec![BigInt::zero(); g.edge_count() + 1];
    for (m, &count) in hist.iter().enumerate() {
        if count > 0 {
            coeffs[m + loops] = BigInt::from(count) * 2;
        }
    }
    Ok(IntegerPolynomial::new(coeffs))
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Histogram of loopless monochromatic counts over Gray codes `start..end`.
fn ising_chunk(g: &Graph, nb: &[Vec<Vertex>], start: u64, end: u64) -> Vec<u64> {
    let mut hist = vec![0u64; g.edge_count() + 1];
    let mut sigma = gray(start);
    let colour = |s: u64, v: usize| s >> v & 1;
    let mut m = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop() && colour(sigma, e.u) == colour(sigma, e.v))
        .count();
    hist[m] += 1;
    for i in start + 1..end {
        let v = i.trailing_zeros() as usize;
        let old = colour(sigma, v);
        for &w in &nb[v] {
            if colour(sigma, w) == old {
                m -= 1;
            } else {
                m += 1;
            }
        }
        sigma ^= 1 << v;
        hist[m] += 1;
    }
    hist
}

/// Fundamental cycles of a spanning forest, as bit masks over edge
/// positions. A loop is its own fundamental cycle.
pub(crate) fn cycle_basis(g: &Graph) -> Vec<Vec<u64>> {
    let words = g.edge_count().div_ceil(64).max(1);
    let inc = g.incidence();
    let n = g.vertex_count();
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut in_tree = vec![false; g.edge_count()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &p in &inc[x] {
                let y = g.edges()[p].other(x);
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent_edge[y] = p;
                    in_tree[p] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut basis = Vec::new();
    for (p, e) in g.edges().iter().enumerate() {
        if in_tree[p] {
            continue;
        }
        let mut mask = vec![0u64; words];
        mask[p / 64] ^= 1 << (p % 64);
        let (mut a, mut b) = (e.u, e.v);
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let q = parent_edge[a];
            mask[q / 64] ^= 1 << (q % 64);
            a = g.edges()[q].other(a);
        }
        basis.push(mask);
    }
    basis
}

fn check_cycle_cap(dim: usize, limits: &Limits) -> Result<()> {
    if dim > limits.cycle_space_dim {
        return Err(Error::capacity("cycle space dimension", dim, limits.cycle_space_dim));
    }
    Ok(())
}

/// Calls `visit` on every even edge set (as a position mask) within Gray-code
/// steps `start..end`.
fn even_chunk(basis: &[Vec<u64>], start: u64, end: u64, mut visit: impl FnMut(&[u64])) {
    let words = basis.first().map_or(1, Vec::len);
    let mut cur = vec![0u64; words];
    let code = gray(start);
    for (k, b) in basis.iter().enumerate() {
        if code >> k & 1 == 1 {
            cur.iter_mut().zip(b).for_each(|(c, x)| *c ^= x);
        }
    }
    visit(&cur);
    for i in start + 1..end {
        let k = i.trailing_zeros() as usize;
        cur.iter_mut().zip(&basis[k]).for_each(|(c, x)| *c ^= x);
        visit(&cur);
    }
}

/// Visits all even edge sets sequentially, in Gray-code order.
pub(crate) fn for_each_even_set(g: &Graph, limits: &Limits, visit: impl FnMut(&[u64])) -> Result<()> {
    let basis = cycle_basis(g);
    check_cycle_cap(basis.len(), limits)?;
    even_chunk(&basis, 0, 1u64 << basis.len(), visit);
    Ok(())
}

fn popcount(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

/// `Z_even(G; x)` by enumerating the cycle space.
pub fn z_even_poly(g: &Graph, limits: &Limits) -> Result<IntegerPolynomial> {
    let basis = cycle_basis(g);
    check_cycle_cap(basis.len(), limits)?;
    let dim = basis.len() as u32;
    let total = 1u64 << dim;
    let chunk = 1u64 << dim.min(CHUNK_BITS);
    let hist = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; g.edge_count() + 1];
            even_chunk(&basis, c * chunk, (c + 1) * chunk, |m| hist[popcount(m)] += 1);
            hist
        })
        .reduce(
            || vec![0u64; g.edge_count() + 1],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(IntegerPolynomial::new(hist.into_iter().map(BigInt::from).collect()))
}

/// Every even edge set, sorted.
pub fn even_sets(g: &Graph, limits: &Limits) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    for_each_even_set(g, limits, |m| out.push(positions_to_set(g, m)))?;
    out.sort();
    Ok(out)
}

pub(crate) fn positions_to_set(g: &Graph, mask: &[u64]) -> EdgeSet {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(p, _)| mask[p / 64] >> (p % 64) & 1 == 1)
        .map(|(_, e)| e.id)
        .collect()
}

pub(crate) fn check_vertices(g: &Graph, vs: &[Vertex]) -> Result<()> {
    match vs.iter().find(|&&v| v >= g.vertex_count()) {
        Some(&v) => Err(Error::VertexRange {
            vertex: v,
            vertex_count: g.vertex_count(),
        }),
        None => Ok(()),
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn reset(&mut self) {
        self.0.iter_mut().enumerate().for_each(|(i, p)| *p = i);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// `Z_even(G | U; x)`: even sets in which no component of `(V, F)` holds two
/// vertices of `U`.
pub fn z_even_conditional(g: &Graph, terminals: &[Vertex], limits: &Limits) -> Result<IntegerPolynomial> {
    check_vertices(g, terminals)?;
    let mut is_terminal = vec![false; g.vertex_count()];
    terminals.iter().for_each(|&u| is_terminal[u] = true);
    let mut uf = UnionFind(vec![0; g.vertex_count()]);
    let mut owner = vec![usize::MAX; g.vertex_count()];
    let mut hist = vec![0u64; g.edge_count() + 1];
    for_each_even_set(g, limits, |mask| {
        uf.reset();
        for (p, e) in g.edges().iter().enumerate() {
            if mask[p / 64] >> (p % 64) & 1 == 1 {
                uf.union(e.u, e.v);
            }
        }
        owner.iter_mut().for_each(|o| *o = usize::MAX);
        let ok = terminals.iter().all(|&u| {
            let r = uf.find(u);
            let free = owner[r] == usize::MAX || owner[r] == u;
            owner[r] = u;
            free
        });
        if ok {
            hist[popcount(mask)] += 1;
        }
    })?;
    Ok(IntegerPolynomial::new(hist.into_iter().map(BigInt::from).collect()))
}

/// `x -> (1 + x) / (1 - x)`.
fn b_of_x(x: Complex64) -> Complex64 {
    (1.0 + x) / (1.0 - x)
}

/// Both sides of the Van der Waerden identity at `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VdwCheck {
    /// `Z_even(G; x)`.
    pub lhs: Complex64,
    /// `(1-x)^|E| 2^-|V| Z_Ising(G; (1+x)/(1-x))`.
    pub rhs: Complex64,
}

impl VdwCheck {
    pub fn relative_error(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.lhs.norm().max(self.rhs.norm()).max(f64::MIN_POSITIVE)
    }
}

pub fn vdw_transform_check(g: &Graph, x: Complex64, limits: &Limits) -> Result<VdwCheck> {
    let (even, ising) = (z_even_poly(g, limits)?, z_ising_poly(g, limits)?);
    vdw_from_polys(g, &even, &ising, x)
}

/// As [`vdw_transform_check`] with both polynomials already computed.
pub fn vdw_from_polys(
    g: &Graph,
    even: &IntegerPolynomial,
    ising: &IntegerPolynomial,
    x: Complex64,
) -> Result<VdwCheck> {
    check_finite(x)?;
    if x == Complex64::one() {
        return Err(Error::Domain("x = 1 is a pole of (1+x)/(1-x)".into()));
    }
    let lhs = even.eval_complex_precise(x);
    let prefactor = (1.0 - x).powu(g.edge_count() as u32) * 2f64.powi(-(g.vertex_count() as i32));
    let rhs = prefactor * ising.eval_complex_precise(b_of_x(x));
    Ok(VdwCheck { lhs, rhs })
}

pub(crate) fn check_finite(z: Complex64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite complex input {z}")))
    }
}

/// The Van der Waerden identity as an exact polynomial identity:
/// `sum_k c_k (1+x)^k (1-x)^(|E|-k) = 2^|V| Z_even(G; x)` where `c_k` are
/// the coefficients of `Z_Ising`.
pub fn vdw_polynomial_identity(even: &IntegerPolynomial, ising: &IntegerPolynomial, g: &Graph) -> bool {
    let m = g.edge_count();
    let plus = IntegerPolynomial::from_i64(&[1, 1]);
    let minus = IntegerPolynomial::from_i64(&[1, -1]);
    let mut lhs = IntegerPolynomial::zero();
    for (k, c) in ising.coeffs().iter().enumerate() {
        if k > m {
            return false;
        }
        let term = &plus.pow(k as u32) * &minus.pow((m - k) as u32);
        lhs = &lhs + &term.scale(c);
    }
    let rhs = even.scale(&(BigInt::one() << g.vertex_count()));
    lhs == rhs
}

/// The three polynomials of a deletion-contraction step and whether the
/// recursion holds exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeletionContraction {
    pub edge: EdgeId,
    pub whole: IntegerPolynomial,
    pub contracted: IntegerPolynomial,
    pub deleted: IntegerPolynomial,
    pub holds: bool,
}

/// `Z_even(G) = x Z_even(G/e) + (1 - x) Z_even(G\e)`.
pub fn deletion_contraction_even(g: &Graph, e: EdgeId, limits: &Limits) -> Result<DeletionContraction> {
    let contracted_graph = g.contract_edge(e)?;
    let whole = z_even_poly(g, limits)?;
    let contracted = z_even_poly(&contracted_graph, limits)?;
    let deleted = z_even_poly(&g.delete_edge(e)?, limits)?;
    let x = IntegerPolynomial::x();
    let one_minus_x = IntegerPolynomial::from_i64(&[1, -1]);
    let holds = whole == &(&x * &contracted) + &(&one_minus_x * &deleted);
    Ok(DeletionContraction {
        edge: e,
        whole,
        contracted,
        deleted,
        holds,
    })
}

/// `Z_Ising(G\e) = Z_Ising(G) + (1 - b) Z_Ising(G/e)`.
pub fn deletion_contraction_ising(g: &Graph, e: EdgeId, limits: &Limits) -> Result<DeletionContraction> {
    let contracted_graph = g.contract_edge(e)?;
    let whole = z_ising_poly(g, limits)?;
    let contracted = z_ising_poly(&contracted_graph, limits)?;
    let deleted = z_ising_poly(&g.delete_edge(e)?, limits)?;
    let one_minus_b = IntegerPolynomial::from_i64(&[1, -1]);
    let holds = deleted == &whole + &(&one_minus_b * &contracted);
    Ok(DeletionContraction {
        edge: e,
        whole,
        contracted,
        deleted,
        holds,
    })
}

/// `sum_σ prod_{e monochromatic} b_e`.
pub fn z_ising_multivariate(g: &Graph, b: &EdgeWeightMap, limits: &Limits) -> Result<Complex64> {
    check_ising_cap(g, limits)?;
    let weights = b.dense(g)?;
    weights.iter().try_for_each(|&w| check_finite(w))?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Complex64::one());
    }
    let free = (n - 1) as u32;
    let chunk = 1u64 << free.min(CHUNK_BITS);
    let partial: Vec<Complex64> = (0..(1u64 << free) / chunk)
        .into_par_iter()
        .map(|c| {
            (c * chunk..(c + 1) * chunk)
                .map(|sigma| {
                    g.edges()
                        .iter()
                        .zip(&weights)
                        .filter(|(e, _)| (sigma >> e.u & 1) == (sigma >> e.v & 1))
                        .fold(Complex64::one(), |acc, (_, &w)| acc * w)
                })
                .sum::<Complex64>()
        })
        .collect();
    Ok(partial.into_iter().sum::<Complex64>() * 2.0)
}

/// `sum_{F even} prod_{e in F} x_e`.
pub fn z_even_multivariate(g: &Graph, x: &EdgeWeightMap, limits: &Limits) -> Result<Complex64> {
    let weights = x.dense(g)?;
    weights.iter().try_for_each(|&w| check_finite(w))?;
    let mut sum = Complex64::zero();
    for_each_even_set(g, limits, |mask| {
        sum += weights
            .iter()
            .enumerate()
            .filter(|(p, _)| mask[p / 64] >> (p % 64) & 1 == 1)
            .fold(Complex64::one(), |acc, (_, &w)| acc * w);
    })?;
    Ok(sum)
}

/// Multivariate Van der Waerden: `Z_even(G; x)` against
/// `prod (1 - x_e) 2^-|V| Z_Ising(G; b)` with `b_e = (1 + x_e)/(1 - x_e)`.
pub fn vdw_multivariate_check(g: &Graph, x: &EdgeWeightMap, limits: &Limits) -> Result<VdwCheck> {
    let weights = x.dense(g)?;
    if let Some(e) = weights.iter().position(|&w| w == Complex64::one()) {
        return Err(Error::Domain(format!(
            "x = 1 on edge {:?} is a pole of (1+x)/(1-x)",
            g.edges()[e].id
        )));
    }
    let lhs = z_even_multivariate(g, x, limits)?;
    let b = x.map(b_of_x);
    let prefactor: Complex64 = weights.iter().map(|&w| 1.0 - w).product::<Complex64>()
        * 2f64.powi(-(g.vertex_count() as i32));
    let rhs = prefactor * z_ising_multivariate(g, &b, limits)?;
    Ok(VdwCheck { lhs, rhs })
}
