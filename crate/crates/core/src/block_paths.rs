//! Block paths and the recursion they drive.
//!
//! A block path from `v` to `U` is a connected subgraph whose block-cutpoint
//! graph is a path `B1 c1 B2 ... Bk`, with `u` the only vertex of `U` it
//! touches, `u` a non-cut vertex of `B1` and `v` a non-cut vertex of `Bk`.
//! Every subset that touches `U` exactly once is found by growing connected
//! edge sets from `v`, so results are exhaustive.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::mask::{bit, bits, MaskBlocks, MaskGraph};
use crate::graph::{EdgeSet, Graph, Vertex};
use crate::limits::Limits;
use crate::partition::{check_vertices, z_even_conditional};
use crate::poly::IntegerPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPath {
    pub edges: EdgeSet,
    /// `B1 .. Bk`, starting with the block that holds the terminal `u`.
    pub blocks: Vec<EdgeSet>,
    /// `c1 .. c(k-1)`; `ci` joins `Bi` and `B(i+1)`.
    pub cut_vertices: Vec<Vertex>,
    /// The start vertex `v`.
    pub start: Vertex,
    /// The unique terminal `u`.
    pub end: Vertex,
    pub vertices: Vec<Vertex>,
}

impl BlockPath {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// Reusable state for classifying connected edge masks.
pub(crate) struct ShapeScratch {
    blocks: MaskBlocks,
    block_vertices: Vec<u64>,
}

impl ShapeScratch {
    pub fn new(n: usize) -> Self {
        ShapeScratch {
            blocks: MaskBlocks::new(n),
            block_vertices: Vec::new(),
        }
    }

    /// For a connected edge mask containing `v`, the vertices `u` such that
    /// the mask is a block path from `v` to `u`.
    pub fn endpoints(&mut self, mg: &MaskGraph<'_>, edges: u64, verts: u64, v: Vertex) -> u64 {
        let blocks = self.blocks.blocks(mg, edges);
        if blocks.len() == 1 {
            return verts & !bit(v);
        }
        self.block_vertices.clear();
        self.block_vertices
            .extend(blocks.iter().map(|&b| mg.vertex_mask(b)));
        let (mut once, mut twice, mut thrice) = (0u64, 0u64, 0u64);
        for &m in &self.block_vertices {
            thrice |= twice & m;
            twice |= once & m;
            once |= m;
        }
        let cut = twice;
        if thrice != 0 || cut & bit(v) != 0 {
            return 0;
        }
        let mut leaves = [0u64; 2];
        let mut leaf_count = 0;
        for &m in &self.block_vertices {
            match (m & cut).count_ones() {
                1 => {
                    if leaf_count == 2 {
                        return 0;
                    }
                    leaves[leaf_count] = m;
                    leaf_count += 1;
                }
                2 => {}
                _ => return 0,
            }
        }
        if leaf_count != 2 {
            return 0;
        }
        if leaves[0] & bit(v) != 0 {
            leaves[1] & !cut
        } else if leaves[1] & bit(v) != 0 {
            leaves[0] & !cut
        } else {
            0
        }
    }
}

pub(crate) fn vertex_mask_of(vs: &[Vertex]) -> u64 {
    vs.iter().fold(0, |acc, &u| acc | bit(u))
}

fn check_endpoints(g: &Graph, v: Vertex, terminals: &[Vertex]) -> Result<()> {
    check_vertices(g, terminals)?;
    check_vertices(g, &[v])?;
    if terminals.contains(&v) {
        return Err(Error::Argument(format!("start vertex {v} lies in the terminal set")));
    }
    Ok(())
}

pub(crate) fn check_block_path_cap(g: &Graph, limits: &Limits) -> Result<()> {
    if g.edge_count() > limits.block_path_edges {
        return Err(Error::capacity(
            "edge count for block-path enumeration",
            g.edge_count(),
            limits.block_path_edges,
        ));
    }
    Ok(())
}

/// All block paths from `v` to `terminals`, sorted by edge set. An empty
/// terminal set has no block paths.
pub fn enumerate_block_paths(g: &Graph, v: Vertex, terminals: &[Vertex], limits: &Limits) -> Result<Vec<BlockPath>> {
    check_endpoints(g, v, terminals)?;
    check_block_path_cap(g, limits)?;
    let mg = MaskGraph::new(g)?;
    let umask = vertex_mask_of(terminals);
    let mut found = Vec::new();
    if umask != 0 {
        let mut shape = ShapeScratch::new(g.vertex_count());
        mg.connected_subsets(v, mg.all_edges, usize::MAX, |edges, verts| {
            let touched = verts & umask;
            if touched.count_ones() >= 2 {
                return false;
            }
            if touched != 0 && shape.endpoints(&mg, edges, verts, v) & touched != 0 {
                found.push((edges, touched.trailing_zeros() as usize));
            }
            true
        });
    }
    let mut paths: Vec<BlockPath> = found
        .into_iter()
        .map(|(edges, u)| build_block_path(&mg, edges, v, u))
        .collect();
    paths.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(paths)
}

/// Block paths whose every vertex has even degree.
pub fn even_block_paths(g: &Graph, v: Vertex, terminals: &[Vertex], limits: &Limits) -> Result<Vec<BlockPath>> {
    let mut paths = enumerate_block_paths(g, v, terminals, limits)?;
    paths.retain(|p| g.is_even(&p.edges));
    Ok(paths)
}

fn build_block_path(mg: &MaskGraph<'_>, edges: u64, v: Vertex, u: Vertex) -> BlockPath {
    let mut scratch = MaskBlocks::new(mg.g.vertex_count());
    let mut remaining: Vec<u64> = scratch.blocks(mg, edges).to_vec();
    let mut blocks = Vec::new();
    let mut cuts = Vec::new();
    let mut at = u;
    while !remaining.is_empty() {
        let i = remaining
            .iter()
            .position(|&b| mg.vertex_mask(b) & bit(at) != 0)
            .expect("block-cutpoint graph is a path");
        let b = remaining.swap_remove(i);
        blocks.push(mg.to_edge_set(b));
        let verts = mg.vertex_mask(b);
        if let Some(next) = bits(verts).find(|&x| x != at && remaining.iter().any(|&r| mg.vertex_mask(r) & bit(x) != 0)) {
            cuts.push(next);
            at = next;
        }
    }
    BlockPath {
        edges: mg.to_edge_set(edges),
        blocks,
        cut_vertices: cuts,
        start: v,
        end: u,
        vertices: bits(mg.vertex_mask(edges)).collect(),
    }
}

/// `F` is even and no component of `(V, F)` holds two vertices of `W`.
pub(crate) fn in_conditional_family(mg: &MaskGraph<'_>, f: u64, w: u64) -> bool {
    mg.is_even(f) && mg.components(f).iter().all(|c| (c & w).count_ones() <= 1)
}

/// All ways to write `f` as `B ⊔ F'` with `B` an even block path from `v`
/// to `terminals` and `F'` in the conditional family of `U ∪ V(B)`.
pub fn decompositions(
    g: &Graph,
    f: &EdgeSet,
    terminals: &[Vertex],
    v: Vertex,
    limits: &Limits,
) -> Result<Vec<(BlockPath, EdgeSet)>> {
    let mg = MaskGraph::new(g)?;
    let fmask = mg.mask_of(f)?;
    let umask = vertex_mask_of(terminals);
    let mut out = Vec::new();
    for path in even_block_paths(g, v, terminals, limits)? {
        let b = mg.mask_of(&path.edges)?;
        if b & !fmask != 0 {
            continue;
        }
        let rest = fmask & !b;
        if in_conditional_family(&mg, rest, umask | mg.vertex_mask(b)) {
            out.push((path, mg.to_edge_set(rest)));
        }
    }
    Ok(out)
}

/// One summand `x^|B| Z_even(G | U ∪ V(B))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionTerm {
    pub block_path: EdgeSet,
    pub conditional: IntegerPolynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    /// `Z_even(G | U)`.
    pub lhs: IntegerPolynomial,
    /// `Z_even(G | U ∪ {v}) + sum_B x^|B| Z_even(G | U ∪ V(B))`.
    pub rhs: IntegerPolynomial,
    pub with_start: IntegerPolynomial,
    pub terms: Vec<DecompositionTerm>,
    pub equal: bool,
}

/// Both sides of `Z_even(G|U) = Z_even(G|U+v) + sum_B x^|B| Z_even(G|U+V(B))`
/// as exact polynomials.
pub fn verify_decomposition(g: &Graph, terminals: &[Vertex], v: Vertex, limits: &Limits) -> Result<DecompositionReport> {
    let lhs = z_even_conditional(g, terminals, limits)?;
    let mut with_v = terminals.to_vec();
    with_v.push(v);
    let with_start = z_even_conditional(g, &with_v, limits)?;
    let mut rhs = with_start.clone();
    let mut terms = Vec::new();
    for path in even_block_paths(g, v, terminals, limits)? {
        let mut w = terminals.to_vec();
        w.extend(path.vertices.iter().filter(|x| !terminals.contains(x)));
        let conditional = z_even_conditional(g, &w, limits)?;
        rhs = &rhs + &(&IntegerPolynomial::monomial(1, path.edge_count()) * &conditional);
        terms.push(DecompositionTerm {
            block_path: path.edges,
            conditional,
        });
    }
    let equal = lhs == rhs;
    Ok(DecompositionReport {
        lhs,
        rhs,
        with_start,
        terms,
        equal,
    })
}

/// Closed walks from a vertex that use no edge twice, counted by length.
/// Both traversal directions count, and a loop can be traversed either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkGf {
    pub vertex: Vertex,
    /// `counts[k]` walks of length `k`; `counts[0] = 0`.
    pub counts: Vec<u64>,
}

impl WalkGf {
    pub fn eval(&self, t: f64) -> f64 {
        self.counts.iter().rev().fold(0.0, |acc, &c| acc * t + c as f64)
    }
}

pub fn walk_gf(g: &Graph, v: Vertex, max_len: usize, limits: &Limits) -> Result<WalkGf> {
    check_vertices(g, &[v])?;
    check_block_path_cap(g, limits)?;
    if max_len > g.edge_count() {
        return Err(Error::Argument(format!(
            "walk length {max_len} exceeds the edge count {}",
            g.edge_count()
        )));
    }
    let inc = g.incidence();
    let mut counts = vec![0u64; max_len + 1];
    let mut used = vec![false; g.edge_count()];
    walk_from(g, &inc, v, v, 0, 1, &mut used, &mut counts);
    Ok(WalkGf { vertex: v, counts })
}

#[allow(clippy::too_many_arguments)]
fn walk_from(
    g: &Graph,
    inc: &[Vec<usize>],
    origin: Vertex,
    at: Vertex,
    len: usize,
    weight: u64,
    used: &mut [bool],
    counts: &mut [u64],
) {
    if len + 1 >= counts.len() {
        return;
    }
    for &p in &inc[at] {
        if used[p] {
            continue;
        }
        let e = &g.edges()[p];
        let next = e.other(at);
        let w = if e.is_loop() { 2 * weight } else { weight };
        if next == origin {
            counts[len + 1] += w;
        }
        used[p] = true;
        walk_from(g, inc, origin, next, len + 1, w, used, counts);
        used[p] = false;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WalkBoundReport {
    /// Exact `W_{G,v}(c / (Δ-1))`.
    pub lhs: f64,
    /// `Δ c^g / ((Δ-1)^2 (1-c))`.
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

/// Compares the closed-trail generating function at `c/(Δ-1)` with its
/// closed-form bound for maximum degree `delta` and girth at least `girth`.
pub fn walk_bound_check(
    g: &Graph,
    v: Vertex,
    c: f64,
    delta: usize,
    girth: usize,
    limits: &Limits,
) -> Result<WalkBoundReport> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::Argument(format!("c must lie in [0, 1), got {c}")));
    }
    if delta < 2 || delta < g.max_degree() {
        return Err(Error::Argument(format!(
            "degree bound {delta} must be at least 2 and at least the maximum degree {}",
            g.max_degree()
        )));
    }
    if g.girth().is_some_and(|actual| girth > actual) {
        return Err(Error::Argument(format!(
            "girth bound {girth} exceeds the girth {}",
            g.girth().unwrap_or(0)
        )));
    }
    let walks = walk_gf(g, v, g.edge_count(), limits)?;
    let d = delta as f64;
    let lhs = walks.eval(c / (d - 1.0));
    let rhs = d * c.powi(girth as i32) / ((d - 1.0).powi(2) * (1.0 - c));
    Ok(WalkBoundReport {
        lhs,
        rhs,
        slack: rhs - lhs,
        holds: lhs <= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianReport {
    /// Even block paths by edge count.
    pub block_paths: Vec<u64>,
    /// Closed trails from `v` by length.
    pub walks: Vec<u64>,
    /// Lengths where `2 * block_paths[k] > walks[k]`.
    pub violations: Vec<usize>,
    pub holds: bool,
}

/// Checks that each even block path is matched by at least two closed
/// Eulerian walks from `v`, length by length.
pub fn eulerian_double_count_check(g: &Graph, v: Vertex, terminals: &[Vertex], limits: &Limits) -> Result<EulerianReport> {
    let m = g.edge_count();
    let mut hist = vec![0u64; m + 1];
    for p in even_block_paths(g, v, terminals, limits)? {
        hist[p.edge_count()] += 1;
    }
    let walks = walk_gf(g, v, m, limits)?.counts;
    let violations: Vec<usize> = (0..=m).filter(|&k| 2 * hist[k] > walks[k]).collect();
    Ok(EulerianReport {
        holds: violations.is_empty(),
        block_paths: hist,
        walks,
        violations,
    })
}

/// `x^|B|` summed over even block paths, as a polynomial.
pub fn even_block_path_polynomial(g: &Graph, v: Vertex, terminals: &[Vertex], limits: &Limits) -> Result<IntegerPolynomial> {
    let mut hist = vec![BigInt::from(0); g.edge_count() + 1];
    for p in even_block_paths(g, v, terminals, limits)? {
        hist[p.edge_count()] += 1;
    }
    Ok(IntegerPolynomial::new(hist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, EdgeId};

    fn lim() -> Limits {
        Limits::default()
    }

    fn ids(p: &BlockPath) -> Vec<usize> {
        p.edges.to_vec()
    }

    fn p(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    #[test]
    fn triangle_block_paths() {
        // edges 0:(0,1) 1:(1,2) 2:(0,2); v = 0, u = 1
        let c3 = generate::cycle(3).unwrap();
        let paths = enumerate_block_paths(&c3, 0, &[1], &lim()).unwrap();
        let sets: Vec<_> = paths.iter().map(ids).collect();
        assert_eq!(sets, vec![vec![0], vec![1, 2], vec![0, 1, 2]]);
        let two = &paths[1];
        assert_eq!(two.blocks.len(), 2);
        assert_eq!(two.blocks[0].to_vec(), vec![1]);
        assert_eq!(two.cut_vertices, vec![2]);
        assert_eq!((two.start, two.end), (0, 1));
        let even = even_block_paths(&c3, 0, &[1], &lim()).unwrap();
        assert_eq!(even.len(), 1);
        assert_eq!(ids(&even[0]), vec![0, 1, 2]);
    }

    #[test]
    fn bowtie_block_paths_cross_the_cut_vertex() {
        // cut vertex 0; u = 1 in the first triangle, v = 3 in the second
        let g = generate::bowtie();
        let paths = enumerate_block_paths(&g, 3, &[1], &lim()).unwrap();
        assert!(paths.iter().all(|p| p.vertices.contains(&0)));
        assert!(paths.iter().any(|p| ids(p) == vec![0, 1, 2, 3, 4, 5]));
        let full = paths.iter().find(|p| p.edge_count() == 6).unwrap();
        assert_eq!(full.cut_vertices, vec![0]);
        assert_eq!(full.blocks[0].to_vec(), vec![0, 1, 2]);
        // 3 ways through each triangle
        assert_eq!(paths.len(), 9);
        let even = even_block_paths(&g, 3, &[1], &lim()).unwrap();
        assert_eq!(even.len(), 1);
        assert_eq!(even[0].vertex_count(), 5);
    }

    #[test]
    fn path_and_tree_cases() {
        let p3 = generate::path(3);
        let paths = enumerate_block_paths(&p3, 0, &[2], &lim()).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(ids(&paths[0]), vec![0, 1]);
        assert_eq!(paths[0].cut_vertices, vec![1]);
        assert!(even_block_paths(&generate::star(4), 1, &[2], &lim()).unwrap().is_empty());
        assert!(enumerate_block_paths(&p3, 0, &[], &lim()).unwrap().is_empty());
        assert!(matches!(
            enumerate_block_paths(&p3, 0, &[0, 2], &lim()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn even_block_paths_have_enough_edges() {
        for g in generate::connected_graphs(6, 9, 4) {
            for v in 0..g.vertex_count() {
                for u in (0..g.vertex_count()).filter(|&u| u != v) {
                    for b in even_block_paths(&g, v, &[u], &lim()).unwrap() {
                        assert!(b.edge_count() >= b.vertex_count());
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let c3 = generate::cycle(3).unwrap();
        let r = verify_decomposition(&c3, &[1], 0, &lim()).unwrap();
        assert_eq!(r.lhs, p(&[1, 0, 0, 1]));
        assert_eq!(r.with_start, p(&[1]));
        assert!(r.equal);

        let bowtie = generate::bowtie();
        let r = verify_decomposition(&bowtie, &[1], 3, &lim()).unwrap();
        assert_eq!(r.lhs, p(&[1, 0, 0, 1]).pow(2));
        assert_eq!(r.with_start, p(&[1, 0, 0, 2]));
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].conditional, p(&[1]));
        assert!(r.equal);

        let isolated = generate::cycle(3).unwrap().disjoint_union(&Graph::new(1));
        let r = verify_decomposition(&isolated, &[0], 3, &lim()).unwrap();
        assert!(r.terms.is_empty());
        assert_eq!(r.lhs, r.with_start);
        assert!(r.equal);
    }

    #[test]
    fn decompositions_are_unique() {
        let g = generate::complete(4);
        let f: EdgeSet = [0, 1, 3].iter().map(|&i| EdgeId(i)).collect();
        assert!(g.is_even(&f));
        let d = decompositions(&g, &f, &[1], 0, &lim()).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].1.is_empty());
    }

    #[test]
    fn walk_examples() {
        let c3 = generate::cycle(3).unwrap();
        assert_eq!(walk_gf(&c3, 0, 3, &lim()).unwrap().counts, vec![0, 0, 0, 2]);
        let c4 = generate::cycle(4).unwrap();
        assert_eq!(walk_gf(&c4, 2, 4, &lim()).unwrap().counts, vec![0, 0, 0, 0, 2]);
        assert!(walk_gf(&generate::star(3), 0, 3, &lim()).unwrap().counts.iter().all(|&c| c == 0));
        assert!(walk_gf(&c3, 0, 4, &lim()).is_err());
        let looped = Graph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(walk_gf(&looped, 0, 1, &lim()).unwrap().counts, vec![0, 2]);
    }

    #[test]
    fn bowtie_walks_cover_both_triangles() {
        let g = generate::bowtie();
        let w = walk_gf(&g, 1, 6, &lim()).unwrap();
        // two directions around the own triangle, then both directions of
        // the far triangle for each
        assert_eq!(w.counts, vec![0, 0, 0, 2, 0, 0, 4]);
    }

    #[test]
    fn walk_bound_examples() {
        let c3 = generate::cycle(3).unwrap();
        let r = walk_bound_check(&c3, 0, 0.5, 3, 3, &lim()).unwrap();
        assert!((r.lhs - 0.03125).abs() < 1e-15);
        assert!((r.rhs - 0.1875).abs() < 1e-15);
        assert!(r.holds);
        let tree = walk_bound_check(&generate::star(3), 0, 0.5, 3, 3, &lim()).unwrap();
        assert_eq!(tree.lhs, 0.0);
        assert!(tree.rhs > 0.0);
        let k4 = walk_bound_check(&generate::complete(4), 0, 0.9, 3, 3, &lim()).unwrap();
        assert!(k4.holds && k4.lhs > 0.0);
        assert!(walk_bound_check(&c3, 0, 1.0, 3, 3, &lim()).is_err());
        assert!(walk_bound_check(&c3, 0, 0.5, 3, 4, &lim()).is_err());
        assert!(walk_bound_check(&generate::star(4), 0, 0.5, 3, 3, &lim()).is_err());
    }

    #[test]
    fn walk_counts_respect_girth_and_degree() {
        for g in generate::connected_graphs(7, 10, 3) {
            let girth = g.girth().unwrap_or(usize::MAX);
            let delta = 3u64;
            for v in 0..g.vertex_count() {
                let w = walk_gf(&g, v, g.edge_count(), &lim()).unwrap();
                for (k, &c) in w.counts.iter().enumerate() {
                    if k < girth {
                        assert_eq!(c, 0);
                    }
                    if k >= 2 {
                        assert!(c <= delta * (delta - 1).pow(k as u32 - 2));
                    }
                }
            }
        }
    }

    #[test]
    fn eulerian_examples() {
        let c3 = generate::cycle(3).unwrap();
        let r = eulerian_double_count_check(&c3, 0, &[1], &lim()).unwrap();
        assert_eq!(r.block_paths, vec![0, 0, 0, 1]);
        assert_eq!(r.walks, vec![0, 0, 0, 2]);
        assert!(r.holds);
        let r = eulerian_double_count_check(&generate::bowtie(), 3, &[1], &lim()).unwrap();
        assert_eq!(r.block_paths[6], 1);
        assert!(r.walks[6] >= 2);
        assert!(r.holds);
        let r = eulerian_double_count_check(&generate::path(4), 0, &[3], &lim()).unwrap();
        assert!(r.block_paths.iter().all(|&c| c == 0) && r.holds);
    }
}
