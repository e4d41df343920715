//! Homomorphism counts and densities into a fixed simple target.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::pow;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// Largest target checked for vertex-transitivity by brute force.
pub const MAX_TRANSITIVITY_VERTICES: usize = 8;

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        adj[e.u][e.v] = true;
        adj[e.v][e.u] = true;
    }
    adj
}

/// Number of maps `V(h) -> V(target)` sending every edge to an edge.
pub fn hom_count(h: &Graph, target: &Graph, limits: &Limits) -> Result<BigInt> {
    if h.vertex_count() > limits.hom_vertices {
        return Err(Error::capacity("pattern vertices for homomorphism counting", h.vertex_count(), limits.hom_vertices));
    }
    if !target.is_simple() {
        return Err(Error::Argument("homomorphism target must be a simple graph".into()));
    }
    let n = h.vertex_count();
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let adj = adjacency(target);
    // earlier neighbours of each pattern vertex
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in h.edges() {
        if e.is_loop() {
            return Ok(BigInt::from(0));
        }
        back[e.v].push(e.u);
    }
    let mut image = vec![0usize; n];
    Ok(BigInt::from(extend(0, &back, &adj, &mut image)))
}

fn extend(i: usize, back: &[Vec<usize>], adj: &[Vec<bool>], image: &mut [usize]) -> u128 {
    let k = adj.len();
    let fits = |image: &[usize], c: usize| back[i].iter().all(|&u| adj[image[u]][c]);
    if i + 1 == back.len() {
        return (0..k).filter(|&c| fits(image, c)).count() as u128;
    }
    let mut total = 0;
    for c in 0..k {
        if fits(image, c) {
            image[i] = c;
            total += extend(i + 1, back, adj, image);
        }
    }
    total
}

/// `hom(h, target) / |V(target)|^|V(h)|`.
pub fn hom_density(h: &Graph, target: &Graph, limits: &Limits) -> Result<BigRational> {
    if target.vertex_count() == 0 {
        return Err(Error::Argument("homomorphism target has no vertices".into()));
    }
    let count = hom_count(h, target, limits)?;
    let denom = pow(BigInt::from(target.vertex_count()), h.vertex_count());
    Ok(BigRational::new(count, denom))
}

/// Whether the automorphism group acts transitively on vertices.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    let n = g.vertex_count();
    if n > MAX_TRANSITIVITY_VERTICES {
        return Err(Error::capacity("target vertices for the transitivity check", n, MAX_TRANSITIVITY_VERTICES));
    }
    if n == 0 {
        return Ok(true);
    }
    let adj = adjacency(g);
    let mut orbit = vec![false; n];
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    automorphisms(&adj, 0, &mut perm, &mut used, &mut orbit);
    Ok(orbit.iter().all(|&b| b))
}

/// Records the image of vertex 0 under every automorphism.
fn automorphisms(adj: &[Vec<bool>], i: usize, perm: &mut [usize], used: &mut [bool], orbit: &mut [bool]) {
    let n = adj.len();
    if i == n {
        orbit[perm[0]] = true;
        return;
    }
    if i == 1 && orbit[perm[0]] {
        return;
    }
    for c in 0..n {
        if used[c] || (0..i).any(|j| adj[i][j] != adj[c][perm[j]]) {
            continue;
        }
        perm[i] = c;
        used[c] = true;
        automorphisms(adj, i + 1, perm, used, orbit);
        used[c] = false;
    }
}
