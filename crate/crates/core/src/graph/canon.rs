//! Canonical forms of small simple graphs by colour refinement with
//! individualization. Twins (vertices with equal neighbourhoods up to each
//! other) are interchangeable, so only one of them is branched on.

use super::Graph;

/// Largest vertex count with an adjacency code that fits in a `u128`.
pub const MAX_CANON_VERTICES: usize = 16;

/// Isomorphism-invariant code: vertex count plus the upper-triangle
/// adjacency bits under the best labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub vertices: usize,
    pub bits: u128,
}

impl CanonicalCode {
    pub fn to_graph(self) -> Graph {
        let n = self.vertices;
        let mut g = Graph::new(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.bits >> k & 1 == 1 {
                    g.add_edge(i, j).expect("in range");
                }
                k += 1;
            }
        }
        g
    }
}

/// Panics if the graph is not simple or has more than
/// [`MAX_CANON_VERTICES`] vertices.
pub fn canonical_code(g: &Graph) -> CanonicalCode {
    assert!(g.is_simple(), "canonical codes are defined for simple graphs");
    let n = g.vertex_count();
    assert!(n <= MAX_CANON_VERTICES, "too many vertices for a canonical code");
    let mut adj = vec![0u32; n];
    for e in g.edges() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    let mut best = None;
    let colors = refine(&adj, vec![0; n]);
    search(&adj, colors, &mut best);
    CanonicalCode {
        vertices: n,
        bits: best.unwrap_or(0),
    }
}

fn search(adj: &[u32], colors: Vec<usize>, best: &mut Option<u128>) {
    let n = adj.len();
    let mut cell_size = vec![0usize; n];
    for &c in &colors {
        cell_size[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| cell_size[c] > 1) else {
        let code = code_of(adj, &colors);
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for v in (0..n).filter(|&v| colors[v] == target) {
        if tried.iter().any(|&t| twins(adj, t, v)) {
            continue;
        }
        tried.push(v);
        let keyed: Vec<(usize, usize)> = (0..n)
            .map(|x| (colors[x], usize::from(colors[x] == target && x != v)))
            .collect();
        search(adj, refine(adj, relabel(&keyed)), best);
    }
}

fn twins(adj: &[u32], a: usize, b: usize) -> bool {
    adj[a] & !(1 << b) == adj[b] & !(1 << a)
}

fn code_of(adj: &[u32], label: &[usize]) -> u128 {
    let n = adj.len();
    let mut at = vec![0usize; n];
    for v in 0..n {
        at[label[v]] = v;
    }
    let mut code = 0u128;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[at[i]] >> at[j] & 1 == 1 {
                code |= 1 << k;
            }
            k += 1;
        }
    }
    code
}

/// Dense colours ordered by sorted key.
fn relabel<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("present"))
        .collect()
}

/// Equitable refinement: split cells by the multiset of neighbour colours.
fn refine(adj: &[u32], mut colors: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    let mut count = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&w| adj[v] >> w & 1 == 1)
                    .map(|w| colors[w])
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = relabel(&keys);
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        colors = next;
        if next_count == count {
            return colors;
        }
        count = next_count;
    }
}
