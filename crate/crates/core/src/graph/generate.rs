//! Named graphs, random models, and exhaustive isomorph-free families.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canon::{canonical_code, CanonicalCode, MAX_CANON_VERTICES};
use super::Graph;
use crate::error::{Error, Result};

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("in range")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Argument(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("in range")
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j).expect("in range");
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for i in 0..a {
        for j in 0..b {
            g.add_edge(i, a + j).expect("in range");
        }
    }
    g
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("in range")
}

/// The 3-dimensional hypercube.
pub fn cube() -> Graph {
    let mut g = Graph::new(8);
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                g.add_edge(v, w).expect("in range");
            }
        }
    }
    g
}

/// `C_k` x `K_2`.
pub fn prism(k: usize) -> Graph {
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        g.add_edge(i, (i + 1) % k).expect("in range");
        g.add_edge(k + i, k + (i + 1) % k).expect("in range");
        g.add_edge(i, k + i).expect("in range");
    }
    g
}

/// Two triangles sharing vertex 0: `0-1-2-0` and `0-3-4-0`.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).expect("in range")
}

/// Two vertices (0 and 1) joined by three internally disjoint paths of the
/// given lengths. At most one length may be 1.
pub fn theta(a: usize, b: usize, c: usize) -> Result<Graph> {
    let lengths = [a, b, c];
    if lengths.contains(&0) || lengths.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(Error::Argument(format!(
            "theta({a},{b},{c}) needs positive lengths with at most one equal to 1"
        )));
    }
    let mut g = Graph::new(2);
    for len in lengths {
        let mut prev = 0;
        for _ in 1..len {
            let x = g.add_vertex();
            g.add_edge(prev, x)?;
            prev = x;
        }
        g.add_edge(prev, 1)?;
    }
    Ok(g)
}

/// Uniform random simple `d`-regular graph from the pairing model, rejecting
/// pairings that produce loops or parallel edges.
pub fn random_regular<R: Rng>(degree: usize, n: usize, rng: &mut R) -> Result<Graph> {
    if degree * n % 2 == 1 {
        return Err(Error::Argument(format!(
            "no {degree}-regular graph on {n} vertices: degree * n is odd"
        )));
    }
    if degree >= n.max(1) && !(degree == 0) {
        return Err(Error::Argument(format!(
            "no simple {degree}-regular graph on {n} vertices"
        )));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    const ATTEMPTS: usize = 100_000;
    'attempt: for _ in 0..ATTEMPTS {
        points.shuffle(rng);
        let mut g = Graph::new(n);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v)?;
        }
        return Ok(g);
    }
    Err(Error::Argument(format!(
        "pairing model rejected {ATTEMPTS} attempts for d={degree}, n={n}"
    )))
}

/// Erdos-Renyi `G(n, p)`.
pub fn random_simple<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

/// Multigraph with uniformly random endpoints, so loops and parallel edges
/// occur freely.
pub fn random_multigraph<R: Rng>(max_vertices: usize, max_edges: usize, rng: &mut R) -> Graph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let mut g = Graph::new(n);
    for _ in 0..m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_edge(u, v).expect("in range");
    }
    g
}

/// All connected simple graphs with at most `max_vertices` vertices, at most
/// `max_edges` edges and maximum degree at most `max_degree`, one per
/// isomorphism class, ordered by (vertices, edges, canonical code).
///
/// Every connected graph with an edge loses either a non-bridge edge or a
/// leaf and stays connected, so growing from `K_1` by chords and pendant
/// edges reaches every class.
pub fn connected_graphs(max_vertices: usize, max_edges: usize, max_degree: usize) -> Vec<Graph> {
    assert!(max_vertices <= MAX_CANON_VERTICES);
    if max_vertices == 0 {
        return Vec::new();
    }
    let mut all: Vec<CanonicalCode> = Vec::new();
    let mut level = vec![canonical_code(&Graph::new(1))];
    for _ in 0..=max_edges {
        all.extend(&level);
        let mut next: HashSet<CanonicalCode> = HashSet::new();
        for code in &level {
            let g = code.to_graph();
            let n = g.vertex_count();
            let deg = g.degrees();
            for u in 0..n {
                if deg[u] >= max_degree {
                    continue;
                }
                for v in u + 1..n {
                    if deg[v] < max_degree && !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.add_edge(u, v).expect("in range");
                        next.insert(canonical_code(&h));
                    }
                }
                if n < max_vertices {
                    let mut h = g.clone();
                    let w = h.add_vertex();
                    h.add_edge(u, w).expect("in range");
                    next.insert(canonical_code(&h));
                }
            }
        }
        level = next.into_iter().collect();
        level.sort();
        if level.is_empty() {
            break;
        }
    }
    let mut graphs: Vec<(usize, usize, CanonicalCode)> = all
        .into_iter()
        .map(|c| (c.vertices, c.bits.count_ones() as usize, c))
        .collect();
    graphs.sort();
    graphs.into_iter().map(|(_, _, c)| c.to_graph()).collect()
}

/// Graph families for batch scans and corpus generation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Connected graphs on `1..=max_vertices` vertices with maximum degree at
    /// most `max_degree`, up to isomorphism.
    AllConnected { max_vertices: usize, max_degree: usize },
    /// `C_3 ..= C_max`.
    Cycles { max_vertices: usize },
    /// `count` pairing-model graphs; graph `i` uses seed `seed + i`.
    RandomRegular {
        degree: usize,
        vertices: usize,
        seed: u64,
        count: usize,
    },
    /// Theta graphs with `a <= b <= c` drawn from the inclusive ranges.
    Theta {
        a: (usize, usize),
        b: (usize, usize),
        c: (usize, usize),
    },
    /// `K_1 ..= K_max`.
    Complete { max_vertices: usize },
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub graph: Graph,
    pub name: String,
    pub seed: Option<u64>,
}

impl Family {
    pub fn members(&self) -> Result<Vec<FamilyMember>> {
        let plain = |graph: Graph, name: String| FamilyMember {
            graph,
            name,
            seed: None,
        };
        Ok(match *self {
            Family::AllConnected {
                max_vertices,
                max_degree,
            } => {
                if max_vertices > MAX_CANON_VERTICES {
                    return Err(Error::capacity("all-connected vertex count", max_vertices, MAX_CANON_VERTICES));
                }
                let max_edges = max_vertices * max_degree.min(max_vertices.saturating_sub(1)) / 2;
                connected_graphs(max_vertices, max_edges, max_degree)
                    .into_iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let name = format!("connected-n{}-m{}-#{i}", g.vertex_count(), g.edge_count());
                        plain(g, name)
                    })
                    .collect()
            }
            Family::Cycles { max_vertices } => (3..=max_vertices)
                .map(|n| plain(cycle(n).expect("n >= 3"), format!("C{n}")))
                .collect(),
            Family::RandomRegular {
                degree,
                vertices,
                seed,
                count,
            } => (0..count)
                .map(|i| {
                    let s = seed.wrapping_add(i as u64);
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    random_regular(degree, vertices, &mut rng).map(|graph| FamilyMember {
                        graph,
                        name: format!("rr-d{degree}-n{vertices}-s{s}"),
                        seed: Some(s),
                    })
                })
                .collect::<Result<_>>()?,
            Family::Theta { a, b, c } => {
                let mut out = Vec::new();
                for x in a.0..=a.1 {
                    for y in b.0.max(x)..=b.1 {
                        for z in c.0.max(y)..=c.1 {
                            if let Ok(g) = theta(x, y, z) {
                                out.push(plain(g, format!("theta-{x}-{y}-{z}")));
                            }
                        }
                    }
                }
                out
            }
            Family::Complete { max_vertices } => (1..=max_vertices)
                .map(|n| plain(complete(n), format!("K{n}")))
                .collect(),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::AllConnected {
                max_vertices,
                max_degree,
            } => write!(f, "all-connected:n={max_vertices},delta={max_degree}"),
            Family::Cycles { max_vertices } => write!(f, "cycles:n={max_vertices}"),
            Family::RandomRegular {
                degree,
                vertices,
                seed,
                count,
            } => write!(f, "random-regular:d={degree},n={vertices},seed={seed},count={count}"),
            Family::Theta { a, b, c } => write!(
                f,
                "theta:a={}-{},b={}-{},c={}-{}",
                a.0, a.1, b.0, b.1, c.0, c.1
            ),
            Family::Complete { max_vertices } => write!(f, "complete:n={max_vertices}"),
        }
    }
}

/// Parses the `Display` form, e.g. `random-regular:d=3,n=14,seed=7,count=5`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = std::collections::BTreeMap::new();
        for kv in rest.split(',').filter(|t| !t.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Argument(format!("expected key=value, got {kv:?}")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        let num = |key: &str| -> Result<u64> {
            params
                .get(key)
                .ok_or_else(|| Error::Argument(format!("family {kind:?} needs {key}=")))?
                .parse::<u64>()
                .map_err(|e| Error::Argument(format!("{key}: {e}")))
        };
        let range = |key: &str| -> Result<(usize, usize)> {
            let text = params
                .get(key)
                .ok_or_else(|| Error::Argument(format!("family {kind:?} needs {key}=")))?;
            let (lo, hi) = text.split_once('-').unwrap_or((text, text));
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|e| Error::Argument(format!("{key}: {e}")))
            };
            Ok((parse(lo)?, parse(hi)?))
        };
        match kind {
            "all-connected" => Ok(Family::AllConnected {
                max_vertices: num("n")? as usize,
                max_degree: num("delta")? as usize,
            }),
            "cycles" => Ok(Family::Cycles {
                max_vertices: num("n")? as usize,
            }),
            "random-regular" => Ok(Family::RandomRegular {
                degree: num("d")? as usize,
                vertices: num("n")? as usize,
                seed: num("seed")?,
                count: num("count")? as usize,
            }),
            "theta" => Ok(Family::Theta {
                a: range("a")?,
                b: range("b")?,
                c: range("c")?,
            }),
            "complete" => Ok(Family::Complete {
                max_vertices: num("n")? as usize,
            }),
            other => Err(Error::Argument(format!("unknown family {other:?}"))),
        }
    }
}
