//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library except to read a graph's edge list.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use ising_lab::graph::generate;
use ising_lab::Graph;

pub fn edges_of(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.u, e.v)).collect()
}

/// `Z_Ising` coefficients by summing over all spin assignments.
pub fn ising_hist(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    assert!(n <= 24, "spin oracle is exponential in |V|");
    let edges = edges_of(g);
    let mut hist = vec![0u64; edges.len() + 1];
    for sigma in 0u64..1 << n {
        let mono = edges
            .iter()
            .filter(|&&(u, v)| (sigma >> u & 1) == (sigma >> v & 1))
            .count();
        hist[mono] += 1;
    }
    hist
}

/// `Z_even` coefficients by a Gray-code walk over all edge subsets, tracking
/// the set of odd-degree vertices.
pub fn even_hist(g: &Graph) -> Vec<u64> {
    let edges = edges_of(g);
    let m = edges.len();
    assert!(m <= 26, "subset oracle is exponential in |E|");
    let flips: Vec<u64> = edges.iter().map(|&(u, v)| (1u64 << u) ^ (1u64 << v)).collect();
    let mut hist = vec![0u64; m + 1];
    hist[0] = 1;
    let (mut odd, mut size, mut current) = (0u64, 0usize, 0u64);
    for step in 1u64..1 << m {
        let e = step.trailing_zeros() as usize;
        current ^= 1 << e;
        odd ^= flips[e];
        if current >> e & 1 == 1 {
            size += 1;
        } else {
            size -= 1;
        }
        if odd == 0 {
            hist[size] += 1;
        }
    }
    hist
}

/// Every even edge subset as a bit mask over edge positions.
pub fn even_subsets(g: &Graph) -> Vec<u64> {
    let edges = edges_of(g);
    let m = edges.len();
    assert!(m <= 20);
    (0u64..1 << m)
        .filter(|&f| {
            let mut deg = vec![0usize; g.vertex_count()];
            for (i, &(u, v)) in edges.iter().enumerate() {
                if f >> i & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            deg.iter().all(|d| d % 2 == 0)
        })
        .collect()
}

/// Component label of every vertex in `(V, F)`, ignoring vertices in
/// `removed`.
pub fn component_labels(n: usize, edges: &[(usize, usize)], f: u64, removed: u64) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut x: usize) -> usize {
        while label[x] != x {
            label[x] = label[label[x]];
            x = label[x];
        }
        x
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        if f >> i & 1 == 1 && removed >> u & 1 == 0 && removed >> v & 1 == 0 {
            let (a, b) = (root(&mut label, u), root(&mut label, v));
            label[a] = b;
        }
    }
    (0..n).map(|x| root(&mut label, x)).collect()
}

pub fn component_count(g: &Graph) -> usize {
    let labels = component_labels(g.vertex_count(), &edges_of(g), u64::MAX, 0);
    let mut roots: Vec<usize> = labels.clone();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Even `F` in which no component of `(V, F)` holds two vertices of `w`.
pub fn in_conditional(n: usize, edges: &[(usize, usize)], f: u64, w: u64) -> bool {
    let labels = component_labels(n, edges, f, 0);
    let mut seen = vec![false; n];
    for x in 0..n {
        if w >> x & 1 == 1 {
            if seen[labels[x]] {
                return false;
            }
            seen[labels[x]] = true;
        }
    }
    true
}

/// `Z_even(G | W)` from a precomputed list of even subsets.
pub fn conditional_hist(g: &Graph, evens: &[u64], w: u64) -> Vec<u64> {
    let edges = edges_of(g);
    let mut hist = vec![0u64; edges.len() + 1];
    for &f in evens {
        if in_conditional(g.vertex_count(), &edges, f, w) {
            hist[f.count_ones() as usize] += 1;
        }
    }
    hist
}

pub fn vertex_mask(edges: &[(usize, usize)], f: u64) -> u64 {
    edges
        .iter()
        .enumerate()
        .filter(|(i, _)| f >> i & 1 == 1)
        .fold(0, |acc, (_, &(u, v))| acc | 1 << u | 1 << v)
}

/// Block structure of the subgraph `H = (V(F), F)` of a loopless graph,
/// computed from vertex deletions alone: `w` is a cut vertex when deleting
/// it splits `H`, and two edges share a block when no single vertex
/// deletion separates them.
pub struct Shape {
    pub verts: u64,
    pub connected: bool,
    pub cuts: u64,
    pub blocks: Vec<u64>,
}

pub fn shape(n: usize, edges: &[(usize, usize)], f: u64) -> Shape {
    let verts = vertex_mask(edges, f);
    let count_in = |labels: &[usize], removed: u64| {
        let mut roots: Vec<usize> = (0..n)
            .filter(|&x| verts >> x & 1 == 1 && removed >> x & 1 == 0)
            .map(|x| labels[x])
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };
    let base = count_in(&component_labels(n, edges, f, 0), 0);
    let ids: Vec<usize> = (0..edges.len()).filter(|&i| f >> i & 1 == 1).collect();
    let mut cuts = 0u64;
    let mut side: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    for x in (0..n).filter(|&x| verts >> x & 1 == 1) {
        let labels = component_labels(n, edges, f, 1 << x);
        if count_in(&labels, 1 << x) > base {
            cuts |= 1 << x;
        }
        for (k, &i) in ids.iter().enumerate() {
            let (u, v) = edges[i];
            let anchor = if u != x { u } else { v };
            side[k].push(if anchor == x { usize::MAX } else { labels[anchor] });
        }
    }
    let mut blocks: Vec<u64> = Vec::new();
    let mut assigned = vec![false; ids.len()];
    for a in 0..ids.len() {
        if assigned[a] {
            continue;
        }
        let mut block = 1u64 << ids[a];
        assigned[a] = true;
        for b in a + 1..ids.len() {
            if !assigned[b] && side[a] == side[b] {
                block |= 1 << ids[b];
                assigned[b] = true;
            }
        }
        blocks.push(block);
    }
    Shape {
        verts,
        connected: f != 0 && base == 1,
        cuts,
        blocks,
    }
}

/// The four defining conditions of a block path from `v` to `u_mask`.
pub fn is_block_path(s: &Shape, edges: &[(usize, usize)], v: usize, u_mask: u64) -> bool {
    let touched = s.verts & u_mask;
    if touched.count_ones() != 1 || s.verts >> v & 1 == 0 || !s.connected {
        return false;
    }
    let u = touched.trailing_zeros() as usize;
    if s.cuts >> u & 1 == 1 || s.cuts >> v & 1 == 1 {
        return false;
    }
    if s.cuts == 0 {
        return true;
    }
    let leaves: Vec<u64> = s
        .blocks
        .iter()
        .copied()
        .filter(|&b| (vertex_mask(edges, b) & s.cuts).count_ones() == 1)
        .collect();
    if leaves.len() != 2 {
        return false;
    }
    let holds = |b: u64, x: usize| vertex_mask(edges, b) >> x & 1 == 1;
    (holds(leaves[0], u) && holds(leaves[1], v)) || (holds(leaves[1], u) && holds(leaves[0], v))
}

/// The path-shaped block-cutpoint characterization: blocks ordered
/// `B1 .. Bk` from `u`, with `u` only in `B1` and `v` only in `Bk`.
pub fn is_path_shaped(s: &Shape, edges: &[(usize, usize)], v: usize, u_mask: u64) -> bool {
    if !s.connected {
        return false;
    }
    let bv: Vec<u64> = s.blocks.iter().map(|&b| vertex_mask(edges, b)).collect();
    let k = bv.len();
    for c in (0..64).filter(|&c| s.cuts >> c & 1 == 1) {
        if bv.iter().filter(|&&m| m >> c & 1 == 1).count() != 2 {
            return false;
        }
    }
    if bv.iter().any(|&m| (m & s.cuts).count_ones() > 2) || s.cuts.count_ones() as usize != k - 1 {
        return false;
    }
    let starts: Vec<usize> = (0..k).filter(|&i| (bv[i] & u_mask).count_ones() == 1).collect();
    for &first in &starts {
        let mut order = vec![first];
        let mut used = vec![false; k];
        used[first] = true;
        while order.len() < k {
            let last = bv[*order.last().unwrap()];
            match (0..k).find(|&j| !used[j] && bv[j] & last & s.cuts != 0) {
                Some(j) => {
                    used[j] = true;
                    order.push(j);
                }
                None => return false,
            }
        }
        let u_in_first = bv[first] & u_mask;
        let later_clean = order[1..].iter().all(|&i| bv[i] & u_mask == 0);
        let v_last = bv[order[k - 1]] >> v & 1 == 1;
        let v_clean = order[..k - 1].iter().all(|&i| bv[i] >> v & 1 == 0);
        if u_in_first.count_ones() == 1 && later_clean && v_last && v_clean {
            return true;
        }
    }
    false
}

/// Closed trails from `v` by length, both directions counted, by plain
/// backtracking.
pub fn closed_trails(g: &Graph, v: usize) -> Vec<u64> {
    let edges = edges_of(g);
    let mut counts = vec![0u64; edges.len() + 1];
    let mut used = vec![false; edges.len()];
    fn go(edges: &[(usize, usize)], origin: usize, at: usize, len: usize, used: &mut [bool], counts: &mut [u64]) {
        for i in 0..edges.len() {
            if used[i] {
                continue;
            }
            let (a, b) = edges[i];
            let nexts: Vec<usize> = if a == at && b == at {
                vec![at, at]
            } else if a == at {
                vec![b]
            } else if b == at {
                vec![a]
            } else {
                continue;
            };
            used[i] = true;
            for next in nexts {
                if next == origin {
                    counts[len + 1] += 1;
                }
                go(edges, origin, next, len + 1, used, counts);
            }
            used[i] = false;
        }
    }
    go(&edges, v, v, 0, &mut used, &mut counts);
    counts
}

pub fn eval_hist(hist: &[u64], z: Complex64) -> Complex64 {
    hist.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
}

pub fn eval_hist_exact(hist: &[u64], q: &BigRational) -> BigRational {
    hist.iter()
        .rev()
        .fold(BigRational::from_integer(BigInt::from(0)), |acc, &c| acc * q + BigRational::from_integer(BigInt::from(c)))
}

/// Zeros of the polynomial inside the circle `|z| = r`, by the argument
/// principle with adaptive refinement of each arc.
pub fn zeros_inside(hist: &[u64], r: f64) -> usize {
    let p = |t: f64| eval_hist(hist, Complex64::from_polar(r, t));
    let mut total = 0.0;
    let n0 = 512;
    let step = std::f64::consts::TAU / n0 as f64;
    for k in 0..n0 {
        total += arc_turn(&p, k as f64 * step, (k + 1) as f64 * step, 0);
    }
    (total / std::f64::consts::TAU).round() as usize
}

fn arc_turn(p: &impl Fn(f64) -> Complex64, a: f64, b: f64, depth: usize) -> f64 {
    let d = (p(b) / p(a)).arg();
    if d.abs() < 0.5 || depth > 30 {
        return d;
    }
    let mid = 0.5 * (a + b);
    arc_turn(p, a, mid, depth + 1) + arc_turn(p, mid, b, depth + 1)
}

/// Smallest `ε` with `(1-ε)^(g+2) <= 2ε²(Δ-1)²/Δ`, by bisection on `[0, 1]`,
/// mapped to the radius `(1-ε)²/(Δ-1)`.
pub fn max_radius_oracle(delta: usize, girth: usize) -> f64 {
    let (d, g) = (delta as f64, girth as f64);
    let ok = |e: f64| (1.0 - e).powf(g + 2.0) <= 2.0 * e * e * (d - 1.0) * (d - 1.0) / d;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (1.0 - hi).powi(2) / (d - 1.0)
}

/// `sum_k C(n,k) (1 + (-1)^(n-k)) b^k`, the coefficients of
/// `(b+1)^n + (b-1)^n`.
pub fn cycle_ising(n: usize) -> Vec<BigInt> {
    let mut binom = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); binom.len() + 1];
        for k in 1..binom.len() {
            next[k] = &binom[k - 1] + &binom[k];
        }
        binom = next;
    }
    (0..=n)
        .map(|k| if (n - k).is_multiple_of(2) { &binom[k] * 2 } else { BigInt::from(0) })
        .collect()
}

/// Named graphs, small families and seeded random cubic graphs used as the
/// standard test corpus.
pub fn corpus() -> Vec<(String, Graph)> {
    use rand::SeedableRng;
    let mut out: Vec<(String, Graph)> = generate::connected_graphs(7, 21, 3)
        .into_iter()
        .enumerate()
        .map(|(i, g)| (format!("connected-{i}"), g))
        .collect();
    for n in 3..=12 {
        out.push((format!("C{n}"), generate::cycle(n).unwrap()));
    }
    out.push(("K4".into(), generate::complete(4)));
    out.push(("K5".into(), generate::complete(5)));
    out.push(("K33".into(), generate::complete_bipartite(3, 3)));
    out.push(("petersen".into(), generate::petersen()));
    out.push(("cube".into(), generate::cube()));
    for k in 3..=5 {
        out.push((format!("prism{k}"), generate::prism(k)));
    }
    out.push(("bowtie".into(), generate::bowtie()));
    for (a, b, c) in [(1, 2, 2), (2, 2, 2), (1, 3, 3), (2, 3, 4)] {
        out.push((format!("theta{a}{b}{c}"), generate::theta(a, b, c).unwrap()));
    }
    for (i, n) in [8usize, 10, 12].into_iter().enumerate() {
        for s in 0..3u64 {
            let seed = 100 * i as u64 + s;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            out.push((format!("rr3-n{n}-s{seed}"), generate::random_regular(3, n, &mut rng).unwrap()));
        }
    }
    out
}

/// Exact complex rational `re + im i`.
#[derive(Clone, Debug, PartialEq)]
pub struct QComplex(pub BigRational, pub BigRational);

impl QComplex {
    pub fn from_f64(z: Complex64) -> Self {
        QComplex(BigRational::from_float(z.re).unwrap(), BigRational::from_float(z.im).unwrap())
    }

    pub fn int(k: i64) -> Self {
        QComplex(BigRational::from_integer(BigInt::from(k)), BigRational::from_integer(BigInt::from(0)))
    }

    pub fn add(&self, o: &Self) -> Self {
        QComplex(&self.0 + &o.0, &self.1 + &o.1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        QComplex(&self.0 - &o.0, &self.1 - &o.1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        QComplex(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QComplex(&self.0 * q, &self.1 * q)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(QComplex::int(1), |acc, _| acc.mul(self))
    }

    pub fn to_f64(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        Complex64::new(self.0.to_f64().unwrap(), self.1.to_f64().unwrap())
    }
}

pub fn eval_hist_q(hist: &[u64], z: &QComplex) -> QComplex {
    hist.iter().rev().fold(QComplex::int(0), |acc, &c| acc.mul(z).add(&QComplex::int(c as i64)))
}

/// `2^-|V| sum_k c_k (1+x)^k (1-x)^(|E|-k)`, the transformed Ising side
/// with the pole cleared, in exact arithmetic.
pub fn vdw_rhs_q(ising: &[u64], vertices: usize, edges: usize, x: &QComplex) -> QComplex {
    let one = QComplex::int(1);
    let (plus, minus) = (one.add(x), one.sub(x));
    let mut sum = QComplex::int(0);
    for (k, &c) in ising.iter().enumerate() {
        if c > 0 {
            let term = plus.pow(k).mul(&minus.pow(edges - k)).mul(&QComplex::int(c as i64));
            sum = sum.add(&term);
        }
    }
    sum.scale(&BigRational::new(BigInt::from(1), BigInt::from(1u64) << vertices))
}
