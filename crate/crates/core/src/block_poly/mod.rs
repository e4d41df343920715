//! Block polynomials of 1-multiplicative invariants.
//!
//! An invariant `w` is 1-multiplicative when `w(K1) = 1` and `w` multiplies
//! over disjoint unions and over gluings at a single vertex; such a `w`
//! factors over blocks. The block polynomial is
//! `Z_block(G; w) = sum_{H ⊆ E} prod_{B block of H} w(B)`.

pub mod hom;
pub mod tutte;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::block_paths::{enumerate_block_paths, vertex_mask_of, ShapeScratch};
use crate::complex::format_complex;
use crate::error::{Error, Result};
use crate::graph::mask::{bit, bits, MaskBlocks, MaskGraph};
use crate::graph::{generate, EdgeSet, Graph, Vertex};
use crate::limits::Limits;
use crate::partition::check_vertices;
use crate::poly::IntegerPolynomial;

use hom::{hom_density, is_vertex_transitive};
use tutte::tutte_polynomial;

/// Relative tolerance for comparing complex-valued invariants.
pub const VALUE_TOL: f64 = 1e-9;

/// Smallest `|Z_block|` accepted as nonzero next to a valid certificate.
pub const NONZERO_TOL: f64 = 1e-9;

pub type CustomFn = Arc<dyn Fn(&Graph) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum Invariant {
    /// `x^|E(H)|` when every degree of `H` is even, else 0.
    EvenIndicator { x: Complex64 },
    /// `T(H; x, y)`.
    Tutte { x: Complex64, y: Complex64 },
    /// `t(H, target)`; 1-multiplicative when the target is vertex-transitive.
    HomDensity { target: Graph },
    Custom { name: String, eval: CustomFn },
}

impl fmt::Debug for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Invariant({self})")
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::EvenIndicator { x } => write!(f, "even:x={}", format_complex(*x)),
            Invariant::Tutte { x, y } => write!(f, "tutte:x={},y={}", format_complex(*x), format_complex(*y)),
            Invariant::HomDensity { target } => {
                write!(f, "hom:target={}", crate::fisher::graph_descriptor(target))
            }
            Invariant::Custom { name, .. } => write!(f, "custom:{name}"),
        }
    }
}

fn exact_real(z: Complex64) -> Option<BigRational> {
    if z.im == 0.0 {
        BigRational::from_float(z.re)
    } else {
        None
    }
}

impl Invariant {
    pub fn even_indicator(x: Complex64) -> Self {
        Invariant::EvenIndicator { x }
    }

    pub fn tutte(x: Complex64, y: Complex64) -> Self {
        Invariant::Tutte { x, y }
    }

    /// Homomorphism density into `target`, which must be simple and
    /// vertex-transitive.
    pub fn hom_density(target: Graph) -> Result<Self> {
        if !target.is_simple() || target.vertex_count() == 0 {
            return Err(Error::Argument("homomorphism target must be a nonempty simple graph".into()));
        }
        if !is_vertex_transitive(&target)? {
            return Err(Error::NotOneMultiplicative(
                "homomorphism target is not vertex-transitive".into(),
            ));
        }
        Ok(Invariant::HomDensity { target })
    }

    pub fn custom(name: impl Into<String>, eval: impl Fn(&Graph) -> Complex64 + Send + Sync + 'static) -> Self {
        Invariant::Custom {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn evaluate(&self, h: &Graph, limits: &Limits) -> Result<Complex64> {
        match self {
            Invariant::EvenIndicator { x } => Ok(if h.is_even(&h.edge_set()) {
                x.powu(h.edge_count() as u32)
            } else {
                Complex64::zero()
            }),
            Invariant::Tutte { x, y } => Ok(tutte_polynomial(h, limits)?.eval(*x, *y)),
            Invariant::HomDensity { target } => {
                let t = hom_density(h, target, limits)?;
                Ok(Complex64::new(t.to_f64().unwrap_or(f64::NAN), 0.0))
            }
            Invariant::Custom { eval, .. } => Ok(eval(h)),
        }
    }

    /// Whether [`Self::evaluate_exact`] returns values.
    pub fn is_rational(&self) -> bool {
        match self {
            Invariant::EvenIndicator { x } => exact_real(*x).is_some(),
            Invariant::Tutte { x, y } => exact_real(*x).is_some() && exact_real(*y).is_some(),
            Invariant::HomDensity { .. } => true,
            Invariant::Custom { .. } => false,
        }
    }

    /// The exact rational value when every parameter is real; a finite
    /// double is itself a rational number.
    pub fn evaluate_exact(&self, h: &Graph, limits: &Limits) -> Result<Option<BigRational>> {
        Ok(match self {
            Invariant::EvenIndicator { x } => exact_real(*x).map(|x| {
                if h.is_even(&h.edge_set()) {
                    num_traits::pow(x, h.edge_count())
                } else {
                    BigRational::zero()
                }
            }),
            Invariant::Tutte { x, y } => match (exact_real(*x), exact_real(*y)) {
                (Some(x), Some(y)) => Some(tutte_polynomial(h, limits)?.eval_rational(&x, &y)),
                _ => None,
            },
            Invariant::HomDensity { target } => Some(hom_density(h, target, limits)?),
            Invariant::Custom { .. } => None,
        })
    }

    /// Checks `w(K1) = 1` and multiplicativity over disjoint unions and
    /// one-vertex gluings on `trials` random pairs of small multigraphs.
    pub fn validate(&self, trials: usize, seed: u64, limits: &Limits) -> Result<GateReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k1 = self.evaluate(&Graph::new(1), limits)?;
        let mut failures = Vec::new();
        for _ in 0..trials {
            let h1 = generate::random_multigraph(4, 5, &mut rng);
            let h2 = generate::random_multigraph(4, 5, &mut rng);
            let (a, b) = (rng.gen_range(0..h1.vertex_count()), rng.gen_range(0..h2.vertex_count()));
            let union = h1.disjoint_union(&h2);
            let glued = h1.glue(a, &h2, b)?;
            for (kind, combined) in [("disjoint-union", &union), ("gluing", &glued)] {
                if let Some(f) = self.compare_product(kind, &h1, &h2, combined, limits)? {
                    failures.push(f);
                }
            }
        }
        let k1_ok = (k1 - Complex64::one()).norm() <= VALUE_TOL;
        Ok(GateReport {
            invariant: self.to_string(),
            trials,
            seed,
            k1,
            passed: k1_ok && failures.is_empty(),
            k1_ok,
            failures,
        })
    }

    /// Like [`Self::validate`], but fails with
    /// [`Error::NotOneMultiplicative`] when the gate does not pass.
    pub fn require_one_multiplicative(&self, trials: usize, seed: u64, limits: &Limits) -> Result<GateReport> {
        let report = self.validate(trials, seed, limits)?;
        if !report.passed {
            let what = match report.failures.first() {
                Some(f) => format!("{} of {} and {}", f.kind, f.first, f.second),
                None => format!("w(K1) = {}", format_complex(report.k1)),
            };
            return Err(Error::NotOneMultiplicative(format!("{self}: {what}")));
        }
        Ok(report)
    }

    fn compare_product(
        &self,
        kind: &str,
        h1: &Graph,
        h2: &Graph,
        combined: &Graph,
        limits: &Limits,
    ) -> Result<Option<GateFailure>> {
        let exact = match (
            self.evaluate_exact(h1, limits)?,
            self.evaluate_exact(h2, limits)?,
            self.evaluate_exact(combined, limits)?,
        ) {
            (Some(a), Some(b), Some(c)) => Some(a * b == c),
            _ => None,
        };
        let product = self.evaluate(h1, limits)? * self.evaluate(h2, limits)?;
        let value = self.evaluate(combined, limits)?;
        let ok = exact.unwrap_or_else(|| close(product, value));
        Ok((!ok).then(|| GateFailure {
            kind: kind.to_string(),
            first: crate::fisher::graph_descriptor(h1),
            second: crate::fisher::graph_descriptor(h2),
            product,
            combined: value,
        }))
    }
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= VALUE_TOL * a.norm().max(b.norm()).max(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateFailure {
    pub kind: String,
    pub first: String,
    pub second: String,
    pub product: Complex64,
    pub combined: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateReport {
    pub invariant: String,
    pub trials: usize,
    pub seed: u64,
    pub k1: Complex64,
    pub k1_ok: bool,
    pub failures: Vec<GateFailure>,
    pub passed: bool,
}

/// Sums `prod_blocks weight(B)` over edge subsets whose nontrivial
/// components each meet the terminals at most once. Weights are cached per
/// block; a zero weight short-cuts the product.
fn block_sum<T>(
    g: &Graph,
    terminals: &[Vertex],
    limits: &Limits,
    weight: &(dyn Fn(&Graph) -> Result<T> + Sync),
) -> Result<T>
where
    T: Clone + Send + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    check_vertices(g, terminals)?;
    if g.edge_count() > limits.block_edges {
        return Err(Error::capacity("edge count for the block polynomial", g.edge_count(), limits.block_edges));
    }
    let mg = MaskGraph::new(g)?;
    let umask = vertex_mask_of(terminals);
    const CHUNK: u64 = 1 << 12;
    let total = 1u64 << g.edge_count();
    let parts = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut cache: HashMap<u64, T> = HashMap::new();
            let mut mb = MaskBlocks::new(g.vertex_count());
            let mut sum = T::zero();
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                if umask != 0 && mg.components(mask).iter().any(|k| (k & umask).count_ones() > 1) {
                    continue;
                }
                let mut prod = T::one();
                for &b in mb.blocks(&mg, mask) {
                    let w = match cache.get(&b) {
                        Some(w) => w.clone(),
                        None => {
                            let w = weight(&mg.subgraph(b))?;
                            cache.insert(b, w.clone());
                            w
                        }
                    };
                    if w.is_zero() {
                        prod = T::zero();
                        break;
                    }
                    prod = prod * w;
                }
                sum = sum + prod;
            }
            Ok(sum)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(parts.into_iter().fold(T::zero(), |acc, p| acc + p))
}

pub fn z_block(g: &Graph, w: &Invariant, limits: &Limits) -> Result<Complex64> {
    z_block_conditional(g, &[], w, limits)
}

/// `Z_block(G | U; w)`: only subsets whose nontrivial components each meet
/// `U` in at most one vertex contribute.
pub fn z_block_conditional(g: &Graph, terminals: &[Vertex], w: &Invariant, limits: &Limits) -> Result<Complex64> {
    block_sum(g, terminals, limits, &|b| w.evaluate(b, limits))
}

/// Exact conditional block polynomial for invariants with rational values.
pub fn z_block_exact(g: &Graph, terminals: &[Vertex], w: &Invariant, limits: &Limits) -> Result<Option<BigRational>> {
    if !w.is_rational() {
        return Ok(None);
    }
    block_sum(g, terminals, limits, &|b| {
        Ok(w.evaluate_exact(b, limits)?.expect("rational invariant"))
    })
    .map(Some)
}

/// The conditional block polynomial of the even indicator as a polynomial
/// in `x`.
pub fn z_block_even_polynomial(g: &Graph, terminals: &[Vertex], limits: &Limits) -> Result<IntegerPolynomial> {
    block_sum(g, terminals, limits, &|b| {
        Ok(if b.is_even(&b.edge_set()) {
            IntegerPolynomial::monomial(1, b.edge_count())
        } else {
            IntegerPolynomial::zero()
        })
    })
}

/// One summand `w(B) Z_block(G | U ∪ V(B))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockTerm {
    pub block_path: EdgeSet,
    pub weight: Complex64,
    pub conditional: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockDecompositionReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub with_start: Complex64,
    pub terms: Vec<BlockTerm>,
    /// Whether the comparison was made in exact rational arithmetic.
    pub exact: bool,
    pub relative_error: f64,
    pub equal: bool,
}

fn to_complex(r: &BigRational) -> Complex64 {
    Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
}

/// Both sides of
/// `Z_block(G|U) = Z_block(G|U+v) + sum_{B in BP(v,U)} w(B) Z_block(G|U+V(B))`.
/// Rational invariants are compared exactly, others within [`VALUE_TOL`].
pub fn verify_block_decomposition_1mult(
    g: &Graph,
    terminals: &[Vertex],
    v: Vertex,
    w: &Invariant,
    limits: &Limits,
) -> Result<BlockDecompositionReport> {
    let paths = enumerate_block_paths(g, v, terminals, limits)?;
    let mut with_v = terminals.to_vec();
    with_v.push(v);
    let extended = |vertices: &[Vertex]| {
        let mut u = terminals.to_vec();
        u.extend(vertices.iter().filter(|x| !terminals.contains(x)));
        u
    };
    let positions = |set: &EdgeSet| -> Vec<usize> { set.iter().map(|id| g.position(id).expect("live edge")).collect() };

    if w.is_rational() {
        let exact = |u: &[Vertex]| -> Result<BigRational> { Ok(z_block_exact(g, u, w, limits)?.expect("rational")) };
        let lhs = exact(terminals)?;
        let with_start = exact(&with_v)?;
        let mut rhs = with_start.clone();
        let mut terms = Vec::new();
        for p in &paths {
            let weight = w.evaluate_exact(&g.edge_subgraph(positions(&p.edges)), limits)?.expect("rational");
            let conditional = exact(&extended(&p.vertices))?;
            rhs += &weight * &conditional;
            terms.push(BlockTerm {
                block_path: p.edges.clone(),
                weight: to_complex(&weight),
                conditional: to_complex(&conditional),
            });
        }
        let (lf, rf) = (to_complex(&lhs), to_complex(&rhs));
        return Ok(BlockDecompositionReport {
            lhs: lf,
            rhs: rf,
            with_start: to_complex(&with_start),
            terms,
            exact: true,
            relative_error: relative(lf, rf),
            equal: lhs == rhs,
        });
    }

    let lhs = z_block_conditional(g, terminals, w, limits)?;
    let with_start = z_block_conditional(g, &with_v, w, limits)?;
    let mut rhs = with_start;
    let mut terms = Vec::new();
    for p in &paths {
        let weight = w.evaluate(&g.edge_subgraph(positions(&p.edges)), limits)?;
        let conditional = z_block_conditional(g, &extended(&p.vertices), w, limits)?;
        rhs += weight * conditional;
        terms.push(BlockTerm {
            block_path: p.edges.clone(),
            weight,
            conditional,
        });
    }
    Ok(BlockDecompositionReport {
        lhs,
        rhs,
        with_start,
        terms,
        exact: false,
        relative_error: relative(lhs, rhs),
        equal: close(lhs, rhs),
    })
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairSum {
    pub start: Vertex,
    pub terminals: Vec<Vertex>,
    pub sum: f64,
}

/// Zero-freeness certificate from block-path sums: valid when
/// `sum_{B in BP(v,U)} |w(B)| (1/(1-a))^(|V(B)|-2) <= a` for every nonempty
/// `U` and `v` outside it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockCertificate {
    pub a: f64,
    pub pairs: Vec<PairSum>,
    pub max_sum: f64,
    pub witness: Option<PairSum>,
    pub valid: bool,
    /// `Z_block(G; w)`, computed when the certificate is valid and the graph
    /// is within the block-polynomial cap.
    pub z_block: Option<Complex64>,
    pub nonzero: Option<bool>,
}

/// Connected-subgraph certificate: for every `v`,
/// `sum_{connected B ∋ v} |w(B)| (1/(1-a))^(|V(B)|-1) <= a`. The sums grow
/// with the induced subgraph, so the whole graph gives the maximum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GkCertificate {
    pub a: f64,
    pub per_vertex: Vec<f64>,
    pub max_sum: f64,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GkComparison {
    pub gk: GkCertificate,
    pub block: BlockCertificate,
    /// Block-path maximum is at most the connected-subgraph maximum.
    pub block_not_worse: bool,
}

struct Cluster {
    verts: u64,
    eligible: u64,
    size: u32,
    abs_weight: f64,
}

/// Connected edge subsets through `v` with nonzero weight, where the weight
/// of a subset is the product of its block weights.
fn clusters_at(mg: &MaskGraph<'_>, v: Vertex, w: &Invariant, limits: &Limits) -> Result<Vec<Cluster>> {
    let mut out = Vec::new();
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut mb = MaskBlocks::new(mg.g.vertex_count());
    let mut shape = ShapeScratch::new(mg.g.vertex_count());
    let mut failure = None;
    mg.connected_subsets(v, mg.all_edges, usize::MAX, |edges, verts| {
        let mut abs_weight = 1.0;
        for &b in mb.blocks(mg, edges) {
            let wb = match cache.get(&b) {
                Some(&x) => x,
                None => match w.evaluate(&mg.subgraph(b), limits) {
                    Ok(x) => {
                        cache.insert(b, x.norm());
                        x.norm()
                    }
                    Err(e) => {
                        failure = Some(e);
                        return false;
                    }
                },
            };
            abs_weight *= wb;
            if abs_weight == 0.0 {
                break;
            }
        }
        if abs_weight != 0.0 {
            out.push(Cluster {
                verts,
                eligible: shape.endpoints(mg, edges, verts, v),
                size: verts.count_ones(),
                abs_weight,
            });
        }
        true
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Argument(format!("a must lie in (0, 1), got {a}")));
    }
    Ok(())
}

/// Block-path sums for every `(U, v)`, in order of `v` then `U` as a bit
/// mask.
fn pair_sums(mg: &MaskGraph<'_>, v: Vertex, clusters: &[Cluster], q: f64) -> Vec<PairSum> {
    let n = mg.g.vertex_count();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut sums = vec![0.0f64; 1 << n];
    for c in clusters {
        let term = c.abs_weight * q.powi(c.size as i32 - 2);
        let free = all & !c.verts;
        for u in bits(c.eligible) {
            let mut t = free;
            loop {
                sums[(t | bit(u)) as usize] += term;
                if t == 0 {
                    break;
                }
                t = (t - 1) & free;
            }
        }
    }
    (1..=all)
        .filter(|&u| u & bit(v) == 0)
        .map(|u| PairSum {
            start: v,
            terminals: bits(u).collect(),
            sum: sums[u as usize],
        })
        .collect()
}

/// Checks the block-path hypothesis for every nonempty `U ⊂ V` and
/// `v ∉ U`. `w` is assumed 1-multiplicative, so block-path weights are
/// products of block weights.
pub fn certify_zero_free(g: &Graph, w: &Invariant, a: f64, limits: &Limits) -> Result<BlockCertificate> {
    check_a(a)?;
    if g.vertex_count() > limits.certificate_vertices {
        return Err(Error::capacity(
            "vertex count for the zero-freeness certificate",
            g.vertex_count(),
            limits.certificate_vertices,
        ));
    }
    crate::block_paths::check_block_path_cap(g, limits)?;
    let mg = MaskGraph::new(g)?;
    let q = 1.0 / (1.0 - a);
    let per_vertex = (0..g.vertex_count())
        .into_par_iter()
        .map(|v| Ok(pair_sums(&mg, v, &clusters_at(&mg, v, w, limits)?, q)))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<PairSum> = per_vertex.into_iter().flatten().collect();
    let witness = pairs
        .iter()
        .fold(None::<&PairSum>, |best, p| match best {
            Some(b) if b.sum >= p.sum => Some(b),
            _ => Some(p),
        })
        .cloned();
    let max_sum = witness.as_ref().map_or(0.0, |p| p.sum);
    let valid = max_sum <= a;
    let z = if valid && g.edge_count() <= limits.block_edges {
        Some(z_block(g, w, limits)?)
    } else {
        None
    };
    Ok(BlockCertificate {
        a,
        pairs,
        max_sum,
        witness,
        valid,
        z_block: z,
        nonzero: z.map(|z| z.norm() > NONZERO_TOL),
    })
}

/// The connected-subgraph certificate next to the block-path certificate.
pub fn gruber_kunz_check(g: &Graph, w: &Invariant, a: f64, limits: &Limits) -> Result<GkComparison> {
    check_a(a)?;
    if g.edge_count() > limits.gk_edges {
        return Err(Error::capacity("edge count for connected-subgraph sums", g.edge_count(), limits.gk_edges));
    }
    let mg = MaskGraph::new(g)?;
    let q = 1.0 / (1.0 - a);
    let per_vertex = (0..g.vertex_count())
        .into_par_iter()
        .map(|v| {
            let clusters = clusters_at(&mg, v, w, limits)?;
            Ok(clusters.iter().map(|c| c.abs_weight * q.powi(c.size as i32 - 1)).sum())
        })
        .collect::<Result<Vec<f64>>>()?;
    let max_sum = per_vertex.iter().copied().fold(0.0, f64::max);
    let block = certify_zero_free(g, w, a, limits)?;
    Ok(GkComparison {
        block_not_worse: block.max_sum <= max_sum,
        gk: GkCertificate {
            a,
            valid: max_sum <= a,
            per_vertex,
            max_sum,
        },
        block,
    })
}
