//! Approximating `Z_even` and `Z_Ising` inside a zero-free disk.
//!
//! Low-order coefficients of `Z_even` come from packings of vertex-disjoint
//! connected even subgraphs, Newton's identities turn them into the Taylor
//! coefficients of `log Z_even`, and the truncated series is exponentiated.
//! If `Z_even` has no zeros in `|x| <= R` and `θ = |x|/R < 1`, truncating
//! after order `m` changes `log Z_even` by at most
//! `|E| θ^(m+1) / ((m+1)(1-θ))`.

use std::collections::HashMap;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::mask::{bit, bits, MaskGraph};
use crate::graph::{EdgeSet, Graph, Vertex};
use crate::limits::Limits;
use crate::regions::{b_to_x, max_radius_for_girth};

/// Largest truncation order tried before giving up.
pub const MAX_ORDER: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub edges: EdgeSet,
    pub vertices: Vec<Vertex>,
    pub size: usize,
}

/// Connected even edge subsets with at most `order` edges, grouped by the
/// smallest vertex they touch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterCatalog {
    pub order: usize,
    pub members: Vec<Cluster>,
    #[serde(skip)]
    masks: Vec<(u64, u64, usize)>,
}

impl ClusterCatalog {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member counts by edge count, `0..=order`.
    pub fn size_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.order + 1];
        for c in &self.members {
            h[c.size] += 1;
        }
        h
    }
}

pub fn build_catalog(g: &Graph, order: usize, limits: &Limits) -> Result<ClusterCatalog> {
    if order > limits.catalog_order {
        return Err(Error::capacity("cluster catalog order", order, limits.catalog_order));
    }
    let mg = MaskGraph::new(g)?;
    let n = g.vertex_count();
    let per_root: Vec<Vec<(u64, u64, usize)>> = (0..n)
        .into_par_iter()
        .map(|v| {
            // edges with both ends at or above v, so v is the smallest vertex
            let allowed = (0..g.edge_count())
                .filter(|&p| mg.ends[p] & (bit(v) - 1) == 0)
                .fold(0u64, |acc, p| acc | bit(p));
            let mut found = Vec::new();
            mg.connected_subsets(v, allowed, order, |edges, verts| {
                if mg.is_even(edges) {
                    found.push((edges, verts, edges.count_ones() as usize));
                }
                true
            });
            found.sort_unstable_by_key(|&(e, _, s)| (s, e));
            found
        })
        .collect();
    let masks: Vec<(u64, u64, usize)> = per_root.into_iter().flatten().collect();
    let members = masks
        .iter()
        .map(|&(e, v, size)| Cluster {
            edges: mg.to_edge_set(e),
            vertices: bits(v).collect(),
            size,
        })
        .collect();
    Ok(ClusterCatalog { order, members, masks })
}

/// `e_0..e_order`: the number of even edge sets of each size, counted as
/// packings of vertex-disjoint catalog members.
pub fn even_coeffs_upto(g: &Graph, order: usize, limits: &Limits) -> Result<Vec<BigInt>> {
    let catalog = build_catalog(g, order, limits)?;
    Ok(pack(&catalog, g.vertex_count())
        .into_iter()
        .map(BigInt::from)
        .collect())
}

fn pack(catalog: &ClusterCatalog, n: usize) -> Vec<u128> {
    let mut by_root: Vec<Vec<(u64, usize)>> = vec![Vec::new(); n];
    for &(_, verts, size) in &catalog.masks {
        by_root[verts.trailing_zeros() as usize].push((verts, size));
    }
    let mut memo = HashMap::new();
    packings(0, 0, &by_root, catalog.order, &mut memo)
}

/// Packings of members rooted at vertices `>= i` avoiding `used`.
fn packings(
    i: usize,
    used: u64,
    by_root: &[Vec<(u64, usize)>],
    order: usize,
    memo: &mut HashMap<(usize, u64), Vec<u128>>,
) -> Vec<u128> {
    if i == by_root.len() {
        let mut out = vec![0; order + 1];
        out[0] = 1;
        return out;
    }
    let used = used & !(bit(i) - 1);
    if let Some(v) = memo.get(&(i, used)) {
        return v.clone();
    }
    let mut out = packings(i + 1, used, by_root, order, memo);
    if used & bit(i) == 0 {
        for &(verts, size) in &by_root[i] {
            if verts & used == 0 {
                let rest = packings(i + 1, used | verts, by_root, order, memo);
                for k in 0..=order - size {
                    out[k + size] += rest[k];
                }
            }
        }
    }
    memo.insert((i, used), out.clone());
    out
}

/// `c_1..c_m` with `log(sum e_k x^k) = sum c_k x^k + O(x^(m+1))`, exactly.
/// Coefficients beyond the end of `e` are taken to be zero.
pub fn log_z_taylor(e: &[BigInt], m: usize) -> Result<Vec<BigRational>> {
    if e.first() != Some(&BigInt::from(1)) {
        return Err(Error::Argument("the constant coefficient must be 1".into()));
    }
    let ek = |k: usize| e.get(k).cloned().unwrap_or_default();
    // p_k = k c_k satisfies p_k = k e_k - sum_{j<k} p_j e_{k-j}
    let mut p: Vec<BigInt> = vec![BigInt::zero(); m + 1];
    for k in 1..=m {
        let mut acc = ek(k) * k;
        for j in k.saturating_sub(e.len() - 1).max(1)..k {
            if !p[j].is_zero() {
                acc -= &p[j] * ek(k - j);
            }
        }
        p[k] = acc;
    }
    Ok((1..=m)
        .map(|k| BigRational::new(p[k].clone(), BigInt::from(k)))
        .collect())
}

/// `ln|r|` and the sign, without overflowing for huge values.
fn ln_abs(r: &BigRational) -> (f64, f64) {
    let sign = match r.numer().sign() {
        Sign::Minus => -1.0,
        Sign::NoSign => 0.0,
        Sign::Plus => 1.0,
    };
    (ln_big(r.numer()) - ln_big(r.denom()), sign)
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::NAN).abs().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap_or(f64::NAN).abs().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `sum_{k=1}^m c_k x^k` in floating point.
pub fn eval_log_series(c: &[BigRational], x: Complex64) -> Complex64 {
    if x.norm() == 0.0 {
        return Complex64::zero();
    }
    let (lr, arg) = (x.norm().ln(), x.arg());
    c.iter()
        .enumerate()
        .filter(|(_, ck)| !ck.is_zero())
        .map(|(i, ck)| {
            let k = (i + 1) as f64;
            let (la, sign) = ln_abs(ck);
            Complex64::from_polar((la + k * lr).exp(), k * arg) * sign
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncationCertificate {
    pub order: usize,
    pub radius: f64,
    pub x: Complex64,
    pub theta: f64,
    /// Bound on `|log estimate - log Z|`.
    pub error_bound: f64,
    /// `exp(error_bound) - 1`, a bound on `|estimate / Z - 1|`.
    pub relative_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Approximation {
    pub estimate: Complex64,
    pub certificate: TruncationCertificate,
}

/// `|E| θ^(m+1) / ((m+1)(1-θ))`.
pub fn truncation_bound(edges: usize, theta: f64, m: usize) -> f64 {
    if edges == 0 || theta == 0.0 {
        return 0.0;
    }
    edges as f64 * theta.powi(m as i32 + 1) / ((m + 1) as f64 * (1.0 - theta))
}

/// The default zero-free radius: the girth-aware disk for maximum degree
/// `max(3, Δ)`. Multigraphs need an explicit radius.
pub fn default_radius(g: &Graph) -> Result<f64> {
    if !g.is_simple() {
        return Err(Error::Argument(
            "the default radius needs a simple graph; pass an explicit radius".into(),
        ));
    }
    let girth = g.girth().unwrap_or(usize::MAX).max(3);
    max_radius_for_girth(g.max_degree().max(3), girth.min(1 << 20))
}

/// Estimates `Z_even(G; x)` to relative accuracy `eps` using the smallest
/// order whose certified relative bound is at most `eps`. `radius` must be
/// a radius on which `Z_even` has no zeros; `None` uses [`default_radius`].
pub fn approx_z_even(
    g: &Graph,
    x: Complex64,
    eps: f64,
    radius: Option<f64>,
    limits: &Limits,
) -> Result<Approximation> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Argument(format!("eps must be positive, got {eps}")));
    }
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::Domain("x must be finite".into()));
    }
    let forest = g.cyclomatic_number() == 0;
    let radius = match radius {
        Some(r) if r > 0.0 && r.is_finite() => r,
        Some(r) => return Err(Error::Argument(format!("radius must be positive, got {r}"))),
        None if forest => 1.0,
        None => default_radius(g)?,
    };
    let theta = x.norm() / radius;
    if forest {
        return Ok(Approximation {
            estimate: Complex64::new(1.0, 0.0),
            certificate: TruncationCertificate {
                order: 0,
                radius,
                x,
                theta,
                error_bound: 0.0,
                relative_bound: 0.0,
            },
        });
    }
    if theta >= 1.0 {
        return Err(Error::OutOfRegion {
            abs_x: x.norm(),
            radius,
        });
    }
    let m_edges = g.edge_count();
    let target = eps.ln_1p();
    let m = (0..=MAX_ORDER)
        .find(|&m| truncation_bound(m_edges, theta, m) <= target)
        .ok_or(Error::Truncation {
            achieved: truncation_bound(m_edges, theta, MAX_ORDER),
        })?;
    let needed = m.min(m_edges);
    if needed > limits.catalog_order {
        let achieved = truncation_bound(m_edges, theta, limits.catalog_order).exp_m1();
        return Err(Error::Truncation { achieved });
    }
    let e = even_coeffs_upto(g, needed, limits)?;
    let c = log_z_taylor(&e, m)?;
    let error_bound = truncation_bound(m_edges, theta, m);
    Ok(Approximation {
        estimate: eval_log_series(&c, x).exp(),
        certificate: TruncationCertificate {
            order: m,
            radius,
            x,
            theta,
            error_bound,
            relative_bound: error_bound.exp_m1(),
        },
    })
}

/// `2^|V| (1-x)^(-|E|)` times the `Z_even` estimate at `x = (b-1)/(b+1)`.
pub fn approx_z_ising(
    g: &Graph,
    b: Complex64,
    eps: f64,
    radius: Option<f64>,
    limits: &Limits,
) -> Result<Approximation> {
    let x = b_to_x(b)?;
    let even = approx_z_even(g, x, eps, radius, limits)?;
    let prefactor = Complex64::new(2f64.powi(g.vertex_count() as i32), 0.0)
        / (Complex64::new(1.0, 0.0) - x).powu(g.edge_count() as u32);
    Ok(Approximation {
        estimate: prefactor * even.estimate,
        certificate: even.certificate,
    })
}

/// `|Log(estimate / exact)|`, the quantity the certificate bounds.
pub fn observed_log_error(estimate: Complex64, exact: Complex64) -> f64 {
    (estimate / exact).ln().norm()
}
