//! The Tutte polynomial, by subset expansion and by deletion-contraction.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{block_decomposition, Graph};
use crate::limits::Limits;

/// `T(G; x, y)` as a map from `(i, j)` to the coefficient of `x^i y^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TuttePolynomial {
    terms: BTreeMap<(usize, usize), u64>,
}

impl TuttePolynomial {
    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    fn monomial(i: usize, j: usize) -> Self {
        TuttePolynomial {
            terms: BTreeMap::from([((i, j), 1)]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    fn add(&mut self, other: &Self) {
        for (&k, &c) in &other.terms {
            *self.terms.entry(k).or_insert(0) += c;
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = TuttePolynomial::default();
        for (&(i, j), &c) in &self.terms {
            for (&(k, l), &d) in &other.terms {
                *out.terms.entry((i + k, j + l)).or_insert(0) += c * d;
            }
        }
        out
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| x.powu(i as u32) * y.powu(j as u32) * c as f64)
            .sum()
    }

    pub fn eval_rational(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&(i, j), &c)| {
            acc + num_traits::pow(x.clone(), i) * num_traits::pow(y.clone(), j) * BigRational::from_integer(c.into())
        })
    }
}

fn check_cap(g: &Graph, limits: &Limits) -> Result<()> {
    if g.edge_count() > limits.tutte_edges {
        return Err(Error::capacity("edge count for the Tutte polynomial", g.edge_count(), limits.tutte_edges));
    }
    Ok(())
}

/// Counts of edge subsets `F` by `(k(F) - k(E), |F| + k(F) - |V|)`, so that
/// `T(x, y) = sum r[i][j] (x-1)^i (y-1)^j`.
pub fn rank_counts(g: &Graph, limits: &Limits) -> Result<BTreeMap<(usize, usize), u64>> {
    check_cap(g, limits)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let k_all = g.component_count();
    const CHUNK: u64 = 1 << 12;
    let total = 1u64 << m;
    let chunks: Vec<BTreeMap<(usize, usize), u64>> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut local = BTreeMap::new();
            let mut parent = vec![0usize; n];
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let mut k = n;
                for (p, &(u, v)) in ends.iter().enumerate() {
                    if mask >> p & 1 == 1 {
                        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                        if ru != rv {
                            parent[ru] = rv;
                            k -= 1;
                        }
                    }
                }
                let size = mask.count_ones() as usize;
                *local.entry((k - k_all, size + k - n)).or_insert(0) += 1;
            }
            local
        })
        .collect();
    let mut out = BTreeMap::new();
    for part in chunks {
        for (key, c) in part {
            *out.entry(key).or_insert(0) += c;
        }
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Direct subset-sum value of `sum_F (x-1)^(k(F)-k(E)) (y-1)^(|F|+k(F)-|V|)`.
pub fn tutte_eval_subsets(g: &Graph, x: Complex64, y: Complex64, limits: &Limits) -> Result<Complex64> {
    let r = rank_counts(g, limits)?;
    Ok(r.iter()
        .map(|(&(i, j), &c)| (x - 1.0).powu(i as u32) * (y - 1.0).powu(j as u32) * c as f64)
        .sum())
}

/// Expands the rank counts into the `x, y` basis.
pub fn tutte_from_subsets(g: &Graph, limits: &Limits) -> Result<TuttePolynomial> {
    let r = rank_counts(g, limits)?;
    let mut acc: BTreeMap<(usize, usize), i128> = BTreeMap::new();
    for (&(i, j), &c) in &r {
        for a in 0..=i {
            for b in 0..=j {
                let sign = if (i - a + j - b) % 2 == 0 { 1 } else { -1 };
                *acc.entry((a, b)).or_insert(0) += sign * binom(i, a) * binom(j, b) * c as i128;
            }
        }
    }
    let terms = acc
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(k, c)| (k, u64::try_from(c).expect("Tutte coefficients are nonnegative")))
        .collect();
    Ok(TuttePolynomial { terms })
}

fn binom(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Deletion-contraction, applied block by block: a bridge contributes `x`, a
/// loop `y`, and a larger block `T(B - e) + T(B / e)`.
pub fn tutte_polynomial(g: &Graph, limits: &Limits) -> Result<TuttePolynomial> {
    check_cap(g, limits)?;
    let mut memo = HashMap::new();
    Ok(by_blocks(g, &mut memo))
}

type Memo = HashMap<Vec<(usize, usize)>, TuttePolynomial>;

fn by_blocks(g: &Graph, memo: &mut Memo) -> TuttePolynomial {
    let bd = block_decomposition(g);
    let mut out = TuttePolynomial::one();
    for block in &bd.blocks {
        let positions: Vec<usize> = block.iter().map(|id| g.position(id).expect("live edge")).collect();
        let factor = if positions.len() == 1 {
            if g.edges()[positions[0]].is_loop() {
                TuttePolynomial::monomial(0, 1)
            } else {
                TuttePolynomial::monomial(1, 0)
            }
        } else {
            two_connected(&g.edge_subgraph(positions), memo)
        };
        out = out.mul(&factor);
    }
    out
}

fn two_connected(b: &Graph, memo: &mut Memo) -> TuttePolynomial {
    let mut key: Vec<(usize, usize)> = b.edges().iter().map(|e| (e.u, e.v)).collect();
    key.sort_unstable();
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let e = b.edges().iter().find(|e| !e.is_loop()).expect("block with a non-loop edge").id;
    let mut t = by_blocks(&b.delete_edge(e).expect("live edge"), memo);
    t.add(&by_blocks(&b.contract_edge(e).expect("non-loop edge"), memo));
    memo.insert(key, t.clone());
    t
}

pub fn tutte_eval(g: &Graph, x: Complex64, y: Complex64, limits: &Limits) -> Result<Complex64> {
    Ok(tutte_polynomial(g, limits)?.eval(x, y))
}
