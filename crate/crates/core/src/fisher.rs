//! Fisher zeros: complex roots of `Z_Ising(G; b)`, their images in the
//! x-plane, and scans over graph families.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::generate::Family;
use crate::graph::io::{write_edge_list, write_graph6};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::output::write_atomic;
use crate::partition::z_ising_poly;
use crate::poly::{roots, IntegerPolynomial};
use crate::regions::{b_to_x, eps_delta, n_delta, BOUNDARY_TOL};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub name: String,
    /// `graph6:<code>` for simple graphs, otherwise `edges:<n>:<u-v,...>`.
    pub graph: String,
    pub seed: Option<u64>,
    pub vertices: usize,
    pub edges: usize,
    pub delta: usize,
    pub polynomial: IntegerPolynomial,
    /// Roots in the b-plane with multiplicity, as `[re, im]`.
    pub roots: Vec<Complex64>,
    /// `(b-1)/(b+1)` for each root; `None` for `b = -1`.
    pub x_images: Vec<Option<Complex64>>,
    /// Smallest `|x|` over finite images; infinite (serialized as `null`)
    /// when there is none.
    pub min_abs_x: f64,
}

impl ZeroRecord {
    /// Whether some root lies in the closed disk `|x| <= radius`, up to the
    /// boundary tolerance.
    pub fn violates(&self, radius: f64) -> bool {
        self.min_abs_x <= radius + BOUNDARY_TOL
    }
}

pub fn graph_descriptor(g: &Graph) -> String {
    match write_graph6(g) {
        Ok(code) => format!("graph6:{code}"),
        Err(_) => {
            let pairs: Vec<String> = write_edge_list(g)
                .lines()
                .skip(1)
                .map(|l| l.replace(' ', "-"))
                .collect();
            format!("edges:{}:{}", g.vertex_count(), pairs.join(","))
        }
    }
}

pub fn fisher_zeros(g: &Graph, tol: f64, limits: &Limits) -> Result<ZeroRecord> {
    zero_record(g, String::new(), None, tol, limits)
}

fn zero_record(g: &Graph, name: String, seed: Option<u64>, tol: f64, limits: &Limits) -> Result<ZeroRecord> {
    let polynomial = z_ising_poly(g, limits)?;
    let bs = roots(&polynomial, tol)?;
    let x_images: Vec<Option<Complex64>> = bs.iter().map(|&b| b_to_x(b).ok()).collect();
    let min_abs_x = x_images
        .iter()
        .flatten()
        .map(|x| x.norm())
        .fold(f64::INFINITY, f64::min);
    Ok(ZeroRecord {
        name,
        graph: graph_descriptor(g),
        seed,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        delta: g.max_degree(),
        polynomial,
        roots: bs,
        x_images,
        min_abs_x,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub name: String,
    pub min_abs_x: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub family: String,
    pub delta: usize,
    pub radius: f64,
    pub graphs: usize,
    pub roots: usize,
    pub violations: Vec<Violation>,
    pub global_min_abs_x: f64,
    pub witness: Option<String>,
    /// `1/(Δ-1)` minus the smallest observed `|x|`.
    pub gap_to_inverse_degree: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scan {
    pub records: Vec<ZeroRecord>,
    pub summary: ScanSummary,
}

/// Computes the zero record of every family member, in generation order, and
/// flags those with a root in `|x| <= radius`. Members whose maximum degree
/// exceeds `delta` are rejected.
pub fn scan_family(family: &Family, delta: usize, radius: f64, tol: f64, limits: &Limits) -> Result<Scan> {
    if !(0.0..1.0).contains(&radius) {
        return Err(Error::Argument(format!("radius must lie in [0, 1), got {radius}")));
    }
    if delta < 2 {
        return Err(Error::Argument(format!("degree bound must be at least 2, got {delta}")));
    }
    let members = family.members()?;
    if let Some(m) = members.iter().find(|m| m.graph.max_degree() > delta) {
        return Err(Error::Argument(format!(
            "{} has maximum degree {} above the bound {delta}",
            m.name,
            m.graph.max_degree()
        )));
    }
    let records = members
        .into_par_iter()
        .map(|m| zero_record(&m.graph, m.name, m.seed, tol, limits))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&family.to_string(), delta, radius, &records);
    Ok(Scan { records, summary })
}

pub fn summarize(family: &str, delta: usize, radius: f64, records: &[ZeroRecord]) -> ScanSummary {
    let violations = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.violates(radius))
        .map(|(index, r)| Violation {
            index,
            name: r.name.clone(),
            min_abs_x: r.min_abs_x,
        })
        .collect();
    let best = records
        .iter()
        .filter(|r| r.min_abs_x.is_finite())
        .min_by(|a, b| a.min_abs_x.total_cmp(&b.min_abs_x));
    let global_min_abs_x = best.map_or(f64::INFINITY, |r| r.min_abs_x);
    ScanSummary {
        family: family.to_string(),
        delta,
        radius,
        graphs: records.len(),
        roots: records.iter().map(|r| r.roots.len()).sum(),
        violations,
        global_min_abs_x,
        witness: best.map(|r| r.name.clone()),
        gap_to_inverse_degree: 1.0 / (delta.max(2) - 1) as f64 - global_min_abs_x,
    }
}

/// Scatter plot of x-images with the reference circles `n_Δ`, `ε_Δ`,
/// `1/(Δ-1)` and `1/sqrt(Δ-1)`. The output depends only on the inputs.
pub fn render_zero_map(records: &[ZeroRecord], delta: usize) -> String {
    const SIZE: f64 = 640.0;
    let points: Vec<Complex64> = records
        .iter()
        .flat_map(|r| r.x_images.iter().flatten().copied())
        .collect();
    let far = points.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let extent = far.clamp(1.1, 4.0) * 1.05;
    let scale = SIZE / (2.0 * extent);
    let px = |x: Complex64| (SIZE / 2.0 + x.re * scale, SIZE / 2.0 - x.im * scale);

    let mut circles = Vec::new();
    if delta >= 3 {
        circles.push(("n", n_delta(delta).unwrap(), "#d62728"));
        circles.push(("eps", eps_delta(delta).unwrap(), "#ff7f0e"));
    }
    if delta >= 2 {
        let d1 = (delta - 1) as f64;
        circles.push(("1/(D-1)", 1.0 / d1, "#2ca02c"));
        circles.push(("1/sqrt(D-1)", 1.0 / d1.sqrt(), "#9467bd"));
    }
    let inner = circles.first().map_or(0.0, |c| c.1);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let mid = SIZE / 2.0;
    let _ = writeln!(
        svg,
        r##"<line x1="0" y1="{mid}" x2="{SIZE}" y2="{mid}" stroke="#999999" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{mid}" y1="0" x2="{mid}" y2="{SIZE}" stroke="#999999" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<circle cx="{mid}" cy="{mid}" r="{:.3}" fill="none" stroke="#cccccc" stroke-dasharray="4 4"/>"##,
        scale
    );
    for (i, (label, r, colour)) in circles.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<circle cx="{mid}" cy="{mid}" r="{:.3}" fill="none" stroke="{colour}" stroke-width="1.5"><title>{label} = {r:.6}</title></circle>"#,
            r * scale
        );
        let _ = writeln!(
            svg,
            r#"<text x="8" y="{}" font-family="monospace" font-size="12" fill="{colour}">{label} = {r:.6}</text>"#,
            18 + 16 * i
        );
    }
    for x in &points {
        let (cx, cy) = px(*x);
        if !(0.0..=SIZE).contains(&cx) || !(0.0..=SIZE).contains(&cy) {
            continue;
        }
        let fill = if x.norm() <= inner + BOUNDARY_TOL { "#d62728" } else { "#1f77b4" };
        let _ = writeln!(svg, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="2" fill="{fill}"/>"#);
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_zero_map(records: &[ZeroRecord], delta: usize, path: &Path) -> Result<()> {
    write_atomic(path, render_zero_map(records, delta).as_bytes())
}
