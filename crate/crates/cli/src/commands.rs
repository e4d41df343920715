use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use ising_lab::block_paths::{
    enumerate_block_paths, eulerian_double_count_check, even_block_path_polynomial, even_block_paths,
    verify_decomposition as decomposition_report, walk_bound_check, walk_gf,
};
use ising_lab::block_poly::{certify_zero_free, gruber_kunz_check, z_block, z_block_exact};
use ising_lab::complex::parse_complex;
use ising_lab::fisher::{emit_zero_map, fisher_zeros, scan_family, summarize, ZeroRecord};
use ising_lab::fptas::{approx_z_even, approx_z_ising, observed_log_error};
use ising_lab::graph::generate::Family;
use ising_lab::graph::io::{load_graph, parse_graph6, write_edge_list};
use ising_lab::graph::block_decomposition;
use ising_lab::output::write_atomic;
use ising_lab::partition::{
    vdw_polynomial_identity, vdw_transform_check, z_even_conditional, z_even_poly, z_ising_poly,
};
use ising_lab::regions::{
    corollary_inequality_check, eps_delta, girth_threshold, n_delta, optimal_constants, DiskRegion,
};
use ising_lab::{Error, Graph, Invariant, Limits, Result, Vertex};

use crate::render::{complex, json_text, object, real, write_or_print, Report};
use crate::{FamilyArgs, Format, GraphArg};

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn load(arg: &GraphArg) -> Result<Graph> {
    match (&arg.graph, &arg.g6) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?;
            load_graph(&text)
        }
        (None, Some(code)) => parse_graph6(code.trim()),
        (None, None) => Err(Error::Argument("a graph is required: pass --graph FILE or --g6 CODE".into())),
    }
}

fn parse_vertices(text: &str) -> Result<Vec<Vertex>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Vertex>()
                .map_err(|_| Error::Argument(format!("bad vertex {t:?} in {text:?}")))
        })
        .collect()
}

/// A full descriptor (`cycles:n=8`) or a bare kind completed from flags.
pub fn parse_family(args: &FamilyArgs) -> Result<Family> {
    if args.family.contains(':') {
        return Family::from_str(&args.family);
    }
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::Argument(format!("family {:?} needs --{flag}", args.family)))
    };
    match args.family.as_str() {
        "cycles" => Ok(Family::Cycles {
            max_vertices: need(args.n_max, "n-max")?,
        }),
        "complete" => Ok(Family::Complete {
            max_vertices: need(args.n_max, "n-max")?,
        }),
        "all-connected" => Ok(Family::AllConnected {
            max_vertices: need(args.n_max, "n-max")?,
            max_degree: need(args.delta, "delta")?,
        }),
        "random-regular" => Ok(Family::RandomRegular {
            degree: need(args.delta, "delta")?,
            vertices: need(args.n_max, "n-max")?,
            seed: args.seed,
            count: args.count,
        }),
        "theta" => Err(Error::Argument(
            "theta needs a full descriptor such as theta:a=1-3,b=1-3,c=1-3".into(),
        )),
        other => Err(Error::Argument(format!("unknown family {other:?}"))),
    }
}

fn family_seed(f: &Family) -> Option<u64> {
    match f {
        Family::RandomRegular { seed, .. } => Some(*seed),
        _ => None,
    }
}

/// The degree bound a family is scanned against when none is given.
fn family_delta(f: &Family) -> usize {
    let d = match f {
        Family::AllConnected { max_degree, .. } => *max_degree,
        Family::RandomRegular { degree, .. } => *degree,
        Family::Complete { max_vertices } => max_vertices.saturating_sub(1),
        Family::Cycles { .. } | Family::Theta { .. } => 3,
    };
    d.max(3)
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "max_degree": g.max_degree(),
        "girth": g.girth(),
    })
}

pub fn exact(arg: &GraphArg, b: Option<&str>, limits: &Limits) -> Result<Report> {
    let g = load(arg)?;
    let ising = z_ising_poly(&g, limits)?;
    let even = z_even_poly(&g, limits)?;
    let mut v = object(vec![
        ("graph", graph_json(&g)),
        ("z_ising", to_value(&ising)?),
        ("z_even", to_value(&even)?),
    ]);
    if let Some(b) = b {
        let b = parse_complex(b)?;
        v["b"] = complex(b);
        v["value"] = complex(ising.eval_complex_precise(b));
    }
    Ok(Report::info(v))
}

pub fn even(arg: &GraphArg, x: Option<&str>, given: Option<&str>, limits: &Limits) -> Result<Report> {
    let g = load(arg)?;
    let terminals = given.map(parse_vertices).transpose()?.unwrap_or_default();
    let poly = if given.is_some() {
        z_even_conditional(&g, &terminals, limits)?
    } else {
        z_even_poly(&g, limits)?
    };
    let mut v = object(vec![("graph", graph_json(&g)), ("z_even", to_value(&poly)?)]);
    if given.is_some() {
        v["given"] = json!(terminals);
    }
    if let Some(x) = x {
        let x = parse_complex(x)?;
        v["x"] = complex(x);
        v["value"] = complex(poly.eval_complex_precise(x));
    }
    Ok(Report::info(v))
}

pub fn verify_vdw(arg: &GraphArg, x: &str, tol: f64, limits: &Limits) -> Result<Report> {
    let g = load(arg)?;
    let x = parse_complex(x)?;
    let check = vdw_transform_check(&g, x, limits)?;
    let identity = vdw_polynomial_identity(&z_even_poly(&g, limits)?, &z_ising_poly(&g, limits)?, &g);
    let err = check.relative_error();
    let ok = err <= tol && identity;
    let v = object(vec![
        ("x", complex(x)),
        ("lhs", complex(check.lhs)),
        ("rhs", complex(check.rhs)),
        ("relative_error", real(err)),
        ("tol", real(tol)),
        ("polynomial_identity", json!(identity)),
        ("equal", json!(ok)),
    ]);
    Ok(Report::new(v, ok))
}

pub fn blocks(arg: &GraphArg) -> Result<Report> {
    let g = load(arg)?;
    let d = block_decomposition(&g);
    let block_vertices: Vec<&[Vertex]> = (0..d.blocks.len()).map(|b| d.block_vertices(b)).collect();
    let v = object(vec![
        ("graph", graph_json(&g)),
        ("block_count", json!(d.blocks.len())),
        ("blocks", to_value(&d.blocks)?),
        ("block_vertices", json!(block_vertices)),
        ("cut_vertices", json!(d.cut_vertices)),
        ("tree_edges", json!(d.tree_edges)),
    ]);
    Ok(Report::info(v))
}

pub fn block_paths(arg: &GraphArg, v: Vertex, u: &str, even: bool, limits: &Limits) -> Result<Report> {
    let g = load(arg)?;
    let terminals = parse_vertices(u)?;
    let paths = if even {
        even_block_paths(&g, v, &terminals, limits)?
    } else {
        enumerate_block_paths(&g, v, &terminals, limits)?
    };
    let mut out = object(vec![
        ("start", json!(v)),
        ("terminals", json!(terminals)),
        ("even_only", json!(even)),
        ("count", json!(paths.len())),
        ("block_paths", to_value(&paths)?),
    ]);
    if even {
        out["polynomial"] = to_value(&even_block_path_polynomial(&g, v, &terminals, limits)?)?;
    }
    Ok(Report::info(out))
}

pub fn verify_decomposition(arg: &GraphArg, v: Vertex, u: &str, limits: &Limits) -> Result<Report> {
    let g = load(arg)?;
    let terminals = parse_vertices(u)?;
    let report = decomposition_report(&g, &terminals, v, limits)?;
    let ok = report.equal;
    let mut value = to_value(&report)?;
    value["start"] = json!(v);
    value["terminals"] = json!(terminals);
    Ok(Report::new(value, ok))
}

#[allow(clippy::too_many_arguments)]
pub fn walks(
    arg: &GraphArg,
    v: Vertex,
    max_len: Option<usize>,
    c: Option<f64>,
    delta: Option<usize>,
    girth: Option<usize>,
    u: Option<&str>,
    limits: &Limits,
) -> Result<Report> {
    let g = load(arg)?;
    let gf = walk_gf(&g, v, max_len.unwrap_or(g.edge_count()), limits)?;
    let mut out = object(vec![("vertex", json!(v)), ("counts", json!(gf.counts))]);
    let mut ok = true;
    if let (Some(c), Some(delta)) = (c, delta) {
        let girth = girth.or(g.girth()).unwrap_or(3);
        let bound = walk_bound_check(&g, v, c, delta, girth, limits)?;
        ok &= bound.holds;
        out["bound"] = json!({
            "c": c,
            "delta": delta,
            "girth": girth,
            "lhs": real(bound.lhs),
            "rhs": real(bound.rhs),
            "slack": real(bound.slack),
            "holds": bound.holds,
        });
    }
    if let Some(u) = u {
        let report = eulerian_double_count_check(&g, v, &parse_vertices(u)?, limits)?;
        ok &= report.holds;
        out["double_count"] = to_value(&report)?;
    }
    Ok(Report::new(out, ok))
}

fn interval(r: f64) -> Result<Value> {
    let (lo, hi) = DiskRegion::new(r)?.b_interval();
    Ok(json!([real(lo), real(hi)]))
}

pub fn region(delta: usize, girth: Option<usize>, eps: Option<f64>, inequality_max: Option<usize>) -> Result<Report> {
    let n = n_delta(delta)?;
    let e = eps_delta(delta)?;
    let mut v = object(vec![
        ("delta", json!(delta)),
        ("girth", json!(girth)),
        ("n_delta", real(n)),
        ("eps_delta", real(e)),
        ("inverse_degree", real(1.0 / (delta - 1) as f64)),
        ("b_interval", interval(n)?),
        ("eps_b_interval", interval(e)?),
    ]);
    if let Some(g) = girth {
        let k = optimal_constants(delta, g)?;
        v["max_radius"] = real(k.radius());
        v["eps_opt"] = real(k.eps);
        v["a"] = real(k.a());
        v["c"] = real(k.c());
        v["max_radius_b_interval"] = interval(k.radius())?;
    }
    if let Some(eps) = eps {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Argument(format!("--eps must lie in (0, 1), got {eps}")));
        }
        let threshold = girth_threshold(delta, eps)?;
        v["eps"] = real(eps);
        v["girth_threshold"] = real(threshold);
        v["radius_at_eps"] = real((1.0 - eps).powi(2) / (delta - 1) as f64);
    }
    let mut ok = true;
    if let Some(max) = inequality_max {
        let report = corollary_inequality_check(max)?;
        ok = report.holds;
        v["inequality"] = to_value(&report)?;
    }
    Ok(Report::new(v, ok))
}

#[allow(clippy::too_many_arguments)]
pub fn zeros(
    arg: &GraphArg,
    family: Option<&FamilyArgs>,
    delta: Option<usize>,
    radius: Option<f64>,
    tol: f64,
    out: Option<&Path>,
    svg: Option<&Path>,
    limits: &Limits,
    format: Format,
) -> Result<bool> {
    let (records, delta, radius, label, seed) = match family {
        Some(fa) => {
            let fam = parse_family(fa)?;
            let delta = delta.unwrap_or_else(|| family_delta(&fam));
            let radius = radius_or_default(radius, delta)?;
            let scan = scan_family(&fam, delta, radius, tol, limits)?;
            (scan.records, delta, radius, fam.to_string(), family_seed(&fam))
        }
        None => {
            let g = load(arg)?;
            let delta = delta.unwrap_or(g.max_degree().max(3));
            let radius = radius_or_default(radius, delta)?;
            let mut record = fisher_zeros(&g, tol, limits)?;
            record.name = match (&arg.graph, &arg.g6) {
                (Some(p), _) => p.display().to_string(),
                (None, Some(code)) => code.clone(),
                _ => String::new(),
            };
            (vec![record], delta, radius, "single".to_string(), None)
        }
    };
    let summary = summarize(&label, delta, radius, &records);
    if let Some(path) = out {
        write_atomic(path, jsonl(&records)?.as_bytes())?;
    }
    if let Some(path) = svg {
        emit_zero_map(&records, delta, path)?;
    }
    let mut value = to_value(&summary)?;
    value["seed"] = json!(seed);
    value["violation_count"] = json!(summary.violations.len());
    let text = match format {
        Format::Json => json_text(&value)?,
        Format::Table => crate::render::table_text(&value),
    };
    write_or_print(&text, None)?;
    Ok(summary.violations.is_empty())
}

fn radius_or_default(radius: Option<f64>, delta: usize) -> Result<f64> {
    match radius {
        Some(r) if (0.0..1.0).contains(&r) => Ok(r),
        Some(r) => Err(Error::Argument(format!("--radius must lie in [0, 1), got {r}"))),
        None => n_delta(delta),
    }
}

fn jsonl(records: &[ZeroRecord]) -> Result<String> {
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r)?);
        text.push('\n');
    }
    Ok(text)
}

pub fn fptas(arg: &GraphArg, b: Option<&str>, x: Option<&str>, eps: f64, radius: &str, limits: &Limits) -> Result<Report> {
    let g = load(arg)?;
    let radius = match radius.trim() {
        "auto" => None,
        r => Some(
            r.parse::<f64>()
                .map_err(|_| Error::Argument(format!("--radius must be \"auto\" or a number, got {r:?}")))?,
        ),
    };
    let (point_name, point, approx, exact) = match (b, x) {
        (Some(b), _) => {
            let b = parse_complex(b)?;
            let approx = approx_z_ising(&g, b, eps, radius, limits)?;
            let exact = z_ising_poly(&g, limits).ok().map(|p| p.eval_complex_precise(b));
            ("b", b, approx, exact)
        }
        (None, Some(x)) => {
            let x = parse_complex(x)?;
            let approx = approx_z_even(&g, x, eps, radius, limits)?;
            let exact = z_even_poly(&g, limits).ok().map(|p| p.eval_complex_precise(x));
            ("x", x, approx, exact)
        }
        (None, None) => return Err(Error::Argument("pass --b or --x".into())),
    };
    let cert = approx.certificate;
    let observed = exact.map(|e| observed_log_error(approx.estimate, e));
    let ok = observed.is_none_or(|o| o <= cert.error_bound + 1e-12);
    let v = object(vec![
        (point_name, complex(point)),
        ("estimate", complex(approx.estimate)),
        ("estimate_re", real(approx.estimate.re)),
        ("estimate_im", real(approx.estimate.im)),
        ("m", json!(cert.order)),
        ("radius", real(cert.radius)),
        ("theta", real(cert.theta)),
        ("eps", real(eps)),
        ("error_bound", real(cert.error_bound)),
        ("relative_bound", real(cert.relative_bound)),
        ("exact", exact.map_or(Value::Null, complex)),
        ("observed_error", observed.map_or(Value::Null, real)),
        ("within_bound", json!(ok)),
    ]);
    Ok(Report::new(v, ok))
}

/// `kind:key=value,key=value` into the kind and its parameters.
fn parse_invariant(text: &str) -> Result<Invariant> {
    let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
    let params: Vec<(&str, &str)> = rest
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Argument(format!("expected key=value in {text:?}, got {kv:?}")))
        })
        .collect::<Result<_>>()?;
    let get = |key: &str| {
        params
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Argument(format!("invariant {kind:?} needs {key}=")))
    };
    match kind {
        "even" => Ok(Invariant::even_indicator(parse_complex(get("x")?)?)),
        "tutte" => Ok(Invariant::tutte(parse_complex(get("x")?)?, parse_complex(get("y")?)?)),
        "hom" => {
            let path = get("target")?;
            let source = std::fs::read_to_string(path)
                .map_err(|e| Error::Argument(format!("cannot read {path}: {e}")))?;
            Invariant::hom_density(load_graph(&source)?)
        }
        other => Err(Error::Argument(format!(
            "unknown invariant {other:?}; expected even, tutte or hom"
        ))),
    }
}

fn parse_a(text: &str) -> Result<f64> {
    let t = text.trim();
    let t = t.strip_prefix("a=").unwrap_or(t);
    t.parse::<f64>()
        .map_err(|_| Error::Argument(format!("--certify expects a number or a=NUMBER, got {text:?}")))
}

pub fn block_poly(
    arg: &GraphArg,
    invariant: &str,
    certify: Option<&str>,
    gk: bool,
    trials: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Report> {
    let g = load(arg)?;
    let w = parse_invariant(invariant)?;
    let gate = w.validate(trials, seed, limits)?;
    let mut ok = gate.passed;
    let mut v = object(vec![
        ("graph", graph_json(&g)),
        ("invariant", json!(w.to_string())),
        ("seed", json!(seed)),
        ("gate", to_value(&gate)?),
    ]);
    if g.edge_count() <= limits.block_edges {
        v["z_block"] = complex(z_block(&g, &w, limits)?);
        if let Some(exact) = z_block_exact(&g, &[], &w, limits)? {
            v["z_block_exact"] = json!(exact.to_string());
        }
    }
    if let Some(text) = certify {
        let a = parse_a(text)?;
        let block = if gk {
            let cmp = gruber_kunz_check(&g, &w, a, limits)?;
            ok &= cmp.block_not_worse;
            v["gk"] = to_value(&cmp.gk)?;
            v["block_not_worse"] = json!(cmp.block_not_worse);
            cmp.block
        } else {
            certify_zero_free(&g, &w, a, limits)?
        };
        ok &= !(block.valid && block.nonzero == Some(false));
        v["certificate"] = json!({
            "a": block.a,
            "pairs": block.pairs.len(),
            "max_sum": real(block.max_sum),
            "witness": to_value(&block.witness)?,
            "valid": block.valid,
            "z_block": block.z_block.map_or(Value::Null, complex),
            "nonzero": block.nonzero,
        });
    }
    Ok(Report::new(v, ok))
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

pub fn corpus(args: &FamilyArgs, out: &Path) -> Result<bool> {
    let fam = parse_family(args)?;
    let members = fam.members()?;
    std::fs::create_dir_all(out)?;
    let mut entries = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        let file = format!("{i:04}-{}.txt", file_stem(&m.name));
        write_atomic(&out.join(&file), write_edge_list(&m.graph).as_bytes())?;
        entries.push(json!({
            "file": file,
            "name": m.name,
            "n": m.graph.vertex_count(),
            "edges": m.graph.edge_count(),
            "delta": m.graph.max_degree(),
            "girth": m.graph.girth(),
            "seed": m.seed,
        }));
    }
    let manifest = json!({
        "family": fam.to_string(),
        "seed": family_seed(&fam),
        "count": entries.len(),
        "graphs": entries,
    });
    write_atomic(&out.join("manifest.json"), json_text(&manifest)?.as_bytes())?;
    println!("{}", serde_json::to_string(&json!({"out": out.display().to_string(), "count": members.len()}))?);
    Ok(true)
}
