//! Zero-free disks around `b = 1` and the constants that size them.
//!
//! `D(r)` is the set of `b` with `|(b-1)/(b+1)| <= r`. Under `x = (b-1)/(b+1)`
//! it becomes the disk `|x| <= r`, and on the real line it is the interval
//! `[(1-r)/(1+r), (1+r)/(1-r)]`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default slack for boundary membership; the disks are closed.
pub const BOUNDARY_TOL: f64 = 1e-9;

const SCAN_STEP: f64 = 1e-6;

fn check_delta(delta: usize) -> Result<()> {
    if delta < 3 {
        return Err(Error::Domain(format!("maximum degree must be at least 3, got {delta}")));
    }
    Ok(())
}

/// `(1 - 1/sqrt(2(Δ-1)))^2 / (Δ-1)`.
pub fn n_delta(delta: usize) -> Result<f64> {
    check_delta(delta)?;
    let d1 = (delta - 1) as f64;
    Ok((1.0 - 1.0 / (2.0 * d1).sqrt()).powi(2) / d1)
}

/// `tan(π / (4(Δ-1)))`.
pub fn eps_delta(delta: usize) -> Result<f64> {
    check_delta(delta)?;
    Ok((std::f64::consts::PI / (4.0 * (delta - 1) as f64)).tan())
}

/// Smallest `Δ` in `3..=max` with `n_Δ > ε_Δ`.
pub fn first_delta_beating_eps(max: usize) -> Option<usize> {
    (3..=max).find(|&d| n_delta(d).unwrap() > eps_delta(d).unwrap())
}

pub fn b_to_x(b: Complex64) -> Result<Complex64> {
    if b == Complex64::new(-1.0, 0.0) {
        return Err(Error::Domain("b = -1 maps to infinity".into()));
    }
    Ok((b - 1.0) / (b + 1.0))
}

pub fn x_to_b(x: Complex64) -> Result<Complex64> {
    if x == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain("x = 1 maps to infinity".into()));
    }
    Ok((1.0 + x) / (1.0 - x))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiskRegion {
    pub radius: f64,
}

impl DiskRegion {
    pub fn new(radius: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&radius) {
            return Err(Error::Domain(format!("disk radius must lie in [0, 1), got {radius}")));
        }
        Ok(DiskRegion { radius })
    }

    /// Whether `b` lies in `D(r)`, allowing `tol` past the boundary.
    pub fn contains(&self, b: Complex64, tol: f64) -> bool {
        b_to_x(b).is_ok_and(|x| self.contains_x(x, tol))
    }

    pub fn contains_x(&self, x: Complex64, tol: f64) -> bool {
        x.norm() <= self.radius + tol
    }

    /// Real diameter `[(1-r)/(1+r), (1+r)/(1-r)]` of the disk in the b-plane.
    pub fn b_interval(&self) -> (f64, f64) {
        let r = self.radius;
        ((1.0 - r) / (1.0 + r), (1.0 + r) / (1.0 - r))
    }
}

/// `log(2ε²(Δ-1)²/Δ) / log(1-ε)`, or 0 when the log argument is at least 1
/// and every girth qualifies.
pub fn girth_threshold(delta: usize, eps: f64) -> Result<f64> {
    check_delta(delta)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let d = delta as f64;
    let arg = 2.0 * eps * eps * (d - 1.0).powi(2) / d;
    if arg >= 1.0 {
        return Ok(0.0);
    }
    Ok(arg.ln() / (1.0 - eps).ln())
}

/// `(1-ε)^(g+2) <= 2ε²(Δ-1)²/Δ`, the girth condition without logarithms.
fn feasible(delta: f64, girth: f64, eps: f64) -> bool {
    (1.0 - eps).powf(girth + 2.0) <= 2.0 * eps * eps * (delta - 1.0).powi(2) / delta
}

/// A degree bound, girth and `ε` satisfying the girth condition. The proof
/// constants are `a = ε` and `c = 1 - ε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoremConstants {
    pub delta: usize,
    pub girth: usize,
    pub eps: f64,
}

impl TheoremConstants {
    pub fn new(delta: usize, girth: usize, eps: f64) -> Result<Self> {
        if girth < 3 {
            return Err(Error::Domain(format!("girth must be at least 3, got {girth}")));
        }
        let threshold = girth_threshold(delta, eps)?;
        if ((girth + 2) as f64) < threshold {
            return Err(Error::Domain(format!(
                "girth {girth} is below the threshold {:.6} for Δ = {delta}, ε = {eps}",
                threshold - 2.0
            )));
        }
        Ok(TheoremConstants { delta, girth, eps })
    }

    pub fn a(&self) -> f64 {
        self.eps
    }

    pub fn c(&self) -> f64 {
        1.0 - self.eps
    }

    /// `(1-ε)^2 / (Δ-1)`.
    pub fn radius(&self) -> f64 {
        (1.0 - self.eps).powi(2) / (self.delta - 1) as f64
    }
}

/// Largest `(1-ε)^2/(Δ-1)` over `ε` meeting the girth condition.
///
/// Feasibility is monotone in `ε`, so the optimum sits at the smallest
/// feasible `ε`. It is bracketed by a scan with step `1e-6` and refined by
/// bisection; the returned `ε` is always on the feasible side.
pub fn max_radius_for_girth(delta: usize, girth: usize) -> Result<f64> {
    Ok(optimal_constants(delta, girth)?.radius())
}

pub fn optimal_constants(delta: usize, girth: usize) -> Result<TheoremConstants> {
    check_delta(delta)?;
    if girth < 3 {
        return Err(Error::Domain(format!("girth must be at least 3, got {girth}")));
    }
    let (d, g) = (delta as f64, girth as f64);
    let steps = (1.0 / SCAN_STEP) as usize;
    let first = (1..steps)
        .find(|&k| feasible(d, g, k as f64 * SCAN_STEP))
        .expect("ε close to 1 is always feasible");
    let (mut lo, mut hi) = ((first - 1) as f64 * SCAN_STEP, first as f64 * SCAN_STEP);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(d, g, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(TheoremConstants {
        delta,
        girth,
        eps: hi,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub delta_max: usize,
    pub holds: bool,
    pub min_slack: f64,
    pub argmin: usize,
    pub failures: Vec<usize>,
}

/// Checks `(1 - 1/sqrt(2(Δ-1)))^5 <= (Δ-1)/Δ` for `2 <= Δ <= delta_max`.
pub fn corollary_inequality_check(delta_max: usize) -> Result<InequalityReport> {
    if delta_max < 2 {
        return Err(Error::Argument(format!("upper degree must be at least 2, got {delta_max}")));
    }
    let mut report = InequalityReport {
        delta_max,
        holds: true,
        min_slack: f64::INFINITY,
        argmin: 2,
        failures: Vec::new(),
    };
    for delta in 2..=delta_max {
        let d = delta as f64;
        let lhs = (1.0 - 1.0 / (2.0 * (d - 1.0)).sqrt()).powi(5);
        let slack = (d - 1.0) / d - lhs;
        if slack < report.min_slack {
            report.min_slack = slack;
            report.argmin = delta;
        }
        if slack < 0.0 {
            report.holds = false;
            report.failures.push(delta);
        }
    }
    Ok(report)
}
