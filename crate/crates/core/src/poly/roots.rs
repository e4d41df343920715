//! Complex roots of integer polynomials.
//!
//! Exact work first: roots at 0 and ±1 are divided out over the integers and
//! the remainder is split into square-free factors, so the floating-point
//! stage only ever sees simple roots. Each factor is then solved by Aberth
//! iteration and every root is certified against the original polynomial
//! with a double-double residual.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::{IntegerPolynomial, RationalPolynomial};
use crate::error::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const MAX_ROOT_ITERATIONS: usize = 1000;

/// All complex roots with multiplicity, sorted by real then imaginary part.
/// Each root `z` satisfies `|p(z)| <= tol * ||p||_1 * max(1, |z|)^deg`.
pub fn roots(p: &IntegerPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::Argument("the zero polynomial has no finite root set".into()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Argument(format!("root tolerance must be positive, got {tol}")));
    }
    let mut found = Vec::new();
    let mut rest = p.clone();
    for r in [0i64, -1, 1] {
        let r_big = BigInt::from(r);
        while let Some(q) = rest.deflate_integer_root(&r_big) {
            found.push(Complex64::new(r as f64, 0.0));
            rest = q;
        }
    }
    for (factor, mult) in RationalPolynomial::from_integer(&rest).square_free() {
        let q = factor.to_primitive_integer();
        for z in simple_roots(&q)? {
            found.extend(std::iter::repeat_n(z, mult as usize));
        }
    }

    let deg = p.degree().unwrap_or(0) as i32;
    let norm = p.l1_norm();
    let uncertified = found.iter().any(|&z| {
        let bound = tol * norm * z.norm().max(1.0).powi(deg);
        p.eval_complex_precise(z).norm() > bound
    });
    if uncertified {
        return Err(Error::NoConvergence {
            iterations: MAX_ROOT_ITERATIONS,
            best: sorted(found),
        });
    }
    Ok(sorted(found))
}

fn sorted(mut zs: Vec<Complex64>) -> Vec<Complex64> {
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    zs
}

/// Roots of a square-free integer polynomial.
fn simple_roots(q: &IntegerPolynomial) -> Result<Vec<Complex64>> {
    let n = q.degree().unwrap_or(0);
    match n {
        0 => return Ok(Vec::new()),
        1 => {
            let r = num_rational::BigRational::new(-q.coeff(0), q.coeff(1));
            return Ok(vec![Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)]);
        }
        _ => {}
    }
    let a = q.to_f64_coeffs();
    let radius = cauchy_radius(&a);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < MAX_ROOT_ITERATIONS && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (value, slope, scale) = horner_with_bound(&a, z[i]);
            if value.norm() <= 4.0 * n as f64 * f64::EPSILON * scale {
                done[i] = true;
                continue;
            }
            let ratio = value / slope;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                if step.norm() <= f64::EPSILON * z[i].norm() {
                    done[i] = true;
                }
            } else {
                let nudge = Complex64::new(1e-8, 1e-8) * z[i].norm().max(1.0);
                z[i] += nudge;
            }
        }
    }
    if done.iter().any(|d| !d) {
        return Err(Error::NoConvergence {
            iterations,
            best: sorted(z),
        });
    }
    let dq = q.derivative();
    for zi in &mut z {
        polish(q, &dq, zi);
    }
    Ok(z)
}

/// Value, derivative and the running bound `sum |a_k| |z|^k`.
fn horner_with_bound(a: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let r = z.norm();
    let mut value = Complex64::zero();
    let mut slope = Complex64::zero();
    let mut scale = 0.0;
    for &c in a.iter().rev() {
        slope = slope * z + value;
        value = value * z + c;
        scale = scale * r + c.abs();
    }
    (value, slope, scale)
}

/// Positive root of `|a_n| r^n - sum_{k<n} |a_k| r^k`; every root lies in
/// the disk of this radius.
fn cauchy_radius(a: &[f64]) -> f64 {
    let n = a.len() - 1;
    let lead = a[n].abs();
    // Fujiwara's bound is above the Cauchy radius; Newton descends from it.
    let mut r = (0..n)
        .map(|k| (a[k].abs() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        * 2.0;
    if r == 0.0 {
        return 1.0;
    }
    for _ in 0..50 {
        let mut f = lead;
        let mut df = 0.0;
        for k in (0..n).rev() {
            df = df * r + f;
            f = f * r - a[k].abs();
        }
        let next = r - f / df;
        if !(next.is_finite() && next > 0.0) || (r - next).abs() <= 1e-12 * r {
            break;
        }
        r = next;
    }
    r
}

/// A few Newton steps with the value taken in double-double, kept only while
/// they shrink the residual.
fn polish(q: &IntegerPolynomial, dq: &IntegerPolynomial, z: &mut Complex64) {
    let mut best = q.eval_complex_precise(*z).norm();
    for _ in 0..3 {
        if best == 0.0 {
            return;
        }
        let step = q.eval_complex_precise(*z) / dq.eval_complex(*z);
        let candidate = *z - step;
        let residual = q.eval_complex_precise(candidate).norm();
        if !(step.is_finite() && residual < best) {
            return;
        }
        *z = candidate;
        best = residual;
    }
}
