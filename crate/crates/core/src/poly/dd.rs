//! Double-double arithmetic for residual evaluation.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive};

#[derive(Clone, Copy, Debug, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    #[cfg(test)]
    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn from_bigint(c: &BigInt) -> Dd {
        let hi = c.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let rest = c - BigInt::from_f64(hi).expect("finite");
        Dd {
            hi,
            lo: rest.to_f64().unwrap_or(0.0),
        }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p) + self.lo * b;
        quick_two_sum(p, e)
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        quick_two_sum(s, e + self.lo + b.lo)
    }
}

impl Neg for Dd {
    type Output = Dd;

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;

    fn sub(self, b: Dd) -> Dd {
        self + -b
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;

    fn mul(self, b: f64) -> Dd {
        self.mul_f64(b)
    }
}

/// Horner's rule with a double-double accumulator. The point itself is a
/// pair of doubles, so every product is with an exact `f64`.
pub(super) fn eval(coeffs: &[BigInt], z: Complex64) -> Complex64 {
    let mut re = Dd::default();
    let mut im = Dd::default();
    for c in coeffs.iter().rev() {
        let next_re = re * z.re - im * z.im + Dd::from_bigint(c);
        let next_im = re * z.im + im * z.re;
        re = next_re;
        im = next_im;
    }
    Complex64::new(re.hi + re.lo, im.hi + im.lo)
}
