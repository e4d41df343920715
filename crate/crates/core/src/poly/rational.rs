use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntegerPolynomial;

/// Dense polynomial over the rationals; used for exact division and gcds.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_integer(p: &IntegerPolynomial) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => Self::new(self.coeffs.iter().map(|c| c / lead).collect()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Self, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
        Self::new((0..n).map(|k| get(self, k) - get(rhs, k)).collect())
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[d];
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::default(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + d] / lead;
            if !factor.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &factor * c;
                }
            }
            quot[k] = factor;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Same polynomial up to a rational factor, with coprime integer
    /// coefficients; keeps gcd remainders from growing.
    fn primitive_rational(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let int = self.to_primitive_integer();
        Self::from_integer(&int)
    }

    /// Integer polynomial with coprime coefficients and positive leading
    /// coefficient that is a rational multiple of `self`.
    pub fn to_primitive_integer(&self) -> IntegerPolynomial {
        if self.is_zero() {
            return IntegerPolynomial::default();
        }
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        IntegerPolynomial::new(ints.into_iter().map(|c| c / &content * &sign).collect())
    }

    /// Square-free decomposition (Yun): pairs `(a_i, i)` with
    /// `self = lc * prod a_i^i`, each `a_i` monic, square-free and pairwise
    /// coprime. Factors equal to 1 are omitted.
    pub fn square_free(&self) -> Vec<(RationalPolynomial, u32)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().is_some_and(|k| k > 0) {
            let a = b.gcd(&d);
            let next_b = b.div_rem(&a).0;
            let c = d.div_rem(&a).0;
            d = c.sub(&next_b.derivative());
            if a.degree().is_some_and(|k| k > 0) {
                out.push((a, i));
            }
            b = next_b;
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    fn rp(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integer(&ip(c))
    }

    #[test]
    fn division_reconstructs_dividend() {
        let a = rp(&[3, -2, 0, 5, 7]);
        let b = rp(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().is_none_or(|d| d < 2));
        for z in -3i64..=3 {
            let z = BigRational::from_integer(z.into());
            let eval = |p: &RationalPolynomial| {
                p.coeffs()
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, c| acc * &z + c)
            };
            assert_eq!(eval(&a), eval(&q) * eval(&b) + eval(&r));
        }
    }

    #[test]
    fn gcd_of_shared_factor() {
        let common = ip(&[1, 1]);
        let a = &common * &ip(&[-2, 1]);
        let b = &common * &ip(&[3, 0, 1]);
        let g = RationalPolynomial::from_integer(&a).gcd(&RationalPolynomial::from_integer(&b));
        assert_eq!(g, rp(&[1, 1]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x+1)^3 (x-2)^2 (x^2+3)
        let f = &(&ip(&[1, 1]).pow(3) * &ip(&[-2, 1]).pow(2)) * &ip(&[3, 0, 1]);
        let parts = RationalPolynomial::from_integer(&f.scale(&BigInt::from(4))).square_free();
        assert_eq!(
            parts,
            vec![(rp(&[3, 0, 1]), 1), (rp(&[-2, 1]), 2), (rp(&[1, 1]), 3)]
        );
        assert!(rp(&[5]).square_free().is_empty());
    }

    #[test]
    fn primitive_integer_part() {
        let p = RationalPolynomial::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ]);
        assert_eq!(p.to_primitive_integer(), ip(&[-2, 3]));
    }
}
