//! Bernoulli polynomials over ℚ and the power sums they encode.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Dense polynomial, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    /// Trailing zero coefficients are stripped.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalPolynomial::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `P(x + a)`, by Horner's scheme in the shifted variable.
    pub fn shift(&self, a: &Rational) -> Self {
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // out <- out * (x + a) + c
            let mut next = vec![Rational::zero(); out.len() + 1];
            for (i, o) in out.iter().enumerate() {
                next[i + 1] += o;
                next[i] += o * a;
            }
            next[0] += c;
            out = next;
        }
        RationalPolynomial::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut out = vec![Rational::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / int(i as i64 + 1));
        }
        RationalPolynomial::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

pub fn eval_poly(p: &RationalPolynomial, x: &Rational) -> Rational {
    p.eval(x)
}

/// `B_s(x)`: `B_0 = 1`, `B_s' = s·B_{s-1}` and `∫₀¹ B_s = 0` for `s ≥ 1`.
/// With this normalisation `B_1(0) = -1/2`.
pub fn bernoulli_poly(s: u32) -> RationalPolynomial {
    bernoulli_polys(s).pop().unwrap()
}

/// `B_0, ..., B_s` in one pass.
pub fn bernoulli_polys(s: u32) -> Vec<RationalPolynomial> {
    let mut out = vec![RationalPolynomial::constant(Rational::one())];
    for k in 1..=s {
        let anti = out[k as usize - 1].scale(&int(k as i64)).integrate();
        let mean = anti.integrate().eval(&Rational::one());
        out.push(anti.sub(&RationalPolynomial::constant(mean)));
    }
    out
}

/// `Σ_{h=0}^{j-1} (h+1)^{s-1} = Σ_{k=1}^{j} k^{s-1}`, via
/// `(B_s(j+1) - B_s(1)) / s`.
///
/// For `s ≥ 2` the base point may equally be `B_s(0)`, since `B_s(1) = B_s(0)`.
/// For `s = 1` it may not: `B_1(1) - B_1(0) = 1` would count the `0^0` term.
pub fn faulhaber_sum(s: u32, j: u64) -> Rational {
    assert!(s >= 1, "faulhaber_sum needs s >= 1");
    power_sum_poly(s).eval(&Rational::from_integer(j.into()))
}

/// The polynomial `S(n) = (B_s(n+1) - B_s(1)) / s`, so that
/// `S(n) = Σ_{k=1}^{n} k^{s-1}` for every `n ≥ 0`.
pub fn power_sum_poly(s: u32) -> RationalPolynomial {
    let b = bernoulli_poly(s);
    let base = b.eval(&Rational::one());
    b.shift(&Rational::one())
        .sub(&RationalPolynomial::constant(base))
        .scale(&(Rational::one() / int(s as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn poly(coeffs: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn low_degree_bernoulli() {
        assert_eq!(bernoulli_poly(0), poly(&[(1, 1)]));
        assert_eq!(bernoulli_poly(1), poly(&[(-1, 2), (1, 1)]));
        assert_eq!(bernoulli_poly(2), poly(&[(1, 6), (-1, 1), (1, 1)]));
        assert_eq!(bernoulli_poly(3), poly(&[(0, 1), (1, 2), (-3, 2), (1, 1)]));
        assert_eq!(
            bernoulli_poly(4),
            poly(&[(-1, 30), (0, 1), (1, 1), (-2, 1), (1, 1)])
        );
    }

    #[test]
    fn monic_of_exact_degree() {
        for (s, b) in bernoulli_polys(16).iter().enumerate() {
            assert_eq!(b.degree(), Some(s));
            assert_eq!(b.leading(), Some(&Rational::one()));
        }
    }

    #[test]
    fn endpoint_symmetry() {
        for (n, b) in bernoulli_polys(14).iter().enumerate().skip(2) {
            assert_eq!(b.eval(&int(1)), b.eval(&int(0)), "B_{n}");
        }
        let b1 = bernoulli_poly(1);
        assert_eq!(b1.eval(&int(1)) - b1.eval(&int(0)), int(1));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval_poly(&bernoulli_poly(2), &int(0)), ratio(1, 6));
        assert_eq!(eval_poly(&RationalPolynomial::zero(), &ratio(3, 7)), int(0));
        assert_eq!(eval_poly(&bernoulli_poly(1), &ratio(1, 2)), int(0));
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber_sum(2, 3), int(6));
        assert_eq!(faulhaber_sum(1, 5), int(5));
        for s in 1..=6 {
            assert_eq!(faulhaber_sum(s, 0), int(0));
        }
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let b = bernoulli_poly(5);
        let a = ratio(-3, 2);
        let shifted = b.shift(&a);
        for k in -4..=4 {
            let x = ratio(k, 3);
            assert_eq!(shifted.eval(&x), b.eval(&(x.clone() + &a)));
        }
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(RationalPolynomial::new(vec![int(0), int(0)]).degree(), None);
        assert_eq!(RationalPolynomial::zero().to_string(), "0");
        assert_eq!(bernoulli_poly(1).to_string(), "(1)x + -1/2");
    }
}
