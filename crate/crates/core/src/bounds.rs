//! Explicit constants of the dimension bound `dim ≤ m·α^s + n`.
//!
//! The comparison function is `h(x) = c·x^{(s+1)/s}` with
//! `c = 2^{-(3s+1)/s}·(s/g)^{1/s}`. `c` is irrational in general, so it is
//! only ever handled through `c^s = 2^{-(3s+1)}·s/g`, and every comparison
//! against `h` is raised to the `s`-th power first.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bernoulli::{bernoulli_poly, power_sum_poly, RationalPolynomial};
use crate::error::{Error, Result};
use crate::rational::{int, is_nonneg, pow, Rational};

/// `P(x) = B_s(x+2) - B_s(1)` and `Q(x) = B_{s+1}(x+1) - B_{s+1}(0)`.
///
/// Both are monic. At integers, `P(j)/s = Σ_{h≤j}(h+1)^{s-1}` is the
/// x-coordinate of the j-th breakpoint over `g`, and `Q(j)/(s+1) = Σ_{h≤j} h^s`
/// is the height of the lower breakpoint over `g`.
pub fn envelope_polynomials(s: u32) -> (RationalPolynomial, RationalPolynomial) {
    let p = power_sum_poly(s)
        .shift(&Rational::one())
        .scale(&int(s as i64));
    let b = bernoulli_poly(s + 1);
    let base = b.eval(&Rational::zero());
    let q = b
        .shift(&Rational::one())
        .sub(&RationalPolynomial::constant(base));
    (p, q)
}

fn threshold(poly: &RationalPolynomial, factor: i64) -> Rational {
    let degree = poly.degree().unwrap_or(0);
    poly.coeffs()[..degree]
        .iter()
        .map(|a| a.abs() * int(factor))
        .fold(Rational::one(), |acc, v| if v > acc { v } else { acc })
}

/// Smallest integer `M` at or above both sufficient thresholds:
/// `max{1, s|a_i|}` for `P(x) ≤ 2x^s` and `max{1, 2(s+1)|b_i|}` for
/// `Q(x) ≥ x^{s+1}/2`.
pub fn compute_m(s: u32) -> u64 {
    assert!(s >= 1, "s must be positive");
    let (p, q) = envelope_polynomials(s);
    let upper = threshold(&p, s as i64);
    let lower = threshold(&q, 2 * (s as i64 + 1));
    let top = if upper > lower { upper } else { lower };
    top.ceil()
        .to_integer()
        .try_into()
        .expect("threshold fits in u64")
}

/// Constants of the bound for a given `(s, g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub s: u32,
    pub g: u32,
    /// `M(s)`: both envelope inequalities hold for `x ≥ M`.
    #[serde(rename = "M")]
    pub threshold: u64,
    #[serde(serialize_with = "crate::rational::ser_frac")]
    pub c_pow_s: Rational,
    #[serde(serialize_with = "crate::rational::ser_frac")]
    pub m: Rational,
    #[serde(serialize_with = "crate::rational::ser_frac")]
    pub n: Rational,
    #[serde(serialize_with = "crate::rational::ser_frac")]
    pub x_m: Rational,
}

pub fn build_params(s: u32, g: u32) -> BoundParams {
    assert!(s >= 1 && g >= 1, "s and g must be positive");
    let threshold = compute_m(s);
    let two_pow = Rational::from_integer(BigInt::one() << (3 * s + 1));
    let ratio = int(s as i64) / int(g as i64);
    let c_pow_s = ratio.clone() / &two_pow;
    let m = two_pow / ratio;
    // n = x_M = g·Σ_{h=0}^{M}(h+1)^{s-1}
    let n = int(g as i64) * power_sum_poly(s).eval(&Rational::from_integer((threshold + 1).into()));
    BoundParams {
        s,
        g,
        threshold,
        c_pow_s,
        m,
        x_m: n.clone(),
        n,
    }
}

/// Ordering of `h(x) = c·x^{(s+1)/s}` against `y`, via `c^s·x^{s+1}` vs `y^s`.
pub fn compare_h(params: &BoundParams, x: &Rational, y: &Rational) -> Result<Ordering> {
    if x < &params.x_m || !is_nonneg(x) {
        return Err(Error::OutOfDomain(format!(
            "h is defined for x >= {}, got {x}",
            params.x_m
        )));
    }
    if y.is_negative() {
        return Err(Error::OutOfDomain(format!("y = {y} must be non-negative")));
    }
    let lhs = &params.c_pow_s * pow(x, params.s + 1);
    let rhs = pow(y, params.s);
    Ok(lhs.cmp(&rhs))
}

/// The bound at a given slope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionBound {
    #[serde(serialize_with = "crate::rational::ser_frac")]
    pub alpha: Rational,
    /// `m·α^s + n`, valid for every `α ≥ 0`.
    #[serde(serialize_with = "crate::rational::ser_frac")]
    pub bound: Rational,
    /// `m·α^s`, only when `α ≥ M`.
    #[serde(serialize_with = "crate::rational::ser_opt_frac")]
    pub sharp: Option<Rational>,
    /// `(α/c)^s = m·α^s` if that reaches `x_M`, else `x_M`.
    #[serde(serialize_with = "crate::rational::ser_frac")]
    pub infimum: Rational,
}

pub fn dimension_bound(params: &BoundParams, alpha: &Rational) -> DimensionBound {
    assert!(is_nonneg(alpha), "alpha must be non-negative");
    let scaled = &params.m * pow(alpha, params.s);
    let bound = &scaled + &params.n;
    let sharp = (alpha >= &int(params.threshold as i64)).then(|| scaled.clone());
    let infimum = if scaled >= params.x_m {
        scaled
    } else {
        params.x_m.clone()
    };
    DimensionBound {
        alpha: alpha.clone(),
        bound,
        sharp,
        infimum,
    }
}
