//! Exact piecewise-linear functions and the lower bounds built from them.
//!
//! A [`PiecewiseLinear`] starts at `(0, 0)`, interpolates linearly between
//! breakpoints with strictly increasing `x`, and optionally continues past the
//! last breakpoint as a ray. Without a ray its domain is `[0, x_last]`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_poly, power_sum_poly, RationalPolynomial};
use crate::counting::ElemDivSeq;
use crate::error::{Error, Result};
use crate::rational::{int, is_nonneg, parse_rational, to_fraction, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    breakpoints: Vec<(Rational, Rational)>,
    final_slope: Option<Rational>,
}

impl PiecewiseLinear {
    pub fn new(
        breakpoints: Vec<(Rational, Rational)>,
        final_slope: Option<Rational>,
    ) -> Result<Self> {
        match breakpoints.first() {
            Some((x, y)) if x.is_zero() && y.is_zero() => {}
            _ => return Err(Error::InvalidPlf("first breakpoint must be (0, 0)".into())),
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidPlf(
                "breakpoint x-coordinates must be strictly increasing".into(),
            ));
        }
        if !breakpoints.iter().all(|(_, y)| is_nonneg(y))
            || !final_slope.as_ref().is_none_or(is_nonneg)
        {
            return Err(Error::InvalidPlf("function must be non-negative".into()));
        }
        Ok(PiecewiseLinear {
            breakpoints,
            final_slope,
        })
    }

    /// The function `x ↦ slope·x` on `[0, ∞)`.
    pub fn ray(slope: Rational) -> Result<Self> {
        PiecewiseLinear::new(vec![(Rational::zero(), Rational::zero())], Some(slope))
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn final_slope(&self) -> Option<&Rational> {
        self.final_slope.as_ref()
    }

    /// Right end of the domain; `None` when the function continues as a ray.
    pub fn domain_end(&self) -> Option<&Rational> {
        match self.final_slope {
            Some(_) => None,
            None => self.breakpoints.last().map(|(x, _)| x),
        }
    }

    pub fn covers(&self, x: &Rational) -> bool {
        is_nonneg(x) && self.domain_end().is_none_or(|end| x <= end)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if !self.covers(x) {
            return Err(Error::OutOfDomain(format!("x = {x}")));
        }
        let idx = self.breakpoints.partition_point(|(bx, _)| bx <= x);
        // idx >= 1 because the first breakpoint is at 0 <= x
        let (x0, y0) = &self.breakpoints[idx - 1];
        if x0 == x {
            return Ok(y0.clone());
        }
        let slope = match self.breakpoints.get(idx) {
            Some((x1, y1)) => (y1 - y0) / (x1 - x0),
            None => self.final_slope.clone().expect("covered point past last breakpoint"),
        };
        Ok(y0 + slope * (x - x0))
    }

    /// Segment slopes in order, followed by the final ray slope if any.
    pub fn slopes(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .breakpoints
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect();
        out.extend(self.final_slope.iter().cloned());
        out
    }

    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn to_json(&self) -> PlfJson {
        PlfJson {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(x, y)| [to_fraction(x), to_fraction(y)])
                .collect(),
            final_slope: self.final_slope.as_ref().map(to_fraction),
        }
    }

    pub fn from_json(json: &PlfJson) -> Result<Self> {
        let breakpoints = json
            .breakpoints
            .iter()
            .map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let final_slope = json.final_slope.as_deref().map(parse_rational).transpose()?;
        PiecewiseLinear::new(breakpoints, final_slope)
    }
}

/// Wire form: `{"breakpoints": [["x", "y"], ...], "final_slope": "a/b" | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlfJson {
    pub breakpoints: Vec<[String; 2]>,
    pub final_slope: Option<String>,
}

/// The function joining `(j, C(j))`, `C(j) = Σ_{l ≤ j} (r - b_l)`, for
/// `j = 0..=t`, the sequence padded with zeros to length `t`.
pub fn from_divisor_sequence(seq: &ElemDivSeq, r: u32, t: usize) -> Result<PiecewiseLinear> {
    if let Some(&exponent) = seq.exponents().iter().find(|&&e| e > r) {
        return Err(Error::ExponentExceedsR { exponent, r });
    }
    let padded = seq.padded(t)?;
    let mut breakpoints = vec![(Rational::zero(), Rational::zero())];
    let mut acc: u64 = 0;
    for (j, b) in padded.into_iter().enumerate() {
        acc += (r - b) as u64;
        breakpoints.push((int(j as i64 + 1), Rational::from_integer(acc.into())));
    }
    PiecewiseLinear::new(breakpoints, None)
}

/// Slope `j` on `[gΣ_{h<j}(h+1)^{s-1}, gΣ_{h≤j}(h+1)^{s-1}]` for `j < r`,
/// then slope `r` for ever. Built from the power sums directly.
pub fn f_r(s: u32, g: u32, r: u32) -> PiecewiseLinear {
    let g = BigInt::from(g);
    let mut breakpoints = vec![(Rational::zero(), Rational::zero())];
    let (mut x, mut y) = (BigInt::zero(), BigInt::zero());
    for j in 0..r {
        let len = &g * BigInt::from(j + 1).pow(s - 1);
        y += &len * BigInt::from(j);
        x += len;
        breakpoints.push((Rational::from_integer(x.clone()), Rational::from_integer(y.clone())));
    }
    PiecewiseLinear::new(breakpoints, Some(int(r as i64))).expect("f_r is well formed")
}

/// Closed-form breakpoints `P_j` and `Q_j`, sharing their x-coordinates.
#[derive(Debug, Clone)]
pub struct SlopePoints {
    s: u32,
    g: Rational,
    power_s: RationalPolynomial,
    power_s1: RationalPolynomial,
    bern_s1: RationalPolynomial,
}

impl SlopePoints {
    pub fn new(s: u32, g: u32) -> Self {
        assert!(s >= 1 && g >= 1, "s and g must be positive");
        SlopePoints {
            s,
            g: int(g as i64),
            power_s: power_sum_poly(s),
            power_s1: power_sum_poly(s + 1),
            bern_s1: bernoulli_poly(s + 1),
        }
    }

    /// `g·Σ_{h=0}^{j} (h+1)^{s-1}`.
    pub fn x(&self, j: u64) -> Rational {
        &self.g * self.power_s.eval(&Rational::from_integer((j + 1).into()))
    }

    /// `y(P_j) = g·Σ_{h=0}^{j} h(h+1)^{s-1} = g·(Σ_{k≤j+1} k^s - Σ_{k≤j+1} k^{s-1})`.
    pub fn y_p(&self, j: u64) -> Rational {
        let n = Rational::from_integer((j + 1).into());
        &self.g * (self.power_s1.eval(&n) - self.power_s.eval(&n))
    }

    /// `y(Q_j) = g·(B_{s+1}(j+1) - B_{s+1}(0)) / (s+1)`.
    pub fn y_q(&self, j: u64) -> Rational {
        let top = self.bern_s1.eval(&Rational::from_integer((j + 1).into()));
        let base = self.bern_s1.eval(&Rational::zero());
        &self.g * (top - base) / int(self.s as i64 + 1)
    }

    pub fn p(&self, j: u64) -> (Rational, Rational) {
        (self.x(j), self.y_p(j))
    }

    pub fn q(&self, j: u64) -> (Rational, Rational) {
        (self.x(j), self.y_q(j))
    }
}

/// `(0,0), P_0, ..., P_{j_max}`, no final ray.
pub fn f_infinity(s: u32, g: u32, j_max: u64) -> PiecewiseLinear {
    let pts = SlopePoints::new(s, g);
    let mut breakpoints = vec![(Rational::zero(), Rational::zero())];
    breakpoints.extend((0..=j_max).map(|j| pts.p(j)));
    PiecewiseLinear::new(breakpoints, None).expect("f_infinity is well formed")
}

/// `(0,0), Q_0, ..., Q_{j_max}`, no final ray.
pub fn f_infinity_star(s: u32, g: u32, j_max: u64) -> PiecewiseLinear {
    let pts = SlopePoints::new(s, g);
    let mut breakpoints = vec![(Rational::zero(), Rational::zero())];
    breakpoints.extend((0..=j_max).map(|j| pts.q(j)));
    PiecewiseLinear::new(breakpoints, None).expect("f_infinity_star is well formed")
}

fn merged_abscissae(
    f: &PiecewiseLinear,
    g: &PiecewiseLinear,
    x_max: &Rational,
) -> Result<Vec<Rational>> {
    if !f.covers(x_max) || !g.covers(x_max) {
        return Err(Error::DomainTooShort(x_max.to_string()));
    }
    let mut xs: Vec<Rational> = f
        .breakpoints
        .iter()
        .chain(&g.breakpoints)
        .map(|(x, _)| x.clone())
        .filter(|x| x < x_max)
        .collect();
    xs.push(x_max.clone());
    xs.sort();
    xs.dedup();
    Ok(xs)
}

/// `f(x) ≥ g(x)` for every `x ∈ [0, x_max]`.
///
/// Both sides are linear between consecutive points of the merged breakpoint
/// set, so checking those points decides the question exactly.
pub fn dominates(f: &PiecewiseLinear, g: &PiecewiseLinear, x_max: &Rational) -> Result<bool> {
    for x in merged_abscissae(f, g, x_max)? {
        if f.eval(&x)? < g.eval(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f = g` on `[0, x_max]`.
pub fn coincide(f: &PiecewiseLinear, g: &PiecewiseLinear, x_max: &Rational) -> Result<bool> {
    for x in merged_abscissae(f, g, x_max)? {
        if f.eval(&x)? != g.eval(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First x in `[0, x_max]` (among merged breakpoints) where `f < g`.
pub fn first_violation(
    f: &PiecewiseLinear,
    g: &PiecewiseLinear,
    x_max: &Rational,
) -> Result<Option<Rational>> {
    for x in merged_abscissae(f, g, x_max)? {
        if f.eval(&x)? < g.eval(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
