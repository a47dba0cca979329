//! Integer matrices, their characteristic polynomials and p-adic Newton polygons.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::plf::{dominates, PiecewiseLinear};
use crate::rational::{int, Rational};

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    t: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let t = rows.len();
        if rows.iter().any(|r| r.len() != t) {
            return Err(Error::Parse("matrix must be square".into()));
        }
        Ok(IntegerMatrix {
            t,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn zero(t: usize) -> Self {
        IntegerMatrix {
            t,
            entries: vec![BigInt::zero(); t * t],
        }
    }

    pub fn identity(t: usize) -> Self {
        let mut m = Self::zero(t);
        for i in 0..t {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(diag: Vec<BigInt>) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.t.max(1)).take(self.t)
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &BigInt> {
        (0..self.t).map(move |i| &self[(i, j)])
    }

    pub fn trace(&self) -> BigInt {
        (0..self.t).map(|i| &self[(i, i)]).sum()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.t, other.t, "dimension mismatch");
        let t = self.t;
        let mut out = Self::zero(t);
        for i in 0..t {
            for k in 0..t {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..t {
                    out.entries[i * t + j] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Coefficients `c_0 = 1, c_1, …, c_t` of `det(X·I - M) = Σ c_i X^{t-i}`.
    ///
    /// Faddeev-LeVerrier: `M_k = M·M_{k-1} + c_{k-1}·I`, `c_k = -tr(M·M_k)/k`.
    /// Every division is exact over ℤ.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let t = self.t;
        let mut coeffs = vec![BigInt::one()];
        let mut m_k = Self::zero(t);
        for k in 1..=t {
            let mut next = self.mul(&m_k);
            for i in 0..t {
                next[(i, i)] += &coeffs[k - 1];
            }
            let tr = self.mul(&next).trace();
            let (q, rem) = tr.div_rem(&BigInt::from(k));
            debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs.push(-q);
            m_k = next;
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.t + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.t + j]
    }
}

/// Text form: first line `t`, then `t` rows of `t` whitespace-separated integers.
impl FromStr for IntegerMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let t: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first token must be the dimension t".into()))?;
        let entries = tokens
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != t * t {
            return Err(Error::Parse(format!(
                "expected {} entries for t = {t}, found {}",
                t * t,
                entries.len()
            )));
        }
        Ok(IntegerMatrix { t, entries })
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.t)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn char_poly(m: &IntegerMatrix) -> Vec<BigInt> {
    m.char_poly()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `v_p(n)` for non-zero `n`.
pub fn valuation(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Lower convex hull of `(i, v_p(c_i))`, with vanishing coefficients left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    polygon: PiecewiseLinear,
    finite_length: usize,
    infinite_slopes: usize,
}

impl NewtonPolygon {
    pub fn polygon(&self) -> &PiecewiseLinear {
        &self.polygon
    }

    /// x-extent of the finite-slope part: the largest `i` with `c_i ≠ 0`.
    pub fn finite_length(&self) -> usize {
        self.finite_length
    }

    /// Number of zero eigenvalues (slope `+∞`).
    pub fn infinite_slopes(&self) -> usize {
        self.infinite_slopes
    }

    /// Finite slopes with their multiplicities (horizontal lengths), ascending.
    pub fn slopes(&self) -> Vec<(Rational, usize)> {
        self.polygon
            .breakpoints()
            .windows(2)
            .map(|w| {
                let len = &w[1].0 - &w[0].0;
                let slope = (&w[1].1 - &w[0].1) / &len;
                (slope, len.to_integer().try_into().expect("integer length"))
            })
            .collect()
    }

    /// Finite slopes repeated by multiplicity.
    pub fn slope_list(&self) -> Vec<Rational> {
        self.slopes()
            .into_iter()
            .flat_map(|(s, n)| std::iter::repeat_n(s, n))
            .collect()
    }
}

pub fn newton_polygon(coeffs: &[BigInt], p: u64) -> Result<NewtonPolygon> {
    if coeffs.first().is_none_or(|c| !c.is_one()) {
        return Err(Error::NotMonic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let t = coeffs.len() - 1;
    let points: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, valuation(c, p) as i64))
        .collect();
    let finite_length = points.last().map(|&(i, _)| i as usize).unwrap_or(0);

    // Andrew's monotone chain, lower half. Points arrive sorted by x.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let breakpoints = hull.into_iter().map(|(x, y)| (int(x), int(y))).collect();
    Ok(NewtonPolygon {
        polygon: PiecewiseLinear::new(breakpoints, None)?,
        finite_length,
        infinite_slopes: t - finite_length,
    })
}

/// Dimension of the slope-`≤ α` part: horizontal length of finite segments
/// with slope at most `alpha`.
pub fn slope_le_dimension(np: &NewtonPolygon, alpha: &Rational) -> usize {
    np.slopes()
        .into_iter()
        .filter(|(slope, _)| slope <= alpha)
        .map(|(_, n)| n)
        .sum()
}

/// Whether the Newton polygon of `m` lies on or above `bound` over its finite part.
/// `bound` must be defined on `[0, t]`.
pub fn check_lower_bound(m: &IntegerMatrix, p: u64, bound: &PiecewiseLinear) -> Result<bool> {
    let np = newton_polygon(&m.char_poly(), p)?;
    check_polygon_lower_bound(&np, m.dim(), bound)
}

pub fn check_polygon_lower_bound(
    np: &NewtonPolygon,
    t: usize,
    bound: &PiecewiseLinear,
) -> Result<bool> {
    let t = int(t as i64);
    if !bound.covers(&t) {
        return Err(Error::DomainTooShort(t.to_string()));
    }
    dominates(np.polygon(), bound, &int(np.finite_length() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::ElemDivSeq;
    use crate::plf::from_divisor_sequence;
    use crate::rational::ratio;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(IntegerMatrix::identity(2).char_poly(), big(&[1, -2, 1]));
        let d = IntegerMatrix::diagonal(big(&[2, 8]));
        assert_eq!(d.char_poly(), big(&[1, -10, 16]));
        assert_eq!(IntegerMatrix::zero(3).char_poly(), big(&[1, 0, 0, 0]));
        let m = IntegerMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.char_poly(), big(&[1, -5, -2]));
        assert_eq!(IntegerMatrix::zero(0).char_poly(), big(&[1]));
    }

    #[test]
    fn polygon_examples() {
        let np = newton_polygon(&big(&[1, -2, 8]), 2).unwrap();
        assert_eq!(np.slope_list(), vec![int(1), int(2)]);
        assert_eq!(slope_le_dimension(&np, &int(1)), 1);

        let np = newton_polygon(&big(&[1, -2, 1]), 3).unwrap();
        assert_eq!(np.slope_list(), vec![int(0), int(0)]);
        assert_eq!(slope_le_dimension(&np, &int(0)), 2);

        let np = newton_polygon(&big(&[1, 0, 0, 0]), 5).unwrap();
        assert_eq!(np.finite_length(), 0);
        assert_eq!(np.infinite_slopes(), 3);
        assert!(np.slopes().is_empty());
    }

    #[test]
    fn fractional_slopes_and_gaps() {
        // X^2 + 4: a single segment of slope 1 over a missing middle term
        let np = newton_polygon(&big(&[1, 0, 4]), 2).unwrap();
        assert_eq!(np.slopes(), vec![(int(1), 2)]);
        // X^3 - 2: slope 1/3 with multiplicity 3
        let np = newton_polygon(&big(&[1, 0, 0, -2]), 2).unwrap();
        assert_eq!(np.slopes(), vec![(ratio(1, 3), 3)]);
        // X^2 (X - 3): one unit root, two zero roots
        let np = newton_polygon(&big(&[1, -3, 0, 0]), 3).unwrap();
        assert_eq!(np.slopes(), vec![(int(1), 1)]);
        assert_eq!(np.infinite_slopes(), 2);
    }

    #[test]
    fn polygon_errors() {
        assert_eq!(newton_polygon(&big(&[2, 1]), 2), Err(Error::NotMonic));
        assert_eq!(newton_polygon(&big(&[]), 2), Err(Error::NotMonic));
        assert_eq!(newton_polygon(&big(&[1, 1]), 4), Err(Error::NotPrime(4)));
        assert_eq!(newton_polygon(&big(&[1, 1]), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn slope_count_saturates() {
        let np = newton_polygon(&big(&[1, -2, 8]), 2).unwrap();
        assert_eq!(slope_le_dimension(&np, &ratio(1, 2)), 0);
        assert_eq!(slope_le_dimension(&np, &int(100)), np.finite_length());
    }

    #[test]
    fn lower_bound_examples() {
        let p = 3u64;
        let r = 2u32;
        let m = IntegerMatrix::diagonal(vec![BigInt::from(p.pow(r)); 4]);
        let line = from_divisor_sequence(&ElemDivSeq::empty(), r, 4).unwrap();
        assert!(check_lower_bound(&m, p, &line).unwrap());

        let fb = from_divisor_sequence(&ElemDivSeq::new(vec![1]).unwrap(), 1, 3).unwrap();
        assert!(!check_lower_bound(&IntegerMatrix::identity(3), 2, &fb).unwrap());
        let fb1 = from_divisor_sequence(&ElemDivSeq::new(vec![1]).unwrap(), 1, 1).unwrap();
        assert!(check_lower_bound(&IntegerMatrix::identity(1), 2, &fb1).unwrap());

        // bound shorter than t
        assert!(matches!(
            check_lower_bound(&IntegerMatrix::identity(3), 2, &fb1),
            Err(Error::DomainTooShort(_))
        ));
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = IntegerMatrix::from_i64_rows(&[vec![1, -2], vec![30, 4]]).unwrap();
        let back: IntegerMatrix = m.to_string().parse().unwrap();
        assert_eq!(back, m);
        assert!("2\n1 2 3".parse::<IntegerMatrix>().is_err());
        assert!("x".parse::<IntegerMatrix>().is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(-48), 2), 4);
        assert_eq!(valuation(&BigInt::from(7), 3), 0);
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(0));
    }
}
