//! Synthetic operators satisfying the lattice hypothesis, and end-to-end
//! verification of the lower-bound chain and the dimension bound on them.
//!
//! The lattice is `L = ℤ_p^t` with sublattice `K = ⊕ p^{b_l} ℤ_p e_l`. An
//! operator maps `K` into `p^r L` exactly when column `l` of its matrix is
//! divisible by `p^{r - b_l}` (with `b_l = 0` past the end of the sequence).
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64`, so a seed reproduces an instance bit for bit.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{build_params, dimension_bound, DimensionBound};
use crate::counting::{truncation_divisors, ElemDivSeq};
use crate::error::{Error, Result};
use crate::newton::{
    check_polygon_lower_bound, is_prime, newton_polygon, slope_le_dimension, IntegerMatrix,
    NewtonPolygon,
};
use crate::plf::{
    coincide, dominates, f_infinity, f_r, first_violation, from_divisor_sequence,
    PiecewiseLinear, SlopePoints,
};
use crate::rational::{int, Rational};
use crate::rootsys::RootSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub p: u64,
    pub t: usize,
    pub r: u32,
    pub b_seq: ElemDivSeq,
    pub matrix: IntegerMatrix,
    pub seed: u64,
}

impl Instance {
    /// `r - b_l` for each column, `b` padded with zeros.
    pub fn column_exponents(&self) -> Vec<u32> {
        self.b_seq
            .padded(self.t)
            .expect("validated length")
            .into_iter()
            .map(|b| self.r - b)
            .collect()
    }

    /// Whether column `l` is divisible by `p^{r - b_l}` for every `l`.
    pub fn satisfies_divisibility(&self) -> bool {
        let p = BigInt::from(self.p);
        self.column_exponents().iter().enumerate().all(|(j, &e)| {
            let modulus = p.pow(e);
            self.matrix
                .column(j)
                .all(|v| (v % &modulus) == BigInt::ZERO)
        })
    }

    pub fn newton_polygon(&self) -> NewtonPolygon {
        newton_polygon(&self.matrix.char_poly(), self.p).expect("p validated at generation")
    }
}

pub fn gen_instance(
    seed: u64,
    p: u64,
    t: usize,
    r: u32,
    b_seq: ElemDivSeq,
    entry_bound: u64,
) -> Result<Instance> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if t == 0 || r == 0 || entry_bound == 0 {
        return Err(Error::HypothesisViolation(
            "t, r and the entry bound must be positive".into(),
        ));
    }
    if let Some(&exponent) = b_seq.exponents().iter().find(|&&e| e > r) {
        return Err(Error::ExponentExceedsR { exponent, r });
    }
    if b_seq.len() > t {
        return Err(Error::BadLength { len: b_seq.len(), t });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = i64::try_from(entry_bound).unwrap_or(i64::MAX);
    let mut matrix = IntegerMatrix::zero(t);
    for i in 0..t {
        for j in 0..t {
            matrix[(i, j)] = BigInt::from(rng.random_range(-bound..=bound));
        }
    }
    let mut inst = Instance {
        p,
        t,
        r,
        b_seq,
        matrix,
        seed,
    };
    let pb = BigInt::from(p);
    for (j, e) in inst.column_exponents().into_iter().enumerate() {
        let scale = pb.pow(e);
        for i in 0..t {
            inst.matrix[(i, j)] *= &scale;
        }
    }
    Ok(inst)
}

/// Adds 1 to the diagonal entry of every column that must be divisible by `p`,
/// breaking the lattice hypothesis there. Used for negative controls.
pub fn corrupt(inst: &Instance) -> Instance {
    let mut out = inst.clone();
    for (j, e) in inst.column_exponents().into_iter().enumerate() {
        if e > 0 {
            out.matrix[(j, j)] += 1;
        }
    }
    out
}

/// Conjugates the matrix by a random unimodular `U` (a product of elementary
/// transvections): `M ↦ U·M·U^{-1}`.
pub fn rebase(inst: &Instance, seed: u64) -> Instance {
    let mut out = inst.clone();
    let t = inst.t;
    if t < 2 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 * t {
        let i = rng.random_range(0..t);
        let mut j = rng.random_range(0..t - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.random_range(-2i64..=2));
        // E = I + c·e_ij: row_i += c·row_j, then col_j -= c·col_i
        for k in 0..t {
            let v = &c * &out.matrix[(j, k)];
            out.matrix[(i, k)] += v;
        }
        for k in 0..t {
            let v = &c * &out.matrix[(k, i)];
            out.matrix[(k, j)] -= v;
        }
    }
    out
}

/// Picks `b_l` uniformly in `[0, a_l]` for `l ≤ t` and sorts the result.
///
/// Sorting keeps coordinatewise dominance because `a` is non-increasing.
pub fn sample_dominated<R: Rng>(rng: &mut R, a: &ElemDivSeq, t: usize) -> ElemDivSeq {
    let raw = a
        .window(t)
        .into_iter()
        .map(|cap| rng.random_range(0..=cap))
        .collect();
    ElemDivSeq::from_unsorted(raw)
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    /// `N ≥ f_b` on the finite part of the polygon.
    pub newton_dominates_fb: bool,
    /// `f_b ≥ f_a` on `[0, t]`.
    pub fb_dominates_fa: bool,
    /// `f_a ≥ f_r` on `[0, t]`.
    pub fa_dominates_fr: bool,
    /// `f_r = f_∞` on `[0, x(P_r)]`.
    pub fr_matches_finf: bool,
    #[serde(skip)]
    pub polygon: NewtonPolygon,
    #[serde(skip)]
    pub f_b: PiecewiseLinear,
    #[serde(skip)]
    pub f_a: PiecewiseLinear,
    #[serde(skip)]
    pub f_r: PiecewiseLinear,
    #[serde(skip)]
    pub f_inf: PiecewiseLinear,
    /// First abscissa where `N < f_b`, if any.
    #[serde(serialize_with = "crate::rational::ser_opt_frac")]
    pub newton_violation_at: Option<Rational>,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.newton_dominates_fb && self.fb_dominates_fa && self.fa_dominates_fr && self.fr_matches_finf
    }
}

/// `(a_l)` for `(system, g, r)` restricted to its first `t` entries.
fn dominating_sequence(inst: &Instance, system: &RootSystem, g: u32) -> Result<ElemDivSeq> {
    let a = truncation_divisors(system, g, inst.r)?;
    if !inst.b_seq.dominated_by(&a, inst.t) {
        return Err(Error::HypothesisViolation(format!(
            "b = {:?} is not coordinatewise below a = {:?} on [1, {}]",
            inst.b_seq.exponents(),
            a.window(inst.t),
            inst.t
        )));
    }
    Ok(ElemDivSeq::from_unsorted(a.window(inst.t)))
}

pub fn verify_chain(inst: &Instance, system: &RootSystem, g: u32) -> Result<ChainReport> {
    if g == 0 {
        return Err(Error::HypothesisViolation("g must be positive".into()));
    }
    let a = dominating_sequence(inst, system, g)?;
    let s = system.s() as u32;
    let t = int(inst.t as i64);

    let polygon = inst.newton_polygon();
    let f_b = from_divisor_sequence(&inst.b_seq, inst.r, inst.t)?;
    let f_a = from_divisor_sequence(&a, inst.r, inst.t)?;
    let fr = f_r(s, g, inst.r);
    let f_inf = f_infinity(s, g, inst.r as u64);
    let window = SlopePoints::new(s, g).x(inst.r as u64);

    let newton_dominates_fb = check_polygon_lower_bound(&polygon, inst.t, &f_b)?;
    let newton_violation_at = if newton_dominates_fb {
        None
    } else {
        first_violation(polygon.polygon(), &f_b, &int(polygon.finite_length() as i64))?
    };
    Ok(ChainReport {
        newton_dominates_fb,
        fb_dominates_fa: dominates(&f_b, &f_a, &t)?,
        fa_dominates_fr: dominates(&f_a, &fr, &t)?,
        fr_matches_finf: coincide(&fr, &f_inf, &window)?,
        polygon,
        f_b,
        f_a,
        f_r: fr,
        f_inf,
        newton_violation_at,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryReport {
    /// Dimension of the slope-`≤ α` part of the instance.
    pub dimension: usize,
    pub bound: DimensionBound,
    /// `dimension ≤ m·α^s + n`.
    pub holds: bool,
    /// `dimension ≤ m·α^s`, checked only when `α ≥ M`.
    pub sharp_holds: Option<bool>,
}

impl CorollaryReport {
    pub fn all_hold(&self) -> bool {
        self.holds && self.sharp_holds.unwrap_or(true)
    }
}

pub fn verify_corollary(
    inst: &Instance,
    system: &RootSystem,
    g: u32,
    alpha: &Rational,
) -> Result<CorollaryReport> {
    if g == 0 {
        return Err(Error::HypothesisViolation("g must be positive".into()));
    }
    if alpha < &int(0) {
        return Err(Error::OutOfDomain(format!("alpha = {alpha} must be non-negative")));
    }
    dominating_sequence(inst, system, g)?;
    let params = build_params(system.s() as u32, g);
    let bound = dimension_bound(&params, alpha);
    let dimension = slope_le_dimension(&inst.newton_polygon(), alpha);
    let d = int(dimension as i64);
    Ok(CorollaryReport {
        dimension,
        holds: d <= bound.bound,
        sharp_holds: bound.sharp.as_ref().map(|sharp| &d <= sharp),
        bound,
    })
}

/// The slopes at which the dimension bound is checked by default:
/// `0, 1/2, 1, 2` and `M(s)`.
pub fn standard_alphas(s: u32) -> Vec<Rational> {
    let threshold = build_params(s, 1).threshold;
    vec![
        int(0),
        Rational::new(1.into(), 2.into()),
        int(1),
        int(2),
        int(threshold as i64),
    ]
}

/// Parameters of one randomised trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialParams {
    pub system: String,
    pub p: u64,
    pub t: usize,
    pub r: u32,
    pub g: u32,
    pub b_seq: ElemDivSeq,
}

pub const TRIAL_PRIMES: [u64; 3] = [2, 3, 5];
pub const TRIAL_SYSTEMS: [&str; 3] = ["A1", "A2", "B2"];

/// Draws `p ∈ {2,3,5}`, `t ≤ 8`, `r ≤ 4`, a system from A1/A2/B2, `g ≤ 3` and
/// a `b` sequence dominated by the matching `a` sequence.
pub fn sample_trial(seed: u64) -> TrialParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_5A3B_1E00_0000);
    let p = TRIAL_PRIMES[rng.random_range(0..TRIAL_PRIMES.len())];
    let t = rng.random_range(1..=8usize);
    let r = rng.random_range(1..=4u32);
    let label = TRIAL_SYSTEMS[rng.random_range(0..TRIAL_SYSTEMS.len())];
    let g = rng.random_range(1..=3u32);
    let system: RootSystem = label.parse().expect("fixed trial systems are valid");
    let a = truncation_divisors(&system, g, r).expect("small divisor sequence");
    let b_seq = sample_dominated(&mut rng, &a, t);
    TrialParams {
        system: label.to_string(),
        p,
        t,
        r,
        g,
        b_seq,
    }
}
