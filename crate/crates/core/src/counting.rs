//! The height-counting function `N_h` and the elementary divisors of the
//! truncated lattice that bounds it.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// Largest tuple space the brute-force counter will walk.
pub const BRUTE_FORCE_LIMIT: u64 = 100_000_000;

/// Largest divisor sequence that will be materialised.
pub const MAX_SEQUENCE_LEN: usize = 100_000_000;

/// `N_0, ..., N_H` for a root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<'a> {
    pub system: &'a RootSystem,
    pub values: Vec<BigUint>,
}

impl CountTable<'_> {
    pub fn max_h(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, h: usize) -> &BigUint {
        &self.values[h]
    }
}

/// Number of `n ∈ ℕ₀^s` with `Σ n_i·ht(α_i) = h`, for `h = 0..=max_h`.
///
/// Unbounded coin-change over the height multiset.
pub fn count_nh(system: &RootSystem, max_h: usize) -> CountTable<'_> {
    let mut values = vec![BigUint::zero(); max_h + 1];
    values[0] = BigUint::one();
    for &height in system.heights() {
        let step = height as usize;
        for h in step..=max_h {
            let prev = values[h - step].clone();
            values[h] += prev;
        }
    }
    CountTable { system, values }
}

/// Same table as [`count_nh`], by walking every tuple with coordinates `≤ max_h`.
///
/// Rejects the request when `(max_h + 1)^s` exceeds [`BRUTE_FORCE_LIMIT`].
pub fn count_nh_bruteforce(system: &RootSystem, max_h: usize) -> Result<CountTable<'_>> {
    let s = system.s() as u32;
    let space = (max_h as u64 + 1).checked_pow(s);
    if space.is_none_or(|n| n > BRUTE_FORCE_LIMIT) {
        return Err(Error::TooLarge(format!(
            "({} + 1)^{} tuples for {}",
            max_h,
            s,
            system.label()
        )));
    }

    let mut counts = vec![0u64; max_h + 1];
    // Tuples whose partial sum already exceeds max_h cannot land in the table,
    // so their subtrees are skipped.
    fn walk(heights: &[u32], partial: usize, max_h: usize, counts: &mut [u64]) {
        match heights.split_first() {
            None => counts[partial] += 1,
            Some((&h, rest)) => {
                let mut sum = partial;
                for _n in 0..=max_h {
                    if sum > max_h {
                        break;
                    }
                    walk(rest, sum, max_h, counts);
                    sum += h as usize;
                }
            }
        }
    }
    walk(system.heights(), 0, max_h, &mut counts);

    Ok(CountTable {
        system,
        values: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// A non-increasing list of positive exponents `a_1 ≥ a_2 ≥ … > 0`; the
/// module is `⊕ ℤ_p / p^{a_l}`. The prime is carried by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ElemDivSeq {
    exponents: Vec<u32>,
}

impl ElemDivSeq {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::InvalidSequence(
                "exponents must be strictly positive".into(),
            ));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSequence(
                "exponents must be non-increasing".into(),
            ));
        }
        Ok(ElemDivSeq { exponents })
    }

    pub fn empty() -> Self {
        ElemDivSeq::default()
    }

    /// Sorts and drops zero exponents.
    pub fn from_unsorted(mut exponents: Vec<u32>) -> Self {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        ElemDivSeq { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The sequence padded with zeros to length `t`.
    pub fn padded(&self, t: usize) -> Result<Vec<u32>> {
        if self.len() > t {
            return Err(Error::BadLength { len: self.len(), t });
        }
        let mut out = self.exponents.clone();
        out.resize(t, 0);
        Ok(out)
    }

    /// The first `t` entries padded with zeros, dropping anything beyond `t`.
    pub fn window(&self, t: usize) -> Vec<u32> {
        let mut out: Vec<u32> = self.exponents.iter().copied().take(t).collect();
        out.resize(t, 0);
        out
    }

    /// Coordinatewise `self_l ≤ other_l` after padding both to `t`.
    pub fn dominated_by(&self, other: &ElemDivSeq, t: usize) -> bool {
        self.window(t)
            .iter()
            .zip(other.window(t))
            .all(|(&b, a)| b <= a)
            && self.len() <= t
    }
}

/// Exponents of `⊕_{h=0}^{r-1} (ℤ_p/p^{r-h})^{g_i·N_h}`: `r` repeated
/// `g_i·N_0` times, then `r-1` repeated `g_i·N_1` times, down to `1`.
/// The trivial `h = r` summand contributes nothing.
pub fn truncation_divisors(system: &RootSystem, g_i: u32, r: u32) -> Result<ElemDivSeq> {
    let table = count_nh(system, r.saturating_sub(1) as usize);
    let mut exponents = Vec::new();
    for h in 0..r as usize {
        let reps = (table.get(h) * BigUint::from(g_i))
            .to_usize()
            .filter(|&n| exponents.len() + n <= MAX_SEQUENCE_LEN)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "divisor sequence for {} with g_i = {g_i}, r = {r}",
                    system.label()
                ))
            })?;
        exponents.extend(std::iter::repeat_n(r - h as u32, reps));
    }
    Ok(ElemDivSeq { exponents })
}
