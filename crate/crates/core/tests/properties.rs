use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use slope_bound::bernoulli::bernoulli_poly;
use slope_bound::bounds::{build_params, dimension_bound};
use slope_bound::counting::{count_nh, truncation_divisors, ElemDivSeq};
use slope_bound::harness::{gen_instance, rebase, sample_trial};
use slope_bound::newton::{
    check_polygon_lower_bound, newton_polygon, slope_le_dimension, valuation, IntegerMatrix,
};
use slope_bound::plf::{
    coincide, dominates, f_infinity, f_infinity_star, f_r, from_divisor_sequence,
    PiecewiseLinear, SlopePoints,
};
use slope_bound::rootsys::RootSystem;
use slope_bound::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let n = m.len();
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `c_i = (-1)^i · (sum of the i×i principal minors)`.
fn char_poly_oracle(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let t = rows.len();
    let mut coeffs = vec![BigInt::zero(); t + 1];
    for mask in 0u32..(1 << t) {
        let idx: Vec<usize> = (0..t).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<BigInt>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| rows[i][j].clone()).collect())
            .collect();
        let k = idx.len();
        let d = det(&sub);
        if k.is_multiple_of(2) {
            coeffs[k] += d;
        } else {
            coeffs[k] -= d;
        }
    }
    coeffs
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `B_n = Σ_{k=0}^{n} 1/(k+1) Σ_{j=0}^{k} (-1)^j C(k,j) j^n`.
fn bernoulli_number(n: u64) -> Rational {
    let mut total = Rational::zero();
    for k in 0..=n {
        let mut inner = BigInt::zero();
        for j in 0..=k {
            let term = binom(k, j) * BigInt::from(j).pow(n as u32);
            if j % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += Rational::new(inner, BigInt::from(k + 1));
    }
    total
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5).prop_flat_map(|t| prop::collection::vec(prop::collection::vec(-20i64..=20, t), t))
}

fn small_system() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"])
}

fn non_increasing(max_len: usize, max_exp: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_exp, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn fraction() -> impl Strategy<Value = Rational> {
    (0i64..=60, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn char_poly_matches_principal_minors(rows in matrix_strategy()) {
        let m = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        prop_assert_eq!(m.char_poly(), char_poly_oracle(&big));
    }

    #[test]
    fn slopes_sum_to_last_valuation(rows in matrix_strategy(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let m = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let coeffs = m.char_poly();
        let np = newton_polygon(&coeffs, p).unwrap();
        let total: Rational = np.slopes().iter().map(|(s, n)| s * q(*n as i64)).sum();
        let last = &coeffs[np.finite_length()];
        prop_assert_eq!(total, q(valuation(last, p) as i64));
        prop_assert_eq!(np.finite_length() + np.infinite_slopes(), m.dim());
        prop_assert!(np.polygon().is_convex());
    }

    #[test]
    fn diagonal_polygon_has_exponent_slopes(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        entries in prop::collection::vec((0u32..=5, 1i64..=40), 1..=6),
    ) {
        let diag: Vec<BigInt> = entries
            .iter()
            .map(|&(e, u)| {
                let unit = if u % p as i64 == 0 { u + 1 } else { u };
                BigInt::from(p).pow(e) * BigInt::from(unit)
            })
            .collect();
        let m = IntegerMatrix::diagonal(diag);
        let np = newton_polygon(&m.char_poly(), p).unwrap();
        let mut expected: Vec<Rational> = entries.iter().map(|&(e, _)| q(e as i64)).collect();
        expected.sort();
        prop_assert_eq!(np.slope_list(), expected);
    }

    #[test]
    fn slope_dimension_is_monotone(rows in matrix_strategy(), a in fraction(), b in fraction()) {
        let m = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let np = newton_polygon(&m.char_poly(), 3).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(slope_le_dimension(&np, &lo) <= slope_le_dimension(&np, &hi));
        prop_assert!(slope_le_dimension(&np, &hi) <= np.finite_length());
    }

    #[test]
    fn dimension_bound_is_monotone(s in 1u32..=5, g in 1u32..=4, a in fraction(), b in fraction()) {
        let params = build_params(s, g);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let low = dimension_bound(&params, &lo);
        let high = dimension_bound(&params, &hi);
        prop_assert!(low.bound <= high.bound);
        prop_assert!(low.infimum <= high.infimum);
        prop_assert!(high.infimum <= high.bound);
    }

    #[test]
    fn counts_match_generating_function(label in small_system(), max_h in 0usize..=40) {
        let system: RootSystem = label.parse().unwrap();
        let mut series = vec![BigInt::zero(); max_h + 1];
        series[0] = BigInt::from(1);
        for &h in system.heights() {
            // multiply by 1/(1 - x^h) = 1 + x^h + x^{2h} + ...
            let mut next = vec![BigInt::zero(); max_h + 1];
            for (i, c) in series.iter().enumerate() {
                let mut k = i;
                while k <= max_h {
                    next[k] += c;
                    k += h as usize;
                }
            }
            series = next;
        }
        let table = count_nh(&system, max_h);
        let got: Vec<BigInt> = table.values.iter().map(|v| BigInt::from(v.clone())).collect();
        prop_assert_eq!(got, series);
    }

    #[test]
    fn truncation_divisor_shape(label in small_system(), g in 1u32..=3, r in 1u32..=5) {
        let system: RootSystem = label.parse().unwrap();
        let seq = truncation_divisors(&system, g, r).unwrap();
        prop_assert!(seq.exponents().windows(2).all(|w| w[0] >= w[1]));
        let table = count_nh(&system, r as usize);
        let total: BigInt = table.values[..r as usize].iter().map(|v| BigInt::from(v.clone())).sum();
        prop_assert_eq!(BigInt::from(seq.len()), total * BigInt::from(g));
    }

    #[test]
    fn bernoulli_coefficients_match_explicit_numbers(n in 0u32..=14) {
        let poly = bernoulli_poly(n);
        for m in 0..=n {
            let expected = Rational::from_integer(binom(n as u64, m as u64)) * bernoulli_number((n - m) as u64);
            prop_assert_eq!(poly.coeff(m as usize), expected);
        }
    }

    #[test]
    fn dominance_transfers_from_sequences(
        a in non_increasing(8, 6),
        slack in prop::collection::vec(0u32..=3, 8),
        extra in 0usize..=3,
    ) {
        let r = a.first().copied().unwrap_or(1).max(1);
        let b: Vec<u32> = a.iter().zip(&slack).map(|(&x, &d)| x.saturating_sub(d)).filter(|&x| x > 0).collect();
        let a_seq = ElemDivSeq::new(a.clone()).unwrap();
        let b_seq = ElemDivSeq::from_unsorted(b);
        let t = a.len() + extra;
        prop_assume!(t > 0);
        prop_assert!(b_seq.dominated_by(&a_seq, t));
        let f_b = from_divisor_sequence(&b_seq, r, t).unwrap();
        let f_a = from_divisor_sequence(&a_seq, r, t).unwrap();
        prop_assert!(dominates(&f_b, &f_a, &q(t as i64)).unwrap());
    }

    #[test]
    fn rank_one_divisors_trace_f_r(g in 1u32..=4, r in 1u32..=6, t in 1usize..=30) {
        let system: RootSystem = "A1".parse().unwrap();
        let a = ElemDivSeq::from_unsorted(truncation_divisors(&system, g, r).unwrap().window(t));
        let f_a = from_divisor_sequence(&a, r, t).unwrap();
        prop_assert!(coincide(&f_a, &f_r(1, g, r), &q(t as i64)).unwrap());
    }

    #[test]
    fn divisors_sit_above_f_r(label in small_system(), g in 1u32..=3, r in 1u32..=4, t in 1usize..=20) {
        let system: RootSystem = label.parse().unwrap();
        let a = ElemDivSeq::from_unsorted(truncation_divisors(&system, g, r).unwrap().window(t));
        let f_a = from_divisor_sequence(&a, r, t).unwrap();
        let fr = f_r(system.s() as u32, g, r);
        prop_assert!(dominates(&f_a, &fr, &q(t as i64)).unwrap());
    }

    #[test]
    fn f_r_agrees_with_f_infinity_up_to_p_r(s in 1u32..=6, g in 1u32..=5, r in 1u32..=8) {
        let window = SlopePoints::new(s, g).x(r as u64);
        let fr = f_r(s, g, r);
        let finf = f_infinity(s, g, r as u64);
        prop_assert!(coincide(&fr, &finf, &window).unwrap());
        prop_assert!(fr.is_convex() && finf.is_convex());
        prop_assert!(f_infinity_star(s, g, r as u64).is_convex());
        prop_assert!(dominates(&finf, &f_infinity_star(s, g, r as u64), &window).unwrap());
    }

    #[test]
    fn plf_json_round_trip(s in 1u32..=5, g in 1u32..=4, r in 1u32..=6) {
        for f in [f_r(s, g, r), f_infinity(s, g, r as u64), f_infinity_star(s, g, r as u64)] {
            let text = serde_json::to_string(&f.to_json()).unwrap();
            let back = PiecewiseLinear::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rebasing_keeps_the_polygon(seed in any::<u64>(), conj in any::<u64>()) {
        let spec = sample_trial(seed);
        let inst = gen_instance(seed, spec.p, spec.t, spec.r, spec.b_seq.clone(), 10).unwrap();
        let moved = rebase(&inst, conj);
        prop_assert_eq!(moved.matrix.char_poly(), inst.matrix.char_poly());
        let np = moved.newton_polygon();
        prop_assert_eq!(&np, &inst.newton_polygon());
        let f_b = from_divisor_sequence(&inst.b_seq, inst.r, inst.t).unwrap();
        prop_assert!(check_polygon_lower_bound(&np, inst.t, &f_b).unwrap());
    }
}
