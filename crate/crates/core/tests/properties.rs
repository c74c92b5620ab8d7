use cotsum::arith::{gcd, mod_inverse};
use cotsum::core_sums::{
    c0, c0_with, fractional_identity_check, q_sum, vasyunin, Precision, ReducedFraction,
};
use cotsum::equidist::{kloosterman, ramanujan, ExpSumParams};
use cotsum::gseries::{cf_expand, f_eval_many, ContinuedFraction, TruncatedGSeries};
use proptest::prelude::*;

fn reduced() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=2000).prop_flat_map(|b| (1..b, Just(b))).prop_filter("coprime", |&(r, b)| gcd(r, b) == 1)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn c0_is_odd((r, b) in reduced()) {
        let x = c0(ReducedFraction::new(r, b).unwrap()).value;
        let y = c0(ReducedFraction::new(b - r, b).unwrap()).value;
        prop_assert_eq!(x, -y);
    }

    #[test]
    fn vasyunin_matches_inverse((r, b) in reduced()) {
        let f = ReducedFraction::new(r, b).unwrap();
        let inv = ReducedFraction::new(f.inverse_numerator(), b).unwrap();
        prop_assert!(rel(vasyunin(f).value, -c0(inv).value) < 1e-9);
    }

    #[test]
    fn decomposition_through_q((r, b) in reduced()) {
        let f = ReducedFraction::new(r, b).unwrap();
        let one = c0(ReducedFraction::new(1, b).unwrap()).value;
        let rf = r as f64;
        prop_assert!(rel(c0(f).value, one / rf - q_sum(f).value / rf) < 1e-9);
    }

    #[test]
    fn default_agrees_with_oracle((r, b) in reduced()) {
        let f = ReducedFraction::new(r, b).unwrap();
        let d = c0_with(f, Precision::Default);
        let o = c0_with(f, Precision::Oracle);
        prop_assert!((d.value - o.value).abs() <= 1e-9 * o.value.abs().max(1.0));
        prop_assert!((d.value - o.value).abs() <= d.err_bound.max(1e-12 * o.value.abs()) * 10.0);
    }

    #[test]
    fn fractional_identity(a in 1u64..5000, n in 1u64..5000, (r, b) in reduced()) {
        prop_assume!((a * n) % b != 0);
        prop_assert!(fractional_identity_check(a, n, r, b).unwrap() < 1e-9);
    }

    #[test]
    fn inverse_is_inverse((r, b) in reduced()) {
        let s = mod_inverse(r, b).unwrap();
        prop_assert_eq!((r * s) % b, 1 % b);
    }

    #[test]
    fn ratio_expansion_ends_at_the_ratio(p in 0u64..1_000_000, q in 1u64..1_000_000) {
        prop_assume!(p < q);
        let cf = ContinuedFraction::from_ratio(p, q).unwrap();
        let g = gcd(p, q);
        let &(pn, qn) = cf.convergents.last().unwrap_or(&(0, 1));
        prop_assert!(cf.terminated);
        prop_assert_eq!((pn, qn), ((p / g) as u128, (q / g) as u128));
    }

    #[test]
    fn convergents_straddle_alpha(alpha in 0.001f64..0.999) {
        let cf = cf_expand(alpha, 30).unwrap();
        for (i, &(p, q)) in cf.convergents.iter().enumerate() {
            let d = p as f64 / q as f64 - alpha;
            if d.abs() > 1e-15 {
                prop_assert_eq!(d > 0.0, i % 2 == 0);
            }
        }
    }

    #[test]
    fn f_is_odd_on_dyadics(k in 1u64..(1 << 30), m1 in 1u32..12) {
        let x = k as f64 / (1u64 << 30) as f64;
        let t = TruncatedGSeries::new(m1).unwrap();
        let v = f_eval_many(&[x, 1.0 - x], t);
        prop_assert_eq!(v[0], -v[1]);
    }

    #[test]
    fn kloosterman_symmetric(n in -50i64..50, m in -50i64..50, b in 2u64..300) {
        let a = kloosterman(ExpSumParams { n, m, b }).unwrap();
        let c = kloosterman(ExpSumParams { n: m, m: n, b }).unwrap();
        prop_assert_eq!(a, c);
        prop_assert!(a.im.abs() < 1e-9 * (b as f64));
    }

    #[test]
    fn ramanujan_multiplicative(q1 in 1u64..60, q2 in 1u64..60, n in -200i64..200) {
        prop_assume!(gcd(q1, q2) == 1);
        let lhs = ramanujan(q1 * q2, n).unwrap();
        prop_assert_eq!(lhs, ramanujan(q1, n).unwrap() * ramanujan(q2, n).unwrap());
    }
}

#[test]
fn c0_sums_to_zero_for_every_b_up_to_2000() {
    for b in 2..=2000u64 {
        let (mut s, mut scale) = (0.0, 0.0f64);
        for r in (1..b).filter(|&r| gcd(r, b) == 1) {
            let v = c0(ReducedFraction::new(r, b).unwrap()).value;
            s += v;
            scale = scale.max(v.abs());
        }
        assert!(s.abs() <= 1e-12 * scale.max(1.0) * b as f64, "b = {b}: {s}");
    }
}
