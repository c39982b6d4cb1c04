use num_complex::Complex64;
use orlicz_lab::growth::{classify_injection, estimate_qa, GrowthSampleGrid, Verdict};
use orlicz_lab::norm::{luxemburg_norm, NormConfig, Sampled};
use orlicz_lab::quadrature::MeasureDomain;
use orlicz_lab::sampled::SampledFunction;
use orlicz_lab::{build_counterexample, OrliczFunction};
use proptest::prelude::*;

fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=max_deg + 1)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

fn psi_strategy() -> impl Strategy<Value = OrliczFunction> {
    prop_oneof![
        (1.0f64..5.0).prop_map(|p| OrliczFunction::power(p).unwrap()),
        Just(OrliczFunction::exp_log_squared()),
        Just(build_counterexample(4, 4.0).unwrap()),
    ]
}

fn poly(c: Vec<Complex64>) -> SampledFunction {
    SampledFunction::Polynomial { coeffs: c }
}

fn circle_norm(f: &SampledFunction, psi: &OrliczFunction) -> f64 {
    luxemburg_norm(f, psi, &MeasureDomain::circle()).value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn homogeneity(c in coeffs(12), psi in psi_strategy(), lambda in -16.0f64..16.0) {
        let f = poly(c);
        let n = circle_norm(&f, &psi);
        let m = circle_norm(&f.scaled(lambda).unwrap(), &psi);
        prop_assert!((m - lambda.abs() * n).abs() <= 1e-9 * lambda.abs() * n + 1e-300);
    }

    #[test]
    fn triangle(a in coeffs(12), b in coeffs(12), psi in psi_strategy()) {
        let len = a.len().max(b.len());
        let sum: Vec<Complex64> = (0..len)
            .map(|k| a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default())
            .collect();
        let lhs = circle_norm(&poly(sum), &psi);
        let rhs = circle_norm(&poly(a), &psi) + circle_norm(&poly(b), &psi);
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn solidity(c in coeffs(12), psi in psi_strategy(), seed in any::<u64>()) {
        let f = poly(c);
        let s = Sampled::new(&f, &MeasureDomain::circle().rule_for(&f));
        let mut x = seed | 1;
        let shrunk: Vec<f64> = s.abs.iter().map(|v| {
            x ^= x << 13; x ^= x >> 7; x ^= x << 17;
            v * (x >> 11) as f64 / (1u64 << 53) as f64
        }).collect();
        let small = Sampled::from_parts(shrunk, s.weights.clone());
        let cfg = NormConfig::default();
        prop_assert!(small.luxemburg(&psi, &cfg).value <= s.luxemburg(&psi, &cfg).value * (1.0 + 1e-12));
    }

    #[test]
    fn modular_monotone_in_c(c in coeffs(12), psi in psi_strategy(), c1 in 0.01f64..50.0, c2 in 0.01f64..50.0) {
        let f = poly(c);
        let s = Sampled::new(&f, &MeasureDomain::circle().rule_for(&f));
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        prop_assert!(s.modular(&psi, hi) <= s.modular(&psi, lo) * (1.0 + 1e-12));
    }

    #[test]
    fn power_oracle(c in coeffs(20), p in 1.0f64..6.0, disk in any::<bool>()) {
        let f = poly(c);
        let dom = if disk { MeasureDomain::disk() } else { MeasureDomain::circle() };
        let s = Sampled::new(&f, &dom.rule_for(&f));
        let direct = s.abs.iter().zip(&s.weights).map(|(a, w)| w * a.powf(p)).sum::<f64>().powf(1.0 / p);
        let lux = s.luxemburg(&OrliczFunction::power(p).unwrap(), &NormConfig::default()).value;
        prop_assert!((lux - direct).abs() <= 1e-8 * direct);
    }

    #[test]
    fn circle_trapezoid_is_exact_for_l2(c in coeffs(40)) {
        let parseval: f64 = c.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let n = circle_norm(&poly(c), &OrliczFunction::power(2.0).unwrap());
        prop_assert!((n - parseval).abs() <= 1e-12 * parseval);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_verdicts_are_compact(p in 1.0f64..8.0) {
        let psi = OrliczFunction::power(p).unwrap();
        let r = classify_injection(&psi, &GrowthSampleGrid::default_for(&psi)).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Compact);
    }

    #[test]
    fn verdict_invariant_under_argument_scaling(k in 0usize..3, factor in 0.25f64..4.0) {
        let psi = [
            OrliczFunction::power(3.0).unwrap(),
            OrliczFunction::exp_minus_one(),
            build_counterexample(4, 4.0).unwrap(),
        ][k].clone();
        let grid = GrowthSampleGrid::default_for(&psi);
        let scaled = psi.arg_scale(factor).unwrap();
        let a = classify_injection(&psi, &grid).unwrap().verdict;
        let b = classify_injection(&scaled, &grid.scaled(1.0 / factor)).unwrap().verdict;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ratio_grows_with_a(k in 0usize..3, a1 in 1.1f64..8.0, a2 in 1.1f64..8.0) {
        let psi = [
            OrliczFunction::power(2.5).unwrap(),
            OrliczFunction::exp_log_squared(),
            build_counterexample(4, 4.0).unwrap(),
        ][k].clone();
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let grid = GrowthSampleGrid::default_for(&psi);
        let q_lo = estimate_qa(&psi, lo, &grid).unwrap();
        let q_hi = estimate_qa(&psi, hi, &grid).unwrap();
        prop_assert!(q_hi.tail_sup_log >= q_lo.tail_sup_log - 1e-12);
        for (p, q) in q_lo.ratio_log.iter().zip(&q_hi.ratio_log) {
            prop_assert_eq!(p.0, q.0);
            prop_assert!(q.1 >= p.1 - 1e-12);
        }
    }
}
