//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

use std::time::Instant;

use num_complex::Complex64;
use orlicz_lab::growth::{classify_injection, GrowthSampleGrid, Holds, Verdict};
use orlicz_lab::norm::{bergman_norm, hardy_norm, luxemburg_norm, NormConfig, RefinementTrend, Sampled};
use orlicz_lab::quadrature::MeasureDomain;
use orlicz_lab::sampled::SampledFunction;
use orlicz_lab::suites::{
    suite_carleson_window, suite_contraction, suite_counterexample, suite_kernel_bounds, suite_monomial_decay,
    suite_order_boundedness, CarlesonConfig, ContractionConfig, CounterexampleConfig, KernelConfig, OrderConfig, SuiteReport,
    DEFAULT_SEED,
};
use orlicz_lab::witness::{make_monomial, random_polynomials};
use orlicz_lab::{build_counterexample, OrliczFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn suite_outcome(r: &SuiteReport) -> Outcome {
    let failed: Vec<&str> = r.failures().map(|c| c.description.as_str()).take(3).collect();
    outcome(r.overall_pass, format!("{} checks, failing: {failed:?}", r.checks.len()))
}

fn within(t: Instant, budget: f64, o: Outcome) -> Outcome {
    let s = t.elapsed().as_secs_f64();
    Outcome { pass: o.pass && s < budget, detail: format!("{}; {s:.2}s of {budget}s", o.detail) }
}

fn power_oracle() -> Outcome {
    let t = Instant::now();
    let polys = random_polynomials(DEFAULT_SEED, 50, 20);
    let mut worst: f64 = 0.0;
    for p in [1.0, 2.0, 4.0] {
        let psi = OrliczFunction::power(p).unwrap();
        for f in &polys {
            for dom in [MeasureDomain::circle(), MeasureDomain::disk()] {
                let s = Sampled::new(f, &dom.rule_for(f));
                let direct = s.abs.iter().zip(&s.weights).map(|(a, w)| w * a.powf(p)).sum::<f64>().powf(1.0 / p);
                let lux = s.luxemburg(&psi, &NormConfig::default()).value;
                worst = worst.max((lux - direct).abs() / direct);
            }
        }
    }
    within(t, 5.0, outcome(worst <= 1e-8, format!("max relative gap {worst:.2e} over 300 norms")))
}

fn contraction() -> Outcome {
    let t = Instant::now();
    let r = suite_contraction(&ContractionConfig::default()).unwrap();
    let worst = r.checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
    let o = suite_outcome(&r);
    within(t, 30.0, outcome(o.pass, format!("{}, min margin {worst:.2e}", o.detail)))
}

fn counterexample() -> Outcome {
    let t = Instant::now();
    let r = suite_counterexample(&build_counterexample(4, 4.0).unwrap(), &CounterexampleConfig::default()).unwrap();
    let has = |s: &str| r.checks.iter().any(|c| c.description.starts_with(s) && c.pass);
    let required = ["x_2 = 56", "x_3 = 175504", "n = 4: Psi(2 x_n)", "sandwich on 500", "n = 4: Psi(2 x_n)/Psi(x_n)^2", "M = 4:", "M = 16:", "M = 64:"];
    let missing: Vec<&str> = required.iter().copied().filter(|s| !has(s)).collect();
    let o = suite_outcome(&r);
    within(t, 10.0, outcome(o.pass && missing.is_empty(), format!("{}, missing {missing:?}", o.detail)))
}

fn classifier() -> Outcome {
    let counter = build_counterexample(4, 4.0).unwrap();
    let cases = [
        ("power 2", OrliczFunction::power(2.0).unwrap(), Verdict::Compact),
        ("exp log squared", OrliczFunction::exp_log_squared(), Verdict::Compact),
        ("exp minus one", OrliczFunction::exp_minus_one(), Verdict::NotWeaklyCompact),
        ("counterexample", counter.clone(), Verdict::WeaklyCompactNotCompact),
        ("counterexample squared argument", counter.arg_square().unwrap(), Verdict::WeaklyCompactNotCompact),
    ];
    let mut right = 0;
    let mut notes = Vec::new();
    for (i, (name, psi, want)) in cases.iter().enumerate() {
        let r = classify_injection(psi, &GrowthSampleGrid::default_for(psi)).unwrap();
        let mut ok = r.verdict == *want;
        if i == 4 {
            ok &= r.conjugate_delta2.holds == Holds::Yes;
        }
        if ok {
            right += 1;
        } else {
            notes.push(format!("{name}: {:?}", r.verdict));
        }
    }
    outcome(right == 5, format!("{right}/5 verdicts {notes:?}"))
}

fn kernel() -> Outcome {
    let t = Instant::now();
    let r = suite_kernel_bounds(&KernelConfig::default()).unwrap();
    within(t, 20.0, suite_outcome(&r))
}

fn carleson() -> Outcome {
    let r = suite_carleson_window(&CarlesonConfig::default());
    suite_outcome(&r)
}

fn monomial() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let p2 = suite_monomial_decay(&OrliczFunction::power(2.0).unwrap()).unwrap();
    let closed = p2.checks.iter().filter(|c| c.description.contains("closed form")).count();
    pass &= p2.overall_pass && closed == 257;
    detail.push(format!("power 2: {} checks, {closed} closed-form degrees", p2.checks.len()));
    for psi in [OrliczFunction::power(4.0).unwrap(), OrliczFunction::exp_log_squared(), build_counterexample(4, 4.0).unwrap()] {
        let unit = 1.0 / psi.inverse(1.0).unwrap();
        let worst = [0u32, 1, 7, 64, 256]
            .iter()
            .map(|&n| (hardy_norm(&make_monomial(n), &psi, None).unwrap().result.value - unit).abs())
            .fold(0.0, f64::max);
        pass &= worst <= 1e-8;
        detail.push(format!("Hardy gap {worst:.1e}"));
    }
    outcome(pass, detail.join(", "))
}

fn order() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, psi) in [("power 2", OrliczFunction::power(2.0).unwrap()), ("counterexample", build_counterexample(4, 4.0).unwrap())] {
        let r = suite_order_boundedness(&psi, &OrderConfig::default()).unwrap();
        pass &= r.overall_pass;
        detail.push(format!("{name}: weak tail and divergence checks {}", if r.overall_pass { "pass" } else { "fail" }));
        let env = SampledFunction::EvaluationEnvelope { psi: psi.clone() };
        let mt = orlicz_lab::norm::morse_transue_evidence(&env, &psi, &MeasureDomain::disk(), &[100.0, 4.0, 0.01]).unwrap();
        let monotone = mt
            .rows
            .iter()
            .any(|row| row.trend == RefinementTrend::Growing && row.log_modulars.len() == 3 && row.log_modulars.windows(2).all(|w| w[1] > w[0]));
        pass &= mt.levels.len() == 3 && monotone;
        detail.push(format!("levels {:?}, monotone growth {monotone}", mt.levels));
    }
    outcome(pass, detail.join("; "))
}

fn random_psi(rng: &mut ChaCha8Rng) -> OrliczFunction {
    match rng.gen_range(0..4) {
        0 => OrliczFunction::power(rng.gen_range(1.0..4.0)).unwrap(),
        1 => OrliczFunction::exp_log_squared(),
        2 => OrliczFunction::power(2.0).unwrap(),
        _ => build_counterexample(4, 4.0).unwrap(),
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let deg = rng.gen_range(0..=12);
    (0..=deg).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn norm_on(f: &SampledFunction, psi: &OrliczFunction, disk: bool) -> f64 {
    if disk {
        bergman_norm(f, psi).value
    } else {
        luxemburg_norm(f, psi, &MeasureDomain::circle()).value
    }
}

fn engine_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut violations = [0usize; 4];
    for i in 0..200 {
        let psi = random_psi(&mut rng);
        let disk = i % 2 == 1;
        let a = random_poly(&mut rng);
        let b = random_poly(&mut rng);
        let f = SampledFunction::Polynomial { coeffs: a.clone() };
        let nf = norm_on(&f, &psi, disk);

        let lambda = rng.gen_range(-8.0..8.0);
        let scaled = norm_on(&f.scaled(lambda).unwrap(), &psi, disk);
        if (scaled - lambda.abs() * nf).abs() > 1e-9 * lambda.abs() * nf + 1e-300 {
            violations[0] += 1;
        }

        let g = SampledFunction::Polynomial { coeffs: b.clone() };
        let len = a.len().max(b.len());
        let sum: Vec<Complex64> = (0..len)
            .map(|k| a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default())
            .collect();
        let nsum = norm_on(&SampledFunction::Polynomial { coeffs: sum }, &psi, disk);
        if nsum > (nf + norm_on(&g, &psi, disk)) * (1.0 + 1e-9) {
            violations[1] += 1;
        }

        let dom = if disk { MeasureDomain::disk() } else { MeasureDomain::circle() };
        let s = Sampled::new(&f, &dom.rule_for(&f));
        let shrunk: Vec<f64> = s.abs.iter().map(|v| v * rng.gen_range(0.0..=1.0)).collect();
        let small = Sampled::from_parts(shrunk, s.weights.clone());
        let cfg = NormConfig::default();
        if small.luxemburg(&psi, &cfg).value > s.luxemburg(&psi, &cfg).value * (1.0 + 1e-12) {
            violations[2] += 1;
        }

        let mut cs: Vec<f64> = (0..6).map(|_| rng.gen_range(0.05f64..20.0)).collect();
        cs.sort_by(f64::total_cmp);
        let mods: Vec<f64> = cs.iter().map(|&c| s.modular(&psi, c)).collect();
        if mods.windows(2).any(|w| w[1] > w[0] * (1.0 + 1e-12)) {
            violations[3] += 1;
        }
    }
    outcome(
        violations.iter().all(|&v| v == 0),
        format!("violations homogeneity {}, triangle {}, solidity {}, modular monotonicity {} over 200 instances", violations[0], violations[1], violations[2], violations[3]),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("power-family oracle", power_oracle),
        ("contraction", contraction),
        ("counterexample suite", counterexample),
        ("classifier verdicts", classifier),
        ("kernel suite", kernel),
        ("Carleson windows", carleson),
        ("monomial dichotomy", monomial),
        ("order boundedness", order),
        ("engine properties", engine_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("acceptance {} {:<22} {} ({})", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
