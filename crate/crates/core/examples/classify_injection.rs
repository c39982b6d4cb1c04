// Classifying the injection from the Hardy-Orlicz space into the
// Bergman-Orlicz space for the standard families.

use orlicz_lab::growth::{classify_injection, Condition, GrowthSampleGrid, Verdict};
use orlicz_lab::{build_counterexample, OrliczFunction};

pub fn run_example() -> orlicz_lab::Result<()> {
    let counter = build_counterexample(4, 4.0)?;
    let cases = [
        ("x^2", OrliczFunction::power(2.0)?, Verdict::Compact),
        ("exp(log^2(x+1)) - 1", OrliczFunction::exp_log_squared(), Verdict::Compact),
        ("e^x - 1", OrliczFunction::exp_minus_one(), Verdict::NotWeaklyCompact),
        ("counterexample", counter.clone(), Verdict::WeaklyCompactNotCompact),
        ("counterexample(x^2)", counter.arg_square()?, Verdict::WeaklyCompactNotCompact),
    ];
    for (name, psi, expected) in cases {
        let report = classify_injection(&psi, &GrowthSampleGrid::default_for(&psi))?;
        let d2 = report.condition(Condition::Delta2).map(|c| c.holds);
        println!(
            "{name:>22}: {:?} (Delta2 {:?}, conjugate Delta2 {:?})",
            report.verdict, d2, report.conjugate_delta2.holds
        );
        assert_eq!(report.verdict, expected);
    }

    let report = classify_injection(&counter, &GrowthSampleGrid::default_for(&counter))?;
    let mut csv = Vec::new();
    report.write_q_a_csv(&mut csv)?;
    println!("Q_A table has {} csv rows", csv.iter().filter(|&&b| b == b'\n').count() - 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> orlicz_lab::Result<()> {
    run_example()
}
