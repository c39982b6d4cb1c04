// Running the verification suites and serializing their reports.

use orlicz_lab::suites::{run_suites, BatteryConfig, SuiteName, SuiteReport};

pub fn run_example() -> orlicz_lab::Result<()> {
    let reports = run_suites(&SuiteName::ALL, &BatteryConfig::default())?;
    for r in &reports {
        let failed = r.failures().count();
        println!("{:<15} {} ({} checks, {failed} failed)", r.suite_name, if r.overall_pass { "PASS" } else { "FAIL" }, r.checks.len());
    }
    let json = reports[0].to_json()?;
    assert_eq!(SuiteReport::from_json(&json)?, reports[0]);
    print!("{}", reports[1].to_text().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!();
    assert!(reports.iter().all(|r| r.overall_pass));
    Ok(())
}

#[allow(dead_code)]
fn main() -> orlicz_lab::Result<()> {
    run_example()
}
