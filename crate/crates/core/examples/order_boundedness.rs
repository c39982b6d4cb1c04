// Weak-tail and Morse-Transue evidence for the point-evaluation envelope.

use orlicz_lab::norm::{default_t_grid, morse_transue_evidence, weak_tail_check};
use orlicz_lab::quadrature::MeasureDomain;
use orlicz_lab::sampled::SampledFunction;
use orlicz_lab::{build_counterexample, OrliczFunction};

pub fn run_example() -> orlicz_lab::Result<()> {
    for (name, psi) in [("x^2", OrliczFunction::power(2.0)?), ("counterexample", build_counterexample(4, 4.0)?)] {
        let env = SampledFunction::EvaluationEnvelope { psi: psi.clone() };
        let disk = MeasureDomain::disk();
        let t = default_t_grid(&psi);
        let weak = weak_tail_check(&env, &psi, &disk, 0.125, &t)?;
        let strong = weak_tail_check(&env, &psi, &disk, 4.0, &t)?;
        println!(
            "{name}: c = 1/8 all pass {}, c = 4 all fail {}, largest passing c {:?}",
            weak.all_pass, strong.all_fail, weak.largest_passing_c
        );
        let mt = morse_transue_evidence(&env, &psi, &disk, &[100.0, 10.0, 4.0, 1.0, 0.01])?;
        for row in &mt.rows {
            println!("  c = {:<5}: ln modular per refinement {:?} -> {:?}", row.c, row.log_modulars, row.trend);
        }
        println!("  verdict: {}", mt.label);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> orlicz_lab::Result<()> {
    run_example()
}
