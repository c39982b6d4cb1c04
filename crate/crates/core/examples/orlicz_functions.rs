// Building Orlicz functions, evaluating them in linear and log domain,
// inverting them, and inspecting the counterexample's knots.

use orlicz_lab::{build_counterexample, FunctionSpec, OrliczFunction};

pub fn run_example() -> orlicz_lab::Result<()> {
    let p2 = OrliczFunction::power(2.0)?;
    println!("x^2: Psi(3) = {}, Psi^-1(9) = {}", p2.eval(3.0)?, p2.inverse(9.0)?);
    println!("x^2: conjugate at 4 = {}", p2.conjugate(4.0)?);

    let e = OrliczFunction::exp_log_squared();
    println!("exp(log^2(x+1)) - 1: ln Psi(1e30) = {:.3}", e.ln_eval(1e30));

    let spec: FunctionSpec = r#"{"family": "paper_counterexample", "n_max": 4}"#.parse()?;
    let psi = spec.build()?;
    assert_eq!(psi, build_counterexample(4, 4.0)?);
    for x in psi.knot_abscissae().into_iter().take(6) {
        println!("knot x = {x:>12}: ln Psi(x) = {:.6}, ln x = {:.6}", psi.ln_eval(x), x.ln());
    }
    println!("trusted up to {:e}; beyond that the last slope is extrapolated", psi.trusted_limit());

    let squared = psi.arg_square()?;
    println!("Psi(x^2) at x = 10: {}", squared.eval(10.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> orlicz_lab::Result<()> {
    run_example()
}
