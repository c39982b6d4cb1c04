// Luxemburg norms on the circle and the disk, and the Hardy/Bergman
// dichotomy for monomials.

use orlicz_lab::norm::{bergman_norm, hardy_norm, luxemburg_norm};
use orlicz_lab::quadrature::MeasureDomain;
use orlicz_lab::sampled::FunctionInput;
use orlicz_lab::witness::make_monomial;
use orlicz_lab::OrliczFunction;

pub fn run_example() -> orlicz_lab::Result<()> {
    let p2 = OrliczFunction::power(2.0)?;
    for n in [1u32, 4, 16, 64, 256] {
        let f = make_monomial(n);
        let h = hardy_norm(&f, &p2, None)?;
        let b = bergman_norm(&f, &p2);
        println!("z^{n:<3}: Hardy {:.10}, Bergman {:.10} (closed form {:.10})", h.result.value, b.value, 1.0 / (n as f64 + 1.0).sqrt());
    }

    let psi = OrliczFunction::exp_log_squared();
    let poly: FunctionInput = "poly:1,0.5,-0.25".parse()?;
    let f = poly.build(&psi)?;
    let circle = luxemburg_norm(&f, &psi, &MeasureDomain::circle());
    let disk = luxemburg_norm(&f, &psi, &MeasureDomain::disk());
    println!(
        "1 + z/2 - z^2/4 under exp(log^2(x+1)) - 1: circle {:.12} (bracket {:?}), disk {:.12}",
        circle.value, circle.bracket, disk.value
    );
    assert!(disk.value <= circle.value + 1e-7);
    Ok(())
}

#[allow(dead_code)]
fn main() -> orlicz_lab::Result<()> {
    run_example()
}
