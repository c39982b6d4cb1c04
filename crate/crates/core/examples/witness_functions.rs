// The kernel family with its boundary-sum bound and window lower bound,
// and the scaled kernels that witness the point-evaluation lower bound.

use num_complex::Complex64;
use orlicz_lab::norm::{bergman_norm, hardy_norm};
use orlicz_lab::witness::{kernel_sum_constant, make_kernel_family, make_scaled_kernel};
use orlicz_lab::OrliczFunction;

pub fn run_example() -> orlicz_lab::Result<()> {
    let p2 = OrliczFunction::power(2.0)?;
    for h in [0.125, 1.0 / 32.0, 1.0 / 128.0] {
        let fam = make_kernel_family(h)?;
        let window_min = fam.window_points(0, 64).iter().map(|z| fam.members[0].abs_at(*z)).fold(f64::INFINITY, f64::min);
        let norm = bergman_norm(&fam.members[1], &p2);
        println!(
            "h = {h:<9}: N = {:>3}, max boundary sum {:.6} <= {:.6}, window min {:.4} >= 1/9, Bergman norm {:.6} >= {:.6}",
            fam.n_funcs,
            fam.max_boundary_sum(512),
            kernel_sum_constant(),
            window_min,
            norm.value,
            h / 9.0
        );
    }

    for x in [10.0, 100.0] {
        let f = make_scaled_kernel(&p2, x)?;
        let h = 1.0 / (x * x);
        let hn = hardy_norm(&f, &p2, None)?;
        println!(
            "x_j = {x}: Hardy norm {:.6}, |f_j(1-h)| = {:.6} >= {:.6}",
            hn.result.value,
            f.abs_at(Complex64::new(1.0 - h, 0.0)),
            x / 4.0
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> orlicz_lab::Result<()> {
    run_example()
}
