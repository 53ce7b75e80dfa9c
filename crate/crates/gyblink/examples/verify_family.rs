//! Verifies the defining axioms of the R_nu(N) operator family:
//! the generalized Yang-Baxter equation, far-commutativity, the cubic
//! minimal polynomial of -R_{+1}(N), and its spectrum.
//!
//! Run with: cargo run --example verify_family

use gyblink::gyb::{check_far_commutativity, check_gybe, min_poly_check, r_nu, spectrum_check};
use gyblink::linalg::ToleranceConfig;
use num_complex::Complex64;

fn main() {
    let tol = ToleranceConfig::abs(1e-10);
    let mut all = true;
    for n in (3i64..=13).step_by(2) {
        for nu in [1i8, -1] {
            let r = r_nu(n, nu).unwrap();
            let gybe = check_gybe(&r, &tol).unwrap();
            let far = check_far_commutativity(&r, &tol).unwrap();
            println!("N={n:<3} nu={nu:+}  {gybe}");
            println!("N={n:<3} nu={nu:+}  {far}");
            all &= gybe.pass && far.pass;
        }

        let minp = min_poly_check(n, &ToleranceConfig::abs(1e-12)).unwrap();
        println!("N={n:<3}        {minp}");
        all &= minp.pass;

        // spectrum of -R_{+1}(N): e^{ix} (x2), -e^{ix} (x2), -e^{-ix} (x4)
        let x = std::f64::consts::PI / n as f64;
        let e = |t: f64| Complex64::from_polar(1.0, t);
        let neg = r_nu(n, 1).unwrap().scale(-Complex64::ONE).unwrap();
        let (spec, mults) = spectrum_check(&neg, &[e(x), -e(x), -e(-x)], &tol).unwrap();
        println!("N={n:<3}        {spec}");
        all &= spec.pass && mults == vec![2, 2, 4];
    }
    println!("\noverall: {}", if all { "all checks passed" } else { "FAILURES present" });
    std::process::exit(i32::from(!all));
}
