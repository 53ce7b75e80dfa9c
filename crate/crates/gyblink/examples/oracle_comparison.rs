//! Cross-checks the braid-closure invariant against the independent
//! Dubrovnik-skein oracle: the quarter-normalized invariant equals the
//! oracle at a = (verified enhancement constant), z = +-2i sin(pi/N),
//! with exactly one sign working per N.
//!
//! Run with: cargo run --example oracle_comparison

use gyblink::braid::builtin_catalog;
use gyblink::linalg::ToleranceConfig;
use gyblink::skein::{compare_invariants, specialization_params};

fn main() {
    let tol = ToleranceConfig::abs(1e-10);
    let mut all = true;
    for n in [3i64, 5, 7] {
        for sign in [1i8, -1] {
            let p = specialization_params(n, sign).unwrap();
            println!(
                "N={n} sign={sign:+}: a={:.6}{:+.6}i  z={:.6}{:+.6}i  delta={:.3}{:+.3}i",
                p.a.re, p.a.im, p.z.re, p.z.im, p.delta().re, p.delta().im
            );
        }
        for row in compare_invariants(n, &builtin_catalog(), &tol).unwrap() {
            println!("  {row}");
            all &= row.matched_sign.is_some() && row.deviation < 1e-8;
        }
        println!();
    }
    std::process::exit(i32::from(!all));
}
