//! Builds the gYB-operator from SO(N)_2 category data and matches it
//! against the closed-form family: R_{-1}(3) at N = 3 and -R_{+1}(N)
//! for larger N. Also demonstrates the fusion ring and the gYBE-object
//! property of X_1.
//!
//! Run with: cargo run --example category_synthesis

use gyblink::so_n2::{build_gyb, check_gybe_object, compare_with_rnu, fusion, Label};

fn main() {
    use Label::*;
    let mut all = true;

    println!("fusion products at N = 7:");
    for (a, b) in [(Eps, Eps), (Eps, EpsPrime), (X(1), X(1)), (X(1), X(2)), (Z, Eps)] {
        let product: Vec<String> = fusion(a, b, 7).unwrap().iter().map(|l| l.to_string()).collect();
        println!("  {a} (x) {b} = {}", product.join(" + "));
    }

    println!("\ngYBE objects with respect to L = {{eps, eps'}}:");
    for n in [3i64, 5, 7, 9] {
        let r = ((n - 1) / 2) as usize;
        for i in 1..=r {
            let ok = check_gybe_object(X(i), &[Eps, EpsPrime], n).unwrap();
            println!("  N={n}: X{i} -> {ok}");
            all &= ok;
        }
        let not = check_gybe_object(Z, &[Eps, EpsPrime], n).unwrap();
        println!("  N={n}: Z  -> {not} (expected false)");
        all &= !not;
    }

    println!("\nsynthesized operator vs closed form:");
    for n in (3i64..=13).step_by(2) {
        let m = compare_with_rnu(n, 1e-12).unwrap();
        println!("  {m}");
        all &= m.matched;
    }

    // the synthesized operator serializes and round-trips exactly
    let op = build_gyb(5).unwrap();
    let text = op.to_text();
    let back = gyblink::gyb::GybOperator::from_text(&text).unwrap();
    all &= back.matrix == op.matrix;
    println!("\nserialization round-trip exact: {}", back.matrix == op.matrix);

    std::process::exit(i32::from(!all));
}
