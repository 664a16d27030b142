//! The constants A and B, and both certificate families across a range of bases.
//!
//!     cargo run --example certificates

use exptower::analysis::{
    certify_pow, certify_quad, constants_ab, quad_range_endpoints, scan_quad_extended, GridSpec,
};
use exptower::Base;

fn main() {
    let c = constants_ab(1e-15);
    println!("A = {:.10}, B = {:.10}, A*B = {}", c.a, c.b, c.product);
    let (left, right) = quad_range_endpoints();
    println!("quadratic family covers [{right:.6}, {left:.6}]");
    let scan = scan_quad_extended();
    println!(
        "extended scan: t* = {:.8}, a_low = {:.8}",
        scan.t_star, scan.a_low
    );

    let grid = GridSpec {
        points: 20_000,
        ..GridSpec::default()
    };
    println!("{:>6} {:>6} {:>6} {:>10}", "a", "pow", "quad", "lambda");
    for a in [
        0.38, 0.39, 0.4, 0.5, 0.6, 0.7, 1.0, 1.5, 2.0, 2.5, 2.53, 2.54, 2.7,
    ] {
        let base = Base::new(a).unwrap();
        let pow = certify_pow(base);
        let quad = certify_quad(base, &grid);
        let lambda = quad
            .lambda
            .map(|l| format!("{l:.6}"))
            .unwrap_or_else(|| "-".into());
        println!("{a:>6} {:>6} {:>6} {lambda:>10}", pow.verdict, quad.verdict);
    }
}
