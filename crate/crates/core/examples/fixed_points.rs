//! Fixed points of the two maps and the two-cycle past a = e.
//!
//!     cargo run --example fixed_points

use exptower::analysis::{minus_fixed_point, plus_fixed_points, two_cycle};
use exptower::Base;

fn main() {
    for a in [0.1, 0.3, 1.0 / std::f64::consts::E, 1.0, 2.5, 3.0, 5.0] {
        let base = Base::new(a).unwrap();
        print!("a = {a:.6}");
        match plus_fixed_points(base) {
            Ok(fp) => print!("  f_+: m = {:.10}, M = {:.10}", fp.m, fp.big_m),
            Err(_) => print!("  f_+: none"),
        }
        let minus = minus_fixed_point(base);
        print!(
            "  f_-: {:.10}{}",
            minus.m_minus,
            if minus.repulsive { " (repulsive)" } else { "" }
        );
        if let Ok(c) = two_cycle(base, 1e-12) {
            print!("  cycle ({:.10}, {:.10})", c.p, c.q);
        }
        println!();
    }
}
