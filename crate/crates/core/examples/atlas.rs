//! The non-representable set for a small base, refined by depth, and the
//! shortest witness for a few points.
//!
//!     cargo run --example atlas

use exptower::analysis::{atlas_build, Membership};
use exptower::{Base, XReal};

fn main() {
    let base = Base::new(0.3).unwrap();
    for depth in [0, 1, 2, 4, 8] {
        let atlas = atlas_build(base, depth).unwrap();
        println!(
            "depth {depth}: {} pieces in {} components, widest gap {:.6}",
            atlas.pieces().len(),
            atlas.components.len(),
            atlas.max_gap()
        );
    }
    let atlas = atlas_build(base, 6).unwrap();
    for c in &atlas.components {
        println!("    ]{}, {}[", c.lo, c.hi);
    }
    for t in [0.0, 1.0, 1.1, 2.0, -1.0] {
        match atlas.membership(XReal::new(t).unwrap()) {
            Membership::InX { witness, .. } => {
                println!("t = {t}: not representable, witness {witness}")
            }
            Membership::NotInXAtDepth { depth } => {
                println!("t = {t}: no witness up to depth {depth}")
            }
        }
    }
}
