//! Betti numbers and rank-one resonance germs of Chevalley-Eilenberg
//! algebras. Run with `cargo run --example betti_and_resonance`.

use jumploci::cdga::chevalley_eilenberg;
use jumploci::liealg::{aff1, heisenberg, sl2};
use jumploci::reson::{germ_report, sl2_irrep};

fn main() {
    let theta = sl2_irrep(2);
    for (name, h) in [("aff(1)", aff1()), ("heis3", heisenberg(1)), ("sl2", sl2())] {
        let a = chevalley_eilenberg(&h);
        println!("{name}: betti = {:?}", a.betti());
        for r in germ_report(&a, &theta, 7, 4) {
            println!("  degree {}: {}", r.degree, r.verdict);
            if !r.resonance_points.is_empty() {
                println!("    resonance on the H^1 line at: {}", r.resonance_points.join(", "));
            }
        }
    }
}
