//! Two smaller capabilities: Lie algebra cohomology with module
//! coefficients, and the Segre-side determinant certificate for rank-one
//! resonance.

use jumploci::exactnum::rat;
use jumploci::liealg::{sl2, unit};
use jumploci::poly::{build_certificate, MultiPoly};
use jumploci::reson::{lie_cohomology, sl2_irrep};

fn main() {
    let g = sl2();
    let adjoint: Vec<_> = (0..3).map(|i| g.ad(&unit(3, i))).collect();
    println!("H^1(sl2, adjoint) = {}", lie_cohomology(&g, &adjoint, 1).unwrap());

    let t2 = sl2_irrep(2);
    let phi0 = MultiPoly::one().add(&MultiPoly::var("n1"));
    let cert = build_certificate(&phi0, &["n1".to_string()], &t2.h, &t2.xp, &t2.xm).unwrap();
    println!("invariant: {}", cert.invariant);
    println!("Segre side: {}", cert.segre);
    println!("value at the origin: {}", cert.at_origin());
    let lhs = cert.eval_segre_pullback(&[rat(1, 3)], &[rat(1, 2), rat(2, 1), rat(-1, 8)]);
    println!("pullback at a sample point: {lhs}");
}
