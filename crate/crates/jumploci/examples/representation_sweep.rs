//! Rank-two representations of a metabelian algebra into sl2: the
//! two-parameter family, the polynomial certificate that cuts it out, and
//! the exhaustive coordinate-plane sweep confirming nothing else exists.

use jumploci::conn::{
    certificate_value, is_hom, metabelian_certificate, metabelian_family,
    sweep_coordinate_planes,
};
use jumploci::exactnum::{rint, Rat};
use jumploci::liealg::{metabelian, sl2};
use num_traits::One;

fn main() {
    let jordan = [(rint(2), 2)];
    let h = metabelian(&jordan);
    let k = sl2();

    let f = metabelian_certificate(&jordan).unwrap();
    println!("certificate: {f}");

    for eps in [1, -1] {
        // per-chain coefficients, bottom to top: only the chain top may be nonzero
        let phi = metabelian_family(&jordan, &rint(2), eps, &[rint(0), Rat::one()]).unwrap();
        assert!(is_hom(&h, &k, &phi).unwrap());
        println!(
            "eps = {eps:+}: rank {} homomorphism, certificate value {}",
            phi.mat.rank(),
            certificate_value(&f, &phi)
        );
    }

    let sweep = sweep_coordinate_planes(&jordan);
    println!(
        "sweep: {} planes, {} family lines, {} violations",
        sweep.planes,
        sweep.family_lines,
        sweep.violations.len()
    );
}
