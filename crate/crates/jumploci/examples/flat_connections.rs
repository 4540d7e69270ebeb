//! Flat sl2-valued one-forms and the cohomology they twist. A rank-one
//! form eta (x) g with eta closed is automatically flat; its twisted
//! Betti numbers jump exactly where the eigenvalue criterion predicts.

use jumploci::cdga::chevalley_eilenberg;
use jumploci::conn::{in_f1, is_flat, segre};
use jumploci::exactnum::{rat, rint};
use jumploci::liealg::{aff1, sl2};
use jumploci::reson::{eigenvalue_criterion, sl2_irrep, twisted_dims};

fn main() {
    let a = chevalley_eilenberg(&aff1());
    let g = sl2();
    let theta = sl2_irrep(2);

    // eta = u* (the closed generator), g = H: theta(g) has eigenvalues +-1
    let eta = vec![rint(0), rint(1)];
    for (label, image) in [
        ("H", vec![rint(1), rint(0), rint(0)]),
        ("H/2", vec![rat(1, 2), rint(0), rint(0)]),
        ("X+", vec![rint(0), rint(1), rint(0)]),
    ] {
        let omega = segre(&eta, &image);
        assert!(is_flat(&a, &g, &omega).unwrap());
        assert!(in_f1(&a, &omega));
        let dims = twisted_dims(&a, &theta, &omega).unwrap();
        let resonant = eigenvalue_criterion(&a, &theta, &eta, &image, 1);
        println!("omega = u* (x) {label}: twisted dims {dims:?}, degree-1 resonant: {resonant}");
    }
}
