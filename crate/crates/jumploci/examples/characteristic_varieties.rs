//! Rank-one characteristic varieties of torus-bundle groups Z^n x|_A Z,
//! checked against the chain-level twisted-homology oracle.

use jumploci::exactnum::{rat, rint, IntMatrix, QuadScalar, Rat};
use jumploci::polyz::{charvar, charvar_oracle, TorusBundleGroup};
use num_traits::One;

fn main() {
    let sol = TorusBundleGroup::new(IntMatrix::from_i64(vec![vec![2, 1], vec![1, 1]])).unwrap();
    for i in 0..=3 {
        let v = charvar(&sol, i).unwrap();
        println!("degree {i}: {}", v.to_json());
    }

    // (3 +- sqrt 5)/2, the eigenvalues of the monodromy
    let golden = QuadScalar::new(rat(3, 2), rat(1, 2), rint(5));
    let trivial = vec![Rat::one(), Rat::one()];
    for lam in [
        QuadScalar::from_rational(Rat::one()),
        golden.clone(),
        golden.conj(),
        QuadScalar::from_rational(rint(2)),
    ] {
        let dim = charvar_oracle(&sol, &trivial, &lam, 1).unwrap();
        println!("oracle at lambda = {lam}: twisted H_1 has dimension {dim}");
    }
}
