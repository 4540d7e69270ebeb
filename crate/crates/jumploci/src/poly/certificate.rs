//! Certificates of trivial resonance along a representation.
//!
//! Given a seed polynomial phi0 in the degree-one coordinates eta with
//! phi0(0) != 0, and a triple of matrices theta(H), theta(X+), theta(X-)
//! acting on an m-dimensional space, the certificate is built as follows:
//! take the product over i of phi0 with its coordinates scaled by a fresh
//! eigenvalue variable lam_i, rewrite the (symmetric) result in elementary
//! symmetric functions of the lam_i, substitute the coefficients of the
//! characteristic polynomial of a*theta(H) + b*theta(X+) + c*theta(X-)
//! for those, and factor the outcome through the Segre map pairing the
//! eta block against (a, b, c). The result is a polynomial F on the
//! target of the Segre map with F(0) = phi0(0)^m whose pullback agrees
//! with the eigenvalue product wherever the eigenvalues exist.

use super::multipoly::{poly_det, MultiPoly};
use super::segre::{factor_through_segre, is_torus_invariant, segre_var};
use super::symmetric::symmetric_reduce;
use super::PolyError;
use crate::exactnum::{Matrix, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Coordinates on the representation side of the Segre pairing.
pub const REP_COORDS: [&str; 3] = ["a", "b", "c"];

#[derive(Clone, Debug)]
pub struct Certificate {
    /// The seed polynomial in the eta variables.
    pub phi0: MultiPoly,
    pub eta_vars: Vec<String>,
    /// Dimension of the representation the certificate was built against.
    pub dim: usize,
    /// The invariant polynomial in the eta variables and (a, b, c).
    pub invariant: MultiPoly,
    /// The same polynomial written in the Segre coordinates z_i_j.
    pub segre: MultiPoly,
}

impl Certificate {
    /// Value of the Segre-side polynomial at the origin.
    pub fn at_origin(&self) -> Rat {
        self.segre.constant_term()
    }

    /// Evaluate the Segre-side polynomial at the image of (eta, (a,b,c)).
    pub fn eval_segre_pullback(&self, eta: &[Rat], abc: &[Rat; 3]) -> Rat {
        assert_eq!(eta.len(), self.eta_vars.len());
        let mut map = BTreeMap::new();
        for (i, ev) in eta.iter().enumerate() {
            for (j, gv) in abc.iter().enumerate() {
                map.insert(
                    segre_var(i, j),
                    MultiPoly::constant(ev.clone() * gv.clone()),
                );
            }
        }
        self.segre.substitute(&map).constant_term()
    }

    /// Evaluate the invariant polynomial directly.
    pub fn eval_invariant(&self, eta: &[Rat], abc: &[Rat; 3]) -> Rat {
        let mut pt = BTreeMap::new();
        for (v, x) in self.eta_vars.iter().zip(eta) {
            pt.insert(v.clone(), x.clone());
        }
        for (v, x) in REP_COORDS.iter().zip(abc) {
            pt.insert(v.to_string(), x.clone());
        }
        // variables absent from the polynomial are simply ignored
        let mut full = pt.clone();
        for v in self.invariant.vars() {
            full.entry(v.clone()).or_insert_with(Rat::zero);
        }
        self.invariant.eval(&full)
    }

    /// The defining product: prod_i phi0(lambda_i * eta) for given
    /// eigenvalues lambda_i. This is what the certificate interpolates.
    pub fn eigenvalue_product(&self, eta: &[Rat], eigenvalues: &[Rat]) -> Rat {
        assert_eq!(eigenvalues.len(), self.dim);
        let mut prod = Rat::from_integer(1.into());
        for lam in eigenvalues {
            let mut pt = BTreeMap::new();
            for (v, x) in self.eta_vars.iter().zip(eta) {
                pt.insert(v.clone(), lam.clone() * x.clone());
            }
            prod *= self.phi0.eval(&pt);
        }
        prod
    }
}

/// Scale every coordinate of phi0 by the variable `lam`: each monomial of
/// total degree k picks up lam^k.
fn lambda_scaled(phi0: &MultiPoly, lam: &str) -> MultiPoly {
    let vars = phi0.vars().to_vec();
    let mut out = MultiPoly::zero();
    for (e, c) in phi0.terms() {
        let deg: u32 = e.iter().sum();
        let powers: Vec<(&str, u32)> = vars.iter().zip(e).map(|(v, &x)| (v.as_str(), x)).collect();
        let mono = MultiPoly::monomial(c.clone(), &powers).mul(&MultiPoly::var(lam).pow(deg));
        out = out.add(&mono);
    }
    out
}

/// Coefficients of det(x I - M) for M = a*h + b*xp + c*xm, low to high,
/// as polynomials in (a, b, c). length dim + 1.
fn symbolic_char_poly(h: &Matrix<Rat>, xp: &Matrix<Rat>, xm: &Matrix<Rat>) -> Vec<MultiPoly> {
    let m = h.rows;
    assert!(h.is_square() && xp.is_square() && xm.is_square());
    assert!(xp.rows == m && xm.rows == m);
    let a = MultiPoly::var(REP_COORDS[0]);
    let b = MultiPoly::var(REP_COORDS[1]);
    let c = MultiPoly::var(REP_COORDS[2]);
    let mut entries = vec![vec![MultiPoly::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let lin = a
                .scale(&h[(i, j)])
                .add(&b.scale(&xp[(i, j)]))
                .add(&c.scale(&xm[(i, j)]));
            let diag = if i == j {
                MultiPoly::var("x")
            } else {
                MultiPoly::zero()
            };
            entries[i][j] = diag.sub(&lin);
        }
    }
    let det = poly_det(&entries);
    let mut coeffs = det.as_univariate_in("x");
    coeffs.resize(m + 1, MultiPoly::zero());
    coeffs
}

/// Build the certificate for a seed phi0 (nonvanishing at the origin) and
/// a representation given by the images of the standard sl2 generators.
pub fn build_certificate(
    phi0: &MultiPoly,
    eta_vars: &[String],
    h: &Matrix<Rat>,
    xp: &Matrix<Rat>,
    xm: &Matrix<Rat>,
) -> Result<Certificate, PolyError> {
    if phi0.constant_term().is_zero() {
        return Err(PolyError::ZeroAtOrigin);
    }
    for v in phi0.vars() {
        if !eta_vars.contains(v) {
            return Err(PolyError::UnassignedVariable(v.clone()));
        }
    }
    let m = h.rows;
    let lams: Vec<String> = (1..=m).map(|i| format!("lam{i}")).collect();
    let es: Vec<String> = (1..=m).map(|i| format!("E{i}")).collect();
    for reserved in lams.iter().chain(es.iter()).map(|s| s.as_str()).chain(REP_COORDS).chain(["x"]) {
        assert!(
            !eta_vars.iter().any(|v| v == reserved),
            "coordinate name {reserved} is reserved"
        );
    }

    let mut f_tilde = MultiPoly::one();
    for lam in &lams {
        f_tilde = f_tilde.mul(&lambda_scaled(phi0, lam));
    }
    let reduced = symmetric_reduce(&f_tilde, &lams, &es)?;

    // e_k(eigenvalues) = (-1)^k * (coefficient of x^{m-k} in det(xI - M))
    let coeffs = symbolic_char_poly(h, xp, xm);
    let mut subst = BTreeMap::new();
    for k in 1..=m {
        let mut ek = coeffs[m - k].clone();
        if k % 2 == 1 {
            ek = ek.neg();
        }
        subst.insert(es[k - 1].clone(), ek);
    }
    let invariant = reduced.substitute(&subst);

    let y_block: Vec<String> = REP_COORDS.iter().map(|s| s.to_string()).collect();
    if !is_torus_invariant(&invariant, eta_vars, &y_block) {
        return Err(PolyError::NotInvariant(invariant.to_string()));
    }
    let segre = factor_through_segre(&invariant, eta_vars, &y_block)?;

    Ok(Certificate {
        phi0: phi0.clone(),
        eta_vars: eta_vars.to_vec(),
        dim: m,
        invariant,
        segre,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rint};

    fn irrep2() -> (Matrix<Rat>, Matrix<Rat>, Matrix<Rat>) {
        (
            Matrix::from_i64(vec![vec![1, 0], vec![0, -1]]),
            Matrix::from_i64(vec![vec![0, 1], vec![0, 0]]),
            Matrix::from_i64(vec![vec![0, 0], vec![1, 0]]),
        )
    }

    #[test]
    fn defining_irrep_certificate() {
        let phi0 = MultiPoly::one().add(&MultiPoly::var("n1"));
        let etas = vec!["n1".to_string()];
        let (h, xp, xm) = irrep2();
        let cert = build_certificate(&phi0, &etas, &h, &xp, &xm).unwrap();
        assert_eq!(cert.at_origin(), rint(1));
        // invariant polynomial is 1 - (a^2 + bc) n1^2
        let expect = MultiPoly::one().sub(
            &MultiPoly::var("a")
                .pow(2)
                .add(&MultiPoly::var("b").mul(&MultiPoly::var("c")))
                .mul(&MultiPoly::var("n1").pow(2)),
        );
        assert_eq!(cert.invariant, expect);
        // pullback matches the eigenvalue product where eigenvalues are
        // rational: a=3, b=4, c=0 has eigenvalues +-3
        let eta = [rat(1, 2)];
        let abc = [rint(3), rint(4), rint(0)];
        let val = cert.eval_segre_pullback(&eta, &abc);
        assert_eq!(val, cert.eigenvalue_product(&eta, &[rint(3), rint(-3)]));
        assert_eq!(val, rat(-5, 4));
        assert_eq!(val, cert.eval_invariant(&eta, &abc));
    }

    #[test]
    fn three_dimensional_diagonal_sample() {
        // spin-one weight basis: H = diag(2, 0, -2)
        let h = Matrix::from_i64(vec![vec![2, 0, 0], vec![0, 0, 0], vec![0, 0, -2]]);
        let xp = Matrix::from_i64(vec![vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let xm = Matrix::from_i64(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 2, 0]]);
        let phi0 = MultiPoly::one()
            .add(&MultiPoly::var("n1").scale(&rint(2)))
            .add(&MultiPoly::var("n2"));
        let etas = vec!["n1".to_string(), "n2".to_string()];
        let cert = build_certificate(&phi0, &etas, &h, &xp, &xm).unwrap();
        assert_eq!(cert.at_origin(), rint(1));
        // b = c = 0: eigenvalues 2a, 0, -2a
        let eta = [rat(1, 3), rat(-1, 2)];
        let abc = [rat(5, 2), rint(0), rint(0)];
        let eig = [rint(5), rint(0), rint(-5)];
        assert_eq!(
            cert.eval_segre_pullback(&eta, &abc),
            cert.eigenvalue_product(&eta, &eig)
        );
    }

    #[test]
    fn seed_vanishing_at_origin_rejected() {
        let phi0 = MultiPoly::var("n1");
        let etas = vec!["n1".to_string()];
        let (h, xp, xm) = irrep2();
        assert!(matches!(
            build_certificate(&phi0, &etas, &h, &xp, &xm),
            Err(PolyError::ZeroAtOrigin)
        ));
    }

    #[test]
    fn char_poly_coefficients() {
        let (h, xp, xm) = irrep2();
        let cs = symbolic_char_poly(&h, &xp, &xm);
        // x^2 - (a^2 + bc)
        assert_eq!(cs[2], MultiPoly::one());
        assert!(cs[1].is_zero());
        let e2 = MultiPoly::var("a")
            .pow(2)
            .add(&MultiPoly::var("b").mul(&MultiPoly::var("c")))
            .neg();
        assert_eq!(cs[0], e2);
    }
}
