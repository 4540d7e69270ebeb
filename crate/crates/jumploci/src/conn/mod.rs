//! Lie-algebra valued one-forms: flat connections on a CDGA, the rank-one
//! Segre locus, Lie representation varieties as zero sets of the
//! homomorphism defect, the classified rank-two family on metabelian
//! algebras, and its vanishing certificate.

mod section;

pub use section::{
    is_in_metabelian_family, rep_on_line, rep_on_plane, sweep_coordinate_planes, LineSolutions,
    PlaneComponent, PlaneReport, ScalarValue,
};

use crate::cdga::Cdga;
use crate::exactnum::{Matrix, Rat};
use crate::liealg::LieAlgebra;
use crate::poly::MultiPoly;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConnError {
    #[error("shape mismatch: form is {0}x{1}, expected {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("{0} is not an eigenvalue of the Jordan data")]
    EigenvalueNotPresent(String),
    #[error("every top coefficient is zero; the family needs one t_r != 0")]
    AllTopCoefficientsZero,
    #[error("coefficient t_{0} must vanish below the top of its chain")]
    NonzeroBelowTop(usize),
    #[error("the algebra is nilpotent: no nonzero eigenvalue to build on")]
    NilpotentInput,
}

/// An element of A^1 (x) g (or Hom(h, g)): rows indexed by the degree-one
/// basis (or a basis of h), columns by a basis of g.
#[derive(Clone, Debug, PartialEq)]
pub struct GOneForm {
    pub mat: Matrix<Rat>,
}

impl GOneForm {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GOneForm {
            mat: Matrix::zero(rows, cols),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// The coefficient one-form of the j-th Lie algebra generator.
    pub fn eta_column(&self, j: usize) -> Vec<Rat> {
        (0..self.mat.rows).map(|i| self.mat[(i, j)].clone()).collect()
    }

    /// Image of an element of h under the linear map the form encodes.
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.mat.rows);
        (0..self.mat.cols)
            .map(|j| {
                let mut acc = Rat::zero();
                for i in 0..self.mat.rows {
                    acc += x[i].clone() * self.mat[(i, j)].clone();
                }
                acc
            })
            .collect()
    }
}

/// The rank-one map P: (eta, g) -> eta (x) g.
pub fn segre(eta: &[Rat], g: &[Rat]) -> GOneForm {
    GOneForm {
        mat: Matrix::from_fn(eta.len(), g.len(), |i, j| eta[i].clone() * g[j].clone()),
    }
}

/// Left side of the Maurer-Cartan equation,
/// sum_i d eta_i (x) g_i + sum_{i<j} eta_i eta_j (x) [g_i, g_j],
/// as one A^2 coefficient vector per generator of g.
pub fn mc_defect(a: &Cdga, g: &LieAlgebra, omega: &GOneForm) -> Result<Vec<Vec<Rat>>, ConnError> {
    let (m, n) = (a.dim(1), g.dim());
    if omega.mat.rows != m || omega.mat.cols != n {
        return Err(ConnError::Shape(omega.mat.rows, omega.mat.cols, m, n));
    }
    let dim2 = a.dim(2);
    let mut out = vec![vec![Rat::zero(); dim2]; n];
    for j in 0..n {
        let d_eta = a.d(1).mul_vec(&omega.eta_column(j));
        for k in 0..dim2 {
            out[j][k] = out[j][k].clone() + d_eta[k].clone();
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let wedge = a.mul_elem(1, &omega.eta_column(i), 1, &omega.eta_column(j));
            let br = g.bracket_basis(i, j);
            for (k, c) in br.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (l, wv) in wedge.iter().enumerate() {
                    out[k][l] = out[k][l].clone() + c.clone() * wv.clone();
                }
            }
        }
    }
    Ok(out)
}

pub fn is_flat(a: &Cdga, g: &LieAlgebra, omega: &GOneForm) -> Result<bool, ConnError> {
    Ok(mc_defect(a, g, omega)?
        .iter()
        .all(|v| v.iter().all(|c| c.is_zero())))
}

/// Membership in the rank-one locus F^1 = P(H^1(A) x g): the coefficient
/// matrix has rank at most one and its column span is generated by a
/// closed one-form.
pub fn in_f1(a: &Cdga, omega: &GOneForm) -> bool {
    if omega.mat.rank() > 1 {
        return false;
    }
    // any nonzero column generates the eta side
    for j in 0..omega.mat.cols {
        let col = omega.eta_column(j);
        if col.iter().any(|c| !c.is_zero()) {
            return a.d(1).mul_vec(&col).iter().all(|c| c.is_zero());
        }
    }
    true
}

/// The homomorphism defect phi([e_i, e_j]) - [phi e_i, phi e_j] on every
/// basis pair of h, as elements of k.
pub fn hom_defect(
    h: &LieAlgebra,
    k: &LieAlgebra,
    phi: &GOneForm,
) -> Result<Vec<((usize, usize), Vec<Rat>)>, ConnError> {
    if phi.mat.rows != h.dim() || phi.mat.cols != k.dim() {
        return Err(ConnError::Shape(phi.mat.rows, phi.mat.cols, h.dim(), k.dim()));
    }
    let mut out = Vec::new();
    for i in 0..h.dim() {
        for j in i + 1..h.dim() {
            let lhs = phi.apply(&h.bracket_basis(i, j));
            let pi = phi.apply(&unit(h.dim(), i));
            let pj = phi.apply(&unit(h.dim(), j));
            let rhs = k.bracket_of(&pi, &pj);
            let defect: Vec<Rat> = lhs
                .iter()
                .zip(&rhs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect();
            out.push(((i, j), defect));
        }
    }
    Ok(out)
}

pub fn is_hom(h: &LieAlgebra, k: &LieAlgebra, phi: &GOneForm) -> Result<bool, ConnError> {
    Ok(hom_defect(h, k, phi)?
        .iter()
        .all(|(_, v)| v.iter().all(|c| c.is_zero())))
}

/// Symbolic homomorphism defect for a parameterized map: entries of phi
/// are polynomials, output is the flattened list of defect components.
pub fn hom_defect_poly(
    h: &LieAlgebra,
    k: &LieAlgebra,
    phi: &[Vec<MultiPoly>],
) -> Vec<MultiPoly> {
    assert_eq!(phi.len(), h.dim());
    assert!(phi.iter().all(|r| r.len() == k.dim()));
    let apply = |x: &[Rat]| -> Vec<MultiPoly> {
        (0..k.dim())
            .map(|c| {
                let mut acc = MultiPoly::zero();
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() {
                        acc = acc.add(&phi[i][c].scale(xi));
                    }
                }
                acc
            })
            .collect()
    };
    let bracket = |u: &[MultiPoly], v: &[MultiPoly]| -> Vec<MultiPoly> {
        let n = k.dim();
        let mut out = vec![MultiPoly::zero(); n];
        for c in 0..n {
            for d in 0..n {
                if c == d {
                    continue;
                }
                let br = k.bracket_basis(c, d);
                let prod = u[c].mul(&v[d]);
                if prod.is_zero() {
                    continue;
                }
                for (e, coeff) in br.iter().enumerate() {
                    if !coeff.is_zero() {
                        out[e] = out[e].add(&prod.scale(coeff));
                    }
                }
            }
        }
        out
    };
    let mut out = Vec::new();
    for i in 0..h.dim() {
        for j in i + 1..h.dim() {
            let lhs = apply(&h.bracket_basis(i, j));
            let ui: Vec<MultiPoly> = phi[i].clone();
            let uj: Vec<MultiPoly> = phi[j].clone();
            let rhs = bracket(&ui, &uj);
            for c in 0..k.dim() {
                let d = lhs[c].sub(&rhs[c]);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::from_integer(1.into());
    v
}

/// Positions (start, len) of the chains in the Jordan data, in order.
pub fn chain_layout(jordan: &[(Rat, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut pos = 0;
    for &(_, r) in jordan {
        out.push((pos, r));
        pos += r;
    }
    out
}

/// The classified rank-two homomorphism on the metabelian algebra built
/// from `jordan`: phi(u) = (lambda/2e) H, phi(z_i) = t_i X_e on the
/// chains with eigenvalue lambda (t forced to zero below the top of each
/// chain), zero on all other chains. Basis order matches
/// `liealg::metabelian`: z_1..z_N then u; sl2 columns are (H, X+, X-).
pub fn metabelian_family(
    jordan: &[(Rat, usize)],
    lambda: &Rat,
    eps: i32,
    t: &[Rat],
) -> Result<GOneForm, ConnError> {
    assert!(eps == 1 || eps == -1);
    if lambda.is_zero() || !jordan.iter().any(|(l, _)| l == lambda) {
        return Err(ConnError::EigenvalueNotPresent(lambda.to_string()));
    }
    let layout = chain_layout(jordan);
    let v_dim: usize = jordan.iter().map(|&(_, r)| r).sum();
    let matching: Vec<usize> = jordan
        .iter()
        .enumerate()
        .filter(|(_, (l, _))| l == lambda)
        .map(|(b, _)| b)
        .collect();
    let expected_len: usize = matching.iter().map(|&b| jordan[b].1).sum();
    if t.len() != expected_len {
        return Err(ConnError::Shape(t.len(), 1, expected_len, 1));
    }
    let mut mat = Matrix::zero(v_dim + 1, 3);
    // phi(u) = (lambda / 2 eps) H; 1/eps = eps
    mat[(v_dim, 0)] = lambda.clone() * Rat::new(eps.into(), 2.into());
    let eps_col = if eps == 1 { 1 } else { 2 };
    let mut any_top = false;
    let mut k = 0;
    for &b in &matching {
        let (start, r) = layout[b];
        for i in 0..r {
            let ti = &t[k];
            if i + 1 < r && !ti.is_zero() {
                return Err(ConnError::NonzeroBelowTop(k));
            }
            if i + 1 == r && !ti.is_zero() {
                any_top = true;
            }
            mat[(start + i, eps_col)] = ti.clone();
            k += 1;
        }
    }
    if !any_top {
        return Err(ConnError::AllTopCoefficientsZero);
    }
    Ok(GOneForm { mat })
}

/// Variable names for the phi(u) coordinates of the certificate.
pub const CERT_VARS: [&str; 3] = ["uH", "uXp", "uXm"];

/// The vanishing certificate f(phi) = prod (det U + lambda^2 / 4) over
/// the distinct nonzero eigenvalues of the Jordan data, where
/// U = phi(u) = uH*H + uXp*X+ + uXm*X-. f(0) != 0, and f vanishes on
/// every rank-two homomorphism of the classified family.
pub fn metabelian_certificate(jordan: &[(Rat, usize)]) -> Result<MultiPoly, ConnError> {
    let mut eigen: Vec<Rat> = jordan
        .iter()
        .map(|(l, _)| l.clone())
        .filter(|l| !l.is_zero())
        .collect();
    eigen.sort();
    eigen.dedup();
    if eigen.is_empty() {
        return Err(ConnError::NilpotentInput);
    }
    // det U = -uH^2 - uXp uXm
    let det_u = MultiPoly::var(CERT_VARS[0])
        .pow(2)
        .add(&MultiPoly::var(CERT_VARS[1]).mul(&MultiPoly::var(CERT_VARS[2])))
        .neg();
    let mut f = MultiPoly::one();
    for l in eigen {
        let quarter = l.clone() * l * Rat::new(1.into(), 4.into());
        f = f.mul(&det_u.add(&MultiPoly::constant(quarter)));
    }
    Ok(f)
}

/// Evaluate the certificate at a concrete map into sl2 (reads phi(u)
/// off the last row).
pub fn certificate_value(f: &MultiPoly, phi: &GOneForm) -> Rat {
    let u = phi.mat.rows - 1;
    let mut pt = std::collections::BTreeMap::new();
    for (k, name) in CERT_VARS.iter().enumerate() {
        pt.insert(name.to_string(), phi.mat[(u, k)].clone());
    }
    f.eval(&pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{chevalley_eilenberg, free_model};
    use crate::exactnum::{rat, rint};
    use crate::liealg::{aff1, metabelian, sl2};
    use crate::sampling::Sampler;

    #[test]
    fn mc_defect_basics() {
        let a = chevalley_eilenberg(&aff1());
        let g = sl2();
        let zero = GOneForm::zero(a.dim(1), 3);
        assert!(is_flat(&a, &g, &zero).unwrap());

        // on the punctured-plane model every form is flat
        let f = free_model(2);
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            let w = GOneForm {
                mat: Matrix::from_fn(2, 3, |_, _| s.rat()),
            };
            assert!(is_flat(&f, &g, &w).unwrap());
        }

        // x* (x) H is not flat: d x* != 0
        let x_h = segre(&[rint(1), rint(0)], &[rint(1), rint(0), rint(0)]);
        let defect = mc_defect(&a, &g, &x_h).unwrap();
        assert!(defect[0].iter().any(|c| !c.is_zero()));
        assert!(!is_flat(&a, &g, &x_h).unwrap());
    }

    #[test]
    fn closed_rank_one_forms_are_flat() {
        // eta closed implies eta (x) g flat for any g: the wedge term dies
        let a = chevalley_eilenberg(&aff1());
        let g = sl2();
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            // closed one-forms of CE(aff(1)) are multiples of u*
            let eta = vec![rint(0), s.rat()];
            let gv = s.vec(3);
            assert!(is_flat(&a, &g, &segre(&eta, &gv)).unwrap());
        }
    }

    #[test]
    fn segre_scaling_and_fibers() {
        let mut s = Sampler::new(5);
        for _ in 0..20 {
            let eta = s.nonzero_vec(2);
            let gv = s.nonzero_vec(3);
            let t = s.nonzero_rat();
            let scaled_eta: Vec<Rat> = eta.iter().map(|x| x.clone() / t.clone()).collect();
            let scaled_g: Vec<Rat> = gv.iter().map(|x| x.clone() * t.clone()).collect();
            let w1 = segre(&eta, &gv);
            let w2 = segre(&scaled_eta, &scaled_g);
            assert_eq!(w1, w2);
            assert!(w1.mat.rank() <= 1);
            // recover t from coefficient ratios: any matching nonzero pair
            let i = eta.iter().position(|c| !c.is_zero()).unwrap();
            let j = gv.iter().position(|c| !c.is_zero()).unwrap();
            let recovered = scaled_g[j].clone() / gv[j].clone();
            assert_eq!(recovered, t);
            assert_eq!(scaled_eta[i].clone() * t.clone(), eta[i]);
        }
        assert!(segre(&[rint(0), rint(0)], &[rint(1), rint(2), rint(3)]).is_zero());
    }

    #[test]
    fn f1_membership() {
        let a = chevalley_eilenberg(&aff1());
        // u* is closed, x* is not; basis order (x*, u*)
        let u_h = segre(&[rint(0), rint(1)], &[rint(1), rint(0), rint(0)]);
        assert!(in_f1(&a, &u_h));
        let x_h = segre(&[rint(1), rint(0)], &[rint(1), rint(0), rint(0)]);
        assert!(!in_f1(&a, &x_h));
        assert!(in_f1(&a, &GOneForm::zero(2, 3)));
        // a rank-two form is out regardless of closedness
        let rank2 = GOneForm {
            mat: Matrix::from_i64(vec![vec![0, 1, 0], vec![1, 0, 0]]),
        };
        assert!(!in_f1(&a, &rank2));
    }

    #[test]
    fn hom_defect_examples() {
        let g = sl2();
        let zero = GOneForm::zero(3, 3);
        assert!(is_hom(&g, &g, &zero).unwrap());
        let id = GOneForm {
            mat: Matrix::identity(3),
        };
        assert!(is_hom(&g, &g, &id).unwrap());
        // half the identity is not a homomorphism
        let half = GOneForm {
            mat: Matrix::identity(3).scale(&rat(1, 2)),
        };
        assert!(!is_hom(&g, &g, &half).unwrap());
    }

    #[test]
    fn family_members_are_homomorphisms() {
        let cases: Vec<(Vec<(Rat, usize)>, Rat, i32, Vec<Rat>)> = vec![
            (vec![(rint(2), 1)], rint(2), 1, vec![rint(1)]),
            (vec![(rint(2), 2)], rint(2), 1, vec![rint(0), rint(1)]),
            (vec![(rint(2), 1)], rint(2), -1, vec![rint(1)]),
            (vec![(rint(2), 1), (rint(0), 1)], rint(2), 1, vec![rint(1)]),
            (vec![(rint(2), 1), (rint(3), 1)], rint(3), 1, vec![rint(1)]),
            (
                vec![(rint(2), 1), (rint(2), 2)],
                rint(2),
                -1,
                vec![rat(1, 2), rint(0), rint(-3)],
            ),
        ];
        for (jordan, lambda, eps, t) in cases {
            let h = metabelian(&jordan);
            let phi = metabelian_family(&jordan, &lambda, eps, &t).unwrap();
            assert!(is_hom(&h, &sl2(), &phi).unwrap());
            assert!(phi.mat.rank() == 2);
        }
        // phi(u) = H, phi(z) = X+ for [(2, 1)]
        let phi = metabelian_family(&[(rint(2), 1)], &rint(2), 1, &[rint(1)]).unwrap();
        assert_eq!(phi.mat[(1, 0)], rint(1)); // u row, H column
        assert_eq!(phi.mat[(0, 1)], rint(1)); // z row, X+ column
        // eps = -1 flips to -H and X-
        let phi_m = metabelian_family(&[(rint(2), 1)], &rint(2), -1, &[rint(1)]).unwrap();
        assert_eq!(phi_m.mat[(1, 0)], rint(-1));
        assert_eq!(phi_m.mat[(0, 2)], rint(1));
    }

    #[test]
    fn family_rejects_bad_data() {
        let jordan = vec![(rint(2), 2)];
        assert!(matches!(
            metabelian_family(&jordan, &rint(5), 1, &[rint(0), rint(1)]),
            Err(ConnError::EigenvalueNotPresent(_))
        ));
        assert!(matches!(
            metabelian_family(&jordan, &rint(2), 1, &[rint(1), rint(1)]),
            Err(ConnError::NonzeroBelowTop(0))
        ));
        assert!(matches!(
            metabelian_family(&jordan, &rint(2), 1, &[rint(0), rint(0)]),
            Err(ConnError::AllTopCoefficientsZero)
        ));
        // nilpotent data has no nonzero eigenvalue at all
        assert!(matches!(
            metabelian_family(&[(rint(0), 2)], &rint(0), 1, &[rint(0), rint(1)]),
            Err(ConnError::EigenvalueNotPresent(_))
        ));
    }

    #[test]
    fn certificate_vanishes_on_family() {
        let jordan = vec![(rint(2), 1)];
        let f = metabelian_certificate(&jordan).unwrap();
        // f = det U + 1 and f(0) = 1
        assert_eq!(
            certificate_value(&f, &GOneForm::zero(2, 3)),
            rint(1)
        );
        let phi = metabelian_family(&jordan, &rint(2), 1, &[rint(1)]).unwrap();
        assert_eq!(certificate_value(&f, &phi), rint(0));

        // two nonzero eigenvalues: f = (det U + 1)(det U + 9/4)
        let jordan2 = vec![(rint(2), 1), (rint(3), 1)];
        let f2 = metabelian_certificate(&jordan2).unwrap();
        assert_eq!(certificate_value(&f2, &GOneForm::zero(3, 3)), rat(9, 4));
        for (l, t) in [(rint(2), vec![rint(1)]), (rint(3), vec![rat(-2, 7)])] {
            let phi = metabelian_family(&jordan2, &l, 1, &t).unwrap();
            assert_eq!(certificate_value(&f2, &phi), rint(0));
        }
        // repeated eigenvalue counted once
        let f3 = metabelian_certificate(&[(rint(2), 1), (rint(2), 2)]).unwrap();
        assert_eq!(f3.total_degree(), 2);

        assert!(matches!(
            metabelian_certificate(&[(rint(0), 3)]),
            Err(ConnError::NilpotentInput)
        ));
    }

    #[test]
    fn symbolic_defect_matches_numeric() {
        let h = metabelian(&[(rint(2), 2)]);
        let k = sl2();
        let mut s = Sampler::new(17);
        for _ in 0..5 {
            let mat = Matrix::from_fn(h.dim(), 3, |_, _| s.rat());
            let phi = GOneForm { mat: mat.clone() };
            let numeric = hom_defect(&h, &k, &phi).unwrap();
            let sym: Vec<Vec<MultiPoly>> = (0..h.dim())
                .map(|i| {
                    (0..3)
                        .map(|j| MultiPoly::constant(mat[(i, j)].clone()))
                        .collect()
                })
                .collect();
            let polys = hom_defect_poly(&h, &k, &sym);
            let any_nonzero = numeric.iter().any(|(_, v)| v.iter().any(|c| !c.is_zero()));
            assert_eq!(any_nonzero, !polys.is_empty());
            for p in polys {
                assert!(p.is_constant());
            }
        }
    }
}
