//! sl2 representations, twisted de Rham complexes, and Lie algebra
//! cohomology with coefficients.
//!
//! The covariant derivative of a connection omega = sum eta_i (x) g_i on
//! A (x) V is d(a (x) v) = da (x) v + sum_i eta_i /\ a (x) theta(g_i) v.
//! With this convention d^2 = 0 is equivalent to flatness of omega plus
//! the module axioms for theta, which twisted_dims checks at
//! construction time.

mod resvar;

pub use resvar::{
    eigenvalue_criterion, germ_report, h1_basis, pi_membership, rank1_resonance_on_line,
    trivial_resonance, GermEvidence, GermReport, LineResonance, TrivialVerdict,
};

use crate::cdga::{chevalley_eilenberg, Cdga};
use crate::conn::{is_flat, GOneForm};
use crate::exactnum::{rint, Matrix, Rat};
use crate::liealg::{sl2, LieAlgebra};
use crate::poly::certificate::REP_COORDS;
use crate::poly::{poly_det, MultiPoly};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResonError {
    #[error("matrices do not satisfy the sl2 bracket relations")]
    InvalidRep,
    #[error("connection is not flat")]
    NotFlat,
    #[error("matrices do not define a Lie module")]
    NotAModule,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A finite-dimensional sl2 representation, stored as the images of the
/// standard basis (H, X+, X-) together with its irreducible summand
/// dimensions.
#[derive(Clone, Debug)]
pub struct Sl2Rep {
    pub summands: Vec<usize>,
    pub h: Matrix<Rat>,
    pub xp: Matrix<Rat>,
    pub xm: Matrix<Rat>,
}

impl Sl2Rep {
    pub fn dim_v(&self) -> usize {
        self.h.rows
    }

    pub fn mats(&self) -> [&Matrix<Rat>; 3] {
        [&self.h, &self.xp, &self.xm]
    }

    /// [theta(X+), theta(X-)] = theta(H), [theta(H), theta(X_eps)] = 2 eps theta(X_eps),
    /// dim V = sum of summands >= 1.
    pub fn validate(&self) -> Result<(), ResonError> {
        let n = self.dim_v();
        if n == 0 || self.summands.iter().sum::<usize>() != n {
            return Err(ResonError::Shape(format!(
                "summands {:?} do not fill dimension {n}",
                self.summands
            )));
        }
        for m in self.mats() {
            if m.rows != n || m.cols != n {
                return Err(ResonError::Shape("non-square block".into()));
            }
        }
        let comm = |a: &Matrix<Rat>, b: &Matrix<Rat>| a.mul(b).sub(&b.mul(a));
        if comm(&self.xp, &self.xm) != self.h
            || comm(&self.h, &self.xp) != self.xp.scale(&rint(2))
            || comm(&self.h, &self.xm) != self.xm.scale(&rint(-2))
        {
            return Err(ResonError::InvalidRep);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Sl2Rep) -> Sl2Rep {
        let (n, m) = (self.dim_v(), other.dim_v());
        let block = |a: &Matrix<Rat>, b: &Matrix<Rat>| {
            Matrix::from_fn(n + m, n + m, |i, j| {
                if i < n && j < n {
                    a[(i, j)].clone()
                } else if i >= n && j >= n {
                    b[(i - n, j - n)].clone()
                } else {
                    Rat::zero()
                }
            })
        };
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        Sl2Rep {
            summands,
            h: block(&self.h, &other.h),
            xp: block(&self.xp, &other.xp),
            xm: block(&self.xm, &other.xm),
        }
    }

    /// theta(a H + b X+ + c X-) for a rational vector g = (a, b, c).
    pub fn theta_of(&self, g: &[Rat]) -> Matrix<Rat> {
        assert_eq!(g.len(), 3);
        self.h
            .scale(&g[0])
            .add(&self.xp.scale(&g[1]))
            .add(&self.xm.scale(&g[2]))
    }
}

/// The m-dimensional irreducible representation in the weight basis:
/// theta(H) = diag(m-1, m-3, ..., 1-m), X- shifts weights down by one
/// step, X+ v_k = k(m-k) v_{k-1}.
pub fn sl2_irrep(m: usize) -> Sl2Rep {
    assert!(m >= 1);
    let mut h: Matrix<Rat> = Matrix::zero(m, m);
    let mut xp: Matrix<Rat> = Matrix::zero(m, m);
    let mut xm: Matrix<Rat> = Matrix::zero(m, m);
    for k in 0..m {
        h[(k, k)] = rint(m as i64 - 1 - 2 * k as i64);
        if k > 0 {
            xp[(k - 1, k)] = rint((k * (m - k)) as i64);
        }
        if k + 1 < m {
            xm[(k + 1, k)] = rint(1);
        }
    }
    Sl2Rep {
        summands: vec![m],
        h,
        xp,
        xm,
    }
}

/// det(theta(a H + b X+ + c X-)) as an exact polynomial in (a, b, c).
pub fn det_theta(rep: &Sl2Rep) -> MultiPoly {
    let n = rep.dim_v();
    let coords: Vec<MultiPoly> = REP_COORDS.iter().map(|v| MultiPoly::var(v)).collect();
    let sym: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = MultiPoly::zero();
                    for (t, m) in rep.mats().iter().enumerate() {
                        if !m[(i, j)].is_zero() {
                            e = e.add(&coords[t].scale(&m[(i, j)]));
                        }
                    }
                    e
                })
                .collect()
        })
        .collect();
    poly_det(&sym)
}

/// Squared eigenvalues of theta(g): the multiset {(m_j - 1 - 2k)^2 (a^2 + bc)},
/// sorted. The eigenvalues themselves are weight multiples of a square
/// root of a^2 + bc, so storing squares keeps everything rational; the
/// eigenvalue multiset is symmetric under negation, so no information is
/// lost for membership tests against another squared value.
pub fn eigen_squares(rep: &Sl2Rep, g: &[Rat]) -> Vec<Rat> {
    assert_eq!(g.len(), 3);
    let mu2 = g[0].clone() * g[0].clone() + g[1].clone() * g[2].clone();
    let mut out = Vec::new();
    for &m in &rep.summands {
        for k in 0..m {
            let w = rint(m as i64 - 1 - 2 * k as i64);
            out.push(w.clone() * w * mu2.clone());
        }
    }
    out.sort();
    out
}

/// Differential of the twisted complex A (x) V in degree k, for the
/// connection sum_alpha eta_alpha (x) M_alpha. Basis of A^k (x) V is
/// indexed by (basis element of A^k) * dim V + (basis vector of V).
fn twisted_diff(a: &Cdga, one_forms: &[Vec<Rat>], mats: &[Matrix<Rat>], k: usize) -> Matrix<Rat> {
    let v = mats.first().map_or(1, |m| m.rows);
    let (src, tgt) = (a.dim(k), a.dim(k + 1));
    let mut d: Matrix<Rat> = Matrix::zero(tgt * v, src * v);
    let dk = a.d(k);
    for i in 0..src {
        for x in 0..tgt {
            if !dk[(x, i)].is_zero() {
                for j in 0..v {
                    d[(x * v + j, i * v + j)] = dk[(x, i)].clone();
                }
            }
        }
        for (alpha, eta) in one_forms.iter().enumerate() {
            for (t, coef) in eta.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (x, c) in a.mul_basis(1, t, k, i) {
                    let scale = coef.clone() * c;
                    for j in 0..v {
                        for jj in 0..v {
                            let m = &mats[alpha][(jj, j)];
                            if !m.is_zero() {
                                d[(x * v + jj, i * v + j)] =
                                    d[(x * v + jj, i * v + j)].clone() + scale.clone() * m.clone();
                            }
                        }
                    }
                }
            }
        }
    }
    d
}

/// Cohomology dimensions of (A (x) V, d) for the given connection data;
/// fails if the constructed differential does not square to zero.
fn twisted_complex_dims(
    a: &Cdga,
    one_forms: &[Vec<Rat>],
    mats: &[Matrix<Rat>],
) -> Result<Vec<usize>, ()> {
    let v = mats.first().map_or(1, |m| m.rows);
    let top = a.top_degree();
    let diffs: Vec<Matrix<Rat>> = (0..=top)
        .map(|k| twisted_diff(a, one_forms, mats, k))
        .collect();
    for k in 0..top {
        if !diffs[k + 1].mul(&diffs[k]).is_zero() {
            return Err(());
        }
    }
    Ok((0..=top)
        .map(|k| {
            let rk = diffs[k].rank();
            let rp = if k > 0 { diffs[k - 1].rank() } else { 0 };
            a.dim(k) * v - rk - rp
        })
        .collect())
}

/// Exact cohomology dimensions of the twisted complex (A (x) V, d_omega)
/// for a flat sl2-valued one-form omega. This is the brute-force oracle
/// behind every resonance claim.
pub fn twisted_dims(a: &Cdga, theta: &Sl2Rep, omega: &GOneForm) -> Result<Vec<usize>, ResonError> {
    theta.validate()?;
    if omega.mat.rows != a.dim(1) || omega.mat.cols != 3 {
        return Err(ResonError::Shape(format!(
            "omega is {}x{}, expected {}x3",
            omega.mat.rows, omega.mat.cols,
            a.dim(1)
        )));
    }
    match is_flat(a, &sl2(), omega) {
        Ok(true) => {}
        _ => return Err(ResonError::NotFlat),
    }
    let one_forms: Vec<Vec<Rat>> = (0..3).map(|j| omega.eta_column(j)).collect();
    let mats = vec![theta.h.clone(), theta.xp.clone(), theta.xm.clone()];
    twisted_complex_dims(a, &one_forms, &mats).map_err(|_| ResonError::NotFlat)
}

/// Twisted cohomology of A against a rank-one local system: d(a) = da + eta /\ a.
pub fn rank1_twisted_dims(a: &Cdga, eta: &[Rat]) -> Vec<usize> {
    assert_eq!(eta.len(), a.dim(1));
    let mats = vec![Matrix::identity(1)];
    twisted_complex_dims(a, &[eta.to_vec()], &mats)
        .expect("rank-one twist of a closed form squares to zero")
}

/// dim H^i(h, U) for the module U given by the matrices rho(e_1..e_n),
/// computed from the Chevalley-Eilenberg complex with coefficients.
pub fn lie_cohomology(
    h: &LieAlgebra,
    module: &[Matrix<Rat>],
    i: usize,
) -> Result<usize, ResonError> {
    let n = h.dim();
    if module.len() != n {
        return Err(ResonError::Shape(format!(
            "{} matrices for a {n}-dimensional algebra",
            module.len()
        )));
    }
    let v = module.first().map_or(0, |m| m.rows);
    if v == 0 || module.iter().any(|m| m.rows != v || m.cols != v) {
        return Err(ResonError::Shape("module matrices must be square and nonempty".into()));
    }
    // rho([e_i, e_j]) = [rho(e_i), rho(e_j)]
    for p in 0..n {
        for q in p + 1..n {
            let br = h.bracket_basis(p, q);
            let mut lhs: Matrix<Rat> = Matrix::zero(v, v);
            for (t, c) in br.iter().enumerate() {
                if !c.is_zero() {
                    lhs = lhs.add(&module[t].scale(c));
                }
            }
            let rhs = module[p].mul(&module[q]).sub(&module[q].mul(&module[p]));
            if lhs != rhs {
                return Err(ResonError::NotAModule);
            }
        }
    }
    let a = chevalley_eilenberg(h);
    let one_forms: Vec<Vec<Rat>> = (0..n)
        .map(|t| {
            let mut e = vec![Rat::zero(); n];
            e[t] = rint(1);
            e
        })
        .collect();
    let dims = twisted_complex_dims(&a, &one_forms, module).map_err(|_| ResonError::NotAModule)?;
    Ok(dims.get(i).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::free_model;
    use crate::exactnum::rat;
    use crate::liealg::{aff1, heisenberg};
    use crate::sampling::Sampler;

    #[test]
    fn irrep_relations_hold_up_to_dim_eight() {
        for m in 1..=8 {
            sl2_irrep(m).validate().unwrap();
        }
    }

    #[test]
    fn defining_rep_is_the_standard_one() {
        let r = sl2_irrep(2);
        assert_eq!(r.h, Matrix::from_rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(-1)]]));
        assert_eq!(r.xp, Matrix::from_rows(vec![vec![rint(0), rint(1)], vec![rint(0), rint(0)]]));
        assert_eq!(r.xm, Matrix::from_rows(vec![vec![rint(0), rint(0)], vec![rint(1), rint(0)]]));
        let t = sl2_irrep(1);
        assert!(t.h.is_zero() && t.xp.is_zero() && t.xm.is_zero());
    }

    #[test]
    fn direct_sums_validate() {
        let r = sl2_irrep(2).direct_sum(&sl2_irrep(3));
        r.validate().unwrap();
        assert_eq!(r.summands, vec![2, 3]);
        assert_eq!(r.dim_v(), 5);
    }

    #[test]
    fn det_theta_known_cases() {
        // theta_2: -a^2 - bc, vanishing on the nilpotent cone
        let d2 = det_theta(&sl2_irrep(2));
        let a2bc = MultiPoly::var("a")
            .mul(&MultiPoly::var("a"))
            .add(&MultiPoly::var("b").mul(&MultiPoly::var("c")));
        assert_eq!(d2, a2bc.neg());
        // odd-dimensional irreps contain the weight zero, so det = 0
        assert!(det_theta(&sl2_irrep(3)).is_zero());
        // block determinant
        let d22 = det_theta(&sl2_irrep(2).direct_sum(&sl2_irrep(2)));
        assert_eq!(d22, a2bc.mul(&a2bc));
    }

    #[test]
    fn eigen_squares_known_cases() {
        let h = [rint(1), rint(0), rint(0)];
        assert_eq!(eigen_squares(&sl2_irrep(2), &h), vec![rint(1), rint(1)]);
        assert_eq!(
            eigen_squares(&sl2_irrep(3), &h),
            vec![rint(0), rint(4), rint(4)]
        );
        let xp = [rint(0), rint(1), rint(0)];
        assert_eq!(eigen_squares(&sl2_irrep(2), &xp), vec![rint(0), rint(0)]);
    }

    #[test]
    fn untwisted_dims_are_betti_times_dim_v() {
        let a = chevalley_eilenberg(&aff1());
        let theta = sl2_irrep(3);
        let omega = GOneForm::zero(a.dim(1), 3);
        let dims = twisted_dims(&a, &theta, &omega).unwrap();
        let expect: Vec<usize> = a.betti().iter().map(|b| 3 * b).collect();
        assert_eq!(dims, expect);
    }

    #[test]
    fn twisted_dims_on_the_solvable_example() {
        // CE(aff(1)) with omega = u* (x) H splits into the weight lines
        // +/- u*; only the +1 line is resonant in degree one
        let a = chevalley_eilenberg(&aff1());
        let theta = sl2_irrep(2);
        let mut omega = GOneForm::zero(2, 3);
        omega.mat[(1, 0)] = rint(1);
        assert_eq!(twisted_dims(&a, &theta, &omega).unwrap()[1], 1);
        let mut half = GOneForm::zero(2, 3);
        half.mat[(1, 0)] = rat(1, 2);
        assert_eq!(twisted_dims(&a, &theta, &half).unwrap()[1], 0);
    }

    #[test]
    fn non_flat_connection_rejected() {
        let a = chevalley_eilenberg(&aff1());
        let mut omega = GOneForm::zero(2, 3);
        omega.mat[(0, 0)] = rint(1); // x* (x) H: dx* != 0
        assert!(matches!(
            twisted_dims(&a, &sl2_irrep(2), &omega),
            Err(ResonError::NotFlat)
        ));
    }

    #[test]
    fn euler_characteristic_is_twist_independent() {
        let a = chevalley_eilenberg(&heisenberg(1));
        let theta = sl2_irrep(2);
        let mut s = Sampler::new(5);
        let chi = |dims: &[usize]| -> i64 {
            dims.iter()
                .enumerate()
                .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum()
        };
        let base = chi(&twisted_dims(&a, &theta, &GOneForm::zero(3, 3)).unwrap());
        for _ in 0..5 {
            // rank-one eta (x) g with eta closed (span of x*, y*) is flat
            let g = s.vec(3);
            let eta = [s.rat(), s.rat(), Rat::zero()];
            let mut omega = GOneForm::zero(3, 3);
            for (t, e) in eta.iter().enumerate() {
                for (j, gj) in g.iter().enumerate() {
                    omega.mat[(t, j)] = e.clone() * gj.clone();
                }
            }
            let dims = twisted_dims(&a, &theta, &omega).unwrap();
            assert_eq!(chi(&dims), base);
        }
    }

    #[test]
    fn weight_splitting_against_rank_one_twists() {
        // omega = eta (x) H: the twisted complex splits into the weight
        // lines w * eta for the diagonal weights w of theta(H)
        let a = chevalley_eilenberg(&aff1());
        let theta = sl2_irrep(2).direct_sum(&sl2_irrep(3));
        let mut s = Sampler::new(11);
        for _ in 0..5 {
            // closed 1-forms of CE(aff(1)): multiples of u*
            let c = s.rat();
            let eta = vec![Rat::zero(), c.clone()];
            let mut omega = GOneForm::zero(2, 3);
            omega.mat[(1, 0)] = c.clone();
            let dims = twisted_dims(&a, &theta, &omega).unwrap();
            let mut expect = vec![0usize; a.top_degree() + 1];
            for k in 0..theta.dim_v() {
                let w = theta.h[(k, k)].clone();
                let line: Vec<Rat> = eta.iter().map(|e| e.clone() * w.clone()).collect();
                for (i, d) in rank1_twisted_dims(&a, &line).iter().enumerate() {
                    expect[i] += d;
                }
            }
            assert_eq!(dims, expect);
        }
    }

    #[test]
    fn whitehead_vanishing_for_sl2() {
        let g = sl2();
        let adjoint: Vec<Matrix<Rat>> = (0..3).map(|i| g.ad(&crate::liealg::unit(3, i))).collect();
        assert_eq!(lie_cohomology(&g, &adjoint, 1).unwrap(), 0);
        let defining = sl2_irrep(2);
        let m = vec![defining.h.clone(), defining.xp.clone(), defining.xm.clone()];
        assert_eq!(lie_cohomology(&g, &m, 1).unwrap(), 0);
    }

    #[test]
    fn lie_cohomology_matches_rank_one_twist() {
        // aff(1) acting on C by u -> 1, x -> 0 is the local system u*
        let h = aff1();
        let module = vec![
            Matrix::from_rows(vec![vec![rint(0)]]),
            Matrix::from_rows(vec![vec![rint(1)]]),
        ];
        assert_eq!(lie_cohomology(&h, &module, 1).unwrap(), 1);
        let a = chevalley_eilenberg(&h);
        assert_eq!(rank1_twisted_dims(&a, &[rint(0), rint(1)])[1], 1);
    }

    #[test]
    fn trivial_module_gives_betti() {
        let h = heisenberg(1);
        let module: Vec<Matrix<Rat>> = (0..3).map(|_| Matrix::zero(1, 1)).collect();
        let a = chevalley_eilenberg(&h);
        for i in 0..=a.top_degree() {
            assert_eq!(lie_cohomology(&h, &module, i).unwrap(), a.betti()[i]);
        }
    }

    #[test]
    fn non_module_rejected() {
        let g = sl2();
        let bad = vec![Matrix::identity(2), Matrix::identity(2), Matrix::identity(2)];
        assert!(matches!(
            lie_cohomology(&g, &bad, 1),
            Err(ResonError::NotAModule)
        ));
    }

    #[test]
    fn free_model_twist_squares_to_zero() {
        let a = free_model(2);
        let dims = rank1_twisted_dims(&a, &[rint(1), rint(2)]);
        // d(1) = eta is injective, H^1 = ker/im has dimension 1
        assert_eq!(dims, vec![0, 1]);
    }
}
