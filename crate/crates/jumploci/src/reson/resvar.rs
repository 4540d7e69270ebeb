//! Rank-one resonance varieties probed along lines, isolation verdicts,
//! the eigenvalue membership criterion for sl2 twists, and structured
//! germ descriptions of the resonance variety at the origin.

use super::{det_theta, eigen_squares, twisted_dims, Sl2Rep};
use crate::cdga::Cdga;
use crate::conn::{in_f1, segre, GOneForm};
use crate::exactnum::{
    diagonalize, factor_rational_poly, rank_drop_polynomial, rat, EigenFactors, Rat, UniPoly,
};
use crate::jsonutil::{format_rat, rat_to_json};
use crate::poly::MultiPoly;
use crate::sampling::Sampler;
use num_traits::Zero;
use serde_json::{json, Value};

/// Intersection of a rank-one resonance variety with the line C * eta.
#[derive(Debug)]
pub enum LineResonance {
    /// Every point of the line is resonant.
    Entire,
    /// The finitely many resonant parameters, factored.
    Roots(EigenFactors),
}

impl LineResonance {
    pub fn contains_rational(&self, c: &Rat) -> bool {
        match self {
            LineResonance::Entire => true,
            LineResonance::Roots(f) => f.contains_rational(c),
        }
    }
}

/// Symbolic twisted differential A^k -> A^{k+1} for d_{c eta}, entries in Q[c].
fn symbolic_rank1_diff(a: &Cdga, eta: &[Rat], k: usize) -> Vec<Vec<UniPoly<Rat>>> {
    let (src, tgt) = (a.dim(k), a.dim(k + 1));
    let dk = a.d(k);
    let mut m = vec![vec![UniPoly::<Rat>::zero(); src]; tgt];
    for i in 0..src {
        for x in 0..tgt {
            if !dk[(x, i)].is_zero() {
                m[x][i] = UniPoly::constant(dk[(x, i)].clone());
            }
        }
        for (t, e) in eta.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            for (x, c) in a.mul_basis(1, t, k, i) {
                let lin = UniPoly::new(vec![Rat::zero(), e.clone() * c]);
                m[x][i] = m[x][i].add(&lin);
            }
        }
    }
    m
}

/// The set {c : c * eta is resonant in degree i}, i.e. where
/// dim H^i(A, d_{c eta}) >= 1, as exact roots of the rank-drop loci of
/// the symbolic differentials. eta must be a nonzero closed one-form.
pub fn rank1_resonance_on_line(a: &Cdga, eta: &[Rat], i: usize) -> LineResonance {
    assert_eq!(eta.len(), a.dim(1));
    assert!(eta.iter().any(|e| !e.is_zero()), "eta must be nonzero");
    assert!(
        a.d(1).mul_vec(eta).iter().all(|x| x.is_zero()),
        "eta must be closed"
    );
    let dim_i = a.dim(i);
    if dim_i == 0 {
        return LineResonance::Roots(EigenFactors {
            rational: vec![],
            quadratic: vec![],
            residual: vec![],
        });
    }
    let diag_i = diagonalize(symbolic_rank1_diff(a, eta, i));
    let mut drop = rank_drop_polynomial(&diag_i);
    let mut generic = diag_i.len();
    if i > 0 {
        let diag_p = diagonalize(symbolic_rank1_diff(a, eta, i - 1));
        drop = drop.mul(&rank_drop_polynomial(&diag_p));
        generic += diag_p.len();
    }
    if generic < dim_i {
        return LineResonance::Entire;
    }
    LineResonance::Roots(factor_rational_poly(&drop))
}

/// Verdict on whether 0 is an isolated point of the degree-i rank-one
/// resonance variety.
#[derive(Debug, PartialEq)]
pub enum TrivialVerdict {
    CertifiedTrivial,
    CertifiedNontrivial,
    /// All of the probed lines met the resonance variety in finitely
    /// many points; carries the number of probes.
    ProbabilisticallyTrivial(usize),
}

/// Closed one-forms of A: the kernel of d on degree one. Connectedness
/// makes these exactly the representatives of H^1(A).
pub fn h1_basis(a: &Cdga) -> Vec<Vec<Rat>> {
    a.d(1).kernel_basis()
}

/// Is 0 an isolated point of R^i_1(A)? Exact when dim H^1 <= 1;
/// otherwise probes n_lines random rational lines through the origin of
/// H^1: a single entirely-resonant line disproves isolation, finite
/// intersections on every probe support it.
pub fn trivial_resonance(a: &Cdga, i: usize, seed: u64, n_lines: usize) -> TrivialVerdict {
    let kernel = h1_basis(a);
    match kernel.len() {
        0 => TrivialVerdict::CertifiedTrivial,
        1 => match rank1_resonance_on_line(a, &kernel[0], i) {
            LineResonance::Entire => TrivialVerdict::CertifiedNontrivial,
            LineResonance::Roots(_) => TrivialVerdict::CertifiedTrivial,
        },
        _ => {
            let mut s = Sampler::new(seed);
            for _ in 0..n_lines {
                let coeffs = s.nonzero_vec(kernel.len());
                let mut eta = vec![Rat::zero(); a.dim(1)];
                for (c, k) in coeffs.iter().zip(&kernel) {
                    for (e, kv) in eta.iter_mut().zip(k) {
                        *e = e.clone() + c.clone() * kv.clone();
                    }
                }
                if matches!(rank1_resonance_on_line(a, &eta, i), LineResonance::Entire) {
                    return TrivialVerdict::CertifiedNontrivial;
                }
            }
            TrivialVerdict::ProbabilisticallyTrivial(n_lines)
        }
    }
}

/// Membership of eta (x) g in the degree-i sl2 resonance variety via
/// eigenvalues: resonant iff some eigenvalue lambda of theta(g) has
/// lambda * eta rank-one resonant. Squared eigenvalues keep the test
/// rational; this is sound because the eigenvalue multiset of theta(g)
/// is symmetric under negation.
pub fn eigenvalue_criterion(
    a: &Cdga,
    theta: &Sl2Rep,
    eta: &[Rat],
    g: &[Rat],
    i: usize,
) -> bool {
    let squares = eigen_squares(theta, g);
    match rank1_resonance_on_line(a, eta, i) {
        // any nonzero theta(g) has an eigenvalue landing on the line; for
        // theta(g) = 0 the zero eigenvalue pairs with 0, which an entirely
        // resonant line contains
        LineResonance::Entire => true,
        LineResonance::Roots(f) => {
            if f.rational
                .iter()
                .any(|(c, _)| squares.contains(&(c.clone() * c.clone())))
            {
                return true;
            }
            // 0 in the resonance set pairs with any zero eigenvalue
            if f.contains_rational(&Rat::zero()) && squares.contains(&Rat::zero()) {
                return true;
            }
            // a quadratic root c has rational c^2 exactly when its
            // minimal polynomial is x^2 - q; higher-degree roots never do
            f.quadratic.iter().any(|(q, _, _)| {
                q.coeff(1).is_zero() && squares.contains(&(-q.coeff(0)))
            })
        }
    }
}

/// Membership in Pi(A, theta): omega must be decomposable as eta (x) g
/// with eta a closed one-form and det theta(g) = 0. The zero form is a
/// member.
pub fn pi_membership(a: &Cdga, theta: &Sl2Rep, omega: &GOneForm) -> bool {
    if omega.is_zero() {
        return true;
    }
    if !in_f1(a, omega) {
        return false;
    }
    let g = (0..omega.mat.rows)
        .map(|r| omega.mat.row(r).to_vec())
        .find(|row| row.iter().any(|x| !x.is_zero()))
        .expect("nonzero form has a nonzero row");
    let det = det_theta(theta);
    let assignment: std::collections::BTreeMap<String, Rat> = ["a", "b", "c"]
        .iter()
        .zip(&g)
        .map(|(v, x)| (v.to_string(), x.clone()))
        .collect();
    det.eval(&assignment).is_zero()
}

/// One t-scaling probe supporting a germ description: for small t, the
/// point t * (eta (x) g) is resonant iff det theta(g) = 0.
#[derive(Debug)]
pub struct GermEvidence {
    pub eta: Vec<Rat>,
    pub g: Vec<Rat>,
    pub t_values: Vec<Rat>,
    /// resonance of t * (eta (x) g) in the report's degree, per t value
    pub resonant: Vec<bool>,
    pub det_theta: Rat,
}

/// Structured description of the germ at 0 of the degree-i sl2
/// resonance variety, with sampled supporting evidence.
#[derive(Debug)]
pub struct GermReport {
    pub degree: usize,
    pub betti: usize,
    pub h1_dim: usize,
    pub verdict: String,
    /// exact points on the H^1 line when dim H^1 = 1 (as parameters
    /// along the spanning closed form), and just the origin otherwise
    pub resonance_points: Vec<String>,
    pub evidence: Vec<GermEvidence>,
}

impl GermReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "betti": self.betti,
            "h1_dim": self.h1_dim,
            "verdict": self.verdict,
            "resonance_points": self.resonance_points,
            "evidence": self.evidence.iter().map(|e| json!({
                "eta": e.eta.iter().map(rat_to_json).collect::<Vec<_>>(),
                "g": e.g.iter().map(rat_to_json).collect::<Vec<_>>(),
                "t_values": e.t_values.iter().map(rat_to_json).collect::<Vec<_>>(),
                "resonant": e.resonant,
                "det_theta": rat_to_json(&e.det_theta),
            })).collect::<Vec<_>>(),
        })
    }
}

fn det_at(det: &MultiPoly, g: &[Rat]) -> Rat {
    let assignment: std::collections::BTreeMap<String, Rat> = ["a", "b", "c"]
        .iter()
        .zip(g)
        .map(|(v, x)| (v.to_string(), x.clone()))
        .collect();
    det.eval(&assignment)
}

fn line_points(sol: &LineResonance) -> Vec<String> {
    match sol {
        LineResonance::Entire => vec!["entire line".to_string()],
        LineResonance::Roots(f) => {
            let mut out: Vec<String> = f.rational.iter().map(|(r, _)| format_rat(r)).collect();
            for (_, _, roots) in &f.quadratic {
                for r in roots {
                    out.push(format!("{r}"));
                }
            }
            for res in &f.residual {
                out.push(format!("roots of {res}"));
            }
            out
        }
    }
}

/// Per-degree germ descriptions of the sl2 resonance variety at 0:
/// empty when H^i = 0, just the origin when H^1 = 0, and otherwise the
/// cone on P(H^1) x V(det theta), supported by t-scaling samples.
pub fn germ_report(a: &Cdga, theta: &Sl2Rep, seed: u64, samples: usize) -> Vec<GermReport> {
    let betti = a.betti();
    let kernel = h1_basis(a);
    let h1_dim = kernel.len();
    let det = det_theta(theta);
    let mut s = Sampler::new(seed);
    let t_values = vec![rat(1, 8), rat(-1, 8), rat(1, 16), rat(-1, 16)];

    (0..=a.top_degree())
        .map(|i| {
            if betti[i] == 0 {
                return GermReport {
                    degree: i,
                    betti: 0,
                    h1_dim,
                    verdict: "empty".to_string(),
                    resonance_points: vec![],
                    evidence: vec![],
                };
            }
            if h1_dim == 0 {
                return GermReport {
                    degree: i,
                    betti: betti[i],
                    h1_dim,
                    verdict: "origin-only".to_string(),
                    resonance_points: vec!["0".to_string()],
                    evidence: vec![],
                };
            }
            let resonance_points = if h1_dim == 1 {
                line_points(&rank1_resonance_on_line(a, &kernel[0], i))
            } else {
                vec![]
            };
            let mut evidence = Vec::new();
            for n in 0..samples {
                let coeffs = s.nonzero_vec(h1_dim);
                let mut eta = vec![Rat::zero(); a.dim(1)];
                for (c, k) in coeffs.iter().zip(&kernel) {
                    for (e, kv) in eta.iter_mut().zip(k) {
                        *e = e.clone() + c.clone() * kv.clone();
                    }
                }
                // alternate generic directions with nilpotent ones so the
                // evidence exercises both sides of det theta(g) = 0
                let g = if n % 2 == 0 {
                    s.nonzero_vec(3)
                } else {
                    let av = s.rat();
                    let b = s.nonzero_rat();
                    let c = -(av.clone() * av.clone()) / b.clone();
                    vec![av, b, c]
                };
                let resonant: Vec<bool> = t_values
                    .iter()
                    .map(|t| {
                        let scaled: Vec<Rat> =
                            eta.iter().map(|e| e.clone() * t.clone()).collect();
                        let omega = segre(&scaled, &g);
                        twisted_dims(a, theta, &omega).expect("rank-one closed twist is flat")[i]
                            >= 1
                    })
                    .collect();
                evidence.push(GermEvidence {
                    eta: eta.clone(),
                    g: g.clone(),
                    t_values: t_values.clone(),
                    resonant,
                    det_theta: det_at(&det, &g),
                });
            }
            GermReport {
                degree: i,
                betti: betti[i],
                h1_dim,
                verdict: format!("cone(P(H^1) x V({det}))"),
                resonance_points,
                evidence,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{chevalley_eilenberg, free_model};
    use crate::exactnum::rint;
    use crate::liealg::{aff1, heisenberg, sl2};
    use crate::reson::sl2_irrep;

    #[test]
    fn solvable_line_resonates_at_zero_and_one() {
        let a = chevalley_eilenberg(&aff1());
        match rank1_resonance_on_line(&a, &[rint(0), rint(1)], 1) {
            LineResonance::Roots(f) => {
                assert!(f.contains_rational(&rint(0)));
                assert!(f.contains_rational(&rint(1)));
                assert_eq!(f.rational.len(), 2);
                assert!(f.quadratic.is_empty() && f.residual.is_empty());
            }
            LineResonance::Entire => panic!("expected finite set"),
        }
        // cross-check against the twisted cohomology oracle
        for c in [-1i64, 0, 1, 2] {
            let eta = vec![rint(0), rint(c)];
            let resonant = rank1_twisted_dims_at(&a, &eta) >= 1;
            assert_eq!(resonant, c == 0 || c == 1);
        }
    }

    fn rank1_twisted_dims_at(a: &Cdga, eta: &[Rat]) -> usize {
        crate::reson::rank1_twisted_dims(a, eta)[1]
    }

    #[test]
    fn nilpotent_line_resonates_only_at_zero() {
        let a = chevalley_eilenberg(&heisenberg(1));
        for eta in [
            vec![rint(1), rint(0), rint(0)],
            vec![rint(2), rint(-3), rint(0)],
        ] {
            match rank1_resonance_on_line(&a, &eta, 1) {
                LineResonance::Roots(f) => {
                    let roots: Vec<Rat> = f.rational.iter().map(|(r, _)| r.clone()).collect();
                    assert_eq!(roots, vec![rint(0)]);
                    assert!(f.quadratic.is_empty() && f.residual.is_empty());
                }
                LineResonance::Entire => panic!("expected finite set"),
            }
        }
    }

    #[test]
    fn free_model_lines_are_entirely_resonant() {
        let a = free_model(2);
        assert!(matches!(
            rank1_resonance_on_line(&a, &[rint(1), rint(2)], 1),
            LineResonance::Entire
        ));
    }

    #[test]
    fn isolation_verdicts() {
        assert_eq!(
            trivial_resonance(&chevalley_eilenberg(&aff1()), 1, 0, 10),
            TrivialVerdict::CertifiedTrivial
        );
        assert_eq!(
            trivial_resonance(&free_model(2), 1, 0, 10),
            TrivialVerdict::CertifiedNontrivial
        );
        assert_eq!(
            trivial_resonance(&chevalley_eilenberg(&heisenberg(1)), 1, 0, 50),
            TrivialVerdict::ProbabilisticallyTrivial(50)
        );
    }

    #[test]
    fn eigenvalue_criterion_examples() {
        let a = chevalley_eilenberg(&aff1());
        let theta = sl2_irrep(2);
        let ustar = [rint(0), rint(1)];
        let h = [rint(1), rint(0), rint(0)];
        assert!(eigenvalue_criterion(&a, &theta, &ustar, &h, 1));
        let half_h = [rat(1, 2), rint(0), rint(0)];
        assert!(!eigenvalue_criterion(&a, &theta, &ustar, &half_h, 1));
        // nilpotent g pairs with 0 in the resonance set whenever H^1 != 0
        let xp = [rint(0), rint(1), rint(0)];
        assert!(eigenvalue_criterion(&a, &theta, &ustar, &xp, 1));
    }

    #[test]
    fn pi_membership_examples() {
        let a = chevalley_eilenberg(&aff1());
        let theta = sl2_irrep(2);
        assert!(pi_membership(&a, &theta, &GOneForm::zero(2, 3)));
        let mut nilp = GOneForm::zero(2, 3);
        nilp.mat[(1, 1)] = rint(1); // u* (x) X+
        assert!(pi_membership(&a, &theta, &nilp));
        let mut semis = GOneForm::zero(2, 3);
        semis.mat[(1, 0)] = rint(1); // u* (x) H, det theta = -1
        assert!(!pi_membership(&a, &theta, &semis));
        let mut nonclosed = GOneForm::zero(2, 3);
        nonclosed.mat[(0, 1)] = rint(1); // x* (x) X+, dx* != 0
        assert!(!pi_membership(&a, &theta, &nonclosed));
    }

    #[test]
    fn germ_report_shapes() {
        let theta = sl2_irrep(2);
        // H^1(sl2) = 0: origin-only in degrees 0 and 3, empty in 1 and 2
        let semisimple = chevalley_eilenberg(&sl2());
        let reports = germ_report(&semisimple, &theta, 3, 2);
        assert_eq!(reports[0].verdict, "origin-only");
        assert_eq!(reports[1].verdict, "empty");
        assert_eq!(reports[2].verdict, "empty");
        assert_eq!(reports[3].verdict, "origin-only");

        let a = chevalley_eilenberg(&aff1());
        let reports = germ_report(&a, &theta, 3, 4);
        assert_eq!(reports[2].verdict, "empty");
        assert!(reports[1].verdict.starts_with("cone"));
        assert_eq!(reports[1].h1_dim, 1);
        let mut points = reports[1].resonance_points.clone();
        points.sort();
        assert_eq!(points, vec!["0", "1"]);
        // t-scaling evidence: resonant for small t iff det theta(g) = 0
        for e in &reports[1].evidence {
            for r in &e.resonant {
                assert_eq!(*r, e.det_theta.is_zero());
            }
        }
        // JSON shape
        let v = reports[1].to_json();
        assert_eq!(v["degree"], 1);
        assert!(v["evidence"].as_array().unwrap().len() == 4);
    }
}
