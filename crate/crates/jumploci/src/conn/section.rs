//! Exact solving of the homomorphism equations on low-dimensional affine
//! sections: lines (one parameter) and coordinate planes (two parameters).
//!
//! On a coordinate plane through 0 every defect polynomial has degree at
//! most one in each parameter separately, because the two parameters sit
//! on different arguments of the bracket (or else the equations are
//! linear). Each equation is therefore a pencil A(s) + w B(s), and the
//! whole system is solved with univariate gcds: common vertical lines
//! from gcd(A_i, B_i), a graph component when the pencils are pairwise
//! proportional, and finitely many points from the pairwise eliminants
//! A_i B_j - A_j B_i. No multivariate elimination is needed.

use super::{chain_layout, hom_defect_poly, GOneForm};
use crate::exactnum::{
    factor_rational_poly, rat, EigenFactors, Matrix, QuadScalar, Rat, UniPoly,
};
use crate::liealg::{metabelian, sl2, LieAlgebra};
use crate::poly::MultiPoly;
use num_traits::Zero;

/// A coordinate of an exactly-solved solution: rational, or living in a
/// quadratic extension.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarValue {
    Rational(Rat),
    Quadratic(QuadScalar),
}

impl ScalarValue {
    pub fn to_quad(&self) -> QuadScalar {
        match self {
            ScalarValue::Rational(r) => QuadScalar::from_rational(r.clone()),
            ScalarValue::Quadratic(q) => q.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ScalarValue::Rational(r) => Some(r),
            ScalarValue::Quadratic(_) => None,
        }
    }
}

/// Solution set of the homomorphism equations along a line phi(s) = base + s*dir.
#[derive(Debug)]
pub enum LineSolutions {
    /// The defect vanishes identically: the whole line consists of solutions.
    AllParameters,
    /// Common roots of the defect polynomials, factored.
    Roots(EigenFactors),
}

/// Exact solution set of hom(h, k) restricted to a parameterized line.
pub fn rep_on_line(
    h: &LieAlgebra,
    k: &LieAlgebra,
    base: &Matrix<Rat>,
    dir: &Matrix<Rat>,
) -> LineSolutions {
    assert_eq!(base.rows, h.dim());
    assert_eq!(base.cols, k.dim());
    assert_eq!(dir.rows, h.dim());
    assert_eq!(dir.cols, k.dim());
    let s = MultiPoly::var("s");
    let phi: Vec<Vec<MultiPoly>> = (0..h.dim())
        .map(|i| {
            (0..k.dim())
                .map(|j| {
                    MultiPoly::constant(base[(i, j)].clone())
                        .add(&s.scale(&dir[(i, j)]))
                })
                .collect()
        })
        .collect();
    let defects = hom_defect_poly(h, k, &phi);
    if defects.is_empty() {
        return LineSolutions::AllParameters;
    }
    let mut g = UniPoly::<Rat>::zero();
    for p in defects {
        let u = p.to_unipoly("s").expect("line defect is univariate");
        g = if g.is_zero() { u } else { g.gcd(&u) };
    }
    if g.is_constant() && !g.is_zero() {
        return LineSolutions::Roots(EigenFactors {
            rational: vec![],
            quadratic: vec![],
            residual: vec![],
        });
    }
    LineSolutions::Roots(factor_rational_poly(&g))
}

/// One irreducible piece of the solution set on a coordinate plane.
#[derive(Debug)]
pub enum PlaneComponent {
    /// Every point of the plane is a solution.
    WholePlane,
    /// The graph w = -a(s)/b(s) wherever b(s) != 0, with gcd(a, b) = 1.
    Curve { a: UniPoly<Rat>, b: UniPoly<Rat> },
    /// A line {s = s0} with w free.
    VerticalLine(ScalarValue),
    /// An isolated solution.
    Point(ScalarValue, ScalarValue),
    /// A factor this solver does not decompose (degree >= 3 in s); kept
    /// so the caller can fail honestly instead of silently dropping it.
    Unresolved(String),
}

#[derive(Debug)]
pub struct PlaneReport {
    pub components: Vec<PlaneComponent>,
}

fn eval_at_quad(p: &UniPoly<Rat>, x: &QuadScalar) -> QuadScalar {
    p.map(|c| QuadScalar::from_rational(c.clone())).eval(x)
}

/// Push the rational roots and quadratic-extension roots of a polynomial
/// into scalar values; unresolvable residual factors become Unresolved.
fn roots_of(g: &UniPoly<Rat>, out: &mut Vec<ScalarValue>, comps: &mut Vec<PlaneComponent>) {
    let f = factor_rational_poly(g);
    for (r, _) in f.rational {
        out.push(ScalarValue::Rational(r));
    }
    for (_, _, roots) in f.quadratic {
        for r in roots {
            out.push(ScalarValue::Quadratic(r));
        }
    }
    for res in f.residual {
        comps.push(PlaneComponent::Unresolved(format!(
            "residual factor of degree {}: {}",
            res.degree(),
            res
        )));
    }
}

/// Solve the homomorphism equations for a two-parameter family with
/// polynomial entries in the variables "s" and "w", where every defect
/// has degree at most one in "w".
pub fn rep_on_plane(h: &LieAlgebra, k: &LieAlgebra, phi: &[Vec<MultiPoly>]) -> PlaneReport {
    let defects = hom_defect_poly(h, k, phi);
    if defects.is_empty() {
        return PlaneReport {
            components: vec![PlaneComponent::WholePlane],
        };
    }
    let mut components = Vec::new();

    // pencils p = A(s) + w B(s)
    let mut pencils: Vec<(UniPoly<Rat>, UniPoly<Rat>)> = Vec::new();
    for p in &defects {
        let coeffs = p.as_univariate_in("w");
        if coeffs.len() > 2 {
            components.push(PlaneComponent::Unresolved(format!(
                "defect of degree {} in the second parameter: {}",
                coeffs.len() - 1,
                p
            )));
            return PlaneReport { components };
        }
        let a = coeffs[0].to_unipoly("s").expect("pencil coefficient in s only");
        let b = coeffs
            .get(1)
            .map(|c| c.to_unipoly("s").expect("pencil coefficient in s only"))
            .unwrap_or_else(UniPoly::zero);
        pencils.push((a, b));
    }

    // vertical lines: common zeros of every A_i and B_i
    let mut g_v = UniPoly::<Rat>::zero();
    for (a, b) in &pencils {
        for q in [a, b] {
            if !q.is_zero() {
                g_v = if g_v.is_zero() { q.clone() } else { g_v.gcd(q) };
            }
        }
    }
    let mut vertical: Vec<ScalarValue> = Vec::new();
    if !g_v.is_zero() && !g_v.is_constant() {
        roots_of(&g_v, &mut vertical, &mut components);
    }
    for v in &vertical {
        components.push(PlaneComponent::VerticalLine(v.clone()));
    }

    // non-vertical solutions
    let with_b: Vec<&(UniPoly<Rat>, UniPoly<Rat>)> =
        pencils.iter().filter(|(_, b)| !b.is_zero()).collect();
    if with_b.is_empty() {
        // equations do not involve w at all; everything is vertical
        return PlaneReport { components };
    }

    // pairwise eliminants A_i B_j - A_j B_i
    let mut g_e = UniPoly::<Rat>::zero();
    let mut any_pair = false;
    for i in 0..pencils.len() {
        for j in i + 1..pencils.len() {
            let (ai, bi) = &pencils[i];
            let (aj, bj) = &pencils[j];
            let r = ai.mul(bj).sub(&aj.mul(bi));
            any_pair = true;
            if !r.is_zero() {
                g_e = if g_e.is_zero() { r } else { g_e.gcd(&r) };
            }
        }
    }

    if !any_pair || g_e.is_zero() {
        // a single pencil, or all pencils pairwise proportional: the
        // non-vertical solution set is the graph of the reduced pencil
        // with the lowest-degree denominator
        let (a, b) = with_b
            .iter()
            .min_by_key(|(a, b)| a.degree().max(b.degree()))
            .unwrap();
        let g = if a.is_zero() { b.monic() } else { a.gcd(b) };
        let (a_red, b_red) = (
            a.divides_exactly(&g).expect("gcd divides"),
            b.divides_exactly(&g).expect("gcd divides"),
        );
        components.push(PlaneComponent::Curve { a: a_red, b: b_red });
        return PlaneReport { components };
    }

    // finitely many candidate s-values
    let mut candidates: Vec<ScalarValue> = Vec::new();
    if !g_e.is_constant() {
        roots_of(&g_e, &mut candidates, &mut components);
    }
    for s0 in candidates {
        if vertical.contains(&s0) {
            continue;
        }
        let sq = s0.to_quad();
        // find a pencil with B(s0) != 0, read off w, verify all equations
        let mut w0: Option<QuadScalar> = None;
        for (a, b) in &pencils {
            let bv = eval_at_quad(b, &sq);
            if !bv.is_zero() {
                w0 = Some(-eval_at_quad(a, &sq) / bv);
                break;
            }
        }
        let w0 = match w0 {
            Some(w) => w,
            None => {
                // all B vanish at s0: solutions there would be vertical
                continue;
            }
        };
        let consistent = pencils.iter().all(|(a, b)| {
            (eval_at_quad(a, &sq) + w0.clone() * eval_at_quad(b, &sq)).is_zero()
        });
        if consistent {
            let wv = if w0.is_rational() {
                ScalarValue::Rational(w0.a.clone())
            } else {
                ScalarValue::Quadratic(w0)
            };
            components.push(PlaneComponent::Point(s0, wv));
        }
    }
    PlaneReport { components }
}

/// Conjugation-invariant membership test for the classified rank-two
/// family on the metabelian algebra of `jordan`: phi(u) must have
/// determinant -lambda^2/4 for some nonzero eigenvalue lambda, the
/// z-images must vanish except at the tops of the lambda-chains, every
/// z-image must be an ad(phi(u))-eigenvector with eigenvalue lambda, and
/// at least one must be nonzero. This characterizes the GL2-orbits of
/// the explicit family.
pub fn is_in_metabelian_family(jordan: &[(Rat, usize)], phi: &GOneForm) -> bool {
    let v_dim: usize = jordan.iter().map(|&(_, r)| r).sum();
    assert_eq!(phi.mat.rows, v_dim + 1);
    assert_eq!(phi.mat.cols, 3);
    let u_row = v_dim;
    let to_2x2 = |row: usize| -> Matrix<Rat> {
        // xH*H + xP*X+ + xM*X- = [[xH, xP], [xM, -xH]]
        let xh = phi.mat[(row, 0)].clone();
        let xp = phi.mat[(row, 1)].clone();
        let xm = phi.mat[(row, 2)].clone();
        Matrix::from_rows(vec![vec![xh.clone(), xp], vec![xm, -xh]])
    };
    let u = to_2x2(u_row);
    let det_u = u.det();
    let layout = chain_layout(jordan);

    let mut eigen: Vec<Rat> = jordan
        .iter()
        .map(|(l, _)| l.clone())
        .filter(|l| !l.is_zero())
        .collect();
    eigen.sort();
    eigen.dedup();

    'next_lambda: for lambda in &eigen {
        let target = -(lambda.clone() * lambda.clone()) * rat(1, 4);
        if det_u != target {
            continue;
        }
        let mut any_nonzero = false;
        for (b, &(ref l, _)) in jordan.iter().enumerate() {
            let (start, r) = layout[b];
            for i in 0..r {
                let v = to_2x2(start + i);
                let is_zero = v.is_zero();
                let is_top_of_lambda_chain = l == lambda && i + 1 == r;
                if !is_top_of_lambda_chain {
                    if !is_zero {
                        continue 'next_lambda;
                    }
                    continue;
                }
                if is_zero {
                    continue;
                }
                // [U, v] = lambda v
                let comm = u.mul(&v).sub(&v.mul(&u));
                if comm != v.scale(lambda) {
                    continue 'next_lambda;
                }
                any_nonzero = true;
            }
        }
        if any_nonzero {
            return true;
        }
    }
    false
}

/// Outcome of the exhaustive coordinate-plane sweep for a metabelian
/// algebra: every rank-two solution component found must be a classified
/// family line; anything else is reported as a violation.
#[derive(Debug)]
pub struct SweepSummary {
    pub planes: usize,
    pub family_lines: usize,
    pub violations: Vec<String>,
}

fn minor_polys(phi: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    let rows = phi.len();
    let cols = phi[0].len();
    let mut out = Vec::new();
    for r1 in 0..rows {
        for r2 in r1 + 1..rows {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let m = phi[r1][c1]
                        .mul(&phi[r2][c2])
                        .sub(&phi[r1][c2].mul(&phi[r2][c1]));
                    if !m.is_zero() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Does a line {frozen coordinate = value, other coordinate free} inside
/// a coordinate plane describe the classified family line? The frozen
/// coordinate must be phi(u) along H with value eps * lambda / 2, and
/// the free coordinate must sit at the top of a lambda-chain in the
/// X_eps column.
fn coordinate_line_is_family(
    jordan: &[(Rat, usize)],
    frozen: (usize, usize),
    value: &Rat,
    free: (usize, usize),
) -> bool {
    let v_dim: usize = jordan.iter().map(|&(_, r)| r).sum();
    if frozen != (v_dim, 0) {
        return false; // frozen coordinate must be phi(u) along H
    }
    let eps = match free.1 {
        1 => 1i64,
        2 => -1i64,
        _ => return false,
    };
    let layout = chain_layout(jordan);
    for (b, (l, _)) in jordan.iter().enumerate() {
        let (start, r) = layout[b];
        if l.is_zero() {
            continue;
        }
        if free.0 == start + r - 1 && *value == l.clone() * rat(eps, 2) {
            return true;
        }
    }
    false
}

/// Exhaustive two-parameter coordinate-plane sweep of the homomorphism
/// equations hom(metabelian(jordan), sl2): solves every coordinate plane
/// exactly and checks that each rank-two component lies in the
/// classified family.
pub fn sweep_coordinate_planes(jordan: &[(Rat, usize)]) -> SweepSummary {
    let h = metabelian(jordan);
    let k = sl2();
    let n = h.dim();
    let coords: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (0..3).map(move |c| (p, c)))
        .collect();
    let mut summary = SweepSummary {
        planes: 0,
        family_lines: 0,
        violations: vec![],
    };

    for a in 0..coords.len() {
        for b in a + 1..coords.len() {
            let (q_s, q_w) = (coords[a], coords[b]);
            summary.planes += 1;
            let phi: Vec<Vec<MultiPoly>> = (0..n)
                .map(|p| {
                    (0..3)
                        .map(|c| {
                            if (p, c) == q_s {
                                MultiPoly::var("s")
                            } else if (p, c) == q_w {
                                MultiPoly::var("w")
                            } else {
                                MultiPoly::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            let report = rep_on_plane(&h, &k, &phi);
            let minors = minor_polys(&phi);
            let plane_desc = format!(
                "plane {}({}) x {}({})",
                h.basis[q_s.0], k.basis[q_s.1], h.basis[q_w.0], k.basis[q_w.1]
            );

            for comp in &report.components {
                match comp {
                    PlaneComponent::WholePlane => {
                        if !minors.is_empty() {
                            summary
                                .violations
                                .push(format!("{plane_desc}: rank-two whole-plane component"));
                        }
                    }
                    PlaneComponent::Curve { a, b } => {
                        // substitute w = -a/b after clearing denominators
                        for m in &minors {
                            let coeffs = m.as_univariate_in("w");
                            let deg = coeffs.len() - 1;
                            let mut acc = UniPoly::<Rat>::zero();
                            for (kk, c) in coeffs.iter().enumerate() {
                                let c = c.to_unipoly("s").expect("minor coefficient in s");
                                let mut term = c;
                                for _ in 0..kk {
                                    term = term.mul(&a.neg());
                                }
                                for _ in kk..deg {
                                    term = term.mul(b);
                                }
                                acc = acc.add(&term);
                            }
                            if !acc.is_zero() {
                                // a constant graph {w = w0} is the family line
                                // with the parameter roles swapped
                                if a.degree() == 0 && b.degree() == 0 {
                                    let w0 = -a.coeff(0) / b.coeff(0);
                                    if coordinate_line_is_family(jordan, q_w, &w0, q_s) {
                                        summary.family_lines += 1;
                                        break;
                                    }
                                }
                                summary.violations.push(format!(
                                    "{plane_desc}: rank-two curve component w = -({a})/({b})"
                                ));
                                break;
                            }
                        }
                    }
                    PlaneComponent::VerticalLine(sv) => {
                        let rank2 = minors.iter().any(|m| {
                            let coeffs = m.as_univariate_in("w");
                            coeffs.iter().any(|c| {
                                let c = c.to_unipoly("s").expect("minor coefficient in s");
                                !eval_at_quad(&c, &sv.to_quad()).is_zero()
                            })
                        });
                        if !rank2 {
                            continue;
                        }
                        match sv.as_rational() {
                            Some(s0) if coordinate_line_is_family(jordan, q_s, s0, q_w) => {
                                summary.family_lines += 1;
                            }
                            _ => summary.violations.push(format!(
                                "{plane_desc}: rank-two line s = {sv:?} outside the family"
                            )),
                        }
                    }
                    PlaneComponent::Point(sv, wv) => {
                        // evaluate the two nonzero coordinates exactly
                        let sq = sv.to_quad();
                        let wq = wv.to_quad();
                        let mat: Matrix<QuadScalar> = Matrix::from_fn(n, 3, |p, c| {
                            if (p, c) == q_s {
                                sq.clone()
                            } else if (p, c) == q_w {
                                wq.clone()
                            } else {
                                QuadScalar::zero()
                            }
                        });
                        if mat.rank() < 2 {
                            continue;
                        }
                        let ok = match (sv.as_rational(), wv.as_rational()) {
                            (Some(_), Some(_)) => {
                                let phi_pt = GOneForm {
                                    mat: mat.map(|q| {
                                        assert!(q.is_rational());
                                        q.a.clone()
                                    }),
                                };
                                is_in_metabelian_family(jordan, &phi_pt)
                            }
                            _ => false, // the family lives over rational points
                        };
                        if ok {
                            summary.family_lines += 1;
                        } else {
                            summary.violations.push(format!(
                                "{plane_desc}: rank-two isolated point ({sv:?}, {wv:?})"
                            ));
                        }
                    }
                    PlaneComponent::Unresolved(msg) => {
                        summary
                            .violations
                            .push(format!("{plane_desc}: unresolved component: {msg}"));
                    }
                }
            }
        }
    }
    summary
}
