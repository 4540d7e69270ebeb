//! Rank-one characteristic varieties of torus-bundle groups Z^n x| Z.
//!
//! The abelianization splits as C + Z with C the coinvariants of the
//! monodromy matrix, so the character torus is Hom(C, C*) x C*. The
//! twisted homology of Z^n vanishes away from the trivial character, so
//! the finiteness recursion collapses: the characteristic variety in
//! degree i consists of the trivial character paired with the
//! eigenvalues of the exterior powers Lambda^i A and Lambda^{i-1} A.
//! A chain-level Koszul/mapping-torus oracle cross-checks every point.
//!
//! Orientation convention: the monodromy acts on twisted homology as
//! lambda times the inverse of the induced map N, and id - lambda N^{-1}
//! is singular exactly when lambda is an eigenvalue of N; the eigenvalue
//! sets below are therefore those of the exterior powers themselves.

use crate::cdga::subsets;
use crate::exactnum::{
    factor_rational_poly, smith_normal_form, EigenFactors, IntMatrix, Matrix, QuadScalar,
    Rat, UniPoly,
};
use crate::jsonutil::{format_rat, parse_rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyzError {
    #[error("matrix is not an automorphism of Z^n (det must be +-1)")]
    NotUnimodular,
    #[error("degree {0} out of range 0..={1}")]
    DegreeOutOfRange(usize, usize),
    #[error("intermediate character has an irrational coordinate")]
    IrrationalIntermediateCharacter,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// The group Z^n x| Z with monodromy an integer automorphism A.
#[derive(Clone, Debug)]
pub struct TorusBundleGroup {
    pub n: usize,
    pub a: IntMatrix,
}

impl TorusBundleGroup {
    pub fn new(a: IntMatrix) -> Result<Self, PolyzError> {
        let n = a.rows;
        if a.cols != n {
            return Err(PolyzError::Invalid("matrix must be square".into()));
        }
        let ar = int_matrix_to_rat(&a);
        let det = ar.det();
        if !det.is_integer() || det.numer().abs() != BigInt::one() {
            return Err(PolyzError::NotUnimodular);
        }
        Ok(TorusBundleGroup { n, a })
    }

    pub fn a_rat(&self) -> Matrix<Rat> {
        int_matrix_to_rat(&self.a)
    }
}

fn int_matrix_to_rat(a: &IntMatrix) -> Matrix<Rat> {
    Matrix::from_fn(a.rows, a.cols, |i, j| Rat::from_integer(a[(i, j)].clone()))
}

/// Parse `{"n": 2, "matrix": [[2,1],[1,1]]}`.
pub fn bundle_from_json(v: &Value) -> Result<TorusBundleGroup, PolyzError> {
    let n = v["n"]
        .as_u64()
        .ok_or_else(|| PolyzError::Invalid("missing rank n".into()))? as usize;
    let rows = v["matrix"]
        .as_array()
        .ok_or_else(|| PolyzError::Invalid("missing matrix".into()))?;
    if rows.len() != n {
        return Err(PolyzError::Invalid("matrix has wrong number of rows".into()));
    }
    let mut m = IntMatrix::zero(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == n)
            .ok_or_else(|| PolyzError::Invalid(format!("row {i} must have {n} entries")))?;
        for (j, e) in row.iter().enumerate() {
            let r = parse_rat(e).map_err(PolyzError::Invalid)?;
            if !r.is_integer() {
                return Err(PolyzError::Invalid("matrix entries must be integers".into()));
            }
            m[(i, j)] = r.numer().clone();
        }
    }
    TorusBundleGroup::new(m)
}

/// The character torus Hom(C, C*) x C* where C = coker(A - I): finite
/// cyclic factors from the nontrivial invariant factors plus a free
/// part, and always one extra C* for the Z direction.
#[derive(Debug, PartialEq)]
pub struct CharacterTorus {
    /// invariant factors of C larger than 1
    pub torsion: Vec<BigInt>,
    /// rank of the free part of C
    pub free_rank: usize,
}

impl CharacterTorus {
    /// Dimension of the torus, counting the C* of the Z factor.
    pub fn dim(&self) -> usize {
        self.free_rank + 1
    }
}

pub fn character_torus(g: &TorusBundleGroup) -> CharacterTorus {
    let mut m = IntMatrix::zero(g.n, g.n);
    for i in 0..g.n {
        for j in 0..g.n {
            m[(i, j)] = g.a[(i, j)].clone() - if i == j { BigInt::one() } else { BigInt::zero() };
        }
    }
    let snf = smith_normal_form(&m);
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    CharacterTorus {
        torsion: diag
            .iter()
            .filter(|d| !d.is_zero() && d.abs() != BigInt::one())
            .map(|d| d.abs())
            .collect(),
        free_rank: g.n - nonzero,
    }
}

/// The matrix of Lambda^q A on the lexicographic sorted-subset basis:
/// entry (S, T) is the minor of A with rows S and columns T.
pub fn exterior_power(a: &Matrix<Rat>, q: usize) -> Matrix<Rat> {
    let n = a.rows;
    assert!(a.is_square() && q <= n);
    let basis = subsets(n, q);
    Matrix::from_fn(basis.len(), basis.len(), |si, ti| {
        let (s, t) = (&basis[si], &basis[ti]);
        Matrix::from_fn(q, q, |i, j| a[(s[i], t[j])].clone()).det()
    })
}

/// A lambda coordinate: exact rational, conjugate pair in a quadratic
/// extension, or an irreducible factor of degree >= 3 kept symbolic.
#[derive(Clone, Debug)]
pub enum Lambda {
    Rational(Rat),
    Quadratic {
        poly: UniPoly<Rat>,
        roots: [QuadScalar; 2],
    },
    Residual(UniPoly<Rat>),
}

#[derive(Clone, Debug)]
pub struct CharPoint {
    /// character of the coinvariants; empty means trivial (and the
    /// collapsed recursion only ever produces the trivial one)
    pub chi: Vec<Rat>,
    pub lambda: Lambda,
    /// which exterior power contributed this eigenvalue
    pub provenance: String,
}

/// Per-degree characteristic variety: a finite point list.
#[derive(Debug)]
pub struct CharVariety {
    pub degree: usize,
    pub points: Vec<CharPoint>,
}

impl CharVariety {
    /// Membership of (trivial character, lambda).
    pub fn contains_lambda(&self, lambda: &QuadScalar) -> bool {
        self.points.iter().any(|p| {
            p.chi.iter().all(|c| c.is_one())
                && match &p.lambda {
                    Lambda::Rational(r) => {
                        lambda.is_rational() && &lambda.a == r
                    }
                    Lambda::Quadratic { roots, .. } => roots.iter().any(|r| r == lambda),
                    Lambda::Residual(p) => p
                        .map(|c| QuadScalar::from_rational(c.clone()))
                        .eval(lambda)
                        .is_zero(),
                }
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "points": self.points.iter().map(|p| {
                let chi: Value = if p.chi.iter().all(|c| c.is_one()) {
                    json!("trivial")
                } else {
                    json!(p.chi.iter().map(format_rat).collect::<Vec<_>>())
                };
                let lambda = match &p.lambda {
                    Lambda::Rational(r) => json!({"rational": format_rat(r)}),
                    Lambda::Quadratic { poly, .. } => json!({"poly": poly.to_string()}),
                    Lambda::Residual(poly) => json!({"poly": poly.to_string()}),
                };
                json!({"chi": chi, "lambda": lambda, "provenance": p.provenance})
            }).collect::<Vec<_>>(),
        })
    }
}

fn push_eigen_points(points: &mut Vec<CharPoint>, f: EigenFactors, provenance: &str) {
    let mut seen_rational: Vec<Rat> = Vec::new();
    for (r, _) in f.rational {
        if !seen_rational.contains(&r) {
            seen_rational.push(r.clone());
            points.push(CharPoint {
                chi: vec![],
                lambda: Lambda::Rational(r),
                provenance: provenance.to_string(),
            });
        }
    }
    for (poly, _, roots) in f.quadratic {
        points.push(CharPoint {
            chi: vec![],
            lambda: Lambda::Quadratic { poly, roots },
            provenance: provenance.to_string(),
        });
    }
    for poly in f.residual {
        points.push(CharPoint {
            chi: vec![],
            lambda: Lambda::Residual(poly),
            provenance: provenance.to_string(),
        });
    }
}

/// V^i_1(Z^n x| Z): the trivial character paired with the eigenvalues
/// of Lambda^i A and Lambda^{i-1} A (empty beyond the top degree).
pub fn charvar(g: &TorusBundleGroup, i: usize) -> Result<CharVariety, PolyzError> {
    if i > g.n + 1 {
        return Err(PolyzError::DegreeOutOfRange(i, g.n + 1));
    }
    let ar = g.a_rat();
    let mut points = Vec::new();
    for q in [i.checked_sub(1), Some(i)].into_iter().flatten() {
        if q > g.n {
            continue;
        }
        let cp = exterior_power(&ar, q).char_poly();
        push_eigen_points(&mut points, factor_rational_poly(&cp), &format!("Lambda^{q}"));
    }
    Ok(CharVariety { degree: i, points })
}

/// Twisted homology dimensions of Z^n at the rational character chi,
/// from the Koszul complex: the differential removes one index at a
/// time with coefficient chi(e_j) - 1.
pub fn koszul_homology_dims(chi: &[Rat]) -> Result<Vec<usize>, PolyzError> {
    let n = chi.len();
    if chi.iter().any(|c| c.is_zero()) {
        return Err(PolyzError::Invalid("character coordinates must be nonzero".into()));
    }
    let boundary = |q: usize| -> Matrix<Rat> {
        let src = subsets(n, q);
        let tgt = subsets(n, q - 1);
        let mut m: Matrix<Rat> = Matrix::zero(tgt.len(), src.len());
        for (col, s) in src.iter().enumerate() {
            for (pos, &idx) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(pos);
                let row = tgt.iter().position(|t| *t == rest).unwrap();
                let sign = if pos % 2 == 0 { Rat::one() } else { -Rat::one() };
                m[(row, col)] = sign * (chi[idx].clone() - Rat::one());
            }
        }
        m
    };
    let ranks: Vec<usize> = (1..=n).map(|q| boundary(q).rank()).collect();
    Ok((0..=n)
        .map(|q| {
            let dim = subsets(n, q).len();
            let out = if q >= 1 { ranks[q - 1] } else { 0 };
            let into = if q < n { ranks[q] } else { 0 };
            dim - out - into
        })
        .collect())
}

/// dim H_i(Z^n x| Z, C_rho) for rho = (chi, lambda), computed at chain
/// level: Koszul homology of Z^n at chi, then kernel and cokernel of
/// id - lambda N^{-1} where N is the induced map on homology. This is
/// the oracle that settles the eigenvalue orientation of charvar.
pub fn charvar_oracle(
    g: &TorusBundleGroup,
    chi: &[Rat],
    lambda: &QuadScalar,
    i: usize,
) -> Result<usize, PolyzError> {
    if chi.len() != g.n {
        return Err(PolyzError::Invalid(format!(
            "character has {} coordinates, expected {}",
            chi.len(),
            g.n
        )));
    }
    if i > g.n + 1 {
        return Err(PolyzError::DegreeOutOfRange(i, g.n + 1));
    }
    if lambda.is_zero() {
        return Err(PolyzError::Invalid("lambda must be a unit".into()));
    }
    let dims = koszul_homology_dims(chi)?;
    let ar = g.a_rat();
    // dim coker = dim ker of id - lambda (Lambda^q A)^{-1} on H_q; the
    // homology is the full exterior power when chi is trivial and zero
    // otherwise, so the induced map is Lambda^q A itself
    let defect = |q: usize| -> usize {
        if q > g.n || dims[q] == 0 {
            return 0;
        }
        let nq = exterior_power(&ar, q).map(|r| QuadScalar::from_rational(r.clone()));
        let inv = nq.inverse().expect("exterior power of a unimodular matrix");
        let m = Matrix::<QuadScalar>::identity(inv.rows).sub(&inv.scale(lambda));
        inv.rows - m.rank()
    };
    let h0 = if i <= g.n { defect(i) } else { 0 };
    let h1 = if i >= 1 { defect(i - 1) } else { 0 };
    Ok(h0 + h1)
}

/// One inductive step of the composition-series recursion: the current
/// stage is Z^k, presented by its per-degree characteristic varieties
/// as explicit character coordinates, and the next stage is Z^k x|_B Z.
/// Every supplied character must be a rational point; an irrational
/// coordinate aborts the step instead of being approximated.
pub fn tower_extend(
    stage_charvar: &[Vec<Vec<QuadScalar>>],
    b: &IntMatrix,
    i: usize,
) -> Result<CharVariety, PolyzError> {
    let g = TorusBundleGroup::new(b.clone())?;
    let k = g.n;
    if stage_charvar.len() != k + 1 {
        return Err(PolyzError::Invalid(format!(
            "stage data must cover degrees 0..={k}"
        )));
    }
    if i > k + 1 {
        return Err(PolyzError::DegreeOutOfRange(i, k + 1));
    }
    let ar = g.a_rat();
    let mut points = Vec::new();
    for q in [i.checked_sub(1), Some(i)].into_iter().flatten() {
        if q > k {
            continue;
        }
        for chi in &stage_charvar[q] {
            if chi.iter().any(|c| !c.is_rational()) {
                return Err(PolyzError::IrrationalIntermediateCharacter);
            }
            let chi_rat: Vec<Rat> = chi.iter().map(|c| c.a.clone()).collect();
            if chi_rat.len() != k {
                return Err(PolyzError::Invalid(format!(
                    "character has {} coordinates, expected {k}",
                    chi_rat.len()
                )));
            }
            if koszul_homology_dims(&chi_rat)?[q] == 0 {
                continue;
            }
            // nonvanishing twisted homology forces the trivial character,
            // where the induced monodromy is the exterior power of B
            let cp = exterior_power(&ar, q).char_poly();
            push_eigen_points(&mut points, factor_rational_poly(&cp), &format!("Lambda^{q}"));
        }
    }
    Ok(CharVariety { degree: i, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rint};
    use crate::sampling::Sampler;

    fn sol() -> TorusBundleGroup {
        TorusBundleGroup::new(IntMatrix::from_i64(vec![vec![2, 1], vec![1, 1]])).unwrap()
    }

    fn unipotent() -> TorusBundleGroup {
        TorusBundleGroup::new(IntMatrix::from_i64(vec![vec![1, 1], vec![0, 1]])).unwrap()
    }

    #[test]
    fn unimodularity_enforced() {
        assert!(matches!(
            TorusBundleGroup::new(IntMatrix::from_i64(vec![vec![2, 0], vec![0, 1]])),
            Err(PolyzError::NotUnimodular)
        ));
        sol();
    }

    #[test]
    fn character_torus_examples() {
        // det(A - I) = -1: coinvariants vanish, torus is a single C*
        assert_eq!(
            character_torus(&sol()),
            CharacterTorus { torsion: vec![], free_rank: 0 }
        );
        // trivial extension of Z: coinvariants Z, torus (C*)^2
        let z2 = TorusBundleGroup::new(IntMatrix::from_i64(vec![vec![1]])).unwrap();
        assert_eq!(
            character_torus(&z2),
            CharacterTorus { torsion: vec![], free_rank: 1 }
        );
        assert_eq!(character_torus(&z2).dim(), 2);
        // unipotent bundle: coinvariants Z
        assert_eq!(
            character_torus(&unipotent()),
            CharacterTorus { torsion: vec![], free_rank: 1 }
        );
    }

    #[test]
    fn exterior_power_small_cases() {
        let a = sol().a_rat();
        assert_eq!(exterior_power(&a, 0), Matrix::identity(1));
        assert_eq!(exterior_power(&a, 1), a);
        let top = exterior_power(&a, 2);
        assert_eq!(top.rows, 1);
        assert_eq!(top[(0, 0)], a.det());
    }

    #[test]
    fn exterior_power_is_multiplicative() {
        let mut s = Sampler::new(2);
        let a = Matrix::from_fn(3, 3, |_, _| s.rat());
        let b = Matrix::from_fn(3, 3, |_, _| s.rat());
        for q in 0..=3 {
            assert_eq!(
                exterior_power(&a.mul(&b), q),
                exterior_power(&a, q).mul(&exterior_power(&b, q))
            );
        }
    }

    #[test]
    fn sol_charvar_degree_one() {
        let v = charvar(&sol(), 1).unwrap();
        // {1} from Lambda^0, the roots of x^2 - 3x + 1 from Lambda^1
        assert!(v.contains_lambda(&QuadScalar::from_rational(rint(1))));
        let golden = QuadScalar::new(rat(3, 2), rat(1, 2), rint(5));
        assert!(v.contains_lambda(&golden));
        assert!(v.contains_lambda(&golden.conj()));
        assert_eq!(v.points.len(), 2);
        for non in [rint(2), rint(3), rint(-1)] {
            assert!(!v.contains_lambda(&QuadScalar::from_rational(non)));
        }
    }

    #[test]
    fn sol_charvar_boundary_degrees() {
        let v0 = charvar(&sol(), 0).unwrap();
        assert_eq!(v0.points.len(), 1);
        assert!(v0.contains_lambda(&QuadScalar::from_rational(rint(1))));
        // top degree: only Lambda^n contributes, with eigenvalue det A
        let v3 = charvar(&sol(), 3).unwrap();
        assert_eq!(v3.points.len(), 1);
        assert!(v3.contains_lambda(&QuadScalar::from_rational(rint(1))));
        assert_eq!(v3.points[0].provenance, "Lambda^2");
        assert!(charvar(&sol(), 4).is_err());
    }

    #[test]
    fn unipotent_charvar_is_trivial() {
        for i in 0..=3 {
            let v = charvar(&unipotent(), i).unwrap();
            for p in &v.points {
                match &p.lambda {
                    Lambda::Rational(r) => assert!(r.is_one()),
                    other => panic!("unexpected {other:?}"),
                }
            }
        }
    }

    #[test]
    fn koszul_dims_detect_the_trivial_character() {
        assert_eq!(koszul_homology_dims(&[rint(1), rint(1)]).unwrap(), vec![1, 2, 1]);
        assert_eq!(koszul_homology_dims(&[rint(1), rint(-1)]).unwrap(), vec![0, 0, 0]);
        assert_eq!(koszul_homology_dims(&[rat(2, 3)]).unwrap(), vec![0, 0]);
        assert!(koszul_homology_dims(&[rint(0)]).is_err());
    }

    #[test]
    fn oracle_matches_charvar_on_sol() {
        let g = sol();
        let one = vec![rint(1), rint(1)];
        assert_eq!(charvar_oracle(&g, &one, &QuadScalar::from_rational(rint(1)), 0).unwrap(), 1);
        assert_eq!(charvar_oracle(&g, &one, &QuadScalar::from_rational(rint(2)), 1).unwrap(), 0);
        assert!(charvar_oracle(&g, &one, &QuadScalar::from_rational(rint(1)), 1).unwrap() >= 1);
        let golden = QuadScalar::new(rat(3, 2), rat(1, 2), rint(5));
        assert!(charvar_oracle(&g, &one, &golden, 1).unwrap() >= 1);
        assert!(charvar_oracle(&g, &one, &golden.conj(), 1).unwrap() >= 1);
        for non in [rint(2), rint(3), rint(-1)] {
            assert_eq!(
                charvar_oracle(&g, &one, &QuadScalar::from_rational(non), 1).unwrap(),
                0
            );
        }
        // nontrivial characters are never resonant
        let chi = vec![rint(2), rint(1)];
        assert_eq!(charvar_oracle(&g, &chi, &QuadScalar::from_rational(rint(1)), 1).unwrap(), 0);
    }

    #[test]
    fn oracle_agreement_sampled() {
        let g = sol();
        let one = vec![rint(1), rint(1)];
        let mut s = Sampler::new(9);
        for i in 0..=3 {
            let v = charvar(&g, i).unwrap();
            for _ in 0..20 {
                let lam = QuadScalar::from_rational(s.nonzero_rat());
                let member = v.contains_lambda(&lam);
                let dim = charvar_oracle(&g, &one, &lam, i).unwrap();
                assert_eq!(member, dim >= 1);
            }
        }
    }

    #[test]
    fn tower_steps() {
        let trivial = |k: usize| -> Vec<Vec<Vec<QuadScalar>>> {
            (0..=k)
                .map(|_| vec![vec![QuadScalar::from_rational(rint(1)); k]])
                .collect()
        };
        // Z extended trivially: V^i(Z^2) = {(1, 1)} in every degree
        let b1 = IntMatrix::from_i64(vec![vec![1]]);
        for i in 0..=2 {
            let v = tower_extend(&trivial(1), &b1, i).unwrap();
            assert!(!v.points.is_empty());
            assert!(v.contains_lambda(&QuadScalar::from_rational(rint(1))));
            for p in &v.points {
                assert!(matches!(&p.lambda, Lambda::Rational(r) if r.is_one()));
            }
        }
        // integral Heisenberg as the second stage over the unipotent matrix
        let b2 = IntMatrix::from_i64(vec![vec![1, 1], vec![0, 1]]);
        for i in 0..=3 {
            let v = tower_extend(&trivial(2), &b2, i).unwrap();
            for p in &v.points {
                assert!(matches!(&p.lambda, Lambda::Rational(r) if r.is_one()));
            }
        }
        // an irrational stage character is refused
        let golden = QuadScalar::new(rat(3, 2), rat(1, 2), rint(5));
        let mut stage = trivial(2);
        stage[1].push(vec![golden, QuadScalar::from_rational(rint(1))]);
        assert!(matches!(
            tower_extend(&stage, &b2, 1),
            Err(PolyzError::IrrationalIntermediateCharacter)
        ));
    }

    #[test]
    fn tower_matches_direct_charvar() {
        let trivial: Vec<Vec<Vec<QuadScalar>>> = (0..=2)
            .map(|_| vec![vec![QuadScalar::from_rational(rint(1)); 2]])
            .collect();
        let b = IntMatrix::from_i64(vec![vec![2, 1], vec![1, 1]]);
        for i in 0..=3 {
            let direct = charvar(&sol(), i).unwrap();
            let stepped = tower_extend(&trivial, &b, i).unwrap();
            assert_eq!(direct.points.len(), stepped.points.len());
            let golden = QuadScalar::new(rat(3, 2), rat(1, 2), rint(5));
            for lam in [QuadScalar::from_rational(rint(1)), golden] {
                assert_eq!(direct.contains_lambda(&lam), stepped.contains_lambda(&lam));
            }
        }
    }

    #[test]
    fn json_round_trip_and_output_shape() {
        let v: Value = serde_json::from_str(r#"{"n":2,"matrix":[[2,1],[1,1]]}"#).unwrap();
        let g = bundle_from_json(&v).unwrap();
        let cv = charvar(&g, 1).unwrap();
        let out = cv.to_json();
        assert_eq!(out["degree"], 1);
        let pts = out["points"].as_array().unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0]["chi"], "trivial");
        assert_eq!(pts[0]["lambda"]["rational"], "1");
        assert_eq!(pts[1]["lambda"]["poly"], "x^2 - 3x + 1");
        assert!(bundle_from_json(
            &serde_json::from_str::<Value>(r#"{"n":2,"matrix":[[2,1],[1,2]]}"#).unwrap()
        )
        .is_err());
    }
}
