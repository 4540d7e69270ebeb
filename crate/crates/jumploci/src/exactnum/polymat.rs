//! Matrices over Q[x]: diagonalization by the Euclidean algorithm,
//! used to locate the parameter values where the rank of a pencil drops.

use super::scalar::Rat;
use super::unipoly::UniPoly;

pub type PolyMatrix = Vec<Vec<UniPoly<Rat>>>;

pub fn poly_matrix_zero(rows: usize, cols: usize) -> PolyMatrix {
    vec![vec![UniPoly::zero(); cols]; rows]
}

/// Diagonal form of a matrix over Q[x] (no transform tracking), computed by
/// repeated pivoting on a minimal-degree entry and Euclidean reduction.
/// Returns the monic nonzero diagonal entries; their count is the generic
/// rank and their roots are exactly the rank-drop parameter values.
pub fn diagonalize(mut m: PolyMatrix) -> Vec<UniPoly<Rat>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    loop {
        if t >= rows || t >= cols {
            break;
        }
        loop {
            // minimal-degree nonzero pivot in the remaining block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && pivot
                            .map_or(true, |(pi, pj)| m[i][j].degree() < m[pi][pj].degree())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return diag, // rest of the block is zero
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let (q, _) = m[i][t].div_rem(&m[t][t]);
                    for j in t..cols {
                        let s = q.mul(&m[t][j]);
                        m[i][j] = m[i][j].sub(&s);
                    }
                    if !m[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let (q, _) = m[t][j].div_rem(&m[t][t]);
                    for i in t..rows {
                        let s = q.mul(&m[i][t]);
                        m[i][j] = m[i][j].sub(&s);
                    }
                    if !m[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        diag.push(m[t][t].monic());
        t += 1;
    }
    diag
}

/// Product of the non-constant diagonal invariants: a single polynomial
/// whose roots are the parameter values where rank(M(x)) < generic rank.
pub fn rank_drop_polynomial(diag: &[UniPoly<Rat>]) -> UniPoly<Rat> {
    let mut acc = UniPoly::constant(Rat::from_integer(1.into()));
    for d in diag {
        if !d.is_constant() {
            acc = acc.mul(d);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::{rint, Rat};
    use num_traits::{One, Zero};

    fn c(v: i64) -> UniPoly<Rat> {
        UniPoly::constant(rint(v))
    }

    fn x_minus(v: i64) -> UniPoly<Rat> {
        UniPoly::new(vec![rint(-v), Rat::one()])
    }

    #[test]
    fn constant_matrix_full_rank() {
        let m = vec![vec![c(1), c(2)], vec![c(3), c(4)]];
        let d = diagonalize(m);
        assert_eq!(d.len(), 2);
        assert!(rank_drop_polynomial(&d).is_constant());
    }

    #[test]
    fn pencil_rank_drop_at_eigenvalues() {
        // diag(x, x-1): generic rank 2, drops at 0 and 1
        let m = vec![
            vec![x_minus(0), c(0)],
            vec![c(0), x_minus(1)],
        ];
        let d = diagonalize(m);
        assert_eq!(d.len(), 2);
        let drop = rank_drop_polynomial(&d);
        assert!(drop.eval(&rint(0)).is_zero());
        assert!(drop.eval(&rint(1)).is_zero());
        assert!(!drop.eval(&rint(2)).is_zero());
    }

    #[test]
    fn generic_rank_deficient() {
        // rank 1 for every x
        let m = vec![
            vec![x_minus(0), x_minus(0)],
            vec![x_minus(0), x_minus(0)],
        ];
        let d = diagonalize(m);
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn diag_matches_pointwise_rank() {
        use crate::exactnum::matrix::Matrix;
        // mix of constants and pencils
        let m = vec![
            vec![x_minus(2), c(1), c(0)],
            vec![c(0), x_minus(3), c(1)],
            vec![c(0), c(0), x_minus(2)],
        ];
        let d = diagonalize(m.clone());
        let drop = rank_drop_polynomial(&d);
        for v in [-1i64, 0, 1, 2, 3, 4, 5] {
            let mv = Matrix::from_fn(3, 3, |i, j| m[i][j].eval(&rint(v)));
            let expect = if drop.eval(&rint(v)).is_zero() {
                assert!(mv.rank() < d.len());
            } else {
                assert_eq!(mv.rank(), d.len());
            };
            let _ = expect;
        }
    }
}
