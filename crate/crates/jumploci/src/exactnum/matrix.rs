//! Dense exact matrices over a scalar field.

use super::scalar::{Field, Rat};
use super::unipoly::UniPoly;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<T: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self[(i, k)].clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Exact rank by fraction-free (Bareiss-style) elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = T::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..a.cols {
            if row >= a.rows {
                break;
            }
            // pivot search
            let pivot = (row..a.rows).find(|&r| !a[(r, col)].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => continue,
            };
            if p != row {
                a.swap_rows(p, row);
            }
            let pv = a[(row, col)].clone();
            for r in row + 1..a.rows {
                for c in col + 1..a.cols {
                    let num = a[(r, c)].clone() * pv.clone()
                        - a[(r, col)].clone() * a[(row, c)].clone();
                    a[(r, c)] = num / prev.clone();
                }
                a[(r, col)] = T::zero();
            }
            prev = pv;
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row >= a.rows {
                break;
            }
            let pivot = (row..a.rows).find(|&r| !a[(r, col)].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => continue,
            };
            if p != row {
                a.swap_rows(p, row);
            }
            let inv = a[(row, col)].inv();
            for c in col..a.cols {
                a[(row, c)] = a[(row, c)].clone() * inv.clone();
            }
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let factor = a[(r, col)].clone();
                    for c in col..a.cols {
                        let t = factor.clone() * a[(row, c)].clone();
                        a[(r, c)] = a[(r, c)].clone() - t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Exact basis of the right null space; empty iff injective.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(pi, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M x = b exactly; None if inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![T::zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(pi, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact inverse; None if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one(); // empty product
        }
        let mut a = self.clone();
        let mut prev = T::one();
        let mut sign = false;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => return T::zero(),
            };
            if p != col {
                a.swap_rows(p, col);
                sign = !sign;
            }
            let pv = a[(col, col)].clone();
            for r in col + 1..n {
                for c in col + 1..n {
                    let num =
                        a[(r, c)].clone() * pv.clone() - a[(r, col)].clone() * a[(col, c)].clone();
                    a[(r, c)] = num / prev.clone();
                }
                a[(r, col)] = T::zero();
            }
            prev = pv;
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Monic characteristic polynomial det(x*I - M) by the
    /// Faddeev–LeVerrier recursion (exact over any field of char 0).
    pub fn char_poly(&self) -> UniPoly<T> {
        assert!(self.is_square(), "char_poly needs a square matrix");
        let n = self.rows;
        // coeffs[k] multiplies x^k; coeffs[n] = 1
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Matrix::<T>::zero(n, n); // M_0 = 0
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{n-k+1} * I
            let mut am = self.mul(&m);
            for i in 0..n {
                am[(i, i)] = am[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            m = am;
            let t = self.mul(&m).trace();
            let kk = int_to_field::<T>(k as i64);
            coeffs[n - k] = -(t / kk);
        }
        UniPoly::new(coeffs)
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut t = T::zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

pub fn int_to_field<T: Field>(n: i64) -> T {
    T::from_rat(&Rat::from_integer(n.into()))
}

impl Matrix<Rat> {
    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(super::scalar::rint).collect())
                .collect(),
        )
    }
}

impl<T: Field> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Field> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{}", x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::rint;
    use num_traits::Zero;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Rat>::zero(3, 3).rank(), 0);
        assert_eq!(Matrix::<Rat>::identity(4).rank(), 4);
        assert_eq!(Matrix::from_i64(vec![vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Rat>::identity(3).kernel_basis().is_empty());
        assert_eq!(Matrix::<Rat>::zero(2, 2).kernel_basis().len(), 2);
        let k = Matrix::from_i64(vec![vec![1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // basis vector proportional to (1, -1)
        assert_eq!(k[0][0].clone() + k[0][1].clone(), Rat::zero());
    }

    #[test]
    fn char_poly_examples() {
        let m = Matrix::from_i64(vec![vec![2, 1], vec![1, 1]]);
        // x^2 - 3x + 1
        assert_eq!(m.char_poly().coeffs(), &[rint(1), rint(-3), rint(1)]);
        let id = Matrix::<Rat>::identity(2);
        assert_eq!(id.char_poly().coeffs(), &[rint(1), rint(-2), rint(1)]);
        let diag = Matrix::from_i64(vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(diag.char_poly().coeffs(), &[rint(-1), rint(0), rint(1)]);
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_i64(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det(), rint(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_i64(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), 3);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(vec![vec![1, 1], vec![0, 1]]);
        let x = m.solve(&[rint(3), rint(1)]).unwrap();
        assert_eq!(x, vec![rint(2), rint(1)]);
        let sing = Matrix::from_i64(vec![vec![1, 1], vec![1, 1]]);
        assert!(sing.solve(&[rint(0), rint(1)]).is_none());
    }
}
