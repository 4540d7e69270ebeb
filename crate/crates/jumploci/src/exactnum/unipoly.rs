//! Univariate polynomials over an exact field, with the factorization
//! support needed for eigenvalue extraction: rational roots, irreducible
//! quadratics (roots in a quadratic extension), symbolic residual factors.

use super::scalar::{rational_sqrt, squarefree_part, Field, QuadScalar, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients stored low-to-high; no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UniPoly<T: Field> {
    coeffs: Vec<T>,
}

impl<T: Field> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: T) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| self.coeff(i) - other.coeff(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = vec![T::zero(); self.coeffs.len()];
        let dlead = divisor.leading();
        let ddeg = divisor.degree();
        while !rem.is_zero() && rem.degree() >= ddeg {
            let shift = rem.degree() - ddeg;
            let factor = rem.leading() / dlead.clone();
            quo[shift] = quo[shift].clone() + factor.clone();
            let sub = divisor.mul(&UniPoly::monomial(factor, shift));
            rem = rem.sub(&sub);
        }
        (UniPoly::new(quo), rem)
    }

    pub fn divides_exactly(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * super::matrix::int_to_field::<T>((i + 1) as i64))
                .collect(),
        )
    }

    /// Substitute x -> c*x.
    pub fn scale_arg(&self, c: &T) -> Self {
        let mut pow = T::one();
        UniPoly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let r = a.clone() * pow.clone();
                    pow = pow.clone() * c.clone();
                    r
                })
                .collect(),
        )
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // route the sign through the separator: "x^2 - 3x + 1"
            let s = format!("{}", c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if i > 0 && mag == "1" {
                String::new()
            } else if mag.contains('/') || mag.contains(' ') {
                format!("({})", mag)
            } else {
                mag
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Field> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Complete factorization over Q into linear factors, irreducible
/// quadratics, and symbolic residual factors of degree >= 3.
#[derive(Clone, Debug)]
pub struct EigenFactors {
    /// (root, multiplicity)
    pub rational: Vec<(Rat, usize)>,
    /// (monic irreducible quadratic, multiplicity, conjugate roots)
    pub quadratic: Vec<(UniPoly<Rat>, usize, [QuadScalar; 2])>,
    /// monic residual factors of degree >= 3, left symbolic
    pub residual: Vec<UniPoly<Rat>>,
}

impl EigenFactors {
    pub fn contains_rational(&self, r: &Rat) -> bool {
        self.rational.iter().any(|(x, _)| x == r)
    }

    pub fn contains_quad(&self, q: &QuadScalar) -> bool {
        if q.is_rational() {
            return self.contains_rational(&q.a);
        }
        self.quadratic
            .iter()
            .any(|(_, _, roots)| roots.iter().any(|r| r == q))
    }

    pub fn is_empty(&self) -> bool {
        self.rational.is_empty() && self.quadratic.is_empty() && self.residual.is_empty()
    }
}

/// Factor a rational polynomial: all rational roots with multiplicity,
/// then irreducible quadratics when the residual is a product of
/// quadratics we can split off, the rest symbolic.
pub fn factor_rational_poly(p: &UniPoly<Rat>) -> EigenFactors {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut rational = Vec::new();
    let mut work = p.monic();

    // rational root extraction with multiplicity
    loop {
        if work.degree() == 0 {
            break;
        }
        match find_rational_root(&work) {
            Some(r) => {
                let lin = UniPoly::new(vec![-r.clone(), Rat::one()]);
                let mut mult = 0;
                while let Some(q) = work.divides_exactly(&lin) {
                    work = q;
                    mult += 1;
                }
                rational.push((r, mult));
            }
            None => break,
        }
    }

    let mut quadratic = Vec::new();
    let mut residual = Vec::new();
    match work.degree() {
        0 => {}
        2 => {
            let roots = quadratic_roots(&work);
            quadratic.push((work.clone(), 1, roots));
        }
        4 => {
            // a degree-4 residual with no rational roots might be a
            // perfect square of an irreducible quadratic
            if let Some(q) = quadratic_square_root(&work) {
                let roots = quadratic_roots(&q);
                quadratic.push((q, 2, roots));
            } else {
                residual.push(work);
            }
        }
        _ => residual.push(work),
    }

    EigenFactors {
        rational,
        quadratic,
        residual,
    }
}

/// Roots of a monic rational quadratic with non-square discriminant.
fn quadratic_roots(q: &UniPoly<Rat>) -> [QuadScalar; 2] {
    assert_eq!(q.degree(), 2);
    let q = q.monic();
    let b = q.coeff(1);
    let c = q.coeff(0);
    let disc = b.clone() * b.clone() - Rat::from_integer(4.into()) * c;
    let (d, m) = squarefree_part(&disc); // disc = m^2 d
    let half = Rat::new(BigInt::one(), 2.into());
    let a0 = -b * half.clone();
    let b0 = m * half;
    [
        QuadScalar::new(a0.clone(), b0.clone(), d.clone()),
        QuadScalar::new(a0, -b0, d),
    ]
}

/// If p = q^2 for a monic quadratic q, return q.
fn quadratic_square_root(p: &UniPoly<Rat>) -> Option<UniPoly<Rat>> {
    if p.degree() != 4 {
        return None;
    }
    let b = p.coeff(3) / Rat::from_integer(2.into());
    let c = p.coeff(2) - b.clone() * b.clone();
    let c = c / Rat::from_integer(2.into());
    let q = UniPoly::new(vec![c, b, Rat::one()]);
    if q.mul(&q) == *p {
        Some(q)
    } else {
        None
    }
}

/// Rational root test on the primitive integer form of p.
fn find_rational_root(p: &UniPoly<Rat>) -> Option<Rat> {
    if p.degree() == 0 {
        return None;
    }
    if p.coeff(0).is_zero() {
        return Some(Rat::zero());
    }
    if p.degree() == 1 {
        return Some(-p.coeff(0) / p.coeff(1));
    }
    // clear denominators
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    // degree 2: go through the discriminant instead of divisor search
    if p.degree() == 2 {
        let q = p.monic();
        let b = q.coeff(1);
        let c = q.coeff(0);
        let disc = b.clone() * b.clone() - Rat::from_integer(4.into()) * c;
        if let Some(s) = rational_sqrt(&disc) {
            let half = Rat::new(BigInt::one(), 2.into());
            return Some((-b + s) * half);
        }
        return None;
    }
    for pp in divisors(&a0) {
        for qq in divisors(&an) {
            for sign in [1i64, -1] {
                let cand = Rat::new(&pp * BigInt::from(sign), qq.clone());
                if p.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &(&d * &d) <= n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::{rat, rint};

    fn poly(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(cs.iter().map(|&c| rint(c)).collect())
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = poly(&[1, 0, -3, 2]); // 2x^3 - 3x^2 + 1
        let b = poly(&[-1, 1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_common_factor() {
        let a = poly(&[-1, 0, 1]); // x^2 - 1
        let b = poly(&[-1, 1]); // x - 1
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn factor_x2_minus_3x_plus_1_is_irreducible_quadratic() {
        let p = poly(&[1, -3, 1]);
        let f = factor_rational_poly(&p);
        assert!(f.rational.is_empty());
        assert_eq!(f.quadratic.len(), 1);
        let (_, mult, roots) = &f.quadratic[0];
        assert_eq!(*mult, 1);
        // roots (3 +- sqrt 5)/2
        assert_eq!(roots[0].d, rint(5));
        assert_eq!(roots[0].a, rat(3, 2));
        // the roots actually solve the polynomial
        for r in roots {
            let v = r.clone() * r.clone() - QuadScalar::from_rational(rint(3)) * r.clone()
                + QuadScalar::from_rational(rint(1));
            assert!(num_traits::Zero::is_zero(&v));
        }
    }

    #[test]
    fn factor_repeated_rational_root() {
        // (x-3)^2
        let p = poly(&[9, -6, 1]);
        let f = factor_rational_poly(&p);
        assert_eq!(f.rational, vec![(rint(3), 2)]);
        assert!(f.quadratic.is_empty());
    }

    #[test]
    fn factor_nilpotent_block() {
        let p = poly(&[0, 0, 1]); // x^2
        let f = factor_rational_poly(&p);
        assert_eq!(f.rational, vec![(rint(0), 2)]);
    }

    #[test]
    fn factor_degree3_residual_stays_symbolic() {
        // x^3 - x - 1 has no rational roots
        let p = poly(&[-1, -1, 0, 1]);
        let f = factor_rational_poly(&p);
        assert!(f.rational.is_empty());
        assert_eq!(f.residual.len(), 1);
        assert_eq!(f.residual[0].degree(), 3);
    }

    #[test]
    fn factor_square_of_quadratic() {
        let q = poly(&[1, -3, 1]);
        let f = factor_rational_poly(&q.mul(&q));
        assert_eq!(f.quadratic.len(), 1);
        assert_eq!(f.quadratic[0].1, 2);
    }

    #[test]
    fn scale_arg_substitutes() {
        let p = poly(&[1, 2, 3]); // 3x^2 + 2x + 1
        let s = p.scale_arg(&rint(2)); // 12x^2 + 4x + 1
        assert_eq!(s.coeffs(), &[rint(1), rint(4), rint(12)]);
    }
}
