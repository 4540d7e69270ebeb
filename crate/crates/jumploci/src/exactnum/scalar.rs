//! Exact scalar domains: arbitrary-precision rationals and a single
//! quadratic extension `Q(sqrt(d))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// The ground field for all linear algebra: exact rationals.
pub type Rat = BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Everything our elimination routines need from a scalar domain.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// `a + b*sqrt(d)` with a fixed squarefree discriminant `d`.
///
/// A value with `b = 0` is considered rational and combines with any
/// discriminant; mixing two distinct irrational discriminants is a logic
/// error and panics.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadScalar {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

impl QuadScalar {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        assert!(
            b.is_zero() || !is_rational_square(&d),
            "discriminant must not be a rational square"
        );
        let q = QuadScalar { a, b, d };
        q.normalized()
    }

    pub fn from_rational(a: Rat) -> Self {
        QuadScalar {
            a,
            b: Rat::zero(),
            d: Rat::zero(),
        }
    }

    /// sqrt(d) itself.
    pub fn sqrt_d(d: Rat) -> Self {
        QuadScalar::new(Rat::zero(), Rat::one(), d)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = Rat::zero();
        }
        self
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `a^2 - b^2 d`; zero iff the element is zero.
    pub fn norm(&self) -> Rat {
        self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * self.d.clone()
    }

    /// Squared complex modulus for a negative discriminant, where the value
    /// is `a + b*i*sqrt(|d|)`. For nonnegative `d` the number is real and
    /// `sign_real`/`abs_ge` give exact comparisons instead.
    pub fn modulus_sq(&self) -> Rat {
        assert!(
            self.d.is_negative(),
            "modulus_sq needs a negative discriminant; use sign_real for real values"
        );
        self.a.clone() * self.a.clone() + self.b.clone() * self.b.clone() * (-self.d.clone())
    }

    /// Sign of the real number `a + b*sqrt(d)` for `d > 0`.
    pub fn sign_real(&self) -> i32 {
        assert!(self.d.is_positive() || self.b.is_zero());
        if self.b.is_zero() {
            return rat_sign(&self.a);
        }
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sa == sb {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sb == 0 {
            return sa;
        }
        // a and b have opposite signs: compare a^2 with b^2 d
        let lhs = self.a.clone() * self.a.clone();
        let rhs = self.b.clone() * self.b.clone() * self.d.clone();
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Exact |z| >= bound test, covering both real (d > 0) and complex
    /// conjugate (d < 0) quadratic values.
    pub fn abs_ge(&self, bound: &Rat) -> bool {
        if self.is_rational() {
            return self.a.abs() >= *bound;
        }
        if self.d.is_negative() {
            return self.modulus_sq() >= bound.clone() * bound.clone();
        }
        // real: |z| >= bound  <=>  z - bound >= 0 or z + bound <= 0
        let upper = self.clone() - QuadScalar::from_rational(bound.clone());
        let lower = self.clone() + QuadScalar::from_rational(bound.clone());
        upper.sign_real() >= 0 || lower.sign_real() <= 0
    }

    fn merge_d(&self, other: &Self) -> Rat {
        if self.b.is_zero() {
            other.d.clone()
        } else if other.b.is_zero() {
            self.d.clone()
        } else {
            assert_eq!(self.d, other.d, "mixed quadratic discriminants");
            self.d.clone()
        }
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// True iff `r` is the square of a rational.
pub fn is_rational_square(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    if r.is_zero() {
        return true;
    }
    let (n, d) = (r.numer(), r.denom());
    is_int_square(n) && is_int_square(d)
}

fn is_int_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &(&s * &s) == n
}

/// Integer square root of a perfect square, as a rational.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if !is_rational_square(r) {
        return None;
    }
    Some(Rat::new(r.numer().sqrt(), r.denom().sqrt()))
}

/// Strips square factors: returns (s, m) with r = m^2 * s, s squarefree-ish.
/// Works on numerator and denominator separately by trial division; adequate
/// for the small discriminants that arise from desk-scale matrices.
pub fn squarefree_part(r: &Rat) -> (Rat, Rat) {
    let (sn, mn) = squarefree_int(r.numer());
    let (sd, md) = squarefree_int(r.denom());
    // r = (mn^2 sn) / (md^2 sd) = (mn/(md sd))^2 * (sn sd)
    let s = Rat::from_integer(&sn * &sd);
    let m = Rat::new(mn, &md * &sd);
    (s, m)
}

fn squarefree_int(n: &BigInt) -> (BigInt, BigInt) {
    let mut n = n.clone();
    let mut m = BigInt::one();
    let sign = if n.is_negative() {
        n = -n;
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u64);
    while &(&p * &p) <= &n && p <= limit {
        let p2 = &p * &p;
        while (&n % &p2).is_zero() {
            n /= &p2;
            m *= &p;
        }
        p += 1;
    }
    (sign * n, m)
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        QuadScalar::from_rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        QuadScalar::from_rational(Rat::one())
    }
}

impl Add for QuadScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.merge_d(&rhs);
        QuadScalar {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d,
        }
        .normalized()
    }
}

impl Sub for QuadScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for QuadScalar {
    type Output = Self;
    fn neg(self) -> Self {
        QuadScalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for QuadScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.merge_d(&rhs);
        let a = self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.b.clone() * d.clone();
        let b = self.a * rhs.b + self.b * rhs.a;
        QuadScalar { a, b, d }.normalized()
    }
}

impl Div for QuadScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let n = rhs.norm();
        let conj = rhs.conj();
        let num = self * conj;
        QuadScalar {
            a: num.a / n.clone(),
            b: num.b / n,
            d: num.d,
        }
        .normalized()
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Field for QuadScalar {
    fn from_rat(r: &Rat) -> Self {
        QuadScalar::from_rational(r.clone())
    }
}
