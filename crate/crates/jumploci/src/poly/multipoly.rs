//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are named; the variable list is kept sorted and deduplicated,
//! so two polynomials over different variable sets combine by aligning to
//! the sorted union. Terms live in a BTreeMap keyed by exponent vectors,
//! which makes every representation canonical and comparisons exact.

use crate::exactnum::{Rat, UniPoly};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: vec![],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        MultiPoly { vars: vec![], terms }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rat::one())
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rat::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Monomial c * prod v^e over the given (not necessarily sorted) vars.
    pub fn monomial(c: Rat, powers: &[(&str, u32)]) -> Self {
        let mut p = MultiPoly::constant(c);
        for (v, e) in powers {
            for _ in 0..*e {
                p = p.mul(&MultiPoly::var(v));
            }
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Iterate (exponents aligned to vars(), coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Total degree in a subset of the variables.
    pub fn degree_in(&self, block: &[String]) -> u32 {
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| block.iter().position(|b| b == v).map(|_| 0usize))
            .collect();
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .zip(&idx)
                    .filter(|(_, i)| i.is_some())
                    .map(|(x, _)| *x)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    /// Re-express over a superset of the current variables (sorted union
    /// computed by the caller). Internal plumbing for binary operations.
    fn aligned_to(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("var superset"))
            .collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; vars.len()];
            for (k, &exp) in e.iter().enumerate() {
                ne[map[k]] = exp;
            }
            terms.insert(ne, c.clone());
        }
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    fn merged_vars(&self, other: &Self) -> Vec<String> {
        let mut v: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Drop variables that no longer occur in any term.
    fn pruned(mut self) -> Self {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars: Vec<String> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let ne: Vec<u32> = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(x, _)| *x)
                    .collect();
                (ne, c.clone())
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let vars = self.merged_vars(other);
        let a = self.aligned_to(&vars);
        let b = other.aligned_to(&vars);
        let mut terms = a.terms;
        for (e, c) in b.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        MultiPoly { vars, terms }.pruned()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let vars = self.merged_vars(other);
        let a = self.aligned_to(&vars);
        let b = other.aligned_to(&vars);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
                *entry += ca.clone() * cb.clone();
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        MultiPoly { vars, terms }.pruned()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = MultiPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Full evaluation; every variable must be assigned.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Rat {
        let vals: Vec<&Rat> = self
            .vars
            .iter()
            .map(|v| point.get(v).unwrap_or_else(|| panic!("unassigned variable {v}")))
            .collect();
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t *= vals[k].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute polynomials for a subset of the variables.
    pub fn substitute(&self, map: &BTreeMap<String, MultiPoly>) -> Self {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (k, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match map.get(&self.vars[k]) {
                    Some(p) => t = t.mul(&p.pow(exp)),
                    None => t = t.mul(&MultiPoly::var(&self.vars[k]).pow(exp)),
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Rename a variable; the new name must not collide with an existing one.
    pub fn rename_var(&self, from: &str, to: &str) -> Self {
        if !self.vars.iter().any(|v| v == from) {
            return self.clone();
        }
        assert!(!self.vars.iter().any(|v| v == to), "name collision");
        let mut map = BTreeMap::new();
        map.insert(from.to_string(), MultiPoly::var(to));
        self.substitute(&map)
    }

    /// View as a univariate polynomial in `var` with MultiPoly coefficients.
    pub fn as_univariate_in(&self, var: &str) -> Vec<MultiPoly> {
        let pos = match self.vars.iter().position(|v| v == var) {
            Some(p) => p,
            None => return vec![self.clone()],
        };
        let deg = self.terms.keys().map(|e| e[pos]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![MultiPoly::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[pos] as usize;
            let mut ne = e.clone();
            ne[pos] = 0;
            let mono = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(ne, c.clone())]),
            }
            .pruned();
            coeffs[k] = coeffs[k].add(&mono);
        }
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        coeffs
    }

    /// Convert to a univariate polynomial; fails if any other variable occurs.
    pub fn to_unipoly(&self, var: &str) -> Option<UniPoly<Rat>> {
        let coeffs = self.as_univariate_in(var);
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if !c.is_constant() {
                return None;
            }
            out.push(c.constant_term());
        }
        Some(UniPoly::new(out))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest exponent vector first: stable canonical text form
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const {
                write!(f, "{}", mag)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (k, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                if exp == 1 {
                    write!(f, "{}", self.vars[k])?;
                } else {
                    write!(f, "{}^{}", self.vars[k], exp)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion
/// along the first row. Fine at the handful-of-rows sizes we need.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    assert!(m.iter().all(|r| r.len() == n));
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = MultiPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&poly_det(&minor));
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rint};

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(n)
    }

    #[test]
    fn ring_identities() {
        let x = v("x");
        let y = v("y");
        let p = x.add(&y).mul(&x.sub(&y));
        let q = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, q);
        assert_eq!(p.sub(&q), MultiPoly::zero());
    }

    #[test]
    fn variable_alignment_is_order_independent() {
        let p = v("b").mul(&v("a"));
        let q = v("a").mul(&v("b"));
        assert_eq!(p, q);
        assert_eq!(p.vars(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn eval_and_substitute() {
        // x^2 y - 3
        let p = v("x").pow(2).mul(&v("y")).sub(&MultiPoly::constant(rint(3)));
        let mut pt = BTreeMap::new();
        pt.insert("x".into(), rint(2));
        pt.insert("y".into(), rat(1, 2));
        assert_eq!(p.eval(&pt), rint(-1));

        let mut sub = BTreeMap::new();
        sub.insert("y".into(), v("x").add(&MultiPoly::one()));
        let q = p.substitute(&sub); // x^3 + x^2 - 3
        let expect = v("x")
            .pow(3)
            .add(&v("x").pow(2))
            .sub(&MultiPoly::constant(rint(3)));
        assert_eq!(q, expect);
    }

    #[test]
    fn display_is_canonical() {
        let p = v("x")
            .pow(2)
            .scale(&rint(2))
            .sub(&v("y"))
            .add(&MultiPoly::one());
        assert_eq!(p.to_string(), "2*x^2 - y + 1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn univariate_view() {
        // c^2 x + c + 1 as a poly in c
        let p = v("c")
            .pow(2)
            .mul(&v("x"))
            .add(&v("c"))
            .add(&MultiPoly::one());
        let coeffs = p.as_univariate_in("c");
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[0], MultiPoly::one());
        assert_eq!(coeffs[1], MultiPoly::one());
        assert_eq!(coeffs[2], v("x"));
        let u = v("c").pow(2).sub(&MultiPoly::one()).to_unipoly("c").unwrap();
        assert_eq!(u.coeffs(), &[rint(-1), rint(0), rint(1)]);
        assert!(p.to_unipoly("c").is_none());
    }

    #[test]
    fn determinant_of_poly_matrix() {
        // det [[x, 1], [1, x]] = x^2 - 1
        let m = vec![
            vec![v("x"), MultiPoly::one()],
            vec![MultiPoly::one(), v("x")],
        ];
        assert_eq!(poly_det(&m), v("x").pow(2).sub(&MultiPoly::one()));
        // 3x3 with a zero row is singular
        let z = vec![
            vec![v("x"), v("y"), MultiPoly::one()],
            vec![MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero()],
            vec![v("y"), v("x"), MultiPoly::one()],
        ];
        assert!(poly_det(&z).is_zero());
    }
}
