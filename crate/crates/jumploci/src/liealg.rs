//! Finite-dimensional Lie algebras given by structure constants:
//! validation, nilpotency and solvability, abelianization, semidirect
//! products from a Levi-style action, the metabelian family V x| C with
//! the action in Jordan form, and the quotient of the solvable part by
//! the ideal generated by the semisimple action.

use crate::exactnum::{rat, Matrix, Rat};
use crate::jsonutil::parse_rat;
use num_traits::Zero;
use serde_json::Value;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("Jacobi identity fails at basis triple ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("action of {0} is not a derivation (fails on [{1}, {2}])")]
    NotDerivation(String, String, String),
    #[error("action is not a Lie homomorphism (fails on [{0}, {1}])")]
    NotHomomorphism(String, String),
    #[error("solvable part is not solvable")]
    NotSolvable,
    #[error("malformed input: {0}")]
    BadInput(String),
}

/// A Lie algebra over Q by structure constants. Brackets are stored for
/// i < j only; antisymmetry is implicit.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub basis: Vec<String>,
    bracket: BTreeMap<(usize, usize), Vec<Rat>>,
}

impl LieAlgebra {
    /// Construct and validate the Jacobi identity.
    pub fn new(
        basis: Vec<String>,
        brackets: Vec<((usize, usize), Vec<(usize, Rat)>)>,
    ) -> Result<Self, LieError> {
        let h = Self::new_unchecked(basis, brackets);
        h.validate()?;
        Ok(h)
    }

    /// Construct without validation (used to build deliberately broken
    /// inputs that `validate` should then report on).
    pub fn new_unchecked(
        basis: Vec<String>,
        brackets: Vec<((usize, usize), Vec<(usize, Rat)>)>,
    ) -> Self {
        let n = basis.len();
        let mut map = BTreeMap::new();
        for ((i, j), entries) in brackets {
            assert!(i < j && j < n, "bracket indices must satisfy i < j < dim");
            let mut v = vec![Rat::zero(); n];
            for (k, c) in entries {
                assert!(k < n);
                v[k] = v[k].clone() + c;
            }
            if v.iter().any(|c| !c.is_zero()) {
                map.insert((i, j), v);
            }
        }
        LieAlgebra {
            basis,
            bracket: map,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra::new_unchecked((1..=n).map(|i| format!("e{i}")).collect(), vec![])
    }

    /// [e_i, e_j] as a coefficient vector, any i, j.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        let n = self.dim();
        if i == j {
            return vec![Rat::zero(); n];
        }
        if i < j {
            self.bracket
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![Rat::zero(); n])
        } else {
            self.bracket_basis(j, i).into_iter().map(|c| -c).collect()
        }
    }

    /// Bilinear extension of the bracket.
    pub fn bracket_of(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let b = self.bracket_basis(i, j);
                for k in 0..n {
                    out[k] = out[k].clone() + u[i].clone() * v[j].clone() * b[k].clone();
                }
            }
        }
        out
    }

    /// Jacobi identity on every basis triple.
    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ei = unit(n, i);
                    let ej = unit(n, j);
                    let ek = unit(n, k);
                    let mut s = self.bracket_of(&ei, &self.bracket_basis(j, k));
                    let t = self.bracket_of(&ej, &self.bracket_basis(k, i));
                    let u = self.bracket_of(&ek, &self.bracket_basis(i, j));
                    for c in 0..n {
                        s[c] = s[c].clone() + t[c].clone() + u[c].clone();
                    }
                    if s.iter().any(|c| !c.is_zero()) {
                        return Err(LieError::Jacobi(
                            self.basis[i].clone(),
                            self.basis[j].clone(),
                            self.basis[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of [S, T] for subspaces given by spanning row vectors.
    fn product_span(&self, s: &[Vec<Rat>], t: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let mut rows = Vec::new();
        for u in s {
            for v in t {
                let b = self.bracket_of(u, v);
                if b.iter().any(|c| !c.is_zero()) {
                    rows.push(b);
                }
            }
        }
        reduce_span(rows, self.dim())
    }

    fn full_space(&self) -> Vec<Vec<Rat>> {
        (0..self.dim()).map(|i| unit(self.dim(), i)).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        let h = self.full_space();
        let mut c = h.clone();
        loop {
            let next = self.product_span(&h, &c);
            if next.is_empty() {
                return true;
            }
            if next.len() == c.len() {
                return false;
            }
            c = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        let mut d = self.full_space();
        loop {
            let next = self.product_span(&d, &d);
            if next.is_empty() {
                return true;
            }
            if next.len() == d.len() {
                return false;
            }
            d = next;
        }
    }

    /// Spanning set (reduced) of the derived subalgebra [h, h].
    pub fn derived_span(&self) -> Vec<Vec<Rat>> {
        let h = self.full_space();
        self.product_span(&h, &h)
    }

    /// dim H_1(h) = dim h/[h, h], together with a basis of functionals
    /// vanishing on [h, h]: the coordinates of each functional in the
    /// dual basis e_i^*.
    pub fn h1(&self) -> (usize, Vec<Vec<Rat>>) {
        let span = self.derived_span();
        if span.is_empty() {
            return (self.dim(), (0..self.dim()).map(|i| unit(self.dim(), i)).collect());
        }
        let m = Matrix::from_rows(span);
        let ker = m.kernel_basis();
        (ker.len(), ker)
    }

    pub fn h1_dim(&self) -> usize {
        self.h1().0
    }

    /// Matrix of ad(x): y -> [x, y] in the given basis.
    pub fn ad(&self, x: &[Rat]) -> Matrix<Rat> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| {
            self.bracket_of(x, &unit(n, j))[i].clone()
        })
    }
}

/// Standard basis vector e_i of length n.
pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = rat(1, 1);
    v
}

/// Row-reduce a spanning set to an independent one (rref rows).
fn reduce_span(rows: Vec<Vec<Rat>>, _n: usize) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return vec![];
    }
    let m = Matrix::from_rows(rows);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// The metabelian algebra V x| C with the action on the abelian part V
/// in Jordan normal form: one generator u, and per Jordan block
/// (lambda, r) a chain z_1..z_r with [u, z_1] = lambda z_1 and
/// [u, z_i] = lambda z_i + z_{i-1}.
pub fn metabelian(jordan_data: &[(Rat, usize)]) -> LieAlgebra {
    assert!(!jordan_data.is_empty(), "need at least one Jordan block");
    assert!(jordan_data.iter().all(|&(_, r)| r >= 1));
    let v_dim: usize = jordan_data.iter().map(|&(_, r)| r).sum();
    let mut basis: Vec<String> = (1..=v_dim).map(|i| format!("z{i}")).collect();
    basis.push("u".to_string());
    let u = v_dim;
    let mut brackets = Vec::new();
    let mut pos = 0;
    for (lambda, r) in jordan_data {
        for k in 0..*r {
            let zi = pos + k;
            // stored as (z_i, u) = -[u, z_i]
            let mut val = vec![(zi, -lambda.clone())];
            if k > 0 {
                val.push((zi - 1, rat(-1, 1)));
            }
            if val.iter().any(|(_, c)| !c.is_zero()) {
                brackets.push(((zi, u), val));
            }
        }
        pos += r;
    }
    LieAlgebra::new_unchecked(basis, brackets)
}

/// A solvable algebra with a semisimple algebra acting by derivations:
/// the data of a Levi decomposition h = s x|_alpha g.
#[derive(Clone, Debug)]
pub struct LeviInput {
    pub s: LieAlgebra,
    pub g: LieAlgebra,
    /// alpha(g_i) as a matrix acting on s, one per basis element of g.
    pub action: Vec<Matrix<Rat>>,
}

impl LeviInput {
    pub fn new(s: LieAlgebra, g: LieAlgebra, action: Vec<Matrix<Rat>>) -> Result<Self, LieError> {
        let li = LeviInput { s, g, action };
        li.validate()?;
        Ok(li)
    }

    pub fn validate(&self) -> Result<(), LieError> {
        if self.action.len() != self.g.dim() {
            return Err(LieError::BadInput(
                "one action matrix per generator of the semisimple part".into(),
            ));
        }
        for a in &self.action {
            if a.rows != self.s.dim() || a.cols != self.s.dim() {
                return Err(LieError::BadInput("action matrix has wrong shape".into()));
            }
        }
        if !self.s.is_solvable() {
            return Err(LieError::NotSolvable);
        }
        let n = self.s.dim();
        // each alpha(y) is a derivation: a[x1,x2] = [a x1, x2] + [x1, a x2]
        for (gi, a) in self.action.iter().enumerate() {
            for i in 0..n {
                for j in i + 1..n {
                    let lhs = a.mul_vec(&self.s.bracket_basis(i, j));
                    let ai = a.mul_vec(&unit(n, i));
                    let aj = a.mul_vec(&unit(n, j));
                    let rhs1 = self.s.bracket_of(&ai, &unit(n, j));
                    let rhs2 = self.s.bracket_of(&unit(n, i), &aj);
                    let ok = (0..n).all(|k| {
                        lhs[k].clone() == rhs1[k].clone() + rhs2[k].clone()
                    });
                    if !ok {
                        return Err(LieError::NotDerivation(
                            self.g.basis[gi].clone(),
                            self.s.basis[i].clone(),
                            self.s.basis[j].clone(),
                        ));
                    }
                }
            }
        }
        // alpha is a homomorphism: alpha([y1, y2]) = [alpha y1, alpha y2]
        for i in 0..self.g.dim() {
            for j in i + 1..self.g.dim() {
                let br = self.g.bracket_basis(i, j);
                let mut lhs = Matrix::zero(n, n);
                for (k, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        lhs = lhs.add(&self.action[k].scale(c));
                    }
                }
                let rhs = self.action[i]
                    .mul(&self.action[j])
                    .sub(&self.action[j].mul(&self.action[i]));
                if lhs != rhs {
                    return Err(LieError::NotHomomorphism(
                        self.g.basis[i].clone(),
                        self.g.basis[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The full algebra h = s x| g, basis of s first.
    pub fn semidirect(&self) -> Result<LieAlgebra, LieError> {
        let ns = self.s.dim();
        let ng = self.g.dim();
        let mut basis = self.s.basis.clone();
        basis.extend(self.g.basis.iter().cloned());
        let mut brackets = Vec::new();
        for i in 0..ns {
            for j in i + 1..ns {
                let v = self.s.bracket_basis(i, j);
                let entries: Vec<(usize, Rat)> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !entries.is_empty() {
                    brackets.push(((i, j), entries));
                }
            }
        }
        // [x_s, y_g] = -alpha(y) x
        for i in 0..ns {
            for j in 0..ng {
                let img = self.action[j].mul_vec(&unit(ns, i));
                let entries: Vec<(usize, Rat)> = img
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, -c.clone()))
                    .collect();
                if !entries.is_empty() {
                    brackets.push(((i, ns + j), entries));
                }
            }
        }
        for i in 0..ng {
            for j in i + 1..ng {
                let v = self.g.bracket_basis(i, j);
                let entries: Vec<(usize, Rat)> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (ns + k, c.clone()))
                    .collect();
                if !entries.is_empty() {
                    brackets.push(((ns + i, ns + j), entries));
                }
            }
        }
        let h = LieAlgebra::new_unchecked(basis, brackets);
        h.validate()?;
        Ok(h)
    }

    /// Quotient of s by the Lie ideal generated by all alpha(y)x.
    /// Returns the quotient algebra and the matrix of q: s -> s~.
    pub fn tilde_quotient(&self) -> (LieAlgebra, Matrix<Rat>) {
        let n = self.s.dim();
        // seed: columns of every action matrix
        let mut seed = Vec::new();
        for a in &self.action {
            for j in 0..n {
                let col = a.mul_vec(&unit(n, j));
                if col.iter().any(|c| !c.is_zero()) {
                    seed.push(col);
                }
            }
        }
        let mut ideal = reduce_span(seed, n);
        // close under bracketing with all of s
        loop {
            let mut grown = ideal.clone();
            for i in 0..n {
                for v in &ideal {
                    let b = self.s.bracket_of(&unit(n, i), v);
                    if b.iter().any(|c| !c.is_zero()) {
                        grown.push(b);
                    }
                }
            }
            let grown = reduce_span(grown, n);
            if grown.len() == ideal.len() {
                break;
            }
            ideal = grown;
        }

        // complement: standard basis vectors at non-pivot columns of the
        // rref basis of the ideal
        let pivots: Vec<usize> = if ideal.is_empty() {
            vec![]
        } else {
            Matrix::from_rows(ideal.clone()).rref().1
        };
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let q_dim = free.len();

        // q(x): reduce modulo the ideal, read off free coordinates
        let rref_rows: Vec<Vec<Rat>> = ideal;
        let reduce = |x: &[Rat]| -> Vec<Rat> {
            let mut v = x.to_vec();
            for (r, row) in rref_rows.iter().enumerate() {
                let p = pivots[r];
                if !v[p].is_zero() {
                    let c = v[p].clone();
                    for k in 0..n {
                        v[k] = v[k].clone() - c.clone() * row[k].clone();
                    }
                }
            }
            free.iter().map(|&c| v[c].clone()).collect()
        };
        let q = Matrix::from_fn(q_dim, n, |i, j| reduce(&unit(n, j))[i].clone());

        let basis: Vec<String> = free.iter().map(|&c| self.s.basis[c].clone()).collect();
        let mut brackets = Vec::new();
        for a in 0..q_dim {
            for b in a + 1..q_dim {
                let br = self.s.bracket_basis(free[a], free[b]);
                let img = reduce(&br);
                let entries: Vec<(usize, Rat)> = img
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !entries.is_empty() {
                    brackets.push(((a, b), entries));
                }
            }
        }
        (LieAlgebra::new_unchecked(basis, brackets), q)
    }
}

// Catalog of standard algebras.

/// Heisenberg algebra of dimension 2k+1: [x_i, y_i] = z.
pub fn heisenberg(k: usize) -> LieAlgebra {
    assert!(k >= 1);
    let mut basis: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    basis.extend((1..=k).map(|i| format!("y{i}")));
    basis.push("z".to_string());
    let z = 2 * k;
    let brackets = (0..k).map(|i| ((i, k + i), vec![(z, rat(1, 1))])).collect();
    LieAlgebra::new_unchecked(basis, brackets)
}

/// The nonabelian 2-dimensional algebra: [u, x] = x.
pub fn aff1() -> LieAlgebra {
    LieAlgebra::new_unchecked(
        vec!["x".into(), "u".into()],
        vec![((0, 1), vec![(0, rat(-1, 1))])],
    )
}

/// sl2 in the basis (H, X+, X-): [X+, X-] = H, [H, X+-] = +-2 X+-.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::new_unchecked(
        vec!["H".into(), "Xp".into(), "Xm".into()],
        vec![
            ((0, 1), vec![(1, rat(2, 1))]),
            ((0, 2), vec![(2, rat(-2, 1))]),
            ((1, 2), vec![(0, rat(1, 1))]),
        ],
    )
}

/// Borel subalgebra of sl2: [H, X] = 2X.
pub fn borel() -> LieAlgebra {
    LieAlgebra::new_unchecked(
        vec!["H".into(), "X".into()],
        vec![((0, 1), vec![(1, rat(2, 1))])],
    )
}

// JSON input.

/// Parse `{"dim": n, "basis": [..], "brackets": [{"left": i, "right": j,
/// "value": {"k": coeff}}]}`; omitted pairs bracket to zero.
pub fn lie_from_json(v: &Value) -> Result<LieAlgebra, LieError> {
    let obj = v
        .as_object()
        .ok_or_else(|| LieError::BadInput("expected an object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(|d| d.as_u64())
        .ok_or_else(|| LieError::BadInput("missing \"dim\"".into()))? as usize;
    let basis: Vec<String> = match obj.get("basis") {
        Some(Value::Array(a)) => a
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| LieError::BadInput("basis names must be strings".into()))
            })
            .collect::<Result<_, _>>()?,
        None => (1..=dim).map(|i| format!("e{i}")).collect(),
        _ => return Err(LieError::BadInput("\"basis\" must be an array".into())),
    };
    if basis.len() != dim {
        return Err(LieError::BadInput("basis length disagrees with dim".into()));
    }
    let mut brackets = Vec::new();
    if let Some(arr) = obj.get("brackets") {
        let arr = arr
            .as_array()
            .ok_or_else(|| LieError::BadInput("\"brackets\" must be an array".into()))?;
        for entry in arr {
            let e = entry
                .as_object()
                .ok_or_else(|| LieError::BadInput("bracket entries must be objects".into()))?;
            let left = e
                .get("left")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| LieError::BadInput("bracket needs \"left\"".into()))?
                as usize;
            let right = e
                .get("right")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| LieError::BadInput("bracket needs \"right\"".into()))?
                as usize;
            if left >= right || right >= dim {
                return Err(LieError::BadInput(format!(
                    "bracket indices ({left}, {right}) must satisfy left < right < dim"
                )));
            }
            let value = e
                .get("value")
                .and_then(|x| x.as_object())
                .ok_or_else(|| LieError::BadInput("bracket needs a \"value\" object".into()))?;
            let mut entries = Vec::new();
            for (k, c) in value {
                let k: usize = k
                    .parse()
                    .map_err(|_| LieError::BadInput(format!("bad component index {k:?}")))?;
                if k >= dim {
                    return Err(LieError::BadInput(format!("component index {k} out of range")));
                }
                entries.push((k, parse_rat(c).map_err(LieError::BadInput)?));
            }
            brackets.push(((left, right), entries));
        }
    }
    let h = LieAlgebra::new_unchecked(basis, brackets);
    h.validate()?;
    Ok(h)
}

/// Parse a LeviInput: the Lie algebra schema for "s" and "g" plus an
/// "action" array of one matrix per g-generator.
pub fn levi_from_json(v: &Value) -> Result<LeviInput, LieError> {
    let obj = v
        .as_object()
        .ok_or_else(|| LieError::BadInput("expected an object".into()))?;
    let s = lie_from_json(
        obj.get("s")
            .ok_or_else(|| LieError::BadInput("missing \"s\"".into()))?,
    )?;
    let g = lie_from_json(
        obj.get("g")
            .ok_or_else(|| LieError::BadInput("missing \"g\"".into()))?,
    )?;
    let action_raw = obj
        .get("action")
        .and_then(|a| a.as_array())
        .ok_or_else(|| LieError::BadInput("missing \"action\" array".into()))?;
    let mut action = Vec::new();
    for m in action_raw {
        let rows = m
            .as_array()
            .ok_or_else(|| LieError::BadInput("action matrices must be arrays".into()))?;
        let mut data = Vec::new();
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| LieError::BadInput("matrix rows must be arrays".into()))?;
            data.push(
                row.iter()
                    .map(|c| parse_rat(c).map_err(LieError::BadInput))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        if data.len() != s.dim() || data.iter().any(|r| r.len() != s.dim()) {
            return Err(LieError::BadInput("action matrix has wrong shape".into()));
        }
        action.push(Matrix::from_rows(data));
    }
    LeviInput::new(s, g, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rint;
    use serde_json::json;

    #[test]
    fn validation_catches_broken_sl2() {
        assert!(sl2().validate().is_ok());
        // alter [H, X+] to 3 X+
        let bad = LieAlgebra::new_unchecked(
            vec!["H".into(), "Xp".into(), "Xm".into()],
            vec![
                ((0, 1), vec![(1, rat(3, 1))]),
                ((0, 2), vec![(2, rat(-2, 1))]),
                ((1, 2), vec![(0, rat(1, 1))]),
            ],
        );
        match bad.validate() {
            Err(LieError::Jacobi(a, b, c)) => {
                assert_eq!((a.as_str(), b.as_str(), c.as_str()), ("H", "Xp", "Xm"));
            }
            other => panic!("expected Jacobi violation, got {other:?}"),
        }
    }

    #[test]
    fn structural_predicates() {
        assert!(LieAlgebra::abelian(2).is_nilpotent());
        assert!(heisenberg(1).is_nilpotent());
        assert!(!aff1().is_nilpotent());
        assert!(aff1().is_solvable());
        assert!(!sl2().is_solvable());
        assert!(!sl2().is_nilpotent());
        assert!(borel().is_solvable());
        // nilpotent implies solvable across the catalog
        for h in [LieAlgebra::abelian(3), heisenberg(2), aff1(), sl2(), borel()] {
            if h.is_nilpotent() {
                assert!(h.is_solvable());
            }
        }
    }

    #[test]
    fn abelianization_dimensions() {
        let (d, basis) = aff1().h1();
        assert_eq!(d, 1);
        // the functional is dual to u: vanishes on x
        assert_eq!(basis[0], vec![rint(0), rint(1)]);
        assert_eq!(heisenberg(1).h1_dim(), 2);
        assert_eq!(sl2().h1_dim(), 0);
        assert_eq!(LieAlgebra::abelian(4).h1_dim(), 4);
    }

    #[test]
    fn metabelian_construction() {
        // single block (1, 1): [u, z1] = z1, so aff(1) up to naming
        let m = metabelian(&[(rint(1), 1)]);
        assert!(m.validate().is_ok());
        assert!(!m.is_nilpotent());
        assert!(m.is_solvable());
        let b = m.bracket_basis(1, 0); // [u, z1]
        assert_eq!(b, vec![rint(1), rint(0)]);

        // nilpotent block (0, 2): isomorphic to the Heisenberg algebra
        let n = metabelian(&[(rint(0), 2)]);
        assert!(n.is_nilpotent());
        assert_eq!(n.bracket_basis(2, 1), vec![rint(1), rint(0), rint(0)]);

        // mixed blocks: solvable, not nilpotent
        let s = metabelian(&[(rint(2), 1), (rint(0), 1)]);
        assert!(s.validate().is_ok());
        assert!(!s.is_nilpotent() && s.is_solvable());

        // nilpotency iff all eigenvalues vanish
        assert!(metabelian(&[(rint(0), 3)]).is_nilpotent());
        assert!(!metabelian(&[(rint(0), 2), (rint(1), 1)]).is_nilpotent());
    }

    fn sl2_on_c2() -> LeviInput {
        // defining representation on C^2
        let s = LieAlgebra::abelian(2);
        let h = Matrix::from_i64(vec![vec![1, 0], vec![0, -1]]);
        let xp = Matrix::from_i64(vec![vec![0, 1], vec![0, 0]]);
        let xm = Matrix::from_i64(vec![vec![0, 0], vec![1, 0]]);
        LeviInput::new(s, sl2(), vec![h, xp, xm]).unwrap()
    }

    #[test]
    fn levi_validation() {
        let li = sl2_on_c2();
        assert!(li.validate().is_ok());
        // breaking the homomorphism property is detected
        let bad = LeviInput {
            action: vec![
                li.action[0].clone(),
                li.action[1].clone(),
                li.action[1].clone(),
            ],
            ..li.clone()
        };
        assert!(matches!(bad.validate(), Err(LieError::NotHomomorphism(_, _))));
    }

    #[test]
    fn semidirect_is_a_lie_algebra() {
        let h = sl2_on_c2().semidirect().unwrap();
        assert_eq!(h.dim(), 5);
        assert!(h.validate().is_ok());
        assert_eq!(h.h1_dim(), 0); // perfect
        assert!(!h.is_solvable());
    }

    #[test]
    fn tilde_quotient_cases() {
        // trivial action: quotient is s itself
        let s = heisenberg(1);
        let li = LeviInput::new(s.clone(), sl2(), vec![Matrix::zero(3, 3); 3]).unwrap();
        let (q_alg, q) = li.tilde_quotient();
        assert_eq!(q_alg.dim(), 3);
        assert_eq!(q, Matrix::identity(3));
        assert!(q_alg.validate().is_ok());

        // defining rep: the action spans all of s, quotient is zero
        let (zero_alg, _) = sl2_on_c2().tilde_quotient();
        assert_eq!(zero_alg.dim(), 0);

        // C^2 + C with sl2 acting on the first factor only
        let s3 = LieAlgebra::abelian(3);
        let pad = |m: &Matrix<Rat>| {
            Matrix::from_fn(3, 3, |i, j| {
                if i < 2 && j < 2 {
                    m[(i, j)].clone()
                } else {
                    Rat::zero()
                }
            })
        };
        let base = sl2_on_c2();
        let li3 = LeviInput::new(
            s3,
            sl2(),
            base.action.iter().map(pad).collect(),
        )
        .unwrap();
        let (q3, qm) = li3.tilde_quotient();
        assert_eq!(q3.dim(), 1);
        assert_eq!(qm.rank(), 1);
    }

    #[test]
    fn quotient_map_is_a_homomorphism() {
        // q[x, y] = [q x, q y] checked on basis pairs
        let s = metabelian(&[(rint(1), 2)]);
        let li = LeviInput::new(s.clone(), LieAlgebra::abelian(0), vec![]).unwrap();
        let (qs, q) = li.tilde_quotient();
        assert_eq!(qs.dim(), s.dim());
        for i in 0..s.dim() {
            for j in i + 1..s.dim() {
                let lhs = q.mul_vec(&s.bracket_basis(i, j));
                let qi = q.mul_vec(&unit(s.dim(), i));
                let qj = q.mul_vec(&unit(s.dim(), j));
                assert_eq!(lhs, qs.bracket_of(&qi, &qj));
            }
        }
    }

    #[test]
    fn json_round_trip_aff1() {
        let j = json!({
            "dim": 2,
            "basis": ["x", "u"],
            "brackets": [{"left": 0, "right": 1, "value": {"0": -1}}]
        });
        let h = lie_from_json(&j).unwrap();
        assert_eq!(h.bracket_basis(1, 0), vec![rint(1), rint(0)]);
        assert!(!h.is_nilpotent());

        // malformed: indices out of order
        let bad = json!({"dim": 2, "brackets": [{"left": 1, "right": 0, "value": {}}]});
        assert!(lie_from_json(&bad).is_err());
        // Jacobi violation surfaces through the parser
        let broken = json!({
            "dim": 3,
            "basis": ["H", "Xp", "Xm"],
            "brackets": [
                {"left": 0, "right": 1, "value": {"1": 3}},
                {"left": 0, "right": 2, "value": {"2": -2}},
                {"left": 1, "right": 2, "value": {"0": 1}}
            ]
        });
        assert!(matches!(lie_from_json(&broken), Err(LieError::Jacobi(..))));
    }

    #[test]
    fn levi_json() {
        let j = json!({
            "s": {"dim": 2, "basis": ["v1", "v2"]},
            "g": {
                "dim": 3,
                "basis": ["H", "Xp", "Xm"],
                "brackets": [
                    {"left": 0, "right": 1, "value": {"1": 2}},
                    {"left": 0, "right": 2, "value": {"2": -2}},
                    {"left": 1, "right": 2, "value": {"0": 1}}
                ]
            },
            "action": [
                [[1, 0], [0, -1]],
                [[0, 1], [0, 0]],
                [[0, 0], [1, 0]]
            ]
        });
        let li = levi_from_json(&j).unwrap();
        assert_eq!(li.s.dim(), 2);
        let (q_alg, _) = li.tilde_quotient();
        assert_eq!(q_alg.dim(), 0);
    }

    #[test]
    fn ad_matrix() {
        let h = aff1();
        let u = unit(2, 1);
        let ad_u = h.ad(&u);
        // ad(u) x = x
        assert_eq!(ad_u.mul_vec(&unit(2, 0)), unit(2, 0));
        assert_eq!(ad_u.mul_vec(&u), vec![rint(0), rint(0)]);
    }
}
