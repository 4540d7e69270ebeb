//! Factoring torus-invariant polynomials through the Segre map
//! z_{ij} = x_i * y_j.
//!
//! A polynomial in two variable blocks x_1..x_p, y_1..y_q is invariant
//! under the torus action t.(x, y) = (t x, t^{-1} y) exactly when every
//! monomial has the same total degree in the x block as in the y block.
//! Such a monomial x^I y^J with |I| = |J| factors as a product of z_{ij};
//! we pick the pairing that matches the sorted index multisets, which is
//! deterministic and pulls back to the original monomial.

use super::multipoly::MultiPoly;
use super::PolyError;
use crate::exactnum::Rat;
use std::collections::BTreeMap;

/// Name of the Segre coordinate for (x_i, y_j), 0-based block positions.
pub fn segre_var(i: usize, j: usize) -> String {
    format!("z_{}_{}", i + 1, j + 1)
}

fn block_degrees(
    f: &MultiPoly,
    exps: &[u32],
    x_block: &[String],
    y_block: &[String],
) -> Result<(Vec<u32>, Vec<u32>), PolyError> {
    let mut xd = vec![0u32; x_block.len()];
    let mut yd = vec![0u32; y_block.len()];
    for (k, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = &f.vars()[k];
        if let Some(i) = x_block.iter().position(|b| b == v) {
            xd[i] += e;
        } else if let Some(j) = y_block.iter().position(|b| b == v) {
            yd[j] += e;
        } else {
            return Err(PolyError::UnassignedVariable(v.clone()));
        }
    }
    Ok((xd, yd))
}

/// True iff every monomial is balanced between the two blocks.
pub fn is_torus_invariant(f: &MultiPoly, x_block: &[String], y_block: &[String]) -> bool {
    f.terms().all(|(e, _)| {
        match block_degrees(f, e, x_block, y_block) {
            Ok((xd, yd)) => xd.iter().sum::<u32>() == yd.iter().sum::<u32>(),
            Err(_) => false,
        }
    })
}

/// Rewrite an invariant polynomial in the Segre coordinates z_{ij}.
pub fn factor_through_segre(
    f: &MultiPoly,
    x_block: &[String],
    y_block: &[String],
) -> Result<MultiPoly, PolyError> {
    let mut out = MultiPoly::zero();
    for (e, c) in f.terms() {
        let (xd, yd) = block_degrees(f, e, x_block, y_block)?;
        let total_x: u32 = xd.iter().sum();
        let total_y: u32 = yd.iter().sum();
        if total_x != total_y {
            let mono = MultiPoly::monomial(
                Rat::from_integer(1.into()),
                &f.vars()
                    .iter()
                    .zip(e)
                    .map(|(v, &ex)| (v.as_str(), ex))
                    .collect::<Vec<_>>(),
            );
            return Err(PolyError::NotInvariant(mono.to_string()));
        }
        // sorted index multisets, paired positionally
        let xi: Vec<usize> = xd
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat(i).take(d as usize))
            .collect();
        let yj: Vec<usize> = yd
            .iter()
            .enumerate()
            .flat_map(|(j, &d)| std::iter::repeat(j).take(d as usize))
            .collect();
        let mut term = MultiPoly::constant(c.clone());
        for (&i, &j) in xi.iter().zip(&yj) {
            term = term.mul(&MultiPoly::var(&segre_var(i, j)));
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Pull a polynomial in z_{ij} back along the Segre map.
pub fn substitute_segre(big_f: &MultiPoly, x_block: &[String], y_block: &[String]) -> MultiPoly {
    let mut map = BTreeMap::new();
    for (i, xv) in x_block.iter().enumerate() {
        for (j, yv) in y_block.iter().enumerate() {
            map.insert(
                segre_var(i, j),
                MultiPoly::var(xv).mul(&MultiPoly::var(yv)),
            );
        }
    }
    big_f.substitute(&map)
}
