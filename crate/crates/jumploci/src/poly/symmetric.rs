//! Rewriting symmetric polynomials in terms of elementary symmetric
//! functions, by the classical leading-term elimination.

use super::multipoly::MultiPoly;
use super::PolyError;
use std::collections::BTreeMap;

/// Elementary symmetric polynomial e_k of the given variables.
/// e_0 = 1; e_k = 0 for k > #vars.
pub fn elementary_symmetric(k: usize, vars: &[String]) -> MultiPoly {
    if k == 0 {
        return MultiPoly::one();
    }
    if k > vars.len() {
        return MultiPoly::zero();
    }
    let mut sum = MultiPoly::zero();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut prod = MultiPoly::one();
        for &i in &subset {
            prod = prod.mul(&MultiPoly::var(&vars[i]));
        }
        sum = sum.add(&prod);
        // next k-subset in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return sum;
            }
            i -= 1;
            if subset[i] < vars.len() - (k - i) {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn swap_vars(f: &MultiPoly, a: &str, b: &str) -> MultiPoly {
    let mut map = BTreeMap::new();
    map.insert(a.to_string(), MultiPoly::var(b));
    map.insert(b.to_string(), MultiPoly::var(a));
    f.substitute(&map)
}

/// Exponents of a term in the lambda variables, in the given block order.
fn lambda_exps(f: &MultiPoly, exps: &[u32], lambda: &[String]) -> Vec<u32> {
    lambda
        .iter()
        .map(|lv| {
            f.vars()
                .iter()
                .position(|v| v == lv)
                .map_or(0, |k| exps[k])
        })
        .collect()
}

/// Express `f`, symmetric in the `lambda` block (other variables act as
/// coefficients), as a polynomial in the variables `e_names`, where
/// e_names[k] stands for the elementary symmetric function e_{k+1}(lambda).
pub fn symmetric_reduce(
    f: &MultiPoly,
    lambda: &[String],
    e_names: &[String],
) -> Result<MultiPoly, PolyError> {
    assert_eq!(e_names.len(), lambda.len());
    for name in e_names {
        assert!(
            !f.vars().iter().any(|v| v == name),
            "output variable {name} collides with an input variable"
        );
    }
    for w in 0..lambda.len().saturating_sub(1) {
        if swap_vars(f, &lambda[w], &lambda[w + 1]) != *f {
            return Err(PolyError::NotSymmetric);
        }
    }

    let m = lambda.len();
    let mut work = f.clone();
    let mut result = MultiPoly::zero();
    loop {
        // lex-greatest lambda exponent vector among terms touching lambdas
        let leading = work
            .terms()
            .map(|(e, _)| lambda_exps(&work, e, lambda))
            .filter(|le| le.iter().any(|&x| x > 0))
            .max();
        let le = match leading {
            Some(le) => le,
            None => break,
        };
        // leading exponent of a symmetric polynomial is weakly decreasing
        if le.windows(2).any(|w| w[0] < w[1]) {
            return Err(PolyError::NotSymmetric);
        }
        // coefficient in the passive variables
        let mut coeff = MultiPoly::zero();
        let vars = work.vars().to_vec();
        for (e, c) in work.terms() {
            if lambda_exps(&work, e, lambda) != le {
                continue;
            }
            let passive: Vec<(&str, u32)> = vars
                .iter()
                .zip(e)
                .filter(|(v, _)| !lambda.contains(v))
                .map(|(v, &x)| (v.as_str(), x))
                .collect();
            coeff = coeff.add(&MultiPoly::monomial(c.clone(), &passive));
        }
        // multiplicities d_k so that prod e_k^{d_k} has leading exponent le
        let mut in_e = coeff.clone();
        let mut in_lambda = coeff;
        for k in 0..m {
            let d = if k + 1 < m { le[k] - le[k + 1] } else { le[k] };
            if d == 0 {
                continue;
            }
            in_e = in_e.mul(&MultiPoly::var(&e_names[k]).pow(d));
            in_lambda = in_lambda.mul(&elementary_symmetric(k + 1, lambda).pow(d));
        }
        result = result.add(&in_e);
        work = work.sub(&in_lambda);
    }
    Ok(result.add(&work))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rint;

    fn names(pre: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{pre}{i}")).collect()
    }

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(n)
    }

    #[test]
    fn power_sum_two_vars() {
        // l1^2 + l2^2 = E1^2 - 2 E2
        let l = names("l", 2);
        let e = names("E", 2);
        let f = v("l1").pow(2).add(&v("l2").pow(2));
        let r = symmetric_reduce(&f, &l, &e).unwrap();
        let expect = v("E1")
            .pow(2)
            .sub(&v("E2").scale(&rint(2)));
        assert_eq!(r, expect);
    }

    #[test]
    fn power_sum_three_vars() {
        // p3 = e1^3 - 3 e1 e2 + 3 e3
        let l = names("l", 3);
        let e = names("E", 3);
        let f = v("l1").pow(3).add(&v("l2").pow(3)).add(&v("l3").pow(3));
        let r = symmetric_reduce(&f, &l, &e).unwrap();
        let expect = v("E1")
            .pow(3)
            .sub(&v("E1").mul(&v("E2")).scale(&rint(3)))
            .add(&v("E3").scale(&rint(3)));
        assert_eq!(r, expect);
    }

    #[test]
    fn passive_coefficients_survive() {
        // a*l1*l2 + l1 + l2 -> a*E2 + E1
        let l = names("l", 2);
        let e = names("E", 2);
        let f = v("a")
            .mul(&v("l1"))
            .mul(&v("l2"))
            .add(&v("l1"))
            .add(&v("l2"));
        let r = symmetric_reduce(&f, &l, &e).unwrap();
        assert_eq!(r, v("a").mul(&v("E2")).add(&v("E1")));
    }

    #[test]
    fn asymmetric_input_rejected() {
        let l = names("l", 2);
        let e = names("E", 2);
        assert!(matches!(
            symmetric_reduce(&v("l1"), &l, &e),
            Err(PolyError::NotSymmetric)
        ));
    }

    #[test]
    fn reduction_round_trips() {
        // substitute E_k = e_k(lambda) back in and compare
        let l = names("l", 3);
        let e = names("E", 3);
        let f = v("l1")
            .add(&v("l2"))
            .add(&v("l3"))
            .pow(2)
            .add(&v("l1").mul(&v("l2")).mul(&v("l3")).scale(&rint(5)))
            .add(&MultiPoly::one());
        let r = symmetric_reduce(&f, &l, &e).unwrap();
        let mut back = BTreeMap::new();
        for k in 0..3 {
            back.insert(e[k].clone(), elementary_symmetric(k + 1, &l));
        }
        assert_eq!(r.substitute(&back), f);
    }

    #[test]
    fn elementary_symmetric_basics() {
        let l = names("l", 3);
        assert_eq!(elementary_symmetric(0, &l), MultiPoly::one());
        assert!(elementary_symmetric(4, &l).is_zero());
        let e2 = elementary_symmetric(2, &l);
        assert_eq!(e2.num_terms(), 3);
    }
}
