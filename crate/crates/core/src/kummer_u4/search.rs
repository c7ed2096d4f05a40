use std::collections::HashMap;

use super::*;
use crate::arith::{CoeffField, Poly};
use crate::classes::kummer::is_pth_power;

/// Candidate radicands in enumeration order.
fn radicands(base: &BaseField, p: u32, bound: u32) -> Vec<BaseElem> {
    let mut out = Vec::new();
    match base {
        BaseField::Rationals => {
            for n in 1..=bound as i64 {
                for v in [n, -n] {
                    let x = base.from_i64(v);
                    if !is_pth_power(base, &x, p) {
                        out.push(x);
                    }
                }
            }
        }
        BaseField::RationalFunctions(k) => {
            if let Some(q) = k.order() {
                for v in 0..q.min(bound) {
                    let s = crate::arith::Scalar::F(v);
                    out.push(base.from_poly(k.pnorm(vec![s, k.one()])));
                }
            }
        }
        BaseField::Finite(_) => {}
    }
    out
}

/// Coefficients allowed in `alpha = sum x_i ra^i`.
fn coefficients(base: &BaseField, bound: u32) -> Vec<BaseElem> {
    match base {
        BaseField::Rationals => (-(bound as i64)..=bound as i64).map(|n| base.from_i64(n)).collect(),
        BaseField::RationalFunctions(k) => {
            let q = k.order().unwrap_or(0);
            let consts: Vec<Poly> = (0..q.min(bound)).map(|v| k.pconst(crate::arith::Scalar::F(v))).collect();
            let mut out: Vec<BaseElem> = consts.iter().map(|c| base.from_poly(c.clone())).collect();
            if bound > 1 {
                for c in &consts {
                    out.push(base.from_poly(k.padd(c, &k.pt())));
                }
            }
            out
        }
        BaseField::Finite(_) => Vec::new(),
    }
}

fn tuples(coeffs: &[BaseElem], n: usize) -> Vec<Vec<BaseElem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                coeffs.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// `sum x_i g^i` for generator `g` of `t`.
fn combine(t: &Tower, g: usize, xs: &[BaseElem]) -> TElem {
    let mut acc = t.zero();
    let mut pw = t.one();
    for x in xs {
        acc = t.add(&acc, &t.scale(&pw, x));
        pw = t.mul(&pw, &t.gen(g));
    }
    acc
}

/// Norms of all small elements of `F(g)` outside `F`, first occurrence kept.
fn norm_table(t: &Tower, g: usize, coeffs: &[BaseElem]) -> Result<Vec<(BaseElem, TElem)>> {
    let s = kummer_shift(t, g)?;
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for xs in tuples(coeffs, t.p as usize) {
        if xs[1..].iter().all(|x| t.base.is_zero(x)) {
            continue;
        }
        let x = combine(t, g, &xs);
        let n = norm_along(t, &s, &x, t.p as u64)?;
        let Some(nb) = t.as_base(&n) else { continue };
        if t.base.is_zero(&nb) || seen.contains_key(&nb) {
            continue;
        }
        seen.insert(nb.clone(), out.len());
        out.push((nb, x));
    }
    Ok(out)
}

/// First instance with `N(alpha) = N(gamma) = b` and `a, b, c` independent, in
/// a fixed enumeration of small radicands and coefficients.
pub fn instance_generate(base: &BaseField, p: u32, bound: u32) -> Result<KummerInstance> {
    let probe = Tower::new(base.clone(), p)?;
    probe.xi()?;
    if matches!(base.coeff(), CoeffField::Finite(_)) && !base.is_function_field() {
        return Err(Error::Unsupported("finite base fields".into()));
    }
    let rads = radicands(base, p, bound);
    let coeffs = coefficients(base, bound);
    for (i, a) in rads.iter().enumerate() {
        for c in &rads[i + 1..] {
            if !kummer_independent(base, &[a.clone(), c.clone()], p)? {
                continue;
            }
            let e = bicyclic(base, p, a, c)?;
            let na = norm_table(&e, 0, &coeffs)?;
            let nc: HashMap<BaseElem, TElem> = norm_table(&e, 1, &coeffs)?.into_iter().collect();
            for (b, alpha) in &na {
                let Some(gamma) = nc.get(b) else { continue };
                if kummer_independent(base, &[a.clone(), b.clone(), c.clone()], p)? {
                    return KummerInstance::from_parts(e.clone(), alpha.clone(), gamma.clone());
                }
            }
        }
    }
    Err(Error::SearchExhausted)
}
