use super::*;
use crate::arith::Scalar;
use crate::classes::kummer::{is_pth_power, kummer_independent};
use crate::kummer_u4::{bicyclic, kummer_shift, norm_along, KummerInstance};

fn elem_sum(t: &Tower, g: usize, coeffs: &[BaseElem]) -> TElem {
    let mut acc = t.zero();
    let mut pw = t.one();
    for c in coeffs {
        acc = t.add(&acc, &t.scale(&pw, c));
        pw = t.mul(&pw, &t.gen(g));
    }
    acc
}

/// A Kummer instance over `F` whose radicands satisfy the Albert condition.
///
/// `a` is a constant, `y = N(t - theta)` for a constant `theta` in `F(ra)`,
/// and `c = X^p - y` for a linear `X`, so that `N(X - rc) = y`. Twisting both
/// norm witnesses gives `alpha`, `gamma` with common norm
/// `b = prod_i sigma0^-i(y^(e^i))`, which is Albert by construction; only `c`
/// has to be tested.
pub fn descent_instance(ctx: &DescentContext, bound: u32) -> Result<KummerInstance> {
    let f = &ctx.f;
    let p = ctx.p;
    let k = f.coeff();
    let q = match (&k, f.is_function_field()) {
        (CoeffField::Finite(ff), true) => ff.order(),
        _ => return Err(Error::Unsupported("descent instances need F_q(t)".into())),
    };
    let konst = |v: u32| f.from_scalar(Scalar::F(v));
    let consts: Vec<BaseElem> = (0..q.min(bound.max(2))).map(konst).collect();
    let a = (1..q)
        .map(konst)
        .find(|x| !is_pth_power(f, x, p) && ctx.albert_root(x).is_some())
        .ok_or(Error::SearchExhausted)?;
    let ta = Tower::new(f.clone(), p)?;
    let ta = ta.adjoin("ra", GenKind::Kummer, ta.from_base(a.clone()))?;
    let sa = kummer_shift(&ta, 0)?;
    let tvar = f.t()?;
    let mut thetas: Vec<Vec<BaseElem>> = vec![vec![f.zero()]];
    for _ in 1..p {
        thetas = thetas
            .into_iter()
            .flat_map(|v| {
                consts.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    for theta in thetas.iter().filter(|v| v[1..].iter().any(|c| !f.is_zero(c))) {
        let beta = ta.sub(&ta.from_base(tvar.clone()), &elem_sum(&ta, 0, theta));
        let Some(y) = ta.as_base(&norm_along(&ta, &sa, &beta, p as u64)?) else { continue };
        let b = ctx.twist_base(&y)?;
        for x1 in consts.iter().skip(1) {
            for x0 in &consts {
                let x = f.add(&f.mul(x1, &tvar), x0);
                let c = f.sub(&f.pow(&x, p as i64)?, &y);
                if f.is_zero(&c) || ctx.albert_root(&c).is_none() {
                    continue;
                }
                if !kummer_independent(f, &[a.clone(), b.clone(), c.clone()], p)? {
                    continue;
                }
                let e = bicyclic(f, p, &a, &c)?;
                let tau = h_lift(&e, ctx)?;
                let beta = e.sub(&e.from_base(tvar.clone()), &elem_sum(&e, 0, theta));
                let beta_c = e.sub(&e.from_base(x.clone()), &e.gen(1));
                let alpha = twist_apply(&e, &tau, &beta, ctx)?;
                let gamma = twist_apply(&e, &tau, &beta_c, ctx)?;
                return KummerInstance::from_parts(e, alpha, gamma);
            }
        }
    }
    Err(Error::SearchExhausted)
}
