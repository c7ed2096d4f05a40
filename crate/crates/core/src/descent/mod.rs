//! Descent of `U_4(F_p)` extensions from `F = F0(xi)` down to `F0` when `F0`
//! lacks a primitive `p`-th root of unity.
//!
//! `H = Gal(F/F0)` is cyclic of order `d`, generated by `sigma0` with
//! `sigma0(xi) = xi^e`. Every tower here carries a lift `tau` of `sigma0`
//! whose order is still `d`.

mod search;
mod twist;

pub use search::descent_instance;
pub use twist::{build_twisted_tower, descend_fixed_field, splitting_power, DescentTrace};

use crate::arith::{BaseElem, BaseField, CoeffField, FiniteField};
use crate::classes::kummer::{mod_inv, pth_root};
use crate::error::{Error, Result};
use crate::galois::{aut_pow, Automorphism};
use crate::tower::{GenKind, TElem, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentContext {
    pub f0: BaseField,
    pub f: BaseField,
    pub p: u32,
    pub d: u32,
    pub e: u32,
    /// `l * d = 1 mod p`.
    pub l: u32,
    /// `sigma0` as a Frobenius power on the coefficients of `F`.
    pub frob: u32,
}

fn mult_order(q: u32, p: u32) -> u32 {
    let mut x = q % p;
    let mut k = 1;
    while x != 1 {
        x = x * q % p;
        k += 1;
    }
    k
}

pub fn build_descent_context(f0: &BaseField, p: u32) -> Result<DescentContext> {
    let ff = match f0 {
        BaseField::Rationals if p == 2 => return Err(Error::XiAlreadyPresent),
        BaseField::Rationals => return Err(Error::Unsupported("descent over number fields".into())),
        BaseField::Finite(ff) | BaseField::RationalFunctions(CoeffField::Finite(ff)) => ff,
        BaseField::RationalFunctions(_) => return Err(Error::Unsupported("descent over Q(t)".into())),
    };
    let q = ff.order();
    if ff.characteristic() == p {
        return Err(Error::Precondition("characteristic equals p".into()));
    }
    if ff.degree() != 1 {
        return Err(Error::Unsupported("non-prime coefficient fields".into()));
    }
    let d = mult_order(q, p);
    if d == 1 {
        return Err(Error::XiAlreadyPresent);
    }
    let big = FiniteField::standard(q, d)?;
    let f = match f0 {
        BaseField::Finite(_) => BaseField::Finite(big),
        _ => BaseField::RationalFunctions(CoeffField::Finite(big)),
    };
    Ok(DescentContext { f0: f0.clone(), f, p, d, e: q % p, l: mod_inv(d % p, p), frob: 1 })
}

impl DescentContext {
    /// `d = 1`: `F0 = F` and `sigma0` is the identity.
    pub fn trivial(f: &BaseField, p: u32) -> Self {
        DescentContext { f0: f.clone(), f: f.clone(), p, d: 1, e: 1, l: 1, frob: 0 }
    }

    /// The inclusion `F0 -> F`; both coefficient fields share their prime field.
    pub fn embed(&self, x: &BaseElem) -> Result<BaseElem> {
        let k = self.f.coeff();
        let lift = |c: &crate::arith::Poly| k.pnorm(c.c.clone());
        let y = self.f.frac(lift(&x.num), lift(&x.den))?;
        self.f.check(&y)?;
        Ok(y)
    }

    pub fn sigma0(&self, x: &BaseElem) -> BaseElem {
        self.f.frobenius(x, self.frob)
    }

    /// `sigma0^-i` on `F`.
    pub fn sigma0_inv_pow(&self, x: &BaseElem, i: u32) -> BaseElem {
        self.f.frobenius(x, self.frob * ((self.d - i % self.d) % self.d))
    }

    /// `ell (1 - e^d) / p`, the exponent in the explicit root of `tau(Phi(x)) / Phi(x)^e`.
    pub fn lift_exponent(&self) -> Result<i64> {
        let num = self.l as i64 * (1 - (self.e as i64).pow(self.d));
        if num % self.p as i64 != 0 {
            return Err(Error::IdentityFailed(format!("e^d = {} is not 1 mod p", (self.e as i64).pow(self.d))));
        }
        Ok(num / self.p as i64)
    }

    /// `prod_i sigma0^-i(x^(e^i))`, without the outer power.
    pub fn twist_base(&self, x: &BaseElem) -> Result<BaseElem> {
        let mut acc = self.f.one();
        for i in 0..self.d {
            let y = self.f.pow(x, (self.e as i64).pow(i))?;
            acc = self.f.mul(&acc, &self.sigma0_inv_pow(&y, i));
        }
        Ok(acc)
    }

    /// `Phi(x) = [prod_i sigma0^-i(x^(e^i))]^l` on `F`.
    pub fn phi_base(&self, x: &BaseElem) -> Result<BaseElem> {
        self.f.pow(&self.twist_base(x)?, self.l as i64)
    }

    /// Whether `sigma0(x)/x^e` is a `p`-th power, returning its root.
    pub fn albert_root(&self, x: &BaseElem) -> Option<BaseElem> {
        let q = self.f.div(&self.sigma0(x), &self.f.pow(x, self.e as i64).ok()?).ok()?;
        pth_root(&self.f, &q, self.p)
    }

    /// `(Phi(x)/x)^(1/p)`, which exists for Albert elements.
    pub fn twist_root(&self, x: &BaseElem) -> Result<BaseElem> {
        let q = self.f.div(&self.phi_base(x)?, x)?;
        pth_root(&self.f, &q, self.p).ok_or_else(|| Error::IdentityFailed("Phi(x)/x is not a p-th power".into()))
    }
}

/// The lift `tau` of `sigma0` to a tower of Kummer generators over `F`, with
/// `tau(g) = xi^k g^e w` and `k` chosen so that `tau^d = 1`.
pub fn h_lift(t: &Tower, ctx: &DescentContext) -> Result<Automorphism> {
    if t.base != ctx.f || t.p != ctx.p {
        return Err(Error::TowerMismatch);
    }
    let xi = t.xi()?.clone();
    let mut images = Vec::new();
    let mut options = Vec::new();
    for (i, g) in t.gens.iter().enumerate() {
        let r = match (g.kind, t.as_base(&g.rhs)) {
            (GenKind::Kummer, Some(r)) => r,
            _ => return Err(Error::Precondition(format!("{} is not a Kummer root of a base element", g.name))),
        };
        let w = ctx.albert_root(&r).ok_or_else(|| Error::AlbertConditionFailed(g.name.clone()))?;
        let base = t.scale(&t.pow(&t.gen(i), ctx.e as i64)?, &w);
        let shifts: Vec<TElem> =
            (0..t.p).map(|k| t.scale(&base, &t.base.pow(&xi, k as i64).unwrap())).collect();
        images.push(shifts[0].clone());
        options.push(shifts);
    }
    // tau^d(g_i) only depends on the image of g_i
    for i in 0..t.len() {
        let mut found = false;
        for cand in &options[i] {
            images[i] = cand.clone();
            let tau = Automorphism::new(t, images.clone(), ctx.frob)?;
            if aut_pow(t, &tau, ctx.d as u64)?.images[i] == t.gen(i) {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Precondition(format!("no lift of order d on {}", t.gens[i].name)));
        }
    }
    Automorphism::new(t, images, ctx.frob)
}

fn tau_inv_pows(t: &Tower, tau: &Automorphism, ctx: &DescentContext) -> Result<Vec<Automorphism>> {
    if tau.frob != ctx.frob % ctx.f.coeff().finite().map_or(1, |f| f.degree()) {
        return Err(Error::Precondition("tau does not restrict to sigma0".into()));
    }
    if !aut_pow(t, tau, ctx.d as u64)?.is_identity(t) {
        return Err(Error::OrderMismatch);
    }
    (0..ctx.d).map(|i| aut_pow(t, tau, ((ctx.d - i) % ctx.d) as u64)).collect()
}

/// `prod_i tau^-i(x^(e^i))` on a tower carrying the lift `tau`.
pub fn twist_apply(t: &Tower, tau: &Automorphism, x: &TElem, ctx: &DescentContext) -> Result<TElem> {
    let inv = tau_inv_pows(t, tau, ctx)?;
    let mut acc = t.one();
    for (i, s) in inv.iter().enumerate() {
        let y = t.pow(x, (ctx.e as i64).pow(i as u32))?;
        acc = t.mul(&acc, &s.apply(t, &y));
    }
    Ok(acc)
}

/// `Phi(x) = [prod_i tau^-i(x^(e^i))]^l`.
pub fn phi_apply(t: &Tower, tau: &Automorphism, x: &TElem, ctx: &DescentContext) -> Result<TElem> {
    t.pow(&twist_apply(t, tau, x, ctx)?, ctx.l as i64)
}

/// Checks `tau(Phi(x)) / Phi(x)^e = w^p` for `w = tau(x^(l (1 - e^d)/p))` and
/// returns `w`.
pub fn verify_twisted_lift(t: &Tower, tau: &Automorphism, x: &TElem, ctx: &DescentContext) -> Result<TElem> {
    let k = ctx.lift_exponent()?;
    let xt = phi_apply(t, tau, x, ctx)?;
    let w = tau.apply(t, &t.pow(x, k)?);
    let lhs = tau.apply(t, &xt);
    let rhs = t.mul(&t.pow(&xt, ctx.e as i64)?, &t.pow(&w, t.p as i64)?);
    if lhs != rhs {
        return Err(Error::IdentityFailed("tau(Phi(x)) = Phi(x)^e w^p".into()));
    }
    Ok(w)
}
