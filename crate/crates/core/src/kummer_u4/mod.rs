//! Heisenberg and `U_4(F_p)` extensions over fields with a primitive `p`-th
//! root of unity.

mod build;
mod search;

pub use build::{check_operator_identities, heisenberg_build, u4_build, wstar_dimension, BuildOptions, Heisenberg, KummerTrace};
pub use search::instance_generate;

use crate::arith::{BaseElem, BaseField};
use crate::classes::kummer::kummer_independent;
use crate::error::{Error, Result};
use crate::galois::{aut_compose, aut_pow, Automorphism};
use crate::tower::{GenKind, TElem, Tower};

/// Norm data `N(alpha) = b = N(gamma)` with `alpha` in `F(ra)` and `gamma` in
/// `F(rc)`, both stored in the bicyclic tower `E = F(ra, rc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerInstance {
    pub e: Tower,
    pub a: BaseElem,
    pub b: BaseElem,
    pub c: BaseElem,
    pub alpha: TElem,
    pub gamma: TElem,
}

/// `F(ra, rc)` with `ra^p = a`, `rc^p = c`.
pub fn bicyclic(base: &BaseField, p: u32, a: &BaseElem, c: &BaseElem) -> Result<Tower> {
    let t = Tower::new(base.clone(), p)?;
    let ra = t.from_base(a.clone());
    let t = t.adjoin("ra", GenKind::Kummer, ra)?;
    let rc = t.from_base(c.clone());
    t.adjoin("rc", GenKind::Kummer, rc)
}

/// `g_i -> xi * g_i` on generator `i`, identity on the others.
pub fn kummer_shift(t: &Tower, i: usize) -> Result<Automorphism> {
    let xi = t.xi()?.clone();
    let images = (0..t.len()).map(|k| if k == i { t.scale(&t.gen(k), &xi) } else { t.gen(k) }).collect();
    Automorphism::new(t, images, 0)
}

impl KummerInstance {
    pub fn new(base: &BaseField, p: u32, a: BaseElem, c: BaseElem, alpha: &str, gamma: &str) -> Result<Self> {
        let e = bicyclic(base, p, &a, &c)?;
        let alpha = e.parse(alpha)?;
        let gamma = e.parse(gamma)?;
        Self::from_parts(e, alpha, gamma)
    }

    pub fn from_parts(e: Tower, alpha: TElem, gamma: TElem) -> Result<Self> {
        if e.support_gens(&alpha).iter().any(|&g| g != 0) || e.support_gens(&gamma).iter().any(|&g| g != 1) {
            return Err(Error::Precondition("alpha must lie in F(ra) and gamma in F(rc)".into()));
        }
        let p = e.p;
        let a = e.as_base(&e.gens[0].rhs).unwrap();
        let c = e.as_base(&e.gens[1].rhs).unwrap();
        let sa = kummer_shift(&e, 0)?;
        let sc = kummer_shift(&e, 1)?;
        let na = norm_along(&e, &sa, &alpha, p as u64)?;
        let nc = norm_along(&e, &sc, &gamma, p as u64)?;
        if na != nc {
            return Err(Error::NormMismatch(format!(
                "N(alpha) = {} but N(gamma) = {}",
                e.to_string(&na),
                e.to_string(&nc)
            )));
        }
        let b = e.as_base(&na).ok_or(Error::NotInBaseField("N(alpha)".into()))?;
        if e.base.is_zero(&b) {
            return Err(Error::ZeroElement);
        }
        if !kummer_independent(&e.base, &[a.clone(), b.clone(), c.clone()], p)? {
            return Err(Error::Precondition("a, b, c are dependent modulo p-th powers".into()));
        }
        Ok(KummerInstance { e, a, b, c, alpha, gamma })
    }

    pub fn p(&self) -> u32 {
        self.e.p
    }

    pub fn sigma_a(&self) -> Automorphism {
        kummer_shift(&self.e, 0).unwrap()
    }

    pub fn sigma_c(&self) -> Automorphism {
        kummer_shift(&self.e, 1).unwrap()
    }
}

/// `x * s(x) * ... * s^{order-1}(x)`.
pub fn norm_along(t: &Tower, s: &Automorphism, x: &TElem, order: u64) -> Result<TElem> {
    if !aut_pow(t, s, order)?.is_identity(t) {
        return Err(Error::OrderMismatch);
    }
    let mut acc = x.clone();
    let mut y = x.clone();
    for _ in 1..order {
        y = s.apply(t, &y);
        acc = t.mul(&acc, &y);
    }
    Ok(acc)
}

/// `prod_{i=0}^{p-2} s^i(x^{p-i-1})`.
pub fn a0_from_alpha(t: &Tower, x: &TElem, s: &Automorphism, p: u32) -> TElem {
    let mut acc = t.one();
    let mut conj = x.clone();
    for i in 0..p.saturating_sub(1) {
        acc = t.mul(&acc, &t.pow(&conj, (p - i - 1) as i64).unwrap());
        conj = s.apply(t, &conj);
    }
    acc
}

/// `(s - 1) * sum_{i=0}^{p-2} (p-i-1) s^i == sum_{i=0}^{p-1} s^i - p` in `Z[s]/(s^p - 1)`.
pub fn group_ring_identity(p: usize) -> bool {
    let mut lhs = vec![0i64; p];
    for i in 0..p.saturating_sub(1) {
        let c = (p - i - 1) as i64;
        lhs[(i + 1) % p] += c;
        lhs[i] -= c;
    }
    let mut rhs = vec![1i64; p];
    rhs[0] -= p as i64;
    lhs == rhs
}

/// Monomials in the generators `gens`, in increasing index order.
fn basis(t: &Tower, gens: &[usize]) -> Vec<TElem> {
    let mut out = vec![t.one()];
    for &g in gens {
        let gp: Vec<TElem> = (0..t.p as i64).map(|e| t.pow(&t.gen(g), e).unwrap()).collect();
        out = gp.iter().flat_map(|m| out.iter().map(move |x| t.mul(x, m))).collect();
    }
    out
}

/// Solves `s(e)/e = b` for `e != 0`, given `N_s(b) = 1`.
pub fn hilbert90_solve(t: &Tower, s: &Automorphism, b: &TElem, order: u64) -> Result<TElem> {
    let all: Vec<usize> = (0..t.len()).collect();
    hilbert90_solve_in(t, s, b, order, &all)
}

/// As [`hilbert90_solve`], trying resolvents only on monomials in `gens`, so
/// that the answer stays in any `s`-stable subfield generated by them.
pub fn hilbert90_solve_in(t: &Tower, s: &Automorphism, b: &TElem, order: u64, gens: &[usize]) -> Result<TElem> {
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !t.is_one(&norm_along(t, s, b, order)?) {
        return Err(Error::NormNotOne);
    }
    if t.is_one(b) {
        return Ok(t.one());
    }
    // e' = sum B^(i) s^i(theta) satisfies b * s(e') = e'
    let mut partial = vec![t.one()];
    for i in 1..order as usize {
        let prev = s.apply(t, &partial[i - 1]);
        partial.push(t.mul(b, &prev));
    }
    for theta in basis(t, gens) {
        let mut acc = t.zero();
        let mut conj = theta;
        for pi in &partial {
            acc = t.add(&acc, &t.mul(pi, &conj));
            conj = s.apply(t, &conj);
        }
        if !acc.is_zero() {
            let e = t.inv(&acc)?;
            debug_assert_eq!(t.mul(b, &e), s.apply(t, &e));
            return Ok(e);
        }
    }
    Err(Error::ResolventExhausted)
}

/// The pair `(C1, C2)` with `B = (s_a(C1)/C1) * (C2/s_c(C2))`.
pub fn c1c2_from_e(
    t: &Tower,
    sa: &Automorphism,
    sc: &Automorphism,
    e: &TElem,
    b: &TElem,
    variant: u8,
) -> Result<(TElem, TElem)> {
    let p = t.p;
    let (c1, c2) = match variant {
        1 => (sc.apply(t, e), t.inv(e)?),
        2 => {
            let eb = t.mul(e, b);
            let mut acc = t.one();
            let mut conj = eb;
            for _ in 0..p - 1 {
                acc = t.mul(&acc, &conj);
                conj = sc.apply(t, &conj);
            }
            (e.clone(), acc)
        }
        v => return Err(Error::Precondition(format!("unknown variant {v}"))),
    };
    check_b_identity(t, sa, sc, &c1, &c2, b)?;
    Ok((c1, c2))
}

pub fn check_b_identity(
    t: &Tower,
    sa: &Automorphism,
    sc: &Automorphism,
    c1: &TElem,
    c2: &TElem,
    b: &TElem,
) -> Result<()> {
    let lhs = t.mul(&t.div(&sa.apply(t, c1), c1)?, &t.div(c2, &sc.apply(t, c2))?);
    if lhs != *b {
        return Err(Error::IdentityViolated("B = s_a(C1)/C1 * C2/s_c(C2)".into()));
    }
    Ok(())
}

/// `A = N_{s_c}(C1)`, `C = N_{s_a}(C2)` with the scalings `A/A0`, `C/C0` in `F`.
pub struct Modified {
    pub a: TElem,
    pub c: TElem,
    pub fa: BaseElem,
    pub fc: BaseElem,
}

pub fn modification(
    t: &Tower,
    sa: &Automorphism,
    sc: &Automorphism,
    c1: &TElem,
    c2: &TElem,
    a0: &TElem,
    c0: &TElem,
) -> Result<Modified> {
    let p = t.p as u64;
    let a = norm_along(t, sc, c1, p)?;
    let c = norm_along(t, sa, c2, p)?;
    let fa = t.as_base(&t.div(&a, a0)?).ok_or(Error::NotInBaseField("A/A0".into()))?;
    let fc = t.as_base(&t.div(&c, c0)?).ok_or(Error::NotInBaseField("C/C0".into()))?;
    Ok(Modified { a, c, fa, fc })
}

/// `delta` with `s_c(delta)/delta = A C1^-p` and `s_a(delta)/delta = C C2^-p`.
#[allow(clippy::too_many_arguments)]
pub fn connell_delta(
    t: &Tower,
    sa: &Automorphism,
    sc: &Automorphism,
    a: &TElem,
    c: &TElem,
    c1: &TElem,
    c2: &TElem,
) -> Result<TElem> {
    let p = t.p as u64;
    let x = t.mul(a, &t.pow(c1, -(p as i64))?);
    let y = t.mul(c, &t.pow(c2, -(p as i64))?);
    if !t.is_one(&norm_along(t, sc, &x, p)?) || !t.is_one(&norm_along(t, sa, &y, p)?) {
        return Err(Error::NormNotOne);
    }
    if t.div(&sa.apply(t, &x), &x)? != t.div(&sc.apply(t, &y), &y)? {
        return Err(Error::CompatibilityFailed);
    }
    let d1 = hilbert90_solve(t, sc, &x, p)?;
    let u = t.div(&t.div(&sa.apply(t, &d1), &d1)?, &y)?;
    if sc.apply(t, &u) != u {
        return Err(Error::CompatibilityFailed);
    }
    let fixed: Vec<usize> = (0..t.len()).filter(|&i| i != 1).collect();
    let w = hilbert90_solve_in(t, sa, &t.inv(&u)?, p, &fixed)?;
    let delta = t.mul(&d1, &w);
    check_delta(t, sa, sc, &delta, &x, &y)?;
    Ok(delta)
}

pub(crate) fn check_delta(
    t: &Tower,
    sa: &Automorphism,
    sc: &Automorphism,
    delta: &TElem,
    x: &TElem,
    y: &TElem,
) -> Result<()> {
    if t.div(&sc.apply(t, delta), delta)? != *x {
        return Err(Error::RelationFailed("s_c(delta)/delta = A C1^-p".into()));
    }
    if t.div(&sa.apply(t, delta), delta)? != *y {
        return Err(Error::RelationFailed("s_a(delta)/delta = C C2^-p".into()));
    }
    Ok(())
}

/// `s_a s_c` on `E`.
pub fn product_shift(t: &Tower, sa: &Automorphism, sc: &Automorphism) -> Result<Automorphism> {
    aut_compose(t, sa, sc)
}
