use super::*;
use crate::classes::kummer::kummer_independent;
use crate::galois::{aut_compose, aut_order, character_value, verify_presentation_u4, PresentationReport};
use crate::kummer_u4::{u4_build, BuildOptions, KummerInstance, KummerTrace};

/// The twisted extension `M~ = L(rA, rC, rd)` with radicands `Phi(A)`,
/// `Phi(C)`, `Phi(delta)`, its `U_4` generators, and the lift `sigma0~` of
/// `sigma0` that commutes with them.
#[derive(Clone, Debug)]
pub struct DescentTrace {
    pub ctx: DescentContext,
    pub untwisted: KummerTrace,
    /// `tau` on `L = F(ra, rc, rb)`.
    pub tau_l: Automorphism,
    /// `(name, r)` with `Phi(x) = x r^p` for `x = a, b, c`.
    pub twist_roots: Vec<(String, BaseElem)>,
    /// `(name, w)` with `tau(Phi(x)) = Phi(x)^e w^p` for `x = A, C, delta`.
    pub lift_roots: Vec<(String, TElem)>,
    pub big_a: TElem,
    pub big_c: TElem,
    pub delta: TElem,
    pub c1: TElem,
    pub c2: TElem,
    pub kappa_a: TElem,
    pub kappa_c: TElem,
    pub m: Tower,
    pub sigma_a: Automorphism,
    pub sigma_b: Automorphism,
    pub sigma_c: Automorphism,
    /// The first lift `tau'` and the exponent with `sigma0~ = tau'^power`.
    pub tau_m: Automorphism,
    pub power: u64,
    pub sigma0: Automorphism,
    /// Generators of the fixed field `M0`, one per level of `M~`.
    pub fixed_gens: Vec<TElem>,
}

/// Least `m > 0` with `m = 1 mod d` and `p^2 | m`; `p^2` kills `U_4(F_p)`
/// for every `p`.
pub fn splitting_power(d: u32, p: u32) -> u64 {
    let pp = (p as u64).pow(2);
    (1..=d as u64).map(|k| k * pp).find(|m| m % d as u64 == 1 % d as u64).unwrap()
}

fn commutes(t: &Tower, f: &Automorphism, g: &Automorphism) -> Result<bool> {
    Ok(aut_compose(t, f, g)? == aut_compose(t, g, f)?)
}

pub fn build_twisted_tower(ctx: &DescentContext, inst: &KummerInstance) -> Result<DescentTrace> {
    let p = ctx.p;
    if inst.e.base != ctx.f || inst.p() != p {
        return Err(Error::TowerMismatch);
    }
    let tr = u4_build(inst, &BuildOptions::default())?;
    let e = &inst.e;
    let l = tr.m.truncate(3);
    let tau_l = h_lift(&l, ctx)?;
    let tau_e = tau_l.restrict(2);
    let (sa, sc) = (inst.sigma_a(), inst.sigma_c());
    for (name, s) in [("s_a", &sa), ("s_c", &sc)] {
        if !commutes(e, &tau_e, s)? {
            return Err(Error::NotCommuting(format!("tau and {name} on E")));
        }
    }
    let mut twist_roots = Vec::new();
    for (name, x) in [("a", &inst.a), ("b", &inst.b), ("c", &inst.c)] {
        twist_roots.push((name.to_string(), ctx.twist_root(x)?));
    }
    let phi = |x: &TElem| phi_apply(e, &tau_e, x, ctx);
    let (big_a, big_c, delta) = (phi(&tr.big_a)?, phi(&tr.big_c)?, phi(&tr.delta)?);
    let (c1, c2) = (phi(&tr.c1)?, phi(&tr.c2)?);
    let mut lift_roots = Vec::new();
    for (name, x) in [("A", &tr.big_a), ("C", &tr.big_c), ("delta", &tr.delta)] {
        lift_roots.push((name.to_string(), verify_twisted_lift(e, &tau_e, x, ctx)?));
    }
    // Phi(b) = b w^p turns s_a(Phi A) = Phi(A) Phi(b) Phi(alpha)^-p into
    // s_a(Phi A) = Phi(A) b kappa_a^p
    let wb = e.from_base(twist_roots[1].1.clone());
    let kappa_a = e.div(&wb, &phi(&inst.alpha)?)?;
    let kappa_c = e.div(&wb, &phi(&inst.gamma)?)?;
    let m = l
        .adjoin("rA", GenKind::Kummer, big_a.clone())?
        .adjoin("rC", GenKind::Kummer, big_c.clone())?
        .adjoin("rd", GenKind::Kummer, delta.clone())?;
    let xi = m.xi()?.clone();
    let xi_pow = |k: u32| m.base.pow(&xi, k as i64).unwrap();
    let g: Vec<TElem> = (0..6).map(|k| m.gen(k)).collect();
    let (ra, rc, rb, r_a, r_c, rd) = (&g[0], &g[1], &g[2], &g[3], &g[4], &g[5]);
    let (i, j) = tr.xi_powers;
    let sigma_a = Automorphism::new(
        &m,
        vec![
            m.scale(ra, &xi),
            rc.clone(),
            rb.clone(),
            m.mul(&m.mul(r_a, rb), &kappa_a),
            r_c.clone(),
            m.scale(&m.div(&m.mul(rd, r_c), &c2)?, &xi_pow(i)),
        ],
        0,
    )?;
    let sigma_c = Automorphism::new(
        &m,
        vec![
            ra.clone(),
            m.scale(rc, &xi),
            rb.clone(),
            r_a.clone(),
            m.mul(&m.mul(r_c, rb), &kappa_c),
            m.scale(&m.div(&m.mul(rd, r_a), &c1)?, &xi_pow(j)),
        ],
        0,
    )?;
    let mut bimg = g.clone();
    bimg[2] = m.scale(rb, &xi);
    let sigma_b = Automorphism::new(&m, bimg, 0)?;

    let mut timg = tau_l.images.clone();
    for (k, (_, w)) in lift_roots.iter().enumerate() {
        timg.push(m.mul(&m.pow(&g[3 + k], ctx.e as i64)?, w));
    }
    let tau_m = Automorphism::new(&m, timg, ctx.frob)?;
    let power = splitting_power(ctx.d, p);
    let sigma0 = aut_pow(&m, &tau_m, power)?;

    let mut out = DescentTrace {
        ctx: ctx.clone(),
        untwisted: tr,
        tau_l,
        twist_roots,
        lift_roots,
        big_a,
        big_c,
        delta,
        c1,
        c2,
        kappa_a,
        kappa_c,
        m,
        sigma_a,
        sigma_b,
        sigma_c,
        tau_m,
        power,
        sigma0,
        fixed_gens: Vec::new(),
    };
    out.wstar_dimension()?;
    if let Some(r) = out.presentation().relations.iter().find(|r| !r.pass) {
        return Err(Error::RelationFailed(r.name.clone()));
    }
    out.check_commuting()?;
    out.fixed_gens = out.descend_fixed_field()?;
    Ok(out)
}

/// `sum_k s^k(u g_i)` for each generator `g_i`, with `u` running over powers
/// of a primitive constant until the average stays at level `i + 1`. For the
/// lift `s = sigma0~` of order `d`, each such element generates
/// `M0 /\ M~_i` over `M0 /\ M~_{i-1}`, so `[M0 : F0] = p^6`.
pub fn descend_fixed_field(m: &Tower, s: &Automorphism, d: u32) -> Result<Vec<TElem>> {
    let pows: Vec<Automorphism> = (0..d as u64).map(|k| aut_pow(m, s, k)).collect::<Result<_>>()?;
    let ff = m.base.coeff().finite().cloned().ok_or(Error::ProjectorDegenerate)?;
    let prim = ff.primitive_element();
    let unit = |k: u32| m.base.from_scalar(crate::arith::Scalar::F(ff.pow(prim, k as u64)));
    let mut out = Vec::new();
    for i in 0..m.len() {
        let mut found = None;
        for k in 0..ff.order() - 1 {
            let x = m.scale(&m.gen(i), &unit(k));
            let y = pows.iter().fold(m.zero(), |acc, s| m.add(&acc, &s.apply(m, &x)));
            if m.level(&y) == i + 1 && s.apply(m, &y) == y {
                found = Some(y);
                break;
            }
        }
        out.push(found.ok_or(Error::ProjectorDegenerate)?);
    }
    Ok(out)
}

impl DescentTrace {
    pub fn generators(&self) -> Vec<Automorphism> {
        vec![self.sigma_a.clone(), self.sigma_b.clone(), self.sigma_c.clone()]
    }

    pub fn presentation(&self) -> PresentationReport {
        verify_presentation_u4(&self.m, [&self.sigma_a, &self.sigma_b, &self.sigma_c], self.m.p)
    }

    /// The twisted module equations on `E`.
    pub fn module_equations(&self) -> Result<Vec<(&'static str, bool)>> {
        let inst = &self.untwisted.inst;
        let t = &inst.e;
        let p = t.p as i64;
        let (sa, sc) = (inst.sigma_a(), inst.sigma_c());
        let b = t.from_base(inst.b.clone());
        let x = t.mul(&self.big_a, &t.pow(&self.c1, -p)?);
        let y = t.mul(&self.big_c, &t.pow(&self.c2, -p)?);
        Ok(vec![
            ("s_c(delta) = delta A C1^-p", sc.apply(t, &self.delta) == t.mul(&self.delta, &x)),
            ("s_a(delta) = delta C C2^-p", sa.apply(t, &self.delta) == t.mul(&self.delta, &y)),
            ("s_a(A) = A b kappa_a^p", sa.apply(t, &self.big_a) == t.mul(&t.mul(&self.big_a, &b), &t.pow(&self.kappa_a, p)?)),
            ("s_c(C) = C b kappa_c^p", sc.apply(t, &self.big_c) == t.mul(&t.mul(&self.big_c, &b), &t.pow(&self.kappa_c, p)?)),
            ("s_c(A) = A", sc.apply(t, &self.big_a) == self.big_a),
            ("s_a(C) = C", sa.apply(t, &self.big_c) == self.big_c),
        ])
    }

    /// `4` when `a, b, c` are independent and the module equations hold.
    pub fn wstar_dimension(&self) -> Result<usize> {
        let inst = &self.untwisted.inst;
        let indep = kummer_independent(&inst.e.base, &[inst.a.clone(), inst.b.clone(), inst.c.clone()], self.ctx.p)?;
        if !indep {
            return Err(Error::DimensionDeficient("[b]_E = 0".into()));
        }
        let failed: Vec<&str> = self.module_equations()?.into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
        if !failed.is_empty() {
            return Err(Error::DimensionDeficient(format!("failed: {}", failed.join(", "))));
        }
        Ok(4)
    }

    /// `sigma0~` has order `d`, restricts to `sigma0`, and commutes with the
    /// three generators.
    pub fn check_commuting(&self) -> Result<()> {
        let m = &self.m;
        if aut_order(m, &self.sigma0, self.ctx.d as u64)? != self.ctx.d as u64 {
            return Err(Error::OrderMismatch);
        }
        for (name, s) in [("s_a", &self.sigma_a), ("s_b", &self.sigma_b), ("s_c", &self.sigma_c)] {
            if !commutes(m, &self.sigma0, s)? {
                return Err(Error::NotCommuting(format!("sigma0~ and {name}")));
            }
        }
        Ok(())
    }

    pub fn descend_fixed_field(&self) -> Result<Vec<TElem>> {
        descend_fixed_field(&self.m, &self.sigma0, self.ctx.d)
    }

    /// `[M0 : F0]`, one factor `p` per fixed generator.
    pub fn fixed_degree(&self) -> u64 {
        (self.ctx.p as u64).pow(self.fixed_gens.len() as u32)
    }

    /// `chi_x(s)` for `x = a, b, c` (rows) and `s = s_a, s_b, s_c` (columns).
    pub fn character_table(&self) -> Option<Vec<Vec<u32>>> {
        let gens = self.generators();
        [0usize, 2, 1]
            .iter()
            .map(|&g| gens.iter().map(|s| character_value(&self.m, s, g)).collect::<Option<Vec<u32>>>())
            .collect()
    }
}
