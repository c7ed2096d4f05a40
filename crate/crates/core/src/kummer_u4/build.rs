use super::*;
use crate::galois::{commutator, frattini_surjective, enumerate_group, iso_to_unipotent, superdiagonal, verify_presentation_u4};
use crate::galois::{GroupTable, PresentationReport, UnipotentMatrix};
use crate::tower::{pth_root_tower, RootStatus};

/// `L = F(ra, rb, rA)` with its generating automorphisms.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    pub tower: Tower,
    pub big_a: TElem,
    pub sigma_a: Automorphism,
    pub sigma_b: Automorphism,
    pub sigma_big_a: Automorphism,
    pub table: GroupTable,
    pub iso: Vec<UnipotentMatrix>,
}

/// Builds the Heisenberg extension attached to `N(alpha) = b`, with
/// `A = fa * A0` and `s_a(rA) = rA * rb / alpha`.
pub fn heisenberg_build(base: &BaseField, p: u32, a: &BaseElem, b: &BaseElem, alpha: &str, fa: &BaseElem) -> Result<Heisenberg> {
    if !kummer_independent(base, &[a.clone(), b.clone()], p)? {
        return Err(Error::NotAField("a and b are dependent modulo p-th powers".into()));
    }
    let t = Tower::new(base.clone(), p)?;
    let t = t.adjoin("ra", GenKind::Kummer, t.from_base(a.clone()))?;
    let alpha = t.parse(alpha)?;
    if t.support_gens(&alpha).iter().any(|&g| g != 0) {
        return Err(Error::Precondition("alpha must lie in F(ra)".into()));
    }
    let sa = kummer_shift(&t, 0)?;
    let n = norm_along(&t, &sa, &alpha, p as u64)?;
    if t.as_base(&n).as_ref() != Some(b) {
        return Err(Error::NormMismatch(format!("N(alpha) = {}", t.to_string(&n))));
    }
    if base.is_zero(fa) {
        return Err(Error::ZeroElement);
    }
    let big_a = t.scale(&a0_from_alpha(&t, &alpha, &sa, p), fa);
    let l = t.adjoin("rb", GenKind::Kummer, t.from_base(b.clone()))?;
    let l = l.adjoin("rA", GenKind::Kummer, big_a.clone())?;
    let xi = l.xi()?.clone();
    let (ra, rb, ra_) = (l.gen(0), l.gen(1), l.gen(2));
    let shifted = l.div(&l.mul(&ra_, &rb), &alpha)?;
    let sigma_a = Automorphism::new(&l, vec![l.scale(&ra, &xi), rb.clone(), shifted], 0)?;
    let sigma_b = Automorphism::new(&l, vec![ra, l.scale(&rb, &xi), ra_], 0)?;
    let cap = (p as u64).pow(2);
    let sigma_big_a = commutator(&l, &sigma_a, &sigma_b, cap)?;
    let table = enumerate_group(&l, &[sigma_a.clone(), sigma_b.clone()], (p as usize).pow(3))?;
    let iso = iso_to_unipotent(&table, &superdiagonal(3, p))?;
    Ok(Heisenberg { tower: l, big_a, sigma_a, sigma_b, sigma_big_a, table, iso })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub variant: u8,
    /// Replaces the solver's `delta`; it must satisfy both quotient equations.
    pub delta: Option<TElem>,
    /// Exponents `(i, j)` in `s_a(rd) = xi^i ...`, `s_c(rd) = xi^j ...`.
    pub xi_powers: (u32, u32),
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { variant: 2, delta: None, xi_powers: (0, 0) }
    }
}

/// Everything produced by [`u4_build`]. Elements named after `E` live in the
/// first two levels of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerTrace {
    pub inst: KummerInstance,
    pub variant: u8,
    pub xi_powers: (u32, u32),
    pub big_b: TElem,
    pub e: TElem,
    pub c1: TElem,
    pub c2: TElem,
    pub a0: TElem,
    pub c0: TElem,
    pub big_a: TElem,
    pub big_c: TElem,
    pub delta: TElem,
    pub fa: BaseElem,
    pub fc: BaseElem,
    /// `E(rb, rA, rC, rd)` over generators `ra, rc, rb, rA, rC, rd`.
    pub m: Tower,
    pub sigma_a: Automorphism,
    pub sigma_b: Automorphism,
    pub sigma_c: Automorphism,
}

pub fn u4_build(inst: &KummerInstance, opts: &BuildOptions) -> Result<KummerTrace> {
    let t = &inst.e;
    let p = t.p;
    let (sa, sc) = (inst.sigma_a(), inst.sigma_c());
    let big_b = t.div(&inst.gamma, &inst.alpha)?;
    let a0 = a0_from_alpha(t, &inst.alpha, &sa, p);
    let c0 = a0_from_alpha(t, &inst.gamma, &sc, p);
    check_operator_identities(t, &sa, &sc, &big_b, &a0, &c0)?;
    let sac = product_shift(t, &sa, &sc)?;
    let e = hilbert90_solve(t, &sac, &big_b, p as u64)?;
    let (c1, c2) = c1c2_from_e(t, &sa, &sc, &e, &big_b, opts.variant)?;
    let md = modification(t, &sa, &sc, &c1, &c2, &a0, &c0)?;
    let delta = match &opts.delta {
        Some(d) => {
            let x = t.mul(&md.a, &t.pow(&c1, -(p as i64))?);
            let y = t.mul(&md.c, &t.pow(&c2, -(p as i64))?);
            check_delta(t, &sa, &sc, d, &x, &y)?;
            d.clone()
        }
        None => connell_delta(t, &sa, &sc, &md.a, &md.c, &c1, &c2)?,
    };
    let m = assemble_tower(inst, &md.a, &md.c, &delta)?;
    let (sigma_a, sigma_b, sigma_c) = m_automorphisms(inst, &m, &c1, &c2, opts.xi_powers)?;
    let trace = KummerTrace {
        inst: inst.clone(),
        variant: opts.variant,
        xi_powers: opts.xi_powers,
        big_b,
        e,
        c1,
        c2,
        a0,
        c0,
        big_a: md.a,
        big_c: md.c,
        delta,
        fa: md.fa,
        fc: md.fc,
        m,
        sigma_a,
        sigma_b,
        sigma_c,
    };
    wstar_dimension(&trace)?;
    let report = trace.presentation();
    if let Some(r) = report.relations.iter().find(|r| !r.pass) {
        return Err(Error::RelationFailed(r.name.clone()));
    }
    Ok(trace)
}

/// `s_a(A0)/A0 = N_{s_c}(B)` and `s_c(C0)/C0 = N_{s_a}(B)^-1`.
pub fn check_operator_identities(
    t: &Tower,
    sa: &Automorphism,
    sc: &Automorphism,
    big_b: &TElem,
    a0: &TElem,
    c0: &TElem,
) -> Result<()> {
    let p = t.p as u64;
    if t.div(&sa.apply(t, a0), a0)? != norm_along(t, sc, big_b, p)? {
        return Err(Error::IdentityViolated("s_a(A0)/A0 = N_c(B)".into()));
    }
    if t.div(&sc.apply(t, c0), c0)? != t.inv(&norm_along(t, sa, big_b, p)?)? {
        return Err(Error::IdentityViolated("s_c(C0)/C0 = N_a(B)^-1".into()));
    }
    Ok(())
}

/// `M = E(rb, rA, rC, rd)`.
pub fn assemble_tower(inst: &KummerInstance, big_a: &TElem, big_c: &TElem, delta: &TElem) -> Result<Tower> {
    let t = &inst.e;
    t.adjoin("rb", GenKind::Kummer, t.from_base(inst.b.clone()))?
        .adjoin("rA", GenKind::Kummer, big_a.clone())?
        .adjoin("rC", GenKind::Kummer, big_c.clone())?
        .adjoin("rd", GenKind::Kummer, delta.clone())
}

/// The lifts of `s_a, s_b, s_c` to `M` fixed by the normalizations
/// `s_a(rA) = rA rb / alpha`, `s_c(rC) = rC rb / gamma`.
pub fn m_automorphisms(
    inst: &KummerInstance,
    m: &Tower,
    c1: &TElem,
    c2: &TElem,
    (i, j): (u32, u32),
) -> Result<(Automorphism, Automorphism, Automorphism)> {
    let xi = m.xi()?.clone();
    let xi_pow = |k: u32| m.base.pow(&xi, k as i64).unwrap();
    let g: Vec<TElem> = (0..6).map(|k| m.gen(k)).collect();
    let (ra, rc, rb, r_a, r_c, rd) = (&g[0], &g[1], &g[2], &g[3], &g[4], &g[5]);
    let sa_a = m.div(&m.mul(r_a, rb), &inst.alpha)?;
    let sa_d = m.scale(&m.div(&m.mul(rd, r_c), c2)?, &xi_pow(i));
    let sigma_a = Automorphism::new(m, vec![m.scale(ra, &xi), rc.clone(), rb.clone(), sa_a, r_c.clone(), sa_d], 0)?;
    let sc_c = m.div(&m.mul(r_c, rb), &inst.gamma)?;
    let sc_d = m.scale(&m.div(&m.mul(rd, r_a), c1)?, &xi_pow(j));
    let sigma_c = Automorphism::new(m, vec![ra.clone(), m.scale(rc, &xi), rb.clone(), r_a.clone(), sc_c, sc_d], 0)?;
    let mut bimg = g.clone();
    bimg[2] = m.scale(rb, &xi);
    let sigma_b = Automorphism::new(m, bimg, 0)?;
    Ok((sigma_a, sigma_b, sigma_c))
}

impl KummerTrace {
    pub fn presentation(&self) -> PresentationReport {
        verify_presentation_u4(&self.m, [&self.sigma_a, &self.sigma_b, &self.sigma_c], self.m.p)
    }

    pub fn generators(&self) -> Vec<Automorphism> {
        vec![self.sigma_a.clone(), self.sigma_b.clone(), self.sigma_c.clone()]
    }

    /// `p^6` once `dim W* = 4` and the generators surject onto
    /// `Gal(F(ra, rb, rc)/F)`.
    pub fn order_certificate(&self) -> Result<u64> {
        let dim = wstar_dimension(self)?;
        if !frattini_surjective(&self.m, &self.generators(), &[0, 2, 1]) {
            return Err(Error::NotSurjective(3));
        }
        Ok((self.m.p as u64).pow(2 + dim as u32))
    }

    /// Equations (1)-(4): the action of `s_a, s_c` on `delta, A, C`.
    pub fn module_equations(&self) -> Result<Vec<(&'static str, bool)>> {
        let t = &self.inst.e;
        let p = t.p as i64;
        let (sa, sc) = (self.inst.sigma_a(), self.inst.sigma_c());
        let b = t.from_base(self.inst.b.clone());
        let x = t.mul(&self.big_a, &t.pow(&self.c1, -p)?);
        let y = t.mul(&self.big_c, &t.pow(&self.c2, -p)?);
        Ok(vec![
            ("s_c(delta) = delta A C1^-p", sc.apply(t, &self.delta) == t.mul(&self.delta, &x)),
            ("s_a(delta) = delta C C2^-p", sa.apply(t, &self.delta) == t.mul(&self.delta, &y)),
            ("s_a(A) = A b alpha^-p", sa.apply(t, &self.big_a) == t.mul(&t.mul(&self.big_a, &b), &t.pow(&self.inst.alpha, -p)?)),
            ("s_c(C) = C b gamma^-p", sc.apply(t, &self.big_c) == t.mul(&t.mul(&self.big_c, &b), &t.pow(&self.inst.gamma, -p)?)),
            ("s_c(A) = A", sc.apply(t, &self.big_a) == self.big_a),
            ("s_a(C) = C", sa.apply(t, &self.big_c) == self.big_c),
        ])
    }
}

/// Dimension of the span of `b, A, C, delta` in `E^x/(E^x)^p`. The module
/// equations together with `[b]_E != 0` force dimension 4; otherwise the
/// exponent vectors are searched for a `p`-th power.
pub fn wstar_dimension(tr: &KummerTrace) -> Result<usize> {
    let t = &tr.inst.e;
    let p = t.p;
    let inst = &tr.inst;
    let b_nonzero = kummer_independent(&t.base, &[inst.a.clone(), inst.b.clone(), inst.c.clone()], p)?;
    let eqs = tr.module_equations()?;
    if b_nonzero && eqs.iter().all(|(_, ok)| *ok) {
        return Ok(4);
    }
    let classes = [t.from_base(inst.b.clone()), tr.big_a.clone(), tr.big_c.clone(), tr.delta.clone()];
    if classes.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroElement);
    }
    let names = ["b", "A", "C", "delta"];
    for idx in 1..(p as usize).pow(4) {
        let mut eps = [0u32; 4];
        let mut k = idx;
        for e in eps.iter_mut() {
            *e = (k % p as usize) as u32;
            k /= p as usize;
        }
        let mut x = t.one();
        for (c, &e) in classes.iter().zip(&eps) {
            x = t.mul(&x, &t.pow(c, e as i64)?);
        }
        if let RootStatus::Power(_) = pth_root_tower(t, 2, &x) {
            let word: Vec<String> =
                names.iter().zip(&eps).filter(|(_, &e)| e != 0).map(|(n, e)| format!("{n}^{e}")).collect();
            return Err(Error::DimensionDeficient(format!("{} is a p-th power in E", word.join("*"))));
        }
    }
    let failed: Vec<&str> = eqs.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let why = if b_nonzero { format!("failed: {}", failed.join(", ")) } else { "[b]_E = 0".into() };
    Err(Error::DimensionDeficient(why))
}
