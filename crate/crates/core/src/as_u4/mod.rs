//! Heisenberg and `U_4(F_p)` extensions in characteristic `p`, built from
//! `A = b*ta`, `C = b*tc`, `delta = b*ta*tc`.

use crate::arith::{BaseElem, BaseField};
use crate::classes::artin_schreier::as_independent;
use crate::error::{Error, Result};
use crate::galois::{
    commutator, enumerate_group, frattini_surjective, iso_to_unipotent, superdiagonal, verify_presentation_u4,
    Automorphism, GroupTable, PresentationReport, UnipotentMatrix,
};
use crate::tower::{in_wp_tower, GenKind, RootStatus, TElem, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsInstance {
    pub base: BaseField,
    pub a: BaseElem,
    pub b: BaseElem,
    pub c: BaseElem,
}

impl AsInstance {
    pub fn new(base: &BaseField, a: BaseElem, b: BaseElem, c: BaseElem) -> Result<Self> {
        if !base.is_function_field() || base.coeff().finite().is_none() {
            return Err(Error::WrongCharacteristic);
        }
        for x in [&a, &b, &c] {
            base.check(x)?;
        }
        if !as_independent(base, &[a.clone(), b.clone(), c.clone()])? {
            return Err(Error::NotAField("a, b, c are dependent modulo wp(F)".into()));
        }
        Ok(AsInstance { base: base.clone(), a, b, c })
    }

    pub fn p(&self) -> u32 {
        self.base.characteristic()
    }
}

/// `g_i -> g_i + 1` on generator `i`, identity on the others, then the
/// given overrides.
fn shift(t: &Tower, i: Option<usize>, overrides: &[(usize, TElem)]) -> Result<Automorphism> {
    let mut images: Vec<TElem> =
        (0..t.len()).map(|k| if Some(k) == i { t.add(&t.gen(k), &t.one()) } else { t.gen(k) }).collect();
    for (k, x) in overrides {
        images[*k] = x.clone();
    }
    Automorphism::new(t, images, 0)
}

#[derive(Clone, Debug)]
pub struct AsHeisenberg {
    pub tower: Tower,
    pub sigma_a: Automorphism,
    pub sigma_b: Automorphism,
    pub sigma_big_a: Automorphism,
    pub table: GroupTable,
    pub iso: Vec<UnipotentMatrix>,
}

/// `L = F(ta, tb, tA)` with `A = b*ta` and `s_a(tA) = tA + tb`.
pub fn heisenberg_as_build(base: &BaseField, a: &BaseElem, b: &BaseElem) -> Result<AsHeisenberg> {
    if !as_independent(base, &[a.clone(), b.clone()])? {
        return Err(Error::NotAField("a and b are dependent modulo wp(F)".into()));
    }
    let p = base.characteristic();
    let t = Tower::new(base.clone(), p)?;
    let t = t.adjoin("ta", GenKind::ArtinSchreier, t.from_base(a.clone()))?;
    let t = t.adjoin("tb", GenKind::ArtinSchreier, t.from_base(b.clone()))?;
    let big_a = t.scale(&t.gen(0), b);
    let l = t.adjoin("tA", GenKind::ArtinSchreier, big_a)?;
    let sigma_a = shift(&l, Some(0), &[(2, l.add(&l.gen(2), &l.gen(1)))])?;
    let sigma_b = shift(&l, Some(1), &[])?;
    let sigma_big_a = commutator(&l, &sigma_a, &sigma_b, (p as u64).pow(2))?;
    let table = enumerate_group(&l, &[sigma_a.clone(), sigma_b.clone()], (p as usize).pow(3))?;
    let iso = iso_to_unipotent(&table, &superdiagonal(3, p))?;
    Ok(AsHeisenberg { tower: l, sigma_a, sigma_b, sigma_big_a, table, iso })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsTrace {
    pub inst: AsInstance,
    /// `E = F(ta, tc)`.
    pub e: Tower,
    pub big_a: TElem,
    pub big_c: TElem,
    pub delta: TElem,
    /// `E(tb, tA, tC, td)` over generators `ta, tc, tb, tA, tC, td`.
    pub m: Tower,
    pub sigma_a: Automorphism,
    pub sigma_b: Automorphism,
    pub sigma_c: Automorphism,
}

pub fn u4_as_build(inst: &AsInstance) -> Result<AsTrace> {
    let p = inst.p();
    let t = Tower::new(inst.base.clone(), p)?;
    let e = t
        .adjoin("ta", GenKind::ArtinSchreier, t.from_base(inst.a.clone()))?
        .adjoin("tc", GenKind::ArtinSchreier, t.from_base(inst.c.clone()))?;
    let (ta, tc) = (e.gen(0), e.gen(1));
    let big_a = e.scale(&ta, &inst.b);
    let big_c = e.scale(&tc, &inst.b);
    let delta = e.scale(&e.mul(&ta, &tc), &inst.b);
    let m = e
        .adjoin("tb", GenKind::ArtinSchreier, e.from_base(inst.b.clone()))?
        .adjoin("tA", GenKind::ArtinSchreier, big_a.clone())?
        .adjoin("tC", GenKind::ArtinSchreier, big_c.clone())?
        .adjoin("td", GenKind::ArtinSchreier, delta.clone())?;
    let g: Vec<TElem> = (0..6).map(|k| m.gen(k)).collect();
    let sigma_a = shift(&m, Some(0), &[(3, m.add(&g[3], &g[2])), (5, m.add(&g[5], &g[4]))])?;
    let sigma_c = shift(&m, Some(1), &[(4, m.add(&g[4], &g[2])), (5, m.add(&g[5], &g[3]))])?;
    let sigma_b = shift(&m, Some(2), &[])?;
    let trace = AsTrace { inst: inst.clone(), e, big_a, big_c, delta, m, sigma_a, sigma_b, sigma_c };
    wstar_dimension_as(&trace)?;
    if let Some(r) = trace.presentation().relations.iter().find(|r| !r.pass) {
        return Err(Error::RelationFailed(r.name.clone()));
    }
    Ok(trace)
}

impl AsTrace {
    pub fn p(&self) -> u32 {
        self.m.p
    }

    pub fn generators(&self) -> Vec<Automorphism> {
        vec![self.sigma_a.clone(), self.sigma_b.clone(), self.sigma_c.clone()]
    }

    pub fn presentation(&self) -> PresentationReport {
        verify_presentation_u4(&self.m, [&self.sigma_a, &self.sigma_b, &self.sigma_c], self.p())
    }

    fn e_shifts(&self) -> (Automorphism, Automorphism) {
        (shift(&self.e, Some(0), &[]).unwrap(), shift(&self.e, Some(1), &[]).unwrap())
    }

    /// The difference identities for `s_a, s_c` acting on `delta, A, C`.
    pub fn module_equations(&self) -> Vec<(&'static str, bool)> {
        let t = &self.e;
        let (sa, sc) = self.e_shifts();
        let b = t.from_base(self.inst.b.clone());
        let d = |s: &Automorphism, x: &TElem| t.sub(&s.apply(t, x), x);
        vec![
            ("s_a(delta) - delta = C", d(&sa, &self.delta) == self.big_c),
            ("s_c(delta) - delta = A", d(&sc, &self.delta) == self.big_a),
            ("s_a(A) - A = b", d(&sa, &self.big_a) == b),
            ("s_c(C) - C = b", d(&sc, &self.big_c) == b),
            ("s_c(A) = A", d(&sc, &self.big_a).is_zero()),
            ("s_a(C) = C", d(&sa, &self.big_c).is_zero()),
        ]
    }

    /// `(s_a - 1)(s_c - 1) delta`.
    pub fn double_difference(&self) -> TElem {
        let t = &self.e;
        let (sa, sc) = self.e_shifts();
        let x = t.sub(&sc.apply(t, &self.delta), &self.delta);
        t.sub(&sa.apply(t, &x), &x)
    }

    /// `p^6` once `dim W* = 4` and the generators surject onto
    /// `Gal(F(ta, tb, tc)/F)`.
    pub fn order_certificate(&self) -> Result<u64> {
        let dim = wstar_dimension_as(self)?;
        if !frattini_surjective(&self.m, &self.generators(), &[0, 2, 1]) {
            return Err(Error::NotSurjective(3));
        }
        Ok((self.p() as u64).pow(2 + dim as u32))
    }
}

/// Dimension of the span of `b, A, C, delta` in `E/wp(E)`.
pub fn wstar_dimension_as(tr: &AsTrace) -> Result<usize> {
    let t = &tr.e;
    let p = t.p;
    let inst = &tr.inst;
    let b_nonzero = as_independent(&inst.base, &[inst.a.clone(), inst.b.clone(), inst.c.clone()])?;
    let eqs = tr.module_equations();
    if b_nonzero && eqs.iter().all(|(_, ok)| *ok) {
        return Ok(4);
    }
    let classes = [t.from_base(inst.b.clone()), tr.big_a.clone(), tr.big_c.clone(), tr.delta.clone()];
    let names = ["b", "A", "C", "delta"];
    for idx in 1..(p as usize).pow(4) {
        let mut eps = [0u32; 4];
        let mut k = idx;
        for e in eps.iter_mut() {
            *e = (k % p as usize) as u32;
            k /= p as usize;
        }
        let mut x = t.zero();
        for (c, &e) in classes.iter().zip(&eps) {
            x = t.add(&x, &t.scale_int(c, e as i64));
        }
        if let RootStatus::Power(_) = in_wp_tower(t, 2, &x) {
            let word: Vec<String> =
                names.iter().zip(&eps).filter(|(_, &e)| e != 0).map(|(n, e)| format!("{e}*{n}")).collect();
            return Err(Error::DimensionDeficient(format!("{} lies in wp(E)", word.join(" + "))));
        }
    }
    let failed: Vec<&str> = eqs.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let why = if b_nonzero { format!("failed: {}", failed.join(", ")) } else { "[b]_E = 0".into() };
    Err(Error::DimensionDeficient(why))
}
