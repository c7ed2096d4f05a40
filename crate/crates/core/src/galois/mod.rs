//! Automorphisms of towers, group tables and unipotent matrix groups.

mod group;
mod unipotent;

pub use group::{enumerate_group, GroupTable};
pub use unipotent::{
    enumerate_unipotent, iso_to_unipotent, superdiagonal, unipotent_proj, verify_presentation_u4, PresentationReport,
    RelationCheck,
    UnipotentMatrix,
};

use crate::error::{Error, Result};
use crate::tower::{GenKind, TElem, Tower};

/// A field map given by generator images and a Frobenius power on the
/// finite-field coefficients of the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub images: Vec<TElem>,
    pub frob: u32,
}

fn frob_period(t: &Tower) -> u32 {
    t.base.coeff().finite().map(|f| f.degree()).unwrap_or(1)
}

impl Automorphism {
    /// Checks that the images satisfy every defining relation.
    pub fn new(t: &Tower, images: Vec<TElem>, frob: u32) -> Result<Self> {
        if images.len() < t.gens.len() {
            return Err(Error::MissingImage(t.gens[images.len()].name.clone()));
        }
        if images.len() > t.gens.len() {
            return Err(Error::TowerMismatch);
        }
        for img in &images {
            t.check(img)?;
        }
        let a = Automorphism { images, frob: frob % frob_period(t) };
        a.check_relations(t)?;
        Ok(a)
    }

    pub fn check_relations(&self, t: &Tower) -> Result<()> {
        for (i, g) in t.gens.iter().enumerate() {
            let img = &self.images[i];
            let lhs = t.pow(img, t.p as i64)?;
            let lhs = match g.kind {
                GenKind::Kummer => lhs,
                GenKind::ArtinSchreier => t.sub(&lhs, img),
            };
            let rhs = t.substitute(&g.rhs, &self.images, self.frob)?;
            if lhs != rhs {
                return Err(Error::RelationNotPreserved(g.name.clone()));
            }
        }
        Ok(())
    }

    pub fn identity(t: &Tower) -> Self {
        Automorphism { images: (0..t.gens.len()).map(|i| t.gen(i)).collect(), frob: 0 }
    }

    pub fn is_identity(&self, t: &Tower) -> bool {
        *self == Self::identity(t)
    }

    pub fn apply(&self, t: &Tower, x: &TElem) -> TElem {
        t.substitute(x, &self.images, self.frob).expect("automorphism covers every generator")
    }

    /// Extends an automorphism of a sub-tower by images of further generators.
    pub fn extend(&self, t: &Tower, more: Vec<TElem>) -> Result<Self> {
        let mut images = self.images.clone();
        images.extend(more);
        Automorphism::new(t, images, self.frob)
    }

    /// The restriction to the first `n` generators.
    pub fn restrict(&self, n: usize) -> Self {
        Automorphism { images: self.images[..n].to_vec(), frob: self.frob }
    }
}

/// `f o g`.
pub fn aut_compose(t: &Tower, f: &Automorphism, g: &Automorphism) -> Result<Automorphism> {
    if f.images.len() != t.gens.len() || g.images.len() != t.gens.len() {
        return Err(Error::TowerMismatch);
    }
    let images = g.images.iter().map(|x| f.apply(t, x)).collect();
    Ok(Automorphism { images, frob: (f.frob + g.frob) % frob_period(t) })
}

pub fn aut_pow(t: &Tower, f: &Automorphism, k: u64) -> Result<Automorphism> {
    let mut acc = Automorphism::identity(t);
    for _ in 0..k {
        acc = aut_compose(t, f, &acc)?;
    }
    Ok(acc)
}

/// Least `k <= cap` with `f^k = 1`.
pub fn aut_order(t: &Tower, f: &Automorphism, cap: u64) -> Result<u64> {
    let id = Automorphism::identity(t);
    let mut acc = f.clone();
    for k in 1..=cap {
        if acc == id {
            return Ok(k);
        }
        acc = aut_compose(t, f, &acc)?;
    }
    Err(Error::OverCap(cap))
}

pub fn aut_inverse(t: &Tower, f: &Automorphism, cap: u64) -> Result<Automorphism> {
    let k = aut_order(t, f, cap)?;
    aut_pow(t, f, k - 1)
}

/// `f g f^-1 g^-1`, inverses by power search up to `cap`.
pub fn commutator(t: &Tower, f: &Automorphism, g: &Automorphism, cap: u64) -> Result<Automorphism> {
    let fi = aut_inverse(t, f, cap)?;
    let gi = aut_inverse(t, g, cap)?;
    let fg = aut_compose(t, f, g)?;
    let fgfi = aut_compose(t, &fg, &fi)?;
    aut_compose(t, &fgfi, &gi)
}

#[cfg(test)]
mod tests;

/// `chi_g(s)`: the `F_p` value with `s(g) = g + k` (Artin-Schreier) or
/// `s(g) = xi^k g` (Kummer), if `s` acts on generator `g` that way.
pub fn character_value(t: &Tower, s: &Automorphism, g: usize) -> Option<u32> {
    let x = t.gen(g);
    let img = &s.images[g];
    match t.gens[g].kind {
        GenKind::ArtinSchreier => {
            let d = t.as_base(&t.sub(img, &x))?;
            let v = t.base.as_constant(&d)?.as_finite();
            (v < t.p).then_some(v)
        }
        GenKind::Kummer => {
            let xi = t.xi().ok()?;
            let mut pw = t.base.one();
            for k in 0..t.p {
                if *img == t.scale(&x, &pw) {
                    return Some(k);
                }
                pw = t.base.mul(&pw, xi);
            }
            None
        }
    }
}

/// Whether the characters attached to generators `idx` take the automorphisms
/// `gens` to a basis of `F_p^n`, so that `gens` generate modulo the Frattini
/// subgroup.
pub fn frattini_surjective(t: &Tower, gens: &[Automorphism], idx: &[usize]) -> bool {
    let p = t.p as i64;
    let mut m: Vec<Vec<i64>> = Vec::new();
    for s in gens {
        let mut row = Vec::new();
        for &g in idx {
            match character_value(t, s, g) {
                Some(v) => row.push(v as i64),
                None => return false,
            }
        }
        m.push(row);
    }
    rank_mod_p(m, p) == idx.len()
}

pub(crate) fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| m[r][c].rem_euclid(p) != 0) else { continue };
        m.swap(rank, r);
        let inv = crate::classes::kummer::mod_inv(m[rank][c].rem_euclid(p) as u32, p as u32) as i64;
        for r in 0..rows {
            if r != rank {
                let f = (m[r][c] * inv).rem_euclid(p);
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}
