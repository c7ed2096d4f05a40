//! Inhomogeneous cochains over finite groups, triple Massey products and the
//! vanishing witness carried by a representation into `U_4(F_p)`.
//!
//! Conventions: `(da)(g, h) = a(g) - a(gh) + a(h)` and
//! `(x u y)(g, h) = x(g) y(h)`.

mod group;
mod suite;

pub use group::FiniteGroup;
pub use suite::{lemma_suites, SuiteReport};

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::UnipotentMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    pub group: Arc<FiniteGroup>,
    pub p: u32,
    pub values: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub group: Arc<FiniteGroup>,
    pub p: u32,
    /// Row-major over `G x G`.
    pub values: Vec<u32>,
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

impl Cochain1 {
    pub fn new(group: &Arc<FiniteGroup>, p: u32, values: Vec<u32>) -> Result<Self> {
        if values.len() != group.len() {
            return Err(Error::Precondition(format!("{} values for a group of order {}", values.len(), group.len())));
        }
        let values = values.into_iter().map(|v| v % p).collect();
        Ok(Cochain1 { group: group.clone(), p, values })
    }

    pub fn zero(group: &Arc<FiniteGroup>, p: u32) -> Self {
        Cochain1 { group: group.clone(), p, values: vec![0; group.len()] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % self.p).collect();
        Ok(Cochain1 { group: self.group.clone(), p: self.p, values })
    }

    pub fn scale(&self, l: i64) -> Self {
        let l = l.rem_euclid(self.p as i64) as u64;
        let values = self.values.iter().map(|&v| (v as u64 * l % self.p as u64) as u32).collect();
        Cochain1 { group: self.group.clone(), p: self.p, values }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Whether this 1-cochain is a homomorphism `G -> F_p`.
    pub fn is_cocycle(&self) -> bool {
        coboundary1(self).is_zero()
    }
}

impl Cochain2 {
    pub fn zero(group: &Arc<FiniteGroup>, p: u32) -> Self {
        let n = group.len();
        Cochain2 { group: group.clone(), p, values: vec![0; n * n] }
    }

    pub fn get(&self, g: usize, h: usize) -> u32 {
        self.values[g * self.group.len() + h]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % self.p).collect();
        Ok(Cochain2 { group: self.group.clone(), p: self.p, values })
    }

    pub fn scale(&self, l: i64) -> Self {
        let l = l.rem_euclid(self.p as i64) as u64;
        let values = self.values.iter().map(|&v| (v as u64 * l % self.p as u64) as u32).collect();
        Cochain2 { group: self.group.clone(), p: self.p, values }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// `c(h, k) - c(gh, k) + c(g, hk) - c(g, h) = 0` for all triples.
    pub fn is_cocycle(&self) -> bool {
        let g = &self.group;
        let n = g.len();
        let p = self.p;
        (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                let ab = g.mul(a, b);
                (0..n).all(|c| {
                    let s = self.get(b, c) + p - self.get(ab, c) + self.get(a, g.mul(b, c)) + p - self.get(a, b);
                    s % p == 0
                })
            })
        })
    }
}

pub fn cup11(x: &Cochain1, y: &Cochain1) -> Result<Cochain2> {
    same_group(&x.group, &y.group)?;
    let p = x.p as u64;
    let mut values = Vec::with_capacity(x.values.len() * y.values.len());
    for &a in &x.values {
        for &b in &y.values {
            values.push((a as u64 * b as u64 % p) as u32);
        }
    }
    Ok(Cochain2 { group: x.group.clone(), p: x.p, values })
}

pub fn coboundary1(a: &Cochain1) -> Cochain2 {
    let g = &a.group;
    let n = g.len();
    let p = a.p;
    let values = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            (a.values[i] + p - a.values[g.mul(i, j)] + a.values[j]) % p
        })
        .collect();
    Cochain2 { group: g.clone(), p, values }
}

/// Some `a` with `da = c`, or `None`. `a` is pinned down by its values on
/// the generators: `a(hs) = a(h) + a(s) - c(h, s)` along a spanning tree, so
/// the remaining equations are linear in those few unknowns.
pub fn is_coboundary(c: &Cochain2) -> Result<Option<Cochain1>> {
    if !c.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    let g = &c.group;
    let p = c.p as i64;
    let n = g.len();
    let gens = g.gens();
    let k = gens.len();
    // a(x) = aff[x][0] + sum_i aff[x][1 + i] u_i
    let mut aff: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut one = vec![0i64; k + 1];
    one[0] = c.get(0, 0) as i64;
    aff[0] = Some(one);
    for (i, &s) in gens.iter().enumerate() {
        if aff[s].is_none() {
            let mut v = vec![0i64; k + 1];
            v[1 + i] = 1;
            aff[s] = Some(v);
        }
    }
    let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&x| aff[x].is_some()).collect();
    while let Some(h) = queue.pop_front() {
        for &s in &gens {
            let hs = g.mul(h, s);
            if aff[hs].is_none() {
                let (ah, as_) = (aff[h].as_ref().unwrap(), aff[s].as_ref().unwrap());
                let mut v: Vec<i64> = ah.iter().zip(as_).map(|(x, y)| (x + y).rem_euclid(p)).collect();
                v[0] = (v[0] - c.get(h, s) as i64).rem_euclid(p);
                aff[hs] = Some(v);
                queue.push_back(hs);
            }
        }
    }
    let aff: Vec<Vec<i64>> = aff.into_iter().map(|v| v.expect("generators generate")).collect();
    // every pair gives a(g) - a(gh) + a(h) - c(g, h) = 0, affine in u
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            let mut r: Vec<i64> = (0..=k).map(|i| (aff[x][i] - aff[xy][i] + aff[y][i]).rem_euclid(p)).collect();
            r[0] = (r[0] - c.get(x, y) as i64).rem_euclid(p);
            if !reduce_into(&mut rows, r, p) {
                return Ok(None);
            }
        }
    }
    // rows are reduced with unit pivots; free unknowns are set to 0
    let mut u = vec![0i64; k];
    for r in &rows {
        let piv = (1..=k).find(|&i| r[i] != 0).unwrap();
        u[piv - 1] = (-r[0]).rem_euclid(p);
    }
    let values = aff
        .iter()
        .map(|v| (v[0] + v[1..].iter().zip(&u).map(|(a, b)| a * b).sum::<i64>()).rem_euclid(p) as u32)
        .collect();
    let a = Cochain1 { group: g.clone(), p: c.p, values };
    debug_assert_eq!(coboundary1(&a), *c);
    Ok(Some(a))
}

/// Adds the equation `r[0] + sum r[i] u_i = 0` to a reduced echelon system
/// over `F_p`; `false` if it is inconsistent with the rows already there.
fn reduce_into(rows: &mut Vec<Vec<i64>>, mut r: Vec<i64>, p: i64) -> bool {
    for row in rows.iter() {
        let piv = (1..row.len()).find(|&i| row[i] != 0).unwrap();
        let f = r[piv];
        if f != 0 {
            for i in 0..r.len() {
                r[i] = (r[i] - f * row[i]).rem_euclid(p);
            }
        }
    }
    let Some(piv) = (1..r.len()).find(|&i| r[i] != 0) else {
        return r[0] == 0;
    };
    let inv = crate::classes::kummer::mod_inv(r[piv] as u32, p as u32) as i64;
    for v in r.iter_mut() {
        *v = (*v * inv).rem_euclid(p);
    }
    for row in rows.iter_mut() {
        let f = row[piv];
        if f != 0 {
            for i in 0..row.len() {
                row[i] = (row[i] - f * r[i]).rem_euclid(p);
            }
        }
    }
    rows.push(r);
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    pub x: Cochain1,
    pub y: Cochain1,
    pub z: Cochain1,
    pub a12: Cochain1,
    pub a23: Cochain1,
}

impl DefiningSystem {
    pub fn new(x: Cochain1, y: Cochain1, z: Cochain1, a12: Cochain1, a23: Cochain1) -> Result<Self> {
        for c in [&y, &z, &a12, &a23] {
            same_group(&x.group, &c.group)?;
        }
        if coboundary1(&a12) != cup11(&x, &y)? {
            return Err(Error::InvalidDefiningSystem("d a12 != x u y".into()));
        }
        if coboundary1(&a23) != cup11(&y, &z)? {
            return Err(Error::InvalidDefiningSystem("d a23 != y u z".into()));
        }
        Ok(DefiningSystem { x, y, z, a12, a23 })
    }

    /// Solves for `a12`, `a23` when `x u y` and `y u z` are coboundaries.
    pub fn solve(x: Cochain1, y: Cochain1, z: Cochain1) -> Result<Option<Self>> {
        let Some(a12) = is_coboundary(&cup11(&x, &y)?)? else { return Ok(None) };
        let Some(a23) = is_coboundary(&cup11(&y, &z)?)? else { return Ok(None) };
        Self::new(x, y, z, a12, a23).map(Some)
    }
}

/// `x u a23 + a12 u z`, checked to be a 2-cocycle.
pub fn massey_value(d: &DefiningSystem) -> Result<Cochain2> {
    let v = cup11(&d.x, &d.a23)?.add(&cup11(&d.a12, &d.z)?)?;
    if !v.is_cocycle() {
        return Err(Error::InvalidDefiningSystem("value is not a cocycle".into()));
    }
    Ok(v)
}

/// A homomorphism `G -> U_4(F_p)` given on every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentRep {
    pub group: Arc<FiniteGroup>,
    pub p: u32,
    pub images: Vec<UnipotentMatrix>,
}

impl UnipotentRep {
    pub fn new(group: &Arc<FiniteGroup>, images: Vec<UnipotentMatrix>) -> Result<Self> {
        let n = group.len();
        if images.len() != n || images.iter().any(|m| m.n != 4) {
            return Err(Error::Precondition("need one 4x4 matrix per group element".into()));
        }
        let p = images[0].p;
        let ok = (0..n * n).into_par_iter().all(|k| {
            let (i, j) = (k / n, k % n);
            images[group.mul(i, j)] == images[i].mul(&images[j])
        });
        if !ok {
            return Err(Error::NotWellDefined("rho(gh) != rho(g) rho(h)".into()));
        }
        Ok(UnipotentRep { group: group.clone(), p, images })
    }

    pub fn trivial(group: &Arc<FiniteGroup>, p: u32) -> Self {
        UnipotentRep { group: group.clone(), p, images: vec![UnipotentMatrix::identity(4, p); group.len()] }
    }

    /// `rho_ij` as a 1-cochain.
    pub fn entry(&self, i: usize, j: usize) -> Cochain1 {
        let values = self.images.iter().map(|m| m.get(i, j)).collect();
        Cochain1 { group: self.group.clone(), p: self.p, values }
    }

    pub fn image_size(&self) -> usize {
        self.images.iter().collect::<std::collections::HashSet<_>>().len()
    }
}

/// Sign table: `x, y, z = rho12, rho23, rho34`, `a12 = -rho13`,
/// `a23 = -rho24`, witness `rho14`. Expanding `rho(gh) = rho(g) rho(h)` gives
/// `d(rho13) = -(rho12 u rho23)` and `d(rho14) = -(rho12 u rho24 + rho13 u rho34)`.
pub fn vanishing_witness(rho: &UnipotentRep) -> Result<(DefiningSystem, Cochain1)> {
    let (x, y, z) = (rho.entry(1, 2), rho.entry(2, 3), rho.entry(3, 4));
    let (a12, a23, w) = (rho.entry(1, 3).neg(), rho.entry(2, 4).neg(), rho.entry(1, 4));
    let d = DefiningSystem::new(x, y, z, a12, a23).map_err(|e| Error::SignTableBroken(e.to_string()))?;
    let v = massey_value(&d)?;
    if coboundary1(&w) != v {
        return Err(Error::SignTableBroken("value != d(rho14)".into()));
    }
    Ok((d, w))
}

/// From a system for `(x, y, z)` with vanishing value to one for
/// `(-x, -y, -z)`: the middle sign goes through [`scalar_check`] with
/// `lambda = -1`, the outer ones by re-solving `a12`, `a23` and the witness.
pub fn negate_triple(d: &DefiningSystem) -> Result<(DefiningSystem, Cochain1)> {
    let mid = scalar_check(d, -1)?;
    if !mid.pass {
        return Err(Error::InvalidDefiningSystem("scalar step failed".into()));
    }
    let sys = DefiningSystem::solve(d.x.neg(), d.y.neg(), d.z.neg())?
        .ok_or_else(|| Error::InvalidDefiningSystem("cup products are not coboundaries".into()))?;
    let v = massey_value(&sys)?;
    let w = is_coboundary(&v)?.ok_or_else(|| Error::InvalidDefiningSystem("value is not a coboundary".into()))?;
    Ok((sys, w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub name: String,
    pub pass: bool,
}

/// `{a12 + a12', a23 + a23'}` defines `<x, y + y', z>` with value the sum of
/// the two values.
pub fn additivity_check(d: &DefiningSystem, d2: &DefiningSystem) -> Result<LemmaReport> {
    if d.x != d2.x || d.z != d2.z {
        return Err(Error::InvalidDefiningSystem("outer cochains differ".into()));
    }
    let sum = DefiningSystem::new(d.x.clone(), d.y.add(&d2.y)?, d.z.clone(), d.a12.add(&d2.a12)?, d.a23.add(&d2.a23)?)?;
    let diff = massey_value(&sum)?.sub(&massey_value(d)?.add(&massey_value(d2)?)?)?;
    let pass = is_coboundary(&diff)?.is_some();
    Ok(LemmaReport { name: "<x,y+y',z> = <x,y,z> + <x,y',z>".into(), pass })
}

/// `{l a12, l a23}` defines `<x, l y, z>` with value `l` times the old one.
pub fn scalar_check(d: &DefiningSystem, l: i64) -> Result<LemmaReport> {
    let d2 = DefiningSystem::new(d.x.clone(), d.y.scale(l), d.z.clone(), d.a12.scale(l), d.a23.scale(l))?;
    let pass = massey_value(&d2)? == massey_value(d)?.scale(l);
    Ok(LemmaReport { name: format!("<x,{l}y,z> contains {l}<x,y,z>"), pass })
}

#[derive(Clone, Debug)]
pub struct CharExtraction {
    pub chars: [Cochain1; 3],
    /// `(chi1, chi2, chi3)` maps onto `F_p^3`.
    pub independent: bool,
    /// `-rho13` and `-rho24`, with coboundaries `chi1 u chi2`, `chi2 u chi3`.
    pub cup12_witness: Cochain1,
    pub cup23_witness: Cochain1,
}

pub fn extract_chars(rho: &UnipotentRep) -> Result<CharExtraction> {
    let full = (rho.p as usize).pow(6);
    let size = rho.image_size();
    if size != full {
        return Err(Error::NotSurjective(size));
    }
    let chars = [rho.entry(1, 2), rho.entry(2, 3), rho.entry(3, 4)];
    if let Some(i) = chars.iter().position(|c| !c.is_cocycle()) {
        return Err(Error::NotWellDefined(format!("rho{}{} is not a homomorphism", i + 1, i + 2)));
    }
    let triples: std::collections::HashSet<(u32, u32, u32)> =
        (0..rho.group.len()).map(|g| (chars[0].values[g], chars[1].values[g], chars[2].values[g])).collect();
    let independent = triples.len() == (rho.p as usize).pow(3);
    let (w12, w23) = (rho.entry(1, 3).neg(), rho.entry(2, 4).neg());
    if coboundary1(&w12) != cup11(&chars[0], &chars[1])? || coboundary1(&w23) != cup11(&chars[1], &chars[2])? {
        return Err(Error::SignTableBroken("cup witnesses".into()));
    }
    Ok(CharExtraction { chars, independent, cup12_witness: w12, cup23_witness: w23 })
}

#[cfg(test)]
mod tests;
