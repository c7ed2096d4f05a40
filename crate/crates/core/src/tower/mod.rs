//! Iterated Kummer and Artin-Schreier extensions with exact arithmetic.
//!
//! An element is a map from monomial indices to base coefficients. The index
//! of `g_0^{e_0} ... g_{n-1}^{e_{n-1}}` is `sum e_i p^i`, so adjoining a new
//! generator leaves existing indices untouched.

mod validate;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{BaseElem, BaseField, Scalar};
use crate::error::{Error, Result};
use crate::expr::{self, Algebra};

pub use validate::{
    in_wp_tower, pth_root_tower, validate_tower, GeneratorStatus, RootStatus, TowerCertificate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenKind {
    Kummer,
    ArtinSchreier,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
    /// Radicand (`g^p = rhs`) or Artin-Schreier datum (`g^p - g = rhs`).
    pub rhs: TElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub base: BaseField,
    pub p: u32,
    pub xi: Option<BaseElem>,
    pub gens: Vec<Generator>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TElem {
    pub terms: BTreeMap<u32, BaseElem>,
}

impl TElem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

const RESERVED: [&str; 3] = ["t", "w", "xi"];

impl Tower {
    pub fn new(base: BaseField, p: u32) -> Result<Self> {
        if !crate::arith::finite::is_prime(p as u64) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let xi = if base.characteristic() == p {
            None
        } else {
            base.coeff().root_of_unity(p).map(|s| base.from_scalar(s))
        };
        Ok(Tower { base, p, xi, gens: Vec::new() })
    }

    pub fn xi(&self) -> Result<&BaseElem> {
        self.xi.as_ref().ok_or(Error::MissingRootOfUnity)
    }

    pub fn degree(&self) -> u64 {
        (self.p as u64).pow(self.gens.len() as u32)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Appends a generator. Elements of `self` remain valid in the result.
    pub fn adjoin(&self, name: &str, kind: GenKind, rhs: TElem) -> Result<Tower> {
        let ch = self.base.characteristic();
        match kind {
            GenKind::Kummer => {
                if ch == self.p {
                    return Err(Error::WrongCharacteristic);
                }
                if self.xi.is_none() {
                    return Err(Error::MissingRootOfUnity);
                }
            }
            GenKind::ArtinSchreier => {
                if ch != self.p {
                    return Err(Error::WrongCharacteristic);
                }
            }
        }
        if let Some(g) = self.gens.first() {
            if g.kind != kind {
                return Err(Error::Precondition("generators of one tower share a kind".into()));
            }
        }
        if RESERVED.contains(&name) || self.gen_index(name).is_some() || name.is_empty() {
            return Err(Error::Precondition(format!("generator name `{name}` unavailable")));
        }
        if self.level(&rhs) > self.gens.len() {
            return Err(Error::TowerMismatch);
        }
        let mut t = self.clone();
        t.gens.push(Generator { name: name.to_string(), kind, rhs });
        Ok(t)
    }

    pub fn adjoin_expr(&self, name: &str, kind: GenKind, src: &str) -> Result<Tower> {
        let rhs = self.parse(src)?;
        self.adjoin(name, kind, rhs)
    }

    /// The tower made of the first `n` generators.
    pub fn truncate(&self, n: usize) -> Tower {
        let mut t = self.clone();
        t.gens.truncate(n);
        t
    }

    fn stride(&self, level: usize) -> u32 {
        self.p.pow(level as u32)
    }

    pub fn exps(&self, idx: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.gens.len());
        let mut r = idx;
        for _ in 0..self.gens.len() {
            out.push(r % self.p);
            r /= self.p;
        }
        out
    }

    pub fn index_of(&self, exps: &[u32]) -> u32 {
        exps.iter().rev().fold(0, |acc, &e| acc * self.p + e)
    }

    /// Number of generators an element actually involves.
    pub fn level(&self, x: &TElem) -> usize {
        match x.terms.keys().next_back() {
            None | Some(0) => 0,
            Some(&top) => {
                let mut n = 0;
                let mut r = top;
                while r > 0 {
                    r /= self.p;
                    n += 1;
                }
                n
            }
        }
    }

    pub fn check(&self, x: &TElem) -> Result<()> {
        if x.terms.keys().next_back().is_some_and(|&i| i as u64 >= self.degree()) {
            return Err(Error::TowerMismatch);
        }
        if x.terms.values().any(|c| self.base.is_zero(c) || !self.base.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> TElem {
        TElem::default()
    }

    pub fn one(&self) -> TElem {
        self.from_base(self.base.one())
    }

    pub fn from_i64(&self, n: i64) -> TElem {
        self.from_base(self.base.from_i64(n))
    }

    pub fn from_base(&self, c: BaseElem) -> TElem {
        self.monomial(0, c)
    }

    pub fn monomial(&self, idx: u32, c: BaseElem) -> TElem {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(idx, c);
        }
        TElem { terms }
    }

    pub fn gen(&self, i: usize) -> TElem {
        self.monomial(self.stride(i), self.base.one())
    }

    pub fn gen_by_name(&self, name: &str) -> Result<TElem> {
        self.gen_index(name).map(|i| self.gen(i)).ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))
    }

    /// The base coefficient if `x` has no generator terms.
    pub fn as_base(&self, x: &TElem) -> Option<BaseElem> {
        match x.terms.len() {
            0 => Some(self.base.zero()),
            1 => x.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self, x: &TElem) -> bool {
        self.as_base(x).is_some_and(|c| self.base.is_one(&c))
    }

    pub fn add(&self, x: &TElem, y: &TElem) -> TElem {
        let mut terms = x.terms.clone();
        for (k, v) in &y.terms {
            match terms.get_mut(k) {
                Some(c) => {
                    let s = self.base.add(c, v);
                    if self.base.is_zero(&s) {
                        terms.remove(k);
                    } else {
                        *c = s;
                    }
                }
                None => {
                    terms.insert(*k, v.clone());
                }
            }
        }
        TElem { terms }
    }

    pub fn neg(&self, x: &TElem) -> TElem {
        TElem { terms: x.terms.iter().map(|(k, v)| (*k, self.base.neg(v))).collect() }
    }

    pub fn sub(&self, x: &TElem, y: &TElem) -> TElem {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &TElem, c: &BaseElem) -> TElem {
        if self.base.is_zero(c) {
            return self.zero();
        }
        if self.base.is_one(c) {
            return x.clone();
        }
        TElem { terms: x.terms.iter().map(|(k, v)| (*k, self.base.mul(v, c))).collect() }
    }

    pub fn scale_int(&self, x: &TElem, n: i64) -> TElem {
        self.scale(x, &self.base.from_i64(n))
    }

    /// Splits `x` (of level at most `n >= 1`) by the exponent of `g_{n-1}`.
    fn split(&self, x: &TElem, n: usize) -> Vec<TElem> {
        let s = self.stride(n - 1);
        let mut parts = vec![TElem::default(); self.p as usize];
        for (k, v) in &x.terms {
            parts[(k / s) as usize].terms.insert(k % s, v.clone());
        }
        parts
    }

    fn shift(&self, x: &TElem, n: usize, e: u32) -> TElem {
        let off = e * self.stride(n - 1);
        TElem { terms: x.terms.iter().map(|(k, v)| (k + off, v.clone())).collect() }
    }

    fn assemble(&self, parts: &[TElem], n: usize) -> TElem {
        let mut out = TElem::default();
        for (e, part) in parts.iter().enumerate() {
            out.terms.extend(self.shift(part, n, e as u32).terms);
        }
        out
    }

    pub fn mul(&self, x: &TElem, y: &TElem) -> TElem {
        if x.is_zero() || y.is_zero() {
            return self.zero();
        }
        let (lx, ly) = (self.level(x), self.level(y));
        if lx == 0 {
            return self.scale(y, &x.terms[&0]);
        }
        if ly == 0 {
            return self.scale(x, &y.terms[&0]);
        }
        if x.terms.len() == 1 && y.terms.len() == 1 {
            let (&i, ci) = x.terms.iter().next().unwrap();
            let (&j, cj) = y.terms.iter().next().unwrap();
            if self.exps(i).iter().zip(self.exps(j)).all(|(a, b)| a + b < self.p) {
                return self.monomial(i + j, self.base.mul(ci, cj));
            }
        }
        let n = lx.max(ly);
        if lx < n {
            let parts: Vec<TElem> = self.split(y, n).iter().map(|yp| self.mul(x, yp)).collect();
            return self.assemble(&parts, n);
        }
        if ly < n {
            let parts: Vec<TElem> = self.split(x, n).iter().map(|xp| self.mul(xp, y)).collect();
            return self.assemble(&parts, n);
        }
        let p = self.p as usize;
        let xs = self.split(x, n);
        let ys = self.split(y, n);
        let mut z = vec![TElem::default(); 2 * p - 1];
        for (i, xi) in xs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in ys.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let prod = self.mul(xi, yj);
                z[i + j] = self.add(&z[i + j], &prod);
            }
        }
        self.reduce_top(&mut z, n);
        self.assemble(&z[..p], n)
    }

    /// Folds degrees `>= p` of `g_{n-1}` back using its relation.
    fn reduce_top(&self, z: &mut [TElem], n: usize) {
        let p = self.p as usize;
        let g = &self.gens[n - 1];
        for k in (p..z.len()).rev() {
            if z[k].is_zero() {
                continue;
            }
            let zk = std::mem::take(&mut z[k]);
            let zr = self.mul(&zk, &g.rhs);
            z[k - p] = self.add(&z[k - p], &zr);
            if g.kind == GenKind::ArtinSchreier {
                z[k - p + 1] = self.add(&z[k - p + 1], &zk);
            }
        }
    }

    pub fn pow(&self, x: &TElem, e: i64) -> Result<TElem> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(acc)
    }

    /// Conjugate of `x` under the generator of `Gal(T_n / T_{n-1})`:
    /// `g -> xi^j g` (Kummer) or `g -> g + j` (Artin-Schreier).
    pub fn top_conjugate(&self, x: &TElem, n: usize, j: u32) -> TElem {
        let parts = self.split(x, n);
        match self.gens[n - 1].kind {
            GenKind::Kummer => {
                let xi = self.xi.as_ref().unwrap();
                let scaled: Vec<TElem> = parts
                    .iter()
                    .enumerate()
                    .map(|(e, part)| self.scale(part, &self.base.pow(xi, (j as i64) * e as i64).unwrap()))
                    .collect();
                self.assemble(&scaled, n)
            }
            GenKind::ArtinSchreier => {
                let shifted = self.add(&self.gen(n - 1), &self.from_i64(j as i64));
                let mut acc = self.zero();
                let mut pw = self.one();
                for part in &parts {
                    acc = self.add(&acc, &self.mul(part, &pw));
                    pw = self.mul(&pw, &shifted);
                }
                acc
            }
        }
    }

    /// Relative norm from `T_n` to `T_{n-1}` together with the cofactor
    /// `prod_{j=1}^{p-1} conj_j(x)`.
    pub fn relative_norm(&self, x: &TElem, n: usize) -> (TElem, TElem) {
        let mut cof = self.one();
        for j in 1..self.p {
            cof = self.mul(&cof, &self.top_conjugate(x, n, j));
        }
        (self.mul(x, &cof), cof)
    }

    /// Norm from `T_n` all the way down to the base field.
    pub fn norm_to_base(&self, x: &TElem) -> BaseElem {
        let mut cur = x.clone();
        for n in (1..=self.gens.len()).rev() {
            cur = self.relative_norm(&cur, n).0;
        }
        self.as_base(&cur).expect("norm lands in the base field")
    }

    pub fn inv(&self, x: &TElem) -> Result<TElem> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.level(x);
        if n == 0 {
            return Ok(self.from_base(self.base.inv(&x.terms[&0])?));
        }
        let (norm, cof) = self.relative_norm(x, n);
        if norm.is_zero() {
            return Err(Error::NotAField(format!("zero divisor found at generator {}", self.gens[n - 1].name)));
        }
        debug_assert!(self.level(&norm) < n);
        let inv_norm = self.inv(&norm)?;
        Ok(self.mul(&cof, &inv_norm))
    }

    pub fn div(&self, x: &TElem, y: &TElem) -> Result<TElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// Applies `c -> c^(q0^k)` to every base coefficient, `q0` the characteristic.
    pub fn map_base(&self, x: &TElem, frob: u32) -> TElem {
        if frob == 0 {
            return x.clone();
        }
        TElem { terms: x.terms.iter().map(|(k, v)| (*k, self.base.frobenius(v, frob))).collect() }
    }

    /// Evaluates `x` with `g_i -> images[i]` and coefficients through the base map.
    pub fn substitute(&self, x: &TElem, images: &[TElem], frob: u32) -> Result<TElem> {
        let n = self.level(x);
        if images.len() < n {
            return Err(Error::MissingImage(self.gens[images.len()].name.clone()));
        }
        let mut powers: Vec<Vec<TElem>> = Vec::with_capacity(n);
        for img in &images[..n] {
            let mut pw = vec![self.one()];
            for e in 1..self.p as usize {
                pw.push(self.mul(&pw[e - 1], img));
            }
            powers.push(pw);
        }
        Ok(self.subst_rec(x, n, &powers, frob))
    }

    fn subst_rec(&self, x: &TElem, n: usize, powers: &[Vec<TElem>], frob: u32) -> TElem {
        if x.is_zero() {
            return self.zero();
        }
        let lx = self.level(x);
        if lx == 0 {
            return self.from_base(self.base.frobenius(&x.terms[&0], frob));
        }
        let n = lx.min(n);
        let parts = self.split(x, n);
        let mut acc = self.zero();
        for (e, part) in parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let sub = self.subst_rec(part, n - 1, powers, frob);
            acc = self.add(&acc, &self.mul(&sub, &powers[n - 1][e]));
        }
        acc
    }

    /// Generators whose exponent is nonzero in some monomial of `x`.
    pub fn support_gens(&self, x: &TElem) -> Vec<usize> {
        let mut used = vec![false; self.gens.len()];
        for k in x.terms.keys() {
            for (i, e) in self.exps(*k).iter().enumerate() {
                if *e != 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.gens.len()).filter(|&i| used[i]).collect()
    }

    pub fn parse(&self, src: &str) -> Result<TElem> {
        let e = expr::parse(src)?;
        let v = expr::eval(self, &e)?;
        Ok(v)
    }

    pub fn to_string(&self, x: &TElem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in &x.terms {
            let mono: Vec<String> = self
                .exps(*k)
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.gens[i].name.clone() } else { format!("{}^{e}", self.gens[i].name) })
                .collect();
            let cs = self.base.to_string(c);
            if mono.is_empty() {
                parts.push(format!("({cs})"));
            } else if self.base.is_one(c) {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("({cs})*{}", mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl Algebra for Tower {
    type Elem = TElem;

    fn int(&self, n: &BigInt) -> Result<TElem> {
        Ok(self.from_base(self.base.from_scalar(self.base.coeff().from_bigint(n))))
    }

    fn var(&self, name: &str) -> Result<TElem> {
        if let Some(i) = self.gen_index(name) {
            return Ok(self.gen(i));
        }
        if name == "xi" {
            return Ok(self.from_base(self.xi()?.clone()));
        }
        Ok(self.from_base(self.base.var(name)?))
    }

    fn add(&self, x: &TElem, y: &TElem) -> TElem {
        Tower::add(self, x, y)
    }

    fn sub(&self, x: &TElem, y: &TElem) -> TElem {
        Tower::sub(self, x, y)
    }

    fn mul(&self, x: &TElem, y: &TElem) -> TElem {
        Tower::mul(self, x, y)
    }

    fn neg(&self, x: &TElem) -> TElem {
        Tower::neg(self, x)
    }

    fn inv(&self, x: &TElem) -> Result<TElem> {
        Tower::inv(self, x)
    }

    fn one(&self) -> TElem {
        Tower::one(self)
    }
}

/// A scalar as a tower constant; convenience for callers holding a `Scalar`.
pub fn constant(t: &Tower, s: Scalar) -> TElem {
    t.from_base(t.base.from_scalar(s))
}
