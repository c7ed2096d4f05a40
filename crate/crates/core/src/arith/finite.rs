//! Finite fields `F_q`, `q = p^k` with `k <= 4`.
//!
//! Elements are packed as `u32` indices `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_0 + c_1 w + ...` is the residue polynomial modulo the defining
//! polynomial of `w`.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 4;

/// Fields up to this order get an addition table.
const ADD_TABLE_MAX: u32 = 256;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "FieldRepr")]
pub struct FiniteField {
    p: u32,
    degree: u32,
    /// Monic modulus, ascending coefficients, length `degree + 1`.
    modulus: Vec<u32>,
    #[serde(skip)]
    tables: Option<Arc<Tables>>,
}

#[derive(Deserialize)]
struct FieldRepr {
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
}

impl From<FieldRepr> for FiniteField {
    fn from(r: FieldRepr) -> Self {
        FiniteField::build(r.p, r.degree, r.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, h: &mut H) {
        (self.p, self.degree, &self.modulus).hash(h);
    }
}

/// Discrete log tables over a primitive element, plus addition for tiny fields.
#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Self::build(p, 1, vec![0, 1]))
    }

    fn build(p: u32, degree: u32, modulus: Vec<u32>) -> Self {
        let mut f = FiniteField { p, degree, modulus, tables: None };
        if degree > 1 {
            let q = f.order();
            let add = if q <= ADD_TABLE_MAX {
                (0..q * q).map(|i| f.add(i / q, i % q)).collect()
            } else {
                Vec::new()
            };
            let g = f.primitive_element();
            let mut exp = Vec::with_capacity(2 * q as usize);
            let mut log = vec![0; q as usize];
            let mut x = 1;
            for k in 0..q - 1 {
                exp.push(x);
                log[x as usize] = k;
                x = f.mul(x, g);
            }
            let again = exp.clone();
            exp.extend(again);
            f.tables = Some(Arc::new(Tables { exp, log, add }));
        }
        f
    }

    /// Field of order `p^degree` defined by the lexicographically first monic
    /// irreducible polynomial (ordered by packed coefficient index).
    pub fn standard(p: u32, degree: u32) -> Result<Self> {
        if degree == 1 {
            return Self::prime(p);
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidField(format!("degree {degree} outside 1..=4")));
        }
        let count = (p as u64).pow(degree);
        for idx in 0..count {
            let mut modulus = digits_of(idx, p, degree as usize);
            modulus.push(1);
            if irreducible_over_prime(&modulus, p) {
                return Ok(Self::build(p, degree, modulus));
            }
        }
        Err(Error::InvalidField(format!("no irreducible of degree {degree} over F_{p}")))
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let degree = modulus.len().saturating_sub(1) as u32;
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidField(format!("modulus degree {degree} outside 1..=4")));
        }
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic with reduced coefficients".into()));
        }
        if !irreducible_over_prime(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        if degree == 1 {
            return Self::prime(p);
        }
        Ok(Self::build(p, degree, modulus))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree)
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        digits_of(x as u64, self.p, self.degree as usize)
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let mut acc = 0u64;
        for &d in digits.iter().rev() {
            acc = acc * self.p as u64 + (d % self.p) as u64;
        }
        acc as u32
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// The class of `w`, the adjoined root of the modulus.
    pub fn generator(&self) -> u32 {
        if self.degree == 1 {
            // F_p has no adjoined root; w is only meaningful for degree > 1
            0
        } else {
            self.p
        }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.degree == 1 {
            return (x + y) % self.p;
        }
        if let Some(t) = &self.tables {
            if !t.add.is_empty() {
                return t.add[(x * self.order() + y) as usize];
            }
        }
        let (a, b) = (self.digits(x), self.digits(y));
        let s: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.degree == 1 {
            return (self.p - x % self.p) % self.p;
        }
        if let Some(t) = &self.tables {
            if x == 0 || self.p == 2 {
                return x;
            }
            return t.exp[(t.log[x as usize] + (self.order() - 1) / 2) as usize];
        }
        let a: Vec<u32> = self.digits(x).iter().map(|u| (self.p - u) % self.p).collect();
        self.from_digits(&a)
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p as u64;
        if self.degree == 1 {
            return ((x as u64 * y as u64) % p) as u32;
        }
        if let Some(t) = &self.tables {
            if x == 0 || y == 0 {
                return 0;
            }
            return t.exp[(t.log[x as usize] + t.log[y as usize]) as usize];
        }
        let (a, b) = (self.digits(x), self.digits(y));
        let k = self.degree as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + c * (p - m as u64)) % p;
            }
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.from_digits(&digits)
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        if let Some(t) = &self.tables {
            if x == 0 {
                return (e == 0) as u32;
            }
            let k = (t.log[x as usize] as u64 * (e % (self.order() as u64 - 1))) % (self.order() as u64 - 1);
            return t.exp[k as usize];
        }
        let mut base = x;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        Some(self.pow(x, self.order() as u64 - 2))
    }

    /// `x^(p^k)`.
    pub fn frobenius(&self, x: u32, k: u32) -> u32 {
        let k = k % self.degree;
        if k == 0 {
            return x;
        }
        self.pow(x, (self.p as u64).pow(k))
    }

    /// Absolute trace to the prime field.
    pub fn trace(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.degree {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        acc
    }

    /// Some `y` with `y^n = x`, found by exhaustive search.
    pub fn nth_root(&self, x: u32, n: u64) -> Option<u32> {
        if x == 0 {
            return Some(0);
        }
        (1..self.order()).find(|&y| self.pow(y, n) == x)
    }

    /// All `n`-th roots of unity other than 1 that are primitive for prime `n`.
    pub fn primitive_root_of_unity(&self, n: u32) -> Option<u32> {
        (2..self.order()).find(|&y| self.pow(y, n as u64) == 1 && y != 1)
    }

    /// A multiplicative generator of `F_q^x`.
    pub fn primitive_element(&self) -> u32 {
        let q1 = (self.order() - 1) as u64;
        let factors = prime_factors(q1);
        (1..self.order())
            .find(|&g| factors.iter().all(|&f| self.pow(g, q1 / f) != 1))
            .expect("finite field has a primitive element")
    }

    /// Discrete logarithm of `x` to the base `g`, by exhaustive search.
    pub fn discrete_log(&self, g: u32, x: u32) -> Option<u64> {
        let mut acc = 1u32;
        for k in 0..self.order() as u64 {
            if acc == x {
                return Some(k);
            }
            acc = self.mul(acc, g);
        }
        None
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits_of(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    out
}

fn eval_mod(poly: &[u32], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c as u64) % p)
}

/// Exhaustive check for degree <= 4: no linear factor, and for degree 4 no
/// monic quadratic factor.
fn irreducible_over_prime(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    if deg == 1 {
        return true;
    }
    if (0..p as u64).any(|x| eval_mod(modulus, x, p as u64) == 0) {
        return false;
    }
    if deg <= 3 {
        return true;
    }
    for c0 in 0..p {
        for c1 in 0..p {
            if divides_prime(&[c0, c1, 1], modulus, p) {
                return false;
            }
        }
    }
    true
}

fn divides_prime(d: &[u32], n: &[u32], p: u32) -> bool {
    let p64 = p as u64;
    let mut r: Vec<u64> = n.iter().map(|&c| c as u64).collect();
    let dd = d.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        for (i, &c) in d.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p64 - c as u64) * lead) % p64;
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}
