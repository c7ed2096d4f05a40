//! Valuation vectors and classes modulo `p`-th powers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factor::{factor_int, factor_poly};
use crate::arith::{BaseElem, BaseField, CoeffField, Poly, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Sign,
    Prime(BigInt),
    /// Monic irreducible polynomial, ascending coefficient indices.
    Irreducible(Vec<String>),
    Infinity,
    /// Class of the constant factor in `F_q^x / (F_q^x)^p`.
    Unit,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValuationVector {
    /// Nonzero exponents mod `p`, sorted by place.
    pub entries: BTreeMap<Place, u32>,
}

impl ValuationVector {
    pub fn get(&self, place: &Place) -> u32 {
        self.entries.get(place).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &ValuationVector, p: u32) -> ValuationVector {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let e = entries.entry(k.clone()).or_insert(0);
            *e = (*e + v) % p;
        }
        entries.retain(|_, v| *v != 0);
        ValuationVector { entries }
    }
}

fn place_of(k: &CoeffField, poly: &Poly) -> Place {
    Place::Irreducible(poly.c.iter().map(|c| k.to_string(c)).collect())
}

/// Class of a nonzero constant in `F_q^x/(F_q^x)^p`, as an element of `Z/p`.
fn unit_class(k: &CoeffField, u: &Scalar, p: u32) -> u32 {
    match k {
        CoeffField::Finite(f) => {
            let q1 = f.order() - 1;
            if q1 % p != 0 {
                return 0;
            }
            let g = f.primitive_element();
            (f.discrete_log(g, u.as_finite()).unwrap() % p as u64) as u32
        }
        CoeffField::Rationals => 0,
    }
}

fn push(map: &mut BTreeMap<Place, u32>, place: Place, e: i64, p: u32) {
    let r = e.rem_euclid(p as i64) as u32;
    if r != 0 {
        let v = map.entry(place).or_insert(0);
        *v = (*v + r) % p;
    }
}

fn rational_vector(q: &num_rational::BigRational, p: u32, out: &mut BTreeMap<Place, u32>) {
    for (pr, e) in factor_int(q.numer()) {
        push(out, Place::Prime(pr), e as i64, p);
    }
    for (pr, e) in factor_int(q.denom()) {
        push(out, Place::Prime(pr), -(e as i64), p);
    }
    if p == 2 && q.is_negative() {
        push(out, Place::Sign, 1, p);
    }
}

/// Exponents of `x` at every place, reduced mod `p`, plus the unit class of
/// the leading coefficient for function fields over finite fields.
pub fn valuation_vector(field: &BaseField, x: &BaseElem, p: u32) -> Result<ValuationVector> {
    if field.is_zero(x) {
        return Err(Error::ZeroElement);
    }
    let k = field.coeff();
    let mut out = BTreeMap::new();
    match field {
        BaseField::Rationals => rational_vector(x.num.c[0].as_rational(), p, &mut out),
        BaseField::Finite(_) => push(&mut out, Place::Unit, unit_class(&k, &x.num.c[0], p) as i64, p),
        BaseField::RationalFunctions(CoeffField::Rationals) => {
            return Err(Error::Unsupported("valuations over Q(t)".into()));
        }
        BaseField::RationalFunctions(_) => {
            for (f, e) in factor_poly(&k, &x.num) {
                push(&mut out, place_of(&k, &f), e as i64, p);
            }
            for (f, e) in factor_poly(&k, &x.den) {
                push(&mut out, place_of(&k, &f), -(e as i64), p);
            }
            push(&mut out, Place::Infinity, x.den.deg() - x.num.deg(), p);
            push(&mut out, Place::Unit, unit_class(&k, x.num.lead().unwrap(), p) as i64, p);
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(ValuationVector { entries: out })
}

/// Some `y` in the base field with `y^p = x`.
pub fn pth_root(field: &BaseField, x: &BaseElem, p: u32) -> Option<BaseElem> {
    let k = field.coeff();
    if field.is_zero(x) {
        return Some(field.zero());
    }
    if field.characteristic() == p {
        // x = sum c_i t^(p i) exactly when x is a p-th power
        let f = k.finite()?;
        let root = |poly: &Poly| -> Option<Poly> {
            let mut c = Vec::new();
            for (i, s) in poly.c.iter().enumerate() {
                if i % p as usize == 0 {
                    c.push(k.frobenius(s, f.degree() - 1));
                } else if !k.is_zero(s) {
                    return None;
                }
            }
            Some(k.pnorm(c))
        };
        return field.frac(root(&x.num)?, root(&x.den)?).ok();
    }
    let n = k.pnth_root(&x.num, p)?;
    let d = k.pnth_root(&x.den, p)?;
    field.frac(n, d).ok()
}

pub fn is_pth_power(field: &BaseField, x: &BaseElem, p: u32) -> bool {
    pth_root(field, x, p).is_some()
}

/// Outcome of a Kummer independence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KummerVerdict {
    Independent,
    /// `prod elems[i]^coeffs[i] = root^p` with not all coefficients zero.
    Dependent { coeffs: Vec<u32>, root: BaseElem },
}

/// Kernel vectors of the valuation matrix, computed by row reduction over `F_p`.
fn kernel(rows: &[Vec<u32>], n: usize, p: u32) -> Vec<Vec<u32>> {
    // columns are elements; rows are places
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, piv);
        let inv = mod_inv(m[r][col], p);
        for v in m[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..n {
                    m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fcol| {
            let mut v = vec![0u32; n];
            v[fcol] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][fcol]) % p;
            }
            v
        })
        .collect()
}

pub fn mod_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Decides whether `elems` are `F_p`-independent in `F^x/(F^x)^p`.
///
/// Because the unit class is part of the vector, a rank deficiency always
/// comes with a product whose `p`-th root is then computed exactly.
pub fn kummer_dependence(field: &BaseField, elems: &[BaseElem], p: u32) -> Result<KummerVerdict> {
    let vecs: Vec<ValuationVector> = elems.iter().map(|x| valuation_vector(field, x, p)).collect::<Result<_>>()?;
    let mut places: Vec<&Place> = vecs.iter().flat_map(|v| v.entries.keys()).collect();
    places.sort();
    places.dedup();
    let rows: Vec<Vec<u32>> = places.iter().map(|pl| vecs.iter().map(|v| v.get(pl)).collect()).collect();
    let ker = kernel(&rows, elems.len(), p);
    let Some(c) = ker.into_iter().next() else {
        return Ok(KummerVerdict::Independent);
    };
    let mut prod = field.one();
    for (x, &e) in elems.iter().zip(&c) {
        prod = field.mul(&prod, &field.pow(x, e as i64)?);
    }
    match pth_root(field, &prod, p) {
        Some(root) => Ok(KummerVerdict::Dependent { coeffs: c, root }),
        None => Err(Error::Undecided(format!("kernel vector {c:?} has no exact p-th root"))),
    }
}

pub fn kummer_independent(field: &BaseField, elems: &[BaseElem], p: u32) -> Result<bool> {
    Ok(kummer_dependence(field, elems, p)? == KummerVerdict::Independent)
}

/// Integer `p`-adic helpers used by tests and instance searches.
pub fn is_int_pth_power(n: &BigInt, p: u32) -> bool {
    if n.is_zero() || n.is_one() {
        return true;
    }
    crate::arith::scalar::int_nth_root(n, p).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        let q = BaseField::Rationals;
        let v = valuation_vector(&q, &q.from_i64(2), 2).unwrap();
        assert_eq!(v.entries.into_iter().collect::<Vec<_>>(), vec![(Place::Prime(2.into()), 1)]);
        let v = valuation_vector(&q, &q.from_i64(-1), 2).unwrap();
        assert_eq!(v.entries.into_iter().collect::<Vec<_>>(), vec![(Place::Sign, 1)]);
        assert!(kummer_independent(&q, &[q.from_i64(2), q.from_i64(-1), q.from_i64(5)], 2).unwrap());
        match kummer_dependence(&q, &[q.from_i64(4), q.from_i64(3)], 2).unwrap() {
            KummerVerdict::Dependent { coeffs, root } => {
                assert_eq!(coeffs, vec![1, 0]);
                assert_eq!(q.pow(&root, 2).unwrap(), q.from_i64(4));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn function_field_infinity() {
        let f = BaseField::fq_t(2, 1).unwrap();
        let x = f.inv(&f.t().unwrap()).unwrap();
        let v = valuation_vector(&f, &x, 2).unwrap();
        assert_eq!(v.get(&Place::Infinity), 1);
        assert_eq!(v.entries.len(), 2);
    }

    #[test]
    fn constants_detected_by_unit_class() {
        let f = BaseField::fq_t(7, 1).unwrap();
        // 3 generates F_7^x, so it is not a cube; 6 = 3^3 is
        assert!(kummer_independent(&f, &[f.from_i64(3)], 3).unwrap());
        assert!(!kummer_independent(&f, &[f.from_i64(6)], 3).unwrap());
    }

    #[test]
    fn equal_classes_dependent() {
        let f = BaseField::fq_t(7, 1).unwrap();
        let t = f.t().unwrap();
        assert!(!kummer_independent(&f, &[t.clone(), t], 3).unwrap());
    }
}
