//! Classes modulo `wp(F) = { y^p - y }` for `F = F_q(t)`.

use crate::arith::factor::factor_poly;
use crate::arith::{BaseElem, BaseField, CoeffField, Poly, Scalar};
use crate::error::{Error, Result};

/// `y^p - y`.
pub fn wp(field: &BaseField, y: &BaseElem) -> BaseElem {
    let p = field.characteristic() as i64;
    field.sub(&field.pow(y, p).unwrap(), y)
}

fn require_char_p(field: &BaseField) -> Result<(CoeffField, u32)> {
    match field {
        BaseField::RationalFunctions(k @ CoeffField::Finite(f)) => Ok((k.clone(), f.characteristic())),
        _ => Err(Error::WrongCharacteristic),
    }
}

/// Fixed element of `F_q` with absolute trace 1: the first one in index order.
pub fn trace_one(k: &CoeffField) -> Scalar {
    let f = k.finite().unwrap();
    Scalar::F(f.elements().find(|&x| f.trace(x) == 1).unwrap())
}

/// The `P`-adic digits of the principal part of `x` at the monic irreducible `P`:
/// `x = sum_j digits[j-1] / P^j + (regular at P)` with `deg digits[i] < deg P`.
fn principal_digits(k: &CoeffField, x: &BaseElem, pl: &Poly) -> Vec<Poly> {
    let mut e = 0usize;
    let mut d1 = x.den.clone();
    while let Some(q) = k.pdiv_exact(&d1, pl) {
        d1 = q;
        e += 1;
    }
    if e == 0 {
        return Vec::new();
    }
    let pe = k.ppow(pl, e as u64);
    let (_, inv_d1, _) = k.pxgcd(&d1, &pe);
    let mut a = k.prem(&k.pmul(&x.num, &inv_d1), &pe);
    // a / P^e = sum_i a_i P^(i-e)
    let mut low = Vec::with_capacity(e);
    for _ in 0..e {
        let (q, r) = k.pdivrem(&a, pl);
        low.push(r);
        a = q;
    }
    // low[i] is the coefficient of P^(i-e), i.e. order e - i
    let mut digits = vec![Poly::zero(); e];
    for (i, r) in low.into_iter().enumerate() {
        digits[e - i - 1] = r;
    }
    digits
}

/// Reduces `x` modulo `wp(F)`. Returns `(r, g)` with `x - r = g^p - g`, where
/// `r` has no principal-part digit of order divisible by `p` at any finite
/// place, no monomial `t^j` with `p | j > 0`, and constant term in `F_p * w0`.
pub fn as_reduce_with_witness(field: &BaseField, x: &BaseElem) -> Result<(BaseElem, BaseElem)> {
    let (k, p) = require_char_p(field)?;
    let f = k.finite().unwrap().clone();
    let mut cur = x.clone();
    let mut g = field.zero();
    let mut subtract = |cur: &mut BaseElem, y: BaseElem| {
        *cur = field.sub(cur, &wp(field, &y));
        g = field.add(&g, &y);
    };

    for (pl, _) in factor_poly(&k, &x.den) {
        let nd = f.degree() as u64 * pl.deg() as u64;
        let root_exp = (p as u128).pow((nd - 1) as u32);
        loop {
            let digits = principal_digits(&k, &cur, &pl);
            let Some(j) = (1..=digits.len()).rev().find(|&j| j % p as usize == 0 && !digits[j - 1].is_zero()) else {
                break;
            };
            // s^p = digit mod P
            let s = k.ppowmod(&digits[j - 1], root_exp, &pl);
            let y = field.frac(s, k.ppow(&pl, (j / p as usize) as u64))?;
            subtract(&mut cur, y);
        }
    }

    loop {
        let (poly_part, _) = k.pdivrem(&cur.num, &cur.den);
        let Some(j) = (1..poly_part.c.len()).rev().find(|&j| j % p as usize == 0 && !k.is_zero(&poly_part.c[j])) else {
            break;
        };
        let s = k.frobenius(&poly_part.c[j], f.degree() - 1);
        let y = field.from_poly(k.pmonomial(s, j / p as usize));
        subtract(&mut cur, y);
    }

    let (poly_part, _) = k.pdivrem(&cur.num, &cur.den);
    let c0 = poly_part.c.first().cloned().unwrap_or_else(|| k.zero());
    let tr = f.trace(c0.as_finite());
    let target = f.sub(c0.as_finite(), f.mul(tr, trace_one(&k).as_finite()));
    if target != 0 {
        let h = f.elements().find(|&h| f.sub(f.pow(h, p as u64), h) == target).expect("trace-zero element lies in wp(F_q)");
        subtract(&mut cur, field.from_scalar(Scalar::F(h)));
    }
    Ok((cur, g))
}

pub fn as_reduce(field: &BaseField, x: &BaseElem) -> Result<BaseElem> {
    Ok(as_reduce_with_witness(field, x)?.0)
}

pub fn in_wp(field: &BaseField, x: &BaseElem) -> Result<bool> {
    Ok(field.is_zero(&as_reduce(field, x)?))
}

/// Some `y` with `y^p - y = x`, if `x` lies in `wp(F)`.
pub fn wp_preimage(field: &BaseField, x: &BaseElem) -> Result<Option<BaseElem>> {
    let (r, g) = as_reduce_with_witness(field, x)?;
    Ok(field.is_zero(&r).then_some(g))
}

/// Exact independence modulo `wp(F)` by enumerating every nonzero combination
/// of the reduced representatives.
pub fn as_independent(field: &BaseField, elems: &[BaseElem]) -> Result<bool> {
    Ok(as_dependence(field, elems)?.is_none())
}

/// A nonzero coefficient vector `c` with `sum c_i x_i` in `wp(F)`, if any.
pub fn as_dependence(field: &BaseField, elems: &[BaseElem]) -> Result<Option<Vec<u32>>> {
    let (k, p) = require_char_p(field)?;
    let reps: Vec<BaseElem> = elems.iter().map(|x| as_reduce(field, x)).collect::<Result<_>>()?;
    let n = elems.len() as u32;
    let total = (p as u64).pow(n);
    for idx in 1..total {
        let mut c = Vec::with_capacity(n as usize);
        let mut r = idx;
        for _ in 0..n {
            c.push((r % p as u64) as u32);
            r /= p as u64;
        }
        let mut acc = field.zero();
        for (rep, &ci) in reps.iter().zip(&c) {
            if ci != 0 {
                acc = field.add(&acc, &field.scale(rep, &k.from_i64(ci as i64)));
            }
        }
        if field.is_zero(&acc) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_base;

    fn f2t() -> BaseField {
        BaseField::fq_t(2, 1).unwrap()
    }

    #[test]
    fn reduces_powers_of_t() {
        let f = f2t();
        let t = f.t().unwrap();
        assert_eq!(as_reduce(&f, &f.pow(&t, 2).unwrap()).unwrap(), t);
        assert_eq!(as_reduce(&f, &f.pow(&t, 4).unwrap()).unwrap(), t);
        let inv = f.inv(&t).unwrap();
        assert_eq!(as_reduce(&f, &inv).unwrap(), inv);
    }

    #[test]
    fn witness_is_exact() {
        for (p, src) in [(2, "t^5 + 1/(t^2+t+1)^2 + 1/t^4"), (3, "t^6 + 2/(t-1)^3 + t^2/(t^2+1)^3"), (5, "1/t^10 + t^5")] {
            let f = BaseField::fq_t(p, 1).unwrap();
            let x = parse_base(&f, src).unwrap();
            let (r, g) = as_reduce_with_witness(&f, &x).unwrap();
            assert_eq!(f.sub(&x, &r), wp(&f, &g), "{src}");
        }
    }

    #[test]
    fn constants_over_f4() {
        let f = BaseField::fq_t(2, 2).unwrap();
        let k = f.coeff();
        for c in 0..4 {
            let x = f.from_scalar(Scalar::F(c));
            let r = as_reduce(&f, &x).unwrap();
            let cr = f.as_constant(&r).unwrap();
            assert!(k.is_zero(&cr) || cr == trace_one(&k));
        }
    }

    #[test]
    fn independence_examples() {
        let f = f2t();
        let elems: Vec<BaseElem> = ["1/t", "1/(t+1)", "t"].iter().map(|s| parse_base(&f, s).unwrap()).collect();
        assert!(as_independent(&f, &elems).unwrap());
        let a = elems[0].clone();
        let shifted = f.add(&a, &wp(&f, &f.t().unwrap()));
        assert!(!as_independent(&f, &[a, shifted]).unwrap());
        assert!(!as_independent(&f, &[f.zero()]).unwrap());
    }
}
