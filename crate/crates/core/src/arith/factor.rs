//! Factorization of polynomials over `F_q` and of small integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::scalar::{CoeffField, Scalar};

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
/// The field must be finite.
pub fn factor_poly(k: &CoeffField, f: &Poly) -> Vec<(Poly, u32)> {
    let fq = k.finite().expect("factorization needs a finite coefficient field");
    let (_, m) = k.pmonic(f);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    factor_rec(k, &m, 1, &mut out);
    let _ = fq;
    out.sort_by(|a, b| (a.0.deg(), &a.0.c).cmp(&(b.0.deg(), &b.0.c)));
    // merge duplicates from the p-th power recursion
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (p, e) in out {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

fn factor_rec(k: &CoeffField, f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    if f.deg() <= 0 {
        return;
    }
    let fq = k.finite().unwrap();
    let p = fq.characteristic();
    let df = k.pderiv(f);
    if df.is_zero() {
        // f = h(t^p) = (h')^p with h' having p-th roots of the coefficients
        let deg_q = fq.degree();
        let h: Vec<Scalar> = f
            .c
            .iter()
            .step_by(p as usize)
            .map(|c| k.frobenius(c, deg_q - 1))
            .collect();
        factor_rec(k, &k.pnorm(h), mult * p, out);
        return;
    }
    let g = k.pgcd(f, &df);
    let s = k.pdiv_exact(f, &g).unwrap();
    let mut rest = f.clone();
    for irr in squarefree_factor(k, &s) {
        let mut e = 0;
        while let Some(q) = k.pdiv_exact(&rest, &irr) {
            rest = q;
            e += 1;
        }
        out.push((irr, e * mult));
    }
    factor_rec(k, &rest, mult, out);
}

/// Irreducible factors of a monic squarefree polynomial.
fn squarefree_factor(k: &CoeffField, f: &Poly) -> Vec<Poly> {
    let q = k.order().unwrap() as u128;
    let x = k.pt();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut xq = x.clone();
    let mut d = 0u32;
    while rest.deg() > 0 {
        d += 1;
        if 2 * d as i64 > rest.deg() {
            out.push(rest.clone());
            break;
        }
        xq = k.ppowmod(&xq, q, &rest);
        let g = k.pgcd(&rest, &k.psub(&xq, &x));
        if g.deg() > 0 {
            rest = k.pdiv_exact(&rest, &g).unwrap();
            xq = k.prem(&xq, &rest);
            equal_degree(k, &g, d, &mut out);
        }
    }
    out
}

fn equal_degree(k: &CoeffField, f: &Poly, d: u32, out: &mut Vec<Poly>) {
    if f.deg() == d as i64 {
        out.push(f.clone());
        return;
    }
    let fq = k.finite().unwrap();
    let q = fq.order() as u128;
    let p = fq.characteristic();
    let qd = q.pow(d);
    // deterministic trial splitters t + c, t^2 + ..., in enumeration order
    let mut idx: u64 = 1;
    loop {
        let r = trial_poly(k, idx, f.deg() as usize);
        idx += 1;
        if r.deg() < 1 {
            continue;
        }
        let h = if p == 2 {
            // absolute trace map r + r^2 + ... + r^(2^(kd-1)) mod f
            let steps = fq.degree() * d;
            let mut acc = Poly::zero();
            let mut cur = k.prem(&r, f);
            for _ in 0..steps {
                acc = k.padd(&acc, &cur);
                cur = k.prem(&k.pmul(&cur, &cur), f);
            }
            acc
        } else {
            k.psub(&k.ppowmod(&r, (qd - 1) / 2, f), &k.pone())
        };
        let g = k.pgcd(f, &h);
        if g.deg() > 0 && g.deg() < f.deg() {
            let other = k.pdiv_exact(f, &g).unwrap();
            equal_degree(k, &g, d, out);
            equal_degree(k, &other, d, out);
            return;
        }
    }
}

fn trial_poly(k: &CoeffField, mut idx: u64, max_len: usize) -> Poly {
    let q = k.order().unwrap() as u64;
    let mut c = Vec::new();
    while idx > 0 && c.len() < max_len {
        c.push(Scalar::F((idx % q) as u32));
        idx /= q;
    }
    k.pnorm(c)
}

/// Prime factorization of `|n|` by trial division (instances are small).
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n = n.div_floor(&d);
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}
