//! Dense univariate polynomials over a [`CoeffField`], ascending coefficients.

use super::scalar::{CoeffField, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    /// No trailing zeros; the zero polynomial is empty.
    pub c: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for zero.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.c.get(i)
    }
}

impl CoeffField {
    pub fn pnorm(&self, mut c: Vec<Scalar>) -> Poly {
        while c.last().is_some_and(|x| self.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn pconst(&self, x: Scalar) -> Poly {
        self.pnorm(vec![x])
    }

    pub fn pone(&self) -> Poly {
        Poly { c: vec![self.one()] }
    }

    /// The monomial `t`.
    pub fn pt(&self) -> Poly {
        Poly { c: vec![self.zero(), self.one()] }
    }

    pub fn pmonomial(&self, coeff: Scalar, deg: usize) -> Poly {
        let mut c = vec![self.zero(); deg];
        c.push(coeff);
        self.pnorm(c)
    }

    pub fn pis_one(&self, a: &Poly) -> bool {
        a.c.len() == 1 && self.is_one(&a.c[0])
    }

    pub fn padd(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.c.len().max(b.c.len());
        let z = self.zero();
        let c = (0..n)
            .map(|i| self.add(a.c.get(i).unwrap_or(&z), b.c.get(i).unwrap_or(&z)))
            .collect();
        self.pnorm(c)
    }

    pub fn pneg(&self, a: &Poly) -> Poly {
        Poly { c: a.c.iter().map(|x| self.neg(x)).collect() }
    }

    pub fn psub(&self, a: &Poly, b: &Poly) -> Poly {
        self.padd(a, &self.pneg(b))
    }

    pub fn pscale(&self, a: &Poly, s: &Scalar) -> Poly {
        if self.is_zero(s) {
            return Poly::zero();
        }
        Poly { c: a.c.iter().map(|x| self.mul(x, s)).collect() }
    }

    pub fn pmul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        if let CoeffField::Finite(f) = self {
            if f.degree() == 1 {
                let p = f.characteristic() as u64;
                let mut out = vec![0u64; a.c.len() + b.c.len() - 1];
                for (i, x) in a.c.iter().enumerate() {
                    let x = x.as_finite() as u64;
                    if x == 0 {
                        continue;
                    }
                    for (j, y) in b.c.iter().enumerate() {
                        out[i + j] = (out[i + j] + x * y.as_finite() as u64) % p;
                    }
                }
                return self.pnorm(out.into_iter().map(|v| Scalar::F(v as u32)).collect());
            }
            let mut out = vec![0u32; a.c.len() + b.c.len() - 1];
            for (i, x) in a.c.iter().enumerate() {
                let x = x.as_finite();
                if x == 0 {
                    continue;
                }
                for (j, y) in b.c.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(x, y.as_finite()));
                }
            }
            return from_raw(out);
        }
        let mut out = vec![self.zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.pnorm(out)
    }

    pub fn ppow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = self.pone();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.pmul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.pmul(&b, &b);
            }
        }
        acc
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn pdivrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        if let CoeffField::Finite(f) = self {
            let mut r = raw(a);
            let q = fq_divrem(f, &mut r, &raw(b), true);
            return (from_raw(q), from_raw(r));
        }
        let lb = self.inv(b.lead().expect("division by zero polynomial")).unwrap();
        if a.c.len() < b.c.len() {
            return (Poly::zero(), a.clone());
        }
        let mut r = a.c.clone();
        let db = b.c.len() - 1;
        let mut q = vec![self.zero(); a.c.len() - db];
        for k in (0..q.len()).rev() {
            let coef = self.mul(&r[k + db], &lb);
            if self.is_zero(&coef) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                r[k + j] = self.sub(&r[k + j], &self.mul(&coef, y));
            }
            q[k] = coef;
        }
        r.truncate(db);
        (self.pnorm(q), self.pnorm(r))
    }

    pub fn prem(&self, a: &Poly, b: &Poly) -> Poly {
        if let CoeffField::Finite(f) = self {
            let mut r = raw(a);
            fq_divrem(f, &mut r, &raw(b), false);
            return from_raw(r);
        }
        self.pdivrem(a, b).1
    }

    /// Exact division, `None` if `b` does not divide `a`.
    pub fn pdiv_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let (q, r) = self.pdivrem(a, b);
        r.is_zero().then_some(q)
    }

    /// Splits off the leading coefficient: `a = lead * monic`.
    pub fn pmonic(&self, a: &Poly) -> (Scalar, Poly) {
        match a.lead() {
            None => (self.zero(), Poly::zero()),
            Some(l) => {
                let il = self.inv(l).unwrap();
                (l.clone(), self.pscale(a, &il))
            }
        }
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn pgcd(&self, a: &Poly, b: &Poly) -> Poly {
        if let CoeffField::Finite(f) = self {
            let (mut x, mut y) = (raw(a), raw(b));
            while !y.is_empty() {
                fq_divrem(f, &mut x, &y, false);
                std::mem::swap(&mut x, &mut y);
            }
            return self.pmonic(&from_raw(x)).1;
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.prem(&x, &y);
            x = y;
            y = r;
        }
        self.pmonic(&x).1
    }

    /// Extended gcd: `(g, s, u)` with `s a + u b = g`, `g` monic.
    pub fn pxgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.pone(), Poly::zero());
        let (mut u0, mut u1) = (Poly::zero(), self.pone());
        while !r1.is_zero() {
            let (q, r) = self.pdivrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.psub(&s0, &self.pmul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let u2 = self.psub(&u0, &self.pmul(&q, &u1));
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.lead() {
            None => (r0, s0, u0),
            Some(l) => {
                let il = self.inv(l).unwrap();
                (self.pscale(&r0, &il), self.pscale(&s0, &il), self.pscale(&u0, &il))
            }
        }
    }

    pub fn peval(&self, a: &Poly, x: &Scalar) -> Scalar {
        a.c.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    pub fn pderiv(&self, a: &Poly) -> Poly {
        let c = a.c.iter().enumerate().skip(1).map(|(i, x)| self.mul(x, &self.from_i64(i as i64))).collect();
        self.pnorm(c)
    }

    /// Applies `f` to every coefficient.
    pub fn pmap(&self, a: &Poly, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        self.pnorm(a.c.iter().map(f).collect())
    }

    /// `a(b(t))`.
    pub fn pcompose(&self, a: &Poly, b: &Poly) -> Poly {
        a.c.iter().rev().fold(Poly::zero(), |acc, c| self.padd(&self.pmul(&acc, b), &self.pconst(c.clone())))
    }

    /// `(a^e) mod m`.
    pub fn ppowmod(&self, a: &Poly, mut e: u128, m: &Poly) -> Poly {
        let mut acc = self.prem(&self.pone(), m);
        let mut b = self.prem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.prem(&self.pmul(&acc, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.prem(&self.pmul(&b, &b), m);
            }
        }
        acc
    }

    /// Some `g` with `g^n = a`, when `n` is invertible in the field.
    pub fn pnth_root(&self, a: &Poly, n: u32) -> Option<Poly> {
        if a.is_zero() {
            return Some(Poly::zero());
        }
        let d = a.deg() as usize;
        if d % n as usize != 0 {
            return None;
        }
        let (lead, m) = self.pmonic(a);
        let lroot = self.nth_root(&lead, n)?;
        let k = d / n as usize;
        // monic g with g^n = m, determined top-down coefficient by coefficient
        let mut g = vec![self.zero(); k + 1];
        g[k] = self.one();
        let inv_n = self.inv(&self.from_i64(n as i64))?;
        for i in 1..=k {
            let trial = self.pnorm(g.clone());
            let pw = self.ppow(&trial, n as u64);
            let idx = d - i;
            let diff = self.sub(m.coeff(idx).unwrap_or(&self.zero()), pw.coeff(idx).unwrap_or(&self.zero()));
            g[k - i] = self.mul(&diff, &inv_n);
        }
        let g = self.pnorm(g);
        if self.ppow(&g, n as u64) != m {
            return None;
        }
        Some(self.pscale(&g, &lroot))
    }

    pub fn pto_string(&self, a: &Poly, var: &str) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, x) in a.c.iter().enumerate().rev() {
            if self.is_zero(x) {
                continue;
            }
            let cs = self.to_string(x);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(if i == 0 {
                cs
            } else if self.is_one(x) {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::finite::FiniteField;

    fn f(p: u32) -> CoeffField {
        CoeffField::Finite(FiniteField::prime(p).unwrap())
    }

    fn poly(k: &CoeffField, c: &[i64]) -> Poly {
        k.pnorm(c.iter().map(|&x| k.from_i64(x)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let k = f(5);
        let a = poly(&k, &[1, 2, 3, 4, 1]);
        let b = poly(&k, &[2, 0, 1]);
        let (q, r) = k.pdivrem(&a, &b);
        assert_eq!(k.padd(&k.pmul(&q, &b), &r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_is_monic() {
        let k = CoeffField::Rationals;
        let a = k.pmul(&poly(&k, &[1, 1]), &poly(&k, &[2, 0, 3]));
        let b = k.pmul(&poly(&k, &[1, 1]), &poly(&k, &[-7, 1]));
        assert_eq!(k.pgcd(&a, &b), poly(&k, &[1, 1]));
    }

    #[test]
    fn nth_root_recovers_cube() {
        let k = f(7);
        let g = poly(&k, &[3, 1, 2]);
        let cube = k.ppow(&g, 3);
        let r = k.pnth_root(&cube, 3).unwrap();
        assert_eq!(k.ppow(&r, 3), cube);
        assert!(k.pnth_root(&poly(&k, &[0, 1]), 3).is_none());
    }

    #[test]
    fn xgcd_bezout() {
        let k = f(3);
        let a = poly(&k, &[1, 0, 1, 1]);
        let b = poly(&k, &[2, 1]);
        let (g, s, u) = k.pxgcd(&a, &b);
        assert_eq!(k.padd(&k.pmul(&s, &a), &k.pmul(&u, &b)), g);
    }
}

fn raw(a: &Poly) -> Vec<u32> {
    a.c.iter().map(|x| x.as_finite()).collect()
}

fn from_raw(mut v: Vec<u32>) -> Poly {
    while v.last() == Some(&0) {
        v.pop();
    }
    Poly { c: v.into_iter().map(Scalar::F).collect() }
}

/// Replaces `r` by `r mod b` (trimmed), returning the quotient if asked.
fn fq_divrem(f: &super::FiniteField, r: &mut Vec<u32>, b: &[u32], want_q: bool) -> Vec<u32> {
    let lb = f.inv(*b.last().expect("division by zero polynomial")).unwrap();
    let db = b.len() - 1;
    let mut q = Vec::new();
    if r.len() >= b.len() {
        if want_q {
            q = vec![0; r.len() - db];
        }
        for k in (0..r.len() - db).rev() {
            let coef = f.mul(r[k + db], lb);
            if coef == 0 {
                continue;
            }
            let neg = f.neg(coef);
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = f.add(r[k + j], f.mul(neg, y));
            }
            if want_q {
                q[k] = coef;
            }
        }
        r.truncate(db);
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    q
}
