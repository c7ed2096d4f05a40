//! Coefficient fields: the rationals or a small finite field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::finite::FiniteField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffField {
    Rationals,
    Finite(FiniteField),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    F(u32),
}

impl Scalar {
    pub fn as_rational(&self) -> &BigRational {
        match self {
            Scalar::Q(q) => q,
            Scalar::F(_) => panic!("finite-field scalar used as rational"),
        }
    }

    pub fn as_finite(&self) -> u32 {
        match self {
            Scalar::F(x) => *x,
            Scalar::Q(_) => panic!("rational scalar used as finite-field element"),
        }
    }
}

impl CoeffField {
    pub fn finite(&self) -> Option<&FiniteField> {
        match self {
            CoeffField::Finite(f) => Some(f),
            CoeffField::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CoeffField::Rationals => 0,
            CoeffField::Finite(f) => f.characteristic(),
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u32> {
        self.finite().map(|f| f.order())
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoeffField::Rationals => Scalar::Q(BigRational::zero()),
            CoeffField::Finite(_) => Scalar::F(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            CoeffField::Rationals => Scalar::Q(BigRational::from_integer(n.into())),
            CoeffField::Finite(f) => Scalar::F(f.from_int(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            CoeffField::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            CoeffField::Finite(f) => {
                let p = BigInt::from(f.characteristic());
                Scalar::F(n.mod_floor(&p).to_u32().unwrap())
            }
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Q(q) => q.is_zero(),
            Scalar::F(v) => *v == 0,
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Q(q) => q.is_one(),
            Scalar::F(v) => *v == 1,
        }
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (CoeffField::Rationals, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (CoeffField::Finite(f), Scalar::F(a), Scalar::F(b)) => Scalar::F(f.add(*a, *b)),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match (self, x) {
            (CoeffField::Rationals, Scalar::Q(a)) => Scalar::Q(-a),
            (CoeffField::Finite(f), Scalar::F(a)) => Scalar::F(f.neg(*a)),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (CoeffField::Rationals, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (CoeffField::Finite(f), Scalar::F(a), Scalar::F(b)) => Scalar::F(f.mul(*a, *b)),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self, x: &Scalar) -> Option<Scalar> {
        if self.is_zero(x) {
            return None;
        }
        match (self, x) {
            (CoeffField::Rationals, Scalar::Q(a)) => Some(Scalar::Q(a.recip())),
            (CoeffField::Finite(f), Scalar::F(a)) => f.inv(*a).map(Scalar::F),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        self.inv(y).map(|iy| self.mul(x, &iy))
    }

    pub fn pow(&self, x: &Scalar, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Some(acc)
    }

    /// `x^(p^k)` on finite fields, identity on the rationals.
    pub fn frobenius(&self, x: &Scalar, k: u32) -> Scalar {
        match (self, x) {
            (CoeffField::Finite(f), Scalar::F(a)) => Scalar::F(f.frobenius(*a, k)),
            _ => x.clone(),
        }
    }

    /// Some `y` with `y^n = x`, if one exists in this field.
    pub fn nth_root(&self, x: &Scalar, n: u32) -> Option<Scalar> {
        match (self, x) {
            (CoeffField::Finite(f), Scalar::F(a)) => f.nth_root(*a, n as u64).map(Scalar::F),
            (CoeffField::Rationals, Scalar::Q(q)) => {
                let num = int_nth_root(q.numer(), n)?;
                let den = int_nth_root(q.denom(), n)?;
                Some(Scalar::Q(BigRational::new(num, den)))
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// A primitive `n`-th root of unity for prime `n`, if present.
    pub fn root_of_unity(&self, n: u32) -> Option<Scalar> {
        match self {
            CoeffField::Rationals => (n == 2).then(|| self.from_i64(-1)),
            CoeffField::Finite(f) => {
                if f.characteristic() == n {
                    None
                } else {
                    f.primitive_root_of_unity(n).map(Scalar::F)
                }
            }
        }
    }

    /// Deterministic ordering key used to pick canonical representatives.
    pub fn sort_key(&self, x: &Scalar) -> (BigInt, BigInt) {
        match x {
            Scalar::Q(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::F(v) => (BigInt::from(*v), BigInt::one()),
        }
    }

    pub fn to_string(&self, x: &Scalar) -> String {
        match (self, x) {
            (_, Scalar::Q(q)) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (CoeffField::Finite(f), Scalar::F(v)) => {
                if f.degree() == 1 || *v < f.characteristic() {
                    v.to_string()
                } else {
                    let terms: Vec<String> = f
                        .digits(*v)
                        .iter()
                        .enumerate()
                        .filter(|(_, &d)| d != 0)
                        .map(|(i, &d)| match (i, d) {
                            (0, d) => d.to_string(),
                            (1, 1) => "w".to_string(),
                            (1, d) => format!("{d}*w"),
                            (i, 1) => format!("w^{i}"),
                            (i, d) => format!("{d}*w^{i}"),
                        })
                        .collect();
                    format!("({})", terms.join("+"))
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

/// Exact `n`-th root of an integer, if it is a perfect power.
pub fn int_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return int_nth_root(&-x, n).map(|r| -r);
    }
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots() {
        let q = CoeffField::Rationals;
        let x = Scalar::Q(BigRational::new(8.into(), 27.into()));
        assert_eq!(q.nth_root(&x, 3), Some(Scalar::Q(BigRational::new(2.into(), 3.into()))));
        assert_eq!(q.nth_root(&q.from_i64(-8), 3), Some(q.from_i64(-2)));
        assert_eq!(q.nth_root(&q.from_i64(-4), 2), None);
        assert_eq!(q.nth_root(&q.from_i64(3), 2), None);
    }

    #[test]
    fn f3_arithmetic() {
        let f = CoeffField::Finite(FiniteField::prime(3).unwrap());
        let two = f.from_i64(2);
        assert_eq!(f.mul(&two, &two), f.one());
        assert_eq!(f.from_i64(-1), two);
    }

    #[test]
    fn inverse_of_one() {
        let q = CoeffField::Rationals;
        assert_eq!(q.inv(&q.one()), Some(q.one()));
    }
}
