//! Base fields: `Q`, `F_q`, and rational function fields `K(t)`.

use serde::{Deserialize, Serialize};

use super::finite::FiniteField;
use super::poly::Poly;
use super::scalar::{CoeffField, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseField {
    Rationals,
    Finite(FiniteField),
    RationalFunctions(CoeffField),
}

/// A reduced fraction `num/den` with monic `den`. Outside function fields both
/// parts are constants and `den = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseElem {
    pub num: Poly,
    pub den: Poly,
}

impl BaseField {
    pub fn coeff(&self) -> CoeffField {
        match self {
            BaseField::Rationals => CoeffField::Rationals,
            BaseField::Finite(f) => CoeffField::Finite(f.clone()),
            BaseField::RationalFunctions(k) => k.clone(),
        }
    }

    pub fn coeff_ref(&self) -> std::borrow::Cow<'_, CoeffField> {
        match self {
            BaseField::RationalFunctions(k) => std::borrow::Cow::Borrowed(k),
            _ => std::borrow::Cow::Owned(self.coeff()),
        }
    }

    pub fn is_function_field(&self) -> bool {
        matches!(self, BaseField::RationalFunctions(_))
    }

    pub fn characteristic(&self) -> u32 {
        self.coeff().characteristic()
    }

    /// `F_q(t)` for `q = p^k`, using the standard modulus.
    pub fn fq_t(p: u32, k: u32) -> Result<Self> {
        Ok(BaseField::RationalFunctions(CoeffField::Finite(FiniteField::standard(p, k)?)))
    }

    pub fn zero(&self) -> BaseElem {
        BaseElem { num: Poly::zero(), den: self.coeff().pone() }
    }

    pub fn one(&self) -> BaseElem {
        let k = self.coeff();
        BaseElem { num: k.pone(), den: k.pone() }
    }

    pub fn from_i64(&self, n: i64) -> BaseElem {
        self.from_scalar(self.coeff().from_i64(n))
    }

    pub fn from_scalar(&self, s: Scalar) -> BaseElem {
        let k = self.coeff();
        BaseElem { num: k.pconst(s), den: k.pone() }
    }

    pub fn from_poly(&self, p: Poly) -> BaseElem {
        BaseElem { num: p, den: self.coeff().pone() }
    }

    pub fn t(&self) -> Result<BaseElem> {
        match self {
            BaseField::RationalFunctions(k) => Ok(self.from_poly(k.pt())),
            _ => Err(Error::Parse("`t` only exists in rational function fields".into())),
        }
    }

    /// Builds `num/den` in canonical form.
    pub fn frac(&self, num: Poly, den: Poly) -> Result<BaseElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.coeff_ref();
        if num.is_zero() {
            return Ok(self.zero());
        }
        let (num, den) = if k.pis_one(&den) {
            (num, den)
        } else if den.deg() == 0 {
            let il = k.inv(&den.c[0]).unwrap();
            (k.pscale(&num, &il), k.pone())
        } else {
            let g = k.pgcd(&num, &den);
            let (num, den) = if k.pis_one(&g) {
                (num, den)
            } else {
                (k.pdiv_exact(&num, &g).unwrap(), k.pdiv_exact(&den, &g).unwrap())
            };
            let (l, den) = k.pmonic(&den);
            (k.pscale(&num, &k.inv(&l).unwrap()), den)
        };
        Ok(BaseElem { num, den })
    }

    /// Checks that `x` is a canonical element of this field.
    pub fn contains(&self, x: &BaseElem) -> bool {
        let k = self.coeff();
        let scalar_ok = |s: &Scalar| match (&k, s) {
            (CoeffField::Rationals, Scalar::Q(_)) => true,
            (CoeffField::Finite(f), Scalar::F(v)) => *v < f.order(),
            _ => false,
        };
        if !x.num.c.iter().chain(&x.den.c).all(scalar_ok) {
            return false;
        }
        if x.num.c.last().is_some_and(|c| k.is_zero(c)) || x.den.c.last().is_some_and(|c| k.is_zero(c)) {
            return false;
        }
        if !self.is_function_field() && (x.num.deg() > 0 || !k.pis_one(&x.den)) {
            return false;
        }
        if x.den.is_zero() || !k.is_one(x.den.lead().unwrap()) {
            return false;
        }
        x.num.is_zero() && k.pis_one(&x.den) || k.pis_one(&k.pgcd(&x.num, &x.den))
    }

    pub fn check(&self, x: &BaseElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn is_zero(&self, x: &BaseElem) -> bool {
        x.num.is_zero()
    }

    pub fn is_one(&self, x: &BaseElem) -> bool {
        let k = self.coeff_ref();
        k.pis_one(&x.num) && k.pis_one(&x.den)
    }

    pub fn add(&self, x: &BaseElem, y: &BaseElem) -> BaseElem {
        if x.num.is_zero() {
            return y.clone();
        }
        if y.num.is_zero() {
            return x.clone();
        }
        let k = self.coeff_ref();
        if x.den == y.den {
            let n = k.padd(&x.num, &y.num);
            if k.pis_one(&x.den) {
                return BaseElem { num: n, den: x.den.clone() };
            }
            return self.frac(n, x.den.clone()).unwrap();
        }
        // with g = gcd(dx, dy) only g can share factors with the new numerator
        let g = k.pgcd(&x.den, &y.den);
        let (dx, dy) = if k.pis_one(&g) {
            (x.den.clone(), y.den.clone())
        } else {
            (k.pdiv_exact(&x.den, &g).unwrap(), k.pdiv_exact(&y.den, &g).unwrap())
        };
        let n = k.padd(&k.pmul(&x.num, &dy), &k.pmul(&y.num, &dx));
        if n.is_zero() {
            return self.zero();
        }
        let den = k.pmul(&dx, &y.den);
        if k.pis_one(&g) {
            return BaseElem { num: n, den };
        }
        let h = k.pgcd(&n, &g);
        if k.pis_one(&h) {
            return BaseElem { num: n, den };
        }
        BaseElem { num: k.pdiv_exact(&n, &h).unwrap(), den: k.pdiv_exact(&den, &h).unwrap() }
    }

    pub fn neg(&self, x: &BaseElem) -> BaseElem {
        BaseElem { num: self.coeff_ref().pneg(&x.num), den: x.den.clone() }
    }

    pub fn sub(&self, x: &BaseElem, y: &BaseElem) -> BaseElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &BaseElem, y: &BaseElem) -> BaseElem {
        if x.num.is_zero() || y.num.is_zero() {
            return self.zero();
        }
        let k = self.coeff_ref();
        if k.pis_one(&x.den) && k.pis_one(&y.den) {
            return BaseElem { num: k.pmul(&x.num, &y.num), den: x.den.clone() };
        }
        let gcd = |a: &Poly, b: &Poly| if k.pis_one(b) || a.deg() == 0 { k.pone() } else { k.pgcd(a, b) };
        let g1 = gcd(&x.num, &y.den);
        let g2 = gcd(&y.num, &x.den);
        let xn = k.pdiv_exact(&x.num, &g1).unwrap();
        let yd = k.pdiv_exact(&y.den, &g1).unwrap();
        let yn = k.pdiv_exact(&y.num, &g2).unwrap();
        let xd = k.pdiv_exact(&x.den, &g2).unwrap();
        BaseElem { num: k.pmul(&xn, &yn), den: k.pmul(&xd, &yd) }
    }

    pub fn scale(&self, x: &BaseElem, s: &Scalar) -> BaseElem {
        let k = self.coeff_ref();
        if k.is_zero(s) {
            return self.zero();
        }
        BaseElem { num: k.pscale(&x.num, s), den: x.den.clone() }
    }

    pub fn inv(&self, x: &BaseElem) -> Result<BaseElem> {
        if x.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.coeff_ref();
        let (l, n) = k.pmonic(&x.num);
        Ok(BaseElem { num: k.pscale(&x.den, &k.inv(&l).unwrap()), den: n })
    }

    pub fn div(&self, x: &BaseElem, y: &BaseElem) -> Result<BaseElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &BaseElem, e: i64) -> Result<BaseElem> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let k = self.coeff_ref();
        let e = e.unsigned_abs();
        Ok(BaseElem { num: k.ppow(&base.num, e), den: k.ppow(&base.den, e) })
    }

    /// Raises every finite-field coefficient to the `p^j`-th power.
    pub fn frobenius(&self, x: &BaseElem, j: u32) -> BaseElem {
        let k = self.coeff_ref();
        match k.as_ref() {
            CoeffField::Finite(f) if j % f.degree() != 0 => BaseElem {
                num: k.pmap(&x.num, |c| k.frobenius(c, j)),
                den: k.pmap(&x.den, |c| k.frobenius(c, j)),
            },
            _ => x.clone(),
        }
    }

    /// The constant value, if `x` lies in the coefficient field.
    pub fn as_constant(&self, x: &BaseElem) -> Option<Scalar> {
        let k = self.coeff_ref();
        if x.num.is_zero() {
            return Some(k.zero());
        }
        (x.num.deg() == 0 && k.pis_one(&x.den)).then(|| x.num.c[0].clone())
    }

    pub fn to_string(&self, x: &BaseElem) -> String {
        let k = self.coeff_ref();
        let n = k.pto_string(&x.num, "t");
        if k.pis_one(&x.den) {
            return n;
        }
        let d = k.pto_string(&x.den, "t");
        let wrap = |s: String, p: &Poly| if p.c.iter().filter(|c| !k.is_zero(c)).count() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, &x.num), wrap(d, &x.den))
    }

    pub fn field_add(&self, x: &BaseElem, y: &BaseElem) -> Result<BaseElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn field_mul(&self, x: &BaseElem, y: &BaseElem) -> Result<BaseElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn field_div(&self, x: &BaseElem, y: &BaseElem) -> Result<BaseElem> {
        self.check(x)?;
        self.check(y)?;
        self.div(x, y)
    }
}
