//! Expression grammar: integers, `t`, `w`, generator names, `+ - * / ^ ( )`.

use num_bigint::BigInt;

use crate::arith::{BaseElem, BaseField, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos) {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
                }
                _ => return Err(Error::Parse("exponent must be an integer".into())),
            };
            if paren && !self.eat(')') {
                return Err(Error::Parse("unclosed exponent parenthesis".into()));
            }
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Operations an evaluation target must provide.
pub trait Algebra {
    type Elem: Clone;
    fn int(&self, n: &BigInt) -> Result<Self::Elem>;
    fn var(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn one(&self) -> Self::Elem;
}

pub fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::Elem> {
    Ok(match e {
        Expr::Int(n) => alg.int(n)?,
        Expr::Var(v) => alg.var(v)?,
        Expr::Neg(x) => alg.neg(&eval(alg, x)?),
        Expr::Add(x, y) => alg.add(&eval(alg, x)?, &eval(alg, y)?),
        Expr::Sub(x, y) => alg.sub(&eval(alg, x)?, &eval(alg, y)?),
        Expr::Mul(x, y) => alg.mul(&eval(alg, x)?, &eval(alg, y)?),
        Expr::Div(x, y) => {
            let d = eval(alg, y)?;
            alg.mul(&eval(alg, x)?, &alg.inv(&d).map_err(|_| Error::DivisionByZero)?)
        }
        Expr::Pow(x, n) => {
            let b = eval(alg, x)?;
            let b = if *n < 0 { alg.inv(&b).map_err(|_| Error::DivisionByZero)? } else { b };
            let mut acc = alg.one();
            for _ in 0..n.unsigned_abs() {
                acc = alg.mul(&acc, &b);
            }
            acc
        }
    })
}

impl Algebra for BaseField {
    type Elem = BaseElem;

    fn int(&self, n: &BigInt) -> Result<BaseElem> {
        Ok(self.from_scalar(self.coeff().from_bigint(n)))
    }

    fn var(&self, name: &str) -> Result<BaseElem> {
        match name {
            "t" => self.t(),
            "w" => match self.coeff().finite() {
                Some(f) if f.degree() > 1 => Ok(self.from_scalar(Scalar::F(f.generator()))),
                _ => Err(Error::Parse("`w` needs a finite coefficient field of degree > 1".into())),
            },
            _ => Err(Error::Parse(format!("unknown symbol `{name}`"))),
        }
    }

    fn add(&self, x: &BaseElem, y: &BaseElem) -> BaseElem {
        BaseField::add(self, x, y)
    }

    fn sub(&self, x: &BaseElem, y: &BaseElem) -> BaseElem {
        BaseField::sub(self, x, y)
    }

    fn mul(&self, x: &BaseElem, y: &BaseElem) -> BaseElem {
        BaseField::mul(self, x, y)
    }

    fn neg(&self, x: &BaseElem) -> BaseElem {
        BaseField::neg(self, x)
    }

    fn inv(&self, x: &BaseElem) -> Result<BaseElem> {
        BaseField::inv(self, x)
    }

    fn one(&self) -> BaseElem {
        BaseField::one(self)
    }
}

pub fn parse_base(field: &BaseField, src: &str) -> Result<BaseElem> {
    eval(field, &parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        let f = BaseField::fq_t(3, 1).unwrap();
        let x = parse_base(&f, "1/(t-1)").unwrap();
        let y = f.inv(&f.sub(&f.t().unwrap(), &f.one())).unwrap();
        assert_eq!(x, y);
        assert_eq!(parse_base(&f, "t^-1").unwrap(), parse_base(&f, "1/t").unwrap());
        assert_eq!(parse_base(&f, "t^(-2)").unwrap(), parse_base(&f, "1/t^2").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        let q = BaseField::Rationals;
        assert!(parse_base(&q, "1/(").is_err());
        assert!(parse_base(&q, "t").is_err());
        assert!(parse_base(&q, "").is_err());
        assert!(parse_base(&q, "1/0").is_err());
        assert_eq!(parse_base(&q, "-3/6").unwrap(), q.div(&q.from_i64(-1), &q.from_i64(2)).unwrap());
    }
}
