//! Trace files: the raw data of a construction (base field, tower radicands,
//! automorphism images, norm witnesses) with no derived flags, plus the
//! catalog of shipped instances and the verifier that re-derives every claim.
//!
//! Elements are stored as sparse lists of monomials, each carrying the
//! ascending coefficient sequences of a reduced `num/den`.

mod catalog;
mod verify;

pub use catalog::{catalog, construct_record, Definition, trace_from_as, trace_from_descent, trace_from_kummer, InstanceRecord, RecordKind};
pub use verify::{massey_report, rep_from_trace, verify_trace, CheckEntry, MasseyReport, VerificationReport};

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{BaseElem, BaseField, CoeffField, FiniteField, Poly, Scalar};
use crate::error::{Error, Result};
use crate::galois::Automorphism;
use crate::tower::{GenKind, TElem, Tower};

pub const SCHEMA_VERSION: u32 = 1;

/// A coefficient: an index into `F_q` or a reduced rational written `n` or `n/d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    F(u32),
    Q(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub mono: u32,
    pub num: Vec<Coef>,
    pub den: Vec<Coef>,
}

pub type ElemRec = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenRec {
    pub name: String,
    pub kind: GenKind,
    pub rhs: ElemRec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutRec {
    pub name: String,
    pub images: Vec<ElemRec>,
    pub frob: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceKind {
    ArtinSchreier,
    Kummer,
    Descent,
}

/// A base field element `num/den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseRec {
    pub num: Vec<Coef>,
    pub den: Vec<Coef>,
}

/// The radicands `a, b, c` the trace claims to realize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRec {
    pub a: BaseRec,
    pub b: BaseRec,
    pub c: BaseRec,
}

impl InstanceRec {
    pub fn new(a: &BaseElem, b: &BaseElem, c: &BaseElem) -> Self {
        let rec = |x: &BaseElem| {
            let (num, den) = encode_base(x);
            BaseRec { num, den }
        };
        InstanceRec { a: rec(a), b: rec(b), c: rec(c) }
    }

    pub fn decode(&self, field: &BaseField) -> Result<[BaseElem; 3]> {
        let d = |r: &BaseRec| decode_base(field, &r.num, &r.den);
        Ok([d(&self.a)?, d(&self.b)?, d(&self.c)?])
    }
}

/// `alpha` in `F(ra)` and `gamma` in `F(rc)` with common norm `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormRec {
    pub alpha: ElemRec,
    pub gamma: ElemRec,
}

/// The lift `tau` of `sigma0`, the power giving `sigma0~`, and the fixed
/// field generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DescentRec {
    pub base0: String,
    pub tau: AutRec,
    pub power: u64,
    pub fixed: Vec<ElemRec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TraceFile {
    pub schema_version: u32,
    pub id: String,
    pub kind: TraceKind,
    pub base: String,
    pub p: u32,
    pub instance: InstanceRec,
    pub generators: Vec<GenRec>,
    pub automorphisms: Vec<AutRec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norms: Option<NormRec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent: Option<DescentRec>,
}

impl TraceFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let t: TraceFile = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        if t.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schemaVersion {}", t.schema_version)));
        }
        Ok(t)
    }
}

/// Parses `Q`, `Q(t)`, `F<q>`, `F<q>(t)`; `fq-t` and `fq` take the order from `q`.
pub fn parse_base_desc(desc: &str, q: Option<u32>) -> Result<BaseField> {
    let s = desc.trim();
    let finite = |q: u32| -> Result<FiniteField> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        FiniteField::standard(p, k)
    };
    let need_q = || q.ok_or_else(|| Error::Parse(format!("base {s} needs --q")));
    match s {
        "Q" => return Ok(BaseField::Rationals),
        "Q(t)" => return Ok(BaseField::RationalFunctions(CoeffField::Rationals)),
        "fq-t" => return Ok(BaseField::RationalFunctions(CoeffField::Finite(finite(need_q()?)?))),
        "fq" => return Ok(BaseField::Finite(finite(need_q()?)?)),
        _ => {}
    }
    let rest = s.strip_prefix('F').ok_or_else(|| Error::Parse(format!("unknown base field {s}")))?;
    let (digits, func) = match rest.strip_suffix("(t)") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    let q: u32 = digits.parse().map_err(|_| Error::Parse(format!("unknown base field {s}")))?;
    let f = finite(q)?;
    Ok(if func { BaseField::RationalFunctions(CoeffField::Finite(f)) } else { BaseField::Finite(f) })
}

pub fn base_desc(field: &BaseField) -> String {
    match field {
        BaseField::Rationals => "Q".into(),
        BaseField::Finite(f) => format!("F{}", f.order()),
        BaseField::RationalFunctions(CoeffField::Rationals) => "Q(t)".into(),
        BaseField::RationalFunctions(CoeffField::Finite(f)) => format!("F{}(t)", f.order()),
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn encode_scalar(s: &Scalar) -> Coef {
    match s {
        Scalar::F(v) => Coef::F(*v),
        Scalar::Q(q) if q.denom() == &BigInt::from(1) => Coef::Q(q.numer().to_string()),
        Scalar::Q(q) => Coef::Q(format!("{}/{}", q.numer(), q.denom())),
    }
}

fn decode_scalar(k: &CoeffField, c: &Coef) -> Result<Scalar> {
    match (k, c) {
        (CoeffField::Finite(f), Coef::F(v)) if *v < f.order() => Ok(Scalar::F(*v)),
        (CoeffField::Rationals, Coef::Q(s)) => {
            let q = BigRational::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s}")))?;
            if encode_scalar(&Scalar::Q(q.clone())) != *c {
                return Err(Error::Parse(format!("non-canonical rational {s}")));
            }
            Ok(Scalar::Q(q))
        }
        _ => Err(Error::Parse(format!("coefficient {c:?} outside the coefficient field"))),
    }
}

pub fn encode_base(x: &BaseElem) -> (Vec<Coef>, Vec<Coef>) {
    (x.num.c.iter().map(encode_scalar).collect(), x.den.c.iter().map(encode_scalar).collect())
}

/// Rejects anything but the canonical reduced form.
pub fn decode_base(field: &BaseField, num: &[Coef], den: &[Coef]) -> Result<BaseElem> {
    let k = field.coeff();
    let poly = |v: &[Coef]| -> Result<Poly> { Ok(Poly { c: v.iter().map(|c| decode_scalar(&k, c)).collect::<Result<_>>()? }) };
    let x = BaseElem { num: poly(num)?, den: poly(den)? };
    if !field.contains(&x) {
        return Err(Error::Parse("element is not in canonical form".into()));
    }
    Ok(x)
}

pub fn encode_elem(x: &TElem) -> ElemRec {
    x.terms
        .iter()
        .map(|(&mono, c)| {
            let (num, den) = encode_base(c);
            Term { mono, num, den }
        })
        .collect()
}

pub fn decode_elem(t: &Tower, rec: &ElemRec) -> Result<TElem> {
    let mut terms = BTreeMap::new();
    for term in rec {
        let c = decode_base(&t.base, &term.num, &term.den)?;
        if t.base.is_zero(&c) {
            return Err(Error::Parse("zero coefficient stored".into()));
        }
        if terms.insert(term.mono, c).is_some() {
            return Err(Error::Parse(format!("monomial {} repeated", term.mono)));
        }
    }
    let x = TElem { terms };
    t.check(&x)?;
    Ok(x)
}

pub fn encode_tower(t: &Tower) -> Vec<GenRec> {
    t.gens.iter().map(|g| GenRec { name: g.name.clone(), kind: g.kind, rhs: encode_elem(&g.rhs) }).collect()
}

pub fn decode_tower(base: &BaseField, p: u32, gens: &[GenRec]) -> Result<Tower> {
    let mut t = Tower::new(base.clone(), p)?;
    for g in gens {
        let rhs = decode_elem(&t, &g.rhs)?;
        t = t.adjoin(&g.name, g.kind, rhs)?;
    }
    Ok(t)
}

pub fn encode_aut(name: &str, a: &Automorphism) -> AutRec {
    AutRec { name: name.into(), images: a.images.iter().map(encode_elem).collect(), frob: a.frob }
}

/// Decodes the images and checks every defining relation.
pub fn decode_aut(t: &Tower, rec: &AutRec) -> Result<Automorphism> {
    let images = rec.images.iter().map(|x| decode_elem(t, x)).collect::<Result<Vec<_>>>()?;
    Automorphism::new(t, images, rec.frob)
}

#[cfg(test)]
mod tests;
