use serde::{Deserialize, Serialize};

use super::*;
use crate::as_u4::{u4_as_build, AsInstance, AsTrace};
use crate::descent::{build_descent_context, build_twisted_tower, descent_instance, DescentTrace};
use crate::expr::parse_base;
use crate::kummer_u4::{u4_build, BuildOptions, KummerInstance, KummerTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    ArtinSchreier,
    Kummer,
    Descent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definition {
    pub name: String,
    pub expr: String,
}

/// A shipped instance. `defining` holds named expressions: `a, b, c`
/// for Artin-Schreier, `a, c, alpha, gamma` for Kummer, and the search bound
/// for descent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceRecord {
    pub id: String,
    pub kind: RecordKind,
    pub base: String,
    pub p: u32,
    pub defining: Vec<Definition>,
    pub expected_order: u64,
    pub anchor: String,
    pub notes: String,
}

fn record(id: &str, kind: RecordKind, base: &str, p: u32, defining: &[(&str, &str)], anchor: &str, notes: &str) -> InstanceRecord {
    InstanceRecord {
        id: id.into(),
        kind,
        base: base.into(),
        p,
        defining: defining.iter().map(|(n, e)| Definition { name: n.to_string(), expr: e.to_string() }).collect(),
        expected_order: (p as u64).pow(6),
        anchor: anchor.into(),
        notes: notes.into(),
    }
}

pub fn catalog() -> Vec<InstanceRecord> {
    vec![
        record(
            "as-p2",
            RecordKind::ArtinSchreier,
            "F2(t)",
            2,
            &[("a", "1/t"), ("b", "1/(t+1)"), ("c", "t")],
            "U4 via Artin-Schreier, p = 2",
            "poles at 0, -1 and infinity keep a, b, c independent",
        ),
        record(
            "as-p3",
            RecordKind::ArtinSchreier,
            "F3(t)",
            3,
            &[("a", "1/t"), ("b", "1/(t-1)"), ("c", "t")],
            "U4 via Artin-Schreier, p = 3",
            "order certified by counting, no enumeration",
        ),
        record(
            "kummer-q-p2",
            RecordKind::Kummer,
            "Q",
            2,
            &[("a", "2"), ("c", "5"), ("alpha", "1+ra"), ("gamma", "2+rc")],
            "U4 via Kummer over Q, worked example with b = -1",
            "variant 2 of the C1, C2 choice",
        ),
        record(
            "descent-f5-p3",
            RecordKind::Descent,
            "F5(t)",
            3,
            &[("search", "25")],
            "descent from F25(t) to F5(t)",
            "instance found by the Albert-condition search",
        ),
    ]
}

fn lookup<'a>(rec: &'a InstanceRecord, name: &str) -> Result<&'a str> {
    rec.defining
        .iter()
        .find(|d| d.name == name)
        .map(|d| d.expr.as_str())
        .ok_or_else(|| Error::Parse(format!("record {} lacks `{name}`", rec.id)))
}

/// Runs the construction a record describes.
pub fn construct_record(rec: &InstanceRecord) -> Result<TraceFile> {
    let base = parse_base_desc(&rec.base, None)?;
    match rec.kind {
        RecordKind::ArtinSchreier => {
            let el = |n: &str| parse_base(&base, lookup(rec, n)?);
            let inst = AsInstance::new(&base, el("a")?, el("b")?, el("c")?)?;
            Ok(trace_from_as(&rec.id, &u4_as_build(&inst)?))
        }
        RecordKind::Kummer => {
            let a = parse_base(&base, lookup(rec, "a")?)?;
            let c = parse_base(&base, lookup(rec, "c")?)?;
            let inst = KummerInstance::new(&base, rec.p, a, c, lookup(rec, "alpha")?, lookup(rec, "gamma")?)?;
            Ok(trace_from_kummer(&rec.id, &u4_build(&inst, &BuildOptions::default())?))
        }
        RecordKind::Descent => {
            let bound: u32 = lookup(rec, "search")?.parse().map_err(|_| Error::Parse("search bound".into()))?;
            let ctx = build_descent_context(&base, rec.p)?;
            let inst = descent_instance(&ctx, bound)?;
            Ok(trace_from_descent(&rec.id, &build_twisted_tower(&ctx, &inst)?))
        }
    }
}

fn u4_auts(s: [&Automorphism; 3]) -> Vec<AutRec> {
    ["s_a", "s_b", "s_c"].iter().zip(s).map(|(n, a)| encode_aut(n, a)).collect()
}

pub fn trace_from_as(id: &str, tr: &AsTrace) -> TraceFile {
    TraceFile {
        schema_version: SCHEMA_VERSION,
        id: id.into(),
        kind: TraceKind::ArtinSchreier,
        base: base_desc(&tr.m.base),
        p: tr.p(),
        instance: InstanceRec::new(&tr.inst.a, &tr.inst.b, &tr.inst.c),
        generators: encode_tower(&tr.m),
        automorphisms: u4_auts([&tr.sigma_a, &tr.sigma_b, &tr.sigma_c]),
        norms: None,
        descent: None,
    }
}

pub fn trace_from_kummer(id: &str, tr: &KummerTrace) -> TraceFile {
    TraceFile {
        schema_version: SCHEMA_VERSION,
        id: id.into(),
        kind: TraceKind::Kummer,
        base: base_desc(&tr.m.base),
        p: tr.m.p,
        instance: InstanceRec::new(&tr.inst.a, &tr.inst.b, &tr.inst.c),
        generators: encode_tower(&tr.m),
        automorphisms: u4_auts([&tr.sigma_a, &tr.sigma_b, &tr.sigma_c]),
        norms: Some(NormRec { alpha: encode_elem(&tr.inst.alpha), gamma: encode_elem(&tr.inst.gamma) }),
        descent: None,
    }
}

pub fn trace_from_descent(id: &str, tr: &DescentTrace) -> TraceFile {
    let inst = &tr.untwisted.inst;
    TraceFile {
        schema_version: SCHEMA_VERSION,
        id: id.into(),
        kind: TraceKind::Descent,
        base: base_desc(&tr.m.base),
        p: tr.m.p,
        instance: InstanceRec::new(&inst.a, &inst.b, &inst.c),
        generators: encode_tower(&tr.m),
        automorphisms: u4_auts([&tr.sigma_a, &tr.sigma_b, &tr.sigma_c]),
        norms: Some(NormRec { alpha: encode_elem(&inst.alpha), gamma: encode_elem(&inst.gamma) }),
        descent: Some(DescentRec {
            base0: base_desc(&tr.ctx.f0),
            tau: encode_aut("tau", &tr.tau_m),
            power: tr.power,
            fixed: tr.fixed_gens.iter().map(encode_elem).collect(),
        }),
    }
}
