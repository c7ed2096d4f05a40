use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::*;
use crate::classes::artin_schreier::as_independent;
use crate::classes::kummer::kummer_independent;
use crate::descent::{build_descent_context, descend_fixed_field, h_lift, splitting_power};
use crate::galois::{
    aut_compose, aut_order, aut_pow, character_value, enumerate_group, iso_to_unipotent, superdiagonal,
    verify_presentation_u4,
};
use crate::kummer_u4::{kummer_shift, norm_along};
use crate::massey::{
    coboundary1, cup11, extract_chars, lemma_suites, massey_value, negate_triple, scalar_check, vanishing_witness, FiniteGroup,
    UnipotentRep,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub schema_version: u32,
    pub trace_id: String,
    pub checks: Vec<CheckEntry>,
    pub pass: bool,
}

#[derive(Default)]
struct Checks(Vec<CheckEntry>);

impl Checks {
    fn push(&mut self, name: &str, anchor: &str, pass: bool, witness: Option<String>) -> bool {
        self.0.push(CheckEntry { name: name.into(), anchor: anchor.into(), pass, witness });
        pass
    }

    /// Records an `Err` as a failed check and returns the value otherwise.
    fn attempt<T>(&mut self, name: &str, anchor: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                self.push(name, anchor, true, None);
                Some(v)
            }
            Err(e) => {
                self.push(name, anchor, false, Some(e.to_string()));
                None
            }
        }
    }
}

const GEN_ANCHOR: &str = "generators of the U4 extension";
const MODULE_ANCHOR: &str = "module equations for b, A, C, delta";

/// Replays every claim of a trace from its raw data.
pub fn verify_trace(tf: &TraceFile) -> VerificationReport {
    let mut ck = Checks::default();
    run_checks(tf, &mut ck);
    let pass = !ck.0.is_empty() && ck.0.iter().all(|c| c.pass);
    VerificationReport { schema_version: SCHEMA_VERSION, trace_id: tf.id.clone(), checks: ck.0, pass }
}

fn run_checks(tf: &TraceFile, ck: &mut Checks) {
    let Some(m) = ck.attempt("decode tower", "trace format", decode_tower_of(tf)) else { return };
    let mut s = Vec::new();
    for r in &tf.automorphisms {
        match ck.attempt(&format!("{} preserves the defining relations", r.name), GEN_ANCHOR, decode_aut(&m, r)) {
            Some(a) => s.push(a),
            None => return,
        }
    }
    if !ck.push("three generators s_a, s_b, s_c", GEN_ANCHOR, s.len() == 3, None) {
        return;
    }
    let p = m.p;
    let want_kind = match tf.kind {
        TraceKind::ArtinSchreier => GenKind::ArtinSchreier,
        _ => GenKind::Kummer,
    };
    let shape = m.len() == 6
        && m.gens.iter().all(|g| g.kind == want_kind)
        && (0..3).all(|i| m.level(&m.gens[i].rhs) == 0)
        && (3..6).all(|i| m.level(&m.gens[i].rhs) <= 2);
    if !ck.push("tower shape", GEN_ANCHOR, shape, Some(format!("{} generators", m.len()))) {
        return;
    }
    let e = m.truncate(2);
    let rad: Vec<BaseElem> = (0..3).map(|i| m.as_base(&m.gens[i].rhs).unwrap()).collect();
    let (a, c, b) = (&rad[0], &rad[1], &rad[2]);
    let trio = [a.clone(), b.clone(), c.clone()];
    let declared = tf.instance.decode(&m.base);
    let matches = declared.as_ref().is_ok_and(|d| *d == trio);
    if !ck.push("radicands realize the declared a, b, c", "choice of a, b, c", matches, None) {
        return;
    }
    let indep = match want_kind {
        GenKind::Kummer => kummer_independent(&m.base, &trio, p),
        GenKind::ArtinSchreier => as_independent(&m.base, &trio),
    };
    let indep = ck.attempt("a, b, c independent", "choice of a, b, c", indep).unwrap_or(false);

    let table: Option<Vec<Vec<u32>>> =
        [0usize, 2, 1].iter().map(|&g| s.iter().map(|x| character_value(&m, x, g)).collect()).collect();
    let identity = table
        .as_ref()
        .is_some_and(|t| t.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == (i == j) as u32)));
    ck.push("character table", "characters of a, b, c on the generators", identity, Some(format!("{table:?}")));

    let eqs = module_equations(&m, &e, &s);
    let mut all_eqs = true;
    for (name, ok) in &eqs {
        all_eqs &= ck.push(name, MODULE_ANCHOR, *ok, None);
    }
    let wstar = indep && all_eqs;
    ck.push("dim W* = 4", "W* spanned by b, A, C, delta", wstar, None);
    let order = (p as u64).pow(6);
    ck.push("group order p^6", "order of Gal(M/F)", wstar && identity, Some(order.to_string()));
    for r in verify_presentation_u4(&m, [&s[0], &s[1], &s[2]], p).relations {
        ck.push(&r.name, "presentation of U4(F_p)", r.pass, None);
    }

    if tf.kind != TraceKind::ArtinSchreier {
        norm_checks(tf, &e, b, ck);
    }
    if tf.kind == TraceKind::Descent {
        descent_checks(tf, &m, &s, &trio, ck);
    }
}

fn decode_tower_of(tf: &TraceFile) -> Result<Tower> {
    match (tf.kind, &tf.norms, &tf.descent) {
        (TraceKind::ArtinSchreier, None, None) | (TraceKind::Kummer, Some(_), None) | (TraceKind::Descent, Some(_), Some(_)) => {}
        _ => return Err(Error::Parse("sections do not match the trace kind".into())),
    }
    let base = parse_base_desc(&tf.base, None)?;
    decode_tower(&base, tf.p, &tf.generators)
}

fn decode_all(tf: &TraceFile) -> Result<(Tower, Vec<Automorphism>)> {
    let m = decode_tower_of(tf)?;
    let s = tf.automorphisms.iter().map(|r| decode_aut(&m, r)).collect::<Result<Vec<_>>>()?;
    if s.len() != 3 {
        return Err(Error::Parse("expected automorphisms s_a, s_b, s_c".into()));
    }
    Ok((m, s))
}

/// For each `(s, k, j)`, the image `s(g_k)` must be `g_k g_j` times an element
/// `q` of `E` (additively for Artin-Schreier), and `s(rhs_k) = rhs_k rhs_j q^p`.
fn module_equations(m: &Tower, e: &Tower, s: &[Automorphism]) -> Vec<(String, bool)> {
    let names = ["ra", "rc", "b", "A", "C", "delta"];
    let cases: [(usize, usize, Option<usize>); 6] =
        [(0, 3, Some(2)), (2, 4, Some(2)), (2, 3, None), (0, 4, None), (2, 5, Some(3)), (0, 5, Some(4))];
    let sname = ["s_a", "s_b", "s_c"];
    cases
        .iter()
        .map(|&(si, k, j)| {
            let label = match j {
                Some(j) => format!("{}({}) ~ {} {}", sname[si], names[k], names[k], names[j]),
                None => format!("{}({}) ~ {}", sname[si], names[k], names[k]),
            };
            (label, module_equation(m, e, &s[si], k, j).unwrap_or(false))
        })
        .collect()
}

fn module_equation(m: &Tower, e: &Tower, s: &Automorphism, k: usize, j: Option<usize>) -> Result<bool> {
    let p = m.p as i64;
    let rhs = |i: usize| m.gens[i].rhs.clone();
    let se = s.restrict(2);
    let lhs = se.apply(e, &rhs(k));
    let img = &s.images[k];
    match m.gens[k].kind {
        GenKind::Kummer => {
            let mut y = m.mul(img, &m.pow(&m.gen(k), p - 1)?);
            let mut den = rhs(k);
            if let Some(j) = j {
                y = m.mul(&y, &m.pow(&m.gen(j), p - 1)?);
                den = e.mul(&den, &rhs(j));
            }
            if m.level(&y) > 2 {
                return Ok(false);
            }
            let q = e.div(&y, &den)?;
            Ok(lhs == e.mul(&e.mul(&rhs(k), &j.map_or(e.one(), rhs)), &e.pow(&q, p)?))
        }
        GenKind::ArtinSchreier => {
            let mut q = m.sub(img, &m.gen(k));
            if let Some(j) = j {
                q = m.sub(&q, &m.gen(j));
            }
            if m.level(&q) > 2 {
                return Ok(false);
            }
            let wp = e.sub(&e.pow(&q, p)?, &q);
            Ok(lhs == e.add(&e.add(&rhs(k), &j.map_or(e.zero(), rhs)), &wp))
        }
    }
}

fn norm_checks(tf: &TraceFile, e: &Tower, b: &BaseElem, ck: &mut Checks) {
    let n = tf.norms.as_ref().unwrap();
    let anchor = "norm data N(alpha) = b = N(gamma)";
    for (name, rec, g) in [("N(alpha) = b", &n.alpha, 0usize), ("N(gamma) = b", &n.gamma, 1)] {
        let r = (|| -> Result<bool> {
            let x = decode_elem(e, rec)?;
            if e.support_gens(&x).iter().any(|&i| i != g) {
                return Ok(false);
            }
            let s = kummer_shift(e, g)?;
            Ok(norm_along(e, &s, &x, e.p as u64)? == e.from_base(b.clone()))
        })();
        let ok = ck.attempt(name, anchor, r).unwrap_or(true);
        if !ok {
            ck.0.last_mut().unwrap().pass = false;
        }
    }
}

fn descent_checks(tf: &TraceFile, m: &Tower, s: &[Automorphism], trio: &[BaseElem; 3], ck: &mut Checks) {
    let d = tf.descent.as_ref().unwrap();
    let ctx = parse_base_desc(&d.base0, None).and_then(|f0| build_descent_context(&f0, m.p));
    let Some(ctx) = ck.attempt("descent context", "F = F0(xi)", ctx) else { return };
    ck.0.last_mut().unwrap().witness = Some(format!("d={}, e={}, l={}", ctx.d, ctx.e, ctx.l));
    if !ck.push("F matches the context", "F = F0(xi)", ctx.f == m.base, None) {
        return;
    }
    for (name, x) in ["a", "b", "c"].iter().zip(trio) {
        let ok = ctx.albert_root(x).is_some() && ctx.twist_root(x).is_ok();
        ck.push(&format!("Albert condition for {name}"), "sigma0(x) = x^e mod p-th powers", ok, None);
    }
    let tau = ck.attempt("tau well defined", "lift of sigma0", decode_aut(m, &d.tau));
    let Some(tau) = tau else { return };
    let lift = h_lift(&m.truncate(3), &ctx);
    ck.push("tau lifts sigma0 on F(ra, rc, rb)", "lift of sigma0", lift.ok() == Some(tau.restrict(3)), None);
    let p = m.p as i64;
    for k in 3..6 {
        // tau(g) = g^e w with w in E
        let y = m.pow(&m.gen(k), (p - ctx.e as i64).rem_euclid(p)).map(|g| m.mul(&tau.images[k], &g));
        let ok = y.is_ok_and(|y| m.level(&y) <= 2);
        ck.push(&format!("tau({}) = {}^e w", m.gens[k].name, m.gens[k].name), "twisted radicands", ok, None);
    }
    let power_ok = d.power == splitting_power(ctx.d, m.p);
    ck.push("sigma0~ = tau^m", "lift commuting with U4", power_ok, Some(d.power.to_string()));
    let Ok(sigma0) = aut_pow(m, &tau, d.power) else {
        ck.push("sigma0~ computed", "lift commuting with U4", false, None);
        return;
    };
    let order_ok = aut_order(m, &sigma0, ctx.d as u64).ok() == Some(ctx.d as u64) && sigma0.frob == ctx.frob;
    ck.push("sigma0~ has order d and restricts to sigma0", "lift commuting with U4", order_ok, None);
    for (name, x) in ["s_a", "s_b", "s_c"].iter().zip(s) {
        let ok = matches!((aut_compose(m, &sigma0, x), aut_compose(m, x, &sigma0)), (Ok(u), Ok(v)) if u == v);
        ck.push(&format!("sigma0~ commutes with {name}"), "lift commuting with U4", ok, None);
    }
    let fixed = d.fixed.iter().map(|r| decode_elem(m, r)).collect::<Result<Vec<_>>>();
    let expect = descend_fixed_field(m, &sigma0, ctx.d);
    let ok = matches!((&fixed, &expect), (Ok(f), Ok(x)) if f == x);
    ck.push("fixed field generators", "descended field M0", ok, None);
    let levels = fixed.as_ref().is_ok_and(|f| {
        f.len() == 6 && f.iter().enumerate().all(|(i, y)| m.level(y) == i + 1 && sigma0.apply(m, y) == *y)
    });
    let deg = (m.p as u64).pow(6);
    ck.push("[M0 : F0] = p^6", "descended field M0", levels, Some(deg.to_string()));
}

/// The representation `Gal(M/F) -> U_4(F_p)` sending `s_a, s_b, s_c` to the
/// super-diagonal generators.
pub fn rep_from_trace(tf: &TraceFile) -> Result<UnipotentRep> {
    let (m, s) = decode_all(tf)?;
    let order = (m.p as usize).pow(6);
    let table = enumerate_group(&m, &s, order)?;
    let images = iso_to_unipotent(&table, &superdiagonal(4, m.p))?;
    let g = Arc::new(FiniteGroup::from_table(&table));
    UnipotentRep::new(&g, images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MasseyReport {
    pub schema_version: u32,
    pub trace_id: String,
    pub group_order: usize,
    pub checks: Vec<CheckEntry>,
    /// Value tables indexed by group element.
    pub witnesses: BTreeMap<String, Vec<u32>>,
    pub pass: bool,
}

/// Defining system and vanishing witness for `<chi_a, chi_b, chi_c>` read off
/// `rho`, each identity checked over all pairs of group elements.
pub fn massey_report(trace_id: &str, rho: &UnipotentRep, cases: usize, seed: u64) -> MasseyReport {
    let mut ck = Checks::default();
    let mut witnesses = BTreeMap::new();
    let anchor = "triple Massey product vanishing";
    if let Some((d, w)) = ck.attempt("defining system from rho", anchor, vanishing_witness(rho)) {
        let cup = |x, y| cup11(x, y).ok();
        ck.push("d a12 = x u y", anchor, Some(coboundary1(&d.a12)) == cup(&d.x, &d.y), None);
        ck.push("d a23 = y u z", anchor, Some(coboundary1(&d.a23)) == cup(&d.y, &d.z), None);
        ck.push("value = d(witness)", anchor, massey_value(&d).ok() == Some(coboundary1(&w)), None);
        let lam = ck.attempt("scalar -1 on the middle entry", anchor, scalar_check(&d, -1));
        if let Some(l) = lam {
            ck.0.last_mut().unwrap().pass = l.pass;
        }
        if let Some((neg, w2)) = ck.attempt("negated triple vanishes", anchor, negate_triple(&d)) {
            ck.push("negated value = d(witness)", anchor, massey_value(&neg).ok() == Some(coboundary1(&w2)), None);
            witnesses.insert("negWitness".into(), w2.values.clone());
        }
        for (k, c) in [("x", &d.x), ("y", &d.y), ("z", &d.z), ("a12", &d.a12), ("a23", &d.a23), ("witness", &w)] {
            witnesses.insert(k.into(), c.values.clone());
        }
    }
    if let Some(ex) = ck.attempt("characters extracted", "characters from rho", extract_chars(rho)) {
        ck.push("characters independent", "characters from rho", ex.independent, None);
        if cases > 0 {
            if let Some(suites) = ck.attempt("randomized lemma suites", anchor, lemma_suites(&ex.chars, cases, seed)) {
                for s in suites {
                    ck.push(&s.name, anchor, s.all_pass() && s.cases == cases, Some(format!("{}/{} passed", s.passed, s.cases)));
                }
            }
        }
    }
    let pass = ck.0.iter().all(|c| c.pass);
    MasseyReport {
        schema_version: SCHEMA_VERSION,
        trace_id: trace_id.into(),
        group_order: rho.group.len(),
        checks: ck.0,
        witnesses,
        pass,
    }
}
