//! Certificates that each adjunction in a tower is a proper degree-`p` step.

use super::{GenKind, TElem, Tower};
use crate::arith::{BaseField, Scalar};
use crate::classes::{artin_schreier, kummer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootStatus {
    /// `y` with `y^p = x` (Kummer) or `y^p - y = x` (Artin-Schreier).
    Power(TElem),
    NotPower,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorStatus {
    Certified,
    /// The defining element has a root one level down.
    NotAField(TElem),
    /// The sufficient tests were not conclusive.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerCertificate {
    pub statuses: Vec<GeneratorStatus>,
}

impl TowerCertificate {
    pub fn is_certified(&self) -> bool {
        self.statuses.iter().all(|s| *s == GeneratorStatus::Certified)
    }

    pub fn first_witness(&self) -> Option<(usize, &TElem)> {
        self.statuses.iter().enumerate().find_map(|(i, s)| match s {
            GeneratorStatus::NotAField(w) => Some((i, w)),
            _ => None,
        })
    }
}

fn base_pth_root(t: &Tower, x: &TElem) -> RootStatus {
    let c = t.as_base(x).unwrap();
    match kummer::pth_root(&t.base, &c, t.p) {
        Some(r) => RootStatus::Power(t.from_base(r)),
        None => RootStatus::NotPower,
    }
}

fn base_wp_preimage(t: &Tower, x: &TElem) -> RootStatus {
    let c = t.as_base(x).unwrap();
    match &t.base {
        BaseField::RationalFunctions(_) => match artin_schreier::wp_preimage(&t.base, &c) {
            Ok(Some(g)) => RootStatus::Power(t.from_base(g)),
            Ok(None) => RootStatus::NotPower,
            Err(_) => RootStatus::Unknown,
        },
        BaseField::Finite(f) => {
            let v = t.base.as_constant(&c).unwrap().as_finite();
            let p = f.characteristic() as u64;
            match f.elements().find(|&h| f.sub(f.pow(h, p), h) == v) {
                Some(h) => RootStatus::Power(t.from_base(t.base.from_scalar(Scalar::F(h)))),
                None => RootStatus::NotPower,
            }
        }
        BaseField::Rationals => RootStatus::Unknown,
    }
}

/// Decides whether `x` (of level at most `n`) is a `p`-th power in `T_n`,
/// assuming the first `n` adjunctions are proper.
pub fn pth_root_tower(t: &Tower, n: usize, x: &TElem) -> RootStatus {
    if x.is_zero() {
        return RootStatus::Power(t.zero());
    }
    if n == 0 {
        return base_pth_root(t, x);
    }
    let r = &t.gens[n - 1].rhs;
    if t.level(x) < n {
        let mut unknown = false;
        let inv_r = match t.inv(r) {
            Ok(v) => v,
            Err(_) => return RootStatus::Unknown,
        };
        let mut y = x.clone();
        for j in 0..t.p {
            match pth_root_tower(t, n - 1, &y) {
                RootStatus::Power(w) => {
                    let g = t.pow(&t.gen(n - 1), j as i64).unwrap();
                    return RootStatus::Power(t.mul(&w, &g));
                }
                RootStatus::Unknown => unknown = true,
                RootStatus::NotPower => {}
            }
            y = t.mul(&y, &inv_r);
        }
        return if unknown { RootStatus::Unknown } else { RootStatus::NotPower };
    }
    let (norm, _) = t.relative_norm(x, n);
    match pth_root_tower(t, n - 1, &norm) {
        RootStatus::NotPower => RootStatus::NotPower,
        _ => RootStatus::Unknown,
    }
}

/// Decides whether `x` lies in `wp(T_n)`, assuming the first `n` adjunctions
/// are proper.
pub fn in_wp_tower(t: &Tower, n: usize, x: &TElem) -> RootStatus {
    if x.is_zero() {
        return RootStatus::Power(t.zero());
    }
    if n == 0 {
        return base_wp_preimage(t, x);
    }
    let r = &t.gens[n - 1].rhs;
    if t.level(x) < n {
        let mut unknown = false;
        for j in 0..t.p {
            let y = t.sub(x, &t.scale_int(r, j as i64));
            match in_wp_tower(t, n - 1, &y) {
                RootStatus::Power(w) => {
                    return RootStatus::Power(t.add(&w, &t.scale_int(&t.gen(n - 1), j as i64)));
                }
                RootStatus::Unknown => unknown = true,
                RootStatus::NotPower => {}
            }
        }
        return if unknown { RootStatus::Unknown } else { RootStatus::NotPower };
    }
    let mut trace = t.zero();
    for j in 0..t.p {
        trace = t.add(&trace, &t.top_conjugate(x, n, j));
    }
    match in_wp_tower(t, n - 1, &trace) {
        RootStatus::NotPower => RootStatus::NotPower,
        _ => RootStatus::Unknown,
    }
}

/// Checks every adjunction in order: a root of the defining element one level
/// down is a witness that the step is not a field extension of degree `p`.
pub fn validate_tower(t: &Tower) -> TowerCertificate {
    let mut statuses = Vec::with_capacity(t.gens.len());
    for (k, g) in t.gens.iter().enumerate() {
        let st = match g.kind {
            GenKind::Kummer => pth_root_tower(t, k, &g.rhs),
            GenKind::ArtinSchreier => in_wp_tower(t, k, &g.rhs),
        };
        statuses.push(match st {
            RootStatus::Power(w) => GeneratorStatus::NotAField(w),
            RootStatus::NotPower => GeneratorStatus::Certified,
            RootStatus::Unknown => GeneratorStatus::Inconclusive,
        });
    }
    TowerCertificate { statuses }
}
