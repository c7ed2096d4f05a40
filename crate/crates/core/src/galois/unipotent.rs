use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{aut_compose, aut_inverse, aut_order, Automorphism, GroupTable};
use crate::error::{Error, Result};
use crate::tower::Tower;

/// Upper unitriangular `n x n` matrix over `F_p`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnipotentMatrix {
    pub n: usize,
    pub p: u32,
    pub entries: Vec<u32>,
}

impl UnipotentMatrix {
    pub fn identity(n: usize, p: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        UnipotentMatrix { n, p, entries }
    }

    /// `1 + E_{ij}` with 1-based indices.
    pub fn elementary(n: usize, p: u32, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > n {
            return Err(Error::BadIndex(i, j));
        }
        let mut m = Self::identity(n, p);
        m.entries[(i - 1) * n + (j - 1)] = 1;
        Ok(m)
    }

    /// Builds from the strictly upper entries listed row by row.
    pub fn from_upper(n: usize, p: u32, upper: &[u32]) -> Self {
        let mut m = Self::identity(n, p);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.entries[i * n + j] = upper[k] % p;
                k += 1;
            }
        }
        m
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let p = self.p as u64;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut s = 0u64;
                for k in i..=j {
                    s += self.entries[i * n + k] as u64 * other.entries[k * n + j] as u64;
                }
                entries[i * n + j] = (s % p) as u32;
            }
        }
        UnipotentMatrix { n, p: self.p, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.p)
    }

    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }
}

/// `rho_{ij}(m)`: entry `(i, j)` for `1 <= i < j <= n`.
pub fn unipotent_proj(m: &UnipotentMatrix, i: usize, j: usize) -> Result<u32> {
    if i == 0 || i >= j || j > m.n {
        return Err(Error::BadIndex(i, j));
    }
    Ok(m.get(i, j))
}

/// All of `U_n(F_p)`.
pub fn enumerate_unipotent(n: usize, p: u32) -> Vec<UnipotentMatrix> {
    let k = n * (n - 1) / 2;
    let total = (p as usize).pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut upper = Vec::with_capacity(k);
            for _ in 0..k {
                upper.push((idx % p as usize) as u32);
                idx /= p as usize;
            }
            UnipotentMatrix::from_upper(n, p, &upper)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub relations: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.pass)
    }
}

/// Checks the defining relations of `U_4(F_p)` on `(s1, s2, s3)`.
pub fn verify_presentation_u4(t: &Tower, s: [&Automorphism; 3], p: u32) -> PresentationReport {
    let cap = (p as u64) * (p as u64);
    let id = Automorphism::identity(t);
    let comm = |f: &Automorphism, g: &Automorphism| -> Option<Automorphism> {
        let fi = aut_inverse(t, f, cap).ok()?;
        let gi = aut_inverse(t, g, cap).ok()?;
        let x = aut_compose(t, f, g).ok()?;
        let x = aut_compose(t, &x, &fi).ok()?;
        aut_compose(t, &x, &gi).ok()
    };
    let is_id = |x: Option<Automorphism>| x.is_some_and(|x| x == id);
    let mut relations = Vec::new();
    for (i, si) in s.iter().enumerate() {
        let pass = aut_order(t, si, p as u64).is_ok_and(|k| p as u64 % k == 0);
        relations.push(RelationCheck { name: format!("s{}^p=1", i + 1), pass });
    }
    let (s1, s2, s3) = (s[0], s[1], s[2]);
    let c12 = comm(s1, s2);
    let c23 = comm(s2, s3);
    let nested = |x: &Automorphism, c: &Option<Automorphism>| c.as_ref().and_then(|c| comm(x, c));
    let checks = [
        ("[s1,s3]=1", comm(s1, s3)),
        ("[s1,[s1,s2]]=1", nested(s1, &c12)),
        ("[s2,[s1,s2]]=1", nested(s2, &c12)),
        ("[s2,[s2,s3]]=1", nested(s2, &c23)),
        ("[s3,[s2,s3]]=1", nested(s3, &c23)),
        ("[[s1,s2],[s2,s3]]=1", c12.as_ref().zip(c23.as_ref()).and_then(|(a, b)| comm(a, b))),
    ];
    for (name, x) in checks {
        relations.push(RelationCheck { name: name.into(), pass: is_id(x) });
    }
    PresentationReport { relations }
}

/// Sends the table generators to `mats`, extends along the BFS words, and
/// verifies that the result is an isomorphism onto `U_n(F_p)`.
pub fn iso_to_unipotent(table: &GroupTable, mats: &[UnipotentMatrix]) -> Result<Vec<UnipotentMatrix>> {
    let (n, p) = (mats[0].n, mats[0].p);
    let full = (p as usize).pow((n * (n - 1) / 2) as u32);
    if table.len() != full {
        return Err(Error::NotBijective(format!("group has {} of {} elements", table.len(), full)));
    }
    let id = UnipotentMatrix::identity(n, p);
    let images: Vec<UnipotentMatrix> =
        table.words.iter().map(|w| w.iter().fold(id.clone(), |acc, &s| acc.mul(&mats[s]))).collect();
    for (i, gi) in images.iter().enumerate() {
        for (j, gj) in images.iter().enumerate() {
            if images[table.mul(i, j)] != gi.mul(gj) {
                return Err(Error::NotWellDefined(format!("elements {i} and {j}")));
            }
        }
    }
    let distinct: HashSet<&UnipotentMatrix> = images.iter().collect();
    if distinct.len() != full {
        return Err(Error::NotBijective(format!("image has {} of {} elements", distinct.len(), full)));
    }
    Ok(images)
}

/// The super-diagonal elementary matrices `1 + E_{i,i+1}`.
pub fn superdiagonal(n: usize, p: u32) -> Vec<UnipotentMatrix> {
    (1..n).map(|i| UnipotentMatrix::elementary(n, p, i, i + 1).unwrap()).collect()
}
