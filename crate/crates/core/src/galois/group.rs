use std::collections::HashMap;

use rayon::prelude::*;

use super::{aut_compose, Automorphism};
use crate::error::{Error, Result};
use crate::tower::Tower;

/// A finite group of automorphisms closed under composition.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub elements: Vec<Automorphism>,
    /// `right[i][s]` is the index of `elements[i] o gens[s]`.
    pub right: Vec<Vec<usize>>,
    /// A word in the generators for each element, read left to right.
    pub words: Vec<Vec<usize>>,
    pub gens: Vec<usize>,
    mul: Vec<Vec<u32>>,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `elements[i] o elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.len()).find(|&j| self.mul(i, j) == 0).expect("finite group")
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.elements.iter().position(|e| e == a)
    }
}

/// Closes `gens` under composition by breadth-first search, stopping with
/// `CapExceeded` once more than `cap` elements are found.
pub fn enumerate_group(t: &Tower, gens: &[Automorphism], cap: usize) -> Result<GroupTable> {
    let id = Automorphism::identity(t);
    let mut elements = vec![id.clone()];
    let mut words = vec![Vec::new()];
    let mut index: HashMap<Automorphism, usize> = HashMap::from([(id, 0)]);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let products: Vec<Vec<Automorphism>> = frontier
            .par_iter()
            .map(|&i| gens.iter().map(|s| aut_compose(t, &elements[i], s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (&i, row) in frontier.iter().zip(products) {
            let mut r = Vec::with_capacity(gens.len());
            for (s, a) in row.into_iter().enumerate() {
                let j = match index.get(&a) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        let mut w = words[i].clone();
                        w.push(s);
                        words.push(w);
                        index.insert(a.clone(), j);
                        elements.push(a);
                        next.push(j);
                        j
                    }
                };
                r.push(j);
            }
            if right.len() <= i {
                right.resize(i + 1, Vec::new());
            }
            right[i] = r;
        }
        frontier = next;
    }
    let n = elements.len();
    let mul: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| words[j].iter().fold(i, |acc, &s| right[acc][s]) as u32)
                .collect()
        })
        .collect();
    let gens_idx = gens.iter().map(|g| index[g]).collect();
    Ok(GroupTable { elements, right, words, gens: gens_idx, mul })
}
