use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::galois::{GroupTable, UnipotentMatrix};

/// A finite group by its multiplication table, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    gens: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(t: &GroupTable) -> Self {
        let n = t.len();
        let mul = (0..n * n).map(|k| t.mul(k / n, k % n) as u32).collect();
        FiniteGroup { n, mul, gens: t.gens.clone() }
    }

    /// Checks identity, closure, inverses and associativity.
    pub fn from_mul(n: usize, mul: Vec<u32>) -> Result<Self> {
        if mul.len() != n * n || mul.iter().any(|&v| v as usize >= n) {
            return Err(Error::Precondition("table shape".into()));
        }
        let m = |a: usize, b: usize| mul[a * n + b] as usize;
        if (0..n).any(|a| m(0, a) != a || m(a, 0) != a) {
            return Err(Error::Precondition("0 is not the identity".into()));
        }
        if (0..n).any(|a| !(0..n).any(|b| m(a, b) == 0)) {
            return Err(Error::Precondition("missing inverse".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::Precondition("not associative".into()));
                    }
                }
            }
        }
        let mut g = FiniteGroup { n, mul, gens: Vec::new() };
        g.gens = g.greedy_gens();
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        FiniteGroup { n, mul, gens: if n > 1 { vec![1] } else { Vec::new() } }
    }

    /// The group generated by `gens` with its elements, identity first.
    pub fn generated_by(gens: &[UnipotentMatrix]) -> (Self, Vec<UnipotentMatrix>) {
        let id = UnipotentMatrix::identity(gens[0].n, gens[0].p);
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let x = elems[i].mul(s);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        let n = elems.len();
        let mul = (0..n * n).map(|k| index[&elems[k / n].mul(&elems[k % n])] as u32).collect();
        let gens = gens.iter().map(|s| index[s]).collect();
        (FiniteGroup { n, mul, gens }, elems)
    }

    fn greedy_gens(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[0] = true;
        for x in 1..self.n {
            if inside[x] {
                continue;
            }
            gens.push(x);
            // close the generated subgroup again
            let mut queue: VecDeque<usize> = (0..self.n).filter(|&y| inside[y]).collect();
            while let Some(y) = queue.pop_front() {
                for &s in &gens {
                    let z = self.mul(y, s);
                    if !inside[z] {
                        inside[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        gens
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn gens(&self) -> Vec<usize> {
        self.gens.clone()
    }
}
