use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    /// Draws whose cup products were not coboundaries, so no system existed.
    pub skipped: usize,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.cases
    }
}

fn random_hom(rng: &mut ChaCha8Rng, basis: &[Cochain1]) -> Cochain1 {
    let p = basis[0].p;
    basis.iter().fold(Cochain1::zero(&basis[0].group, p), |acc, b| acc.add(&b.scale(rng.gen_range(0..p) as i64)).unwrap())
}

/// Solves for a defining system and shifts `a12`, `a23` by random
/// homomorphisms, which keeps it a defining system.
fn random_system(rng: &mut ChaCha8Rng, basis: &[Cochain1], x: &Cochain1, y: &Cochain1, z: &Cochain1) -> Result<Option<DefiningSystem>> {
    let Some(d) = DefiningSystem::solve(x.clone(), y.clone(), z.clone())? else { return Ok(None) };
    let a12 = d.a12.add(&random_hom(rng, basis))?;
    let a23 = d.a23.add(&random_hom(rng, basis))?;
    DefiningSystem::new(d.x, d.y, d.z, a12, a23).map(Some)
}

/// Randomized additivity and scalar suites over homomorphisms spanned by
/// `basis`: `cases` successful draws each, retrying draws for which no
/// defining system exists.
pub fn lemma_suites(basis: &[Cochain1], cases: usize, seed: u64) -> Result<[SuiteReport; 2]> {
    if basis.is_empty() {
        return Err(Error::Precondition("empty basis".into()));
    }
    let p = basis[0].p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_draws = cases * 50 + 50;
    let mut add = SuiteReport { name: "additivity in the middle entry".into(), cases: 0, passed: 0, skipped: 0 };
    let mut draws = 0;
    while add.cases < cases && draws < max_draws {
        draws += 1;
        let (x, y, y2, z) = (random_hom(&mut rng, basis), random_hom(&mut rng, basis), random_hom(&mut rng, basis), random_hom(&mut rng, basis));
        let (Some(d), Some(d2)) = (random_system(&mut rng, basis, &x, &y, &z)?, random_system(&mut rng, basis, &x, &y2, &z)?) else {
            add.skipped += 1;
            continue;
        };
        add.cases += 1;
        add.passed += additivity_check(&d, &d2)?.pass as usize;
    }
    let mut sc = SuiteReport { name: "scalar in the middle entry".into(), cases: 0, passed: 0, skipped: 0 };
    draws = 0;
    while sc.cases < cases && draws < max_draws {
        draws += 1;
        let (x, y, z) = (random_hom(&mut rng, basis), random_hom(&mut rng, basis), random_hom(&mut rng, basis));
        let Some(d) = random_system(&mut rng, basis, &x, &y, &z)? else {
            sc.skipped += 1;
            continue;
        };
        sc.cases += 1;
        sc.passed += scalar_check(&d, rng.gen_range(0..p) as i64)?.pass as usize;
    }
    Ok([add, sc])
}
