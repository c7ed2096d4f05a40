use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use unipotent::galois::{superdiagonal, UnipotentMatrix};
use unipotent::massey::{coboundary1, cup11, Cochain1, Cochain2, FiniteGroup};

struct Group {
    g: Arc<FiniteGroup>,
    p: u32,
    elems: Vec<UnipotentMatrix>,
}

impl Group {
    /// The matrix entry `(i, j)` as a cochain; a homomorphism on the super-diagonal.
    fn entry(&self, i: usize, j: usize) -> Cochain1 {
        Cochain1::new(&self.g, self.p, self.elems.iter().map(|m| m.get(i, j)).collect()).unwrap()
    }
}

/// `U_4(F_2)` and the Heisenberg group of order 27.
fn groups() -> &'static [Group; 2] {
    static G: OnceLock<[Group; 2]> = OnceLock::new();
    G.get_or_init(|| {
        [(4, 2), (3, 3)].map(|(n, p)| {
            let (g, elems) = FiniteGroup::generated_by(&superdiagonal(n, p));
            Group { g: Arc::new(g), p, elems }
        })
    })
}

/// `(dc)(g, h, k) = c(h, k) - c(gh, k) + c(g, hk) - c(g, h)`.
fn coboundary2(c: &Cochain2, g: usize, h: usize, k: usize) -> u32 {
    let grp = &c.group;
    let p = c.p;
    (c.get(h, k) + p - c.get(grp.mul(g, h), k) + c.get(g, grp.mul(h, k)) + p - c.get(g, h)) % p
}

fn cochain(rho: &Group, seed: &[u32]) -> Cochain1 {
    let n = rho.g.len();
    Cochain1::new(&rho.g, rho.p, (0..n).map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 7) % rho.p).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn coboundary_squares_to_zero(seed in prop::collection::vec(any::<u32>(), 1..80), which in 0usize..2) {
        let rho = &groups()[which];
        let a = cochain(rho, &seed);
        let da = coboundary1(&a);
        prop_assert!(da.is_cocycle());
        let n = rho.g.len();
        for g in 0..n {
            for h in 0..n {
                for k in (0..n).step_by(5) {
                    prop_assert_eq!(coboundary2(&da, g, h, k), 0);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// With `x` a homomorphism, `d(x u a) = -x u da`, over every triple.
    #[test]
    fn leibniz_for_homomorphisms(seed in prop::collection::vec(any::<u32>(), 1..80), entry in 0usize..3) {
        let rho = &groups()[0];
        let x = [rho.entry(1, 2), rho.entry(2, 3), rho.entry(3, 4)][entry].clone();
        let a = cochain(rho, &seed);
        let xa = cup11(&x, &a).unwrap();
        let da = coboundary1(&a);
        let n = rho.g.len();
        let p = rho.p;
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let rhs = (p - x.values[g] * da.get(h, k) % p) % p;
                    prop_assert_eq!(coboundary2(&xa, g, h, k), rhs);
                }
            }
        }
    }
}
