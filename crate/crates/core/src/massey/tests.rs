use super::*;
use crate::galois::superdiagonal;

fn z2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2))
}

fn u4(p: u32) -> (Arc<FiniteGroup>, Vec<UnipotentMatrix>) {
    let (g, elems) = FiniteGroup::generated_by(&superdiagonal(4, p));
    (Arc::new(g), elems)
}

#[test]
fn cup_on_z2() {
    let g = z2();
    let x = Cochain1::new(&g, 2, vec![0, 1]).unwrap();
    let c = cup11(&x, &x).unwrap();
    assert_eq!(c.values, vec![0, 0, 0, 1]);
    assert!(cup11(&Cochain1::zero(&g, 2), &x).unwrap().is_zero());
}

#[test]
fn cup_group_mismatch() {
    let x = Cochain1::zero(&z2(), 2);
    let y = Cochain1::zero(&Arc::new(FiniteGroup::cyclic(3)), 2);
    assert_eq!(cup11(&x, &y), Err(Error::GroupMismatch));
}

#[test]
fn z4_class_is_not_a_coboundary() {
    let g = z2();
    let c = Cochain2 { group: g.clone(), p: 2, values: vec![0, 0, 0, 1] };
    assert!(c.is_cocycle());
    assert_eq!(is_coboundary(&c).unwrap(), None);
    // none of the four maps G -> F_2 has this coboundary
    for bits in 0..4u32 {
        let a = Cochain1::new(&g, 2, vec![bits & 1, bits >> 1]).unwrap();
        assert_ne!(coboundary1(&a), c);
    }
}

#[test]
fn zero_cocycle_has_zero_witness() {
    let (g, _) = u4(2);
    let w = is_coboundary(&Cochain2::zero(&g, 2)).unwrap().unwrap();
    assert!(w.is_zero());
}

#[test]
fn non_cocycle_rejected() {
    let g = z2();
    let c = Cochain2 { group: g, p: 2, values: vec![0, 1, 0, 0] };
    assert_eq!(is_coboundary(&c), Err(Error::NotACocycle));
}

#[test]
fn inclusion_rep_witness() {
    let (g, elems) = u4(2);
    assert_eq!(g.len(), 64);
    let rho = UnipotentRep::new(&g, elems).unwrap();
    let (d, w) = vanishing_witness(&rho).unwrap();
    assert_eq!(massey_value(&d).unwrap(), coboundary1(&w));
    let ex = extract_chars(&rho).unwrap();
    assert!(ex.independent);
    let (neg, w2) = negate_triple(&d).unwrap();
    assert_eq!(neg.x, d.x.neg());
    assert_eq!(massey_value(&neg).unwrap(), coboundary1(&w2));
}

#[test]
fn trivial_rep() {
    let (g, _) = u4(2);
    let rho = UnipotentRep::trivial(&g, 2);
    let (d, w) = vanishing_witness(&rho).unwrap();
    assert!(d.x.is_zero() && d.a12.is_zero() && w.is_zero());
    assert_eq!(extract_chars(&rho).unwrap_err(), Error::NotSurjective(1));
}

#[test]
fn heisenberg_image_not_surjective() {
    let (g, _) = u4(2);
    let (_, elems) = u4(2);
    // keep only the upper-left 3x3 block: rows 3, 4 fixed
    let images: Vec<UnipotentMatrix> = elems
        .iter()
        .map(|m| {
            let mut x = UnipotentMatrix::identity(4, 2);
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                x.entries[(i - 1) * 4 + j - 1] = m.get(i, j);
            }
            x
        })
        .collect();
    let rho = UnipotentRep::new(&g, images).unwrap();
    assert_eq!(extract_chars(&rho).unwrap_err(), Error::NotSurjective(8));
}

#[test]
fn bad_rep_rejected() {
    let (g, elems) = u4(2);
    let mut images = elems;
    images.swap(1, 2);
    assert!(matches!(UnipotentRep::new(&g, images), Err(Error::NotWellDefined(_))));
}

#[test]
fn perturbing_a23_shifts_value() {
    let (g, elems) = u4(2);
    let rho = UnipotentRep::new(&g, elems).unwrap();
    let (d, _) = vanishing_witness(&rho).unwrap();
    let h = rho.entry(3, 4);
    let d2 = DefiningSystem::new(d.x.clone(), d.y.clone(), d.z.clone(), d.a12.clone(), d.a23.add(&h).unwrap()).unwrap();
    let shift = massey_value(&d2).unwrap().sub(&massey_value(&d).unwrap()).unwrap();
    assert_eq!(shift, cup11(&d.x, &h).unwrap());
}

#[test]
fn zero_system() {
    let (g, _) = u4(2);
    let z = Cochain1::zero(&g, 2);
    let d = DefiningSystem::new(z.clone(), z.clone(), z.clone(), z.clone(), z).unwrap();
    assert!(massey_value(&d).unwrap().is_zero());
    assert!(scalar_check(&d, 0).unwrap().pass);
}

#[test]
fn invalid_system_rejected() {
    let (g, elems) = u4(2);
    let rho = UnipotentRep::new(&g, elems).unwrap();
    let (x, y) = (rho.entry(1, 2), rho.entry(2, 3));
    let z = Cochain1::zero(&g, 2);
    assert!(matches!(
        DefiningSystem::new(x, y, z.clone(), z.clone(), z),
        Err(Error::InvalidDefiningSystem(_))
    ));
}

#[test]
fn heisenberg_p3_scalar_two() {
    let (g, elems) = FiniteGroup::generated_by(&superdiagonal(3, 3));
    let g = Arc::new(g);
    assert_eq!(g.len(), 27);
    let chi = |i: usize, j: usize| Cochain1::new(&g, 3, elems.iter().map(|m| m.get(i, j)).collect()).unwrap();
    // <chi12, chi23, chi12>: x u y = d(-rho13), y u z = chi23 u chi12
    let d = DefiningSystem::solve(chi(1, 2), chi(2, 3), chi(2, 3).scale(0));
    let d = d.unwrap().unwrap();
    assert!(scalar_check(&d, 2).unwrap().pass);
    assert!(additivity_check(&d, &d).unwrap().pass);
}

#[test]
fn lemma_suites_on_u4_f2() {
    let (g, elems) = u4(2);
    let rho = UnipotentRep::new(&g, elems).unwrap();
    let basis = [rho.entry(1, 2), rho.entry(2, 3), rho.entry(3, 4)];
    let [add, sc] = lemma_suites(&basis, 50, 7).unwrap();
    assert_eq!((add.cases, sc.cases), (50, 50));
    assert!(add.all_pass() && sc.all_pass());
}
