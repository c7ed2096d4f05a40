use super::*;
use crate::arith::BaseField;
use crate::error::Error;
use crate::tower::GenKind;

fn q_sqrt2() -> Tower {
    Tower::new(BaseField::Rationals, 2).unwrap().adjoin_expr("s", GenKind::Kummer, "2").unwrap()
}

fn flip(t: &Tower) -> Automorphism {
    Automorphism::new(t, vec![t.neg(&t.gen(0))], 0).unwrap()
}

#[test]
fn order_and_composition() {
    let t = q_sqrt2();
    let id = Automorphism::identity(&t);
    let f = flip(&t);
    assert_eq!(aut_compose(&t, &f, &id).unwrap(), f);
    assert_eq!(aut_compose(&t, &f, &f).unwrap(), id);
    assert_eq!(aut_order(&t, &id, 4).unwrap(), 1);
    assert_eq!(aut_order(&t, &f, 4).unwrap(), 2);
    assert_eq!(aut_order(&t, &f, 1).unwrap_err(), Error::OverCap(1));
    assert_eq!(commutator(&t, &f, &f, 4).unwrap(), id);
}

#[test]
fn bad_images_rejected() {
    let t = q_sqrt2();
    let e = Automorphism::new(&t, vec![t.from_i64(1)], 0).unwrap_err();
    assert_eq!(e, Error::RelationNotPreserved("s".into()));
    assert!(matches!(Automorphism::new(&t, vec![], 0), Err(Error::MissingImage(_))));
}

#[test]
fn small_tables() {
    let t = q_sqrt2();
    let id = Automorphism::identity(&t);
    assert_eq!(enumerate_group(&t, &[id], 10).unwrap().len(), 1);
    let g = enumerate_group(&t, &[flip(&t)], 10).unwrap();
    assert_eq!(g.len(), 2);
    assert_eq!(g.mul(1, 1), 0);
    assert_eq!(enumerate_group(&t, &[flip(&t)], 1).unwrap_err(), Error::CapExceeded(1));
}

#[test]
fn frobenius_base_map() {
    // over F_4(t), x -> x^2 on constants fixes a = t and sends sqrt-free data along
    let base = BaseField::fq_t(2, 2).unwrap();
    let t = Tower::new(base, 2).unwrap().adjoin_expr("th", GenKind::ArtinSchreier, "1/t").unwrap();
    let f = Automorphism::new(&t, vec![t.gen(0)], 1).unwrap();
    assert_eq!(aut_order(&t, &f, 4).unwrap(), 2);
    let w = t.parse("w*th").unwrap();
    assert_eq!(f.apply(&t, &w), t.parse("(w+1)*th").unwrap());
}

#[test]
fn trivial_presentation_passes() {
    let t = q_sqrt2();
    let id = Automorphism::identity(&t);
    assert!(verify_presentation_u4(&t, [&id, &id, &id], 2).all_pass());
}

#[test]
fn matrices() {
    let id = UnipotentMatrix::identity(4, 2);
    assert_eq!(unipotent_proj(&id, 1, 2).unwrap(), 0);
    assert_eq!(unipotent_proj(&id, 2, 2).unwrap_err(), Error::BadIndex(2, 2));
    assert_eq!(unipotent_proj(&id, 1, 5).unwrap_err(), Error::BadIndex(1, 5));
    let u4 = enumerate_unipotent(4, 2);
    assert_eq!(u4.len(), 64);
    assert!(u4.iter().all(|m| 4 % m.order() == 0));
    let center = u4.iter().filter(|m| u4.iter().all(|x| m.mul(x) == x.mul(m))).count();
    assert_eq!(center, 2);
}
