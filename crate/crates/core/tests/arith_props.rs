use proptest::prelude::*;

use unipotent::arith::{BaseElem, BaseField};
use unipotent::classes::artin_schreier::{as_reduce, as_reduce_with_witness, wp};
use unipotent::classes::kummer::valuation_vector;

fn elem(field: &BaseField, num: &[i64], den: &[i64]) -> BaseElem {
    let k = field.coeff();
    // constants only when there is no variable
    let keep = if field.is_function_field() { usize::MAX } else { 1 };
    let poly = |c: &[i64]| k.pnorm(c.iter().take(keep).map(|&x| k.from_i64(x)).collect());
    let d = poly(den);
    let d = if d.is_zero() { k.pone() } else { d };
    field.frac(poly(num), d).unwrap()
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 0..=max_len)
}

fn fields() -> Vec<BaseField> {
    vec![BaseField::Rationals, BaseField::fq_t(3, 1).unwrap(), BaseField::fq_t(5, 2).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent(n in coeffs(4), d in coeffs(3)) {
        for f in fields() {
            let x = elem(&f, &n, &d);
            prop_assert!(f.contains(&x));
            prop_assert_eq!(f.frac(x.num.clone(), x.den.clone()).unwrap(), x);
        }
    }

    #[test]
    fn distributive(a in (coeffs(3), coeffs(2)), b in (coeffs(3), coeffs(2)), c in (coeffs(3), coeffs(2))) {
        for f in fields() {
            let (x, y, z) = (elem(&f, &a.0, &a.1), elem(&f, &b.0, &b.1), elem(&f, &c.0, &c.1));
            prop_assert_eq!(f.mul(&f.add(&x, &y), &z), f.add(&f.mul(&x, &z), &f.mul(&y, &z)));
        }
    }

    #[test]
    fn valuation_vector_is_a_homomorphism(a in (coeffs(3), coeffs(3)), b in (coeffs(3), coeffs(3)), p in prop::sample::select(vec![2u32, 3])) {
        let q = BaseField::Rationals;
        let f5 = BaseField::fq_t(5, 1).unwrap();
        for f in [q, f5] {
            let (x, y) = (elem(&f, &a.0, &a.1), elem(&f, &b.0, &b.1));
            prop_assume!(!f.is_zero(&x) && !f.is_zero(&y));
            let vx = valuation_vector(&f, &x, p).unwrap();
            let vy = valuation_vector(&f, &y, p).unwrap();
            prop_assert_eq!(valuation_vector(&f, &f.mul(&x, &y), p).unwrap(), vx.add(&vy, p));
        }
    }

    #[test]
    fn as_reduce_is_sound_and_stable(a in (coeffs(4), coeffs(3)), h in (coeffs(5), coeffs(2)), p in prop::sample::select(vec![2u32, 3])) {
        let f = BaseField::fq_t(p, 1).unwrap();
        let x = elem(&f, &a.0, &a.1);
        let (r, g) = as_reduce_with_witness(&f, &x).unwrap();
        prop_assert_eq!(f.sub(&x, &r), wp(&f, &g));
        let shifted = f.add(&x, &wp(&f, &elem(&f, &h.0, &h.1)));
        prop_assert_eq!(as_reduce(&f, &shifted).unwrap(), r);
    }
}
