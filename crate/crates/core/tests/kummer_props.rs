use std::sync::OnceLock;

use proptest::prelude::*;

use unipotent::arith::BaseField;
use unipotent::descent::{build_descent_context, descent_instance, h_lift, phi_apply, DescentContext};
use unipotent::galois::Automorphism;
use unipotent::kummer_u4::{hilbert90_solve, product_shift, KummerInstance};
use unipotent::tower::{TElem, Tower};

struct Fixture {
    q: KummerInstance,
    ctx: DescentContext,
    /// `E = F_25(t)(ra, rc)` with the lift of `sigma0`.
    f25: KummerInstance,
    tau: Automorphism,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let q = BaseField::Rationals;
        let ctx = build_descent_context(&BaseField::fq_t(5, 1).unwrap(), 3).unwrap();
        let f25 = descent_instance(&ctx, 25).unwrap();
        let tau = h_lift(&f25.e, &ctx).unwrap();
        Fixture { q: KummerInstance::new(&q, 2, q.from_i64(2), q.from_i64(5), "1+ra", "2+rc").unwrap(), ctx, f25, tau }
    })
}

fn build(t: &Tower, terms: &[(u32, i64, i64)]) -> TElem {
    let base = &t.base;
    terms.iter().fold(t.zero(), |acc, &(mono, c, s)| {
        let mut coef = base.from_i64(c);
        if base.is_function_field() && s != 0 {
            coef = base.mul(&coef, &base.add(&base.t().unwrap(), &base.from_i64(s)));
        }
        t.add(&acc, &t.monomial(mono % t.degree() as u32, coef))
    })
}

fn terms() -> impl Strategy<Value = Vec<(u32, i64, i64)>> {
    prop::collection::vec((0u32..9, -3i64..=3, -2i64..=2), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn hilbert90_recovers_a_solution(a in terms(), which in 0usize..3) {
        for inst in [&fixture().q, &fixture().f25] {
            let t = &inst.e;
            let u = build(t, &a);
            prop_assume!(!u.is_zero());
            let (sa, sc) = (inst.sigma_a(), inst.sigma_c());
            let s = [sa.clone(), sc.clone(), product_shift(t, &sa, &sc).unwrap()][which].clone();
            let b = t.div(&s.apply(t, &u), &u).unwrap();
            let e = hilbert90_solve(t, &s, &b, t.p as u64).unwrap();
            prop_assert!(!e.is_zero());
            prop_assert_eq!(s.apply(t, &e), t.mul(&b, &e));
        }
    }

    #[test]
    fn phi_is_multiplicative(a in terms(), b in terms()) {
        let f = fixture();
        let t = &f.f25.e;
        let (x, y) = (build(t, &a), build(t, &b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let phi = |z: &TElem| phi_apply(t, &f.tau, z, &f.ctx).unwrap();
        prop_assert_eq!(phi(&t.mul(&x, &y)), t.mul(&phi(&x), &phi(&y)));
    }

    #[test]
    fn phi_on_the_base_is_multiplicative(a in terms(), b in terms()) {
        let f = fixture();
        let t = &f.f25.e;
        let (x, y) = (build(t, &a[..1]), build(t, &b[..1]));
        let (x, y) = (t.norm_to_base(&x), t.norm_to_base(&y));
        let k = &f.ctx.f;
        prop_assume!(!k.is_zero(&x) && !k.is_zero(&y));
        let phi = |z: &unipotent::arith::BaseElem| f.ctx.phi_base(z).unwrap();
        prop_assert_eq!(phi(&k.mul(&x, &y)), k.mul(&phi(&x), &phi(&y)));
    }
}
