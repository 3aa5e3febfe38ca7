use grilab_core::rings::{Automorphism, QuadField, RationalField, Twistable};
use grilab_core::{
    AlgebraError, QuatAlgebra, QuatParams, Quaternion, Rational, RingContext, RingElement,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn quaternion(h: QuatAlgebra) -> impl Strategy<Value = Quaternion> {
    [rational(), rational(), rational(), rational()]
        .prop_map(move |[w, x, y, z]| h.elem(w, x, y, z))
}

fn params() -> impl Strategy<Value = QuatParams> {
    (
        prop_oneof![Just(-1i64), Just(-2), Just(-3), Just(2), Just(3)],
        prop_oneof![Just(-1i64), Just(-5), Just(7)],
    )
        .prop_map(|(a, b)| QuatParams::new(a.into(), b.into()).unwrap())
}

/// Coordinatewise product in `H(a,b)` from `i² = a`, `j² = b`, `k = ij`.
fn quat_mul_oracle(p: &Quaternion, q: &Quaternion) -> [Rational; 4] {
    let a = &p.params().a;
    let b = &p.params().b;
    let ab = a * b;
    let [w1, x1, y1, z1] = p.coords();
    let [w2, x2, y2, z2] = q.coords();
    [
        &(&(w1 * w2) + &(a * &(x1 * x2))) + &(&(b * &(y1 * y2)) - &(&ab * &(z1 * z2))),
        &(&(w1 * x2) + &(x1 * w2)) + &(&(b * &(z1 * y2)) - &(b * &(y1 * z2))),
        &(&(w1 * y2) + &(y1 * w2)) + &(&(a * &(x1 * z2)) - &(a * &(z1 * x2))),
        &(&(w1 * z2) + &(z1 * w2)) + &(&(x1 * y2) - &(y1 * x2)),
    ]
}

proptest! {
    #[test]
    fn rational_field_axioms(x in rational(), y in rational(), z in rational()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x - &x, Rational::zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn rational_display_round_trip(x in rational()) {
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn quad_mul_matches_polynomials_mod_x2_minus_d(
        d in prop_oneof![Just(-1i64), Just(2), Just(-3), Just(5)],
        u1 in rational(), v1 in rational(), u2 in rational(), v2 in rational(),
    ) {
        let f = QuadField::new(d.into()).unwrap();
        let p = f.elem(u1.clone(), v1.clone()).mul(&f.elem(u2.clone(), v2.clone())).unwrap();
        let dd = Rational::from(d);
        prop_assert_eq!(&p.u, &(&(&u1 * &u2) + &(&dd * &(&v1 * &v2))));
        prop_assert_eq!(&p.v, &(&(&u1 * &v2) + &(&u2 * &v1)));
    }

    #[test]
    fn quad_conjugation_is_automorphism(u1 in rational(), v1 in rational(), u2 in rational(), v2 in rational()) {
        let f = QuadField::new((-1).into()).unwrap();
        let (x, y) = (f.elem(u1, v1), f.elem(u2, v2));
        let s = Automorphism::QuadConjugation;
        let lhs = x.mul(&y).unwrap().apply_automorphism(s).unwrap();
        let rhs = x.apply_automorphism(s).unwrap().mul(&y.apply_automorphism(s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.mul(&x.conjugate()).unwrap(), f.from_rational(&x.norm()));
    }

    #[test]
    fn quaternion_mul_matches_oracle((p, q) in params().prop_flat_map(|pa| {
        let h = QuatAlgebra::new(pa);
        (quaternion(h.clone()), quaternion(h))
    })) {
        let got = p.mul(&q).unwrap();
        let want = quat_mul_oracle(&p, &q);
        prop_assert_eq!(got.coords(), [&want[0], &want[1], &want[2], &want[3]]);
    }

    #[test]
    fn quaternion_associative_and_cayley_hamilton((p, q, r) in params().prop_flat_map(|pa| {
        let h = QuatAlgebra::new(pa);
        (quaternion(h.clone()), quaternion(h.clone()), quaternion(h))
    })) {
        let h = p.algebra().clone();
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        let ch = p.mul(&p).unwrap().sub(&p.scale(&p.trd())).unwrap().add(&h.from_rational(&p.nrd())).unwrap();
        prop_assert!(ch.is_zero());
        prop_assert!(p.min_poly().eval(&p).unwrap().is_zero());
        prop_assert_eq!(p.mul(&p.conjugate()).unwrap(), h.from_rational(&p.nrd()));
    }

    #[test]
    fn nrd_is_multiplicative((p, q) in params().prop_flat_map(|pa| {
        let h = QuatAlgebra::new(pa);
        (quaternion(h.clone()), quaternion(h))
    })) {
        prop_assert_eq!(p.mul(&q).unwrap().nrd(), &p.nrd() * &q.nrd());
    }

    #[test]
    fn hamilton_is_a_division_ring(p in quaternion(QuatAlgebra::hamilton()), q in quaternion(QuatAlgebra::hamilton())) {
        let h = QuatAlgebra::hamilton();
        if p.is_zero() {
            prop_assert!(matches!(p.inv(), Err(AlgebraError::ZeroInverse)));
        } else {
            prop_assert!(p.nrd() > Rational::zero());
            prop_assert_eq!(p.mul(&p.inv().unwrap()).unwrap(), h.one());
            prop_assert_eq!(p.inv().unwrap().mul(&p).unwrap(), h.one());
            if !q.is_zero() {
                let c = p.commutator(&q).unwrap();
                prop_assert_eq!(c.nrd(), Rational::one());
            }
        }
    }

    #[test]
    fn central_order_finds_least_central_power(p in quaternion(QuatAlgebra::hamilton())) {
        prop_assume!(!p.is_zero());
        let got = p.central_order(6).unwrap();
        let mut power = p.clone();
        let mut want = None;
        for n in 1..=6u32 {
            if n > 1 {
                power = power.mul(&p).unwrap();
            }
            if power.is_central() {
                want = Some(n);
                break;
            }
        }
        prop_assert_eq!(got, want);
    }
}

#[test]
fn split_algebra_reports_non_invertible() {
    // H(1,1) ≅ M_2(Q): 1+i has reduced norm 1 - 1 = 0
    let h = QuatAlgebra::new(QuatParams::new(1.into(), 1.into()).unwrap());
    let z = h.int(1, 1, 0, 0);
    assert!(z.nrd().is_zero());
    let err = z.inv().unwrap_err();
    assert!(err.is_non_invertible(), "{err}");
}

#[test]
fn mismatched_rings_are_rejected() {
    let h = QuatAlgebra::hamilton();
    let g = QuatAlgebra::new(QuatParams::new((-1).into(), (-3).into()).unwrap());
    assert!(matches!(
        h.i().mul(&g.i()),
        Err(AlgebraError::RingMismatch { .. })
    ));
    let f = QuadField::new((-1).into()).unwrap();
    let e = QuadField::new(2.into()).unwrap();
    assert!(matches!(
        f.one().add(&e.one()),
        Err(AlgebraError::RingMismatch { .. })
    ));
    assert_eq!(
        RationalField.one().add(&RationalField.one()).unwrap(),
        Rational::from(2)
    );
}

#[test]
fn automorphism_group_laws() {
    use Automorphism::*;
    assert_eq!(TowerShift(2).compose(TowerShift(-2)), Some(Identity));
    assert_eq!(QuadConjugation.pow(2), Identity);
    assert_eq!(TowerShift(3).pow(-2), TowerShift(-6));
    assert_eq!(QuadConjugation.order(), Some(2));
    assert_eq!(TowerShift(1).order(), None);
    assert_eq!(QuadConjugation.compose(TowerShift(1)), None);
}
