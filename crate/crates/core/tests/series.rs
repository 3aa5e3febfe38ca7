use grilab_core::rings::{Automorphism, QuadField, QuadFieldElem, Twistable};
use grilab_core::series::{tower_shift, OuterRing, SeriesRing, TowerRing, TruncSeries};
use grilab_core::{QuatAlgebra, Quaternion, Rational, RingContext, RingElement};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    [rational(), rational(), rational(), rational()]
        .prop_map(|[w, x, y, z]| QuatAlgebra::hamilton().elem(w, x, y, z))
}

/// Coefficients at degrees `lo..lo+len` and a precision past the last one.
fn quat_terms() -> impl Strategy<Value = (i64, Vec<Quaternion>, i64)> {
    (
        -2i64..=1,
        prop::collection::vec(quaternion(), 1..5),
        0i64..4,
    )
        .prop_map(|(lo, cs, extra)| {
            let prec = lo + cs.len() as i64 + extra;
            (lo, cs, prec)
        })
}

fn quat_series(
    s: &SeriesRing<Quaternion>,
    (lo, cs, prec): &(i64, Vec<Quaternion>, i64),
) -> TruncSeries<Quaternion> {
    s.series(
        cs.iter()
            .cloned()
            .enumerate()
            .map(|(k, c)| (lo + k as i64, c)),
        *prec,
    )
    .unwrap()
}

/// Convolution of twisted coefficient lists: `(a t^i)(b t^j) = a σ^i(b) t^{i+j}`.
fn twisted_product<C: Twistable>(
    x: &TruncSeries<C>,
    y: &TruncSeries<C>,
    twist: Automorphism,
) -> Vec<(i64, C)> {
    let mut out: Vec<(i64, C)> = Vec::new();
    for (i, a) in x.terms() {
        for (j, b) in y.terms() {
            let c = a.mul(&b.apply_automorphism(twist.pow(i)).unwrap()).unwrap();
            match out.iter_mut().find(|(d, _)| *d == i + j) {
                Some((_, acc)) => *acc = acc.add(&c).unwrap(),
                None => out.push((i + j, c)),
            }
        }
    }
    out
}

fn quad() -> QuadField {
    QuadField::new((-1).into()).unwrap()
}

fn quad_elem() -> impl Strategy<Value = QuadFieldElem> {
    (rational(), rational()).prop_map(|(u, v)| quad().elem(u, v))
}

fn quad_terms() -> impl Strategy<Value = (i64, Vec<QuadFieldElem>, i64)> {
    (-2i64..=1, prop::collection::vec(quad_elem(), 1..5), 0i64..4)
        .prop_map(|(lo, cs, extra)| (lo, cs.clone(), lo + cs.len() as i64 + extra))
}

proptest! {
    #[test]
    fn product_precision_is_sound(x in quat_terms(), y in quat_terms()) {
        let s = SeriesRing::untwisted(QuatAlgebra::hamilton());
        let (a, b) = (quat_series(&s, &x), quat_series(&s, &y));
        let p = a.mul(&b).unwrap();
        prop_assume!(!a.is_zero() && !b.is_zero());
        // precision min(p_a + v_b, p_b + v_a) with v the valuation
        let expect_prec = (x.2 + b.min_deg()).min(y.2 + a.min_deg());
        prop_assert_eq!(p.prec(), expect_prec);
        let exact = s.series(twisted_product(&a, &b, Automorphism::Identity), p.prec()).unwrap();
        prop_assert!(p.eq_to_prec(&exact, p.prec()).unwrap());
    }

    #[test]
    fn series_ring_axioms(x in quat_terms(), y in quat_terms(), z in quat_terms()) {
        let s = SeriesRing::untwisted(QuatAlgebra::hamilton());
        let (a, b, c) = (quat_series(&s, &x), quat_series(&s, &y), quat_series(&s, &z));
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        let p = left.prec().min(right.prec());
        prop_assert!(left.eq_to_prec(&right, p).unwrap());
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        let p = l.prec().min(r.prec());
        prop_assert!(l.eq_to_prec(&r, p).unwrap());
    }

    #[test]
    fn inverse_contract(x in quat_terms()) {
        let s = SeriesRing::untwisted(QuatAlgebra::hamilton());
        let a = quat_series(&s, &x);
        prop_assume!(!a.is_zero());
        let v = a.min_deg();
        if a.coeff(v).unwrap().is_zero() {
            return Ok(());
        }
        let inv = a.inv().unwrap();
        for prod in [a.mul(&inv).unwrap(), inv.mul(&a).unwrap()] {
            // a unit leading coefficient keeps relative precision p - v
            prop_assert_eq!(prod.prec(), x.2 - v);
            prop_assert!(prod.eq_to_prec(&s.one(), prod.prec()).unwrap());
        }
    }

    #[test]
    fn conjugation_twist_is_coherent(x in quad_terms(), y in quad_terms(), c in quad_elem()) {
        let f = quad();
        let s = SeriesRing::new(f.clone(), Automorphism::QuadConjugation).unwrap();
        let build = |(lo, cs, prec): &(i64, Vec<QuadFieldElem>, i64)| {
            s.series(cs.iter().cloned().enumerate().map(|(k, c)| (lo + k as i64, c)), *prec).unwrap()
        };
        let (a, b) = (build(&x), build(&y));
        let p = a.mul(&b).unwrap();
        let exact = s.series(twisted_product(&a, &b, Automorphism::QuadConjugation), p.prec()).unwrap();
        prop_assert!(p.eq_to_prec(&exact, p.prec()).unwrap());
        let t = s.var();
        let cs = s.constant(c.clone()).unwrap();
        let lhs = t.mul(&cs).unwrap();
        let rhs = s.constant(c.conjugate()).unwrap().mul(&t).unwrap();
        prop_assert!(lhs.eq_to_prec(&rhs, lhs.prec().min(rhs.prec())).unwrap());
    }

    #[test]
    fn tower_shift_is_a_homomorphism(
        q1 in quaternion(), q2 in quaternion(), i in -1i64..=0, j in -1i64..=0, k in 0i64..=1,
    ) {
        let tw = TowerRing::new(QuatAlgebra::hamilton(), 2);
        let x = tw.quat(q1).unwrap().add(&tw.var(i).unwrap()).unwrap();
        let y = tw.quat(q2).unwrap().mul(&tw.var(j).unwrap()).unwrap().add(&tw.one()).unwrap();
        let lhs = tower_shift(&x.mul(&y).unwrap(), k).unwrap();
        let rhs = tower_shift(&x, k).unwrap().mul(&tower_shift(&y, k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = tower_shift(&tower_shift(&x, k).unwrap(), -k).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn outer_ring_is_associative(q1 in quaternion(), q2 in quaternion(), q3 in quaternion()) {
        let o = OuterRing::new(QuatAlgebra::hamilton(), 2, 4);
        let t = o.t();
        let x = o.quat(q1).unwrap().add(&o.tower_var(-1).unwrap()).unwrap();
        let y = o.quat(q2).unwrap().mul(&t).unwrap().add(&o.tower_var(0).unwrap()).unwrap();
        let z = o.tower_var(-2).unwrap().add(&o.quat(q3).unwrap()).unwrap();
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        let p = l.prec().min(r.prec());
        prop_assert!(l.eq_to_prec(&r, p).unwrap());
    }
}

#[test]
fn outer_variable_shifts_tower() {
    let o = OuterRing::new(QuatAlgebra::hamilton(), 2, 6);
    let t = o.t();
    let lhs = t.mul(&o.tower_var(0).unwrap()).unwrap();
    let rhs = o.tower_var(1).unwrap().mul(&t).unwrap();
    assert!(lhs.eq_to_prec(&rhs, 6).unwrap());
    let wrong = o.tower_var(0).unwrap().mul(&t).unwrap();
    assert!(!lhs.eq_to_prec(&wrong, 6).unwrap());
}

#[test]
fn overprecise_equality_is_refused() {
    let s = SeriesRing::untwisted(QuatAlgebra::hamilton());
    let a = s.series([(0, QuatAlgebra::hamilton().one())], 3).unwrap();
    assert!(a.eq_to_prec(&a, 4).is_err());
    assert!(a.coeff(3).is_err());
}

#[test]
fn rational_series_center_embedding() {
    let s = SeriesRing::untwisted(QuatAlgebra::hamilton()).with_precision(8);
    let q = s.from_rational(&Rational::new(3, 4).unwrap());
    let x = s
        .constant(QuatAlgebra::hamilton().i())
        .unwrap()
        .add(&s.var())
        .unwrap();
    assert_eq!(q.mul(&x).unwrap(), x.mul(&q).unwrap());
}
