use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::element::rat;
use super::*;

fn mono(c: i64, p: i64, q: u32) -> LogElement {
    LogElement::monomial(rat(c), p, q).unwrap()
}

fn footnote() -> DiffOperator {
    [(1, 6, 7), (18, 5, 6), (98, 4, 5), (184, 3, 4), (100, 2, 3), (8, 1, 2)]
        .into_iter()
        .map(|(c, p, j)| DiffOperator::term(rat(c), p, j))
        .fold(DiffOperator::default(), |a, t| a.add(&t))
}

#[test]
fn monomial_identities() {
    let zl = mono(1, 1, 1);
    assert_eq!(zl.mul(&zl).unwrap(), mono(1, 2, 2));
    assert_eq!(zl.derivative().unwrap(), mono(1, 0, 1).add(&mono(1, 0, 0)));
    for (m, k) in [(0i64, 0u32), (3, 2), (-2, 5), (4, 0)] {
        let f = mono(1, m, k);
        let mut want = mono(m, m, k);
        if k > 0 {
            want = want.add(&mono(k as i64, m, k - 1));
        }
        assert_eq!(f.euler().unwrap(), want);
    }
}

#[test]
fn orders_add_under_products() {
    let a = mono(2, 1, 3).add(&mono(1, 4, 0));
    let b = mono(-1, -2, 1).add(&mono(5, 0, 2));
    let (ha, la) = a.order().unwrap();
    let (hb, lb) = b.order().unwrap();
    assert_eq!(a.mul(&b).unwrap().order(), Some((ha + hb, la + lb)));
}

#[test]
fn footnote_expansion_is_exact() {
    let op = expand_operator(2).unwrap();
    assert_eq!(op, footnote());
    assert_eq!(op.order(), 7);
    assert_eq!(op.lowest_derivative(), 2);
    assert_eq!(op.to_string(), "z^6*D^7 + 18*z^5*D^6 + 98*z^4*D^5 + 184*z^3*D^4 + 100*z^2*D^3 + 8*z*D^2");
}

#[test]
fn operator_shape_for_larger_n() {
    for n in 2..=4u32 {
        let nb = n - 1;
        let op = expand_operator(n).unwrap();
        assert_eq!(op.order(), 3 * n * n - 2 * n - 1);
        assert_eq!(op.lowest_derivative(), nb + 1);
        for (j, p, _) in op.terms() {
            assert_eq!(p, j as i64 - nb as i64);
        }
    }
    assert!(matches!(expand_operator(6), Err(crate::Error::DegreeOverflow(_))));
}

#[test]
fn leading_constants() {
    assert_eq!(leading_constant(1, 3).unwrap().constant, rat(6));
    assert_eq!(leading_constant(0, 0).unwrap().constant, rat(1));
    let lc = leading_constant(2, 6).unwrap();
    assert_eq!(lc.constant, rat(92160));
    assert!(lc.residual_vanishes_at_zero());
    let r = lc.residual.eval(1e-8);
    assert!(r.abs() < 1e-2 * 92160.0, "residual {r}");
}

#[test]
fn haus_identity_table() {
    for m in 0..=3 {
        for k in 0..=9 {
            let lc = leading_constant(m, k).unwrap();
            assert_eq!(lc.constant, BigRational::from_integer(haus_constant(m, k)), "m={m} k={k}");
            assert!(lc.residual_vanishes_at_zero());
        }
    }
    assert_eq!(haus_constant(2, 6), BigInt::from(92160));
}

#[test]
fn expanded_and_stepwise_application_agree() {
    let f = mono(3, 4, 2).add(&mono(-1, 7, 0)).add(&mono(2, 3, 5));
    for (m, k) in [(1, 1), (2, 3), (1, 4)] {
        let expanded = operator_mk(m, k).apply(&f).unwrap();
        let stepwise = apply_mk(m, k, &f).unwrap();
        assert_eq!(expanded, stepwise);
        for z in [0.1, 0.4, 1.0] {
            let (a, b) = (expanded.eval(z), stepwise.eval(z));
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
        }
    }
    let op = expand_operator(2).unwrap();
    let mut step = f.clone();
    for _ in 0..3 {
        step = step.euler().unwrap();
    }
    step = step.derivative().unwrap();
    for _ in 0..3 {
        step = step.euler().unwrap();
    }
    assert_eq!(op.apply(&f).unwrap(), step);
}

#[test]
fn caps_are_enforced() {
    assert!(LogElement::monomial(rat(1), 65, 0).is_err());
    assert!(LogElement::monomial(rat(1), 0, 33).is_err());
    let big = mono(1, 40, 20);
    assert!(matches!(big.mul(&big), Err(crate::Error::DegreeOverflow(_))));
}

#[test]
fn canonical_text() {
    let e = mono(1, 1, 2).add(&LogElement::monomial(BigRational::new(BigInt::from(-3), BigInt::from(2)), -1, 0).unwrap()).add(&mono(4, 1, 0));
    assert_eq!(e.to_string(), "-3/2*z^-1 + z*log^2 + 4*z");
    assert_eq!(LogElement::zero().to_string(), "0");
    assert_eq!(mono(-5, 0, 0).to_string(), "-5");
    assert_eq!(DiffOperator::identity().to_string(), "1");
}

fn element() -> impl Strategy<Value = LogElement> {
    prop::collection::vec((-4i64..5, -3i64..6, 0u32..3), 0..5).prop_map(|ts| {
        LogElement::from_terms(ts.into_iter().map(|(c, p, q)| (p, q, rat(c)))).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_laws(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c)).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&LogElement::one()).unwrap(), a.clone());
    }

    #[test]
    fn leibniz(a in element(), b in element()) {
        let lhs = a.mul(&b).unwrap().derivative().unwrap();
        let rhs = a.derivative().unwrap().mul(&b).unwrap().add(&a.mul(&b.derivative().unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_matches_sequential_application(a in element(), j in 0u32..3, p in -1i64..3) {
        let t = DiffOperator::term(rat(1), p, j);
        let comp = DiffOperator::euler().compose(&t);
        let seq = DiffOperator::euler().apply(&t.apply(&a).unwrap()).unwrap();
        prop_assert_eq!(comp.apply(&a).unwrap(), seq);
    }
}
