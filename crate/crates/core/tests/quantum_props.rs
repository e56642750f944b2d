use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use spectra::linalg::Ring;
use spectra::quantum_ring::{qadd, qdegree, qinverse, qmul, qpairing, qpow, qvaluation, QuantumClass};

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        Just(Ring::Rationals),
        Just(Ring::IntegersMod(7)),
        Just(Ring::IntegersMod(14)),
    ]
}

fn element(n: u32, ring: Ring, max_terms: usize) -> impl Strategy<Value = QuantumClass> {
    prop::collection::vec((0..=n, -2i64..=2, -9i64..=9, 1i64..=3), 0..=max_terms).prop_map(move |ts| {
        let terms = ts.into_iter().map(|(i, j, p, d)| {
            let d = if ring == Ring::Rationals { d } else { 1 };
            ((i, j), BigRational::new(p.into(), d.into()))
        });
        QuantumClass::from_terms(n, ring, terms).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (QuantumClass, QuantumClass, QuantumClass)> {
    (0u32..=5, ring()).prop_flat_map(|(n, r)| (element(n, r, 4), element(n, r, 4), element(n, r, 4)))
}

fn monomial(n: u32, ring: Ring) -> impl Strategy<Value = QuantumClass> {
    (0..=n, -3i64..=3, 1i64..=6)
        .prop_map(move |(i, j, c)| QuantumClass::monomial(n, ring, i, j, BigRational::from_integer(c.into())).unwrap())
        .prop_filter("nonzero", |q| !q.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(qmul(&a, &b).unwrap(), qmul(&b, &a).unwrap());
        prop_assert_eq!(qadd(&a, &b).unwrap(), qadd(&b, &a).unwrap());
        prop_assert_eq!(qmul(&qmul(&a, &b).unwrap(), &c).unwrap(), qmul(&a, &qmul(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(
            qmul(&a, &qadd(&b, &c).unwrap()).unwrap(),
            qadd(&qmul(&a, &b).unwrap(), &qmul(&a, &c).unwrap()).unwrap()
        );
        let one = QuantumClass::one(a.n(), a.ring());
        prop_assert_eq!(qmul(&one, &a).unwrap(), a.clone());
        prop_assert!(qadd(&a, &a.neg()).unwrap().is_zero());
        for ((i, _), c) in a.terms() {
            prop_assert!(i <= a.n());
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn pairing_is_bilinear((a, b, c) in triple()) {
        let lhs = qpairing(&a, &qadd(&b, &c).unwrap()).unwrap();
        let rhs = qpairing(&a, &b).unwrap() + qpairing(&a, &c).unwrap();
        let m = a.ring().modulus();
        match m {
            Some(m) => prop_assert!(((lhs - rhs).to_integer() % m).is_zero()),
            None => prop_assert_eq!(lhs, rhs),
        }
    }

    #[test]
    fn degrees_add((n, r) in (0u32..=5, ring()), seed in any::<(u32, i64, u32, i64)>()) {
        let (i1, j1, i2, j2) = (seed.0 % (n + 1), seed.1 % 4, seed.2 % (n + 1), seed.3 % 4);
        let a = QuantumClass::monomial(n, r, i1, j1, BigRational::one()).unwrap();
        let b = QuantumClass::monomial(n, r, i2, j2, BigRational::one()).unwrap();
        let expected_a = 2 * i1 as i64 + 2 * (n as i64 + 1) * j1;
        prop_assert_eq!(qdegree(&a), Some(expected_a));
        prop_assert_eq!(qdegree(&qmul(&a, &b).unwrap()), Some(qdegree(&a).unwrap() + qdegree(&b).unwrap()));
    }

    #[test]
    fn valuation_bound((a, b, _) in triple()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = qmul(&a, &b).unwrap();
        let (va, vb) = (qvaluation(&a).unwrap(), qvaluation(&b).unwrap());
        if p.is_zero() {
            prop_assert!(a.ring() == Ring::IntegersMod(14));
        } else {
            let vp = qvaluation(&p).unwrap();
            prop_assert!(vp <= va + vb + 1);
            if a.ring() != Ring::IntegersMod(14) {
                prop_assert!(vp == va + vb || vp == va + vb + 1);
            }
        }
    }

    #[test]
    fn inverses_of_units(a in (0u32..=5, prop_oneof![Just(Ring::Rationals), Just(Ring::IntegersMod(7))])
        .prop_flat_map(|(n, r)| monomial(n, r))) {
        let inv = qinverse(&a).unwrap();
        prop_assert_eq!(qmul(&a, &inv).unwrap(), QuantumClass::one(a.n(), a.ring()));
    }
}

#[test]
fn relation_holds_in_every_ring() {
    for r in [Ring::Integers, Ring::Rationals, Ring::IntegersMod(7), Ring::IntegersMod(14)] {
        for n in 0..=5 {
            let x = QuantumClass::monomial(n, r, 1, 0, BigRational::one()).unwrap();
            let t = QuantumClass::monomial(n, r, 0, 1, BigRational::one()).unwrap();
            assert_eq!(qpow(&x, n + 1), t, "n = {n}, {r}");
        }
    }
}

#[test]
fn gram_matrix_is_antidiagonal() {
    for r in [Ring::Rationals, Ring::IntegersMod(2), Ring::IntegersMod(7)] {
        for n in 1..=5 {
            for i in 0..=n {
                for k in 0..=n {
                    let a = QuantumClass::monomial(n, r, i, 0, BigRational::one()).unwrap();
                    let b = QuantumClass::monomial(n, r, k, 0, BigRational::one()).unwrap();
                    let expected = if i + k == n { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(qpairing(&a, &b).unwrap(), expected, "n = {n}, i = {i}, k = {k}, {r}");
                }
            }
        }
    }
}
