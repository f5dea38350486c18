use std::sync::Arc;

use atomspec::builtin::{build_builtin, zmod};
use atomspec::module::{quotient_module, regular_module};
use atomspec::ring::validate_ring;
use atomspec::{Axiom, ElemSet, Error, Limits, RawTables, RingSpec};

fn tables(n: usize, one: i64, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> RawTables {
    RawTables {
        order: n,
        one,
        add: (0..n).map(|a| (0..n).map(|b| add(a, b) as i64).collect()).collect(),
        mul: (0..n).map(|a| (0..n).map(|b| mul(a, b) as i64).collect()).collect(),
    }
}

fn axiom_of(raw: &RawTables) -> (Axiom, Vec<usize>) {
    match validate_ring(raw, Limits::default()) {
        Err(Error::Axiom { axiom, witness }) => (axiom, witness),
        other => panic!("expected an axiom failure, got {other:?}"),
    }
}

#[test]
fn the_tables_of_z6_validate() {
    let raw = tables(6, 1, |a, b| (a + b) % 6, |a, b| a * b % 6);
    assert_eq!(validate_ring(&raw, Limits::default()).unwrap(), zmod(6).unwrap());
}

#[test]
fn non_associative_multiplication_is_caught() {
    // a*b = 2a + 2b mod 4 is not associative and has no identity; associativity is checked first
    let raw = tables(4, 1, |a, b| (a + b) % 4, |a, b| (2 * a + 2 * b) % 4);
    let (axiom, w) = axiom_of(&raw);
    assert_eq!(axiom, Axiom::MultiplicativeAssociativity);
    let m = |a: usize, b: usize| (2 * a + 2 * b) % 4;
    assert_ne!(m(m(w[0], w[1]), w[2]), m(w[0], m(w[1], w[2])));
}

#[test]
fn wrong_one_is_caught() {
    let raw = tables(3, 2, |a, b| (a + b) % 3, |a, b| a * b % 3);
    assert_eq!(axiom_of(&raw).0, Axiom::MultiplicativeIdentity);
}

#[test]
fn non_distributive_multiplication_is_caught() {
    // max on {0,1,2} over Z/3 is associative with no distributivity
    let raw = tables(3, 0, |a, b| (a + b) % 3, |a, b| a.max(b));
    let (axiom, _) = axiom_of(&raw);
    assert!(matches!(
        axiom,
        Axiom::MultiplicativeIdentity | Axiom::LeftDistributivity | Axiom::RightDistributivity
    ));
}

#[test]
fn non_group_addition_is_caught() {
    let raw = tables(3, 1, |a, b| a.max(b), |a, b| a * b % 3);
    assert!(matches!(validate_ring(&raw, Limits::default()), Err(Error::Axiom { .. })));
}

#[test]
fn ragged_tables_are_shape_errors() {
    let mut raw = tables(2, 1, |a, b| (a + b) % 2, |a, b| a * b);
    raw.mul[1].pop();
    assert!(matches!(validate_ring(&raw, Limits::default()), Err(Error::Shape(_))));
}

#[test]
fn caps_are_enforced() {
    let limits = Limits {
        max_order: 8,
        ..Limits::default()
    };
    let err = build_builtin(&"zmod:9".parse::<RingSpec>().unwrap(), limits).unwrap_err();
    assert!(matches!(err, Error::OrderCap { cap: 8, .. }));
    let err = "tri2:4"
        .parse::<RingSpec>()
        .and_then(|s| build_builtin(&s, Limits::default()))
        .unwrap_err();
    assert_eq!(err, Error::NotPrime(4));
}

#[test]
fn quotient_by_a_non_ideal_fails() {
    let r = Arc::new(zmod(12).unwrap());
    let reg = regular_module(&r);
    let err = quotient_module(&reg, &ElemSet::from_ids(12, [0, 5])).unwrap_err();
    assert!(err.to_string().contains("not closed under action"), "{err}");
    let (q, _) = quotient_module(&reg, &ElemSet::from_ids(12, [0, 6])).unwrap();
    assert_eq!(q.order(), 6);
}

mod agreement {
    use super::*;
    use atomspec::ring::validate_ring_exhaustive;
    use proptest::prelude::*;

    const SOURCES: &[&str] = &["zmod:6", "zmod:8", "tri2:2", "mat:2:2", "prod:zmod:2,zmod:4", "zmod:9"];

    fn kind(r: &atomspec::Result<atomspec::FiniteRing>) -> Option<String> {
        match r {
            Ok(_) => None,
            // the two checkers may meet a failing left law and a failing right law in either order
            Err(Error::Axiom {
                axiom: Axiom::LeftDistributivity | Axiom::RightDistributivity,
                ..
            }) => Some("distributivity".into()),
            Err(Error::Axiom { axiom, .. }) => Some(axiom.to_string()),
            Err(e) => Some(e.to_string()),
        }
    }

    fn holds(raw: &RawTables, axiom: Axiom, w: &[usize]) -> bool {
        let a = |x: usize, y: usize| raw.add[x][y] as usize;
        let m = |x: usize, y: usize| raw.mul[x][y] as usize;
        match (axiom, w) {
            (Axiom::AdditiveAssociativity, [x, y, z]) => a(a(*x, *y), *z) == a(*x, a(*y, *z)),
            (Axiom::MultiplicativeAssociativity, [x, y, z]) => m(m(*x, *y), *z) == m(*x, m(*y, *z)),
            (Axiom::LeftDistributivity, [x, y, z]) => m(*x, a(*y, *z)) == a(m(*x, *y), m(*x, *z)),
            (Axiom::RightDistributivity, [x, y, z]) => m(a(*x, *y), *z) == a(m(*x, *z), m(*y, *z)),
            _ => false,
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn fast_and_exhaustive_validation_agree(
            src in proptest::sample::select(SOURCES),
            edits in proptest::collection::vec((any::<bool>(), any::<u16>(), any::<u16>(), any::<u16>()), 0..3),
        ) {
            let spec: RingSpec = src.parse().unwrap();
            let mut raw = build_builtin(&spec, Limits::default()).unwrap().to_raw();
            let n = raw.order;
            for (in_add, r, c, v) in edits {
                let t = if in_add { &mut raw.add } else { &mut raw.mul };
                t[r as usize % n][c as usize % n] = (v as usize % n) as i64;
            }
            let fast = validate_ring(&raw, Limits::default());
            let slow = validate_ring_exhaustive(&raw, Limits::default());
            prop_assert_eq!(kind(&fast), kind(&slow));
            if let (Ok(f), Ok(s)) = (&fast, &slow) {
                prop_assert_eq!(f, s);
            }
            // every reported triple is a genuine counterexample
            if let Err(Error::Axiom { axiom, witness }) = &fast {
                if witness.len() == 3 {
                    prop_assert!(!holds(&raw, *axiom, witness));
                }
            }
        }
    }
}
