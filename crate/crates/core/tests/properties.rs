mod common;

use std::sync::Arc;

use proptest::prelude::*;

use atomspec::check::{check_suite, share_submodule_literal};
use atomspec::format::{parse_module, parse_ring, serialize_module, serialize_ring};
use atomspec::lattice::{
    composition_factors, composition_factors_top_down, composition_series, is_uniform, is_uniform_pairwise,
    submodule_lattice,
};
use atomspec::module::{direct_sum, quotient_module, regular_module, share_nonzero_submodule, submodule_module};
use atomspec::monoform::{is_comonoform, is_completely_prime};
use atomspec::serre::ClosureUniverse;
use atomspec::{AtomSpectrum, Limits, RightModule};

use common::{ring, zoo, ZOO};

#[test]
fn check_suite_passes_on_zoo() {
    for (name, r) in zoo() {
        let report = check_suite(&r).unwrap();
        for o in &report.outcomes {
            assert!(o.passed(), "{name}: {} failed: {:?}", o.name, o.verdict);
        }
    }
}

#[test]
fn full_matrix_ring_has_one_atom() {
    let report = check_suite(&ring("mat:2:2")).unwrap();
    assert!(report.passed());
    assert_eq!(report.atoms, 1);
}

/// Completely prime right ideals that are not comonoform. The converse of
/// the implication is not claimed, so this only reports what it finds.
#[test]
fn completely_prime_converse_search() {
    for (name, r) in zoo() {
        let spec = AtomSpectrum::new(&r).unwrap();
        for i in spec.right_ideals().iter().filter(|i| !i.is_full()) {
            if is_completely_prime(&r, i).unwrap() && !is_comonoform(&r, i).unwrap() {
                println!("{name}: {i} is completely prime but not comonoform");
            }
        }
    }
}

/// Modules over a zoo ring: subquotients of the regular module.
fn modules_of(r: &Arc<atomspec::FiniteRing>) -> Vec<RightModule> {
    ClosureUniverse::build(&regular_module(r)).unwrap().members().to_vec()
}

fn small_ring_index() -> impl Strategy<Value = usize> {
    // rings of order <= 72
    let small: Vec<usize> = (0..ZOO.len()).filter(|&i| ring(ZOO[i]).order() <= 72).collect();
    proptest::sample::select(small)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_order_multiplies(ri in small_ring_index(), pick in any::<prop::sample::Index>()) {
        let r = ring(ZOO[ri]);
        let reg = regular_module(&r);
        let lattice = submodule_lattice(&reg).unwrap();
        let n = pick.get(&lattice);
        let (q, proj) = quotient_module(&reg, n).unwrap();
        prop_assert_eq!(reg.order(), n.len() * q.order());
        // the projection is a homomorphism
        for x in reg.elements() {
            for a in r.elements() {
                prop_assert_eq!(proj[reg.act(x, a)], q.act(proj[x], a));
            }
            prop_assert_eq!(proj[reg.add(x, 1 % reg.order())], q.add(proj[x], proj[1 % reg.order()]));
        }
    }

    #[test]
    fn composition_factors_do_not_depend_on_series(ri in small_ring_index(), pick in any::<prop::sample::Index>()) {
        let r = ring(ZOO[ri]);
        let mods = modules_of(&r);
        let m = pick.get(&mods);
        let series = composition_series(m);
        prop_assert_eq!(series.len() - 1, composition_factors(m).values().sum::<usize>());
        prop_assert_eq!(composition_factors(m), composition_factors_top_down(m).unwrap());
    }

    #[test]
    fn uniform_tests_agree(ri in small_ring_index(), pick in any::<prop::sample::Index>()) {
        let r = ring(ZOO[ri]);
        let mods = modules_of(&r);
        let m = pick.get(&mods);
        prop_assert_eq!(is_uniform(m), is_uniform_pairwise(m).unwrap());
    }

    #[test]
    fn annihilator_test_matches_embedding_search(
        ri in small_ring_index(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let r = ring(ZOO[ri]);
        let mods: Vec<RightModule> = modules_of(&r).into_iter().filter(|m| m.order() <= 16).collect();
        let (m, n) = (a.get(&mods), b.get(&mods));
        prop_assert_eq!(share_nonzero_submodule(m, n), share_submodule_literal(m, n).unwrap());
    }

    #[test]
    fn documents_round_trip(ri in small_ring_index(), pick in any::<prop::sample::Index>()) {
        let r = ring(ZOO[ri]);
        let doc = serialize_ring(&r);
        let back = Arc::new(parse_ring(&doc, Limits::default()).unwrap());
        prop_assert_eq!(&*back, &*r);
        prop_assert_eq!(serialize_ring(&back), doc);
        let mods = modules_of(&r);
        let m = pick.get(&mods);
        let mdoc = serialize_module(m);
        let mback = parse_module(&back, &mdoc).unwrap();
        prop_assert_eq!(serialize_module(&mback), mdoc);
    }

    #[test]
    fn direct_sum_orders_and_lattices(ri in small_ring_index(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let r = ring(ZOO[ri]);
        let mods: Vec<RightModule> = modules_of(&r).into_iter().filter(|m| m.order() <= 12).collect();
        let (m, n) = (a.get(&mods), b.get(&mods));
        let s = direct_sum(m, n).unwrap();
        prop_assert_eq!(s.order(), m.order() * n.order());
        s.validate().unwrap();
        let lattice = submodule_lattice(&s).unwrap();
        for l in &lattice {
            prop_assert!(submodule_module(&s, l).is_ok());
        }
        prop_assert_eq!(
            composition_factors(&s).values().sum::<usize>(),
            composition_factors(m).values().sum::<usize>() + composition_factors(n).values().sum::<usize>()
        );
    }
}
