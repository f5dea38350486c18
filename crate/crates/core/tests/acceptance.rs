//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use atomspec::check::{
    closure_roundtrip, direct_sum_additivity, generator_sets, max_monoform_is_valid, open_set_roundtrip,
};
use atomspec::iso::is_isomorphic;
use atomspec::lattice::{is_uniform, submodule_lattice};
use atomspec::module::{quotient_module, regular_module, submodule_module};
use atomspec::monoform::{is_monoform, monoform_filtration, monoform_oracle_artinian};
use atomspec::serre::{closure_oracle, enumerate_serre, proper_quotient_classes};
use atomspec::{AtomSet, AtomSpectrum, ClosureUniverse, ElemSet, FiniteRing, RightModule};

use common::{multiples, prime_divisors, right_ideals_by_subsets, ring, zoo};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lower_triangular_example() -> Outcome {
    let r = ring("tri2:2");
    // [[a, 0], [b, c]] has id 4a + 2b + c
    let ideals = right_ideals_by_subsets(&r);
    ensure(ideals.len() == 7, || format!("{} right ideals", ideals.len()))?;
    let spec = AtomSpectrum::new(&r).map_err(|e| e.to_string())?;
    ensure(spec.right_ideals() == ideals.as_slice(), || "ideal enumeration differs from subset search".into())?;

    let j = ElemSet::from_ids(8, [0, 2]);
    let p0 = ElemSet::from_ids(8, [0, 4]);
    let p1 = ElemSet::from_ids(8, [0, 6]);
    let m1 = ElemSet::from_ids(8, (0..8).filter(|x| x & 4 == 0));
    let m2 = ElemSet::from_ids(8, (0..8).filter(|x| x & 1 == 0));
    let expected: BTreeSet<ElemSet> = [p0.clone(), p1.clone(), m1.clone(), m2.clone()].into();
    let got: BTreeSet<ElemSet> = spec.comonoform_ideals().into_iter().collect();
    ensure(got == expected, || format!("comonoform ideals {got:?}"))?;
    let rest: Vec<&ElemSet> = ideals
        .iter()
        .filter(|i| i.len() > 1 && !i.is_full() && !expected.contains(*i))
        .collect();
    ensure(rest == vec![&j], || format!("non-comonoform proper nonzero ideals {rest:?}"))?;

    ensure(spec.len() == 2, || format!("{} atoms", spec.len()))?;
    let a = |i: &ElemSet| spec.atom_of(i).unwrap();
    ensure(a(&p0) == a(&m1) && a(&p1) == a(&m1) && a(&m1) != a(&m2), || "atom classes".into())?;
    let serre = enumerate_serre(&spec).map_err(|e| e.to_string())?;
    ensure(serre.subcategories.len() == 4, || format!("{} Serre subcategories", serre.subcategories.len()))?;
    Ok("7 ideals, 4 comonoform, 2 atoms, 4 subcategories".into())
}

fn commutative_recovery() -> Outcome {
    for n in [4usize, 6, 8, 12, 30, 36, 60] {
        let r = ring(&format!("zmod:{n}"));
        let spec = AtomSpectrum::new(&r).map_err(|e| e.to_string())?;
        let primes: BTreeSet<ElemSet> = prime_divisors(n as u64)
            .into_iter()
            .map(|p| multiples(n, p as usize))
            .collect();
        let comonoform: BTreeSet<ElemSet> = spec.comonoform_ideals().into_iter().collect();
        ensure(comonoform == primes, || format!("Z/{n}: comonoform {comonoform:?}"))?;
        ensure(spec.atoms().iter().all(|a| a.members.len() == 1), || format!("Z/{n}: non-singleton atom"))?;

        // specialization-closed subsets of the primes, by brute force
        let plist: Vec<&ElemSet> = primes.iter().collect();
        let mut closed = BTreeSet::new();
        for mask in 0u32..1 << plist.len() {
            let inside = |i: usize| mask >> i & 1 == 1;
            let ok = (0..plist.len())
                .all(|i| !inside(i) || (0..plist.len()).all(|k| !plist[i].is_subset(plist[k]) || inside(k)));
            if ok {
                let set: BTreeSet<ElemSet> = (0..plist.len()).filter(|&i| inside(i)).map(|i| plist[i].clone()).collect();
                closed.insert(set);
            }
        }
        let open: BTreeSet<BTreeSet<ElemSet>> = spec
            .enumerate_open_sets()
            .map_err(|e| e.to_string())?
            .iter()
            .map(|o| o.members.iter().map(|a| spec.atoms()[a].canonical_rep.clone()).collect())
            .collect();
        ensure(open == closed, || format!("Z/{n}: open sets differ from specialization-closed sets"))?;
        let count = enumerate_serre(&spec).map_err(|e| e.to_string())?.subcategories.len();
        ensure(count == 1 << plist.len(), || format!("Z/{n}: {count} Serre subcategories"))?;
    }
    Ok("7 rings".into())
}

fn maximal_right_ideals(r: &Arc<FiniteRing>) -> Vec<ElemSet> {
    let lattice = submodule_lattice(&regular_module(r)).unwrap();
    let proper: Vec<&ElemSet> = lattice.iter().filter(|i| !i.is_full()).collect();
    proper
        .iter()
        .filter(|i| !proper.iter().any(|k| k.len() > i.len() && i.is_subset(k)))
        .map(|i| (*i).clone())
        .collect()
}

fn discreteness() -> Outcome {
    for (name, r) in zoo() {
        let spec = AtomSpectrum::new(&r).map_err(|e| e.to_string())?;
        let open = spec.enumerate_open_sets().map_err(|e| e.to_string())?;
        let all: BTreeSet<u64> = (0..1u64 << spec.len()).collect();
        let got: BTreeSet<u64> = open.iter().map(|o| o.members.bits()).collect();
        ensure(got == all && open.len() == all.len(), || format!("{name}: {} open sets", open.len()))?;
        let mut simples: Vec<RightModule> = Vec::new();
        for m in maximal_right_ideals(&r) {
            let (s, _) = quotient_module(&regular_module(&r), &m).unwrap();
            if !simples.iter().any(|t| is_isomorphic(t, &s)) {
                simples.push(s);
            }
        }
        ensure(simples.len() == spec.len(), || {
            format!("{name}: {} atoms, {} simple classes", spec.len(), simples.len())
        })?;
    }
    Ok(format!("{} rings", zoo().len()))
}

fn cyclic_modules(r: &Arc<FiniteRing>) -> Vec<(ElemSet, RightModule)> {
    let reg = regular_module(r);
    submodule_lattice(&reg)
        .unwrap()
        .into_iter()
        .filter(|i| !i.is_full())
        .map(|i| {
            let (q, _) = quotient_module(&reg, &i).unwrap();
            (i, q)
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for (name, r) in zoo() {
        for (i, q) in cyclic_modules(&r) {
            count += 1;
            let a = is_monoform(&q).map_err(|e| e.to_string())?;
            ensure(a == monoform_oracle_artinian(&q), || format!("{name}: R/{i}"))?;
        }
    }
    Ok(format!("{count} cyclic modules"))
}

fn closure_criterion() -> Outcome {
    let mut count = 0;
    for (name, r) in zoo() {
        let universe = ClosureUniverse::build(&regular_module(&r)).map_err(|e| e.to_string())?;
        for m in universe.members().iter().filter(|m| m.order() <= 64 && !m.is_zero()) {
            count += 1;
            let own = ClosureUniverse::build(m).map_err(|e| e.to_string())?;
            let seeds = proper_quotient_classes(&own);
            let reached = closure_oracle(&own, &seeds).contains(&own.ambient_class());
            let monoform = is_monoform(m).map_err(|e| e.to_string())?;
            ensure(monoform != reached, || format!("{name}: module of order {} (monoform {monoform})", m.order()))?;
        }
    }
    Ok(format!("{count} subquotients"))
}

fn check_filtration(r: &Arc<FiniteRing>, m: &RightModule) -> Result<usize, String> {
    let f = monoform_filtration(m).map_err(|e| e.to_string())?;
    ensure(f.chain.first() == Some(&m.zero_submodule()), || "chain does not start at 0".into())?;
    ensure(f.chain.last() == Some(&m.full_submodule()), || "chain does not end at M".into())?;
    let reg = regular_module(r);
    for (i, w) in f.chain.windows(2).enumerate() {
        ensure(w[0].is_subset(&w[1]) && w[0].len() < w[1].len(), || format!("step {i} not strict"))?;
        let factor = m.section(&w[0], &w[1]).map_err(|e| e.to_string())?;
        ensure(is_monoform(&factor).unwrap(), || format!("factor {i} not monoform"))?;
        let (cyc, _) = quotient_module(&reg, &f.labels[i]).map_err(|e| e.to_string())?;
        ensure(is_isomorphic(&factor, &cyc), || format!("factor {i} not R/{}", f.labels[i]))?;
    }
    Ok(f.len())
}

fn filtration_validity() -> Outcome {
    let rings = zoo();
    for (name, r) in &rings {
        check_filtration(r, &regular_module(r)).map_err(|e| format!("{name}: {e}"))?;
    }
    let mut rng = StdRng::seed_from_u64(0xf117);
    for k in 0..50 {
        let (name, r) = &rings[rng.gen_range(0..rings.len())];
        let reg = regular_module(r);
        let lattice = submodule_lattice(&reg).unwrap();
        let upper = &lattice[rng.gen_range(0..lattice.len())];
        let below: Vec<&ElemSet> = lattice.iter().filter(|l| l.is_subset(upper)).collect();
        let lower = below[rng.gen_range(0..below.len())];
        let (m, what) = match rng.gen_range(0..3) {
            0 => (submodule_module(&reg, upper).unwrap(), format!("sub {upper}")),
            1 => (quotient_module(&reg, upper).unwrap().0, format!("quot {upper}")),
            _ => (reg.section(lower, upper).unwrap(), format!("section {upper}/{lower}")),
        };
        if m.is_zero() {
            continue;
        }
        check_filtration(r, &m).map_err(|e| format!("construction {k} ({name}, {what}): {e}"))?;
    }
    Ok(format!("{} regular modules, 50 random constructions", rings.len()))
}

fn support_exactness() -> Outcome {
    let rings = zoo();
    let mut subs = 0;
    for (name, r) in &rings {
        let spec = AtomSpectrum::new(r).map_err(|e| e.to_string())?;
        let m = spec.regular();
        let supp = spec.atom_support(m).unwrap();
        let ass = spec.associated_atoms(m).unwrap();
        for l in submodule_lattice(m).unwrap() {
            subs += 1;
            let lm = submodule_module(m, &l).unwrap();
            let (q, _) = quotient_module(m, &l).unwrap();
            let (sl, sq) = (spec.atom_support(&lm).unwrap(), spec.atom_support(&q).unwrap());
            ensure(supp == sl.union(sq), || format!("{name}: support not exact at {l}"))?;
            let (al, aq) = (spec.associated_atoms(&lm).unwrap(), spec.associated_atoms(&q).unwrap());
            ensure(al.is_subset(ass) && ass.is_subset(al.union(aq)), || format!("{name}: sandwich fails at {l}"))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0xd5);
    let mut pairs = 0;
    while pairs < 20 {
        let (name, r) = &rings[rng.gen_range(0..rings.len())];
        let spec = AtomSpectrum::new(r).unwrap();
        let cyc = cyclic_modules(r);
        let (i, a) = &cyc[rng.gen_range(0..cyc.len())];
        let (k, b) = &cyc[rng.gen_range(0..cyc.len())];
        if a.order() * b.order() > 256 {
            continue;
        }
        pairs += 1;
        direct_sum_additivity(&spec, a, b)
            .unwrap()
            .map_err(|_| format!("{name}: R/{i} + R/{k}"))?;
    }
    Ok(format!("{subs} submodules, {pairs} direct sums"))
}

fn main_theorem_roundtrips() -> Outcome {
    let complete = ["zmod:4", "zmod:12", "tri2:2"];
    for (seed, (name, r)) in zoo().into_iter().enumerate() {
        let spec = AtomSpectrum::new(&r).map_err(|e| e.to_string())?;
        open_set_roundtrip(&spec).unwrap().map_err(|e| format!("{name}: {e}"))?;
        let universe = ClosureUniverse::build(spec.regular()).unwrap();
        let gens = generator_sets(&universe, 0, 0);
        // singletons feed the completeness check; soundness runs on 20 random sets
        let mut rng = StdRng::seed_from_u64(0x4e3 + seed as u64);
        let random: Vec<BTreeSet<usize>> = (0..20)
            .map(|_| {
                let k = rng.gen_range(1..=3);
                (0..k).map(|_| rng.gen_range(0..universe.len())).collect()
            })
            .collect();
        closure_roundtrip(&spec, &universe, &random, false)
            .unwrap()
            .map_err(|e| format!("{name}: {e}"))?;
        if complete.contains(&name) {
            let all: Vec<BTreeSet<usize>> = gens.into_iter().chain(random).collect();
            closure_roundtrip(&spec, &universe, &all, true)
                .unwrap()
                .map_err(|e| format!("{name}: {e}"))?;
            // the universe members supported on each open set have exactly that set as their
            // combined support, and are closed under the oracle.
            for o in spec.enumerate_open_sets().unwrap() {
                let inside: BTreeSet<usize> = (0..universe.len())
                    .filter(|&c| spec.atom_support(&universe.members()[c]).unwrap().is_subset(o.members))
                    .collect();
                let supp = inside
                    .iter()
                    .fold(AtomSet::EMPTY, |acc, &c| acc.union(spec.atom_support(&universe.members()[c]).unwrap()));
                ensure(supp == o.members, || format!("{name}: {:?} not recovered", o.members))?;
                ensure(closure_oracle(&universe, &inside) == inside, || format!("{name}: not closed"))?;
            }
        }
    }
    Ok(format!("{} rings, completeness on {}", zoo().len(), complete.join(" ")))
}

fn maximal_monoform() -> Outcome {
    let (mut uniform, mut rejected) = (0, 0);
    for (name, r) in zoo() {
        for (i, q) in cyclic_modules(&r) {
            if is_uniform(&q) {
                uniform += 1;
            } else {
                rejected += 1;
            }
            max_monoform_is_valid(&q).unwrap().map_err(|e| format!("{name}: R/{i}: {e}"))?;
        }
    }
    Ok(format!("{uniform} uniform, {rejected} non-uniform rejected"))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        (1, "lower-triangular example", 1, lower_triangular_example),
        (2, "commutative recovery", 5, commutative_recovery),
        (3, "artinian discreteness", 30, discreteness),
        (4, "monoform oracle equivalence", 60, oracle_equivalence),
        (5, "closure criterion for monoformity", 120, closure_criterion),
        (6, "filtration validity", 60, filtration_validity),
        (7, "support and associated atoms", 60, support_exactness),
        (8, "open set and closure roundtrips", 120, main_theorem_roundtrips),
        (9, "maximal monoform submodule", 30, maximal_monoform),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(s) if elapsed > Duration::from_secs(limit) => Err(format!("{s}; over the {limit} s limit")),
            other => other,
        };
        match outcome {
            Ok(s) => println!("PASS {id} {name}: {s} ({:.2} s)", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {id} {name}: {e} ({:.2} s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
