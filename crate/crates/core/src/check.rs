//! A battery of structural checks run exhaustively on one ring.
//!
//! Each check returns a [`Verdict`]: `Ok(summary)` when it holds on every
//! instance tried, `Err(witness)` naming the first counterexample. The test
//! modules are the isomorphism classes of subquotients of the regular module
//! (which include every cyclic module `R/I`) plus a few direct sums.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};

use crate::builtin::tri2;
use crate::elemset::ElemSet;
use crate::error::Result;
use crate::iso::is_isomorphic;
use crate::lattice::{
    composition_factors, composition_factors_top_down, is_simple, is_uniform, is_uniform_pairwise,
    submodule_lattice,
};
use crate::module::{
    annihilator, cyclic_submodule, direct_sum, quotient_module, share_nonzero_submodule,
    submodule_module, RightModule,
};
use crate::monoform::{
    is_completely_prime, is_monoform, max_monoform_submodule, monoform_filtration_cached,
    monoform_oracle_artinian, ComonoformCache,
};
use crate::ring::FiniteRing;
use crate::serre::{
    calculus_check, closure_oracle, closure_says_monoform, cyclic_module, enumerate_serre,
    serre_contains, ClosureUniverse, SerreSubcategory,
};
use crate::spectrum::{atom_equivalent, commutative_crosscheck, AtomSet, AtomSpectrum, OpenSet};

pub type Verdict = std::result::Result<String, String>;

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub verdict: Verdict,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.verdict.is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub atoms: usize,
    pub outcomes: Vec<PropertyOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }
}

/// Largest module order probed by the quadratic and search-heavy checks.
pub const SMALL_ORDER: usize = 64;
/// Largest module order for the literal embedding and openness searches.
pub const TINY_ORDER: usize = 16;

fn name(m: &RightModule) -> String {
    m.provenance().unwrap_or("module").to_string()
}

fn as_module(m: &RightModule, s: &ElemSet) -> Result<RightModule> {
    submodule_module(m, s)
}

pub fn lattice_is_closed(m: &RightModule) -> Result<Verdict> {
    let lattice = submodule_lattice(m)?;
    let set: BTreeSet<&ElemSet> = lattice.iter().collect();
    for a in &lattice {
        for b in &lattice {
            if !set.contains(&a.intersection(b)) || !set.contains(&m.sum(a, b)) {
                return Ok(Err(format!("{}: {a} and {b}", name(m))));
            }
        }
    }
    Ok(Ok(format!("{} submodules", lattice.len())))
}

pub fn quotient_orders_multiply(m: &RightModule) -> Result<Verdict> {
    for n in submodule_lattice(m)? {
        let (q, _) = quotient_module(m, &n)?;
        if m.order() != n.len() * q.order() {
            return Ok(Err(format!("{}: |M| != |N||M/N| for N = {n}", name(m))));
        }
    }
    Ok(Ok(String::new()))
}

/// `xR ≅ R/Ann(x)` for every element.
pub fn cyclic_matches_annihilator_quotient(spec: &AtomSpectrum, m: &RightModule) -> Result<Verdict> {
    for x in m.elements() {
        let c = as_module(m, &cyclic_submodule(m, x)?.members)?;
        let q = cyclic_module(spec, &annihilator(m, x)?)?;
        if !is_isomorphic(&c, &q) {
            return Ok(Err(format!("{}: xR vs R/Ann(x) for x = {x}", name(m))));
        }
    }
    Ok(Ok(String::new()))
}

pub fn jordan_holder(m: &RightModule) -> Result<Verdict> {
    let a = composition_factors(m);
    let b = composition_factors_top_down(m)?;
    if a == b {
        Ok(Ok(format!("length {}", a.values().sum::<usize>())))
    } else {
        Ok(Err(format!("{}: bottom-up {a:?} vs top-down {b:?}", name(m))))
    }
}

pub fn uniform_matches_definition(m: &RightModule) -> Result<Verdict> {
    if is_uniform(m) == is_uniform_pairwise(m)? {
        Ok(Ok(String::new()))
    } else {
        Ok(Err(format!("{}: uniformity tests disagree", name(m))))
    }
}

/// Literal search for a common nonzero submodule up to isomorphism.
pub fn share_submodule_literal(m: &RightModule, n: &RightModule) -> Result<bool> {
    let lm = submodule_lattice(m)?;
    let ln = submodule_lattice(n)?;
    for a in lm.iter().filter(|s| s.len() > 1) {
        let am = as_module(m, a)?;
        for b in ln.iter().filter(|s| s.len() == a.len()) {
            if is_isomorphic(&am, &as_module(n, b)?) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn reduction_lemma(mods: &[RightModule]) -> Result<Verdict> {
    let tiny: Vec<&RightModule> = mods.iter().filter(|m| m.order() <= TINY_ORDER).collect();
    let mut pairs = 0;
    for (i, m) in tiny.iter().enumerate() {
        for n in &tiny[i..] {
            pairs += 1;
            if share_nonzero_submodule(m, n) != share_submodule_literal(m, n)? {
                return Ok(Err(format!("{} vs {}", name(m), name(n))));
            }
        }
    }
    Ok(Ok(format!("{pairs} pairs")))
}

pub fn submodules_of_monoform(m: &RightModule) -> Result<Verdict> {
    if !is_monoform(m)? {
        return Ok(Ok(String::new()));
    }
    for s in submodule_lattice(m)?.iter().filter(|s| s.len() > 1) {
        if !is_monoform(&as_module(m, s)?)? {
            return Ok(Err(format!("{}: submodule {s} not monoform", name(m))));
        }
    }
    Ok(Ok(String::new()))
}

pub fn monoform_is_uniform(m: &RightModule) -> Result<Verdict> {
    if is_monoform(m)? && !is_uniform(m) {
        return Ok(Err(format!("{}: monoform but not uniform", name(m))));
    }
    Ok(Ok(String::new()))
}

pub fn oracle_agreement(m: &RightModule) -> Result<Verdict> {
    let a = is_monoform(m)?;
    let b = monoform_oracle_artinian(m);
    if a == b {
        Ok(Ok(String::new()))
    } else {
        Ok(Err(format!("{}: definition {a}, socle test {b}", name(m))))
    }
}

pub fn closure_criterion(m: &RightModule) -> Result<Verdict> {
    let universe = ClosureUniverse::build(m)?;
    let a = is_monoform(m)?;
    let b = closure_says_monoform(&universe);
    if a == b {
        Ok(Ok(String::new()))
    } else {
        Ok(Err(format!("{}: definition {a}, closure oracle {b}", name(m))))
    }
}

pub fn filtration_is_valid(spec: &AtomSpectrum, m: &RightModule, cache: &mut ComonoformCache) -> Result<Verdict> {
    if m.is_zero() {
        return Ok(Ok(String::new()));
    }
    let f = monoform_filtration_cached(m, cache)?;
    if f.chain.first() != Some(&m.zero_submodule()) || f.chain.last() != Some(&m.full_submodule()) {
        return Ok(Err(format!("{}: chain does not run from 0 to M", name(m))));
    }
    if f.chain.len() != f.labels.len() + 1 {
        return Ok(Err(format!("{}: label count mismatch", name(m))));
    }
    for (i, w) in f.chain.windows(2).enumerate() {
        if !(w[0].is_subset(&w[1]) && w[0].len() < w[1].len()) {
            return Ok(Err(format!("{}: step {i} not strictly increasing", name(m))));
        }
        let factor = m.section(&w[0], &w[1])?;
        if !is_monoform(&factor)? {
            return Ok(Err(format!("{}: factor {i} not monoform", name(m))));
        }
        if !is_isomorphic(&factor, &cyclic_module(spec, &f.labels[i])?) {
            return Ok(Err(format!("{}: factor {i} not isomorphic to R/{}", name(m), f.labels[i])));
        }
    }
    Ok(Ok(format!("{} steps", f.len())))
}

pub fn max_monoform_is_valid(m: &RightModule) -> Result<Verdict> {
    if !is_uniform(m) {
        return Ok(match max_monoform_submodule(m) {
            Err(crate::Error::NotUniform) => Ok(String::new()),
            other => Err(format!("{}: non-uniform input gave {other:?}", name(m))),
        });
    }
    let h = max_monoform_submodule(m)?;
    if !is_monoform(&as_module(m, &h)?)? {
        return Ok(Err(format!("{}: {h} not monoform", name(m))));
    }
    let lattice = submodule_lattice(m)?;
    let monoform_subs: Vec<&ElemSet> = {
        let mut v = Vec::new();
        for s in lattice.iter().filter(|s| s.len() > 1) {
            if is_monoform(&as_module(m, s)?)? {
                v.push(s);
            }
        }
        v
    };
    for s in &monoform_subs {
        if !s.is_subset(&h) {
            return Ok(Err(format!("{}: monoform {s} not inside {h}", name(m))));
        }
    }
    // sums of two monoform submodules of a uniform module stay monoform
    for (i, a) in monoform_subs.iter().enumerate() {
        for b in &monoform_subs[i + 1..] {
            if !is_monoform(&as_module(m, &m.sum(a, b))?)? {
                return Ok(Err(format!("{}: {a} + {b} not monoform", name(m))));
            }
        }
    }
    Ok(Ok(format!("{h}")))
}

pub fn support_exactness(spec: &AtomSpectrum, m: &RightModule) -> Result<Verdict> {
    let supp = spec.atom_support(m)?;
    let ass = spec.associated_atoms(m)?;
    if !ass.is_subset(supp) {
        return Ok(Err(format!("{}: associated atoms outside support", name(m))));
    }
    if !m.is_zero() && ass.is_empty() {
        return Ok(Err(format!("{}: nonzero with no associated atom", name(m))));
    }
    if !spec.is_open(supp) {
        return Ok(Err(format!("{}: support {supp:?} not open", name(m))));
    }
    for l in submodule_lattice(m)? {
        let lm = as_module(m, &l)?;
        let (q, _) = quotient_module(m, &l)?;
        let (sl, sq) = (spec.atom_support(&lm)?, spec.atom_support(&q)?);
        if supp != sl.union(sq) {
            return Ok(Err(format!("{}: support not exact at L = {l}", name(m))));
        }
        let (al, aq) = (spec.associated_atoms(&lm)?, spec.associated_atoms(&q)?);
        if !(al.is_subset(ass) && ass.is_subset(al.union(aq))) {
            return Ok(Err(format!("{}: associated atoms not sandwiched at L = {l}", name(m))));
        }
    }
    Ok(Ok(String::new()))
}

pub fn direct_sum_additivity(spec: &AtomSpectrum, a: &RightModule, b: &RightModule) -> Result<Verdict> {
    let s = direct_sum(a, b)?;
    let ok_supp = spec.atom_support(&s)? == spec.atom_support(a)?.union(spec.atom_support(b)?);
    let ok_ass = spec.associated_atoms(&s)? == spec.associated_atoms(a)?.union(spec.associated_atoms(b)?);
    if ok_supp && ok_ass {
        Ok(Ok(String::new()))
    } else {
        Ok(Err(format!("{} + {}", name(a), name(b))))
    }
}

pub fn atom_equivalence_is_equivalence(spec: &AtomSpectrum) -> Result<Verdict> {
    let ideals = spec.comonoform_ideals();
    let n = ideals.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = atom_equivalent(spec.ring(), &ideals[i], &ideals[j])?;
        }
    }
    for i in 0..n {
        if !rel[i][i] {
            return Ok(Err(format!("not reflexive at {}", ideals[i])));
        }
        for j in 0..n {
            if rel[i][j] != rel[j][i] {
                return Ok(Err(format!("not symmetric at {}, {}", ideals[i], ideals[j])));
            }
            // the partition must agree with the pairwise relation
            if rel[i][j] != (spec.atom_of(&ideals[i]) == spec.atom_of(&ideals[j])) {
                return Ok(Err(format!("partition disagrees at {}, {}", ideals[i], ideals[j])));
            }
            for k in 0..n {
                if rel[i][j] && rel[j][k] && !rel[i][k] {
                    return Ok(Err(format!(
                        "not transitive at {}, {}, {}",
                        ideals[i], ideals[j], ideals[k]
                    )));
                }
            }
        }
    }
    Ok(Ok(format!("{n} comonoform ideals")))
}

/// Every comonoform ideal is completely prime. The summary counts completely
/// prime ideals that are not comonoform.
pub fn comonoform_implies_completely_prime(spec: &AtomSpectrum) -> Result<Verdict> {
    let mut extra = Vec::new();
    for i in spec.right_ideals().iter().filter(|i| !i.is_full()) {
        let cp = is_completely_prime(spec.ring(), i)?;
        let cm = spec.is_comonoform(i);
        if cm && !cp {
            return Ok(Err(format!("{i} comonoform but not completely prime")));
        }
        if cp && !cm {
            extra.push(i.to_string());
        }
    }
    Ok(Ok(format!("completely prime but not comonoform: [{}]", extra.join(" "))))
}

pub fn discreteness(spec: &AtomSpectrum) -> Result<Verdict> {
    let open = spec.enumerate_open_sets()?;
    let expected = 1usize << spec.len();
    if open.len() != expected {
        return Ok(Err(format!("{} open sets, powerset has {expected}", open.len())));
    }
    let simples = simple_iso_classes(spec)?;
    if simples != spec.len() {
        return Ok(Err(format!("{} atoms but {simples} simple classes", spec.len())));
    }
    Ok(Ok(format!("{} atoms, {} open sets", spec.len(), open.len())))
}

/// Simple modules up to isomorphism, counted via explicit isomorphism tests
/// among the `R/m` for maximal `m`.
pub fn simple_iso_classes(spec: &AtomSpectrum) -> Result<usize> {
    let mut reps: Vec<RightModule> = Vec::new();
    for m in spec.maximal_right_ideals() {
        let s = cyclic_module(spec, &m)?;
        debug_assert!(is_simple(&s));
        if !reps.iter().any(|r| is_isomorphic(r, &s)) {
            reps.push(s);
        }
    }
    Ok(reps.len())
}

/// Every open set is the union of the supports of the cyclic modules it
/// contains.
pub fn open_set_roundtrip(spec: &AtomSpectrum) -> Result<Verdict> {
    let mut cyclic_supports = Vec::new();
    for i in spec.right_ideals().iter().filter(|i| !i.is_full()) {
        cyclic_supports.push(spec.atom_support(&cyclic_module(spec, i)?)?);
    }
    let open = spec.enumerate_open_sets()?;
    for o in &open {
        let phi = o.members;
        let rebuilt = cyclic_supports
            .iter()
            .filter(|s| s.is_subset(phi))
            .fold(AtomSet::EMPTY, |acc, s| acc.union(*s));
        if rebuilt != phi {
            return Ok(Err(format!("{phi:?} rebuilt as {rebuilt:?}")));
        }
    }
    Ok(Ok(format!("{} open sets", open.len())))
}

/// Closure oracle against support containment on generator sets drawn from
/// the universe: soundness always, and exact equality when `complete`.
pub fn closure_roundtrip(
    spec: &AtomSpectrum,
    universe: &ClosureUniverse,
    gen_sets: &[BTreeSet<usize>],
    complete: bool,
) -> Result<Verdict> {
    let supports: Vec<AtomSet> = universe
        .members()
        .iter()
        .map(|m| spec.atom_support(m))
        .collect::<Result<_>>()?;
    for gens in gen_sets {
        let phi = gens.iter().fold(AtomSet::EMPTY, |acc, &g| acc.union(supports[g]));
        let closure = closure_oracle(universe, gens);
        for &c in &closure {
            if !supports[c].is_subset(phi) {
                return Ok(Err(format!("member {c} of closure of {gens:?} escapes {phi:?}")));
            }
        }
        if complete {
            let by_support: BTreeSet<usize> = (0..universe.len()).filter(|&c| supports[c].is_subset(phi)).collect();
            if by_support != closure {
                return Ok(Err(format!(
                    "closure of {gens:?} is {closure:?}, support test gives {by_support:?}"
                )));
            }
        }
    }
    Ok(Ok(format!("{} generator sets", gen_sets.len())))
}

/// Random generator sets over a universe, plus all singletons.
pub fn generator_sets(universe: &ClosureUniverse, random: usize, seed: u64) -> Vec<BTreeSet<usize>> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut out: Vec<BTreeSet<usize>> = (0..universe.len()).map(|c| BTreeSet::from([c])).collect();
    for _ in 0..random {
        let k = rng.gen_range(0..=3.min(universe.len()));
        out.push((0..k).map(|_| rng.gen_range(0..universe.len())).collect());
    }
    out
}

/// Membership in each Serre subcategory is closed under subquotients and
/// extensions inside the universe.
pub fn membership_is_serre(spec: &AtomSpectrum, universe: &ClosureUniverse) -> Result<Verdict> {
    let lattice = enumerate_serre(spec)?;
    for s in &lattice.subcategories {
        let inside: Vec<bool> = universe
            .members()
            .iter()
            .map(|m| serre_contains(spec, s, m))
            .collect::<Result<_>>()?;
        for &(l, e, n) in universe.extensions() {
            // (l, e, n): l and n are a subobject and the matching quotient of e
            if inside[e] && !(inside[l] && inside[n]) {
                return Ok(Err(format!("{:?}: not closed under subquotients at {e}", s.open_set.members)));
            }
            if inside[l] && inside[n] && !inside[e] {
                return Ok(Err(format!("{:?}: not closed under extensions at {e}", s.open_set.members)));
            }
        }
    }
    Ok(Ok(format!("{} subcategories", lattice.subcategories.len())))
}

pub fn serre_lattice_matches_open_sets(spec: &AtomSpectrum) -> Result<Verdict> {
    let open = spec.enumerate_open_sets()?;
    let lattice = enumerate_serre(spec)?;
    let opens: Vec<OpenSet> = lattice.subcategories.iter().map(|s: &SerreSubcategory| s.open_set).collect();
    if opens != open {
        return Ok(Err("subcategories do not match open sets".into()));
    }
    for &(lo, hi) in &lattice.covers {
        if !opens[lo].members.is_subset(opens[hi].members) {
            return Ok(Err(format!("cover {lo} -> {hi} is not an inclusion")));
        }
    }
    for (i, gens) in lattice.generating_ideals.iter().enumerate() {
        let mods: Vec<RightModule> = gens.iter().map(|q| cyclic_module(spec, q)).collect::<Result<_>>()?;
        let s = crate::serre::serre_from_generators(spec, &mods)?;
        if s.open_set != opens[i] {
            return Ok(Err(format!("generators of subcategory {i} do not generate it")));
        }
    }
    Ok(Ok(format!("{} subcategories", opens.len())))
}

/// Openness read literally over the monoform members of a universe: `phi`
/// is open iff every atom in it has a monoform representative (any size,
/// not only cyclic) whose support lies in `phi`.
pub fn openness_reduction(spec: &AtomSpectrum, universe: &ClosureUniverse) -> Result<Verdict> {
    let mut reps: Vec<(usize, AtomSet)> = Vec::new();
    for m in universe.members() {
        if m.order() > TINY_ORDER || !is_monoform(m)? {
            continue;
        }
        let ass = spec.associated_atoms(m)?;
        if ass.len() != 1 {
            return Ok(Err(format!("monoform {} has associated atoms {ass:?}", name(m))));
        }
        reps.push((ass.iter().next().unwrap(), spec.atom_support(m)?));
    }
    for bits in 0..1u64 << spec.len() {
        let phi = AtomSet::from_bits(bits);
        let literal = phi
            .iter()
            .all(|a| reps.iter().any(|&(b, supp)| a == b && supp.is_subset(phi)));
        if literal != spec.is_open(phi) {
            return Ok(Err(format!("{phi:?}: literal {literal}, cyclic {}", !literal)));
        }
    }
    Ok(Ok(format!("{} monoform representatives", reps.len())))
}

/// Exact values for the lower-triangular 2x2 matrices over F_2.
pub fn lower_triangular_regression(spec: &AtomSpectrum) -> Result<Verdict> {
    let ideals = spec.right_ideals();
    // ids (a, b, c) -> 4a + 2b + c for [[a, 0], [b, c]]
    let set = |f: fn(usize) -> bool| ElemSet::from_ids(8, (0..8).filter(|&x| f(x)));
    let j = ElemSet::from_ids(8, [0, 2]);
    let p0 = ElemSet::from_ids(8, [0, 4]);
    let p1 = ElemSet::from_ids(8, [0, 6]);
    let m1 = set(|x| x & 4 == 0);
    let m2 = set(|x| x & 1 == 0);
    let mut expected = vec![ElemSet::zero(8), j.clone(), p0.clone(), p1.clone(), m1.clone(), m2.clone(), ElemSet::full(8)];
    expected.sort();
    if ideals != expected.as_slice() {
        return Ok(Err(format!("right ideals {ideals:?}")));
    }
    let mut co = vec![p0.clone(), p1.clone(), m1.clone(), m2.clone()];
    co.sort();
    if spec.comonoform_ideals() != co {
        return Ok(Err(format!("comonoform ideals {:?}", spec.comonoform_ideals())));
    }
    let a = |i: &ElemSet| spec.atom_of(i);
    if !(spec.len() == 2 && a(&p0) == a(&m1) && a(&p1) == a(&m1) && a(&m1) != a(&m2)) {
        return Ok(Err("atom classes differ".into()));
    }
    let serre = enumerate_serre(spec)?;
    if serre.subcategories.len() != 4 {
        return Ok(Err(format!("{} Serre subcategories", serre.subcategories.len())));
    }
    Ok(Ok("7 right ideals, 4 comonoform, 2 atoms, 4 Serre subcategories".into()))
}

fn all_hold<F>(mods: &[RightModule], mut f: F) -> Result<Verdict>
where
    F: FnMut(&RightModule) -> Result<Verdict>,
{
    for m in mods {
        if let Err(w) = f(m)? {
            return Ok(Err(w));
        }
    }
    Ok(Ok(format!("{} modules", mods.len())))
}

/// Runs every check on `ring`.
pub fn check_suite(ring: &Arc<FiniteRing>) -> Result<CheckReport> {
    let spec = AtomSpectrum::new(ring)?;
    let reg = spec.regular().clone();
    let universe = ClosureUniverse::build(&reg)?;
    let mods: Vec<RightModule> = universe
        .members()
        .iter()
        .filter(|m| m.order() <= SMALL_ORDER)
        .cloned()
        .collect();
    let cyclic: Vec<RightModule> = spec
        .right_ideals()
        .iter()
        .filter(|i| !i.is_full())
        .map(|i| cyclic_module(&spec, i).map(|m| m.with_provenance(format!("R/{i}"))))
        .collect::<Result<_>>()?;

    let mut outcomes = Vec::new();
    let mut push = |name: &'static str, verdict: Verdict| outcomes.push(PropertyOutcome { name, verdict });

    push("regular-module-axioms", reg.validate().map(|_| String::new()).map_err(|e| e.to_string()));
    push("lattice-closed-under-meet-and-join", all_hold(&mods, lattice_is_closed)?);
    push("quotient-orders-multiply", all_hold(&mods, quotient_orders_multiply)?);
    push("cyclic-submodule-is-ring-mod-annihilator", all_hold(&mods, |m| cyclic_matches_annihilator_quotient(&spec, m))?);
    push("composition-factors-series-independent", all_hold(&mods, jordan_holder)?);
    push("uniform-matches-pairwise-definition", all_hold(&mods, uniform_matches_definition)?);
    push("common-submodule-via-annihilators", reduction_lemma(&mods)?);
    push("submodules-of-monoform-are-monoform", all_hold(&mods, submodules_of_monoform)?);
    push("monoform-implies-uniform", all_hold(&mods, monoform_is_uniform)?);
    push("monoform-matches-socle-test", all_hold(&mods, oracle_agreement)?);
    push("monoform-matches-closure-criterion", all_hold(&mods, closure_criterion)?);
    let mut cache = ComonoformCache::new();
    push("monoform-filtration-valid", all_hold(&mods, |m| filtration_is_valid(&spec, m, &mut cache))?);
    push("maximal-monoform-submodule", all_hold(&mods, max_monoform_is_valid)?);
    push("atom-equivalence-is-equivalence", atom_equivalence_is_equivalence(&spec)?);
    push("comonoform-implies-completely-prime", comonoform_implies_completely_prime(&spec)?);
    push("support-exact-and-associated-sandwich", all_hold(&mods, |m| support_exactness(&spec, m))?);
    let sums = {
        let mut v = Ok(String::new());
        let small: Vec<&RightModule> = cyclic.iter().filter(|m| m.order() <= 16).collect();
        'outer: for (i, a) in small.iter().enumerate() {
            for b in &small[i..] {
                if a.order() * b.order() > 256 {
                    continue;
                }
                if let Err(w) = direct_sum_additivity(&spec, a, b)? {
                    v = Err(w);
                    break 'outer;
                }
            }
        }
        v
    };
    push("direct-sum-additivity", sums);
    push("discrete-topology", discreteness(&spec)?);
    push("open-set-roundtrip", open_set_roundtrip(&spec)?);
    push(
        "closure-oracle-matches-supports",
        closure_roundtrip(&spec, &universe, &generator_sets(&universe, 20, 0x5e44e), true)?,
    );
    push("membership-closed-under-subquotients-and-extensions", membership_is_serre(&spec, &universe)?);
    push("serre-lattice-matches-open-sets", serre_lattice_matches_open_sets(&spec)?);
    push("openness-via-cyclic-representatives", openness_reduction(&spec, &universe)?);
    let calc = calculus_check(&universe, 100, 0xca1c);
    push(
        "subcategory-calculus",
        if calc.passed() {
            Ok(format!("{} triples", calc.triples_checked))
        } else {
            Err(calc.violations.join("; "))
        },
    );
    if ring.is_commutative() {
        let r = commutative_crosscheck(&spec)?;
        push(
            "commutative-prime-spectrum",
            if r.passed() { Ok(format!("{} primes", r.primes.len())) } else { Err(format!("{r:?}")) },
        );
    }
    if **ring == tri2(2)? {
        push("lower-triangular-regression", lower_triangular_regression(&spec)?);
    }
    Ok(CheckReport {
        atoms: spec.len(),
        outcomes,
    })
}
