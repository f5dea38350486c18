//! Submodule lattices and the structure read off them: socles, uniformity and
//! composition factors.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::module::{cyclic_members, RightIdeal, RightModule};

/// All submodules of `m`, sorted by (cardinality, members).
///
/// Every submodule is a finite join of cyclic submodules, so the lattice is the
/// closure of `{0}` under `S ↦ S + xR`.
pub fn submodule_lattice(m: &RightModule) -> Result<Vec<ElemSet>> {
    let cap = m.ring().limits().max_lattice;
    let cyclics = distinct_cyclics(m);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut queue = VecDeque::new();
    let zero = m.zero_submodule();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(s) = queue.pop_front() {
        for c in &cyclics {
            if c.is_subset(&s) {
                continue;
            }
            let t = m.sum(&s, c);
            if !seen.contains(&t) {
                if seen.len() >= cap {
                    return Err(Error::LatticeCap {
                        module_order: m.order(),
                        cap,
                    });
                }
                seen.insert(t.clone());
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<ElemSet> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Distinct nonzero cyclic submodules, canonically ordered.
pub fn distinct_cyclics(m: &RightModule) -> Vec<ElemSet> {
    let set: BTreeSet<ElemSet> = m
        .elements()
        .skip(1)
        .map(|x| cyclic_members(m, x))
        .collect();
    set.into_iter().collect()
}

/// Minimal nonzero submodules. Each is cyclic, so it is enough to keep the
/// cyclic submodules that contain no smaller nonzero cyclic one.
pub fn minimal_submodules(m: &RightModule) -> Vec<ElemSet> {
    let cyclics = distinct_cyclics(m);
    cyclics
        .iter()
        .filter(|c| {
            !cyclics
                .iter()
                .any(|d| d.len() < c.len() && d.is_subset(c))
        })
        .cloned()
        .collect()
}

pub fn socle(m: &RightModule) -> ElemSet {
    minimal_submodules(m)
        .iter()
        .fold(m.zero_submodule(), |acc, s| m.sum(&acc, s))
}

/// Nonzero with exactly one minimal nonzero submodule.
pub fn is_uniform(m: &RightModule) -> bool {
    !m.is_zero() && minimal_submodules(m).len() == 1
}

/// The definition read literally: nonzero and no two nonzero submodules meet
/// in zero.
pub fn is_uniform_pairwise(m: &RightModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let lattice = submodule_lattice(m)?;
    let nonzero: Vec<&ElemSet> = lattice.iter().filter(|s| s.len() > 1).collect();
    for (i, a) in nonzero.iter().enumerate() {
        for b in &nonzero[i + 1..] {
            if a.intersection(b).len() == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Isomorphism class of a simple module, named by the canonically smallest
/// maximal right ideal `m` with `R/m` in the class.
///
/// For a simple `S` the annihilators of its nonzero elements are exactly the
/// maximal right ideals `m` with `R/m ≅ S`, so the minimum over them is an
/// invariant of the class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleClass(pub RightIdeal);

/// Class of the simple section `upper/lower`.
pub fn simple_class_of_section(m: &RightModule, lower: &ElemSet, upper: &ElemSet) -> SimpleClass {
    let handle = upper
        .difference(lower)
        .iter()
        .map(|x| m.relative_annihilator(x, lower))
        .min()
        .expect("simple section is nonzero");
    SimpleClass(handle)
}

/// Multiset of composition factors.
pub type CompositionFactors = BTreeMap<SimpleClass, usize>;

/// A composition series `0 = L_0 ⊂ .. ⊂ L_k = M` built bottom-up: each step
/// adjoins a minimal nonzero submodule of the current quotient.
pub fn composition_series(m: &RightModule) -> Vec<ElemSet> {
    let mut chain = vec![m.zero_submodule()];
    let mut current = m.zero_submodule();
    while !current.is_full() {
        // the smallest L + xR strictly above L is a minimal step
        let next = m
            .elements()
            .filter(|&x| !current.contains(x))
            .map(|x| m.sum(&current, &cyclic_members(m, x)))
            .min()
            .expect("a proper submodule leaves elements outside");
        chain.push(next.clone());
        current = next;
    }
    chain
}

fn factors_of_chain(m: &RightModule, chain: &[ElemSet]) -> CompositionFactors {
    let mut out = CompositionFactors::new();
    for w in chain.windows(2) {
        let (lo, hi) = if w[0].is_subset(&w[1]) { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
        *out.entry(simple_class_of_section(m, lo, hi)).or_insert(0) += 1;
    }
    out
}

pub fn composition_factors(m: &RightModule) -> CompositionFactors {
    factors_of_chain(m, &composition_series(m))
}

/// Composition factors from a top-down series of successive maximal
/// submodules. Used to cross-check [`composition_factors`].
pub fn composition_factors_top_down(m: &RightModule) -> Result<CompositionFactors> {
    let lattice = submodule_lattice(m)?;
    let mut chain = vec![m.full_submodule()];
    let mut current = m.full_submodule();
    while current.len() > 1 {
        // the largest proper submodule of `current` is maximal in it
        let next = lattice
            .iter()
            .filter(|s| s.len() < current.len() && s.is_subset(&current))
            .max_by_key(|s| s.len())
            .expect("zero submodule is below everything")
            .clone();
        chain.push(next.clone());
        current = next;
    }
    Ok(factors_of_chain(m, &chain))
}

pub fn composition_length(m: &RightModule) -> usize {
    composition_series(m).len() - 1
}

/// True iff `m` is nonzero and has no submodules besides 0 and itself.
pub fn is_simple(m: &RightModule) -> bool {
    !m.is_zero() && m.elements().skip(1).all(|x| cyclic_members(m, x).is_full())
}
