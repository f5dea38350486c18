//! Monoform modules, comonoform and completely prime right ideals, monoform
//! filtrations and maximal monoform submodules.
//!
//! A nonzero module `H` is monoform when no nonzero quotient `H/N` shares a
//! nonzero submodule with `H`. Sharing a nonzero submodule is decided through
//! annihilator sets (see [`crate::module::share_nonzero_submodule`]), so the
//! test reduces to: for every nonzero submodule `N`, no `Ann(x+N)` with
//! `x ∉ N` equals `Ann(y)` for a nonzero `y`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{
    composition_factors, is_uniform, minimal_submodules, simple_class_of_section, socle,
    submodule_lattice,
};
use crate::module::{annihilator_set, cyclic_members, quotient_module, regular_module, RightIdeal, RightModule};
use crate::ring::FiniteRing;

pub fn is_monoform(m: &RightModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let anns = annihilator_set(m);
    let lattice = submodule_lattice(m)?;
    Ok(is_monoform_with(m, &anns, &lattice))
}

pub(crate) fn is_monoform_with(m: &RightModule, anns: &BTreeSet<RightIdeal>, lattice: &[ElemSet]) -> bool {
    if m.is_zero() {
        return false;
    }
    for n in lattice.iter().filter(|n| n.len() > 1) {
        for x in m.elements().filter(|&x| !n.contains(x)) {
            if anns.contains(&m.relative_annihilator(x, n)) {
                return false;
            }
        }
    }
    true
}

/// Monoformity over an artinian ring: a simple socle whose class occurs
/// exactly once among the composition factors.
pub fn monoform_oracle_artinian(m: &RightModule) -> bool {
    if m.is_zero() {
        return false;
    }
    let minimal = minimal_submodules(m);
    if minimal.len() != 1 {
        return false;
    }
    let soc = socle(m);
    let class = simple_class_of_section(m, &m.zero_submodule(), &soc);
    composition_factors(m).get(&class).copied() == Some(1)
}

fn check_proper_ideal(ring: &Arc<FiniteRing>, ideal: &RightIdeal) -> Result<RightModule> {
    let reg = regular_module(ring);
    reg.check_submodule(ideal)?;
    if ideal.is_full() {
        return Err(Error::UnitIdeal);
    }
    Ok(reg)
}

/// `R/I` is monoform.
pub fn is_comonoform(ring: &Arc<FiniteRing>, ideal: &RightIdeal) -> Result<bool> {
    let reg = check_proper_ideal(ring, ideal)?;
    let (q, _) = quotient_module(&reg, ideal)?;
    is_monoform(&q)
}

/// `aI ⊆ I` and `ab ∈ I` imply `a ∈ I` or `b ∈ I`, checked over all pairs.
pub fn is_completely_prime(ring: &Arc<FiniteRing>, ideal: &RightIdeal) -> Result<bool> {
    check_proper_ideal(ring, ideal)?;
    for a in ring.elements().filter(|&a| !ideal.contains(a)) {
        if !ideal.iter().all(|i| ideal.contains(ring.mul(a, i))) {
            continue;
        }
        for b in ring.elements().filter(|&b| !ideal.contains(b)) {
            if ideal.contains(ring.mul(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A chain `0 = L_0 ⊂ .. ⊂ L_k = M` with `L_i/L_{i-1} ≅ R/p_i`, `p_i`
/// comonoform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub chain: Vec<ElemSet>,
    pub labels: Vec<RightIdeal>,
    /// Generator `x_i` with `L_i = L_{i-1} + x_i R`.
    pub generators: Vec<usize>,
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Memoizes comonoformity of right ideals of one ring.
#[derive(Default)]
pub struct ComonoformCache {
    known: HashMap<RightIdeal, bool>,
}

impl ComonoformCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_comonoform(&mut self, ring: &Arc<FiniteRing>, ideal: &RightIdeal) -> Result<bool> {
        if let Some(&b) = self.known.get(ideal) {
            return Ok(b);
        }
        let b = is_comonoform(ring, ideal)?;
        self.known.insert(ideal.clone(), b);
        Ok(b)
    }
}

/// Builds a filtration with cyclic monoform factors. Each step takes the
/// smallest element id `x ∉ L` whose annihilator modulo `L` is comonoform.
pub fn monoform_filtration(m: &RightModule) -> Result<Filtration> {
    monoform_filtration_cached(m, &mut ComonoformCache::new())
}

pub fn monoform_filtration_cached(m: &RightModule, cache: &mut ComonoformCache) -> Result<Filtration> {
    let ring = m.ring().clone();
    let mut current = m.zero_submodule();
    let mut out = Filtration {
        chain: vec![current.clone()],
        labels: Vec::new(),
        generators: Vec::new(),
    };
    while !current.is_full() {
        let mut step = None;
        for x in m.elements().filter(|&x| !current.contains(x)) {
            let ann = m.relative_annihilator(x, &current);
            if cache.is_comonoform(&ring, &ann)? {
                step = Some((x, ann));
                break;
            }
        }
        // every nonzero module has a monoform submodule, hence a cyclic one
        let (x, ann) = step.expect("nonzero quotient without a comonoform annihilator");
        current = m.sum(&current, &cyclic_members(m, x));
        out.chain.push(current.clone());
        out.labels.push(ann);
        out.generators.push(x);
    }
    Ok(out)
}

/// The unique maximal monoform submodule of a uniform module: the sum of all
/// cyclic monoform submodules, verified against the full lattice.
pub fn max_monoform_submodule(m: &RightModule) -> Result<ElemSet> {
    if !is_uniform(m) {
        return Err(Error::NotUniform);
    }
    let lattice = submodule_lattice(m)?;
    let ring = m.ring().clone();
    let mut cache = ComonoformCache::new();
    let zero = m.zero_submodule();
    let mut sum = m.zero_submodule();
    for x in m.elements().skip(1) {
        // xR ≅ R/Ann(x)
        if cache.is_comonoform(&ring, &m.relative_annihilator(x, &zero))? {
            sum = m.sum(&sum, &cyclic_members(m, x));
        }
    }
    let as_module = |s: &ElemSet| crate::module::submodule_module(m, s);
    if !is_monoform(&as_module(&sum)?)? {
        return Err(Error::Invariant(format!(
            "sum of cyclic monoform submodules {sum} is not monoform"
        )));
    }
    for s in lattice.iter().filter(|s| s.len() > 1) {
        if !s.is_subset(&sum) && is_monoform(&as_module(s)?)? {
            return Err(Error::Invariant(format!(
                "monoform submodule {s} escapes {sum}"
            )));
        }
    }
    Ok(sum)
}
