//! The atom spectrum of a finite ring.
//!
//! Atoms are atom-equivalence classes of monoform modules. Every atom of a
//! ring is represented by a cyclic module `R/p` with `p` a comonoform right
//! ideal, so the spectrum is computed as a partition of the comonoform right
//! ideals: `p ~ q` iff `R/p` and `R/q` share a nonzero submodule.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::lattice::submodule_lattice;
use crate::module::{annihilator_set, quotient_module, regular_module, RightIdeal, RightModule};
use crate::monoform::{is_monoform_with, monoform_filtration};
use crate::ring::FiniteRing;

/// Largest number of atoms an [`AtomSet`] can hold.
pub const MAX_ATOMS: usize = 64;

/// Largest spectrum whose powerset is scanned for open sets.
pub const MAX_ENUMERATED_ATOMS: usize = 20;

/// A set of atom ids.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AtomSet(u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn from_bits(bits: u64) -> Self {
        AtomSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(id: usize) -> Self {
        AtomSet(1 << id)
    }

    pub fn insert(&mut self, id: usize) {
        self.0 |= 1 << id;
    }

    pub fn contains(self, id: usize) -> bool {
        self.0 >> id & 1 == 1
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for AtomSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = AtomSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Canonical order: by size, then by ascending member list.
impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub id: usize,
    /// Canonically smallest comonoform right ideal in the class.
    pub canonical_rep: RightIdeal,
    /// All comonoform right ideals in the class, canonically ordered.
    pub members: Vec<RightIdeal>,
}

/// An open subset of the atom spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenSet {
    pub members: AtomSet,
}

pub struct AtomSpectrum {
    ring: Arc<FiniteRing>,
    regular: RightModule,
    right_ideals: Vec<RightIdeal>,
    atoms: Vec<Atom>,
    atom_of: HashMap<RightIdeal, usize>,
    support_cache: HashMap<RightIdeal, AtomSet>,
}

impl fmt::Debug for AtomSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtomSpectrum")
            .field("ring", &self.ring)
            .field("atoms", &self.atoms)
            .finish_non_exhaustive()
    }
}

/// Annihilator set of `R/I`, computed inside the regular module.
fn cyclic_annihilators(reg: &RightModule, ideal: &RightIdeal) -> BTreeSet<RightIdeal> {
    reg.elements()
        .filter(|&x| !ideal.contains(x))
        .map(|x| reg.relative_annihilator(x, ideal))
        .collect()
}

fn comonoform_in(reg: &RightModule, ideal: &RightIdeal) -> Result<bool> {
    if ideal.is_full() {
        return Ok(false);
    }
    let (q, _) = quotient_module(reg, ideal)?;
    let anns = annihilator_set(&q);
    let lattice = submodule_lattice(&q)?;
    Ok(is_monoform_with(&q, &anns, &lattice))
}

/// Whether the comonoform ideals `p` and `q` define the same atom.
pub fn atom_equivalent(ring: &Arc<FiniteRing>, p: &RightIdeal, q: &RightIdeal) -> Result<bool> {
    let reg = regular_module(ring);
    for i in [p, q] {
        reg.check_submodule(i)?;
        if !comonoform_in(&reg, i)? {
            return Err(Error::NotComonoform(i.to_string()));
        }
    }
    let a = cyclic_annihilators(&reg, p);
    Ok(cyclic_annihilators(&reg, q).iter().any(|i| a.contains(i)))
}

impl AtomSpectrum {
    pub fn new(ring: &Arc<FiniteRing>) -> Result<Self> {
        let reg = regular_module(ring);
        let right_ideals = submodule_lattice(&reg)?;
        let mut comonoform = Vec::new();
        for i in &right_ideals {
            if comonoform_in(&reg, i)? {
                comonoform.push(i.clone());
            }
        }
        let anns: Vec<BTreeSet<RightIdeal>> =
            comonoform.iter().map(|p| cyclic_annihilators(&reg, p)).collect();
        let mut uf = UnionFind::<usize>::new(comonoform.len());
        // ideals sharing an annihilator are equivalent; bucket by annihilator
        let mut first_with: HashMap<&RightIdeal, usize> = HashMap::new();
        for (k, set) in anns.iter().enumerate() {
            for ann in set {
                match first_with.get(ann) {
                    Some(&j) => {
                        uf.union(j, k);
                    }
                    None => {
                        first_with.insert(ann, k);
                    }
                }
            }
        }
        let mut classes: HashMap<usize, Vec<RightIdeal>> = HashMap::new();
        for (k, p) in comonoform.iter().enumerate() {
            classes.entry(uf.find(k)).or_default().push(p.clone());
        }
        let mut classes: Vec<Vec<RightIdeal>> = classes.into_values().collect();
        for c in &mut classes {
            c.sort();
        }
        classes.sort_by(|a, b| a[0].cmp(&b[0]));
        if classes.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                count: classes.len(),
                max: MAX_ATOMS,
            });
        }
        let atoms: Vec<Atom> = classes
            .into_iter()
            .enumerate()
            .map(|(id, members)| Atom {
                id,
                canonical_rep: members[0].clone(),
                members,
            })
            .collect();
        let atom_of = atoms
            .iter()
            .flat_map(|a| a.members.iter().map(move |p| (p.clone(), a.id)))
            .collect();
        let mut spec = AtomSpectrum {
            ring: ring.clone(),
            regular: reg,
            right_ideals,
            atoms,
            atom_of,
            support_cache: HashMap::new(),
        };
        let mut cache = HashMap::new();
        for p in spec.comonoform_ideals() {
            let (q, _) = quotient_module(&spec.regular, &p)?;
            cache.insert(p, spec.atom_support(&q)?);
        }
        spec.support_cache = cache;
        Ok(spec)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn regular(&self) -> &RightModule {
        &self.regular
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn full(&self) -> AtomSet {
        AtomSet::full(self.atoms.len())
    }

    /// All right ideals of the ring, canonically ordered.
    pub fn right_ideals(&self) -> &[RightIdeal] {
        &self.right_ideals
    }

    pub fn comonoform_ideals(&self) -> Vec<RightIdeal> {
        let mut v: Vec<RightIdeal> = self.atom_of.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn is_comonoform(&self, ideal: &RightIdeal) -> bool {
        self.atom_of.contains_key(ideal)
    }

    /// Atom of the comonoform ideal `p`.
    pub fn atom_of(&self, p: &RightIdeal) -> Option<usize> {
        self.atom_of.get(p).copied()
    }

    /// Cached atom support of `R/p` for comonoform `p`.
    pub fn cyclic_support(&self, p: &RightIdeal) -> Option<AtomSet> {
        self.support_cache.get(p).copied()
    }

    fn check_ring(&self, m: &RightModule) -> Result<()> {
        if Arc::ptr_eq(m.ring(), &self.ring) || **m.ring() == *self.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Atoms represented by a subquotient of `m`. It suffices to look at
    /// cyclic subquotients `(x+N)R ≅ R/Ann(x+N)`.
    pub fn atom_support(&self, m: &RightModule) -> Result<AtomSet> {
        self.check_ring(m)?;
        let lattice = submodule_lattice(m)?;
        let full = self.full();
        let mut out = AtomSet::EMPTY;
        for n in &lattice {
            for x in m.elements().filter(|&x| !n.contains(x)) {
                if let Some(a) = self.atom_of(&m.relative_annihilator(x, n)) {
                    out.insert(a);
                    if out == full {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Atoms represented by a submodule of `m`.
    pub fn associated_atoms(&self, m: &RightModule) -> Result<AtomSet> {
        self.check_ring(m)?;
        let zero = m.zero_submodule();
        Ok(m.elements()
            .skip(1)
            .filter_map(|x| self.atom_of(&m.relative_annihilator(x, &zero)))
            .collect())
    }

    /// `phi` is open when each of its atoms has some representative whose
    /// support stays inside `phi`. Cyclic representatives `R/q` suffice.
    pub fn is_open(&self, phi: AtomSet) -> bool {
        phi.iter().all(|alpha| {
            alpha < self.atoms.len()
                && self.atoms[alpha]
                    .members
                    .iter()
                    .any(|q| self.support_cache[q].is_subset(phi))
        })
    }

    /// All open sets, canonically ordered, after checking closure under
    /// union and intersection.
    pub fn enumerate_open_sets(&self) -> Result<Vec<OpenSet>> {
        let n = self.atoms.len();
        if n > MAX_ENUMERATED_ATOMS {
            return Err(Error::TooManyAtoms {
                count: n,
                max: MAX_ENUMERATED_ATOMS,
            });
        }
        let mut open: Vec<AtomSet> = (0..1u64 << n)
            .map(AtomSet::from_bits)
            .filter(|&s| self.is_open(s))
            .collect();
        open.sort();
        let lookup: std::collections::HashSet<AtomSet> = open.iter().copied().collect();
        for &a in &open {
            for &b in &open {
                if !lookup.contains(&a.union(b)) || !lookup.contains(&a.intersection(b)) {
                    return Err(Error::Invariant(format!(
                        "open sets {a:?} and {b:?} are not closed under union/intersection"
                    )));
                }
            }
        }
        Ok(open.into_iter().map(|members| OpenSet { members }).collect())
    }

    /// Maximal right ideals (coatoms of the right ideal lattice).
    pub fn maximal_right_ideals(&self) -> Vec<RightIdeal> {
        let proper: Vec<&RightIdeal> = self.right_ideals.iter().filter(|i| !i.is_full()).collect();
        proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
            .map(|i| (*i).clone())
            .collect()
    }
}

/// Outcome of comparing the atom spectrum of a commutative ring against the
/// prime spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub primes: Vec<RightIdeal>,
    pub comonoform_equals_prime: bool,
    pub singleton_classes: bool,
    pub open_equals_specialization_closed: bool,
    /// Per test module: provenance, atom support, classical support.
    pub supports: Vec<(String, AtomSet, AtomSet)>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.comonoform_equals_prime
            && self.singleton_classes
            && self.open_equals_specialization_closed
            && self.supports.iter().all(|(_, a, b)| a == b)
    }
}

/// Prime ideals by the classical definition: proper, and `ab ∈ P` implies
/// `a ∈ P` or `b ∈ P`.
pub fn prime_ideals(ring: &FiniteRing, ideals: &[RightIdeal]) -> Vec<RightIdeal> {
    ideals
        .iter()
        .filter(|p| !p.is_full())
        .filter(|p| {
            // two-sided
            p.iter().all(|x| ring.elements().all(|a| p.contains(ring.mul(a, x))))
        })
        .filter(|p| {
            ring.elements()
                .filter(|&a| !p.contains(a))
                .all(|a| ring.elements().filter(|&b| !p.contains(b)).all(|b| !p.contains(ring.mul(a, b))))
        })
        .cloned()
        .collect()
}

/// Compares the atom spectrum of a commutative ring with its prime spectrum:
/// comonoform ideals against primes, atom classes against singletons, open
/// sets against specialization-closed sets, and atom supports against
/// classical supports computed from a filtration with cyclic prime factors
/// (`Supp(R/p) = {q : p ⊆ q}`, additive along the filtration).
pub fn commutative_crosscheck(spec: &AtomSpectrum) -> Result<CrosscheckReport> {
    let ring = spec.ring();
    if let Some((a, b)) = ring.noncommuting_pair() {
        return Err(Error::NotCommutative { a, b });
    }
    let primes = prime_ideals(ring, spec.right_ideals());
    let comonoform = spec.comonoform_ideals();
    let comonoform_equals_prime = primes == comonoform;
    let singleton_classes = spec.atoms().iter().all(|a| a.members.len() == 1);

    let atom_of_prime = |p: &RightIdeal| spec.atom_of(p);
    let upward = |phi: AtomSet| {
        primes.iter().all(|p| match atom_of_prime(p) {
            Some(a) if phi.contains(a) => primes
                .iter()
                .filter(|q| p.is_subset(q))
                .all(|q| atom_of_prime(q).is_some_and(|b| phi.contains(b))),
            _ => true,
        })
    };
    let open: BTreeSet<AtomSet> = spec.enumerate_open_sets()?.into_iter().map(|o| o.members).collect();
    let specialization_closed: BTreeSet<AtomSet> = (0..1u64 << spec.len())
        .map(AtomSet::from_bits)
        .filter(|&s| upward(s))
        .collect();
    let open_equals_specialization_closed = comonoform_equals_prime && open == specialization_closed;

    let reg = spec.regular();
    let mut modules = vec![reg.clone()];
    for i in spec.right_ideals().iter().filter(|i| !i.is_full() && i.len() > 1) {
        modules.push(quotient_module(reg, i)?.0);
    }
    let mut supports = Vec::new();
    for m in &modules {
        let filtration = monoform_filtration(m)?;
        let mut classical = AtomSet::EMPTY;
        for label in &filtration.labels {
            for q in primes.iter().filter(|q| label.is_subset(q)) {
                if let Some(a) = atom_of_prime(q) {
                    classical.insert(a);
                }
            }
        }
        let name = m.provenance().unwrap_or("module").to_string();
        supports.push((name, spec.atom_support(m)?, classical));
    }
    Ok(CrosscheckReport {
        primes,
        comonoform_equals_prime,
        singleton_classes,
        open_equals_specialization_closed,
        supports,
    })
}
