//! Serre subcategories of finitely generated modules, represented by open
//! subsets of the atom spectrum, and a bounded closure oracle that computes
//! Serre closures by brute force inside the subquotients of one ambient
//! module.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::lattice::submodule_lattice;
use crate::module::{quotient_module, RightIdeal, RightModule};
use crate::spectrum::{AtomSet, AtomSpectrum, OpenSet, MAX_ENUMERATED_ATOMS};

/// A Serre subcategory, stored as the open set of atoms its members may be
/// supported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreSubcategory {
    pub open_set: OpenSet,
    /// Labels of the modules it was generated from, when known.
    pub generators: Option<Vec<String>>,
}

/// Smallest Serre subcategory containing `mods`: the union of their supports.
pub fn serre_from_generators(spec: &AtomSpectrum, mods: &[RightModule]) -> Result<SerreSubcategory> {
    let mut phi = AtomSet::EMPTY;
    for m in mods {
        phi = phi.union(spec.atom_support(m)?);
    }
    if !spec.is_open(phi) {
        return Err(Error::Invariant(format!("support union {phi:?} is not open")));
    }
    Ok(SerreSubcategory {
        open_set: OpenSet { members: phi },
        generators: Some(
            mods.iter()
                .map(|m| m.provenance().unwrap_or("module").to_string())
                .collect(),
        ),
    })
}

/// Membership: the atom support of `m` lies in the open set.
pub fn serre_contains(spec: &AtomSpectrum, s: &SerreSubcategory, m: &RightModule) -> Result<bool> {
    Ok(spec.atom_support(m)?.is_subset(s.open_set.members))
}

/// All Serre subcategories with their inclusion order.
#[derive(Clone, Debug)]
pub struct SerreLattice {
    pub subcategories: Vec<SerreSubcategory>,
    /// Comonoform ideals `q` whose cyclic modules `R/q` generate each
    /// subcategory, chosen greedily.
    pub generating_ideals: Vec<Vec<RightIdeal>>,
    /// Covering pairs `(lower, upper)` of the Hasse diagram, as indices.
    pub covers: Vec<(usize, usize)>,
}

impl SerreLattice {
    /// Plain-text graph description: one node per subcategory, one edge per
    /// covering relation, lower to upper.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph serre {\n  rankdir=BT;\n");
        for (i, s) in self.subcategories.iter().enumerate() {
            let atoms: Vec<String> = s.open_set.members.iter().map(|a| a.to_string()).collect();
            out.push_str(&format!("  \"s{i}\" [label=\"{{{}}}\"];\n", atoms.join(",")));
        }
        for &(lo, hi) in &self.covers {
            out.push_str(&format!("  \"s{lo}\" -> \"s{hi}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn enumerate_serre(spec: &AtomSpectrum) -> Result<SerreLattice> {
    if spec.len() > MAX_ENUMERATED_ATOMS {
        return Err(Error::TooManyAtoms {
            count: spec.len(),
            max: MAX_ENUMERATED_ATOMS,
        });
    }
    let open = spec.enumerate_open_sets()?;
    // candidates ordered by support size, then canonically
    let mut candidates: Vec<(AtomSet, RightIdeal)> = spec
        .comonoform_ideals()
        .into_iter()
        .map(|q| (spec.cyclic_support(&q).expect("cached"), q))
        .collect();
    candidates.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.1.cmp(&b.1)));

    let mut subcategories = Vec::new();
    let mut generating_ideals = Vec::new();
    for o in &open {
        let phi = o.members;
        let mut covered = AtomSet::EMPTY;
        let mut gens = Vec::new();
        for (supp, q) in &candidates {
            if covered == phi {
                break;
            }
            if supp.is_subset(phi) && !supp.is_subset(covered) {
                covered = covered.union(*supp);
                gens.push(q.clone());
            }
        }
        if covered != phi {
            return Err(Error::Invariant(format!(
                "open set {phi:?} is not a union of cyclic supports"
            )));
        }
        subcategories.push(SerreSubcategory {
            open_set: *o,
            generators: Some(gens.iter().map(|q| format!("R/{q}")).collect()),
        });
        generating_ideals.push(gens);
    }
    let mut covers = Vec::new();
    for (i, a) in open.iter().enumerate() {
        for (j, b) in open.iter().enumerate() {
            let (a, b) = (a.members, b.members);
            if i == j || !a.is_subset(b) || a == b {
                continue;
            }
            let between = open.iter().any(|c| {
                let c = c.members;
                c != a && c != b && a.is_subset(c) && c.is_subset(b)
            });
            if !between {
                covers.push((i, j));
            }
        }
    }
    Ok(SerreLattice {
        subcategories,
        generating_ideals,
        covers,
    })
}

/// Isomorphism classes of all subquotients of an ambient module, with the
/// subobject, quotient and extension relations among them.
pub struct ClosureUniverse {
    ambient: RightModule,
    lattice: Vec<ElemSet>,
    /// One representative module per class.
    members: Vec<RightModule>,
    /// `(lower, upper)` lattice indices of each class representative.
    rep_section: Vec<(usize, usize)>,
    subs: Vec<BTreeSet<usize>>,
    quots: Vec<BTreeSet<usize>>,
    subquots: Vec<BTreeSet<usize>>,
    /// `(L, E, N)`: the class `E` has a submodule in class `L` with quotient
    /// in class `N`.
    extensions: BTreeSet<(usize, usize, usize)>,
    section_class: HashMap<(usize, usize), usize>,
    zero: usize,
}

fn invariant_key(m: &RightModule) -> (usize, Vec<RightIdeal>) {
    let zero = m.zero_submodule();
    let mut anns: Vec<RightIdeal> = m.elements().map(|x| m.relative_annihilator(x, &zero)).collect();
    anns.sort();
    (m.order(), anns)
}

impl ClosureUniverse {
    pub fn build(ambient: &RightModule) -> Result<Self> {
        let lattice = submodule_lattice(ambient)?;
        let cap = ambient.ring().limits().max_lattice;
        let k = lattice.len();
        let mut pairs = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if lattice[i].is_subset(&lattice[j]) {
                    pairs.push((i, j));
                    if pairs.len() > cap {
                        return Err(Error::UniverseCap { cap });
                    }
                }
            }
        }
        let mut members: Vec<RightModule> = Vec::new();
        let mut rep_section = Vec::new();
        let mut by_key: HashMap<(usize, Vec<RightIdeal>), Vec<usize>> = HashMap::new();
        let mut section_class = HashMap::new();
        for &(i, j) in &pairs {
            let (sec, _) = ambient.section_unchecked(&lattice[i], &lattice[j], None);
            let key = invariant_key(&sec);
            let bucket = by_key.entry(key).or_default();
            let found = bucket.iter().copied().find(|&c| is_isomorphic(&members[c], &sec));
            let class = match found {
                Some(c) => c,
                None => {
                    let c = members.len();
                    let sec = sec.with_provenance(format!("{}/{}", lattice[j], lattice[i]));
                    members.push(sec);
                    rep_section.push((i, j));
                    bucket.push(c);
                    c
                }
            };
            section_class.insert((i, j), class);
        }
        let zero = section_class[&(0, 0)];
        let n = members.len();
        let mut subs = vec![BTreeSet::new(); n];
        let mut quots = vec![BTreeSet::new(); n];
        let mut subquots = vec![BTreeSet::new(); n];
        let mut extensions = BTreeSet::new();
        for c in 0..n {
            let (lo, hi) = rep_section[c];
            let inside: Vec<usize> = (0..k)
                .filter(|&t| lattice[lo].is_subset(&lattice[t]) && lattice[t].is_subset(&lattice[hi]))
                .collect();
            for &a in &inside {
                let sub = section_class[&(lo, a)];
                let quot = section_class[&(a, hi)];
                subs[c].insert(sub);
                quots[c].insert(quot);
                extensions.insert((sub, c, quot));
                for &b in &inside {
                    if lattice[a].is_subset(&lattice[b]) {
                        subquots[c].insert(section_class[&(a, b)]);
                    }
                }
            }
        }
        Ok(ClosureUniverse {
            ambient: ambient.clone(),
            lattice,
            members,
            rep_section,
            subs,
            quots,
            subquots,
            extensions,
            section_class,
            zero,
        })
    }

    pub fn ambient(&self) -> &RightModule {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[RightModule] {
        &self.members
    }

    pub fn zero_class(&self) -> usize {
        self.zero
    }

    /// Class of the ambient module itself.
    pub fn ambient_class(&self) -> usize {
        self.section_class[&(0, self.lattice.len() - 1)]
    }

    /// Class of the section `upper/lower` of the ambient module.
    pub fn class_of_section(&self, lower: &ElemSet, upper: &ElemSet) -> Option<usize> {
        let i = self.lattice.binary_search(lower).ok()?;
        let j = self.lattice.binary_search(upper).ok()?;
        self.section_class.get(&(i, j)).copied()
    }

    /// Class of the quotient `ambient/n`.
    pub fn class_of_quotient(&self, n: &ElemSet) -> Option<usize> {
        self.class_of_section(n, self.lattice.last()?)
    }

    pub fn ambient_lattice(&self) -> &[ElemSet] {
        &self.lattice
    }

    /// Class of an arbitrary module, if it occurs in the universe.
    pub fn find(&self, m: &RightModule) -> Option<usize> {
        let key = invariant_key(m);
        (0..self.members.len())
            .find(|&c| invariant_key(&self.members[c]) == key && is_isomorphic(&self.members[c], m))
    }

    pub fn extensions(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.extensions
    }

    pub fn representative_section(&self, class: usize) -> (&ElemSet, &ElemSet) {
        let (i, j) = self.rep_section[class];
        (&self.lattice[i], &self.lattice[j])
    }

    pub fn sub(&self, x: &BTreeSet<usize>) -> BTreeSet<usize> {
        x.iter().flat_map(|&c| self.subs[c].iter().copied()).collect()
    }

    pub fn quot(&self, x: &BTreeSet<usize>) -> BTreeSet<usize> {
        x.iter().flat_map(|&c| self.quots[c].iter().copied()).collect()
    }

    /// `X * Y`: classes `E` with a submodule in `X` and quotient in `Y`.
    pub fn ext_product(&self, x: &BTreeSet<usize>, y: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.extensions
            .iter()
            .filter(|(l, _, n)| x.contains(l) && y.contains(n))
            .map(|&(_, e, _)| e)
            .collect()
    }
}

/// Least subset of the universe containing `gens` and the zero class that is
/// closed under subquotients and recorded extensions.
pub fn closure_oracle(universe: &ClosureUniverse, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut closed: BTreeSet<usize> = gens.clone();
    closed.insert(universe.zero);
    loop {
        let mut next = closed.clone();
        for &c in &closed {
            next.extend(universe.subquots[c].iter().copied());
        }
        for &(l, e, n) in &universe.extensions {
            if next.contains(&l) && next.contains(&n) {
                next.insert(e);
            }
        }
        if next == closed {
            return closed;
        }
        closed = next;
    }
}

/// Result of [`calculus_check`].
#[derive(Clone, Debug, Default)]
pub struct CalculusReport {
    pub triples_checked: usize,
    pub violations: Vec<String>,
}

impl CalculusReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn random_subset<R: Rng>(rng: &mut R, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

fn subset_str(s: &BTreeSet<usize>) -> String {
    format!("{s:?}")
}

/// Checks the subcategory calculus on random triples of member sets:
/// `sub∘quot = quot∘sub`, associativity of `*`, and
/// `sub(X*Y) ⊆ sub X * sub Y` with its quotient analogue.
pub fn calculus_check(universe: &ClosureUniverse, samples: usize, seed: u64) -> CalculusReport {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let n = universe.len();
    let mut report = CalculusReport::default();
    for _ in 0..samples {
        let x = random_subset(&mut rng, n);
        let y = random_subset(&mut rng, n);
        let z = random_subset(&mut rng, n);
        check_triple(universe, &x, &y, &z, &mut report);
    }
    report
}

pub fn check_triple(
    u: &ClosureUniverse,
    x: &BTreeSet<usize>,
    y: &BTreeSet<usize>,
    z: &BTreeSet<usize>,
    report: &mut CalculusReport,
) {
    report.triples_checked += 1;
    let w = || format!("X={} Y={} Z={}", subset_str(x), subset_str(y), subset_str(z));
    if u.sub(&u.quot(x)) != u.quot(&u.sub(x)) {
        report.violations.push(format!("sub(quot X) != quot(sub X) for {}", w()));
    }
    let left = u.ext_product(&u.ext_product(x, y), z);
    let right = u.ext_product(x, &u.ext_product(y, z));
    if left != right {
        report.violations.push(format!("(X*Y)*Z != X*(Y*Z) for {}", w()));
    }
    let xy = u.ext_product(x, y);
    if !u.sub(&xy).is_subset(&u.ext_product(&u.sub(x), &u.sub(y))) {
        report.violations.push(format!("sub(X*Y) not in sub X * sub Y for {}", w()));
    }
    if !u.quot(&xy).is_subset(&u.ext_product(&u.quot(x), &u.quot(y))) {
        report.violations.push(format!("quot(X*Y) not in quot X * quot Y for {}", w()));
    }
}

/// Seeds for the monoformity criterion: the classes of `M/N` for nonzero
/// submodules `N` of the ambient module `M`.
pub fn proper_quotient_classes(universe: &ClosureUniverse) -> BTreeSet<usize> {
    universe
        .lattice
        .iter()
        .filter(|n| n.len() > 1)
        .map(|n| universe.class_of_quotient(n).expect("quotient is a section"))
        .collect()
}

/// `M` is non-monoform iff it lies in the Serre closure of its proper
/// quotients, computed here in the universe of its own subquotients.
pub fn closure_says_monoform(universe: &ClosureUniverse) -> bool {
    let closure = closure_oracle(universe, &proper_quotient_classes(universe));
    !universe.ambient().is_zero() && !closure.contains(&universe.ambient_class())
}

/// Convenience: `R/I` for a right ideal `I`.
pub fn cyclic_module(spec: &AtomSpectrum, ideal: &RightIdeal) -> Result<RightModule> {
    Ok(quotient_module(spec.regular(), ideal)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{mat, tri2, zmod};
    use crate::module::regular_module;
    use std::sync::Arc;

    fn spectrum(r: Result<crate::ring::FiniteRing>) -> AtomSpectrum {
        AtomSpectrum::new(&Arc::new(r.unwrap())).unwrap()
    }

    fn tri_max() -> (ElemSet, ElemSet) {
        (
            ElemSet::from_ids(8, (0..8).filter(|x| x & 4 == 0)),
            ElemSet::from_ids(8, (0..8).filter(|x| x & 1 == 0)),
        )
    }

    #[test]
    fn generated_subcategories() {
        let s = spectrum(tri2(2));
        let (m1, _) = tri_max();
        let q = cyclic_module(&s, &m1).unwrap();
        let sub = serre_from_generators(&s, &[q]).unwrap();
        assert_eq!(sub.open_set.members, AtomSet::singleton(s.atom_of(&m1).unwrap()));
        let p0 = ElemSet::from_ids(8, [0, 4]);
        // R/p0 has R/m2 as a quotient
        assert!(!serre_contains(&s, &sub, &cyclic_module(&s, &p0).unwrap()).unwrap());
        assert!(!serre_contains(&s, &sub, s.regular()).unwrap());
        let zero = cyclic_module(&s, &ElemSet::full(8)).unwrap();
        assert!(serre_contains(&s, &sub, &zero).unwrap());

        let empty = serre_from_generators(&s, &[]).unwrap();
        assert!(empty.open_set.members.is_empty());
        let all = serre_from_generators(&s, &[s.regular().clone()]).unwrap();
        assert_eq!(all.open_set.members, s.full());
    }

    #[test]
    fn serre_counts() {
        let t = enumerate_serre(&spectrum(tri2(2))).unwrap();
        assert_eq!(t.subcategories.len(), 4);
        // diamond: 4 covering edges
        assert_eq!(t.covers.len(), 4);
        assert_eq!(enumerate_serre(&spectrum(zmod(12))).unwrap().subcategories.len(), 4);
        assert_eq!(enumerate_serre(&spectrum(mat(2, 2))).unwrap().subcategories.len(), 2);
        let dot = t.to_dot();
        assert!(dot.starts_with("digraph serre {"));
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn closure_in_z4() {
        let reg = regular_module(&Arc::new(zmod(4).unwrap()));
        let u = ClosureUniverse::build(&reg).unwrap();
        // classes: 0, Z/2, Z/4
        assert_eq!(u.len(), 3);
        let two = ElemSet::from_ids(4, [0, 2]);
        let z2 = u.class_of_quotient(&two).unwrap();
        let closure = closure_oracle(&u, &BTreeSet::from([z2]));
        assert_eq!(closure.len(), 3);
        assert!(closure.contains(&u.ambient_class()));
        assert!(u.extensions().contains(&(z2, u.ambient_class(), z2)));
        assert_eq!(closure_oracle(&u, &BTreeSet::new()), BTreeSet::from([u.zero_class()]));
    }

    #[test]
    fn closure_does_not_reach_a_monoform_module() {
        let s = spectrum(tri2(2));
        let p0 = ElemSet::from_ids(8, [0, 4]);
        let h = cyclic_module(&s, &p0).unwrap();
        let u = ClosureUniverse::build(&h).unwrap();
        assert!(closure_says_monoform(&u));
        let reg = regular_module(&Arc::new(zmod(4).unwrap()));
        assert!(!closure_says_monoform(&ClosureUniverse::build(&reg).unwrap()));
    }

    #[test]
    fn calculus_on_z12() {
        let reg = regular_module(&Arc::new(zmod(12).unwrap()));
        let u = ClosureUniverse::build(&reg).unwrap();
        let report = calculus_check(&u, 100, 7);
        assert_eq!(report.triples_checked, 100);
        assert!(report.passed(), "{:?}", report.violations);
        let zero = BTreeSet::from([u.zero_class()]);
        let all: BTreeSet<usize> = (0..u.len()).collect();
        for y in [zero.clone(), all.clone(), BTreeSet::from([1, 2])] {
            // extension by zero
            assert_eq!(u.ext_product(&zero, &y), y);
        }
        assert_eq!(u.sub(&all), all);
        assert_eq!(u.quot(&all), all);
        assert_eq!(u.ext_product(&all, &all), all);
    }
}
