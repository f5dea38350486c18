//! Finite right modules over a [`FiniteRing`], stored as an addition table and
//! an action table `x·a`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Axiom, Error, Result};
use crate::ring::{check_abelian_group, FiniteRing};

/// Right ideals are submodules of the regular module.
pub type RightIdeal = ElemSet;

#[derive(Clone)]
pub struct RightModule {
    ring: Arc<FiniteRing>,
    order: usize,
    add: Vec<u32>,
    act: Vec<u32>,
    provenance: Option<String>,
}

impl fmt::Debug for RightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RightModule")
            .field("order", &self.order)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

/// A cyclic submodule `xR` together with its designated generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubmodule {
    pub generator: usize,
    pub members: ElemSet,
}

impl RightModule {
    /// Builds a module from tables, checking every module axiom exhaustively.
    pub fn from_tables(
        ring: Arc<FiniteRing>,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        provenance: Option<String>,
    ) -> Result<Self> {
        let m = add.len();
        let n = ring.order();
        if m == 0 {
            return Err(Error::Shape("module order must be at least 1".into()));
        }
        if m > ring.limits().max_order {
            return Err(Error::OrderCap {
                requested: m.to_string(),
                cap: ring.limits().max_order,
            });
        }
        if act.len() != m {
            return Err(Error::Shape(format!("act has {} rows, expected {m}", act.len())));
        }
        let mut flat_add = Vec::with_capacity(m * m);
        for (r, row) in add.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Shape(format!("add[{r}] has {} entries, expected {m}", row.len())));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(Error::EntryOutOfRange { table: "add", row: r, col: c, value: v as i64, order: m });
                }
                flat_add.push(v as u32);
            }
        }
        let mut flat_act = Vec::with_capacity(m * n);
        for (r, row) in act.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("act[{r}] has {} entries, expected {n}", row.len())));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(Error::EntryOutOfRange { table: "act", row: r, col: c, value: v as i64, order: m });
                }
                flat_act.push(v as u32);
            }
        }
        check_abelian_group(&flat_add, m)?;
        let module = RightModule {
            ring,
            order: m,
            add: flat_add,
            act: flat_act,
            provenance,
        };
        module.check_action()?;
        Ok(module)
    }

    pub(crate) fn from_flat_unchecked(
        ring: Arc<FiniteRing>,
        order: usize,
        add: Vec<u32>,
        act: Vec<u32>,
        provenance: Option<String>,
    ) -> Self {
        debug_assert_eq!(add.len(), order * order);
        debug_assert_eq!(act.len(), order * ring.order());
        RightModule { ring, order, add, act, provenance }
    }

    fn check_action(&self) -> Result<()> {
        let r = &self.ring;
        let fail = |axiom, w: &[usize]| Error::Axiom { axiom, witness: w.to_vec() };
        for x in self.elements() {
            if self.act(x, r.one()) != x {
                return Err(fail(Axiom::UnitalAction, &[x]));
            }
        }
        for x in self.elements() {
            for a in r.elements() {
                let xa = self.act(x, a);
                for b in r.elements() {
                    if self.act(x, r.mul(a, b)) != self.act(xa, b) {
                        return Err(fail(Axiom::ActionAssociativity, &[x, a, b]));
                    }
                    if self.act(x, r.add(a, b)) != self.add(xa, self.act(x, b)) {
                        return Err(fail(Axiom::ActionDistributesOverRing, &[x, a, b]));
                    }
                }
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                let s = self.add(x, y);
                for a in r.elements() {
                    if self.act(s, a) != self.add(self.act(x, a), self.act(y, a)) {
                        return Err(fail(Axiom::ActionDistributesOverModule, &[x, y, a]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-checks all axioms; used by tests on constructed modules.
    pub fn validate(&self) -> Result<()> {
        check_abelian_group(&self.add, self.order)?;
        self.check_action()
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y] as usize
    }

    #[inline]
    pub fn act(&self, x: usize, a: usize) -> usize {
        self.act[x * self.ring.order() + a] as usize
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn act_table(&self) -> Vec<Vec<usize>> {
        self.act
            .chunks(self.ring.order())
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn same_ring(&self, other: &RightModule) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn zero_submodule(&self) -> ElemSet {
        ElemSet::zero(self.order)
    }

    pub fn full_submodule(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.order {
            Err(Error::ElementOutOfRange { id: x, order: self.order })
        } else {
            Ok(())
        }
    }

    /// Checks that `set` contains 0 and is closed under the ring action and
    /// addition (in that order, so the first failure names the operation).
    pub fn check_submodule(&self, set: &ElemSet) -> Result<()> {
        if set.universe() != self.order {
            return Err(Error::NotSubmodule(format!(
                "subset of a {}-element set used in a module of order {}",
                set.universe(),
                self.order
            )));
        }
        if !set.contains(0) {
            return Err(Error::NotSubmodule("does not contain 0".into()));
        }
        for x in set.iter() {
            for a in self.ring.elements() {
                let xa = self.act(x, a);
                if !set.contains(xa) {
                    return Err(Error::NotSubmodule(format!(
                        "not closed under action: {x}*{a} = {xa}"
                    )));
                }
            }
        }
        for x in set.iter() {
            for y in set.iter() {
                let s = self.add(x, y);
                if !set.contains(s) {
                    return Err(Error::NotSubmodule(format!(
                        "not closed under addition: {x}+{y} = {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_submodule(&self, set: &ElemSet) -> bool {
        self.check_submodule(set).is_ok()
    }

    /// `{x + y : x in a, y in b}` for submodules `a`, `b`.
    pub fn sum(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        if b.is_subset(a) {
            return a.clone();
        }
        if a.is_subset(b) {
            return b.clone();
        }
        let mut out = ElemSet::empty(self.order);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    /// `{r : x·r in within}`; with `within = {0}` this is the annihilator.
    pub fn relative_annihilator(&self, x: usize, within: &ElemSet) -> RightIdeal {
        let n = self.ring.order();
        let row = &self.act[x * n..(x + 1) * n];
        ElemSet::from_ids(n, (0..n).filter(|&a| within.contains(row[a] as usize)))
    }

    /// The coset decomposition of `upper` modulo `lower` (`lower ⊆ upper`
    /// submodules): returns the section module `upper/lower` and the map
    /// sending each element of `upper` to its coset id. Coset ids follow the
    /// ascending order of their minimal representatives.
    pub(crate) fn section_unchecked(
        &self,
        lower: &ElemSet,
        upper: &ElemSet,
        provenance: Option<String>,
    ) -> (RightModule, Vec<Option<usize>>) {
        let mut coset = vec![None; self.order];
        let mut reps = Vec::new();
        for x in upper.iter() {
            if coset[x].is_some() {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for l in lower.iter() {
                coset[self.add(x, l)] = Some(id);
            }
        }
        let q = reps.len();
        let n = self.ring.order();
        let mut add = Vec::with_capacity(q * q);
        for &x in &reps {
            for &y in &reps {
                add.push(coset[self.add(x, y)].expect("section closed under addition") as u32);
            }
        }
        let mut act = Vec::with_capacity(q * n);
        for &x in &reps {
            for a in 0..n {
                act.push(coset[self.act(x, a)].expect("section closed under action") as u32);
            }
        }
        let module = RightModule::from_flat_unchecked(self.ring.clone(), q, add, act, provenance);
        (module, coset)
    }

    /// The subquotient `upper/lower`.
    pub fn section(&self, lower: &ElemSet, upper: &ElemSet) -> Result<RightModule> {
        self.check_submodule(lower)?;
        self.check_submodule(upper)?;
        if !lower.is_subset(upper) {
            return Err(Error::NotSubmodule("lower bound is not contained in upper bound".into()));
        }
        Ok(self.section_unchecked(lower, upper, None).0)
    }
}

/// The ring as a right module over itself.
pub fn regular_module(ring: &Arc<FiniteRing>) -> RightModule {
    let n = ring.order();
    let mut add = Vec::with_capacity(n * n);
    let mut act = Vec::with_capacity(n * n);
    for a in ring.elements() {
        add.extend_from_slice(ring.add_row(a));
        act.extend_from_slice(ring.mul_row(a));
    }
    RightModule::from_flat_unchecked(ring.clone(), n, add, act, Some("regular".into()))
}

/// `M/N` with the projection `element id -> coset id`.
pub fn quotient_module(m: &RightModule, n: &ElemSet) -> Result<(RightModule, Vec<usize>)> {
    m.check_submodule(n)?;
    let prov = format!(
        "{}/{}",
        m.provenance().unwrap_or("M"),
        n
    );
    let (q, proj) = m.section_unchecked(n, &m.full_submodule(), Some(prov));
    Ok((q, proj.into_iter().map(|c| c.expect("every element has a coset")).collect()))
}

/// A submodule viewed as a module in its own right; its elements are the
/// members of `n` renumbered in ascending order.
pub fn submodule_module(m: &RightModule, n: &ElemSet) -> Result<RightModule> {
    m.check_submodule(n)?;
    let prov = format!("sub {} of {}", n, m.provenance().unwrap_or("M"));
    Ok(m.section_unchecked(&m.zero_submodule(), n, Some(prov)).0)
}

/// `M ⊕ N`; the pair `(x, y)` has id `x·|N| + y`.
pub fn direct_sum(m: &RightModule, n: &RightModule) -> Result<RightModule> {
    if !m.same_ring(n) {
        return Err(Error::RingMismatch);
    }
    let (om, on) = (m.order(), n.order());
    let order = om.checked_mul(on).filter(|&o| o <= m.ring().limits().max_order).ok_or(
        Error::OrderCap {
            requested: format!("{om}*{on}"),
            cap: m.ring().limits().max_order,
        },
    )?;
    let r = m.ring().order();
    let mut add = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            let (x1, x2) = (x / on, x % on);
            let (y1, y2) = (y / on, y % on);
            add.push((m.add(x1, y1) * on + n.add(x2, y2)) as u32);
        }
    }
    let mut act = Vec::with_capacity(order * r);
    for x in 0..order {
        let (x1, x2) = (x / on, x % on);
        for a in 0..r {
            act.push((m.act(x1, a) * on + n.act(x2, a)) as u32);
        }
    }
    let prov = format!(
        "({}) + ({})",
        m.provenance().unwrap_or("M"),
        n.provenance().unwrap_or("N")
    );
    Ok(RightModule::from_flat_unchecked(m.ring().clone(), order, add, act, Some(prov)))
}

/// Least submodule containing `xs`, as a sum of cyclic submodules.
pub fn generated_submodule(m: &RightModule, xs: &[usize]) -> Result<ElemSet> {
    let mut acc = m.zero_submodule();
    for &x in xs {
        m.check_element(x)?;
        if acc.contains(x) {
            continue;
        }
        let c = cyclic_members(m, x);
        acc = m.sum(&acc, &c);
    }
    Ok(acc)
}

pub(crate) fn cyclic_members(m: &RightModule, x: usize) -> ElemSet {
    ElemSet::from_ids(m.order(), m.ring().elements().map(|a| m.act(x, a)))
}

/// `xR`, which is already closed under addition since `xa + xb = x(a+b)`.
pub fn cyclic_submodule(m: &RightModule, x: usize) -> Result<CyclicSubmodule> {
    m.check_element(x)?;
    Ok(CyclicSubmodule {
        generator: x,
        members: cyclic_members(m, x),
    })
}

pub fn annihilator(m: &RightModule, x: usize) -> Result<RightIdeal> {
    m.check_element(x)?;
    Ok(m.relative_annihilator(x, &m.zero_submodule()))
}

/// `{Ann(x) : x != 0}`, deduplicated and canonically ordered.
pub fn annihilator_set(m: &RightModule) -> BTreeSet<RightIdeal> {
    quotient_annihilator_set(m, &m.zero_submodule())
}

/// The annihilator set of `M/N` computed in place: `{Ann(x+N) : x not in N}`.
pub fn quotient_annihilator_set(m: &RightModule, n: &ElemSet) -> BTreeSet<RightIdeal> {
    m.elements()
        .filter(|&x| !n.contains(x))
        .map(|x| m.relative_annihilator(x, n))
        .collect()
}

/// Two modules have a common nonzero submodule up to isomorphism iff their
/// annihilator sets meet: a shared nonzero `u` gives equal annihilators, and
/// `Ann(x) = Ann(y)` makes `xR ≅ R/Ann(x) ≅ yR`.
pub fn share_nonzero_submodule(m: &RightModule, n: &RightModule) -> bool {
    let a = annihilator_set(m);
    annihilator_set(n).iter().any(|i| a.contains(i))
}
