//! Finite associative unital rings given by full operation tables.
//!
//! Element id 0 is always the additive zero. The multiplicative identity is
//! stored explicitly. A [`FiniteRing`] can only be obtained through
//! [`validate_ring`] (or a builtin constructor that ends in it), so every axiom
//! has been checked over all pairs and triples of elements.

use std::fmt;

use crate::error::{Axiom, Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 4096;
pub const DEFAULT_MAX_LATTICE: usize = 1 << 20;

/// Size caps carried by a ring and consulted by every enumeration over its
/// modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring (or module) order accepted.
    pub max_order: usize,
    /// Largest number of submodules a lattice enumeration may produce.
    pub max_lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
            max_lattice: DEFAULT_MAX_LATTICE,
        }
    }
}

/// Unvalidated ring tables, as read from a file or produced by a builtin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTables {
    pub order: usize,
    pub one: i64,
    pub add: Vec<Vec<i64>>,
    pub mul: Vec<Vec<i64>>,
}

#[derive(Clone)]
pub struct FiniteRing {
    order: usize,
    one: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    limits: Limits,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

impl FiniteRing {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn add_row(&self, a: usize) -> &[u32] {
        &self.add[a * self.order..(a + 1) * self.order]
    }

    pub fn mul_row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    /// First non-commuting pair, if any.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn to_raw(&self) -> RawTables {
        let table = |t: &[u32]| {
            t.chunks(self.order)
                .map(|row| row.iter().map(|&x| x as i64).collect())
                .collect()
        };
        RawTables {
            order: self.order,
            one: self.one as i64,
            add: table(&self.add),
            mul: table(&self.mul),
        }
    }
}

fn flatten(name: &'static str, rows: &[Vec<i64>], order: usize) -> Result<Vec<u32>> {
    if rows.len() != order {
        return Err(Error::Shape(format!(
            "{name} has {} rows, expected {order}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(order * order);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != order {
            return Err(Error::Shape(format!(
                "{name}[{r}] has {} entries, expected {order}",
                row.len()
            )));
        }
        for (c, &v) in row.iter().enumerate() {
            if v < 0 || v as u64 >= order as u64 {
                return Err(Error::EntryOutOfRange {
                    table: name,
                    row: r,
                    col: c,
                    value: v,
                    order,
                });
            }
            flat.push(v as u32);
        }
    }
    Ok(flat)
}

fn fail(axiom: Axiom, witness: &[usize]) -> Error {
    Error::Axiom {
        axiom,
        witness: witness.to_vec(),
    }
}

/// Smallest-first additive generating set: each member is the smallest id
/// outside the closure of the earlier ones under `add`. Assumes `add` is
/// commutative.
fn additive_generators(add: &[u32], n: usize) -> Vec<usize> {
    let mut inside = vec![false; n];
    let mut members = vec![0usize];
    inside[0] = true;
    let mut gens = Vec::new();
    while let Some(x) = (0..n).find(|&x| !inside[x]) {
        gens.push(x);
        inside[x] = true;
        let mut next = members.len();
        members.push(x);
        // combine every new element with every element seen so far
        while next < members.len() {
            let y = members[next];
            let mut k = 0;
            while k <= next {
                let z = add[y * n + members[k]] as usize;
                if !inside[z] {
                    inside[z] = true;
                    members.push(z);
                }
                k += 1;
            }
            next += 1;
        }
    }
    gens
}

fn check_group_prefix(at: impl Fn(usize, usize) -> usize, n: usize) -> Result<()> {
    for a in 0..n {
        if at(0, a) != a || at(a, 0) != a {
            return Err(fail(Axiom::AdditiveIdentity, &[a]));
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if at(a, b) != at(b, a) {
                return Err(fail(Axiom::AdditiveCommutativity, &[a, b]));
            }
        }
    }
    Ok(())
}

fn negation_table(at: impl Fn(usize, usize) -> usize, n: usize) -> Result<Vec<u32>> {
    (0..n)
        .map(|a| match (0..n).find(|&b| at(a, b) == 0) {
            Some(b) => Ok(b as u32),
            None => Err(fail(Axiom::AdditiveInverse, &[a])),
        })
        .collect()
}

/// Checks that `add` (flat `n×n`) makes `0..n` an abelian group with
/// identity 0 and returns the negation table.
///
/// Associativity is tested with `b` running over an additive generating set
/// only: the `b` for which `(a+b)+c = a+(b+c)` holds for all `a, c` are
/// closed under addition, so this is exact.
pub(crate) fn check_abelian_group(add: &[u32], n: usize) -> Result<Vec<u32>> {
    let at = |a: usize, b: usize| add[a * n + b] as usize;
    check_group_prefix(at, n)?;
    let gens = additive_generators(add, n);
    for a in 0..n {
        for &b in &gens {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(fail(Axiom::AdditiveAssociativity, &[a, b, c]));
                }
            }
        }
    }
    negation_table(at, n)
}

fn prepare(raw: &RawTables, limits: Limits) -> Result<(usize, usize, Vec<u32>, Vec<u32>)> {
    let n = raw.order;
    if n == 0 {
        return Err(Error::Shape("order must be at least 1".into()));
    }
    if n > limits.max_order {
        return Err(Error::OrderCap {
            requested: n.to_string(),
            cap: limits.max_order,
        });
    }
    let add = flatten("add", &raw.add, n)?;
    let mul = flatten("mul", &raw.mul, n)?;
    if raw.one < 0 || raw.one as u64 >= n as u64 {
        return Err(Error::Shape(format!(
            "one = {} is out of range 0..{n}",
            raw.one
        )));
    }
    Ok((n, raw.one as usize, add, mul))
}

fn exhaustive_associativity(m_: impl Fn(usize, usize) -> usize, n: usize) -> Result<()> {
    for a in 0..n {
        for b in 0..n {
            let ab = m_(a, b);
            for c in 0..n {
                if m_(ab, c) != m_(a, m_(b, c)) {
                    return Err(fail(Axiom::MultiplicativeAssociativity, &[a, b, c]));
                }
            }
        }
    }
    Ok(())
}

fn identity(m_: impl Fn(usize, usize) -> usize, one: usize, n: usize) -> Result<()> {
    for a in 0..n {
        if m_(one, a) != a || m_(a, one) != a {
            return Err(fail(Axiom::MultiplicativeIdentity, &[a]));
        }
    }
    Ok(())
}

/// Validates tables and returns the ring.
///
/// Axioms are reported in a fixed order (additive group, multiplicative
/// associativity, identity, distributivity) with a witnessing tuple. The
/// verdict is the one [`validate_ring_exhaustive`] gives, at roughly
/// `n² log n` cost instead of `n³`:
///
/// * `x ↦ ax` is additive as soon as `a(x+g) = ax + ag` for every `x` and
///   every `g` in an additive generating set, and likewise on the right;
/// * once both distributive laws hold, `(ab)c` and `a(bc)` are additive in
///   each argument, so they agree everywhere if they agree on generators.
///
/// When distributivity fails, associativity is checked over all triples so
/// that the reported axiom does not change.
pub fn validate_ring(raw: &RawTables, limits: Limits) -> Result<FiniteRing> {
    let (n, one, add, mul) = prepare(raw, limits)?;
    let neg = check_abelian_group(&add, n)?;
    let gens = additive_generators(&add, n);
    let a_ = |a: usize, b: usize| add[a * n + b] as usize;
    let m_ = |a: usize, b: usize| mul[a * n + b] as usize;

    let mut distributivity = Ok(());
    'dist: for a in 0..n {
        for x in 0..n {
            for &g in &gens {
                if m_(a, a_(x, g)) != a_(m_(a, x), m_(a, g)) {
                    distributivity = Err(fail(Axiom::LeftDistributivity, &[a, x, g]));
                    break 'dist;
                }
                if m_(a_(x, g), a) != a_(m_(x, a), m_(g, a)) {
                    distributivity = Err(fail(Axiom::RightDistributivity, &[x, g, a]));
                    break 'dist;
                }
            }
        }
    }
    if distributivity.is_ok() {
        for &a in &gens {
            for &b in &gens {
                let ab = m_(a, b);
                for &c in &gens {
                    if m_(ab, c) != m_(a, m_(b, c)) {
                        return Err(fail(Axiom::MultiplicativeAssociativity, &[a, b, c]));
                    }
                }
            }
        }
    } else {
        exhaustive_associativity(m_, n)?;
    }
    identity(m_, one, n)?;
    distributivity?;
    Ok(FiniteRing {
        order: n,
        one,
        add,
        mul,
        neg,
        limits,
    })
}

/// Validates by testing every axiom on every pair and triple. Same verdict
/// as [`validate_ring`]; kept as a reference for it.
pub fn validate_ring_exhaustive(raw: &RawTables, limits: Limits) -> Result<FiniteRing> {
    let (n, one, add, mul) = prepare(raw, limits)?;
    let a_ = |a: usize, b: usize| add[a * n + b] as usize;
    check_group_prefix(a_, n)?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a_(a_(a, b), c) != a_(a, a_(b, c)) {
                    return Err(fail(Axiom::AdditiveAssociativity, &[a, b, c]));
                }
            }
        }
    }
    let neg = negation_table(a_, n)?;
    let m_ = |a: usize, b: usize| mul[a * n + b] as usize;
    exhaustive_associativity(m_, n)?;
    identity(m_, one, n)?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m_(a, a_(b, c)) != a_(m_(a, b), m_(a, c)) {
                    return Err(fail(Axiom::LeftDistributivity, &[a, b, c]));
                }
                if m_(a_(a, b), c) != a_(m_(a, c), m_(b, c)) {
                    return Err(fail(Axiom::RightDistributivity, &[a, b, c]));
                }
            }
        }
    }
    Ok(FiniteRing {
        order: n,
        one,
        add,
        mul,
        neg,
        limits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_raw(n: usize) -> RawTables {
        let t = |f: fn(usize, usize, usize) -> usize| {
            (0..n)
                .map(|a| (0..n).map(|b| f(a, b, n) as i64).collect())
                .collect()
        };
        RawTables {
            order: n,
            one: (1 % n) as i64,
            add: t(|a, b, n| (a + b) % n),
            mul: t(|a, b, n| (a * b) % n),
        }
    }

    #[test]
    fn integers_mod_12_validate() {
        let r = validate_ring(&zmod_raw(12), Limits::default()).unwrap();
        assert_eq!(r.order(), 12);
        assert_eq!(r.one(), 1);
        assert_eq!(r.neg(5), 7);
        assert!(r.is_commutative());
    }

    #[test]
    fn zero_multiplication_has_no_identity() {
        let mut raw = zmod_raw(2);
        raw.mul = vec![vec![0, 0], vec![0, 0]];
        let err = validate_ring(&raw, Limits::default()).unwrap_err();
        assert_eq!(
            err,
            Error::Axiom {
                axiom: Axiom::MultiplicativeIdentity,
                witness: vec![1]
            }
        );
        assert!(err.to_string().starts_with("one is not identity"));
    }

    #[test]
    fn broken_distributivity_is_witnessed() {
        // Z/3 under addition, multiplication of the monoid {0,1,2} with 2*2 = 2.
        // Associative and unital, but 2*(1+1) != 2*1 + 2*1.
        let mut raw = zmod_raw(3);
        raw.mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
        let err = validate_ring(&raw, Limits::default()).unwrap_err();
        match err {
            Error::Axiom { axiom, witness } => {
                assert!(matches!(
                    axiom,
                    Axiom::LeftDistributivity | Axiom::RightDistributivity
                ));
                assert_eq!(witness.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_entry_is_located() {
        let mut raw = zmod_raw(4);
        raw.add[2][3] = 9;
        let err = validate_ring(&raw, Limits::default()).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                table: "add",
                row: 2,
                col: 3,
                value: 9,
                order: 4
            }
        );
    }

    #[test]
    fn non_square_table_rejected() {
        let mut raw = zmod_raw(3);
        raw.mul[1].pop();
        assert!(matches!(
            validate_ring(&raw, Limits::default()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn order_cap_enforced() {
        let limits = Limits {
            max_order: 8,
            ..Limits::default()
        };
        assert!(matches!(
            validate_ring(&zmod_raw(9), limits),
            Err(Error::OrderCap { .. })
        ));
    }

    #[test]
    fn zero_ring_is_allowed() {
        let r = validate_ring(&zmod_raw(1), Limits::default()).unwrap();
        assert_eq!(r.one(), 0);
    }
}
