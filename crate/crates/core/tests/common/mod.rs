#![allow(dead_code)]

use std::sync::Arc;

use atomspec::builtin::build_builtin;
use atomspec::{ElemSet, FiniteRing, Limits, RingSpec};

pub const ZOO: &[&str] = &[
    "zmod:2",
    "zmod:3",
    "zmod:4",
    "zmod:5",
    "zmod:6",
    "zmod:8",
    "zmod:9",
    "zmod:12",
    "zmod:30",
    "zmod:36",
    "zmod:60",
    "tri2:2",
    "tri2:3",
    "mat:2:2",
    "prod:zmod:2,zmod:2",
    "prod:zmod:2,tri2:2",
    "zmod:16",
    "zmod:72",
    "tri2:5",
    "mat:2:3",
    "prod:zmod:2,zmod:2,zmod:2",
    "prod:zmod:4,zmod:4",
    "prod:zmod:3,tri2:2",
    "prod:tri2:2,tri2:2",
    "prod:mat:2:2,zmod:2",
];

pub fn ring(spec: &str) -> Arc<FiniteRing> {
    let spec: RingSpec = spec.parse().unwrap();
    Arc::new(build_builtin(&spec, Limits::default()).unwrap())
}

pub fn zoo() -> Vec<(&'static str, Arc<FiniteRing>)> {
    ZOO.iter().map(|s| (*s, ring(s))).collect()
}

/// Right ideals by testing every subset for closure. Only for order <= 16.
pub fn right_ideals_by_subsets(r: &FiniteRing) -> Vec<ElemSet> {
    let n = r.order();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask & 1 == 0 {
            continue;
        }
        let has = |x: usize| mask >> x & 1 == 1;
        let members: Vec<usize> = (0..n).filter(|&x| has(x)).collect();
        let closed = members.iter().all(|&x| {
            members.iter().all(|&y| has(r.add(x, y))) && (0..n).all(|a| has(r.mul(x, a)))
        });
        if closed {
            out.push(ElemSet::from_ids(n, members));
        }
    }
    out.sort();
    out
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The ideal `pZ/n`.
pub fn multiples(n: usize, p: usize) -> ElemSet {
    ElemSet::from_ids(n, (0..n).filter(|x| x % p == 0))
}
