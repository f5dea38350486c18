//! Module isomorphism by backtracking over images of a generating sequence.

use crate::elemset::ElemSet;
use crate::module::{cyclic_members, RightIdeal, RightModule};

/// Greedy minimal generating sequence: repeatedly take the smallest id not yet
/// in the span.
pub fn generating_sequence(m: &RightModule) -> Vec<usize> {
    let mut span = m.zero_submodule();
    let mut gens = Vec::new();
    while let Some(x) = m.elements().find(|&x| !span.contains(x)) {
        gens.push(x);
        span = m.sum(&span, &cyclic_members(m, x));
    }
    gens
}

fn annihilator_profile(m: &RightModule) -> Vec<RightIdeal> {
    let zero = m.zero_submodule();
    let mut v: Vec<RightIdeal> = m
        .elements()
        .map(|x| m.relative_annihilator(x, &zero))
        .collect();
    v.sort();
    v
}

struct Search<'a> {
    src: &'a RightModule,
    dst: &'a RightModule,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Extends `map` (defined on `span`) by `g ↦ y`, filling `span + gR`.
    /// Fails on a value conflict or a collision that would break injectivity.
    fn extend(
        &self,
        map: &[Option<usize>],
        image: &ElemSet,
        span: &ElemSet,
        g: usize,
        y: usize,
    ) -> Option<(Vec<Option<usize>>, ElemSet, ElemSet)> {
        let mut map = map.to_vec();
        let mut image = image.clone();
        let mut span = span.clone();
        let base: Vec<usize> = span.iter().collect();
        for a in self.src.ring().elements() {
            let ga = self.src.act(g, a);
            let ya = self.dst.act(y, a);
            for &s in &base {
                let x = self.src.add(s, ga);
                let v = self.dst.add(map[s].unwrap(), ya);
                match map[x] {
                    Some(old) if old != v => return None,
                    Some(_) => {}
                    None => {
                        if image.contains(v) {
                            return None;
                        }
                        map[x] = Some(v);
                        image.insert(v);
                        span.insert(x);
                    }
                }
            }
        }
        Some((map, image, span))
    }

    fn run(&self, depth: usize, map: Vec<Option<usize>>, image: ElemSet, span: ElemSet) -> Option<Vec<usize>> {
        if depth == self.gens.len() {
            let f: Vec<usize> = map.into_iter().map(|v| v.expect("generators span")).collect();
            return is_isomorphism(self.src, self.dst, &f).then_some(f);
        }
        let g = self.gens[depth];
        for &y in &self.candidates[depth] {
            if let Some((m2, i2, s2)) = self.extend(&map, &image, &span, g, y) {
                if let Some(f) = self.run(depth + 1, m2, i2, s2) {
                    return Some(f);
                }
            }
        }
        None
    }
}

/// Checks that `f` is a bijective module homomorphism `src → dst`.
pub fn is_isomorphism(src: &RightModule, dst: &RightModule, f: &[usize]) -> bool {
    if f.len() != src.order() || src.order() != dst.order() {
        return false;
    }
    let mut hit = ElemSet::empty(dst.order());
    for &v in f {
        if v >= dst.order() || !hit.insert(v) {
            return false;
        }
    }
    for x in src.elements() {
        for y in src.elements() {
            if f[src.add(x, y)] != dst.add(f[x], f[y]) {
                return false;
            }
        }
        for a in src.ring().elements() {
            if f[src.act(x, a)] != dst.act(f[x], a) {
                return false;
            }
        }
    }
    true
}

/// An isomorphism `src → dst` as an element map, if one exists.
///
/// Images of generators are restricted to elements with the same annihilator,
/// which any isomorphism must respect.
pub fn find_isomorphism(src: &RightModule, dst: &RightModule) -> Option<Vec<usize>> {
    if !src.same_ring(dst) || src.order() != dst.order() {
        return None;
    }
    if annihilator_profile(src) != annihilator_profile(dst) {
        return None;
    }
    let zero = src.zero_submodule();
    let gens = generating_sequence(src);
    let candidates = gens
        .iter()
        .map(|&g| {
            let ann = src.relative_annihilator(g, &zero);
            dst.elements()
                .filter(|&y| dst.relative_annihilator(y, &dst.zero_submodule()) == ann)
                .collect()
        })
        .collect();
    let search = Search {
        src,
        dst,
        gens,
        candidates,
    };
    let mut map = vec![None; src.order()];
    map[0] = Some(0);
    search.run(0, map, ElemSet::zero(dst.order()), zero)
}

pub fn is_isomorphic(m: &RightModule, n: &RightModule) -> bool {
    find_isomorphism(m, n).is_some()
}
