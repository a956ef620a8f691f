//! Permutation isomorphism: a bijection of points conjugating one group
//! onto another.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::catalog::ElementIndex;
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest group order whose elements are listed during the search.
const ENUMERATION_CAP: u128 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PermIsoCertificate {
    pub verdict: Verdict,
    /// `point_bijection[p]` is the image of point `p` of the first group.
    pub point_bijection: Option<Vec<u32>>,
    /// Images of the generators used for the first group.
    pub generator_images: Option<Vec<(Permutation, Permutation)>>,
    pub reason: String,
    pub nodes: u64,
}

impl PermIsoCertificate {
    fn no(reason: impl Into<String>, nodes: u64) -> Self {
        PermIsoCertificate {
            verdict: Verdict::No,
            point_bijection: None,
            generator_images: None,
            reason: reason.into(),
            nodes,
        }
    }

    fn unknown(reason: impl Into<String>, nodes: u64) -> Self {
        PermIsoCertificate {
            verdict: Verdict::Unknown,
            point_bijection: None,
            generator_images: None,
            reason: reason.into(),
            nodes,
        }
    }

    /// Checks `bij(p^x) = bij(p)^image(x)` for every listed generator and point.
    pub fn verify(&self) -> bool {
        match (&self.point_bijection, &self.generator_images) {
            (Some(bij), Some(pairs)) => pairs.iter().all(|(x, y)| {
                (0..bij.len() as u32).all(|p| bij[x.image(p) as usize] == y.image(bij[p as usize]))
            }),
            _ => self.verdict != Verdict::Yes,
        }
    }
}

fn cycle_type(x: &Permutation) -> Vec<usize> {
    let mut t: Vec<usize> = x.cycles().iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

fn orbit_sizes(g: &PermGroup) -> Vec<usize> {
    let mut s: Vec<usize> = g.orbits().iter().map(Vec::len).collect();
    s.sort_unstable();
    s
}

/// A short generating set, found by trying small subsets of seeded random
/// elements; falls back to the given generators.
fn few_generators(g: &PermGroup) -> Vec<Permutation> {
    let order = g.order();
    if g.generators().len() <= 2 {
        return g.generators().to_vec();
    }
    let picks = g.random_elements(24, 0x150);
    for x in &picks {
        if PermGroup::new(g.degree(), vec![x.clone()]).map(|h| h.order()) == Ok(order) {
            return vec![x.clone()];
        }
    }
    for pair in picks.chunks(2) {
        if let Ok(h) = PermGroup::new(g.degree(), pair.to_vec()) {
            if h.order() == order {
                return pair.to_vec();
            }
        }
    }
    g.generators().to_vec()
}

/// Extends `bij` from `start` along the first `k` generators; false on
/// a conflict. Newly set points are appended to `trail`.
fn propagate(gens: &[Permutation], bij: &mut [u32], inv: &mut [u32], images: &[&Permutation], start: u32, trail: &mut Vec<u32>) -> bool {
    let mut queue = vec![start];
    while let Some(p) = queue.pop() {
        let q = bij[p as usize];
        for (x, y) in gens.iter().zip(images) {
            let (pp, qq) = (x.image(p), y.image(q));
            match bij[pp as usize] {
                u32::MAX => {
                    if inv[qq as usize] != u32::MAX {
                        return false;
                    }
                    bij[pp as usize] = qq;
                    inv[qq as usize] = pp;
                    trail.push(pp);
                    queue.push(pp);
                }
                existing if existing != qq => return false,
                _ => {}
            }
        }
    }
    true
}

struct Search<'a> {
    n: usize,
    gens: Vec<Permutation>,
    candidates: Vec<Vec<&'a Permutation>>,
    orbit_reps: Vec<u32>,
    /// For each orbit representative of the first group, the admissible
    /// target points (orbit representatives of `b` of equal orbit size for
    /// the first orbit, any unused point with matching orbit size otherwise).
    b_orbit_size: Vec<usize>,
    a_orbit_size: Vec<usize>,
    b_orbit_reps: Vec<u32>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn undo(bij: &mut [u32], inv: &mut [u32], trail: &mut Vec<u32>, mark: usize) {
        while trail.len() > mark {
            let p = trail.pop().expect("nonempty");
            inv[bij[p as usize] as usize] = u32::MAX;
            bij[p as usize] = u32::MAX;
        }
    }

    /// Full assignment of generator images: choose targets for the
    /// remaining orbit representatives.
    fn place_orbits(&mut self, r: usize, bij: &mut [u32], inv: &mut [u32], images: &[&Permutation], trail: &mut Vec<u32>) -> bool {
        if r == self.orbit_reps.len() {
            return true;
        }
        let rep = self.orbit_reps[r];
        if bij[rep as usize] != u32::MAX {
            return self.place_orbits(r + 1, bij, inv, images, trail);
        }
        let targets: Vec<u32> = if r == 0 {
            self.b_orbit_reps.clone()
        } else {
            (0..self.n as u32).filter(|&q| inv[q as usize] == u32::MAX).collect()
        };
        for q in targets {
            if inv[q as usize] != u32::MAX || self.b_orbit_size[q as usize] != self.a_orbit_size[rep as usize] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return false;
            }
            let mark = trail.len();
            bij[rep as usize] = q;
            inv[q as usize] = rep;
            trail.push(rep);
            if propagate(&self.gens, bij, inv, images, rep, trail) && self.place_orbits(r + 1, bij, inv, images, trail) {
                return true;
            }
            Self::undo(bij, inv, trail, mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Chooses images for generators `k..`; with a transitive first group
    /// the bijection is propagated from point 0 after each choice.
    fn choose(&mut self, k: usize, images: &mut Vec<&'a Permutation>, out: &mut Option<(Vec<u32>, Vec<Permutation>)>) {
        if self.exhausted || out.is_some() {
            return;
        }
        if k == self.gens.len() {
            let mut bij = vec![u32::MAX; self.n];
            let mut inv = vec![u32::MAX; self.n];
            let mut trail = Vec::new();
            let imgs: Vec<&Permutation> = images.clone();
            if self.place_orbits(0, &mut bij, &mut inv, &imgs, &mut trail) {
                *out = Some((bij, imgs.into_iter().cloned().collect()));
            }
            return;
        }
        let cands = self.candidates[k].clone();
        for y in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            // Cheap partial test: with a transitive group and point 0 fixed
            // to 0, the prefix of generators must propagate consistently.
            if self.orbit_reps.len() == 1 && self.b_orbit_reps.len() == 1 {
                images.push(y);
                let mut bij = vec![u32::MAX; self.n];
                let mut inv = vec![u32::MAX; self.n];
                bij[0] = self.b_orbit_reps[0];
                inv[self.b_orbit_reps[0] as usize] = 0;
                let ok = propagate(&self.gens[..=k], &mut bij, &mut inv, images, 0, &mut Vec::new());
                images.pop();
                if !ok {
                    continue;
                }
            }
            images.push(y);
            self.choose(k + 1, images, out);
            images.pop();
            if self.exhausted || out.is_some() {
                return;
            }
        }
    }
}

/// Decides whether `a` and `b` are permutation isomorphic.
///
/// Generators of `a` are sent to elements of `b` of the same cycle type; the
/// point bijection is then forced along orbits, with one free choice per
/// orbit of `a`. Exhaustive within `node_budget`.
pub fn perm_isomorphic(a: &PermGroup, b: &PermGroup, node_budget: u64) -> PermIsoCertificate {
    let n = a.degree();
    if n != b.degree() {
        return PermIsoCertificate::no("degrees differ", 0);
    }
    if a.order() != b.order() {
        return PermIsoCertificate::no("orders differ", 0);
    }
    if orbit_sizes(a) != orbit_sizes(b) {
        return PermIsoCertificate::no("orbit lengths differ", 0);
    }
    if a.order() > ENUMERATION_CAP {
        return PermIsoCertificate::unknown("group too large to enumerate", 0);
    }
    let (ea, eb) = match (ElementIndex::new(a, ENUMERATION_CAP), ElementIndex::new(b, ENUMERATION_CAP)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return PermIsoCertificate::unknown("group too large to enumerate", 0),
    };
    let census = |e: &ElementIndex| {
        let mut m: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for x in &e.elements {
            *m.entry(cycle_type(x)).or_default() += 1;
        }
        m
    };
    if census(&ea) != census(&eb) {
        return PermIsoCertificate::no("cycle type counts differ", 0);
    }
    if a.order() == 1 {
        let id = Permutation::identity(n);
        return PermIsoCertificate {
            verdict: Verdict::Yes,
            point_bijection: Some((0..n as u32).collect()),
            generator_images: Some(vec![(id.clone(), id)]),
            reason: "trivial groups".into(),
            nodes: 0,
        };
    }
    let gens: Vec<Permutation> = few_generators(a).into_iter().filter(|x| !x.is_identity()).collect();
    let mut by_type: HashMap<Vec<usize>, Vec<&Permutation>> = HashMap::new();
    for y in &eb.elements {
        by_type.entry(cycle_type(y)).or_default().push(y);
    }
    let candidates: Vec<Vec<&Permutation>> = gens.iter().map(|x| by_type.get(&cycle_type(x)).cloned().unwrap_or_default()).collect();
    let size_map = |g: &PermGroup| {
        let mut s = vec![0usize; n];
        for o in g.orbits() {
            for &p in &o {
                s[p as usize] = o.len();
            }
        }
        s
    };
    let a_orbits = a.orbits();
    let a_orbit_size = size_map(a);
    let b_orbit_size = size_map(b);
    let first_size = a_orbits[0].len();
    let b_orbit_reps: Vec<u32> = b.orbits().iter().filter(|o| o.len() == first_size).map(|o| o[0]).collect();
    let mut search = Search {
        n,
        gens: gens.clone(),
        candidates,
        orbit_reps: a_orbits.iter().map(|o| o[0]).collect(),
        b_orbit_size,
        a_orbit_size,
        b_orbit_reps,
        nodes: 0,
        budget: node_budget,
        exhausted: false,
    };
    let mut out = None;
    search.choose(0, &mut Vec::new(), &mut out);
    match out {
        Some((bij, images)) => {
            let cert = PermIsoCertificate {
                verdict: Verdict::Yes,
                point_bijection: Some(bij),
                generator_images: Some(gens.into_iter().zip(images).collect()),
                reason: "bijection found".into(),
                nodes: search.nodes,
            };
            debug_assert!(cert.verify());
            cert
        }
        None if search.exhausted => PermIsoCertificate::unknown("node budget exhausted", search.nodes),
        None => PermIsoCertificate::no("exhaustive search found no bijection", search.nodes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, regular};

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn identical_groups() {
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        let c = perm_isomorphic(&s4, &s4, DEFAULT_NODE_BUDGET);
        assert_eq!(c.verdict, Verdict::Yes);
        assert!(c.verify());
    }

    #[test]
    fn c4_versus_v4() {
        let c = perm_isomorphic(&grp(4, &["(0 1 2 3)"]), &grp(4, &["(0 1)(2 3)", "(0 2)(1 3)"]), DEFAULT_NODE_BUDGET);
        assert_eq!(c.verdict, Verdict::No);
    }

    #[test]
    fn relabelled_regular_c6() {
        let a = regular(&cyclic(6)).unwrap();
        let b = grp(6, &["(0 3 1 5 2 4)"]);
        let c = perm_isomorphic(&a, &b, DEFAULT_NODE_BUDGET);
        assert_eq!(c.verdict, Verdict::Yes);
        assert!(c.verify());
    }

    #[test]
    fn same_abstract_group_different_actions() {
        // S3 on 3 points plus 3 fixed points vs S3 acting regularly
        let a = grp(6, &["(0 1 2)", "(0 1)"]);
        let b = grp(6, &["(0 1 2)(3 4 5)", "(0 3)(1 5)(2 4)"]);
        assert_eq!(perm_isomorphic(&a, &b, DEFAULT_NODE_BUDGET).verdict, Verdict::No);
        // two intransitive copies of S3 with swapped orbits
        let c = grp(6, &["(3 4 5)", "(3 4)"]);
        let r = perm_isomorphic(&a, &c, DEFAULT_NODE_BUDGET);
        assert_eq!(r.verdict, Verdict::Yes);
        assert!(r.verify());
    }
}
