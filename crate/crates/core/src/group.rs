//! Permutation groups given by generators, with a lazily built stabilizer chain.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{BuildOptions, StabChain};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Groups up to this order may be enumerated element by element.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    known_order: Option<u128>,
    chain: Arc<OnceLock<StabChain>>,
}

/// Outcome of sifting an element through a stabilizer chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiftResult {
    pub residue: Permutation,
    pub depth: usize,
}

impl SiftResult {
    pub fn is_member(&self) -> bool {
        self.residue.is_identity()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            generators,
            known_order: None,
            chain: Arc::new(OnceLock::new()),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    /// Parses generators written in cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, Some(degree)))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    /// Records an independently known order; chain construction then uses
    /// random sifting certified by that order.
    pub fn with_known_order(mut self, order: u128) -> Self {
        self.known_order = Some(order);
        self.chain = Arc::new(OnceLock::new());
        self
    }

    pub(crate) fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let lock = OnceLock::new();
        let order = chain.order();
        let _ = lock.set(chain);
        PermGroup {
            degree,
            generators,
            known_order: Some(order),
            chain: Arc::new(lock),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            StabChain::build(
                self.degree,
                &self.generators,
                &BuildOptions {
                    base_prefix: Vec::new(),
                    known_order: self.known_order,
                    seed: 0,
                    ..Default::default()
                },
            )
        })
    }

    /// A chain whose base starts with `prefix`.
    pub fn chain_with_prefix(&self, prefix: &[u32]) -> StabChain {
        StabChain::build(
            self.degree,
            &self.generators,
            &BuildOptions {
                base_prefix: prefix.to_vec(),
                known_order: Some(self.order()),
                seed: 1,
                ..Default::default()
            },
        )
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    pub fn sift(&self, p: &Permutation) -> Result<SiftResult> {
        self.check_degree(p)?;
        let (residue, depth) = self.chain().sift(p.clone(), 0);
        Ok(SiftResult { residue, depth })
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain().contains(p)
    }

    /// Membership with the sift record.
    pub fn membership(&self, p: &Permutation) -> Result<(bool, SiftResult)> {
        let s = self.sift(p)?;
        Ok((s.is_member(), s))
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Point orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = self.orbit(start);
            for &x in &orbit {
                seen[x as usize] = true;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Conjugate group `x⁻¹·G·x`.
    pub fn conjugate(&self, x: &Permutation) -> Result<PermGroup> {
        self.check_degree(x)?;
        let gens = self.generators.iter().map(|g| g.conjugate_by(x)).collect();
        let mut h = PermGroup::new(self.degree, gens)?;
        if self.chain.get().is_some() || self.known_order.is_some() {
            h = h.with_known_order(self.order());
        }
        Ok(h)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: other.degree,
                found: self.degree,
            });
        }
        Ok(self.generators.iter().all(|g| other.contains(g)))
    }

    pub fn equals(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.is_subgroup_of(other)? && self.order() == other.order())
    }

    /// True when every generator of `self` conjugated by every generator
    /// of `parent` stays in `self`.
    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent.generators.iter().all(|x| {
            self.generators
                .iter()
                .all(|g| self.contains(&g.conjugate_by(x)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g[i].compose(&g[j]) != g[j].compose(&g[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Subgroup generated by `self` and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        for e in extra {
            self.check_degree(e)?;
            gens.push(e.clone());
        }
        PermGroup::new(self.degree, gens)
    }

    /// Smallest normal subgroup of `self` containing `elems`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> Result<PermGroup> {
        for e in elems {
            self.check_degree(e)?;
            if !self.contains(e) {
                return Err(Error::NotSubgroup(format!(
                    "element {e} is not in the group"
                )));
            }
        }
        Ok(self
            .normal_closure_bounded(elems, None)
            .expect("unbounded closure always completes"))
    }

    /// Normal closure, abandoned (returning `None`) as soon as its order
    /// provably reaches `limit`.
    pub fn normal_closure_bounded(&self, elems: &[Permutation], limit: Option<u128>) -> Option<PermGroup> {
        let mut gens: Vec<Permutation> = elems.iter().filter(|e| !e.is_identity()).cloned().collect();
        if gens.is_empty() {
            return Some(PermGroup::trivial(self.degree));
        }
        let mut chain = StabChain::build(self.degree, &gens, &BuildOptions::default());
        let mut i = 0;
        while i < gens.len() {
            let mut added = false;
            for x in &self.generators {
                let c = gens[i].conjugate_by(x);
                if chain.add_generator(&c) {
                    gens.push(c);
                    added = true;
                }
            }
            if added {
                if let Some(l) = limit {
                    if chain.order() >= l {
                        return None;
                    }
                }
            }
            i += 1;
        }
        Some(PermGroup::with_chain(self.degree, gens, chain))
    }

    /// True when the normal closure of `elems` is shown, by random
    /// conjugates, to have order at least `target`. A `false` answer is
    /// inconclusive.
    pub fn normal_closure_reaches(&self, elems: &[Permutation], target: u128, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens: Vec<Permutation> = elems.to_vec();
        for e in elems {
            for _ in 0..16 {
                gens.push(e.conjugate_by(&self.random_element(&mut rng)));
            }
        }
        StabChain::random_lower_bound(self.degree, &gens, target, 400, seed).order() >= target
    }

    /// Pointwise stabilizer of `points`, one point at a time.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup> {
        for &p in points {
            if p as usize >= self.degree {
                return Err(Error::InvalidPoint {
                    point: p as usize,
                    degree: self.degree,
                });
            }
        }
        let mut current = self.clone();
        for &p in points {
            if current.generators.iter().all(|g| g.image(p) == p) {
                continue;
            }
            let chain = current.chain_with_prefix(&[p]);
            let gens = chain.level_generators(1);
            let order = chain.order() / chain.orbit_sizes()[0] as u128;
            current = PermGroup::new(self.degree, gens)?.with_known_order(order);
        }
        Ok(current)
    }

    pub fn stabilizer(&self, point: u32) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Iterates over all elements (via the stabilizer chain).
    pub fn elements(&self) -> ElementIter {
        ElementIter::new(self.chain())
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// `a ∩ b` by enumerating the smaller group and filtering.
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        if small.order() > ENUMERATION_LIMIT {
            return Err(Error::Budget(format!(
                "intersection needs to enumerate {} elements (limit {ENUMERATION_LIMIT})",
                small.order()
            )));
        }
        if small.is_subgroup_of(large)? {
            return Ok(small.clone());
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabChain::trivial(self.degree);
        let mut count = 0u128;
        for g in small.elements() {
            if large.contains(&g) {
                count += 1;
                if chain.add_generator(&g) {
                    gens.push(g);
                }
            }
        }
        debug_assert_eq!(count, chain.order());
        Ok(PermGroup::with_chain(self.degree, gens, chain))
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let c = g[i].inverse().compose(&g[j].inverse()).compose(&g[i]).compose(&g[j]);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_bounded(&comms, None).expect("unbounded")
    }

    /// Restriction to a union of orbits, renumbered by position in `points`.
    pub fn restrict(&self, points: &[u32]) -> Result<PermGroup> {
        let mut index = vec![u32::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            index[p as usize] = i as u32;
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut images = Vec::with_capacity(points.len());
            for &p in points {
                let q = index[g.image(p) as usize];
                if q == u32::MAX {
                    return Err(Error::Precondition(
                        "restriction set is not invariant under the group".into(),
                    ));
                }
                images.push(q);
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
        PermGroup::new(points.len().max(1), gens)
    }

    /// Seeded uniform random elements.
    pub fn random_elements(&self, count: usize, seed: u64) -> Vec<Permutation> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.random_element(&mut rng)).collect()
    }

    /// Orbits of the group acting by conjugation on its own elements, or on
    /// the elements of the normal subgroup `within`. Returns one
    /// representative per class with the class size.
    pub fn conjugacy_classes_in(&self, within: &PermGroup) -> Result<Vec<(Permutation, usize)>> {
        if within.order() > ENUMERATION_LIMIT {
            return Err(Error::Budget(format!(
                "class scan of a subgroup of order {}",
                within.order()
            )));
        }
        let key_points = within.chain().base();
        let key = |g: &Permutation| -> Vec<u32> { key_points.iter().map(|&b| g.image(b)).collect() };
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut classes = Vec::new();
        for z in within.elements() {
            if seen.contains(&key(&z)) {
                continue;
            }
            seen.insert(key(&z));
            let mut size = 1usize;
            let mut queue = VecDeque::from([z.clone()]);
            while let Some(y) = queue.pop_front() {
                for x in &self.generators {
                    let c = y.conjugate_by(x);
                    let k = key(&c);
                    if seen.insert(k) {
                        size += 1;
                        queue.push_back(c);
                    }
                }
            }
            classes.push((z, size));
        }
        Ok(classes)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

/// Odometer over products of transversal elements.
pub struct ElementIter {
    tables: Vec<Vec<Permutation>>,
    digits: Vec<usize>,
    degree: usize,
    done: bool,
}

impl ElementIter {
    fn new(chain: &StabChain) -> Self {
        let tables = chain.transversal_tables();
        ElementIter {
            digits: vec![0; tables.len()],
            tables,
            degree: chain.degree(),
            done: false,
        }
    }
}

impl Iterator for ElementIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut g = Permutation::identity(self.degree);
        for level in (0..self.tables.len()).rev() {
            g.mul_assign(&self.tables[level][self.digits[level]]);
        }
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.tables[i].len() {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    /// Closure oracle: all products of generators, by breadth-first search.
    fn closure_size(g: &PermGroup) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(g.degree());
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in g.generators() {
                let y = x.compose(s);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn orders_match_closure_enumeration() {
        let trivial = PermGroup::trivial(5);
        assert_eq!(trivial.order(), 1);
        assert!(trivial.chain().base().is_empty());
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        assert_eq!(closure_size(&s4), 24);
        assert_eq!(s4.order(), 24);
        let a5 = grp(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        assert_eq!(closure_size(&a5), 60);
        assert_eq!(a5.order(), 60);
        assert_eq!(grp(5, &["(0 1 2 3 4)"]).order(), 5);
        // regular S3 on its 6 elements
        let s3reg = grp(6, &["(0 1 2)(3 4 5)", "(0 3)(1 5)(2 4)"]);
        assert_eq!(closure_size(&s3reg), 6);
        assert_eq!(s3reg.order(), 6);
    }

    #[test]
    fn membership_examples() {
        let c3 = grp(3, &["(0 1 2)"]);
        assert!(c3.contains(&Permutation::identity(3)));
        let (member, sift) = c3.membership(&Permutation::parse("(0 1)", Some(3)).unwrap()).unwrap();
        assert!(!member);
        assert!(!sift.residue.is_identity());
        let c4 = grp(4, &["(0 1 2 3)"]);
        assert!(c4.contains(&Permutation::parse("(0 2)(1 3)", Some(4)).unwrap()));
        assert!(c4.membership(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn orbits_examples() {
        assert_eq!(PermGroup::trivial(3).orbits(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(grp(5, &["(0 1)(2 3 4)"]).orbits(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert!(grp(5, &["(0 1 2 3 4)", "(0 1 2)"]).is_transitive());
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let c = s3.normal_closure(&[Permutation::parse("(0 1 2)", Some(3)).unwrap()]).unwrap();
        assert_eq!(c.order(), 3);
        let c = s3.normal_closure(&[Permutation::parse("(0 1)", Some(3)).unwrap()]).unwrap();
        assert_eq!(c.order(), 6);
        assert_eq!(s3.normal_closure(&[Permutation::identity(3)]).unwrap().order(), 1);
        let c3 = grp(3, &["(0 1 2)"]);
        assert!(c3.normal_closure(&[Permutation::parse("(0 1)", Some(3)).unwrap()]).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let st = s3.pointwise_stabilizer(&[0]).unwrap();
        assert_eq!(st.order(), 2);
        assert!(st.contains(&Permutation::parse("(1 2)", Some(3)).unwrap()));
        assert_eq!(s3.pointwise_stabilizer(&[0, 1, 2]).unwrap().order(), 1);
        assert_eq!(s3.pointwise_stabilizer(&[]).unwrap().order(), 6);
        assert!(s3.pointwise_stabilizer(&[3]).is_err());
    }

    #[test]
    fn conjugation_and_equality() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let h = grp(3, &["(0 1)"]);
        let x = Permutation::parse("(1 2)", Some(3)).unwrap();
        let hx = h.conjugate(&x).unwrap();
        assert!(hx.equals(&grp(3, &["(0 2)"])).unwrap());
        assert!(hx.conjugate(&x.inverse()).unwrap().equals(&h).unwrap());
        assert!(h.conjugate(&Permutation::identity(3)).unwrap().equals(&h).unwrap());
        let a3 = grp(3, &["(0 1 2)"]);
        assert!(a3.is_subgroup_of(&s3).unwrap());
        assert!(!s3.is_subgroup_of(&a3).unwrap());
        let v1 = grp(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        let v2 = grp(4, &["(0 3)(1 2)", "(0 1)(2 3)"]);
        assert!(v1.equals(&v2).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let a = grp(3, &["(0 1)"]);
        let b = grp(3, &["(0 2)"]);
        assert_eq!(a.intersection(&b).unwrap().order(), 1);
        assert!(a.intersection(&a).unwrap().equals(&a).unwrap());
        let s3reg = grp(6, &["(0 1 2)(3 4 5)", "(0 3)(1 5)(2 4)"]);
        let t = Permutation::parse("(0 1)", Some(6)).unwrap();
        let conj = s3reg.conjugate(&t).unwrap();
        let meet = s3reg.intersection(&conj).unwrap();
        // oracle: filter the 6 elements of one group by membership in the other
        let brute = s3reg.elements().filter(|g| conj.contains(g)).count() as u128;
        assert_eq!(meet.order(), brute);
        assert!(meet.is_subgroup_of(&s3reg).unwrap() && meet.is_subgroup_of(&conj).unwrap());
    }
}
