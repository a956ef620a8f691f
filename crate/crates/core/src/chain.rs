//! Stabilizer chains (base and strong generating set) via Schreier–Sims.
//!
//! Transversals are stored as Schreier vectors. When a basic orbit is small
//! enough the inverse transversal permutations are also cached, each one
//! the first time it is used, which turns sifting through that level into a
//! single multiplication.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;
/// Cache explicit transversals when the basic orbit has at most this many points...
const CACHE_MAX_ORBIT: usize = 4096;
/// ...and the cache holds at most this many image entries.
const CACHE_MAX_ENTRIES: usize = 1 << 25;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    /// Indices into `StabChain::strong`.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// For each point: NOT_IN_ORBIT, ROOT, or the local index `k` of the
    /// generator `s = strong[gens[k]]` with `point = parent^s`.
    label: Vec<u32>,
    /// Inverse transversal `u_p⁻¹` per point, filled on first use.
    inv_trans: Option<Vec<OnceLock<Permutation>>>,
    /// `checked[j]` is the number of generators already paired with `orbit[j]`.
    checked: Vec<u32>,
}

/// Options for building a chain.
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Points forced to be the first base points, in order.
    pub base_prefix: Vec<u32>,
    /// Order of the group, if known independently. The chain is then
    /// completed by random sifting until the orbit product reaches it.
    pub known_order: Option<u128>,
    pub seed: u64,
    /// Only points `>= domain_start` are used as base points, and elements
    /// acting trivially on them count as trivial. The chain then describes
    /// the action on that tail of the point set.
    pub domain_start: usize,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    domain_start: usize,
    /// Non-identity elements found to act trivially on the domain.
    kernel_residues: Vec<Permutation>,
}

const MAX_KERNEL_RESIDUES: usize = 64;

impl StabChain {
    /// The chain of the trivial group.
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            domain_start: 0,
            kernel_residues: Vec::new(),
        }
    }

    /// True when `g` acts trivially on the chain's domain.
    pub fn is_trivial(&self, g: &Permutation) -> bool {
        g.images()[self.domain_start..]
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == i + self.domain_start)
    }

    /// Elements found to act trivially on the domain while building.
    pub fn kernel_residues(&self) -> &[Permutation] {
        &self.kernel_residues
    }

    fn note_residue(&mut self, r: Permutation) -> bool {
        if self.is_trivial(&r) {
            if self.domain_start > 0 && !r.is_identity() && self.kernel_residues.len() < MAX_KERNEL_RESIDUES {
                self.kernel_residues.push(r);
            }
            return false;
        }
        true
    }

    fn first_domain_moved_point(&self, g: &Permutation) -> Option<u32> {
        g.images()[self.domain_start..]
            .iter()
            .enumerate()
            .find(|(i, &x)| x as usize != i + self.domain_start)
            .map(|(i, _)| (i + self.domain_start) as u32)
    }

    pub fn build(degree: usize, generators: &[Permutation], options: &BuildOptions) -> Self {
        let mut chain = StabChain::trivial(degree);
        chain.domain_start = options.domain_start;
        for &p in &options.base_prefix {
            chain.push_level(p);
        }
        for g in generators {
            debug_assert_eq!(g.degree(), degree);
            if g.is_identity() {
                continue;
            }
            let (residue, depth) = chain.sift(g.clone(), 0);
            if chain.note_residue(residue.clone()) {
                chain.add_strong(residue, 0, depth);
            }
        }
        if let Some(order) = options.known_order {
            chain.random_complete(generators, order, options.seed);
            if chain.order() == order {
                return chain;
            }
        }
        chain.schreier_sims();
        chain
    }

    /// Chain for a subgroup of `⟨generators⟩` built from at most `sifts`
    /// random elements, stopping once the order reaches `target`. The
    /// order is a lower bound for the order of the generated group.
    pub fn random_lower_bound(degree: usize, generators: &[Permutation], target: u128, sifts: usize, seed: u64) -> Self {
        let mut chain = StabChain::trivial(degree);
        for g in generators.iter().filter(|g| !g.is_identity()) {
            let (residue, depth) = chain.sift(g.clone(), 0);
            if !residue.is_identity() {
                chain.add_strong(residue, 0, depth);
            }
        }
        let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
        if gens.is_empty() {
            return chain;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pr = ProductReplacement::new(&gens, degree, &mut rng);
        for _ in 0..sifts {
            if chain.order() >= target {
                break;
            }
            let (r, d) = chain.sift(pr.next(&mut rng), 0);
            if !r.is_identity() {
                chain.add_strong(r, 0, d);
            }
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds a generator and completes the chain again. Returns false when
    /// `g` was already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        let (residue, depth) = self.sift(g.clone(), 0);
        if !self.note_residue(residue.clone()) {
            return false;
        }
        self.add_strong(residue, 0, depth);
        self.schreier_sims();
        true
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Strong generators of the stabilizer of the first `level` base points.
    pub fn level_generators(&self, level: usize) -> Vec<Permutation> {
        match self.levels.get(level) {
            Some(l) => l.gens.iter().map(|&i| self.strong[i].clone()).collect(),
            None => Vec::new(),
        }
    }

    /// Product of the basic orbit lengths; panics on overflow of `u128`.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order exceeds u128")
        })
    }

    pub fn in_orbit(&self, level: usize, point: u32) -> bool {
        self.levels[level].label[point as usize] != NOT_IN_ORBIT
    }

    /// Sifts `g` starting at `from`; returns the residue and the level at
    /// which sifting stopped (`depth()` if it went through every level).
    pub fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for i in from..self.levels.len() {
            let b = g.image(self.levels[i].point);
            if self.levels[i].label[b as usize] == NOT_IN_ORBIT {
                return (g, i);
            }
            self.apply_inverse_transversal(i, b, &mut g);
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.sift(g.clone(), 0);
        self.is_trivial(&r)
    }

    /// Right-multiplies `g` by `u_b⁻¹`, where `u_b` maps the base point of
    /// `level` to `b`.
    fn apply_inverse_transversal(&self, level: usize, b: u32, g: &mut Permutation) {
        let lvl = &self.levels[level];
        if let Some(cache) = &lvl.inv_trans {
            let u = cache[b as usize].get_or_init(|| {
                let mut u = Permutation::identity(self.degree);
                self.walk_to_root(level, b, &mut u);
                u
            });
            g.mul_assign(u);
            return;
        }
        self.walk_to_root(level, b, g);
    }

    fn walk_to_root(&self, level: usize, mut b: u32, g: &mut Permutation) {
        let lvl = &self.levels[level];
        while b != lvl.point {
            let k = lvl.label[b as usize] as usize;
            let s_inv = &self.strong_inv[lvl.gens[k]];
            g.mul_assign(s_inv);
            b = s_inv.image(b);
        }
    }

    /// `u_b⁻¹` for an orbit point `b` of `level`.
    pub fn inverse_transversal(&self, level: usize, b: u32) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        self.apply_inverse_transversal(level, b, &mut g);
        g
    }

    /// `u_b`, mapping the base point of `level` to `b`.
    pub fn transversal(&self, level: usize, b: u32) -> Permutation {
        self.inverse_transversal(level, b).inverse()
    }

    fn push_level(&mut self, point: u32) {
        let mut label = vec![NOT_IN_ORBIT; self.degree];
        label[point as usize] = ROOT;
        let inv_trans = (self.degree <= CACHE_MAX_ENTRIES)
            .then(|| (0..self.degree).map(|_| OnceLock::new()).collect());
        self.levels.push(Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            label,
            inv_trans,
            checked: vec![0],
        });
    }

    /// Adds a strong generator fixing the base points of levels `< depth`
    /// to levels `from..=depth`, creating a new level if needed.
    fn add_strong(&mut self, residue: Permutation, from: usize, depth: usize) {
        if depth == self.levels.len() {
            let point = self
                .first_domain_moved_point(&residue)
                .expect("identity residue cannot create a level");
            self.push_level(point);
        }
        let inv = residue.inverse();
        self.strong.push(residue);
        self.strong_inv.push(inv);
        let idx = self.strong.len() - 1;
        for level in from..=depth {
            self.levels[level].gens.push(idx);
            self.extend_orbit(level);
        }
    }

    fn extend_orbit(&mut self, level: usize) {
        let degree = self.degree;
        let lvl = &mut self.levels[level];
        let mut j = 0;
        while j < lvl.orbit.len() {
            let p = lvl.orbit[j];
            for (k, &gi) in lvl.gens.iter().enumerate() {
                let q = self.strong[gi].image(p);
                if lvl.label[q as usize] == NOT_IN_ORBIT {
                    lvl.label[q as usize] = k as u32;
                    lvl.orbit.push(q);
                    lvl.checked.push(0);
                }
            }
            j += 1;
        }
        let cacheable =
            lvl.orbit.len() <= CACHE_MAX_ORBIT && lvl.orbit.len() * degree <= CACHE_MAX_ENTRIES;
        if !cacheable {
            lvl.inv_trans = None;
        }
    }

    /// Deterministic Schreier–Sims: every Schreier generator of every level
    /// is sifted through the levels below it.
    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            match self.next_unchecked(l) {
                None => i -= 1,
                Some((j, k)) => {
                    let p = self.levels[l].orbit[j];
                    let s_idx = self.levels[l].gens[k];
                    let q = self.strong[s_idx].image(p);
                    let mut h = self.transversal(l, p);
                    h.mul_assign(&self.strong[s_idx]);
                    self.apply_inverse_transversal(l, q, &mut h);
                    if h.is_identity() {
                        continue;
                    }
                    let (r, d) = self.sift(h, l + 1);
                    if self.note_residue(r.clone()) {
                        self.add_strong(r, l + 1, d);
                        i = d as isize;
                    }
                }
            }
        }
    }

    fn next_unchecked(&mut self, level: usize) -> Option<(usize, usize)> {
        let lvl = &mut self.levels[level];
        let ngens = lvl.gens.len() as u32;
        for j in 0..lvl.orbit.len() {
            if lvl.checked[j] < ngens {
                let k = lvl.checked[j] as usize;
                lvl.checked[j] += 1;
                return Some((j, k));
            }
        }
        None
    }

    fn random_complete(&mut self, generators: &[Permutation], order: u128, seed: u64) {
        let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
        if gens.is_empty() || self.order() >= order {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pr = ProductReplacement::new(&gens, self.degree, &mut rng);
        let mut attempts = 0usize;
        while self.order() < order && attempts < 200_000 {
            attempts += 1;
            let g = pr.next(&mut rng);
            let (r, d) = self.sift(g, 0);
            if self.note_residue(r.clone()) {
                self.add_strong(r, 0, d);
            }
        }
    }

    /// A uniformly distributed random element, as a product of random
    /// transversal elements.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in (0..self.levels.len()).rev() {
            let orbit = &self.levels[level].orbit;
            let p = orbit[rng.gen_range(0..orbit.len())];
            g.mul_assign(&self.transversal(level, p));
        }
        g
    }

    /// All transversal elements of each level, materialized.
    pub fn transversal_tables(&self) -> Vec<Vec<Permutation>> {
        (0..self.levels.len())
            .map(|l| {
                self.levels[l]
                    .orbit
                    .iter()
                    .map(|&p| self.transversal(l, p))
                    .collect()
            })
            .collect()
    }

    /// Canonical representative of the right coset `self_group·x`: the unique
    /// element whose successive base images are lexicographically least.
    pub fn canonical_coset_rep(&self, x: &Permutation) -> Permutation {
        let mut y = x.clone();
        for level in 0..self.levels.len() {
            let lvl = &self.levels[level];
            let best = lvl
                .orbit
                .iter()
                .copied()
                .min_by_key(|&p| y.image(p))
                .expect("orbit contains its base point");
            if best != lvl.point {
                // y <- u_best · y
                let u = self.transversal(level, best);
                y = u.compose(&y);
            }
        }
        y
    }
}

/// Product replacement generator of (nearly uniform) random elements.
pub(crate) struct ProductReplacement {
    pool: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    pub(crate) fn new<R: Rng>(gens: &[&Permutation], degree: usize, rng: &mut R) -> Self {
        let mut pool: Vec<Permutation> = Vec::new();
        if gens.is_empty() {
            pool.push(Permutation::identity(degree));
        }
        while pool.len() < 10.max(gens.len()) {
            for g in gens {
                pool.push((*g).clone());
            }
        }
        let mut pr = ProductReplacement {
            pool,
            acc: Permutation::identity(degree),
        };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    pub(crate) fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        let n = self.pool.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if n > 1 {
            while j == i {
                j = rng.gen_range(0..n);
            }
        }
        let other = if rng.gen_bool(0.5) {
            self.pool[j].clone()
        } else {
            self.pool[j].inverse()
        };
        if rng.gen_bool(0.5) {
            self.pool[i] = self.pool[i].compose(&other);
        } else {
            self.pool[i] = other.compose(&self.pool[i]);
        }
        self.acc.mul_assign(&self.pool[i]);
        self.acc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..8usize {
            let gens = vec![
                Permutation::from_cycles(n, &[&(0..n as u32).collect::<Vec<_>>()]).unwrap(),
                p("(0 1)", n),
            ];
            let chain = StabChain::build(n, &gens, &BuildOptions::default());
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(chain.order(), fact);
        }
    }

    #[test]
    fn known_order_and_prefix() {
        let gens = vec![p("(0 1 2 3 4)", 5), p("(0 1 2)", 5)];
        let opts = BuildOptions {
            base_prefix: vec![3],
            known_order: Some(60),
            seed: 7,
            ..Default::default()
        };
        let chain = StabChain::build(5, &gens, &opts);
        assert_eq!(chain.order(), 60);
        assert_eq!(chain.base()[0], 3);
        assert!(chain.contains(&p("(0 1)(2 3)", 5)));
        assert!(!chain.contains(&p("(0 1)", 5)));
    }

    #[test]
    fn canonical_coset_rep_is_constant_on_cosets() {
        // H = <(0 1)> inside S3; cosets H·x
        let h = StabChain::build(3, &[p("(0 1)", 3)], &BuildOptions::default());
        let x = p("(1 2)", 3);
        let hx = p("(0 1)", 3).compose(&x);
        assert_eq!(h.canonical_coset_rep(&x), h.canonical_coset_rep(&hx));
        assert_ne!(
            h.canonical_coset_rep(&x),
            h.canonical_coset_rep(&Permutation::identity(3))
        );
    }
}
