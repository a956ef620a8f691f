//! Actions of permutation groups: coset actions, restriction to orbits,
//! actions on block systems, and kernels of arbitrary actions.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{BuildOptions, StabChain};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default cap on the number of cosets enumerated by [`coset_action`].
pub const DEFAULT_MAX_INDEX: usize = 20_000;

/// Image of a group under an action, together with the kernel.
#[derive(Clone, Debug)]
pub struct ActionImage {
    pub source: PermGroup,
    pub image: PermGroup,
    pub kernel: PermGroup,
    /// Image of each generator of `source`, in order.
    pub generator_map: Vec<Permutation>,
}

impl ActionImage {
    pub fn is_faithful(&self) -> bool {
        self.kernel.is_trivial() || self.kernel.order() == 1
    }
}

/// The right cosets of a subgroup, with canonical representatives.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub parent: PermGroup,
    pub subgroup: PermGroup,
    pub reps: Vec<Permutation>,
    pub index: usize,
    lookup: HashMap<Vec<u32>, u32>,
    key_points: Vec<u32>,
}

impl CosetSpace {
    /// Enumerates the right cosets `h·x` of `h` in `g`.
    pub fn new(g: &PermGroup, h: &PermGroup, max_index: usize) -> Result<Self> {
        if !h.is_subgroup_of(g)? {
            return Err(Error::NotSubgroup("coset action needs h ≤ g".into()));
        }
        let index = g.order() / h.order();
        if index > max_index as u128 {
            return Err(Error::Budget(format!(
                "index {index} exceeds the coset limit {max_index}"
            )));
        }
        let index = index as usize;
        let h_chain = h.chain();
        let key_points = g.chain().base();
        let key = |y: &Permutation| -> Vec<u32> { key_points.iter().map(|&b| y.image(b)).collect() };
        let first = h_chain.canonical_coset_rep(&Permutation::identity(g.degree()));
        let mut lookup = HashMap::new();
        lookup.insert(key(&first), 0u32);
        let mut reps = vec![first];
        let mut i = 0;
        while i < reps.len() {
            for s in g.generators() {
                let y = h_chain.canonical_coset_rep(&reps[i].compose(s));
                let k = key(&y);
                if !lookup.contains_key(&k) {
                    lookup.insert(k, reps.len() as u32);
                    reps.push(y);
                }
            }
            i += 1;
        }
        debug_assert_eq!(reps.len(), index);
        Ok(CosetSpace {
            parent: g.clone(),
            subgroup: h.clone(),
            reps,
            index,
            lookup,
            key_points,
        })
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Permutation) -> u32 {
        let y = self.subgroup.chain().canonical_coset_rep(x);
        let k: Vec<u32> = self.key_points.iter().map(|&b| y.image(b)).collect();
        self.lookup[&k]
    }

    /// The permutation of the cosets induced by right multiplication by `x`.
    pub fn act(&self, x: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.compose(x)))
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

/// Permutations induced on the right cosets of `h` by `gens`, without
/// computing the order of `⟨gens⟩`. Coset 0 is `h` itself.
///
/// Fails once more than `max_index` cosets turn up, or when storing the
/// representatives would need more than `2^26` point images.
pub fn coset_images(gens: &[Permutation], h: &PermGroup, max_index: usize) -> Result<Vec<Permutation>> {
    let degree = h.degree();
    let h_chain = h.chain();
    let first = h_chain.canonical_coset_rep(&Permutation::identity(degree));
    let mut lookup: HashMap<Permutation, u32> = HashMap::new();
    lookup.insert(first.clone(), 0);
    let mut reps = vec![first];
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (s, img) in gens.iter().zip(images.iter_mut()) {
            let y = h_chain.canonical_coset_rep(&reps[i].compose(s));
            let next = reps.len() as u32;
            let j = *lookup.entry(y.clone()).or_insert(next);
            if j == next {
                if reps.len() >= max_index || (reps.len() + 1) * degree > 1 << 26 {
                    return Err(Error::Budget(format!("more than {} cosets", reps.len())));
                }
                reps.push(y);
            }
            img.push(j);
        }
        i += 1;
    }
    images.into_iter().map(Permutation::from_images).collect()
}

/// Action of `g` on the right cosets of `h`; the kernel is the core of `h`.
pub fn coset_action(g: &PermGroup, h: &PermGroup, max_index: usize) -> Result<(ActionImage, CosetSpace)> {
    let space = CosetSpace::new(g, h, max_index)?;
    let image = action_image(g, space.index, |x| space.act(x))?;
    Ok((image, space))
}

/// Image and kernel of the action given by `act`, which must be a
/// homomorphism into `Sym(image_degree)`.
pub fn action_image(
    g: &PermGroup,
    image_degree: usize,
    act: impl Fn(&Permutation) -> Permutation,
) -> Result<ActionImage> {
    let n = g.degree();
    let m = image_degree;
    let generator_map: Vec<Permutation> = g.generators().iter().map(&act).collect();
    let combine = |x: &Permutation, y: &Permutation| -> Permutation {
        let mut images = Vec::with_capacity(n + m);
        images.extend_from_slice(x.images());
        images.extend(y.images().iter().map(|&p| p + n as u32));
        Permutation::from_images_unchecked(images)
    };
    let combined: Vec<Permutation> = g
        .generators()
        .iter()
        .zip(&generator_map)
        .map(|(x, y)| combine(x, y))
        .collect();
    let chain = StabChain::build(
        n + m,
        &combined,
        &BuildOptions {
            domain_start: n,
            ..Default::default()
        },
    );
    let image_order = chain.order();
    let group_order = g.order();
    if group_order % image_order != 0 {
        return Err(Error::NotHomomorphism(
            "image order does not divide the group order".into(),
        ));
    }
    let kernel_order = group_order / image_order;
    let truncate = |x: &Permutation| Permutation::from_images_unchecked(x.images()[..n].to_vec());
    let mut kernel_gens: Vec<Permutation> = Vec::new();
    let mut kernel_chain = StabChain::trivial(n);
    for r in chain.kernel_residues() {
        let k = truncate(r);
        if kernel_order > 1 && kernel_chain.add_generator(&k) {
            kernel_gens.push(k);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b65726e);
    let mut attempts = 0;
    while kernel_chain.order() < kernel_order {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::NotHomomorphism(
                "kernel sampling did not reach the expected order".into(),
            ));
        }
        let x = g.random_element(&mut rng);
        let (r, _) = chain.sift(combine(&x, &act(&x)), 0);
        if !chain.is_trivial(&r) {
            return Err(Error::NotHomomorphism(
                "element image not generated by generator images".into(),
            ));
        }
        let k = truncate(&r);
        if kernel_chain.add_generator(&k) {
            kernel_gens.push(k);
        }
    }
    let kernel = PermGroup::with_chain(n, kernel_gens, kernel_chain);
    let image = PermGroup::new(m.max(1), generator_map.clone())?.with_known_order(image_order);
    Ok(ActionImage {
        source: g.clone(),
        image,
        kernel,
        generator_map,
    })
}

/// Largest normal subgroup of `g` contained in `h`.
pub fn core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if !h.is_subgroup_of(g)? {
        return Err(Error::NotSubgroup("core needs h ≤ g".into()));
    }
    if h.is_normal_in(g) {
        return Ok(h.clone());
    }
    // Intersect conjugates until stable; fall back to the coset action kernel.
    let index = g.order() / h.order();
    if index <= DEFAULT_MAX_INDEX as u128 {
        let (img, _) = coset_action(g, h, DEFAULT_MAX_INDEX)?;
        return Ok(img.kernel);
    }
    let mut c = h.clone();
    loop {
        let mut changed = false;
        for x in g.generators() {
            let cx = c.conjugate(x)?;
            if !c.is_subgroup_of(&cx)? {
                c = c.intersection(&cx)?;
                changed = true;
            }
        }
        if !changed {
            return Ok(c);
        }
    }
}

/// Action on one orbit (points renumbered by position in `orbit`).
pub fn restriction_action(g: &PermGroup, orbit: &[u32]) -> Result<ActionImage> {
    let mut index = vec![u32::MAX; g.degree()];
    for (i, &p) in orbit.iter().enumerate() {
        index[p as usize] = i as u32;
    }
    action_image(g, orbit.len(), |x| {
        Permutation::from_images_unchecked(orbit.iter().map(|&p| index[x.image(p) as usize]).collect())
    })
}

/// Action on a block system given as a point → block-index map.
pub fn block_action(g: &PermGroup, block_of: &[u32], blocks: usize) -> Result<ActionImage> {
    let mut rep = vec![u32::MAX; blocks];
    for (p, &b) in block_of.iter().enumerate() {
        if rep[b as usize] == u32::MAX {
            rep[b as usize] = p as u32;
        }
    }
    action_image(g, blocks, |x| {
        Permutation::from_images_unchecked(rep.iter().map(|&p| block_of[x.image(p) as usize]).collect())
    })
}

/// Minimal block containing `0` and `other` (Atkinson's union–find).
pub fn minimal_block(g: &PermGroup, other: u32) -> Vec<u32> {
    let n = g.degree();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut queue: Vec<(u32, u32)> = vec![(0, other)];
    let a = find(&mut parent, 0);
    let b = find(&mut parent, other);
    parent[b as usize] = a;
    while let Some((x, y)) = queue.pop() {
        for s in g.generators() {
            let (sx, sy) = (s.image(x), s.image(y));
            let (rx, ry) = (find(&mut parent, sx), find(&mut parent, sy));
            if rx != ry {
                parent[ry as usize] = rx;
                queue.push((sx, sy));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..n as u32).filter(|&p| find(&mut parent, p) == root).collect()
}

/// A nontrivial block system of a transitive group, if one exists, as a
/// point → block map plus the number of blocks.
pub fn nontrivial_block_system(g: &PermGroup) -> Option<(Vec<u32>, usize)> {
    let n = g.degree();
    if n < 4 {
        return None;
    }
    // Only points in orbits of the point stabilizer need to be tried.
    let stab = g.stabilizer(0).ok()?;
    for orbit in stab.orbits() {
        let other = orbit[0];
        if other == 0 {
            continue;
        }
        let block = minimal_block(g, other);
        if block.len() < n {
            let mut block_of = vec![u32::MAX; n];
            let mut blocks: Vec<Vec<u32>> = vec![block];
            for &p in &blocks[0] {
                block_of[p as usize] = 0;
            }
            let mut i = 0;
            while i < blocks.len() {
                for s in g.generators() {
                    let img: Vec<u32> = blocks[i].iter().map(|&p| s.image(p)).collect();
                    if block_of[img[0] as usize] == u32::MAX {
                        let idx = blocks.len() as u32;
                        for &p in &img {
                            block_of[p as usize] = idx;
                        }
                        blocks.push(img);
                    }
                }
                i += 1;
            }
            return Some((block_of, blocks.len()));
        }
    }
    None
}

pub fn is_primitive(g: &PermGroup) -> bool {
    g.is_transitive() && nontrivial_block_system(g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn coset_action_s3() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let h = grp(3, &["(0 1)"]);
        let (img, space) = coset_action(&s3, &h, 100).unwrap();
        assert_eq!(space.index, 3);
        assert_eq!(img.image.degree(), 3);
        assert_eq!(img.image.order(), 6);
        assert_eq!(img.kernel.order(), 1);
        assert!(img.image.is_transitive());
    }

    #[test]
    fn coset_action_on_whole_group() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let (img, space) = coset_action(&s3, &s3, 100).unwrap();
        assert_eq!(space.index, 1);
        assert_eq!(img.kernel.order(), 6);
    }

    #[test]
    fn coset_action_kernel_is_core() {
        // S4 on cosets of D8 = <(0 1 2 3), (0 2)>: kernel V4
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        let d8 = grp(4, &["(0 1 2 3)", "(0 2)"]);
        let (img, _) = coset_action(&s4, &d8, 100).unwrap();
        assert_eq!(img.image.order(), 6);
        assert_eq!(img.kernel.order(), 4);
        assert!(img.kernel.is_normal_in(&s4));
        assert!(core(&s4, &d8).unwrap().equals(&img.kernel).unwrap());
    }

    #[test]
    fn coset_action_errors() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let c3 = grp(3, &["(0 1 2)"]);
        assert!(coset_action(&c3, &s3, 100).is_err());
        assert!(matches!(
            coset_action(&s3, &PermGroup::trivial(3), 2),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn blocks_of_imprimitive_groups() {
        let d8 = grp(4, &["(0 1 2 3)", "(0 2)"]);
        let (block_of, nblocks) = nontrivial_block_system(&d8).unwrap();
        assert_eq!(nblocks, 2);
        assert_eq!(block_of[0], block_of[2]);
        let act = block_action(&d8, &block_of, nblocks).unwrap();
        assert_eq!(act.image.order(), 2);
        assert_eq!(act.kernel.order(), 4);
        assert!(is_primitive(&grp(5, &["(0 1 2 3 4)", "(0 1 2)"])));
    }
}
