//! Normal structure of permutation groups: minimal normal subgroups, socle,
//! composition factors, simple sections and simple quotients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

pub use crate::action::core;
use crate::action::{action_image, block_action, coset_action, nontrivial_block_system, restriction_action, DEFAULT_MAX_INDEX};
use crate::error::{Error, Result};
use crate::group::{PermGroup, ENUMERATION_LIMIT};
use crate::perm::Permutation;
use crate::simple::{factorize, table, SimpleGroupId};

/// Limits for the randomized parts of the structural searches.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Consecutive non-improving samples before a closure search stops.
    pub samples: usize,
    pub seed: u64,
    /// Largest subgroup whose classes may be scanned exhaustively.
    pub class_limit: u128,
    /// Largest conjugacy class used to compute a centralizer.
    pub class_size_limit: usize,
    /// Largest normal-subgroup lattice built by [`simple_quotients`].
    pub lattice_limit: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            samples: 24,
            seed: 0,
            class_limit: ENUMERATION_LIMIT,
            class_size_limit: 50_000,
            lattice_limit: 4096,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        SearchBudget {
            seed,
            ..Default::default()
        }
    }
}

/// Multiset of simple groups, e.g. the composition factors of a group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionMultiset {
    entries: BTreeMap<SimpleGroupId, u32>,
}

impl CompositionMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(SimpleGroupId, u32)]) -> Self {
        let mut m = Self::new();
        for (id, k) in pairs {
            m.add(id.clone(), *k);
        }
        m
    }

    /// Parses `"A5, C2^3"` style text (also used by the CLI).
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Self::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, k) = match part.rsplit_once('^') {
                Some((n, k)) => (
                    n,
                    k.parse::<u32>().map_err(|_| Error::Spec(format!("bad multiplicity in {part}")))?,
                ),
                None => (part, 1),
            };
            m.add(SimpleGroupId::by_name(name)?, k);
        }
        Ok(m)
    }

    pub fn add(&mut self, id: SimpleGroupId, k: u32) {
        if k > 0 {
            *self.entries.entry(id).or_insert(0) += k;
        }
    }

    pub fn merge(&mut self, other: &CompositionMultiset) {
        for (id, &k) in &other.entries {
            self.add(id.clone(), k);
        }
    }

    pub fn union(&self, other: &CompositionMultiset) -> CompositionMultiset {
        let mut m = self.clone();
        m.merge(other);
        m
    }

    /// `self − other`; fails unless `other` is a sub-multiset.
    pub fn difference(&self, other: &CompositionMultiset) -> Option<CompositionMultiset> {
        let mut m = self.clone();
        for (id, &k) in &other.entries {
            let e = m.entries.get_mut(id)?;
            if *e < k {
                return None;
            }
            *e -= k;
            if *e == 0 {
                m.entries.remove(id);
            }
        }
        Some(m)
    }

    pub fn contains_multiset(&self, other: &CompositionMultiset) -> bool {
        self.difference(other).is_some()
    }

    pub fn multiplicity(&self, id: &SimpleGroupId) -> u32 {
        self.entries.get(id).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SimpleGroupId, u32)> {
        self.entries.iter().map(|(id, &k)| (id, k))
    }

    pub fn ids(&self) -> impl Iterator<Item = &SimpleGroupId> {
        self.entries.keys()
    }

    /// Number of factors counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of `order^multiplicity`.
    pub fn order(&self) -> u128 {
        self.entries
            .iter()
            .map(|(id, &k)| id.order.pow(k))
            .product()
    }

    /// Number of factors of prime order `p`.
    pub fn cyclic_count(&self, p: u64) -> u32 {
        self.multiplicity(&SimpleGroupId::cyclic(p))
    }

    pub fn nonabelian(&self) -> impl Iterator<Item = (&SimpleGroupId, u32)> {
        self.entries().filter(|(id, _)| !id.is_abelian())
    }
}

impl fmt::Display for CompositionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (id, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if *k == 1 {
                write!(f, "{id}")?;
            } else {
                write!(f, "{id}^{k}")?;
            }
        }
        write!(f, "}}")
    }
}

impl Serialize for CompositionMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u32> = self.entries.iter().map(|(id, &k)| (id.name.clone(), k)).collect();
        map.serialize(s)
    }
}

/// A set of simple groups with a flag telling whether it is known to be
/// the full set of simple sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionSet {
    pub ids: BTreeSet<SimpleGroupId>,
    pub complete: bool,
}

impl SectionSet {
    pub fn names(&self) -> Vec<String> {
        self.ids.iter().map(|id| id.name.clone()).collect()
    }
}

/// A normal subgroup found by the closure search.
#[derive(Clone, Debug)]
pub struct NormalWitness {
    pub subgroup: PermGroup,
    pub generators_source: String,
    /// Elements whose normal closures were compared against `subgroup`.
    pub minimality_evidence: Vec<Permutation>,
    /// True when every class of prime-order elements was checked.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct MinimalNormalReport {
    pub subgroups: Vec<NormalWitness>,
    pub complete: bool,
}

/// `x^(o/p)` for each prime `p` dividing the order `o` of `x`.
fn prime_order_powers(x: &Permutation) -> Vec<Permutation> {
    let o = x.order();
    if o <= 1 {
        return Vec::new();
    }
    factorize(o)
        .into_iter()
        .map(|(p, _)| x.pow((o / p) as i64))
        .collect()
}

fn is_prime_order(x: &Permutation) -> bool {
    let o = x.order();
    o > 1 && factorize(o).len() == 1 && factorize(o)[0].1 == 1
}

/// Smallest nontrivial normal closure (in `g`) of elements of `inside`
/// found by sampling, where `inside` is normal in `g`.
fn smallest_closure(
    g: &PermGroup,
    inside: &PermGroup,
    budget: &SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Option<(PermGroup, Permutation)> {
    let mut best: Option<(PermGroup, Permutation)> = None;
    let consider = |y: Permutation, best: &mut Option<(PermGroup, Permutation)>| -> bool {
        let limit = best.as_ref().map(|(b, _)| b.order());
        let target = limit.unwrap_or(inside.order());
        if g.normal_closure_reaches(std::slice::from_ref(&y), target, 7) {
            if best.is_none() {
                // The closure lies in `inside`, so it is all of it.
                *best = Some((inside.clone(), y));
                return true;
            }
            return false;
        }
        match g.normal_closure_bounded(std::slice::from_ref(&y), limit) {
            Some(n) if n.order() > 1 => {
                *best = Some((n, y));
                true
            }
            _ => false,
        }
    };
    let mut seeds: Vec<Permutation> = inside.generators().iter().flat_map(prime_order_powers).collect();
    seeds.sort_by_key(|y| y.order());
    for y in seeds {
        consider(y, &mut best);
    }
    let mut stale = 0;
    while stale < budget.samples {
        let x = match &best {
            Some((b, _)) if b.order() > 1 => b.random_element(rng),
            _ => inside.random_element(rng),
        };
        let mut improved = false;
        for y in prime_order_powers(&x) {
            improved |= consider(y, &mut best);
        }
        if improved {
            stale = 0;
        } else {
            stale += 1;
        }
        if best.as_ref().is_some_and(|(b, _)| factorize(b.order()).len() == 1 && factorize(b.order())[0].1 == 1) {
            break;
        }
    }
    best
}

/// Checks that `n` (normal in `g`) has no smaller nontrivial normal
/// closure among its prime-order classes, descending if one is found.
fn certify_minimal(
    g: &PermGroup,
    mut n: PermGroup,
    budget: &SearchBudget,
) -> Result<(PermGroup, Vec<Permutation>, bool)> {
    loop {
        if n.order() > budget.class_limit {
            return Ok((n, Vec::new(), false));
        }
        let mut evidence = Vec::new();
        let mut smaller = None;
        for (z, _) in g.conjugacy_classes_in(&n)? {
            if !is_prime_order(&z) {
                continue;
            }
            if g.normal_closure_reaches(std::slice::from_ref(&z), n.order(), 7) {
                evidence.push(z);
                continue;
            }
            match g.normal_closure_bounded(std::slice::from_ref(&z), Some(n.order())) {
                Some(m) => {
                    smaller = Some(m);
                    break;
                }
                None => evidence.push(z),
            }
        }
        match smaller {
            Some(m) => n = m,
            None => return Ok((n, evidence, true)),
        }
    }
}

/// Conjugacy class of `y` under `g`, if it has at most `limit` elements.
fn conjugacy_class(g: &PermGroup, y: &Permutation, limit: usize) -> Option<Vec<Permutation>> {
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(y.clone(), 0);
    let mut class = vec![y.clone()];
    let mut i = 0;
    while i < class.len() {
        for x in g.generators() {
            let c = class[i].conjugate_by(x);
            if !index.contains_key(&c) {
                if class.len() >= limit {
                    return None;
                }
                index.insert(c.clone(), class.len());
                class.push(c);
            }
        }
        i += 1;
    }
    Some(class)
}

/// Elements of `c` commuting with every `g`-conjugate of `y`, where `c` is
/// normal in `g`.
fn centralizer_of_class(g: &PermGroup, c: &PermGroup, y: &Permutation, limit: usize) -> Result<Option<PermGroup>> {
    let Some(class) = conjugacy_class(g, y, limit) else {
        return Ok(None);
    };
    let index: HashMap<&Permutation, u32> = class.iter().enumerate().map(|(i, z)| (z, i as u32)).collect();
    let img = action_image(c, class.len(), |x| {
        Permutation::from_images_unchecked(class.iter().map(|z| index[&z.conjugate_by(x)]).collect())
    })?;
    Ok(Some(img.kernel))
}

fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
    a.order() == b.order() && a.is_subgroup_of(b).unwrap_or(false)
}

/// Minimal normal subgroups of `g`.
///
/// Closures of sampled elements are minimized and then certified by a
/// scan of prime-order classes; the remaining ones are found inside the
/// centralizer of those already known. `complete` is true when every
/// step could be carried out exhaustively.
pub fn minimal_normal_subgroups(g: &PermGroup, budget: &SearchBudget) -> Result<MinimalNormalReport> {
    if g.order() == 1 {
        return Err(Error::Precondition("the trivial group has no minimal normal subgroups".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut found: Vec<NormalWitness> = Vec::new();
    let mut complete = true;
    let mut c = g.clone();
    let push = |found: &mut Vec<NormalWitness>, w: NormalWitness| {
        if !found.iter().any(|f| same_group(&f.subgroup, &w.subgroup)) {
            found.push(w);
        }
    };
    while c.order() > 1 {
        if c.order() <= budget.class_limit {
            // Every remaining minimal normal subgroup lies in c.
            let mut closures: Vec<(PermGroup, Permutation)> = Vec::new();
            for (z, _) in g.conjugacy_classes_in(&c)? {
                if !is_prime_order(&z) {
                    continue;
                }
                let known = closures.iter().any(|(m, _)| {
                    m.contains(&z) && g.normal_closure_reaches(std::slice::from_ref(&z), m.order(), 7)
                });
                if known {
                    continue;
                }
                let n = g.normal_closure_bounded(std::slice::from_ref(&z), None).expect("unbounded");
                if !closures.iter().any(|(m, _)| same_group(m, &n)) {
                    closures.push((n, z));
                }
            }
            for (n, z) in &closures {
                let minimal = !closures
                    .iter()
                    .any(|(m, _)| m.order() < n.order() && m.is_subgroup_of(n).unwrap_or(false));
                if minimal {
                    let evidence: Vec<Permutation> = closures
                        .iter()
                        .filter(|(m, _)| same_group(m, n))
                        .map(|(_, y)| y.clone())
                        .collect();
                    push(
                        &mut found,
                        NormalWitness {
                            subgroup: n.clone(),
                            generators_source: format!("normal closure of {z}"),
                            minimality_evidence: evidence,
                            certified: true,
                        },
                    );
                }
            }
            break;
        }
        let Some((n, y)) = smallest_closure(g, &c, budget, &mut rng) else {
            complete = false;
            break;
        };
        let (n, evidence, certified) = certify_minimal(g, n, budget)?;
        complete &= certified;
        let y = evidence.first().cloned().unwrap_or(y);
        let shrunk = centralizer_of_class(g, &c, &y, budget.class_size_limit)?;
        push(
            &mut found,
            NormalWitness {
                subgroup: n,
                generators_source: format!("normal closure of {y}"),
                minimality_evidence: evidence,
                certified,
            },
        );
        match shrunk {
            Some(k) if k.order() < c.order() => c = k,
            _ => {
                complete = false;
                break;
            }
        }
    }
    Ok(MinimalNormalReport {
        subgroups: found,
        complete,
    })
}

/// Join of the minimal normal subgroups, with the completeness flag.
pub fn socle(g: &PermGroup, budget: &SearchBudget) -> Result<(PermGroup, bool)> {
    let report = minimal_normal_subgroups(g, budget)?;
    let gens: Vec<Permutation> = report
        .subgroups
        .iter()
        .flat_map(|w| w.subgroup.generators().to_vec())
        .collect();
    let mut s = PermGroup::new(g.degree(), gens)?;
    if report.subgroups.iter().all(|w| !w.subgroup.is_abelian()) {
        // Distinct nonabelian minimal normal subgroups generate their direct product.
        s = s.with_known_order(report.subgroups.iter().map(|w| w.subgroup.order()).product());
    }
    Ok((s, report.complete))
}

/// Composition factors with a flag that is false when some simple factor
/// was identified without an exhaustive simplicity check.
pub fn composition_multiset_checked(g: &PermGroup, budget: &SearchBudget) -> Result<(CompositionMultiset, bool)> {
    let mut out = CompositionMultiset::new();
    let mut certified = true;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    composition_rec(g, budget, &mut rng, &mut out, &mut certified)?;
    debug_assert_eq!(out.order(), g.order());
    Ok((out, certified))
}

pub fn composition_multiset(g: &PermGroup) -> Result<CompositionMultiset> {
    Ok(composition_multiset_checked(g, &SearchBudget::default())?.0)
}

fn composition_rec(
    g: &PermGroup,
    budget: &SearchBudget,
    rng: &mut ChaCha8Rng,
    out: &mut CompositionMultiset,
    certified: &mut bool,
) -> Result<()> {
    let order = g.order();
    if order == 1 {
        return Ok(());
    }
    let primes = factorize(order);
    if primes.len() == 1 || g.is_abelian() {
        for (p, e) in primes {
            out.add(SimpleGroupId::cyclic(p as u64), e);
        }
        return Ok(());
    }
    let support: usize = g.orbits().iter().filter(|o| o.len() > 1).map(Vec::len).sum();
    let orbit = g.orbits().into_iter().find(|o| o.len() > 1).expect("nontrivial group");
    if orbit.len() < g.degree() {
        let img = restriction_action(g, &orbit)?;
        if orbit.len() < support {
            composition_rec(&img.kernel, budget, rng, out, certified)?;
        }
        return composition_rec(&img.image, budget, rng, out, certified);
    }
    if let Some((block_of, blocks)) = nontrivial_block_system(g) {
        let img = block_action(g, &block_of, blocks)?;
        composition_rec(&img.kernel, budget, rng, out, certified)?;
        return composition_rec(&img.image, budget, rng, out, certified);
    }
    // Primitive: split off a nontrivial normal subgroup N, using
    // G/N ≅ G_0/N_0 for transitive N.
    let (mut n, _) = smallest_closure(g, g, budget, rng).expect("nontrivial group");
    if n.order() == order && order <= budget.class_limit {
        n = certify_minimal(g, n, budget)?.0;
    }
    if n.order() == order {
        if order > budget.class_limit {
            *certified = false;
        }
        out.add(identify_by_order(g)?, 1);
        return Ok(());
    }
    let mut part = CompositionMultiset::new();
    composition_rec(&n, budget, rng, &mut part, certified)?;
    let g0 = g.stabilizer(0)?;
    let n0 = n.stabilizer(0)?;
    let mut top = CompositionMultiset::new();
    composition_rec(&g0, budget, rng, &mut top, certified)?;
    let mut bottom = CompositionMultiset::new();
    composition_rec(&n0, budget, rng, &mut bottom, certified)?;
    let quotient = top
        .difference(&bottom)
        .ok_or_else(|| Error::Precondition("inconsistent composition factors of a point stabilizer".into()))?;
    out.merge(&part);
    out.merge(&quotient);
    Ok(())
}

/// Orders of the elements of `g` (all of them when enumerable, a large
/// sample otherwise).
pub fn element_order_spectrum(g: &PermGroup, seed: u64) -> (BTreeSet<u128>, bool) {
    if g.order() <= ENUMERATION_LIMIT {
        (g.elements().map(|x| x.order()).collect(), true)
    } else {
        let s = g.random_elements(4096, seed).iter().map(|x| x.order()).collect();
        (s, false)
    }
}

/// Names a group assumed to be simple, from its order and, on order
/// collisions, its element orders.
fn identify_by_order(g: &PermGroup) -> Result<SimpleGroupId> {
    let order = g.order();
    if factorize(order).len() == 1 && factorize(order)[0].1 == 1 {
        return Ok(SimpleGroupId::cyclic(order as u64));
    }
    let candidates = table().with_order(order);
    match candidates.len() {
        0 => Err(Error::NotInCatalog(format!("no simple group of order {order} in the table"))),
        1 => Ok(candidates[0].id()),
        _ => {
            let (spectrum, _) = element_order_spectrum(g, 0x5eed);
            let matching: Vec<_> = candidates
                .iter()
                .filter(|e| {
                    let s: BTreeSet<u128> = e.spectrum.iter().flatten().map(|&x| x as u128).collect();
                    spectrum.is_subset(&s) && s.iter().max() == spectrum.iter().max()
                })
                .collect();
            match matching.as_slice() {
                [e] => Ok(e.id()),
                _ => Err(Error::NotInCatalog(format!(
                    "element orders do not single out a simple group of order {order}"
                ))),
            }
        }
    }
}

/// Identifies a simple group, after checking simplicity.
pub fn identify_simple(g: &PermGroup) -> Result<SimpleGroupId> {
    let order = g.order();
    if order == 1 {
        return Err(Error::Precondition("the trivial group is not simple".into()));
    }
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let (mut n, _) = smallest_closure(g, g, &budget, &mut rng).expect("nontrivial group");
    if n.order() == order && order <= budget.class_limit {
        n = certify_minimal(g, n, &budget)?.0;
    }
    if n.order() != order || (factorize(order).len() > 1 && g.is_abelian()) {
        return Err(Error::Precondition(format!(
            "group of order {order} has a proper normal subgroup of order {}",
            n.order()
        )));
    }
    identify_by_order(g)
}

/// Section set of one simple group.
pub fn sections_of_simple(t: &SimpleGroupId) -> SectionSet {
    if t.is_abelian() {
        return SectionSet {
            ids: BTreeSet::from([t.clone()]),
            complete: true,
        };
    }
    if let Some(list) = t.catalog_entry().and_then(|e| e.sections.as_ref()) {
        return SectionSet {
            ids: list
                .iter()
                .map(|n| SimpleGroupId::by_name(n).expect("table section names resolve"))
                .collect(),
            complete: true,
        };
    }
    let mut ids: BTreeSet<SimpleGroupId> = factorize(t.order)
        .into_iter()
        .map(|(p, _)| SimpleGroupId::cyclic(p as u64))
        .collect();
    ids.insert(t.clone());
    SectionSet { ids, complete: false }
}

/// Section set of a multiset of composition factors.
pub fn sections_of_multiset(m: &CompositionMultiset) -> SectionSet {
    let mut ids = BTreeSet::new();
    let mut complete = true;
    for id in m.ids() {
        let s = sections_of_simple(id);
        complete &= s.complete;
        ids.extend(s.ids);
    }
    SectionSet { ids, complete }
}

/// Simple sections of `g`, through its composition factors.
pub fn simple_sections(g: &PermGroup) -> Result<SectionSet> {
    let (m, certified) = composition_multiset_checked(g, &SearchBudget::default())?;
    let mut s = sections_of_multiset(&m);
    s.complete &= certified;
    Ok(s)
}

/// Terms of the derived series, ending at the first repeated term.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.order() == 1 {
            return series;
        }
        let d = last.derived_subgroup();
        if d.order() == last.order() {
            return series;
        }
        series.push(d);
    }
}

pub fn is_soluble(g: &PermGroup) -> bool {
    derived_series(g).last().expect("nonempty").order() == 1
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub ids: BTreeSet<SimpleGroupId>,
    pub complete: bool,
}

/// All normal subgroups of an enumerable group, as joins of class closures.
pub fn normal_subgroups(g: &PermGroup, limit: usize) -> Result<Vec<PermGroup>> {
    let mut lattice: Vec<PermGroup> = vec![PermGroup::trivial(g.degree())];
    let mut closures: Vec<PermGroup> = Vec::new();
    for (z, _) in g.conjugacy_classes_in(g)? {
        if z.is_identity() {
            continue;
        }
        let n = g.normal_closure_bounded(std::slice::from_ref(&z), None).expect("unbounded");
        if !closures.iter().any(|m| same_group(m, &n)) {
            closures.push(n);
        }
    }
    for c in &closures {
        if !lattice.iter().any(|m| same_group(m, c)) {
            lattice.push(c.clone());
        }
    }
    let mut i = 0;
    while i < lattice.len() {
        for c in &closures {
            if c.is_subgroup_of(&lattice[i])? {
                continue;
            }
            let j = lattice[i].join(c.generators())?;
            if !lattice.iter().any(|m| same_group(m, &j)) {
                if lattice.len() >= limit {
                    return Err(Error::Budget(format!("more than {limit} normal subgroups")));
                }
                lattice.push(j);
            }
        }
        i += 1;
    }
    lattice.sort_by_key(|n| n.order());
    Ok(lattice)
}

/// Simple groups `g/M` for `M` maximal normal in `g`.
pub fn simple_quotients(g: &PermGroup, budget: &SearchBudget) -> Result<QuotientReport> {
    let order = g.order();
    let mut ids = BTreeSet::new();
    if order == 1 {
        return Ok(QuotientReport { ids, complete: true });
    }
    let series = derived_series(g);
    let abelianization = if series.len() > 1 { order / series[1].order() } else { 1 };
    for (p, _) in factorize(abelianization) {
        ids.insert(SimpleGroupId::cyclic(p as u64));
    }
    if series.last().expect("nonempty").order() == 1 {
        return Ok(QuotientReport { ids, complete: true });
    }
    if order > budget.class_limit {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let (n, _) = smallest_closure(g, g, budget, &mut rng).expect("nontrivial group");
        if n.order() == order {
            ids.insert(identify_by_order(g)?);
        }
        return Ok(QuotientReport { ids, complete: false });
    }
    let lattice = match normal_subgroups(g, budget.lattice_limit) {
        Ok(l) => l,
        Err(Error::Budget(_)) => return Ok(QuotientReport { ids, complete: false }),
        Err(e) => return Err(e),
    };
    let proper: Vec<&PermGroup> = lattice.iter().filter(|n| n.order() < order).collect();
    for m in &proper {
        let maximal = !proper
            .iter()
            .any(|k| k.order() > m.order() && m.is_subgroup_of(k).unwrap_or(false));
        if !maximal {
            continue;
        }
        let q = order / m.order();
        if factorize(q).len() == 1 && factorize(q)[0].1 == 1 {
            ids.insert(SimpleGroupId::cyclic(q as u64));
            continue;
        }
        let candidates = table().with_order(q);
        let id = match candidates.len() {
            0 => return Err(Error::NotInCatalog(format!("simple quotient of order {q}"))),
            1 => candidates[0].id(),
            _ => {
                // Orders of elements of g/M.
                let mut spectrum = BTreeSet::new();
                for x in g.elements() {
                    let o = x.order();
                    let k = (1..=o).find(|k| o % k == 0 && m.contains(&x.pow(*k as i64))).expect("x^o = 1");
                    spectrum.insert(k);
                }
                candidates
                    .iter()
                    .find(|e| e.spectrum.iter().flatten().map(|&x| x as u128).collect::<BTreeSet<_>>() == spectrum)
                    .ok_or_else(|| Error::NotInCatalog(format!("simple quotient of order {q}")))?
                    .id()
            }
        };
        ids.insert(id);
    }
    Ok(QuotientReport { ids, complete: true })
}

/// `[n]`, `[g/n]` (computed on the coset action) and whether `[g] = [n][g/n]`.
pub fn quotient_multiset_identity(
    g: &PermGroup,
    n: &PermGroup,
) -> Result<(CompositionMultiset, CompositionMultiset, bool)> {
    if !n.is_subgroup_of(g)? || !n.is_normal_in(g) {
        return Err(Error::NotNormal("n is not a normal subgroup of g".into()));
    }
    let mn = composition_multiset(n)?;
    let (img, _) = coset_action(g, n, DEFAULT_MAX_INDEX)?;
    let mq = composition_multiset(&img.image)?;
    let mg = composition_multiset(g)?;
    let check = mg == mn.union(&mq);
    Ok((mn, mq, check))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn id(name: &str) -> SimpleGroupId {
        SimpleGroupId::by_name(name).unwrap()
    }

    #[test]
    fn minimal_normal_s3_and_s4() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let r = minimal_normal_subgroups(&s3, &SearchBudget::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.subgroups.len(), 1);
        assert_eq!(r.subgroups[0].subgroup.order(), 3);
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        let (soc, complete) = socle(&s4, &SearchBudget::default()).unwrap();
        assert!(complete);
        assert!(soc.equals(&grp(4, &["(0 1)(2 3)", "(0 2)(1 3)"])).unwrap());
    }

    #[test]
    fn composition_small() {
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        let m = composition_multiset(&s4).unwrap();
        assert_eq!(m, CompositionMultiset::parse("C2^3, C3").unwrap());
        assert!(composition_multiset(&PermGroup::trivial(3)).unwrap().is_empty());
        let a5 = grp(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        assert_eq!(composition_multiset(&a5).unwrap(), CompositionMultiset::parse("A5").unwrap());
        assert_eq!(identify_simple(&a5).unwrap(), id("A5"));
        assert!(identify_simple(&s4).is_err());
        assert!(is_soluble(&s4) && !is_soluble(&a5));
    }

    #[test]
    fn multiset_parse_and_order() {
        let m = CompositionMultiset::parse("A5, C2^2").unwrap();
        assert_eq!(m.order(), 240);
        assert_eq!(m.to_string(), "{C2^2, A5}");
        assert!(m.contains_multiset(&CompositionMultiset::parse("C2").unwrap()));
        assert!(!m.contains_multiset(&CompositionMultiset::parse("C3").unwrap()));
    }

    #[test]
    fn s5_quotients_and_sections() {
        let s5 = grp(5, &["(0 1 2 3 4)", "(0 1)"]);
        let q = simple_quotients(&s5, &SearchBudget::default()).unwrap();
        assert!(q.complete);
        assert_eq!(q.ids, BTreeSet::from([id("C2")]));
        let s = simple_sections(&s5).unwrap();
        assert_eq!(s.names(), vec!["C2", "C3", "C5", "A5"]);
    }
}
