//! Compatibility of permutation groups: necessary conditions, and witnesses
//! built from a group `H` with isomorphic subgroups `A`, `B` and an element
//! `g` on `H × C2` with `A^g = B = H ∩ H^g`.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{coset_action, coset_images, ActionImage, DEFAULT_MAX_INDEX};
use crate::catalog::{direct_product, ElementIndex};
use crate::digraph::{local_action_with_stabilizer, strongly_connected, Digraph, Direction, LocalActionReport};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::iso::{perm_isomorphic, PermIsoCertificate, Verdict, DEFAULT_NODE_BUDGET};
use crate::perm::Permutation;
use crate::simple::factorize;
use crate::structure::{
    composition_multiset, is_soluble, simple_quotients, simple_sections, CompositionMultiset, SearchBudget,
};

/// Largest `|H|` accepted by [`regular_embedding`].
pub const MAX_REGULAR_ORDER: u128 = 25_000;

/// Largest `|A|` for which an isomorphism table is checked pair by pair.
const EXHAUSTIVE_PHI_LIMIT: usize = 5_000;

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub holds: bool,
    /// False when a sub-computation stopped early; a failing condition
    /// then certifies nothing.
    pub complete: bool,
    pub evidence: String,
}

impl Condition {
    fn exact(holds: bool, evidence: String) -> Self {
        Condition {
            holds,
            complete: true,
            evidence,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NecessaryReport {
    pub degree_equal: Condition,
    pub orbit_count_equal: Condition,
    pub sections_equal: Condition,
    pub primes_equal: Condition,
    pub soluble_agree: Condition,
    /// `None` unless both groups are transitive and nontrivial.
    pub common_simple_quotient: Option<Condition>,
    pub passes: bool,
    /// Some condition fails with complete evidence.
    pub certified_incompatible: bool,
}

fn primes(order: u128) -> Vec<u128> {
    factorize(order).into_iter().map(|(p, _)| p).collect()
}

/// Conditions every compatible pair satisfies.
pub fn necessary_compat_check(l_minus: &PermGroup, l_plus: &PermGroup, budget: &SearchBudget) -> Result<NecessaryReport> {
    let (dm, dp) = (l_minus.degree(), l_plus.degree());
    let degree_equal = Condition::exact(dm == dp, format!("{dm} vs {dp}"));
    let (om, op) = (l_minus.orbits().len(), l_plus.orbits().len());
    let orbit_count_equal = Condition::exact(om == op, format!("{om} vs {op}"));
    let (sm, sp) = (simple_sections(l_minus)?, simple_sections(l_plus)?);
    let sections_equal = Condition {
        holds: sm.ids == sp.ids,
        complete: sm.complete && sp.complete,
        evidence: format!("{:?} vs {:?}", sm.names(), sp.names()),
    };
    let (pm, pp) = (primes(l_minus.order()), primes(l_plus.order()));
    let primes_equal = Condition::exact(pm == pp, format!("{pm:?} vs {pp:?}"));
    let (rm, rp) = (is_soluble(l_minus), is_soluble(l_plus));
    let soluble_agree = Condition::exact(rm == rp, format!("{rm} vs {rp}"));
    let applies = l_minus.is_transitive() && l_plus.is_transitive() && l_minus.order() > 1 && l_plus.order() > 1;
    let common_simple_quotient = if applies {
        let (qm, qp) = (simple_quotients(l_minus, budget)?, simple_quotients(l_plus, budget)?);
        let common: Vec<String> = qm.ids.intersection(&qp.ids).map(|t| t.name.clone()).collect();
        Some(Condition {
            holds: !common.is_empty(),
            complete: !common.is_empty() || (qm.complete && qp.complete),
            evidence: format!("common simple quotients {common:?}"),
        })
    } else {
        None
    };
    let all: Vec<&Condition> = [
        &degree_equal,
        &orbit_count_equal,
        &sections_equal,
        &primes_equal,
        &soluble_agree,
    ]
    .into_iter()
    .chain(common_simple_quotient.as_ref())
    .collect();
    let passes = all.iter().all(|c| c.holds);
    let certified_incompatible = all.iter().any(|c| !c.holds && c.complete);
    Ok(NecessaryReport {
        degree_equal,
        orbit_count_equal,
        sections_equal,
        primes_equal,
        soluble_agree,
        common_simple_quotient,
        passes,
        certified_incompatible,
    })
}

/// Right regular action on the elements of `h`, with the element indexing.
pub fn regular_embedding(h: &PermGroup) -> Result<(PermGroup, ElementIndex)> {
    if h.order() > MAX_REGULAR_ORDER {
        return Err(Error::Budget(format!("|H| = {} exceeds {MAX_REGULAR_ORDER}", h.order())));
    }
    let index = ElementIndex::new(h, MAX_REGULAR_ORDER)?;
    let gens = h.generators().iter().map(|x| index.right_multiplication(x)).collect();
    Ok((PermGroup::new(index.len(), gens)?.with_known_order(h.order()), index))
}

/// An isomorphism `A → B` between subgroups of `H`, on element indices.
#[derive(Clone, Debug)]
pub struct IsoTable {
    pub domain: Vec<u32>,
    pub image: Vec<u32>,
    pub map: HashMap<u32, u32>,
}

/// `H`, its subgroups `A = H_-`, `B = H_+` and an isomorphism between them.
#[derive(Clone, Debug)]
pub struct CompatProblem {
    /// `H` as given.
    pub source: PermGroup,
    pub a: PermGroup,
    pub b: PermGroup,
    pub index: ElementIndex,
    /// `H` acting regularly on its elements.
    pub h: PermGroup,
    pub phi: IsoTable,
}

impl CompatProblem {
    /// Builds a problem from `(x, φ(x))` pairs: a full table, or images of
    /// generators of `A` which are extended multiplicatively.
    pub fn new(h: &PermGroup, a: &PermGroup, b: &PermGroup, phi_pairs: &[(Permutation, Permutation)]) -> Result<Self> {
        if !a.is_subgroup_of(h)? || !b.is_subgroup_of(h)? {
            return Err(Error::NotSubgroup("A and B must lie in H".into()));
        }
        if a.order() != b.order() {
            return Err(Error::NotHomomorphism(format!("|A| = {} but |B| = {}", a.order(), b.order())));
        }
        let (regular, index) = regular_embedding(h)?;
        let idx = |x: &Permutation| -> Result<u32> {
            index
                .index_of(x)
                .ok_or_else(|| Error::NotSubgroup(format!("{x} is not in H")))
        };
        let mul = |i: u32, j: u32| -> u32 {
            index
                .index_of(&index.elements[i as usize].compose(&index.elements[j as usize]))
                .expect("closed")
        };
        let mut pairs = Vec::with_capacity(phi_pairs.len());
        for (x, y) in phi_pairs {
            if !a.contains(x) || !b.contains(y) {
                return Err(Error::NotHomomorphism(format!("pair ({x}, {y}) is not in A × B")));
            }
            pairs.push((idx(x)?, idx(y)?));
        }
        // Closure of the graph of φ under right multiplication by the pairs.
        let mut map: HashMap<u32, u32> = HashMap::from([(0, 0)]);
        let mut domain = vec![0u32];
        let mut i = 0;
        while i < domain.len() {
            let (u, fu) = (domain[i], map[&domain[i]]);
            for &(s, fs) in &pairs {
                let (v, fv) = (mul(u, s), mul(fu, fs));
                match map.get(&v) {
                    Some(&w) if w != fv => {
                        return Err(Error::NotHomomorphism(format!(
                            "{} has two images",
                            index.elements[v as usize]
                        )))
                    }
                    Some(_) => {}
                    None => {
                        map.insert(v, fv);
                        domain.push(v);
                    }
                }
            }
            i += 1;
        }
        if domain.len() as u128 != a.order() {
            return Err(Error::NotHomomorphism("the pairs do not generate A".into()));
        }
        let image: BTreeSet<u32> = map.values().copied().collect();
        if image.len() != domain.len() {
            return Err(Error::NotHomomorphism("φ is not injective".into()));
        }
        if domain.len() <= EXHAUSTIVE_PHI_LIMIT && phi_pairs.len() == domain.len() {
            for &x in &domain {
                for &y in &domain {
                    if map[&mul(x, y)] != mul(map[&x], map[&y]) {
                        return Err(Error::NotHomomorphism("φ(xy) ≠ φ(x)φ(y)".into()));
                    }
                }
            }
        }
        domain.sort_unstable();
        Ok(CompatProblem {
            source: h.clone(),
            a: a.clone(),
            b: b.clone(),
            index,
            h: regular,
            phi: IsoTable {
                domain,
                image: image.into_iter().collect(),
                map,
            },
        })
    }

    /// `A = B = H` with `φ` the identity.
    pub fn identity(h: &PermGroup) -> Result<Self> {
        let pairs: Vec<_> = h.generators().iter().map(|x| (x.clone(), x.clone())).collect();
        CompatProblem::new(h, h, h, &pairs)
    }

    pub fn order(&self) -> usize {
        self.index.len()
    }

    fn mul(&self, i: u32, x: &Permutation) -> u32 {
        self.index
            .index_of(&self.index.elements[i as usize].compose(x))
            .expect("closed")
    }

    fn mul_idx(&self, i: u32, j: u32) -> u32 {
        self.mul(i, &self.index.elements[j as usize])
    }

    /// Left cosets `xA` as element-index lists, in the order of `phi.domain`.
    fn left_cosets(&self, sub: &[u32]) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in 0..self.order() as u32 {
            if seen[x as usize] {
                continue;
            }
            let coset: Vec<u32> = sub.iter().map(|&a| self.mul_idx(x, a)).collect();
            for &y in &coset {
                seen[y as usize] = true;
            }
            out.push(coset);
        }
        out
    }

    /// `ρ(x)` on the `2|H|` points of `H × C2` (point `c·|H| + i` is `(e_i, c)`).
    pub fn doubled(&self, x: &Permutation) -> Permutation {
        let r = self.index.right_multiplication(x);
        let n = self.order() as u32;
        let images = (0..2 * n).map(|p| r.image(p % n) + (p / n) * n).collect();
        Permutation::from_images(images).expect("bijection")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Random block-form elements preserving the two copies.
    Block,
    /// Exhaustive backtrack over images of `g`, for `|H| ≤ 24`.
    Backtrack,
    /// Block search, then backtrack when small enough.
    Auto,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub strategy: Strategy,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strategy: Strategy::Auto,
            seed: 0,
            samples: 100_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchDiagnostics {
    pub strategies_tried: Vec<Strategy>,
    pub samples: usize,
    /// Smallest `|{x ∈ H : x^g ∈ H}|` seen; `|B|` means success.
    pub best_intersection: usize,
}

#[derive(Clone, Debug)]
pub struct HnnSearch {
    pub element: Option<Permutation>,
    pub diagnostics: SearchDiagnostics,
}

const BACKTRACK_LIMIT: usize = 24;

/// The `y` with `f = ρ(y)` on `H × C2`, if any.
fn translation_of(p: &CompatProblem, f: impl Fn(u32) -> u32) -> Option<u32> {
    let n = p.order() as u32;
    let y = f(0);
    if y >= n {
        return None;
    }
    let ye = &p.index.elements[y as usize];
    (0..2 * n).all(|q| f(q) == p.mul(q % n, ye) + (q / n) * n).then_some(y)
}

/// Size of `{x ∈ H : g⁻¹ρ(x)g ∈ ρ(H)}`, testing one element per left coset
/// of `A`. Stops early once it exceeds `|A|`, returning `|A| + 1`.
fn conjugate_hits(p: &CompatProblem, g: &[u32], g_inv: &[u32], cosets: &[Vec<u32>]) -> usize {
    let n = p.order() as u32;
    let a = p.phi.domain.len();
    let mut hits = 0;
    for coset in cosets {
        let x = &p.index.elements[coset[0] as usize];
        let conj = |q: u32| -> u32 {
            let pre = g_inv[q as usize];
            g[(p.mul(pre % n, x) + (pre / n) * n) as usize]
        };
        if translation_of(p, conj).is_some() {
            hits += 1;
            if hits > 1 {
                return a + 1;
            }
        }
    }
    hits * a
}

/// `σ(u_j·a) = w_π(j)·φ(a)` on one copy.
fn block_map(p: &CompatProblem, a_cosets: &[Vec<u32>], u: &[u32], w: &[u32], pi: &[usize]) -> Vec<u32> {
    let mut sigma = vec![0u32; p.order()];
    for (j, _) in a_cosets.iter().enumerate() {
        let (uj, wj) = (u[j], w[pi[j]]);
        for &a in &p.phi.domain {
            sigma[p.mul_idx(uj, a) as usize] = p.mul_idx(wj, p.phi.map[&a]);
        }
    }
    sigma
}

fn invert(g: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; g.len()];
    for (i, &x) in g.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn block_search(p: &CompatProblem, opts: &SearchOptions, diag: &mut SearchDiagnostics) -> Option<Permutation> {
    let n = p.order();
    let a_cosets = p.left_cosets(&p.phi.domain);
    let b_cosets = p.left_cosets(&p.phi.image);
    let m = a_cosets.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for sample in 0..opts.samples {
        diag.samples += 1;
        let mut g = Vec::with_capacity(2 * n);
        for c in 0..2 {
            let (u, w, pi): (Vec<u32>, Vec<u32>, Vec<usize>) = if sample == 0 {
                let u = a_cosets.iter().map(|cs| cs[0]).collect();
                let w = b_cosets.iter().map(|cs| cs[0]).collect();
                (u, w, (0..m).collect())
            } else {
                let u = a_cosets.iter().map(|cs| cs[rng.gen_range(0..cs.len())]).collect();
                let w = b_cosets.iter().map(|cs| cs[rng.gen_range(0..cs.len())]).collect();
                let mut pi: Vec<usize> = (0..m).collect();
                pi.shuffle(&mut rng);
                (u, w, pi)
            };
            let sigma = block_map(p, &a_cosets, &u, &w, &pi);
            g.extend(sigma.into_iter().map(|x| x + (c * n) as u32));
        }
        let g_inv = invert(&g);
        let hits = conjugate_hits(p, &g, &g_inv, &a_cosets);
        diag.best_intersection = diag.best_intersection.min(hits);
        if hits == p.phi.domain.len() {
            return Some(Permutation::from_images(g).expect("bijection"));
        }
    }
    None
}

/// Depth-first search over `g` on `2|H|` points. `g` is fixed on the
/// identity of copy 0 up to `A`-translation and forced along `A`-orbits by
/// `ρ(a)g = gρ(φ(a))`.
fn backtrack_search(p: &CompatProblem, diag: &mut SearchDiagnostics) -> Option<Permutation> {
    let n = p.order();
    let total = 2 * n;
    let a_elems: Vec<(u32, u32)> = p.phi.domain.iter().map(|&a| (a, p.phi.map[&a])).collect();
    // A-orbits on the doubled point set: (x, c) ↦ (x·a, c)
    let mut orbit_reps = Vec::new();
    let mut seen = vec![false; total];
    for q in 0..total as u32 {
        if seen[q as usize] {
            continue;
        }
        orbit_reps.push(q);
        for &(a, _) in &a_elems {
            seen[(p.mul_idx(q % n as u32, a) + (q / n as u32) * n as u32) as usize] = true;
        }
    }
    let a_cosets = p.left_cosets(&p.phi.domain);
    let mut g = vec![u32::MAX; total];
    let mut used = vec![false; total];
    fn go(
        p: &CompatProblem,
        r: usize,
        reps: &[u32],
        a_elems: &[(u32, u32)],
        g: &mut Vec<u32>,
        used: &mut Vec<bool>,
        a_cosets: &[Vec<u32>],
        diag: &mut SearchDiagnostics,
    ) -> bool {
        let n = p.order() as u32;
        if r == reps.len() {
            diag.samples += 1;
            let g_inv = invert(g);
            let hits = conjugate_hits(p, g, &g_inv, a_cosets);
            diag.best_intersection = diag.best_intersection.min(hits);
            return hits == a_elems.len();
        }
        let q = reps[r];
        for target in 0..2 * n {
            if used[target as usize] {
                continue;
            }
            let mut assigned = Vec::new();
            let mut ok = true;
            for &(a, fa) in a_elems {
                let src = p.mul_idx(q % n, a) + (q / n) * n;
                let dst = p.mul_idx(target % n, fa) + (target / n) * n;
                if g[src as usize] == u32::MAX && !used[dst as usize] {
                    g[src as usize] = dst;
                    used[dst as usize] = true;
                    assigned.push(src);
                } else if g[src as usize] != dst {
                    ok = false;
                    break;
                }
            }
            if ok && go(p, r + 1, reps, a_elems, g, used, a_cosets, diag) {
                return true;
            }
            for src in assigned {
                used[g[src as usize] as usize] = false;
                g[src as usize] = u32::MAX;
            }
        }
        false
    }
    if go(p, 0, &orbit_reps, &a_elems, &mut g, &mut used, &a_cosets, diag) {
        Some(Permutation::from_images(g).expect("bijection"))
    } else {
        None
    }
}

/// Searches for `g` with `A^g = B = H ∩ H^g`. A failed search proves nothing.
pub fn find_hnn_element(p: &CompatProblem, opts: &SearchOptions) -> HnnSearch {
    let mut diag = SearchDiagnostics {
        strategies_tried: Vec::new(),
        samples: 0,
        best_intersection: usize::MAX,
    };
    let mut element = None;
    if matches!(opts.strategy, Strategy::Block | Strategy::Auto) {
        diag.strategies_tried.push(Strategy::Block);
        element = block_search(p, opts, &mut diag);
    }
    if element.is_none()
        && (opts.strategy == Strategy::Backtrack || (opts.strategy == Strategy::Auto && p.order() <= BACKTRACK_LIMIT))
    {
        diag.strategies_tried.push(Strategy::Backtrack);
        element = backtrack_search(p, &mut diag);
    }
    HnnSearch {
        element,
        diagnostics: diag,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessChecks {
    pub a_conjugates_to_b: bool,
    pub intersection_is_b: bool,
    pub degree: usize,
    pub l_minus_degree: usize,
    pub l_minus_order: u128,
    pub l_minus_kernel_order: u128,
    pub l_plus_degree: usize,
    pub l_plus_order: u128,
    pub l_plus_kernel_order: u128,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub problem: CompatProblem,
    pub g: Permutation,
    /// `⟨ρ(H), g⟩` on `H × C2`.
    pub big_group: PermGroup,
    pub checks: WitnessChecks,
    pub l_minus: ActionImage,
    pub l_plus: ActionImage,
    pub diagnostics: SearchDiagnostics,
}

impl Witness {
    pub fn verified(&self) -> bool {
        self.checks.a_conjugates_to_b && self.checks.intersection_is_b
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "H": {"degree": self.problem.source.degree(), "order": self.problem.source.order(),
                  "generators": self.problem.source.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>()},
            "A": self.problem.a.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "B": self.problem.b.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "g": self.g.to_string(),
            "checks": self.checks,
            "search": self.diagnostics,
        })
    }
}

/// Finds `g` and verifies `A^g = B` and `H ∩ H^g = B` independently of the search.
pub fn build_witness(p: &CompatProblem, opts: &SearchOptions) -> Result<Witness> {
    let search = find_hnn_element(p, opts);
    let g = search.element.ok_or_else(|| {
        Error::SearchFailed(format!(
            "no element found after {} samples (best intersection {}); this does not show incompatibility",
            search.diagnostics.samples, search.diagnostics.best_intersection
        ))
    })?;
    let n = p.order() as u32;
    let gi = g.inverse();
    let a_conjugates_to_b = p.a.generators().iter().all(|x| {
        let y = p.phi.map[&p.index.index_of(x).expect("in H")];
        translation_of(p, |q| g.image(p.mul(gi.image(q) % n, x) + (gi.image(q) / n) * n)) == Some(y)
    });
    // H ∩ H^g by brute force over all of H: y ∈ H^g iff g·ρ(y)·g⁻¹ ∈ ρ(H).
    let mut meet = 0usize;
    let mut inside_b = true;
    let b_set: BTreeSet<u32> = p.phi.image.iter().copied().collect();
    for y in 0..n {
        let ye = &p.index.elements[y as usize];
        if translation_of(p, |q| gi.image(p.mul(g.image(q) % n, ye) + (g.image(q) / n) * n)).is_some() {
            meet += 1;
            inside_b &= b_set.contains(&y);
        }
    }
    let intersection_is_b = inside_b && meet == p.phi.image.len();
    let mut gens: Vec<Permutation> = p.source.generators().iter().map(|x| p.doubled(x)).collect();
    gens.push(g.clone());
    let big_group = PermGroup::new(2 * n as usize, gens)?;
    let (l_minus, _) = coset_action(&p.source, &p.a, DEFAULT_MAX_INDEX)?;
    let (l_plus, _) = coset_action(&p.source, &p.b, DEFAULT_MAX_INDEX)?;
    let checks = WitnessChecks {
        a_conjugates_to_b,
        intersection_is_b,
        degree: 2 * n as usize,
        l_minus_degree: l_minus.image.degree(),
        l_minus_order: l_minus.image.order(),
        l_minus_kernel_order: l_minus.kernel.order(),
        l_plus_degree: l_plus.image.degree(),
        l_plus_order: l_plus.image.order(),
        l_plus_kernel_order: l_plus.kernel.order(),
    };
    if !(checks.a_conjugates_to_b && checks.intersection_is_b) {
        return Err(Error::SearchFailed("candidate failed verification".into()));
    }
    Ok(Witness {
        problem: p.clone(),
        g,
        big_group,
        checks,
        l_minus,
        l_plus,
        diagnostics: search.diagnostics,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalActionChecks {
    pub degrees_equal: bool,
    pub orbit_counts_equal: bool,
    pub sections_equal: bool,
    pub strongly_connected: bool,
}

#[derive(Clone, Debug)]
pub struct WitnessDigraph {
    pub digraph: Digraph,
    pub out_local: LocalActionReport,
    pub in_local: LocalActionReport,
    pub out_certificate: PermIsoCertificate,
    pub in_certificate: PermIsoCertificate,
    pub local_checks: LocalActionChecks,
}

impl WitnessDigraph {
    pub fn verified(&self) -> bool {
        self.out_certificate.verdict == Verdict::Yes
            && self.in_certificate.verdict == Verdict::Yes
            && self.local_checks.degrees_equal
            && self.local_checks.orbit_counts_equal
            && self.local_checks.strongly_connected
    }
}

/// The digraph on the cosets of `H` in `⟨H, g⟩` with arcs `(H, Hg)^G`.
pub fn witness_digraph(w: &Witness, max_index: usize) -> Result<WitnessDigraph> {
    let h_big = PermGroup::new(w.big_group.degree(), w.big_group.generators()[..w.problem.source.generators().len()].to_vec())?
        .with_known_order(w.problem.source.order());
    let images = coset_images(w.big_group.generators(), &h_big, max_index)?;
    let index = images[0].degree();
    let g_img = images.last().expect("g is a generator");
    let target = g_img.image(0);
    if index == 1 || target == 0 {
        return Err(Error::Precondition("degenerate witness: v^g = v, no arcs".into()));
    }
    let group = PermGroup::new(index, images.clone())?;
    let mut arcs = BTreeSet::from([(0u32, target)]);
    let mut queue = vec![(0u32, target)];
    while let Some((u, v)) = queue.pop() {
        for x in &images {
            let next = (x.image(u), x.image(v));
            if arcs.insert(next) {
                queue.push(next);
            }
        }
    }
    let digraph = Digraph::new(index, arcs)?.with_group(group)?;
    let stab = &images[..images.len() - 1];
    let out_local = local_action_with_stabilizer(&digraph, 0, Direction::Out, stab)?;
    let in_local = local_action_with_stabilizer(&digraph, 0, Direction::In, stab)?;
    let out_certificate = perm_isomorphic(&out_local.induced_group, &w.l_plus.image, DEFAULT_NODE_BUDGET);
    let in_certificate = perm_isomorphic(&in_local.induced_group, &w.l_minus.image, DEFAULT_NODE_BUDGET);
    let sections_equal = match (simple_sections(&in_local.induced_group), simple_sections(&out_local.induced_group)) {
        (Ok(a), Ok(b)) => a.ids == b.ids,
        _ => false,
    };
    let local_checks = LocalActionChecks {
        degrees_equal: out_local.neighbours.len() == in_local.neighbours.len(),
        orbit_counts_equal: out_local.induced_group.orbits().len() == in_local.induced_group.orbits().len(),
        sections_equal,
        strongly_connected: strongly_connected(&digraph).strongly_connected,
    };
    Ok(WitnessDigraph {
        digraph,
        out_local,
        in_local,
        out_certificate,
        in_certificate,
        local_checks,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularPairChecks {
    pub l_minus_regular: bool,
    pub l_plus_regular: bool,
    pub cores_are_subgroups: bool,
}

/// Witness for normal `A`, `B`: the local actions are the regular actions
/// of `H/A` and `H/B`.
pub fn regular_pair_witness(
    h: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
    phi_pairs: &[(Permutation, Permutation)],
    opts: &SearchOptions,
) -> Result<(Witness, RegularPairChecks)> {
    for (name, s) in [("A", a), ("B", b)] {
        if !s.is_subgroup_of(h)? || !s.is_normal_in(h) {
            return Err(Error::NotNormal(format!("{name} is not normal in H")));
        }
    }
    let p = CompatProblem::new(h, a, b, phi_pairs)?;
    let w = build_witness(&p, opts)?;
    let regular = |img: &ActionImage| img.image.order() == img.image.degree() as u128;
    let checks = RegularPairChecks {
        l_minus_regular: regular(&w.l_minus),
        l_plus_regular: regular(&w.l_plus),
        cores_are_subgroups: w.l_minus.kernel.order() == a.order() && w.l_plus.kernel.order() == b.order(),
    };
    Ok((w, checks))
}

#[derive(Clone, Debug)]
pub struct SubnormalWitness {
    pub problem: CompatProblem,
    /// Union of the factors `X_i/X_(i-1)`.
    pub predicted: CompositionMultiset,
    pub quotient_minus: CompositionMultiset,
    pub quotient_plus: CompositionMultiset,
    pub verified: bool,
}

/// From `X_1 ◁ X_2 ◁ … ◁ X_n = L`, the group `H = X_1 × … × X_n` with
/// `A = X_1 × … × X_(n-1) × 1` and `B = 1 × X_1 × … × X_(n-1)`, so that
/// `H/A ≅ L` and `H/B ≅ X_1 × X_2/X_1 × … × X_n/X_(n-1)`.
pub fn subnormal_series_witness(series: &[PermGroup]) -> Result<SubnormalWitness> {
    let k = series.len();
    if k == 0 {
        return Err(Error::Precondition("empty series".into()));
    }
    let d = series[0].degree();
    for w in series.windows(2) {
        if !w[0].is_subgroup_of(&w[1])? || !w[0].is_normal_in(&w[1]) {
            return Err(Error::NotNormal("series is not subnormal".into()));
        }
    }
    let h = direct_product(series)?;
    let deg = h.degree();
    let slot = |x: &Permutation, i: usize| x.shifted(i * d, deg);
    let mut a_gens = Vec::new();
    let mut b_gens = Vec::new();
    let mut pairs = Vec::new();
    for (i, x) in series[..k - 1].iter().enumerate() {
        for s in x.generators() {
            a_gens.push(slot(s, i));
            b_gens.push(slot(s, i + 1));
            pairs.push((slot(s, i), slot(s, i + 1)));
        }
    }
    let inner: u128 = series[..k - 1].iter().map(PermGroup::order).product();
    let a = PermGroup::new(deg, a_gens)?.with_known_order(inner);
    let b = PermGroup::new(deg, b_gens)?.with_known_order(inner);
    let problem = CompatProblem::new(&h, &a, &b, &pairs)?;
    let mut predicted = CompositionMultiset::new();
    let mut previous = CompositionMultiset::new();
    for x in series {
        let m = composition_multiset(x)?;
        predicted.merge(&m.difference(&previous).expect("subgroup factors"));
        previous = m;
    }
    let mh = composition_multiset(&h)?;
    let quotient_minus = mh.difference(&composition_multiset(&a)?).expect("A ≤ H");
    let quotient_plus = mh.difference(&composition_multiset(&b)?).expect("B ≤ H");
    let l = series.last().expect("nonempty");
    let verified = quotient_plus == predicted
        && quotient_minus == composition_multiset(l)?
        && h.order() / a.order() == l.order()
        && b.is_normal_in(&h)
        && a.is_normal_in(&h);
    Ok(SubnormalWitness {
        problem,
        predicted,
        quotient_minus,
        quotient_plus,
        verified,
    })
}

/// Whether `x ↦ y` over `pairs` extends to an isomorphism `A → B`: the
/// pairs generate a subgroup of `A × B` projecting onto both factors, and
/// it has order `|A| = |B|` exactly when it is the graph of a bijective
/// homomorphism.
pub fn extends_to_isomorphism(a: &PermGroup, b: &PermGroup, pairs: &[(Permutation, Permutation)]) -> Result<bool> {
    let (da, db) = (a.degree(), b.degree());
    let xs: Vec<Permutation> = pairs.iter().map(|(x, _)| x.clone()).collect();
    let ys: Vec<Permutation> = pairs.iter().map(|(_, y)| y.clone()).collect();
    if a.order() != b.order()
        || PermGroup::new(da, xs)?.order() != a.order()
        || PermGroup::new(db, ys)?.order() != b.order()
    {
        return Ok(false);
    }
    let graph: Vec<Permutation> = pairs
        .iter()
        .map(|(x, y)| {
            let images = x.images().iter().copied().chain(y.images().iter().map(|&q| q + da as u32)).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<_>>()?;
    Ok(PermGroup::new(da + db, graph)?.order() == a.order())
}

/// JSON form of a problem: `H` by generators, `A` and `B` by generators or
/// elements, and `φ` as pairs (a full table or generator images).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompatProblemJson {
    pub degree: usize,
    pub group: Vec<String>,
    pub subgroup_a: Vec<String>,
    pub subgroup_b: Vec<String>,
    pub phi: Vec<(String, String)>,
}

impl CompatProblemJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_problem(&self) -> Result<CompatProblem> {
        let perm = |s: &String| Permutation::parse(s, Some(self.degree));
        let group = |v: &[String]| -> Result<PermGroup> {
            PermGroup::new(self.degree, v.iter().map(perm).collect::<Result<Vec<_>>>()?)
        };
        let pairs = self
            .phi
            .iter()
            .map(|(x, y)| Ok((perm(x)?, perm(y)?)))
            .collect::<Result<Vec<_>>>()?;
        CompatProblem::new(&group(&self.group)?, &group(&self.subgroup_a)?, &group(&self.subgroup_b)?, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn s3_witness() {
        let h = grp(3, &["(0 1 2)", "(0 1)"]);
        let a = grp(3, &["(0 1)"]);
        let b = grp(3, &["(0 2)"]);
        let p = CompatProblem::new(&h, &a, &b, &[(perm(3, "(0 1)"), perm(3, "(0 2)"))]).unwrap();
        let w = build_witness(&p, &SearchOptions::default()).unwrap();
        assert!(w.verified());
        assert_eq!(w.checks.degree, 12);
        assert_eq!((w.checks.l_minus_degree, w.checks.l_plus_degree), (3, 3));
    }

    #[test]
    fn identity_problem() {
        let h = grp(3, &["(0 1 2)", "(0 1)"]);
        let p = CompatProblem::identity(&h).unwrap();
        let w = build_witness(&p, &SearchOptions::default()).unwrap();
        assert!(w.g.is_identity());
        assert!(witness_digraph(&w, 1000).is_err());
    }

    #[test]
    fn bad_phi() {
        let h = grp(3, &["(0 1 2)"]);
        let r = CompatProblem::new(
            &h,
            &h,
            &h,
            &[
                (perm(3, "()"), perm(3, "()")),
                (perm(3, "(0 1 2)"), perm(3, "(0 1 2)")),
                (perm(3, "(0 2 1)"), perm(3, "(0 1 2)")),
            ],
        );
        assert!(matches!(r, Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn regular_embeddings() {
        let (c3, _) = regular_embedding(&grp(3, &["(0 1 2)"])).unwrap();
        assert_eq!(c3.generators()[0].to_string(), "(0 1 2)");
        let (s3, _) = regular_embedding(&grp(3, &["(0 1 2)", "(0 1)"])).unwrap();
        assert_eq!((s3.degree(), s3.order()), (6, 6));
    }

    #[test]
    fn series_constructions() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let c3 = grp(3, &["(0 1 2)"]);
        let w = subnormal_series_witness(&[c3, s3.clone()]).unwrap();
        assert!(w.verified);
        assert_eq!(w.problem.order(), 18);
        assert_eq!(w.quotient_plus, CompositionMultiset::parse("C2, C3").unwrap());
        let w = subnormal_series_witness(&[s3.clone()]).unwrap();
        assert!(w.verified && w.problem.phi.domain.len() == 1);
    }
}
