//! Quasiprimitive groups: recognition, the eight-type classification,
//! degree feasibility per type, and related checks.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{general_linear, make_group, ElementIndex, GroupSpec};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::arithmetic::simple_power_degree;
use crate::simple::{factorize, is_prime, SimpleGroupId};
use crate::structure::{
    composition_multiset, composition_multiset_checked, minimal_normal_subgroups, CompositionMultiset, SearchBudget,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QPType {
    HA,
    HS,
    HC,
    TW,
    AS,
    SD,
    CD,
    PA,
}

impl QPType {
    pub const ALL: [QPType; 8] = [
        QPType::HA,
        QPType::HS,
        QPType::HC,
        QPType::TW,
        QPType::AS,
        QPType::SD,
        QPType::CD,
        QPType::PA,
    ];
}

impl fmt::Display for QPType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for QPType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QPType::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Spec(format!("unknown quasiprimitive type {s}")))
    }
}

#[derive(Clone, Debug)]
pub struct QPVerdict {
    pub quasiprimitive: bool,
    /// False when the minimal normal subgroup search was not exhaustive.
    pub complete: bool,
    /// An intransitive minimal normal subgroup, when one was found.
    pub intransitive_normal: Option<PermGroup>,
    pub minimal_normal: Vec<PermGroup>,
}

/// Quasiprimitivity of a transitive group: every minimal normal subgroup
/// must be transitive.
pub fn is_quasiprimitive(g: &PermGroup, budget: &SearchBudget) -> Result<QPVerdict> {
    if !g.is_transitive() {
        return Err(Error::Precondition("quasiprimitivity needs a transitive group".into()));
    }
    if g.order() == 1 {
        return Ok(QPVerdict {
            quasiprimitive: true,
            complete: true,
            intransitive_normal: None,
            minimal_normal: Vec::new(),
        });
    }
    let report = minimal_normal_subgroups(g, budget)?;
    let minimal_normal: Vec<PermGroup> = report.subgroups.into_iter().map(|w| w.subgroup).collect();
    let intransitive_normal = minimal_normal.iter().find(|n| !n.is_transitive()).cloned();
    Ok(QPVerdict {
        quasiprimitive: intransitive_normal.is_none(),
        complete: report.complete,
        intransitive_normal,
        minimal_normal,
    })
}

/// Data supporting a type assignment.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TypeEvidence {
    #[serde(skip)]
    pub socle: PermGroup,
    pub socle_order: u128,
    /// The simple group `T` with `soc(G) ≅ T^k`.
    pub socle_factor: SimpleGroupId,
    pub k: u32,
    pub minimal_normal_count: usize,
    pub socle_regular: bool,
    /// Order of the stabilizer `M_ω` of a point in the socle.
    pub socle_stabilizer_order: u128,
    /// For a unique nonabelian non-regular socle `T^k` with `k ≥ 2`:
    /// whether `M_ω` projects onto each factor.
    pub stab_projections: Vec<bool>,
    /// `(m, x, k, ℓ)` partition parameters; not reconstructed.
    pub partition_data: Option<(u64, u64, u32, u32)>,
    pub provisional: bool,
}

/// The machine-readable classification report.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    #[serde(rename = "type")]
    pub qp_type: QPType,
    pub degree: usize,
    pub order: u128,
    pub socle_order: u128,
    #[serde(rename = "T")]
    pub t: String,
    pub k: u32,
    pub minimal_normal_count: usize,
    pub regular_socle: bool,
    pub provisional: bool,
}

impl ClassificationReport {
    pub fn new(g: &PermGroup, ty: QPType, ev: &TypeEvidence) -> Self {
        ClassificationReport {
            qp_type: ty,
            degree: g.degree(),
            order: g.order(),
            socle_order: ev.socle_order,
            t: ev.socle_factor.name.clone(),
            k: ev.k,
            minimal_normal_count: ev.minimal_normal_count,
            regular_socle: ev.socle_regular,
            provisional: ev.provisional,
        }
    }
}

fn join_all(degree: usize, groups: &[&PermGroup]) -> Result<PermGroup> {
    PermGroup::new(degree, groups.iter().flat_map(|g| g.generators().to_vec()).collect())
}

/// Order of `⟨a, b⟩` compared with `target`, where `⟨a, b⟩` lies in a
/// group of order `target`.
fn generates_all(a: &PermGroup, b: &PermGroup, target: u128) -> Result<bool> {
    let j = join_all(a.degree(), &[a, b])?;
    // A random lower bound that already reaches the target settles it.
    if crate::chain::StabChain::random_lower_bound(j.degree(), j.generators(), target, 400, 11).order() >= target {
        return Ok(true);
    }
    Ok(j.order() >= target)
}

/// Assigns one of the eight types to a quasiprimitive group.
pub fn classify_qp(g: &PermGroup, budget: &SearchBudget) -> Result<(QPType, TypeEvidence)> {
    let verdict = is_quasiprimitive(g, budget)?;
    if !verdict.quasiprimitive {
        return Err(Error::Precondition("group is not quasiprimitive".into()));
    }
    if verdict.minimal_normal.is_empty() {
        return Err(Error::Precondition("the trivial group has no type".into()));
    }
    let mut provisional = !verdict.complete;
    let mins = &verdict.minimal_normal;
    let n = g.degree() as u128;
    let first = &mins[0];
    if first.is_abelian() {
        let (p, k) = factorize(first.order())[0];
        let socle = first.clone();
        let ev = TypeEvidence {
            socle_order: socle.order(),
            socle_factor: SimpleGroupId::cyclic(p as u64),
            k,
            minimal_normal_count: mins.len(),
            socle_regular: socle.order() == n && socle.is_transitive(),
            socle_stabilizer_order: socle.order() / n.min(socle.order()),
            stab_projections: Vec::new(),
            partition_data: None,
            provisional,
            socle,
        };
        return Ok((QPType::HA, ev));
    }
    let refs: Vec<&PermGroup> = mins.iter().collect();
    let socle = join_all(g.degree(), &refs)?.with_known_order(mins.iter().map(PermGroup::order).product());
    let (ms, certified) = composition_multiset_checked(&socle, budget)?;
    provisional |= !certified;
    let mut nonabelian = ms.nonabelian();
    let (t, k) = match (nonabelian.next(), nonabelian.next()) {
        (Some((t, k)), None) if ms.len() == k => (t.clone(), k),
        _ => return Err(Error::Precondition(format!("socle factors {ms} are not a power of one simple group"))),
    };
    let socle_order = socle.order();
    let socle_regular = socle_order == n;
    let stab = socle.stabilizer(0)?;
    let mut ev = TypeEvidence {
        socle: socle.clone(),
        socle_order,
        socle_factor: t.clone(),
        k,
        minimal_normal_count: mins.len(),
        socle_regular,
        socle_stabilizer_order: stab.order(),
        stab_projections: Vec::new(),
        partition_data: None,
        provisional,
    };
    if mins.len() == 2 {
        let simple = composition_multiset(&mins[0])?.len() == 1;
        return Ok((if simple { QPType::HS } else { QPType::HC }, ev));
    }
    if mins.len() > 2 {
        return Err(Error::Precondition("more than two minimal normal subgroups".into()));
    }
    if k == 1 {
        return Ok((QPType::AS, ev));
    }
    if socle_regular {
        return Ok((QPType::TW, ev));
    }
    // The simple direct factors of the socle are its minimal normal subgroups.
    let factors = minimal_normal_subgroups(&socle, budget)?;
    ev.provisional |= !factors.complete;
    let factors: Vec<PermGroup> = factors.subgroups.into_iter().map(|w| w.subgroup).collect();
    if factors.len() != k as usize {
        return Err(Error::Precondition(format!(
            "found {} simple factors in a socle with {k} composition factors",
            factors.len()
        )));
    }
    for i in 0..factors.len() {
        let others: Vec<&PermGroup> = factors.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f).collect();
        let centralizer = join_all(g.degree(), &others)?;
        // M_ω projects onto T_i iff M_ω·C_M(T_i) = M.
        ev.stab_projections.push(generates_all(&stab, &centralizer, socle_order)?);
    }
    let ty = if ev.stab_projections.iter().all(|&b| b) {
        if stab.order() == t.order {
            QPType::SD
        } else {
            QPType::CD
        }
    } else {
        QPType::PA
    };
    Ok((ty, ev))
}

/// [`make_group`] followed by a check of any expected type.
pub fn make_group_verified(spec: &GroupSpec, budget: &SearchBudget) -> Result<PermGroup> {
    let g = make_group(spec)?;
    if let Some(expected) = spec.ground_truth.as_ref().and_then(|t| t.expected_qp_type.as_ref()) {
        let expected: QPType = expected.parse()?;
        let (ty, ev) = classify_qp(&g, budget)?;
        if ty != expected || ev.provisional {
            return Err(Error::Spec(format!(
                "constructed group classified as {ty}{}, expected {expected}",
                if ev.provisional { " (provisional)" } else { "" }
            )));
        }
    }
    Ok(g)
}

/// Parameters realizing a degree for a type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeWitness {
    #[serde(rename = "T")]
    pub t: Option<String>,
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub m: Option<u64>,
    pub x: Option<u64>,
}

impl DegreeWitness {
    fn empty() -> Self {
        DegreeWitness {
            t: None,
            p: None,
            k: None,
            l: None,
            m: None,
            x: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeFeasibility {
    pub feasible: bool,
    /// True for the type with no degree restriction.
    pub unconstrained: bool,
    pub witnesses: Vec<DegreeWitness>,
}

/// The degree formula of each type, as text.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DegreeRule {
    pub qp_type: QPType,
    pub formula: &'static str,
    pub constraints: &'static str,
}

pub fn degree_rule(ty: QPType) -> DegreeRule {
    let (formula, constraints) = match ty {
        QPType::HA => ("p^k", ""),
        QPType::HS => ("|T|", ""),
        QPType::HC => ("|T|^(k/2)", "k >= 4"),
        QPType::TW => ("|T|^k", "k >= 2"),
        QPType::AS => ("-", ""),
        QPType::SD => ("|T|^(k-1)", "k >= 2"),
        QPType::CD => ("|T|^(k-k/l)", "2 <= l, l | k"),
        QPType::PA => ("m*x^k", "m >= 1, x >= 5, k >= 2"),
    };
    DegreeRule {
        qp_type: ty,
        formula,
        constraints,
    }
}

/// Searches for parameters realizing degree `n` for the given type.
pub fn degree_feasible(ty: QPType, n: u128) -> DegreeFeasibility {
    let mut witnesses = Vec::new();
    match ty {
        QPType::AS => {
            return DegreeFeasibility {
                feasible: true,
                unconstrained: true,
                witnesses,
            }
        }
        QPType::HA => {
            let f = factorize(n);
            if f.len() == 1 {
                witnesses.push(DegreeWitness {
                    p: Some(f[0].0 as u64),
                    k: Some(f[0].1),
                    ..DegreeWitness::empty()
                });
            }
        }
        QPType::PA => {
            let mut x = 5u128;
            while x * x <= n {
                let mut k = 2u32;
                while n % x.pow(k) == 0 {
                    witnesses.push(DegreeWitness {
                        m: Some((n / x.pow(k)) as u64),
                        x: Some(x as u64),
                        k: Some(k),
                        ..DegreeWitness::empty()
                    });
                    k += 1;
                }
                x += 1;
            }
        }
        _ => {
            for (t, j) in simple_power_degree(n) {
                let w = |k: u32, l: Option<u32>| DegreeWitness {
                    t: Some(t.name.clone()),
                    k: Some(k),
                    l,
                    ..DegreeWitness::empty()
                };
                match ty {
                    QPType::HS if j == 1 => witnesses.push(w(2, None)),
                    QPType::HC if j >= 2 => witnesses.push(w(2 * j, None)),
                    QPType::TW if j >= 2 => witnesses.push(w(j, None)),
                    QPType::SD => witnesses.push(w(j + 1, None)),
                    QPType::CD => {
                        // k = l·m and j = m·(l − 1)
                        for l in 2..=j + 1 {
                            if j % (l - 1) == 0 {
                                witnesses.push(w(l * (j / (l - 1)), Some(l)));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    DegreeFeasibility {
        feasible: !witnesses.is_empty(),
        unconstrained: false,
        witnesses,
    }
}

/// Whether the degree of a classified group matches its type's formula
/// with its own socle parameters.
pub fn degree_consistent(ty: QPType, ev: &TypeEvidence, n: u128) -> bool {
    let t = ev.socle_factor.order;
    let k = ev.k;
    match ty {
        QPType::HA => ev.socle_factor.is_abelian() && t.pow(k) == n,
        QPType::HS => k == 2 && t == n,
        QPType::HC => k >= 4 && k % 2 == 0 && t.pow(k / 2) == n,
        QPType::TW => k >= 2 && t.pow(k) == n,
        QPType::AS => k == 1,
        QPType::SD => k >= 2 && t.pow(k - 1) == n,
        QPType::CD => (2..=k).any(|l| k % l == 0 && t.pow(k - k / l) == n),
        QPType::PA => k >= 2 && (5..).take_while(|x: &u128| x.pow(2) <= n).any(|x| n % x.pow(k) == 0),
    }
}

/// Which list of type pairs to test against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairContext {
    /// `H` is a quotient of `G` of the same degree.
    QuotientOnly,
    /// Additionally, the two groups are compatible.
    CompatibleQuotient,
}

pub fn pair_type_allowed(tg: QPType, th: QPType, context: PairContext) -> bool {
    use QPType::*;
    let allowed: &[(QPType, QPType)] = match context {
        PairContext::QuotientOnly => &[(HS, AS), (HC, TW), (HA, AS), (HA, PA)],
        PairContext::CompatibleQuotient => &[(HS, AS), (HC, TW)],
    };
    allowed.contains(&(tg, th))
}

/// `n > |Out(T)|`.
pub fn out_bound_check(t: &SimpleGroupId, n: u128) -> Result<bool> {
    if t.is_abelian() {
        return Err(Error::Precondition(format!("{t} is abelian")));
    }
    let e = t
        .catalog_entry()
        .ok_or_else(|| Error::NotInCatalog(t.name.clone()))?;
    Ok(n > e.out_order as u128)
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleStabilizerReport {
    pub socle: CompositionMultiset,
    pub stabilizer: CompositionMultiset,
    /// `[soc(G)] ⊄ [G_v]`.
    pub holds: bool,
}

/// Compares the composition factors of the socle and of a point stabilizer.
pub fn socle_in_stabilizer_check(g: &PermGroup, budget: &SearchBudget) -> Result<SocleStabilizerReport> {
    let (ty, ev) = classify_qp(g, budget)?;
    if !matches!(ty, QPType::AS | QPType::PA) {
        return Err(Error::Precondition(format!("type {ty} is neither AS nor PA")));
    }
    let socle = composition_multiset(&ev.socle)?;
    let stabilizer = composition_multiset(&g.stabilizer(0)?)?;
    let holds = !stabilizer.contains_multiset(&socle);
    Ok(SocleStabilizerReport {
        socle,
        stabilizer,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompFactorsProbe {
    pub d: usize,
    pub p: u32,
    pub subgroups: usize,
    pub irreducible: usize,
    /// Largest number of composition factors of order `p` seen.
    pub max_count: u32,
    pub bound: u32,
    pub holds: bool,
    pub exhaustive: bool,
}

/// Subspaces of `F_p^d` other than `0` and the whole space, as sorted sets
/// of nonzero-vector indices (numbering of [`general_linear`]).
fn proper_subspaces(d: usize, p: u32) -> Vec<Vec<u32>> {
    let size = (p as usize).pow(d as u32);
    let add = |a: usize, b: usize| -> usize {
        let (mut x, mut y, mut r, mut place) = (a, b, 0, 1);
        for _ in 0..d {
            r += ((x % p as usize + y % p as usize) % p as usize) * place;
            x /= p as usize;
            y /= p as usize;
            place *= p as usize;
        }
        r
    };
    let scale = |a: usize, c: usize| -> usize { (0..c).fold(0, |acc, _| add(acc, a)) };
    let span = |gens: &[usize]| -> Vec<usize> {
        let mut set: Vec<usize> = vec![0];
        for &g in gens {
            let mut next = Vec::new();
            for &v in &set {
                for c in 0..p as usize {
                    next.push(add(v, scale(g, c)));
                }
            }
            next.sort_unstable();
            next.dedup();
            set = next;
        }
        set
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    let mut out = Vec::new();
    for _ in 1..d {
        let mut next = Vec::new();
        for s in &frontier {
            for v in 1..size {
                if s.binary_search(&v).is_ok() {
                    continue;
                }
                let mut gens: Vec<usize> = s.clone();
                gens.push(v);
                let sp = span(&gens);
                if seen.insert(sp.clone()) {
                    out.push(sp.iter().filter(|&&x| x != 0).map(|&x| (x - 1) as u32).collect());
                    next.push(sp);
                }
            }
        }
        frontier = next;
    }
    out
}

/// All subgroups of an enumerable group, as element bitsets with generators.
pub fn all_subgroups(g: &PermGroup, limit: usize) -> Result<Vec<(Vec<u64>, Vec<Permutation>)>> {
    let index = ElementIndex::new(g, 100_000)?;
    let n = index.len();
    let words = n.div_ceil(64);
    let mul: Vec<Vec<u32>> = index
        .elements
        .iter()
        .map(|a| {
            index
                .elements
                .iter()
                .map(|b| index.index_of(&a.compose(b)).expect("closed"))
                .collect()
        })
        .collect();
    let closure = |gens: &[u32]| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        let mut list = vec![0u32];
        bits[0] |= 1;
        let mut i = 0;
        while i < list.len() {
            for &s in gens {
                let y = mul[list[i] as usize][s as usize];
                if bits[y as usize / 64] >> (y % 64) & 1 == 0 {
                    bits[y as usize / 64] |= 1 << (y % 64);
                    list.push(y);
                }
            }
            i += 1;
        }
        bits
    };
    let contains = |bits: &[u64], x: u32| bits[x as usize / 64] >> (x % 64) & 1 == 1;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut subgroups: Vec<(Vec<u64>, Vec<u32>)> = Vec::new();
    let trivial = closure(&[]);
    seen.insert(trivial.clone());
    subgroups.push((trivial, Vec::new()));
    let mut cyclic: Vec<u32> = Vec::new();
    for x in 1..n as u32 {
        let c = closure(&[x]);
        if seen.insert(c.clone()) {
            subgroups.push((c, vec![x]));
            cyclic.push(x);
        }
    }
    let mut i = 1;
    while i < subgroups.len() {
        for &x in &cyclic {
            if contains(&subgroups[i].0, x) {
                continue;
            }
            let mut gens = subgroups[i].1.clone();
            gens.push(x);
            let c = closure(&gens);
            if seen.insert(c.clone()) {
                if subgroups.len() >= limit {
                    return Err(Error::Budget(format!("more than {limit} subgroups")));
                }
                subgroups.push((c, gens));
            }
        }
        i += 1;
    }
    Ok(subgroups
        .into_iter()
        .map(|(bits, gens)| {
            let perms = gens.iter().map(|&x| index.elements[x as usize].clone()).collect();
            (bits, perms)
        })
        .collect())
}

/// Over all irreducible subgroups of `GL(d, p)`, the largest number of
/// composition factors of order `p`, compared with `d − 1`.
pub fn compfactors_bound_probe(d: usize, p: u32, limit: usize) -> Result<CompFactorsProbe> {
    if !is_prime(p as u128) || d == 0 {
        return Err(Error::Precondition("need d ≥ 1 and p prime".into()));
    }
    let gl = general_linear(d, p)?;
    let subspaces = proper_subspaces(d, p);
    let subgroups = all_subgroups(&gl, limit)?;
    let mut irreducible = 0;
    let mut max_count = 0;
    for (_, gens) in &subgroups {
        let invariant = subspaces.iter().any(|s| {
            gens.iter()
                .all(|x| s.iter().all(|&v| s.binary_search(&x.image(v)).is_ok()))
        });
        if invariant {
            continue;
        }
        irreducible += 1;
        let h = PermGroup::new(gl.degree(), gens.clone())?;
        let count = composition_multiset(&h)?.cyclic_count(p as u64);
        max_count = max_count.max(count);
    }
    let bound = d as u32 - 1;
    Ok(CompFactorsProbe {
        d,
        p,
        subgroups: subgroups.len(),
        irreducible,
        max_count,
        bound,
        holds: max_count <= bound,
        exhaustive: true,
    })
}

/// A quasiprimitive group `G` and its action on the cosets of `K`, whose
/// kernel is the core of `K`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientPair {
    pub degree: usize,
    pub kernel_order: u128,
    pub g: ClassificationReport,
    pub h: ClassificationReport,
    pub allowed: bool,
}

/// Classifies `G` and its coset image on `G/K`; both must be
/// quasiprimitive of the same degree.
pub fn quotient_pair(g: &PermGroup, k: &PermGroup, budget: &SearchBudget) -> Result<QuotientPair> {
    let (img, _) = crate::action::coset_action(g, k, crate::catalog::MAX_DEGREE)?;
    if img.image.degree() != g.degree() {
        return Err(Error::Precondition(format!(
            "coset image has degree {} but G has degree {}",
            img.image.degree(),
            g.degree()
        )));
    }
    let (tg, eg) = classify_qp(g, budget)?;
    let (th, eh) = classify_qp(&img.image, budget)?;
    Ok(QuotientPair {
        degree: g.degree(),
        kernel_order: img.kernel.order(),
        allowed: pair_type_allowed(tg, th, PairContext::QuotientOnly),
        g: ClassificationReport::new(g, tg, &eg),
        h: ClassificationReport::new(&img.image, th, &eh),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, dihedral, diagonal_wreath, named, symmetric};

    #[test]
    fn quasiprimitivity_examples() {
        let b = SearchBudget::default();
        assert!(is_quasiprimitive(&alternating(5), &b).unwrap().quasiprimitive);
        assert!(is_quasiprimitive(&symmetric(4), &b).unwrap().quasiprimitive);
        let d6 = dihedral(6);
        let v = is_quasiprimitive(&d6, &b).unwrap();
        assert!(!v.quasiprimitive && v.complete);
        assert!(is_quasiprimitive(&PermGroup::from_cycle_strings(4, &["(0 1)"]).unwrap(), &b).is_err());
    }

    #[test]
    fn small_classifications() {
        let b = SearchBudget::default();
        let (t, ev) = classify_qp(&named("AGL(3,2)").unwrap(), &b).unwrap();
        assert_eq!(t, QPType::HA);
        assert!(ev.socle_regular && ev.socle_order == 8 && !ev.provisional);
        assert_eq!(classify_qp(&alternating(5), &b).unwrap().0, QPType::AS);
        assert_eq!(classify_qp(&named("PSL(2,7)").unwrap(), &b).unwrap().0, QPType::AS);
        let (t, ev) = classify_qp(&diagonal_wreath(&alternating(5)).unwrap(), &b).unwrap();
        assert_eq!(t, QPType::SD);
        assert_eq!(ev.stab_projections, vec![true, true]);
        assert!(degree_consistent(t, &ev, 60));
    }

    #[test]
    fn degree_table() {
        let hs = degree_feasible(QPType::HS, 60);
        assert!(hs.feasible && hs.witnesses[0].t.as_deref() == Some("A5"));
        assert!(!degree_feasible(QPType::HS, 100).feasible);
        let tw = degree_feasible(QPType::TW, 3600);
        assert_eq!(tw.witnesses[0].t.as_deref(), Some("A5"));
        assert_eq!(tw.witnesses[0].k, Some(2));
        assert!(degree_feasible(QPType::AS, 7).unconstrained);
        assert!(degree_feasible(QPType::HA, 8).feasible && !degree_feasible(QPType::HA, 12).feasible);
        assert!(degree_feasible(QPType::PA, 64).feasible && !degree_feasible(QPType::PA, 24).feasible);
    }

    #[test]
    fn pair_lists() {
        use PairContext::*;
        assert!(pair_type_allowed(QPType::HS, QPType::AS, CompatibleQuotient));
        assert!(!pair_type_allowed(QPType::HA, QPType::PA, CompatibleQuotient));
        assert!(pair_type_allowed(QPType::HA, QPType::PA, QuotientOnly));
        assert!(!pair_type_allowed(QPType::TW, QPType::HA, QuotientOnly));
    }

    #[test]
    fn out_bounds() {
        let id = |n| SimpleGroupId::by_name(n).unwrap();
        assert!(out_bound_check(&id("PSL(2,7)"), 8).unwrap());
        assert!(out_bound_check(&id("A6"), 6).unwrap());
        assert!(!out_bound_check(&id("A5"), 1).unwrap());
        assert!(out_bound_check(&id("C5"), 10).is_err());
    }

    #[test]
    fn socle_versus_stabilizer() {
        let b = SearchBudget::default();
        let r = socle_in_stabilizer_check(&alternating(5), &b).unwrap();
        assert_eq!(r.stabilizer, CompositionMultiset::parse("C2^2, C3").unwrap());
        assert!(r.holds);
        let r = socle_in_stabilizer_check(&named("PSL(2,7)").unwrap(), &b).unwrap();
        assert_eq!(r.stabilizer, CompositionMultiset::parse("C3, C7").unwrap());
        assert!(r.holds);
    }

    #[test]
    fn probe_gl22() {
        let r = compfactors_bound_probe(2, 2, 10_000).unwrap();
        // GL(2,2) ≅ S3 has six subgroups; C3 and S3 are irreducible, and
        // S3 has one composition factor of order 2.
        assert_eq!(r.subgroups, 6);
        assert_eq!(r.irreducible, 2);
        assert_eq!(r.max_count, 1);
        assert!(r.holds);
    }
}
