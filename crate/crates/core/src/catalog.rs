//! Concrete permutation groups: named groups, products, wreath products,
//! regular representations and the holomorph-type family.
//!
//! Wreath products in product action act on `Δ^k`, with the tuple
//! `(a_0, .., a_{k-1})` numbered `Σ a_i·|Δ|^(k-1-i)` (first coordinate most
//! significant). The imprimitive action puts point `x` of block `j` at
//! `j·|Δ| + x`.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::action::{coset_action, DEFAULT_MAX_INDEX};
use crate::error::{Error, Result};
use crate::group::{PermGroup, ENUMERATION_LIMIT};
use crate::perm::Permutation;

/// Largest degree any constructor will produce.
pub const MAX_DEGREE: usize = 50_000;

static NAMED_JSON: &str = include_str!("../data/named_groups.json");

#[derive(Clone, Debug, Deserialize)]
pub struct NamedEntry {
    pub name: String,
    pub degree: usize,
    pub order: u128,
    pub generators: Vec<String>,
    #[serde(default)]
    pub note: String,
}

#[derive(Deserialize)]
struct NamedFile {
    groups: Vec<NamedEntry>,
}

/// Groups shipped as explicit generator lists.
pub fn named_entries() -> &'static [NamedEntry] {
    static TABLE: OnceLock<Vec<NamedEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        serde_json::from_str::<NamedFile>(NAMED_JSON)
            .expect("bundled generator lists parse")
            .groups
    })
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        return Err(Error::Budget(format!("degree {degree} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&(0..n as u32).collect::<Vec<_>>()]).expect("cycle"));
        gens.push(Permutation::from_cycles(n, &[&[0, 1]]).expect("cycle"));
    }
    PermGroup::new(n.max(1), gens).expect("valid").with_known_order(factorial(n))
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let long: Vec<u32> = if n % 2 == 1 { (0..n as u32).collect() } else { (1..n as u32).collect() };
    let gens = vec![
        Permutation::from_cycles(n, &[&long]).expect("cycle"),
        Permutation::from_cycles(n, &[&[0, 1, 2]]).expect("cycle"),
    ];
    PermGroup::new(n, gens).expect("valid").with_known_order(factorial(n) / 2)
}

pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n >= 2 {
        vec![Permutation::from_cycles(n, &[&(0..n as u32).collect::<Vec<_>>()]).expect("cycle")]
    } else {
        Vec::new()
    };
    PermGroup::new(n.max(1), gens).expect("valid").with_known_order(n.max(1) as u128)
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> PermGroup {
    let rot = Permutation::from_cycles(n, &[&(0..n as u32).collect::<Vec<_>>()]).expect("cycle");
    let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).expect("bijection");
    PermGroup::new(n, vec![rot, refl]).expect("valid").with_known_order(2 * n as u128)
}

/// `GL(d, p)` acting on the `p^d − 1` nonzero row vectors of `F_p^d`.
/// Vector `v` is numbered `Σ v_i·p^(d-1-i) − 1`.
pub fn general_linear(d: usize, p: u32) -> Result<PermGroup> {
    let size = (p as usize).checked_pow(d as u32).ok_or_else(|| Error::Budget("p^d overflows".into()))?;
    check_degree(size - 1)?;
    let decode = |mut x: usize| -> Vec<u32> {
        let mut v = vec![0; d];
        for i in (0..d).rev() {
            v[i] = (x % p as usize) as u32;
            x /= p as usize;
        }
        v
    };
    let encode = |v: &[u32]| -> usize { v.iter().fold(0, |acc, &c| acc * p as usize + c as usize) };
    let apply = |m: &dyn Fn(&[u32]) -> Vec<u32>| -> Permutation {
        let images = (1..size).map(|x| (encode(&m(&decode(x))) - 1) as u32).collect();
        Permutation::from_images(images).expect("invertible map")
    };
    let mut gens = Vec::new();
    // Elementary transvections v_j += v_i generate SL; a diagonal matrix
    // with a primitive root adds the determinant.
    for i in 0..d {
        for j in 0..d {
            if i != j {
                gens.push(apply(&|v: &[u32]| {
                    let mut w = v.to_vec();
                    w[j] = (w[j] + w[i]) % p;
                    w
                }));
            }
        }
    }
    let root = (1..p.max(2)).find(|&g| (1..p - 1).all(|e| mod_pow(g, e, p) != 1)).unwrap_or(1);
    gens.push(apply(&|v: &[u32]| {
        let mut w = v.to_vec();
        w[0] = (w[0] * root) % p;
        w
    }));
    let mut order: u128 = 1;
    let q = p as u128;
    for i in 0..d as u32 {
        order *= q.pow(d as u32) - q.pow(i);
    }
    Ok(PermGroup::new(size - 1, gens)?.with_known_order(order))
}

fn mod_pow(b: u32, e: u32, m: u32) -> u32 {
    let mut r = 1u64;
    for _ in 0..e {
        r = r * b as u64 % m as u64;
    }
    r as u32
}

fn named_from_table(name: &str) -> Option<PermGroup> {
    let e = named_entries().iter().find(|e| e.name == name)?;
    let g = PermGroup::from_cycle_strings(e.degree, &e.generators.iter().map(String::as_str).collect::<Vec<_>>())
        .expect("bundled generators are valid");
    Some(g.with_known_order(e.order))
}

/// Resolves a group name such as `A5`, `Sym(4)`, `C7`, `D8`, `PSL(2,7)`,
/// `AGL(3,2)` or `GL(2,3)`.
pub fn named(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    let alias = match name {
        "PSL(3,2)" => "GL(3,2)",
        "AGL(1,8)" => "AGammaL(1,8)",
        other => other,
    };
    if let Some(g) = named_from_table(alias) {
        return Ok(g);
    }
    let num = |s: &str| s.parse::<usize>().ok();
    let inner = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.strip_suffix(')'));
    if let Some(n) = inner("Sym(").and_then(num).or_else(|| name.strip_prefix('S').and_then(num)) {
        check_degree(n)?;
        return Ok(symmetric(n));
    }
    if let Some(n) = inner("Alt(").and_then(num).or_else(|| name.strip_prefix('A').and_then(num)) {
        check_degree(n)?;
        return Ok(alternating(n));
    }
    if let Some(n) = name.strip_prefix('C').and_then(num) {
        check_degree(n)?;
        return Ok(cyclic(n));
    }
    if let Some(n) = name.strip_prefix('D').and_then(num) {
        if n >= 6 && n % 2 == 0 {
            return Ok(dihedral(n / 2));
        }
    }
    if let Some(args) = inner("GL(") {
        if let Some((d, p)) = args.split_once(',') {
            if let (Ok(d), Ok(p)) = (d.trim().parse(), p.trim().parse()) {
                return general_linear(d, p);
            }
        }
    }
    Err(Error::NotInCatalog(format!("unknown group name {name}")))
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(factors: &[PermGroup]) -> Result<PermGroup> {
    let degree: usize = factors.iter().map(PermGroup::degree).sum();
    check_degree(degree)?;
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        gens.extend(f.generators().iter().map(|g| g.shifted(offset, degree)));
        offset += f.degree();
    }
    let order = factors.iter().map(PermGroup::order).product();
    Ok(PermGroup::new(degree.max(1), gens)?.with_known_order(order))
}

/// `H wr P` on `k·|Δ|` points, `P` acting on `k` blocks.
pub fn wreath_imprimitive(base: &PermGroup, top: &PermGroup) -> Result<PermGroup> {
    let (m, k) = (base.degree(), top.degree());
    check_degree(m * k)?;
    let mut gens = Vec::new();
    for j in 0..k {
        gens.extend(base.generators().iter().map(|h| h.shifted(j * m, m * k)));
    }
    for s in top.generators() {
        let images = (0..m * k)
            .map(|p| (s.image((p / m) as u32) as usize * m + p % m) as u32)
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    let order = base.order().pow(k as u32) * top.order();
    Ok(PermGroup::new(m * k, gens)?.with_known_order(order))
}

fn tuple_decode(mut x: usize, m: usize, k: usize) -> Vec<usize> {
    let mut a = vec![0; k];
    for i in (0..k).rev() {
        a[i] = x % m;
        x /= m;
    }
    a
}

fn tuple_encode(a: &[usize], m: usize) -> usize {
    a.iter().fold(0, |acc, &c| acc * m + c)
}

/// Permutation of `Δ^k` moving coordinate `i` to position `σ(i)`.
fn coordinate_permutation(sigma: &Permutation, m: usize, k: usize) -> Permutation {
    let images = (0..m.pow(k as u32))
        .map(|x| {
            let a = tuple_decode(x, m, k);
            let mut b = vec![0; k];
            for i in 0..k {
                b[sigma.image(i as u32) as usize] = a[i];
            }
            tuple_encode(&b, m) as u32
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// Applies `f` to coordinate `i` of every tuple in `Δ^k`.
fn coordinate_map(f: &[u32], i: usize, m: usize, k: usize) -> Permutation {
    let images = (0..m.pow(k as u32))
        .map(|x| {
            let mut a = tuple_decode(x, m, k);
            a[i] = f[a[i]] as usize;
            tuple_encode(&a, m) as u32
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// `H wr P` in product action on `Δ^k`.
pub fn wreath_product_action(base: &PermGroup, top: &PermGroup) -> Result<PermGroup> {
    let (m, k) = (base.degree(), top.degree());
    let degree = m
        .checked_pow(k as u32)
        .filter(|&d| d <= MAX_DEGREE)
        .ok_or_else(|| Error::Budget(format!("{m}^{k} points exceed {MAX_DEGREE}")))?;
    let mut gens = Vec::new();
    for i in 0..k {
        for h in base.generators() {
            gens.push(coordinate_map(h.images(), i, m, k));
        }
    }
    for s in top.generators() {
        gens.push(coordinate_permutation(s, m, k));
    }
    let order = base.order().pow(k as u32) * top.order();
    Ok(PermGroup::new(degree, gens)?.with_known_order(order))
}

/// All elements of a group with constant-time lookup by base images.
#[derive(Clone, Debug)]
pub struct ElementIndex {
    pub elements: Vec<Permutation>,
    key_points: Vec<u32>,
    lookup: HashMap<Vec<u32>, u32>,
}

impl ElementIndex {
    pub fn new(g: &PermGroup, limit: u128) -> Result<Self> {
        if g.order() > limit.min(ENUMERATION_LIMIT) {
            return Err(Error::Budget(format!("cannot enumerate a group of order {}", g.order())));
        }
        let key_points = g.chain().base();
        let mut elements: Vec<Permutation> = Vec::with_capacity(g.order() as usize);
        let id = Permutation::identity(g.degree());
        elements.push(id.clone());
        elements.extend(g.elements().filter(|x| !x.is_identity()));
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (key_points.iter().map(|&b| x.image(b)).collect(), i as u32))
            .collect();
        Ok(ElementIndex {
            elements,
            key_points,
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of `x`, assumed to be an element of the group.
    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        let key: Vec<u32> = self.key_points.iter().map(|&b| x.image(b)).collect();
        self.lookup.get(&key).copied().filter(|&i| self.elements[i as usize] == *x)
    }

    /// The permutation `e_i ↦ e_i·x` of element indices.
    pub fn right_multiplication(&self, x: &Permutation) -> Permutation {
        Permutation::from_images_unchecked(
            self.elements
                .iter()
                .map(|e| self.index_of(&e.compose(x)).expect("closed under multiplication"))
                .collect(),
        )
    }

    /// The permutation `e_i ↦ x⁻¹·e_i`.
    pub fn left_multiplication(&self, x: &Permutation) -> Permutation {
        let xi = x.inverse();
        Permutation::from_images_unchecked(
            self.elements
                .iter()
                .map(|e| self.index_of(&xi.compose(e)).expect("closed under multiplication"))
                .collect(),
        )
    }

    /// The permutation `e_i ↦ x⁻¹·e_i·x`.
    pub fn conjugation(&self, x: &Permutation) -> Permutation {
        Permutation::from_images_unchecked(
            self.elements
                .iter()
                .map(|e| self.index_of(&e.conjugate_by(x)).expect("closed under conjugation"))
                .collect(),
        )
    }

    pub fn inversion(&self) -> Permutation {
        Permutation::from_images_unchecked(
            self.elements
                .iter()
                .map(|e| self.index_of(&e.inverse()).expect("closed under inversion"))
                .collect(),
        )
    }
}

/// Right regular representation on the elements of `g` (element 0 is the identity).
pub fn regular(g: &PermGroup) -> Result<PermGroup> {
    check_degree(g.order() as usize)?;
    let index = ElementIndex::new(g, MAX_DEGREE as u128)?;
    let gens = g.generators().iter().map(|s| index.right_multiplication(s)).collect();
    Ok(PermGroup::new(index.len(), gens)?.with_known_order(g.order()))
}

/// `T wr C2` acting on `T` by `x ↦ a⁻¹·x·b` together with inversion.
pub fn diagonal_wreath(t: &PermGroup) -> Result<PermGroup> {
    let index = ElementIndex::new(t, MAX_DEGREE as u128)?;
    let mut gens = Vec::new();
    for s in t.generators() {
        gens.push(index.right_multiplication(s));
        gens.push(index.left_multiplication(s));
    }
    gens.push(index.inversion());
    Ok(PermGroup::new(index.len(), gens)?.with_known_order(2 * t.order() * t.order()))
}

/// The group `H = N⋊(Inn(N)⋊S)` with `N = T^k`, acting on the elements of `N`:
/// `N` by right translations, `Inn(N)` by conjugation and `S = Sym(k)` by
/// permuting coordinates.
#[derive(Clone, Debug)]
pub struct HolomorphFamily {
    pub k: usize,
    pub h: PermGroup,
    /// `Inn(N)⋊S`, the stabilizer of the identity.
    pub h_minus: PermGroup,
    /// `N⋊S`.
    pub h_plus: PermGroup,
    /// `N` acting by right translations.
    pub right: PermGroup,
    /// `N` acting by left translations.
    pub left: PermGroup,
}

pub fn holomorph_sym(t: &PermGroup, k: usize) -> Result<HolomorphFamily> {
    if k == 0 {
        return Err(Error::Spec("holomorph-sym needs k ≥ 1".into()));
    }
    let index = ElementIndex::new(t, MAX_DEGREE as u128)?;
    let m = index.len();
    let degree = m
        .checked_pow(k as u32)
        .filter(|&d| d <= MAX_DEGREE)
        .ok_or_else(|| Error::Budget(format!("{m}^{k} points exceed {MAX_DEGREE}")))?;
    let mut right = Vec::new();
    let mut left = Vec::new();
    let mut conj = Vec::new();
    for s in t.generators() {
        let r = index.right_multiplication(s);
        let l = index.left_multiplication(s);
        let c = index.conjugation(s);
        for i in 0..k {
            right.push(coordinate_map(r.images(), i, m, k));
            left.push(coordinate_map(l.images(), i, m, k));
            conj.push(coordinate_map(c.images(), i, m, k));
        }
    }
    let sym = symmetric(k);
    let swaps: Vec<Permutation> = sym.generators().iter().map(|s| coordinate_permutation(s, m, k)).collect();
    let tk = t.order().pow(k as u32);
    let sk = factorial(k);
    let with = |a: &[Permutation], b: &[Permutation], order: u128| -> Result<PermGroup> {
        Ok(PermGroup::new(degree, a.iter().chain(b).cloned().collect())?.with_known_order(order))
    };
    let h = with(&[right.clone(), conj.clone()].concat(), &swaps, tk * tk * sk)?;
    Ok(HolomorphFamily {
        k,
        h_minus: with(&conj, &swaps, tk * sk)?,
        h_plus: with(&right, &swaps, tk * sk)?,
        right: with(&right, &[], tk)?,
        left: with(&left, &[], tk)?,
        h,
    })
}

/// Which group of the holomorph family a spec refers to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HolomorphPart {
    #[default]
    Whole,
    Minus,
    Plus,
    /// Action of `H` on the cosets of `H_-` (realized on the points of `N`).
    LMinus,
    /// Action of `H` on the cosets of `H_+`.
    LPlus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct GroundTruth {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_qp_type: Option<String>,
}

/// Serializable recipe for a permutation group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(flatten)]
    pub constructor: Constructor,
    #[serde(default, rename = "ground-truth", skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<GroundTruth>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constructor", rename_all = "kebab-case")]
pub enum Constructor {
    Named {
        name: String,
    },
    Generators {
        degree: usize,
        generators: Vec<String>,
    },
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    WreathImprimitive {
        base: Box<GroupSpec>,
        top: Box<GroupSpec>,
    },
    WreathProductAction {
        base: Box<GroupSpec>,
        top: Box<GroupSpec>,
    },
    HolomorphSym {
        simple: Box<GroupSpec>,
        k: usize,
        #[serde(default)]
        part: HolomorphPart,
    },
    Diagonal {
        simple: Box<GroupSpec>,
    },
    Regular {
        group: Box<GroupSpec>,
    },
    CosetImage {
        group: Box<GroupSpec>,
        subgroup: Box<GroupSpec>,
    },
}

impl GroupSpec {
    pub fn new(constructor: Constructor) -> Self {
        GroupSpec {
            constructor,
            ground_truth: None,
        }
    }

    pub fn named(name: &str) -> Self {
        GroupSpec::new(Constructor::Named { name: name.into() })
    }

    pub fn regular(self) -> Self {
        GroupSpec::new(Constructor::Regular { group: Box::new(self) })
    }

    pub fn with_truth(mut self, order: Option<u128>, qp_type: Option<&str>) -> Self {
        self.ground_truth = Some(GroundTruth {
            expected_order: order,
            expected_qp_type: qp_type.map(str::to_string),
        });
        self
    }

    /// Parses `catalog:NAME`, `catalog:NAME:regular` or a JSON spec.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("catalog:") {
            return match rest.strip_suffix(":regular") {
                Some(name) => Ok(GroupSpec::named(name).regular()),
                None => Ok(GroupSpec::named(rest)),
            };
        }
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: format!("line {}: {e}", e.line()),
        })
    }
}

/// Builds the group described by `spec`, checking any expected order.
/// Expected quasiprimitive types are checked by
/// [`crate::qp::make_group_verified`].
pub fn make_group(spec: &GroupSpec) -> Result<PermGroup> {
    let g = build(&spec.constructor)?;
    if let Some(expected) = spec.ground_truth.as_ref().and_then(|t| t.expected_order) {
        if g.order() != expected {
            return Err(Error::Spec(format!(
                "constructed group has order {}, expected {expected}",
                g.order()
            )));
        }
    }
    Ok(g)
}

fn build(c: &Constructor) -> Result<PermGroup> {
    match c {
        Constructor::Named { name } => named(name),
        Constructor::Generators { degree, generators } => {
            check_degree(*degree)?;
            PermGroup::from_cycle_strings(*degree, &generators.iter().map(String::as_str).collect::<Vec<_>>())
        }
        Constructor::DirectProduct { factors } => {
            direct_product(&factors.iter().map(make_group).collect::<Result<Vec<_>>>()?)
        }
        Constructor::WreathImprimitive { base, top } => wreath_imprimitive(&make_group(base)?, &make_group(top)?),
        Constructor::WreathProductAction { base, top } => {
            wreath_product_action(&make_group(base)?, &make_group(top)?)
        }
        Constructor::HolomorphSym { simple, k, part } => {
            let fam = holomorph_sym(&make_group(simple)?, *k)?;
            Ok(match part {
                HolomorphPart::Whole | HolomorphPart::LMinus => fam.h,
                HolomorphPart::Minus => fam.h_minus,
                HolomorphPart::Plus => fam.h_plus,
                HolomorphPart::LPlus => coset_action(&fam.h, &fam.h_plus, MAX_DEGREE)?.0.image,
            })
        }
        Constructor::Diagonal { simple } => diagonal_wreath(&make_group(simple)?),
        Constructor::Regular { group } => regular(&make_group(group)?),
        Constructor::CosetImage { group, subgroup } => {
            let g = make_group(group)?;
            let h = make_group(subgroup)?;
            Ok(coset_action(&g, &h, DEFAULT_MAX_INDEX.max(MAX_DEGREE))?.0.image)
        }
    }
}

/// A labelled group from [`ground_truth_corpus`].
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: &'static str,
    pub spec: GroupSpec,
}

fn boxed(name: &str) -> Box<GroupSpec> {
    Box::new(GroupSpec::named(name))
}

fn holo(k: usize, part: HolomorphPart) -> GroupSpec {
    GroupSpec::new(Constructor::HolomorphSym {
        simple: boxed("A5"),
        k,
        part,
    })
}

fn product_action(base: &str, top: &str) -> GroupSpec {
    GroupSpec::new(Constructor::WreathProductAction {
        base: boxed(base),
        top: boxed(top),
    })
}

/// Quasiprimitive groups with known order and type, checked on construction
/// by [`crate::qp::make_group_verified`].
pub fn ground_truth_corpus() -> Vec<CorpusEntry> {
    use HolomorphPart::*;
    let e = |label, spec: GroupSpec, order, ty| CorpusEntry {
        label,
        spec: spec.with_truth(Some(order), Some(ty)),
    };
    let coset = |group: GroupSpec, subgroup: GroupSpec| {
        GroupSpec::new(Constructor::CosetImage {
            group: Box::new(group),
            subgroup: Box::new(subgroup),
        })
    };
    vec![
        e("C7", GroupSpec::named("C7"), 7, "HA"),
        e("S4", GroupSpec::named("S4"), 24, "HA"),
        e("AGL(3,2)", GroupSpec::named("AGL(3,2)"), 1344, "HA"),
        e("A5", GroupSpec::named("A5"), 60, "AS"),
        e("S5", GroupSpec::named("S5"), 120, "AS"),
        e("A6", GroupSpec::named("A6"), 360, "AS"),
        e("GL(3,2)", GroupSpec::named("GL(3,2)"), 168, "AS"),
        e("PSL(2,7)", GroupSpec::named("PSL(2,7)"), 168, "AS"),
        e("PSL(2,11)", GroupSpec::named("PSL(2,11)"), 660, "AS"),
        e("A5 regular", GroupSpec::named("A5").regular(), 60, "AS"),
        e("Hol k=1", holo(1, Whole), 3600, "HS"),
        e("Hol k=1 L+", holo(1, LPlus), 60, "AS"),
        e("Hol k=2", holo(2, Whole), 25_920_000, "HC"),
        e("Hol k=2 L+", holo(2, LPlus), 7200, "TW"),
        e(
            "A5 diagonal",
            GroupSpec::new(Constructor::Diagonal { simple: boxed("A5") }),
            7200,
            "SD",
        ),
        e("PSL(2,7) wr C2", product_action("PSL(2,7)", "C2"), 56_448, "PA"),
        e("AGL(3,2) wr C2", product_action("AGL(3,2)", "C2"), 3_612_672, "HA"),
        e(
            "AGL(3,2) on AGammaL(1,8) cosets",
            coset(GroupSpec::named("AGL(3,2)"), GroupSpec::named("AGammaL(1,8)")),
            168,
            "AS",
        ),
        e(
            "AGL(3,2) wr C2 on cosets",
            coset(product_action("AGL(3,2)", "C2"), product_action("AGammaL(1,8)", "C2")),
            56_448,
            "PA",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_generators_have_stated_orders() {
        for e in named_entries() {
            let g = PermGroup::from_cycle_strings(e.degree, &e.generators.iter().map(String::as_str).collect::<Vec<_>>())
                .unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn named_families() {
        assert_eq!(named("S5").unwrap().chain().order(), 120);
        assert_eq!(named("Alt(6)").unwrap().degree(), 6);
        let a6 = PermGroup::new(6, named("A6").unwrap().generators().to_vec()).unwrap();
        assert_eq!(a6.order(), 360);
        let d8 = named("D8").unwrap();
        assert_eq!(PermGroup::new(4, d8.generators().to_vec()).unwrap().order(), 8);
        for (d, p, order) in [(2, 2, 6), (2, 3, 48), (3, 2, 168), (2, 5, 480)] {
            let g = general_linear(d, p).unwrap();
            let plain = PermGroup::new(g.degree(), g.generators().to_vec()).unwrap();
            assert_eq!(plain.order(), order);
        }
        assert!(named("Foo(3)").is_err());
    }

    #[test]
    fn wreath_products() {
        let s3 = symmetric(3);
        let c2 = cyclic(2);
        let w = wreath_imprimitive(&s3, &c2).unwrap();
        assert_eq!(w.degree(), 6);
        assert_eq!(PermGroup::new(6, w.generators().to_vec()).unwrap().order(), 72);
        let p = wreath_product_action(&named("PSL(2,7)").unwrap(), &c2).unwrap();
        assert_eq!(p.degree(), 64);
        assert_eq!(PermGroup::new(64, p.generators().to_vec()).unwrap().order(), 168 * 168 * 2);
        assert!(p.is_transitive());
    }

    #[test]
    fn regular_and_holomorph() {
        let a5 = alternating(5);
        let r = regular(&a5).unwrap();
        assert_eq!(r.degree(), 60);
        assert_eq!(PermGroup::new(60, r.generators().to_vec()).unwrap().order(), 60);
        let fam = holomorph_sym(&a5, 1).unwrap();
        let h = PermGroup::new(60, fam.h.generators().to_vec()).unwrap();
        assert_eq!(h.order(), 3600);
        assert!(fam.h_minus.generators().iter().all(|g| g.image(0) == 0));
        assert!(fam.right.is_normal_in(&fam.h) && fam.left.is_normal_in(&fam.h));
        let sd = diagonal_wreath(&a5).unwrap();
        assert_eq!(PermGroup::new(60, sd.generators().to_vec()).unwrap().order(), 7200);
    }

    #[test]
    fn spec_json_and_shorthand() {
        let s = GroupSpec::parse("catalog:SL(2,5):regular").unwrap();
        assert_eq!(make_group(&s).unwrap().degree(), 120);
        let json = r#"{"constructor":"generators","degree":3,"generators":["(0 1 2)"],"ground-truth":{"expected-order":3}}"#;
        let s = GroupSpec::parse(json).unwrap();
        assert_eq!(make_group(&s).unwrap().order(), 3);
        let back: GroupSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"constructor":"generators","degree":3,"generators":["(0 1 x)"]}"#;
        assert!(matches!(make_group(&GroupSpec::parse(bad).unwrap()), Err(Error::Parse { position: 5, .. })));
        let wrong = GroupSpec::named("A5").with_truth(Some(61), None);
        assert!(make_group(&wrong).is_err());
    }
}
