//! Library results against brute force: element closure, subgroup lattices,
//! automorphism counting and naive arithmetic.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use qlocal::arithmetic::vp_factorial;
use qlocal::catalog::{alternating, direct_product, named, symmetric, wreath_imprimitive, wreath_product_action, ElementIndex};
use qlocal::qp::all_subgroups;
use qlocal::simple::{table, SimpleGroupId};
use qlocal::structure::{composition_multiset, sections_of_simple};
use qlocal::{PermGroup, Permutation};

fn closure(g: &PermGroup) -> HashSet<Vec<u32>> {
    let id: Vec<u32> = (0..g.degree() as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y: Vec<u32> = x.iter().map(|&p| s.image(p)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn corpus() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("S4", symmetric(4)),
        ("A5", alternating(5)),
        ("S6", symmetric(6)),
        ("PSL(2,7)", named("PSL(2,7)").unwrap()),
        ("AGL(3,2)", named("AGL(3,2)").unwrap()),
        ("PSL(2,11)", named("PSL(2,11)").unwrap()),
        ("S3 wr S3", wreath_imprimitive(&symmetric(3), &symmetric(3)).unwrap()),
        ("S3 wr C2 product", wreath_product_action(&symmetric(3), &symmetric(2)).unwrap()),
        ("A4 x S3", direct_product(&[alternating(4), symmetric(3)]).unwrap()),
        ("SL(2,5)", named("SL(2,5)").unwrap()),
    ]
}

#[test]
fn orders_match_element_closure() {
    for (name, g) in corpus() {
        let elems = closure(&g);
        assert_eq!(g.order(), elems.len() as u128, "{name}");
        for x in elems.iter().take(200) {
            assert!(g.contains(&Permutation::from_images(x.clone()).unwrap()), "{name}");
        }
    }
}

#[test]
fn non_members_rejected() {
    let a5 = alternating(5);
    let elems = closure(&a5);
    let s5 = closure(&symmetric(5));
    for x in s5 {
        let p = Permutation::from_images(x.clone()).unwrap();
        assert_eq!(a5.contains(&p), elems.contains(&x));
    }
}

#[test]
fn composition_orders_multiply_out() {
    for (name, g) in corpus() {
        assert_eq!(composition_multiset(&g).unwrap().order(), g.order(), "{name}");
    }
}

fn id_of_order(order: u128) -> SimpleGroupId {
    if qlocal::simple::is_prime(order) {
        return SimpleGroupId::cyclic(order as u64);
    }
    let hits = table().with_order(order);
    assert_eq!(hits.len(), 1, "order {order} is ambiguous");
    hits[0].id()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> u128 {
    a.iter().map(|w| w.count_ones() as u128).sum()
}

/// Simple quotients `K/N` over all subgroups `K`, with `N` maximal normal in `K`.
fn sections_by_lattice(t: &PermGroup) -> BTreeSet<SimpleGroupId> {
    let subs = all_subgroups(t, 5_000).unwrap();
    let groups: Vec<PermGroup> = subs
        .iter()
        .map(|(_, gens)| PermGroup::new(t.degree(), gens.clone()).unwrap())
        .collect();
    let mut out = BTreeSet::new();
    for (i, (ki, _)) in subs.iter().enumerate() {
        let k = &groups[i];
        let normal: Vec<usize> = (0..subs.len())
            .filter(|&j| j != i && subset(&subs[j].0, ki))
            .filter(|&j| {
                groups[j]
                    .generators()
                    .iter()
                    .all(|n| k.generators().iter().all(|x| groups[j].contains(&n.conjugate_by(x))))
            })
            .collect();
        for &j in &normal {
            let maximal = !normal
                .iter()
                .any(|&m| m != j && subset(&subs[j].0, &subs[m].0) && popcount(&subs[m].0) > popcount(&subs[j].0));
            if maximal {
                out.insert(id_of_order(popcount(ki) / popcount(&subs[j].0)));
            }
        }
    }
    out
}

#[test]
fn simple_sections_from_subgroup_lattice() {
    for name in ["A5", "PSL(2,7)", "A6"] {
        let t = named(name).unwrap();
        let id = qlocal::structure::identify_simple(&t).unwrap();
        let table_sections = sections_of_simple(&id);
        assert!(table_sections.complete);
        assert_eq!(table_sections.ids, sections_by_lattice(&t), "{name}");
    }
}

/// `|Aut(T)|` by counting generator images that extend to automorphisms.
fn automorphism_count(t: &PermGroup) -> u128 {
    let idx = ElementIndex::new(t, 10_000).unwrap();
    let n = idx.len();
    let mul = |a: usize, b: usize| idx.index_of(&idx.elements[a].compose(&idx.elements[b])).unwrap() as usize;
    let gens: Vec<usize> = t.generators().iter().map(|g| idx.index_of(g).unwrap() as usize).collect();
    assert_eq!(gens.len(), 2);
    let ord = |x: usize| idx.elements[x].order();
    let (a, b) = (gens[0], gens[1]);
    let ab = ord(mul(a, b));
    // Words reaching each element, as a spanning tree over the generators.
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut order_seen = vec![0];
    let mut queue = VecDeque::from([0usize]);
    let mut reached = vec![false; n];
    reached[0] = true;
    while let Some(x) = queue.pop_front() {
        for (gi, &g) in gens.iter().enumerate() {
            let y = mul(x, g);
            if !reached[y] {
                reached[y] = true;
                parent.insert(y, (x, gi));
                order_seen.push(y);
                queue.push_back(y);
            }
        }
    }
    let mut count = 0;
    for x in (0..n).filter(|&x| ord(x) == ord(a)) {
        for y in (0..n).filter(|&y| ord(y) == ord(b) && ord(mul(x, y)) == ab) {
            let images = [x, y];
            let mut f = vec![usize::MAX; n];
            f[0] = 0;
            for &e in &order_seen[1..] {
                let (p, gi) = parent[&e];
                f[e] = mul(f[p], images[gi]);
            }
            let mut hit = vec![false; n];
            let bijective = f.iter().all(|&v| !std::mem::replace(&mut hit[v], true));
            let hom = bijective && (0..n).all(|u| gens.iter().zip(images).all(|(&g, im)| f[mul(u, g)] == mul(f[u], im)));
            if hom {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn outer_automorphism_orders() {
    for name in ["A5", "PSL(2,7)", "A6"] {
        let t = named(name).unwrap();
        let id = qlocal::structure::identify_simple(&t).unwrap();
        let out = id.catalog_entry().unwrap().out_order as u128;
        // Centreless, so Inn(T) ≅ T.
        assert_eq!(automorphism_count(&t), out * t.order(), "{name}");
    }
}

#[test]
fn legendre_against_naive_factorisation() {
    for p in [2u64, 3, 5, 7, 11, 97] {
        let mut total = 0;
        for k in 1..=600u64 {
            let mut m = k;
            while m % p == 0 {
                m /= p;
                total += 1;
            }
            assert_eq!(vp_factorial(k, p).unwrap(), total, "k={k} p={p}");
        }
    }
    assert!(vp_factorial(10, 4).is_err());
}

#[test]
fn simple_orders_recomputed() {
    for e in table().entries.iter() {
        if let Some(o) = e.formula_order() {
            assert_eq!(o, e.order as u128, "{}", e.name);
        }
    }
}
