//! Randomized invariants over small permutation groups.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlocal::action::{core, coset_action, DEFAULT_MAX_INDEX};
use qlocal::arithmetic::{l1_check_a, l1_check_b, vp_factorial};
use qlocal::compat::{build_witness, necessary_compat_check, witness_digraph, CompatProblem, SearchOptions};
use qlocal::digraph::{local_action, orbital_digraph, Digraph, Direction};
use qlocal::iso::{perm_isomorphic, Verdict};
use qlocal::structure::{
    composition_multiset, derived_series, minimal_normal_subgroups, normal_subgroups, quotient_multiset_identity,
    sections_of_multiset, simple_sections, SearchBudget,
};
use qlocal::{PermGroup, Permutation};

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group_strategy(max_degree: usize) -> impl Strategy<Value = PermGroup> {
    (2..=max_degree).prop_flat_map(|n| {
        prop::collection::vec(perm_strategy(n), 1..=3).prop_map(move |gens| PermGroup::new(n, gens).unwrap())
    })
    .prop_filter("nontrivial", |g| !g.generators().is_empty())
}

/// Transitive groups: a random group joined with an `n`-cycle.
fn transitive_strategy(max_degree: usize) -> impl Strategy<Value = PermGroup> {
    group_strategy(max_degree).prop_map(|g| {
        let n = g.degree();
        let cycle = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
        g.join(&[cycle]).unwrap()
    })
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn random_word(g: &PermGroup, rng: &mut ChaCha8Rng) -> Permutation {
    let mut x = Permutation::identity(g.degree());
    for _ in 0..rng.gen_range(0..20) {
        let s = &g.generators()[rng.gen_range(0..g.generators().len())];
        x = if rng.gen_bool(0.5) { x.compose(s) } else { x.compose(&s.inverse()) };
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_orbits_multiply_to_order(g in group_strategy(8)) {
        let sizes: u128 = g.chain().orbit_sizes().iter().map(|&s| s as u128).product();
        prop_assert_eq!(sizes, g.order());
        prop_assert_eq!(factorial(g.degree()) % g.order(), 0);
    }

    #[test]
    fn words_are_members(g in group_strategy(9), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            prop_assert!(g.contains(&random_word(&g, &mut rng)));
        }
    }

    #[test]
    fn orbits_partition_and_are_closed(g in group_strategy(10)) {
        let orbits = g.orbits();
        let mut seen = vec![false; g.degree()];
        for o in &orbits {
            for &p in o {
                prop_assert!(!seen[p as usize]);
                seen[p as usize] = true;
                for s in g.generators() {
                    prop_assert!(o.contains(&s.image(p)));
                }
            }
        }
        prop_assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn orbit_stabilizer(g in transitive_strategy(8)) {
        prop_assert_eq!(g.order(), g.degree() as u128 * g.stabilizer(0).unwrap().order());
    }

    #[test]
    fn normal_closure_is_normal(g in group_strategy(7), x in perm_strategy(7)) {
        let e = g.generators()[0].clone();
        let n = g.normal_closure(&[e]).unwrap();
        for a in n.generators() {
            for s in g.generators() {
                prop_assert!(n.contains(&a.conjugate_by(s)));
            }
        }
        let _ = x;
    }

    #[test]
    fn conjugation_round_trip(g in group_strategy(7), x in perm_strategy(7)) {
        let x = if x.degree() == g.degree() { x } else { Permutation::identity(g.degree()) };
        let c = g.conjugate(&x).unwrap();
        prop_assert_eq!(c.order(), g.order());
        prop_assert!(c.conjugate(&x.inverse()).unwrap().equals(&g).unwrap());
    }

    #[test]
    fn intersection_is_common_subgroup(pair in (3usize..=7).prop_flat_map(|n| (
        prop::collection::vec(perm_strategy(n), 1..=2),
        prop::collection::vec(perm_strategy(n), 1..=2),
    ))) {
        let n = pair.0[0].degree();
        let a = PermGroup::new(n, pair.0).unwrap();
        let b = PermGroup::new(n, pair.1).unwrap();
        let i = a.intersection(&b).unwrap();
        prop_assert!(i.is_subgroup_of(&a).unwrap() && i.is_subgroup_of(&b).unwrap());
        prop_assert_eq!(a.order() % i.order(), 0);
        prop_assert_eq!(b.order() % i.order(), 0);
    }

    #[test]
    fn core_is_the_coset_kernel(g in transitive_strategy(6), k in 1usize..3) {
        let gens: Vec<_> = g.generators().iter().take(k).cloned().collect();
        let h = PermGroup::new(g.degree(), gens).unwrap();
        prop_assume!(h.is_subgroup_of(&g).unwrap());
        let c = core(&g, &h).unwrap();
        prop_assert!(c.is_normal_in(&g));
        prop_assert!(c.is_subgroup_of(&h).unwrap());
        let (img, _) = coset_action(&g, &h, DEFAULT_MAX_INDEX).unwrap();
        prop_assert!(img.kernel.equals(&c).unwrap());
        prop_assert_eq!(img.image.order() * c.order(), g.order());
    }

    #[test]
    fn composition_multiset_of_quotients(g in group_strategy(6)) {
        prop_assert_eq!(composition_multiset(&g).unwrap().order(), g.order());
        for n in normal_subgroups(&g, 256).unwrap() {
            let (_, _, ok) = quotient_multiset_identity(&g, &n).unwrap();
            prop_assert!(ok);
        }
    }

    #[test]
    fn sections_come_from_series_factors(g in group_strategy(7)) {
        let series = derived_series(&g);
        let mut factors = qlocal::structure::CompositionMultiset::new();
        for w in series.windows(2) {
            let (img, _) = coset_action(&w[0], &w[1], DEFAULT_MAX_INDEX).unwrap();
            factors.merge(&composition_multiset(&img.image).unwrap());
        }
        factors.merge(&composition_multiset(series.last().unwrap()).unwrap());
        let from_factors = sections_of_multiset(&factors);
        let direct = simple_sections(&g).unwrap();
        prop_assert!(direct.ids.is_subset(&from_factors.ids));
    }

    #[test]
    fn minimal_normal_subgroups_are_normal(g in group_strategy(7)) {
        let report = minimal_normal_subgroups(&g, &SearchBudget::default()).unwrap();
        for w in &report.subgroups {
            for s in g.generators() {
                prop_assert!(w.subgroup.conjugate(s).unwrap().equals(&w.subgroup).unwrap());
            }
        }
    }

    #[test]
    fn orbital_digraph_degrees(g in transitive_strategy(7), v in 1u32..7) {
        prop_assume!((v as usize) < g.degree());
        let d = orbital_digraph(&g, 0, v).unwrap();
        let n = d.vertex_count as u32;
        let out: usize = (0..n).map(|u| d.out_neighbours(u).len()).sum();
        let inn: usize = (0..n).map(|u| d.in_neighbours(u).len()).sum();
        prop_assert_eq!(out, d.arcs.len());
        prop_assert_eq!(inn, d.arcs.len());
        let k = d.out_neighbours(0).len();
        prop_assert!((0..n).all(|u| d.out_neighbours(u).len() == k && d.in_neighbours(u).len() == k));
        let o = local_action(&d, 0, Direction::Out).unwrap();
        let i = local_action(&d, 0, Direction::In).unwrap();
        prop_assert_eq!(o.induced_group.orbits().len(), 1);
        prop_assert_eq!(i.induced_group.orbits().len(), 1);
        prop_assert_eq!(simple_sections(&o.induced_group).unwrap().ids, simple_sections(&i.induced_group).unwrap().ids);
    }

    /// Arcs in two orbitals: both local actions have two orbits.
    #[test]
    fn union_of_orbitals(g in transitive_strategy(7)) {
        let stab = g.stabilizer(0).unwrap();
        let reps: Vec<u32> = {
            let mut seen = vec![false; g.degree()];
            seen[0] = true;
            let mut r = Vec::new();
            for v in 1..g.degree() as u32 {
                if !seen[v as usize] {
                    for w in stab.orbit(v) { seen[w as usize] = true; }
                    r.push(v);
                }
            }
            r
        };
        prop_assume!(reps.len() >= 2);
        let a = orbital_digraph(&g, 0, reps[0]).unwrap();
        let b = orbital_digraph(&g, 0, reps[1]).unwrap();
        let arcs: Vec<_> = a.arcs.iter().chain(b.arcs.iter()).copied().collect();
        let d = Digraph::new(g.degree(), arcs).unwrap().with_group(g.clone()).unwrap();
        let o = local_action(&d, 0, Direction::Out).unwrap();
        let i = local_action(&d, 0, Direction::In).unwrap();
        prop_assert_eq!(o.induced_group.orbits().len(), 2);
        prop_assert_eq!(i.induced_group.orbits().len(), 2);
    }

    #[test]
    fn digraph_json_round_trip(g in transitive_strategy(7), v in 1u32..7) {
        prop_assume!((v as usize) < g.degree());
        let d = orbital_digraph(&g, 0, v).unwrap();
        let back = Digraph::from_json(&d.to_json().to_string()).unwrap();
        prop_assert_eq!(back.arcs, d.arcs);
        prop_assert_eq!(back.vertex_count, d.vertex_count);
    }

    #[test]
    fn isomorphism_verdicts_symmetric(g in group_strategy(7), x in perm_strategy(7), h in group_strategy(7)) {
        let x = if x.degree() == g.degree() { x } else { Permutation::identity(g.degree()) };
        let c = g.conjugate(&x).unwrap();
        let fwd = perm_isomorphic(&g, &c, 1_000_000);
        let back = perm_isomorphic(&c, &g, 1_000_000);
        prop_assert_eq!(fwd.verdict, Verdict::Yes);
        prop_assert_eq!(back.verdict, Verdict::Yes);
        prop_assert!(fwd.verify() && back.verify());
        let ab = perm_isomorphic(&g, &h, 1_000_000).verdict;
        let ba = perm_isomorphic(&h, &g, 1_000_000).verdict;
        if ab != Verdict::Unknown && ba != Verdict::Unknown {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn factorial_bounds(k in 2u64..5000, x in 2u64..60) {
        prop_assert!(!l1_check_a(x, k).unwrap());
        for p in [2u64, 3, 5, 7, 97] {
            prop_assert!(vp_factorial(k, p).unwrap() * (p - 1) <= k - 1);
        }
        for l in (2..=k).filter(|l| k % l == 0).take(8) {
            prop_assert!(!l1_check_b(k, l).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// `A = ⟨a⟩`, `B = ⟨a^x⟩` with `φ: a ↦ a^x`.
    #[test]
    fn witnesses_satisfy_their_invariants(g in transitive_strategy(5), seed in any::<u64>()) {
        prop_assume!(g.order() <= 120);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g.random_element(&mut rng);
        let x = g.random_element(&mut rng);
        let b = a.conjugate_by(&x);
        let ga = PermGroup::new(g.degree(), vec![a.clone()]).unwrap();
        prop_assume!(!a.is_identity() && ga.order() < g.order());
        let gb = PermGroup::new(g.degree(), vec![b.clone()]).unwrap();
        let p = CompatProblem::new(&g, &ga, &gb, &[(a, b)]).unwrap();
        let w = build_witness(&p, &SearchOptions { seed, ..SearchOptions::default() }).unwrap();
        prop_assert!(w.verified());
        prop_assert_eq!(w.big_group.degree(), 2 * g.order() as usize);
        let nec = necessary_compat_check(&w.l_minus.image, &w.l_plus.image, &SearchBudget::default()).unwrap();
        prop_assert!(nec.passes);
        // ⟨ρ(H), g⟩ can have far more cosets than the budget allows.
        match witness_digraph(&w, DEFAULT_MAX_INDEX) {
            Ok(d) => {
                prop_assert!(d.verified());
                prop_assert!(d.local_checks.sections_equal);
            }
            Err(qlocal::Error::Budget(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
