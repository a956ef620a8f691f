use qlocal::action::{coset_action, core, DEFAULT_MAX_INDEX};
use qlocal::catalog::{ground_truth_corpus, named, symmetric};
use qlocal::qp::{
    all_subgroups, classify_qp, degree_consistent, degree_feasible, is_quasiprimitive, make_group_verified,
    pair_type_allowed, PairContext, QPType,
};
use qlocal::structure::SearchBudget;
use qlocal::PermGroup;

/// Corpus entries small enough to classify repeatedly in a test.
fn small_corpus() -> Vec<(&'static str, PermGroup)> {
    let budget = SearchBudget::default();
    ground_truth_corpus()
        .into_iter()
        .map(|e| (e.label, make_group_verified(&e.spec, &budget).unwrap()))
        .filter(|(_, g)| g.order() <= 100_000)
        .collect()
}

#[test]
fn evidence_is_consistent_with_degree() {
    let budget = SearchBudget::default();
    for (label, g) in small_corpus() {
        let (ty, ev) = classify_qp(&g, &budget).unwrap();
        let n = g.degree() as u128;
        assert!(degree_consistent(ty, &ev, n), "{label}");
        assert!(degree_feasible(ty, n).feasible, "{label}");
        assert_eq!(ev.socle_order, ev.socle.order(), "{label}");
        assert_eq!(ev.socle_factor.order.pow(ev.k), ev.socle_order, "{label}");
        assert!(ev.socle.is_normal_in(&g), "{label}");
        if ty == QPType::HA {
            assert!(ev.socle_regular && ev.socle.is_abelian(), "{label}");
            assert_eq!(ev.socle_order, n, "{label}");
        }
        if ev.socle_regular {
            assert_eq!(ev.socle_order, n, "{label}");
        }
    }
}

#[test]
fn classification_is_deterministic() {
    let g = named("PSL(2,11)").unwrap();
    let a = classify_qp(&g, &SearchBudget::with_seed(5)).unwrap();
    let b = classify_qp(&g, &SearchBudget::with_seed(5)).unwrap();
    assert_eq!(a.0, b.0);
    assert_eq!(serde_json::to_string(&a.1).unwrap(), serde_json::to_string(&b.1).unwrap());
}

#[test]
fn imprimitive_but_quasiprimitive() {
    // The regular action of a simple group is quasiprimitive and imprimitive.
    let g = qlocal::catalog::regular(&qlocal::catalog::alternating(5)).unwrap();
    assert!(!qlocal::action::is_primitive(&g));
    assert!(is_quasiprimitive(&g, &SearchBudget::default()).unwrap().quasiprimitive);
    let s4_on_pairs = coset_action(&symmetric(4), &PermGroup::from_cycle_strings(4, &["(0 1)", "(2 3)"]).unwrap(), 100)
        .unwrap()
        .0
        .image;
    // S4 on the 6 pairs: the Klein group is an intransitive normal subgroup.
    assert!(!is_quasiprimitive(&s4_on_pairs, &SearchBudget::default()).unwrap().quasiprimitive);
}

/// Every subgroup `K` of index `n` with nontrivial core gives a faithful
/// quotient action of the same degree; when both groups are quasiprimitive
/// their type pair must be one of the four allowed pairs.
#[test]
fn quotient_actions_of_equal_degree() {
    let budget = SearchBudget::default();
    let mut hits = Vec::new();
    // Simple groups are skipped: every proper subgroup has trivial core.
    for name in ["S4", "S5", "AGL(3,2)"] {
        let g = named(name).unwrap();
        let n = g.degree() as u128;
        let (tg, _) = classify_qp(&g, &budget).unwrap();
        for (bits, gens) in all_subgroups(&g, 20_000).unwrap() {
            let order: u128 = bits.iter().map(|w| w.count_ones() as u128).sum();
            if order * n != g.order() {
                continue;
            }
            let k = PermGroup::new(g.degree(), gens).unwrap();
            let c = core(&g, &k).unwrap();
            if c.order() == 1 {
                continue;
            }
            let img = coset_action(&g, &k, DEFAULT_MAX_INDEX).unwrap().0.image;
            if !img.is_transitive() || !is_quasiprimitive(&img, &budget).unwrap().quasiprimitive {
                continue;
            }
            let (th, _) = classify_qp(&img, &budget).unwrap();
            assert!(pair_type_allowed(tg, th, PairContext::QuotientOnly), "{name}: ({tg},{th})");
            hits.push((name, tg, th));
        }
    }
    // AGL(3,2) over its translations is GL(3,2) on 8 points.
    assert!(hits.iter().any(|&(n, a, b)| n == "AGL(3,2)" && a == QPType::HA && b == QPType::AS));
}

#[test]
fn forbidden_pairs_rejected() {
    use QPType::*;
    for a in QPType::ALL {
        for b in QPType::ALL {
            let allowed = pair_type_allowed(a, b, PairContext::QuotientOnly);
            let expected = matches!((a, b), (HS, AS) | (HC, TW) | (HA, AS) | (HA, PA));
            assert_eq!(allowed, expected, "({a},{b})");
            let compat = pair_type_allowed(a, b, PairContext::CompatibleQuotient);
            assert_eq!(compat, matches!((a, b), (HS, AS) | (HC, TW)), "({a},{b})");
        }
    }
}
