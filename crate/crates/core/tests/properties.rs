use num_bigint::BigInt;
use proptest::prelude::*;
use recip::graph::{QuotientResult, SimpleGraph};
use recip::perm::{PermGroup, Permutation};
use recip::poly::{wreath_cycle_poly, IntPolynomial};
use recip::reciprocity::{
    is_reciprocal_pair, kstar_orbital_closed_form, orbital_chromatic_polynomial, theorem1_group, theorem1_vertex_count,
    verify_theorem1, PairReport,
};
use recip::search::{all_subgroups, enumerate_graphs, enumerate_subgroups};

fn pool() -> Vec<PermGroup> {
    vec![
        PermGroup::symmetric(1).unwrap(),
        PermGroup::symmetric(2).unwrap(),
        PermGroup::symmetric(3).unwrap(),
        PermGroup::symmetric(4).unwrap(),
        PermGroup::alternating(3).unwrap(),
        PermGroup::alternating(4).unwrap(),
        PermGroup::cyclic(2).unwrap(),
        PermGroup::cyclic(3).unwrap(),
        PermGroup::cyclic(4).unwrap(),
    ]
}

/// The pool together with every product and admissible wreath product.
fn constructed() -> Vec<PermGroup> {
    let base = pool();
    let mut out = base.clone();
    for a in &base {
        for b in &base {
            out.push(PermGroup::direct_product(a, b).unwrap());
            if a.degree() * b.degree() <= 10 {
                out.push(PermGroup::wreath_product(a, b).unwrap());
            }
        }
    }
    out
}

fn assert_closed(g: &PermGroup) {
    for a in g.elements() {
        assert!(g.contains(&a.inverse()));
        for b in g.elements() {
            assert!(g.contains(&a.compose(b)), "{a} * {b} escapes a group of order {}", g.order());
        }
    }
}

#[test]
fn constructed_groups_are_closed() {
    for g in constructed() {
        assert_closed(&g);
    }
    assert_closed(&PermGroup::dihedral(6).unwrap());
    assert_closed(&PermGroup::symmetric(5).unwrap());
}

#[test]
fn cycle_polynomial_counts_the_group() {
    for g in constructed() {
        assert_eq!(g.cycle_polynomial().eval_i64(1), BigInt::from(g.order()));
    }
}

#[test]
fn product_and_wreath_cycle_polynomials() {
    let base = pool();
    for a in &base {
        for b in &base {
            let p = PermGroup::direct_product(a, b).unwrap();
            assert_eq!(p.cycle_polynomial(), &a.cycle_polynomial() * &b.cycle_polynomial());
            if a.degree() * b.degree() <= 10 {
                let w = PermGroup::wreath_product(a, b).unwrap();
                let f = wreath_cycle_poly(&a.cycle_polynomial(), &BigInt::from(a.order()), &b.cycle_polynomial(), b.degree())
                    .unwrap();
                assert_eq!(w.cycle_polynomial(), f);
            }
        }
    }
}

#[test]
fn even_groups_have_parity_symmetric_cycle_polynomials() {
    let mut even = 0;
    for g in constructed() {
        if g.has_odd_permutation() {
            continue;
        }
        even += 1;
        let f = g.cycle_polynomial();
        let sign = if g.degree() % 2 == 0 { 1 } else { -1 };
        assert_eq!(f.substitute_negate(), f.scale(&BigInt::from(sign)));
    }
    assert!(even > 5);
}

#[test]
fn negative_integer_roots_pass_to_supergroups() {
    let mut groups = constructed();
    groups.extend(all_subgroups(&PermGroup::symmetric(4).unwrap()).unwrap());
    let mut hits = 0;
    for h in &groups {
        let fh = h.cycle_polynomial();
        let roots: Vec<i64> = (1..=5).filter(|&a| fh.eval_i64(-a) == BigInt::from(0)).collect();
        if roots.is_empty() {
            continue;
        }
        for g in &groups {
            if g.degree() == h.degree() && h.is_subgroup_of(g) {
                let fg = g.cycle_polynomial();
                for &a in &roots {
                    assert_eq!(fg.eval_i64(-a), BigInt::from(0));
                    hits += 1;
                }
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn transposition_census_matches_edges_on_kstar_pairs() {
    for (k, r) in [(1, 1), (1, 2), (2, 1), (3, 1)] {
        let h = PermGroup::symmetric(r).unwrap();
        let g = theorem1_group(k, r, &h).unwrap();
        let graph = SimpleGraph::k_star(k, theorem1_vertex_count(k, r)).unwrap();
        let (t, t0) = g.transposition_census(&graph).unwrap();
        assert_eq!(graph.edge_count(), t + t0);
    }
}

#[test]
fn quotient_by_identity_is_the_graph() {
    for n in 1..=5 {
        for g in enumerate_graphs(n).unwrap() {
            assert_eq!(g.quotient(&Permutation::identity(n)).unwrap(), QuotientResult::Graph(g.clone()));
        }
    }
}

fn quotient_key(graph: &SimpleGraph, g: &Permutation) -> Option<IntPolynomial> {
    match graph.quotient(g).unwrap() {
        QuotientResult::InternalEdge => None,
        QuotientResult::Graph(q) => Some(q.chromatic_polynomial()),
    }
}

#[test]
fn quotients_of_conjugate_automorphisms_agree() {
    for n in 1..=5 {
        for graph in enumerate_graphs(n).unwrap() {
            let aut = graph.automorphism_group().unwrap();
            for g in aut.elements() {
                let key = quotient_key(&graph, g);
                for h in aut.elements() {
                    assert_eq!(quotient_key(&graph, &g.conjugate_by(h)), key);
                }
            }
        }
    }
}

#[test]
fn kstar_edge_counts() {
    for k in 1..=4 {
        for n in 2 * k + 1..=9 {
            let g = SimpleGraph::k_star(k, n).unwrap();
            assert_eq!(g.edge_count(), k * (n - k) + k * (k - 1) / 2);
        }
    }
}

#[test]
fn chromatic_polynomial_matches_colouring_count_up_to_six_vertices() {
    for n in 1..=6 {
        for g in enumerate_graphs(n).unwrap() {
            let p = g.chromatic_polynomial();
            for c in 0..=4 {
                assert_eq!(p.eval_i64(c as i64), BigInt::from(g.count_colorings_oracle(c).unwrap()));
            }
        }
    }
}

/// `#{(proper colouring, g) : g fixes the colouring}` by enumeration.
fn fixed_colourings(graph: &SimpleGraph, group: &PermGroup, c: u64) -> u64 {
    let n = graph.n();
    let edges = graph.edges();
    let mut total = 0;
    for code in 0..c.pow(n as u32) {
        let colour: Vec<u64> = (0..n).map(|i| code / c.pow(i as u32) % c).collect();
        if edges.iter().any(|&(u, v)| colour[u] == colour[v]) {
            continue;
        }
        total += group
            .elements()
            .iter()
            .filter(|g| (0..n).all(|i| colour[g.apply(i)] == colour[i]))
            .count() as u64;
    }
    total
}

#[test]
fn orbital_polynomial_counts_fixed_colourings() {
    for n in 1..=5 {
        for graph in enumerate_graphs(n).unwrap() {
            let aut = graph.automorphism_group().unwrap();
            for group in enumerate_subgroups(&aut).unwrap() {
                let p = orbital_chromatic_polynomial(&graph, &group).unwrap();
                for c in 0..=3 {
                    assert_eq!(p.eval_i64(c as i64), BigInt::from(fixed_colourings(&graph, &group, c)));
                }
            }
        }
    }
}

#[test]
fn null_graph_pairs_are_reciprocal_exactly_for_even_groups() {
    for n in 1..=4 {
        let null = SimpleGraph::null(n).unwrap();
        for g in all_subgroups(&PermGroup::symmetric(n).unwrap()).unwrap() {
            let report = is_reciprocal_pair(&null, &g).unwrap();
            assert_eq!(report.reciprocal, !g.has_odd_permutation(), "n={n}, |G|={}", g.order());
        }
    }
}

#[test]
fn kstar_closed_form_matches_direct_sum() {
    for k in 1..=4 {
        for r in 1.. {
            let n = theorem1_vertex_count(k, r);
            if n > 9 {
                break;
            }
            let tops = [PermGroup::trivial(r), PermGroup::symmetric(r).unwrap(), PermGroup::alternating(r).unwrap()];
            for h in &tops {
                let g = theorem1_group(k, r, h).unwrap();
                let gbar = PermGroup::wreath_product(&PermGroup::symmetric(k + 1).unwrap(), h).unwrap();
                let star = SimpleGraph::k_star(k, n).unwrap();
                assert_eq!(
                    orbital_chromatic_polynomial(&star, &g).unwrap(),
                    kstar_orbital_closed_form(k, n, &gbar).unwrap(),
                    "k={k}, r={r}, |H|={}",
                    h.order()
                );
            }
        }
    }
}

#[test]
fn even_centre_with_odd_top_group_is_not_reciprocal() {
    assert!(!verify_theorem1(2, 2, &PermGroup::symmetric(2).unwrap()).unwrap().reciprocal);
    assert!(verify_theorem1(2, 2, &PermGroup::alternating(2).unwrap()).unwrap().reciprocal);
    assert!(verify_theorem1(1, 2, &PermGroup::symmetric(2).unwrap()).unwrap().reciprocal);
}

#[test]
fn pair_report_json_round_trip() {
    let report = verify_theorem1(1, 2, &PermGroup::symmetric(2).unwrap()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: PairReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["graph", "group", "orbital", "cycle", "reciprocal", "classification"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    assert!(value["orbital"].as_array().unwrap().iter().all(|c| c.is_string()));
}

/// Every pair `(graph, subgroup of its automorphism group)` on up to 5 vertices.
fn small_pairs() -> Vec<(SimpleGraph, PermGroup, PermGroup)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for graph in enumerate_graphs(n).unwrap() {
            let aut = graph.automorphism_group().unwrap();
            for g in all_subgroups(&aut).unwrap() {
                out.push((graph.clone(), g, aut.clone()));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn conjugating_by_an_automorphism_preserves_the_verdict(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        thread_local!(static PAIRS: Vec<(SimpleGraph, PermGroup, PermGroup)> = small_pairs());
        PAIRS.with(|pairs| {
            let (graph, g, aut) = i.get(pairs);
            let sigma = j.get(aut.elements());
            let before = is_reciprocal_pair(graph, g).unwrap();
            let after = is_reciprocal_pair(graph, &g.conjugate(sigma)).unwrap();
            prop_assert_eq!(before.reciprocal, after.reciprocal);
            prop_assert_eq!(before.orbital, after.orbital);
            prop_assert_eq!(before.cycle, after.cycle);
            Ok(())
        })?;
    }
}
