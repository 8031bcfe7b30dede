//! Orbital chromatic polynomials and the group–graph reciprocity relation
//! `P_{Γ,G}(x) = (-1)^n F_G(-x)`.
//!
//! Besides the direct check this module holds the closed form of the
//! orbital chromatic polynomial of a k-star, the constructor for the
//! k-star groups `(S_{k+1} wr H) × S_k`, and combinators that build new
//! pairs from old ones by direct and wreath products. Every combinator
//! recomputes reciprocity from scratch.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{QuotientResult, SimpleGraph};
use crate::perm::PermGroup;
use crate::poly::IntPolynomial;
use crate::search::Classification;

/// A (graph, group) pair together with both sides of the reciprocity relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub graph: SimpleGraph,
    pub group: PermGroup,
    /// `P_{Γ,G}(x)`.
    pub orbital: IntPolynomial,
    /// `F_G(x)`.
    pub cycle: IntPolynomial,
    pub reciprocal: bool,
    pub classification: Option<Classification>,
}

impl PairReport {
    /// `(-1)^n F_G(-x)`, the side the orbital polynomial is compared against.
    pub fn reciprocal_side(&self) -> IntPolynomial {
        signed_reflection(&self.cycle, self.graph.n())
    }
}

/// `(-1)^n p(-x)`.
pub fn signed_reflection(p: &IntPolynomial, n: usize) -> IntPolynomial {
    let q = p.substitute_negate();
    if n % 2 == 1 {
        -&q
    } else {
        q
    }
}

fn check_automorphisms(graph: &SimpleGraph, group: &PermGroup) -> Result<()> {
    if graph.n() != group.degree() {
        return Err(Error::DegreeMismatch {
            expected: graph.n(),
            got: group.degree(),
        });
    }
    match group.generators().iter().chain(group.elements()).find(|g| !graph.is_automorphism(g)) {
        Some(g) => Err(Error::NotAutomorphismGroup(g.to_string())),
        None => Ok(()),
    }
}

/// `sum over g in G of P_{Γ/g}(x)`, where a cycle of `g` containing an edge
/// contributes zero.
///
/// Elements with equal quotient graphs share one chromatic computation; the
/// distinct quotients are evaluated in parallel.
pub fn orbital_chromatic_polynomial(graph: &SimpleGraph, group: &PermGroup) -> Result<IntPolynomial> {
    check_automorphisms(graph, group)?;
    let mut tally: HashMap<SimpleGraph, u64> = HashMap::new();
    for g in group.elements() {
        if let QuotientResult::Graph(q) = graph.quotient(g)? {
            *tally.entry(q).or_default() += 1;
        }
    }
    let mut distinct: Vec<(SimpleGraph, u64)> = tally.into_iter().collect();
    distinct.sort_unstable();
    Ok(distinct
        .par_iter()
        .map(|(q, count)| q.chromatic_polynomial().scale(&BigInt::from(*count)))
        .reduce(IntPolynomial::zero, |a, b| &a + &b))
}

/// Computes both sides of the relation and compares them coefficientwise.
pub fn is_reciprocal_pair(graph: &SimpleGraph, group: &PermGroup) -> Result<PairReport> {
    let orbital = orbital_chromatic_polynomial(graph, group)?;
    let cycle = group.cycle_polynomial();
    let reciprocal = orbital == signed_reflection(&cycle, graph.n());
    Ok(PairReport {
        graph: graph.clone(),
        group: group.clone(),
        orbital,
        cycle,
        reciprocal,
        classification: None,
    })
}

/// `x(x-1)...(x-k+1) F_Ḡ(x-k)`, the orbital chromatic polynomial of the
/// k-star on `n` vertices under `Ḡ × T`, with `Ḡ` acting on the `n - k` points.
pub fn kstar_orbital_closed_form(k: usize, n: usize, gbar: &PermGroup) -> Result<IntPolynomial> {
    if k < 1 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    if gbar.degree() != n - k {
        return Err(Error::DegreeMismatch {
            expected: n - k,
            got: gbar.degree(),
        });
    }
    Ok(&IntPolynomial::falling_factorial(k) * &gbar.cycle_polynomial().substitute_shift(k as u64))
}

/// Number of vertices of the k-star carrying `(S_{k+1} wr H) × S_k` for `H ≤ S_r`.
pub fn theorem1_vertex_count(k: usize, r: usize) -> usize {
    r * (k + 1) + k
}

/// `S_k × (S_{k+1} wr H)` on `r(k+1) + k` points: `S_k` on the centre
/// `0..k`, the wreath product on the points in `r` consecutive blocks of
/// size `k + 1`. Labels match [`SimpleGraph::k_star`].
pub fn theorem1_group(k: usize, r: usize, h: &PermGroup) -> Result<PermGroup> {
    if k < 1 || r < 1 {
        return Err(Error::InvalidArgument(format!("need k >= 1 and r >= 1, got k={k}, r={r}")));
    }
    if h.degree() != r {
        return Err(Error::DegreeMismatch {
            expected: r,
            got: h.degree(),
        });
    }
    let gbar = PermGroup::wreath_product(&PermGroup::symmetric(k + 1)?, h)?;
    PermGroup::direct_product(&PermGroup::symmetric(k)?, &gbar)
}

/// Whether `(k_star, theorem1_group(k, r, H))` is expected to be reciprocal:
/// always for odd `k`, and for even `k` exactly when `H` has no odd permutation.
pub fn theorem1_predicts_reciprocal(k: usize, h: &PermGroup) -> bool {
    k % 2 == 1 || !h.has_odd_permutation()
}

/// Builds the k-star on `r(k+1) + k` vertices with its group and checks
/// reciprocity directly.
pub fn verify_theorem1(k: usize, r: usize, h: &PermGroup) -> Result<PairReport> {
    let group = theorem1_group(k, r, h)?;
    let n = theorem1_vertex_count(k, r);
    debug_assert!(n >= 2 * k + 1);
    let graph = SimpleGraph::k_star(k, n)?;
    is_reciprocal_pair(&graph, &group)
}

fn require_reciprocal(pair: &PairReport) -> Result<()> {
    if pair.reciprocal {
        Ok(())
    } else {
        Err(Error::NotReciprocal(format!(
            "orbital {} differs from {}",
            pair.orbital,
            pair.reciprocal_side()
        )))
    }
}

/// Disjoint union of the graphs with the direct product of the groups.
pub fn product_pair(pairs: &[PairReport]) -> Result<PairReport> {
    let (first, rest) = pairs
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("product of an empty list of pairs".into()))?;
    pairs.iter().try_for_each(require_reciprocal)?;
    let graphs: Vec<SimpleGraph> = pairs.iter().map(|p| p.graph.clone()).collect();
    let graph = SimpleGraph::disjoint_union(&graphs)?;
    let group = rest
        .iter()
        .try_fold(first.group.clone(), |acc, p| PermGroup::direct_product(&acc, &p.group))?;
    let report = is_reciprocal_pair(&graph, &group)?;
    require_reciprocal(&report)?;
    Ok(report)
}

/// `m` disjoint copies of the graph with `G wr H`, `H` of degree `m`
/// containing no odd permutation.
pub fn wreath_pair(pair: &PairReport, h: &PermGroup) -> Result<PairReport> {
    require_reciprocal(pair)?;
    if h.has_odd_permutation() {
        return Err(Error::OddPermutationInH);
    }
    let copies = vec![pair.graph.clone(); h.degree()];
    let graph = SimpleGraph::disjoint_union(&copies)?;
    let group = PermGroup::wreath_product(&pair.group, h)?;
    let report = is_reciprocal_pair(&graph, &group)?;
    require_reciprocal(&report)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn sym(n: usize) -> PermGroup {
        PermGroup::symmetric(n).unwrap()
    }

    #[test]
    fn orbital_complete_with_symmetric() {
        for n in 1..=5 {
            let got = orbital_chromatic_polynomial(&SimpleGraph::complete(n).unwrap(), &sym(n)).unwrap();
            assert_eq!(got, IntPolynomial::falling_factorial(n));
        }
    }

    #[test]
    fn orbital_four_cycle() {
        let c4 = SimpleGraph::cycle_graph(4).unwrap();
        let d8 = PermGroup::dihedral(4).unwrap();
        assert_eq!(orbital_chromatic_polynomial(&c4, &d8).unwrap(), p(&[0, -2, 3, -2, 1]));
    }

    #[test]
    fn orbital_null_is_cycle_polynomial() {
        let null = SimpleGraph::null(4).unwrap();
        for g in [PermGroup::dihedral(4).unwrap(), PermGroup::alternating(4).unwrap(), sym(4)] {
            assert_eq!(orbital_chromatic_polynomial(&null, &g).unwrap(), g.cycle_polynomial());
        }
    }

    #[test]
    fn orbital_rejects_non_automorphisms() {
        let c4 = SimpleGraph::cycle_graph(4).unwrap();
        let err = orbital_chromatic_polynomial(&c4, &sym(4)).unwrap_err();
        assert!(matches!(err, Error::NotAutomorphismGroup(_)));
        assert!(orbital_chromatic_polynomial(&c4, &sym(3)).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        assert!(is_reciprocal_pair(&SimpleGraph::complete(4).unwrap(), &sym(4)).unwrap().reciprocal);
        let c4 = SimpleGraph::cycle_graph(4).unwrap();
        assert!(is_reciprocal_pair(&c4, &PermGroup::dihedral(4).unwrap()).unwrap().reciprocal);
        let report = is_reciprocal_pair(&c4, &PermGroup::cyclic(4).unwrap()).unwrap();
        assert!(!report.reciprocal);
        assert_eq!(report.orbital, p(&[0, -4, 7, -4, 1]));
        assert_eq!(report.reciprocal_side(), p(&[0, -2, 1, 0, 1]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(kstar_orbital_closed_form(1, 3, &sym(2)).unwrap(), p(&[0, 0, -1, 1]));
        let star = SimpleGraph::k_star(1, 3).unwrap();
        let g = PermGroup::direct_product(&sym(1), &sym(2)).unwrap();
        assert_eq!(orbital_chromatic_polynomial(&star, &g).unwrap(), p(&[0, 0, -1, 1]));

        let x2_x = p(&[0, -1, 1]);
        let expected = &x2_x * &IntPolynomial::falling_factorial(3);
        assert_eq!(kstar_orbital_closed_form(2, 5, &sym(3)).unwrap(), expected);
        let g = PermGroup::direct_product(&sym(2), &sym(3)).unwrap();
        let direct = orbital_chromatic_polynomial(&SimpleGraph::k_star(2, 5).unwrap(), &g).unwrap();
        assert_eq!(direct, expected);

        for (k, n) in [(1, 4), (2, 6), (3, 5)] {
            let closed = kstar_orbital_closed_form(k, n, &PermGroup::trivial(n - k)).unwrap();
            assert_eq!(closed, SimpleGraph::k_star(k, n).unwrap().chromatic_polynomial());
        }
        assert!(kstar_orbital_closed_form(2, 5, &sym(2)).is_err());
        assert!(kstar_orbital_closed_form(5, 5, &sym(1)).is_err());
    }

    #[test]
    fn theorem1_groups() {
        let g = theorem1_group(1, 1, &PermGroup::trivial(1)).unwrap();
        assert_eq!((g.degree(), g.order()), (3, 2));
        let g = theorem1_group(2, 1, &PermGroup::trivial(1)).unwrap();
        assert_eq!((g.degree(), g.order()), (5, 12));
        assert_eq!(g, SimpleGraph::k_star(2, 5).unwrap().automorphism_group().unwrap());
        let g = theorem1_group(1, 2, &sym(2)).unwrap();
        assert_eq!((g.degree(), g.order()), (5, 8));
        assert!(theorem1_group(0, 1, &sym(1)).is_err());
        assert!(theorem1_group(1, 2, &sym(3)).is_err());
    }

    #[test]
    fn theorem1_verdicts() {
        assert!(verify_theorem1(1, 2, &sym(2)).unwrap().reciprocal);
        assert!(verify_theorem1(2, 2, &PermGroup::alternating(2).unwrap()).unwrap().reciprocal);
        assert!(!verify_theorem1(2, 2, &sym(2)).unwrap().reciprocal);
        assert!(!theorem1_predicts_reciprocal(2, &sym(2)));
        assert!(theorem1_predicts_reciprocal(3, &sym(2)));
    }

    fn k2_pair() -> PairReport {
        is_reciprocal_pair(&SimpleGraph::complete(2).unwrap(), &sym(2)).unwrap()
    }

    #[test]
    fn product_pairs() {
        let pp = product_pair(&[k2_pair(), k2_pair()]).unwrap();
        assert_eq!(pp.graph.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(pp.group.order(), 4);
        assert!(product_pair(&[]).is_err());

        let k3 = is_reciprocal_pair(&SimpleGraph::complete(3).unwrap(), &sym(3)).unwrap();
        let null2 = is_reciprocal_pair(&SimpleGraph::null(2).unwrap(), &PermGroup::trivial(2)).unwrap();
        assert!(product_pair(&[k3, null2]).unwrap().reciprocal);

        let bad = is_reciprocal_pair(&SimpleGraph::null(2).unwrap(), &sym(2)).unwrap();
        assert!(matches!(product_pair(&[bad]), Err(Error::NotReciprocal(_))));
    }

    #[test]
    fn wreath_pairs() {
        let wp = wreath_pair(&k2_pair(), &PermGroup::alternating(3).unwrap()).unwrap();
        assert_eq!((wp.graph.n(), wp.graph.edge_count(), wp.group.order()), (6, 3, 24));
        let same = wreath_pair(&k2_pair(), &PermGroup::trivial(1)).unwrap();
        assert_eq!(same, k2_pair());
        assert_eq!(wreath_pair(&k2_pair(), &sym(2)), Err(Error::OddPermutationInH));
    }

    #[test]
    fn report_json_round_trip() {
        let report = is_reciprocal_pair(
            &SimpleGraph::cycle_graph(4).unwrap(),
            &PermGroup::dihedral(4).unwrap(),
        )
        .unwrap();
        let js = serde_json::to_value(&report).unwrap();
        assert_eq!(js["orbital"], serde_json::json!(["0", "-2", "3", "-2", "1"]));
        assert_eq!(js["cycle"], serde_json::json!(["0", "2", "3", "2", "1"]));
        assert_eq!(js["reciprocal"], serde_json::json!(true));
        assert_eq!(js["group"]["degree"], serde_json::json!(4));
        let back: PairReport = serde_json::from_value(js).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn orbital_counts_fixed_colourings() {
        // eval(P_{Γ,G}, c) = #{(colouring, g) : colouring proper and fixed by g}
        let cases = [
            (SimpleGraph::cycle_graph(4).unwrap(), PermGroup::dihedral(4).unwrap()),
            (SimpleGraph::cycle_graph(5).unwrap(), PermGroup::dihedral(5).unwrap()),
            (SimpleGraph::k_star(1, 5).unwrap(), theorem1_group(1, 2, &sym(2)).unwrap()),
            (
                SimpleGraph::new(5, [(0, 1), (2, 3)]).unwrap(),
                PermGroup::close(5, vec![Permutation::parse("(1,3)(2,4)", 5).unwrap()]).unwrap(),
            ),
        ];
        for (graph, group) in &cases {
            let orbital = orbital_chromatic_polynomial(graph, group).unwrap();
            for c in 0..=3u64 {
                assert_eq!(orbital.eval_i64(c as i64), fixed_colourings(graph, group, c).into());
            }
        }
    }

    fn fixed_colourings(graph: &SimpleGraph, group: &PermGroup, c: u64) -> u64 {
        let n = graph.n();
        let total = c.pow(n as u32);
        let mut count = 0;
        for code in 0..total {
            let colour: Vec<u64> = (0..n).map(|i| code / c.pow(i as u32) % c).collect();
            if graph.edges().iter().any(|&(u, v)| colour[u] == colour[v]) {
                continue;
            }
            count += group
                .elements()
                .iter()
                .filter(|g| (0..n).all(|i| colour[g.apply(i)] == colour[i]))
                .count() as u64;
        }
        count
    }
}
