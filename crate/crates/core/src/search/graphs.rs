use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest vertex count accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_VERTICES: usize = 7;

/// One representative per isomorphism class of graphs on `n` vertices.
///
/// Representatives are in canonical form (minimum edge bitstring over all
/// vertex relabelings) and are ordered by edge count, then by that bitstring.
/// Classes with `m + 1` edges are reached by adding one edge to every class
/// with `m` edges.
pub fn enumerate_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::BoundExceeded {
            what: "vertex count for graph enumeration",
            limit: MAX_ENUMERATION_VERTICES as u128,
            got: n as u128,
        });
    }
    let mut layer: BTreeMap<u64, SimpleGraph> = BTreeMap::new();
    let (code, canon) = SimpleGraph::null(n)?.canonical_form();
    layer.insert(code, canon);
    let mut out = Vec::new();
    while !layer.is_empty() {
        let mut next = BTreeMap::new();
        for g in layer.values() {
            let edges = g.edges();
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut bigger = edges.clone();
                    bigger.push((u, v));
                    let (code, canon) = SimpleGraph::new(n, bigger)?.canonical_form();
                    next.entry(code).or_insert(canon);
                }
            }
        }
        out.extend(std::mem::replace(&mut layer, next).into_values());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    /// Canonicalizes every labelled graph on `n` vertices.
    fn labelled_oracle(n: usize) -> BTreeSet<(usize, u64)> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                let g = SimpleGraph::new(n, edges).unwrap();
                (g.edge_count(), g.canonical_form().0)
            })
            .collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(3).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(4).unwrap().len(), 11);
        assert!(enumerate_graphs(8).unwrap_err().is_bound());
    }

    #[test]
    fn matches_labelled_oracle() {
        for n in 0..=5 {
            let got: Vec<(usize, u64)> = enumerate_graphs(n)
                .unwrap()
                .iter()
                .map(|g| (g.edge_count(), g.canonical_form().0))
                .collect();
            let oracle: Vec<_> = labelled_oracle(n).into_iter().collect();
            assert_eq!(got, oracle, "n = {n}");
        }
    }

    #[test]
    fn representatives_are_canonical() {
        for g in enumerate_graphs(5).unwrap() {
            assert_eq!(g.canonical_form().1, g);
        }
    }
}
