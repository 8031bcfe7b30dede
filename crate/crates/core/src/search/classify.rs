use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::perm::{PermGroup, Permutation};
use crate::reciprocity::{is_reciprocal_pair, PairReport};

/// Families a reciprocal pair can be sorted into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    TrivialNull,
    TrivialComplete,
    FourCycle,
    KStar,
    ProductDerived,
    WreathDerived,
    Unknown,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub tag: ClassTag,
    pub evidence: String,
}

impl Classification {
    fn new(tag: ClassTag, evidence: impl Into<String>) -> Self {
        Classification {
            tag,
            evidence: evidence.into(),
        }
    }
}

/// Witness that a pair splits over the connected components of its graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// The group is the direct product of its restrictions to `parts`, and
    /// each restricted pair is reciprocal.
    DirectProduct {
        parts: Vec<Vec<usize>>,
        factors: Vec<PairReport>,
    },
    /// The components are isomorphic copies of `base.graph`, and the group is
    /// `base.group wr top` under a suitable identification of the copies.
    Wreath {
        blocks: Vec<Vec<usize>>,
        base: PairReport,
        top: PermGroup,
        top_has_odd_permutation: bool,
    },
}

/// Parameters `(k, r, H)` if the pair is a k-star with `n >= 2k + 1` carrying
/// `S_k × (S_{k+1} wr H)` (with `H ≤ A_r` when `k` is even), in any labeling.
///
/// The blocks of size `k + 1` are recovered as the orbits of the
/// transpositions the group contains on the points.
pub fn kstar_parameters(graph: &SimpleGraph, group: &PermGroup) -> Option<(usize, usize, PermGroup)> {
    let n = graph.n();
    let centre: Vec<usize> = (0..n).filter(|&v| graph.degree(v) + 1 == n).collect();
    let k = centre.len();
    if k < 1 || n < 2 * k + 1 || graph.edge_count() != k * (k - 1) / 2 + k * (n - k) {
        return None;
    }
    let points: Vec<usize> = (0..n).filter(|v| !centre.contains(v)).collect();
    let alpha = points.len();
    if alpha % (k + 1) != 0 {
        return None;
    }
    let r = alpha / (k + 1);

    for (i, &a) in centre.iter().enumerate() {
        for &b in &centre[i + 1..] {
            if !group.contains(&Permutation::from_cycles(n, &[&[a, b]]).ok()?) {
                return None;
            }
        }
    }

    // transposition graph on the points
    let mut block_of: Vec<usize> = (0..alpha).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in group.elements().iter().filter_map(Permutation::as_transposition) {
        let (Ok(ia), Ok(ib)) = (points.binary_search(&a), points.binary_search(&b)) else {
            continue;
        };
        let (ra, rb) = (find(&mut block_of, ia), find(&mut block_of, ib));
        block_of[ra.max(rb)] = ra.min(rb);
    }
    let roots: Vec<usize> = (0..alpha).map(|i| find(&mut block_of, i)).collect();
    let mut labels: Vec<usize> = roots.clone();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != r || labels.iter().any(|l| roots.iter().filter(|&x| x == l).count() != k + 1) {
        return None;
    }
    let block_index = |p: usize| {
        let local = points.binary_search(&p).expect("point");
        labels.binary_search(&roots[local]).expect("block label")
    };

    // the group must permute the blocks; collect the induced action
    let mut top = Vec::new();
    for g in group.elements() {
        let mut images = vec![usize::MAX; r];
        for &p in &points {
            let (from, to) = (block_index(p), block_index(g.apply(p)));
            if images[from] == usize::MAX {
                images[from] = to;
            } else if images[from] != to {
                return None;
            }
        }
        top.push(Permutation::from_images(images).ok()?);
    }
    let h = PermGroup::from_closed_elements(r, top);
    if k % 2 == 0 && h.has_odd_permutation() {
        return None;
    }
    Some((k, r, h))
}

/// Set partitions of `0..t` as block labels, finest first.
fn set_partitions(t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; t];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, out);
        }
    }
    if t > 0 {
        rec(1, 0, &mut labels, &mut out);
    }
    let parts = |p: &Vec<usize>| p.iter().max().map_or(0, |m| m + 1);
    out.sort_by_key(|p| std::cmp::Reverse(parts(p)));
    out
}

fn component_index(graph: &SimpleGraph, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut comp_of = vec![0; graph.n()];
    for (i, c) in comps.iter().enumerate() {
        c.iter().for_each(|&v| comp_of[v] = i);
    }
    comp_of
}

/// A direct-product splitting over unions of components, if one exists.
pub fn product_decomposition(pair: &PairReport) -> Result<Option<Decomposition>> {
    let graph = &pair.graph;
    let group = &pair.group;
    let comps = graph.connected_components();
    if comps.len() < 2 {
        return Ok(None);
    }
    let comp_of = component_index(graph, &comps);

    // orbits of the group on components
    let mut orbit: Vec<usize> = (0..comps.len()).collect();
    loop {
        let mut changed = false;
        for g in group.generators() {
            for (i, c) in comps.iter().enumerate() {
                let j = comp_of[g.apply(c[0])];
                let m = orbit[i].min(orbit[j]);
                if orbit[i] != m || orbit[j] != m {
                    orbit[i] = m;
                    orbit[j] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut orbit_ids: Vec<usize> = orbit.clone();
    orbit_ids.sort_unstable();
    orbit_ids.dedup();
    let t = orbit_ids.len();
    if t < 2 {
        return Ok(None);
    }
    let block_vertices: Vec<Vec<usize>> = orbit_ids
        .iter()
        .map(|&id| {
            let mut vs: Vec<usize> = (0..comps.len())
                .filter(|&i| orbit[i] == id)
                .flat_map(|i| comps[i].iter().copied())
                .collect();
            vs.sort_unstable();
            vs
        })
        .collect();

    let partitions = if t <= 8 { set_partitions(t) } else { vec![(0..t).collect()] };
    for labels in partitions {
        let count = labels.iter().max().map_or(0, |m| m + 1);
        if count < 2 {
            continue;
        }
        let parts: Vec<Vec<usize>> = (0..count)
            .map(|l| {
                let mut vs: Vec<usize> = labels
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| x == l)
                    .flat_map(|(b, _)| block_vertices[b].iter().copied())
                    .collect();
                vs.sort_unstable();
                vs
            })
            .collect();
        let restricted = parts.iter().map(|p| group.restrict(p)).collect::<Result<Vec<_>>>()?;
        let product: u128 = restricted.iter().map(|g| g.order() as u128).product();
        if product != group.order() as u128 {
            continue;
        }
        let factors = parts
            .iter()
            .zip(&restricted)
            .map(|(p, g)| is_reciprocal_pair(&graph.induced(p), g))
            .collect::<Result<Vec<_>>>()?;
        if factors.iter().all(|f| f.reciprocal) {
            return Ok(Some(Decomposition::DirectProduct { parts, factors }));
        }
    }
    Ok(None)
}

const MAX_IDENTIFICATIONS: usize = 100_000;

/// A wreath-product splitting with one block per component, if one exists.
pub fn wreath_decomposition(pair: &PairReport) -> Result<Option<Decomposition>> {
    let graph = &pair.graph;
    let group = &pair.group;
    let comps = graph.connected_components();
    let m = comps.len();
    if m < 2 {
        return Ok(None);
    }
    let d = comps[0].len();
    let base_graph = graph.induced(&comps[0]);
    let comp_of = component_index(graph, &comps);

    let kernel: Vec<&Permutation> = group
        .elements()
        .iter()
        .filter(|g| comps.iter().all(|c| comp_of[g.apply(c[0])] == comp_of[c[0]]))
        .collect();
    let local: Vec<PermGroup> = comps
        .iter()
        .map(|c| {
            let elements = kernel.iter().map(|g| g.restrict(c).expect("kernel fixes components")).collect();
            PermGroup::from_closed_elements(c.len(), elements)
        })
        .collect();
    let base_order = local[0].order() as u128;
    if (base_order.pow(m as u32)) != kernel.len() as u128 {
        return Ok(None);
    }

    // identifications phi_i : copy 0 -> copy i carrying N_0 onto N_i
    let mut candidates: Vec<Vec<Permutation>> = Vec::with_capacity(m);
    for (i, c) in comps.iter().enumerate() {
        if c.len() != d {
            return Ok(None);
        }
        let isos: Vec<Permutation> = if i == 0 {
            vec![Permutation::identity(d)]
        } else {
            base_graph
                .isomorphisms(&graph.induced(c), MAX_IDENTIFICATIONS)
                .into_iter()
                .filter(|phi| local[0].conjugate(phi) == local[i])
                .collect()
        };
        if isos.is_empty() {
            return Ok(None);
        }
        candidates.push(isos);
    }
    let combos: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if combos > MAX_IDENTIFICATIONS as u128 {
        return Ok(None);
    }

    let mut top_elements: Vec<Permutation> = group
        .elements()
        .iter()
        .map(|g| {
            let images = comps.iter().map(|c| comp_of[g.apply(c[0])]).collect();
            Permutation::from_images(images).expect("automorphisms permute components")
        })
        .collect();
    top_elements.sort_unstable();
    top_elements.dedup();
    let top = PermGroup::from_closed_elements(m, top_elements);

    let n = graph.n();
    let mut choice = vec![0usize; m];
    let found = loop {
        let phis: Vec<&Permutation> = choice.iter().enumerate().map(|(i, &c)| &candidates[i][c]).collect();
        let lifts_ok = top.generators().iter().all(|h| {
            let mut images = vec![0usize; n];
            for i in 0..m {
                let j = h.apply(i);
                for x in 0..d {
                    images[comps[i][phis[i].apply(x)]] = comps[j][phis[j].apply(x)];
                }
            }
            Permutation::from_images(images).is_ok_and(|p| group.contains(&p))
        });
        if lifts_ok {
            break true;
        }
        let mut pos = 0;
        while pos < m {
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == m {
            break false;
        }
    };
    if !found {
        return Ok(None);
    }
    let base = is_reciprocal_pair(&base_graph, &local[0])?;
    if !base.reciprocal {
        return Ok(None);
    }
    Ok(Some(Decomposition::Wreath {
        blocks: comps,
        base,
        top_has_odd_permutation: top.has_odd_permutation(),
        top,
    }))
}

/// First decomposition found, trying direct products before wreath products.
pub fn decompose(pair: &PairReport) -> Result<Option<Decomposition>> {
    require_reciprocal(pair)?;
    match product_decomposition(pair)? {
        Some(d) => Ok(Some(d)),
        None => wreath_decomposition(pair),
    }
}

/// Whether no component-wise decomposition exists, with the witness if one does.
pub fn is_irreducible(pair: &PairReport) -> Result<(bool, Option<Decomposition>)> {
    let witness = decompose(pair)?;
    Ok((witness.is_none(), witness))
}

fn require_reciprocal(pair: &PairReport) -> Result<()> {
    if pair.reciprocal {
        Ok(())
    } else {
        Err(Error::NotReciprocal("classification needs a reciprocal pair".into()))
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Sorts a reciprocal pair into the first matching family: null graph,
/// complete graph, 4-cycle, k-star, then direct or wreath product of pairs
/// that themselves classify. `Unknown` only if all of these fail.
///
/// `K_1` is both null and complete; it is tagged `TrivialComplete`.
pub fn classify(pair: &PairReport) -> Result<Classification> {
    require_reciprocal(pair)?;
    let graph = &pair.graph;
    let group = &pair.group;
    let n = graph.n();
    let is_null = graph.edge_count() == 0;

    if is_null && graph.is_complete() {
        return Ok(Classification::new(ClassTag::TrivialComplete, format!("K_{n} is both null and complete")));
    }
    if is_null && !group.has_odd_permutation() {
        return Ok(Classification::new(
            ClassTag::TrivialNull,
            format!("null graph on {n} vertices, even group of order {}", group.order()),
        ));
    }
    if graph.is_complete() && group.order() as u128 == factorial(n) {
        return Ok(Classification::new(ClassTag::TrivialComplete, format!("K_{n} with S_{n}")));
    }
    if n == 4 && group.order() == 8 && graph.is_isomorphic(&SimpleGraph::cycle_graph(4)?) {
        return Ok(Classification::new(ClassTag::FourCycle, "C_4 with its full automorphism group"));
    }
    if let Some((k, r, h)) = kstar_parameters(graph, group) {
        return Ok(Classification::new(
            ClassTag::KStar,
            format!("k={k}, r={r}, |H|={}, H even={}", h.order(), !h.has_odd_permutation()),
        ));
    }

    let mut unknown_parts = Vec::new();
    if let Some(Decomposition::DirectProduct { parts, factors }) = product_decomposition(pair)? {
        let tags = factors.iter().map(classify).collect::<Result<Vec<_>>>()?;
        let summary: Vec<String> = parts
            .iter()
            .zip(&tags)
            .map(|(p, c)| format!("{p:?}: {}", c.tag))
            .collect();
        if tags.iter().all(|c| c.tag != ClassTag::Unknown) {
            return Ok(Classification::new(ClassTag::ProductDerived, summary.join("; ")));
        }
        unknown_parts.push(format!("product witness with unclassified factor: {}", summary.join("; ")));
    }
    if let Some(Decomposition::Wreath {
        base,
        top,
        top_has_odd_permutation,
        ..
    }) = wreath_decomposition(pair)?
    {
        let base_class = classify(&base)?;
        let summary = format!(
            "base {}-vertex pair: {}; top group of degree {} and order {}, odd permutations: {}",
            base.graph.n(),
            base_class.tag,
            top.degree(),
            top.order(),
            top_has_odd_permutation
        );
        if base_class.tag != ClassTag::Unknown {
            return Ok(Classification::new(ClassTag::WreathDerived, summary));
        }
        unknown_parts.push(summary);
    }
    let evidence = if unknown_parts.is_empty() {
        "no family matches".to_string()
    } else {
        unknown_parts.join(" | ")
    };
    Ok(Classification::new(ClassTag::Unknown, evidence))
}
