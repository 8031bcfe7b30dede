//! Simple graphs on at most 64 vertices, their chromatic polynomials, and
//! brute-force automorphism groups.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::poly::IntPolynomial;

/// Largest vertex count a [`SimpleGraph`] can hold.
pub const MAX_VERTICES: usize = 64;
/// Largest vertex count accepted by [`SimpleGraph::automorphism_group`].
pub const MAX_AUTOMORPHISM_VERTICES: usize = 9;
/// Largest number of colour maps [`SimpleGraph::count_colorings_oracle`] will enumerate.
pub const MAX_COLOURING_MAPS: u128 = 100_000_000;

/// Undirected loop-free graph on `0..n`, stored as adjacency bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    adj: Vec<u64>,
}

/// The graph `Γ/g`, or the marker that some cycle of `g` contains an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientResult {
    InternalEdge,
    Graph(SimpleGraph),
}

#[inline]
fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Removes bit `v` from a mask, shifting the higher bits down.
#[inline]
fn drop_bit(mask: u64, v: usize) -> u64 {
    let low = mask & (bit(v) - 1);
    let high = mask.checked_shr(v as u32 + 1).unwrap_or(0) << v;
    low | high
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::BoundExceeded {
                what: "vertex count",
                limit: MAX_VERTICES as u128,
                got: n as u128,
            });
        }
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge {{{u},{v}}} out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(SimpleGraph { adj })
    }

    pub fn null(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle_graph(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle graph needs n >= 3, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// A clique on the centre `0..k`, plus points `k..n` each joined to every
    /// centre vertex and to nothing else.
    pub fn k_star(k: usize, n: usize) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::InvalidArgument(format!("k-star needs 1 <= k < n, got k={k}, n={n}")));
        }
        let centre = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        let spokes = (0..k).flat_map(|u| (k..n).map(move |v| (u, v)));
        Self::new(n, centre.chain(spokes))
    }

    /// Vertex-disjoint union, vertices of later graphs shifted past earlier ones.
    pub fn disjoint_union(graphs: &[SimpleGraph]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut offset = 0;
        for g in graphs {
            edges.extend(g.edges().into_iter().map(|(u, v)| (u + offset, v + offset)));
            offset += g.n();
        }
        Self::new(offset, edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).filter(move |&v| self.adj[u] & bit(v) != 0).map(move |v| (u, v)))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&u| self.has_edge(v, u))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// The graph with edge `{sigma(u), sigma(v)}` for each edge `{u, v}`.
    pub fn relabel(&self, sigma: &Permutation) -> SimpleGraph {
        let mut adj = vec![0u64; self.n()];
        for (u, v) in self.edges() {
            let (a, b) = (sigma.apply(u), sigma.apply(v));
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        SimpleGraph { adj }
    }

    /// Induced subgraph on `points`, with `points[i]` relabeled to `i`.
    pub fn induced(&self, points: &[usize]) -> SimpleGraph {
        let adj = points
            .iter()
            .map(|&p| {
                points
                    .iter()
                    .enumerate()
                    .filter(|&(_, &q)| self.has_edge(p, q))
                    .fold(0u64, |m, (i, _)| m | bit(i))
            })
            .collect();
        SimpleGraph { adj }
    }

    /// Connected components, each sorted, ordered by minimum vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..n {
            if seen & bit(start) != 0 {
                continue;
            }
            let mut comp = bit(start);
            let mut frontier = bit(start);
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push((0..n).filter(|&v| comp & bit(v) != 0).collect());
        }
        out
    }

    /// Contracts each cycle of `g` to a vertex; quotient vertex `i` is the
    /// `i`-th orbit of [`Permutation::cycles`].
    pub fn quotient(&self, g: &Permutation) -> Result<QuotientResult> {
        if g.degree() != self.n() {
            return Err(Error::DegreeMismatch {
                expected: self.n(),
                got: g.degree(),
            });
        }
        let cycles = g.cycles();
        let mut orbit = vec![0usize; self.n()];
        for (i, c) in cycles.iter().enumerate() {
            c.iter().for_each(|&v| orbit[v] = i);
        }
        let mut adj = vec![0u64; cycles.len()];
        for (u, v) in self.edges() {
            let (a, b) = (orbit[u], orbit[v]);
            if a == b {
                return Ok(QuotientResult::InternalEdge);
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Ok(QuotientResult::Graph(SimpleGraph { adj }))
    }

    /// Chromatic polynomial by deletion–contraction.
    pub fn chromatic_polynomial(&self) -> IntPolynomial {
        let mut memo = HashMap::new();
        chromatic(self.adj.clone(), &mut memo)
    }

    /// Counts proper colourings with `c` colours by enumerating every map.
    pub fn count_colorings_oracle(&self, c: u64) -> Result<u64> {
        let n = self.n();
        let maps = (c as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if maps > MAX_COLOURING_MAPS {
            return Err(Error::BoundExceeded {
                what: "colour map count",
                limit: MAX_COLOURING_MAPS,
                got: maps,
            });
        }
        if n == 0 {
            return Ok(1);
        }
        if c == 0 {
            return Ok(0);
        }
        let edges = self.edges();
        let mut colour = vec![0u64; n];
        let mut count = 0;
        loop {
            if edges.iter().all(|&(u, v)| colour[u] != colour[v]) {
                count += 1;
            }
            let mut i = 0;
            while i < n {
                colour[i] += 1;
                if colour[i] < c {
                    break;
                }
                colour[i] = 0;
                i += 1;
            }
            if i == n {
                return Ok(count);
            }
        }
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.n()
            && self
                .edges()
                .into_iter()
                .all(|(u, v)| self.has_edge(g.apply(u), g.apply(v)))
    }

    /// All maps `sigma` with `{u,v}` an edge of `self` iff `{sigma u, sigma v}`
    /// is an edge of `other`, in lexicographic order.
    pub fn isomorphisms(&self, other: &SimpleGraph, limit: usize) -> Vec<Permutation> {
        let n = self.n();
        let mut out = Vec::new();
        if n != other.n() || self.edge_count() != other.edge_count() || limit == 0 {
            return out;
        }
        let mut image = vec![0usize; n];
        let mut used = 0u64;
        self.extend_iso(other, 0, &mut image, &mut used, &mut out, limit);
        out
    }

    fn extend_iso(
        &self,
        other: &SimpleGraph,
        v: usize,
        image: &mut Vec<usize>,
        used: &mut u64,
        out: &mut Vec<Permutation>,
        limit: usize,
    ) {
        let n = self.n();
        if v == n {
            out.push(Permutation::from_images(image.clone()).expect("backtracking builds a bijection"));
            return;
        }
        for w in 0..n {
            if *used & bit(w) != 0 || self.degree(v) != other.degree(w) {
                continue;
            }
            if (0..v).any(|u| self.has_edge(u, v) != other.has_edge(image[u], w)) {
                continue;
            }
            image[v] = w;
            *used |= bit(w);
            self.extend_iso(other, v + 1, image, used, out, limit);
            *used &= !bit(w);
            if out.len() >= limit {
                return;
            }
        }
    }

    pub fn find_isomorphism(&self, other: &SimpleGraph) -> Option<Permutation> {
        self.isomorphisms(other, 1).pop()
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// The full automorphism group, found by backtracking with degree pruning.
    pub fn automorphism_group(&self) -> Result<PermGroup> {
        if self.n() > MAX_AUTOMORPHISM_VERTICES {
            return Err(Error::BoundExceeded {
                what: "vertex count for automorphism search",
                limit: MAX_AUTOMORPHISM_VERTICES as u128,
                got: self.n() as u128,
            });
        }
        let elements = self.isomorphisms(self, usize::MAX);
        Ok(PermGroup::from_closed_elements(self.n(), elements))
    }

    /// Edge bitstring under the vertex order given by `sigma`: pair `(i, j)`,
    /// `i < j`, in lexicographic order, the first pair most significant.
    fn code_under(&self, sigma: &[usize]) -> u64 {
        let n = self.n();
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code = (code << 1) | u64::from(self.has_edge(sigma[i], sigma[j]));
            }
        }
        code
    }

    /// Minimum edge bitstring over all `n!` relabelings, and the relabeled graph
    /// attaining it.
    pub fn canonical_form(&self) -> (u64, SimpleGraph) {
        let n = self.n();
        assert!(n <= 11, "canonical form is brute force; n = {n} is too large");
        let mut order: Vec<usize> = (0..n).collect();
        let mut best = (self.code_under(&order), order.clone());
        // Heap's algorithm over vertex orders
        let mut c = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    order.swap(0, i);
                } else {
                    order.swap(c[i], i);
                }
                let code = self.code_under(&order);
                if code < best.0 {
                    best = (code, order.clone());
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        // order[new] = old, so the relabeling sends old -> new
        let mut sigma = vec![0usize; n];
        for (new, &old) in best.1.iter().enumerate() {
            sigma[old] = new;
        }
        let sigma = Permutation::from_images(sigma).expect("vertex order is a bijection");
        (best.0, self.relabel(&sigma))
    }
}

type Memo = HashMap<Vec<u64>, IntPolynomial>;

fn remove_vertex(adj: &[u64], v: usize) -> Vec<u64> {
    adj.iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .map(|(_, &m)| drop_bit(m, v))
        .collect()
}

fn chromatic(adj: Vec<u64>, memo: &mut Memo) -> IntPolynomial {
    let n = adj.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    // A vertex whose neighbourhood is a clique contributes a factor (x - deg).
    let simplicial = (0..n).find(|&v| {
        let nb = adj[v];
        let mut rest = nb;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (adj[u] | bit(u)) & nb != nb {
                return false;
            }
        }
        true
    });
    if let Some(v) = simplicial {
        let d = adj[v].count_ones() as i64;
        let rest = chromatic(remove_vertex(&adj, v), memo);
        return &IntPolynomial::from_i64s(&[-d, 1]) * &rest;
    }
    if let Some(p) = memo.get(&adj) {
        return p.clone();
    }
    // lexicographically smallest edge
    let u = (0..n).find(|&u| adj[u] >> u >> 1 != 0).expect("non-chordal graph has an edge");
    let v = (adj[u] >> u >> 1).trailing_zeros() as usize + u + 1;

    let mut deleted = adj.clone();
    deleted[u] &= !bit(v);
    deleted[v] &= !bit(u);

    let mut merged = deleted.clone();
    let nv = merged[v];
    merged[u] |= nv;
    let mut rest = nv;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        merged[w] |= bit(u);
    }
    let contracted = remove_vertex(&merged, v);

    let p = &chromatic(deleted, memo) - &chromatic(contracted, memo);
    memo.insert(adj, p.clone());
    p
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        SimpleGraph::new(repr.n, repr.edges.into_iter().map(|[u, v]| (u, v))).map_err(D::Error::custom)
    }
}
