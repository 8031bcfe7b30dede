//! Permutations and fully enumerated permutation groups.
//!
//! Points are `0..n`. Groups keep their complete element list sorted
//! lexicographically by image array, which makes every derived output
//! deterministic. The text format for permutations is disjoint-cycle
//! notation with 1-indexed points, e.g. `(1,3)(2,4)`, and `()` for the
//! identity.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::poly::IntPolynomial;

/// Default limit on the number of elements a group may have.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A bijection on `0..n` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotBijective(format!("{images:?}")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation of degree `n` from 0-indexed disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a >= n || std::mem::replace(&mut touched[a], true) {
                    return Err(Error::NotBijective(format!("cycles {cycles:?} on {n} points")));
                }
                images[a] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses 1-indexed cycle notation such as `(1,3)(2,4)` or `()`.
    /// Points may be separated by commas or whitespace.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("bad cycle notation {s:?}"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let body = &inner[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if p >= 1 && p <= n => Ok(p - 1),
                    _ => Err(Error::Parse(format!("point {t:?} out of range 1..={n}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `sigma ∘ self ∘ sigma⁻¹`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[sigma.images[i] as usize] = sigma.images[j as usize];
        }
        Permutation { images }
    }

    /// Orbits of `<self>`, each starting at its minimum, sorted by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
            }
        }
        count
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_count()) % 2 == 0
    }

    /// The swapped pair if this is a single transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.degree()).filter(|&i| self.apply(i) != i).collect();
        match moved[..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    /// Extends to degree `total`, acting on `offset..offset + n`, fixing all other points.
    pub fn embed(&self, offset: usize, total: usize) -> Permutation {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Permutation { images }
    }

    /// Restriction to an invariant point list, relabeled so that
    /// `points[i]` becomes `i`. Returns `None` if the list is not invariant.
    pub fn restrict(&self, points: &[usize]) -> Option<Permutation> {
        let mut index = vec![usize::MAX; self.degree()];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let images = points
            .iter()
            .map(|&p| {
                let q = index[self.apply(p)];
                (q != usize::MAX).then_some(q as u32)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Permutation { images })
    }
}

/// 1-indexed disjoint-cycle notation; fixed points are omitted.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// A permutation group with its complete, sorted element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

fn check_cap(what: &'static str, size: u128, cap: usize) -> Result<()> {
    if size > cap as u128 {
        return Err(Error::BoundExceeded {
            what,
            limit: cap as u128,
            got: size,
        });
    }
    Ok(())
}

/// Breadth-first closure of `generators`, returned unsorted.
fn closure_set(degree: usize, generators: &[Permutation], cap: usize) -> Result<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.compose(s);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(Error::BoundExceeded {
                        what: "group order",
                        limit: cap as u128,
                        got: seen.len() as u128 + 1,
                    });
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

impl PermGroup {
    /// The subgroup of `S_degree` generated by `generators`.
    pub fn close(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::close_with_cap(degree, generators, DEFAULT_CLOSURE_CAP)
    }

    pub fn close_with_cap(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut elements: Vec<_> = closure_set(degree, &generators, cap)?.into_iter().collect();
        elements.sort_unstable();
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    /// Wraps an element list already known to be a group, choosing a small
    /// generating set greedily in element order.
    pub(crate) fn from_closed_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut generators = Vec::new();
        let mut current = HashSet::from([Permutation::identity(degree)]);
        for g in &elements {
            if current.len() == elements.len() {
                break;
            }
            if !current.contains(g) {
                generators.push(g.clone());
                current = closure_set(degree, &generators, usize::MAX)
                    .expect("closure of subgroup elements is bounded by the group");
            }
        }
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub(crate) fn from_sorted_parts(degree: usize, generators: Vec<Permutation>, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup {
            degree: n,
            generators: Vec::new(),
            elements: vec![Permutation::identity(n)],
        }
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("symmetric group needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
        }
        if n >= 3 {
            let all: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&all])?);
        }
        Self::close(n, gens)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("alternating group needs n >= 1".into()));
        }
        let gens = (2..n)
            .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]))
            .collect::<Result<Vec<_>>>()?;
        Self::close(n, gens)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
        }
        let all: Vec<usize> = (0..n).collect();
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[&all])?]
        } else {
            Vec::new()
        };
        Self::close(n, gens)
    }

    /// Symmetries of the polygon `0 - 1 - ... - (n-1) - 0`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("dihedral group needs n >= 3".into()));
        }
        let rotation = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
        let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
        Self::close(n, vec![rotation, reflection])
    }

    /// `G1 × G2` on `n1 + n2` points, `G2` acting on the shifted points.
    pub fn direct_product(g1: &PermGroup, g2: &PermGroup) -> Result<Self> {
        let size = g1.order() as u128 * g2.order() as u128;
        check_cap("group order", size, DEFAULT_CLOSURE_CAP)?;
        let (n1, n2) = (g1.degree, g2.degree);
        let n = n1 + n2;
        let generators = g1
            .generators
            .iter()
            .map(|g| g.embed(0, n))
            .chain(g2.generators.iter().map(|g| g.embed(n1, n)))
            .collect();
        let mut elements = Vec::with_capacity(size as usize);
        for a in &g1.elements {
            for b in &g2.elements {
                let mut images = a.images.clone();
                images.extend(b.images.iter().map(|&j| j + n1 as u32));
                elements.push(Permutation { images });
            }
        }
        debug_assert!(n2 == 0 || elements.windows(2).all(|w| w[0] < w[1]));
        Ok(PermGroup {
            degree: n,
            generators,
            elements,
        })
    }

    /// Imprimitive wreath product `G wr H` on `m * d` points.
    ///
    /// Block `i` is `i*d .. i*d + d`. The element `(g_0, .., g_{m-1}; h)` sends
    /// point `i*d + j` to `h(i)*d + g_i(j)`.
    pub fn wreath_product(g: &PermGroup, h: &PermGroup) -> Result<Self> {
        let (d, m) = (g.degree, h.degree);
        let size = (g.order() as u128)
            .checked_pow(m as u32)
            .and_then(|s| s.checked_mul(h.order() as u128))
            .unwrap_or(u128::MAX);
        check_cap("group order", size, DEFAULT_CLOSURE_CAP)?;
        let n = m * d;

        let mut generators = Vec::new();
        for block in 0..m {
            generators.extend(g.generators.iter().map(|s| s.embed(block * d, n)));
        }
        for s in &h.generators {
            let images = (0..n).map(|p| s.apply(p / d) * d + p % d).collect();
            generators.push(Permutation::from_images(images)?);
        }

        let mut elements = Vec::with_capacity(size as usize);
        let mut choice = vec![0usize; m];
        for top in &h.elements {
            choice.iter_mut().for_each(|c| *c = 0);
            loop {
                let mut images = vec![0u32; n];
                for (i, &c) in choice.iter().enumerate() {
                    let target = top.images[i] * d as u32;
                    for (j, &gj) in g.elements[c].images.iter().enumerate() {
                        images[i * d + j] = target + gj;
                    }
                }
                elements.push(Permutation { images });
                // odometer over G^m
                let mut pos = 0;
                while pos < m {
                    choice[pos] += 1;
                    if choice[pos] < g.order() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
            }
        }
        Ok(Self::from_sorted_parts(n, generators, elements))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn has_odd_permutation(&self) -> bool {
        self.elements.iter().any(|g| !g.is_even())
    }

    /// `F_G(x) = sum over g of x^(cycles of g)`.
    pub fn cycle_polynomial(&self) -> IntPolynomial {
        let mut counts = vec![0u64; self.degree + 1];
        for g in &self.elements {
            counts[g.cycle_count()] += 1;
        }
        IntPolynomial::from_coeffs(counts.into_iter().map(BigInt::from).collect())
    }

    /// Elements fixing every listed point.
    pub fn point_stabilizer(&self, points: &[usize]) -> PermGroup {
        let elements: Vec<_> = self
            .elements
            .iter()
            .filter(|g| points.iter().all(|&p| g.apply(p) == p))
            .cloned()
            .collect();
        if elements.len() == self.order() {
            return self.clone();
        }
        Self::from_closed_elements(self.degree, elements)
    }

    /// Elements mapping the point set onto itself.
    pub fn setwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let mut mask = vec![false; self.degree];
        points.iter().for_each(|&p| mask[p] = true);
        let elements: Vec<_> = self
            .elements
            .iter()
            .filter(|g| points.iter().all(|&p| mask[g.apply(p)]))
            .cloned()
            .collect();
        Self::from_closed_elements(self.degree, elements)
    }

    /// Restriction to an invariant point list, relabeled to `0..points.len()`.
    pub fn restrict(&self, points: &[usize]) -> Result<PermGroup> {
        let elements = self
            .elements
            .iter()
            .map(|g| g.restrict(points))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidArgument(format!("points {points:?} are not invariant")))?;
        Ok(Self::from_closed_elements(points.len(), elements))
    }

    /// `sigma G sigma⁻¹`.
    pub fn conjugate(&self, sigma: &Permutation) -> PermGroup {
        let generators = self.generators.iter().map(|g| g.conjugate_by(sigma)).collect();
        let elements = self.elements.iter().map(|g| g.conjugate_by(sigma)).collect();
        Self::from_sorted_parts(self.degree, generators, elements)
    }

    /// `(t, t0)`: transpositions in the group, and those whose swapped pair
    /// is a non-edge of `graph`.
    pub fn transposition_census(&self, graph: &SimpleGraph) -> Result<(usize, usize)> {
        if graph.n() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: graph.n(),
            });
        }
        let mut t = 0;
        let mut t0 = 0;
        for (a, b) in self.elements.iter().filter_map(Permutation::as_transposition) {
            t += 1;
            if !graph.has_edge(a, b) {
                t0 += 1;
            }
        }
        Ok((t, t0))
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            generators: self.generators.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Serialized form of a group: degree plus generators in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse(s, self.degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::close(self.degree, gens)
    }
}

impl Serialize for PermGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        GroupSpec::deserialize(deserializer)?
            .build()
            .map_err(D::Error::custom)
    }
}
