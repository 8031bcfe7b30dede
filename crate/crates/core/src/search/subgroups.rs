use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest group order accepted by [`enumerate_subgroups`].
pub const MAX_SUBGROUP_SEARCH_ORDER: usize = 5000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// Elements of a group addressed by their position in the sorted element list.
struct Indexed<'a> {
    group: &'a PermGroup,
    index: HashMap<&'a Permutation, u32>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    identity: u32,
}

impl<'a> Indexed<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let elements = group.elements();
        let index: HashMap<&Permutation, u32> =
            elements.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();
        let lookup = |p: &Permutation| index[p];
        let table = (elements.len() <= TABLE_LIMIT).then(|| {
            elements
                .iter()
                .flat_map(|a| elements.iter().map(move |b| a.compose(b)))
                .map(|p| lookup(&p))
                .collect()
        });
        let inverse = elements.iter().map(|g| lookup(&g.inverse())).collect();
        let identity = lookup(&Permutation::identity(group.degree()));
        Indexed {
            group,
            index,
            table,
            inverse,
            identity,
        }
    }

    fn len(&self) -> usize {
        self.group.order()
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => {
                let e = self.group.elements();
                self.index[&e[a as usize].compose(&e[b as usize])]
            }
        }
    }

    fn conj(&self, s: u32, a: u32) -> u32 {
        self.mul(self.mul(s, a), self.inverse[s as usize])
    }

    fn words(&self) -> usize {
        self.len().div_ceil(64)
    }
}

/// A subgroup as a bitset over element indices.
#[derive(Clone, Debug)]
struct Sub {
    bits: Vec<u64>,
    gens: Vec<u32>,
    order: usize,
}

impl Sub {
    fn contains(&self, i: u32) -> bool {
        self.bits[i as usize / 64] >> (i % 64) & 1 == 1
    }

    fn members(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.order);
        for (w, &word) in self.bits.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                out.push((w * 64) as u32 + rest.trailing_zeros());
                rest &= rest - 1;
            }
        }
        out
    }
}

fn set_bit(bits: &mut [u64], i: u32) -> bool {
    let (w, b) = (i as usize / 64, i % 64);
    let fresh = bits[w] >> b & 1 == 0;
    bits[w] |= 1 << b;
    fresh
}

/// `<h, g>`, extending the closure of `h` by right multiplication.
fn join(ix: &Indexed, h: &Sub, g: u32) -> Sub {
    let mut gens = h.gens.clone();
    gens.push(g);
    let mut bits = h.bits.clone();
    let mut queue: VecDeque<u32> = h.members().into();
    let mut order = h.order;
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = ix.mul(x, s);
            if set_bit(&mut bits, y) {
                order += 1;
                queue.push_back(y);
            }
        }
    }
    Sub { bits, gens, order }
}

fn trivial(ix: &Indexed) -> Sub {
    let mut bits = vec![0u64; ix.words()];
    set_bit(&mut bits, ix.identity);
    Sub {
        bits,
        gens: Vec::new(),
        order: 1,
    }
}

fn check_order(group: &PermGroup) -> Result<()> {
    if group.order() > MAX_SUBGROUP_SEARCH_ORDER {
        return Err(Error::BoundExceeded {
            what: "group order for subgroup enumeration",
            limit: MAX_SUBGROUP_SEARCH_ORDER as u128,
            got: group.order() as u128,
        });
    }
    Ok(())
}

/// Every subgroup, ordered by order and then by sorted member indices.
fn lattice(ix: &Indexed) -> Vec<Sub> {
    let base = trivial(ix);
    let mut found: HashSet<Vec<u64>> = HashSet::from([base.bits.clone()]);
    let mut subs = vec![base.clone()];
    let mut cyclic_gens = Vec::new();
    for g in 0..ix.len() as u32 {
        let c = join(ix, &base, g);
        if found.insert(c.bits.clone()) {
            cyclic_gens.push(g);
            subs.push(c);
        }
    }
    let mut queue: VecDeque<usize> = (0..subs.len()).collect();
    while let Some(i) = queue.pop_front() {
        let h = subs[i].clone();
        for &g in &cyclic_gens {
            if h.contains(g) {
                continue;
            }
            let j = join(ix, &h, g);
            if found.insert(j.bits.clone()) {
                queue.push_back(subs.len());
                subs.push(j);
            }
        }
    }
    let mut keyed: Vec<(usize, Vec<u32>, Sub)> = subs.into_iter().map(|s| (s.order, s.members(), s)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, s)| s).collect()
}

fn to_group(ix: &Indexed, sub: &Sub) -> PermGroup {
    let e = ix.group.elements();
    let gens = sub.gens.iter().map(|&g| e[g as usize].clone()).collect();
    let elements = sub.members().into_iter().map(|i| e[i as usize].clone()).collect();
    PermGroup::from_sorted_parts(ix.group.degree(), gens, elements)
}

/// All subgroups of `group`, ordered by order and then by element list.
///
/// Seeds with every cyclic subgroup and joins cyclic subgroups onto known
/// subgroups until no new subgroup appears.
pub fn all_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    check_order(group)?;
    let ix = Indexed::new(group);
    Ok(lattice(&ix).iter().map(|s| to_group(&ix, s)).collect())
}

/// One subgroup per conjugacy class under `group`, each the first of its
/// class in the order of [`all_subgroups`].
pub fn enumerate_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    check_order(group)?;
    let ix = Indexed::new(group);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut reps = Vec::new();
    for sub in lattice(&ix) {
        if seen.contains(&sub.bits) {
            continue;
        }
        let members = sub.members();
        for s in 0..ix.len() as u32 {
            let mut bits = vec![0u64; ix.words()];
            for &m in &members {
                set_bit(&mut bits, ix.conj(s, m));
            }
            seen.insert(bits);
        }
        reps.push(to_group(&ix, &sub));
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(g: &PermGroup) -> (usize, usize) {
        (all_subgroups(g).unwrap().len(), enumerate_subgroups(g).unwrap().len())
    }

    #[test]
    fn known_lattices() {
        assert_eq!(counts(&PermGroup::symmetric(3).unwrap()), (6, 4));
        assert_eq!(counts(&PermGroup::trivial(3)), (1, 1));
        assert_eq!(counts(&PermGroup::dihedral(4).unwrap()), (10, 8));
        assert_eq!(counts(&PermGroup::symmetric(4).unwrap()), (30, 11));
        assert_eq!(counts(&PermGroup::alternating(4).unwrap()), (10, 5));
        assert_eq!(counts(&PermGroup::cyclic(6).unwrap()), (4, 4));
    }

    #[test]
    fn symmetric_five() {
        assert_eq!(counts(&PermGroup::symmetric(5).unwrap()), (156, 19));
    }

    #[test]
    fn subgroups_are_groups_and_obey_lagrange() {
        let g = PermGroup::dihedral(6).unwrap();
        let subs = all_subgroups(&g).unwrap();
        for h in &subs {
            assert_eq!(g.order() % h.order(), 0);
            assert!(h.is_subgroup_of(&g));
            assert_eq!(PermGroup::close(g.degree(), h.generators().to_vec()).unwrap(), *h);
        }
        // no pairwise join escapes the set
        for a in &subs {
            for b in &subs {
                let gens = a.generators().iter().chain(b.generators()).cloned().collect();
                let j = PermGroup::close(g.degree(), gens).unwrap();
                assert!(subs.contains(&j));
            }
        }
    }

    #[test]
    fn representatives_cover_every_class() {
        let g = PermGroup::symmetric(4).unwrap();
        let reps = enumerate_subgroups(&g).unwrap();
        for h in all_subgroups(&g).unwrap() {
            let hits = reps
                .iter()
                .filter(|r| g.elements().iter().any(|s| r.conjugate(s) == h))
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn large_groups_use_hash_lookup() {
        let g = PermGroup::wreath_product(&PermGroup::symmetric(3).unwrap(), &PermGroup::symmetric(2).unwrap())
            .unwrap();
        assert!(g.order() <= TABLE_LIMIT);
        let ix = Indexed::new(&g);
        let hashed = Indexed { table: None, ..Indexed::new(&g) };
        for a in (0..g.order() as u32).step_by(7) {
            for b in (0..g.order() as u32).step_by(5) {
                assert_eq!(ix.mul(a, b), hashed.mul(a, b));
            }
        }
        assert!(enumerate_subgroups(&PermGroup::symmetric(8).unwrap()).unwrap_err().is_bound());
    }
}
