//! Finite permutation-group engine: breadth-first enumeration, conjugacy
//! classes with inversion pairing, centralizers, involutions, Sylow
//! 2-subgroups and coset actions.
//!
//! Groups are handled by full enumeration under a configurable cap; every
//! downstream computation (class sums, centralizers, the involution set)
//! walks the element list directly. Element order is identity first, then
//! breadth-first order from the generators, so all indices are reproducible.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// A permutation of {0..degree-1} stored by its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection on 0..{n}"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    /// self followed by other: (self * other)(x) = other(self(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    pub fn order(&self) -> u64 {
        let mut ord = 1u64;
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start as u16;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = self.apply(p);
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Parses disjoint-cycle notation like "(0 1)(2 3)"; "()" is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty generator line".into()));
        }
        let mut chars = s.chars().peekable();
        let mut touched = vec![false; degree];
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::Parse(format!("expected '(' in cycle notation: {s}")));
            }
            chars.next();
            let mut body = String::new();
            let mut closed = false;
            for c in chars.by_ref() {
                if c == ')' {
                    closed = true;
                    break;
                }
                body.push(c);
            }
            if !closed {
                return Err(Error::Parse(format!("unclosed cycle in: {s}")));
            }
            let pts: Vec<u16> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u16>()
                        .map_err(|_| Error::Parse(format!("bad point '{t}' in: {s}")))
                })
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if touched[p as usize] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} repeated in cycles: {s}"
                    )));
                }
                touched[p as usize] = true;
            }
            for i in 0..pts.len() {
                images[pts[i] as usize] = pts[(i + 1) % pts.len()];
            }
        }
        Permutation::from_images(images)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// One conjugacy class: members sorted by element index, with the index of
/// the class of inverses.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: u32,
    pub members: Vec<u32>,
    pub centralizer_order: u64,
    pub inverse_class: usize,
    pub is_real: bool,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A fully enumerated finite permutation group.
#[derive(Debug)]
pub struct GroupData {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
    pub order: usize,
    pub exponent: u64,
    pub classes: Vec<ConjugacyClass>,
    /// class_of[i] = index of the class containing element i
    pub class_of: Vec<u32>,
    pub inverse_of: Vec<u32>,
    /// bfs_word[i] = (parent index, generator index) with elem_i = parent * gen;
    /// the identity has no entry.
    pub bfs_word: Vec<Option<(u32, u32)>>,
    index: HashMap<Permutation, u32>,
}

/// Enumerates the closure of the generators; identity gets index 0.
pub fn enumerate_group(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<GroupData> {
    GroupData::enumerate(degree, generators, cap)
}

impl GroupData {
    pub fn enumerate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<GroupData> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator degree {} does not match {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut bfs_word: Vec<Option<(u32, u32)>> = vec![None];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0usize;
        while head < elements.len() {
            let cur = elements[head].clone();
            for (gi, g) in generators.iter().enumerate() {
                let next = cur.compose(g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    index.insert(next.clone(), elements.len() as u32);
                    elements.push(next);
                    bfs_word.push(Some((head as u32, gi as u32)));
                }
            }
            head += 1;
        }
        let order = elements.len();
        let inverse_of: Vec<u32> = elements.iter().map(|e| index[&e.inverse()]).collect();
        let mut exponent = 1u64;
        for e in &elements {
            exponent = lcm(exponent, e.order());
        }
        let mut g = GroupData {
            degree,
            generators,
            elements,
            order,
            exponent,
            classes: Vec::new(),
            class_of: Vec::new(),
            inverse_of,
            bfs_word,
            index,
        };
        g.compute_classes();
        Ok(g)
    }

    #[inline]
    pub fn id_index(&self) -> u32 {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Product of elements by index.
    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let p = self.elements[a as usize].compose(&self.elements[b as usize]);
        self.index[&p]
    }

    #[inline]
    pub fn inv_idx(&self, a: u32) -> u32 {
        self.inverse_of[a as usize]
    }

    /// g^-1 * x * g by index.
    #[inline]
    pub fn conj_idx(&self, x: u32, g: u32) -> u32 {
        let gi = &self.elements[self.inverse_of[g as usize] as usize];
        let p = gi.compose(&self.elements[x as usize]).compose(&self.elements[g as usize]);
        self.index[&p]
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<ConjugacyClass> = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let ci = classes.len() as u32;
            let mut members = vec![start];
            class_of[start as usize] = ci;
            let mut head = 0usize;
            while head < members.len() {
                let x = members[head];
                for gi in 0..self.generators.len() {
                    // conjugation by the generator, via element indices
                    let g = self
                        .index_of(&self.generators[gi])
                        .expect("generator enumerated");
                    let y = self.conj_idx(x, g);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = ci;
                        members.push(y);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            let size = members.len() as u64;
            debug_assert_eq!(self.order as u64 % size, 0);
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
                centralizer_order: self.order as u64 / size,
                inverse_class: usize::MAX,
                is_real: false,
            });
        }
        for ci in 0..classes.len() {
            let rep = classes[ci].representative;
            let inv_class = class_of[self.inverse_of[rep as usize] as usize] as usize;
            classes[ci].inverse_class = inv_class;
            classes[ci].is_real = inv_class == ci;
        }
        self.classes = classes;
        self.class_of = class_of;
    }
}

/// The conjugacy classes (computed at enumeration time).
pub fn conjugacy_classes(group: &GroupData) -> &[ConjugacyClass] {
    &group.classes
}

/// All t with t^2 = e, the identity included, as sorted element indices.
pub fn involutions(group: &GroupData) -> Vec<u32> {
    (0..group.order as u32)
        .filter(|&i| {
            let e = &group.elements[i as usize];
            e.compose(e).is_identity()
        })
        .collect()
}

/// A subgroup given by its member indices in the parent group.
#[derive(Debug, Clone)]
pub struct SubgroupData {
    /// Sorted element indices.
    pub members: Vec<u32>,
    pub order: usize,
    /// One representative per right coset Hx, in parent element order.
    pub coset_reps: Vec<u32>,
}

impl SubgroupData {
    /// Builds subgroup data from a set of member indices (must be closed).
    pub fn from_members(group: &GroupData, mut members: Vec<u32>) -> SubgroupData {
        members.sort_unstable();
        members.dedup();
        let order = members.len();
        debug_assert_eq!(group.order % order, 0);
        let inside: std::collections::HashSet<u32> = members.iter().copied().collect();
        debug_assert!(members
            .iter()
            .all(|&a| members.iter().all(|&b| inside.contains(&group.mul_idx(a, b)))));
        let mut seen = vec![false; group.order];
        let mut coset_reps = Vec::with_capacity(group.order / order);
        for x in 0..group.order as u32 {
            if seen[x as usize] {
                continue;
            }
            coset_reps.push(x);
            for &h in &members {
                seen[group.mul_idx(h, x) as usize] = true;
            }
        }
        SubgroupData { members, order, coset_reps }
    }

    /// Closure of a list of element indices inside the parent group.
    pub fn generated_by(group: &GroupData, gens: &[u32]) -> SubgroupData {
        let mut members = vec![0u32];
        let mut inside = vec![false; group.order];
        inside[0] = true;
        let mut head = 0usize;
        while head < members.len() {
            let x = members[head];
            for &g in gens {
                let y = group.mul_idx(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        SubgroupData::from_members(group, members)
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.members.binary_search(&idx).is_ok()
    }
}

/// All x with xg = gx.
pub fn centralizer(group: &GroupData, elem: u32) -> SubgroupData {
    let members: Vec<u32> = (0..group.order as u32)
        .filter(|&x| group.mul_idx(x, elem) == group.mul_idx(elem, x))
        .collect();
    SubgroupData::from_members(group, members)
}

/// A Sylow 2-subgroup, built by greedy closure over 2-elements normalizing
/// the current 2-subgroup. Seeded-random candidate order with a
/// deterministic exhaustive sweep as fallback; the output order is the
/// 2-part of |G| regardless of seed.
pub fn sylow2(group: &GroupData, seed: u64) -> SubgroupData {
    let mut target = 1usize;
    let mut n = group.order;
    while n % 2 == 0 {
        target *= 2;
        n /= 2;
    }
    let two_elements: Vec<u32> = (0..group.order as u32)
        .filter(|&i| group.elements[i as usize].order().is_power_of_two())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = SubgroupData::from_members(group, vec![0]);
    while current.order < target {
        let mut candidates = two_elements.clone();
        candidates.shuffle(&mut rng);
        let mut grown = false;
        // randomized pass, then the deterministic sweep in element order
        for pass in 0..2 {
            let iter: Box<dyn Iterator<Item = &u32>> = if pass == 0 {
                Box::new(candidates.iter())
            } else {
                Box::new(two_elements.iter())
            };
            for &t in iter {
                if current.contains(t) {
                    continue;
                }
                let normalizes = current
                    .members
                    .iter()
                    .all(|&h| current.contains(group.conj_idx(h, t)));
                if normalizes {
                    let mut gens: Vec<u32> = current.members.clone();
                    gens.push(t);
                    let bigger = SubgroupData::generated_by(group, &gens);
                    if bigger.order > current.order && bigger.order <= target {
                        current = bigger;
                        grown = true;
                        break;
                    }
                }
            }
            if grown {
                break;
            }
        }
        assert!(grown, "sylow2 growth stalled below the 2-part");
    }
    current
}

/// The right-coset action of the group on H\G: one image row per generator.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub points: usize,
    pub coset_reps: Vec<u32>,
    /// coset_of[i] = point index of the coset containing element i
    pub coset_of: Vec<u32>,
    /// tables[g][p] = image of point p under generator g
    pub tables: Vec<Vec<u32>>,
}

pub fn coset_action(group: &GroupData, sub: &SubgroupData) -> CosetAction {
    let points = group.order / sub.order;
    let mut coset_of = vec![u32::MAX; group.order];
    for (pi, &rep) in sub.coset_reps.iter().enumerate() {
        for &h in &sub.members {
            coset_of[group.mul_idx(h, rep) as usize] = pi as u32;
        }
    }
    debug_assert!(coset_of.iter().all(|&c| c != u32::MAX));
    let mut tables = Vec::with_capacity(group.generators.len());
    for g in &group.generators {
        let gi = group.index_of(g).expect("generator enumerated");
        let row: Vec<u32> = sub
            .coset_reps
            .iter()
            .map(|&rep| coset_of[group.mul_idx(rep, gi) as usize])
            .collect();
        tables.push(row);
    }
    CosetAction { points, coset_reps: sub.coset_reps.clone(), coset_of, tables }
}

/// |H| even and |H n H^g| odd for every g outside H, checked over coset
/// representatives. H = G returns false: the defining condition quantifies
/// over G \ H and must not hold vacuously.
pub fn is_strongly_embedded(group: &GroupData, sub: &SubgroupData) -> bool {
    if sub.order == group.order {
        return false;
    }
    if sub.order % 2 != 0 {
        return false;
    }
    for &rep in &sub.coset_reps {
        if sub.contains(rep) {
            continue;
        }
        let conj: Vec<u32> = sub.members.iter().map(|&h| group.conj_idx(h, rep)).collect();
        let common = conj.iter().filter(|&&x| sub.contains(x)).count();
        if common % 2 == 0 {
            return false;
        }
    }
    true
}

/// Parses the group input format: first line `degree n`, then one generator
/// per line in disjoint-cycle notation.
pub fn parse_group_text(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected 'degree n', got '{header}'")))?;
    let gens: Vec<Permutation> = lines
        .map(|l| Permutation::parse_cycles(l, degree))
        .collect::<Result<_>>()?;
    Ok((degree, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupData {
        let g1 = Permutation::parse_cycles("(0 1)", 3).unwrap();
        let g2 = Permutation::parse_cycles("(0 1 2)", 3).unwrap();
        GroupData::enumerate(3, vec![g1, g2], 200_000).unwrap()
    }

    fn s4() -> GroupData {
        let g1 = Permutation::parse_cycles("(0 1)", 4).unwrap();
        let g2 = Permutation::parse_cycles("(0 1 2 3)", 4).unwrap();
        GroupData::enumerate(4, vec![g1, g2], 200_000).unwrap()
    }

    fn a5() -> GroupData {
        let g1 = Permutation::parse_cycles("(0 1 2 3 4)", 5).unwrap();
        let g2 = Permutation::parse_cycles("(0 1 2)", 5).unwrap();
        GroupData::enumerate(5, vec![g1, g2], 200_000).unwrap()
    }

    fn c3() -> GroupData {
        let g = Permutation::parse_cycles("(0 1 2)", 3).unwrap();
        GroupData::enumerate(3, vec![g], 200_000).unwrap()
    }

    #[test]
    fn enumerate_orders() {
        assert_eq!(s3().order, 6);
        assert_eq!(GroupData::enumerate(1, vec![], 10).unwrap().order, 1);
        assert_eq!(a5().order, 60); // brute-force closure
    }

    #[test]
    fn cap_exceeded() {
        let g1 = Permutation::parse_cycles("(0 1 2 3 4)", 5).unwrap();
        let g2 = Permutation::parse_cycles("(0 1 2)", 5).unwrap();
        assert!(matches!(
            GroupData::enumerate(5, vec![g1, g2], 10),
            Err(Error::CapExceeded(10))
        ));
    }

    #[test]
    fn invalid_permutation() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse_cycles("(0 5)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1", 3).is_err());
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        let mut sizes: Vec<usize> = g.classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(g.classes.iter().all(|c| c.is_real));
        for c in &g.classes {
            assert_eq!(c.size() as u64 * c.centralizer_order, g.order as u64);
        }
    }

    #[test]
    fn c3_nonreal_pair() {
        let g = c3();
        assert_eq!(g.classes.len(), 3);
        let nonreal: Vec<_> = g.classes.iter().filter(|c| !c.is_real).collect();
        assert_eq!(nonreal.len(), 2);
        assert_eq!(g.classes[nonreal[0].inverse_class].inverse_class,
                   g.class_of[nonreal[0].representative as usize] as usize);
    }

    #[test]
    fn a5_all_classes_real() {
        let g = a5();
        assert_eq!(g.classes.len(), 5);
        assert!(g.classes.iter().all(|c| c.is_real));
    }

    #[test]
    fn involution_counts() {
        assert_eq!(involutions(&s3()).len(), 4); // e + 3 transpositions
        assert_eq!(involutions(&c3()).len(), 1);
        assert_eq!(involutions(&s4()).len(), 10); // 1 + 6 + 3
        // every member squares to the identity
        let g = s4();
        for i in involutions(&g) {
            let e = &g.elements[i as usize];
            assert!(e.compose(e).is_identity());
        }
    }

    #[test]
    fn centralizer_orders() {
        let g = s3();
        let t = g.index_of(&Permutation::parse_cycles("(0 1)", 3).unwrap()).unwrap();
        assert_eq!(centralizer(&g, t).order, 2);
        assert_eq!(centralizer(&g, 0).order, 6); // identity is central
        let g4 = s4();
        let tt = g4
            .index_of(&Permutation::parse_cycles("(0 1)(2 3)", 4).unwrap())
            .unwrap();
        assert_eq!(centralizer(&g4, tt).order, 8);
    }

    #[test]
    fn sylow2_orders_seed_independent() {
        for seed in [0u64, 1, 42] {
            assert_eq!(sylow2(&s3(), seed).order, 2);
            assert_eq!(sylow2(&c3(), seed).order, 1);
            let p = sylow2(&a5(), seed);
            assert_eq!(p.order, 4);
            // elementary abelian: all non-identity elements are involutions
            let g = a5();
            assert!(p.members.iter().all(|&i| {
                let e = &g.elements[i as usize];
                e.compose(e).is_identity()
            }));
        }
    }

    #[test]
    fn coset_action_properties() {
        let g = s3();
        let t = g.index_of(&Permutation::parse_cycles("(0 1)", 3).unwrap()).unwrap();
        let h = SubgroupData::generated_by(&g, &[t]);
        let act = coset_action(&g, &h);
        assert_eq!(act.points, 3);
        // point stabilizer of coset H is H: coset 0 fixed exactly by H's images
        let whole = SubgroupData::from_members(&g, (0..6).collect());
        assert_eq!(coset_action(&g, &whole).points, 1);
        // A5 / A4 -> 5 points
        let ga = a5();
        let a4gens = [
            ga.index_of(&Permutation::parse_cycles("(0 1 2)", 5).unwrap()).unwrap(),
            ga.index_of(&Permutation::parse_cycles("(0 1)(2 3)", 5).unwrap()).unwrap(),
        ];
        let a4 = SubgroupData::generated_by(&ga, &a4gens);
        assert_eq!(a4.order, 12);
        assert_eq!(coset_action(&ga, &a4).points, 5);
    }

    #[test]
    fn strongly_embedded_cases() {
        // brute force over 5 cosets: A4 in A5 is strongly embedded
        let ga = a5();
        let a4gens = [
            ga.index_of(&Permutation::parse_cycles("(0 1 2)", 5).unwrap()).unwrap(),
            ga.index_of(&Permutation::parse_cycles("(0 1)(2 3)", 5).unwrap()).unwrap(),
        ];
        let a4 = SubgroupData::generated_by(&ga, &a4gens);
        assert!(is_strongly_embedded(&ga, &a4));
        // S3 with <(0 1)>: conjugates intersect in order 1 (odd), |H| even
        let g = s3();
        let t = g.index_of(&Permutation::parse_cycles("(0 1)", 3).unwrap()).unwrap();
        let h = SubgroupData::generated_by(&g, &[t]);
        assert!(is_strongly_embedded(&g, &h));
        // H = G is rejected by definition
        let whole = SubgroupData::from_members(&g, (0..6).collect());
        assert!(!is_strongly_embedded(&g, &whole));
        // odd-order subgroup is rejected
        let rot = g.index_of(&Permutation::parse_cycles("(0 1 2)", 3).unwrap()).unwrap();
        let c3sub = SubgroupData::generated_by(&g, &[rot]);
        assert!(!is_strongly_embedded(&g, &c3sub));
    }

    #[test]
    fn group_text_roundtrip() {
        let (deg, gens) = parse_group_text("degree 4\n(0 1)\n(0 1 2 3)\n").unwrap();
        assert_eq!(deg, 4);
        assert_eq!(gens.len(), 2);
        let g = GroupData::enumerate(deg, gens, 1000).unwrap();
        assert_eq!(g.order, 24);
    }

    #[test]
    fn exponent_values() {
        assert_eq!(s3().exponent, 6);
        assert_eq!(a5().exponent, 30);
        assert_eq!(s4().exponent, 12);
    }

    #[test]
    fn class_pairing_invariants() {
        for g in [s3(), s4(), a5(), c3()] {
            let total: usize = g.classes.iter().map(ConjugacyClass::size).sum();
            assert_eq!(total, g.order);
            for (ci, c) in g.classes.iter().enumerate() {
                // inverse-class pairing is an involution with equal sizes
                let inv = &g.classes[c.inverse_class];
                assert_eq!(inv.inverse_class, ci);
                assert_eq!(inv.size(), c.size());
                assert_eq!(c.is_real, c.inverse_class == ci);
                // members actually form the conjugation orbit of the rep
                for &x in &c.members {
                    assert_eq!(g.class_of[x as usize] as usize, ci);
                }
            }
        }
        // trivial group: order 1, exactly one class
        let t = GroupData::enumerate(1, vec![], 10).unwrap();
        assert_eq!(t.classes.len(), 1);
    }

    #[test]
    fn coset_action_transitive() {
        let g = s4();
        let t = g.index_of(&Permutation::parse_cycles("(0 1)", 4).unwrap()).unwrap();
        let h = SubgroupData::generated_by(&g, &[t]);
        let act = coset_action(&g, &h);
        assert_eq!(act.points * h.order, g.order);
        // orbit of point 0 under the generator images covers every point
        let mut seen = vec![false; act.points];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for row in &act.tables {
                let q = row[p as usize];
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    stack.push(q);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "coset action not transitive");
        // coset reps lie in pairwise distinct right cosets
        for (i, &a) in h.coset_reps.iter().enumerate() {
            for &b in h.coset_reps.iter().skip(i + 1) {
                // Ha = Hb iff a b^-1 in H
                let ab = g.mul_idx(a, g.inv_idx(b));
                assert!(!h.contains(ab));
            }
        }
    }
}
