//! Symmetric-group combinatorics: partitions, 2-cores, block
//! classification of the symmetric group, Murnaghan-Nakayama character
//! values, and the explicit involution/class data for triangular n.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::permgroup::{GroupData, Permutation};
use std::collections::HashMap;

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The staircase [m, m-1, ..., 1]; empty for m = 0.
    pub fn staircase(m: u32) -> Partition {
        Partition { parts: (1..=m).rev().collect() }
    }

    /// Hook length of cell (i, j), 0-based.
    pub fn hook_length(&self, i: usize, j: usize) -> u32 {
        let arm = self.parts[i] - 1 - j as u32;
        let leg = self.parts.iter().skip(i + 1).filter(|&&p| p as usize > j).count() as u32;
        arm + leg + 1
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> u128 {
        let mut prod = 1u128;
        for i in 0..self.parts.len() {
            for j in 0..self.parts[i] as usize {
                prod *= self.hook_length(i, j) as u128;
            }
        }
        prod
    }

    /// Character degree by the hook length formula.
    pub fn dimension(&self) -> u128 {
        let n = self.n() as u128;
        let mut fact = 1u128;
        for i in 1..=n {
            fact *= i;
        }
        fact / self.hook_product()
    }
}

/// Removes one rim hook of size 2 if any is removable; `pick` selects among
/// the removable positions (canonical order = always 0).
fn strip_domino(parts: &[u32], pick: impl Fn(usize) -> usize) -> Option<Vec<u32>> {
    let k = parts.len();
    let mut options: Vec<Vec<u32>> = Vec::new();
    for i in 0..k {
        // horizontal: two cells at the end of row i
        let below = if i + 1 < k { parts[i + 1] } else { 0 };
        if parts[i] >= 2 && parts[i] - 2 >= below {
            let mut next = parts.to_vec();
            next[i] -= 2;
            options.push(next);
        }
        // vertical: one cell from each of two equal adjacent rows
        if i + 1 < k && parts[i] == parts[i + 1] {
            let below2 = if i + 2 < k { parts[i + 2] } else { 0 };
            if parts[i + 1] > below2 {
                let mut next = parts.to_vec();
                next[i] -= 1;
                next[i + 1] -= 1;
                options.push(next);
            }
        }
    }
    if options.is_empty() {
        return None;
    }
    let choice = pick(options.len()) % options.len();
    Some(options[choice].clone())
}

/// The 2-core: strip rim 2-hooks until none remains. The result is a
/// staircase (or empty) and does not depend on the stripping order.
pub fn two_core(p: &Partition) -> Partition {
    two_core_with_order(p, |_| 0)
}

/// 2-core with an explicit choice function over removable dominoes (used to
/// verify stripping-order independence).
pub fn two_core_with_order(p: &Partition, pick: impl Fn(usize) -> usize) -> Partition {
    let mut parts = p.parts.clone();
    loop {
        parts.retain(|&x| x > 0);
        match strip_domino(&parts, &pick) {
            Some(next) => parts = next,
            None => break,
        }
    }
    Partition::new(parts)
}

/// The 2-blocks of the symmetric group on n letters: one per staircase core
/// [m, ..., 1] with n - m(m+1)/2 even; defect zero exactly when the core
/// exhausts n.
pub fn blocks_of_sn(n: u32) -> Vec<(Partition, bool)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut m = 0u32;
    loop {
        let s = m * (m + 1) / 2;
        if s > n {
            break;
        }
        if (n - s) % 2 == 0 {
            out.push((Partition::staircase(m), s == n));
        }
        m += 1;
    }
    out
}

/// A cycle type of the symmetric group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    pub parts: Partition,
}

impl CycleType {
    pub fn new(parts: Partition) -> CycleType {
        CycleType { parts }
    }

    /// |C(g)| = prod i^{m_i} m_i! over the part multiplicities.
    pub fn centralizer_order(&self) -> u128 {
        let mut mult: HashMap<u32, u32> = HashMap::new();
        for &p in self.parts.parts() {
            *mult.entry(p).or_insert(0) += 1;
        }
        let mut z = 1u128;
        for (&i, &m) in &mult {
            for _ in 0..m {
                z = z.checked_mul(i as u128).expect("centralizer order overflow");
            }
            for f in 1..=m as u128 {
                z = z.checked_mul(f).expect("centralizer order overflow");
            }
        }
        z
    }

    /// Cycle type of a permutation, fixed points included.
    pub fn of_permutation(p: &Permutation) -> CycleType {
        let n = p.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start as u16;
            while !seen[x as usize] {
                seen[x as usize] = true;
                x = p.apply(x);
                len += 1;
            }
            parts.push(len);
        }
        CycleType { parts: Partition::new(parts) }
    }
}

/// Murnaghan-Nakayama character value chi_shape(cycle type): recursive rim
/// hook expansion with sign (-1)^(leg length), the largest cycle consumed
/// first, memoized on (shape, remaining type).
pub fn mn_character(shape: &Partition, cycle_type: &CycleType) -> i64 {
    assert_eq!(shape.n(), cycle_type.parts.n(), "size mismatch");
    let mut cycles = cycle_type.parts.parts().to_vec();
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    let mut memo = HashMap::new();
    mn_rec(shape.parts().to_vec(), &cycles, 0, &mut memo)
}

type MnMemo = HashMap<(Vec<u32>, usize), i64>;

fn mn_rec(shape: Vec<u32>, cycles: &[u32], consumed: usize, memo: &mut MnMemo) -> i64 {
    if shape.is_empty() {
        return 1;
    }
    let key = (shape.clone(), consumed);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = cycles[consumed];
    // beta numbers: distinct shifted parts
    let k = shape.len();
    let betas: Vec<u32> = (0..k).map(|i| shape[i] + (k - 1 - i) as u32).collect();
    let mut total = 0i64;
    for j in 0..k {
        if betas[j] < r {
            continue;
        }
        let target = betas[j] - r;
        if betas.contains(&target) {
            continue;
        }
        // leg length = strictly intermediate beta values
        let leg = betas.iter().filter(|&&b| b > target && b < betas[j]).count();
        let sign = if leg % 2 == 0 { 1 } else { -1 };
        let mut new_betas = betas.clone();
        new_betas[j] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let new_shape: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (k - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_rec(new_shape, cycles, consumed + 1, memo);
    }
    memo.insert(key, total);
    total
}

/// Diagonal hook lengths of the staircase [m, ..., 1] as a cycle type:
/// parts 2m-1, 2m-5, 2m-9, ... while positive.
pub fn diagonal_hooks(m: u32) -> CycleType {
    assert!(m >= 1);
    let mut parts = Vec::new();
    let mut p = 2 * m as i64 - 1;
    while p > 0 {
        parts.push(p as u32);
        p -= 4;
    }
    CycleType::new(Partition::new(parts))
}

/// The distinguished involution for triangular n = m(m+1)/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSpec {
    /// floor((m^2+1)/4) commuting transpositions.
    pub transpositions: u32,
    pub fixed_points: u32,
    /// Number of parts of the diagonal-hook cycle type (the derived count).
    pub diagonal_part_count: u32,
    /// The alternative floor((m-1)/2) reading; kept for the report because
    /// it disagrees with the derived count.
    pub floor_formula_part_count: u32,
    pub formulas_agree: bool,
}

pub fn involution_spec(m: u32) -> Result<InvolutionSpec> {
    assert!(m >= 1);
    let n = m * (m + 1) / 2;
    let transpositions = (m * m + 1) / 4;
    let p = diagonal_hooks(m).parts.parts().len() as u32;
    // cross-check: an involution inverting the diagonal-hook class moves
    // exactly n - p points
    if (n - p) % 2 != 0 || (n - p) / 2 != transpositions {
        return Err(Error::InconsistentCombinatorics(format!(
            "m={m}: floor((m^2+1)/4)={transpositions} but (n-parts)/2={}",
            (n - p) / 2
        )));
    }
    let floor_formula = (m - 1) / 2;
    Ok(InvolutionSpec {
        transpositions,
        fixed_points: n - 2 * transpositions,
        diagonal_part_count: p,
        floor_formula_part_count: floor_formula,
        formulas_agree: floor_formula == p,
    })
}

/// <chi restricted to C(t), 1> as exact integers: the centralizer of the
/// distinguished involution is enumerated as a permutation group, its
/// elements grouped by cycle type, and the division checked exact.
#[derive(Debug, Clone)]
pub struct InnerProduct {
    pub sum: i64,
    pub centralizer_order: i64,
    pub value: i64,
}

pub fn inner_product_with_trivial(m: u32, cfg: &Config) -> Result<InnerProduct> {
    let n = m * (m + 1) / 2;
    if n > 12 {
        return Err(Error::CapExceeded(12));
    }
    let spec = involution_spec(m)?;
    let c = spec.transpositions as usize;
    let degree = n as usize;
    // centralizer of (0 1)(2 3)...: swaps inside pairs, adjacent pair swaps,
    // and the symmetric group on the fixed points
    let mut gens: Vec<Permutation> = Vec::new();
    if c > 0 {
        gens.push(Permutation::parse_cycles("(0 1)", degree)?);
    }
    for i in 0..c.saturating_sub(1) {
        let a = 2 * i;
        let s = format!("({} {})({} {})", a, a + 2, a + 1, a + 3);
        gens.push(Permutation::parse_cycles(&s, degree)?);
    }
    for j in 2 * c..degree.saturating_sub(1) {
        gens.push(Permutation::parse_cycles(&format!("({} {})", j, j + 1), degree)?);
    }
    let cent = GroupData::enumerate(degree, gens, cfg.group_cap)?;
    let shape = Partition::staircase(m);
    // group by cycle type so MN runs once per type
    let mut by_type: HashMap<Vec<u32>, i64> = HashMap::new();
    for e in &cent.elements {
        let ct = CycleType::of_permutation(e);
        *by_type.entry(ct.parts.parts().to_vec()).or_insert(0) += 1;
    }
    let mut sum = 0i64;
    for (parts, count) in by_type {
        let ct = CycleType::new(Partition::new(parts));
        sum += count * mn_character(&shape, &ct);
    }
    let order = cent.order as i64;
    if sum % order != 0 {
        return Err(Error::InconsistentCombinatorics(format!(
            "inner product {sum}/{order} is not an integer"
        )));
    }
    Ok(InnerProduct { sum, centralizer_order: order, value: sum / order })
}

/// |C(g)| for g of diagonal-hook cycle type is odd.
pub fn odd_centralizer_check(m: u32) -> bool {
    diagonal_hooks(m).centralizer_order() % 2 == 1
}

/// All partitions of n, lexicographically from [n] down to [1^n].
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(cur.clone()));
            return;
        }
        let top = max.min(n);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_core_examples() {
        assert_eq!(two_core(&Partition::new(vec![3, 2, 1])), Partition::new(vec![3, 2, 1]));
        assert_eq!(two_core(&Partition::new(vec![2, 2])), Partition::new(vec![]));
        assert_eq!(two_core(&Partition::new(vec![4])), Partition::new(vec![]));
        assert_eq!(two_core(&Partition::new(vec![3])), Partition::new(vec![1]));
        assert_eq!(two_core(&Partition::new(vec![3, 1])), Partition::new(vec![]));
        assert_eq!(two_core(&Partition::new(vec![4, 1])), Partition::new(vec![2, 1]));
    }

    #[test]
    fn two_core_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=12u32 {
            for p in partitions_of(n) {
                let canonical = two_core(&p);
                // result is a staircase
                let k = canonical.parts().len() as u32;
                assert_eq!(canonical, Partition::staircase(k));
                for _ in 0..5 {
                    let mut draws = [0u8; 32];
                    rng.fill(&mut draws);
                    let step = std::cell::Cell::new(0usize);
                    let random = two_core_with_order(&p, |k| {
                        let i = step.get();
                        step.set(i + 1);
                        draws[i % draws.len()] as usize % k
                    });
                    assert_eq!(random, canonical, "order-dependent 2-core for {p:?}");
                }
            }
        }
    }

    #[test]
    fn blocks_of_sn_examples() {
        // n=3: cores [2,1] (defect zero) and [1]
        let b3 = blocks_of_sn(3);
        assert_eq!(b3.len(), 2);
        assert!(b3.iter().any(|(p, dz)| *dz && p == &Partition::staircase(2)));
        assert!(b3.iter().any(|(p, dz)| !*dz && p == &Partition::staircase(1)));
        // n=4: only the empty core
        let b4 = blocks_of_sn(4);
        assert_eq!(b4.len(), 1);
        assert!(!b4[0].1);
        // n=6: staircase [3,2,1] defect zero plus the principal block
        let b6 = blocks_of_sn(6);
        assert_eq!(b6.len(), 2);
        assert!(b6.iter().any(|(p, dz)| *dz && p == &Partition::staircase(3)));
        // defect-zero entry iff n triangular
        for n in 1..=20u32 {
            let triangular = (1..=n).any(|m| m * (m + 1) / 2 == n);
            assert_eq!(blocks_of_sn(n).iter().any(|(_, dz)| *dz), triangular);
        }
    }

    #[test]
    fn mn_character_values() {
        // trivial character: chi_[n] = 1 everywhere
        for n in 1..=6u32 {
            for p in partitions_of(n) {
                assert_eq!(mn_character(&Partition::new(vec![n]), &CycleType::new(p)), 1);
            }
        }
        // chi_[3,2,1] on [5,1] = 1
        assert_eq!(
            mn_character(&Partition::staircase(3), &CycleType::new(Partition::new(vec![5, 1]))),
            1
        );
        // chi_[3,2,1] on 1^6 = 16 (hook length formula: 6!/45)
        assert_eq!(
            mn_character(&Partition::staircase(3), &CycleType::new(Partition::new(vec![1; 6]))),
            16
        );
        assert_eq!(Partition::staircase(3).dimension(), 16);
    }

    #[test]
    fn mn_matches_hook_length_dimensions() {
        for n in 1..=8u32 {
            let id = CycleType::new(Partition::new(vec![1; n as usize]));
            for p in partitions_of(n) {
                assert_eq!(mn_character(&p, &id) as u128, p.dimension(), "dim of {p:?}");
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        // sum over shapes of chi(sigma)^2 = |C(sigma)| for all types, n <= 7
        for n in 1..=7u32 {
            let shapes = partitions_of(n);
            for sigma in partitions_of(n) {
                let ct = CycleType::new(sigma);
                let z = ct.centralizer_order() as i64;
                let mut acc = 0i64;
                for shape in &shapes {
                    let chi = mn_character(shape, &ct);
                    acc += chi * chi;
                }
                assert_eq!(acc, z, "column orthogonality at {:?}", ct.parts);
            }
        }
    }

    #[test]
    fn diagonal_hooks_examples() {
        assert_eq!(diagonal_hooks(2).parts, Partition::new(vec![3]));
        assert_eq!(diagonal_hooks(3).parts, Partition::new(vec![5, 1]));
        assert_eq!(diagonal_hooks(4).parts, Partition::new(vec![7, 3]));
        assert_eq!(diagonal_hooks(4).parts.n(), 10);
        // parts are exactly the main-diagonal hook lengths of the staircase
        for m in 1..=8u32 {
            let stair = Partition::staircase(m);
            let mut diag: Vec<u32> = (0..)
                .take_while(|&i| i < stair.parts().len() && stair.parts()[i] as usize > i)
                .map(|i| stair.hook_length(i, i))
                .collect();
            diag.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(diag, diagonal_hooks(m).parts.parts());
        }
    }

    #[test]
    fn involution_spec_counts() {
        assert_eq!(involution_spec(2).unwrap().transpositions, 1);
        assert_eq!(involution_spec(3).unwrap().transpositions, 2);
        assert_eq!(involution_spec(4).unwrap().transpositions, 4);
        assert_eq!(involution_spec(5).unwrap().transpositions, 6);
        for m in 1..=8u32 {
            let spec = involution_spec(m).unwrap();
            let n = m * (m + 1) / 2;
            assert_eq!(spec.fixed_points + 2 * spec.transpositions, n);
            // the floor((m-1)/2) reading disagrees with the derived count
            assert_eq!(spec.diagonal_part_count, m.div_ceil(2));
            if m >= 2 {
                assert!(!spec.formulas_agree);
            }
        }
    }

    #[test]
    fn inner_products_small() {
        let cfg = Config::default();
        assert_eq!(inner_product_with_trivial(2, &cfg).unwrap().value, 1);
        assert_eq!(inner_product_with_trivial(3, &cfg).unwrap().value, 1);
        assert!(matches!(
            inner_product_with_trivial(5, &cfg),
            Err(Error::CapExceeded(12))
        ));
    }

    #[test]
    fn odd_centralizers() {
        for m in 1..=8u32 {
            assert!(odd_centralizer_check(m), "centralizer even at m={m}");
        }
        // the actual orders: 3, 5, 21 for m = 2, 3, 4
        assert_eq!(diagonal_hooks(2).centralizer_order(), 3);
        assert_eq!(diagonal_hooks(3).centralizer_order(), 5);
        assert_eq!(diagonal_hooks(4).centralizer_order(), 21);
    }
}
