//! Arithmetic over GF(2^m): field contexts, bit-packed scalars, dense
//! matrices and polynomials.
//!
//! Scalars are residue polynomials packed into the low `m` bits of a `u64`.
//! Addition is XOR. For m <= 16 multiplication goes through exp/log tables
//! built once per context; larger degrees fall back to shift-and-xor
//! carry-less multiplication. GF(2) (m = 1) runs through the same code path
//! with modulus `x`.

mod matrix;
mod poly;

pub use matrix::DenseMatrix;
pub use poly::{crt_idempotent_polys, Poly};

use crate::error::{Error, Result};
use crate::permgroup::GroupData;
use std::sync::Arc;

/// Bit-packed element of GF(2^m); only the low `m` bits are meaningful.
pub type Scalar = u64;

/// GF(2)[x] arithmetic on bit-packed polynomials (bit i = coefficient of x^i).
mod bitpoly {
    pub fn degree(p: u64) -> i32 {
        63 - p.leading_zeros() as i32
    }

    pub fn mul(a: u64, b: u64) -> u128 {
        let mut acc = 0u128;
        let a = a as u128;
        let mut b = b;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        acc
    }

    pub fn rem(mut a: u128, m: u64) -> u64 {
        let md = degree(m);
        debug_assert!(md >= 0);
        while a >> md != 0 {
            let ad = 127 - a.leading_zeros() as i32;
            if ad < md {
                break;
            }
            a ^= (m as u128) << (ad - md);
        }
        a as u64
    }

    pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        rem(mul(a, b), m)
    }

    pub fn powmod(mut a: u64, mut e: u128, m: u64) -> u64 {
        let mut r = rem(1, m);
        a = rem(a as u128, m);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a, m);
            }
            a = mulmod(a, a, m);
            e >>= 1;
        }
        r
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = if degree(a) >= degree(b) { rem(a as u128, b) } else { a };
            a = b;
            b = r;
        }
        a
    }

    /// Irreducibility of a bit-packed polynomial over GF(2).
    pub fn is_irreducible(p: u64) -> bool {
        let d = degree(p);
        if d <= 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        // x^(2^d) == x mod p, and x^(2^(d/q)) - x coprime to p for primes q | d
        let x = 2u64;
        let mut t = x;
        for _ in 0..d {
            t = mulmod(t, t, p);
        }
        if t != rem(x as u128, p) {
            return false;
        }
        let mut n = d as u64;
        let mut q = 2u64;
        let mut primes = Vec::new();
        while q * q <= n {
            if n % q == 0 {
                primes.push(q);
                while n % q == 0 {
                    n /= q;
                }
            }
            q += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        for q in primes {
            let e = d as u64 / q;
            let mut t = x;
            for _ in 0..e {
                t = mulmod(t, t, p);
            }
            if gcd(t ^ rem(x as u128, p), p) != rem(1, p) && degree(gcd(t ^ x, p)) > 0 {
                return false;
            }
        }
        true
    }
}

#[derive(Debug)]
struct MulTables {
    /// exp[i] = g^i for 0 <= i < 2(q-1); g a fixed primitive element.
    exp: Vec<u64>,
    /// log[a] for a != 0.
    log: Vec<u32>,
}

/// Field context for GF(2^m): the modulus and (for m <= 16) exp/log tables.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    m: u32,
    modulus: u64,
    tables: Option<Arc<MulTables>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

/// Builds GF(2^m) with the lexicographically smallest irreducible modulus
/// of degree m (coefficient tuples compared low-to-high as integers).
pub fn field_ctx(m: u32) -> Result<FieldCtx> {
    FieldCtx::new(m)
}

impl FieldCtx {
    pub fn new(m: u32) -> Result<FieldCtx> {
        if !(1..=32).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let mut modulus = 0u64;
        for low in 0..(1u64 << m) {
            let cand = (1u64 << m) | low;
            if bitpoly::is_irreducible(cand) {
                modulus = cand;
                break;
            }
        }
        debug_assert!(modulus != 0);
        let tables = if m <= 16 { Some(Arc::new(Self::build_tables(m, modulus))) } else { None };
        Ok(FieldCtx { m, modulus, tables })
    }

    fn build_tables(m: u32, modulus: u64) -> MulTables {
        let q = 1u64 << m;
        let order = q - 1;
        // factor q-1, then search for a primitive element
        let mut rest = order;
        let mut primes = Vec::new();
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        let mut gen = 0u64;
        for cand in 2..q.max(3) {
            let c = bitpoly::rem(cand as u128, modulus);
            if c == 0 {
                continue;
            }
            let primitive = primes
                .iter()
                .all(|&pr| bitpoly::powmod(c, (order / pr) as u128, modulus) != 1);
            if primitive {
                gen = c;
                break;
            }
        }
        if gen == 0 {
            // q = 2: the unit group is trivial
            gen = 1;
        }
        let mut exp = vec![0u64; (2 * order.max(1)) as usize + 1];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u64;
        for (i, slot) in exp.iter_mut().enumerate().take(order.max(1) as usize) {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = bitpoly::mulmod(acc, gen, modulus);
        }
        for i in order.max(1) as usize..exp.len() {
            exp[i] = exp[i - order.max(1) as usize];
        }
        MulTables { exp, log }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Bit-packed irreducible modulus, degree-m bit included.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Field size 2^m.
    pub fn q(&self) -> u64 {
        1u64 << self.m
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => bitpoly::mulmod(a, b, self.modulus),
        }
    }

    pub fn pow(&self, a: Scalar, mut e: u128) -> Scalar {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut base = a;
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(a != 0, "inverse of zero");
        match &self.tables {
            Some(t) => {
                let order = self.q() - 1;
                if order == 1 {
                    return 1;
                }
                t.exp[(order - t.log[a as usize] as u64) as usize]
            }
            None => self.pow(a, (self.q() - 2) as u128),
        }
    }

    /// Unique square root in characteristic 2: a^(2^(m-1)).
    pub fn sqrt(&self, a: Scalar) -> Scalar {
        let mut r = a;
        for _ in 0..self.m.saturating_sub(1) {
            r = self.mul(r, r);
        }
        r
    }

    /// Iterates over all field elements (used by tests and small searches).
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        0..self.q()
    }
}

/// Multiplicative order of 2 modulo the odd part of the group exponent;
/// GF(2^m) for this m splits kG and every subgroup algebra.
pub fn splitting_degree(group: &GroupData) -> u32 {
    let mut odd = group.exponent;
    while odd % 2 == 0 {
        odd /= 2;
    }
    if odd == 1 {
        return 1;
    }
    let mut m = 1u32;
    let mut pow = 2u64 % odd;
    while pow != 1 {
        pow = (pow * 2) % odd;
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_is_lex_smallest_irreducible() {
        // m=1 -> x, m=2 -> x^2+x+1, m=4 -> x^4+x+1 (brute-force scan oracle)
        assert_eq!(FieldCtx::new(1).unwrap().modulus(), 0b10);
        assert_eq!(FieldCtx::new(2).unwrap().modulus(), 0b111);
        assert_eq!(FieldCtx::new(4).unwrap().modulus(), 0b10011);
    }

    #[test]
    fn modulus_oracle_scan() {
        // independent oracle: trial division by all lower-degree polynomials
        fn divides(d: u64, p: u64) -> bool {
            super::bitpoly::rem(p as u128, d) == 0
        }
        for m in 1..=8u32 {
            let ctx = FieldCtx::new(m).unwrap();
            let p = ctx.modulus();
            for d in 2..p {
                if super::bitpoly::degree(d) >= 1 && super::bitpoly::degree(d) < m as i32 {
                    assert!(!divides(d, p), "modulus for m={m} divisible by {d:b}");
                }
                if d > p {
                    break;
                }
            }
        }
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(FieldCtx::new(0), Err(Error::DegreeOutOfRange(0))));
        assert!(matches!(FieldCtx::new(33), Err(Error::DegreeOutOfRange(33))));
    }

    #[test]
    fn field_axioms_small() {
        for m in [1u32, 2, 3, 4, 8] {
            let ctx = FieldCtx::new(m).unwrap();
            let q = ctx.q();
            let sample: Vec<u64> = if q <= 16 { (0..q).collect() } else { vec![0, 1, 2, 3, 5, q - 1, q / 2, 7] };
            for &a in &sample {
                for &b in &sample {
                    assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                    for &c in &sample {
                        assert_eq!(ctx.mul(a, ctx.mul(b, c)), ctx.mul(ctx.mul(a, b), c));
                        assert_eq!(ctx.mul(a, b ^ c), ctx.mul(a, b) ^ ctx.mul(a, c));
                    }
                }
                if a != 0 {
                    assert_eq!(ctx.mul(a, ctx.inv(a)), 1, "m={m} a={a}");
                    let s = ctx.sqrt(a);
                    assert_eq!(ctx.mul(s, s), a);
                }
                assert_eq!(ctx.mul(a, 1), a);
            }
        }
    }

    #[test]
    fn gf2_shares_code_path() {
        let ctx = FieldCtx::new(1).unwrap();
        assert_eq!(ctx.mul(1, 1), 1);
        assert_eq!(ctx.mul(1, 0), 0);
        assert_eq!(ctx.inv(1), 1);
    }

    #[test]
    fn large_degree_no_tables() {
        let ctx = FieldCtx::new(20).unwrap();
        let a = 0xABCDE;
        assert_eq!(ctx.mul(a, ctx.inv(a)), 1);
    }

    #[test]
    fn splitting_degrees() {
        use crate::permgroup::{GroupData, Permutation};
        let s3 = GroupData::enumerate(
            3,
            vec![
                Permutation::parse_cycles("(0 1)", 3).unwrap(),
                Permutation::parse_cycles("(0 1 2)", 3).unwrap(),
            ],
            100,
        )
        .unwrap();
        assert_eq!(splitting_degree(&s3), 2); // 2^2 = 1 mod 3
        let c2 = GroupData::enumerate(
            2,
            vec![Permutation::parse_cycles("(0 1)", 2).unwrap()],
            100,
        )
        .unwrap();
        assert_eq!(splitting_degree(&c2), 1); // odd part 1
        let a5 = GroupData::enumerate(
            5,
            vec![
                Permutation::parse_cycles("(0 1 2 3 4)", 5).unwrap(),
                Permutation::parse_cycles("(0 1 2)", 5).unwrap(),
            ],
            100,
        )
        .unwrap();
        assert_eq!(splitting_degree(&a5), 4); // order of 2 mod 15
    }
}
