//! Polynomials over GF(2^m), low-degree-first, and their factorization:
//! char-2-aware square-free decomposition, distinct-degree splitting, and
//! equal-degree splitting by the additive trace map.

use super::{DenseMatrix, FieldCtx, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    /// Coefficients, constant term first. Normalized: no trailing zeros.
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Scalar {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = a ^ b;
        }
        Poly::new(out)
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Scalar) -> Self {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] ^= ctx.mul(a, b);
                }
            }
        }
        Poly::new(out)
    }

    /// self * (x + a)
    pub fn mul_xplus(&self, ctx: &FieldCtx, a: Scalar) -> Self {
        self.mul(ctx, &Poly::new(vec![a, 1]))
    }

    pub fn divrem(&self, ctx: &FieldCtx, div: &Self) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.degree() < div.degree() || self.is_zero() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let lead_inv = ctx.inv(div.leading());
        let mut quot = vec![0u64; self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = ctx.mul(c, lead_inv);
            quot[i - dd] = f;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                if dc != 0 {
                    rem[i - dd + j] ^= ctx.mul(f, dc);
                }
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, ctx: &FieldCtx, div: &Self) -> Poly {
        self.divrem(ctx, div).1
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || self.leading() == 1 {
            return self.clone();
        }
        self.scale(ctx, ctx.inv(self.leading()))
    }

    pub fn gcd(&self, ctx: &FieldCtx, other: &Self) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(ctx, &b);
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    pub fn lcm(&self, ctx: &FieldCtx, other: &Self) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(ctx, other);
        self.mul(ctx, other).divrem(ctx, &g).0.monic(ctx)
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn egcd(&self, ctx: &FieldCtx, other: &Self) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(ctx, &r1);
            let u = u0.add(&q.mul(ctx, &u1));
            let v = v0.add(&q.mul(ctx, &v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let li = ctx.inv(r0.leading());
        (r0.scale(ctx, li), u0.scale(ctx, li), v0.scale(ctx, li))
    }

    /// Inverse of self modulo m (requires gcd(self, m) = 1).
    pub fn inv_mod(&self, ctx: &FieldCtx, m: &Self) -> Option<Poly> {
        let (g, u, _) = self.egcd(ctx, m);
        if g.degree() != 0 {
            return None;
        }
        Some(u.rem(ctx, m))
    }

    pub fn pow_mod(&self, ctx: &FieldCtx, mut e: u128, m: &Self) -> Poly {
        let mut base = self.rem(ctx, m);
        let mut r = Poly::one().rem(ctx, m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(ctx, &base).rem(ctx, m);
            }
            base = base.mul(ctx, &base).rem(ctx, m);
            e >>= 1;
        }
        r
    }

    pub fn derivative(&self, _ctx: &FieldCtx) -> Poly {
        // char 2: d/dx x^i = i x^(i-1), so even powers vanish
        let mut out = vec![0u64; self.coeffs.len().saturating_sub(1)];
        for (i, o) in out.iter_mut().enumerate() {
            if i % 2 == 0 {
                *o = self.coeffs.get(i + 1).copied().unwrap_or(0);
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Scalar) -> Scalar {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.mul(acc, x) ^ c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, ctx: &FieldCtx, a: &DenseMatrix) -> DenseMatrix {
        let n = a.rows;
        let mut acc = DenseMatrix::zero(n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(ctx, a);
            if c != 0 {
                for i in 0..n {
                    acc.xor_at(i, i, c);
                }
            }
        }
        acc
    }

    /// Row vector v mapped to sum_i c_i (v A^i).
    pub fn eval_matrix_vec(&self, ctx: &FieldCtx, a: &DenseMatrix, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![0u64; v.len()];
        let mut cur = v.to_vec();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(&cur) {
                    if x != 0 {
                        *o ^= ctx.mul(c, x);
                    }
                }
            }
            if i + 1 < self.coeffs.len() {
                cur = a.row_apply(ctx, &cur);
            }
        }
        out
    }

    /// Square root of a polynomial with zero derivative: f = g(x^2) => g with
    /// coefficients the square roots of f's even coefficients.
    fn even_part_sqrt(&self, ctx: &FieldCtx) -> Poly {
        let mut out = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                out.push(ctx.sqrt(c));
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        Poly::new(out)
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients) for determinism.
    pub fn factor(&self, ctx: &FieldCtx, seed: u64) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "factor of zero polynomial");
        let mut out: Vec<(Poly, usize)> = Vec::new();
        let monic = self.monic(ctx);
        if monic.degree() == 0 {
            return out;
        }
        for (sf, mult) in monic.squarefree_decomposition(ctx) {
            for (d, prod) in sf.distinct_degree_split(ctx) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64).wrapping_mul(0x9e3779b97f4a7c15));
                let mut stack = vec![prod];
                while let Some(f) = stack.pop() {
                    if f.degree() == d {
                        out.push((f, mult));
                    } else {
                        let (a, b) = f.equal_degree_split(ctx, d, &mut rng);
                        stack.push(a);
                        stack.push(b);
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
        });
        // merge duplicates that appeared at different multiplicities
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (p, m) in out {
            if let Some(last) = merged.last_mut() {
                if last.0 == p {
                    last.1 += m;
                    continue;
                }
            }
            merged.push((p, m));
        }
        merged
    }

    /// Monic square-free factors with multiplicities (char-2 aware: a zero
    /// derivative means a perfect square, recovered by coefficient roots).
    fn squarefree_decomposition(&self, ctx: &FieldCtx) -> Vec<(Poly, usize)> {
        let f = self.monic(ctx);
        if f.degree() == 0 {
            return vec![];
        }
        let df = f.derivative(ctx);
        if df.is_zero() {
            let root = f.even_part_sqrt(ctx);
            return root
                .squarefree_decomposition(ctx)
                .into_iter()
                .map(|(p, m)| (p, 2 * m))
                .collect();
        }
        let mut out = Vec::new();
        let mut g = f.gcd(ctx, &df);
        let mut w = f.divrem(ctx, &g).0;
        let mut i = 1usize;
        while w.degree() > 0 {
            let y = w.gcd(ctx, &g);
            let z = w.divrem(ctx, &y).0;
            if z.degree() > 0 {
                out.push((z, i));
            }
            w = y;
            g = g.divrem(ctx, &w).0;
            i += 1;
        }
        if g.degree() > 0 {
            let root = g.even_part_sqrt(ctx);
            for (p, m) in root.squarefree_decomposition(ctx) {
                out.push((p, 2 * m));
            }
        }
        out
    }

    /// Distinct-degree split of a square-free monic polynomial: list of
    /// (d, product of all irreducible factors of degree d).
    fn distinct_degree_split(&self, ctx: &FieldCtx) -> Vec<(usize, Poly)> {
        let mut f = self.clone();
        let mut out = Vec::new();
        let mut h = Poly::x().rem(ctx, &f);
        let mut d = 0usize;
        while f.degree() > 0 {
            d += 1;
            if 2 * d > f.degree() {
                out.push((f.degree(), f.clone()));
                break;
            }
            // h = x^(q^d) mod f via m squarings per level
            for _ in 0..ctx.degree() {
                h = h.mul(ctx, &h).rem(ctx, &f);
            }
            let g = h.add(&Poly::x().rem(ctx, &f)).gcd(ctx, &f);
            if g.degree() > 0 {
                out.push((d, g.clone()));
                f = f.divrem(ctx, &g).0;
                h = h.rem(ctx, &f);
            }
        }
        out
    }

    /// One split of a product of distinct degree-d irreducibles using the
    /// additive trace map T(a) = a + a^2 + ... + a^(2^(dm-1)).
    fn equal_degree_split(&self, ctx: &FieldCtx, d: usize, rng: &mut ChaCha8Rng) -> (Poly, Poly) {
        let n = self.degree();
        debug_assert!(n > d && n % d == 0);
        loop {
            let a = Poly::new((0..n).map(|_| rng.random_range(0..ctx.q())).collect());
            if a.degree() == 0 && a.is_zero() {
                continue;
            }
            // trace to GF(2) of the residue ring component fields
            let mut t = Poly::zero();
            let mut cur = a.rem(ctx, self);
            let steps = (d as u32) * ctx.degree();
            for _ in 0..steps {
                t = t.add(&cur);
                cur = cur.mul(ctx, &cur).rem(ctx, self);
            }
            let g = t.gcd(ctx, self);
            if g.degree() > 0 && g.degree() < n {
                let rest = self.divrem(ctx, &g).0;
                return (g, rest);
            }
        }
    }

    /// Irreducibility over GF(2^m).
    pub fn is_irreducible(&self, ctx: &FieldCtx) -> bool {
        let f = self.monic(ctx);
        let n = f.degree();
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let df = f.derivative(ctx);
        if df.is_zero() || f.gcd(ctx, &df).degree() > 0 {
            return false;
        }
        // x^(q^n) = x mod f, and gcd(x^(q^(n/p)) - x, f) = 1 for primes p | n
        let qpow = |e: usize| {
            let mut h = Poly::x().rem(ctx, &f);
            for _ in 0..(e as u32) * ctx.degree() {
                h = h.mul(ctx, &h).rem(ctx, &f);
            }
            h
        };
        if qpow(n).add(&Poly::x().rem(ctx, &f)).rem(ctx, &f) != Poly::zero() {
            return false;
        }
        let mut rest = n;
        let mut primes = Vec::new();
        let mut p = 2usize;
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
        for p in primes {
            let g = qpow(n / p).add(&Poly::x()).gcd(ctx, &f);
            if g.degree() > 0 {
                return false;
            }
        }
        true
    }
}

/// CRT idempotent polynomials of k[x]/(mu) for a factored modulus: for each
/// primary factor p_i^{e_i}, the cofactor h_i = mu / p_i^{e_i} times its
/// inverse mod p_i^{e_i}. Evaluating the i-th result at any root of mu's ring
/// gives the projection onto the i-th primary component.
pub fn crt_idempotent_polys(ctx: &FieldCtx, factors: &[(Poly, usize)]) -> Vec<Poly> {
    let mut mu = Poly::one();
    for (p, e) in factors {
        for _ in 0..*e {
            mu = mu.mul(ctx, p);
        }
    }
    let mut out = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        let mut pe = Poly::one();
        for _ in 0..*e {
            pe = pe.mul(ctx, p);
        }
        let h = mu.divrem(ctx, &pe).0;
        let c = h.inv_mod(ctx, &pe).expect("cofactor coprime to primary");
        out.push(h.mul(ctx, &c).rem(ctx, &mu));
    }
    out
}
