//! Dense row-major matrices over GF(2^m) with Gaussian-elimination kernels.

use super::{FieldCtx, Poly, Scalar};
use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        DenseMatrix { rows: r, cols: c, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn xor_at(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] ^= v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == u64::from(i == j)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Scalar) -> Self {
        let data = self.data.iter().map(|&a| ctx.mul(a, c)).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    /// Plain cubic product with an i-k-j loop; the inner loop runs on table
    /// lookups when the context carries them.
    pub fn mul(&self, ctx: &FieldCtx, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                if let Some(t) = &ctx.tables {
                    let la = t.log[a as usize];
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        if b != 0 {
                            *o ^= t.exp[(la + t.log[b as usize]) as usize];
                        }
                    }
                } else {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        if b != 0 {
                            *o ^= ctx.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// v * M for a row vector v.
    pub fn row_apply(&self, ctx: &FieldCtx, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let brow = self.row(k);
            for (o, &b) in out.iter_mut().zip(brow) {
                if b != 0 {
                    *o ^= ctx.mul(a, b);
                }
            }
        }
        out
    }

    /// M * v for a column vector v.
    pub fn col_apply(&self, ctx: &FieldCtx, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for (j, &b) in self.row(i).iter().enumerate() {
                if b != 0 && v[j] != 0 {
                    acc ^= ctx.mul(b, v[j]);
                }
            }
            out[i] = acc;
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let (a, b) = (self.at(r, j), self.at(p, j));
                    self.set(r, j, b);
                    self.set(p, j, a);
                }
            }
            let inv = ctx.inv(self.at(r, c));
            if inv != 1 {
                for j in 0..self.cols {
                    let v = self.at(r, j);
                    if v != 0 {
                        self.set(r, j, ctx.mul(v, inv));
                    }
                }
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self.at(i, c);
                    if f != 0 {
                        for j in 0..self.cols {
                            let v = self.at(r, j);
                            if v != 0 {
                                self.xor_at(i, j, ctx.mul(f, v));
                            }
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let mut m = self.clone();
        m.rref(ctx).len()
    }

    /// Reduced-echelon basis of the row space, zero rows dropped.
    pub fn row_space(&self, ctx: &FieldCtx) -> DenseMatrix {
        let mut m = self.clone();
        let pivots = m.rref(ctx);
        let r = pivots.len();
        let mut out = DenseMatrix::zero(r, self.cols);
        for i in 0..r {
            out.row_mut(i).copy_from_slice(m.row(i));
        }
        out
    }

    /// Basis of the right nullspace {x : A x = 0}, one ROW per basis vector,
    /// in reduced echelon form.
    pub fn nullspace(&self, ctx: &FieldCtx) -> DenseMatrix {
        let mut m = self.clone();
        let pivots = m.rref(ctx);
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = DenseMatrix::zero(free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            out.set(bi, fc, 1);
            for (ri, &pc) in pivots.iter().enumerate().take(rank) {
                let v = m.at(ri, fc);
                if v != 0 {
                    out.set(bi, pc, v);
                }
            }
        }
        out
    }

    /// One solution of A x = b, or `Inconsistent`.
    pub fn solve(&self, ctx: &FieldCtx, b: &[Scalar]) -> Result<Vec<Scalar>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: rhs length {} vs {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = DenseMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(ctx);
        if pivots.contains(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![0u64; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols);
        }
        Ok(x)
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<DenseMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = DenseMatrix::zero(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(ctx);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = DenseMatrix::zero(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    /// Minimal polynomial via Krylov spaces on seeded random vectors: lcm of
    /// local minimal polynomials, certified by evaluation on every standard
    /// basis vector.
    pub fn min_poly(&self, ctx: &FieldCtx, seed: u64) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mu = Poly::one();
        // random seeds first, then sweep basis vectors until certified
        let mut attempts: Vec<Vec<Scalar>> = Vec::new();
        for _ in 0..3 {
            let v: Vec<Scalar> = (0..n).map(|_| rng.random_range(0..ctx.q())).collect();
            attempts.push(v);
        }
        for i in 0..n {
            let mut e = vec![0u64; n];
            e[i] = 1;
            attempts.push(e);
        }
        for v in attempts {
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            if mu.eval_matrix_vec(ctx, self, &v).iter().all(|&x| x == 0) {
                continue;
            }
            let local = self.local_min_poly(ctx, &v);
            mu = mu.lcm(ctx, &local);
        }
        // certificate: mu annihilates every basis vector
        debug_assert!((0..n).all(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            mu.eval_matrix_vec(ctx, self, &e).iter().all(|&x| x == 0)
        }));
        mu
    }

    fn local_min_poly(&self, ctx: &FieldCtx, v: &[Scalar]) -> Poly {
        let n = self.rows;
        // echelon of Krylov vectors with coefficient tracking
        let mut basis: Vec<(Vec<Scalar>, Vec<Scalar>, usize)> = Vec::new(); // (reduced vec, combo, pivot)
        let mut cur = v.to_vec();
        let mut power = 0usize;
        loop {
            let mut combo = vec![0u64; n + 1];
            combo[power] = 1;
            let mut w = cur.clone();
            for (bv, bc, p) in &basis {
                if w[*p] != 0 {
                    let f = w[*p];
                    for (wi, bi) in w.iter_mut().zip(bv) {
                        if *bi != 0 {
                            *wi ^= ctx.mul(f, *bi);
                        }
                    }
                    for (ci, bi) in combo.iter_mut().zip(bc) {
                        if *bi != 0 {
                            *ci ^= ctx.mul(f, *bi);
                        }
                    }
                }
            }
            if let Some(p) = w.iter().position(|&x| x != 0) {
                let inv = ctx.inv(w[p]);
                for x in w.iter_mut() {
                    if *x != 0 {
                        *x = ctx.mul(*x, inv);
                    }
                }
                for x in combo.iter_mut() {
                    if *x != 0 {
                        *x = ctx.mul(*x, inv);
                    }
                }
                basis.push((w, combo, p));
                power += 1;
                if power > n {
                    unreachable!("Krylov depth exceeded dimension");
                }
                cur = self.transpose_apply_row(ctx, &cur);
            } else {
                // dependence found: combo gives the monic local min poly
                let mut coeffs = combo[..=power].to_vec();
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                return Poly::new(coeffs);
            }
        }
    }

    /// v * A for a row vector (module action orientation).
    fn transpose_apply_row(&self, ctx: &FieldCtx, v: &[Scalar]) -> Vec<Scalar> {
        self.row_apply(ctx, v)
    }

    /// Characteristic polynomial via Hessenberg reduction (char-2 safe).
    pub fn char_poly(&self, ctx: &FieldCtx) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| h.at(i, c) != 0) else {
                continue;
            };
            if p != c + 1 {
                for j in 0..n {
                    let (a, b) = (h.at(c + 1, j), h.at(p, j));
                    h.set(c + 1, j, b);
                    h.set(p, j, a);
                }
                for i in 0..n {
                    let (a, b) = (h.at(i, c + 1), h.at(i, p));
                    h.set(i, c + 1, b);
                    h.set(i, p, a);
                }
            }
            let inv = ctx.inv(h.at(c + 1, c));
            for i in c + 2..n {
                let f = ctx.mul(h.at(i, c), inv);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = h.at(c + 1, j);
                    if v != 0 {
                        h.xor_at(i, j, ctx.mul(f, v));
                    }
                }
                for i2 in 0..n {
                    let v = h.at(i2, i);
                    if v != 0 {
                        h.xor_at(i2, c + 1, ctx.mul(f, v));
                    }
                }
            }
        }
        // p_k(t) = (t - h_kk) p_{k-1}(t) - sum_i h_ik (prod subdiag) p_{i-1}(t)
        let mut polys: Vec<Poly> = vec![Poly::one()];
        for k in 0..n {
            let mut pk = polys[k].mul_xplus(ctx, h.at(k, k));
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = ctx.mul(prod, h.at(i + 1, i));
                if prod == 0 {
                    break;
                }
                let coef = ctx.mul(h.at(i, k), prod);
                if coef != 0 {
                    pk = pk.add(&polys[i].scale(ctx, coef));
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }
}
