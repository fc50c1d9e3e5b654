//! The center of kG via class sums: central primitive idempotents, the
//! inversion involution on blocks, k(B), defect-zero detection, and block
//! components of modules.
//!
//! Class sums form a basis of Z(kG) over any coefficient ring, so
//! dim e_B.Z(kG) equals the number of ordinary irreducible characters in B
//! and k(B) = 1 characterizes defect zero. The expensive direct simplicity
//! check stays available as an optional validator.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf2m::{DenseMatrix, FieldCtx, Scalar};
use crate::gmodule::{self, GModule, GSet};
use crate::permgroup::GroupData;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Structure constants of Z(kG) in the class-sum basis, reduced mod 2, with
/// the regular-representation matrix of each class sum.
#[derive(Debug)]
pub struct CenterData {
    pub field: FieldCtx,
    pub class_count: usize,
    /// product[i][j] = sorted list of l with C_i * C_j containing C_l oddly.
    product: Vec<Vec<Vec<u32>>>,
    /// regular[i] = matrix of right multiplication by the i-th class sum.
    pub regular: Vec<DenseMatrix>,
}

/// Counts a[i][j][l] = #{(x,y) in C_i x C_j : xy = rep_l} mod 2.
pub fn center_structure(group: &GroupData, field: &FieldCtx) -> CenterData {
    let t = group.classes.len();
    let mut product = vec![vec![Vec::new(); t]; t];
    for (l, class) in group.classes.iter().enumerate() {
        let rep = class.representative;
        // for each x: x * y = rep forces y = x^-1 * rep
        let mut count = vec![vec![0u8; t]; t];
        for x in 0..group.order as u32 {
            let i = group.class_of[x as usize] as usize;
            let y = group.mul_idx(group.inv_idx(x), rep);
            let j = group.class_of[y as usize] as usize;
            count[i][j] ^= 1;
        }
        for i in 0..t {
            for j in 0..t {
                if count[i][j] == 1 {
                    product[i][j].push(l as u32);
                }
            }
        }
    }
    let mut regular = Vec::with_capacity(t);
    for i in 0..t {
        // row j of the matrix: coordinates of C_j * C_i
        let m = DenseMatrix::from_fn(t, t, |j, l| {
            u64::from(product[j][i].binary_search(&(l as u32)).is_ok())
        });
        regular.push(m);
    }
    CenterData { field: field.clone(), class_count: t, product, regular }
}

impl CenterData {
    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = vec![0u64; self.class_count];
        u[0] = 1; // the identity class is a singleton
        u
    }

    /// Product of two center elements in class-sum coordinates.
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let ctx = &self.field;
        let mut out = vec![0u64; self.class_count];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                let c = ctx.mul(ui, vj);
                for &l in &self.product[i][j] {
                    out[l as usize] ^= c;
                }
            }
        }
        out
    }

    /// Matrix of multiplication by z on the class-sum space (row convention).
    pub fn mult_matrix(&self, z: &[Scalar]) -> DenseMatrix {
        let t = self.class_count;
        let mut m = DenseMatrix::zero(t, t);
        for j in 0..t {
            let mut e_j = vec![0u64; t];
            e_j[j] = 1;
            let img = self.mul(&e_j, z);
            for (l, &v) in img.iter().enumerate() {
                m.set(j, l, v);
            }
        }
        m
    }
}

/// A central primitive idempotent e_B = sum c_i C_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockIdempotent {
    pub coeffs: Vec<Scalar>,
}

/// Complete set of central primitive idempotents: repeated Fitting splits
/// on random center elements, idempotents recovered by the f -> f^(2^s)
/// squaring trick, with a deterministic class-sum sweep as fallback.
/// Sorted by coefficient vector for reproducibility.
pub fn block_idempotents(center: &CenterData, seed: u64) -> Result<Vec<BlockIdempotent>> {
    let ctx = center.field.clone();
    let t = center.class_count;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work: Vec<Vec<Scalar>> = vec![center.unit()];
    let mut done: Vec<Vec<Scalar>> = Vec::new();
    while let Some(e) = work.pop() {
        // basis of the local algebra e.Z
        let mut basis = crate::gmodule::scheme::Echelon::new();
        for i in 0..t {
            let mut c_i = vec![0u64; t];
            c_i[i] = 1;
            basis.insert(&ctx, &center.mul(&e, &c_i));
        }
        let dim = basis.dim();
        if dim == 1 {
            done.push(e);
            continue;
        }
        let mut found: Option<(Vec<Scalar>, Vec<(Scalar, usize)>)> = None;
        for attempt in 0..(64 + dim) {
            let z: Vec<Scalar> = if attempt < 64 {
                // random element of e.Z
                let mut acc = vec![0u64; t];
                for row in &basis.rows {
                    let c = rng.random_range(0..ctx.q());
                    if c != 0 {
                        for (a, &r) in acc.iter_mut().zip(row) {
                            if r != 0 {
                                *a ^= ctx.mul(c, r);
                            }
                        }
                    }
                }
                acc
            } else {
                basis.rows[attempt - 64].clone()
            };
            // minimal polynomial of z restricted to e.Z
            let mz = center.mult_matrix(&z);
            let mut restricted = DenseMatrix::zero(dim, dim);
            for (bi, brow) in basis.rows.iter().enumerate() {
                let img = mz.row_apply(&ctx, brow);
                let coords = basis.coords(&ctx, &img)?;
                for (bj, &c) in coords.iter().enumerate() {
                    restricted.set(bi, bj, c);
                }
            }
            let mu = restricted.min_poly(&ctx, seed ^ attempt as u64);
            let factors = mu.factor(&ctx, seed ^ 0x77 ^ attempt as u64);
            for (p, _) in &factors {
                if p.degree() > 1 {
                    return Err(Error::SplittingFieldTooSmall(format!(
                        "center element with irreducible factor of degree {} over GF(2^{})",
                        p.degree(),
                        ctx.degree()
                    )));
                }
            }
            if factors.len() >= 2 {
                let roots: Vec<(Scalar, usize)> =
                    factors.iter().map(|(p, m)| (p.coeffs()[0], *m)).collect();
                found = Some((z, roots));
                break;
            }
        }
        match found {
            None => {
                // every sampled and every basis element is scalar + nilpotent:
                // in a commutative algebra their nil parts span a nil ideal of
                // codimension 1, so e.Z is local and e is primitive
                done.push(e);
            }
            Some((z, roots)) => {
                let mut pieces = Vec::with_capacity(roots.len());
                for (ai, _) in &roots {
                    // cofactor h_i = prod_{k != i} (x + a_k)^{m_k}
                    let mut h = crate::gf2m::Poly::one();
                    for (ak, mk) in &roots {
                        if ak != ai {
                            for _ in 0..*mk {
                                h = h.mul_xplus(&ctx, *ak);
                            }
                        }
                    }
                    let lambda = h.eval(&ctx, *ai);
                    debug_assert!(lambda != 0);
                    let scale = ctx.inv(lambda);
                    // Horner in the unital algebra (e.Z, e)
                    let mut acc = vec![0u64; t];
                    for &c in h.coeffs().iter().rev() {
                        acc = center.mul(&acc, &z);
                        if c != 0 {
                            for (a, &ei) in acc.iter_mut().zip(&e) {
                                if ei != 0 {
                                    *a ^= ctx.mul(c, ei);
                                }
                            }
                        }
                    }
                    for a in acc.iter_mut() {
                        if *a != 0 {
                            *a = ctx.mul(*a, scale);
                        }
                    }
                    // squaring fixes the unipotent part
                    let mut cur = acc;
                    let mut ok = false;
                    for _ in 0..(t + 3) {
                        let sq = center.mul(&cur, &cur);
                        if sq == cur {
                            ok = true;
                            break;
                        }
                        cur = sq;
                    }
                    if !ok || cur.iter().all(|&x| x == 0) {
                        return Err(Error::Internal("center idempotent lift failed".into()));
                    }
                    pieces.push(cur);
                }
                // exact verification of the split
                let mut sum = vec![0u64; t];
                for p in &pieces {
                    for (s, &x) in sum.iter_mut().zip(p) {
                        *s ^= x;
                    }
                }
                if sum != e {
                    return Err(Error::Internal("center split does not sum to e".into()));
                }
                for (i, a) in pieces.iter().enumerate() {
                    for (j, b) in pieces.iter().enumerate() {
                        if i != j && center.mul(a, b).iter().any(|&x| x != 0) {
                            return Err(Error::Internal("center split not orthogonal".into()));
                        }
                    }
                }
                work.extend(pieces);
            }
        }
    }
    done.sort();
    Ok(done.into_iter().map(|coeffs| BlockIdempotent { coeffs }).collect())
}

/// B = B^o: the inversion anti-automorphism moves the coefficient of C_i to
/// the class of inverses.
pub fn is_real(b: &BlockIdempotent, group: &GroupData) -> bool {
    let mut image = vec![0u64; b.coeffs.len()];
    for (i, &c) in b.coeffs.iter().enumerate() {
        image[group.classes[i].inverse_class] = c;
    }
    image == b.coeffs
}

/// The image of a block idempotent under the inversion involution.
pub fn conjugate_block(b: &BlockIdempotent, group: &GroupData) -> BlockIdempotent {
    let mut image = vec![0u64; b.coeffs.len()];
    for (i, &c) in b.coeffs.iter().enumerate() {
        image[group.classes[i].inverse_class] = c;
    }
    BlockIdempotent { coeffs: image }
}

/// k(B) = dim e_B.Z(kG), the number of ordinary irreducibles in the block.
pub fn k_of_block(center: &CenterData, b: &BlockIdempotent) -> usize {
    center.mult_matrix(&b.coeffs).rank(&center.field)
}

/// A classified 2-block.
#[derive(Debug, Clone)]
pub struct BlockInfo {
    pub idempotent: BlockIdempotent,
    pub is_real: bool,
    pub k: usize,
    pub is_defect_zero: bool,
    /// Dimension of the unique simple, when defect zero and the regular
    /// module fits under the simplicity cap.
    pub simple_dim: Option<usize>,
}

pub fn is_defect_zero(info: &BlockInfo) -> bool {
    info.k == 1
}

/// Computes idempotents and classifies every block.
pub fn classify_blocks(
    group: &GroupData,
    center: &CenterData,
    cfg: &Config,
) -> Result<Vec<BlockInfo>> {
    let idems = block_idempotents(center, cfg.seed)?;
    let mut out = Vec::with_capacity(idems.len());
    for b in idems {
        let k = k_of_block(center, &b);
        let real = is_real(&b, group);
        let dz = k == 1;
        let simple_dim = if dz && group.order <= cfg.simplicity_cap {
            let d = regular_action_matrix(group, &b, &center.field).rank(&center.field);
            let s = (d as f64).sqrt().round() as usize;
            if s * s != d {
                return Err(Error::Internal(format!(
                    "defect-zero block dimension {d} is not a perfect square"
                )));
            }
            Some(s)
        } else {
            None
        };
        out.push(BlockInfo { idempotent: b, is_real: real, k, is_defect_zero: dz, simple_dim });
    }
    debug_assert_eq!(out.iter().map(|b| b.k).sum::<usize>(), group.classes.len());
    Ok(out)
}

/// Matrix of right multiplication by e_B on kG (basis = group elements).
pub fn regular_action_matrix(group: &GroupData, b: &BlockIdempotent, field: &FieldCtx) -> DenseMatrix {
    let n = group.order;
    let mut m = DenseMatrix::zero(n, n);
    for (i, &c) in b.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for &x in &group.classes[i].members {
            for y in 0..n as u32 {
                m.xor_at(y as usize, group.mul_idx(y, x) as usize, c);
            }
        }
    }
    let _ = field;
    m
}

/// The block component e_B.M: image of the central idempotent's action.
pub fn block_component(
    b: &BlockIdempotent,
    m: &GModule,
    group: &GroupData,
    label: &str,
) -> GModule {
    let ctx = &m.field;
    let op = if let Some(amb) = &m.ambient {
        // assemble e_B on the ambient G-set, then restrict
        let n = amb.space.n;
        let mut e = DenseMatrix::zero(n, n);
        for (i, &c) in b.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &g in &group.classes[i].members {
                for x in 0..n as u32 {
                    e.xor_at(x as usize, amb.space.act(x, g) as usize, c);
                }
            }
        }
        amb.incl.mul(ctx, &e).mul(ctx, &amb.proj)
    } else {
        let mut e = DenseMatrix::zero(m.dim, m.dim);
        for (i, &c) in b.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &g in &group.classes[i].members {
                e = e.add(&m.element_action(group, g).scale(ctx, c));
            }
        }
        e
    };
    debug_assert_eq!(op.mul(ctx, &op), op);
    gmodule::image_submodule(m, &op, label)
}

/// Direct simplicity cross-check of a defect-zero block: e_B.kG must be a
/// perfect square s^2 in dimension and split into s copies of one simple
/// with scalar endomorphisms. Splitting is driven by sparse random
/// left-multiplication endomorphisms of the right regular module.
#[derive(Debug, Clone)]
pub struct SimplicityReport {
    pub block_dim: usize,
    pub is_perfect_square: bool,
    pub simple_dim: usize,
    pub factor_count: usize,
    pub factors_isomorphic: bool,
    pub endo_dims_one: bool,
    pub agrees_with_k: bool,
}

pub fn validate_simplicity(
    b: &BlockIdempotent,
    group: &Arc<GroupData>,
    center: &CenterData,
    cfg: &Config,
) -> Result<SimplicityReport> {
    if group.order > cfg.simplicity_cap {
        return Err(Error::CapExceeded(cfg.simplicity_cap));
    }
    let ctx = center.field.clone();
    let gset = GSet::regular(Arc::clone(group));
    let regular = gmodule::perm_module(&gset, &ctx);
    let component = block_component(b, &regular, group, "block-regular");
    let d = component.dim;
    let s = (d as f64).sqrt().round() as usize;
    let square = s * s == d;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.branch_seed(0xb10c));
    // split until every piece reaches the expected simple dimension
    let mut pieces = vec![component];
    let mut progress = square && d > 0;
    while progress {
        progress = false;
        let mut next = Vec::new();
        for piece in pieces {
            if piece.dim <= s {
                next.push(piece);
                continue;
            }
            // sparse random left multiplication restricted to the piece
            let mut split_done = false;
            for _ in 0..64 {
                let mut op = DenseMatrix::zero(group.order, group.order);
                for _ in 0..8 {
                    let g = rng.random_range(0..group.order as u32);
                    let c = rng.random_range(1..ctx.q());
                    for x in 0..group.order as u32 {
                        op.xor_at(x as usize, group.mul_idx(g, x) as usize, c);
                    }
                }
                let amb = piece.ambient.as_ref().expect("regular ambient");
                let f = amb.incl.mul(&ctx, &op).mul(&ctx, &amb.proj);
                let parts = gmodule::split_by_element(&piece, &f, cfg.seed);
                if parts.len() > 1 {
                    next.extend(parts);
                    split_done = true;
                    progress = true;
                    break;
                }
            }
            if !split_done {
                next.push(piece);
            }
        }
        pieces = next;
    }
    let factor_count = pieces.len();
    let endo_dims_one =
        pieces.iter().all(|p| p.dim == s && gmodule::hom_space(p, p).len() == 1);
    let factors_isomorphic = pieces
        .windows(2)
        .all(|w| gmodule::is_isomorphic(&w[0], &w[1], cfg.seed));
    let report = SimplicityReport {
        block_dim: d,
        is_perfect_square: square,
        simple_dim: s,
        factor_count,
        factors_isomorphic,
        endo_dims_one,
        agrees_with_k: square && factor_count == s && factors_isomorphic && endo_dims_one,
    };
    Ok(report)
}
