//! G-modules over GF(2^m): permutation modules, hom spaces, endomorphism
//! algebras, indecomposable decomposition, duality and projectivity.
//!
//! Module convention: elements are row vectors, a group element g acts as
//! v -> v * rho(g), and rho(gh) = rho(g) * rho(h). A homomorphism M -> N is
//! a dim(M) x dim(N) matrix H with rho_M(g) H = H rho_N(g).
//!
//! Modules that arise as summands of permutation modules carry an ambient
//! witness (inclusion/projection against the underlying G-set); `decompose`
//! and `is_projective` use it to work in the orbital basis of the
//! commutant instead of raw matrix space.

pub mod scheme;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf2m::{DenseMatrix, FieldCtx, Scalar};
use crate::permgroup::{CosetAction, GroupData, SubgroupData};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scheme::{AlgebraOps, Echelon, Leaf, OrbitalAlgebra, PairSpace, TableAlgebra};
use std::collections::HashMap;
use std::sync::Arc;

/// A finite G-set with precomputed generator images and arbitrary-element
/// point actions.
#[derive(Debug)]
pub struct GSet {
    pub group: Arc<GroupData>,
    pub n: usize,
    /// gen_maps[g][p] = image of point p under generator g.
    pub gen_maps: Vec<Vec<u32>>,
    pub label: String,
    kind: GSetKind,
}

#[derive(Debug)]
enum GSetKind {
    /// Points are element indices, G acts by conjugation.
    Conjugation { members: Vec<u32>, pos: HashMap<u32, u32> },
    /// Points are right cosets of a subgroup.
    Cosets { reps: Vec<u32>, coset_of: Vec<u32> },
    /// Points are the group elements under right multiplication.
    Regular,
    /// Raw action tables; arbitrary elements act along their BFS word.
    Tables,
}

impl GSet {
    /// Conjugation action on a union of conjugacy classes (sorted element
    /// indices, closed under conjugation).
    pub fn conjugation(group: Arc<GroupData>, members: Vec<u32>, label: impl Into<String>) -> Arc<GSet> {
        let pos: HashMap<u32, u32> =
            members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let n = members.len();
        let mut gen_maps = Vec::with_capacity(group.generators.len());
        for g in &group.generators {
            let gi = group.index_of(g).expect("generator enumerated");
            let map: Vec<u32> = members.iter().map(|&t| pos[&group.conj_idx(t, gi)]).collect();
            gen_maps.push(map);
        }
        Arc::new(GSet {
            group,
            n,
            gen_maps,
            label: label.into(),
            kind: GSetKind::Conjugation { members, pos },
        })
    }

    /// Right-coset action from `permgroup::coset_action`.
    pub fn cosets(group: Arc<GroupData>, action: &CosetAction, label: impl Into<String>) -> Arc<GSet> {
        let gen_maps = action.tables.clone();
        Arc::new(GSet {
            group,
            n: action.points,
            gen_maps,
            label: label.into(),
            kind: GSetKind::Cosets {
                reps: action.coset_reps.clone(),
                coset_of: action.coset_of.clone(),
            },
        })
    }

    /// Right-multiplication action on the group itself.
    pub fn regular(group: Arc<GroupData>) -> Arc<GSet> {
        let mut gen_maps = Vec::with_capacity(group.generators.len());
        for g in &group.generators {
            let gi = group.index_of(g).expect("generator enumerated");
            let map: Vec<u32> = (0..group.order as u32).map(|x| group.mul_idx(x, gi)).collect();
            gen_maps.push(map);
        }
        Arc::new(GSet {
            n: group.order,
            gen_maps,
            label: "regular".into(),
            kind: GSetKind::Regular,
            group,
        })
    }

    /// Raw per-generator action tables; each row must be a permutation.
    pub fn from_tables(group: Arc<GroupData>, tables: Vec<Vec<u32>>, label: impl Into<String>) -> Result<Arc<GSet>> {
        if tables.len() != group.generators.len() {
            return Err(Error::InvalidAction(format!(
                "{} rows for {} generators",
                tables.len(),
                group.generators.len()
            )));
        }
        let n = tables.first().map_or(0, Vec::len);
        for row in &tables {
            let mut seen = vec![false; n];
            if row.len() != n {
                return Err(Error::InvalidAction("ragged action table".into()));
            }
            for &x in row {
                if x as usize >= n || seen[x as usize] {
                    return Err(Error::InvalidAction(format!("row {row:?} is not a permutation")));
                }
                seen[x as usize] = true;
            }
        }
        Ok(Arc::new(GSet { group, n, gen_maps: tables, label: label.into(), kind: GSetKind::Tables }))
    }

    /// Image of a point under an arbitrary group element.
    pub fn act(&self, point: u32, elem: u32) -> u32 {
        match &self.kind {
            GSetKind::Conjugation { members, pos } => {
                pos[&self.group.conj_idx(members[point as usize], elem)]
            }
            GSetKind::Cosets { reps, coset_of } => {
                coset_of[self.group.mul_idx(reps[point as usize], elem) as usize]
            }
            GSetKind::Regular => self.group.mul_idx(point, elem),
            GSetKind::Tables => match self.group.bfs_word[elem as usize] {
                None => point,
                Some((parent, gen)) => {
                    self.gen_maps[gen as usize][self.act(point, parent) as usize]
                }
            },
        }
    }

    /// Sum of the point-permutation matrices of a subgroup's elements,
    /// entries reduced mod 2.
    pub fn subgroup_norm_matrix(&self, sub: &SubgroupData) -> DenseMatrix {
        let mut w = DenseMatrix::zero(self.n, self.n);
        for &p in &sub.members {
            for x in 0..self.n as u32 {
                w.xor_at(x as usize, self.act(x, p) as usize, 1);
            }
        }
        w
    }

    /// Orbital coordinates of the class-sum operator of one conjugacy class
    /// (entry counts mod 2 at the orbit representatives).
    pub fn class_sum_coords(&self, space: &PairSpace, class_idx: usize) -> Vec<Scalar> {
        let members = &self.group.classes[class_idx].members;
        space
            .reps
            .iter()
            .map(|&(x, y)| {
                let mut parity = 0u64;
                for &g in members {
                    if self.act(x, g) == y {
                        parity ^= 1;
                    }
                }
                parity
            })
            .collect()
    }
}

/// An ambient witness: M is the image of an equivariant idempotent on kX,
/// with incl * proj = identity on M.
#[derive(Debug, Clone)]
pub struct Ambient {
    pub space: Arc<GSet>,
    /// dim x n row basis of the image.
    pub incl: DenseMatrix,
    /// n x dim coefficient matrix.
    pub proj: DenseMatrix,
}

/// A finite-dimensional right kG-module given by generator actions.
#[derive(Debug, Clone)]
pub struct GModule {
    pub field: FieldCtx,
    pub dim: usize,
    pub gens: Vec<DenseMatrix>,
    pub label: String,
    pub ambient: Option<Ambient>,
}

impl GModule {
    pub fn new(field: FieldCtx, gens: Vec<DenseMatrix>, label: impl Into<String>) -> GModule {
        let dim = gens.first().map_or(0, |m| m.rows);
        GModule { field, dim, gens, label: label.into(), ambient: None }
    }

    /// Trivial module: every generator acts as the 1x1 identity.
    pub fn trivial(field: FieldCtx, n_gens: usize) -> GModule {
        GModule::new(field, vec![DenseMatrix::identity(1); n_gens], "k")
    }

    /// Action of an arbitrary group element: through the ambient G-set when
    /// present, otherwise along the element's BFS word.
    pub fn element_action(&self, group: &GroupData, elem: u32) -> DenseMatrix {
        if let Some(amb) = &self.ambient {
            let n = amb.space.n;
            // incl * perm(elem): permute columns of incl, then project
            let mut moved = DenseMatrix::zero(self.dim, n);
            for x in 0..n as u32 {
                let y = amb.space.act(x, elem) as usize;
                for i in 0..self.dim {
                    let v = amb.incl.at(i, x as usize);
                    if v != 0 {
                        moved.set(i, y, v);
                    }
                }
            }
            return moved.mul(&self.field, &amb.proj);
        }
        match group.bfs_word[elem as usize] {
            None => DenseMatrix::identity(self.dim),
            Some((parent, gen)) => self
                .element_action(group, parent)
                .mul(&self.field, &self.gens[gen as usize]),
        }
    }
}

/// Permutation module on a G-set: 0/1 generator matrices permuting the
/// standard basis, with the identity ambient witness.
pub fn perm_module(gset: &Arc<GSet>, field: &FieldCtx) -> GModule {
    let n = gset.n;
    let gens: Vec<DenseMatrix> = gset
        .gen_maps
        .iter()
        .map(|map| {
            DenseMatrix::from_fn(n, n, |x, y| u64::from(map[x] as usize == y))
        })
        .collect();
    GModule {
        field: field.clone(),
        dim: n,
        gens,
        label: format!("k[{}]", gset.label),
        ambient: Some(Ambient {
            space: Arc::clone(gset),
            incl: DenseMatrix::identity(n),
            proj: DenseMatrix::identity(n),
        }),
    }
}

/// Permutation module from raw action tables (validated).
pub fn perm_module_from_tables(
    group: &Arc<GroupData>,
    tables: Vec<Vec<u32>>,
    field: &FieldCtx,
    label: impl Into<String>,
) -> Result<GModule> {
    let gset = GSet::from_tables(Arc::clone(group), tables, label)?;
    Ok(perm_module(&gset, field))
}

/// Echelonized basis of Hom(M, N) = {H : rho_M(g) H = H rho_N(g)}.
pub fn hom_space(m: &GModule, n: &GModule) -> Vec<DenseMatrix> {
    assert_eq!(m.field, n.field, "hom_space requires a common field");
    let ctx = &m.field;
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    if unknowns == 0 {
        return vec![];
    }
    let mut sys = DenseMatrix::zero(m.gens.len() * unknowns, unknowns);
    for (gi, (rm, rn)) in m.gens.iter().zip(&n.gens).enumerate() {
        let base = gi * unknowns;
        // equation (i, j): sum_k rm[i][k] H[k][j] - sum_l H[i][l] rn[l][j] = 0
        for i in 0..dm {
            for j in 0..dn {
                let row = base + i * dn + j;
                for k in 0..dm {
                    let v = rm.at(i, k);
                    if v != 0 {
                        sys.xor_at(row, k * dn + j, v);
                    }
                }
                for l in 0..dn {
                    let v = rn.at(l, j);
                    if v != 0 {
                        sys.xor_at(row, i * dn + l, v);
                    }
                }
            }
        }
    }
    let null = sys.nullspace(ctx);
    (0..null.rows)
        .map(|r| DenseMatrix::from_fn(dm, dn, |i, j| null.at(r, i * dn + j)))
        .collect()
}

/// The G-equivariant endomorphisms of M as an explicit algebra.
#[derive(Debug)]
pub struct EndoAlgebra {
    pub dim: usize,
    pub basis: Vec<DenseMatrix>,
}

pub fn endo_algebra(m: &GModule) -> EndoAlgebra {
    let basis = hom_space(m, m);
    debug_assert!(basis.iter().all(|b| m.gens.iter().all(|g| {
        g.mul(&m.field, b) == b.mul(&m.field, g)
    })));
    // identity lies in the span; closure under products is automatic for a
    // full hom space, spot-checked here
    debug_assert!({
        let mut ech = Echelon::new();
        for b in &basis {
            let v: Vec<Scalar> = (0..m.dim * m.dim).map(|i| b.at(i / m.dim, i % m.dim)).collect();
            ech.insert(&m.field, &v);
        }
        let id: Vec<Scalar> =
            (0..m.dim * m.dim).map(|i| u64::from(i / m.dim == i % m.dim)).collect();
        m.dim == 0 || !ech.insert(&m.field, &id)
    });
    EndoAlgebra { dim: basis.len(), basis }
}

/// Dual module: g acts by the inverse transpose. For an ambient summand the
/// witness transposes inside the same self-dual permutation module.
pub fn dual(m: &GModule) -> GModule {
    let ctx = &m.field;
    let gens: Vec<DenseMatrix> = m
        .gens
        .iter()
        .map(|g| g.inverse(ctx).expect("generator action invertible").transpose())
        .collect();
    let ambient = m.ambient.as_ref().map(|amb| Ambient {
        space: Arc::clone(&amb.space),
        incl: amb.proj.transpose(),
        proj: amb.incl.transpose(),
    });
    GModule {
        field: m.field.clone(),
        dim: m.dim,
        gens,
        label: format!("dual({})", m.label),
        ambient,
    }
}

/// Isomorphism test: an invertible element of Hom(M, N), searched over
/// seeded random combinations and then a deterministic rank-maximization
/// sweep over the hom basis.
pub fn is_isomorphic(m: &GModule, n: &GModule, seed: u64) -> bool {
    if m.dim != n.dim {
        return false;
    }
    if m.dim == 0 {
        return true;
    }
    let ctx = &m.field;
    let homs = hom_space(m, n);
    if homs.is_empty() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let mut cand = DenseMatrix::zero(m.dim, n.dim);
        for h in &homs {
            let c = rng.random_range(0..ctx.q());
            if c != 0 {
                cand = cand.add(&h.scale(ctx, c));
            }
        }
        if cand.rank(ctx) == m.dim {
            return true;
        }
    }
    // deterministic sweep: greedily extend a maximal-rank combination
    let mut best = DenseMatrix::zero(m.dim, n.dim);
    let mut best_rank = 0;
    for h in &homs {
        for c in 1..ctx.q().min(5) {
            let cand = best.add(&h.scale(ctx, c));
            let r = cand.rank(ctx);
            if r > best_rank {
                best = cand;
                best_rank = r;
                break;
            }
        }
    }
    best_rank == m.dim
}

/// Projectivity via the norm of a Sylow 2-subgroup: the rank of
/// N = sum_{p in P} rho(p) counts the free kP-summands of the restriction,
/// and M is projective iff rank(N) * |P| = dim M. This decides exactly the
/// solvability of the relative-trace equation sum_p rho(p)^-1 X rho(p) = Id.
pub fn is_projective(m: &GModule, group: &GroupData, sylow: &SubgroupData) -> bool {
    if m.dim == 0 {
        return true;
    }
    let ctx = &m.field;
    let norm = if let Some(amb) = &m.ambient {
        let w = amb.space.subgroup_norm_matrix(sylow);
        amb.incl.mul(ctx, &w).mul(ctx, &amb.proj)
    } else {
        let mut acc = DenseMatrix::zero(m.dim, m.dim);
        for &p in &sylow.members {
            acc = acc.add(&m.element_action(group, p));
        }
        acc
    };
    norm.rank(ctx) * sylow.order == m.dim
}

/// Literal Higman relative-trace system: is there an (arbitrary) X with
/// sum_{p in P} rho(p)^-1 X rho(p) = Id? Quadratic in dim^2; used as a
/// cross-check oracle on small modules.
pub fn higman_trace_solvable(m: &GModule, group: &GroupData, sylow: &SubgroupData) -> Result<bool> {
    let ctx = &m.field;
    let n = m.dim;
    if n == 0 {
        return Ok(true);
    }
    let unknowns = n * n;
    let mut sys = DenseMatrix::zero(unknowns, unknowns);
    for &p in &sylow.members {
        let rho = m.element_action(group, p);
        let rho_inv = rho.inverse(ctx).ok_or_else(|| {
            Error::Internal("group action not invertible".into())
        })?;
        // contribution of rho_inv * X * rho to entry (i, j)
        for i in 0..n {
            for j in 0..n {
                let row = i * n + j;
                for a in 0..n {
                    let left = rho_inv.at(i, a);
                    if left == 0 {
                        continue;
                    }
                    for b in 0..n {
                        let right = rho.at(b, j);
                        if right != 0 {
                            sys.xor_at(row, a * n + b, ctx.mul(left, right));
                        }
                    }
                }
            }
        }
    }
    let id: Vec<Scalar> = (0..unknowns).map(|i| u64::from(i / n == i % n)).collect();
    match sys.solve(ctx, &id) {
        Ok(_) => Ok(true),
        Err(Error::Inconsistent) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Splits M along the primary decomposition of an equivariant operator f:
/// the CRT idempotents of k[f] cut out the kernels of the primary factors.
pub fn split_by_element(m: &GModule, f: &DenseMatrix, seed: u64) -> Vec<GModule> {
    let ctx = &m.field;
    debug_assert!(m.gens.iter().all(|g| g.mul(ctx, f) == f.mul(ctx, g)));
    let mu = f.min_poly(ctx, seed);
    let factors = mu.factor(ctx, seed);
    if factors.len() < 2 {
        return vec![m.clone()];
    }
    let polys = crate::gf2m::crt_idempotent_polys(ctx, &factors);
    let mut out = Vec::with_capacity(polys.len());
    for (pi, p) in polys.iter().enumerate() {
        let idem = p.eval_matrix(ctx, f);
        debug_assert_eq!(idem.mul(ctx, &idem), idem);
        out.push(image_submodule(m, &idem, &format!("{}[{}]", m.label, pi)));
    }
    debug_assert_eq!(out.iter().map(|s| s.dim).sum::<usize>(), m.dim);
    out
}

/// The submodule Im(idem) with restricted action, for an equivariant
/// idempotent on M; keeps the ambient witness composed.
pub fn image_submodule(m: &GModule, idem: &DenseMatrix, label: &str) -> GModule {
    let ctx = &m.field;
    let basis = idem.row_space(ctx); // r x dim, reduced echelon
    let r = basis.rows;
    // coefficients: idem = coeff * basis, coeff[x][j] = idem[x][pivot_j]
    let pivots: Vec<usize> = (0..r)
        .map(|i| (0..m.dim).find(|&j| basis.at(i, j) != 0).expect("nonzero row"))
        .collect();
    let coeff = DenseMatrix::from_fn(m.dim, r, |x, j| idem.at(x, pivots[j]));
    let gens: Vec<DenseMatrix> = m
        .gens
        .iter()
        .map(|g| basis.mul(ctx, g).mul(ctx, &coeff))
        .collect();
    let ambient = m.ambient.as_ref().map(|amb| Ambient {
        space: Arc::clone(&amb.space),
        incl: basis.mul(ctx, &amb.incl),
        proj: amb.proj.mul(ctx, &coeff),
    });
    GModule { field: m.field.clone(), dim: r, gens, label: label.into(), ambient }
}

/// One indecomposable summand class of a decomposition.
#[derive(Debug)]
pub struct Summand {
    pub module: GModule,
    pub multiplicity: usize,
    /// dim End of the summand.
    pub end_dim: usize,
    /// dim End / J(End); 1 certifies absolute indecomposability.
    pub residue_dim: usize,
    /// Rigorous on the ambient path (transposed-idempotent test).
    pub self_dual: bool,
    /// Per copy: (incl, proj) in M's coordinates with incl * proj = Id.
    pub copies: Vec<(DenseMatrix, DenseMatrix)>,
}

/// Result of `decompose`: summand classes plus a change of basis whose row
/// blocks are the copies' inclusion matrices.
#[derive(Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub change_of_basis: DenseMatrix,
    /// Ambient-path details for block bookkeeping (orbital space + leaf
    /// idempotents per summand class, aligned with `summands`).
    pub detail: Option<SchemeDetail>,
}

pub struct SchemeDetail {
    pub space: Arc<PairSpace>,
    pub algebra: OrbitalAlgebra,
    pub leaves: Vec<Leaf>,
}

impl std::fmt::Debug for SchemeDetail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SchemeDetail").field("leaves", &self.leaves.len()).finish()
    }
}

impl Decomposition {
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.module.dim * s.multiplicity).sum()
    }
}

/// Indecomposable direct-sum decomposition with multiplicities.
///
/// Ambient modules run on the orbital algebra of their G-set; explicit
/// modules realize End(M) by solving the intertwining equations first.
/// Both paths use seeded Fitting splits with the deterministic radical
/// fallback, and group summands by the exact composite-past-radical test.
pub fn decompose(m: &GModule, cfg: &Config) -> Result<Decomposition> {
    if m.dim > cfg.module_cap {
        return Err(Error::CapExceeded(cfg.module_cap));
    }
    if m.dim == 0 {
        return Ok(Decomposition {
            summands: vec![],
            change_of_basis: DenseMatrix::zero(0, 0),
            detail: None,
        });
    }
    match &m.ambient {
        Some(_) => decompose_ambient(m, cfg),
        None => decompose_explicit(m, cfg),
    }
}

fn decompose_ambient(m: &GModule, cfg: &Config) -> Result<Decomposition> {
    let amb = m.ambient.as_ref().unwrap();
    let ctx = m.field.clone();
    let space = Arc::new(PairSpace::new(Arc::clone(&amb.space)));
    let alg = OrbitalAlgebra { space: Arc::clone(&space), ctx: ctx.clone() };
    // idempotent of M inside End(kX)
    let eps = space.coords_from_entries(|x, y| {
        let mut acc = 0u64;
        for j in 0..m.dim {
            let a = amb.proj.at(x as usize, j);
            if a != 0 {
                let b = amb.incl.at(j, y as usize);
                if b != 0 {
                    acc ^= ctx.mul(a, b);
                }
            }
        }
        acc
    });
    debug_assert!({
        let e2 = alg.mul(&eps, &eps);
        e2 == eps
    });
    let mut counter = 0u64;
    let leaves = scheme::decompose_idempotent(&alg, eps, cfg, &mut counter)?;
    // materialize each leaf relative to M's coordinates
    let mut modules = Vec::with_capacity(leaves.len());
    let mut witnesses = Vec::with_capacity(leaves.len());
    for (li, leaf) in leaves.iter().enumerate() {
        let mat = space.to_matrix(&leaf.eps);
        let sub = image_submodule_ambient(m, &mat, &format!("{}#{}", m.label, li))?;
        // inclusion/projection in M coordinates
        let c = sub
            .1
            .mul(&ctx, &amb.proj); // leaf basis rows -> M coords
        let d = amb.incl.mul(&ctx, &sub.2);
        debug_assert!(c.mul(&ctx, &d).is_identity());
        modules.push(sub.0);
        witnesses.push((c, d));
    }
    let groups = group_leaves(&alg, &leaves, &modules)?;
    assemble_decomposition(m, cfg, modules, witnesses, leaves, groups, Some((space, alg)))
}

/// Materializes the image of an equivariant idempotent given on the ambient
/// space; returns (module, incl rows on X, proj on X).
fn image_submodule_ambient(
    m: &GModule,
    idem_on_x: &DenseMatrix,
    label: &str,
) -> Result<(GModule, DenseMatrix, DenseMatrix)> {
    let amb = m.ambient.as_ref().unwrap();
    let ctx = &m.field;
    let basis = idem_on_x.row_space(ctx);
    let r = basis.rows;
    let nx = amb.space.n;
    let pivots: Vec<usize> = (0..r)
        .map(|i| (0..nx).find(|&j| basis.at(i, j) != 0).expect("nonzero row"))
        .collect();
    let coeff = DenseMatrix::from_fn(nx, r, |x, j| idem_on_x.at(x, pivots[j]));
    // generator actions via the permutation images
    let gens: Vec<DenseMatrix> = amb
        .space
        .gen_maps
        .iter()
        .map(|map| {
            let mut moved = DenseMatrix::zero(r, nx);
            for x in 0..nx {
                let y = map[x] as usize;
                for i in 0..r {
                    let v = basis.at(i, x);
                    if v != 0 {
                        moved.set(i, y, v);
                    }
                }
            }
            moved.mul(ctx, &coeff)
        })
        .collect();
    let module = GModule {
        field: m.field.clone(),
        dim: r,
        gens,
        label: label.into(),
        ambient: Some(Ambient {
            space: Arc::clone(&amb.space),
            incl: basis.clone(),
            proj: coeff.clone(),
        }),
    };
    Ok((module, basis, coeff))
}

fn decompose_explicit(m: &GModule, cfg: &Config) -> Result<Decomposition> {
    let ctx = m.field.clone();
    let endo = endo_algebra(m);
    if endo.dim == 0 {
        return Err(Error::Internal("endomorphism algebra without identity".into()));
    }
    // multiplication table over the echelonized endo basis
    let n = m.dim;
    let mut ech = Echelon::new();
    let vecize = |b: &DenseMatrix| -> Vec<Scalar> {
        (0..n * n).map(|i| b.at(i / n, i % n)).collect()
    };
    for b in &endo.basis {
        ech.insert(&ctx, &vecize(b));
    }
    let basis_mats: Vec<DenseMatrix> = ech
        .rows
        .iter()
        .map(|v| DenseMatrix::from_fn(n, n, |i, j| v[i * n + j]))
        .collect();
    let d = basis_mats.len();
    let mut table = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let p = basis_mats[i].mul(&ctx, &basis_mats[j]);
            table[i][j] = ech.coords(&ctx, &vecize(&p))?;
        }
    }
    let unit = ech.coords(&ctx, &vecize(&DenseMatrix::identity(n)))?;
    let alg = TableAlgebra { ctx: ctx.clone(), dim: d, unit: unit.clone(), table };
    let mut counter = 0u64;
    let leaves = scheme::decompose_idempotent(&alg, unit, cfg, &mut counter)?;
    let mut modules = Vec::with_capacity(leaves.len());
    let mut witnesses = Vec::with_capacity(leaves.len());
    for (li, leaf) in leaves.iter().enumerate() {
        // idempotent as a matrix on M
        let mut idem = DenseMatrix::zero(n, n);
        for (c, b) in leaf.eps.iter().zip(&basis_mats) {
            if *c != 0 {
                idem = idem.add(&b.scale(&ctx, *c));
            }
        }
        let sub = image_submodule(m, &idem, &format!("{}#{}", m.label, li));
        let basis = idem.row_space(&ctx);
        let pivots: Vec<usize> = (0..basis.rows)
            .map(|i| (0..n).find(|&j| basis.at(i, j) != 0).expect("nonzero row"))
            .collect();
        let coeff = DenseMatrix::from_fn(n, basis.rows, |x, j| idem.at(x, pivots[j]));
        modules.push(sub);
        witnesses.push((basis, coeff));
    }
    let groups = group_leaves(&alg, &leaves, &modules)?;
    assemble_decomposition(m, cfg, modules, witnesses, leaves, groups, None)
}

/// Groups leaves into isomorphism classes with the exact composite test.
fn group_leaves<A: AlgebraOps + ?Sized>(
    alg: &A,
    leaves: &[Leaf],
    modules: &[GModule],
) -> Result<Vec<Vec<usize>>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    'leaves: for i in 0..leaves.len() {
        for g in groups.iter_mut() {
            let rep = g[0];
            if modules[rep].dim == modules[i].dim
                && leaves[rep].end_dim == leaves[i].end_dim
                && scheme::leaves_isomorphic(alg, &leaves[rep], &leaves[i])?
            {
                g.push(i);
                continue 'leaves;
            }
        }
        groups.push(vec![i]);
    }
    Ok(groups)
}

#[allow(clippy::too_many_arguments)]
fn assemble_decomposition(
    m: &GModule,
    cfg: &Config,
    modules: Vec<GModule>,
    witnesses: Vec<(DenseMatrix, DenseMatrix)>,
    leaves: Vec<Leaf>,
    groups: Vec<Vec<usize>>,
    ambient_engine: Option<(Arc<PairSpace>, OrbitalAlgebra)>,
) -> Result<Decomposition> {
    let ctx = &m.field;
    // deterministic order: by dimension, then first-leaf index
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&gi| (modules[groups[gi][0]].dim, groups[gi][0]));
    let mut summands = Vec::with_capacity(groups.len());
    let mut rep_leaves = Vec::with_capacity(groups.len());
    let mut cob_rows: Vec<Vec<Scalar>> = Vec::with_capacity(m.dim);
    for &gi in &order {
        let rep = groups[gi][0];
        let self_dual = match &ambient_engine {
            Some((_, alg)) => scheme::leaf_self_dual(alg, &leaves[rep])?,
            None => {
                let md = &modules[rep];
                is_isomorphic(md, &dual(md), cfg.branch_seed(0x5e1f ^ rep as u64))
            }
        };
        let copies: Vec<(DenseMatrix, DenseMatrix)> =
            groups[gi].iter().map(|&li| witnesses[li].clone()).collect();
        for (c, _) in &copies {
            for i in 0..c.rows {
                cob_rows.push(c.row(i).to_vec());
            }
        }
        summands.push(Summand {
            module: modules[rep].clone(),
            multiplicity: groups[gi].len(),
            end_dim: leaves[rep].end_dim,
            residue_dim: leaves[rep].residue_dim,
            self_dual,
            copies,
        });
        rep_leaves.push(leaves[rep].clone());
    }
    let change_of_basis = DenseMatrix::from_rows(cob_rows);
    if change_of_basis.rows != m.dim || change_of_basis.rank(ctx) != m.dim {
        return Err(Error::Internal("decomposition change of basis is singular".into()));
    }
    let detail = ambient_engine.map(|(space, algebra)| SchemeDetail {
        space,
        algebra,
        leaves: rep_leaves,
    });
    Ok(Decomposition { summands, change_of_basis, detail })
}

/// The projective indecomposable summands of M with multiplicities.
pub fn projective_components(
    m: &GModule,
    group: &GroupData,
    sylow: &SubgroupData,
    cfg: &Config,
) -> Result<Vec<(GModule, usize)>> {
    let dec = decompose(m, cfg)?;
    Ok(dec
        .summands
        .into_iter()
        .filter(|s| is_projective(&s.module, group, sylow))
        .map(|s| (s.module, s.multiplicity))
        .collect())
}

/// External direct sum (block-diagonal generator actions); drops ambient.
pub fn direct_sum(a: &GModule, b: &GModule) -> GModule {
    assert_eq!(a.field, b.field);
    assert_eq!(a.gens.len(), b.gens.len());
    let dim = a.dim + b.dim;
    let gens: Vec<DenseMatrix> = a
        .gens
        .iter()
        .zip(&b.gens)
        .map(|(ga, gb)| {
            DenseMatrix::from_fn(dim, dim, |i, j| {
                if i < a.dim && j < a.dim {
                    ga.at(i, j)
                } else if i >= a.dim && j >= a.dim {
                    gb.at(i - a.dim, j - a.dim)
                } else {
                    0
                }
            })
        })
        .collect();
    GModule {
        field: a.field.clone(),
        dim,
        gens,
        label: format!("{}+{}", a.label, b.label),
        ambient: None,
    }
}
