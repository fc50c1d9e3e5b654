//! Verification harness: assembles the group, block, and module layers to
//! check that the real defect-zero blocks biject with the projective
//! components of the involution permutation module, that each such simple
//! sits in exactly one involution-class module with multiplicity one, and
//! the strongly-embedded consequence for induced trivial modules.

use crate::blocks::{self, BlockInfo, CenterData};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf2m::{self, FieldCtx, Scalar};
use crate::gmodule::scheme::{AlgebraOps, Corner, OrbitalAlgebra, PairSpace};
use crate::gmodule::{self, Decomposition, GModule, GSet};
use crate::permgroup::{self, GroupData, SubgroupData};
use crate::report::*;
use std::sync::Arc;
use std::time::Instant;

/// How much of the harness to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyScope {
    /// Blocks + kOmega only (positive-defect projective-freeness checks).
    BijectionOnly,
    /// Also build every involution-class module k[G/C_G(t)].
    Full,
}

/// Shared per-group state.
pub struct Session {
    pub group: Arc<GroupData>,
    pub name: String,
    pub ctx: FieldCtx,
    pub center: CenterData,
    pub blocks: Vec<BlockInfo>,
    pub sylow: SubgroupData,
    pub cfg: Config,
}

impl Session {
    pub fn new(group: Arc<GroupData>, name: impl Into<String>, cfg: &Config) -> Result<Session> {
        let needed = gf2m::splitting_degree(&group);
        let degree = match cfg.field_degree {
            Some(m) if m < needed => {
                return Err(Error::SplittingFieldTooSmall(format!(
                    "override m={m} below the splitting degree {needed}"
                )));
            }
            Some(m) => m,
            None => needed,
        };
        let ctx = gf2m::field_ctx(degree)?;
        let center = blocks::center_structure(&group, &ctx);
        let block_infos = blocks::classify_blocks(&group, &center, cfg)?;
        let sylow = permgroup::sylow2(&group, cfg.seed);
        Ok(Session {
            group,
            name: name.into(),
            ctx,
            center,
            blocks: block_infos,
            sylow,
            cfg: cfg.clone(),
        })
    }
}

/// Orbital coordinates of each block idempotent acting on a G-set, plus the
/// index of the block owning each leaf of a decomposition there.
struct BlockCoords {
    coords: Vec<Vec<Scalar>>,
}

impl BlockCoords {
    fn new(session: &Session, gset: &GSet, space: &PairSpace, alg: &OrbitalAlgebra) -> Result<BlockCoords> {
        let t = session.group.classes.len();
        let class_coords: Vec<Vec<Scalar>> =
            (0..t).map(|i| gset.class_sum_coords(space, i)).collect();
        let mut coords = Vec::with_capacity(session.blocks.len());
        for info in &session.blocks {
            let mut acc = vec![0u64; space.d];
            for (i, &c) in info.idempotent.coeffs.iter().enumerate() {
                if c != 0 {
                    for (a, &x) in acc.iter_mut().zip(&class_coords[i]) {
                        if x != 0 {
                            *a ^= session.ctx.mul(c, x);
                        }
                    }
                }
            }
            // central idempotents must stay idempotent in the commutant
            if alg.mul(&acc, &acc) != acc {
                return Err(Error::Internal(
                    "block idempotent action is not idempotent on the G-set".into(),
                ));
            }
            coords.push(acc);
        }
        Ok(BlockCoords { coords })
    }

    /// Index of the block containing an indecomposable leaf.
    fn block_of_leaf(&self, alg: &OrbitalAlgebra, eps: &[Scalar]) -> Result<usize> {
        let mut owner = None;
        for (bi, bc) in self.coords.iter().enumerate() {
            let prod = alg.mul(eps, bc);
            if prod == *eps {
                if owner.is_some() {
                    return Err(Error::Internal("leaf claimed by two blocks".into()));
                }
                owner = Some(bi);
            } else if prod.iter().any(|&x| x != 0) {
                return Err(Error::Internal("leaf split across blocks".into()));
            }
        }
        owner.ok_or_else(|| Error::Internal("leaf in no block".into()))
    }
}

struct DecomposedSet {
    dec: Decomposition,
    /// block index per summand class
    block_of: Vec<usize>,
    projective: Vec<bool>,
}

fn decompose_on_gset(session: &Session, gset: &Arc<GSet>, module: &GModule) -> Result<DecomposedSet> {
    let dec = gmodule::decompose(module, &session.cfg)?;
    let detail = dec
        .detail
        .as_ref()
        .ok_or_else(|| Error::Internal("permutation module lost its ambient".into()))?;
    let bc = BlockCoords::new(session, gset, &detail.space, &detail.algebra)?;
    let mut block_of = Vec::with_capacity(dec.summands.len());
    let mut projective = Vec::with_capacity(dec.summands.len());
    for (si, s) in dec.summands.iter().enumerate() {
        block_of.push(bc.block_of_leaf(&detail.algebra, &detail.leaves[si].eps)?);
        projective.push(gmodule::is_projective(&s.module, &session.group, &session.sylow));
    }
    Ok(DecomposedSet { dec, block_of, projective })
}

/// Runs the bijection and uniqueness checks and assembles the report.
pub fn verify_group(session: &Session, scope: VerifyScope) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = &session.group;
    let ctx = &session.ctx;
    let mut skipped = Vec::new();

    // kOmega and its decomposition
    let omega_members = permgroup::involutions(group);
    if omega_members.len() > session.cfg.module_cap {
        return Err(Error::CapExceeded(session.cfg.module_cap));
    }
    let omega_set = GSet::conjugation(Arc::clone(group), omega_members.clone(), "omega");
    let komega = gmodule::perm_module(&omega_set, ctx);
    let omega_dim = komega.dim;
    let omega = decompose_on_gset(session, &omega_set, &komega)?;

    // involution classes (identity class included)
    let involution_classes: Vec<usize> = group
        .classes
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let r = c.representative;
            group.mul_idx(r, r) == group.id_index()
        })
        .map(|(i, _)| i)
        .collect();
    // consistency: |Omega| = sum of involution class sizes = sum of indices
    let class_size_sum: usize =
        involution_classes.iter().map(|&i| group.classes[i].size()).sum();
    if class_size_sum != omega_dim {
        return Err(Error::Internal("omega does not match its class partition".into()));
    }

    // block components of kOmega and the per-block checks
    let detail = omega.dec.detail.as_ref().unwrap();
    let omega_bc = BlockCoords::new(session, &omega_set, &detail.space, &detail.algebra)?;
    let mut block_records = Vec::with_capacity(session.blocks.len());
    let mut bijection_ok = true;
    let mut component_dim_total = 0usize;
    for (bi, info) in session.blocks.iter().enumerate() {
        let comp = blocks::block_component(
            &info.idempotent,
            &komega,
            group,
            &format!("e{bi}.komega"),
        );
        component_dim_total += comp.dim;
        // dim End of the component, inside the orbital commutant
        let end_dim = Corner::new(&detail.algebra, omega_bc.coords[bi].clone()).dim();
        let self_dual = if info.is_defect_zero && comp.dim > 0 {
            Some(gmodule::is_isomorphic(
                &comp,
                &gmodule::dual(&comp),
                session.cfg.branch_seed(0xd0a1 ^ bi as u64),
            ))
        } else {
            None
        };
        if info.is_defect_zero {
            if info.is_real {
                // the simple dimension comes from the regular-module rank
                // when the group fits the cap, else from the component itself
                let expected = match info.simple_dim {
                    Some(d) => d,
                    None => {
                        skipped.push(format!(
                            "block {bi}: simple_dim via regular module (order beyond cap); \
                             using the omega component dimension"
                        ));
                        comp.dim
                    }
                };
                if comp.dim != expected || end_dim != 1 || self_dual != Some(true) {
                    bijection_ok = false;
                }
            } else if comp.dim != 0 {
                // nonreal defect-zero blocks must annihilate kOmega
                bijection_ok = false;
            }
        } else {
            // positive defect: no projective summand of kOmega lies here
            let has_projective = omega
                .block_of
                .iter()
                .zip(&omega.projective)
                .any(|(&b, &p)| b == bi && p);
            if has_projective {
                bijection_ok = false;
            }
        }
        block_records.push(BlockRecord {
            index: bi,
            k: info.k,
            real: info.is_real,
            defect_zero: info.is_defect_zero,
            simple_dim: info.simple_dim,
            omega_component_dim: comp.dim,
            omega_component_end_dim: end_dim,
            omega_component_self_dual: self_dual,
        });
    }
    if component_dim_total != omega_dim {
        return Err(Error::Internal("block components do not fill kOmega".into()));
    }

    // the count comparison of the final bijection
    let real_dz: Vec<usize> = session
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_real && b.is_defect_zero)
        .map(|(i, _)| i)
        .collect();
    let projective_summands: Vec<usize> = (0..omega.dec.summands.len())
        .filter(|&i| omega.projective[i])
        .collect();
    let projective_count = projective_summands.len();
    if projective_count != real_dz.len() {
        bijection_ok = false;
    }
    for &si in &projective_summands {
        let s = &omega.dec.summands[si];
        // multiplicity one, self-dual, and landing in a real defect-zero block
        let b = &session.blocks[omega.block_of[si]];
        if s.multiplicity != 1 || !s.self_dual || !b.is_real || !b.is_defect_zero {
            bijection_ok = false;
        }
    }

    let omega_record = OmegaRecord {
        dim: omega_dim,
        components: (0..omega.dec.summands.len())
            .map(|si| {
                let s = &omega.dec.summands[si];
                ComponentRecord {
                    dim: s.module.dim,
                    multiplicity: s.multiplicity,
                    projective: omega.projective[si],
                    self_dual: s.self_dual,
                    block: Some(omega.block_of[si]),
                    end_dim: s.end_dim,
                    residue_dim: s.residue_dim,
                }
            })
            .collect(),
    };

    // per-class modules and both theorem checks
    let mut class_records = Vec::new();
    let mut theorem_i = true;
    let mut theorem_ii = true;
    match scope {
        VerifyScope::BijectionOnly => {
            skipped.push("per_class (bijection-only scope)".to_string());
        }
        VerifyScope::Full => {
            // appearances[b] = (class index, multiplicity) of block b's simple
            let mut appearances: Vec<Vec<(usize, usize)>> =
                vec![Vec::new(); session.blocks.len()];
            for &ci in &involution_classes {
                let rep = group.classes[ci].representative;
                let cent = permgroup::centralizer(group, rep);
                let action = permgroup::coset_action(group, &cent);
                let gset = GSet::cosets(Arc::clone(group), &action, format!("G/C(t{ci})"));
                let module = gmodule::perm_module(&gset, ctx);
                if module.dim > session.cfg.module_cap {
                    return Err(Error::CapExceeded(session.cfg.module_cap));
                }
                let decd = decompose_on_gset(session, &gset, &module)?;
                let mut projective_components = Vec::new();
                for (si, s) in decd.dec.summands.iter().enumerate() {
                    if !decd.projective[si] {
                        continue;
                    }
                    let b = decd.block_of[si];
                    let binfo = &session.blocks[b];
                    // irreducible certificate: indecomposable + projective +
                    // defect-zero block membership; plus self-dual, mult 1
                    if !binfo.is_defect_zero
                        || !binfo.is_real
                        || s.multiplicity != 1
                        || !s.self_dual
                        || s.end_dim != 1
                    {
                        theorem_i = false;
                    }
                    appearances[b].push((ci, s.multiplicity));
                    projective_components.push(ProjectiveComponentRecord {
                        block: b,
                        dim: s.module.dim,
                        multiplicity: s.multiplicity,
                        self_dual: s.self_dual,
                    });
                }
                class_records.push(ClassRecord {
                    class_index: ci,
                    class_size: group.classes[ci].size(),
                    centralizer_order: group.classes[ci].centralizer_order,
                    module_dim: module.dim,
                    projective_components,
                });
            }
            // uniqueness: every real defect-zero simple in exactly one class
            for &bi in &real_dz {
                let apps = &appearances[bi];
                if apps.len() != 1 || apps[0].1 != 1 {
                    theorem_ii = false;
                }
            }
            // and positive-defect blocks contribute no projectives anywhere
            for (bi, apps) in appearances.iter().enumerate() {
                if !session.blocks[bi].is_defect_zero && !apps.is_empty() {
                    theorem_i = false;
                }
            }
        }
    }

    let pass = bijection_ok && theorem_i && theorem_ii;
    let verdicts = Verdicts {
        theorem_i,
        theorem_ii,
        bijection: bijection_ok,
        real_defect_zero_count: real_dz.len(),
        projective_component_count: projective_count,
        pass,
    };
    Ok(VerificationReport {
        group: session.name.clone(),
        order: group.order,
        field_degree: ctx.degree(),
        blocks: block_records,
        omega: omega_record,
        classes: class_records,
        verdicts,
        skipped,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// k[G/H] for a strongly embedded H: the trivial module once, every other
/// component a self-dual projective irreducible, pairwise non-isomorphic.
pub fn verify_strongly_embedded(
    session: &Session,
    sub: &SubgroupData,
) -> Result<EmbeddedReport> {
    let group = &session.group;
    if !permgroup::is_strongly_embedded(group, sub) {
        return Err(Error::NotStronglyEmbedded);
    }
    let action = permgroup::coset_action(group, sub);
    let gset = GSet::cosets(Arc::clone(group), &action, "G/H");
    let module = gmodule::perm_module(&gset, &session.ctx);
    let decd = decompose_on_gset(session, &gset, &module)?;
    let mut trivial_count = 0usize;
    let mut projective_count = 0usize;
    let mut pass = true;
    let mut components = Vec::new();
    for (si, s) in decd.dec.summands.iter().enumerate() {
        let is_trivial = s.module.dim == 1 && s.module.gens.iter().all(|g| g.is_identity());
        if is_trivial {
            trivial_count += s.multiplicity;
            components.push(ComponentRecord {
                dim: 1,
                multiplicity: s.multiplicity,
                projective: decd.projective[si],
                self_dual: s.self_dual,
                block: Some(decd.block_of[si]),
                end_dim: s.end_dim,
                residue_dim: s.residue_dim,
            });
            continue;
        }
        let binfo = &session.blocks[decd.block_of[si]];
        // each non-trivial component: projective, irreducible-certified,
        // self-dual, multiplicity 1 (distinct summand classes are pairwise
        // non-isomorphic by construction)
        if !decd.projective[si]
            || !binfo.is_defect_zero
            || !binfo.is_real
            || !s.self_dual
            || s.multiplicity != 1
            || s.end_dim != 1
        {
            pass = false;
        }
        projective_count += s.multiplicity;
        components.push(ComponentRecord {
            dim: s.module.dim,
            multiplicity: s.multiplicity,
            projective: decd.projective[si],
            self_dual: s.self_dual,
            block: Some(decd.block_of[si]),
            end_dim: s.end_dim,
            residue_dim: s.residue_dim,
        });
    }
    if trivial_count != 1 {
        pass = false;
    }
    Ok(EmbeddedReport {
        group: session.name.clone(),
        order: group.order,
        subgroup_order: sub.order,
        index: group.order / sub.order,
        strongly_embedded: true,
        module_dim: module.dim,
        trivial_count,
        projective_count,
        components,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Permutation;

    fn make_group(degree: usize, gens: &[&str]) -> Arc<GroupData> {
        let gens: Vec<Permutation> =
            gens.iter().map(|s| Permutation::parse_cycles(s, degree).unwrap()).collect();
        Arc::new(GroupData::enumerate(degree, gens, 200_000).unwrap())
    }

    #[test]
    fn verify_s3() {
        let g = make_group(3, &["(0 1)", "(0 1 2)"]);
        let session = Session::new(g, "S3", &Config::default()).unwrap();
        let report = verify_group(&session, VerifyScope::Full).unwrap();
        assert!(report.verdicts.pass, "{report:?}");
        assert_eq!(report.verdicts.real_defect_zero_count, 1);
        assert_eq!(report.verdicts.projective_component_count, 1);
        assert_eq!(report.omega.dim, 4);
        // the projective component has dimension 2
        let proj: Vec<_> =
            report.omega.components.iter().filter(|c| c.projective).collect();
        assert_eq!(proj.len(), 1);
        assert_eq!(proj[0].dim, 2);
        assert_eq!(proj[0].multiplicity, 1);
        // transposition class carries the projective; identity class none
        let id_class = report.classes.iter().find(|c| c.class_size == 1).unwrap();
        assert!(id_class.projective_components.is_empty());
        let transp = report.classes.iter().find(|c| c.class_size == 3).unwrap();
        assert_eq!(transp.projective_components.len(), 1);
        assert_eq!(transp.projective_components[0].dim, 2);
    }

    #[test]
    fn verify_s4_projective_free() {
        let g = make_group(4, &["(0 1)", "(0 1 2 3)"]);
        let session = Session::new(g, "S4", &Config::default()).unwrap();
        let report = verify_group(&session, VerifyScope::Full).unwrap();
        assert!(report.verdicts.pass, "{report:?}");
        assert_eq!(report.verdicts.real_defect_zero_count, 0);
        assert_eq!(report.verdicts.projective_component_count, 0);
        assert_eq!(report.omega.dim, 10);
        assert!(report.omega.components.iter().all(|c| !c.projective));
    }

    #[test]
    fn verify_c3_odd_order() {
        let g = make_group(3, &["(0 1 2)"]);
        let session = Session::new(g, "C3", &Config::default()).unwrap();
        let report = verify_group(&session, VerifyScope::Full).unwrap();
        assert!(report.verdicts.pass, "{report:?}");
        // kOmega = k_G, projective since |G| is odd; one real defect-zero block
        assert_eq!(report.omega.dim, 1);
        assert_eq!(report.verdicts.real_defect_zero_count, 1);
        assert_eq!(report.verdicts.projective_component_count, 1);
    }

    #[test]
    fn verify_a5() {
        let g = make_group(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        let session = Session::new(g, "A5", &Config::default()).unwrap();
        let report = verify_group(&session, VerifyScope::Full).unwrap();
        assert!(report.verdicts.pass, "{report:?}");
        assert_eq!(report.omega.dim, 16);
        assert_eq!(report.verdicts.real_defect_zero_count, 1);
        let proj: Vec<_> =
            report.omega.components.iter().filter(|c| c.projective).collect();
        assert_eq!(proj.len(), 1);
        assert_eq!(proj[0].dim, 4);
        assert_eq!(proj[0].multiplicity, 1);
    }

    #[test]
    fn strongly_embedded_a5_a4() {
        let g = make_group(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        let a4gens = [
            g.index_of(&Permutation::parse_cycles("(0 1 2)", 5).unwrap()).unwrap(),
            g.index_of(&Permutation::parse_cycles("(0 1)(2 3)", 5).unwrap()).unwrap(),
        ];
        let a4 = SubgroupData::generated_by(&g, &a4gens);
        let session = Session::new(Arc::clone(&g), "A5", &Config::default()).unwrap();
        let report = verify_strongly_embedded(&session, &a4).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.module_dim, 5);
        assert_eq!(report.trivial_count, 1);
        assert_eq!(report.projective_count, 1);
        assert!(report.components.iter().any(|c| c.dim == 4 && c.projective));
    }

    #[test]
    fn strongly_embedded_rejects_whole_group() {
        let g = make_group(3, &["(0 1)", "(0 1 2)"]);
        let whole = SubgroupData::from_members(&g, (0..6).collect());
        let session = Session::new(Arc::clone(&g), "S3", &Config::default()).unwrap();
        assert!(matches!(
            verify_strongly_embedded(&session, &whole),
            Err(Error::NotStronglyEmbedded)
        ));
    }

    #[test]
    fn field_degree_override_validation() {
        let g = make_group(3, &["(0 1)", "(0 1 2)"]);
        let mut cfg = Config::default();
        cfg.field_degree = Some(1); // below the splitting degree 2
        assert!(matches!(
            Session::new(Arc::clone(&g), "S3", &cfg),
            Err(Error::SplittingFieldTooSmall(_))
        ));
        cfg.field_degree = Some(4); // a multiple works
        let session = Session::new(g, "S3", &cfg).unwrap();
        let report = verify_group(&session, VerifyScope::Full).unwrap();
        assert!(report.verdicts.pass);
        assert_eq!(report.field_degree, 4);
    }
}
