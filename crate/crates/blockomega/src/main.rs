//! blockomega: 2-block tables, the involution-module bijection checks, the
//! symmetric-group combinatorics, and strongly-embedded verification.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 parse error, 3 cap
//! exceeded, 4 subgroup not strongly embedded.

use blockomega::config::Config;
use blockomega::error::Error;
use blockomega::permgroup::{self, GroupData, SubgroupData};
use blockomega::report::*;
use blockomega::theorem::{Session, VerifyScope};
use blockomega::{blocks, catalog, gf2m, symgroup, theorem};
use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "blockomega", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Generator file: first line `degree n`, then one generator per line
    /// in disjoint-cycle notation.
    #[arg(long)]
    gens: Option<String>,
    /// Seed for all randomized routines (default 0, or BLOCKOMEGA_SEED).
    #[arg(long)]
    seed: Option<u64>,
    /// Field extension degree override (must cover the splitting degree).
    #[arg(long)]
    field_degree: Option<u32>,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Group enumeration cap.
    #[arg(long, default_value_t = 200_000)]
    group_cap: usize,
    /// Module dimension cap for decompositions.
    #[arg(long, default_value_t = 2000)]
    module_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 2-block table (index, k(B), real, defect zero).
    Blocks {
        group: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run the bijection and uniqueness verification; emits a JSON report.
    Verify {
        group: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Symmetric-group combinatorics for a given n (<= 40).
    Sym {
        n: u32,
        /// Also run the block engine on S_n (n <= 7) and compare counts.
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Strongly-embedded subgroup verification of k[G/H].
    Embedded {
        group: String,
        /// Subgroup generator file (same format as --gens).
        #[arg(long)]
        subgroup: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded(_) => 3,
        Error::NotStronglyEmbedded => 4,
        Error::Parse(_) | Error::InvalidPermutation(_) | Error::DegreeOutOfRange(_) => 2,
        _ => 1,
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("BLOCKOMEGA_SEED").ok().and_then(|s| s.parse().ok())
}

fn build_config(opts: &CommonOpts) -> Config {
    Config {
        seed: opts.seed.or_else(env_seed).unwrap_or(0),
        group_cap: opts.group_cap,
        module_cap: opts.module_cap,
        field_degree: opts.field_degree,
        ..Config::default()
    }
}

fn load_group(name: &str, opts: &CommonOpts, cfg: &Config) -> Result<Arc<GroupData>, Error> {
    let (degree, gens) = match &opts.gens {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
            permgroup::parse_group_text(&text)?
        }
        None => catalog::catalog_group(name)?,
    };
    Ok(Arc::new(GroupData::enumerate(degree, gens, cfg.group_cap)?))
}

fn emit(out: &Option<String>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Blocks { group, opts } => {
            let cfg = build_config(&opts);
            let g = load_group(&group, &opts, &cfg)?;
            let session = Session::new(g, &group, &cfg)?;
            let rows: Vec<BlockTableRow> = session
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| BlockTableRow {
                    index: i,
                    k: b.k,
                    real: b.is_real,
                    defect_zero: b.is_defect_zero,
                })
                .collect();
            let mut text = format!(
                "group {} order {} field GF(2^{})\n{:<6} {:<5} {:<6} {}\n",
                group,
                session.group.order,
                session.ctx.degree(),
                "block",
                "k(B)",
                "real",
                "defect_zero"
            );
            for r in &rows {
                text.push_str(&format!(
                    "{:<6} {:<5} {:<6} {}\n",
                    r.index, r.k, r.real, r.defect_zero
                ));
            }
            emit(&opts.out, text.trim_end())?;
            Ok(0)
        }
        Command::Verify { group, opts } => {
            let cfg = build_config(&opts);
            let g = load_group(&group, &opts, &cfg)?;
            let session = Session::new(g, &group, &cfg)?;
            let report = theorem::verify_group(&session, VerifyScope::Full)?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Internal(e.to_string()))?;
            emit(&opts.out, &json)?;
            Ok(if report.verdicts.pass { 0 } else { 1 })
        }
        Command::Sym { n, cross_check, out, seed } => {
            if !(1..=40).contains(&n) {
                return Err(Error::Parse(format!("sym requires 1 <= n <= 40, got {n}")));
            }
            if cross_check && n > 7 {
                return Err(Error::Parse(format!(
                    "--cross-check requires n <= 7, got {n}"
                )));
            }
            let cfg = Config { seed: seed.or_else(env_seed).unwrap_or(0), ..Config::default() };
            let report = sym_report(n, cross_check, &cfg)?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Internal(e.to_string()))?;
            emit(&out, &json)?;
            Ok(0)
        }
        Command::Embedded { group, subgroup, opts } => {
            let cfg = build_config(&opts);
            let g = load_group(&group, &opts, &cfg)?;
            let text = std::fs::read_to_string(&subgroup)
                .map_err(|e| Error::Parse(format!("cannot read {subgroup}: {e}")))?;
            let (deg, sub_gens) = permgroup::parse_group_text(&text)?;
            if deg != g.degree {
                return Err(Error::Parse(format!(
                    "subgroup degree {deg} does not match group degree {}",
                    g.degree
                )));
            }
            let idx: Vec<u32> = sub_gens
                .iter()
                .map(|p| {
                    g.index_of(p).ok_or_else(|| {
                        Error::Parse("subgroup generator not in group".into())
                    })
                })
                .collect::<Result<_, _>>()?;
            let sub = SubgroupData::generated_by(&g, &idx);
            let session = Session::new(Arc::clone(&g), &group, &cfg)?;
            let report = theorem::verify_strongly_embedded(&session, &sub)?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Internal(e.to_string()))?;
            emit(&opts.out, &json)?;
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn sym_report(n: u32, cross_check: bool, cfg: &Config) -> Result<SymReport, Error> {
    let mut skipped = Vec::new();
    let blocks_list = symgroup::blocks_of_sn(n);
    let blocks: Vec<SymBlockRecord> = blocks_list
        .iter()
        .map(|(core, dz)| SymBlockRecord {
            core: core.parts().to_vec(),
            weight: (n - core.n()) / 2,
            defect_zero: *dz,
        })
        .collect();
    let triangular_m = (1..=n).find(|m| m * (m + 1) / 2 == n);
    let has_defect_zero = triangular_m.is_some();
    let (character_value, involution, inner_product, odd_centralizer) = match triangular_m {
        None => (None, None, None, None),
        Some(m) => {
            let chi = symgroup::mn_character(
                &symgroup::Partition::staircase(m),
                &symgroup::diagonal_hooks(m),
            );
            let spec = symgroup::involution_spec(m)?;
            let ip = if m * (m + 1) / 2 <= 12 {
                let p = symgroup::inner_product_with_trivial(m, cfg)?;
                Some(SymInnerProduct {
                    sum: p.sum,
                    centralizer_order: p.centralizer_order,
                    value: p.value,
                })
            } else {
                skipped.push(format!("inner_product (n={n} beyond the enumeration bound 12)"));
                None
            };
            (
                Some(chi),
                Some(SymInvolutionRecord {
                    transpositions: spec.transpositions,
                    fixed_points: spec.fixed_points,
                    diagonal_part_count: spec.diagonal_part_count,
                    floor_formula_part_count: spec.floor_formula_part_count,
                    formulas_agree: spec.formulas_agree,
                }),
                ip,
                Some(symgroup::odd_centralizer_check(m)),
            )
        }
    };
    let cross = if cross_check {
        let (deg, gens) = catalog::catalog_group(&format!("S{n}"))?;
        let g = Arc::new(GroupData::enumerate(deg, gens, cfg.group_cap)?);
        let ctx = gf2m::field_ctx(gf2m::splitting_degree(&g))?;
        let center = blocks::center_structure(&g, &ctx);
        let infos = blocks::classify_blocks(&g, &center, cfg)?;
        let engine_count = infos.iter().filter(|b| b.is_defect_zero).count();
        let predicted = usize::from(has_defect_zero);
        Some(SymCrossCheck {
            engine_defect_zero_count: engine_count,
            predicted_defect_zero_count: predicted,
            agree: engine_count == predicted,
        })
    } else {
        None
    };
    Ok(SymReport {
        n,
        blocks,
        has_defect_zero,
        triangular_m,
        character_value,
        involution,
        inner_product,
        odd_centralizer,
        cross_check: cross,
        skipped,
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
