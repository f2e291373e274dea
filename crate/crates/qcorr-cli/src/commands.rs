//! Implementations of the gen / eval / verify subcommands.

use crate::report::{self, ReportRecord};
use crate::stateio;
use crate::{Cli, EvalArgs, GenArgs, OutFormat, VerifyArgs};
use anyhow::{bail, Context, Result};
use qcorr::tolerance;
use qcorr::{
    among_cluster_information, biorthogonal_mixture, correlation_information, monoorthogonal_mixture,
    mutual_information, named_state, partition, product_state, random_density, ssa_equality_family,
    ssa_excess, verify_biorthogonal_mixing, verify_binary_chain, verify_cluster_additivity_all_partitions,
    verify_entropy_decomposition, verify_excess_pairing, verify_implied_biorthogonality,
    verify_monoorthogonal_mixing, verify_product_discard, verify_ssa, verify_ssa_equality_family,
    verify_subadditivity, verify_subadditivity_equality, von_neumann_entropy,
    within_cluster_information, BlockAllocation, DensityMatrix, LogBase, Mixture, NamedState, Rng,
    SplitTree, VerificationReport,
};
use rayon::prelude::*;
use serde::Serialize;
use std::fs;
use std::process::ExitCode;

fn require_dims(args_dims: &Option<Vec<usize>>, what: &str) -> Result<Vec<usize>> {
    args_dims
        .clone()
        .ok_or_else(|| anyhow::anyhow!("--dims is required for {what}"))
}

fn check_cap(dims: &[usize], cap: usize) -> Result<()> {
    let total: usize = dims.iter().product();
    if total > cap {
        bail!("total dimension {total} exceeds --max-dim {cap}");
    }
    Ok(())
}

fn uniform_weights(k: usize) -> Vec<f64> {
    vec![1.0 / k as f64; k]
}

fn mixture_weights(args: &Option<Vec<f64>>, k: usize) -> Result<Vec<f64>> {
    match args {
        Some(w) => {
            if w.len() != k {
                bail!("{} weights given for {} classes", w.len(), k);
            }
            Ok(w.clone())
        }
        None => Ok(uniform_weights(k)),
    }
}

fn bipartite_alloc(args_blocks: &Option<Vec<usize>>, args_blocks_b: &Option<Vec<usize>>) -> Result<BlockAllocation> {
    let blocks = args_blocks
        .clone()
        .ok_or_else(|| anyhow::anyhow!("--blocks is required for this family"))?;
    let blocks_b = args_blocks_b.clone().unwrap_or_else(|| blocks.clone());
    Ok(BlockAllocation::bipartite(blocks, blocks_b)?)
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

pub fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<ExitCode> {
    let base: LogBase = cli.log_base.into();
    let rho = build_state(cli, args)?;
    let text = stateio::render_state(&rho);
    match &args.out_file {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    let rank = rho.spectral().rank(tolerance::RANK_CUTOFF);
    eprintln!(
        "dims: {:?}  rank: {}  entropy: {:.12} {}",
        rho.dims(),
        rank,
        von_neumann_entropy(&rho, base),
        base
    );
    Ok(ExitCode::SUCCESS)
}

fn build_state(cli: &Cli, args: &GenArgs) -> Result<DensityMatrix> {
    let mut rng = Rng::new(cli.seed);
    match args.family.as_str() {
        "bell" => Ok(named_state(&NamedState::Bell)?),
        "ghz" => Ok(named_state(&NamedState::Ghz)?),
        "w3" => Ok(named_state(&NamedState::W3)?),
        "max-mixed" => {
            let dims = require_dims(&args.dims, "max-mixed")?;
            check_cap(&dims, cli.max_dim)?;
            Ok(named_state(&NamedState::MaxMixed(dims))?)
        }
        "random" => {
            let dims = require_dims(&args.dims, "random")?;
            check_cap(&dims, cli.max_dim)?;
            let total: usize = dims.iter().product();
            Ok(random_density(&dims, args.rank.unwrap_or(total), &mut rng)?)
        }
        "pure" => {
            let dims = require_dims(&args.dims, "pure")?;
            check_cap(&dims, cli.max_dim)?;
            Ok(random_density(&dims, 1, &mut rng)?)
        }
        "biorthogonal" => {
            let dims = require_dims(&args.dims, "biorthogonal")?;
            if dims.len() != 2 {
                bail!("biorthogonal families are bipartite; got dims {dims:?}");
            }
            check_cap(&dims, cli.max_dim)?;
            let alloc = bipartite_alloc(&args.blocks, &args.blocks_b)?;
            let weights = mixture_weights(&args.weights, alloc.n_classes())?;
            let mix = biorthogonal_mixture((dims[0], dims[1]), &alloc, &weights, &mut rng)?;
            Ok(mix.mix())
        }
        "monoorthogonal" => {
            let dims = require_dims(&args.dims, "monoorthogonal")?;
            if dims.len() != 2 {
                bail!("monoorthogonal families are bipartite; got dims {dims:?}");
            }
            check_cap(&dims, cli.max_dim)?;
            let blocks = args
                .blocks
                .clone()
                .ok_or_else(|| anyhow::anyhow!("--blocks is required for monoorthogonal"))?;
            let alloc = BlockAllocation::single(blocks)?;
            let weights = mixture_weights(&args.weights, alloc.n_classes())?;
            let mix = monoorthogonal_mixture((dims[0], dims[1]), &alloc, &weights, &mut rng)?;
            Ok(mix.mix())
        }
        "ssa-equality" => {
            let dims = require_dims(&args.dims, "ssa-equality")?;
            if dims.len() != 3 {
                bail!("the ssa-equality family is tripartite; got dims {dims:?}");
            }
            check_cap(&dims, cli.max_dim)?;
            let alloc = bipartite_alloc(&args.blocks, &args.blocks_b)?;
            let weights = mixture_weights(&args.weights, alloc.n_classes())?;
            let (mixed, _) = ssa_equality_family(
                (dims[0], dims[1], dims[2]),
                &alloc,
                &weights,
                &mut rng,
                !args.shared_third,
            )?;
            Ok(mixed)
        }
        other => bail!("unknown family '{other}'"),
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EvalRecord {
    quantity: String,
    value: f64,
    log_base: String,
    state: String,
}

pub fn cmd_eval(cli: &Cli, args: &EvalArgs) -> Result<ExitCode> {
    let base: LogBase = cli.log_base.into();
    let text = fs::read_to_string(&args.state)
        .with_context(|| format!("reading {}", args.state.display()))?;
    let rho = stateio::parse_state(&text, cli.max_dim)
        .with_context(|| format!("in {}", args.state.display()))?;
    let (label, value) = evaluate_quantity(&rho, &args.quantity, base)?;
    println!("{value:.14e}");
    if let Some(path) = &args.out_file {
        let record = EvalRecord {
            quantity: label,
            value,
            log_base: base.to_string(),
            state: args.state.display().to_string(),
        };
        let rendered = match cli.out {
            OutFormat::Json => {
                let mut s = serde_json::to_string_pretty(&record)?;
                s.push('\n');
                s
            }
            OutFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["quantity", "value", "log_base", "state"])?;
                w.write_record([
                    record.quantity.as_str(),
                    &record.value.to_string(),
                    &record.log_base,
                    &record.state,
                ])?;
                String::from_utf8(w.into_inner()?)?
            }
        };
        fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn evaluate_quantity(
    rho: &DensityMatrix,
    tokens: &[String],
    base: LogBase,
) -> Result<(String, f64)> {
    let n = rho.n_subsystems();
    let arity = |expected: usize| -> Result<()> {
        if tokens.len() != expected + 1 {
            bail!(
                "quantity '{}' takes {} argument(s), got {}",
                tokens[0],
                expected,
                tokens.len() - 1
            );
        }
        Ok(())
    };
    match tokens[0].as_str() {
        "entropy" => {
            arity(0)?;
            Ok(("entropy".into(), von_neumann_entropy(rho, base)))
        }
        "corr" => {
            arity(0)?;
            Ok(("corr".into(), correlation_information(rho, base)?))
        }
        "mutual" => {
            arity(2)?;
            let a = partition::parse_cluster(&tokens[1])?;
            let b = partition::parse_cluster(&tokens[2])?;
            let v = mutual_information(rho, &a, &b, base)?;
            Ok((format!("mutual {} {}", tokens[1], tokens[2]), v))
        }
        "within" => {
            arity(1)?;
            let c = partition::parse_cluster(&tokens[1])?;
            let v = within_cluster_information(rho, &c, base)?;
            Ok((format!("within {}", tokens[1]), v))
        }
        "among" => {
            arity(1)?;
            let p = partition::parse_partition(&tokens[1], n)?;
            let v = among_cluster_information(rho, &p, base)?;
            Ok((format!("among {}", tokens[1]), v))
        }
        "excess" => {
            arity(3)?;
            let a = partition::parse_cluster(&tokens[1])?;
            let b = partition::parse_cluster(&tokens[2])?;
            let d = partition::parse_cluster(&tokens[3])?;
            let v = ssa_excess(rho, &a, &b, &d, base)?;
            Ok((
                format!("excess {} {} {}", tokens[1], tokens[2], tokens[3]),
                v,
            ))
        }
        other => bail!(
            "unknown quantity '{other}' (expected entropy | corr | mutual | within | among | excess)"
        ),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

pub fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode> {
    let base: LogBase = cli.log_base.into();
    let reports = run_campaign(cli, args, base)?;
    let timestamp = report::campaign_timestamp();
    let records: Vec<ReportRecord> = reports
        .iter()
        .map(|r| ReportRecord::from_report(r, &timestamp))
        .collect();
    let rendered = match cli.out {
        OutFormat::Json => report::render_json(&records)?,
        OutFormat::Csv => report::render_csv(&records)?,
    };

    let mut human = String::new();
    for r in &records {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let seed = r.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        human.push_str(&format!(
            "{status} {:<36} residual={:.3e} tol={:.1e}{seed}\n",
            r.check, r.residual, r.tolerance
        ));
    }
    let passed = records.iter().filter(|r| r.passed).count();
    let failed = records.len() - passed;
    human.push_str(&format!(
        "checks: {} run, {passed} passed, {failed} failed\n",
        records.len()
    ));

    match &args.out_file {
        Some(path) => {
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?;
            print!("{human}");
        }
        None => {
            eprint!("{human}");
            print!("{rendered}");
        }
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_campaign(cli: &Cli, args: &VerifyArgs, base: LogBase) -> Result<Vec<VerificationReport>> {
    if let Some(path) = &args.state {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let rho = stateio::parse_state(&text, cli.max_dim)
            .with_context(|| format!("in {}", path.display()))?;
        return state_check_reports(cli, args, &rho, base, None);
    }
    let batches: Vec<Vec<VerificationReport>> = (0..cli.samples)
        .into_par_iter()
        .map(|i| run_seeded(cli, args, base, cli.seed.wrapping_add(i as u64)))
        .collect::<Result<_>>()?;
    Ok(batches.into_iter().flatten().collect())
}

/// All `(a, b, discard)` selections with `a`, `b` disjoint nonempty clusters
/// and `discard` a nonempty proper subset of `b`.
pub fn admissible_triples(n: usize) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let to_cluster = |mask: usize| -> Vec<usize> {
        (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
    };
    let mut out = Vec::new();
    for a_mask in 1usize..(1 << n) {
        for b_mask in 1usize..(1 << n) {
            if a_mask & b_mask != 0 {
                continue;
            }
            for d_mask in 1usize..(1 << n) {
                if d_mask & b_mask != d_mask || d_mask == b_mask {
                    continue;
                }
                out.push((to_cluster(a_mask), to_cluster(b_mask), to_cluster(d_mask)));
            }
        }
    }
    out
}

fn state_check_reports(
    cli: &Cli,
    args: &VerifyArgs,
    rho: &DensityMatrix,
    base: LogBase,
    seed: Option<u64>,
) -> Result<Vec<VerificationReport>> {
    let tol = cli.tol;
    let n = rho.n_subsystems();
    let attach = |mut reports: Vec<VerificationReport>| -> Vec<VerificationReport> {
        if let Some(s) = seed {
            for r in reports.iter_mut() {
                r.seed = Some(s);
            }
        }
        reports
    };
    let reports = match args.check.as_str() {
        "subadditivity" => {
            if args.product {
                vec![verify_subadditivity_equality(rho, base, tol)?]
            } else {
                vec![verify_subadditivity(rho, base, tol)?]
            }
        }
        "cluster-additivity" => verify_cluster_additivity_all_partitions(rho, base, tol)?,
        "binary-chain" => {
            let mut out = vec![verify_binary_chain(rho, &SplitTree::caterpillar(n)?, base, tol)?];
            let balanced = SplitTree::balanced(n)?;
            if balanced != SplitTree::caterpillar(n)? {
                out.push(verify_binary_chain(rho, &balanced, base, tol)?);
            }
            out
        }
        "ssa" => {
            let mut out = Vec::new();
            for (a, b, d) in admissible_triples(n) {
                out.push(verify_ssa(rho, &a, &b, &d, base, tol)?);
            }
            out
        }
        "excess-pairing" => vec![verify_excess_pairing(rho, base, tol)?],
        "product-discard" => {
            let split = args.split_at.unwrap_or(n / 2);
            product_discard_reports(rho, split, base, tol)?
        }
        other => bail!("check '{other}' does not accept a state file target"),
    };
    Ok(attach(reports))
}

fn product_discard_reports(
    rho: &DensityMatrix,
    split: usize,
    base: LogBase,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let n = rho.n_subsystems();
    if split < 2 || split >= n {
        bail!("--split-at must lie in 2..{n} so that the default clusters are nonempty");
    }
    let k_cluster: Vec<usize> = (1..split).collect();
    let l_cluster: Vec<usize> = (split..=n).collect();
    let tail: Vec<usize> = (split + 1..=n).collect();
    let mut out = Vec::new();
    // every nonempty subset of the tail is a discard variant
    for mask in 1usize..(1 << tail.len()) {
        let removed: Vec<usize> = tail
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &s)| s)
            .collect();
        let l_prime: Vec<usize> = l_cluster
            .iter()
            .copied()
            .filter(|s| !removed.contains(s))
            .collect();
        out.push(verify_product_discard(
            rho, split, &k_cluster, &l_cluster, &l_prime, base, tol,
        )?);
    }
    Ok(out)
}

fn run_seeded(
    cli: &Cli,
    args: &VerifyArgs,
    base: LogBase,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    let tol = cli.tol;
    let mut rng = Rng::new(seed);
    match args.check.as_str() {
        "subadditivity" | "cluster-additivity" | "binary-chain" | "ssa" | "excess-pairing" => {
            let dims = args.dims.clone().unwrap_or_else(|| vec![2, 2, 2]);
            check_cap(&dims, cli.max_dim)?;
            let rho = if args.product && args.check == "subadditivity" {
                let factors: Vec<DensityMatrix> = dims
                    .iter()
                    .map(|&d| random_density(&[d], d, &mut rng))
                    .collect::<qcorr::Result<_>>()?;
                product_state(&factors)?
            } else {
                let total: usize = dims.iter().product();
                random_density(&dims, args.rank.unwrap_or(total), &mut rng)?
            };
            state_check_reports(cli, args, &rho, base, Some(seed))
        }
        "product-discard" => {
            let dims = args.dims.clone().unwrap_or_else(|| vec![2, 2, 2, 2]);
            check_cap(&dims, cli.max_dim)?;
            let n = dims.len();
            let split = args.split_at.unwrap_or(n / 2);
            if split < 1 || split >= n {
                bail!("--split-at must lie in 1..{n}");
            }
            let front_dims = &dims[..split];
            let back_dims = &dims[split..];
            let front = random_density(front_dims, front_dims.iter().product(), &mut rng)?;
            let back = random_density(back_dims, back_dims.iter().product(), &mut rng)?;
            let rho = product_state(&[front, back])?;
            let mut reports = product_discard_reports(&rho, split, base, tol)?;
            for r in reports.iter_mut() {
                r.seed = Some(seed);
            }
            Ok(reports)
        }
        "biorthogonal-mixing" => {
            let dims = args.dims.clone().unwrap_or_else(|| vec![4, 4]);
            if dims.len() != 2 {
                bail!("biorthogonal-mixing needs bipartite dims, got {dims:?}");
            }
            check_cap(&dims, cli.max_dim)?;
            let mixture = if args.violate_premise {
                unconstrained_mixture(&dims, args, &mut rng)?
            } else {
                let alloc = bipartite_alloc(&args.blocks, &args.blocks_b)?;
                let weights = mixture_weights(&args.weights, alloc.n_classes())?;
                biorthogonal_mixture((dims[0], dims[1]), &alloc, &weights, &mut rng)?
            };
            Ok(vec![verify_biorthogonal_mixing(&mixture, base, tol)?.with_seed(seed)])
        }
        "monoorthogonal-mixing" => {
            let dims = args.dims.clone().unwrap_or_else(|| vec![4, 3]);
            if dims.len() != 2 {
                bail!("monoorthogonal-mixing needs bipartite dims, got {dims:?}");
            }
            check_cap(&dims, cli.max_dim)?;
            let mixture = if args.violate_premise {
                unconstrained_mixture(&dims, args, &mut rng)?
            } else {
                let blocks = args
                    .blocks
                    .clone()
                    .ok_or_else(|| anyhow::anyhow!("--blocks is required for monoorthogonal-mixing"))?;
                let alloc = BlockAllocation::single(blocks)?;
                let weights = mixture_weights(&args.weights, alloc.n_classes())?;
                monoorthogonal_mixture((dims[0], dims[1]), &alloc, &weights, &mut rng)?
            };
            Ok(vec![verify_monoorthogonal_mixing(&mixture, base, tol)?.with_seed(seed)])
        }
        "entropy-decomposition" => {
            let dims = args.dims.clone().unwrap_or_else(|| vec![2]);
            check_cap(&dims, cli.max_dim)?;
            let k = args.components.unwrap_or(2);
            let weights = match &args.weights {
                Some(w) => mixture_weights(&args.weights, w.len())?,
                None => random_weights(k, &mut rng),
            };
            let total: usize = dims.iter().product();
            let components: Vec<DensityMatrix> = (0..weights.len())
                .map(|_| random_density(&dims, total, &mut rng))
                .collect::<qcorr::Result<_>>()?;
            let mixture = Mixture::new(weights, components)?;
            Ok(vec![verify_entropy_decomposition(&mixture, base, tol)?.with_seed(seed)])
        }
        "implied-biorthogonality" => {
            let dims = args.dims.clone().unwrap_or_else(|| vec![4, 4, 2]);
            if dims.len() != 3 {
                bail!("implied-biorthogonality needs tripartite dims, got {dims:?}");
            }
            check_cap(&dims, cli.max_dim)?;
            let mixture = if args.violate_premise {
                unconstrained_mixture(&dims, args, &mut rng)?
            } else {
                let alloc = bipartite_alloc(&args.blocks, &args.blocks_b)?;
                let weights = mixture_weights(&args.weights, alloc.n_classes())?;
                let (_, mixture) = ssa_equality_family(
                    (dims[0], dims[1], dims[2]),
                    &alloc,
                    &weights,
                    &mut rng,
                    alloc.n_classes() >= 2,
                )?;
                mixture
            };
            Ok(vec![verify_implied_biorthogonality(&mixture, base, tol)?.with_seed(seed)])
        }
        "ssa-equality-family" => {
            let dims = args.dims.clone().unwrap_or_else(|| vec![4, 4, 2]);
            if dims.len() != 3 {
                bail!("ssa-equality-family needs tripartite dims, got {dims:?}");
            }
            check_cap(&dims, cli.max_dim)?;
            let alloc = bipartite_alloc(&args.blocks, &args.blocks_b)?;
            let weights = mixture_weights(&args.weights, alloc.n_classes())?;
            Ok(verify_ssa_equality_family(
                (dims[0], dims[1], dims[2]),
                &alloc,
                &weights,
                &mut rng,
                base,
                tol,
            )?)
        }
        other => bail!(
            "unknown check '{other}' (expected subadditivity | cluster-additivity | binary-chain \
             | ssa | excess-pairing | product-discard | biorthogonal-mixing | \
             monoorthogonal-mixing | entropy-decomposition | implied-biorthogonality | \
             ssa-equality-family)"
        ),
    }
}

fn random_weights(k: usize, rng: &mut Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| 0.1 + rng.uniform()).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / sum).collect()
}

/// Negative-control generator: components drawn on the full space, so block
/// orthogonality premises fail.
fn unconstrained_mixture(dims: &[usize], args: &VerifyArgs, rng: &mut Rng) -> Result<Mixture> {
    let k = args
        .weights
        .as_ref()
        .map(|w| w.len())
        .or_else(|| args.blocks.as_ref().map(|b| b.len()))
        .unwrap_or(2);
    let weights = mixture_weights(&args.weights, k)?;
    let total: usize = dims.iter().product();
    let components: Vec<DensityMatrix> = (0..k)
        .map(|_| random_density(dims, total, rng))
        .collect::<qcorr::Result<_>>()?;
    Ok(Mixture::new(weights, components)?)
}
