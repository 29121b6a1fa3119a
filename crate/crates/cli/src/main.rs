//! Command-line front end.
//!
//! Every subcommand writes a JSON report (schema 1) into the output
//! directory and prints a one-line summary. Exit status: 0 when all
//! verdicts hold, 1 on failed or undecided verdicts and internal errors,
//! 2 on usage or configuration errors. Reports contain no timestamps:
//! identical configuration and seed give byte-identical files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qsolovay_cli::config::RunConfig;
use qsolovay_cli::suite;
use qsolovay_core::bits::{
    dprime_check, interleave_decode, interleave_encode, repetition_encode, to_binary_expansion,
    BitString,
};
use qsolovay_core::curve::{
    build_hoelder_polyline, build_lipschitz, certify_modulus, extract_witness, smooth_hoelder,
    LeftCut, ModulusClaim, PiecewiseCurve,
};
use qsolovay_core::files::{build_witness, WitnessDef};
use qsolovay_core::rational::{format_rational, nat, parse_rational, Rational};
use qsolovay_core::witness::{
    check_witness, compose, h1_witness, join, ml_bound_dominated, ml_test_level, reflexive_witness,
    scale_witness, QSWitness, WitnessFunction,
};
use qsolovay_core::Sampler;

#[derive(Parser)]
#[command(
    name = "qsolovay",
    version,
    about = "Exact checks and constructions for Solovay and quasi-Solovay reducibility between left-c.e. reals"
)]
struct Cli {
    /// JSON run configuration (seeds, depths, enclosure widths).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the configured stage depth.
    #[arg(long, global = true)]
    depth: Option<u64>,
    /// Override the configured sampling seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the configured report directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bit-level encodings: expansion, pair membership, interleaving,
    /// repetition.
    Encode {
        #[command(subcommand)]
        op: EncodeOp,
    },
    /// Truncated halting probabilities of a finite prefix-free machine.
    Omega {
        /// Machine id (built-in: toy34).
        #[arg(long, default_value = "toy34")]
        machine: String,
        /// T as "1/k": each halting program p contributes 2^(-|p|/T).
        #[arg(long, alias = "T", default_value = "1/1")]
        t: String,
        /// Also report the n-fold interleaving tower of the T = 1 value.
        #[arg(long)]
        tower: Option<u32>,
        /// Report the shortest halting program producing these bits.
        #[arg(long)]
        profile: Option<String>,
    },
    /// Evaluate a witness inequality at seeded sample points below beta.
    WitnessCheck {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Witness: "reflexive", "h1:FIXTURE", or a JSON definition file.
        #[arg(long)]
        witness: String,
        #[arg(long)]
        samples: Option<usize>,
        /// Lower end of the sampling range (defaults to the witness range
        /// or 0).
        #[arg(long)]
        lo: Option<String>,
    },
    /// Composition, join and scaling at the constants level.
    WitnessAlgebra {
        /// "d1,l1,d2,l2": compose witnesses with these constants.
        #[arg(long)]
        compose: Option<String>,
        /// "c0,l0,c1,l1": join witnesses with these constants.
        #[arg(long)]
        join: Option<String>,
        /// "p/q,d,l": scale a witness with constants (d, l) by p/q.
        #[arg(long)]
        scale: Option<String>,
    },
    /// One interval-cover test level with its exact measure verdict.
    MlTest {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        m: u32,
    },
    /// Build the slope-bounded polyline of an ell = 1 witness.
    BuildLipschitz {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        witness: String,
        #[arg(long, default_value_t = 50)]
        steps: u64,
        /// Also emit a CSV plot sample.
        #[arg(long)]
        csv: bool,
    },
    /// Build the root-cone polyline; optionally smooth it into power arcs.
    BuildHoelder {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        witness: String,
        #[arg(long, default_value_t = 50)]
        steps: u64,
        /// "d,l": replace segments by arcs for these constants.
        #[arg(long)]
        smooth: Option<String>,
        #[arg(long)]
        csv: bool,
    },
    /// Round-trip: build a curve, then extract a witness value at q.
    Extract {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        witness: String,
        #[arg(long, default_value_t = 50)]
        steps: u64,
        #[arg(long)]
        q: String,
        /// Constant for the verification |alpha - g(q)| <= L|beta - q|.
        #[arg(long, default_value_t = 2)]
        lipschitz: u64,
    },
    /// Certify a continuity claim on a serialized curve.
    Certify {
        /// Curve JSON produced by the build subcommands.
        #[arg(long)]
        curve: PathBuf,
        /// "lipschitz:L", "hoelder:d,l", "anchored-lipschitz:L" or
        /// "anchored-hoelder:d,l" (L rational, d/l naturals).
        #[arg(long)]
        claim: String,
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Run the full verification battery and write one report per
    /// criterion.
    Suite,
}

#[derive(Subcommand)]
enum EncodeOp {
    /// Terminating binary expansion of a dyadic in [0,1), padded to len.
    Expand {
        value: String,
        #[arg(long, default_value_t = 16)]
        len: usize,
    },
    /// Complementary-pair membership and pair count of a dyadic in (0,1).
    Dprime { value: String },
    /// Interleave bits with their complements.
    Interleave { bits: String },
    /// Inverse of interleave.
    Deinterleave { bits: String },
    /// Repetition-code value of a bit string.
    Repetition { bits: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("configuration error: {:#}", e);
            return ExitCode::from(2);
        }
    };
    match run(cli, &cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(depth) = cli.depth {
        cfg.depth = depth;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out_dir = out.display().to_string();
    }
    Ok(cfg)
}

fn write_report(cfg: &RunConfig, name: &str, payload: &Value) -> Result<PathBuf> {
    let dir = Path::new(&cfg.out_dir);
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating report directory {}", dir.display()))?;
    let path = dir.join(format!("{}.json", name));
    let mut text = serde_json::to_string_pretty(payload)?;
    text.push('\n');
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn envelope(cfg: &RunConfig, command: &str, holds: bool, payload: Value) -> Value {
    json!({
        "schema": 1,
        "command": command,
        "seed": cfg.seed,
        "holds": holds,
        "report": payload,
    })
}

fn resolve_witness(cfg: &RunConfig, spec: &str) -> Result<QSWitness> {
    if spec == "reflexive" {
        return Ok(reflexive_witness());
    }
    if let Some(label) = spec.strip_prefix("h1:") {
        let alpha = cfg.fixture(label)?;
        return Ok(h1_witness(&alpha, cfg.bit_depth)?);
    }
    let text = std::fs::read_to_string(spec)
        .with_context(|| format!("reading witness definition {}", spec))?;
    let def: WitnessDef = serde_json::from_str(&text)?;
    Ok(build_witness(&def, &cfg.fixtures()?, cfg.bit_depth)?)
}

fn parse_naturals(spec: &str, n: usize, what: &str) -> Result<Vec<u64>> {
    let parts: Vec<u64> = spec
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("parsing {} constants {:?}", what, spec))?;
    if parts.len() != n {
        bail!(
            "{} needs {} comma-separated naturals, got {:?}",
            what,
            n,
            spec
        );
    }
    Ok(parts)
}

fn parse_claim(spec: &str) -> Result<ModulusClaim> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("claim must look like kind:constants, got {:?}", spec))?;
    match kind {
        "lipschitz" => Ok(ModulusClaim::Lipschitz {
            l: parse_rational(rest)?,
        }),
        "anchored-lipschitz" => Ok(ModulusClaim::AnchoredLipschitz {
            l: parse_rational(rest)?,
        }),
        "hoelder" => {
            let c = parse_naturals(rest, 2, "hoelder")?;
            Ok(ModulusClaim::Hoelder {
                d: c[0],
                ell: c[1] as u32,
            })
        }
        "anchored-hoelder" => {
            let c = parse_naturals(rest, 2, "anchored-hoelder")?;
            Ok(ModulusClaim::AnchoredHoelder {
                d: c[0],
                ell: c[1] as u32,
            })
        }
        other => bail!("unknown claim kind {:?}", other),
    }
}

fn run(cli: Cli, cfg: &RunConfig) -> Result<bool> {
    match cli.command {
        Command::Encode { op } => cmd_encode(cfg, op),
        Command::Omega {
            machine,
            t,
            tower,
            profile,
        } => cmd_omega(cfg, &machine, &t, tower, profile.as_deref()),
        Command::WitnessCheck {
            alpha,
            beta,
            witness,
            samples,
            lo,
        } => cmd_witness_check(cfg, &alpha, &beta, &witness, samples, lo.as_deref()),
        Command::WitnessAlgebra {
            compose,
            join,
            scale,
        } => cmd_witness_algebra(cfg, compose.as_deref(), join.as_deref(), scale.as_deref()),
        Command::MlTest { k, l, m } => cmd_ml_test(cfg, k, l, m),
        Command::BuildLipschitz {
            alpha,
            beta,
            witness,
            steps,
            csv,
        } => cmd_build(cfg, &alpha, &beta, &witness, steps, None, csv, true),
        Command::BuildHoelder {
            alpha,
            beta,
            witness,
            steps,
            smooth,
            csv,
        } => cmd_build(
            cfg,
            &alpha,
            &beta,
            &witness,
            steps,
            smooth.as_deref(),
            csv,
            false,
        ),
        Command::Extract {
            alpha,
            beta,
            witness,
            steps,
            q,
            lipschitz,
        } => cmd_extract(cfg, &alpha, &beta, &witness, steps, &q, lipschitz),
        Command::Certify {
            curve,
            claim,
            pairs,
        } => cmd_certify(cfg, &curve, &claim, pairs),
        Command::Suite => cmd_suite(cfg),
    }
}

fn cmd_encode(cfg: &RunConfig, op: EncodeOp) -> Result<bool> {
    let (name, payload) = match op {
        EncodeOp::Expand { value, len } => {
            let q = parse_rational(&value)?;
            let bits = to_binary_expansion(&q, len)?;
            (
                "encode_expand",
                json!({ "value": format_rational(&q), "len": len, "bits": bits.to_string() }),
            )
        }
        EncodeOp::Dprime { value } => {
            let q = parse_rational(&value)?;
            let chk = dprime_check(&q)?;
            (
                "encode_dprime",
                json!({ "value": format_rational(&q), "member": chk.member, "k": chk.k }),
            )
        }
        EncodeOp::Interleave { bits } => {
            let b: BitString = bits.parse()?;
            let enc = interleave_encode(&b);
            (
                "encode_interleave",
                json!({
                    "bits": b.to_string(),
                    "encoded": enc.to_string(),
                    "value": format_rational(&enc.value()),
                }),
            )
        }
        EncodeOp::Deinterleave { bits } => {
            let b: BitString = bits.parse()?;
            let dec = interleave_decode(&b)?;
            (
                "encode_deinterleave",
                json!({ "bits": b.to_string(), "decoded": dec.to_string() }),
            )
        }
        EncodeOp::Repetition { bits } => {
            let b: BitString = bits.parse()?;
            let v = repetition_encode(&b)?;
            (
                "encode_repetition",
                json!({ "bits": b.to_string(), "value": format_rational(&v) }),
            )
        }
    };
    let path = write_report(cfg, name, &envelope(cfg, name, true, payload.clone()))?;
    println!("{} -> {}", name, path.display());
    println!("{}", payload);
    Ok(true)
}

fn cmd_omega(
    cfg: &RunConfig,
    machine_id: &str,
    t: &str,
    tower: Option<u32>,
    profile: Option<&str>,
) -> Result<bool> {
    let machines = cfg.machines()?;
    let machine = machines
        .get(machine_id)
        .ok_or_else(|| anyhow!("unknown machine {:?}", machine_id))?;
    let t: Rational = parse_rational(t)?;
    let value = machine.omega_t(&t)?;
    let mut payload = json!({
        "machine": machine_id,
        "T": format_rational(&t),
        "omega_T": format_rational(&value),
    });
    if let Some(n) = tower {
        let real = machine.omega_tower(n, qsolovay_core::DEFAULT_COERCE_BITS)?;
        payload["tower"] = json!({
            "n": n,
            "limit": format_rational(real.limit_or_err()?),
            "stage_8": format_rational(&real.stage(8)),
        });
    }
    if let Some(bits) = profile {
        let target: BitString = bits.parse()?;
        payload["profile"] = json!({
            "target": bits,
            "shortest_halting_program": machine.complexity_profile(&target),
        });
    }
    let path = write_report(cfg, "omega", &envelope(cfg, "omega", true, payload.clone()))?;
    println!("omega_T({}) = {}", machine_id, format_rational(&value));
    println!("report -> {}", path.display());
    Ok(true)
}

fn cmd_witness_check(
    cfg: &RunConfig,
    alpha: &str,
    beta: &str,
    witness: &str,
    samples: Option<usize>,
    lo: Option<&str>,
) -> Result<bool> {
    let fixtures = cfg.fixtures()?;
    let a = fixtures
        .get(alpha)
        .ok_or_else(|| anyhow!("unknown fixture {:?}", alpha))?;
    let b = fixtures
        .get(beta)
        .ok_or_else(|| anyhow!("unknown fixture {:?}", beta))?;
    let w = resolve_witness(cfg, witness)?;
    let beta_limit = b.limit_or_err()?.clone();
    let lo = match (lo, &w.valid_from) {
        (Some(s), _) => parse_rational(s)?,
        (None, Some(vf)) if vf > &nat(0) => vf.clone(),
        _ => nat(0),
    };
    if lo >= beta_limit {
        bail!("sampling range is empty: lo {} >= beta {}", lo, beta_limit);
    }
    let mut sampler = Sampler::new(cfg.seed);
    let qs = sampler.grid(&lo, &beta_limit, samples.unwrap_or(cfg.sample_count));
    let report = check_witness(a, b, &w, &qs)?;
    let statuses: Vec<_> = report.records.iter().map(|r| r.status).collect();
    let payload = json!({
        "alpha": alpha,
        "beta": beta,
        "d": w.d,
        "l": w.ell,
        "lo": format_rational(&lo),
        "status_counts": suite::status_counts(&statuses),
        "records": report.records,
        "verdict": report.verdict,
    });
    let path = write_report(
        cfg,
        "witness_check",
        &envelope(cfg, "witness-check", report.verdict, payload),
    )?;
    println!(
        "witness-check {} <= {}: {} ({} samples) -> {}",
        alpha,
        beta,
        if report.verdict { "holds" } else { "FAILS" },
        qs.len(),
        path.display()
    );
    Ok(report.verdict)
}

fn cmd_witness_algebra(
    cfg: &RunConfig,
    compose_spec: Option<&str>,
    join_spec: Option<&str>,
    scale_spec: Option<&str>,
) -> Result<bool> {
    let mut payload = json!({});
    if compose_spec.is_none() && join_spec.is_none() && scale_spec.is_none() {
        bail!("witness-algebra needs at least one of --compose, --join, --scale");
    }
    if let Some(spec) = compose_spec {
        let c = parse_naturals(spec, 4, "compose")?;
        let w1 = QSWitness::new(WitnessFunction::identity(), c[0], c[1] as u32)?;
        let w2 = QSWitness::new(WitnessFunction::identity(), c[2], c[3] as u32)?;
        let out = compose(&w1, &w2)?;
        payload["compose"] = json!({
            "inputs": [[c[0], c[1]], [c[2], c[3]]],
            "output": [out.d, out.ell],
        });
    }
    if let Some(spec) = join_spec {
        let c = parse_naturals(spec, 4, "join")?;
        let w0 = QSWitness::new(WitnessFunction::identity(), c[0], c[1] as u32)?;
        let w1 = QSWitness::new(WitnessFunction::identity(), c[2], c[3] as u32)?;
        let out = join(&w0, &w1)?;
        payload["join"] = json!({
            "inputs": [[c[0], c[1]], [c[2], c[3]]],
            "output": [out.d, out.ell],
        });
    }
    if let Some(spec) = scale_spec {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 3 {
            bail!("scale needs q,d,l");
        }
        let q = parse_rational(parts[0])?;
        let d: u64 = parts[1].trim().parse().context("parsing d")?;
        let l: u32 = parts[2].trim().parse().context("parsing l")?;
        let w = QSWitness::new(WitnessFunction::identity(), d, l)?;
        let out = scale_witness(&w, &q)?;
        payload["scale"] = json!({
            "q": format_rational(&q),
            "input": [d, l],
            "output": [out.d, out.ell],
        });
    }
    let path = write_report(
        cfg,
        "witness_algebra",
        &envelope(cfg, "witness-algebra", true, payload.clone()),
    )?;
    println!("witness-algebra -> {}", path.display());
    println!("{}", payload);
    Ok(true)
}

fn cmd_ml_test(cfg: &RunConfig, k: u32, l: u32, m: u32) -> Result<bool> {
    let level = ml_test_level(&WitnessFunction::identity(), m, k, l, &cfg.eps_eval()?)?;
    let holds = level.holds;
    let payload = json!({
        "level": level,
        "bound_dominated_by_2^-m": ml_bound_dominated(m, k, l),
    });
    let path = write_report(cfg, "ml_test", &envelope(cfg, "ml-test", holds, payload))?;
    println!(
        "ml-test m={} k={} l={}: measure bound {} (bound <= 2^-m: {}) -> {}",
        m,
        k,
        l,
        if holds { "holds" } else { "FAILS" },
        ml_bound_dominated(m, k, l),
        path.display()
    );
    Ok(holds)
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    cfg: &RunConfig,
    alpha: &str,
    beta: &str,
    witness: &str,
    steps: u64,
    smooth_spec: Option<&str>,
    csv: bool,
    lipschitz_mode: bool,
) -> Result<bool> {
    let fixtures = cfg.fixtures()?;
    let a = fixtures
        .get(alpha)
        .ok_or_else(|| anyhow!("unknown fixture {:?}", alpha))?;
    let b = fixtures
        .get(beta)
        .ok_or_else(|| anyhow!("unknown fixture {:?}", beta))?;
    let w = resolve_witness(cfg, witness)?;
    let depth_cap = cfg.depth.max(steps * 8).max(1024);
    let mut curve = if lipschitz_mode {
        build_lipschitz(a, b, &w, steps, depth_cap)?
    } else {
        build_hoelder_polyline(a, b, &w, steps, depth_cap)?
    };
    let mut smoothed = false;
    if let Some(spec) = smooth_spec {
        let c = parse_naturals(spec, 2, "smooth")?;
        curve = smooth_hoelder(&curve, c[0], c[1] as u32, &cfg.eps_t()?)?;
        smoothed = true;
    }
    let name = if lipschitz_mode {
        "build_lipschitz"
    } else {
        "build_hoelder"
    };
    let payload = json!({
        "alpha": alpha,
        "beta": beta,
        "d": w.d,
        "l": w.ell,
        "steps": steps,
        "smoothed": smoothed,
        "curve": curve,
    });
    let path = write_report(cfg, name, &envelope(cfg, name, true, payload))?;
    println!(
        "{}: {} breakpoints -> {}",
        name,
        curve.breakpoints().len(),
        path.display()
    );
    if csv {
        let csv_path = Path::new(&cfg.out_dir).join(format!("{}.csv", name));
        std::fs::write(&csv_path, curve.sample_csv(200, &cfg.eps_eval()?)?)?;
        println!("plot sample -> {}", csv_path.display());
    }
    Ok(true)
}

fn cmd_extract(
    cfg: &RunConfig,
    alpha: &str,
    beta: &str,
    witness: &str,
    steps: u64,
    q: &str,
    lipschitz: u64,
) -> Result<bool> {
    let fixtures = cfg.fixtures()?;
    let a = fixtures
        .get(alpha)
        .ok_or_else(|| anyhow!("unknown fixture {:?}", alpha))?;
    let b = fixtures
        .get(beta)
        .ok_or_else(|| anyhow!("unknown fixture {:?}", beta))?;
    let w = resolve_witness(cfg, witness)?;
    let q: Rational = parse_rational(q)?;
    let curve = build_lipschitz(a, b, &w, steps, cfg.depth.max(steps * 8).max(1024))?;
    if &q > curve.last_x() {
        bail!(
            "q = {} is beyond the curve domain (last breakpoint {})",
            q,
            curve.last_x()
        );
    }
    let alpha_limit = a.limit_or_err()?.clone();
    let beta_limit = b.limit_or_err()?.clone();
    let cut = LeftCut::Exact(alpha_limit.clone());
    let got = extract_witness(&curve, &cut, &q, 64)?;
    let err = &alpha_limit - &got.value;
    let bound = nat(lipschitz) * (&beta_limit - &q);
    let holds = err <= bound;
    let payload = json!({
        "alpha": alpha,
        "beta": beta,
        "q": format_rational(&q),
        "g_q": format_rational(&got.value),
        "approximant_index": got.approximant_index,
        "error": format_rational(&err),
        "L": lipschitz,
        "bound": format_rational(&bound),
        "holds": holds,
    });
    let path = write_report(cfg, "extract", &envelope(cfg, "extract", holds, payload))?;
    println!(
        "extract at q={}: g(q)={} ({}) -> {}",
        format_rational(&q),
        format_rational(&got.value),
        if holds {
            "within bound"
        } else {
            "BOUND VIOLATED"
        },
        path.display()
    );
    Ok(holds)
}

fn cmd_certify(
    cfg: &RunConfig,
    curve_path: &Path,
    claim: &str,
    pairs: Option<usize>,
) -> Result<bool> {
    let text = std::fs::read_to_string(curve_path)
        .with_context(|| format!("reading curve {}", curve_path.display()))?;
    // Accept either a bare curve or a build report envelope.
    let curve: PiecewiseCurve = match serde_json::from_str::<PiecewiseCurve>(&text) {
        Ok(c) => c,
        Err(_) => {
            let v: Value = serde_json::from_str(&text)?;
            serde_json::from_value(v["report"]["curve"].clone())
                .context("file is neither a curve nor a build report")?
        }
    };
    let claim = parse_claim(claim)?;
    let mut sampler = Sampler::new(cfg.seed);
    let n = pairs.unwrap_or(cfg.sample_count);
    let sample_pairs = match claim {
        ModulusClaim::AnchoredLipschitz { .. } | ModulusClaim::AnchoredHoelder { .. } => {
            // x2 ranges over breakpoints, x1 below it.
            let mut out = Vec::new();
            let bps = curve.breakpoints().to_vec();
            for (i, (x2, _)) in bps.iter().enumerate().skip(1) {
                if out.len() >= n {
                    break;
                }
                let lo = &bps[i - 1].0 - (x2 - &bps[i - 1].0);
                out.push((sampler.in_open(&lo, x2), x2.clone()));
            }
            out
        }
        _ => sampler.pairs(curve.first_x(), curve.last_x(), n),
    };
    let report = certify_modulus(&curve, &sample_pairs, &claim)?;
    let payload = json!({
        "claim": report.claim,
        "pairs": sample_pairs.len(),
        "undecided": report.undecided,
        "records": report.records,
        "holds": report.holds,
    });
    let path = write_report(
        cfg,
        "certify",
        &envelope(cfg, "certify", report.holds, payload),
    )?;
    println!(
        "certify {}: {} ({} pairs, {} undecided) -> {}",
        report.claim,
        if report.holds { "holds" } else { "FAILS" },
        sample_pairs.len(),
        report.undecided,
        path.display()
    );
    Ok(report.holds)
}

fn cmd_suite(cfg: &RunConfig) -> Result<bool> {
    let outcomes = suite::run_all(cfg)?;
    let mut all = true;
    let mut summary = Vec::new();
    for o in &outcomes {
        all &= o.holds;
        println!(
            "{} criterion {:>2}: {} ({} ms)",
            if o.holds { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.elapsed_ms
        );
        let payload = json!({
            "criterion": o.id,
            "name": o.name,
            "holds": o.holds,
            "details": o.details,
        });
        let path = write_report(
            cfg,
            &format!("suite_{:02}", o.id),
            &envelope(cfg, "suite", o.holds, payload),
        )?;
        summary.push(json!({
            "criterion": o.id,
            "name": o.name,
            "holds": o.holds,
            "file": path.file_name().and_then(|s| s.to_str()),
        }));
    }
    let summary_payload = json!({ "criteria": summary, "all_hold": all });
    let path = write_report(
        cfg,
        "suite_summary",
        &envelope(cfg, "suite", all, summary_payload),
    )?;
    println!(
        "suite: {} -> {}",
        if all {
            "all criteria hold"
        } else {
            "FAILURES PRESENT"
        },
        path.display()
    );
    Ok(all)
}
