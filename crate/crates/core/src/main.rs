use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::Rng;

use ptc::analysis::{analytical_pe_hd, bound_from_terms, bound_terms, PeMethod, DEFAULT_BOUND_DEPTH, EXACT_MAX_M};
use ptc::assign::{branch_and_bound, brute_force_best, for_each_permutation, hungarian, murty_kbest, CostMatrix};
use ptc::channel::{ebno_to_esno, RngStream};
use ptc::harness::{
    counters_report, format_counters, load_codebook, parse_grid, parse_schemes, run_sweep, solver_growth, to_csv,
    CodePreset, ExperimentConfig, RunOptions,
};

#[derive(Parser)]
#[command(name = "ptc", version, about = "Permutation trellis code simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a BER sweep described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated scheme list overriding the config.
        #[arg(long)]
        scheme: Option<String>,
        /// `a:b:step` or a comma-separated list of Eb/N0 values in dB.
        #[arg(long)]
        snr: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Write `wall_s = 0` so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
        /// Print mean operation counts per block to stderr.
        #[arg(long)]
        counters: bool,
    },
    /// Analytical hard-decision error probability and free-distance bound.
    Analysis {
        /// Code preset: r1-2-m3, r2-3-m4 or r1-4-m4.
        #[arg(long)]
        code: String,
        /// Built-in codebook name or book file; defaults to the preset's.
        #[arg(long)]
        codebook: Option<String>,
        #[arg(long)]
        snr: String,
        #[arg(long, default_value_t = DEFAULT_BOUND_DEPTH)]
        depth: u32,
        /// Samples per codeword for books too large to enumerate.
        #[arg(long)]
        monte_carlo: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the assignment solvers against exhaustive search.
    SolversSelftest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run {
            config,
            scheme,
            snr,
            seed,
            out,
            workers,
            no_timing,
            counters,
        } => {
            let mut cfg = ExperimentConfig::load(&config).with_context(|| format!("loading {}", config.display()))?;
            if let Some(list) = scheme {
                cfg.schemes = parse_schemes(&list)?;
            }
            if let Some(grid) = snr {
                cfg.ebno_db = parse_grid(&grid)?;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let out = out.or_else(|| cfg.output.clone());
            let records = run_sweep(&cfg, RunOptions { workers, no_timing })?;
            emit(&to_csv(&records), out.as_ref())?;
            if counters {
                eprint!("{}", format_counters(&counters_report(&records)));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Analysis {
            code,
            codebook,
            snr,
            depth,
            monte_carlo,
            out,
        } => {
            let preset = CodePreset::find(&code)?;
            let spec = preset.spec();
            let book = load_codebook(codebook.as_deref().unwrap_or(preset.codebook), None)?;
            let method = match monte_carlo {
                Some(samples) => PeMethod::MonteCarlo { samples, seed: 1 },
                None if book.m() > EXACT_MAX_M => bail!("M = {} needs --monte-carlo", book.m()),
                None => PeMethod::Exact,
            };
            let terms = bound_terms(&spec, &book, depth)?;
            let rate = spec.k() as f64 / book.m() as f64;
            let mut csv = String::from("ebno_db,analytical_pe,dfree_bound\n");
            for ebno in parse_grid(&snr)? {
                let esn0 = 10f64.powf(ebno_to_esno(ebno, rate, book.m()) / 10.0);
                let pe = analytical_pe_hd(esn0, &book, method)?;
                let bound = bound_from_terms(&terms, ebno, spec.k(), book.m());
                csv.push_str(&format!("{ebno},{pe:.6e},{:.6e}\n", bound.value));
            }
            if terms.truncated {
                eprintln!("warning: some error events exceeded the enumeration length");
            }
            emit(&csv, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SolversSelftest { trials, seed } => solvers_selftest(trials, seed),
    }
}

fn random_matrix(m: usize, rng: &mut impl Rng) -> CostMatrix {
    CostMatrix::new(m, (0..m * m).map(|_| rng.gen_range(-10.0..10.0)).collect()).expect("finite costs")
}

fn solvers_selftest(trials: usize, seed: u64) -> Result<ExitCode> {
    let mut failures = 0;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let mut rng = RngStream::new(seed, 0).rng();
    let mut ok = true;
    for m in 2..=7 {
        for _ in 0..trials {
            let c = random_matrix(m, &mut rng);
            let h = hungarian(&c)?;
            let b = brute_force_best(&c, None)?;
            ok &= h.is_valid() && (h.cost - b.cost).abs() < 1e-9;
        }
    }
    check("hungarian equals exhaustive minimum (M = 2..7)", ok);

    let mut ok = true;
    for m in 3..=5 {
        for _ in 0..trials {
            let c = random_matrix(m, &mut rng);
            let mut all = Vec::new();
            for_each_permutation(m, |p| all.push(c.cost_of(p)));
            all.sort_by(f64::total_cmp);
            let k = 10.min(all.len());
            let ranked = murty_kbest(&c, k)?;
            ok &= ranked.len() == k && ranked.iter().zip(&all).all(|(a, &b)| (a.cost - b).abs() < 1e-9);
        }
    }
    check("murty ranking equals sorted enumeration (M = 3..5)", ok);

    let mut ok = true;
    for m in 2..=8 {
        for _ in 0..trials {
            let c = random_matrix(m, &mut rng);
            let bb = branch_and_bound(&c)?;
            ok &= bb.is_valid() && bb.cost >= hungarian(&c)?.cost - 1e-9;
        }
    }
    check("branch and bound valid and no better than optimum (M = 2..8)", ok);

    for fit in solver_growth(&[4, 8, 16], 50, seed)? {
        let points: Vec<String> = fit.points.iter().map(|(m, ops)| format!("M={m}:{ops:.0}")).collect();
        println!("growth {} exponent {:.2} [{}]", fit.solver, fit.exponent, points.join(" "));
    }
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
