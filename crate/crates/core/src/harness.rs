//! Monte Carlo BER sweeps.
//!
//! Every SNR point runs fixed-size batches of trials. Trial `t` at point `p`
//! draws its message and channel noise from `RngStream::for_trial(seed, p, t)`
//! and is decoded by every scheme still running at that point, so schemes
//! see identical channel realisations. A scheme stops at a point after the
//! first batch that leaves it with at least `min_errors` bit errors or
//! `max_bits` simulated bits. Batches are evaluated in parallel but their
//! membership never depends on scheduling, so results are identical for any
//! worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::assign::{branch_and_bound_counted, hungarian_counted, CostMatrix, MurtyRanker};
use crate::channel::{ebno_to_esno, ChannelKind, ChannelParams, Nbi, RngStream};
use crate::convcode::ConvCodeSpec;
use crate::error::{Error, Result};
use crate::modem::{modulate, ReceivedMatrix};
use crate::permmap::{Codebook, Codeword};
use crate::schemes::{default_input_mode, Counters, InputMode, Ptc, SchemeConfig, SchemeId};

pub const CSV_HEADER: &str = "scheme,ebno_db,bits,bit_errors,ber,solver_ops,demap_ops,viterbi_ops,wall_s";

/// Offset separating tie-breaking streams from channel streams.
const TIE_STREAM_SEED: u64 = 0x7469_6573;

/// A named code with its default mapping.
#[derive(Clone, Copy, Debug)]
pub struct CodePreset {
    pub name: &'static str,
    pub k: usize,
    pub n: usize,
    pub constraint_length: usize,
    pub generators: &'static str,
    pub codebook: &'static str,
}

pub const PRESETS: [CodePreset; 3] = [
    CodePreset {
        name: "r1-2-m3",
        k: 1,
        n: 2,
        constraint_length: 3,
        generators: "7 5",
        codebook: "n2-m3",
    },
    CodePreset {
        name: "r2-3-m4",
        k: 2,
        n: 3,
        constraint_length: 4,
        generators: "1 3 0; 3 2 3",
        codebook: "n3-m4",
    },
    CodePreset {
        name: "r1-4-m4",
        k: 1,
        n: 4,
        constraint_length: 6,
        generators: "53 67 71 75",
        codebook: "dpm-n4-m4",
    },
];

impl CodePreset {
    pub fn find(name: &str) -> Result<&'static CodePreset> {
        PRESETS
            .iter()
            .find(|p| p.name.eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| Error::Config(format!("unknown code preset `{name}`")))
    }

    pub fn spec(&self) -> ConvCodeSpec {
        ConvCodeSpec::parse(self.k, self.n, self.constraint_length, self.generators)
            .expect("preset generators are valid")
    }
}

/// A built-in codebook name or a path to a book file.
pub fn load_codebook(reference: &str, base: Option<&Path>) -> Result<Codebook> {
    match reference.trim().to_ascii_lowercase().as_str() {
        "n2-m3" => Ok(Codebook::n2_m3()),
        "n3-m4" => Ok(Codebook::n3_m4()),
        "dpm-n4-m4" => Ok(Codebook::dpm_n4_m4()),
        _ => {
            let path = PathBuf::from(reference.trim());
            let path = match base {
                Some(dir) if path.is_relative() => dir.join(path),
                _ => path,
            };
            Codebook::load(path)
        }
    }
}

/// Everything needed to reproduce one sweep.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub spec: ConvCodeSpec,
    pub book: Codebook,
    /// Channel template; `esn0_db` is overwritten per point.
    pub channel: ChannelParams,
    pub schemes: Vec<SchemeId>,
    pub g_max: usize,
    pub input_mode: InputMode,
    pub random_ties: bool,
    pub ebno_db: Vec<f64>,
    pub min_errors: u64,
    pub max_bits: u64,
    /// Message bits per trial, before the flush tail.
    pub block_bits: usize,
    /// Trials per batch.
    pub batch_trials: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults for a preset code on AWGN.
    pub fn preset(name: &str) -> Result<Self> {
        let preset = CodePreset::find(name)?;
        let book = load_codebook(preset.codebook, None)?;
        Ok(Self {
            spec: preset.spec(),
            g_max: book.len(),
            book,
            channel: ChannelParams::default(),
            schemes: SchemeId::ALL.to_vec(),
            input_mode: InputMode::Soft,
            random_ties: false,
            ebno_db: vec![0.0, 2.0, 4.0, 6.0, 8.0],
            min_errors: 100,
            max_bits: 10_000_000,
            block_bits: 1000,
            batch_trials: 64,
            seed: 1,
            output: None,
        })
    }

    /// Parses `key = value` lines; `#` starts a comment. Relative codebook
    /// paths resolve against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                msg: "expected `key = value`".into(),
            })?;
            let key = key.trim().to_ascii_lowercase();
            if map.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("duplicate key `{key}`"),
                });
            }
        }
        Self::from_map(map, base)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent())
    }

    fn from_map(mut map: BTreeMap<String, String>, base: Option<&Path>) -> Result<Self> {
        let mut take = |key: &str| map.remove(key);
        let preset = take("code").map(|c| CodePreset::find(&c)).transpose()?;
        let custom = [take("k"), take("n"), take("constraint_length"), take("generators")];
        let spec = match (preset, custom) {
            (Some(_), [None, None, None, None]) => preset.unwrap().spec(),
            (None, [Some(k), Some(n), Some(cl), Some(g)]) => {
                ConvCodeSpec::parse(parse_num(&k, "k")?, parse_num(&n, "n")?, parse_num(&cl, "constraint_length")?, &g)?
            }
            (Some(_), _) => return Err(Error::Config("give either `code` or k/n/constraint_length/generators".into())),
            (None, _) => return Err(Error::Config("missing code: set `code` or all of k, n, constraint_length, generators".into())),
        };
        let book_ref = take("codebook")
            .or_else(|| preset.map(|p| p.codebook.to_string()))
            .ok_or_else(|| Error::Config("missing `codebook`".into()))?;
        let book = load_codebook(&book_ref, base)?;
        if book.n() != spec.n() {
            return Err(Error::Config(format!(
                "codebook maps {}-bit tuples but the code emits {}",
                book.n(),
                spec.n()
            )));
        }

        let mut channel = ChannelParams::default();
        channel.kind = match take("channel").as_deref().map(str::trim) {
            None | Some("awgn") => ChannelKind::Awgn,
            Some("plc") => ChannelKind::Plc,
            Some("noiseless") => ChannelKind::Noiseless,
            Some(other) => return Err(Error::Config(format!("unknown channel `{other}`"))),
        };
        if let Some(a) = take("a") {
            channel.impulsive_index = parse_num(&a, "A")?;
        }
        if let Some(g) = take("gamma") {
            channel.gamma = parse_num(&g, "gamma")?;
        }
        if let Some(t) = take("t_noise") {
            channel.t_noise = parse_num(&t, "t_noise")?;
        }
        if let Some(p) = take("random_phase") {
            channel.random_phase = parse_bool(&p, "random_phase")?;
        }
        let nbi = [take("nbi_row"), take("nbi_slots"), take("nbi_power_db")];
        channel.nbi = match nbi {
            [None, None, None] => None,
            [Some(row), slots, Some(power)] => Some(Nbi {
                row: parse_num(&row, "nbi_row")?,
                slots: slots.map(|s| parse_num(&s, "nbi_slots")).transpose()?.unwrap_or(usize::MAX),
                power_db: parse_num(&power, "nbi_power_db")?,
            }),
            _ => return Err(Error::Config("NBI needs nbi_row and nbi_power_db".into())),
        };

        let schemes = match take("schemes").or_else(|| take("scheme")) {
            Some(list) => parse_schemes(&list)?,
            None => SchemeId::ALL.to_vec(),
        };
        let g_max = take("g_max").map(|g| parse_num(&g, "g_max")).transpose()?.unwrap_or(book.len());
        let input_mode = match take("input_mode") {
            Some(m) => m.parse()?,
            None => default_input_mode(channel.kind),
        };
        let random_ties = take("random_ties").map(|v| parse_bool(&v, "random_ties")).transpose()?.unwrap_or(false);
        let ebno_db = match take("snr").or_else(|| take("ebno_db")) {
            Some(grid) => parse_grid(&grid)?,
            None => return Err(Error::Config("missing `snr` grid".into())),
        };
        let min_errors = take("min_errors").map(|v| parse_num(&v, "min_errors")).transpose()?.unwrap_or(100);
        let max_bits = take("max_bits").map(|v| parse_num::<f64>(&v, "max_bits")).transpose()?.unwrap_or(1e7);
        let block_bits = take("block_bits").map(|v| parse_num(&v, "block_bits")).transpose()?.unwrap_or(1000);
        let batch_trials = take("batch_trials").map(|v| parse_num(&v, "batch_trials")).transpose()?.unwrap_or(64);
        let seed = take("seed").map(|v| parse_num(&v, "seed")).transpose()?.unwrap_or(1);
        let output = take("output").map(PathBuf::from);
        if let Some(key) = map.keys().next() {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        let cfg = Self {
            spec,
            book,
            channel,
            schemes,
            g_max,
            input_mode,
            random_ties,
            ebno_db,
            min_errors,
            max_bits: max_bits as u64,
            block_bits,
            batch_trials,
            seed,
            output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.book.n() != self.spec.n() {
            return Err(Error::Config("code and codebook tuple widths differ".into()));
        }
        if self.ebno_db.is_empty() || self.ebno_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("SNR grid must be non-empty and strictly increasing".into()));
        }
        if self.schemes.is_empty() {
            return Err(Error::Config("no schemes selected".into()));
        }
        if self.g_max == 0 || self.g_max > self.book.len() {
            return Err(Error::Config(format!("g_max must lie in 1..={}", self.book.len())));
        }
        if self.block_bits == 0 || self.block_bits % self.spec.k() != 0 {
            return Err(Error::Config(format!(
                "block_bits must be a positive multiple of k = {}",
                self.spec.k()
            )));
        }
        if self.batch_trials == 0 || self.max_bits == 0 {
            return Err(Error::Config("batch_trials and max_bits must be positive".into()));
        }
        if let Some(nbi) = self.channel.nbi {
            if nbi.row >= self.book.m() {
                return Err(Error::Config(format!("nbi_row {} outside 0..{}", nbi.row, self.book.m())));
            }
        }
        self.channel.validate()
    }

    pub fn scheme_config(&self, scheme: SchemeId) -> SchemeConfig {
        let mut cfg = SchemeConfig::new(scheme, self.g_max, self.input_mode);
        cfg.random_ties = self.random_ties;
        cfg
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, key: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{s}` for `{key}`")))
}

fn parse_bool(s: &str, key: &str) -> Result<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Config(format!("invalid boolean `{s}` for `{key}`"))),
    }
}

pub fn parse_schemes(list: &str) -> Result<Vec<SchemeId>> {
    let mut out = Vec::new();
    for item in list.split([',', ' ']).filter(|s| !s.is_empty()) {
        if item.eq_ignore_ascii_case("all") {
            out.extend(SchemeId::ALL);
        } else {
            out.push(item.parse()?);
        }
    }
    out.dedup();
    Ok(out)
}

/// `a:b:step` (inclusive) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let grid: Vec<f64> = if s.contains(':') {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| parse_num(p, "snr"))
            .collect::<Result<_>>()?;
        let [a, b, step] = parts[..] else {
            return Err(Error::Config(format!("SNR range `{s}` must be a:b:step")));
        };
        if !(step > 0.0) || b < a {
            return Err(Error::Config(format!("SNR range `{s}` is empty")));
        }
        let count = ((b - a) / step + 1e-9).floor() as usize;
        (0..=count).map(|i| round_grid(a + i as f64 * step)).collect()
    } else {
        s.split(',').map(|p| parse_num(p, "snr")).collect::<Result<_>>()?
    };
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("SNR grid must be strictly increasing".into()));
    }
    Ok(grid)
}

fn round_grid(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// One (scheme, SNR) point.
#[derive(Clone, Debug, PartialEq)]
pub struct BerRecord {
    pub scheme: SchemeId,
    pub ebno_db: f64,
    pub bits: u64,
    pub bit_errors: u64,
    pub counters: Counters,
    pub wall_s: f64,
}

impl BerRecord {
    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.bit_errors as f64 / self.bits as f64
        }
    }

    /// Binomial standard deviation of the BER estimate.
    pub fn sigma(&self) -> f64 {
        if self.bits == 0 {
            return 0.0;
        }
        let p = self.ber();
        (p * (1.0 - p) / self.bits as f64).sqrt()
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6e},{},{},{},{:.3}",
            self.scheme,
            self.ebno_db,
            self.bits,
            self.bit_errors,
            self.ber(),
            self.counters.inner(),
            self.counters.demap,
            self.counters.viterbi,
            self.wall_s
        )
    }
}

pub fn to_csv(records: &[BerRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Run-time options that do not change results.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Record `wall_s = 0` so output is byte-reproducible.
    pub no_timing: bool,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    bits: u64,
    errors: u64,
    counters: Counters,
    seconds: f64,
}

impl Tally {
    fn add(&mut self, other: &Tally) {
        self.bits += other.bits;
        self.errors += other.errors;
        self.counters.add(&other.counters);
        self.seconds += other.seconds;
    }
}

pub fn run_sweep(cfg: &ExperimentConfig, opts: RunOptions) -> Result<Vec<BerRecord>> {
    cfg.validate()?;
    match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(|| sweep(cfg, opts)),
        None => sweep(cfg, opts),
    }
}

fn sweep(cfg: &ExperimentConfig, opts: RunOptions) -> Result<Vec<BerRecord>> {
    let ptc = Ptc::new(&cfg.spec, cfg.book.clone())?;
    let m = ptc.m();
    let scheme_cfgs: Vec<SchemeConfig> = cfg.schemes.iter().map(|&s| cfg.scheme_config(s)).collect();
    let mut records = Vec::new();
    for (point, &ebno) in cfg.ebno_db.iter().enumerate() {
        let mut channel = cfg.channel.clone();
        channel.esn0_db = ebno_to_esno(ebno, ptc.rate(), m);
        let mut tallies = vec![Tally::default(); scheme_cfgs.len()];
        let mut active: Vec<usize> = (0..scheme_cfgs.len()).collect();
        let mut next_trial = 0u32;
        while !active.is_empty() {
            let first = next_trial;
            next_trial += cfg.batch_trials as u32;
            let batch: Vec<Vec<Tally>> = (first..next_trial)
                .into_par_iter()
                .map(|trial| run_trial(cfg, &ptc, &channel, &scheme_cfgs, &active, point as u32, trial, opts))
                .collect::<Result<_>>()?;
            for per_trial in &batch {
                for (slot, &s) in active.iter().enumerate() {
                    tallies[s].add(&per_trial[slot]);
                }
            }
            active.retain(|&s| tallies[s].errors < cfg.min_errors && tallies[s].bits < cfg.max_bits);
        }
        for (s, tally) in tallies.into_iter().enumerate() {
            records.push(BerRecord {
                scheme: scheme_cfgs[s].scheme,
                ebno_db: ebno,
                bits: tally.bits,
                bit_errors: tally.errors,
                counters: tally.counters,
                wall_s: if opts.no_timing { 0.0 } else { tally.seconds },
            });
        }
    }
    Ok(records)
}

#[allow(clippy::too_many_arguments)]
fn run_trial(
    cfg: &ExperimentConfig,
    ptc: &Ptc,
    channel: &ChannelParams,
    schemes: &[SchemeConfig],
    active: &[usize],
    point: u32,
    trial: u32,
    opts: RunOptions,
) -> Result<Vec<Tally>> {
    let mut rng = RngStream::for_trial(cfg.seed, point, trial).rng();
    let message: Vec<u8> = (0..cfg.block_bits).map(|_| rng.gen_range(0..2)).collect();
    let es = 1.0;
    let blocks: Vec<ReceivedMatrix> = ptc
        .encode(&message)?
        .iter()
        .map(|w| channel.transmit(&modulate(w.symbols(), es)?, &mut rng))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(active.len());
    for &s in active {
        let start = (!opts.no_timing).then(Instant::now);
        let decoded = if schemes[s].random_ties {
            let mut ties = RngStream::for_trial(cfg.seed ^ TIE_STREAM_SEED, point, trial).rng();
            ptc.decode_with_rng(&blocks, es, &schemes[s], &mut ties)?
        } else {
            ptc.decode(&blocks, es, &schemes[s])?
        };
        let errors = decoded
            .bits
            .iter()
            .zip(&message)
            .filter(|(a, b)| a != b)
            .count() as u64;
        out.push(Tally {
            bits: message.len() as u64,
            errors,
            counters: decoded.counters,
            seconds: start.map_or(0.0, |t| t.elapsed().as_secs_f64()),
        });
    }
    Ok(out)
}

/// Records of one scheme in grid order.
pub fn scheme_curve(records: &[BerRecord], scheme: SchemeId) -> Vec<&BerRecord> {
    records.iter().filter(|r| r.scheme == scheme).collect()
}

/// Eb/N0 at which a BER curve crosses `target`, interpolating `log10(BER)`
/// linearly between the first bracketing pair of grid points.
pub fn ebno_at_ber(curve: &[&BerRecord], target: f64) -> Option<f64> {
    for w in curve.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (pa, pb) = (a.ber(), b.ber());
        if pa >= target && pb <= target && pa > 0.0 {
            if pb <= 0.0 {
                return Some(b.ebno_db);
            }
            if pa == pb {
                return Some(a.ebno_db);
            }
            let t = (pa.log10() - target.log10()) / (pa.log10() - pb.log10());
            return Some(a.ebno_db + t * (b.ebno_db - a.ebno_db));
        }
    }
    None
}

/// Mean operation counts per decoded matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CounterSummary {
    pub scheme: SchemeId,
    pub blocks: u64,
    pub detect: f64,
    pub solver: f64,
    pub compare: f64,
    pub demap: f64,
    pub viterbi: f64,
    /// Fraction of inner decisions that were not codewords.
    pub off_book: f64,
}

pub fn counters_report(records: &[BerRecord]) -> Vec<CounterSummary> {
    let mut order: Vec<SchemeId> = Vec::new();
    let mut totals: BTreeMap<String, Counters> = BTreeMap::new();
    for r in records {
        if !order.contains(&r.scheme) {
            order.push(r.scheme);
        }
        totals.entry(r.scheme.to_string()).or_default().add(&r.counters);
    }
    order
        .into_iter()
        .map(|scheme| {
            let c = totals[scheme.name()];
            let per = |x: u64| if c.blocks == 0 { 0.0 } else { x as f64 / c.blocks as f64 };
            CounterSummary {
                scheme,
                blocks: c.blocks,
                detect: per(c.detect),
                solver: per(c.solver),
                compare: per(c.compare),
                demap: per(c.demap),
                viterbi: per(c.viterbi),
                off_book: per(c.off_book),
            }
        })
        .collect()
}

pub fn format_counters(summary: &[CounterSummary]) -> String {
    let mut out = String::from("scheme,blocks,detect,solver,compare,demap,viterbi,off_book\n");
    for s in summary {
        let _ = writeln!(
            out,
            "{},{},{:.2},{:.2},{:.2},{:.2},{:.2},{:.4}",
            s.scheme, s.blocks, s.detect, s.solver, s.compare, s.demap, s.viterbi, s.off_book
        );
    }
    out
}

/// Fitted `ops ~ M^exponent` for one solver.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub solver: &'static str,
    /// `(M, mean ops)` samples.
    pub points: Vec<(usize, f64)>,
    pub exponent: f64,
}

/// Least-squares slope of `log(ops)` against `log(M)`.
pub fn fit_exponent(points: &[(usize, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|&(m, _)| (m as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, ops)| ops.max(1.0).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Mean solver work on uniform random cost matrices for each `M` in `ms`.
///
/// Murty is run for `M` ranked solutions; the codebook comparison scans a
/// random book of `2^n` codewords cell by cell with `2^n = M`.
pub fn solver_growth(ms: &[usize], trials: usize, seed: u64) -> Result<Vec<GrowthFit>> {
    let names = ["hungarian", "murty", "branch-and-bound", "demap", "codebook-compare"];
    let mut samples: Vec<Vec<(usize, f64)>> = vec![Vec::new(); names.len()];
    for (mi, &m) in ms.iter().enumerate() {
        let mut rng = RngStream::new(seed, mi as u64).rng();
        let mut sums = [0u64; 5];
        let words: Vec<Codeword> = (0..m)
            .map(|_| {
                let mut w: Vec<u8> = (1..=m as u8).collect();
                for i in (1..m).rev() {
                    w.swap(i, rng.gen_range(0..=i));
                }
                Codeword::new(w)
            })
            .collect();
        let mut unique = words.clone();
        unique.sort_by(|a, b| a.symbols().cmp(b.symbols()));
        unique.dedup();
        let n = (unique.len() as f64).log2().floor().max(0.0) as usize;
        let book = Codebook::new(
            n,
            unique.into_iter().take(1 << n).enumerate().map(|(i, w)| (i as u32, w)).collect(),
        )?;
        for _ in 0..trials {
            let c = CostMatrix::new(m, (0..m * m).map(|_| rng.gen::<f64>()).collect())?;
            hungarian_counted(&c, &mut sums[0])?;
            let mut ranker = MurtyRanker::new(&c);
            for _ in ranker.by_ref().take(m) {}
            sums[1] += ranker.ops();
            branch_and_bound_counted(&c, &mut sums[2])?;
            let probe = crate::assign::hungarian(&c)?.codeword();
            sums[3] += book.demap_counted(probe.symbols()).1;
            sums[4] += (book.len() * m * m) as u64;
        }
        for (k, total) in sums.iter().enumerate() {
            samples[k].push((m, *total as f64 / trials as f64));
        }
    }
    Ok(names
        .iter()
        .zip(samples)
        .map(|(&solver, points)| GrowthFit {
            exponent: fit_exponent(&points),
            solver,
            points,
        })
        .collect())
}
