//! End-to-end permutation trellis decoders.
//!
//! Each trellis stage carries one `M x M` received matrix. The inner decoder
//! turns it into a permutation (or a 0/1 pattern for the hard-decision
//! threshold decoder) and the outer Viterbi decoder runs over branch metrics
//! derived from it:
//!
//! | scheme  | inner decision                        | branch metric                      |
//! |---------|---------------------------------------|------------------------------------|
//! | `hd-ed` | envelope detector                     | symbol Hamming distance            |
//! | `hd-td` | threshold detector                    | `M - sum(s AND r)`                 |
//! | `s1`    | Hungarian, then Murty until in-book   | symbol Hamming distance            |
//! | `s2`    | as `s1`, then min-distance demapping  | bit Hamming distance               |
//! | `s3`    | branch and bound                      | symbol Hamming distance            |
//! | `s4`    | branch and bound, then demapping      | bit Hamming distance               |
//! | `od1`   | best codeword by exhaustive search    | symbol Hamming distance            |
//! | `od2`   | as `od1`, then demapping              | bit Hamming distance               |

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::assign::{
    branch_and_bound_counted, brute_force_counted, Assignment, CostMatrix, MurtyRanker,
};
use crate::convcode::{ConvCodeSpec, EndState, MetricTable, Trellis};
use crate::error::{Error, Result};
use crate::modem::{
    envelope_detect, modulate, threshold_detect, CodeMatrix, DemodMatrix,
    ReceivedMatrix,
};
use crate::permmap::{Codebook, Codeword};

/// Magnitude of the random perturbation added to costs in random-tie mode.
const TIE_JITTER: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeId {
    HdEd,
    HdTd,
    S1,
    S2,
    S3,
    S4,
    Od1,
    Od2,
}

impl SchemeId {
    pub const ALL: [SchemeId; 8] = [
        SchemeId::HdEd,
        SchemeId::HdTd,
        SchemeId::S1,
        SchemeId::S2,
        SchemeId::S3,
        SchemeId::S4,
        SchemeId::Od1,
        SchemeId::Od2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::HdEd => "hd-ed",
            SchemeId::HdTd => "hd-td",
            SchemeId::S1 => "s1",
            SchemeId::S2 => "s2",
            SchemeId::S3 => "s3",
            SchemeId::S4 => "s4",
            SchemeId::Od1 => "od1",
            SchemeId::Od2 => "od2",
        }
    }

    /// Whether the inner decision is demapped to bits before Viterbi.
    pub fn demaps(self) -> bool {
        matches!(self, SchemeId::S2 | SchemeId::S4 | SchemeId::Od2)
    }

    /// Whether the scheme solves an assignment problem.
    pub fn is_soft(self) -> bool {
        !matches!(self, SchemeId::HdEd | SchemeId::HdTd)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown scheme `{s}`")))
    }
}

/// What the assignment solvers see.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputMode {
    /// `-|y_ij|`.
    Soft,
    /// `-r_ij` from the threshold detector.
    Thresholded,
}

impl FromStr for InputMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "soft" => Ok(InputMode::Soft),
            "thresholded" | "hard" | "bits" => Ok(InputMode::Thresholded),
            other => Err(Error::Config(format!("unknown input mode `{other}`"))),
        }
    }
}

impl fmt::Display for InputMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputMode::Soft => "soft",
            InputMode::Thresholded => "thresholded",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeConfig {
    pub scheme: SchemeId,
    /// Murty iteration cap for `s1`/`s2`; ignored elsewhere.
    pub g_max: usize,
    pub input_mode: InputMode,
    /// Break cost ties at random instead of by lowest index.
    pub random_ties: bool,
    /// Threshold as a fraction of `sqrt(Es)`.
    pub threshold_factor: f64,
}

impl SchemeConfig {
    pub fn new(scheme: SchemeId, g_max: usize, input_mode: InputMode) -> Self {
        Self {
            scheme,
            g_max,
            input_mode,
            random_ties: false,
            threshold_factor: crate::modem::THRESHOLD_FACTOR,
        }
    }
}

/// Elementary operation counts accumulated while decoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Detector work: one comparison per sample.
    pub detect: u64,
    /// Assignment-solver work.
    pub solver: u64,
    /// Codeword comparisons made by the hard-decision branch metrics.
    pub compare: u64,
    /// Demapper work.
    pub demap: u64,
    /// Viterbi add-compare-select operations.
    pub viterbi: u64,
    /// Matrices decoded.
    pub blocks: u64,
    /// Stages whose soft decision was not a codeword.
    pub off_book: u64,
}

impl Counters {
    pub fn add(&mut self, other: &Counters) {
        self.detect += other.detect;
        self.solver += other.solver;
        self.compare += other.compare;
        self.demap += other.demap;
        self.viterbi += other.viterbi;
        self.blocks += other.blocks;
        self.off_book += other.off_book;
    }

    /// Inner-decoder work: detection, solving and codebook comparison.
    pub fn inner(&self) -> u64 {
        self.detect + self.solver + self.compare
    }
}

/// Outcome of the permutation soft-decision decoder on one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PsddResult {
    pub codeword: Codeword,
    pub in_book: bool,
    pub iterations: usize,
    pub ops: u64,
}

/// `-|y_ij|` for every sample.
pub fn cost_from_received(y: &ReceivedMatrix) -> CostMatrix {
    CostMatrix::new(y.m(), y.cells().iter().map(|c| -c.norm()).collect())
        .expect("received matrices are square")
}

/// `-r_ij` for every detector bit.
pub fn cost_from_demod(r: &DemodMatrix) -> CostMatrix {
    CostMatrix::new(r.m(), r.cells().iter().map(|&b| -f64::from(b)).collect())
        .expect("demodulated matrices are square")
}

/// Hungarian solve, then Murty ranking until the decision is a codeword or
/// `g_max` assignments have been examined. When the cap is hit the last
/// ranked permutation is returned with `in_book == false`.
pub fn psdd_decode(c: &CostMatrix, book: &Codebook, g_max: usize) -> Result<PsddResult> {
    if g_max == 0 {
        return Err(Error::Config("g_max must be at least 1".into()));
    }
    let mut ranker = MurtyRanker::new(c);
    let mut last: Option<Assignment> = None;
    let mut iterations = 0;
    for assignment in ranker.by_ref().take(g_max) {
        iterations += 1;
        let word = assignment.codeword();
        if book.contains(word.symbols()) {
            return Ok(PsddResult {
                codeword: word,
                in_book: true,
                iterations,
                ops: ranker.ops(),
            });
        }
        last = Some(assignment);
    }
    let last = last.ok_or(Error::Infeasible)?;
    Ok(PsddResult {
        codeword: last.codeword(),
        in_book: false,
        iterations,
        ops: ranker.ops(),
    })
}

/// A convolutional code, its permutation mapping and the decoders over them.
#[derive(Clone, Debug)]
pub struct Ptc {
    trellis: Trellis,
    book: Codebook,
    /// Codeword carried by each branch label.
    label_words: Vec<Codeword>,
    label_matrices: Vec<CodeMatrix>,
}

/// Decoded message bits and the work spent.
#[derive(Clone, Debug)]
pub struct DecodeOutput {
    pub bits: Vec<u8>,
    pub counters: Counters,
}

impl Ptc {
    pub fn new(spec: &ConvCodeSpec, book: Codebook) -> Result<Self> {
        if spec.n() != book.n() {
            return Err(Error::Config(format!(
                "code emits {}-bit tuples but the codebook maps {}-bit tuples",
                spec.n(),
                book.n()
            )));
        }
        let trellis = Trellis::build(spec);
        let label_words: Vec<Codeword> = (0..trellis.num_labels() as u32)
            .map(|l| book.map_forward(l).clone())
            .collect();
        let label_matrices = label_words
            .iter()
            .map(|w| modulate(w.symbols(), 1.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            trellis,
            book,
            label_words,
            label_matrices,
        })
    }

    pub fn trellis(&self) -> &Trellis {
        &self.trellis
    }

    pub fn book(&self) -> &Codebook {
        &self.book
    }

    pub fn m(&self) -> usize {
        self.book.m()
    }

    /// Overall rate k/M.
    pub fn rate(&self) -> f64 {
        self.trellis.spec().k() as f64 / self.m() as f64
    }

    /// Number of matrices sent for a message of `bits` bits, flush included.
    pub fn stages_for(&self, bits: usize) -> usize {
        let spec = self.trellis.spec();
        bits / spec.k() + spec.flush_steps()
    }

    /// Terminates and encodes `message`, returning one codeword per stage.
    pub fn encode(&self, message: &[u8]) -> Result<Vec<Codeword>> {
        let labels = self.trellis.encode_labels(&self.trellis.terminate(message))?;
        Ok(labels
            .into_iter()
            .map(|l| self.label_words[l as usize].clone())
            .collect())
    }

    /// Codeword carried by branch label `label`.
    pub fn label_word(&self, label: u32) -> &Codeword {
        &self.label_words[label as usize]
    }

    pub fn decode(
        &self,
        blocks: &[ReceivedMatrix],
        es: f64,
        cfg: &SchemeConfig,
    ) -> Result<DecodeOutput> {
        self.decode_inner(blocks, es, cfg, None)
    }

    /// As [`Ptc::decode`], drawing tie-breaking noise from `rng` when
    /// `cfg.random_ties` is set.
    pub fn decode_with_rng(
        &self,
        blocks: &[ReceivedMatrix],
        es: f64,
        cfg: &SchemeConfig,
        rng: &mut ChaCha8Rng,
    ) -> Result<DecodeOutput> {
        self.decode_inner(blocks, es, cfg, Some(rng))
    }

    fn validate(&self, blocks: &[ReceivedMatrix], cfg: &SchemeConfig) -> Result<()> {
        let m = self.m();
        if let Some(bad) = blocks.iter().find(|y| y.m() != m) {
            return Err(Error::Input(format!(
                "received matrix has dimension {}, codebook needs {m}",
                bad.m()
            )));
        }
        if blocks.len() < self.trellis.spec().flush_steps() {
            return Err(Error::Input("block sequence is shorter than the flush tail".into()));
        }
        if matches!(cfg.scheme, SchemeId::S1 | SchemeId::S2)
            && (cfg.g_max == 0 || cfg.g_max > self.book.len())
        {
            return Err(Error::Config(format!(
                "g_max = {} must lie in 1..={}",
                cfg.g_max,
                self.book.len()
            )));
        }
        Ok(())
    }

    fn decode_inner(
        &self,
        blocks: &[ReceivedMatrix],
        es: f64,
        cfg: &SchemeConfig,
        mut rng: Option<&mut ChaCha8Rng>,
    ) -> Result<DecodeOutput> {
        self.validate(blocks, cfg)?;
        let m = self.m();
        let labels = self.trellis.num_labels();
        let tau = cfg.threshold_factor * es.sqrt();
        let mut counters = Counters::default();
        let mut table = MetricTable::with_stages(labels, blocks.len());

        for y in blocks {
            counters.blocks += 1;
            match cfg.scheme {
                SchemeId::HdEd => {
                    counters.detect += (m * m) as u64;
                    let r = envelope_detect(y);
                    counters.compare += (labels * m) as u64;
                    table.push_with(|l| {
                        self.label_words[l as usize]
                            .symbols()
                            .iter()
                            .zip(r.symbols())
                            .filter(|(a, b)| a != b)
                            .count() as f64
                    });
                }
                SchemeId::HdTd => {
                    counters.detect += (m * m) as u64;
                    let r = threshold_detect(y, tau);
                    counters.compare += (labels * m * m) as u64;
                    table.push_with(|l| support_mismatch(&r, &self.label_matrices[l as usize]) as f64);
                }
                scheme => {
                    let mut cost = match cfg.input_mode {
                        InputMode::Soft => cost_from_received(y),
                        InputMode::Thresholded => {
                            counters.detect += (m * m) as u64;
                            cost_from_demod(&threshold_detect(y, tau))
                        }
                    };
                    if cfg.random_ties {
                        if let Some(rng) = rng.as_deref_mut() {
                            jitter(&mut cost, rng);
                        }
                    }
                    let word = match scheme {
                        SchemeId::S1 | SchemeId::S2 => {
                            let out = psdd_decode(&cost, &self.book, cfg.g_max)?;
                            counters.solver += out.ops;
                            out.codeword
                        }
                        SchemeId::S3 | SchemeId::S4 => {
                            branch_and_bound_counted(&cost, &mut counters.solver)?.codeword()
                        }
                        _ => brute_force_counted(&cost, Some(&self.book), &mut counters.solver)?
                            .codeword(),
                    };
                    if !self.book.contains(word.symbols()) {
                        counters.off_book += 1;
                    }
                    if scheme.demaps() {
                        let (tuple, ops) = self.book.demap_counted(word.symbols());
                        counters.demap += ops;
                        table.push_with(|l| (l ^ tuple).count_ones() as f64);
                    } else {
                        table.push_with(|l| {
                            self.label_words[l as usize]
                                .symbols()
                                .iter()
                                .zip(word.symbols())
                                .filter(|(a, b)| a != b)
                                .count() as f64
                        });
                    }
                }
            }
        }

        let decoded = self.trellis.viterbi_decode(&table, EndState::Zero)?;
        counters.viterbi += decoded.ops;
        let spec = self.trellis.spec();
        let keep = (blocks.len() - spec.flush_steps()) * spec.k();
        let mut bits = decoded.bits;
        bits.truncate(keep);
        Ok(DecodeOutput { bits, counters })
    }
}

/// `M - sum_ij (s_ij AND r_ij)` evaluated cell by cell.
pub fn support_mismatch(r: &DemodMatrix, s: &CodeMatrix) -> usize {
    let m = r.m();
    let mut hits = 0;
    for i in 0..m {
        for j in 0..m {
            if r.get(i, j) == 1 && s.active_row(j) == i {
                hits += 1;
            }
        }
    }
    m - hits
}

fn jitter(c: &mut CostMatrix, rng: &mut ChaCha8Rng) {
    let m = c.m();
    for i in 0..m {
        for j in 0..m {
            let x = c.get(i, j);
            if x.is_finite() {
                c.set(i, j, x + TIE_JITTER * rng.gen::<f64>());
            }
        }
    }
}

/// Default solver input for a channel: soft magnitudes on AWGN, detector
/// bits on the powerline channel.
pub fn default_input_mode(kind: crate::channel::ChannelKind) -> InputMode {
    match kind {
        crate::channel::ChannelKind::Plc => InputMode::Thresholded,
        _ => InputMode::Soft,
    }
}
