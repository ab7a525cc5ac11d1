//! Feedforward convolutional codes: octal generator parsing, trellis
//! construction, encoding and a Viterbi decoder that accepts arbitrary
//! per-branch metrics.
//!
//! Bit conventions used throughout:
//!
//! * Each of the `k` inputs owns a shift register of `K / k` cells. The most
//!   significant bit of a generator's binary expansion taps the current input,
//!   the next bit taps the one-step-delayed input, and so on. Octal `7 5` with
//!   `K = 3` expands to taps `[1 1 1]` and `[1 0 1]`.
//! * A state packs the delayed cells of every input, input 0 in the most
//!   significant position and, within an input, the most recent bit first.
//!   For `(7 5)`, feeding a `1` into state `00` leads to state `10`.
//! * A branch label is the `n`-bit encoder output with output 0 as the most
//!   significant bit, so the tuple `10` is label `2`.
//! * An input word of `k` bits is likewise read with input 0 first.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Parameters of a feedforward convolutional encoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvCodeSpec {
    k: usize,
    n: usize,
    constraint_length: usize,
    /// `generators[i][j]` is the tap vector from input `i` to output `j`.
    generators: Vec<Vec<u32>>,
}

impl ConvCodeSpec {
    pub fn new(
        k: usize,
        n: usize,
        constraint_length: usize,
        generators: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if n < k {
            return Err(Error::Config(format!("n = {n} must be at least k = {k}")));
        }
        if n > 16 {
            return Err(Error::Config(format!("n = {n} exceeds the supported maximum of 16")));
        }
        if constraint_length < k || constraint_length % k != 0 {
            return Err(Error::Config(format!(
                "constraint length {constraint_length} must be a positive multiple of k = {k}"
            )));
        }
        if constraint_length - k > 20 {
            return Err(Error::Config(format!(
                "constraint length {constraint_length} gives more than 2^20 states"
            )));
        }
        if generators.len() != k {
            return Err(Error::Config(format!(
                "expected {k} generator rows, found {}",
                generators.len()
            )));
        }
        let register = constraint_length / k;
        for (i, row) in generators.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Config(format!(
                    "generator row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for &g in row {
                let bits = 32 - g.leading_zeros() as usize;
                if bits > register {
                    return Err(Error::Config(format!(
                        "generator {g:o} (octal) needs {bits} taps but each input register holds {register}"
                    )));
                }
            }
        }
        Ok(Self {
            k,
            n,
            constraint_length,
            generators,
        })
    }

    /// Parses generators written the way they are usually printed: octal
    /// numbers separated by whitespace, one `;`-separated row per input,
    /// e.g. `7 5` or `1 3 0; 3 2 3`.
    pub fn parse(k: usize, n: usize, constraint_length: usize, generators: &str) -> Result<Self> {
        let rows = generators
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(|tok| {
                        u32::from_str_radix(tok, 8).map_err(|_| {
                            Error::Config(format!("malformed octal generator `{tok}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, n, constraint_length, rows)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraint_length(&self) -> usize {
        self.constraint_length
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Code rate k/n.
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Number of trellis states, 2^(K-k).
    pub fn num_states(&self) -> usize {
        1 << (self.constraint_length - self.k)
    }

    fn register_len(&self) -> usize {
        self.constraint_length / self.k
    }

    /// Zero-input steps needed to drive any state back to state 0.
    pub fn flush_steps(&self) -> usize {
        self.register_len() - 1
    }

    /// Generators formatted as octal rows, the inverse of [`ConvCodeSpec::parse`].
    pub fn generators_octal(&self) -> String {
        self.generators
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| format!("{g:o}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Complete state-transition table of a convolutional code.
///
/// Immutable after construction; a single trellis can back any number of
/// concurrent decoders.
#[derive(Clone, Debug)]
pub struct Trellis {
    spec: ConvCodeSpec,
    num_states: usize,
    num_inputs: usize,
    next: Vec<usize>,
    label: Vec<u32>,
    /// Incoming branches per state as `(predecessor, input)`, sorted by predecessor.
    preds: Vec<Vec<(usize, usize)>>,
}

impl Trellis {
    pub fn build(spec: &ConvCodeSpec) -> Self {
        let k = spec.k;
        let mem = spec.register_len() - 1;
        let mem_mask = (1usize << mem) - 1;
        let num_states = spec.num_states();
        let num_inputs = 1usize << k;
        let mut next = vec![0; num_states * num_inputs];
        let mut label = vec![0; num_states * num_inputs];

        for state in 0..num_states {
            for input in 0..num_inputs {
                let mut ns = 0usize;
                let mut out = 0u32;
                let mut registers = Vec::with_capacity(k);
                for i in 0..k {
                    let shift = (k - 1 - i) * mem;
                    let cells = (state >> shift) & mem_mask;
                    let bit = (input >> (k - 1 - i)) & 1;
                    let reg = (bit << mem) | cells;
                    registers.push(reg as u32);
                    ns |= (reg >> 1) << shift;
                }
                for j in 0..spec.n {
                    let parity = registers
                        .iter()
                        .zip(&spec.generators)
                        .fold(0u32, |acc, (reg, row)| acc ^ (reg & row[j]).count_ones())
                        & 1;
                    out = (out << 1) | parity;
                }
                next[state * num_inputs + input] = ns;
                label[state * num_inputs + input] = out;
            }
        }

        let mut preds = vec![Vec::with_capacity(num_inputs); num_states];
        for state in 0..num_states {
            for input in 0..num_inputs {
                preds[next[state * num_inputs + input]].push((state, input));
            }
        }

        Self {
            spec: spec.clone(),
            num_states,
            num_inputs,
            next,
            label,
            preds,
        }
    }

    pub fn spec(&self) -> &ConvCodeSpec {
        &self.spec
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// Number of distinct input words per stage, 2^k.
    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    /// Number of distinct branch labels, 2^n.
    pub fn num_labels(&self) -> usize {
        1 << self.spec.n
    }

    pub fn next_state(&self, state: usize, input: usize) -> usize {
        self.next[state * self.num_inputs + input]
    }

    pub fn output(&self, state: usize, input: usize) -> u32 {
        self.label[state * self.num_inputs + input]
    }

    /// Incoming `(predecessor, input)` pairs of `state`, lowest predecessor first.
    pub fn predecessors(&self, state: usize) -> &[(usize, usize)] {
        &self.preds[state]
    }

    fn input_words(&self, message: &[u8]) -> Result<Vec<usize>> {
        let k = self.spec.k;
        if message.len() % k != 0 {
            return Err(Error::Input(format!(
                "message length {} is not a multiple of k = {k}",
                message.len()
            )));
        }
        message
            .chunks(k)
            .map(|word| {
                word.iter().try_fold(0usize, |acc, &b| match b {
                    0 | 1 => Ok((acc << 1) | b as usize),
                    _ => Err(Error::Input(format!("message bit {b} is not 0 or 1"))),
                })
            })
            .collect()
    }

    /// Encodes from state 0 and returns one branch label per stage.
    pub fn encode_labels(&self, message: &[u8]) -> Result<Vec<u32>> {
        let mut state = 0;
        let words = self.input_words(message)?;
        Ok(words
            .into_iter()
            .map(|u| {
                let out = self.output(state, u);
                state = self.next_state(state, u);
                out
            })
            .collect())
    }

    /// Encodes from state 0; the output has `n` bits per `k` message bits.
    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        let labels = self.encode_labels(message)?;
        Ok(labels
            .iter()
            .flat_map(|&l| label_bits(l, self.spec.n))
            .collect())
    }

    /// Appends the zero-input steps that return the encoder to state 0.
    pub fn terminate(&self, message: &[u8]) -> Vec<u8> {
        let mut out = message.to_vec();
        out.resize(message.len() + self.spec.flush_steps() * self.spec.k, 0);
        out
    }

    /// Minimum-metric path search.
    ///
    /// Decoding starts in state 0. With [`EndState::Zero`] the path must also
    /// finish in state 0 (terminated blocks); with [`EndState::Free`] the
    /// lowest-metric end state wins, ties going to the lowest index. Survivor
    /// ties go to the lowest-numbered predecessor state.
    pub fn viterbi_decode(&self, metrics: &MetricTable, end: EndState) -> Result<Decoded> {
        if metrics.num_labels() != self.num_labels() {
            return Err(Error::Input(format!(
                "metric table has {} labels per stage, trellis needs {}",
                metrics.num_labels(),
                self.num_labels()
            )));
        }
        let stages = metrics.stages();
        let ns = self.num_states;
        let mut acc = vec![f64::INFINITY; ns];
        let mut scratch = vec![f64::INFINITY; ns];
        acc[0] = 0.0;
        // survivor[v * ns + s] = predecessor * num_inputs + input
        let mut survivor = vec![0u32; stages * ns];
        let mut ops = 0u64;

        for v in 0..stages {
            let row = metrics.stage(v);
            for (s, slot) in scratch.iter_mut().enumerate() {
                let mut best = f64::INFINITY;
                let mut best_branch = u32::MAX;
                for &(p, u) in &self.preds[s] {
                    let candidate = acc[p] + row[self.output(p, u) as usize];
                    ops += 1;
                    if candidate < best {
                        best = candidate;
                        best_branch = (p * self.num_inputs + u) as u32;
                    }
                }
                *slot = best;
                survivor[v * ns + s] = best_branch;
            }
            std::mem::swap(&mut acc, &mut scratch);
        }

        let final_state = match end {
            EndState::Zero => 0,
            EndState::Free => acc
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |best, (s, &m)| {
                    if m < best.1 {
                        (s, m)
                    } else {
                        best
                    }
                })
                .0,
        };
        let metric = acc[final_state];
        if !metric.is_finite() {
            return Err(Error::Input(
                "no finite-metric path reaches the requested end state".into(),
            ));
        }

        let k = self.spec.k;
        let mut bits = vec![0u8; stages * k];
        let mut state = final_state;
        for v in (0..stages).rev() {
            let branch = survivor[v * ns + state] as usize;
            let (p, u) = (branch / self.num_inputs, branch % self.num_inputs);
            for i in 0..k {
                bits[v * k + i] = ((u >> (k - 1 - i)) & 1) as u8;
            }
            state = p;
        }
        Ok(Decoded { bits, metric, ops })
    }

    /// Smallest accumulated `label_distance(branch, zero-path branch)` over
    /// all paths that leave state 0 and first return to it.
    pub fn free_distance<F>(&self, label_distance: F) -> Result<u32>
    where
        F: Fn(u32, u32) -> u32,
    {
        let zero_label = self.output(0, 0);
        let mut best = u32::MAX;
        let mut dist = vec![u32::MAX; self.num_states];
        let mut heap = BinaryHeap::new();
        for u in 1..self.num_inputs {
            let d = label_distance(self.output(0, u), zero_label);
            let s = self.next_state(0, u);
            if s == 0 {
                best = best.min(d);
            } else if d < dist[s] {
                dist[s] = d;
                heap.push(Reverse((d, s)));
            }
        }
        while let Some(Reverse((d, s))) = heap.pop() {
            if d > dist[s] || d >= best {
                continue;
            }
            for u in 0..self.num_inputs {
                let nd = d + label_distance(self.output(s, u), zero_label);
                let t = self.next_state(s, u);
                if t == 0 {
                    best = best.min(nd);
                } else if nd < dist[t] {
                    dist[t] = nd;
                    heap.push(Reverse((nd, t)));
                }
            }
        }
        if best == u32::MAX {
            return Err(Error::Input(
                "no path re-merges with the all-zero path".into(),
            ));
        }
        Ok(best)
    }

    /// Counts error events (paths leaving state 0 and first returning to it)
    /// by accumulated distance from the all-zero path, for distances up to
    /// `max_distance` and event lengths up to `max_len` stages.
    pub fn distance_spectrum<F>(&self, label_distance: F, max_distance: u32, max_len: usize) -> Spectrum
    where
        F: Fn(u32, u32) -> u32,
    {
        let zero_label = self.output(0, 0);
        let width = max_distance as usize + 1;
        let mut counts = vec![0u64; width];
        let mut frontier = vec![0u64; self.num_states * width];
        let mut live = false;
        for u in 1..self.num_inputs {
            let d = label_distance(self.output(0, u), zero_label) as usize;
            if d >= width {
                continue;
            }
            let s = self.next_state(0, u);
            if s == 0 {
                counts[d] += 1;
            } else {
                frontier[s * width + d] += 1;
                live = true;
            }
        }
        let mut len = 1;
        while live && len < max_len {
            let mut next = vec![0u64; self.num_states * width];
            live = false;
            for s in 1..self.num_states {
                for d in 0..width {
                    let c = frontier[s * width + d];
                    if c == 0 {
                        continue;
                    }
                    for u in 0..self.num_inputs {
                        let nd = d + label_distance(self.output(s, u), zero_label) as usize;
                        if nd >= width {
                            continue;
                        }
                        let t = self.next_state(s, u);
                        if t == 0 {
                            counts[nd] += c;
                        } else {
                            next[t * width + nd] += c;
                            live = true;
                        }
                    }
                }
            }
            frontier = next;
            len += 1;
        }
        Spectrum {
            counts,
            truncated: live,
        }
    }
}

/// Required end state of a Viterbi search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndState {
    Zero,
    Free,
}

/// Result of [`Trellis::viterbi_decode`].
#[derive(Clone, Debug)]
pub struct Decoded {
    /// Input bits of the surviving path, `k` per stage.
    pub bits: Vec<u8>,
    /// Accumulated metric of the surviving path.
    pub metric: f64,
    /// Add-compare-select operations performed.
    pub ops: u64,
}

/// Error-event counts indexed by distance.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub counts: Vec<u64>,
    /// Set when paths were still diverged at the length limit.
    pub truncated: bool,
}

/// Per-stage branch metrics indexed by branch label.
#[derive(Clone, Debug)]
pub struct MetricTable {
    labels: usize,
    values: Vec<f64>,
}

impl MetricTable {
    pub fn new(labels: usize) -> Self {
        Self {
            labels,
            values: Vec::new(),
        }
    }

    pub fn with_stages(labels: usize, stages: usize) -> Self {
        Self {
            labels,
            values: Vec::with_capacity(labels * stages),
        }
    }

    pub fn from_rows(labels: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let mut table = Self::with_stages(labels, rows.len());
        for row in rows {
            table.push_stage(row)?;
        }
        Ok(table)
    }

    /// Appends one stage; `row[label]` is the metric of branches carrying `label`.
    pub fn push_stage(&mut self, row: &[f64]) -> Result<()> {
        if row.len() != self.labels {
            return Err(Error::Input(format!(
                "stage {} supplies {} branch metrics, expected {}",
                self.stages() + 1,
                row.len(),
                self.labels
            )));
        }
        self.values.extend_from_slice(row);
        Ok(())
    }

    /// Appends one stage computed label by label.
    pub fn push_with(&mut self, mut metric: impl FnMut(u32) -> f64) {
        self.values
            .extend((0..self.labels as u32).map(|label| metric(label)));
    }

    pub fn num_labels(&self) -> usize {
        self.labels
    }

    pub fn stages(&self) -> usize {
        if self.labels == 0 {
            0
        } else {
            self.values.len() / self.labels
        }
    }

    pub fn stage(&self, v: usize) -> &[f64] {
        &self.values[v * self.labels..(v + 1) * self.labels]
    }
}

/// Expands a label into `n` bits, most significant first.
pub fn label_bits(label: u32, n: usize) -> impl Iterator<Item = u8> {
    (0..n).rev().map(move |i| ((label >> i) & 1) as u8)
}

/// Packs `bits` (most significant first) into a label.
pub fn bits_label(bits: &[u8]) -> u32 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | u32::from(b & 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code75() -> Trellis {
        Trellis::build(&ConvCodeSpec::parse(1, 2, 3, "7 5").unwrap())
    }

    fn shipped_specs() -> Vec<ConvCodeSpec> {
        vec![
            ConvCodeSpec::parse(1, 2, 3, "7 5").unwrap(),
            ConvCodeSpec::parse(2, 3, 4, "1 3 0; 3 2 3").unwrap(),
            ConvCodeSpec::parse(1, 4, 6, "53 67 71 75").unwrap(),
        ]
    }

    #[test]
    fn state_counts() {
        let t = code75();
        assert_eq!(t.num_states(), 4);
        for s in 0..4 {
            assert_eq!(t.predecessors(s).len(), 2);
        }
        let spec = ConvCodeSpec::parse(2, 3, 4, "1 3 0; 3 2 3").unwrap();
        let t = Trellis::build(&spec);
        assert_eq!(t.num_states(), 4);
        for s in 0..4 {
            assert_eq!(t.predecessors(s).len(), 4);
        }
        let t = Trellis::build(&ConvCodeSpec::parse(1, 4, 6, "53 67 71 75").unwrap());
        assert_eq!(t.num_states(), 32);
    }

    #[test]
    fn single_transition_75() {
        let t = code75();
        assert_eq!(t.output(0, 1), 0b11);
        assert_eq!(t.next_state(0, 1), 0b10);
    }

    #[test]
    fn encode_75() {
        let t = code75();
        assert_eq!(t.encode(&[1, 0, 1, 1]).unwrap(), vec![1, 1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(t.encode(&[0; 6]).unwrap(), vec![0; 12]);
        assert!(t.encode(&[]).unwrap().is_empty());
    }

    #[test]
    fn encode_rejects_partial_words() {
        let t = Trellis::build(&ConvCodeSpec::parse(2, 3, 4, "1 3 0; 3 2 3").unwrap());
        assert!(matches!(t.encode(&[1, 0, 1]), Err(Error::Input(_))));
    }

    #[test]
    fn rejects_long_generators() {
        assert!(matches!(
            ConvCodeSpec::parse(1, 2, 3, "17 5"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ConvCodeSpec::parse(2, 3, 4, "1 7 0; 3 2 3"),
            Err(Error::Config(_))
        ));
        assert!(matches!(ConvCodeSpec::parse(1, 2, 3, "7 9"), Err(Error::Config(_))));
        assert!(matches!(ConvCodeSpec::parse(1, 2, 3, "7"), Err(Error::Config(_))));
    }

    #[test]
    fn octal_round_trip() {
        for spec in shipped_specs() {
            let again = ConvCodeSpec::parse(
                spec.k(),
                spec.n(),
                spec.constraint_length(),
                &spec.generators_octal(),
            )
            .unwrap();
            assert_eq!(again, spec);
        }
    }

    #[test]
    fn terminate_returns_to_zero() {
        for spec in shipped_specs() {
            let t = Trellis::build(&spec);
            let msg: Vec<u8> = (0..spec.k() * 7).map(|i| (i % 3 == 0) as u8).collect();
            let words = t.input_words(&t.terminate(&msg)).unwrap();
            let end = words.iter().fold(0, |s, &u| t.next_state(s, u));
            assert_eq!(end, 0);
        }
    }

    fn hamming_metrics(t: &Trellis, labels: &[u32]) -> MetricTable {
        let mut table = MetricTable::new(t.num_labels());
        for &l in labels {
            table.push_with(|b| (b ^ l).count_ones() as f64);
        }
        table
    }

    #[test]
    fn noiseless_decode_75() {
        let t = code75();
        let msg = t.terminate(&[1, 0, 1, 1]);
        let labels = t.encode_labels(&msg).unwrap();
        let out = t.viterbi_decode(&hamming_metrics(&t, &labels), EndState::Zero).unwrap();
        assert_eq!(out.bits, msg);
        assert_eq!(out.metric, 0.0);
    }

    #[test]
    fn equal_metrics_give_zero_path() {
        let t = code75();
        let mut table = MetricTable::new(4);
        for _ in 0..6 {
            table.push_stage(&[1.0; 4]).unwrap();
        }
        for end in [EndState::Zero, EndState::Free] {
            assert_eq!(t.viterbi_decode(&table, end).unwrap().bits, vec![0; 6]);
        }
    }

    #[test]
    fn missing_branch_metric_is_rejected() {
        let mut table = MetricTable::new(4);
        assert!(matches!(table.push_stage(&[0.0, 1.0, 2.0]), Err(Error::Input(_))));
        let t = code75();
        let wrong = MetricTable::from_rows(8, &[vec![0.0; 8]]).unwrap();
        assert!(t.viterbi_decode(&wrong, EndState::Free).is_err());
    }

    fn path_metric(t: &Trellis, msg: &[u8], table: &MetricTable) -> (f64, usize) {
        let words = t.input_words(msg).unwrap();
        let mut state = 0;
        let mut total = 0.0;
        for (v, &u) in words.iter().enumerate() {
            total += table.stage(v)[t.output(state, u) as usize];
            state = t.next_state(state, u);
        }
        (total, state)
    }

    #[test]
    fn viterbi_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = code75();
        for trial in 0..200 {
            let stages = 1 + trial % 8;
            let mut table = MetricTable::new(4);
            for _ in 0..stages {
                let row: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..5.0)).collect();
                table.push_stage(&row).unwrap();
            }
            let mut best_free = f64::INFINITY;
            let mut best_zero = f64::INFINITY;
            for m in 0..(1u32 << stages) {
                let msg: Vec<u8> = label_bits(m, stages).collect();
                let (metric, end) = path_metric(&t, &msg, &table);
                best_free = best_free.min(metric);
                if end == 0 {
                    best_zero = best_zero.min(metric);
                }
            }
            let free = t.viterbi_decode(&table, EndState::Free).unwrap();
            assert!((free.metric - best_free).abs() < 1e-9);
            assert!((path_metric(&t, &free.bits, &table).0 - free.metric).abs() < 1e-9);
            let zero = t.viterbi_decode(&table, EndState::Zero).unwrap();
            assert!((zero.metric - best_zero).abs() < 1e-9);
        }
    }

    #[test]
    fn free_distance_75() {
        let t = code75();
        assert_eq!(t.free_distance(|a, b| (a ^ b).count_ones()).unwrap(), 5);
    }

    /// Exhaustive enumeration of short error events, independent of the
    /// Dijkstra search.
    fn brute_free_distance(t: &Trellis, max_len: usize) -> u32 {
        fn walk(t: &Trellis, state: usize, d: u32, len: usize, max_len: usize, best: &mut u32) {
            if len == max_len || d >= *best {
                return;
            }
            for u in 0..t.num_inputs() {
                let nd = d + (t.output(state, u) ^ t.output(0, 0)).count_ones();
                let ns = t.next_state(state, u);
                if ns == 0 {
                    *best = (*best).min(nd);
                } else {
                    walk(t, ns, nd, len + 1, max_len, best);
                }
            }
        }
        let mut best = u32::MAX;
        for u in 1..t.num_inputs() {
            let d = (t.output(0, u) ^ t.output(0, 0)).count_ones();
            let ns = t.next_state(0, u);
            if ns == 0 {
                best = best.min(d);
            } else {
                walk(t, ns, d, 1, max_len, &mut best);
            }
        }
        best
    }

    #[test]
    fn free_distance_matches_enumeration() {
        for spec in shipped_specs() {
            let t = Trellis::build(&spec);
            let search = t.free_distance(|a, b| (a ^ b).count_ones()).unwrap();
            assert_eq!(search, brute_free_distance(&t, 14), "{spec:?}");
        }
    }

    #[test]
    fn single_state_free_distance() {
        let t = Trellis::build(&ConvCodeSpec::parse(1, 2, 1, "1 1").unwrap());
        assert_eq!(t.num_states(), 1);
        assert_eq!(t.free_distance(|a, b| (a ^ b).count_ones()).unwrap(), 2);
    }

    #[test]
    fn spectrum_75() {
        // Transfer function D^5 / (1 - 2D): 1, 2, 4, 8 events at d = 5..8.
        let t = code75();
        let s = t.distance_spectrum(|a, b| (a ^ b).count_ones(), 8, 100);
        assert_eq!(&s.counts[5..], &[1, 2, 4, 8]);
        assert!(s.counts[..5].iter().all(|&c| c == 0));
        assert!(!s.truncated);
    }

    #[test]
    fn branches_per_stage() {
        for spec in shipped_specs() {
            let t = Trellis::build(&spec);
            let total: usize = (0..t.num_states()).map(|s| t.predecessors(s).len()).sum();
            assert_eq!(total, spec.num_states() << spec.k());
        }
    }

    proptest! {
        #[test]
        fn encoding_is_linear(a in proptest::collection::vec(0u8..2, 24), b in proptest::collection::vec(0u8..2, 24), which in 0usize..3) {
            let t = Trellis::build(&shipped_specs()[which]);
            let sum: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
            let ea = t.encode(&a).unwrap();
            let eb = t.encode(&b).unwrap();
            let es: Vec<u8> = ea.iter().zip(&eb).map(|(x, y)| x ^ y).collect();
            prop_assert_eq!(t.encode(&sum).unwrap(), es);
        }

        #[test]
        fn noiseless_round_trip(bits in proptest::collection::vec(0u8..2, 0..=12), which in 0usize..3) {
            let spec = &shipped_specs()[which];
            let t = Trellis::build(spec);
            let len = bits.len() / spec.k() * spec.k();
            let msg = t.terminate(&bits[..len]);
            let labels = t.encode_labels(&msg).unwrap();
            let out = t.viterbi_decode(&hamming_metrics(&t, &labels), EndState::Zero).unwrap();
            prop_assert_eq!(out.bits, msg);
        }
    }
}
