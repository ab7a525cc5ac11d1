//! Closed-form references for the hard-decision decoder: detector
//! probabilities from the Marcum Q function, the enumerated codeword error
//! probability and the free-distance union bound.

use rand::Rng;

use crate::channel::RngStream;
use crate::convcode::{ConvCodeSpec, Trellis};
use crate::error::{Error, Result};
use crate::modem::THRESHOLD_FACTOR;
use crate::permmap::Codebook;

/// Largest `M` for which all `2^(M^2)` detector outputs are enumerated.
pub const EXACT_MAX_M: usize = 4;

/// Default number of distance terms summed past the free distance.
pub const DEFAULT_BOUND_DEPTH: u32 = 10;

/// Longest error event followed when counting path distances.
const SPECTRUM_MAX_LEN: usize = 400;

/// First-order Marcum Q function
/// `Q1(a, b) = int_b^inf x exp(-(x^2 + a^2) / 2) I0(a x) dx`.
///
/// Evaluated as `P(N_y <= N_x)` for independent Poisson variables with means
/// `x = a^2 / 2` and `y = b^2 / 2`; every term is non-negative so the sum has
/// no cancellation. Terms are formed in the log domain.
pub fn marcum_q1(a: f64, b: f64) -> f64 {
    assert!(a >= 0.0 && b >= 0.0, "Marcum Q arguments must be non-negative");
    let x = a * a / 2.0;
    let y = b * b / 2.0;
    if y == 0.0 {
        return 1.0;
    }
    if x == 0.0 {
        return (-y).exp();
    }
    let ln_pmf = |mean: f64, k: f64| k * mean.ln() - mean - libm::lgamma(k + 1.0);
    // Poisson(x) mass beyond this many deviations is far below 1e-16.
    let kmax = (x + 40.0 * x.sqrt() + 60.0).ceil() as u64;
    let mut cdf_y = 0.0;
    let mut total = 0.0;
    for k in 0..=kmax {
        let kf = k as f64;
        cdf_y = (cdf_y + ln_pmf(y, kf).exp()).min(1.0);
        total += ln_pmf(x, kf).exp() * cdf_y;
    }
    total.clamp(0.0, 1.0)
}

/// Threshold detector cell probabilities at a given linear `Es/N0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectionProbs {
    /// `P(y >= tau | s = 1)`.
    pub p11: f64,
    /// `P(y < tau | s = 1)`.
    pub p01: f64,
    /// `P(y >= tau | s = 0)`.
    pub p10: f64,
    /// `P(y < tau | s = 0)`.
    pub p00: f64,
}

impl DetectionProbs {
    pub fn new(p11: f64, p10: f64) -> Self {
        Self {
            p11,
            p01: 1.0 - p11,
            p10,
            p00: 1.0 - p10,
        }
    }
}

pub fn detection_probs(esn0: f64) -> Result<DetectionProbs> {
    if !(esn0 > 0.0) {
        return Err(Error::Input(format!("Es/N0 = {esn0} must be positive")));
    }
    let a = (2.0 * esn0).sqrt();
    let p11 = marcum_q1(a, THRESHOLD_FACTOR * a);
    let p10 = (-THRESHOLD_FACTOR * THRESHOLD_FACTOR * esn0).exp();
    Ok(DetectionProbs::new(p11, p10))
}

/// How the sum over detector outputs is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeMethod {
    /// Enumerate every binary matrix; refused above [`EXACT_MAX_M`].
    Exact,
    /// Sample detector outputs from each codeword's likelihood.
    MonteCarlo { samples: u64, seed: u64 },
}

/// Hard-decision codeword error probability at linear `Es/N0`:
///
/// `Pe = (1/M) sum_i sum_R P(D != S_i | R) P(R | S_i)`
///
/// where `P(R | S_i)` multiplies the four cell probabilities over the
/// matrix and `D` is the codeword with the fewest mismatched active cells
/// (`M - sum(s AND r)`). Ties split the decision evenly over the tied set.
/// The `1/M` prefactor is kept as given even though the inner sum runs over
/// `2^n` codewords.
pub fn analytical_pe_hd(esn0: f64, book: &Codebook, method: PeMethod) -> Result<f64> {
    let probs = detection_probs(esn0)?;
    let m = book.m();
    let masks: Vec<u64> = book
        .rows()
        .iter()
        .map(|(_, w)| {
            w.symbols()
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &s)| acc | 1 << ((s as usize - 1) * m + j))
        })
        .collect();
    let sum = match method {
        PeMethod::Exact => {
            if m > EXACT_MAX_M {
                return Err(Error::Refused(format!(
                    "exact enumeration needs 2^{} matrices; use Monte Carlo for M = {m}",
                    m * m
                )));
            }
            exact_error_sum(m, &masks, &probs)
        }
        PeMethod::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::Input("Monte Carlo needs at least one sample".into()));
            }
            sampled_error_sum(m, &masks, &probs, samples, seed)
        }
    };
    Ok(sum / m as f64)
}

/// Probability that the minimum-mismatch decision on `r` is not codeword `sent`.
fn decision_error(r: u64, sent: usize, masks: &[u64]) -> f64 {
    let hits: Vec<u32> = masks.iter().map(|&mask| (r & mask).count_ones()).collect();
    let best = *hits.iter().max().expect("codebook is not empty");
    if hits[sent] < best {
        return 1.0;
    }
    let tied = hits.iter().filter(|&&h| h == best).count();
    1.0 - 1.0 / tied as f64
}

fn exact_error_sum(m: usize, masks: &[u64], p: &DetectionProbs) -> f64 {
    let cells = (m * m) as u32;
    let zeros_off = (m * m - m) as i32;
    let mut sum = 0.0;
    for r in 0u64..(1u64 << cells) {
        let ones = r.count_ones() as i32;
        for (i, &mask) in masks.iter().enumerate() {
            let err = decision_error(r, i, masks);
            if err == 0.0 {
                continue;
            }
            let on = (r & mask).count_ones() as i32;
            let off_ones = ones - on;
            let likelihood = p.p11.powi(on)
                * p.p01.powi(m as i32 - on)
                * p.p10.powi(off_ones)
                * p.p00.powi(zeros_off - off_ones);
            sum += err * likelihood;
        }
    }
    sum
}

fn sampled_error_sum(m: usize, masks: &[u64], p: &DetectionProbs, samples: u64, seed: u64) -> f64 {
    let mut sum = 0.0;
    for (i, &mask) in masks.iter().enumerate() {
        let mut rng = RngStream::new(seed, i as u64).rng();
        let mut acc = 0.0;
        for _ in 0..samples {
            let mut r = 0u64;
            for cell in 0..m * m {
                let q = if mask >> cell & 1 == 1 { p.p11 } else { p.p10 };
                if rng.gen::<f64>() < q {
                    r |= 1 << cell;
                }
            }
            acc += decision_error(r, i, masks);
        }
        sum += acc / samples as f64;
    }
    sum
}

/// Distance terms of the union bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundTerms {
    /// Free distance of the mapped code, in codeword symbols.
    pub dfree: u32,
    /// `counts[d]` error events at symbol distance `d`.
    pub counts: Vec<u64>,
    /// Number of distances summed past `dfree`.
    pub depth: u32,
    /// Some events were longer than the enumeration limit.
    pub truncated: bool,
}

/// Error-event spectrum of the mapped code against the all-zero path.
pub fn bound_terms(spec: &ConvCodeSpec, book: &Codebook, depth: u32) -> Result<BoundTerms> {
    if spec.n() != book.n() {
        return Err(Error::Config("code and codebook tuple widths differ".into()));
    }
    if depth == 0 {
        return Err(Error::Input("bound depth must be at least 1".into()));
    }
    let trellis = Trellis::build(spec);
    let dist = |a: u32, b: u32| {
        book.map_forward(a)
            .symbols()
            .iter()
            .zip(book.map_forward(b).symbols())
            .filter(|(x, y)| x != y)
            .count() as u32
    };
    let dfree = trellis.free_distance(dist)?;
    let max_d = dfree + depth - 1;
    let spectrum = trellis.distance_spectrum(dist, max_d, SPECTRUM_MAX_LEN);
    Ok(BoundTerms {
        dfree,
        counts: spectrum.counts,
        depth,
        truncated: spectrum.truncated,
    })
}

/// Pairwise error probability of a path at symbol distance `d`.
///
/// Sums the per-distance term `0.5 erfc(sqrt(R_P / M * Es/N0 * e))` over
/// `e = d/2 + 1 ..= d` (integer division), adding half the `e = d/2` term
/// when `d` is even.
pub fn pairwise_error(d: u32, esn0: f64, rate_p: f64, m: usize) -> f64 {
    let term = |e: u32| 0.5 * libm::erfc((rate_p / m as f64 * esn0 * e as f64).sqrt());
    let mut p: f64 = (d / 2 + 1..=d).map(term).sum();
    if d % 2 == 0 {
        p += 0.5 * term(d / 2);
    }
    p
}

/// Result of the truncated union bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bound {
    pub value: f64,
    /// Some error events were cut at the enumeration length limit.
    pub truncated: bool,
}

/// Union bound `sum_{d >= dfree} a_d P2(d)` at `Eb/N0` in dB, truncated
/// after `depth` distances.
pub fn dfree_bound(ebno_db: f64, spec: &ConvCodeSpec, book: &Codebook, depth: u32) -> Result<Bound> {
    let terms = bound_terms(spec, book, depth)?;
    Ok(bound_from_terms(&terms, ebno_db, spec.k(), book.m()))
}

pub fn bound_from_terms(terms: &BoundTerms, ebno_db: f64, k: usize, m: usize) -> Bound {
    let rate_p = k as f64 / m as f64;
    let esn0 = 10f64.powf(ebno_db / 10.0) * rate_p * (m as f64).log2();
    let value = terms
        .counts
        .iter()
        .enumerate()
        .skip(terms.dfree as usize)
        .map(|(d, &a)| a as f64 * pairwise_error(d as u32, esn0, rate_p, m))
        .sum();
    Bound {
        value,
        truncated: terms.truncated,
    }
}
