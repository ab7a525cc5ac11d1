//! Non-coherent AWGN and powerline channel models.
//!
//! Every received sample is `e^{j phi} s_ij + v_G (+ v_I p)`. The phase is
//! drawn once per time slot. `v_G` is circular complex Gaussian with variance
//! `N0` (`N0 / 2` per component). On the powerline channel each time slot is
//! hit by an impulse with probability `gamma * T_noise`; a hit adds circular
//! complex Gaussian noise of variance `Ni = N0 / A` to every frequency of the
//! slot. An optional narrowband interferer sits on one frequency for the
//! first few slots of every matrix.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::modem::{CodeMatrix, ReceivedMatrix};

/// Impulse inter-arrival time of the heavily disturbed indoor scenario, seconds.
pub const HEAVY_INTERARRIVAL_S: f64 = 0.0196;
/// Mean impulse duration of the same scenario, seconds.
pub const HEAVY_T_NOISE_S: f64 = 0.0641e-3;

/// A reproducible random stream: the same `(seed, stream)` always yields the
/// same sequence, whichever thread consumes it.
///
/// Backed by ChaCha8 with the 64-bit seed expanded into the key and `stream`
/// used as the ChaCha stream (nonce) word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Stream for one Monte Carlo trial at one grid point.
    pub fn for_trial(seed: u64, point: u32, trial: u32) -> Self {
        Self::new(seed, (u64::from(point) << 32) | u64::from(trial))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    /// Pass-through; useful to check decoders end to end.
    Noiseless,
    Awgn,
    Plc,
}

/// Narrowband interferer on a single frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Nbi {
    /// 0-based frequency row.
    pub row: usize,
    /// Number of leading time slots of each matrix that are disturbed.
    pub slots: usize,
    /// Interferer power relative to `Es`, dB.
    pub power_db: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelParams {
    pub kind: ChannelKind,
    /// SNR per symbol, dB.
    pub esn0_db: f64,
    /// Impulsive index `A = N0 / Ni`.
    pub impulsive_index: f64,
    /// Impulse arrival rate, per second.
    pub gamma: f64,
    /// Mean impulse duration, seconds.
    pub t_noise: f64,
    pub nbi: Option<Nbi>,
    /// Draw the carrier phase uniformly on `[0, 2 pi)`; when false the phase is 0.
    pub random_phase: bool,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            kind: ChannelKind::Awgn,
            esn0_db: 10.0,
            impulsive_index: 0.1,
            gamma: 1.0 / HEAVY_INTERARRIVAL_S,
            t_noise: HEAVY_T_NOISE_S,
            nbi: None,
            random_phase: true,
        }
    }
}

impl ChannelParams {
    pub fn awgn(esn0_db: f64) -> Self {
        Self {
            esn0_db,
            ..Self::default()
        }
    }

    pub fn plc(esn0_db: f64, impulsive_index: f64) -> Self {
        Self {
            kind: ChannelKind::Plc,
            esn0_db,
            impulsive_index,
            ..Self::default()
        }
    }

    /// Noise power spectral density for a given symbol energy.
    pub fn n0(&self, es: f64) -> f64 {
        es / 10f64.powf(self.esn0_db / 10.0)
    }

    /// Per-slot probability that an impulse is present, `gamma * T_noise`.
    pub fn impulse_probability(&self) -> Result<f64> {
        let p = self.gamma * self.t_noise;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!(
                "impulse probability gamma * t_noise = {p} is outside [0, 1]"
            )));
        }
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == ChannelKind::Plc {
            self.impulse_probability()?;
            if !(self.impulsive_index > 0.0) {
                return Err(Error::Config(format!(
                    "impulsive index A = {} must be positive",
                    self.impulsive_index
                )));
            }
        }
        Ok(())
    }

    pub fn transmit<R: Rng>(&self, s: &CodeMatrix, rng: &mut R) -> Result<ReceivedMatrix> {
        match self.kind {
            ChannelKind::Noiseless => Ok(ReceivedMatrix::noiseless(s)),
            ChannelKind::Awgn => Ok(transmit_awgn(s, self, rng)),
            ChannelKind::Plc => transmit_plc(s, self, rng),
        }
    }
}

fn phase<R: Rng>(params: &ChannelParams, rng: &mut R) -> Complex64 {
    if params.random_phase {
        Complex64::from_polar(1.0, rng.gen::<f64>() * TAU)
    } else {
        Complex64::new(1.0, 0.0)
    }
}

fn gaussian<R: Rng>(rng: &mut R, sigma: f64) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * sigma, im * sigma)
}

pub fn transmit_awgn<R: Rng>(s: &CodeMatrix, params: &ChannelParams, rng: &mut R) -> ReceivedMatrix {
    let m = s.m();
    let sigma = (params.n0(s.es()) / 2.0).sqrt();
    let amp = s.amplitude();
    let mut y = ReceivedMatrix::zeros(m);
    for j in 0..m {
        let rot = phase(params, rng);
        let active = s.active_row(j);
        for i in 0..m {
            let signal = if i == active { rot * amp } else { Complex64::new(0.0, 0.0) };
            *y.get_mut(i, j) = signal + gaussian(rng, sigma);
        }
    }
    y
}

pub fn transmit_plc<R: Rng>(
    s: &CodeMatrix,
    params: &ChannelParams,
    rng: &mut R,
) -> Result<ReceivedMatrix> {
    let p_hit = params.impulse_probability()?;
    let m = s.m();
    let n0 = params.n0(s.es());
    let sigma = (n0 / 2.0).sqrt();
    let sigma_i = (n0 / params.impulsive_index / 2.0).sqrt();
    let amp = s.amplitude();
    let mut y = ReceivedMatrix::zeros(m);
    for j in 0..m {
        let rot = phase(params, rng);
        let hit = rng.gen::<f64>() < p_hit;
        let active = s.active_row(j);
        for i in 0..m {
            let signal = if i == active { rot * amp } else { Complex64::new(0.0, 0.0) };
            let mut sample = signal + gaussian(rng, sigma);
            if hit {
                sample += gaussian(rng, sigma_i);
            }
            *y.get_mut(i, j) = sample;
        }
    }
    if let Some(nbi) = params.nbi {
        if nbi.row >= m {
            return Err(Error::Config(format!(
                "interferer row {} outside 1..{m}",
                nbi.row + 1
            )));
        }
        let amp_i = (s.es() * 10f64.powf(nbi.power_db / 10.0)).sqrt();
        for j in 0..nbi.slots.min(m) {
            *y.get_mut(nbi.row, j) += Complex64::from_polar(amp_i, rng.gen::<f64>() * TAU);
        }
    }
    Ok(y)
}

/// Converts SNR per bit to SNR per symbol: `Es/N0 = Eb/N0 * R_P * log2(M)`.
pub fn ebno_to_esno(ebno_db: f64, rate_p: f64, m: usize) -> f64 {
    let factor = rate_p * (m as f64).log2();
    10.0 * (10f64.powf(ebno_db / 10.0) * factor).log10()
}
