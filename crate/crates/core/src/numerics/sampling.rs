//! Exact sampling of Yrast phase-space densities and Monte Carlo averages.
//!
//! The Yrast law factorizes in the chart: `R ~ Gamma(5 + 4l, rate 2E/(1+l))`,
//! `r/R ~ Beta(3 + 2l, 2 + 2l)`, `cos^2 mu ~ Beta(1/2, (3 + 4l)/2)` with a
//! random sign, and `nu`, `phi`, `cos theta` uniform.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Gamma};

use crate::error::{Error, Result};
use crate::phasespace::{beta, chart_to_phase, ChartPoint, PhasePoint, StateDensity};

/// Points drawn per RNG stream. Stream `k` covers samples
/// `k * BLOCK .. (k + 1) * BLOCK`, so a batch does not depend on how the
/// blocks are spread over workers.
pub const BLOCK: usize = 4096;

#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub points: Vec<ChartPoint>,
    pub weights: Vec<f64>,
    pub seed: u64,
    pub state: StateDensity,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

struct YrastLaw {
    scale: Gamma<f64>,
    ratio: Beta<f64>,
    cos2_mu: Beta<f64>,
}

impl YrastLaw {
    fn new(sd: &StateDensity) -> Result<Self> {
        let l = sd.ell();
        let bad = |e: &dyn std::fmt::Display| Error::Domain(format!("sampling law: {e}"));
        Ok(Self {
            scale: Gamma::new(5.0 + 4.0 * l, 1.0 / sd.decay()).map_err(|e| bad(&e))?,
            ratio: Beta::new(3.0 + 2.0 * l, 2.0 + 2.0 * l).map_err(|e| bad(&e))?,
            cos2_mu: Beta::new(0.5, 1.5 + 2.0 * l).map_err(|e| bad(&e))?,
        })
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> ChartPoint {
        let scale = self.scale.sample(rng);
        let r = scale * self.ratio.sample(rng);
        let c = self.cos2_mu.sample(rng).sqrt();
        let mu = if rng.random::<bool>() { c.acos() } else { (-c).acos() };
        let nu = 2.0 * PI * rng.random::<f64>();
        let phi = 2.0 * PI * rng.random::<f64>();
        let theta = (1.0 - 2.0 * rng.random::<f64>()).acos();
        ChartPoint {
            r,
            theta,
            phi,
            scale,
            mu,
            nu,
        }
    }
}

fn draw_block(law: &YrastLaw, seed: u64, block: usize, count: usize) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    (0..count).map(|_| law.draw(&mut rng)).collect()
}

/// `count` points from a Yrast density with `workers` threads. The result
/// is identical for every worker count.
pub fn sample_yrast_parallel(sd: &StateDensity, count: usize, seed: u64, workers: usize) -> Result<SampleBatch> {
    if !sd.is_yrast() {
        return Err(Error::UnsupportedState("exact sampling needs a non-negative Yrast density"));
    }
    let law = YrastLaw::new(sd)?;
    let blocks = count.div_ceil(BLOCK);
    let size = |b: usize| BLOCK.min(count - b * BLOCK);
    let workers = workers.clamp(1, blocks.max(1));
    let mut points = Vec::with_capacity(count);
    if workers == 1 {
        for b in 0..blocks {
            points.extend(draw_block(&law, seed, b, size(b)));
        }
    } else {
        let mut parts: Vec<Vec<ChartPoint>> = vec![Vec::new(); blocks];
        std::thread::scope(|s| {
            for (w, chunk) in parts.chunks_mut(blocks.div_ceil(workers)).enumerate() {
                let law = &law;
                let first = w * blocks.div_ceil(workers);
                s.spawn(move || {
                    for (k, slot) in chunk.iter_mut().enumerate() {
                        *slot = draw_block(law, seed, first + k, size(first + k));
                    }
                });
            }
        });
        for part in parts {
            points.extend(part);
        }
    }
    Ok(SampleBatch {
        weights: vec![1.0; points.len()],
        points,
        seed,
        state: *sd,
    })
}

pub fn sample_yrast(sd: &StateDensity, count: usize, seed: u64) -> Result<SampleBatch> {
    sample_yrast_parallel(sd, count, seed, 1)
}

/// Joint density of the sampler in `(R, r/R, mu)`, with the uniform angles
/// integrated out.
pub fn sampler_density(sd: &StateDensity, scale: f64, ratio: f64, mu: f64) -> Result<f64> {
    if !sd.is_yrast() {
        return Err(Error::UnsupportedState("exact sampling needs a non-negative Yrast density"));
    }
    let l = sd.ell();
    let gamma_pdf = {
        let k = 5.0 + 4.0 * l;
        let b = sd.decay();
        (k * b.ln() + (k - 1.0) * scale.ln() - b * scale - libm::lgamma(k)).exp()
    };
    let beta_pdf = {
        let (p, q) = (3.0 + 2.0 * l, 2.0 + 2.0 * l);
        (ratio.powf(p - 1.0) * (1.0 - ratio).powf(q - 1.0)) / beta(p, q)
    };
    let mu_pdf = mu.sin().powf(2.0 + 4.0 * l) / beta(0.5, 1.5 + 2.0 * l);
    Ok(gamma_pdf * beta_pdf * mu_pdf)
}

/// Mean and batch-means standard error of an observable.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
}

const BATCHES: usize = 100;

pub fn mc_expectation<F>(batch: &SampleBatch, observable: F) -> Result<McEstimate>
where
    F: Fn(&ChartPoint, &PhasePoint) -> f64,
{
    if batch.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let coupling = batch.state.coupling();
    let n = batch.len();
    let nb = BATCHES.min(n);
    let mut sums = vec![(0.0, 0.0); nb];
    for (i, (cp, w)) in batch.points.iter().zip(&batch.weights).enumerate() {
        let pt = chart_to_phase(cp, coupling)?;
        let slot = &mut sums[i * nb / n];
        slot.0 += w * observable(cp, &pt);
        slot.1 += w;
    }
    let total_w: f64 = sums.iter().map(|s| s.1).sum();
    if total_w <= 0.0 {
        return Err(Error::EmptyBatch);
    }
    let mean = sums.iter().map(|s| s.0).sum::<f64>() / total_w;
    let stderr = if nb < 2 {
        0.0
    } else {
        let means: Vec<f64> = sums.iter().map(|s| s.0 / s.1).collect();
        let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (nb - 1) as f64;
        (var / nb as f64).sqrt()
    };
    Ok(McEstimate { mean, stderr })
}
