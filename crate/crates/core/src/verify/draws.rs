//! Sources of the raw random numbers every sampler consumes.
//!
//! Fuzzing reads from a ChaCha stream keyed by `(seed, target)` and
//! positioned by the sample index, so sample `i` never depends on how many
//! other samples were drawn or on which thread. The sharpness search
//! replays a recorded draw sequence with perturbations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// One raw draw: a uniform in `[0, 1)` or a standard normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Draw {
    Uniform(f64),
    Normal(f64),
}

impl Draw {
    pub(crate) fn value(self) -> f64 {
        match self {
            Draw::Uniform(v) | Draw::Normal(v) => v,
        }
    }
}

pub(crate) trait DrawSource {
    fn uniform(&mut self) -> f64;
    fn normal(&mut self) -> f64;
}

/// Largest double below 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Counter-based stream for sample `index` of `target` under `seed`.
pub(crate) fn stream(seed: u64, target: &str, index: u64) -> ChaCha8Rng {
    let key = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ fnv1a(target);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}

/// Draws from a ChaCha stream, optionally logging them.
pub(crate) struct RngDraws {
    rng: ChaCha8Rng,
    log: Option<Vec<Draw>>,
}

impl RngDraws {
    pub(crate) fn new(rng: ChaCha8Rng) -> Self {
        RngDraws { rng, log: None }
    }

    pub(crate) fn recording(rng: ChaCha8Rng) -> Self {
        RngDraws {
            rng,
            log: Some(Vec::new()),
        }
    }

    pub(crate) fn into_log(self) -> Vec<Draw> {
        self.log.unwrap_or_default()
    }

    fn push(&mut self, d: Draw) -> f64 {
        if let Some(log) = &mut self.log {
            log.push(d);
        }
        d.value()
    }
}

impl DrawSource for RngDraws {
    fn uniform(&mut self) -> f64 {
        let u: f64 = self.rng.random();
        self.push(Draw::Uniform(u))
    }

    fn normal(&mut self) -> f64 {
        let z: f64 = self.rng.sample(StandardNormal);
        self.push(Draw::Normal(z))
    }
}

/// Replays `recorded`, falling back to a fresh stream once it runs out or
/// when the kind of draw requested changes. Every value handed out is
/// logged, so the log is the exact sequence a later replay reproduces.
pub(crate) struct Replay<'a> {
    recorded: &'a [Draw],
    pos: usize,
    fallback: RngDraws,
    log: Vec<Draw>,
}

impl<'a> Replay<'a> {
    pub(crate) fn new(recorded: &'a [Draw], fallback: ChaCha8Rng) -> Self {
        Replay {
            recorded,
            pos: 0,
            fallback: RngDraws::new(fallback),
            log: Vec::with_capacity(recorded.len()),
        }
    }

    pub(crate) fn into_log(self) -> Vec<Draw> {
        self.log
    }

    fn next(&mut self) -> Option<Draw> {
        let d = self.recorded.get(self.pos).copied();
        self.pos += 1;
        d
    }
}

impl DrawSource for Replay<'_> {
    fn uniform(&mut self) -> f64 {
        let u = match self.next() {
            Some(Draw::Uniform(u)) => u.clamp(0.0, BELOW_ONE),
            _ => self.fallback.uniform(),
        };
        self.log.push(Draw::Uniform(u));
        u
    }

    fn normal(&mut self) -> f64 {
        let z = match self.next() {
            Some(Draw::Normal(z)) => z,
            _ => self.fallback.normal(),
        };
        self.log.push(Draw::Normal(z));
        z
    }
}
