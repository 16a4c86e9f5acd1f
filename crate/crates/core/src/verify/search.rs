use rayon::prelude::*;
use serde::Serialize;

use super::draws::{stream, Draw, Replay, RngDraws};
use super::sampler::draw_sample;
use super::witness::{equality_witness, Witness};
use super::FuzzConfig;
use crate::catalog::{evaluate, BoundId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Constructed,
    Searched,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessResult {
    pub bound_id: BoundId,
    pub best_tightness: f64,
    /// Best instance found; `None` only if no admissible instance was met.
    pub witness: Option<Witness>,
    pub evaluations: u64,
    pub method: Method,
}

struct Candidate {
    tightness: f64,
    witness: Witness,
}

/// Tightness of the sample the draw source produces, if the sample is
/// valid, applicable and has a tightness.
fn score(
    d: &mut impl super::draws::DrawSource,
    id: BoundId,
    cfg: &FuzzConfig,
) -> Option<Candidate> {
    let sample = draw_sample(d, id, cfg, 0, None).ok()?;
    let report = evaluate(id, &sample.inputs, &sample.params).ok()?;
    if !report.applicable {
        return None;
    }
    let tightness = report.tightness?;
    Some(Candidate {
        tightness,
        witness: Witness {
            bound_id: id,
            inputs: sample.inputs,
            params: sample.params,
            tightness,
        },
    })
}

fn better(a: &Option<Candidate>, b: &Option<Candidate>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a.tightness > b.tightness,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Coordinate-wise shrinking-step ascent over the raw draws of the
/// sampler. The sampler maps any draw vector onto the hypothesis set, so
/// every move stays admissible.
fn local_search(
    id: BoundId,
    cfg: &FuzzConfig,
    restart: u64,
    budget: u64,
) -> (Option<Candidate>, u64) {
    let tag = format!("search/{}", id.name());
    let mut start = RngDraws::recording(stream(cfg.seed, &tag, restart));
    let mut best = score(&mut start, id, cfg);
    let mut draws: Vec<Draw> = start.into_log();
    let mut evals = 1;
    let mut step = cfg.search.initial_step;
    let mut fill = 0u64;
    while evals < budget && step >= cfg.search.min_step {
        let mut improved = false;
        let mut k = 0;
        while k < draws.len() && evals < budget {
            for sign in [1.0, -1.0] {
                if evals >= budget {
                    break;
                }
                let mut trial = draws.clone();
                trial[k] = match trial[k] {
                    Draw::Uniform(u) => Draw::Uniform(u + sign * step),
                    Draw::Normal(z) => Draw::Normal(z + sign * step),
                };
                fill += 1;
                let fallback = stream(cfg.seed, &tag, (restart << 32) | fill);
                let mut replay = Replay::new(&trial, fallback);
                let cand = score(&mut replay, id, cfg);
                evals += 1;
                if better(&cand, &best) {
                    best = cand;
                    draws = replay.into_log();
                    improved = true;
                    break;
                }
            }
            k += 1;
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, evals)
}

/// Multi-start derivative-free maximization of tightness. Restarts run in
/// parallel; the winner is the highest tightness, ties going to the lowest
/// restart index.
pub fn sharpness_search(id: BoundId, cfg: &FuzzConfig) -> Result<SharpnessResult> {
    cfg.validate()?;
    let restarts = cfg.search.restarts.min(cfg.search.evaluations);
    let per = cfg.search.evaluations / restarts;
    let runs: Vec<(Option<Candidate>, u64)> = cfg.pool().install(|| {
        (0..restarts)
            .into_par_iter()
            .map(|r| local_search(id, cfg, r, per))
            .collect()
    });
    let evaluations = runs.iter().map(|(_, n)| n).sum();
    let mut best: Option<Candidate> = None;
    for (cand, _) in runs {
        if better(&cand, &best) {
            best = cand;
        }
    }
    Ok(SharpnessResult {
        bound_id: id,
        best_tightness: best.as_ref().map_or(0.0, |c| c.tightness),
        witness: best.map(|c| c.witness),
        evaluations,
        method: Method::Searched,
    })
}

/// The constructed equality witness when one is known, otherwise a search.
pub fn certify_sharpness(id: BoundId, cfg: &FuzzConfig) -> Result<SharpnessResult> {
    match equality_witness(id) {
        Ok(w) => Ok(SharpnessResult {
            bound_id: id,
            best_tightness: w.tightness,
            witness: Some(w),
            evaluations: 1,
            method: Method::Constructed,
        }),
        Err(Error::NoKnownWitness(_)) => sharpness_search(id, cfg),
        Err(e) => Err(e),
    }
}
