use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::Value;

use super::draws::{stream, RngDraws};
use super::hexfloat::hexify;
use super::sampler::{draw_sample, draw_triangle};
use super::FuzzConfig;
use crate::catalog::{evaluate_with, BoundId};
use crate::error::{Error, Result};
use crate::json::ext_f64_opt;
use crate::space::Space;
use crate::tolerance::Tolerance;
use crate::triangle::{evaluate_triangle_with, TriangleOp};

/// A registry bound or a triangle operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FuzzTarget {
    Bound(BoundId),
    Triangle(TriangleOp),
}

impl FuzzTarget {
    /// Every bound followed by every triangle operation.
    pub fn all() -> Vec<FuzzTarget> {
        BoundId::ALL
            .iter()
            .map(|&id| FuzzTarget::Bound(id))
            .chain(TriangleOp::ALL.iter().map(|&op| FuzzTarget::Triangle(op)))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            FuzzTarget::Bound(id) => id.name(),
            FuzzTarget::Triangle(op) => op.name(),
        }
    }
}

impl fmt::Display for FuzzTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FuzzTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BoundId>()
            .map(FuzzTarget::Bound)
            .or_else(|_| s.parse::<TriangleOp>().map(FuzzTarget::Triangle))
            .map_err(|_| Error::Malformed(format!("unknown bound or triangle op `{s}`")))
    }
}

impl Serialize for FuzzTarget {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub bound_id: FuzzTarget,
    pub attempted: u64,
    pub admissible: u64,
    /// Admissible samples with `satisfied == false`.
    pub violations: u64,
    /// Smallest normalized margin over admissible samples.
    #[serde(with = "ext_f64_opt")]
    pub worst_margin: Option<f64>,
    pub worst_index: Option<u64>,
    /// The sample attaining `worst_margin`, floats hex-encoded.
    pub worst_input: Option<Value>,
}

#[derive(Clone, Copy)]
enum Outcome {
    Inadmissible,
    Checked { margin: f64, violated: bool },
}

fn check_bound(id: BoundId, cfg: &FuzzConfig, index: u64) -> Outcome {
    let mut d = RngDraws::new(stream(cfg.seed, id.name(), index));
    let Ok(sample) = draw_sample(&mut d, id, cfg, index, None) else {
        return Outcome::Inadmissible;
    };
    let tol = Tolerance::new(cfg.tolerance);
    match evaluate_with(&Space::Euclidean, id, &sample.inputs, &sample.params, tol) {
        Ok(r) if r.applicable && r.hypothesis_slack >= cfg.slack_guard => Outcome::Checked {
            margin: r.margin().unwrap_or(f64::INFINITY),
            violated: r.satisfied == Some(false),
        },
        _ => Outcome::Inadmissible,
    }
}

fn check_triangle(op: TriangleOp, cfg: &FuzzConfig, index: u64) -> Outcome {
    let mut d = RngDraws::new(stream(cfg.seed, op.name(), index));
    let Ok(sample) = draw_triangle(&mut d, op, cfg, index) else {
        return Outcome::Inadmissible;
    };
    let tol = Tolerance::new(cfg.tolerance);
    match evaluate_triangle_with(&Space::Euclidean, op, &sample.input, tol) {
        Ok(r) if r.applicable && r.hypothesis_slack >= cfg.slack_guard => Outcome::Checked {
            margin: r.margin(),
            violated: r.satisfied == Some(false),
        },
        _ => Outcome::Inadmissible,
    }
}

fn run(target: FuzzTarget, cfg: &FuzzConfig, pool: &rayon::ThreadPool) -> FuzzReport {
    let outcomes: Vec<Outcome> = pool.install(|| {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| match target {
                FuzzTarget::Bound(id) => check_bound(id, cfg, i),
                FuzzTarget::Triangle(op) => check_triangle(op, cfg, i),
            })
            .collect()
    });
    let mut report = FuzzReport {
        bound_id: target,
        attempted: cfg.samples,
        admissible: 0,
        violations: 0,
        worst_margin: None,
        worst_index: None,
        worst_input: None,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        if let Outcome::Checked { margin, violated } = o {
            report.admissible += 1;
            report.violations += violated as u64;
            if report.worst_margin.is_none_or(|w| margin < w) {
                report.worst_margin = Some(margin);
                report.worst_index = Some(i as u64);
            }
        }
    }
    report.worst_input = report.worst_index.map(|i| {
        let value = match target {
            FuzzTarget::Bound(id) => {
                let mut d = RngDraws::new(stream(cfg.seed, id.name(), i));
                serde_json::to_value(
                    draw_sample(&mut d, id, cfg, i, None).expect("replayed sample"),
                )
            }
            FuzzTarget::Triangle(op) => {
                let mut d = RngDraws::new(stream(cfg.seed, op.name(), i));
                serde_json::to_value(draw_triangle(&mut d, op, cfg, i).expect("replayed sample"))
            }
        };
        hexify(&value.expect("sample serializes"))
    });
    report
}

/// Fuzzes one registry bound with `cfg.samples` constructed samples.
pub fn fuzz(id: BoundId, cfg: &FuzzConfig) -> Result<FuzzReport> {
    cfg.validate()?;
    Ok(run(FuzzTarget::Bound(id), cfg, &cfg.pool()))
}

pub fn fuzz_triangle(op: TriangleOp, cfg: &FuzzConfig) -> Result<FuzzReport> {
    cfg.validate()?;
    Ok(run(FuzzTarget::Triangle(op), cfg, &cfg.pool()))
}

/// Fuzzes `targets` in order, sharing one worker pool.
pub fn fuzz_all(targets: &[FuzzTarget], cfg: &FuzzConfig) -> Result<Vec<FuzzReport>> {
    cfg.validate()?;
    let pool = cfg.pool();
    Ok(targets.iter().map(|&t| run(t, cfg, &pool)).collect())
}
