use std::io::BufRead;

use serde::Deserialize;

use revschwarz_core::catalog::{evaluate_with, BoundParams};
use revschwarz_core::space::SpaceSpec;
use revschwarz_core::triangle::{evaluate_triangle_with, TriangleOp, TriangleParams};
use revschwarz_core::verify::{
    certify_sharpness, fuzz_all, identity_campaign, sharpness_search, FuzzConfig, FuzzTarget,
};
use revschwarz_core::{
    BoundId, BoundInputs, ComplexifiedVector, Field, ParamSet, Space, Tolerance, Vector,
};

use crate::{Fatal, FieldArg, Options, Sink};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateRequest {
    bound: String,
    #[serde(default)]
    params: ParamSet,
    x: Option<Vector>,
    y: Option<Vector>,
    e: Option<Vector>,
    a: Option<Vector>,
    z: Option<ComplexifiedVector>,
    space: Option<SpaceSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleRequest {
    op: String,
    xs: Vec<Vector>,
    e: Vector,
    #[serde(default)]
    params: TriangleParams,
    space: Option<SpaceSpec>,
}

/// Non-empty lines with their 1-based numbers.
fn lines(input: Box<dyn BufRead>) -> impl Iterator<Item = Result<(usize, String), Fatal>> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(Fatal::from))
        .filter(|r| !matches!(r, Ok((_, l)) if l.trim().is_empty()))
}

fn parse<T: for<'de> Deserialize<'de>>(n: usize, line: &str) -> Result<T, Fatal> {
    serde_json::from_str(line).map_err(|e| Fatal(format!("line {n}: malformed request: {e}")))
}

fn at_line(n: usize) -> impl Fn(revschwarz_core::Error) -> Fatal {
    move |e| Fatal(format!("line {n}: {}: {e}", e.code()))
}

fn space(requested: Option<SpaceSpec>, n: usize) -> Result<Space, Fatal> {
    requested.map_or(Ok(Space::Euclidean), |s| s.build().map_err(at_line(n)))
}

pub(crate) fn evaluate(
    input: Box<dyn BufRead>,
    opts: &Options,
    sink: &mut Sink,
) -> Result<(), Fatal> {
    let tol = tolerance(opts)?;
    for item in lines(input) {
        let (n, line) = item?;
        let req: EvaluateRequest = parse(n, &line)?;
        let id: BoundId = req
            .bound
            .parse()
            .map_err(|e| Fatal(format!("line {n}: field `bound`: {e}")))?;
        let mut set = req.params;
        if matches!(id, BoundId::PowerP | BoundId::AlphaRot) && set.p.is_none() {
            set.p = Some(opts.p);
        }
        let params = BoundParams::parse(id, &set).map_err(at_line(n))?;
        let inputs = BoundInputs {
            x: req.x,
            y: req.y,
            e: req.e,
            a: req.a,
            z: req.z,
        };
        let space = space(req.space, n)?;
        let report = evaluate_with(&space, id, &inputs, &params, tol).map_err(at_line(n))?;
        sink.failed |= report.satisfied == Some(false);
        sink.emit(&report)?;
    }
    Ok(())
}

pub(crate) fn triangle(
    input: Box<dyn BufRead>,
    opts: &Options,
    sink: &mut Sink,
) -> Result<(), Fatal> {
    let tol = tolerance(opts)?;
    for item in lines(input) {
        let (n, line) = item?;
        let req: TriangleRequest = parse(n, &line)?;
        let op: TriangleOp = req
            .op
            .parse()
            .map_err(|e| Fatal(format!("line {n}: field `op`: {e}")))?;
        let mut params = req.params;
        if params.p.is_none()
            && matches!(
                op,
                TriangleOp::ReverseR | TriangleOp::ReversePower | TriangleOp::ReverseOutsideBall
            )
        {
            params.p = Some(opts.p);
        }
        let input = revschwarz_core::triangle::TriangleInput {
            xs: req.xs,
            e: req.e,
            params,
        };
        let space = space(req.space, n)?;
        let report = evaluate_triangle_with(&space, op, &input, tol).map_err(at_line(n))?;
        sink.failed |= report.satisfied == Some(false);
        sink.emit(&report)?;
    }
    Ok(())
}

fn tolerance(opts: &Options) -> Result<Tolerance, Fatal> {
    if opts.tolerance > 0.0 && opts.tolerance.is_finite() {
        Ok(Tolerance::new(opts.tolerance))
    } else {
        Err(Fatal(format!(
            "flag `--tolerance` must be > 0, got {}",
            opts.tolerance
        )))
    }
}

fn config(opts: &Options) -> Result<FuzzConfig, Fatal> {
    let fields = match opts.field {
        FieldArg::Real => vec![Field::Real],
        FieldArg::Complex => vec![Field::Complex],
        FieldArg::Both => vec![Field::Real, Field::Complex],
    };
    let cfg = FuzzConfig {
        seed: opts.seed,
        samples: opts.samples,
        dims: opts.dims.clone(),
        fields,
        slack_guard: opts.slack_guard,
        tolerance: opts.tolerance,
        workers: opts.workers,
        ..FuzzConfig::default()
    };
    cfg.validate()
        .map_err(|e| Fatal(format!("config: {}: {e}", e.code())))?;
    Ok(cfg)
}

fn targets(opts: &Options) -> Result<Vec<FuzzTarget>, Fatal> {
    if opts.bound.is_empty() {
        return Ok(FuzzTarget::all());
    }
    opts.bound
        .iter()
        .map(|b| b.parse().map_err(|e| Fatal(format!("flag `--bound`: {e}"))))
        .collect()
}

pub(crate) fn fuzz(opts: &Options, sink: &mut Sink) -> Result<(), Fatal> {
    let cfg = config(opts)?;
    for report in fuzz_all(&targets(opts)?, &cfg)? {
        sink.failed |= report.violations > 0;
        sink.emit(&report)?;
    }
    Ok(())
}

pub(crate) fn sharpen(opts: &Options, search: bool, sink: &mut Sink) -> Result<(), Fatal> {
    let cfg = config(opts)?;
    let ids: Vec<BoundId> = if opts.bound.is_empty() {
        BoundId::ALL.to_vec()
    } else {
        targets(opts)?
            .into_iter()
            .map(|t| match t {
                FuzzTarget::Bound(id) => Ok(id),
                FuzzTarget::Triangle(op) => Err(Fatal(format!(
                    "flag `--bound`: {op} has no sharpness search"
                ))),
            })
            .collect::<Result<_, _>>()?
    };
    for id in ids {
        let result = if search {
            sharpness_search(id, &cfg)?
        } else {
            certify_sharpness(id, &cfg)?
        };
        sink.emit(&result)?;
    }
    Ok(())
}

pub(crate) fn identities(opts: &Options, sink: &mut Sink) -> Result<(), Fatal> {
    let summary = identity_campaign(&config(opts)?)?;
    sink.failed |= !summary.passed;
    sink.emit(&summary)
}
