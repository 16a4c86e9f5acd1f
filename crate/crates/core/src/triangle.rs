//! Reverses of the generalized triangle inequality
//! `Σ‖x_i‖ ≥ ‖Σ x_i‖` for a finite family and a unit vector `e`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::Num;
use crate::error::{Error, Result};
use crate::json::{ext_f64, ext_f64_opt};
use crate::space::{Field, Scalar, Space, Vector};
use crate::tolerance::{Tolerance, UNIT_NORM_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleOp {
    /// `Σ‖x_i‖ − ‖Σx_i‖ ≤ Σk_i` whenever `‖x_i‖ − Re⟨e,x_i⟩ ≤ k_i`.
    ReverseK,
    /// `≤ ½Σr_i²‖x_i‖` whenever `‖x_i/‖x_i‖ − e‖ ≤ r_i`, plus three Hölder
    /// majorants.
    ReverseR,
    /// `≤ min(A, B)` with `A = 2Σ‖x_i‖(‖x_i−e‖/(‖x_i‖+1))²` and
    /// `B = ½Σ(‖x_i‖+1)²‖x_i−e‖²/‖x_i‖`.
    ReverseMinAb,
    /// `≤ ½p²Σ‖x_i‖^(p−1)‖x_i−e‖²` (p ≥ 1) or `½Σ‖x_i‖^(1−p)‖x_i−e‖²`
    /// (p < 1), for `‖x_i‖ > 1`.
    ReverseOutsideBall,
    /// `≤ ½Σ(Re α_i/Im α_i)d_i²` whenever `‖x_i − (Im α_i/Re α_i)e‖ ≤ d_i`
    /// (complex spaces).
    ReverseComplexAlpha,
    /// `≤ ½ min(Σ[(‖x_i‖+1)^2p − ‖x_i+e‖^2p]^(1/p), Σ[‖x_i−e‖^2p − |‖x_i‖−1|^2p]^(1/p))`.
    ReversePower,
}

impl TriangleOp {
    pub const ALL: [TriangleOp; 6] = [
        TriangleOp::ReverseK,
        TriangleOp::ReverseR,
        TriangleOp::ReverseMinAb,
        TriangleOp::ReverseOutsideBall,
        TriangleOp::ReverseComplexAlpha,
        TriangleOp::ReversePower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriangleOp::ReverseK => "reverse_k",
            TriangleOp::ReverseR => "reverse_r",
            TriangleOp::ReverseMinAb => "reverse_min_ab",
            TriangleOp::ReverseOutsideBall => "reverse_outside_ball",
            TriangleOp::ReverseComplexAlpha => "reverse_complex_alpha",
            TriangleOp::ReversePower => "reverse_power",
        }
    }
}

impl fmt::Display for TriangleOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TriangleOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TriangleOp::ALL
            .iter()
            .copied()
            .find(|op| op.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Malformed(format!("unknown triangle op `{s}`")))
    }
}

/// Optional per-vector parameters and the global exponent.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleParams {
    /// Upper bounds `k_i` for `reverse_k`; the exact minimum is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    /// Radii `r_i` for `reverse_r`; the exact distances are used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<f64>>,
    /// Radii `d_i` for `reverse_complex_alpha`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

/// A family `x_1..x_n`, a unit vector `e` and the op's parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleInput {
    pub xs: Vec<Vector>,
    pub e: Vector,
    #[serde(default)]
    pub params: TriangleParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub op: TriangleOp,
    /// `Σ‖x_i‖ − ‖Σx_i‖`
    pub gap: f64,
    pub bound: f64,
    /// Per-vector coefficients (`k_i`, `r_i` or `d_i`) where the op has them.
    pub coefficients: Option<Vec<f64>>,
    pub per_branch: Option<Vec<f64>>,
    pub applicable: bool,
    /// Smallest margin of the op's hypotheses; `+inf` when unconditional.
    #[serde(with = "ext_f64")]
    pub hypothesis_slack: f64,
    /// `None` when the hypothesis fails.
    pub satisfied: Option<bool>,
    /// Distance to the equality conditions of `reverse_k`:
    /// `max(Σk_i − Σ‖x_i‖, 0) + ‖Σx_i − (Σ‖x_i‖ − Σk_i)e‖`.
    #[serde(default, with = "ext_f64_opt", skip_serializing_if = "Option::is_none")]
    pub equality_deficit: Option<f64>,
}

impl TriangleReport {
    /// Smallest normalized margin of `gap ≤ bound` and, for `reverse_r`,
    /// of `bound ≤ branch`.
    pub fn margin(&self) -> f64 {
        let mut m = Tolerance::margin(self.gap, self.bound);
        if self.op == TriangleOp::ReverseR {
            for &b in self.per_branch.iter().flatten() {
                m = m.min(Tolerance::margin(self.bound, b));
            }
        }
        m
    }
}

/// `Σ‖x_i‖ − ‖Σx_i‖` in the standard space.
pub fn triangle_gap(xs: &[Vector]) -> Result<f64> {
    triangle_gap_in(&Space::Euclidean, xs)
}

pub fn triangle_gap_in(space: &Space, xs: &[Vector]) -> Result<f64> {
    let first = xs
        .first()
        .ok_or_else(|| Error::non_admissible("the family must be nonempty"))?;
    space.check(first)?;
    for x in &xs[1..] {
        first.check_compatible(x)?;
    }
    Ok(gap_of(space, xs).0)
}

/// Gap, norms and the sum of the family; inputs already validated.
fn gap_of(space: &Space, xs: &[Vector]) -> (f64, Vec<f64>, Vector) {
    let norms: Vec<f64> = xs.iter().map(|x| space.nrm(x)).collect();
    let sum = xs[1..].iter().fold(xs[0].clone(), |acc, x| acc.add(x));
    (norms.iter().sum::<f64>() - space.nrm(&sum), norms, sum)
}

fn validate(space: &Space, input: &TriangleInput) -> Result<()> {
    let first = input
        .xs
        .first()
        .ok_or_else(|| Error::non_admissible("the family must be nonempty"))?;
    space.check(first)?;
    for x in &input.xs {
        first.check_compatible(x)?;
    }
    first.check_compatible(&input.e)?;
    let ne = space.nrm(&input.e);
    if (ne - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::non_admissible(format!(
            "`e` must have unit norm, got {ne}"
        )));
    }
    Ok(())
}

fn per_vector<T: Copy>(values: &Option<Vec<T>>, n: usize, key: &str) -> Result<Option<Vec<T>>> {
    match values {
        Some(v) if v.len() != n => Err(Error::param(format!(
            "`{key}` has {} entries for {n} vectors",
            v.len()
        ))),
        other => Ok(other.clone()),
    }
}

fn finite_all(values: &[f64], key: &str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::param(format!("`{key}` must be finite")))
    }
}

fn nonzero_family(norms: &[f64], op: TriangleOp) -> Result<()> {
    if norms.contains(&0.0) {
        return Err(Error::non_admissible(format!(
            "{op} requires every x_i != 0"
        )));
    }
    Ok(())
}

struct Outcome {
    bound: f64,
    coefficients: Option<Vec<f64>>,
    per_branch: Option<Vec<f64>>,
    slack: f64,
    equality_deficit: Option<f64>,
}

/// Evaluates `op` in the standard space at the default tolerance.
pub fn evaluate_triangle(op: TriangleOp, input: &TriangleInput) -> Result<TriangleReport> {
    evaluate_triangle_with(&Space::Euclidean, op, input, Tolerance::default())
}

pub fn evaluate_triangle_with(
    space: &Space,
    op: TriangleOp,
    input: &TriangleInput,
    tol: Tolerance,
) -> Result<TriangleReport> {
    validate(space, input)?;
    let xs = &input.xs;
    let e = &input.e;
    let n = xs.len();
    let params = &input.params;
    let (gap, norms, sum) = gap_of(space, xs);
    let to_e: Vec<f64> = xs.iter().map(|x| space.nrm(&x.sub(e))).collect();

    let outcome = match op {
        TriangleOp::ReverseK => {
            let exact: Vec<f64> = xs
                .iter()
                .zip(&norms)
                .map(|(x, nx)| nx - space.ip(e, x).re)
                .collect();
            let (ks, slack) = match per_vector(&params.k, n, "k")? {
                None => (exact, f64::INFINITY),
                Some(ks) => {
                    finite_all(&ks, "k")?;
                    let slack = ks
                        .iter()
                        .zip(&exact)
                        .map(|(k, min)| k - min)
                        .fold(f64::INFINITY, f64::min);
                    (ks, slack)
                }
            };
            let total: f64 = ks.iter().sum();
            let norm_total: f64 = norms.iter().sum();
            let deficit = (total - norm_total).max(0.0)
                + space.nrm(&sum.sub(&e.scale_re(norm_total - total)));
            Outcome {
                bound: total,
                coefficients: Some(ks),
                per_branch: None,
                slack,
                equality_deficit: Some(deficit),
            }
        }
        TriangleOp::ReverseR => {
            nonzero_family(&norms, op)?;
            let p = params.p.unwrap_or(crate::catalog::DEFAULT_P);
            if !(p.is_finite() && p > 1.0) {
                return Err(Error::param("`p` must be > 1"));
            }
            let q = p / (p - 1.0);
            let exact: Vec<f64> = xs
                .iter()
                .zip(&norms)
                .map(|(x, nx)| space.nrm(&x.scale_re(1.0 / nx).sub(e)))
                .collect();
            let (rs, slack) = match per_vector(&params.r, n, "r")? {
                None => (exact, f64::INFINITY),
                Some(rs) => {
                    finite_all(&rs, "r")?;
                    let slack = rs
                        .iter()
                        .zip(&exact)
                        .map(|(r, min)| r - min)
                        .fold(f64::INFINITY, f64::min);
                    (rs, slack)
                }
            };
            let bound = 0.5 * rs.iter().zip(&norms).map(|(r, nx)| r * r * nx).sum::<f64>();
            let r_max = rs.iter().fold(0.0f64, |m, r| m.max(r.abs()));
            let n_max = norms.iter().fold(0.0f64, |m, &x| m.max(x));
            let max_form = 0.5 * r_max * r_max * norms.iter().sum::<f64>();
            let holder = 0.5
                * rs.iter()
                    .map(|r| r.abs().powf(2.0 * p))
                    .sum::<f64>()
                    .powf(1.0 / p)
                * norms.iter().map(|x| x.powf(q)).sum::<f64>().powf(1.0 / q);
            let max_norm = 0.5 * n_max * rs.iter().map(|r| r * r).sum::<f64>();
            Outcome {
                bound,
                coefficients: Some(rs),
                per_branch: Some(vec![max_form, holder, max_norm]),
                slack,
                equality_deficit: None,
            }
        }
        TriangleOp::ReverseMinAb => {
            nonzero_family(&norms, op)?;
            let mut a = 0.0;
            let mut b = 0.0;
            for (nx, d) in norms.iter().zip(&to_e) {
                let ratio = d / (nx + 1.0);
                a += 2.0 * nx * ratio * ratio;
                b += 0.5 * (nx + 1.0) * (nx + 1.0) * d * d / nx;
            }
            Outcome {
                bound: a.min(b),
                coefficients: None,
                per_branch: Some(vec![a, b]),
                slack: f64::INFINITY,
                equality_deficit: None,
            }
        }
        TriangleOp::ReverseOutsideBall => {
            let p = params
                .p
                .ok_or_else(|| Error::param("reverse_outside_ball requires `p`"))?;
            if !p.is_finite() {
                return Err(Error::param("`p` must be finite"));
            }
            let slack = norms
                .iter()
                .map(|nx| nx - 1.0)
                .fold(f64::INFINITY, f64::min);
            let bound = if p >= 1.0 {
                0.5 * p
                    * p
                    * norms
                        .iter()
                        .zip(&to_e)
                        .map(|(nx, d)| nx.powf(p - 1.0) * d * d)
                        .sum::<f64>()
            } else {
                0.5 * norms
                    .iter()
                    .zip(&to_e)
                    .map(|(nx, d)| nx.powf(1.0 - p) * d * d)
                    .sum::<f64>()
            };
            Outcome {
                bound,
                coefficients: None,
                per_branch: None,
                slack,
                equality_deficit: None,
            }
        }
        TriangleOp::ReverseComplexAlpha => {
            if e.field() != Field::Complex {
                return Err(Error::non_admissible(
                    "reverse_complex_alpha requires a complex space",
                ));
            }
            let alphas = per_vector(&params.alpha, n, "alpha")?
                .ok_or_else(|| Error::param("reverse_complex_alpha requires `alpha`"))?;
            let mut ratios = Vec::with_capacity(n);
            for Num(alpha) in &alphas {
                if !(alpha.re.is_finite()
                    && alpha.im.is_finite()
                    && alpha.re > 0.0
                    && alpha.im > 0.0)
                {
                    return Err(Error::param("every alpha_i needs Re > 0 and Im > 0"));
                }
                ratios.push(alpha.im / alpha.re);
            }
            let dist: Vec<f64> = xs
                .iter()
                .zip(&ratios)
                .map(|(x, t)| space.nrm(&x.sub_scaled(Scalar::new(*t, 0.0), e)))
                .collect();
            let (ds, slack) = match per_vector(&params.d, n, "d")? {
                None => (dist, f64::INFINITY),
                Some(ds) => {
                    finite_all(&ds, "d")?;
                    let slack = ds
                        .iter()
                        .zip(&dist)
                        .map(|(d, actual)| d - actual)
                        .fold(f64::INFINITY, f64::min);
                    (ds, slack)
                }
            };
            let bound = 0.5 * ds.iter().zip(&ratios).map(|(d, t)| d * d / t).sum::<f64>();
            Outcome {
                bound,
                coefficients: Some(ds),
                per_branch: None,
                slack,
                equality_deficit: None,
            }
        }
        TriangleOp::ReversePower => {
            let p = params.p.unwrap_or(crate::catalog::DEFAULT_P);
            if !(p.is_finite() && p >= 1.0) {
                return Err(Error::param("`p` must be >= 1"));
            }
            let mut b1 = 0.0;
            let mut b2 = 0.0;
            for ((x, nx), d) in xs.iter().zip(&norms).zip(&to_e) {
                let plus = space.nrm(&x.add(e));
                b1 += ((nx + 1.0).powf(2.0 * p) - plus.powf(2.0 * p))
                    .max(0.0)
                    .powf(1.0 / p);
                b2 += (d.powf(2.0 * p) - (nx - 1.0).abs().powf(2.0 * p))
                    .max(0.0)
                    .powf(1.0 / p);
            }
            let (b1, b2) = (0.5 * b1, 0.5 * b2);
            Outcome {
                bound: b1.min(b2),
                coefficients: None,
                per_branch: Some(vec![b1, b2]),
                slack: f64::INFINITY,
                equality_deficit: None,
            }
        }
    };

    // vectors on the unit sphere are outside the allowed region
    let applicable = if op == TriangleOp::ReverseOutsideBall {
        outcome.slack > 0.0
    } else {
        outcome.slack >= 0.0
    };
    let satisfied = applicable.then(|| {
        let mut ok = tol.le(gap, outcome.bound);
        if op == TriangleOp::ReverseR {
            ok &= outcome
                .per_branch
                .iter()
                .flatten()
                .all(|&b| tol.le(outcome.bound, b));
        }
        ok
    });
    Ok(TriangleReport {
        op,
        gap,
        bound: outcome.bound,
        coefficients: outcome.coefficients,
        per_branch: outcome.per_branch,
        applicable,
        hypothesis_slack: outcome.slack,
        satisfied,
        equality_deficit: outcome.equality_deficit,
    })
}

fn input(xs: &[Vector], e: &Vector, params: TriangleParams) -> TriangleInput {
    TriangleInput {
        xs: xs.to_vec(),
        e: e.clone(),
        params,
    }
}

/// Exact `k_i = ‖x_i‖ − Re⟨e,x_i⟩`.
pub fn reverse_k(xs: &[Vector], e: &Vector) -> Result<TriangleReport> {
    evaluate_triangle(
        TriangleOp::ReverseK,
        &input(xs, e, TriangleParams::default()),
    )
}

/// User-supplied `k_i`; not applicable if some `k_i` is below its minimum.
pub fn reverse_k_with(xs: &[Vector], e: &Vector, ks: &[f64]) -> Result<TriangleReport> {
    let params = TriangleParams {
        k: Some(ks.to_vec()),
        ..Default::default()
    };
    evaluate_triangle(TriangleOp::ReverseK, &input(xs, e, params))
}

pub fn reverse_r(xs: &[Vector], e: &Vector, p: f64) -> Result<TriangleReport> {
    let params = TriangleParams {
        p: Some(p),
        ..Default::default()
    };
    evaluate_triangle(TriangleOp::ReverseR, &input(xs, e, params))
}

pub fn reverse_min_ab(xs: &[Vector], e: &Vector) -> Result<TriangleReport> {
    evaluate_triangle(
        TriangleOp::ReverseMinAb,
        &input(xs, e, TriangleParams::default()),
    )
}

pub fn reverse_outside_ball(xs: &[Vector], e: &Vector, p: f64) -> Result<TriangleReport> {
    let params = TriangleParams {
        p: Some(p),
        ..Default::default()
    };
    evaluate_triangle(TriangleOp::ReverseOutsideBall, &input(xs, e, params))
}

/// `ds` defaults to the exact distances `‖x_i − (Im α_i/Re α_i)e‖`.
pub fn reverse_complex_alpha(
    xs: &[Vector],
    e: &Vector,
    alphas: &[Scalar],
    ds: Option<&[f64]>,
) -> Result<TriangleReport> {
    let params = TriangleParams {
        alpha: Some(alphas.iter().copied().map(Num).collect()),
        d: ds.map(<[f64]>::to_vec),
        ..Default::default()
    };
    evaluate_triangle(TriangleOp::ReverseComplexAlpha, &input(xs, e, params))
}

pub fn reverse_power(xs: &[Vector], e: &Vector, p: f64) -> Result<TriangleReport> {
    let params = TriangleParams {
        p: Some(p),
        ..Default::default()
    };
    evaluate_triangle(TriangleOp::ReversePower, &input(xs, e, params))
}
