use serde::{Deserialize, Serialize};

use super::params::BoundParams;
use super::quantity::check_unit;
use super::{BoundId, Direction, InputShape};
use crate::error::{Error, Result};
use crate::json::ext_f64;
use crate::space::{conj_partner, ComplexifiedVector, Field, Scalar, Space, Vector};
use crate::tolerance::{Tolerance, HILE_SINGULAR_GAP};

/// Vectors handed to a bound. Which slots are read depends on
/// [`InputShape`]; cone bounds take their reference vector from `a` and
/// fall back to `y`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ComplexifiedVector>,
}

impl BoundInputs {
    pub fn pair(x: Vector, y: Vector) -> Self {
        BoundInputs {
            x: Some(x),
            y: Some(y),
            ..Default::default()
        }
    }

    pub fn pair_unit(x: Vector, y: Vector, e: Vector) -> Self {
        BoundInputs {
            x: Some(x),
            y: Some(y),
            e: Some(e),
            ..Default::default()
        }
    }

    pub fn single_unit(x: Vector, e: Vector) -> Self {
        BoundInputs {
            x: Some(x),
            e: Some(e),
            ..Default::default()
        }
    }

    pub fn cone(x: Vector, a: Vector) -> Self {
        BoundInputs {
            x: Some(x),
            a: Some(a),
            ..Default::default()
        }
    }

    pub fn complexified(z: ComplexifiedVector, a: Vector) -> Self {
        BoundInputs {
            z: Some(z),
            a: Some(a),
            ..Default::default()
        }
    }

    /// Scalar field of the inputs (`REAL` for complexified inputs).
    pub fn field(&self) -> Option<Field> {
        self.x
            .as_ref()
            .or(self.a.as_ref())
            .map(Vector::field)
            .or(self.z.as_ref().map(|_| Field::Real))
    }
}

/// Outcome of a hypothesis check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub applicable: bool,
    /// Signed margin, positive when strictly satisfied; `+inf` for
    /// unconditional bounds.
    #[serde(with = "ext_f64")]
    pub slack: f64,
}

/// One evaluation of a bound on concrete inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub applicable: bool,
    #[serde(with = "ext_f64")]
    pub hypothesis_slack: f64,
    #[serde(with = "ext_f64")]
    pub lhs: f64,
    #[serde(with = "ext_f64")]
    pub rhs: f64,
    pub direction: Direction,
    /// `None` when the hypothesis fails.
    pub satisfied: Option<bool>,
    pub tightness: Option<f64>,
    pub chain_values: Option<Vec<f64>>,
    #[serde(skip)]
    links: Vec<(usize, usize)>,
    #[serde(skip)]
    values: Vec<f64>,
}

impl BoundReport {
    /// Smallest normalized margin over every link of the bound
    /// (see [`Tolerance::margin`]); negative means some link is violated
    /// before tolerance. `None` for reports restored from JSON.
    pub fn margin(&self) -> Option<f64> {
        self.links
            .iter()
            .map(|&(i, j)| Tolerance::margin(self.values[i], self.values[j]))
            .reduce(f64::min)
    }

    /// Every term of the bound in statement order, including two-term bounds.
    pub fn terms(&self) -> &[f64] {
        &self.values
    }
}

/// Terms of a bound in statement order plus the `values[i] <= values[j]`
/// links the statement asserts.
struct Terms {
    values: Vec<f64>,
    links: Vec<(usize, usize)>,
    lhs: usize,
    /// Headline right-hand side: min of these terms for an upper bound,
    /// max for a lower one.
    rhs: Vec<usize>,
    upper: bool,
}

impl Terms {
    /// `values[0] <= values[1]`.
    fn upper(lhs: f64, rhs: f64) -> Self {
        Terms {
            values: vec![lhs, rhs],
            links: vec![(0, 1)],
            lhs: 0,
            rhs: vec![1],
            upper: true,
        }
    }

    /// `values[0] >= values[1]`.
    fn lower(lhs: f64, rhs: f64) -> Self {
        Terms {
            values: vec![lhs, rhs],
            links: vec![(1, 0)],
            lhs: 0,
            rhs: vec![1],
            upper: false,
        }
    }

    /// Ascending chain `values[0] <= values[1] <= ...` with headline
    /// `values[lhs] <= values[rhs]`.
    fn ascending(values: Vec<f64>, lhs: usize, rhs: usize) -> Self {
        let links = (1..values.len()).map(|k| (k - 1, k)).collect();
        Terms {
            values,
            links,
            lhs,
            rhs: vec![rhs],
            upper: true,
        }
    }

    fn custom(values: Vec<f64>, links: &[(usize, usize)], lhs: usize, rhs: &[usize]) -> Self {
        Terms {
            values,
            links: links.to_vec(),
            lhs,
            rhs: rhs.to_vec(),
            upper: true,
        }
    }
}

struct Evaluation {
    slack: f64,
    terms: Terms,
}

fn missing(slot: &str, id: BoundId) -> Error {
    Error::Malformed(format!("{id} requires input vector `{slot}`"))
}

fn nonzero(space: &Space, v: &Vector, slot: &str, id: BoundId) -> Result<f64> {
    let n = space.nrm(v);
    if n == 0.0 {
        return Err(Error::non_admissible(format!(
            "{id} requires `{slot}` != 0"
        )));
    }
    Ok(n)
}

fn wrong_params(id: BoundId) -> Error {
    Error::param(format!("parameters do not belong to {id}"))
}

/// `x - s y`, keeping real vectors real.
fn minus(x: &Vector, s: Scalar, y: &Vector) -> Vector {
    let s = if x.field() == Field::Real {
        Scalar::new(s.re, 0.0)
    } else {
        s
    };
    x.sub_scaled(s, y)
}

/// Vectors of one request after shape validation.
struct Slots<'a> {
    x: &'a Vector,
    y: &'a Vector,
    e: &'a Vector,
}

fn slots<'a>(id: BoundId, space: &Space, inputs: &'a BoundInputs) -> Result<Slots<'a>> {
    let x = inputs.x.as_ref().ok_or_else(|| missing("x", id))?;
    space.check(x)?;
    let shape = id.info().inputs;
    let (y, e) = match shape {
        InputShape::Pair => (inputs.y.as_ref().ok_or_else(|| missing("y", id))?, x),
        InputShape::PairUnit => (
            inputs.y.as_ref().ok_or_else(|| missing("y", id))?,
            inputs.e.as_ref().ok_or_else(|| missing("e", id))?,
        ),
        InputShape::SingleUnit => {
            let e = inputs.e.as_ref().ok_or_else(|| missing("e", id))?;
            (e, e)
        }
        InputShape::Cone => (
            inputs
                .a
                .as_ref()
                .or(inputs.y.as_ref())
                .ok_or_else(|| missing("a", id))?,
            x,
        ),
        InputShape::Complexified => unreachable!("complexified inputs take a separate path"),
    };
    x.check_compatible(y)?;
    x.check_compatible(e)?;
    if matches!(shape, InputShape::PairUnit | InputShape::SingleUnit) {
        check_unit(space, e)?;
    }
    Ok(Slots { x, y, e })
}

fn kurepa(space: &Space, inputs: &BoundInputs) -> Result<Evaluation> {
    let id = BoundId::Kurepa;
    let z = inputs.z.as_ref().ok_or_else(|| missing("z", id))?;
    let a = inputs.a.as_ref().ok_or_else(|| missing("a", id))?;
    if a.field() != Field::Real {
        return Err(Error::non_admissible(
            "KUREPA needs `a` in the underlying real space",
        ));
    }
    z.re().check_compatible(a)?;
    space.check(a)?;
    let a_c = ComplexifiedVector::from_real(a.clone())?;
    let za = space.cip(z, &a_c).norm_sqr();
    let zz = space.cip(z, &conj_partner(z)).norm();
    let nz2 = space.nrm_sq(z.re()) + space.nrm_sq(z.im());
    let na2 = space.nrm_sq(a);
    Ok(Evaluation {
        slack: f64::INFINITY,
        terms: Terms::ascending(vec![za, 0.5 * na2 * (nz2 + zz), na2 * nz2], 0, 1),
    })
}

fn compute(
    id: BoundId,
    space: &Space,
    inputs: &BoundInputs,
    params: &BoundParams,
) -> Result<Evaluation> {
    if id == BoundId::Kurepa {
        if *params != BoundParams::None {
            return Err(wrong_params(id));
        }
        return kurepa(space, inputs);
    }
    let Slots { x, y, e } = slots(id, space, inputs)?;
    let field = x.field();
    params.check_field(field)?;
    if id.info().complex_only && field != Field::Complex {
        return Err(Error::non_admissible(format!(
            "{id} requires a complex space"
        )));
    }

    let nx = space.nrm(x);
    let ny = space.nrm(y);
    let xy = space.ip(x, y);
    let re_gap = nx * ny - xy.re;
    let abs_gap = nx * ny - xy.norm();
    let quad_gap = space.nrm_sq(x) * space.nrm_sq(y) - xy.norm_sqr();
    let dist = || space.nrm(&x.sub(y));
    let inf = f64::INFINITY;

    use BoundId::*;
    let (slack, terms) = match (id, *params) {
        (RefineSplit, BoundParams::None) => {
            let split = space.ip(x, e) * space.ip(e, y);
            let mid = (xy - split).norm() + split.norm();
            let terms = Terms {
                values: vec![nx * ny, mid, xy.norm()],
                links: vec![(1, 0), (2, 1)],
                lhs: 0,
                rhs: vec![1],
                upper: false,
            };
            (inf, terms)
        }
        (WeakRefine, BoundParams::WeakRefine { r1, r2 }) => {
            let slack = (dist() - r2).min(r1 - (nx - ny).abs());
            (slack, Terms::lower(re_gap, 0.5 * (r2 * r2 - r1 * r1)))
        }
        (AaQuad | AaRatio | AaQuadratio | AaSimple, BoundParams::Affine { a, big_a }) => {
            let mid = (big_a + a) * 0.5;
            let spread = (big_a - a).norm();
            let slack = 0.5 * spread * ny - space.nrm(&minus(x, mid, y));
            let s = (big_a * a.conj()).re;
            let terms = match id {
                AaQuad => {
                    let ny2 = space.nrm_sq(y);
                    let top = 0.25 * spread * spread * ny2 * ny2;
                    let off_mid = (mid * ny2 - xy).norm_sqr();
                    let left = y.scale(big_a_field(big_a, field)).sub(x);
                    let right = minus(x, a, y);
                    let ball = space.ip(&left, &right).re;
                    Terms::custom(
                        vec![quad_gap, top - off_mid, top - ny2 * ball, top],
                        &[(0, 1), (0, 2), (1, 3), (2, 3)],
                        0,
                        &[3],
                    )
                }
                AaRatio => {
                    let root = s.sqrt();
                    let sum = big_a + a;
                    Terms::ascending(
                        vec![
                            nx * ny,
                            0.5 * (sum.conj() * xy).re / root,
                            0.5 * sum.norm() * xy.norm() / root,
                        ],
                        0,
                        1,
                    )
                }
                AaQuadratio => Terms::upper(quad_gap, 0.25 * spread * spread * xy.norm_sqr() / s),
                _ => {
                    let sum = big_a + a;
                    let u = sum.conj() / sum.norm();
                    let rot = (u * xy).re;
                    Terms::ascending(
                        vec![
                            abs_gap,
                            nx * ny - rot.abs(),
                            nx * ny - rot,
                            0.25 * spread * spread * ny * ny / sum.norm(),
                        ],
                        0,
                        3,
                    )
                }
            };
            (slack, terms)
        }
        (Angular, BoundParams::Radius { r }) => {
            let nx = nonzero(space, x, "x", id)?;
            let ny = nonzero(space, y, "y", id)?;
            let d = unit_distance(space, x, nx, y, ny);
            (r - d, Terms::upper(re_gap, 0.5 * r * r * nx * ny))
        }
        (AngularSuff, BoundParams::Radius { r }) => {
            let nx = nonzero(space, x, "x", id)?;
            let ny = nonzero(space, y, "y", id)?;
            let d = unit_distance(space, x, nx, y, ny);
            let dxy = dist();
            let reach = 2.0 * dxy / nx;
            let terms = Terms::custom(
                vec![
                    d,
                    reach,
                    r,
                    re_gap,
                    0.5 * reach * reach * nx * ny,
                    0.5 * r * r * nx * ny,
                ],
                &[(0, 1), (1, 2), (3, 4), (4, 5)],
                3,
                &[5],
            );
            (0.5 * r * nx - dxy, terms)
        }
        (Dw, BoundParams::Dw { eta }) => {
            let nx = nonzero(space, x, "x", id)?;
            let ny = nonzero(space, y, "y", id)?;
            let dxy = dist();
            let ratio = dxy / (nx + ny);
            match eta {
                None => (inf, Terms::upper(re_gap / (nx * ny), 2.0 * ratio * ratio)),
                Some(eta) => (
                    eta * (nx + ny) - dxy,
                    Terms::ascending(
                        vec![
                            re_gap,
                            2.0 * ratio * ratio * nx * ny,
                            2.0 * eta * eta * nx * ny,
                        ],
                        0,
                        2,
                    ),
                ),
            }
        }
        (Crossnorm, BoundParams::Rho { rho }) => {
            let nx = nonzero(space, x, "x", id)?;
            let ny = nonzero(space, y, "y", id)?;
            let cross = space.nrm(&x.scale_re(1.0 / ny).sub(&y.scale_re(1.0 / nx)));
            (
                rho - cross,
                Terms::ascending(vec![abs_gap, re_gap, 0.5 * rho * rho * nx * ny], 1, 2),
            )
        }
        (HileV, BoundParams::Hile { v }) => {
            let quotient = power_quotient(nx, ny, v)?;
            let lhs = space.nrm(&x.scale_re(nx.powf(v)).sub(&y.scale_re(ny.powf(v))));
            (inf, Terms::upper(lhs, quotient * dist()))
        }
        (Hile, BoundParams::None) => {
            let nx = nonzero(space, x, "x", id)?;
            let ny = nonzero(space, y, "y", id)?;
            let dxy = dist();
            let s = nx + ny;
            (
                inf,
                Terms::upper(re_gap, 0.5 * s * s * dxy * dxy / (nx * ny)),
            )
        }
        (GrcRaw, BoundParams::Grc { r }) => {
            let nx = nonzero(space, x, "x", id)?;
            let ny = nonzero(space, y, "y", id)?;
            let dxy = dist();
            let lhs = nx.powf(2.0 * r) + ny.powf(2.0 * r)
                - 2.0 * nx.powf(r) * ny.powf(r) * xy.re / (nx * ny);
            let rhs = if r >= 1.0 {
                r * r * nx.powf(2.0 * r - 2.0) * dxy * dxy
            } else {
                ny.powf(2.0 * r - 2.0) * dxy * dxy
            };
            (nx - ny, Terms::upper(lhs, rhs))
        }
        (Grc, BoundParams::Grc { r }) => {
            let nx = nonzero(space, x, "x", id)?;
            let ny = nonzero(space, y, "y", id)?;
            let dxy = dist();
            let branch = if r >= 1.0 {
                0.5 * r * r * (nx / ny).powf(r - 1.0) * dxy * dxy
            } else {
                0.5 * (nx / ny).powf(1.0 - r) * dxy * dxy
            };
            (
                nx - ny,
                Terms::ascending(vec![abs_gap, re_gap, branch], 1, 2),
            )
        }
        (Proj, BoundParams::Radius { r }) => {
            let ny = nonzero(space, y, "y", id)?;
            let pd = space.nrm(&minus(x, xy / (ny * ny), y));
            (r - pd, Terms::upper(quad_gap, r * r * ny * ny))
        }
        (ProjSuff, BoundParams::Radius { r }) => {
            let ny = nonzero(space, y, "y", id)?;
            let pd = space.nrm(&minus(x, xy / (ny * ny), y));
            let dxy = dist();
            let terms = Terms::custom(
                vec![
                    pd,
                    2.0 * dxy,
                    r,
                    quad_gap,
                    4.0 * dxy * dxy * ny * ny,
                    r * r * ny * ny,
                ],
                &[(0, 1), (1, 2), (3, 4), (4, 5)],
                3,
                &[5],
            );
            (0.5 * r - dxy, terms)
        }
        (Phase, BoundParams::Rho { rho }) => {
            if xy.norm() == 0.0 {
                return Err(Error::non_admissible("PHASE requires <x,y> != 0"));
            }
            let phase = xy / xy.norm();
            let off = space.nrm(&minus(x, phase, y));
            (rho - off, Terms::upper(abs_gap, 0.5 * rho * rho))
        }
        (ComplexAlpha, BoundParams::ComplexAlpha { alpha, r }) => {
            let off = space.nrm(&minus(x, Scalar::new(alpha.im / alpha.re, 0.0), y));
            (
                r - off,
                Terms::ascending(
                    vec![abs_gap, re_gap, 0.5 * (alpha.re / alpha.im) * r * r],
                    1,
                    2,
                ),
            )
        }
        (AlphaRot, BoundParams::AlphaRot { alpha, p }) => {
            let q = p / (p - 1.0);
            let m2 = alpha.norm_sqr();
            let phase = if field == Field::Real {
                Scalar::new(1.0, 0.0)
            } else {
                alpha * alpha / m2
            };
            let rot = nx * ny - (phase * xy).re;
            let (ra, ia) = (alpha.re.abs(), alpha.im.abs());
            let minus_n = dist();
            let plus_n = space.nrm(&x.add(y));
            let mid = (ra * minus_n + ia * plus_n).powi(2) / (2.0 * m2);
            let i1 = ra.max(ia) * (minus_n + plus_n);
            let i2 = (ra.powf(p) + ia.powf(p)).powf(1.0 / p)
                * (minus_n.powf(q) + plus_n.powf(q)).powf(1.0 / q);
            let i3 = minus_n.max(plus_n) * (ra + ia);
            let terms = Terms::custom(
                vec![
                    abs_gap,
                    rot,
                    mid,
                    0.5 * i1 * i1,
                    0.5 * i2 * i2,
                    0.5 * i3 * i3,
                ],
                &[(0, 1), (1, 2), (2, 3), (2, 4), (2, 5)],
                1,
                &[3, 4, 5],
            );
            (inf, terms)
        }
        (LambdaInterp, BoundParams::Lambda { lambda }) => {
            let kernel = (xy - space.ip(x, e) * space.ip(e, y)).re;
            let w = x.scale_re(lambda).add(&y.scale_re(1.0 - lambda));
            let spread = space.nrm_sq(&w) - space.ip(&w, e).norm_sqr();
            (
                inf,
                Terms::upper(kernel, spread / (4.0 * lambda * (1.0 - lambda))),
            )
        }
        (PowerP, BoundParams::Power { p }) => {
            let plus_n = space.nrm(&x.add(y));
            let minus_n = dist();
            let b1 = 0.5
                * ((nx + ny).powf(2.0 * p) - plus_n.powf(2.0 * p))
                    .max(0.0)
                    .powf(1.0 / p);
            let b2 = 0.5
                * (minus_n.powf(2.0 * p) - (nx - ny).abs().powf(2.0 * p))
                    .max(0.0)
                    .powf(1.0 / p);
            let terms = Terms::custom(
                vec![abs_gap, re_gap, b1, b2],
                &[(0, 1), (1, 2), (1, 3)],
                1,
                &[2, 3],
            );
            (inf, terms)
        }
        (
            GammaBandUp | GammaBandLow | GammaDisc | GammaDiscProduct,
            BoundParams::Band { gamma, big_gamma },
        ) => {
            let xe = space.ip(x, e);
            let centre = (gamma + big_gamma) * 0.5;
            let spread = (big_gamma - gamma).norm();
            let e_gap = space.nrm_sq(x) - xe.norm_sqr();
            let off = space.nrm(&minus(x, centre, e));
            let box_product = (big_gamma.re - xe.re) * (xe.re - gamma.re)
                + (big_gamma.im - xe.im) * (xe.im - gamma.im);
            match id {
                GammaBandUp => (inf, Terms::upper(e_gap + off * off, 0.5 * spread * spread)),
                GammaBandLow => {
                    let mut slack = (xe.re - gamma.re).min(big_gamma.re - xe.re);
                    if field == Field::Complex {
                        slack = slack.min(xe.im - gamma.im).min(big_gamma.im - xe.im);
                    }
                    (
                        slack,
                        Terms::lower(e_gap + off * off, 0.25 * spread * spread),
                    )
                }
                GammaDisc => (
                    0.5 * spread - off,
                    Terms::ascending(vec![e_gap, box_product, 0.25 * spread * spread], 0, 2),
                ),
                _ => (
                    0.5 * spread - off,
                    Terms::ascending(
                        vec![
                            e_gap,
                            box_product,
                            (big_gamma - xe).norm() * (xe - gamma).norm(),
                        ],
                        0,
                        2,
                    ),
                ),
            }
        }
        (BetaCone, BoundParams::Beta { alpha, beta, gamma }) => {
            let na = nonzero(space, y, "a", id)?;
            let xa = xy;
            let excess = beta.norm_sqr() - alpha * gamma;
            let slack = (excess.sqrt() / alpha) * na - space.nrm(&minus(x, beta / alpha, y));
            let root = (alpha * gamma).sqrt();
            let values = vec![
                nx * na,
                (beta.re * xa.re + beta.im * xa.im) / root,
                beta.norm() * xa.norm() / root,
                nx * nx * na * na - xa.norm_sqr(),
                excess / (alpha * gamma) * xa.norm_sqr(),
            ];
            (
                slack,
                Terms::custom(values, &[(0, 1), (1, 2), (3, 4)], 0, &[1]),
            )
        }
        (TrigCone, BoundParams::Trig { phi, theta }) => {
            let na = nonzero(space, y, "a", id)?;
            let beta = Scalar::from_polar(1.0, phi);
            let slack = theta.cos() * na - space.nrm(&minus(x, beta, y));
            let rhs = (phi.cos() * xy.re + phi.sin() * xy.im) / theta.sin();
            (slack, Terms::upper(nx * na, rhs))
        }
        _ => return Err(wrong_params(id)),
    };
    Ok(Evaluation { slack, terms })
}

/// Under a real field `A` is real already; this only guards `scale`.
fn big_a_field(big_a: Scalar, field: Field) -> Scalar {
    match field {
        Field::Real => Scalar::new(big_a.re, 0.0),
        Field::Complex => big_a,
    }
}

/// `‖x/‖x‖ − y/‖y‖‖`
fn unit_distance(space: &Space, x: &Vector, nx: f64, y: &Vector, ny: f64) -> f64 {
    space.nrm(&x.scale_re(1.0 / nx).sub(&y.scale_re(1.0 / ny)))
}

/// `(a^(v+1) − b^(v+1)) / (a − b)`, as the power sum for integer `v`.
fn power_quotient(a: f64, b: f64, v: f64) -> Result<f64> {
    if v.fract() == 0.0 && v <= 1024.0 {
        let n = v as i32;
        return Ok((0..=n).map(|k| a.powi(k) * b.powi(n - k)).sum());
    }
    if (a - b).abs() < HILE_SINGULAR_GAP {
        return Err(Error::non_admissible(
            "non-integer exponent needs | |x| - |y| | >= 1e-8",
        ));
    }
    Ok((a.powf(v + 1.0) - b.powf(v + 1.0)) / (a - b))
}

fn report(id: BoundId, ev: Evaluation, tol: Tolerance) -> BoundReport {
    let Evaluation { slack, terms } = ev;
    let applicable = slack >= 0.0;
    let lhs = terms.values[terms.lhs];
    let pick = terms.rhs.iter().map(|&k| terms.values[k]);
    let rhs = if terms.upper {
        pick.fold(f64::INFINITY, f64::min)
    } else {
        pick.fold(f64::NEG_INFINITY, f64::max)
    };
    let satisfied = applicable.then(|| {
        terms
            .links
            .iter()
            .all(|&(i, j)| tol.le(terms.values[i], terms.values[j]))
    });
    let (num, den) = if terms.upper { (lhs, rhs) } else { (rhs, lhs) };
    // A denominator within tolerance of zero is rounding noise; the ratio is undefined there.
    let noise = tol.rel * crate::tolerance::scale(lhs, rhs);
    let tightness = (den > noise && num.is_finite()).then(|| (num / den).max(0.0));
    let direction = id.info().direction;
    BoundReport {
        bound_id: id,
        applicable,
        hypothesis_slack: slack,
        lhs,
        rhs,
        direction,
        satisfied,
        tightness,
        chain_values: (direction == Direction::Chain).then(|| terms.values.clone()),
        links: terms.links,
        values: terms.values,
    }
}

/// Checks the hypothesis of `id` in the standard space.
pub fn check_hypothesis(
    id: BoundId,
    inputs: &BoundInputs,
    params: &BoundParams,
) -> Result<Hypothesis> {
    check_hypothesis_in(&Space::Euclidean, id, inputs, params)
}

pub fn check_hypothesis_in(
    space: &Space,
    id: BoundId,
    inputs: &BoundInputs,
    params: &BoundParams,
) -> Result<Hypothesis> {
    let slack = compute(id, space, inputs, params)?.slack;
    Ok(Hypothesis {
        applicable: slack >= 0.0,
        slack,
    })
}

/// Evaluates `id` in the standard space at the default tolerance.
pub fn evaluate(id: BoundId, inputs: &BoundInputs, params: &BoundParams) -> Result<BoundReport> {
    evaluate_with(&Space::Euclidean, id, inputs, params, Tolerance::default())
}

pub fn evaluate_in(
    space: &Space,
    id: BoundId,
    inputs: &BoundInputs,
    params: &BoundParams,
) -> Result<BoundReport> {
    evaluate_with(space, id, inputs, params, Tolerance::default())
}

pub fn evaluate_with(
    space: &Space,
    id: BoundId,
    inputs: &BoundInputs,
    params: &BoundParams,
    tol: Tolerance,
) -> Result<BoundReport> {
    let ev = compute(id, space, inputs, params)?;
    Ok(report(id, ev, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ParamSet;

    fn v(c: &[f64]) -> Vector {
        Vector::real(c).unwrap()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    fn params(id: BoundId, json: &str) -> BoundParams {
        let set: ParamSet = serde_json::from_str(json).unwrap();
        BoundParams::parse(id, &set).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * 1f64.max(a.abs()).max(b.abs())
    }

    #[test]
    fn angular_orthogonal_pair() {
        let inputs = BoundInputs::pair(v(&[1.0, 0.0]), v(&[0.0, 1.0]));
        let p = params(BoundId::Angular, r#"{"r": 1.4142135623730951}"#);
        let h = check_hypothesis(BoundId::Angular, &inputs, &p).unwrap();
        assert!(h.applicable);
        assert!(h.slack.abs() < 1e-15);
        let rep = evaluate(BoundId::Angular, &inputs, &p).unwrap();
        assert!(close(rep.lhs, 1.0));
        assert!(close(rep.rhs, 1.0));
        assert_eq!(rep.satisfied, Some(true));
        assert!(close(rep.tightness.unwrap(), 1.0));
        assert_eq!(rep.direction, Direction::Upper);
        assert!(rep.chain_values.is_none());
    }

    #[test]
    fn aa_quad_boundary() {
        let inputs = BoundInputs::pair(v(&[1.0, 1.0]), v(&[1.0, 0.0]));
        let p = params(BoundId::AaQuad, r#"{"a": 0, "A": 2}"#);
        let h = check_hypothesis(BoundId::AaQuad, &inputs, &p).unwrap();
        assert!(h.applicable);
        assert_eq!(h.slack, 0.0);
        let rep = evaluate(BoundId::AaQuad, &inputs, &p).unwrap();
        assert_eq!(rep.satisfied, Some(true));
        assert!(close(rep.tightness.unwrap(), 1.0));
        assert_eq!(rep.chain_values.as_ref().unwrap().len(), 4);
    }

    #[test]
    fn complex_alpha_domain() {
        let set: ParamSet = serde_json::from_str(r#"{"alpha": [1, -1], "r": 1}"#).unwrap();
        assert!(matches!(
            BoundParams::parse(BoundId::ComplexAlpha, &set),
            Err(Error::ParamDomain(_))
        ));
    }

    #[test]
    fn hile_example() {
        let inputs = BoundInputs::pair(v(&[2.0, 0.0]), v(&[0.0, 1.0]));
        let rep = evaluate(BoundId::Hile, &inputs, &BoundParams::None).unwrap();
        assert_eq!(rep.lhs, 2.0);
        assert!(close(rep.rhs, 11.25));
        assert_eq!(rep.satisfied, Some(true));
        assert_eq!(rep.hypothesis_slack, f64::INFINITY);
    }

    #[test]
    fn aa_quadratio_example() {
        let inputs = BoundInputs::pair(v(&[2.0, 1.0]), v(&[1.0, 0.0]));
        let p = params(BoundId::AaQuadratio, r#"{"a": 1, "A": 3}"#);
        let rep = evaluate(BoundId::AaQuadratio, &inputs, &p).unwrap();
        assert_eq!(rep.hypothesis_slack, 0.0);
        assert!(close(rep.lhs, 1.0));
        assert!(close(rep.rhs, 4.0 / 3.0));
        assert_eq!(rep.satisfied, Some(true));
    }

    #[test]
    fn beta_cone_example() {
        let inputs = BoundInputs::cone(v(&[1.0, 0.5]), v(&[1.0, 0.0]));
        let p = params(
            BoundId::BetaCone,
            r#"{"alpha": 1, "beta": 1, "gamma": 0.5}"#,
        );
        let rep = evaluate(BoundId::BetaCone, &inputs, &p).unwrap();
        assert!(close(rep.hypothesis_slack, 0.5f64.sqrt() - 0.5));
        let chain = rep.chain_values.unwrap();
        assert!(close(chain[0], 1.25f64.sqrt()));
        assert!(close(chain[1], 1.0 / 0.5f64.sqrt()));
        assert!(close(chain[3], 0.25));
        assert!(close(chain[4], 1.0));
        assert_eq!(rep.satisfied, Some(true));
    }

    #[test]
    fn kurepa_example() {
        let z = ComplexifiedVector::new(v(&[1.0, 0.0]), v(&[0.0, 1.0])).unwrap();
        let inputs = BoundInputs::complexified(z, v(&[1.0, 0.0]));
        let rep = evaluate(BoundId::Kurepa, &inputs, &BoundParams::None).unwrap();
        assert_eq!(rep.chain_values.unwrap(), vec![1.0, 1.0, 2.0]);
        assert_eq!(rep.tightness, Some(1.0));
        assert_eq!(rep.satisfied, Some(true));
    }

    #[test]
    fn power_p_one_is_exact() {
        let inputs = BoundInputs::pair(v(&[0.3, -1.1, 2.0]), v(&[1.7, 0.4, -0.2]));
        let p = params(BoundId::PowerP, r#"{"p": 1}"#);
        let rep = evaluate(BoundId::PowerP, &inputs, &p).unwrap();
        let chain = rep.chain_values.unwrap();
        assert!(close(chain[2], chain[1]));
        assert!(close(chain[3], chain[1]));
        assert!(close(rep.tightness.unwrap(), 1.0));
    }

    #[test]
    fn failed_hypothesis_has_no_verdict() {
        let inputs = BoundInputs::pair(v(&[1.0, 0.0]), v(&[-1.0, 0.0]));
        let p = params(BoundId::Angular, r#"{"r": 0.5}"#);
        let rep = evaluate(BoundId::Angular, &inputs, &p).unwrap();
        assert!(!rep.applicable);
        assert_eq!(rep.satisfied, None);
        assert!(rep.hypothesis_slack < 0.0);
    }

    #[test]
    fn zero_vectors_rejected_where_normalized() {
        let inputs = BoundInputs::pair(v(&[0.0, 0.0]), v(&[1.0, 0.0]));
        for id in [BoundId::Hile, BoundId::Dw] {
            let p = BoundParams::parse(id, &ParamSet::default()).unwrap();
            assert!(matches!(
                evaluate(id, &inputs, &p),
                Err(Error::NonAdmissible(_))
            ));
        }
        let rot = params(BoundId::AlphaRot, r#"{"alpha": 2}"#);
        assert!(evaluate(BoundId::AlphaRot, &inputs, &rot).is_ok());
    }

    #[test]
    fn complex_alpha_needs_complex_space() {
        let inputs = BoundInputs::pair(v(&[1.0]), v(&[1.0]));
        let p = params(BoundId::ComplexAlpha, r#"{"alpha": [1, 1], "r": 1}"#);
        assert!(matches!(
            evaluate(BoundId::ComplexAlpha, &inputs, &p),
            Err(Error::NonAdmissible(_))
        ));
        let x = Vector::complex(&[c(1.0, 0.5)]).unwrap();
        let y = Vector::complex(&[c(1.0, 0.0)]).unwrap();
        let rep = evaluate(BoundId::ComplexAlpha, &BoundInputs::pair(x, y), &p).unwrap();
        assert_eq!(rep.satisfied, Some(true));
    }

    #[test]
    fn missing_vector_is_malformed() {
        let inputs = BoundInputs {
            x: Some(v(&[1.0])),
            ..Default::default()
        };
        let err = evaluate(BoundId::Hile, &inputs, &BoundParams::None).unwrap_err();
        assert!(matches!(err, Error::Malformed(ref m) if m.contains("`y`")));
    }

    #[test]
    fn mismatched_params_rejected() {
        let inputs = BoundInputs::pair(v(&[1.0]), v(&[1.0]));
        let err = evaluate(BoundId::Hile, &inputs, &BoundParams::Radius { r: 1.0 }).unwrap_err();
        assert!(matches!(err, Error::ParamDomain(_)));
    }

    #[test]
    fn report_json_shape() {
        let inputs = BoundInputs::pair(v(&[2.0, 0.0]), v(&[0.0, 1.0]));
        let rep = evaluate(BoundId::Hile, &inputs, &BoundParams::None).unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&crate::json::to_line(&rep).unwrap()).unwrap();
        assert_eq!(json["bound_id"], "HILE");
        assert_eq!(json["hypothesis_slack"], "inf");
        assert_eq!(json["direction"], "UPPER");
        assert_eq!(json["satisfied"], true);
    }
}
