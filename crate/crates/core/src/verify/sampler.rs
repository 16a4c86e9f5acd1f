//! Constructive samplers: every sample satisfies its bound's hypothesis by
//! construction, with a depth `u ∈ [0, 1)` controlling how far inside the
//! hypothesis set it lies. `u = 0` puts the sample on the boundary.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::draws::{stream, DrawSource, RngDraws};
use super::FuzzConfig;
use crate::catalog::{BoundId, BoundInputs, BoundParams, ParamSet};
use crate::error::{Error, Result};
use crate::space::{ComplexifiedVector, Field, Scalar, Space, Vector};
use crate::triangle::{TriangleInput, TriangleOp, TriangleParams};

/// One generated instance of a bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub bound_id: BoundId,
    pub index: u64,
    pub field: Field,
    pub dim: usize,
    pub depth: f64,
    pub inputs: BoundInputs,
    pub params: BoundParams,
}

#[derive(Serialize)]
struct SampleRepr<'a> {
    bound_id: BoundId,
    index: u64,
    field: Field,
    dim: usize,
    depth: f64,
    inputs: &'a BoundInputs,
    params: ParamSet,
}

impl Serialize for Sample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SampleRepr {
            bound_id: self.bound_id,
            index: self.index,
            field: self.field,
            dim: self.dim,
            depth: self.depth,
            inputs: &self.inputs,
            params: self.params.to_param_set(),
        }
        .serialize(s)
    }
}

/// One generated family for a triangle operation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleSample {
    pub op: TriangleOp,
    pub index: u64,
    pub field: Field,
    pub dim: usize,
    pub input: TriangleInput,
}

/// Largest family size drawn for triangle operations.
pub const MAX_FAMILY: usize = 10;

/// Sample `index` of `id`, at a random depth.
pub fn sample_inputs(id: BoundId, cfg: &FuzzConfig, index: u64) -> Result<Sample> {
    cfg.validate()?;
    let mut d = RngDraws::new(stream(cfg.seed, id.name(), index));
    draw_sample(&mut d, id, cfg, index, None)
}

/// Like [`sample_inputs`] with the depth forced to `depth`; every other
/// draw is unchanged.
pub fn sample_inputs_at(id: BoundId, cfg: &FuzzConfig, index: u64, depth: f64) -> Result<Sample> {
    cfg.validate()?;
    if !(0.0..1.0).contains(&depth) {
        return Err(Error::param(format!(
            "depth must lie in [0, 1), got {depth}"
        )));
    }
    let mut d = RngDraws::new(stream(cfg.seed, id.name(), index));
    draw_sample(&mut d, id, cfg, index, Some(depth))
}

pub fn sample_triangle(op: TriangleOp, cfg: &FuzzConfig, index: u64) -> Result<TriangleSample> {
    cfg.validate()?;
    let mut d = RngDraws::new(stream(cfg.seed, op.name(), index));
    draw_triangle(&mut d, op, cfg, index)
}

struct Gen<'a, D: DrawSource> {
    d: &'a mut D,
    field: Field,
    dim: usize,
    lo: f64,
    hi: f64,
}

impl<D: DrawSource> Gen<'_, D> {
    fn uniform(&mut self) -> f64 {
        self.d.uniform()
    }

    fn normal_vec(&mut self) -> Vector {
        let coords = (0..self.dim)
            .map(|_| match self.field {
                Field::Real => Scalar::new(self.d.normal(), 0.0),
                Field::Complex => Scalar::new(self.d.normal(), self.d.normal()),
            })
            .collect();
        Vector::new(self.field, coords).expect("dim >= 1")
    }

    fn unit_vec(&mut self) -> Vector {
        let v = self.normal_vec();
        Space::Euclidean
            .normalize(&v)
            .unwrap_or_else(|_| Vector::basis(self.field, self.dim, 0))
    }

    /// Unit vector orthogonal to `y`, or zero in dimension one.
    fn orthogonal_unit(&mut self, y: &Vector) -> Vector {
        let v = self.normal_vec();
        let s = Space::Euclidean;
        let w = v.sub_scaled(s.ip(&v, y) / s.nrm_sq(y), y);
        let n = s.nrm(&w);
        if n > 1e-8 * s.nrm(&v) {
            w.scale_re(1.0 / n)
        } else {
            Vector::zeros(self.field, self.dim)
        }
    }

    fn real(&mut self) -> f64 {
        self.lo + (self.hi - self.lo) * self.d.uniform()
    }

    fn scalar(&mut self) -> Scalar {
        let re = self.real();
        match self.field {
            Field::Real => Scalar::new(re, 0.0),
            Field::Complex => Scalar::new(re, self.real()),
        }
    }

    /// Value in `(0, max(|lo|, |hi|)]`.
    fn positive(&mut self) -> f64 {
        self.lo.abs().max(self.hi.abs()) * (1.0 - self.d.uniform())
    }

    /// Unit scalar of the field.
    fn phase(&mut self) -> Scalar {
        let u = self.d.uniform();
        match self.field {
            Field::Real => Scalar::new(if u < 0.5 { 1.0 } else { -1.0 }, 0.0),
            Field::Complex => Scalar::from_polar(1.0, 2.0 * PI * u),
        }
    }

    /// `center + radius·(1−u)·dir` with `dir` a random unit vector.
    fn in_ball(&mut self, center: &Vector, radius: f64, u: f64) -> Vector {
        let dir = self.unit_vec();
        center.add(&dir.scale_re(radius * (1.0 - u)))
    }
}

fn pick<T: Copy>(d: &mut impl DrawSource, opts: &[T]) -> T {
    let k = ((d.uniform() * opts.len() as f64) as usize).min(opts.len() - 1);
    opts[k]
}

fn depth(d: &mut impl DrawSource, forced: Option<f64>) -> f64 {
    let u = d.uniform();
    forced.unwrap_or(u)
}

pub(crate) fn draw_sample(
    d: &mut impl DrawSource,
    id: BoundId,
    cfg: &FuzzConfig,
    index: u64,
    forced_depth: Option<f64>,
) -> Result<Sample> {
    let info = id.info();
    let dim = pick(d, &cfg.dims);
    let mut field = pick(d, &cfg.fields);
    if info.complex_only {
        if !cfg.fields.contains(&Field::Complex) {
            return Err(Error::non_admissible(format!("{id} needs a complex space")));
        }
        field = Field::Complex;
    }
    if id == BoundId::Kurepa {
        field = Field::Real;
    }
    let u = depth(d, forced_depth);
    let (lo, hi) = cfg.param_ranges.for_bound(id);
    let mut g = Gen {
        d,
        field,
        dim,
        lo,
        hi,
    };
    let s = Space::Euclidean;
    let c = |re: f64| Scalar::new(re, 0.0);

    use BoundId::*;
    let (inputs, params) = match id {
        Kurepa => {
            let z = ComplexifiedVector::new(g.normal_vec(), g.normal_vec())?;
            (
                BoundInputs::complexified(z, g.normal_vec()),
                BoundParams::None,
            )
        }
        RefineSplit => {
            let (x, y, e) = (g.normal_vec(), g.normal_vec(), g.unit_vec());
            (BoundInputs::pair_unit(x, y, e), BoundParams::None)
        }
        WeakRefine => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let low = (s.nrm(&x) - s.nrm(&y)).abs();
            let high = s.nrm(&x.sub(&y));
            let m = 0.5 * u * (high - low);
            let r1 = low + m;
            let r2 = r1 + g.uniform() * (high - m - r1).max(0.0);
            (BoundInputs::pair(x, y), BoundParams::WeakRefine { r1, r2 })
        }
        AaQuad | AaRatio | AaQuadratio | AaSimple => {
            let y = g.normal_vec();
            let big_a = g.scalar();
            let mut a = g.scalar();
            if matches!(id, AaRatio | AaQuadratio) && (big_a * a.conj()).re < 0.0 {
                a = -a;
            }
            let mid = (big_a + a) * 0.5;
            let radius = 0.5 * (big_a - a).norm() * s.nrm(&y);
            let x = g.in_ball(&y.scale(mid), radius, u);
            (BoundInputs::pair(x, y), BoundParams::Affine { a, big_a })
        }
        Angular => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let dist = s.nrm(
                &x.scale_re(1.0 / s.nrm(&x))
                    .sub(&y.scale_re(1.0 / s.nrm(&y))),
            );
            let r = dist + u * (2.0 - dist).max(0.0);
            (BoundInputs::pair(x, y), BoundParams::Radius { r })
        }
        AngularSuff => {
            let x = g.normal_vec();
            let r = g.positive();
            let y = g.in_ball(&x, 0.5 * r * s.nrm(&x), u);
            (BoundInputs::pair(x, y), BoundParams::Radius { r })
        }
        Dw => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let eta = if g.uniform() < 0.25 {
                None
            } else {
                let ratio = s.nrm(&x.sub(&y)) / (s.nrm(&x) + s.nrm(&y));
                Some((ratio + u * (1.0 - ratio)).min(1.0))
            };
            (BoundInputs::pair(x, y), BoundParams::Dw { eta })
        }
        Crossnorm => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let (nx, ny) = (s.nrm(&x), s.nrm(&y));
            let cross = s.nrm(&x.scale_re(1.0 / ny).sub(&y.scale_re(1.0 / nx)));
            let rho = cross + u * (1.0 + cross);
            (BoundInputs::pair(x, y), BoundParams::Rho { rho })
        }
        HileV => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let v = if g.uniform() < 0.5 {
                pick(g.d, &[1.0, 2.0, 3.0, 4.0])
            } else {
                g.positive()
            };
            (BoundInputs::pair(x, y), BoundParams::Hile { v })
        }
        Hile => (
            BoundInputs::pair(g.normal_vec(), g.normal_vec()),
            BoundParams::None,
        ),
        GrcRaw | Grc => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let (x, y) = if s.nrm(&x) >= s.nrm(&y) {
                (x, y)
            } else {
                (y, x)
            };
            let y = y.scale_re(s.nrm(&x) * (1.0 - u) / s.nrm(&y));
            let r = g.real();
            (BoundInputs::pair(x, y), BoundParams::Grc { r })
        }
        Proj => {
            let y = g.normal_vec();
            let r = g.positive();
            let t = g.scalar();
            let w = g.orthogonal_unit(&y);
            let x = y.scale(t).add(&w.scale_re(r * (1.0 - u)));
            (BoundInputs::pair(x, y), BoundParams::Radius { r })
        }
        ProjSuff => {
            let y = g.normal_vec();
            let r = g.positive();
            let x = g.in_ball(&y, 0.5 * r, u);
            (BoundInputs::pair(x, y), BoundParams::Radius { r })
        }
        Phase => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let xy = s.ip(&x, &y);
            let off = s.nrm(&x.sub_scaled(xy / xy.norm(), &y));
            let rho = off + u * (1.0 + off);
            (BoundInputs::pair(x, y), BoundParams::Rho { rho })
        }
        ComplexAlpha => {
            let alpha = Scalar::new(g.positive(), g.positive());
            let y = g.normal_vec();
            let r = g.positive();
            let x = g.in_ball(&y.scale_re(alpha.im / alpha.re), r, u);
            (
                BoundInputs::pair(x, y),
                BoundParams::ComplexAlpha { alpha, r },
            )
        }
        AlphaRot => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let alpha = g.scalar();
            let p = 1.0 + g.positive();
            (BoundInputs::pair(x, y), BoundParams::AlphaRot { alpha, p })
        }
        LambdaInterp => {
            let (x, y, e) = (g.normal_vec(), g.normal_vec(), g.unit_vec());
            let lambda = 0.005 + 0.99 * g.uniform();
            (
                BoundInputs::pair_unit(x, y, e),
                BoundParams::Lambda { lambda },
            )
        }
        PowerP => {
            let (x, y) = (g.normal_vec(), g.normal_vec());
            let p = 1.0 + g.positive();
            (BoundInputs::pair(x, y), BoundParams::Power { p })
        }
        GammaBandUp | GammaDisc | GammaDiscProduct => {
            let e = g.unit_vec();
            let (gamma, big_gamma) = (g.scalar(), g.scalar());
            let x = if id == GammaBandUp {
                g.normal_vec()
            } else {
                g.in_ball(
                    &e.scale((gamma + big_gamma) * 0.5),
                    0.5 * (big_gamma - gamma).norm(),
                    u,
                )
            };
            (
                BoundInputs::single_unit(x, e),
                BoundParams::Band { gamma, big_gamma },
            )
        }
        GammaBandLow => {
            let e = g.unit_vec();
            let (p, q) = (g.scalar(), g.scalar());
            let gamma = Scalar::new(p.re.min(q.re), p.im.min(q.im));
            let big_gamma = Scalar::new(p.re.max(q.re), p.im.max(q.im));
            let mid = (gamma + big_gamma) * 0.5;
            let half = (big_gamma - gamma) * 0.5;
            let (sr, si) = (g.phase().re.signum(), g.phase().re.signum());
            let center = mid + Scalar::new(sr * half.re, si * half.im) * (1.0 - u);
            let center = if field == Field::Real {
                c(center.re)
            } else {
                center
            };
            let v = g.normal_vec();
            let x = e.scale(center).add(&v.sub_scaled(s.ip(&v, &e), &e));
            (
                BoundInputs::single_unit(x, e),
                BoundParams::Band { gamma, big_gamma },
            )
        }
        BetaCone => {
            let alpha = g.positive();
            let beta = loop {
                let b = g.scalar();
                if b.norm() > 1e-6 {
                    break b;
                }
            };
            let t = 1.0 - g.uniform();
            let gamma = t * beta.norm_sqr() / alpha;
            let a = g.normal_vec();
            let radius = (beta.norm_sqr() - alpha * gamma).max(0.0).sqrt() / alpha * s.nrm(&a);
            let x = g.in_ball(&a.scale(beta / alpha), radius, u);
            (
                BoundInputs::cone(x, a),
                BoundParams::Beta { alpha, beta, gamma },
            )
        }
        TrigCone => {
            let phi = match field {
                Field::Real => pick(g.d, &[0.0, PI]),
                Field::Complex => 2.0 * PI * g.uniform(),
            };
            let theta = (0.005 + 0.99 * g.uniform()) * FRAC_PI_2;
            let a = g.normal_vec();
            let rot = if field == Field::Real {
                c(phi.cos().round())
            } else {
                Scalar::from_polar(1.0, phi)
            };
            let x = g.in_ball(&a.scale(rot), theta.cos() * s.nrm(&a), u);
            (BoundInputs::cone(x, a), BoundParams::Trig { phi, theta })
        }
    };
    Ok(Sample {
        bound_id: id,
        index,
        field,
        dim,
        depth: u,
        inputs,
        params,
    })
}

pub(crate) fn draw_triangle(
    d: &mut impl DrawSource,
    op: TriangleOp,
    cfg: &FuzzConfig,
    index: u64,
) -> Result<TriangleSample> {
    let dim = pick(d, &cfg.dims);
    let mut field = pick(d, &cfg.fields);
    if op == TriangleOp::ReverseComplexAlpha {
        if !cfg.fields.contains(&Field::Complex) {
            return Err(Error::non_admissible(format!("{op} needs a complex space")));
        }
        field = Field::Complex;
    }
    let n = 1 + ((d.uniform() * MAX_FAMILY as f64) as usize).min(MAX_FAMILY - 1);
    let (lo, hi) = cfg.param_ranges.scalar;
    let mut g = Gen {
        d,
        field,
        dim,
        lo,
        hi,
    };
    let e = g.unit_vec();
    let mut params = TriangleParams::default();
    let xs: Vec<Vector> = match op {
        TriangleOp::ReverseK | TriangleOp::ReverseMinAb => (0..n).map(|_| g.normal_vec()).collect(),
        TriangleOp::ReverseR | TriangleOp::ReversePower => {
            params.p = Some(1.0 + g.positive());
            (0..n).map(|_| g.normal_vec()).collect()
        }
        TriangleOp::ReverseOutsideBall => {
            params.p = Some(g.real());
            (0..n)
                .map(|_| {
                    let len = 1.0 + 2.0 * (1.0 - g.uniform());
                    g.unit_vec().scale_re(len)
                })
                .collect()
        }
        TriangleOp::ReverseComplexAlpha => {
            let mut alphas = Vec::with_capacity(n);
            let mut ds = Vec::with_capacity(n);
            let xs = (0..n)
                .map(|_| {
                    let alpha = Scalar::new(g.positive(), g.positive());
                    let radius = g.positive();
                    let u = g.uniform();
                    alphas.push(crate::catalog::Num(alpha));
                    ds.push(radius);
                    g.in_ball(&e.scale_re(alpha.im / alpha.re), radius, u)
                })
                .collect();
            params.alpha = Some(alphas);
            params.d = Some(ds);
            xs
        }
    };
    Ok(TriangleSample {
        op,
        index,
        field,
        dim,
        input: TriangleInput { xs, e, params },
    })
}

/// Unconstrained random data for the identity campaign.
pub(crate) struct IdentityCase {
    pub x: Vector,
    pub y: Vector,
    pub e: Vector,
    pub gamma: Scalar,
    pub big_gamma: Scalar,
}

pub(crate) fn draw_identity_case(d: &mut impl DrawSource, cfg: &FuzzConfig) -> IdentityCase {
    let dim = pick(d, &cfg.dims);
    let field = pick(d, &cfg.fields);
    let (lo, hi) = cfg.param_ranges.scalar;
    let mut g = Gen {
        d,
        field,
        dim,
        lo,
        hi,
    };
    IdentityCase {
        x: g.normal_vec(),
        y: g.normal_vec(),
        e: g.unit_vec(),
        gamma: g.scalar(),
        big_gamma: g.scalar(),
    }
}
