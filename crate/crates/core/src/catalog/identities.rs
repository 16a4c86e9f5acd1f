use serde::{Deserialize, Serialize};

use super::eval::BoundInputs;
use super::params::BoundParams;
use super::quantity::check_unit;
use super::BoundId;
use crate::error::{Error, Result};
use crate::space::{Field, Scalar, Space, Vector};

/// Residuals of the band identity for a unit vector `e` and scalars
/// `gamma`, `Gamma`. With `m = (gamma+Gamma)/2` and
/// `P = (Re Gamma - Re<x,e>)(Re<x,e> - Re gamma) + (Im Gamma - Im<x,e>)(Im<x,e> - Im gamma)`:
///
/// * band: `‖x‖² − |⟨x,e⟩|² + ¼|Γ−γ|² = P + ‖x − m e‖²`
/// * split: `‖x‖² − |⟨x,e⟩|² = Re[(Γ − ⟨x,e⟩)(conj⟨x,e⟩ − conj γ)] − Re⟨Γe − x, x − γe⟩`
/// * midpoint: `Re⟨Γe − x, x − γe⟩ = ¼|Γ−γ|² − ‖x − m e‖²`
///
/// Residuals are relative to the sum of the absolute values of the terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub split_residual: f64,
    pub midpoint_residual: f64,
    /// Residual of the variant with `‖x − m e‖²` and `¼|Γ−γ|²` swapped
    /// between the sides. Not an identity; kept as a diagnostic.
    pub swapped_form_residual: f64,
}

impl KernelIdentity {
    /// Largest residual among the three genuine identities.
    pub fn max_residual(&self) -> f64 {
        self.residual
            .max(self.split_residual)
            .max(self.midpoint_residual)
    }
}

fn rel(diff: f64, terms: &[f64]) -> f64 {
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    diff.abs() / scale.max(f64::MIN_POSITIVE)
}

fn check_scalars(field: Field, gamma: Scalar, big_gamma: Scalar) -> Result<()> {
    if !field.admits(gamma) || !field.admits(big_gamma) {
        return Err(Error::param(
            "`gamma` and `Gamma` must be real over a REAL space",
        ));
    }
    Ok(())
}

pub fn kernel_identity_residual(
    x: &Vector,
    e: &Vector,
    gamma: Scalar,
    big_gamma: Scalar,
) -> Result<KernelIdentity> {
    kernel_identity_residual_in(&Space::Euclidean, x, e, gamma, big_gamma)
}

pub fn kernel_identity_residual_in(
    space: &Space,
    x: &Vector,
    e: &Vector,
    gamma: Scalar,
    big_gamma: Scalar,
) -> Result<KernelIdentity> {
    x.check_compatible(e)?;
    space.check(x)?;
    check_unit(space, e)?;
    check_scalars(x.field(), gamma, big_gamma)?;

    let xe = space.ip(x, e);
    let nx2 = space.nrm_sq(x);
    let xe2 = xe.norm_sqr();
    let quarter = 0.25 * (big_gamma - gamma).norm_sqr();
    let centre = (gamma + big_gamma) * 0.5;
    let off = space.nrm_sq(&x.sub_scaled(centre, e));
    let p_re = (big_gamma.re - xe.re) * (xe.re - gamma.re);
    let p_im = (big_gamma.im - xe.im) * (xe.im - gamma.im);
    let product = ((big_gamma - xe) * (xe.conj() - gamma.conj())).re;
    let cross = space
        .ip(&e.scale(big_gamma).sub(x), &x.sub_scaled(gamma, e))
        .re;

    let lhs = nx2 - xe2 + quarter;
    let rhs = p_re + p_im + off;
    Ok(KernelIdentity {
        lhs,
        rhs,
        residual: rel(lhs - rhs, &[nx2, xe2, quarter, p_re, p_im, off]),
        split_residual: rel(nx2 - xe2 - (product - cross), &[nx2, xe2, product, cross]),
        midpoint_residual: rel(cross - (quarter - off), &[cross, quarter, off]),
        swapped_form_residual: rel(
            (nx2 - xe2 + off) - (p_re + p_im + quarter),
            &[nx2, xe2, quarter, p_re, p_im, off],
        ),
    })
}

/// Residuals of four identities for the gaps of a pair:
///
/// * angular: `‖x/‖x‖ − y/‖y‖‖² = 2(‖x‖‖y‖ − Re⟨x,y⟩)/(‖x‖‖y‖)`
/// * projection: `‖y‖²‖x − (⟨x,y⟩/‖y‖²)y‖² = ‖x‖²‖y‖² − |⟨x,y⟩|²`
/// * sum: `(‖x‖+‖y‖)² − ‖x+y‖² = 2(‖x‖‖y‖ − Re⟨x,y⟩)`
/// * difference: `‖x−y‖² − (‖x‖−‖y‖)² = 2(‖x‖‖y‖ − Re⟨x,y⟩)`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapIdentities {
    pub angular: f64,
    pub projection: f64,
    pub sum: f64,
    pub difference: f64,
}

impl GapIdentities {
    pub fn max_residual(&self) -> f64 {
        self.angular
            .max(self.projection)
            .max(self.sum)
            .max(self.difference)
    }
}

pub fn gap_identities(x: &Vector, y: &Vector) -> Result<GapIdentities> {
    gap_identities_in(&Space::Euclidean, x, y)
}

pub fn gap_identities_in(space: &Space, x: &Vector, y: &Vector) -> Result<GapIdentities> {
    x.check_compatible(y)?;
    space.check(x)?;
    let nx = space.nrm(x);
    let ny = space.nrm(y);
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::non_admissible(
            "gap identities need x != 0 and y != 0",
        ));
    }
    let xy = space.ip(x, y);
    let prod = nx * ny;
    let re_gap = prod - xy.re;

    let unit = space.nrm_sq(&x.scale_re(1.0 / nx).sub(&y.scale_re(1.0 / ny)));
    let angular = rel(unit - 2.0 * re_gap / prod, &[unit, 2.0, 2.0 * xy.re / prod]);

    let ny2 = ny * ny;
    let proj = ny2 * space.nrm_sq(&x.sub_scaled(xy / ny2, y));
    let quad = space.nrm_sq(x) * ny2;
    let projection = rel(proj - (quad - xy.norm_sqr()), &[proj, quad, xy.norm_sqr()]);

    let s = nx + ny;
    let plus = space.nrm_sq(&x.add(y));
    let sum = rel(
        s * s - plus - 2.0 * re_gap,
        &[s * s, plus, 2.0 * prod, 2.0 * xy.re],
    );

    let minus = space.nrm_sq(&x.sub(y));
    let d = nx - ny;
    let difference = rel(
        minus - d * d - 2.0 * re_gap,
        &[minus, d * d, 2.0 * prod, 2.0 * xy.re],
    );

    Ok(GapIdentities {
        angular,
        projection,
        sum,
        difference,
    })
}

/// Two forms of one hypothesis, each signed so that `>= 0` means the
/// hypothesis holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equivalence {
    pub form_a: f64,
    pub form_b: f64,
    /// Relative residual of the identity linking the two forms.
    pub identity_residual: f64,
}

impl Equivalence {
    pub fn signs_agree(&self) -> bool {
        (self.form_a >= 0.0) == (self.form_b >= 0.0)
    }
}

/// Both forms of the hypothesis of `id`, one of `AA_QUAD`, `GAMMA_DISC`,
/// `ANGULAR`, `PROJ`.
///
/// * `AA_QUAD`: `Re⟨Ay − x, x − ay⟩` and `¼|A−a|²‖y‖² − ‖x − ((A+a)/2) y‖²`
/// * `GAMMA_DISC`: `Re⟨Γe − x, x − γe⟩` and `¼|Γ−γ|² − ‖x − ((γ+Γ)/2) e‖²`
/// * `ANGULAR`: `r − ‖x/‖x‖ − y/‖y‖‖` and `½r²‖x‖‖y‖ − (‖x‖‖y‖ − Re⟨x,y⟩)`
/// * `PROJ`: `r − ‖x − (⟨x,y⟩/‖y‖²) y‖` and `r²‖y‖² − (‖x‖²‖y‖² − |⟨x,y⟩|²)`
pub fn hypothesis_equivalence(
    id: BoundId,
    inputs: &BoundInputs,
    params: &BoundParams,
) -> Result<Equivalence> {
    hypothesis_equivalence_in(&Space::Euclidean, id, inputs, params)
}

pub fn hypothesis_equivalence_in(
    space: &Space,
    id: BoundId,
    inputs: &BoundInputs,
    params: &BoundParams,
) -> Result<Equivalence> {
    let missing = |slot: &str| Error::Malformed(format!("{id} requires input vector `{slot}`"));
    let x = inputs.x.as_ref().ok_or_else(|| missing("x"))?;
    space.check(x)?;
    let field = x.field();
    params.check_field(field)?;
    let wrong = || Error::param(format!("parameters do not belong to {id}"));

    match (id, *params) {
        (BoundId::AaQuad, BoundParams::Affine { a, big_a }) => {
            let y = inputs.y.as_ref().ok_or_else(|| missing("y"))?;
            x.check_compatible(y)?;
            Ok(ball_forms(space, x, y, a, big_a))
        }
        (BoundId::GammaDisc, BoundParams::Band { gamma, big_gamma }) => {
            let e = inputs.e.as_ref().ok_or_else(|| missing("e"))?;
            x.check_compatible(e)?;
            check_unit(space, e)?;
            Ok(ball_forms(space, x, e, gamma, big_gamma))
        }
        (BoundId::Angular, BoundParams::Radius { r }) => {
            let y = inputs.y.as_ref().ok_or_else(|| missing("y"))?;
            let gaps = gap_identities_in(space, x, y)?;
            let (nx, ny) = (space.nrm(x), space.nrm(y));
            let re_gap = nx * ny - space.ip(x, y).re;
            let d = space.nrm(&x.scale_re(1.0 / nx).sub(&y.scale_re(1.0 / ny)));
            Ok(Equivalence {
                form_a: r - d,
                form_b: 0.5 * r * r * nx * ny - re_gap,
                identity_residual: gaps.angular,
            })
        }
        (BoundId::Proj, BoundParams::Radius { r }) => {
            let y = inputs.y.as_ref().ok_or_else(|| missing("y"))?;
            let gaps = gap_identities_in(space, x, y)?;
            let ny2 = space.nrm_sq(y);
            let xy = space.ip(x, y);
            let pd = space.nrm(&x.sub_scaled(xy / ny2, y));
            let quad_gap = space.nrm_sq(x) * ny2 - xy.norm_sqr();
            Ok(Equivalence {
                form_a: r - pd,
                form_b: r * r * ny2 - quad_gap,
                identity_residual: gaps.projection,
            })
        }
        (BoundId::AaQuad | BoundId::GammaDisc | BoundId::Angular | BoundId::Proj, _) => {
            Err(wrong())
        }
        _ => Err(Error::param(format!(
            "no equivalent hypothesis forms registered for {id}"
        ))),
    }
}

/// `Re⟨Hv − x, x − lv⟩` against `¼|H−l|²‖v‖² − ‖x − ((H+l)/2) v‖²`.
fn ball_forms(space: &Space, x: &Vector, v: &Vector, low: Scalar, high: Scalar) -> Equivalence {
    let cross = space.ip(&v.scale(high).sub(x), &x.sub_scaled(low, v)).re;
    let radius2 = 0.25 * (high - low).norm_sqr() * space.nrm_sq(v);
    let off = space.nrm_sq(&x.sub_scaled((high + low) * 0.5, v));
    Equivalence {
        form_a: cross,
        form_b: radius2 - off,
        identity_residual: rel(cross - (radius2 - off), &[cross, radius2, off]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ParamSet;

    fn v(c: &[f64]) -> Vector {
        Vector::real(c).unwrap()
    }

    fn s(re: f64) -> Scalar {
        Scalar::new(re, 0.0)
    }

    #[test]
    fn band_identity_example() {
        let k = kernel_identity_residual(&v(&[1.0, 1.0]), &v(&[1.0, 0.0]), s(0.0), s(2.0)).unwrap();
        assert_eq!(k.lhs, 2.0);
        assert_eq!(k.rhs, 2.0);
        assert_eq!(k.max_residual(), 0.0);
    }

    #[test]
    fn band_identity_degenerate() {
        let e = v(&[1.0, 0.0]);
        let k = kernel_identity_residual(&e, &e, s(1.0), s(1.0)).unwrap();
        assert_eq!(k.lhs, 0.0);
        assert_eq!(k.rhs, 0.0);
    }

    #[test]
    fn swapped_form_is_not_an_identity() {
        let k = kernel_identity_residual(&v(&[0.0, 3.0]), &v(&[1.0, 0.0]), s(0.0), s(2.0)).unwrap();
        assert!(k.max_residual() < 1e-15);
        assert!(k.swapped_form_residual > 0.1);
    }

    #[test]
    fn kernel_rejects_non_unit_e() {
        assert!(matches!(
            kernel_identity_residual(&v(&[1.0]), &v(&[2.0]), s(0.0), s(1.0)),
            Err(Error::NonAdmissible(_))
        ));
    }

    #[test]
    fn projection_identity_example() {
        let g = gap_identities(&v(&[1.0, 1.0]), &v(&[1.0, 0.0])).unwrap();
        assert_eq!(g.projection, 0.0);
        let x = v(&[0.2, -1.0, 4.0]);
        assert!(gap_identities(&x, &x).unwrap().max_residual() < 1e-15);
    }

    #[test]
    fn disc_equivalence_example() {
        let set: ParamSet = serde_json::from_str(r#"{"gamma": 0, "Gamma": 2}"#).unwrap();
        let p = BoundParams::parse(BoundId::GammaDisc, &set).unwrap();
        let inputs = BoundInputs::single_unit(v(&[1.0, 1.0]), v(&[1.0, 0.0]));
        let eq = hypothesis_equivalence(BoundId::GammaDisc, &inputs, &p).unwrap();
        assert_eq!(eq.form_a, 0.0);
        assert_eq!(eq.form_b, 0.0);
        assert_eq!(eq.identity_residual, 0.0);
    }

    #[test]
    fn affine_midpoint_maximizes() {
        let set: ParamSet = serde_json::from_str(r#"{"a": [0.5, -1], "A": [2, 1]}"#).unwrap();
        let p = BoundParams::parse(BoundId::AaQuad, &set).unwrap();
        let y = Vector::complex(&[Scalar::new(1.0, 0.5), Scalar::new(-0.3, 0.2)]).unwrap();
        let mid = Scalar::new(1.25, 0.0);
        let x = y.scale(mid);
        let eq =
            hypothesis_equivalence(BoundId::AaQuad, &BoundInputs::pair(x, y.clone()), &p).unwrap();
        let expect = 0.25 * (Scalar::new(2.0, 1.0) - Scalar::new(0.5, -1.0)).norm_sqr() * norm2(&y);
        assert!((eq.form_a - expect).abs() < 1e-12);
        assert!(eq.signs_agree());
    }

    fn norm2(y: &Vector) -> f64 {
        Space::Euclidean.nrm_sq(y)
    }

    #[test]
    fn unsupported_bound() {
        let inputs = BoundInputs::pair(v(&[1.0]), v(&[1.0]));
        assert!(hypothesis_equivalence(BoundId::Hile, &inputs, &BoundParams::None).is_err());
    }
}
