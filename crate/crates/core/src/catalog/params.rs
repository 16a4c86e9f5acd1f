use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BoundId;
use crate::error::{Error, Result};
use crate::space::{Field, Scalar};

/// Scalar parameter as it travels through JSON: a number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub Scalar);

impl Num {
    pub fn real(v: f64) -> Self {
        Num(Scalar::new(v, 0.0))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Num(Scalar::new(re, im))
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        crate::space::scalar_serde::serialize(&self.0, serializer)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        crate::space::scalar_serde::deserialize(deserializer).map(Num)
    }
}

/// Untyped parameter bag, the `"params"` object of a request.
///
/// Which keys matter depends on the bound; [`BoundParams::parse`] picks the
/// relevant ones and validates their domains.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSet {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(rename = "a", skip_serializing_if = "Option::is_none")]
    pub small_a: Option<Num>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    pub big_a: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Num>,
    #[serde(rename = "Gamma", skip_serializing_if = "Option::is_none")]
    pub big_gamma: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

/// Default Hölder / power exponent when a request leaves `p` unset.
pub const DEFAULT_P: f64 = 2.0;

/// Validated, typed parameters of one bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundParams {
    /// Bounds without scalar parameters.
    None,
    WeakRefine {
        r1: f64,
        r2: f64,
    },
    /// The `a, A` pair of the affine-ball family.
    Affine {
        a: Scalar,
        big_a: Scalar,
    },
    /// A radius `r > 0` (angular and projection forms).
    Radius {
        r: f64,
    },
    /// A radius `rho > 0` (cross-norm and phase forms).
    Rho {
        rho: f64,
    },
    Dw {
        eta: Option<f64>,
    },
    Hile {
        v: f64,
    },
    /// Exponent of the Goldstein-Ryff-Clarke forms, any real.
    Grc {
        r: f64,
    },
    ComplexAlpha {
        alpha: Scalar,
        r: f64,
    },
    AlphaRot {
        alpha: Scalar,
        p: f64,
    },
    Lambda {
        lambda: f64,
    },
    Power {
        p: f64,
    },
    Band {
        gamma: Scalar,
        big_gamma: Scalar,
    },
    Beta {
        alpha: f64,
        beta: Scalar,
        gamma: f64,
    },
    Trig {
        phi: f64,
        theta: f64,
    },
}

fn need<T: Copy>(v: Option<T>, id: BoundId, key: &str) -> Result<T> {
    v.ok_or_else(|| Error::param(format!("{id} requires parameter `{key}`")))
}

fn finite(v: f64, key: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::param(format!("`{key}` must be finite")))
    }
}

fn positive(v: f64, key: &str) -> Result<f64> {
    if finite(v, key)? > 0.0 {
        Ok(v)
    } else {
        Err(Error::param(format!("`{key}` must be > 0, got {v}")))
    }
}

fn finite_scalar(s: Scalar, key: &str) -> Result<Scalar> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(s)
    } else {
        Err(Error::param(format!("`{key}` must be finite")))
    }
}

fn real_scalar(s: Scalar, key: &str) -> Result<f64> {
    if s.im != 0.0 {
        return Err(Error::param(format!("`{key}` must be real")));
    }
    finite(s.re, key)
}

impl BoundParams {
    /// Picks and validates the parameters `id` needs from `set`.
    pub fn parse(id: BoundId, set: &ParamSet) -> Result<Self> {
        use BoundId::*;
        let params = match id {
            Kurepa | RefineSplit | Hile => BoundParams::None,
            WeakRefine => {
                let r1 = finite(need(set.r1, id, "r1")?, "r1")?;
                let r2 = finite(need(set.r2, id, "r2")?, "r2")?;
                if r1 < 0.0 {
                    return Err(Error::param("`r1` must be >= 0"));
                }
                if r2 < r1 {
                    return Err(Error::param(format!("`r2` ({r2}) must be >= `r1` ({r1})")));
                }
                BoundParams::WeakRefine { r1, r2 }
            }
            AaQuad | AaRatio | AaQuadratio | AaSimple => {
                let a = finite_scalar(need(set.small_a, id, "a")?.0, "a")?;
                let big_a = finite_scalar(need(set.big_a, id, "A")?.0, "A")?;
                if matches!(id, AaRatio | AaQuadratio) && (big_a * a.conj()).re <= 0.0 {
                    return Err(Error::param("requires Re(A conj a) > 0"));
                }
                if id == AaSimple && big_a + a == Scalar::new(0.0, 0.0) {
                    return Err(Error::param("requires A != -a"));
                }
                BoundParams::Affine { a, big_a }
            }
            Angular | AngularSuff | Proj | ProjSuff => BoundParams::Radius {
                r: positive(need(set.r, id, "r")?, "r")?,
            },
            Crossnorm | Phase => BoundParams::Rho {
                rho: positive(need(set.rho, id, "rho")?, "rho")?,
            },
            Dw => {
                let eta = match set.eta {
                    None => None,
                    Some(eta) => {
                        let eta = positive(eta, "eta")?;
                        if eta > 1.0 {
                            return Err(Error::param("`eta` must lie in (0, 1]"));
                        }
                        Some(eta)
                    }
                };
                BoundParams::Dw { eta }
            }
            HileV => BoundParams::Hile {
                v: positive(need(set.v, id, "v")?, "v")?,
            },
            GrcRaw | Grc => BoundParams::Grc {
                r: finite(need(set.r, id, "r")?, "r")?,
            },
            ComplexAlpha => {
                let alpha = finite_scalar(need(set.alpha, id, "alpha")?.0, "alpha")?;
                if alpha.re <= 0.0 || alpha.im <= 0.0 {
                    return Err(Error::param("requires Re alpha > 0 and Im alpha > 0"));
                }
                let r = finite(need(set.r, id, "r")?, "r")?;
                if r < 0.0 {
                    return Err(Error::param("`r` must be >= 0"));
                }
                BoundParams::ComplexAlpha { alpha, r }
            }
            AlphaRot => {
                let alpha = finite_scalar(need(set.alpha, id, "alpha")?.0, "alpha")?;
                if alpha == Scalar::new(0.0, 0.0) {
                    return Err(Error::param("requires alpha != 0"));
                }
                let p = finite(set.p.unwrap_or(DEFAULT_P), "p")?;
                if p <= 1.0 {
                    return Err(Error::param("Hölder exponent `p` must be > 1"));
                }
                BoundParams::AlphaRot { alpha, p }
            }
            LambdaInterp => {
                let lambda = finite(need(set.lambda, id, "lambda")?, "lambda")?;
                if !(lambda > 0.0 && lambda < 1.0) {
                    return Err(Error::param("`lambda` must lie in (0, 1)"));
                }
                BoundParams::Lambda { lambda }
            }
            PowerP => {
                let p = finite(set.p.unwrap_or(DEFAULT_P), "p")?;
                if p < 1.0 {
                    return Err(Error::param("`p` must be >= 1"));
                }
                BoundParams::Power { p }
            }
            GammaBandUp | GammaBandLow | GammaDisc | GammaDiscProduct => BoundParams::Band {
                gamma: finite_scalar(need(set.gamma, id, "gamma")?.0, "gamma")?,
                big_gamma: finite_scalar(need(set.big_gamma, id, "Gamma")?.0, "Gamma")?,
            },
            BetaCone => {
                let alpha = positive(
                    real_scalar(need(set.alpha, id, "alpha")?.0, "alpha")?,
                    "alpha",
                )?;
                let gamma = positive(
                    real_scalar(need(set.gamma, id, "gamma")?.0, "gamma")?,
                    "gamma",
                )?;
                let beta = finite_scalar(need(set.beta, id, "beta")?.0, "beta")?;
                if beta.norm_sqr() < alpha * gamma {
                    return Err(Error::param("requires |beta|^2 >= alpha gamma"));
                }
                BoundParams::Beta { alpha, beta, gamma }
            }
            TrigCone => {
                let phi = finite(need(set.phi, id, "phi")?, "phi")?;
                let theta = finite(need(set.theta, id, "theta")?, "theta")?;
                if !(0.0..2.0 * PI).contains(&phi) {
                    return Err(Error::param("`phi` must lie in [0, 2 pi)"));
                }
                if !(theta > 0.0 && theta < FRAC_PI_2) {
                    return Err(Error::param("`theta` must lie in (0, pi/2)"));
                }
                BoundParams::Trig { phi, theta }
            }
        };
        Ok(params)
    }

    /// Rejects scalars that are not elements of `field`.
    pub(crate) fn check_field(&self, field: Field) -> Result<()> {
        if field == Field::Complex {
            return Ok(());
        }
        let bad = |name: &str| {
            Err(Error::param(format!(
                "`{name}` must be real over a REAL space"
            )))
        };
        match *self {
            BoundParams::Affine { a, big_a } => {
                if a.im != 0.0 {
                    return bad("a");
                }
                if big_a.im != 0.0 {
                    return bad("A");
                }
            }
            BoundParams::AlphaRot { alpha, .. } if alpha.im != 0.0 => return bad("alpha"),
            BoundParams::Band { gamma, big_gamma } => {
                if gamma.im != 0.0 {
                    return bad("gamma");
                }
                if big_gamma.im != 0.0 {
                    return bad("Gamma");
                }
            }
            BoundParams::Beta { beta, .. } if beta.im != 0.0 => return bad("beta"),
            BoundParams::Trig { phi, .. } if phi.sin().abs() > 1e-12 => {
                return Err(Error::param(
                    "over a REAL space e^(i phi) must be real, so phi must be 0 or pi",
                ))
            }
            _ => {}
        }
        Ok(())
    }

    /// Back to the untyped JSON form.
    pub fn to_param_set(&self) -> ParamSet {
        let mut s = ParamSet::default();
        match *self {
            BoundParams::None => {}
            BoundParams::WeakRefine { r1, r2 } => {
                s.r1 = Some(r1);
                s.r2 = Some(r2);
            }
            BoundParams::Affine { a, big_a } => {
                s.small_a = Some(Num(a));
                s.big_a = Some(Num(big_a));
            }
            BoundParams::Radius { r } | BoundParams::Grc { r } => s.r = Some(r),
            BoundParams::Rho { rho } => s.rho = Some(rho),
            BoundParams::Dw { eta } => s.eta = eta,
            BoundParams::Hile { v } => s.v = Some(v),
            BoundParams::ComplexAlpha { alpha, r } => {
                s.alpha = Some(Num(alpha));
                s.r = Some(r);
            }
            BoundParams::AlphaRot { alpha, p } => {
                s.alpha = Some(Num(alpha));
                s.p = Some(p);
            }
            BoundParams::Lambda { lambda } => s.lambda = Some(lambda),
            BoundParams::Power { p } => s.p = Some(p),
            BoundParams::Band { gamma, big_gamma } => {
                s.gamma = Some(Num(gamma));
                s.big_gamma = Some(Num(big_gamma));
            }
            BoundParams::Beta { alpha, beta, gamma } => {
                s.alpha = Some(Num::real(alpha));
                s.beta = Some(Num(beta));
                s.gamma = Some(Num::real(gamma));
            }
            BoundParams::Trig { phi, theta } => {
                s.phi = Some(phi);
                s.theta = Some(theta);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(json: &str) -> ParamSet {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn complex_alpha_needs_positive_parts() {
        let err = BoundParams::parse(BoundId::ComplexAlpha, &set(r#"{"alpha":[1,-1],"r":1}"#));
        assert!(matches!(err, Err(Error::ParamDomain(_))));
        let err = BoundParams::parse(BoundId::ComplexAlpha, &set(r#"{"alpha":[1,0],"r":1}"#));
        assert!(matches!(err, Err(Error::ParamDomain(_))));
        assert!(
            BoundParams::parse(BoundId::ComplexAlpha, &set(r#"{"alpha":[1,1],"r":1}"#)).is_ok()
        );
    }

    #[test]
    fn domains_are_enforced() {
        let cases = [
            (BoundId::LambdaInterp, r#"{"lambda":1.0}"#),
            (BoundId::LambdaInterp, r#"{"lambda":0}"#),
            (BoundId::TrigCone, r#"{"phi":0,"theta":1.6}"#),
            (BoundId::TrigCone, r#"{"phi":7,"theta":1}"#),
            (BoundId::BetaCone, r#"{"alpha":1,"beta":0.5,"gamma":1}"#),
            (BoundId::BetaCone, r#"{"alpha":-1,"beta":2,"gamma":1}"#),
            (BoundId::AaRatio, r#"{"a":-1,"A":2}"#),
            (BoundId::AaSimple, r#"{"a":1,"A":-1}"#),
            (BoundId::WeakRefine, r#"{"r1":2,"r2":1}"#),
            (BoundId::Angular, r#"{"r":0}"#),
            (BoundId::PowerP, r#"{"p":0.5}"#),
            (BoundId::AlphaRot, r#"{"alpha":0}"#),
            (BoundId::AlphaRot, r#"{"alpha":1,"p":1}"#),
            (BoundId::Dw, r#"{"eta":1.5}"#),
            (BoundId::HileV, r#"{"v":0}"#),
        ];
        for (id, json) in cases {
            assert!(
                matches!(
                    BoundParams::parse(id, &set(json)),
                    Err(Error::ParamDomain(_))
                ),
                "{id} {json}"
            );
        }
    }

    #[test]
    fn missing_parameter_names_the_key() {
        let err = BoundParams::parse(BoundId::Angular, &ParamSet::default()).unwrap_err();
        assert!(err.to_string().contains("`r`"));
    }

    #[test]
    fn defaults_for_p() {
        assert_eq!(
            BoundParams::parse(BoundId::PowerP, &ParamSet::default()).unwrap(),
            BoundParams::Power { p: 2.0 }
        );
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ParamSet>(r#"{"radius":1}"#).is_err());
    }

    #[test]
    fn real_space_rejects_complex_scalars() {
        let p =
            BoundParams::parse(BoundId::GammaDisc, &set(r#"{"gamma":[0,1],"Gamma":2}"#)).unwrap();
        assert!(p.check_field(Field::Real).is_err());
        assert!(p.check_field(Field::Complex).is_ok());
        let t = BoundParams::parse(
            BoundId::TrigCone,
            &set(r#"{"phi":3.141592653589793,"theta":1}"#),
        )
        .unwrap();
        assert!(t.check_field(Field::Real).is_ok());
    }

    #[test]
    fn param_set_round_trip() {
        let p = BoundParams::Beta {
            alpha: 1.0,
            beta: Scalar::new(0.5, 0.25),
            gamma: 0.3,
        };
        assert_eq!(
            BoundParams::parse(BoundId::BetaCone, &p.to_param_set()).unwrap(),
            p
        );
    }
}
