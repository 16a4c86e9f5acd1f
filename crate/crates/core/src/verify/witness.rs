use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use super::hexfloat::{dehexify, hexify};
use crate::catalog::{evaluate, BoundId, BoundInputs, BoundParams, BoundReport, ParamSet};
use crate::error::{Error, Result};
use crate::space::{ComplexifiedVector, Scalar, Vector};

/// A bound instance together with the tightness it attains.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub bound_id: BoundId,
    pub inputs: BoundInputs,
    pub params: BoundParams,
    pub tightness: f64,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    bound_id: BoundId,
    inputs: BoundInputs,
    params: ParamSet,
    tightness: f64,
}

impl Witness {
    /// Evaluates the instance and records its tightness.
    pub fn new(bound_id: BoundId, inputs: BoundInputs, params: BoundParams) -> Result<Self> {
        let report = evaluate(bound_id, &inputs, &params)?;
        if !report.applicable {
            return Err(Error::NotApplicable(format!(
                "{bound_id} witness fails its hypothesis"
            )));
        }
        let tightness = report
            .tightness
            .ok_or_else(|| Error::non_admissible(format!("{bound_id} witness has no tightness")))?;
        Ok(Witness {
            bound_id,
            inputs,
            params,
            tightness,
        })
    }

    pub fn evaluate(&self) -> Result<BoundReport> {
        evaluate(self.bound_id, &self.inputs, &self.params)
    }

    /// JSON form with every float written as a hex string.
    pub fn to_json(&self) -> Value {
        let repr = WitnessRepr {
            bound_id: self.bound_id,
            inputs: self.inputs.clone(),
            params: self.params.to_param_set(),
            tightness: self.tightness,
        };
        hexify(&serde_json::to_value(repr).expect("witness serializes"))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let repr: WitnessRepr = serde_json::from_value(dehexify(v)?)
            .map_err(|e| Error::Malformed(format!("witness: {e}")))?;
        Ok(Witness {
            bound_id: repr.bound_id,
            params: BoundParams::parse(repr.bound_id, &repr.params)?,
            inputs: repr.inputs,
            tightness: repr.tightness,
        })
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn v(c: &[f64]) -> Vector {
    Vector::real(c).expect("nonempty")
}

fn band(gamma: f64, big_gamma: f64) -> BoundParams {
    BoundParams::Band {
        gamma: Scalar::new(gamma, 0.0),
        big_gamma: Scalar::new(big_gamma, 0.0),
    }
}

/// Instance attaining equality (tightness 1), for bounds whose equality
/// case is known.
pub fn equality_witness(id: BoundId) -> Result<Witness> {
    use BoundId::*;
    let orth = || BoundInputs::pair(v(&[1.0, 0.0]), v(&[0.0, 1.0]));
    let (inputs, params) = match id {
        Angular => (orth(), BoundParams::Radius { r: SQRT_2 }),
        WeakRefine => (
            orth(),
            BoundParams::WeakRefine {
                r1: 0.0,
                r2: SQRT_2,
            },
        ),
        Dw => (
            orth(),
            BoundParams::Dw {
                eta: Some(SQRT_2 / 2.0),
            },
        ),
        Crossnorm => (orth(), BoundParams::Rho { rho: SQRT_2 }),
        PowerP => (orth(), BoundParams::Power { p: 1.0 }),
        Phase => (
            BoundInputs::pair(v(&[5.0, 0.0]), v(&[3.0, 4.0])),
            BoundParams::Rho { rho: 20f64.sqrt() },
        ),
        Proj => (
            BoundInputs::pair(v(&[1.0, 1.0]), v(&[1.0, 0.0])),
            BoundParams::Radius { r: 1.0 },
        ),
        AaQuad => (
            BoundInputs::pair(v(&[1.0, 1.0]), v(&[1.0, 0.0])),
            BoundParams::Affine {
                a: Scalar::new(0.0, 0.0),
                big_a: Scalar::new(2.0, 0.0),
            },
        ),
        RefineSplit => (
            BoundInputs::pair_unit(v(&[1.0, 0.0]), v(&[1.0, 0.0]), v(&[1.0, 0.0])),
            BoundParams::None,
        ),
        LambdaInterp => (
            BoundInputs::pair_unit(v(&[1.0, 1.0]), v(&[-1.0, 1.0]), v(&[1.0, 0.0])),
            BoundParams::Lambda { lambda: 0.5 },
        ),
        GammaBandUp | GammaDisc | GammaDiscProduct => (
            BoundInputs::single_unit(v(&[1.0, 1.0]), v(&[1.0, 0.0])),
            band(0.0, 2.0),
        ),
        GammaBandLow => (
            BoundInputs::single_unit(v(&[2.0, 0.0]), v(&[1.0, 0.0])),
            band(0.0, 2.0),
        ),
        Kurepa => (
            BoundInputs::complexified(
                ComplexifiedVector::new(v(&[1.0, 0.0]), v(&[0.0, 1.0]))?,
                v(&[1.0, 0.0]),
            ),
            BoundParams::None,
        ),
        _ => return Err(Error::NoKnownWitness(id)),
    };
    Witness::new(id, inputs, params)
}
