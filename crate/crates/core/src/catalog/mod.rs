//! Registry of Schwarz-type inequalities: refinements, reverses, the
//! identities behind them and evaluators for each.
//!
//! Every entry is addressed by a [`BoundId`]. [`BoundId::info`] exposes the
//! static metadata (direction, target quantity, parameter schema, inputs
//! and a plain-text statement); [`evaluate`] produces a [`BoundReport`] for
//! concrete vectors and parameters.

mod eval;
mod identities;
mod params;
mod quantity;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use eval::{
    check_hypothesis, check_hypothesis_in, evaluate, evaluate_in, evaluate_with, BoundInputs,
    BoundReport, Hypothesis,
};
pub use identities::{
    gap_identities, gap_identities_in, hypothesis_equivalence, hypothesis_equivalence_in,
    kernel_identity_residual, kernel_identity_residual_in, Equivalence, GapIdentities,
    KernelIdentity,
};
pub use params::{BoundParams, Num, ParamSet, DEFAULT_P};
pub use quantity::{quantity, quantity_in, TargetQuantity};

/// Identifier of one inequality in the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundId {
    Kurepa,
    RefineSplit,
    WeakRefine,
    AaQuad,
    AaRatio,
    AaQuadratio,
    AaSimple,
    Angular,
    AngularSuff,
    Dw,
    Crossnorm,
    HileV,
    Hile,
    GrcRaw,
    Grc,
    Proj,
    ProjSuff,
    Phase,
    ComplexAlpha,
    AlphaRot,
    LambdaInterp,
    PowerP,
    GammaBandUp,
    GammaBandLow,
    GammaDisc,
    GammaDiscProduct,
    BetaCone,
    TrigCone,
}

/// Orientation of a bound's headline inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    /// Upper bound on a nonnegative gap: `lhs <= rhs`.
    Upper,
    /// Lower refinement: `lhs >= rhs`.
    Lower,
    /// Several linked inequalities; `chain_values` holds every term.
    Chain,
}

/// Vector slots a bound consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputShape {
    /// `x, y`
    Pair,
    /// `x, y` and a unit vector `e`
    PairUnit,
    /// `x` and a unit vector `e`
    SingleUnit,
    /// `x` and a nonzero reference vector `a`
    Cone,
    /// complexified `z` and a real vector `a`
    Complexified,
}

/// Static description of a registry entry.
#[derive(Debug, Clone, Copy)]
pub struct BoundInfo {
    pub id: BoundId,
    pub direction: Direction,
    pub target: TargetQuantity,
    pub inputs: InputShape,
    /// Parameter names as they appear in JSON requests.
    pub params: &'static [&'static str],
    /// Whether the bound has a hypothesis beyond admissibility.
    pub conditional: bool,
    /// Only meaningful over a complex space.
    pub complex_only: bool,
    pub statement: &'static str,
}

impl BoundId {
    pub const ALL: [BoundId; 28] = [
        BoundId::Kurepa,
        BoundId::RefineSplit,
        BoundId::WeakRefine,
        BoundId::AaQuad,
        BoundId::AaRatio,
        BoundId::AaQuadratio,
        BoundId::AaSimple,
        BoundId::Angular,
        BoundId::AngularSuff,
        BoundId::Dw,
        BoundId::Crossnorm,
        BoundId::HileV,
        BoundId::Hile,
        BoundId::GrcRaw,
        BoundId::Grc,
        BoundId::Proj,
        BoundId::ProjSuff,
        BoundId::Phase,
        BoundId::ComplexAlpha,
        BoundId::AlphaRot,
        BoundId::LambdaInterp,
        BoundId::PowerP,
        BoundId::GammaBandUp,
        BoundId::GammaBandLow,
        BoundId::GammaDisc,
        BoundId::GammaDiscProduct,
        BoundId::BetaCone,
        BoundId::TrigCone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Kurepa => "KUREPA",
            BoundId::RefineSplit => "REFINE_SPLIT",
            BoundId::WeakRefine => "WEAK_REFINE",
            BoundId::AaQuad => "AA_QUAD",
            BoundId::AaRatio => "AA_RATIO",
            BoundId::AaQuadratio => "AA_QUADRATIO",
            BoundId::AaSimple => "AA_SIMPLE",
            BoundId::Angular => "ANGULAR",
            BoundId::AngularSuff => "ANGULAR_SUFF",
            BoundId::Dw => "DW",
            BoundId::Crossnorm => "CROSSNORM",
            BoundId::HileV => "HILE_V",
            BoundId::Hile => "HILE",
            BoundId::GrcRaw => "GRC_RAW",
            BoundId::Grc => "GRC",
            BoundId::Proj => "PROJ",
            BoundId::ProjSuff => "PROJ_SUFF",
            BoundId::Phase => "PHASE",
            BoundId::ComplexAlpha => "COMPLEX_ALPHA",
            BoundId::AlphaRot => "ALPHA_ROT",
            BoundId::LambdaInterp => "LAMBDA_INTERP",
            BoundId::PowerP => "POWER_P",
            BoundId::GammaBandUp => "GAMMA_BAND_UP",
            BoundId::GammaBandLow => "GAMMA_BAND_LOW",
            BoundId::GammaDisc => "GAMMA_DISC",
            BoundId::GammaDiscProduct => "GAMMA_DISC_PRODUCT",
            BoundId::BetaCone => "BETA_CONE",
            BoundId::TrigCone => "TRIG_CONE",
        }
    }

    pub fn info(self) -> BoundInfo {
        use Direction::*;
        use InputShape::*;
        use TargetQuantity::*;
        let (direction, target, inputs, params, conditional, statement): (
            Direction,
            TargetQuantity,
            InputShape,
            &'static [&'static str],
            bool,
            &'static str,
        ) = match self {
            BoundId::Kurepa => (
                Chain,
                QQuadGap,
                Complexified,
                &[],
                false,
                "|<z,a>_C|^2 <= 1/2 |a|^2 (|z|_C^2 + |<z,conj z>_C|) <= |a|^2 |z|_C^2",
            ),
            BoundId::RefineSplit => (
                Chain,
                QProd,
                PairUnit,
                &[],
                false,
                "|x||y| >= |<x,y> - <x,e><e,y>| + |<x,e><e,y>| >= |<x,y>|",
            ),
            BoundId::WeakRefine => (
                Lower,
                QReGap,
                Pair,
                &["r1", "r2"],
                true,
                "|x-y| >= r2 >= r1 >= ||x|-|y|| implies |x||y| - Re<x,y> >= (r2^2 - r1^2)/2",
            ),
            BoundId::AaQuad => (
                Chain,
                QQuadGap,
                Pair,
                &["a", "A"],
                true,
                "|x - (A+a)/2 y| <= |A-a||y|/2 implies |x|^2|y|^2 - |<x,y>|^2 <= |A-a|^2 |y|^4 / 4",
            ),
            BoundId::AaRatio => (
                Chain,
                QProd,
                Pair,
                &["a", "A"],
                true,
                "same ball and Re(A conj a) > 0 imply |x||y| <= Re[(conj A + conj a)<x,y>] / (2 sqrt Re(A conj a))",
            ),
            BoundId::AaQuadratio => (
                Upper,
                QQuadGap,
                Pair,
                &["a", "A"],
                true,
                "same ball and Re(A conj a) > 0 imply |x|^2|y|^2 - |<x,y>|^2 <= |A-a|^2 |<x,y>|^2 / (4 Re(A conj a))",
            ),
            BoundId::AaSimple => (
                Chain,
                QAbsGap,
                Pair,
                &["a", "A"],
                true,
                "same ball and A != -a imply |x||y| - |<x,y>| <= |A-a|^2 |y|^2 / (4 |A+a|)",
            ),
            BoundId::Angular => (
                Upper,
                QReGap,
                Pair,
                &["r"],
                true,
                "|x/|x| - y/|y|| <= r iff |x||y| - Re<x,y> <= r^2 |x||y| / 2",
            ),
            BoundId::AngularSuff => (
                Chain,
                QReGap,
                Pair,
                &["r"],
                true,
                "|x-y| <= r|x|/2 implies |x/|x| - y/|y|| <= r",
            ),
            BoundId::Dw => (
                Chain,
                QReGap,
                Pair,
                &["eta"],
                false,
                "(|x||y| - Re<x,y>)/(|x||y|) <= 2 (|x-y|/(|x|+|y|))^2; with |x-y| <= eta(|x|+|y|) the gap is <= 2 eta^2 |x||y|",
            ),
            BoundId::Crossnorm => (
                Chain,
                QReGap,
                Pair,
                &["rho"],
                true,
                "|x/|y| - y/|x|| <= rho implies |x||y| - Re<x,y> <= rho^2 |x||y| / 2",
            ),
            BoundId::HileV => (
                Upper,
                QReGap,
                Pair,
                &["v"],
                false,
                "||x|^v x - |y|^v y| <= (|x|^(v+1) - |y|^(v+1))/(|x| - |y|) |x-y|",
            ),
            BoundId::Hile => (
                Upper,
                QReGap,
                Pair,
                &[],
                false,
                "|x||y| - Re<x,y> <= (|x|+|y|)^2 |x-y|^2 / (2|x||y|)",
            ),
            BoundId::GrcRaw => (
                Upper,
                QReGap,
                Pair,
                &["r"],
                true,
                "|x| >= |y| > 0 implies |x|^2r + |y|^2r - 2|x|^r|y|^r Re<x,y>/(|x||y|) <= r^2|x|^(2r-2)|x-y|^2 (r >= 1) or |y|^(2r-2)|x-y|^2 (r < 1)",
            ),
            BoundId::Grc => (
                Chain,
                QReGap,
                Pair,
                &["r"],
                true,
                "|x| >= |y| > 0 implies |x||y| - Re<x,y> <= r^2 (|x|/|y|)^(r-1) |x-y|^2 / 2 (r >= 1) or (|x|/|y|)^(1-r) |x-y|^2 / 2 (r < 1)",
            ),
            BoundId::Proj => (
                Upper,
                QQuadGap,
                Pair,
                &["r"],
                true,
                "|x - <x,y>/|y|^2 y| <= r iff |x|^2|y|^2 - |<x,y>|^2 <= r^2 |y|^2",
            ),
            BoundId::ProjSuff => (
                Chain,
                QQuadGap,
                Pair,
                &["r"],
                true,
                "|x-y| <= r/2 implies |x - <x,y>/|y|^2 y| <= r",
            ),
            BoundId::Phase => (
                Upper,
                QAbsGap,
                Pair,
                &["rho"],
                true,
                "|x - <x,y>/|<x,y>| y| <= rho implies |x||y| - |<x,y>| <= rho^2 / 2",
            ),
            BoundId::ComplexAlpha => (
                Chain,
                QReGap,
                Pair,
                &["alpha", "r"],
                true,
                "|x - (Im alpha/Re alpha) y| <= r implies |x||y| - Re<x,y> <= (Re alpha/Im alpha) r^2 / 2",
            ),
            BoundId::AlphaRot => (
                Chain,
                QAbsGap,
                Pair,
                &["alpha", "p"],
                false,
                "|x||y| - Re[alpha^2/|alpha|^2 <x,y>] <= [|Re alpha||x-y| + |Im alpha||x+y|]^2 / (2|alpha|^2) <= I^2/2",
            ),
            BoundId::LambdaInterp => (
                Upper,
                QKernelRe,
                PairUnit,
                &["lambda"],
                false,
                "Re[<x,y> - <x,e><e,y>] <= (|w|^2 - |<w,e>|^2) / (4 lambda (1-lambda)), w = lambda x + (1-lambda) y",
            ),
            BoundId::PowerP => (
                Chain,
                QReGap,
                Pair,
                &["p"],
                false,
                "|x||y| - Re<x,y> <= min([(|x|+|y|)^2p - |x+y|^2p]^(1/p), [|x-y|^2p - ||x|-|y||^2p]^(1/p)) / 2",
            ),
            BoundId::GammaBandUp => (
                Upper,
                QEQuadGap,
                SingleUnit,
                &["gamma", "Gamma"],
                false,
                "|x|^2 - |<x,e>|^2 + |x - (gamma+Gamma)/2 e|^2 <= |Gamma-gamma|^2 / 2",
            ),
            BoundId::GammaBandLow => (
                Lower,
                QEQuadGap,
                SingleUnit,
                &["gamma", "Gamma"],
                true,
                "<x,e> inside the box [gamma, Gamma] implies |x|^2 - |<x,e>|^2 + |x - (gamma+Gamma)/2 e|^2 >= |Gamma-gamma|^2 / 4",
            ),
            BoundId::GammaDisc => (
                Chain,
                QEQuadGap,
                SingleUnit,
                &["gamma", "Gamma"],
                true,
                "|x - (gamma+Gamma)/2 e| <= |Gamma-gamma|/2 implies |x|^2 - |<x,e>|^2 <= Re[(Gamma-<x,e>)(conj<x,e> - conj gamma)] <= |Gamma-gamma|^2/4",
            ),
            BoundId::GammaDiscProduct => (
                Chain,
                QEQuadGap,
                SingleUnit,
                &["gamma", "Gamma"],
                true,
                "same disc implies |x|^2 - |<x,e>|^2 <= |Gamma - <x,e>| |<x,e> - gamma|",
            ),
            BoundId::BetaCone => (
                Chain,
                QProd,
                Cone,
                &["alpha", "beta", "gamma"],
                true,
                "|x - beta/alpha a| <= sqrt(|beta|^2 - alpha gamma)/alpha |a| implies |x||a| <= Re[conj beta <x,a>]/sqrt(alpha gamma)",
            ),
            BoundId::TrigCone => (
                Upper,
                QProd,
                Cone,
                &["phi", "theta"],
                true,
                "|x - e^(i phi) a| <= cos(theta)|a| implies |x||a| <= (cos phi Re<x,a> + sin phi Im<x,a>)/sin(theta)",
            ),
        };
        BoundInfo {
            id: self,
            direction,
            target,
            inputs,
            params,
            conditional,
            complex_only: matches!(self, BoundId::ComplexAlpha),
            statement,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Malformed(format!("unknown bound `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in BoundId::ALL {
            assert_eq!(id.name().parse::<BoundId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.name()));
        }
        assert!("NOPE".parse::<BoundId>().is_err());
    }

    #[test]
    fn registry_is_complete() {
        let mut seen = std::collections::BTreeSet::new();
        for id in BoundId::ALL {
            assert!(seen.insert(id));
            let info = id.info();
            assert_eq!(info.id, id);
            assert!(!info.statement.is_empty());
        }
        assert_eq!(seen.len(), 28);
    }
}
