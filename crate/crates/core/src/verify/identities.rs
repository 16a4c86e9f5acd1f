use rayon::prelude::*;
use serde::Serialize;

use super::draws::{stream, RngDraws};
use super::sampler::draw_identity_case;
use super::FuzzConfig;
use crate::catalog::{
    gap_identities, hypothesis_equivalence, kernel_identity_residual, BoundId, BoundInputs,
    BoundParams,
};
use crate::error::Result;
use crate::tolerance::{IDENTITY_REL_TOL, INEQUALITY_REL_TOL};

/// Largest residual of every identity over a random campaign, plus the
/// sign agreement of the two equivalent ball hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentitySummary {
    pub samples: u64,
    pub band: f64,
    pub split: f64,
    pub midpoint: f64,
    pub angular: f64,
    pub projection: f64,
    pub sum: f64,
    pub difference: f64,
    /// Identity behind the `AA_QUAD` and `GAMMA_DISC` hypothesis forms.
    pub equivalence: f64,
    /// Hypothesis pairs with both forms above the sign guard.
    pub sign_compared: u64,
    pub sign_disagreements: u64,
    pub passed: bool,
}

impl IdentitySummary {
    pub fn max_residual(&self) -> f64 {
        [
            self.band,
            self.split,
            self.midpoint,
            self.angular,
            self.projection,
            self.sum,
            self.difference,
            self.equivalence,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

struct Case {
    residuals: [f64; 8],
    compared: u64,
    disagreements: u64,
}

fn check(cfg: &FuzzConfig, index: u64) -> Result<Case> {
    let mut d = RngDraws::new(stream(cfg.seed, "identities", index));
    let c = draw_identity_case(&mut d, cfg);
    let k = kernel_identity_residual(&c.x, &c.e, c.gamma, c.big_gamma)?;
    let g = gap_identities(&c.x, &c.y)?;
    let ball = [
        hypothesis_equivalence(
            BoundId::AaQuad,
            &BoundInputs::pair(c.x.clone(), c.y.clone()),
            &BoundParams::Affine {
                a: c.gamma,
                big_a: c.big_gamma,
            },
        )?,
        hypothesis_equivalence(
            BoundId::GammaDisc,
            &BoundInputs::single_unit(c.x.clone(), c.e.clone()),
            &BoundParams::Band {
                gamma: c.gamma,
                big_gamma: c.big_gamma,
            },
        )?,
    ];
    let mut case = Case {
        residuals: [
            k.residual,
            k.split_residual,
            k.midpoint_residual,
            g.angular,
            g.projection,
            g.sum,
            g.difference,
            ball[0].identity_residual.max(ball[1].identity_residual),
        ],
        compared: 0,
        disagreements: 0,
    };
    for eq in ball {
        if eq.form_a.abs() > INEQUALITY_REL_TOL && eq.form_b.abs() > INEQUALITY_REL_TOL {
            case.compared += 1;
            case.disagreements += !eq.signs_agree() as u64;
        }
    }
    Ok(case)
}

/// Checks every identity on `cfg.samples` random inputs.
pub fn identity_campaign(cfg: &FuzzConfig) -> Result<IdentitySummary> {
    cfg.validate()?;
    let cases: Vec<Case> = cfg.pool().install(|| {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| check(cfg, i))
            .collect::<Result<_>>()
    })?;
    let mut worst = [0f64; 8];
    let (mut compared, mut disagreements) = (0, 0);
    for c in &cases {
        for (w, r) in worst.iter_mut().zip(c.residuals) {
            *w = w.max(r);
        }
        compared += c.compared;
        disagreements += c.disagreements;
    }
    let [band, split, midpoint, angular, projection, sum, difference, equivalence] = worst;
    let mut summary = IdentitySummary {
        samples: cfg.samples,
        band,
        split,
        midpoint,
        angular,
        projection,
        sum,
        difference,
        equivalence,
        sign_compared: compared,
        sign_disagreements: disagreements,
        passed: false,
    };
    summary.passed = summary.max_residual() < IDENTITY_REL_TOL && disagreements == 0;
    Ok(summary)
}
