use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Space, Vector};
use crate::tolerance::UNIT_NORM_TOL;

/// Scalar quantities the catalog bounds from above or below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetQuantity {
    /// `‖x‖‖y‖ − Re⟨x,y⟩`
    #[serde(rename = "Q_RE_GAP")]
    QReGap,
    /// `‖x‖‖y‖ − |⟨x,y⟩|`
    #[serde(rename = "Q_ABS_GAP")]
    QAbsGap,
    /// `‖x‖²‖y‖² − |⟨x,y⟩|²`
    #[serde(rename = "Q_QUAD_GAP")]
    QQuadGap,
    /// `‖x‖² − |⟨x,e⟩|²` for unit `e`
    #[serde(rename = "Q_E_QUAD_GAP")]
    QEQuadGap,
    /// `‖x‖‖y‖`
    #[serde(rename = "Q_PROD")]
    QProd,
    /// `Re[⟨x,y⟩ − ⟨x,e⟩⟨e,y⟩]` for unit `e`
    #[serde(rename = "Q_KERNEL_RE")]
    QKernelRe,
}

pub(crate) fn check_unit(space: &Space, e: &Vector) -> Result<()> {
    let n = space.nrm(e);
    if (n - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::non_admissible(format!(
            "`e` must have unit norm, got {n}"
        )));
    }
    Ok(())
}

/// Evaluates `kind` in the standard space.
///
/// For [`TargetQuantity::QEQuadGap`] the second vector is the unit vector
/// `e`; [`TargetQuantity::QKernelRe`] takes `y` second and `e` third.
pub fn quantity(
    kind: TargetQuantity,
    x: &Vector,
    other: &Vector,
    e: Option<&Vector>,
) -> Result<f64> {
    quantity_in(&Space::Euclidean, kind, x, other, e)
}

pub fn quantity_in(
    space: &Space,
    kind: TargetQuantity,
    x: &Vector,
    other: &Vector,
    e: Option<&Vector>,
) -> Result<f64> {
    x.check_compatible(other)?;
    space.check(x)?;
    let nx = space.nrm(x);
    let v = match kind {
        TargetQuantity::QReGap => nx * space.nrm(other) - space.ip(x, other).re,
        TargetQuantity::QAbsGap => nx * space.nrm(other) - space.ip(x, other).norm(),
        TargetQuantity::QQuadGap => {
            space.nrm_sq(x) * space.nrm_sq(other) - space.ip(x, other).norm_sqr()
        }
        TargetQuantity::QProd => nx * space.nrm(other),
        TargetQuantity::QEQuadGap => {
            check_unit(space, other)?;
            space.nrm_sq(x) - space.ip(x, other).norm_sqr()
        }
        TargetQuantity::QKernelRe => {
            let e =
                e.ok_or_else(|| Error::non_admissible("Q_KERNEL_RE needs a unit vector `e`"))?;
            x.check_compatible(e)?;
            check_unit(space, e)?;
            (space.ip(x, other) - space.ip(x, e) * space.ip(e, other)).re
        }
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::real(c).unwrap()
    }

    #[test]
    fn examples() {
        let q = quantity(
            TargetQuantity::QReGap,
            &v(&[1.0, 0.0]),
            &v(&[0.0, 1.0]),
            None,
        )
        .unwrap();
        assert_eq!(q, 1.0);
        let q = quantity(
            TargetQuantity::QQuadGap,
            &v(&[1.0, 1.0]),
            &v(&[1.0, 0.0]),
            None,
        )
        .unwrap();
        assert_eq!(q, 1.0);
    }

    #[test]
    fn equal_vectors_vanish() {
        let x = v(&[0.3, -1.2, 2.0]);
        let e = v(&[0.6, 0.0, 0.8]);
        for kind in [
            TargetQuantity::QReGap,
            TargetQuantity::QAbsGap,
            TargetQuantity::QQuadGap,
        ] {
            assert!(quantity(kind, &x, &x, None).unwrap().abs() < 1e-14);
        }
        assert!(
            quantity(TargetQuantity::QEQuadGap, &e, &e, None)
                .unwrap()
                .abs()
                < 1e-15
        );
        assert!(
            quantity(TargetQuantity::QKernelRe, &e, &e, Some(&e))
                .unwrap()
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn non_unit_e_rejected() {
        let x = v(&[1.0, 1.0]);
        let e = v(&[2.0, 0.0]);
        assert!(matches!(
            quantity(TargetQuantity::QEQuadGap, &x, &e, None),
            Err(Error::NonAdmissible(_))
        ));
        assert!(matches!(
            quantity(TargetQuantity::QKernelRe, &x, &x, None),
            Err(Error::NonAdmissible(_))
        ));
    }
}
