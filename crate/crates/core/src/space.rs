//! Scalar fields, coordinate vectors, inner products and norms.
//!
//! The inner product is linear in its first argument and conjugate-linear
//! in its second: `⟨x, y⟩ = Σ_k x_k · conj(y_k)` for the standard model.
//! An optional Hermitian positive-definite Gram matrix `G` turns this into
//! `⟨x, y⟩ = Σ_{j,k} conj(y_j) G_{jk} x_k`.
//!
//! A real space can be complexified: [`ComplexifiedVector`] holds a pair of
//! real vectors `(a, b)` standing for `a + i b`.

use std::fmt;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element. Under [`Field::Real`] the imaginary part is zero.
pub type Scalar = Complex64;

/// Scalar field a vector lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("REAL"),
            Field::Complex => f.write_str("COMPLEX"),
        }
    }
}

impl Field {
    /// Whether `s` belongs to this field.
    pub fn admits(self, s: Scalar) -> bool {
        match self {
            Field::Real => s.im == 0.0,
            Field::Complex => true,
        }
    }
}

/// Dense coordinate vector tagged with its field.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    field: Field,
    coords: Vec<Scalar>,
}

impl Vector {
    /// Real vector from its coordinates.
    pub fn real(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::non_admissible("vector must have dim >= 1"));
        }
        Ok(Vector {
            field: Field::Real,
            coords: coords.iter().map(|&c| Scalar::new(c, 0.0)).collect(),
        })
    }

    /// Complex vector from its coordinates.
    pub fn complex(coords: &[Scalar]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::non_admissible("vector must have dim >= 1"));
        }
        Ok(Vector {
            field: Field::Complex,
            coords: coords.to_vec(),
        })
    }

    /// Build a vector over `field`. Imaginary parts must vanish for REAL.
    pub fn new(field: Field, coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::non_admissible("vector must have dim >= 1"));
        }
        if field == Field::Real && coords.iter().any(|c| c.im != 0.0) {
            return Err(Error::FieldMismatch);
        }
        Ok(Vector { field, coords })
    }

    pub fn zeros(field: Field, dim: usize) -> Self {
        assert!(dim >= 1, "dim must be positive");
        Vector {
            field,
            coords: vec![Scalar::new(0.0, 0.0); dim],
        }
    }

    /// The `k`-th standard basis vector.
    pub fn basis(field: Field, dim: usize, k: usize) -> Self {
        let mut v = Vector::zeros(field, dim);
        v.coords[k] = Scalar::new(1.0, 0.0);
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// The same coordinates viewed over the complex field.
    pub fn to_complex(&self) -> Vector {
        Vector {
            field: Field::Complex,
            coords: self.coords.clone(),
        }
    }

    /// Real parts as a plain slice-friendly vector.
    pub fn real_parts(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.re).collect()
    }

    pub(crate) fn check_compatible(&self, other: &Vector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    // The arithmetic below assumes compatible operands; callers validate
    // fields and dimensions once up front.

    pub(crate) fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub(crate) fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub(crate) fn scale(&self, s: Scalar) -> Vector {
        debug_assert!(
            self.field.admits(s),
            "complex scalar applied to a real vector"
        );
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub(crate) fn scale_re(&self, s: f64) -> Vector {
        self.scale(Scalar::new(s, 0.0))
    }

    /// `self - s * other`
    pub(crate) fn sub_scaled(&self, s: Scalar, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - s * b)
                .collect(),
        }
    }
}

/// Pair `(a, b)` of real vectors representing `a + i b` in the
/// complexification of a real space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexifiedVector {
    a: Vector,
    b: Vector,
}

impl ComplexifiedVector {
    pub fn new(a: Vector, b: Vector) -> Result<Self> {
        if a.field() != Field::Real || b.field() != Field::Real {
            return Err(Error::FieldMismatch);
        }
        a.check_compatible(&b)?;
        Ok(ComplexifiedVector { a, b })
    }

    /// Embeds a real vector as `a + i 0`.
    pub fn from_real(a: Vector) -> Result<Self> {
        let b = Vector::zeros(Field::Real, a.dim());
        ComplexifiedVector::new(a, b)
    }

    pub fn re(&self) -> &Vector {
        &self.a
    }

    pub fn im(&self) -> &Vector {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

impl<'de> Deserialize<'de> for ComplexifiedVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            a: Vector,
            b: Vector,
        }
        let raw = Raw::deserialize(deserializer)?;
        ComplexifiedVector::new(raw.a, raw.b).map_err(de::Error::custom)
    }
}

/// Hermitian positive-definite Gram matrix defining a weighted inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    field: Field,
    dim: usize,
    entries: Vec<Scalar>,
}

impl Gram {
    /// Validates symmetry (Hermitian within `1e-12`) and positive
    /// definiteness via a Cholesky factorization.
    pub fn new(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::non_admissible(
                "gram matrix must be square and non-empty",
            ));
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        if field == Field::Real && entries.iter().any(|c| c.im != 0.0) {
            return Err(Error::FieldMismatch);
        }
        for j in 0..dim {
            for k in 0..dim {
                let d = entries[j * dim + k] - entries[k * dim + j].conj();
                if d.norm() > 1e-12 * (1.0 + entries[j * dim + k].norm()) {
                    return Err(Error::non_admissible("gram matrix is not Hermitian"));
                }
            }
        }
        // Cholesky: G = L L^H
        let mut l = vec![Scalar::new(0.0, 0.0); dim * dim];
        for j in 0..dim {
            let mut diag = entries[j * dim + j].re;
            for k in 0..j {
                diag -= l[j * dim + k].norm_sqr();
            }
            if diag <= 0.0 || !diag.is_finite() {
                return Err(Error::non_admissible(
                    "gram matrix is not positive definite",
                ));
            }
            let djj = diag.sqrt();
            l[j * dim + j] = Scalar::new(djj, 0.0);
            for i in (j + 1)..dim {
                let mut s = entries[i * dim + j];
                for k in 0..j {
                    s -= l[i * dim + k] * l[j * dim + k].conj();
                }
                l[i * dim + j] = s / djj;
            }
        }
        Ok(Gram {
            field,
            dim,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn at(&self, j: usize, k: usize) -> Scalar {
        self.entries[j * self.dim + k]
    }
}

/// The inner product space the vectors are interpreted in.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Space {
    /// Standard dot product on `ℝⁿ` or `ℂⁿ`.
    #[default]
    Euclidean,
    Weighted(Gram),
}

impl Space {
    /// Checks that `v` can live in this space.
    pub fn check(&self, v: &Vector) -> Result<()> {
        match self {
            Space::Euclidean => Ok(()),
            Space::Weighted(g) => {
                if g.dim != v.dim() {
                    return Err(Error::DimensionMismatch {
                        left: g.dim,
                        right: v.dim(),
                    });
                }
                if g.field == Field::Complex && v.field() == Field::Real {
                    // a complex Gram matrix would make ⟨x,x⟩ of a real vector complex
                    return Err(Error::FieldMismatch);
                }
                Ok(())
            }
        }
    }

    /// Checked inner product.
    pub fn inner(&self, x: &Vector, y: &Vector) -> Result<Scalar> {
        x.check_compatible(y)?;
        self.check(x)?;
        Ok(self.ip(x, y))
    }

    /// Checked norm.
    pub fn norm(&self, x: &Vector) -> Result<f64> {
        self.check(x)?;
        Ok(self.nrm(x))
    }

    pub(crate) fn ip(&self, x: &Vector, y: &Vector) -> Scalar {
        match self {
            Space::Euclidean => x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| a * b.conj())
                .sum(),
            Space::Weighted(g) => {
                let mut acc = Scalar::new(0.0, 0.0);
                for j in 0..g.dim {
                    let mut row = Scalar::new(0.0, 0.0);
                    for k in 0..g.dim {
                        row += g.at(j, k) * x.coords[k];
                    }
                    acc += y.coords[j].conj() * row;
                }
                acc
            }
        }
    }

    pub(crate) fn nrm_sq(&self, x: &Vector) -> f64 {
        match self {
            Space::Euclidean => x.coords.iter().map(|c| c.norm_sqr()).sum(),
            Space::Weighted(_) => self.ip(x, x).re.max(0.0),
        }
    }

    pub(crate) fn nrm(&self, x: &Vector) -> f64 {
        match self {
            Space::Euclidean => {
                // scaled accumulation keeps the norm finite for large entries
                let m = x.coords.iter().map(|c| c.norm()).fold(0.0, f64::max);
                if m == 0.0 || !m.is_finite() {
                    return m;
                }
                let s: f64 = x.coords.iter().map(|c| (c / m).norm_sqr()).sum();
                m * s.sqrt()
            }
            Space::Weighted(_) => self.nrm_sq(x).sqrt(),
        }
    }

    /// Rescales `x` to unit norm in this space.
    pub fn normalize(&self, x: &Vector) -> Result<Vector> {
        self.check(x)?;
        let n = self.nrm(x);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::non_admissible("cannot normalize a zero vector"));
        }
        Ok(x.scale_re(1.0 / n))
    }

    /// `⟨z, w⟩_ℂ = ⟨a,c⟩ + ⟨b,d⟩ + i(⟨b,c⟩ − ⟨a,d⟩)` for `z = a+ib`, `w = c+id`.
    pub fn complex_inner(&self, z: &ComplexifiedVector, w: &ComplexifiedVector) -> Result<Scalar> {
        z.a.check_compatible(&w.a)?;
        self.check(&z.a)?;
        Ok(self.cip(z, w))
    }

    pub(crate) fn cip(&self, z: &ComplexifiedVector, w: &ComplexifiedVector) -> Scalar {
        let re = self.ip(&z.a, &w.a).re + self.ip(&z.b, &w.b).re;
        let im = self.ip(&z.b, &w.a).re - self.ip(&z.a, &w.b).re;
        Scalar::new(re, im)
    }

    /// `‖z‖_ℂ² = ‖a‖² + ‖b‖²`.
    pub fn complex_norm_sq(&self, z: &ComplexifiedVector) -> Result<f64> {
        self.check(&z.a)?;
        Ok(self.nrm_sq(&z.a) + self.nrm_sq(&z.b))
    }
}

/// Standard inner product, linear in `x` and conjugate-linear in `y`.
pub fn inner(x: &Vector, y: &Vector) -> Result<Scalar> {
    Space::Euclidean.inner(x, y)
}

/// Standard norm `sqrt(Re ⟨x, x⟩)`.
pub fn norm(x: &Vector) -> f64 {
    Space::Euclidean.nrm(x)
}

/// Inner product of the complexification of the standard real space.
pub fn complex_inner(z: &ComplexifiedVector, w: &ComplexifiedVector) -> Result<Scalar> {
    Space::Euclidean.complex_inner(z, w)
}

/// `z̄ = a − i b`.
pub fn conj_partner(z: &ComplexifiedVector) -> ComplexifiedVector {
    ComplexifiedVector {
        a: z.a.clone(),
        b: z.b.scale_re(-1.0),
    }
}

// ---------------------------------------------------------------------------
// JSON encoding: REAL vector = array of numbers, COMPLEX = array of [re, im].
// ---------------------------------------------------------------------------

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for c in &self.coords {
            match self.field {
                Field::Real => seq.serialize_element(&c.re)?,
                Field::Complex => seq.serialize_element(&[c.re, c.im])?,
            }
        }
        seq.end()
    }
}

/// Either a bare number (real) or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub(crate) enum ScalarRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl ScalarRepr {
    pub(crate) fn value(self) -> Scalar {
        match self {
            ScalarRepr::Real(r) => Scalar::new(r, 0.0),
            ScalarRepr::Pair([re, im]) => Scalar::new(re, im),
        }
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<ScalarRepr> = Vec::deserialize(deserializer)?;
        vector_from_reprs(raw).map_err(de::Error::custom)
    }
}

fn vector_from_reprs(raw: Vec<ScalarRepr>) -> Result<Vector> {
    if raw.is_empty() {
        return Err(Error::Malformed(
            "vector must have at least one coordinate".into(),
        ));
    }
    let all_real = raw.iter().all(|r| matches!(r, ScalarRepr::Real(_)));
    let all_pairs = raw.iter().all(|r| matches!(r, ScalarRepr::Pair(_)));
    let field = if all_real {
        Field::Real
    } else if all_pairs {
        Field::Complex
    } else {
        return Err(Error::Malformed(
            "vector mixes bare numbers and [re, im] pairs".into(),
        ));
    };
    Vector::new(field, raw.into_iter().map(ScalarRepr::value).collect())
}

/// Serde helper for scalar parameters: real scalars as numbers, complex
/// ones as `[re, im]`.
pub(crate) mod scalar_serde {
    use super::*;

    pub fn serialize<S: Serializer>(
        s: &Scalar,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        if s.im == 0.0 {
            serializer.serialize_f64(s.re)
        } else {
            [s.re, s.im].serialize(serializer)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Scalar, D::Error> {
        Ok(ScalarRepr::deserialize(deserializer)?.value())
    }
}

/// JSON form of an optional weighted space: `{"gram": [[...], ...]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub gram: Vec<Vector>,
}

impl SpaceSpec {
    pub fn build(self) -> Result<Space> {
        let field = if self.gram.iter().any(|r| r.field() == Field::Complex) {
            Field::Complex
        } else {
            Field::Real
        };
        let rows = self.gram.into_iter().map(|r| r.coords).collect();
        Ok(Space::Weighted(Gram::new(field, rows)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn orthogonal_axes() {
        let x = Vector::real(&[1.0, 0.0]).unwrap();
        let y = Vector::real(&[0.0, 1.0]).unwrap();
        assert_eq!(inner(&x, &y).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn hand_arithmetic_dot() {
        let x = Vector::real(&[1.0, 2.0]).unwrap();
        let y = Vector::real(&[3.0, 4.0]).unwrap();
        assert_eq!(inner(&x, &y).unwrap(), c(11.0, 0.0));
    }

    #[test]
    fn conjugate_linear_in_second_slot() {
        let i = Vector::complex(&[c(0.0, 1.0)]).unwrap();
        let one = Vector::complex(&[c(1.0, 0.0)]).unwrap();
        assert_eq!(inner(&i, &one).unwrap(), c(0.0, 1.0));
        assert_eq!(inner(&one, &i).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn norms() {
        assert_eq!(norm(&Vector::real(&[3.0, 4.0]).unwrap()), 5.0);
        assert_eq!(norm(&Vector::real(&[0.0, 0.0]).unwrap()), 0.0);
        let v = Vector::complex(&[c(1.0, 1.0)]).unwrap();
        assert!((norm(&v) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mixing_fields_is_rejected() {
        let x = Vector::real(&[1.0]).unwrap();
        let y = Vector::complex(&[c(1.0, 0.0)]).unwrap();
        assert_eq!(inner(&x, &y), Err(Error::FieldMismatch));
        let z = Vector::real(&[1.0, 2.0]).unwrap();
        assert!(matches!(
            inner(&x, &z),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn empty_vectors_rejected() {
        assert!(Vector::real(&[]).is_err());
        assert!(Vector::complex(&[]).is_err());
    }

    #[test]
    fn complexified_examples() {
        let z = ComplexifiedVector::new(
            Vector::real(&[1.0, 0.0]).unwrap(),
            Vector::real(&[0.0, 1.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(complex_inner(&z, &z).unwrap(), c(2.0, 0.0));
        assert_eq!(complex_inner(&z, &conj_partner(&z)).unwrap(), c(0.0, 0.0));

        let zbar = conj_partner(&z);
        assert_eq!(zbar.im().real_parts(), vec![0.0, -1.0]);
        assert_eq!(conj_partner(&zbar), z);

        let r = ComplexifiedVector::from_real(Vector::real(&[3.0, 4.0]).unwrap()).unwrap();
        assert_eq!(conj_partner(&r), r);
        assert_eq!(complex_inner(&r, &r).unwrap(), c(25.0, 0.0));
    }

    #[test]
    fn complexified_requires_real_parts() {
        let a = Vector::complex(&[c(1.0, 0.0)]).unwrap();
        let b = Vector::real(&[1.0]).unwrap();
        assert!(ComplexifiedVector::new(a, b.clone()).is_err());
        let b2 = Vector::real(&[1.0, 2.0]).unwrap();
        assert!(ComplexifiedVector::new(b, b2).is_err());
    }

    #[test]
    fn json_encoding() {
        let v: Vector = serde_json::from_str("[1, 2.5]").unwrap();
        assert_eq!(v.field(), Field::Real);
        let w: Vector = serde_json::from_str("[[1, 0], [0, -1]]").unwrap();
        assert_eq!(w.field(), Field::Complex);
        assert_eq!(w.coords()[1], c(0.0, -1.0));
        assert!(serde_json::from_str::<Vector>("[1, [0, 1]]").is_err());
        assert!(serde_json::from_str::<Vector>("[]").is_err());
        assert_eq!(serde_json::to_string(&w).unwrap(), "[[1.0,0.0],[0.0,-1.0]]");

        let z: ComplexifiedVector = serde_json::from_str(r#"{"a":[1,0],"b":[0,1]}"#).unwrap();
        assert_eq!(z.dim(), 2);
    }

    #[test]
    fn weighted_space() {
        let g = Gram::new(
            Field::Real,
            vec![
                vec![c(2.0, 0.0), c(1.0, 0.0)],
                vec![c(1.0, 0.0), c(2.0, 0.0)],
            ],
        )
        .unwrap();
        let space = Space::Weighted(g);
        let x = Vector::real(&[1.0, 0.0]).unwrap();
        let y = Vector::real(&[0.0, 1.0]).unwrap();
        assert_eq!(space.inner(&x, &y).unwrap(), c(1.0, 0.0));
        assert!((space.norm(&x).unwrap() - 2f64.sqrt()).abs() < 1e-15);

        let indefinite = Gram::new(
            Field::Real,
            vec![
                vec![c(1.0, 0.0), c(2.0, 0.0)],
                vec![c(2.0, 0.0), c(1.0, 0.0)],
            ],
        );
        assert!(indefinite.is_err());
        let asym = Gram::new(
            Field::Real,
            vec![
                vec![c(1.0, 0.0), c(0.5, 0.0)],
                vec![c(0.0, 0.0), c(1.0, 0.0)],
            ],
        );
        assert!(asym.is_err());
    }

    #[test]
    fn weighted_complex_is_hermitian() {
        let g = Gram::new(
            Field::Complex,
            vec![
                vec![c(2.0, 0.0), c(0.0, 1.0)],
                vec![c(0.0, -1.0), c(2.0, 0.0)],
            ],
        )
        .unwrap();
        let space = Space::Weighted(g);
        let x = Vector::complex(&[c(1.0, 2.0), c(-0.5, 0.3)]).unwrap();
        let y = Vector::complex(&[c(0.1, -1.0), c(2.0, 0.7)]).unwrap();
        let xy = space.inner(&x, &y).unwrap();
        let yx = space.inner(&y, &x).unwrap();
        assert!((xy - yx.conj()).norm() < 1e-14);
        assert!(space.inner(&x, &x).unwrap().im.abs() < 1e-14);
    }
}
