/*
Copyright 2026 The drsplit Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

//! Real inner-product vectors stored as coordinates in a fixed orthonormal basis.
//!
//! Every operator in this crate is diagonal in these coordinates, so a vector
//! is just its coefficient list `a_i = <x, phi_i>`. [`BasisMap`] re-expresses
//! coordinates in another orthonormal frame and is used to check that nothing
//! depends on the particular basis.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};

/// Orthogonality and isometry tolerance.
pub const ORTHO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    coeffs: Vec<f64>,
}

impl Vector {
    /// Builds a vector from its basis coefficients. Rejects empty input and
    /// non-finite entries.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { coeffs })
    }

    pub(crate) fn from_raw(coeffs: Vec<f64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self::from_raw(vec![0.0; dim])
    }

    /// The basis vector `phi_index` (zero-based).
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dimension {dim}"
        );
        let mut coeffs = vec![0.0; dim];
        coeffs[index] = 1.0;
        Self::from_raw(coeffs)
    }

    /// Coordinates drawn uniformly from `[-scale, scale]`.
    pub fn random<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> Self {
        Self::from_raw((0..dim).map(|_| rng.gen_range(-scale..=scale)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|v| v.is_finite())
    }

    pub fn inner(&self, other: &Vector) -> Result<f64> {
        other.check_dim(self.dim())?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Vector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Euclidean norm; by Parseval this is the norm of the represented element.
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|a| a * a).sum()
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        other.check_dim(self.dim())?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        other.check_dim(self.dim())?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn scale(&self, factor: f64) -> Vector {
        self.map(|a| factor * a)
    }

    /// Distance `||self - other||`.
    pub fn distance(&self, other: &Vector) -> Result<f64> {
        other.check_dim(self.dim())?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    pub(crate) fn map(&self, f: impl Fn(f64) -> f64) -> Vector {
        Vector::from_raw(self.coeffs.iter().map(|&a| f(a)).collect())
    }

    pub(crate) fn map_indexed(&self, f: impl Fn(usize, f64) -> f64) -> Vector {
        Vector::from_raw(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| f(i, a))
                .collect(),
        )
    }

    pub(crate) fn zip_map(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        Vector::from_raw(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    /// Max absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Vector) -> Result<f64> {
        other.check_dim(self.dim())?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

pub fn inner(x: &Vector, y: &Vector) -> Result<f64> {
    x.inner(y)
}

pub fn norm(x: &Vector) -> f64 {
    x.norm()
}

/// An orthogonal change of coordinates. Column `i` is `phi_i` expressed in
/// an external frame.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMap {
    matrix: DMatrix<f64>,
}

impl BasisMap {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::EmptyVector);
        }
        let gram = matrix.transpose() * &matrix;
        let n = matrix.nrows();
        let max_deviation = (gram - DMatrix::<f64>::identity(n, n)).amax();
        if !(max_deviation <= ORTHO_TOL) {
            return Err(Error::NotOrthogonal { max_deviation });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    /// Planar rotation by `angle` radians.
    pub fn rotation2(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            matrix: DMatrix::from_row_slice(2, 2, &[c, -s, s, c]),
        }
    }

    /// A random orthogonal matrix from the QR factorization of a matrix with
    /// uniform entries.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let m = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
            let qr = m.qr();
            let q = qr.q();
            if let Ok(map) = Self::new(q) {
                return map;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn transpose(&self) -> BasisMap {
        BasisMap {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        let v = &self.matrix * DVector::from_column_slice(x.coeffs());
        Ok(Vector::from_raw(v.as_slice().to_vec()))
    }
}

/// Computes `Qx`.
pub fn change_basis(x: &Vector, q: &BasisMap) -> Result<Vector> {
    q.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use std::f64::consts::FRAC_PI_2;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&v(&[1.0, 0.0]), &v(&[0.0, 1.0])).unwrap(), 0.0);
        assert_eq!(inner(&v(&[1.0, 0.0]), &v(&[1.0, 0.0])).unwrap(), 1.0);
        assert_eq!(inner(&v(&[2.0, 3.0]), &v(&[4.0, 5.0])).unwrap(), 23.0);
    }

    #[test]
    fn inner_rejects_mismatch() {
        let err = inner(&v(&[1.0, 0.0]), &v(&[1.0, 0.0, 0.0])).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&v(&[0.0, 0.0, 0.0])), 0.0);
        assert_eq!(norm(&v(&[3.0, 4.0])), 5.0);
        for i in 0..5 {
            assert_eq!(norm(&Vector::basis(5, i)), 1.0);
        }
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(Vector::new(vec![]), Err(Error::EmptyVector)));
        assert!(matches!(
            Vector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(Vector::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn change_basis_examples() {
        let x = v(&[0.3, -1.2, 2.0]);
        assert_eq!(change_basis(&x, &BasisMap::identity(3)).unwrap(), x);

        let y = change_basis(&v(&[1.0, 0.0]), &BasisMap::rotation2(FRAC_PI_2)).unwrap();
        assert!((y.coeffs()[0] - 0.0).abs() < 1e-15);
        assert!((y.coeffs()[1] - 1.0).abs() < 1e-15);

        assert!(change_basis(&x, &BasisMap::identity(2)).is_err());
    }

    #[test]
    fn non_orthogonal_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(matches!(BasisMap::new(m), Err(Error::NotOrthogonal { .. })));
        let rect = DMatrix::<f64>::zeros(2, 3);
        assert!(BasisMap::new(rect).is_err());
    }

    #[test]
    fn random_basis_is_isometry() {
        let mut rng = StdRng::seed_from_u64(7);
        for dim in [1, 2, 8, 64] {
            let q = BasisMap::random(dim, &mut rng);
            for _ in 0..20 {
                let x = Vector::random(dim, 10.0, &mut rng);
                let qx = change_basis(&x, &q).unwrap();
                assert!((qx.norm() - x.norm()).abs() <= ORTHO_TOL * x.norm().max(1.0));
                let back = change_basis(&qx, &q.transpose()).unwrap();
                assert!(back.max_abs_diff(&x).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn riesz_fischer_finite_form() {
        let coeffs = vec![0.5, -2.0, 3.25, 1e-3];
        let expected: f64 = coeffs.iter().map(|a| a * a).sum();
        let x = Vector::new(coeffs).unwrap();
        assert_eq!(x.norm_squared(), expected);
        // the same element assembled as a sum of scaled basis vectors
        let mut sum = Vector::zeros(4);
        for (i, &a) in x.coeffs().iter().enumerate() {
            sum = sum.add(&Vector::basis(4, i).scale(a)).unwrap();
        }
        assert_eq!(sum.norm_squared(), expected);
    }
}
