//! Real coordinates for hermitian matrices.
//!
//! A `p x p` hermitian matrix has `p^2` real degrees of freedom. The
//! canonical ordering used everywhere in this crate is:
//!
//! 1. the `p` diagonal entries `x_11, ..., x_pp`;
//! 2. the strictly lower entries in column-major order
//!    (`x_21, x_31, ..., x_p1, x_32, ...`), each contributing its real part
//!    followed by its imaginary part.
//!
//! Lebesgue measure on these coordinates is the volume element `dX` that
//! every Jacobian in the crate refers to. The same layout is used for lower
//! triangular factors (the diagonal of a factor is real).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, HermitianMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct RealCoordinates {
    p: usize,
    coords: Vec<f64>,
}

impl RealCoordinates {
    pub fn new(p: usize, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != p * p {
            return Err(Error::InvalidLength {
                expected: p * p,
                actual: coords.len(),
            });
        }
        Ok(Self { p, coords })
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coords
    }
}

/// Strictly lower positions `(i, j)`, `i > j`, in coordinate order.
pub fn strict_lower_positions(p: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..p).flat_map(move |j| ((j + 1)..p).map(move |i| (i, j)))
}

pub fn vectorize(x: &HermitianMatrix) -> RealCoordinates {
    RealCoordinates {
        p: x.dim(),
        coords: lower_to_coords(x.matrix()),
    }
}

pub fn unvectorize(v: &RealCoordinates) -> HermitianMatrix {
    let mut m = coords_to_lower(v.p, &v.coords);
    for (i, j) in strict_lower_positions(v.p) {
        m[(j, i)] = m[(i, j)].conj();
    }
    HermitianMatrix::hermitize(&m)
}

/// Reads the diagonal real parts and the strict lower triangle of `m`.
pub fn lower_to_coords(m: &CMatrix) -> Vec<f64> {
    let p = m.nrows();
    let mut out = Vec::with_capacity(p * p);
    out.extend((0..p).map(|j| m[(j, j)].re));
    for (i, j) in strict_lower_positions(p) {
        out.push(m[(i, j)].re);
        out.push(m[(i, j)].im);
    }
    out
}

/// Builds a lower triangular matrix (real diagonal, zero upper part) from
/// `p^2` coordinates. Panics if `v.len() != p * p`.
pub fn coords_to_lower(p: usize, v: &[f64]) -> CMatrix {
    assert_eq!(v.len(), p * p, "coordinate length");
    let mut m = CMatrix::zeros(p, p);
    for j in 0..p {
        m[(j, j)] = Complex64::new(v[j], 0.0);
    }
    for (n, (i, j)) in strict_lower_positions(p).enumerate() {
        m[(i, j)] = Complex64::new(v[p + 2 * n], v[p + 2 * n + 1]);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn scalar_case() {
        let x = HermitianMatrix::from_diagonal(&[2.5]);
        assert_eq!(vectorize(&x).as_slice(), &[2.5]);
    }

    #[test]
    fn two_by_two_order() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::new(4.0, 0.0);
        m[(1, 0)] = Complex64::new(2.0, 3.0);
        m[(0, 1)] = Complex64::new(2.0, -3.0);
        let x = HermitianMatrix::new(m).unwrap();
        assert_eq!(vectorize(&x).as_slice(), &[1.0, 4.0, 2.0, 3.0]);
    }

    #[test]
    fn column_major_lower() {
        let order: Vec<_> = strict_lower_positions(3).collect();
        assert_eq!(order, vec![(1, 0), (2, 0), (2, 1)]);
    }

    #[test]
    fn wrong_length_rejected() {
        assert_eq!(
            RealCoordinates::new(2, vec![0.0; 3]),
            Err(Error::InvalidLength {
                expected: 4,
                actual: 3
            })
        );
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(p in 1usize..=4, raw in prop::collection::vec(-10.0f64..10.0, 16)) {
            let v = RealCoordinates::new(p, raw[..p * p].to_vec()).unwrap();
            let x = unvectorize(&v);
            prop_assert_eq!(&vectorize(&x), &v);
            prop_assert_eq!(unvectorize(&vectorize(&x)), x);
        }

        #[test]
        fn vectorize_is_linear(p in 1usize..=3, a in prop::collection::vec(-5.0f64..5.0, 9),
                               b in prop::collection::vec(-5.0f64..5.0, 9), s in -3.0f64..3.0) {
            let xa = unvectorize(&RealCoordinates::new(p, a[..p * p].to_vec()).unwrap());
            let xb = unvectorize(&RealCoordinates::new(p, b[..p * p].to_vec()).unwrap());
            let combo = vectorize(&(&xa.scale(s) + &xb));
            let va = vectorize(&xa);
            let vb = vectorize(&xb);
            for ((c, x), y) in combo.as_slice().iter().zip(va.as_slice()).zip(vb.as_slice()) {
                prop_assert!((c - (s * x + y)).abs() < 1e-12);
            }
        }
    }
}
