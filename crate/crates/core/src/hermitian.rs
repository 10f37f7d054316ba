//! Hermitian and hermitian positive definite (HPD) matrices.
//!
//! Every matrix that enters a density or a transform in this crate is an
//! [`HpdMatrix`]. Positive definiteness is certified once, at construction,
//! by a Cholesky factorization whose pivots must exceed
//! `PIVOT_RTOL * max(diag)`. The factor is kept so that determinants and
//! triangular factors come for free afterwards.

use std::ops::{Add, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, the storage type behind every wrapper here.
pub type CMatrix = DMatrix<Complex64>;

/// Relative pivot tolerance used by the Cholesky certifier.
pub const PIVOT_RTOL: f64 = 1e-13;

/// A `p x p` complex matrix with `X = X*`, exactly.
///
/// Exactness is by construction: [`HermitianMatrix::hermitize`] writes the
/// upper triangle as the conjugate of the lower one, so the diagonal is real
/// and `x[(i, j)] == x[(j, i)].conj()` holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    m: CMatrix,
}

impl HermitianMatrix {
    /// Wraps `m` after checking that it is square, non-empty and exactly hermitian.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square(&m)?;
        let p = m.nrows();
        for j in 0..p {
            for i in j..p {
                if m[(i, j)] != m[(j, i)].conj() {
                    return Err(Error::NotHermitian);
                }
            }
        }
        Ok(Self { m })
    }

    /// `(M + M*) / 2`, written so that the result is exactly hermitian.
    ///
    /// Panics if `m` is not square.
    pub fn hermitize(m: &CMatrix) -> Self {
        assert!(m.is_square(), "hermitize needs a square matrix");
        let p = m.nrows();
        let mut out = CMatrix::zeros(p, p);
        for j in 0..p {
            out[(j, j)] = Complex64::new(m[(j, j)].re, 0.0);
            for i in (j + 1)..p {
                let h = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                out[(i, j)] = h;
                out[(j, i)] = h.conj();
            }
        }
        Self { m: out }
    }

    pub fn identity(p: usize) -> Self {
        Self {
            m: CMatrix::identity(p, p),
        }
    }

    pub fn zeros(p: usize) -> Self {
        Self {
            m: CMatrix::zeros(p, p),
        }
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(d: &[f64]) -> Self {
        let p = d.len();
        let mut m = CMatrix::zeros(p, p);
        for (j, &x) in d.iter().enumerate() {
            m[(j, j)] = Complex64::new(x, 0.0);
        }
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|j| self.m[(j, j)].re).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { m: &self.m * Complex64::new(c, 0.0) }
    }

    /// `X + c I`.
    pub fn shift(&self, c: f64) -> Self {
        let mut m = self.m.clone();
        for j in 0..self.dim() {
            m[(j, j)].re += c;
        }
        Self { m }
    }

    /// Congruence `A X A*`, re-hermitized to remove rounding drift.
    pub fn congruence(&self, a: &CMatrix) -> Self {
        Self::hermitize(&(a * &self.m * a.adjoint()))
    }

    /// Eigenvalues in ascending order together with the matching unit
    /// eigenvectors (as columns).
    pub fn eigh(&self) -> (Vec<f64>, CMatrix) {
        let eig = SymmetricEigen::new(self.m.clone());
        let p = self.dim();
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vectors = CMatrix::zeros(p, p);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        (values, vectors)
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues_sorted(&self) -> Vec<f64> {
        self.eigh().0
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (&self.m - &other.m).norm()
    }

    /// Applies `f` to the spectrum: `U diag(f(lambda)) U*`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Self {
        let (values, u) = self.eigh();
        let mut scaled = u.clone();
        for (j, &lambda) in values.iter().enumerate() {
            let s = Complex64::new(f(lambda), 0.0);
            for i in 0..self.dim() {
                scaled[(i, j)] *= s;
            }
        }
        Self::hermitize(&(scaled * u.adjoint()))
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            m: &self.m + &rhs.m,
        }
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            m: &self.m - &rhs.m,
        }
    }
}

/// A hermitian matrix certified positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct HpdMatrix {
    base: HermitianMatrix,
    factor: CMatrix,
    log_det: f64,
}

impl HpdMatrix {
    /// Certifies `h` by Cholesky factorization.
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let factor = cholesky(&h)?;
        let log_det = 2.0 * (0..h.dim()).map(|j| factor[(j, j)].re.ln()).sum::<f64>();
        Ok(Self {
            base: h,
            factor,
            log_det,
        })
    }

    pub fn identity(p: usize) -> Self {
        Self {
            base: HermitianMatrix::identity(p),
            factor: CMatrix::identity(p, p),
            log_det: 0.0,
        }
    }

    /// `T T*`, certified by the strictly positive diagonal of `T`.
    pub fn from_factor(t: LowerTriangularFactor) -> Self {
        let base = t.reassemble();
        let log_det = 2.0 * t.diagonal().iter().map(|d| d.ln()).sum::<f64>();
        Self {
            base,
            factor: t.m,
            log_det,
        }
    }

    /// Hermitizes `m` and certifies the result.
    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        check_square(m)?;
        Self::new(HermitianMatrix::hermitize(m))
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.base
    }

    pub fn matrix(&self) -> &CMatrix {
        self.base.matrix()
    }

    /// `log |det X|`, equal to `2 * sum(log t_jj)` of the Cholesky factor.
    pub fn log_abs_det(&self) -> f64 {
        self.log_det
    }

    pub fn trace(&self) -> f64 {
        self.base.trace()
    }

    /// The lower factor `T` with `T T* = X`.
    pub fn cholesky_lower(&self) -> LowerTriangularFactor {
        LowerTriangularFactor {
            m: self.factor.clone(),
        }
    }

    /// The unique HPD square root, via the spectral decomposition.
    pub fn sqrt(&self) -> Result<HpdMatrix> {
        HpdMatrix::new(self.base.spectral_map(f64::sqrt))
    }

    /// `X^{-1/2}`.
    pub fn inv_sqrt(&self) -> Result<HpdMatrix> {
        HpdMatrix::new(self.base.spectral_map(|x| 1.0 / x.sqrt()))
    }

    pub fn inverse(&self) -> Result<HpdMatrix> {
        HpdMatrix::new(self.base.spectral_map(|x| 1.0 / x))
    }

    /// `A X A*` for an invertible `A`.
    pub fn congruence(&self, a: &CMatrix) -> Result<HpdMatrix> {
        HpdMatrix::new(self.base.congruence(a))
    }

    /// `X + c I` for `c >= 0`.
    pub fn shift(&self, c: f64) -> Result<HpdMatrix> {
        HpdMatrix::new(self.base.shift(c))
    }

    pub fn eigenvalues_sorted(&self) -> Vec<f64> {
        self.base.eigenvalues_sorted()
    }
}

impl AsRef<HermitianMatrix> for HpdMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        &self.base
    }
}

/// Lower triangular `T` with real, strictly positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangularFactor {
    m: CMatrix,
}

impl LowerTriangularFactor {
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square(&m)?;
        let p = m.nrows();
        for j in 0..p {
            let d = m[(j, j)];
            if d.im != 0.0 || !(d.re > 0.0) || !d.re.is_finite() {
                return Err(Error::InvalidFactor(format!(
                    "diagonal entry {j} must be real and positive, got {d}"
                )));
            }
            for i in 0..j {
                if m[(i, j)] != Complex64::new(0.0, 0.0) {
                    return Err(Error::InvalidFactor(format!(
                        "entry ({i}, {j}) above the diagonal is nonzero"
                    )));
                }
            }
        }
        Ok(Self { m })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|j| self.m[(j, j)].re).collect()
    }

    /// `T T*`.
    pub fn reassemble(&self) -> HermitianMatrix {
        HermitianMatrix::hermitize(&(&self.m * self.m.adjoint()))
    }
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            actual: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(Error::Domain("matrix dimension must be positive".into()));
    }
    Ok(())
}

fn cholesky(h: &HermitianMatrix) -> Result<CMatrix> {
    let a = h.matrix();
    let p = h.dim();
    let max_diag = (0..p).map(|j| a[(j, j)].re).fold(f64::NEG_INFINITY, f64::max);
    let tol = PIVOT_RTOL * max_diag.max(0.0);
    let mut l = CMatrix::zeros(p, p);
    for j in 0..p {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > tol) || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d });
        }
        let ljj = d.sqrt();
        l[(j, j)] = Complex64::new(ljj, 0.0);
        for i in (j + 1)..p {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}
