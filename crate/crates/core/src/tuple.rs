//! Ordered tuples of HPD matrices.

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, HpdMatrix};

/// `(X_1, ..., X_k)`, all HPD of the same dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HpdTuple {
    mats: Vec<HpdMatrix>,
}

impl HpdTuple {
    pub fn new(mats: Vec<HpdMatrix>) -> Result<Self> {
        let first = mats
            .first()
            .ok_or_else(|| Error::Domain("tuple must hold at least one matrix".into()))?;
        let p = first.dim();
        if let Some(bad) = mats.iter().find(|m| m.dim() != p) {
            return Err(Error::DimensionMismatch {
                expected: p,
                actual: bad.dim(),
            });
        }
        Ok(Self { mats })
    }

    /// Certifies every matrix of `hs`.
    pub fn from_hermitian(hs: Vec<HermitianMatrix>) -> Result<Self> {
        Self::new(hs.into_iter().map(HpdMatrix::new).collect::<Result<_>>()?)
    }

    pub fn k(&self) -> usize {
        self.mats.len()
    }

    pub fn p(&self) -> usize {
        self.mats[0].dim()
    }

    pub fn mats(&self) -> &[HpdMatrix] {
        &self.mats
    }

    pub fn get(&self, j: usize) -> &HpdMatrix {
        &self.mats[j]
    }

    pub fn into_mats(self) -> Vec<HpdMatrix> {
        self.mats
    }

    pub fn hermitian(&self) -> Vec<HermitianMatrix> {
        self.mats.iter().map(|m| m.as_hermitian().clone()).collect()
    }

    /// Partial sums `S_j = I + X_j + ... + X_k` for `j = 0..=k` (zero-based),
    /// accumulated right to left; the last entry is `S_{k+1} = I`.
    pub fn partial_sums(&self) -> Result<Vec<HpdMatrix>> {
        let k = self.k();
        let mut sums = Vec::with_capacity(k + 1);
        let mut acc = HermitianMatrix::identity(self.p());
        sums.push(HpdMatrix::identity(self.p()));
        for x in self.mats.iter().rev() {
            acc = &acc + x.as_hermitian();
            sums.push(HpdMatrix::new(acc.clone())?);
        }
        sums.reverse();
        Ok(sums)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_sums_of_diagonals() {
        let xs = HpdTuple::from_hermitian(vec![
            HermitianMatrix::from_diagonal(&[1.0, 2.0]),
            HermitianMatrix::from_diagonal(&[3.0, 4.0]),
        ])
        .unwrap();
        let s = xs.partial_sums().unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0].as_hermitian(), &HermitianMatrix::from_diagonal(&[5.0, 7.0]));
        assert_eq!(s[1].as_hermitian(), &HermitianMatrix::from_diagonal(&[4.0, 5.0]));
        assert_eq!(s[2].as_hermitian(), &HermitianMatrix::identity(2));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let r = HpdTuple::new(vec![HpdMatrix::identity(2), HpdMatrix::identity(3)]);
        assert_eq!(r, Err(Error::DimensionMismatch { expected: 2, actual: 3 }));
        assert!(HpdTuple::new(vec![]).is_err());
    }
}
