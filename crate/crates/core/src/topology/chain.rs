use num_bigint::BigInt;

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// A finite free chain complex `C_top -> ... -> C_1 -> C_0`.
///
/// `boundary(k)` is `∂_k : C_k -> C_{k-1}` as a `dim C_{k-1} x dim C_k`
/// matrix acting on column vectors; `∂_0` is the zero map to the zero group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntegerMatrix<BigInt>>,
}

impl ChainComplex {
    /// `boundaries[j]` is `∂_{j+1}`. Shapes and `∂∂ = 0` are checked.
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntegerMatrix<BigInt>>) -> Result<Self> {
        if dims.is_empty() {
            if !boundaries.is_empty() {
                return Err(Error::InconsistentComplex(
                    "boundary maps given for an empty complex".into(),
                ));
            }
            return Ok(Self::empty());
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::InconsistentComplex(format!(
                "{} cell groups need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (j, d) in boundaries.iter().enumerate() {
            let k = j + 1;
            if d.rows() != dims[k - 1] || d.cols() != dims[k] {
                return Err(Error::InconsistentComplex(format!(
                    "∂_{k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[k - 1],
                    dims[k]
                )));
            }
        }
        for j in 1..boundaries.len() {
            if !boundaries[j - 1].mul(&boundaries[j])?.is_zero() {
                return Err(Error::InconsistentComplex(format!(
                    "∂_{} ∘ ∂_{} ≠ 0",
                    j,
                    j + 1
                )));
            }
        }
        let mut boundaries_all = vec![IntegerMatrix::zeros(0, dims[0])];
        boundaries_all.extend(boundaries);
        Ok(ChainComplex {
            dims,
            boundaries: boundaries_all,
        })
    }

    pub fn empty() -> Self {
        ChainComplex {
            dims: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Highest degree with a cell group (possibly of rank 0), if any.
    pub fn top_degree(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    /// Number of cells in degree `k` (zero beyond the top degree).
    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_k`, or `None` when `k` exceeds the top degree.
    pub fn boundary(&self, k: usize) -> Option<&IntegerMatrix<BigInt>> {
        self.boundaries.get(k)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// The same complex with cells of degree `k` renumbered: old cell `c`
    /// becomes `perms[k][c]`.
    pub fn reordered(&self, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != self.dims.len()
            || perms.iter().zip(&self.dims).any(|(p, &d)| !is_permutation(p, d))
        {
            return Err(Error::InvalidParameter("not a permutation of the cells".into()));
        }
        let boundaries = (1..self.dims.len())
            .map(|k| {
                let d = &self.boundaries[k];
                IntegerMatrix::from_triplets(
                    d.rows(),
                    d.cols(),
                    d.triplets().map(|(r, c, v)| (perms[k - 1][r], perms[k][c], v.clone())),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dims.clone(), boundaries)
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n
        && p.iter().all(|&x| {
            x < n && !std::mem::replace(&mut seen[x], true)
        })
}
