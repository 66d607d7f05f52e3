//! Maps on homology induced by cellular inclusions.
//!
//! Injectivity and surjectivity are decided exactly by comparing nested
//! lattices through their rank and volume:
//!
//! * `H_k(A) -> H_k(X)` is onto iff `i(Z_k A) + B_k X = Z_k X`; the left side
//!   sits inside the saturated lattice `Z_k X`, so equality means equal rank
//!   and volume one.
//! * it is injective iff `i(Z_k A) ∩ B_k X = i(B_k A)`. The intersection is
//!   the set of boundaries `∂c` supported on `A`, i.e. the image under
//!   `∂_{k+1}` of the kernel of `∂_{k+1}` followed by projection away from
//!   `A`; it contains `i(B_k A)`, so equality means equal rank and volume.

use std::collections::BTreeMap;

use serde::Serialize;

use super::chain::ChainComplex;
use super::lattice::{apply, kernel_basis, rank_and_volume, SparseVec};
use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMapVerdict {
    pub degree: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl InducedMapVerdict {
    pub fn isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Checks that `cell_map` (per degree, sub cell index -> super cell index)
/// is an injective chain map.
pub fn check_chain_inclusion(sub: &ChainComplex, sup: &ChainComplex, cell_map: &[Vec<usize>]) -> Result<()> {
    let top = sub.top_degree().map_or(0, |t| t + 1);
    if cell_map.len() < top {
        return Err(Error::NotChainMap(format!(
            "cell map covers {} degrees, complex has {}",
            cell_map.len(),
            top
        )));
    }
    for k in 0..top {
        let map = &cell_map[k];
        if map.len() != sub.dim(k) {
            return Err(Error::NotChainMap(format!("degree {k}: cell map has wrong length")));
        }
        let mut seen = vec![false; sup.dim(k)];
        for &c in map {
            if c >= sup.dim(k) || std::mem::replace(&mut seen[c], true) {
                return Err(Error::NotChainMap(format!("degree {k}: cell map not injective")));
            }
        }
        if k == 0 {
            continue;
        }
        let (Some(da), Some(dx)) = (sub.boundary(k), sup.boundary(k)) else {
            return Err(Error::NotChainMap(format!("degree {k} missing in the target")));
        };
        let cols_a = da.columns();
        let cols_x = dx.columns();
        for (c, col) in cols_a.iter().enumerate() {
            let mut mapped: Vec<_> = col.iter().map(|(r, v)| (cell_map[k - 1][*r], v.clone())).collect();
            mapped.sort();
            if mapped != cols_x[map[c]] {
                return Err(Error::NotChainMap(format!(
                    "boundary of cell {c} in degree {k} is not preserved"
                )));
            }
        }
    }
    Ok(())
}

fn matrix_columns(m: Option<&IntegerMatrix>) -> Vec<SparseVec> {
    m.map_or_else(Vec::new, |m| {
        m.columns()
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect()
    })
}

fn reindex(vs: Vec<SparseVec>, map: &[usize]) -> Vec<SparseVec> {
    vs.into_iter()
        .map(|v| v.into_iter().map(|(k, x)| (map[k], x)).collect())
        .collect()
}

/// Verdicts in degrees `0..=max_degree` for the inclusion `sub -> sup`.
pub fn induced_inclusion_map(
    sub: &ChainComplex,
    sup: &ChainComplex,
    cell_map: &[Vec<usize>],
    max_degree: usize,
) -> Result<Vec<InducedMapVerdict>> {
    check_chain_inclusion(sub, sup, cell_map)?;
    let empty = Vec::new();
    (0..=max_degree)
        .map(|k| {
            let map_k = cell_map.get(k).unwrap_or(&empty);
            let dim_x = sup.dim(k);

            // cycles of A, pushed into X
            let z_a: Vec<SparseVec> = match sub.boundary(k) {
                Some(d) if k > 0 => kernel_basis(d),
                Some(_) => (0..sub.dim(0)).map(|c| SparseVec::from([(c, 1.into())])).collect(),
                None => Vec::new(),
            };
            let iz_a = reindex(z_a, map_k);
            let b_x = matrix_columns(sup.boundary(k + 1));
            let z_x_rank = match sup.boundary(k) {
                Some(d) if k > 0 => dim_x - rank_and_volume(&matrix_columns(Some(d)), d.rows())?.0,
                _ => dim_x,
            };
            let mut gens = iz_a;
            gens.extend(b_x.iter().cloned());
            let surjective = rank_and_volume(&gens, dim_x)? == (z_x_rank, 1.into());

            // boundaries of X supported on A versus boundaries of A
            let injective = match sup.boundary(k + 1) {
                None => true,
                Some(dx) => {
                    let mut in_a = vec![false; dim_x];
                    for &c in map_k {
                        in_a[c] = true;
                    }
                    let outside: BTreeMap<usize, usize> = (0..dim_x)
                        .filter(|&c| !in_a[c])
                        .enumerate()
                        .map(|(i, c)| (c, i))
                        .collect();
                    let projected = IntegerMatrix::from_triplets(
                        outside.len(),
                        dx.cols(),
                        dx.triplets()
                            .filter_map(|(r, c, v)| outside.get(&r).map(|&i| (i, c, v.clone()))),
                    )?;
                    let kernel = kernel_basis(&projected);
                    let m = apply(dx, &kernel);
                    let b_a = reindex(matrix_columns(sub.boundary(k + 1)), map_k);
                    rank_and_volume(&m, dim_x)? == rank_and_volume(&b_a, dim_x)?
                }
            };
            Ok(InducedMapVerdict {
                degree: k,
                injective,
                surjective,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix<BigInt> {
        IntegerMatrix::<i64>::from_dense(rows).unwrap().to_big()
    }

    #[test]
    fn point_into_two_points() {
        let a = ChainComplex::new(vec![1], vec![]).unwrap();
        let x = ChainComplex::new(vec![2], vec![]).unwrap();
        let v = induced_inclusion_map(&a, &x, &[vec![1]], 0).unwrap();
        assert!(v[0].injective && !v[0].surjective);
    }

    #[test]
    fn identity_is_isomorphism() {
        let circle = ChainComplex::new(vec![2, 2], vec![m(&[vec![-1, -1], vec![1, 1]])]).unwrap();
        let v = induced_inclusion_map(&circle, &circle, &[vec![0, 1], vec![0, 1]], 2).unwrap();
        assert!(v.iter().all(InducedMapVerdict::isomorphism));
    }

    #[test]
    fn circle_into_disk_kills_h1() {
        let circle = ChainComplex::new(vec![2, 2], vec![m(&[vec![-1, -1], vec![1, 1]])]).unwrap();
        let disk = ChainComplex::new(
            vec![2, 2, 1],
            vec![m(&[vec![-1, -1], vec![1, 1]]), m(&[vec![1], vec![-1]])],
        )
        .unwrap();
        let v = induced_inclusion_map(&circle, &disk, &[vec![0, 1], vec![0, 1]], 1).unwrap();
        assert!(v[0].isomorphism());
        assert!(!v[1].injective && v[1].surjective);
    }

    #[test]
    fn doubled_boundary_is_not_injective_on_torsion_free_part() {
        // circle mapped into a disk glued along twice the loop (RP^2-like):
        // H_1 goes Z -> Z/2, onto but not injective
        let circle = ChainComplex::new(vec![1, 1], vec![m(&[vec![0]])]).unwrap();
        let rp2 = ChainComplex::new(vec![1, 1, 1], vec![m(&[vec![0]]), m(&[vec![2]])]).unwrap();
        let v = induced_inclusion_map(&circle, &rp2, &[vec![0], vec![0]], 1).unwrap();
        assert!(!v[1].injective && v[1].surjective);
    }

    #[test]
    fn non_chain_maps_are_rejected() {
        let interval = ChainComplex::new(vec![2, 1], vec![m(&[vec![-1], vec![1]])]).unwrap();
        let flipped = ChainComplex::new(vec![2, 1], vec![m(&[vec![1], vec![-1]])]).unwrap();
        assert!(matches!(
            induced_inclusion_map(&interval, &flipped, &[vec![0, 1], vec![0]], 0),
            Err(Error::NotChainMap(_))
        ));
    }
}
