use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::chain::ChainComplex;
use super::snf::smith_normal_form_auto;
use crate::error::Result;

/// Betti numbers and torsion coefficients in degrees `0..betti.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, as a divisibility chain.
    pub torsion: Vec<Vec<BigInt>>,
    pub reduced: bool,
    /// The complex had no cells at all.
    pub empty: bool,
}

impl HomologyResult {
    /// Highest degree covered by this result, if any.
    pub fn max_degree(&self) -> Option<usize> {
        self.betti.len().checked_sub(1)
    }

    pub fn vanishes_in(&self, k: usize) -> bool {
        self.betti.get(k).is_none_or(|b| *b == 0)
            && self.torsion.get(k).is_none_or(Vec::is_empty)
    }

    /// Homology vanishes in every computed degree `<= k`.
    pub fn acyclic_through(&self, k: usize) -> bool {
        (0..=k).all(|i| self.vanishes_in(i))
    }

    /// For reduced homology: `-2` for the empty complex, `-1` if the complex
    /// is nonempty but reduced `H_0 ≠ 0`, and otherwise the largest `k` (up
    /// to the last computed degree) such that `H_i = 0` for all `i <= k`.
    pub fn acyclicity_bound(&self) -> i64 {
        if self.empty {
            return -2;
        }
        let mut k = -1i64;
        for i in 0..self.betti.len() {
            if !self.vanishes_in(i) {
                break;
            }
            k = i as i64;
        }
        k
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let chi: i64 = self
            .betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if self.reduced && !self.empty {
            chi + 1
        } else {
            chi
        }
    }
}

/// Homology in every degree up to the top of the complex.
pub fn homology(c: &ChainComplex, reduced: bool) -> Result<HomologyResult> {
    let top = c.top_degree().unwrap_or(0);
    homology_through(c, reduced, top)
}

/// Homology in degrees `0..=max_degree` (degrees above the top of the
/// complex are reported as zero).
pub fn homology_through(c: &ChainComplex, reduced: bool, max_degree: usize) -> Result<HomologyResult> {
    let empty = c.is_empty();
    // invariant factors of ∂_1 ..= ∂_{max_degree+1}
    let forms = (1..=max_degree + 1)
        .into_par_iter()
        .map(|k| match c.boundary(k) {
            Some(d) if !d.is_zero() => smith_normal_form_auto(d).map(|s| s.factors),
            _ => Ok(Vec::new()),
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = |k: usize| -> usize {
        if k == 0 {
            0
        } else {
            forms[k - 1].len()
        }
    };
    let mut betti = Vec::with_capacity(max_degree + 1);
    let mut torsion = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let mut b = c.dim(k) - rank(k) - rank(k + 1);
        if k == 0 && reduced && !empty {
            b -= 1;
        }
        betti.push(b);
        let t: Vec<BigInt> = forms[k]
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .cloned()
            .collect();
        debug_assert!(t.iter().all(|d| !d.is_zero()));
        torsion.push(t);
    }
    Ok(HomologyResult {
        betti,
        torsion,
        reduced,
        empty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::IntegerMatrix;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix<BigInt> {
        IntegerMatrix::<i64>::from_dense(rows).unwrap().to_big()
    }

    #[test]
    fn points() {
        let point = ChainComplex::new(vec![1], vec![]).unwrap();
        let h = homology(&point, true).unwrap();
        assert_eq!(h.betti, vec![0]);
        assert_eq!(h.acyclicity_bound(), 0);
        let two = ChainComplex::new(vec![2], vec![]).unwrap();
        let h = homology(&two, true).unwrap();
        assert_eq!(h.betti, vec![1]);
        assert_eq!(h.acyclicity_bound(), -1);
        let h = homology(&ChainComplex::empty(), true).unwrap();
        assert_eq!(h.acyclicity_bound(), -2);
    }

    #[test]
    fn circle_as_two_edges() {
        let c = ChainComplex::new(vec![2, 2], vec![m(&[vec![-1, -1], vec![1, 1]])]).unwrap();
        assert_eq!(homology(&c, false).unwrap().betti, vec![1, 1]);
        let h = homology(&c, true).unwrap();
        assert_eq!(h.betti, vec![0, 1]);
        assert_eq!(h.acyclicity_bound(), 0);
        assert_eq!(h.euler_characteristic(), c.euler_characteristic());
        let h = homology_through(&c, true, 3).unwrap();
        assert_eq!(h.betti, vec![0, 1, 0, 0]);
    }

    #[test]
    fn torsion_in_degree_zero() {
        // a single vertex-free cell pattern: ∂_1 = [2]
        let c = ChainComplex::new(vec![1, 1], vec![m(&[vec![2]])]).unwrap();
        let h = homology(&c, false).unwrap();
        assert_eq!(h.torsion[0], vec![BigInt::from(2)]);
        assert!(h.has_torsion());
        assert_eq!(h.acyclicity_bound(), -1);
    }
}
