//! Characters `a_1 chi_1 + ... + a_n chi_n` of `H_n`, extended to `M_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::EventualInjection;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Integer coefficient vector of a character. Coefficients are only
/// determined up to a common shift on `H_n`; on `M_n` the representative
/// matters, and the pipelines work in standard form (max coefficient 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character<T = i64> {
    coeffs: Vec<T>,
}

/// Lexicographic height `(chi, f)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorseHeight<T = i64> {
    pub chi_value: T,
    pub f_value: u64,
}

impl<T: Scalar> Character<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("character needs n >= 1".into()));
        }
        Ok(Character { coeffs })
    }

    /// Like [`Character::new`] but rejects the zero character.
    pub fn nonzero(coeffs: Vec<T>) -> Result<Self> {
        let chi = Self::new(coeffs)?;
        chi.require_nonzero()?;
        Ok(chi)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }

    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroCharacter)
        } else {
            Ok(())
        }
    }

    fn max(&self) -> &T {
        self.coeffs.iter().max().expect("n >= 1")
    }

    /// `sum_i a_i m_i(phi)`.
    pub fn eval(&self, phi: &EventualInjection) -> Result<T> {
        if phi.n() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: phi.n(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(phi.translations())
            .fold(T::zero(), |acc, (a, &m)| acc + a.clone() * T::from_i64_exact(m)))
    }

    pub fn height(&self, phi: &EventualInjection) -> Result<MorseHeight<T>> {
        self.require_nonzero()?;
        Ok(MorseHeight {
            chi_value: self.eval(phi)?,
            f_value: phi.deficiency(),
        })
    }

    pub fn standard_form(&self) -> Result<Self> {
        self.require_nonzero()?;
        let max = self.max().clone();
        Ok(Character {
            coeffs: self.coeffs.iter().map(|a| a.clone() - max.clone()).collect(),
        })
    }

    pub fn is_standard_form(&self) -> bool {
        !self.is_zero() && self.max().is_zero()
    }

    /// Sorted standard form and the 1-based original ray of each sorted
    /// position (stable: ties keep their original order).
    pub fn ascending_standard_form(&self) -> Result<(Self, Vec<usize>)> {
        let std = self.standard_form()?;
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| std.coeffs[a].cmp(&std.coeffs[b]));
        let coeffs = order.iter().map(|&i| std.coeffs[i].clone()).collect();
        Ok((Character { coeffs }, order.into_iter().map(|i| i + 1).collect()))
    }

    pub fn is_ascending_standard_form(&self) -> bool {
        self.is_standard_form() && self.coeffs.windows(2).all(|w| w[0] <= w[1])
    }

    /// `m(chi)`: the number of coefficients strictly below the maximum.
    pub fn m_of_chi(&self) -> Result<usize> {
        self.require_nonzero()?;
        let max = self.max();
        Ok(self.coeffs.iter().filter(|a| *a < max).count())
    }

    /// Whether `[chi]` lies in the complement of `Sigma^m(H_n)`, which holds
    /// exactly when `m(chi) <= m`.
    pub fn sigma_complement_membership(&self, m: usize) -> Result<bool> {
        let m_chi = self.m_of_chi()?;
        if m == 0 || m >= self.n() {
            return Err(Error::InvalidParameter(format!(
                "m = {m} outside 1..={}",
                self.n() - 1
            )));
        }
        Ok(m_chi <= m)
    }

    /// Rays carrying a coefficient below the maximum, in ascending order of
    /// coefficient (ties by ray index). These index the cover piece types.
    pub fn negative_rays(&self) -> Result<Vec<usize>> {
        let (asc, perm) = self.ascending_standard_form()?;
        Ok(perm
            .into_iter()
            .zip(asc.coeffs)
            .filter(|(_, a)| a.is_negative())
            .map(|(r, _)| r)
            .collect())
    }
}

impl<T: Scalar> fmt::Display for Character<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
