use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse integer matrix stored by rows. Rows hold `(column, value)` pairs
/// sorted by column; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix<T = BigInt> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> IntegerMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Duplicate positions are summed; resulting zeros are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::InvalidParameter(format!(
                    "entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, T)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == c => {
                        last.1 = last.1.checked_add(&v).ok_or(Error::Overflow)?;
                    }
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn from_dense(values: &[Vec<T>]) -> Result<Self> {
        let rows = values.len();
        let cols = values.first().map_or(0, Vec::len);
        if values.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged dense matrix".into()));
        }
        Self::from_triplets(
            rows,
            cols,
            values.iter().enumerate().flat_map(|(r, row)| {
                row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(usize, T)>> {
        self.data
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Column-major view: `columns()[c]` lists `(row, value)` sorted by row.
    pub fn columns(&self) -> Vec<Vec<(usize, T)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            cols[c].push((r, v.clone()));
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            data[c].push((r, v.clone()));
        }
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntegerMatrix<T>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: std::collections::BTreeMap<usize, T> = Default::default();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let p = a.checked_mul(b).ok_or(Error::Overflow)?;
                    let e = acc.entry(*c).or_insert_with(T::zero);
                    *e = e.checked_add(&p).ok_or(Error::Overflow)?;
                }
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    pub fn to_big(&self) -> IntegerMatrix<BigInt> {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v.to_bigint())).collect())
                .collect(),
        }
    }

    /// Converts to another scalar type, failing if an entry does not fit.
    pub fn convert<U: Scalar>(&self) -> Option<IntegerMatrix<U>> {
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| U::from_bigint(&v.to_bigint()).map(|u| (*c, u)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Debug dump: `deg <k> <rows> <cols>` followed by `r c value` lines.
    pub fn dump(&self, degree: usize) -> String {
        let mut s = format!("deg {degree} {} {}\n", self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }
}
