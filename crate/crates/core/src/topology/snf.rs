//! Smith normal form of sparse integer matrices.
//!
//! Only the invariant factors are produced (no transforms). The reduction
//! runs in two phases:
//!
//! 1. unit pivots, chosen from the sparsest available column and then the
//!    shortest row holding a `±1` in it; eliminating a unit pivot is a pure
//!    Schur-complement step and records a factor of 1;
//! 2. on the (usually tiny) remainder, the entry of least absolute value is
//!    pivoted (ties go to the sparser column) and cleared by Euclidean row
//!    and column steps until it is isolated.
//!
//! The isolated diagonal is finally normalised into a divisibility chain.
//! Machine scalars report overflow; [`smith_normal_form_auto`] retries with
//! `BigInt` when that happens.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigInt;


use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};
use crate::scalar::{checked_mul_sub, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T = BigInt> {
    /// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub factors: Vec<T>,
    pub rank: usize,
}

impl<T: Scalar> SmithForm<T> {
    /// Factors greater than one (the torsion part of a cokernel).
    pub fn torsion(&self) -> Vec<T> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Work<T> {
    rows: Vec<Vec<(usize, T)>>,
    cols: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl<T: Scalar> Work<T> {
    fn new(m: IntegerMatrix<T>) -> Self {
        let ncols = m.cols();
        let rows = m.into_rows();
        let mut cols = vec![BTreeSet::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                cols[*c].insert(r);
            }
        }
        Work {
            row_alive: vec![true; rows.len()],
            col_alive: vec![true; ncols],
            rows,
            cols,
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<&T> {
        self.rows[r]
            .binary_search_by_key(&c, |e| e.0)
            .ok()
            .map(|k| &self.rows[r][k].1)
    }

    /// `row[target] -= q * row[source]`; returns the columns whose support
    /// changed.
    fn row_axpy(&mut self, target: usize, q: &T, source: usize) -> Result<Vec<usize>> {
        let a = std::mem::take(&mut self.rows[target]);
        let b = &self.rows[source];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut touched = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ca = a.get(i).map_or(usize::MAX, |e| e.0);
            let cb = b.get(j).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                out.push(a[i].clone());
                i += 1;
            } else if cb < ca {
                let v = checked_mul_sub(&T::zero(), q, &b[j].1).ok_or(Error::Overflow)?;
                if !v.is_zero() {
                    out.push((cb, v));
                    touched.push(cb);
                }
                j += 1;
            } else {
                let v = checked_mul_sub(&a[i].1, q, &b[j].1).ok_or(Error::Overflow)?;
                if v.is_zero() {
                    touched.push(ca);
                } else {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
        }
        for &c in &touched {
            if out.binary_search_by_key(&c, |e| e.0).is_ok() {
                self.cols[c].insert(target);
            } else {
                self.cols[c].remove(&target);
            }
        }
        self.rows[target] = out;
        Ok(touched)
    }

    /// Removes row `r` and column `c` (the caller guarantees the pivot is
    /// isolated in its column, so the rest of row `r` can be discarded by
    /// column operations that affect nothing else).
    fn retire(&mut self, r: usize, c: usize) -> Vec<usize> {
        let row = std::mem::take(&mut self.rows[r]);
        let mut touched = Vec::with_capacity(row.len());
        for (cc, _) in row {
            self.cols[cc].remove(&r);
            if cc != c {
                touched.push(cc);
            }
        }
        self.row_alive[r] = false;
        self.col_alive[c] = false;
        touched
    }
}

/// Invariant factors and rank of `m`, with checked arithmetic in `T`.
pub fn smith_normal_form<T: Scalar>(m: &IntegerMatrix<T>) -> Result<SmithForm<T>> {
    let mut w = Work::new(m.clone());
    let mut diagonal: Vec<T> = Vec::new();
    let mut units = 0usize;

    // phase 1: unit pivots
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = w
        .cols
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(c, s)| Reverse((s.len(), c)))
        .collect();
    while let Some(Reverse((count, c))) = heap.pop() {
        if !w.col_alive[c] || w.cols[c].len() != count || count == 0 {
            continue;
        }
        let pivot_row = w.cols[c]
            .iter()
            .copied()
            .filter(|&r| w.entry(r, c).is_some_and(|v| v.is_unit()))
            .min_by_key(|&r| (w.rows[r].len(), r));
        let Some(r) = pivot_row else {
            // re-queued if a later elimination changes this column
            continue;
        };
        let u = w.entry(r, c).cloned().expect("pivot present");
        let others: Vec<usize> = w.cols[c].iter().copied().filter(|&x| x != r).collect();
        let mut touched = BTreeSet::new();
        for r2 in others {
            let a = w.entry(r2, c).cloned().expect("column index in sync");
            // u is its own inverse
            let q = a.checked_mul(&u).ok_or(Error::Overflow)?;
            touched.extend(w.row_axpy(r2, &q, r)?);
        }
        touched.extend(w.retire(r, c));
        units += 1;
        for cc in touched {
            if w.col_alive[cc] && !w.cols[cc].is_empty() {
                heap.push(Reverse((w.cols[cc].len(), cc)));
            }
        }
    }

    // phase 2: Euclidean pivoting on the remainder
    loop {
        let mut best: Option<(T, usize, usize, usize)> = None;
        for (r, row) in w.rows.iter().enumerate() {
            if !w.row_alive[r] {
                continue;
            }
            for (c, v) in row {
                let key = (v.abs(), w.cols[*c].len(), *c, r);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, mut c, mut r)) = best else { break };
        loop {
            let p = w.entry(r, c).cloned().expect("pivot present");
            // clear the column by row operations
            let mut smaller: Option<(T, usize)> = None;
            let others: Vec<usize> = w.cols[c].iter().copied().filter(|&x| x != r).collect();
            for r2 in others {
                let a = w.entry(r2, c).cloned().expect("column index in sync");
                let q = a.div_floor(&p);
                w.row_axpy(r2, &q, r)?;
                if let Some(rem) = w.entry(r2, c) {
                    let key = rem.abs();
                    if smaller.as_ref().is_none_or(|s| key < s.0) {
                        smaller = Some((key, r2));
                    }
                }
            }
            if let Some((_, r2)) = smaller {
                r = r2;
                continue;
            }
            // the column is now isolated; clear the row by column operations,
            // which only alter row r
            let mut smaller: Option<(T, usize)> = None;
            let mut row = std::mem::take(&mut w.rows[r]);
            for e in row.iter_mut() {
                if e.0 == c {
                    continue;
                }
                let q = e.1.div_floor(&p);
                e.1 = checked_mul_sub(&e.1, &q, &p).ok_or(Error::Overflow)?;
            }
            for (cc, v) in &row {
                if v.is_zero() {
                    w.cols[*cc].remove(&r);
                } else if *cc != c && smaller.as_ref().is_none_or(|s| v.abs() < s.0) {
                    smaller = Some((v.abs(), *cc));
                }
            }
            row.retain(|e| !e.1.is_zero());
            w.rows[r] = row;
            match smaller {
                Some((_, c2)) => c = c2,
                None => {
                    diagonal.push(p.abs());
                    w.retire(r, c);
                    break;
                }
            }
        }
    }

    let mut factors = vec![T::one(); units];
    factors.extend(divisibility_chain(diagonal)?);
    let rank = factors.len();
    Ok(SmithForm { factors, rank })
}

/// Turns a list of positive diagonal entries into invariant factors.
fn divisibility_chain<T: Scalar>(mut d: Vec<T>) -> Result<Vec<T>> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = (d[i].clone() / g.clone())
                    .checked_mul(&d[j])
                    .ok_or(Error::Overflow)?;
                d[i] = g;
                d[j] = l;
            }
        }
    }
    Ok(d)
}

/// Tries `i64` first and repeats in `BigInt` if an intermediate overflows.
pub fn smith_normal_form_auto(m: &IntegerMatrix<BigInt>) -> Result<SmithForm<BigInt>> {
    if let Some(small) = m.convert::<i64>() {
        match smith_normal_form(&small) {
            Ok(s) => {
                return Ok(SmithForm {
                    factors: s.factors.iter().map(|&d| BigInt::from(d)).collect(),
                    rank: s.rank,
                })
            }
            Err(Error::Overflow) => {}
            Err(e) => return Err(e),
        }
    }
    smith_normal_form(m)
}

/// Rank only (the number of invariant factors).
pub fn rank(m: &IntegerMatrix<BigInt>) -> Result<usize> {
    if m.is_zero() {
        return Ok(0);
    }
    smith_normal_form_auto(m).map(|s| s.rank)
}
