//! Sublattices of `Z^N` given by generating vectors: saturated kernel bases
//! and the (rank, volume) pair used to compare nested lattices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form_auto;
use crate::error::Result;

/// Sparse integer vector.
pub type SparseVec = BTreeMap<usize, BigInt>;

fn axpy(target: &mut SparseVec, q: &BigInt, source: &SparseVec) {
    // target -= q * source
    for (k, v) in source {
        let e = target.entry(*k).or_insert_with(BigInt::zero);
        *e -= q * v;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

fn combine(a: &SparseVec, s: &BigInt, b: &SparseVec, t: &BigInt) -> SparseVec {
    // s*a + t*b
    let mut out = SparseVec::new();
    for (k, v) in a {
        out.insert(*k, s * v);
    }
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(BigInt::zero);
        *e += t * v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Basis of the integer kernel `{x : M x = 0}`; the returned vectors span
/// the full (saturated) kernel lattice.
pub fn kernel_basis(m: &IntegerMatrix<BigInt>) -> Vec<SparseVec> {
    let columns = m.columns();
    // pivot lead row -> (column part, transform part)
    let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.into_iter().enumerate() {
        let mut v: SparseVec = col.into_iter().collect();
        let mut t: SparseVec = SparseVec::from([(j, BigInt::one())]);
        loop {
            let Some((&lead, a)) = v.iter().next() else {
                kernel.push(t);
                break;
            };
            let a = a.clone();
            let Some((pv, pt)) = pivots.get_mut(&lead) else {
                pivots.insert(lead, (v, t));
                break;
            };
            let b = pv[&lead].clone();
            if a.is_multiple_of(&b) {
                let q = &a / &b;
                axpy(&mut v, &q, pv);
                axpy(&mut t, &q, pt);
            } else {
                let eg = a.extended_gcd(&b);
                let (g, s, tt) = (eg.gcd, eg.x, eg.y);
                let (ag, bg) = (&a / &g, &b / &g);
                let new_pv = combine(&v, &s, pv, &tt);
                let new_pt = combine(&t, &s, pt, &tt);
                let rest_v = combine(pv, &ag, &v, &-bg.clone());
                let rest_t = combine(pt, &ag, &t, &-bg);
                *pv = new_pv;
                *pt = new_pt;
                v = rest_v;
                t = rest_t;
            }
        }
    }
    kernel
}

/// `(rank, volume)` of the lattice spanned by `gens` inside `Z^dim`, where
/// the volume is the product of the invariant factors (the index of the
/// lattice in its saturation).
pub fn rank_and_volume(gens: &[SparseVec], dim: usize) -> Result<(usize, BigInt)> {
    let entries = gens
        .iter()
        .enumerate()
        .flat_map(|(c, v)| v.iter().map(move |(r, x)| (*r, c, x.clone())));
    let m = IntegerMatrix::from_triplets(dim, gens.len(), entries)?;
    if m.is_zero() {
        return Ok((0, BigInt::one()));
    }
    let s = smith_normal_form_auto(&m)?;
    let vol = s.factors.iter().fold(BigInt::one(), |acc, d| acc * d.abs());
    Ok((s.rank, vol))
}

/// Image vectors `M x` for each `x`.
pub fn apply(m: &IntegerMatrix<BigInt>, xs: &[SparseVec]) -> Vec<SparseVec> {
    let cols = m.columns();
    xs.iter()
        .map(|x| {
            let mut out = SparseVec::new();
            for (j, coeff) in x {
                for (r, v) in &cols[*j] {
                    let e = out.entry(*r).or_insert_with(BigInt::zero);
                    *e += coeff * v;
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        })
        .collect()
}
