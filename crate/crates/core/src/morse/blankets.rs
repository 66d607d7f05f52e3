use std::fmt;

use serde::Serialize;

use crate::complex::{CubicalComplex, VertexId};
use crate::error::{Error, Result};
use crate::houghton::{EventualInjection, RayPoint};

/// A connected component of the full subcomplex on `{chi_i <= 0 : i in K}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blanket {
    pub k: Vec<usize>,
    pub index: usize,
    pub vertices: Vec<VertexId>,
}

fn check_rays(n: usize, k: &[usize]) -> Result<()> {
    match k.iter().find(|&&i| i == 0 || i > n) {
        Some(&index) => Err(Error::RayIndex { index, n }),
        None => Ok(()),
    }
}

/// Membership mask of `{chi_i <= 0 : i in K}`; empty `K` keeps everything.
pub fn blanket_mask(x: &CubicalComplex, k: &[usize]) -> Result<Vec<bool>> {
    check_rays(x.n(), k)?;
    Ok(x.vertices()
        .iter()
        .map(|v| k.iter().all(|&i| v.translations()[i - 1] <= 0))
        .collect())
}

/// All `K`-blankets of the region, ordered by least vertex.
pub fn blanket_components(x: &CubicalComplex, k: &[usize]) -> Result<Vec<Blanket>> {
    let mask = blanket_mask(x, k)?;
    let mut k = k.to_vec();
    k.sort_unstable();
    k.dedup();
    Ok(x.components_where(&mask)
        .into_iter()
        .enumerate()
        .map(|(index, vertices)| Blanket {
            k: k.clone(),
            index,
            vertices,
        })
        .collect())
}

/// Summary of one pair of blankets that meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionSummary {
    pub k1: Vec<usize>,
    pub index1: usize,
    pub k2: Vec<usize>,
    pub index2: usize,
    pub vertices: usize,
    pub interior_vertices: usize,
    /// Number of `(K1 ∪ K2)`-blankets the intersection meets.
    pub union_blankets_met: usize,
    /// Components of the full subcomplex on the interior vertices of the
    /// intersection.
    pub interior_components: usize,
}

impl IntersectionSummary {
    pub fn in_exactly_one(&self) -> bool {
        self.union_blankets_met == 1
    }

    pub fn interior_connected(&self) -> bool {
        self.interior_components <= 1
    }
}

/// Every nonempty intersection of a `K1`-blanket with a `K2`-blanket.
pub fn blanket_intersections(x: &CubicalComplex, k1: &[usize], k2: &[usize]) -> Result<Vec<IntersectionSummary>> {
    let a = blanket_components(x, k1)?;
    let b = blanket_components(x, k2)?;
    let mut union: Vec<usize> = k1.iter().chain(k2).copied().collect();
    union.sort_unstable();
    union.dedup();
    let u = blanket_components(x, &union)?;
    let label = |bs: &[Blanket]| {
        let mut l = vec![usize::MAX; x.vertex_count()];
        for bl in bs {
            for v in &bl.vertices {
                l[v.index()] = bl.index;
            }
        }
        l
    };
    let (la, lb, lu) = (label(&a), label(&b), label(&u));
    let mut out = Vec::new();
    for ba in &a {
        for bb in &b {
            let meet: Vec<VertexId> = ba.vertices.iter().copied().filter(|v| lb[v.index()] == bb.index).collect();
            if meet.is_empty() {
                continue;
            }
            let mut met: Vec<usize> = meet.iter().map(|v| lu[v.index()]).collect();
            met.sort_unstable();
            met.dedup();
            debug_assert!(meet.iter().all(|v| la[v.index()] == ba.index));
            let mut inner = vec![false; x.vertex_count()];
            for v in meet.iter().filter(|&&v| x.is_interior(v)) {
                inner[v.index()] = true;
            }
            out.push(IntersectionSummary {
                k1: ba.k.clone(),
                index1: ba.index,
                k2: bb.k.clone(),
                index2: bb.index,
                vertices: meet.len(),
                interior_vertices: meet.iter().filter(|&&v| x.is_interior(v)).count(),
                union_blankets_met: met.len(),
                interior_components: x.components_where(&inner).len(),
            });
        }
    }
    Ok(out)
}

/// Restriction of an injection to one ray: the images of the tabulated
/// positions followed by translation by `m_i`. Determines `v` on ray `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayGerm {
    pub ray: usize,
    pub translation: i64,
    pub table: Vec<RayPoint>,
}

impl fmt::Display for RayGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.table.iter().map(|p| p.to_string()).collect();
        write!(f, "ray {}: [{}] then +{}", self.ray, t.join(" "), self.translation)
    }
}

pub fn ray_germ_invariant(v: &EventualInjection, i: usize) -> Result<RayGerm> {
    if i == 0 || i > v.n() {
        return Err(Error::RayIndex { index: i, n: v.n() });
    }
    Ok(RayGerm {
        ray: i,
        translation: v.translations()[i - 1],
        table: v.row(i).to_vec(),
    })
}

/// Edges not in direction `t_i` along which the ray-`i` germ changes.
/// Empty means the germ is a locally constant function on the graph
/// obtained by deleting the `t_i` edges.
pub fn germ_violations(x: &CubicalComplex, i: usize) -> Result<Vec<(VertexId, VertexId)>> {
    if i == 0 || i > x.n() {
        return Err(Error::RayIndex { index: i, n: x.n() });
    }
    let mut bad = Vec::new();
    for (a, ray, b) in x.edges() {
        if ray != i && ray_germ_invariant(x.vertex(a), i)? != ray_germ_invariant(x.vertex(b), i)? {
            bad.push((a, b));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{enumerate_region, RegionSpec};

    fn region() -> CubicalComplex {
        enumerate_region(&[EventualInjection::identity(2)], &RegionSpec::new(2, 2).with_f_bound(2)).unwrap()
    }

    #[test]
    fn blankets_partition_their_mask() {
        let x = region();
        let mask = blanket_mask(&x, &[1]).unwrap();
        let bs = blanket_components(&x, &[1]).unwrap();
        let total: usize = bs.iter().map(|b| b.vertices.len()).sum();
        assert_eq!(total, mask.iter().filter(|b| **b).count());
        assert!(bs.windows(2).all(|w| w[0].vertices[0] < w[1].vertices[0]));
        assert!(blanket_components(&x, &[3]).is_err());
        let all = blanket_components(&x, &[]).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].vertices.len(), x.vertex_count());
    }

    #[test]
    fn germs_separate_identity_and_tau() {
        let id = EventualInjection::identity(2);
        let tau = EventualInjection::transposition_tau(1, 2).unwrap();
        assert_ne!(ray_germ_invariant(&id, 1).unwrap(), ray_germ_invariant(&tau, 1).unwrap());
        assert_eq!(ray_germ_invariant(&id, 2).unwrap(), ray_germ_invariant(&tau, 2).unwrap());
        let x = region();
        assert!(germ_violations(&x, 1).unwrap().is_empty());
        assert!(germ_violations(&x, 2).unwrap().is_empty());
    }

    #[test]
    fn intersections_are_reported() {
        let x = region();
        let s = blanket_intersections(&x, &[1], &[2]).unwrap();
        assert!(!s.is_empty());
        assert!(s.iter().all(|i| i.vertices > 0 && i.union_blankets_met >= 1));
    }
}
