use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::region::RegionSpec;
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use crate::houghton::{EventualInjection, RayPoint};
use crate::topology::{ChainComplex, IntegerMatrix};

/// Handle of a vertex inside one complex. Ids follow the lexicographic
/// order of the canonical encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The cube spanned by `(prod_{i in I} t_i) ∘ base` for `I ⊆ dirs`. Bit
/// `i - 1` of `dirs` stands for ray `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub base: VertexId,
    pub dirs: u32,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.dirs.count_ones() as usize
    }

    /// Directions as 1-based rays, ascending.
    pub fn rays(&self) -> Vec<usize> {
        bits(self.dirs).map(|b| b + 1).collect()
    }
}

pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask >> b & 1 == 1)
}

/// Submasks of `mask`, including 0 and `mask` itself.
pub(crate) fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// A direction at a vertex: the edge to `t_i ∘ v`, or the edge to the
/// vertex `w` with `v = t_i ∘ w` and `w(i,1) = point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinkVertex {
    Up(usize),
    Down(usize, RayPoint),
}

impl LinkVertex {
    pub fn ray(&self) -> usize {
        match *self {
            LinkVertex::Up(i) | LinkVertex::Down(i, _) => i,
        }
    }
}

impl fmt::Display for LinkVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkVertex::Up(i) => write!(f, "up {i}"),
            LinkVertex::Down(i, p) => write!(f, "down {i} {p}"),
        }
    }
}

/// A vertex link together with the direction each link vertex stands for.
#[derive(Clone, Debug)]
pub struct Link {
    pub complex: SimplicialComplex,
    pub directions: Vec<LinkVertex>,
}

/// A finite, face-closed cube complex whose vertices are elements of `M_n`
/// and whose cubes follow the `t_i` rule.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    n: usize,
    vertices: Vec<EventualInjection>,
    index: HashMap<EventualInjection, VertexId>,
    /// `up[v * n + i - 1]`: the edge `v -> t_i ∘ v`, when present.
    up: Vec<Option<VertexId>>,
    /// `cubes[d]`, sorted; `cubes[0]` are the vertices as 0-cubes.
    cubes: Vec<Vec<Cube>>,
    cube_index: HashMap<Cube, usize>,
    /// Per vertex: `(dim, index in cubes[dim], position I)`.
    incidences: Vec<Vec<(usize, usize, u32)>>,
    spec: Option<RegionSpec>,
    interior: Vec<bool>,
}

impl PartialEq for CubicalComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices && self.cubes == other.cubes
    }
}

impl CubicalComplex {
    /// The full subcomplex of `X_n` on `vertices`: every cube whose corners
    /// are all present.
    pub fn full_on_vertices(
        n: usize,
        mut vertices: Vec<EventualInjection>,
        spec: Option<RegionSpec>,
    ) -> Result<Self> {
        check_vertices(n, &vertices)?;
        vertices.sort();
        vertices.dedup();
        let index = make_index(&vertices);
        let mut cubes = Vec::new();
        for (v, phi) in vertices.iter().enumerate() {
            let base = VertexId(v as u32);
            for dirs in 1u32..(1 << n) {
                if submasks(dirs).all(|s| corner_of(&index, phi, s).is_some()) {
                    cubes.push(Cube { base, dirs });
                }
            }
        }
        let interior = match &spec {
            Some(s) => vertices.par_iter().map(|v| s.is_interior(v)).collect(),
            None => vec![false; vertices.len()],
        };
        Self::seal(n, vertices, index, cubes, spec, interior)
    }

    /// A complex from explicit cubes of dimension at least one. The corners
    /// of every cube must be present and the cube set must be face-closed.
    pub fn from_cubes(n: usize, mut vertices: Vec<EventualInjection>, cubes: &[(EventualInjection, u32)]) -> Result<Self> {
        check_vertices(n, &vertices)?;
        vertices.sort();
        vertices.dedup();
        let index = make_index(&vertices);
        let mut list = Vec::with_capacity(cubes.len());
        for (base, dirs) in cubes {
            let id = *index
                .get(base)
                .ok_or_else(|| Error::InconsistentComplex(format!("cube base {base} is not a vertex")))?;
            if *dirs == 0 || *dirs >= 1 << n {
                return Err(Error::InconsistentComplex(format!("bad direction mask {dirs:b}")));
            }
            if submasks(*dirs).any(|s| corner_of(&index, base, s).is_none()) {
                return Err(Error::InconsistentComplex(format!(
                    "cube at {base} with directions {dirs:b} has a missing corner"
                )));
            }
            list.push(Cube { base: id, dirs: *dirs });
        }
        let present: BTreeSet<Cube> = list.iter().copied().collect();
        for c in &present {
            for (bottom, top) in faces_by(&index, &vertices, c) {
                for f in [bottom, top] {
                    if f.dirs != 0 && !present.contains(&f) {
                        return Err(Error::InconsistentComplex(format!(
                            "face of cube at {} with directions {:b} is missing",
                            vertices[c.base.index()],
                            c.dirs
                        )));
                    }
                }
            }
        }
        let interior = vec![false; vertices.len()];
        Self::seal(n, vertices, index, present.into_iter().collect(), None, interior)
    }

    fn seal(
        n: usize,
        vertices: Vec<EventualInjection>,
        index: HashMap<EventualInjection, VertexId>,
        higher: Vec<Cube>,
        spec: Option<RegionSpec>,
        interior: Vec<bool>,
    ) -> Result<Self> {
        if vertices.len() > u32::MAX as usize {
            return Err(Error::InvalidParameter("too many vertices".into()));
        }
        let mut cubes: Vec<Vec<Cube>> = vec![(0..vertices.len())
            .map(|v| Cube {
                base: VertexId(v as u32),
                dirs: 0,
            })
            .collect()];
        for c in higher {
            while cubes.len() <= c.dim() {
                cubes.push(Vec::new());
            }
            cubes[c.dim()].push(c);
        }
        for level in &mut cubes {
            level.sort();
            level.dedup();
        }
        while cubes.len() > 1 && cubes.last().is_some_and(Vec::is_empty) {
            cubes.pop();
        }
        let mut up = vec![None; vertices.len() * n];
        if let Some(edges) = cubes.get(1) {
            for e in edges {
                let i = e.dirs.trailing_zeros() as usize;
                let top = index[&vertices[e.base.index()].raised(i + 1)];
                up[e.base.index() * n + i] = Some(top);
            }
        }
        let cube_index: HashMap<Cube, usize> = cubes
            .iter()
            .flat_map(|level| level.iter().enumerate().map(|(k, c)| (*c, k)))
            .collect();
        let mut x = CubicalComplex {
            n,
            vertices,
            index,
            up,
            cubes,
            cube_index,
            incidences: Vec::new(),
            spec,
            interior,
        };
        let mut incidences = vec![Vec::new(); x.vertices.len()];
        for (d, level) in x.cubes.iter().enumerate() {
            for (k, c) in level.iter().enumerate() {
                for s in submasks(c.dirs) {
                    let v = x.corner(c.base, s).expect("face-closed cube");
                    incidences[v.index()].push((d, k, s));
                }
            }
        }
        x.incidences = incidences;
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> Option<&RegionSpec> {
        self.spec.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[EventualInjection] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn vertex(&self, v: VertexId) -> &EventualInjection {
        &self.vertices[v.index()]
    }

    pub fn id_of(&self, phi: &EventualInjection) -> Option<VertexId> {
        self.index.get(phi).copied()
    }

    fn check_id(&self, v: VertexId) -> Result<()> {
        if v.index() < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.0))
        }
    }

    /// Number of cubes per dimension, starting with vertices.
    pub fn cube_counts(&self) -> Vec<usize> {
        self.cubes.iter().map(Vec::len).collect()
    }

    pub fn dimension(&self) -> usize {
        self.cubes.len().saturating_sub(1)
    }

    pub fn cubes(&self, dim: usize) -> &[Cube] {
        self.cubes.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn contains_cube(&self, c: &Cube) -> bool {
        self.cube_index.contains_key(c)
    }

    pub fn up(&self, v: VertexId, ray: usize) -> Option<VertexId> {
        self.up[v.index() * self.n + ray - 1]
    }

    /// `(ray, up-neighbour)` over present edges.
    pub fn up_edges(&self, v: VertexId) -> impl Iterator<Item = (usize, VertexId)> + '_ {
        (1..=self.n).filter_map(move |i| self.up(v, i).map(|w| (i, w)))
    }

    /// All edges `(lower, ray, upper)` in cube order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, usize, VertexId)> + '_ {
        self.cubes(1).iter().map(|e| {
            let i = e.dirs.trailing_zeros() as usize + 1;
            (e.base, i, self.up(e.base, i).expect("edge recorded"))
        })
    }

    /// The corner `(prod_{i in mask} t_i) ∘ base`, following present edges.
    pub fn corner(&self, base: VertexId, mask: u32) -> Option<VertexId> {
        bits(mask).try_fold(base, |v, b| self.up(v, b + 1))
    }

    pub fn is_interior(&self, v: VertexId) -> bool {
        self.interior.get(v.index()).copied().unwrap_or(false)
    }

    pub fn interior_count(&self) -> usize {
        self.interior.iter().filter(|b| **b).count()
    }

    /// Every cube having `v` as a vertex, with the position `I` of `v`.
    pub fn cubes_containing_vertex(&self, v: VertexId) -> Result<Vec<(Cube, u32)>> {
        self.check_id(v)?;
        let mut out: Vec<(Cube, u32)> = self.incidences[v.index()]
            .iter()
            .map(|&(d, k, s)| (self.cubes[d][k], s))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Direction along which `v` leaves the cube's corner set towards the
    /// corner at `position ^ (1 << b)`.
    fn direction(&self, c: &Cube, position: u32, b: usize) -> LinkVertex {
        if position >> b & 1 == 0 {
            LinkVertex::Up(b + 1)
        } else {
            let below = self.corner(c.base, position & !(1 << b)).expect("face-closed cube");
            LinkVertex::Down(b + 1, self.vertex(below).apply(RayPoint::new(b + 1, 1)))
        }
    }

    /// The link of `v`: one vertex per edge at `v`, one simplex per cube
    /// containing `v`.
    pub fn link(&self, v: VertexId) -> Result<Link> {
        self.link_filtered(v, |_, _| true)
    }

    /// The subcomplex of the link spanned by the cubes accepted by `keep`
    /// (called with the cube and the position of `v` in it).
    pub(crate) fn link_filtered(&self, v: VertexId, keep: impl Fn(&Cube, u32) -> bool) -> Result<Link> {
        self.check_id(v)?;
        let incid = self.cubes_containing_vertex(v)?;
        let mut simplices: Vec<Vec<LinkVertex>> = Vec::new();
        let mut dirs: BTreeSet<LinkVertex> = BTreeSet::new();
        for (c, pos) in &incid {
            if c.dim() == 0 || !keep(c, *pos) {
                continue;
            }
            let s: Vec<LinkVertex> = bits(c.dirs).map(|b| self.direction(c, *pos, b)).collect();
            dirs.extend(s.iter().copied());
            simplices.push(s);
        }
        let directions: Vec<LinkVertex> = dirs.into_iter().collect();
        let pos_of: HashMap<LinkVertex, usize> = directions.iter().enumerate().map(|(k, d)| (*d, k)).collect();
        let facets: Vec<Vec<usize>> = simplices
            .iter()
            .map(|s| s.iter().map(|d| pos_of[d]).collect())
            .collect();
        let complex = SimplicialComplex::from_facets(directions.iter().map(|d| d.to_string()).collect(), &facets)?;
        Ok(Link { complex, directions })
    }

    /// Whether the link of `v` in the full subcomplex on `keep` is a full
    /// subcomplex of the link of `v` here.
    pub fn is_locally_full(&self, keep: &[bool], v: VertexId) -> Result<bool> {
        self.check_id(v)?;
        if !keep[v.index()] {
            return Err(Error::InvalidParameter(format!("vertex {v} is not in the subcomplex")));
        }
        for (c, pos) in self.cubes_containing_vertex(v)? {
            if c.dim() < 2 {
                continue;
            }
            let corner_in = |s: u32| keep[self.corner(c.base, s).expect("face-closed").index()];
            let neighbours_in = bits(c.dirs).all(|b| corner_in(pos ^ (1 << b)));
            if neighbours_in && !submasks(c.dirs).all(corner_in) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Components of the 1-skeleton of the full subcomplex on `keep`, each
    /// sorted, ordered by least vertex.
    pub fn components_where(&self, keep: &[bool]) -> Vec<Vec<VertexId>> {
        let nv = self.vertices.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (a, _, b) in self.edges() {
            if keep[a.index()] && keep[b.index()] {
                let (ra, rb) = (find(&mut parent, a.index()), find(&mut parent, b.index()));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for v in 0..nv {
            if !keep[v] {
                continue;
            }
            let r = find(&mut parent, v);
            let slot = *groups.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[slot].push(VertexId(v as u32));
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.components_where(&vec![true; self.vertices.len()])
    }

    /// Keeps a cube iff all of its corners pass `keep`. Interior flags carry
    /// over from `self`.
    pub fn full_subcomplex(&self, keep: impl Fn(VertexId) -> bool) -> CubicalComplex {
        let kept: Vec<bool> = self.vertex_ids().map(&keep).collect();
        let vertices: Vec<EventualInjection> = self
            .vertices
            .iter()
            .zip(&kept)
            .filter(|(_, k)| **k)
            .map(|(v, _)| v.clone())
            .collect();
        let index = make_index(&vertices);
        let mut higher = Vec::new();
        for level in self.cubes.iter().skip(1) {
            for c in level {
                if submasks(c.dirs).all(|s| kept[self.corner(c.base, s).expect("face-closed").index()]) {
                    higher.push(Cube {
                        base: index[self.vertex(c.base)],
                        dirs: c.dirs,
                    });
                }
            }
        }
        let interior = self
            .interior
            .iter()
            .zip(&kept)
            .filter(|(_, k)| **k)
            .map(|(i, _)| *i)
            .collect();
        Self::seal(self.n, vertices, index, higher, self.spec.clone(), interior).expect("subcomplex of a sealed complex")
    }

    /// Face closure, edge labels and the `(chi_j, f)` increments along every
    /// edge.
    pub fn validate(&self) -> Result<()> {
        for level in self.cubes.iter().skip(1) {
            for c in level {
                for (bottom, top) in faces_by(&self.index, &self.vertices, c) {
                    if !self.contains_cube(&bottom) || !self.contains_cube(&top) {
                        return Err(Error::InconsistentComplex(format!(
                            "cube at {} with directions {:b} lacks a face",
                            self.vertex(c.base),
                            c.dirs
                        )));
                    }
                }
            }
        }
        for (a, i, b) in self.edges() {
            let (va, vb) = (self.vertex(a), self.vertex(b));
            let ok = vb.deficiency() == va.deficiency() + 1
                && (1..=self.n).all(|j| {
                    vb.translations()[j - 1] - va.translations()[j - 1] == i64::from(i == j)
                })
                && *vb == va.raised(i);
            if !ok {
                return Err(Error::InconsistentComplex(format!("edge {va} -> {vb} breaks the t_{i} rule")));
            }
        }
        Ok(())
    }

    /// Cellular chain complex; cubes of each dimension in sorted order.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let dims: Vec<usize> = self.cube_counts();
        if self.vertices.is_empty() {
            return Ok(ChainComplex::empty());
        }
        let boundaries = (1..self.cubes.len())
            .into_par_iter()
            .map(|d| {
                let mut entries = Vec::with_capacity(self.cubes[d].len() * 2 * d);
                for (col, c) in self.cubes[d].iter().enumerate() {
                    for (pos, b) in bits(c.dirs).enumerate() {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        let bottom = Cube {
                            base: c.base,
                            dirs: c.dirs & !(1 << b),
                        };
                        let top = Cube {
                            base: self.up(c.base, b + 1).expect("face-closed cube"),
                            dirs: bottom.dirs,
                        };
                        entries.push((self.cube_index[&top], col, BigInt::from(sign)));
                        entries.push((self.cube_index[&bottom], col, BigInt::from(-sign)));
                    }
                }
                IntegerMatrix::from_triplets(dims[d - 1], dims[d], entries)
            })
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(dims, boundaries)
    }

    /// Cell map of the inclusion of the full subcomplex `sub` (as returned by
    /// [`CubicalComplex::full_subcomplex`]) into `self`.
    pub fn inclusion_cell_map(&self, sub: &CubicalComplex) -> Result<Vec<Vec<usize>>> {
        (0..sub.cubes.len())
            .map(|d| {
                sub.cubes[d]
                    .iter()
                    .map(|c| {
                        let base = self
                            .id_of(sub.vertex(c.base))
                            .ok_or_else(|| Error::InconsistentComplex("vertex missing from the ambient complex".into()))?;
                        self.cube_index
                            .get(&Cube { base, dirs: c.dirs })
                            .copied()
                            .ok_or_else(|| Error::InconsistentComplex("cube missing from the ambient complex".into()))
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_vertices(n: usize, vertices: &[EventualInjection]) -> Result<()> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidParameter(format!("n = {n} outside 1..=16")));
    }
    if let Some(v) = vertices.iter().find(|v| v.n() != n) {
        return Err(Error::Dimension {
            expected: n,
            found: v.n(),
        });
    }
    Ok(())
}

fn make_index(vertices: &[EventualInjection]) -> HashMap<EventualInjection, VertexId> {
    vertices
        .iter()
        .enumerate()
        .map(|(k, v)| (v.clone(), VertexId(k as u32)))
        .collect()
}

fn corner_of(index: &HashMap<EventualInjection, VertexId>, base: &EventualInjection, mask: u32) -> Option<VertexId> {
    let mut phi = base.clone();
    for b in bits(mask) {
        phi = phi.raised(b + 1);
    }
    index.get(&phi).copied()
}

/// `(bottom_i, top_i)` facets of `c` for every direction `i`, with bases
/// resolved through the vertex index (missing tops get an out-of-range id).
fn faces_by(index: &HashMap<EventualInjection, VertexId>, vertices: &[EventualInjection], c: &Cube) -> Vec<(Cube, Cube)> {
    bits(c.dirs)
        .map(|b| {
            let dirs = c.dirs & !(1 << b);
            let top_base = index
                .get(&vertices[c.base.index()].raised(b + 1))
                .copied()
                .unwrap_or(VertexId(u32::MAX));
            (Cube { base: c.base, dirs }, Cube { base: top_base, dirs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::region::{enumerate_region, RegionSpec};
    use crate::topology::homology;

    fn t(i: usize, n: usize) -> EventualInjection {
        EventualInjection::generator_t(i, n).unwrap()
    }

    /// The 2^n vertices `prod_{i in I} t_i`.
    fn cube_vertices(n: usize) -> Vec<EventualInjection> {
        (0u32..1 << n)
            .map(|mask| {
                bits(mask).fold(EventualInjection::identity(n), |phi, b| phi.raised(b + 1))
            })
            .collect()
    }

    #[test]
    fn full_square() {
        let x = CubicalComplex::full_on_vertices(2, cube_vertices(2), None).unwrap();
        assert_eq!(x.cube_counts(), vec![4, 4, 1]);
        x.validate().unwrap();
        let c = x.chain_complex().unwrap();
        assert_eq!(c.boundary(2).unwrap().nnz(), 4);
        assert_eq!(homology(&c, true).unwrap().betti, vec![0, 0, 0]);
        let id = x.id_of(&EventualInjection::identity(2)).unwrap();
        let at_id = x.cubes_containing_vertex(id).unwrap();
        assert_eq!(at_id.iter().filter(|(_, pos)| *pos == 0).count(), 4);
    }

    #[test]
    fn hollow_cube_is_a_sphere() {
        let verts = cube_vertices(3);
        let mut cubes = Vec::new();
        let full = CubicalComplex::full_on_vertices(3, verts.clone(), None).unwrap();
        for level in 1..=2 {
            for c in full.cubes(level) {
                cubes.push((full.vertex(c.base).clone(), c.dirs));
            }
        }
        let hollow = CubicalComplex::from_cubes(3, verts, &cubes).unwrap();
        assert_eq!(hollow.cube_counts(), vec![8, 12, 6]);
        let h = homology(&hollow.chain_complex().unwrap(), false).unwrap();
        assert_eq!(h.betti, vec![1, 0, 1]);
    }

    #[test]
    fn from_cubes_rejects_missing_faces() {
        let verts = cube_vertices(2);
        let id = EventualInjection::identity(2);
        let err = CubicalComplex::from_cubes(2, verts, &[(id, 3)]).unwrap_err();
        assert!(matches!(err, Error::InconsistentComplex(_)));
    }

    #[test]
    fn link_of_identity_is_a_simplex() {
        let x = CubicalComplex::full_on_vertices(3, cube_vertices(3), None).unwrap();
        let id = x.id_of(&EventualInjection::identity(3)).unwrap();
        let l = x.link(id).unwrap();
        assert_eq!(l.directions, vec![LinkVertex::Up(1), LinkVertex::Up(2), LinkVertex::Up(3)]);
        assert_eq!(l.complex.dimension(), Some(2));
        assert!(l.complex.is_flag());
    }

    #[test]
    fn three_corners_of_a_square_are_not_locally_full() {
        let x = CubicalComplex::full_on_vertices(2, cube_vertices(2), None).unwrap();
        let top = x.id_of(&t(1, 2).raised(2)).unwrap();
        let keep: Vec<bool> = x.vertex_ids().map(|v| v != top).collect();
        let id = x.id_of(&EventualInjection::identity(2)).unwrap();
        assert!(!x.is_locally_full(&keep, id).unwrap());
        assert!(x.is_locally_full(&[true; 4], id).unwrap());
        let sub = x.full_subcomplex(|v| v != top);
        assert_eq!(sub.cube_counts(), vec![3, 2]);
    }

    #[test]
    fn link_of_t1() {
        let spec = RegionSpec::new(2, 3).with_f_bound(2);
        let x = enumerate_region(&[EventualInjection::identity(2)], &spec).unwrap();
        let v = x.id_of(&t(1, 2)).unwrap();
        assert!(x.is_interior(v));
        let l = x.link(v).unwrap();
        assert_eq!(
            l.directions,
            vec![
                LinkVertex::Up(1),
                LinkVertex::Up(2),
                LinkVertex::Down(1, RayPoint::new(1, 1)),
                LinkVertex::Down(2, RayPoint::new(1, 1)),
            ]
        );
        x.validate().unwrap();
    }
}
