use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::blankets::{germ_violations, ray_germ_invariant};
use crate::complex::io::PieceLabel;
use crate::complex::{CubicalComplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::houghton::{Character, EventualInjection};
use crate::topology::{homology, homology_through, induced_inclusion_map};

/// One piece `Y_i^alpha`: a component of `{chi_{r_i} <= 0}` inside the
/// region, where `r_i` is the `i`-th negative ray of the standard form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPiece {
    pub piece_type: usize,
    pub ray: usize,
    pub alpha: usize,
    pub vertices: Vec<VertexId>,
}

impl CoverPiece {
    pub fn label(&self) -> String {
        format!("Y{}.{}", self.piece_type, self.alpha)
    }
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub chi: Character,
    /// `rays[i - 1]` is the ray of type `i`.
    pub rays: Vec<usize>,
    pub pieces: Vec<CoverPiece>,
    /// Pieces containing each vertex, ascending.
    pub membership: Vec<Vec<usize>>,
}

impl Cover {
    pub fn m(&self) -> usize {
        self.rays.len()
    }

    /// The piece of type `ty` containing `v`, if any.
    pub fn piece_of(&self, v: VertexId, ty: usize) -> Option<usize> {
        self.membership[v.index()].iter().copied().find(|&p| self.pieces[p].piece_type == ty)
    }

    /// Vertices lying in every listed piece.
    pub fn intersection(&self, pieces: &[usize]) -> Vec<VertexId> {
        self.membership
            .iter()
            .enumerate()
            .filter(|(_, ps)| pieces.iter().all(|p| ps.binary_search(p).is_ok()))
            .map(|(v, _)| VertexId(v as u32))
            .collect()
    }

    pub fn labels(&self) -> Vec<PieceLabel> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(k, p)| PieceLabel {
                vertex: k,
                piece_type: p.piece_type,
                alpha: p.alpha,
            })
            .collect()
    }
}

/// Pieces of the standard cover of a superlevel region. Fails with
/// `NotACover` when some vertex lies in no piece.
pub fn cover_pieces(x: &CubicalComplex, chi: &Character) -> Result<Cover> {
    let chi = chi.standard_form()?;
    if chi.n() != x.n() {
        return Err(Error::Dimension {
            expected: x.n(),
            found: chi.n(),
        });
    }
    let rays = chi.negative_rays()?;
    let mut pieces = Vec::new();
    let mut membership = vec![Vec::new(); x.vertex_count()];
    for (t, &r) in rays.iter().enumerate() {
        let mask: Vec<bool> = x.vertices().iter().map(|v| v.translations()[r - 1] <= 0).collect();
        for (alpha, vertices) in x.components_where(&mask).into_iter().enumerate() {
            for v in &vertices {
                membership[v.index()].push(pieces.len());
            }
            pieces.push(CoverPiece {
                piece_type: t + 1,
                ray: r,
                alpha,
                vertices,
            });
        }
    }
    if let Some(v) = membership.iter().position(Vec::is_empty) {
        return Err(Error::NotACover(format!("vertex {} ({}) lies in no piece", v, x.vertices()[v])));
    }
    Ok(Cover {
        chi,
        rays,
        pieces,
        membership,
    })
}

/// Nerve of the cover: one vertex per piece, one simplex per set of pieces
/// with a common vertex.
pub fn nerve(cover: &Cover) -> Result<SimplicialComplex> {
    let labels = cover.pieces.iter().map(CoverPiece::label).collect();
    let sets: BTreeSet<&Vec<usize>> = cover.membership.iter().collect();
    let facets: Vec<Vec<usize>> = sets.into_iter().cloned().collect();
    SimplicialComplex::from_facets(labels, &facets)
}

/// Structural facts every nerve of this cover satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerveShape {
    pub vertices: usize,
    pub dimension: Option<usize>,
    pub same_type_edges: usize,
    pub betti: Vec<usize>,
}

impl NerveShape {
    pub fn ok(&self, m: usize) -> bool {
        self.same_type_edges == 0 && self.dimension.is_none_or(|d| d < m)
    }
}

pub fn nerve_shape(cover: &Cover, l: &SimplicialComplex) -> Result<NerveShape> {
    let same_type_edges = l
        .edges()
        .iter()
        .filter(|(a, b)| cover.pieces[*a].piece_type == cover.pieces[*b].piece_type)
        .count();
    Ok(NerveShape {
        vertices: l.vertex_count(),
        dimension: l.dimension(),
        same_type_edges,
        betti: homology(&l.chain_complex()?, false)?.betti,
    })
}

/// The embedded `(m-1)`-sphere of the nerve spanned by the pieces that
/// contain the products of transpositions `prod_{eps_i = 2} tau_{r_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereWitness {
    pub m: usize,
    /// For each type, the pieces containing the identity and `tau_{r_i}`.
    pub poles: Vec<(usize, usize)>,
    pub germ_certificate: bool,
    pub facets: Vec<Vec<usize>>,
    /// `H_{m-1}` of the sphere maps injectively into `H_{m-1}` of the nerve.
    pub injective: bool,
    pub nerve_top_betti: usize,
}

fn tau_product(n: usize, rays: &[usize]) -> Result<EventualInjection> {
    rays.iter().try_fold(EventualInjection::identity(n), |acc, &r| {
        acc.compose(&EventualInjection::transposition_tau(r, n)?)
    })
}

pub fn sphere_witness(x: &CubicalComplex, cover: &Cover, l: &SimplicialComplex) -> Result<SphereWitness> {
    let m = cover.m();
    let n = x.n();
    let mut poles = Vec::with_capacity(m);
    let mut certificate = true;
    let locate = |phi: &EventualInjection| {
        x.id_of(phi)
            .ok_or_else(|| Error::Witness(format!("{phi} is not a vertex of the region")))
    };
    let id = locate(&EventualInjection::identity(n))?;
    for (t, &r) in cover.rays.iter().enumerate() {
        let tau = EventualInjection::transposition_tau(r, n)?;
        let tv = locate(&tau)?;
        let ty = t + 1;
        let (a, b) = match (cover.piece_of(id, ty), cover.piece_of(tv, ty)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Witness(format!("identity or tau_{r} misses every type-{ty} piece"))),
        };
        // germs on ray r differ, and are constant off the t_r edges
        let germs_differ = ray_germ_invariant(x.vertex(id), r)? != ray_germ_invariant(&tau, r)?;
        let constant = germ_violations(x, r)?.is_empty();
        certificate &= germs_differ && constant;
        if a == b {
            return Err(Error::Witness(format!(
                "identity and tau_{r} share a type-{ty} piece (germ certificate {})",
                if germs_differ && constant { "says otherwise" } else { "failed" }
            )));
        }
        poles.push((a, b));
    }
    let mut facets = Vec::with_capacity(1 << m);
    for eps in 0u32..(1 << m) {
        let chosen: Vec<usize> = (0..m).filter(|&t| eps >> t & 1 == 1).map(|t| cover.rays[t]).collect();
        let v = locate(&tau_product(n, &chosen)?)?;
        let mut facet = Vec::with_capacity(m);
        for (t, &(lo, hi)) in poles.iter().enumerate() {
            let want = if eps >> t & 1 == 1 { hi } else { lo };
            if cover.piece_of(v, t + 1) != Some(want) {
                return Err(Error::Witness(format!(
                    "{} does not lie in {}",
                    x.vertex(v),
                    cover.pieces[want].label()
                )));
            }
            facet.push(want);
        }
        facet.sort_unstable();
        facets.push(facet);
    }
    let mut sphere = SimplicialComplex::with_labels(l.labels().to_vec());
    for f in &facets {
        sphere.add_simplex(f)?;
    }
    let top = m - 1;
    let cells = l.inclusion_cell_map(&sphere)?;
    let verdicts = induced_inclusion_map(&sphere.chain_complex()?, &l.chain_complex()?, &cells, top)?;
    let injective = verdicts.iter().find(|v| v.degree == top).is_some_and(|v| v.injective);
    let nerve_top_betti = homology(&l.chain_complex()?, true)?.betti.get(top).copied().unwrap_or(0);
    Ok(SphereWitness {
        m,
        poles,
        germ_certificate: certificate,
        facets,
        injective,
        nerve_top_betti,
    })
}

/// Acyclicity of one nonempty intersection of pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionCheck {
    pub pieces: Vec<String>,
    pub vertices: usize,
    /// Reduced homology must vanish through this degree (`-1`: nonempty).
    pub required_degree: i64,
    pub reduced_betti: Vec<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongNerveReport {
    pub up_to: usize,
    pub checks: Vec<IntersectionCheck>,
    pub all_pass: bool,
}

/// Checks every intersection of at most `max_size` pieces spanned by a
/// nerve simplex against `required(size)`.
pub fn intersection_acyclicity(
    x: &CubicalComplex,
    cover: &Cover,
    l: &SimplicialComplex,
    max_size: usize,
    required: impl Fn(usize) -> i64 + Sync,
) -> Result<Vec<IntersectionCheck>> {
    let simplices: Vec<&Vec<usize>> = l.faces().filter(|f| f.len() <= max_size).collect();
    simplices
        .par_iter()
        .map(|s| {
            let verts = cover.intersection(s);
            let mut keep = vec![false; x.vertex_count()];
            for v in &verts {
                keep[v.index()] = true;
            }
            let need = required(s.len());
            let sub = x.full_subcomplex(|v| keep[v.index()]);
            let (betti, pass) = if need < 0 {
                (Vec::new(), !verts.is_empty())
            } else {
                let h = homology_through(&sub.chain_complex()?, true, need as usize)?;
                let pass = !verts.is_empty() && h.acyclic_through(need as usize);
                (h.betti, pass)
            };
            Ok(IntersectionCheck {
                pieces: s.iter().map(|&p| cover.pieces[p].label()).collect(),
                vertices: verts.len(),
                required_degree: need,
                reduced_betti: betti,
                pass,
            })
        })
        .collect()
}

/// Hypotheses of the strong nerve lemma with parameter `up_to`: each
/// intersection of `r <= up_to` pieces is reduced-acyclic through degree
/// `up_to - r`.
pub fn strong_nerve_hypotheses(
    x: &CubicalComplex,
    cover: &Cover,
    l: &SimplicialComplex,
    up_to: usize,
) -> Result<StrongNerveReport> {
    let checks = intersection_acyclicity(x, cover, l, up_to, |r| up_to as i64 - r as i64)?;
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(StrongNerveReport {
        up_to,
        checks,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{enumerate_region, RegionSpec};

    fn setup() -> (CubicalComplex, Cover) {
        let chi = Character::new(vec![-1, 0]).unwrap();
        let spec = RegionSpec::new(2, 2).with_f_bound(3).with_image_window(4).with_chi(chi.clone(), 0);
        let seeds = [
            EventualInjection::identity(2),
            EventualInjection::transposition_tau(1, 2).unwrap(),
            EventualInjection::transposition_tau(2, 2).unwrap(),
        ];
        let x = enumerate_region(&seeds, &spec).unwrap();
        let c = cover_pieces(&x, &chi).unwrap();
        (x, c)
    }

    #[test]
    fn pieces_cover_and_label() {
        let (x, c) = setup();
        assert_eq!(c.rays, vec![1]);
        assert!(c.membership.iter().all(|m| m.len() == 1));
        let total: usize = c.pieces.iter().map(|p| p.vertices.len()).sum();
        assert_eq!(total, x.vertex_count());
        assert_eq!(c.pieces[0].label(), "Y1.0");
    }

    #[test]
    fn n2_nerve_is_disconnected() {
        let (x, c) = setup();
        let l = nerve(&c).unwrap();
        let shape = nerve_shape(&c, &l).unwrap();
        assert!(shape.ok(1));
        assert!(shape.vertices >= 2);
        let w = sphere_witness(&x, &c, &l).unwrap();
        assert!(w.germ_certificate && w.injective);
        assert!(w.nerve_top_betti >= 1);
        let sn = strong_nerve_hypotheses(&x, &c, &l, 1).unwrap();
        assert!(sn.all_pass);
    }

    #[test]
    fn uncovered_vertices_are_reported() {
        let spec = RegionSpec::new(2, 2).with_f_bound(1);
        let x = enumerate_region(&[EventualInjection::identity(2)], &spec).unwrap();
        let err = cover_pieces(&x, &Character::new(vec![-1, 0]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotACover(_)));
    }
}
