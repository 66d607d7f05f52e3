use crate::complex::{submasks, Cube, CubicalComplex, Link, LinkVertex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::houghton::{Character, EventualInjection, MorseHeight};

/// `(chi(v), f(v))`. The value on non-bijections depends on the coefficient
/// representative; the pipelines pass characters in standard form.
pub fn morse_height(chi: &Character, v: &EventualInjection) -> Result<MorseHeight> {
    chi.height(v)
}

/// Height used to compare corners: `(chi, f)` lexicographically, or `f`
/// alone when no character is given.
fn key(chi: Option<&Character>, v: &EventualInjection) -> Result<(i64, u64)> {
    Ok(match chi {
        Some(c) => (c.eval(v)?, v.deficiency()),
        None => (0, v.deficiency()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

fn check(x: &CubicalComplex, chi: Option<&Character>, v: VertexId) -> Result<()> {
    if v.index() >= x.vertex_count() {
        return Err(Error::UnknownVertex(v.0));
    }
    if let Some(c) = chi {
        c.require_nonzero()?;
        if c.n() != x.n() {
            return Err(Error::Dimension {
                expected: x.n(),
                found: c.n(),
            });
        }
    }
    if !x.is_interior(v) {
        return Err(Error::BoundaryVertex(v.0));
    }
    Ok(())
}

/// Subcomplex of the link of `v` spanned by the cubes on which `v` is the
/// unique corner of least (`Min`) or greatest (`Max`) height.
fn extremal_link(x: &CubicalComplex, chi: Option<&Character>, v: VertexId, which: Extremum) -> Result<Link> {
    check(x, chi, v)?;
    let here = key(chi, x.vertex(v))?;
    x.link_filtered(v, |c: &Cube, pos: u32| {
        submasks(c.dirs).filter(|&s| s != pos).all(|s| {
            let w = x.corner(c.base, s).expect("face-closed cube");
            let k = key(chi, x.vertex(w)).expect("dimension checked");
            match which {
                Extremum::Min => k > here,
                Extremum::Max => k < here,
            }
        })
    })
}

/// Cubes at `v` whose lowest corner (for `(chi, f)`, or `f` alone) is `v`.
pub fn ascending_link(x: &CubicalComplex, chi: Option<&Character>, v: VertexId) -> Result<Link> {
    extremal_link(x, chi, v, Extremum::Min)
}

/// Cubes at `v` whose highest corner is `v`.
pub fn descending_link(x: &CubicalComplex, chi: Option<&Character>, v: VertexId) -> Result<Link> {
    extremal_link(x, chi, v, Extremum::Max)
}

/// The link of `v` in the whole of `X_n`: one `up i` per ray, one
/// `down i p` per ray and missing point, and a simplex for every set of
/// directions using distinct rays and distinct missing points.
pub fn full_link_model(v: &EventualInjection) -> Link {
    let n = v.n();
    let missing = v.missing_points();
    let mut directions: Vec<LinkVertex> = (1..=n).map(LinkVertex::Up).collect();
    for i in 1..=n {
        directions.extend(missing.iter().map(|&p| LinkVertex::Down(i, p)));
    }
    directions.sort();
    let pos = |d: &LinkVertex| directions.binary_search(d).expect("listed direction");
    let mut facets = Vec::new();
    // one choice per ray: up, or a down direction with an unused point
    fn rec(
        i: usize,
        n: usize,
        missing: &[crate::houghton::RayPoint],
        used: &mut Vec<bool>,
        acc: &mut Vec<LinkVertex>,
        out: &mut Vec<Vec<LinkVertex>>,
    ) {
        if i > n {
            out.push(acc.clone());
            return;
        }
        acc.push(LinkVertex::Up(i));
        rec(i + 1, n, missing, used, acc, out);
        acc.pop();
        for k in 0..missing.len() {
            if !used[k] {
                used[k] = true;
                acc.push(LinkVertex::Down(i, missing[k]));
                rec(i + 1, n, missing, used, acc, out);
                acc.pop();
                used[k] = false;
            }
        }
    }
    let mut maximal = Vec::new();
    rec(1, n, &missing, &mut vec![false; missing.len()], &mut Vec::new(), &mut maximal);
    for f in &maximal {
        facets.push(f.iter().map(pos).collect::<Vec<usize>>());
    }
    let complex = SimplicialComplex::from_facets(directions.iter().map(|d| d.to_string()).collect(), &facets)
        .expect("directions are indexed");
    Link { complex, directions }
}

/// The region contains every cube of `X_n` at `v`.
pub fn is_link_complete(x: &CubicalComplex, v: VertexId) -> Result<bool> {
    let here = x.link(v)?;
    let model = full_link_model(x.vertex(v));
    Ok(here.directions == model.directions && here.complex == model.complex)
}

/// Whether a `(chi, f)`-ascending link splits as the join of its up-part
/// (directions `t_i` with `a_i >= 0`) and its down-part (directions with
/// `a_i < 0`): every union of a simplex (or nothing) from each part is a
/// simplex.
pub fn is_join_of_parts(link: &Link) -> bool {
    let k = &link.complex;
    let is_up = |v: usize| matches!(link.directions[v], LinkVertex::Up(_));
    let ups: Vec<Vec<usize>> = k.faces().filter(|f| f.iter().all(|&v| is_up(v))).cloned().collect();
    let downs: Vec<Vec<usize>> = k.faces().filter(|f| f.iter().all(|&v| !is_up(v))).cloned().collect();
    ups.iter().all(|u| {
        downs.iter().all(|d| {
            let mut s = u.clone();
            s.extend(d);
            k.contains(&s)
        })
    })
}

/// The full subcomplex on `chi >= t`; `None` keeps everything.
pub fn superlevel_region(x: &CubicalComplex, chi: &Character, t: Option<i64>) -> Result<CubicalComplex> {
    chi.require_nonzero()?;
    if chi.n() != x.n() {
        return Err(Error::Dimension {
            expected: x.n(),
            found: chi.n(),
        });
    }
    let values: Vec<i64> = x.vertices().iter().map(|v| chi.eval(v)).collect::<Result<_>>()?;
    Ok(x.full_subcomplex(|v| t.is_none_or(|t| values[v.index()] >= t)))
}

/// Edges violating the Morse gap: `|Δchi| >= 1`, or `Δchi = 0` and
/// `|Δf| = 1`. With integer coefficients there should be none.
pub fn morse_gap_violations(x: &CubicalComplex, chi: &Character) -> Result<Vec<(VertexId, VertexId)>> {
    let mut bad = Vec::new();
    for (a, _, b) in x.edges() {
        let (ha, hb) = (chi.height(x.vertex(a))?, chi.height(x.vertex(b))?);
        let dchi = (hb.chi_value - ha.chi_value).abs();
        let df = hb.f_value.abs_diff(ha.f_value);
        if !(dchi >= 1 || df == 1) {
            bad.push((a, b));
        }
    }
    Ok(bad)
}

/// Cubes violating "a cube lies in `{chi_i <= 0}` iff its `f`-maximal corner
/// does" (checked for every ray `i`).
pub fn cube_rule_violations(x: &CubicalComplex) -> Vec<(Cube, usize)> {
    let mut bad = Vec::new();
    for d in 1..=x.dimension() {
        for c in x.cubes(d) {
            let top = x.corner(c.base, c.dirs).expect("face-closed cube");
            for i in 1..=x.n() {
                let all = submasks(c.dirs)
                    .all(|s| x.vertex(x.corner(c.base, s).expect("face-closed")).translations()[i - 1] <= 0);
                let top_in = x.vertex(top).translations()[i - 1] <= 0;
                if all != top_in {
                    bad.push((*c, i));
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{enumerate_region, RegionSpec};
    use crate::houghton::RayPoint;

    fn chi(v: &[i64]) -> Character {
        Character::new(v.to_vec()).unwrap()
    }

    fn region_n2() -> CubicalComplex {
        let spec = RegionSpec::new(2, 3).with_f_bound(3);
        enumerate_region(&[EventualInjection::identity(2)], &spec).unwrap()
    }

    #[test]
    fn link_model_matches_low_vertices() {
        let x = region_n2();
        let id = x.id_of(&EventualInjection::identity(2)).unwrap();
        assert!(is_link_complete(&x, id).unwrap());
        let t1 = EventualInjection::generator_t(1, 2).unwrap();
        let m = full_link_model(&t1);
        assert_eq!(m.directions.len(), 4);
        assert!(m.complex.is_flag());
        assert!(is_link_complete(&x, x.id_of(&t1).unwrap()).unwrap());
    }

    #[test]
    fn heights() {
        let c = chi(&[-1, 0]);
        let t1 = EventualInjection::generator_t(1, 2).unwrap();
        assert_eq!(morse_height(&c, &t1).unwrap(), MorseHeight { chi_value: -1, f_value: 1 });
        assert!(morse_height(&chi(&[2, 2]), &t1).is_err());
    }

    #[test]
    fn ascending_link_of_identity() {
        let x = region_n2();
        let id = x.id_of(&EventualInjection::identity(2)).unwrap();
        let asc = ascending_link(&x, Some(&chi(&[-1, 0])), id).unwrap();
        assert_eq!(asc.directions, vec![LinkVertex::Up(2)]);
        assert!(is_join_of_parts(&asc));
        let desc = descending_link(&x, None, id).unwrap();
        assert!(desc.complex.is_empty());
        let f_asc = ascending_link(&x, None, id).unwrap();
        assert_eq!(f_asc.directions, vec![LinkVertex::Up(1), LinkVertex::Up(2)]);
        assert_eq!(f_asc.complex.dimension(), Some(1));
    }

    #[test]
    fn descending_link_of_t1() {
        let x = region_n2();
        let t1 = x.id_of(&EventualInjection::generator_t(1, 2).unwrap()).unwrap();
        let d = descending_link(&x, None, t1).unwrap();
        assert_eq!(
            d.directions,
            vec![
                LinkVertex::Down(1, RayPoint::new(1, 1)),
                LinkVertex::Down(2, RayPoint::new(1, 1))
            ]
        );
        // both directions use the same missing point: no square
        assert_eq!(d.complex.dimension(), Some(0));
    }

    #[test]
    fn boundary_vertices_are_refused() {
        let x = region_n2();
        let edge = x.vertex_ids().find(|&v| !x.is_interior(v)).unwrap();
        assert_eq!(ascending_link(&x, None, edge).unwrap_err(), Error::BoundaryVertex(edge.0));
    }

    #[test]
    fn superlevels_and_gaps() {
        let x = region_n2();
        let c = chi(&[-1, 0]);
        let s = superlevel_region(&x, &c, Some(0)).unwrap();
        assert!(s.id_of(&EventualInjection::identity(2)).is_some());
        assert!(s.id_of(&EventualInjection::generator_t(1, 2).unwrap()).is_none());
        assert_eq!(superlevel_region(&x, &c, None).unwrap(), x);
        assert_eq!(superlevel_region(&x, &c, Some(100)).unwrap().vertex_count(), 0);
        assert!(morse_gap_violations(&x, &c).unwrap().is_empty());
        assert!(cube_rule_violations(&x).is_empty());
    }
}
