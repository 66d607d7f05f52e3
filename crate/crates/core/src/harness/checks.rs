use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use super::config::{Check, Resolved};
use super::fixtures::run_fixtures;
use super::report::CheckRecord;
use crate::complex::{CubicalComplex, SimplicialComplex, VertexId};
use crate::error::Result;
use crate::houghton::{Character, EventualInjection};
use crate::morse::{
    ascending_link, blanket_components, blanket_intersections, blanket_mask, cover_pieces, cube_rule_violations,
    descending_link, germ_violations, intersection_acyclicity, is_join_of_parts, is_link_complete,
    morse_gap_violations, nerve, nerve_shape, ray_germ_invariant, sphere_witness, strong_nerve_hypotheses, Cover,
};
use crate::topology::{homology_through, HomologyResult};

/// Shared state for one run.
pub struct Context<'a> {
    pub cfg: &'a Resolved,
    pub region: &'a CubicalComplex,
    pub chi: Option<&'a Character>,
    pub cover: Option<std::result::Result<(Cover, SimplicialComplex), String>>,
}

impl<'a> Context<'a> {
    pub fn new(cfg: &'a Resolved, region: &'a CubicalComplex) -> Self {
        let chi = cfg.chi.as_ref();
        let wants_cover = cfg.checks.iter().any(|c| matches!(c, Check::Cover | Check::Nerve | Check::StrongNerve));
        let cover = match chi {
            Some(c) if wants_cover => Some(
                cover_pieces(region, c)
                    .and_then(|cov| Ok((nerve(&cov)?, cov)))
                    .map(|(l, cov)| (cov, l))
                    .map_err(|e| e.to_string()),
            ),
            _ => None,
        };
        Context { cfg, region, chi, cover }
    }

    fn interior(&self) -> Vec<VertexId> {
        self.region.vertex_ids().filter(|&v| self.region.is_interior(v)).collect()
    }

    fn boundary_count(&self) -> usize {
        self.region.vertex_count() - self.region.interior_count()
    }

    fn enc(&self, v: VertexId) -> String {
        self.region.vertex(v).to_string()
    }
}

fn betti_json(h: &HomologyResult) -> serde_json::Value {
    json!({
        "betti": h.betti,
        "torsion": h.torsion.iter().map(|t| t.iter().map(|d| d.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Limit on example lists in reports.
const EXAMPLES: usize = 5;

pub fn run_check(check: Check, ctx: &Context) -> CheckRecord {
    let out = match check {
        Check::Fixtures => fixtures(),
        Check::FlagLinks => flag_links(ctx),
        Check::BlanketConvexity => blanket_convexity(ctx),
        Check::BlanketIntersections => blanket_intersection_check(ctx),
        Check::DescendingLinks => descending_links(ctx),
        Check::AscendingLinks => ascending_links(ctx),
        Check::MorseGap => morse_gap(ctx),
        Check::Germ => germ(ctx),
        Check::Cover => cover(ctx),
        Check::Nerve => nerve_check(ctx),
        Check::StrongNerve => strong_nerve(ctx),
    };
    out.unwrap_or_else(|e| CheckRecord::failed(check.name(), &e.to_string()))
}

fn fixtures() -> Result<CheckRecord> {
    let table = run_fixtures()?;
    let mut r = CheckRecord::new("fixtures", table.iter().all(|f| f.matches));
    r.checked = table.len();
    r.degrees_checked = vec![0, 1, 2];
    r.details = json!({ "table": table });
    Ok(r)
}

/// Links of interior vertices are flag. Vertices whose link is the whole
/// link in `X_n` are counted separately.
fn flag_links(ctx: &Context) -> Result<CheckRecord> {
    let x = ctx.region;
    let rows: Vec<(VertexId, bool, bool)> = ctx
        .interior()
        .par_iter()
        .map(|&v| Ok((v, x.link(v)?.complex.is_flag(), is_link_complete(x, v)?)))
        .collect::<Result<_>>()?;
    let bad: Vec<String> = rows.iter().filter(|r| !r.1).map(|r| ctx.enc(r.0)).collect();
    let complete = rows.iter().filter(|r| r.2).count();
    let mut r = CheckRecord::new("flag_links", bad.is_empty());
    r.checked = rows.len();
    r.skipped_boundary = ctx.boundary_count();
    r.metrics.insert("non_flag".into(), bad.len() as i64);
    r.details = json!({
        "non_flag": bad.len(),
        "link_complete": complete,
        "examples": bad.iter().take(EXAMPLES).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n).map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect()
}

fn blanket_convexity(ctx: &Context) -> Result<CheckRecord> {
    let x = ctx.region;
    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut checked = 0;
    for k in nonempty_subsets(x.n()) {
        let mask = blanket_mask(x, &k)?;
        let verts: Vec<VertexId> = x.vertex_ids().filter(|&v| mask[v.index()] && x.is_interior(v)).collect();
        let bad: Vec<VertexId> = verts
            .par_iter()
            .filter_map(|&v| match x.is_locally_full(&mask, v) {
                Ok(true) => None,
                _ => Some(v),
            })
            .collect();
        checked += verts.len();
        all_ok &= bad.is_empty();
        rows.push(json!({
            "k": k,
            "blankets": blanket_components(x, &k)?.len(),
            "vertices_checked": verts.len(),
            "not_locally_full": bad.iter().take(EXAMPLES).map(|&v| ctx.enc(v)).collect::<Vec<_>>(),
        }));
    }
    let mut r = CheckRecord::new("blanket_convexity", all_ok);
    r.checked = checked;
    r.skipped_boundary = ctx.boundary_count();
    r.details = json!({ "per_k": rows });
    Ok(r)
}

fn blanket_intersection_check(ctx: &Context) -> Result<CheckRecord> {
    let x = ctx.region;
    let subsets = nonempty_subsets(x.n());
    let mut pairs = Vec::new();
    for (a, k1) in subsets.iter().enumerate() {
        for k2 in &subsets[a + 1..] {
            pairs.push((k1.clone(), k2.clone()));
        }
    }
    let results: Vec<_> = pairs
        .par_iter()
        .map(|(k1, k2)| blanket_intersections(x, k1, k2).map(|s| (k1.clone(), k2.clone(), s)))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let (mut interior_total, mut bad_interior, mut bad_boundary, mut split) = (0usize, 0usize, 0usize, 0usize);
    for (k1, k2, s) in &results {
        let interior: Vec<_> = s.iter().filter(|i| i.interior_vertices > 0).collect();
        let bad = interior.iter().filter(|i| !i.in_exactly_one()).count();
        let boundary_bad = s.iter().filter(|i| i.interior_vertices == 0 && !i.in_exactly_one()).count();
        let interior_split = interior.iter().filter(|i| !i.interior_connected()).count();
        interior_total += interior.len();
        bad_interior += bad;
        bad_boundary += boundary_bad;
        split += interior_split;
        rows.push(json!({
            "k1": k1,
            "k2": k2,
            "intersections": s.len(),
            "interior_intersections": interior.len(),
            "violations": bad,
            "boundary_only_split": boundary_bad,
            "interior_part_split": interior_split,
        }));
    }
    // An intersection meeting exactly one union-blanket is that blanket,
    // hence connected. Connectivity of its interior vertices alone depends
    // on the window and is only logged.
    let mut r = CheckRecord::new("blanket_intersections", bad_interior == 0);
    r.checked = interior_total;
    r.skipped_boundary = ctx.boundary_count();
    r.metrics.insert("violations".into(), bad_interior as i64);
    r.metrics.insert("interior_part_split".into(), split as i64);
    r.details = json!({ "pairs": rows, "boundary_only_split": bad_boundary, "interior_part_split": split });
    Ok(r)
}

/// Pure-`f` descending links of interior vertices above `2n - 1` are
/// nonempty and reduced-acyclic through degree `n - 2`.
fn descending_links(ctx: &Context) -> Result<CheckRecord> {
    let x = ctx.region;
    let n = x.n();
    let threshold = 2 * n as u64 - 1;
    let top = n - 2;
    let verts: Vec<VertexId> = ctx.interior().into_iter().filter(|&v| x.vertex(v).deficiency() > threshold).collect();
    if verts.is_empty() {
        return Ok(CheckRecord::skipped(
            "descending_links",
            &format!("no interior vertex with f > {threshold}"),
        ));
    }
    let rows: Vec<(VertexId, bool)> = verts
        .par_iter()
        .map(|&v| {
            let d = descending_link(x, None, v)?;
            let h = homology_through(&d.complex.chain_complex()?, true, top)?;
            Ok((v, !d.complex.is_empty() && h.acyclic_through(top)))
        })
        .collect::<Result<_>>()?;
    let bad: Vec<String> = rows.iter().filter(|r| !r.1).map(|r| ctx.enc(r.0)).collect();
    let mut per_f: BTreeMap<u64, usize> = BTreeMap::new();
    for &v in &verts {
        *per_f.entry(x.vertex(v).deficiency()).or_default() += 1;
    }
    let mut r = CheckRecord::new("descending_links", bad.is_empty());
    r.checked = verts.len();
    r.degrees_checked = (0..=top as i64).collect();
    r.skipped_boundary = ctx.boundary_count();
    r.metrics.insert("failures".into(), bad.len() as i64);
    r.details = json!({
        "f_threshold": threshold,
        "checked_per_f": per_f,
        "failures": bad.iter().take(EXAMPLES).collect::<Vec<_>>(),
    });
    Ok(r)
}

/// `(chi, f)`-ascending links of interior vertices are nonempty and
/// reduced-acyclic through degree `m(chi) - 2`; the join splitting is
/// logged.
fn ascending_links(ctx: &Context) -> Result<CheckRecord> {
    let x = ctx.region;
    let chi = ctx.chi.expect("resolved config has a character");
    let m = chi.m_of_chi()?;
    let top = m as i64 - 2;
    let verts = ctx.interior();
    let rows: Vec<(VertexId, bool, bool)> = verts
        .par_iter()
        .map(|&v| {
            let a = ascending_link(x, Some(chi), v)?;
            let ok = !a.complex.is_empty()
                && (top < 0 || homology_through(&a.complex.chain_complex()?, true, top as usize)?.acyclic_through(top as usize));
            Ok((v, ok, is_join_of_parts(&a)))
        })
        .collect::<Result<_>>()?;
    let bad: Vec<String> = rows.iter().filter(|r| !r.1).map(|r| ctx.enc(r.0)).collect();
    let joins = rows.iter().filter(|r| r.2).count();
    let mut r = CheckRecord::new("ascending_links", bad.is_empty());
    r.checked = rows.len();
    r.degrees_checked = (-1..=top).collect();
    r.skipped_boundary = ctx.boundary_count();
    r.metrics.insert("failures".into(), bad.len() as i64);
    r.details = json!({
        "m_chi": m,
        "join_of_parts": joins,
        "failures": bad.iter().take(EXAMPLES).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn morse_gap(ctx: &Context) -> Result<CheckRecord> {
    let x = ctx.region;
    let chi = ctx.chi.expect("resolved config has a character");
    let gaps = morse_gap_violations(x, chi)?;
    let cubes = cube_rule_violations(x);
    let edges = x.cube_counts().get(1).copied().unwrap_or(0);
    let mut r = CheckRecord::new("morse_gap", gaps.is_empty() && cubes.is_empty());
    r.checked = edges;
    r.details = json!({ "gap_violations": gaps.len(), "cube_rule_violations": cubes.len() });
    Ok(r)
}

/// Ray germs are constant along edges in other directions, and separate
/// the identity from `tau_i`; the two certificates must agree with the
/// blanket components.
fn germ(ctx: &Context) -> Result<CheckRecord> {
    let x = ctx.region;
    let n = x.n();
    let rays: Vec<usize> = match ctx.chi {
        Some(c) => c.negative_rays()?,
        None => (1..=n).collect(),
    };
    let id = EventualInjection::identity(n);
    let mut rows = Vec::new();
    let mut ok = true;
    for &i in &rays {
        let violations = germ_violations(x, i)?;
        let tau = EventualInjection::transposition_tau(i, n)?;
        let differ = ray_germ_invariant(&id, i)? != ray_germ_invariant(&tau, i)?;
        let separated = match (x.id_of(&id), x.id_of(&tau)) {
            (Some(a), Some(b)) => {
                let bl = blanket_components(x, &[i])?;
                let which = |v: VertexId| bl.iter().position(|b| b.vertices.binary_search(&v).is_ok());
                Some(which(a) != which(b))
            }
            _ => None,
        };
        ok &= violations.is_empty() && differ && separated != Some(false);
        rows.push(json!({
            "ray": i,
            "violations": violations.len(),
            "germs_differ": differ,
            "distinct_blankets": separated,
        }));
    }
    let mut r = CheckRecord::new("germ", ok);
    r.checked = x.cube_counts().get(1).copied().unwrap_or(0);
    r.details = json!({ "rays": rows });
    Ok(r)
}

fn cover_of<'c>(ctx: &'c Context, name: &str) -> std::result::Result<&'c (Cover, SimplicialComplex), CheckRecord> {
    match &ctx.cover {
        Some(Ok(c)) => Ok(c),
        Some(Err(e)) => Err(CheckRecord::failed(name, e)),
        None => Err(CheckRecord::failed(name, "cover was not computed")),
    }
}

fn cover(ctx: &Context) -> Result<CheckRecord> {
    let (cov, _) = match cover_of(ctx, "cover") {
        Ok(c) => c,
        Err(r) => return Ok(r),
    };
    let mut union = vec![false; ctx.region.vertex_count()];
    for p in &cov.pieces {
        for v in &p.vertices {
            union[v.index()] = true;
        }
    }
    let covered = union.iter().filter(|b| **b).count();
    let mut per_type: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &cov.pieces {
        *per_type.entry(p.piece_type).or_default() += 1;
    }
    let mut r = CheckRecord::new("cover", covered == ctx.region.vertex_count());
    r.checked = ctx.region.vertex_count();
    r.metrics.insert("pieces".into(), cov.pieces.len() as i64);
    r.details = json!({
        "m_chi": cov.m(),
        "type_rays": cov.rays,
        "pieces_per_type": per_type,
        "covered_vertices": covered,
    });
    Ok(r)
}

fn nerve_check(ctx: &Context) -> Result<CheckRecord> {
    let (cov, l) = match cover_of(ctx, "nerve") {
        Ok(c) => c,
        Err(r) => return Ok(r),
    };
    let m = cov.m();
    let shape = nerve_shape(cov, l)?;
    let reduced = homology_through(&l.chain_complex()?, true, m - 1)?;
    let witness = sphere_witness(ctx.region, cov, l);
    let label = |p: usize| cov.pieces[p].label();
    let (witness_ok, witness_json) = match &witness {
        Ok(w) => (
            w.injective && w.germ_certificate,
            json!({
                "poles": w.poles.iter().map(|&(a, b)| [label(a), label(b)]).collect::<Vec<_>>(),
                "facets": w.facets.iter().map(|f| f.iter().map(|&p| label(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "germ_certificate": w.germ_certificate,
                "injective_in_top_degree": w.injective,
            }),
        ),
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    let nontrivial = !reduced.vanishes_in(m - 1);
    let mut r = CheckRecord::new("nerve", shape.ok(m) && witness_ok && nontrivial);
    r.checked = shape.vertices;
    r.degrees_checked = vec![m as i64 - 1];
    r.metrics.insert("nerve_vertices".into(), shape.vertices as i64);
    r.metrics.insert("nerve_components".into(), l.components().len() as i64);
    r.metrics.insert("witness".into(), witness_ok as i64);
    r.metrics.insert("nerve_top_betti".into(), reduced.betti.get(m - 1).copied().unwrap_or(0) as i64);
    r.details = json!({
        "m_chi": m,
        "vertices": shape.vertices,
        "dimension": shape.dimension,
        "same_type_edges": shape.same_type_edges,
        "components": l.components().len(),
        "reduced_homology": betti_json(&reduced),
        "witness": witness_json,
    });
    Ok(r)
}

/// Strong-nerve hypotheses with `N = max(m - 1, 1)`, the stronger
/// good-pieces condition (every intersection `(m - 2)`-acyclic), and the
/// conclusion: `H_k(region) = H_k(nerve)` for `k < N` and
/// `rank H_N(region) >= rank H_N(nerve)`.
fn strong_nerve(ctx: &Context) -> Result<CheckRecord> {
    let (cov, l) = match cover_of(ctx, "strong_nerve") {
        Ok(c) => c,
        Err(r) => return Ok(r),
    };
    let x = ctx.region;
    let m = cov.m();
    let big_n = (m.max(2)) - 1;
    let hyp = strong_nerve_hypotheses(x, cov, l, big_n)?;
    let good = intersection_acyclicity(x, cov, l, m, |_| m as i64 - 2)?;
    let good_ok = good.iter().all(|c| c.pass);
    let hx = homology_through(&x.chain_complex()?, true, big_n)?;
    let hl = homology_through(&l.chain_complex()?, true, big_n)?;
    let low_iso = (0..big_n).all(|k| {
        hx.betti.get(k) == hl.betti.get(k) && hx.torsion.get(k).is_none_or(Vec::is_empty) == hl.torsion.get(k).is_none_or(Vec::is_empty)
    });
    let top_ok = hx.betti.get(big_n).copied().unwrap_or(0) >= hl.betti.get(big_n).copied().unwrap_or(0);
    let conclusion = low_iso && top_ok;
    let torsion_seen = hx.has_torsion() || hl.has_torsion();
    let mut r = CheckRecord::new("strong_nerve", hyp.all_pass && good_ok && conclusion);
    r.checked = hyp.checks.len() + good.len();
    r.degrees_checked = (0..=big_n as i64).collect();
    r.metrics.insert("hypothesis_failures".into(), hyp.checks.iter().filter(|c| !c.pass).count() as i64);
    r.metrics.insert("good_piece_failures".into(), good.iter().filter(|c| !c.pass).count() as i64);
    r.metrics.insert("conclusion".into(), conclusion as i64);
    r.metrics.insert("region_components".into(), hx.betti.first().map_or(0, |b| *b as i64 + 1));
    r.details = json!({
        "nerve_parameter": big_n,
        "intersections_checked": hyp.checks.len(),
        "hypothesis_failures": hyp.checks.iter().filter(|c| !c.pass).take(EXAMPLES).collect::<Vec<_>>(),
        "good_piece_intersections": good.len(),
        "good_piece_failures": good.iter().filter(|c| !c.pass).take(EXAMPLES).collect::<Vec<_>>(),
        "region_reduced_homology": betti_json(&hx),
        "nerve_reduced_homology": betti_json(&hl),
        "low_degrees_isomorphic": low_iso,
        "top_degree_rank_bound": top_ok,
        "torsion_observed": torsion_seen,
    });
    Ok(r)
}
