//! Line-based text formats for cube complexes and simplicial complexes.
//!
//! ```text
//! houghton-complex v1 n=2
//! v 0 n=2; m=0,0; B=0,0; exc=
//! v 1 n=2; m=1,0; B=0,0; exc=
//! c 0 10
//! ```
//!
//! Cube lines give the base vertex id and the direction mask as a bit
//! string with ray 1 leftmost. Only cubes of dimension at least one are
//! listed. Simplicial complexes use `v <id> <label>`, `s <ids...>` for the
//! maximal faces, and optional `label <id> type=<i> alpha=<a>` lines.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use super::cubical::{bits, submasks, CubicalComplex};
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use crate::houghton::EventualInjection;

const COMPLEX_HEADER: &str = "houghton-complex v1";
const SIMPLICIAL_HEADER: &str = "houghton-simplicial v1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn write_complex(x: &CubicalComplex) -> String {
    let mut out = format!("{COMPLEX_HEADER} n={}\n", x.n());
    for v in x.vertex_ids() {
        let _ = writeln!(out, "v {} {}", v, x.vertex(v));
    }
    for d in 1..=x.dimension() {
        for c in x.cubes(d) {
            let mask: String = (0..x.n()).map(|b| if c.dirs >> b & 1 == 1 { '1' } else { '0' }).collect();
            let _ = writeln!(out, "c {} {}", c.base, mask);
        }
    }
    out
}

/// Parses and re-validates a complex; errors carry 1-based line numbers.
pub fn read_complex(text: &str) -> Result<CubicalComplex> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let n: usize = header
        .strip_prefix(COMPLEX_HEADER)
        .and_then(|rest| rest.trim().strip_prefix("n="))
        .and_then(|n| n.parse().ok())
        .filter(|&n| (1..=16).contains(&n))
        .ok_or_else(|| parse_err(1, format!("expected `{COMPLEX_HEADER} n=<n>`")))?;
    let mut vertices: BTreeMap<u32, EventualInjection> = BTreeMap::new();
    let mut seen: HashMap<EventualInjection, usize> = HashMap::new();
    let mut cubes: Vec<(usize, u32, u32)> = Vec::new();
    for (line, l) in lines {
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (kind, rest) = l.split_once(' ').ok_or_else(|| parse_err(line, "truncated line"))?;
        match kind {
            "v" => {
                let (id, enc) = rest.split_once(' ').ok_or_else(|| parse_err(line, "vertex line needs an id and an encoding"))?;
                let id: u32 = id.parse().map_err(|_| parse_err(line, format!("bad vertex id `{id}`")))?;
                let phi: EventualInjection = enc.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
                if phi.n() != n {
                    return Err(parse_err(line, format!("vertex has {} rays, header says {n}", phi.n())));
                }
                if let Some(prev) = seen.insert(phi.clone(), line) {
                    return Err(parse_err(line, format!("vertex repeats line {prev}")));
                }
                if vertices.insert(id, phi).is_some() {
                    return Err(parse_err(line, format!("duplicate vertex id {id}")));
                }
            }
            "c" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [id, mask] = parts[..] else {
                    return Err(parse_err(line, "cube line needs a base id and a direction mask"));
                };
                let id: u32 = id.parse().map_err(|_| parse_err(line, format!("bad base id `{id}`")))?;
                if mask.len() != n || !mask.chars().all(|c| c == '0' || c == '1') {
                    return Err(parse_err(line, format!("direction mask must be {n} binary digits")));
                }
                let dirs = mask
                    .chars()
                    .enumerate()
                    .filter(|(_, c)| *c == '1')
                    .fold(0u32, |m, (b, _)| m | 1 << b);
                if dirs == 0 {
                    return Err(parse_err(line, "0-cubes are implied by vertex lines"));
                }
                cubes.push((line, id, dirs));
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    // corner and face checks, reported against the offending cube line
    let present: BTreeSet<(EventualInjection, u32)> = cubes
        .iter()
        .filter_map(|(_, id, d)| vertices.get(id).map(|v| (v.clone(), *d)))
        .collect();
    let mut list = Vec::with_capacity(cubes.len());
    for &(line, id, dirs) in &cubes {
        let base = vertices
            .get(&id)
            .ok_or_else(|| parse_err(line, format!("cube base {id} is not a declared vertex")))?;
        for s in submasks(dirs) {
            let corner = bits(s).fold(base.clone(), |phi, b| phi.raised(b + 1));
            if !seen.contains_key(&corner) {
                return Err(parse_err(line, format!("cube corner {corner} is not a vertex")));
            }
        }
        for b in bits(dirs) {
            let face = dirs & !(1 << b);
            if face == 0 {
                continue;
            }
            let top = base.raised(b + 1);
            if !present.contains(&(base.clone(), face)) || !present.contains(&(top, face)) {
                return Err(parse_err(line, "a codimension-one face of this cube is missing"));
            }
        }
        list.push((base.clone(), dirs));
    }
    CubicalComplex::from_cubes(n, vertices.into_values().collect(), &list)
}

/// Type and index attached to a nerve vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieceLabel {
    pub vertex: usize,
    pub piece_type: usize,
    pub alpha: usize,
}

pub fn write_simplicial(k: &SimplicialComplex, labels: &[PieceLabel]) -> String {
    let mut out = format!("{SIMPLICIAL_HEADER}\n");
    for (v, l) in k.labels().iter().enumerate() {
        let _ = writeln!(out, "v {v} {l}");
    }
    let faces: Vec<&Vec<usize>> = k.faces().collect();
    let all: BTreeSet<&Vec<usize>> = faces.iter().copied().collect();
    for f in &faces {
        // maximal faces only
        let maximal = !(0..k.vertex_count()).any(|w| {
            if f.contains(&w) {
                return false;
            }
            let mut g = (*f).clone();
            g.push(w);
            g.sort_unstable();
            all.contains(&g)
        });
        if maximal {
            let ids: Vec<String> = f.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "s {}", ids.join(" "));
        }
    }
    for l in labels {
        let _ = writeln!(out, "label {} type={} alpha={}", l.vertex, l.piece_type, l.alpha);
    }
    out
}

pub fn read_simplicial(text: &str) -> Result<(SimplicialComplex, Vec<PieceLabel>)> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim_end()));
    match lines.next() {
        Some((_, h)) if h.trim() == SIMPLICIAL_HEADER => {}
        _ => return Err(parse_err(1, format!("expected `{SIMPLICIAL_HEADER}`"))),
    }
    let mut names: Vec<String> = Vec::new();
    let mut facets: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut labels = Vec::new();
    for (line, l) in lines {
        if l.trim().is_empty() || l.starts_with('#') {
            continue;
        }
        let (kind, rest) = l.split_once(' ').unwrap_or((l, ""));
        match kind {
            "v" => {
                let (id, name) = rest.split_once(' ').unwrap_or((rest, ""));
                let id: usize = id.parse().map_err(|_| parse_err(line, format!("bad vertex id `{id}`")))?;
                if id != names.len() {
                    return Err(parse_err(line, format!("vertex ids must be consecutive; expected {}", names.len())));
                }
                names.push(name.to_string());
            }
            "s" => {
                let ids = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex id `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if ids.is_empty() {
                    return Err(parse_err(line, "empty simplex"));
                }
                facets.push((line, ids));
            }
            "label" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match parts[..] {
                    [id, ty, alpha] => (|| {
                        Some(PieceLabel {
                            vertex: id.parse().ok()?,
                            piece_type: ty.strip_prefix("type=")?.parse().ok()?,
                            alpha: alpha.strip_prefix("alpha=")?.parse().ok()?,
                        })
                    })(),
                    _ => None,
                };
                let label = parsed.ok_or_else(|| parse_err(line, "expected `label <id> type=<i> alpha=<a>`"))?;
                if label.vertex >= names.len() {
                    return Err(parse_err(line, format!("label for unknown vertex {}", label.vertex)));
                }
                labels.push(label);
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    let mut k = SimplicialComplex::from_facets(names, &[])?;
    for (line, f) in facets {
        k.add_simplex(&f).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok((k, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{enumerate_region, RegionSpec};

    #[test]
    fn complex_round_trip() {
        let spec = RegionSpec::new(2, 2).with_f_bound(2);
        let x = enumerate_region(&[EventualInjection::identity(2)], &spec).unwrap();
        let text = write_complex(&x);
        let y = read_complex(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(write_complex(&y), text);
    }

    #[test]
    fn corrupted_lines_are_named() {
        let spec = RegionSpec::new(2, 2).with_f_bound(1);
        let x = enumerate_region(&[EventualInjection::identity(2)], &spec).unwrap();
        let text = write_complex(&x);
        let lines: Vec<&str> = text.lines().collect();
        let first_cube = lines.iter().position(|l| l.starts_with("c ")).unwrap();
        let mut broken: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        broken[first_cube] = "c 0 1x".into();
        let err = read_complex(&broken.join("\n")).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: first_cube + 1,
                message: "direction mask must be 2 binary digits".into()
            }
        );
        assert!(matches!(read_complex("nonsense"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn simplicial_round_trip() {
        let k = SimplicialComplex::from_facets(
            vec!["a".into(), "b c".into(), "d".into()],
            &[vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let labels = vec![PieceLabel { vertex: 1, piece_type: 2, alpha: 0 }];
        let text = write_simplicial(&k, &labels);
        let (k2, l2) = read_simplicial(&text).unwrap();
        assert_eq!(k, k2);
        assert_eq!(l2, labels);
        assert!(matches!(read_simplicial("houghton-simplicial v1\ns 0 9\n"), Err(Error::Parse { line: 2, .. })));
    }
}
