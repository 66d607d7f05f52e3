//! Classical complexes with known integral homology.

use num_bigint::BigInt;
use serde::Serialize;

use crate::complex::{CubicalComplex, SimplicialComplex};
use crate::error::Result;
use crate::houghton::EventualInjection;
use crate::topology::{homology, ChainComplex};

pub struct Fixture {
    pub name: &'static str,
    pub chain: ChainComplex,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<String>>,
    pub expected_betti: Vec<usize>,
    pub expected_torsion: Vec<Vec<i64>>,
    pub matches: bool,
}

fn simplicial(n: usize, facets: &[&[usize]]) -> Result<ChainComplex> {
    let labels = (0..n).map(|i| format!("{i}")).collect();
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    SimplicialComplex::from_facets(labels, &facets)?.chain_complex()
}

/// Boundary of the 3-cube spanned by `1, t_1, ..., t_1 t_2 t_3` in `X_3`.
pub fn hollow_cube() -> Result<CubicalComplex> {
    let verts: Vec<EventualInjection> = (0u32..8)
        .map(|mask| (0..3).filter(|b| mask >> b & 1 == 1).fold(EventualInjection::identity(3), |p, b| p.raised(b + 1)))
        .collect();
    let full = CubicalComplex::full_on_vertices(3, verts.clone(), None)?;
    let cubes: Vec<(EventualInjection, u32)> = (1..=2)
        .flat_map(|d| full.cubes(d).iter().map(|c| (full.vertex(c.base).clone(), c.dirs)))
        .collect();
    CubicalComplex::from_cubes(3, verts, &cubes)
}

/// Six-vertex projective plane.
pub const RP2: [[usize; 3]; 10] = [
    [0, 1, 3],
    [0, 1, 5],
    [0, 2, 3],
    [0, 2, 4],
    [0, 4, 5],
    [1, 2, 4],
    [1, 2, 5],
    [1, 3, 4],
    [2, 3, 5],
    [3, 4, 5],
];

/// Seven-vertex torus: `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus_facets() -> Vec<[usize; 3]> {
    (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

pub fn fixtures() -> Result<Vec<Fixture>> {
    let rp2: Vec<&[usize]> = RP2.iter().map(|f| &f[..]).collect();
    let torus = torus_facets();
    let torus: Vec<&[usize]> = torus.iter().map(|f| &f[..]).collect();
    Ok(vec![
        Fixture {
            name: "point",
            chain: simplicial(1, &[])?,
            betti: vec![1],
            torsion: vec![vec![]],
        },
        Fixture {
            name: "two_points",
            chain: simplicial(2, &[])?,
            betti: vec![2],
            torsion: vec![vec![]],
        },
        Fixture {
            name: "circle",
            chain: simplicial(3, &[&[0, 1], &[1, 2], &[0, 2]])?,
            betti: vec![1, 1],
            torsion: vec![vec![], vec![]],
        },
        Fixture {
            name: "triangle",
            chain: simplicial(3, &[&[0, 1, 2]])?,
            betti: vec![1, 0, 0],
            torsion: vec![vec![], vec![], vec![]],
        },
        Fixture {
            name: "hollow_cube",
            chain: hollow_cube()?.chain_complex()?,
            betti: vec![1, 0, 1],
            torsion: vec![vec![], vec![], vec![]],
        },
        Fixture {
            name: "projective_plane",
            chain: simplicial(6, &rp2)?,
            betti: vec![1, 0, 0],
            torsion: vec![vec![], vec![2], vec![]],
        },
        Fixture {
            name: "torus",
            chain: simplicial(7, &torus)?,
            betti: vec![1, 2, 1],
            torsion: vec![vec![], vec![], vec![]],
        },
    ])
}

pub fn run_fixtures() -> Result<Vec<FixtureOutcome>> {
    fixtures()?
        .into_iter()
        .map(|f| {
            let h = homology(&f.chain, false)?;
            let expected: Vec<Vec<BigInt>> = f.torsion.iter().map(|t| t.iter().map(|&d| BigInt::from(d)).collect()).collect();
            Ok(FixtureOutcome {
                name: f.name.to_string(),
                matches: h.betti == f.betti && h.torsion == expected,
                betti: h.betti,
                torsion: h.torsion.iter().map(|t| t.iter().map(|d| d.to_string()).collect()).collect(),
                expected_betti: f.betti,
                expected_torsion: f.torsion,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_match() {
        for f in run_fixtures().unwrap() {
            assert!(f.matches, "{f:?}");
        }
    }
}
