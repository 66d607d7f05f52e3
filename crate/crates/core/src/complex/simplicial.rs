use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::topology::{ChainComplex, IntegerMatrix};

/// A finite abstract simplicial complex. Vertices are `0..labels.len()`;
/// faces are stored as sorted vertex lists and the set is closed under
/// taking nonempty subsets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Vertices without any faces yet (not even the 0-simplices).
    pub fn with_labels(labels: Vec<String>) -> Self {
        SimplicialComplex {
            labels,
            faces: BTreeSet::new(),
        }
    }

    /// Vertices as 0-simplices plus every face of every facet.
    pub fn from_facets(labels: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let mut k = Self::with_labels(labels);
        for v in 0..k.labels.len() {
            k.faces.insert(vec![v]);
        }
        for f in facets {
            k.add_simplex(f)?;
        }
        Ok(k)
    }

    /// Adds a simplex and all of its faces.
    pub fn add_simplex(&mut self, vertices: &[usize]) -> Result<()> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Ok(());
        }
        if let Some(&bad) = s.iter().find(|&&v| v >= self.labels.len()) {
            return Err(Error::InconsistentComplex(format!("simplex uses unknown vertex {bad}")));
        }
        if s.len() > 24 {
            return Err(Error::InvalidParameter("simplex too large to close under faces".into()));
        }
        if self.faces.contains(&s) {
            return Ok(());
        }
        for mask in 1u32..(1 << s.len()) {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            self.faces.insert(face);
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.faces.contains(&s)
    }

    /// All faces in lexicographic order of their sorted vertex lists.
    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.faces.iter().filter(|f| f.len() == k + 1).cloned().collect();
        out.sort();
        out
    }

    /// Dimension, or `None` when there are no faces.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Vertices carrying a 0-simplex (a complex may list a label it does
    /// not use; such vertices are ignored everywhere).
    pub fn live_vertices(&self) -> Vec<usize> {
        self.faces.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect()
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.labels.len()];
        for f in self.faces.iter().filter(|f| f.len() == 2) {
            adj[f[0]].insert(f[1]);
            adj[f[1]].insert(f[0]);
        }
        adj
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| (f[0], f[1]))
            .collect()
    }

    /// Every clique of the 1-skeleton spans a simplex.
    pub fn is_flag(&self) -> bool {
        let adj = self.adjacency();
        // a clique is a simplex iff (clique minus its largest vertex) is a
        // simplex and the whole set is one; induct over simplices
        self.faces.iter().filter(|f| f.len() >= 2).all(|f| {
            let top = *f.last().expect("nonempty face");
            adj[top].range(top + 1..).all(|&w| {
                if !f.iter().all(|u| adj[w].contains(u)) {
                    return true;
                }
                let mut g = f.clone();
                g.push(w);
                self.faces.contains(&g)
            })
        })
    }

    /// The full subcomplex on the vertices for which `keep` holds (labels
    /// and numbering are preserved).
    pub fn full_subcomplex(&self, keep: impl Fn(usize) -> bool) -> Self {
        SimplicialComplex {
            labels: self.labels.clone(),
            faces: self
                .faces
                .iter()
                .filter(|f| f.iter().all(|&v| keep(v)))
                .cloned()
                .collect(),
        }
    }

    /// `self` is a subcomplex of `other` that contains every simplex of
    /// `other` whose vertices all lie in `self`.
    pub fn is_full_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        let live: BTreeSet<usize> = self.live_vertices().into_iter().collect();
        self.faces.is_subset(&other.faces)
            && other
                .faces
                .iter()
                .filter(|f| f.iter().all(|v| live.contains(v)))
                .all(|f| self.faces.contains(f))
    }

    /// Connected components of the 1-skeleton over live vertices, each
    /// sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.labels.len()];
        let mut out = Vec::new();
        for v in self.live_vertices() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !std::mem::replace(&mut seen[w], true) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Rank of each vertex in the orientation order (labels, then index).
    fn vertex_ranks(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]).then(a.cmp(&b)));
        let mut rank = vec![0; self.labels.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        rank
    }

    /// The `k`-simplices in chain-complex order, each listed in its
    /// orientation order.
    pub fn chain_basis(&self, k: usize) -> Vec<Vec<usize>> {
        let rank = self.vertex_ranks();
        let mut fs: Vec<Vec<usize>> = self
            .faces_of_dim(k)
            .into_iter()
            .map(|mut g| {
                g.sort_by_key(|&v| rank[v]);
                g
            })
            .collect();
        fs.sort_by_key(|f| f.iter().map(|&v| rank[v]).collect::<Vec<_>>());
        fs
    }

    /// For a subcomplex on the same labelled vertex set: per degree, the
    /// index of each chain-basis cell of `sub` in the chain basis of `self`.
    pub fn inclusion_cell_map(&self, sub: &SimplicialComplex) -> Result<Vec<Vec<usize>>> {
        if sub.labels != self.labels {
            return Err(Error::InconsistentComplex("subcomplex has different vertex labels".into()));
        }
        let Some(top) = sub.dimension() else {
            return Ok(Vec::new());
        };
        (0..=top)
            .map(|k| {
                let here: std::collections::HashMap<Vec<usize>, usize> =
                    self.chain_basis(k).into_iter().enumerate().map(|(i, f)| (f, i)).collect();
                sub.chain_basis(k)
                    .into_iter()
                    .map(|f| {
                        here.get(&f)
                            .copied()
                            .ok_or_else(|| Error::InconsistentComplex(format!("simplex {f:?} missing from the complex")))
                    })
                    .collect()
            })
            .collect()
    }

    /// Ordered simplicial chain complex. Each simplex is oriented by the
    /// lexicographic order of its vertex labels (ties by index).
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let Some(top) = self.dimension() else {
            return Ok(ChainComplex::empty());
        };
        let bases: Vec<Vec<Vec<usize>>> = (0..=top).map(|k| self.chain_basis(k)).collect();
        let index: Vec<std::collections::HashMap<Vec<usize>, usize>> = bases
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let mut key = f.clone();
                        key.sort_unstable();
                        (key, i)
                    })
                    .collect()
            })
            .collect();
        let mut boundaries = Vec::with_capacity(top);
        for k in 1..=top {
            let mut entries = Vec::new();
            for (c, f) in bases[k].iter().enumerate() {
                for drop in 0..f.len() {
                    let mut face: Vec<usize> =
                        f.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v).collect();
                    face.sort_unstable();
                    let r = index[k - 1][&face];
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    entries.push((r, c, BigInt::from(sign)));
                }
            }
            boundaries.push(IntegerMatrix::from_triplets(bases[k - 1].len(), bases[k].len(), entries)?);
        }
        ChainComplex::new(bases.iter().map(Vec::len).collect(), boundaries)
    }
}
