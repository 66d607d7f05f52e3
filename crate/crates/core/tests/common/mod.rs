//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's enumeration, reduction or link code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use houghton_core::houghton::{EventualInjection, RayPoint};
use rand::seq::SliceRandom;
use rand::Rng;

/// An injection as a finite image table per ray plus translations; the
/// table may carry redundant trailing entries until `canon` trims them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inj {
    pub m: Vec<i64>,
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl Inj {
    pub fn identity(n: usize) -> Self {
        Inj { m: vec![0; n], rows: vec![Vec::new(); n] }
    }

    pub fn from_lib(v: &EventualInjection) -> Self {
        Inj {
            m: v.translations().to_vec(),
            rows: (1..=v.n()).map(|i| v.row(i).iter().map(|p| (p.ray, p.pos)).collect()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn at(&self, ray: usize, k: u64) -> (usize, u64) {
        let row = &self.rows[ray - 1];
        if (k as usize) <= row.len() {
            row[k as usize - 1]
        } else {
            (ray, (k as i64 + self.m[ray - 1]) as u64)
        }
    }

    pub fn canon(mut self) -> Self {
        for i in 0..self.n() {
            while let Some(&last) = self.rows[i].last() {
                let b = self.rows[i].len() as i64;
                if last == (i + 1, (b + self.m[i]) as u64) {
                    self.rows[i].pop();
                } else {
                    break;
                }
            }
        }
        self
    }

    /// Height up to which every point of every ray is examined.
    fn horizon(&self) -> u64 {
        let most = self.rows.iter().map(Vec::len).max().unwrap_or(0) as i64;
        let shift = self.m.iter().map(|m| m.abs()).max().unwrap_or(0);
        (most + shift + 3) as u64
    }

    /// Points on no ray's image, found by listing the image of a large box.
    pub fn missing(&self) -> Vec<(usize, u64)> {
        let h = self.horizon();
        let mut image = HashSet::new();
        for ray in 1..=self.n() {
            for k in 1..=2 * h + 2 {
                image.insert(self.at(ray, k));
            }
        }
        let mut out = Vec::new();
        for ray in 1..=self.n() {
            for y in 1..=h {
                if !image.contains(&(ray, y)) {
                    out.push((ray, y));
                }
            }
        }
        out
    }

    pub fn f(&self) -> usize {
        self.missing().len()
    }

    /// `self ∘ t_i`, read off pointwise.
    pub fn up(&self, i: usize) -> Self {
        let len = self.rows[i - 1].len() as u64;
        let mut next = self.clone();
        next.rows[i - 1] = (1..=len.saturating_sub(1)).map(|k| self.at(i, k + 1)).collect();
        next.m[i - 1] += 1;
        next.canon()
    }

    /// The `psi` with `psi ∘ t_i = self` sending `(i, 1)` to `p`.
    pub fn down(&self, i: usize, p: (usize, u64)) -> Self {
        let mut next = self.clone();
        next.rows[i - 1].insert(0, p);
        next.m[i - 1] -= 1;
        next.canon()
    }

    /// `other = self ∘ t_i` as maps, compared on a large box.
    pub fn is_up_of(&self, other: &Inj, i: usize) -> bool {
        let h = self.horizon().max(other.horizon()) + 2;
        (1..=self.n()).all(|r| {
            (1..=h).all(|k| other.at(r, k) == if r == i { self.at(r, k + 1) } else { self.at(r, k) })
        })
    }
}

#[derive(Clone, Debug)]
pub struct Bounds {
    pub q: usize,
    pub w: usize,
    pub p: i64,
    pub t: i64,
    pub chi: Option<Vec<i64>>,
}

impl Bounds {
    pub fn admits(&self, v: &Inj) -> bool {
        let window = (0..v.n()).all(|i| {
            let b = v.rows[i].len();
            b <= self.w && b as i64 + v.m[i] <= self.p && v.m[i].abs() <= self.t
        });
        let chi_ok = self
            .chi
            .as_ref()
            .is_none_or(|c| c.iter().zip(&v.m).map(|(a, b)| a * b).sum::<i64>() >= 0);
        window && chi_ok && v.f() <= self.q
    }
}

/// Breadth-first closure of the seeds inside the bounds.
pub fn closure(seeds: &[Inj], b: &Bounds) -> BTreeSet<Inj> {
    let mut seen: BTreeSet<Inj> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Inj> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        let mut next = Vec::new();
        for i in 1..=v.n() {
            next.push(v.up(i));
            for p in v.missing() {
                next.push(v.down(i, p));
            }
        }
        for w in next {
            if b.admits(&w) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Cubes per dimension: a `d`-cube is a vertex with `d` rays all of whose
/// `t`-corners are present.
pub fn cube_counts(set: &BTreeSet<Inj>, n: usize) -> Vec<usize> {
    let mut counts = vec![0; n + 1];
    for v in set {
        for mask in 0u32..1 << n {
            let mut ok = true;
            for sub in 0u32..1 << n {
                if sub & !mask != 0 {
                    continue;
                }
                let mut c = v.clone();
                for i in 1..=n {
                    if sub >> (i - 1) & 1 == 1 {
                        c = c.up(i);
                    }
                }
                if !set.contains(&c) {
                    ok = false;
                    break;
                }
            }
            if ok {
                counts[mask.count_ones() as usize] += 1;
            }
        }
    }
    while counts.len() > 1 && counts[counts.len() - 1] == 0 {
        counts.pop();
    }
    counts
}

/// Edges by definition: pairs `(v, v ∘ t_i)` found by searching the set.
pub fn edge_count(set: &BTreeSet<Inj>) -> usize {
    let mut edges = 0;
    for v in set {
        for i in 1..=v.n() {
            let u = v.up(i);
            if set.contains(&u) {
                assert!(v.is_up_of(&u, i));
                edges += 1;
            }
        }
    }
    edges
}

/// A uniformly shaped random canonical injection: per ray a table length
/// `B <= w` and translation, then an injective assignment of the table
/// entries to the points not hit by any tail.
pub fn random_injection(rng: &mut impl Rng, n: usize, w: usize) -> EventualInjection {
    loop {
        let mut m = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for _ in 0..n {
            let bi = rng.gen_range(0..=w) as i64;
            let mi = rng.gen_range(-bi..=w as i64);
            b.push(bi as usize);
            m.push(mi);
        }
        let mut free: Vec<RayPoint> = (0..n)
            .flat_map(|j| (1..=(b[j] as i64 + m[j]).max(0) as u64).map(move |y| RayPoint::new(j + 1, y)))
            .collect();
        let slots: usize = b.iter().sum();
        if slots > free.len() {
            continue;
        }
        free.shuffle(rng);
        let mut it = free.into_iter();
        let rows = b.iter().map(|&bi| it.by_ref().take(bi).collect()).collect();
        return EventualInjection::from_table(m, rows).expect("random table is injective");
    }
}

/// Invariant factors by textbook elementary reduction on dense `i128`
/// matrices: bring the least nonzero entry to the pivot, clear its row and
/// column by division, and fold in any entry the pivot fails to divide.
pub fn naive_invariant_factors(a: &[Vec<i64>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for r in a.iter_mut() {
            r.swap(t, bj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                    }
                    None => break,
                }
            } else {
                // a smaller remainder now sits in the pivot row or column
                let mut best = (t, t);
                for i in t..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for r in a.iter_mut() {
                    r.swap(t, best.1);
                }
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}
