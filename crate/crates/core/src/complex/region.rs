use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::cubical::CubicalComplex;
use crate::error::{Error, Result};
use crate::houghton::{Character, EventualInjection};

/// Which finite piece of `X_n` to materialise.
///
/// Besides the sublevel bound `f <= f_bound` and the optional superlevel
/// condition `chi >= chi_threshold`, vertices are confined to a window that
/// is checked ray by ray on the canonical encoding:
///
/// * `B_i <= window` (explicitly tabulated positions),
/// * `B_i + m_i <= image_window` (how far up the ray the image is irregular),
/// * `|m_i| <= translation_bound`.
///
/// All three conditions only look at one ray at a time, and a neighbour of a
/// vertex differs from it on a single ray. That makes the interior test
/// exact: a vertex is interior iff no neighbour in `X_n` passes the height
/// conditions while failing the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub n: usize,
    pub f_bound: u64,
    pub chi: Option<Character>,
    pub chi_threshold: i64,
    pub window: usize,
    pub image_window: usize,
    pub translation_bound: i64,
}

impl RegionSpec {
    /// `f <= 3n - 3`, no character, all windows equal to `window`.
    pub fn new(n: usize, window: usize) -> Self {
        RegionSpec {
            n,
            f_bound: (3 * n).saturating_sub(3) as u64,
            chi: None,
            chi_threshold: 0,
            window,
            image_window: window,
            translation_bound: window as i64,
        }
    }

    pub fn with_f_bound(mut self, q: u64) -> Self {
        self.f_bound = q;
        self
    }

    pub fn with_chi(mut self, chi: Character, threshold: i64) -> Self {
        self.chi = Some(chi);
        self.chi_threshold = threshold;
        self
    }

    /// Sets the image window and widens the translation bound so that it
    /// does not bind on its own.
    pub fn with_image_window(mut self, p: usize) -> Self {
        self.image_window = p;
        self.translation_bound = self.window.max(p) as i64;
        self
    }

    pub fn with_translation_bound(mut self, t: i64) -> Self {
        self.translation_bound = t;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 16 {
            return Err(Error::InvalidParameter(format!("n = {} outside 1..=16", self.n)));
        }
        if self.window == 0 || self.image_window == 0 {
            return Err(Error::InvalidParameter("windows must be at least 1".into()));
        }
        if self.translation_bound < 0 {
            return Err(Error::InvalidParameter("translation bound must be >= 0".into()));
        }
        if let Some(chi) = &self.chi {
            chi.require_nonzero()?;
            if chi.n() != self.n {
                return Err(Error::Dimension {
                    expected: self.n,
                    found: chi.n(),
                });
            }
        }
        Ok(())
    }

    /// `f` and `chi` conditions.
    pub fn admits_height(&self, v: &EventualInjection) -> bool {
        v.deficiency() <= self.f_bound
            && self
                .chi
                .as_ref()
                .is_none_or(|c| c.eval(v).is_ok_and(|x| x >= self.chi_threshold))
    }

    pub fn admits_ray(&self, v: &EventualInjection, ray: usize) -> bool {
        let b = v.support_bound(ray);
        let m = v.translations()[ray - 1];
        b <= self.window && v.image_extent(ray) <= self.image_window as i64 && m.abs() <= self.translation_bound
    }

    pub fn admits_window(&self, v: &EventualInjection) -> bool {
        (1..=self.n).all(|r| self.admits_ray(v, r))
    }

    pub fn admits(&self, v: &EventualInjection) -> bool {
        v.n() == self.n && self.admits_window(v) && self.admits_height(v)
    }

    /// Every neighbour of `v` in `X_n` that passes the height conditions
    /// also passes the window, i.e. the link of `v` in the region equals its
    /// link in the untruncated sublevel/superlevel complex.
    pub fn is_interior(&self, v: &EventualInjection) -> bool {
        neighbours(v).all(|(ray, w)| !self.admits_height(&w) || self.admits_ray(&w, ray))
    }
}

/// `(changed ray, neighbour)` for all up- and down-neighbours in `X_n`.
pub(crate) fn neighbours(v: &EventualInjection) -> impl Iterator<Item = (usize, EventualInjection)> + '_ {
    let missing = v.missing_points();
    (1..=v.n()).flat_map(move |i| {
        let up = std::iter::once((i, v.raised(i)));
        let downs: Vec<_> = missing
            .iter()
            .filter_map(|&p| v.lowered(i, p).map(|w| (i, w)))
            .collect();
        up.chain(downs)
    })
}

/// Breadth-first closure of `seeds` under up- and down-edges inside the
/// region described by `spec`, sealed as the full subcomplex on the vertices
/// found.
pub fn enumerate_region(seeds: &[EventualInjection], spec: &RegionSpec) -> Result<CubicalComplex> {
    enumerate_region_capped(seeds, spec, None)
}

/// As [`enumerate_region`], giving up with `RegionTooLarge` once more than
/// `cap` vertices have been found.
pub fn enumerate_region_capped(
    seeds: &[EventualInjection],
    spec: &RegionSpec,
    cap: Option<usize>,
) -> Result<CubicalComplex> {
    spec.validate()?;
    if seeds.is_empty() {
        return Err(Error::BadSeed("no seeds given".into()));
    }
    for s in seeds {
        if s.n() != spec.n {
            return Err(Error::Dimension {
                expected: spec.n,
                found: s.n(),
            });
        }
        if !spec.admits(s) {
            return Err(Error::BadSeed(format!("{s} lies outside the region")));
        }
    }
    let mut seen: HashSet<EventualInjection> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<EventualInjection> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for (_, w) in neighbours(&v) {
            if !seen.contains(&w) && spec.admits(&w) {
                seen.insert(w.clone());
                queue.push_back(w);
                if cap.is_some_and(|c| seen.len() > c) {
                    return Err(Error::RegionTooLarge(cap.unwrap_or(0)));
                }
            }
        }
    }
    CubicalComplex::full_on_vertices(spec.n, seen.into_iter().collect(), Some(spec.clone()))
}

/// Every vertex admitted by `spec`, connected to the seeds or not. Finite
/// because the window bounds each ray's table and translation.
pub fn enumerate_window(spec: &RegionSpec) -> Result<CubicalComplex> {
    spec.validate()?;
    let mut found = Vec::new();
    window_candidates(spec, &mut |v| {
        if spec.admits(&v) {
            found.push(v);
        }
    });
    CubicalComplex::full_on_vertices(spec.n, found, Some(spec.clone()))
}

/// Calls `emit` on every canonical injection whose rays satisfy the window
/// conditions (height conditions are left to the caller).
fn window_candidates(spec: &RegionSpec, emit: &mut dyn FnMut(EventualInjection)) {
    let n = spec.n;
    // per-ray shapes (B_i, m_i)
    let shapes: Vec<(usize, i64)> = (0..=spec.window)
        .flat_map(|b| {
            (-spec.translation_bound..=spec.translation_bound)
                .filter(move |&m| b as i64 + m >= 0)
                .map(move |m| (b, m))
        })
        .filter(|&(b, m)| b as i64 + m <= spec.image_window as i64)
        .collect();
    let mut choice = vec![0usize; n];
    loop {
        let trans: Vec<i64> = choice.iter().map(|&c| shapes[c].1).collect();
        let bounds: Vec<usize> = choice.iter().map(|&c| shapes[c].0).collect();
        fill_tables(&trans, &bounds, emit);
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            choice[k] += 1;
            if choice[k] < shapes.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Enumerates all injective tables with the given shape whose tails are
/// disjoint from the listed images, keeping canonical results only.
fn fill_tables(trans: &[i64], bounds: &[usize], emit: &mut dyn FnMut(EventualInjection)) {
    let n = trans.len();
    // images not produced by translated tails: positions 1..=B_j+m_j on ray j
    let free: Vec<crate::houghton::RayPoint> = (0..n)
        .flat_map(|j| {
            (1..=(bounds[j] as i64 + trans[j]).max(0) as u64).map(move |y| crate::houghton::RayPoint::new(j + 1, y))
        })
        .collect();
    let slots: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, bounds[i])).collect();
    let mut used = vec![false; free.len()];
    let mut picked: Vec<usize> = Vec::with_capacity(slots.len());
    fn rec(
        depth: usize,
        slots: &[usize],
        free: &[crate::houghton::RayPoint],
        used: &mut [bool],
        picked: &mut Vec<usize>,
        trans: &[i64],
        bounds: &[usize],
        emit: &mut dyn FnMut(EventualInjection),
    ) {
        if depth == slots.len() {
            let mut rows: Vec<Vec<crate::houghton::RayPoint>> = vec![Vec::new(); trans.len()];
            for (s, &p) in slots.iter().zip(picked.iter()) {
                rows[*s].push(free[p]);
            }
            if let Ok(phi) = EventualInjection::from_table(trans.to_vec(), rows) {
                if phi.support_bounds() == bounds {
                    emit(phi);
                }
            }
            return;
        }
        for p in 0..free.len() {
            if !used[p] {
                used[p] = true;
                picked.push(p);
                rec(depth + 1, slots, free, used, picked, trans, bounds, emit);
                picked.pop();
                used[p] = false;
            }
        }
    }
    rec(0, &slots, &free, &mut used, &mut picked, trans, bounds, emit);
}
