//! Eventual injections of `[n] x N`, i.e. elements of the monoid `M_n`.
//!
//! An injection is stored as one translation amount per ray plus, for every
//! ray, the explicit images of the positions `1..=B_i` (the support bound of
//! that ray). Beyond `B_i` the ray is mapped by pure translation
//! `(i, x) -> (i, x + m_i)`. The encoding is canonical: each `B_i` is the
//! least bound for which this holds, so two encodings are equal exactly when
//! the underlying functions are.
//!
//! Maps act on the right: `a.compose(&b)` applies `a` first and then `b`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(ray, pos)` of `[n] x N`, rays and positions both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RayPoint {
    pub ray: usize,
    pub pos: u64,
}

impl RayPoint {
    pub const fn new(ray: usize, pos: u64) -> Self {
        RayPoint { ray, pos }
    }
}

impl fmt::Display for RayPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.ray, self.pos)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventualInjection {
    translations: Vec<i64>,
    /// `rows[i][x - 1]` is the image of `(i + 1, x)` for `x <= B_{i+1}`.
    rows: Vec<Vec<RayPoint>>,
}

impl EventualInjection {
    pub fn identity(n: usize) -> Self {
        EventualInjection {
            translations: vec![0; n],
            rows: vec![Vec::new(); n],
        }
    }

    /// Builds an injection from per-ray translations and explicit image
    /// tables, validating injectivity and canonicalizing the support bounds.
    pub fn from_table(translations: Vec<i64>, rows: Vec<Vec<RayPoint>>) -> Result<Self> {
        if translations.len() != rows.len() {
            return Err(Error::Dimension {
                expected: translations.len(),
                found: rows.len(),
            });
        }
        if translations.is_empty() {
            return Err(Error::InvalidInjection("at least one ray is required".into()));
        }
        let phi = EventualInjection { translations, rows };
        phi.validate()?;
        Ok(phi.canonicalized())
    }

    /// Builds an injection from a translation vector and a finite map of
    /// exceptional values. Positions below the largest listed position of a
    /// ray that are not listed default to the translated value.
    pub fn from_exceptions<I>(translations: Vec<i64>, exceptions: I) -> Result<Self>
    where
        I: IntoIterator<Item = (RayPoint, RayPoint)>,
    {
        let n = translations.len();
        let mut listed: Vec<Vec<(u64, RayPoint)>> = vec![Vec::new(); n];
        for (from, to) in exceptions {
            check_ray(from.ray, n)?;
            if from.pos == 0 {
                return Err(Error::InvalidInjection(format!("position 0 in {from}")));
            }
            listed[from.ray - 1].push((from.pos, to));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, mut entries) in listed.into_iter().enumerate() {
            entries.sort();
            if entries.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidInjection(format!(
                    "duplicate exception on ray {}",
                    i + 1
                )));
            }
            let bound = entries.last().map_or(0, |e| e.0);
            let mut row = Vec::with_capacity(bound as usize);
            let mut it = entries.into_iter().peekable();
            for x in 1..=bound {
                match it.peek() {
                    Some(&(pos, to)) if pos == x => {
                        row.push(to);
                        it.next();
                    }
                    _ => {
                        let y = x as i64 + translations[i];
                        if y < 1 {
                            return Err(Error::InvalidInjection(format!(
                                "position ({},{x}) has no default image",
                                i + 1
                            )));
                        }
                        row.push(RayPoint::new(i + 1, y as u64));
                    }
                }
            }
            rows.push(row);
        }
        Self::from_table(translations, rows)
    }

    /// The generator `t_i`: shifts ray `i` up by one and fixes everything else.
    pub fn generator_t(i: usize, n: usize) -> Result<Self> {
        check_ray(i, n)?;
        let mut phi = Self::identity(n);
        phi.translations[i - 1] = 1;
        Ok(phi)
    }

    /// The transposition `tau_i` swapping `(i,1)` and `(i,2)`.
    pub fn transposition_tau(i: usize, n: usize) -> Result<Self> {
        check_ray(i, n)?;
        let mut phi = Self::identity(n);
        phi.rows[i - 1] = vec![RayPoint::new(i, 2), RayPoint::new(i, 1)];
        Ok(phi)
    }

    pub fn n(&self) -> usize {
        self.translations.len()
    }

    pub fn translations(&self) -> &[i64] {
        &self.translations
    }

    pub fn support_bounds(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn support_bound(&self, ray: usize) -> usize {
        self.rows[ray - 1].len()
    }

    /// Explicit images of ray `ray` at positions `1..=B_ray`.
    pub fn row(&self, ray: usize) -> &[RayPoint] {
        &self.rows[ray - 1]
    }

    /// The exception table, sorted by domain point.
    pub fn exceptions(&self) -> impl Iterator<Item = (RayPoint, RayPoint)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(x, &to)| (RayPoint::new(i + 1, x as u64 + 1), to))
        })
    }

    /// `B_i + m_i`: every position of ray `i` above this value is the image of
    /// a translated point of ray `i`.
    pub fn image_extent(&self, ray: usize) -> i64 {
        self.rows[ray - 1].len() as i64 + self.translations[ray - 1]
    }

    pub fn apply(&self, p: RayPoint) -> RayPoint {
        assert!(
            p.ray >= 1 && p.ray <= self.n() && p.pos >= 1,
            "point {p} outside the domain of an injection on {} rays",
            self.n()
        );
        let row = &self.rows[p.ray - 1];
        if (p.pos as usize) <= row.len() {
            row[p.pos as usize - 1]
        } else {
            RayPoint::new(p.ray, (p.pos as i64 + self.translations[p.ray - 1]) as u64)
        }
    }

    /// `self` followed by `second`.
    pub fn compose(&self, second: &EventualInjection) -> Result<Self> {
        if self.n() != second.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: second.n(),
            });
        }
        let n = self.n();
        let mut rows = Vec::with_capacity(n);
        let mut translations = Vec::with_capacity(n);
        for i in 0..n {
            let m1 = self.translations[i];
            let b1 = self.rows[i].len() as i64;
            let b2 = second.rows[i].len() as i64;
            // past this bound, self lands in the translated tail of second
            let bound = b1.max(b2 - m1).max(0) as u64;
            let row = (1..=bound)
                .map(|x| second.apply(self.apply(RayPoint::new(i + 1, x))))
                .collect();
            rows.push(row);
            translations.push(m1 + second.translations[i]);
        }
        let phi = EventualInjection { translations, rows }.canonicalized();
        debug_assert!(phi.validate().is_ok());
        Ok(phi)
    }

    /// `t_ray ∘ self` (apply `t_ray`, then `self`). Equal to
    /// `generator_t(ray, n).compose(self)`, computed by dropping the first
    /// entry of the ray.
    pub fn raised(&self, ray: usize) -> Self {
        let mut phi = self.clone();
        let i = ray - 1;
        if !phi.rows[i].is_empty() {
            phi.rows[i].remove(0);
        }
        phi.translations[i] += 1;
        phi.canonicalize_ray(i);
        phi
    }

    /// The unique `psi` with `t_ray ∘ psi = self` and `psi(ray, 1) = point`,
    /// or `None` when `point` lies in the image of `self`.
    pub fn lowered(&self, ray: usize, point: RayPoint) -> Option<Self> {
        if !self.is_missing(point) {
            return None;
        }
        let mut phi = self.clone();
        let i = ray - 1;
        phi.rows[i].insert(0, point);
        phi.translations[i] -= 1;
        phi.canonicalize_ray(i);
        Some(phi)
    }

    /// All `psi` with `self = t_ray ∘ psi`, ordered by the missing point
    /// assigned to `(ray, 1)`.
    pub fn down_options(&self, ray: usize) -> Result<Vec<Self>> {
        check_ray(ray, self.n())?;
        Ok(self
            .missing_points()
            .into_iter()
            .filter_map(|p| self.lowered(ray, p))
            .collect())
    }

    /// Points of `[n] x N` outside the image, sorted.
    pub fn missing_points(&self) -> Vec<RayPoint> {
        let mut images: Vec<RayPoint> = self.rows.iter().flatten().copied().collect();
        images.sort_unstable();
        let mut out = Vec::new();
        for ray in 1..=self.n() {
            let extent = self.image_extent(ray);
            for pos in 1..=extent.max(0) as u64 {
                let p = RayPoint::new(ray, pos);
                if images.binary_search(&p).is_err() {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn is_missing(&self, p: RayPoint) -> bool {
        if p.ray == 0 || p.ray > self.n() || p.pos == 0 {
            return false;
        }
        if p.pos as i64 > self.image_extent(p.ray) {
            return false;
        }
        !self.rows.iter().flatten().any(|&q| q == p)
    }

    /// `f(phi)`: the number of points missing from the image.
    pub fn deficiency(&self) -> u64 {
        let extents: i64 = (1..=self.n()).map(|r| self.image_extent(r)).sum();
        let listed: usize = self.rows.iter().map(Vec::len).sum();
        (extents - listed as i64) as u64
    }

    /// `chi_i(phi) = m_i`.
    pub fn chi_component(&self, ray: usize) -> Result<i64> {
        check_ray(ray, self.n())?;
        Ok(self.translations[ray - 1])
    }

    pub fn is_bijection(&self) -> bool {
        self.deficiency() == 0
    }

    fn canonicalize_ray(&mut self, i: usize) {
        let m = self.translations[i];
        while let Some(&last) = self.rows[i].last() {
            let b = self.rows[i].len() as i64;
            if b + m >= 1 && last == RayPoint::new(i + 1, (b + m) as u64) {
                self.rows[i].pop();
            } else {
                break;
            }
        }
    }

    fn canonicalized(mut self) -> Self {
        for i in 0..self.n() {
            self.canonicalize_ray(i);
        }
        self
    }

    pub fn is_canonical(&self) -> bool {
        self.clone().canonicalized() == *self
    }

    /// Checks well-definedness and global injectivity of the encoded map.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut images = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if (row.len() as i64) + self.translations[i] < 0 {
                return Err(Error::InvalidInjection(format!(
                    "ray {} translates past position 1 (B={}, m={})",
                    i + 1,
                    row.len(),
                    self.translations[i]
                )));
            }
            for &p in row {
                if p.ray == 0 || p.ray > n || p.pos == 0 {
                    return Err(Error::InvalidInjection(format!("image {p} outside [n] x N")));
                }
                images.push(p);
            }
        }
        for &p in &images {
            // positions past the extent are already hit by the translated tail
            if p.pos as i64 > self.image_extent(p.ray) {
                return Err(Error::InvalidInjection(format!(
                    "exception image {p} collides with the translated tail"
                )));
            }
        }
        images.sort_unstable();
        if let Some(w) = images.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInjection(format!("image {} hit twice", w[0])));
        }
        Ok(())
    }
}

fn check_ray(ray: usize, n: usize) -> Result<()> {
    if ray == 0 || ray > n {
        Err(Error::RayIndex { index: ray, n })
    } else {
        Ok(())
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for EventualInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exc = self
            .exceptions()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect::<Vec<_>>()
            .join(";");
        write!(
            f,
            "n={}; m={}; B={}; exc={}",
            self.n(),
            join(&self.translations),
            join(self.support_bounds()),
            exc
        )
    }
}

fn parse_point(s: &str) -> Option<RayPoint> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some(RayPoint::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl FromStr for EventualInjection {
    type Err = Error;

    /// Parses the canonical text encoding. Non-canonical or incomplete
    /// tables are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInjection(format!("{msg} in {s:?}"));
        let mut parts = s.trim().splitn(4, ';').map(str::trim);
        let field = |part: Option<&str>, key: &str| -> Result<String> {
            part.and_then(|p| p.strip_prefix(key))
                .map(str::to_string)
                .ok_or_else(|| bad(&format!("missing field {key}")))
        };
        let n: usize = field(parts.next(), "n=")?
            .parse()
            .map_err(|_| bad("bad n"))?;
        let list = |v: String| -> Result<Vec<i64>> {
            v.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad("bad integer")))
                .collect()
        };
        let m = list(field(parts.next(), "m=")?)?;
        let bounds = list(field(parts.next(), "B=")?)?;
        let exc = field(parts.next(), "exc=")?;
        if m.len() != n || bounds.len() != n || n == 0 {
            return Err(bad("vector length does not match n"));
        }
        let mut rows: Vec<Vec<Option<RayPoint>>> = bounds
            .iter()
            .map(|&b| {
                if b < 0 {
                    Err(bad("negative support bound"))
                } else {
                    Ok(vec![None; b as usize])
                }
            })
            .collect::<Result<_>>()?;
        for entry in exc.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let (a, b) = entry.split_once("->").ok_or_else(|| bad("bad exception"))?;
            let from = parse_point(a).ok_or_else(|| bad("bad point"))?;
            let to = parse_point(b).ok_or_else(|| bad("bad point"))?;
            check_ray(from.ray, n)?;
            let slot = rows[from.ray - 1]
                .get_mut((from.pos as usize).wrapping_sub(1))
                .ok_or_else(|| bad("exception outside support bound"))?;
            if slot.replace(to).is_some() {
                return Err(bad("duplicate exception"));
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("incomplete exception table"))?;
        let phi = EventualInjection {
            translations: m,
            rows,
        };
        phi.validate()?;
        if !phi.is_canonical() {
            return Err(bad("encoding is not canonical"));
        }
        Ok(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, n: usize) -> EventualInjection {
        EventualInjection::generator_t(i, n).unwrap()
    }

    fn tau(i: usize, n: usize) -> EventualInjection {
        EventualInjection::transposition_tau(i, n).unwrap()
    }

    #[test]
    fn apply_examples() {
        let id = EventualInjection::identity(2);
        assert_eq!(id.apply(RayPoint::new(2, 5)), RayPoint::new(2, 5));
        assert_eq!(t(1, 2).apply(RayPoint::new(1, 3)), RayPoint::new(1, 4));
        assert_eq!(tau(1, 2).apply(RayPoint::new(1, 1)), RayPoint::new(1, 2));
        assert_eq!(tau(2, 2).apply(RayPoint::new(2, 2)), RayPoint::new(2, 1));
    }

    #[test]
    fn compose_examples() {
        let id = EventualInjection::identity(2);
        assert_eq!(
            t(1, 2).compose(&t(2, 2)).unwrap(),
            t(2, 2).compose(&t(1, 2)).unwrap()
        );
        assert_eq!(id.compose(&tau(1, 2)).unwrap(), tau(1, 2));
        assert_eq!(tau(1, 2).compose(&tau(1, 2)).unwrap(), id);
        assert!(matches!(
            id.compose(&EventualInjection::identity(3)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn generators() {
        assert_eq!(t(1, 2).translations(), &[1, 0]);
        assert_eq!(t(2, 3).deficiency(), 1);
        assert_eq!(t(1, 2).chi_component(2).unwrap(), 0);
        assert_eq!(t(1, 2).chi_component(1).unwrap(), 1);
        assert!(matches!(
            EventualInjection::generator_t(3, 2),
            Err(Error::RayIndex { index: 3, n: 2 })
        ));
        assert!(EventualInjection::transposition_tau(0, 2).is_err());
        let s = tau(2, 3);
        assert_eq!(s.deficiency(), 0);
        assert!((1..=3).all(|j| s.chi_component(j).unwrap() == 0));
        assert_eq!(s.exceptions().count(), 2);
    }

    #[test]
    fn deficiency_counts_missing_points() {
        assert_eq!(EventualInjection::identity(3).deficiency(), 0);
        let tt = t(1, 2).compose(&t(1, 2)).unwrap();
        assert_eq!(tt.deficiency(), 2);
        assert_eq!(
            tt.missing_points(),
            vec![RayPoint::new(1, 1), RayPoint::new(1, 2)]
        );
    }

    #[test]
    fn raised_and_lowered_agree_with_compose() {
        let phi = tau(1, 2).compose(&t(2, 2)).unwrap();
        for ray in 1..=2 {
            let up = t(ray, 2).compose(&phi).unwrap();
            assert_eq!(phi.raised(ray), up);
            for psi in up.down_options(ray).unwrap() {
                assert_eq!(t(ray, 2).compose(&psi).unwrap(), up);
            }
        }
    }

    #[test]
    fn down_options_examples() {
        let id = EventualInjection::identity(2);
        assert!(id.down_options(1).unwrap().is_empty());
        assert_eq!(t(1, 2).down_options(1).unwrap(), vec![id]);
        // t_1 misses (1,1); lowering ray 2 onto it
        let opts = t(1, 2).down_options(2).unwrap();
        assert_eq!(opts.len(), 1);
        assert_eq!(opts[0].apply(RayPoint::new(2, 1)), RayPoint::new(1, 1));
    }

    #[test]
    fn encoding_roundtrip_and_rejections() {
        let id = EventualInjection::identity(2);
        assert_eq!(id.to_string(), "n=2; m=0,0; B=0,0; exc=");
        let s = tau(1, 2).to_string();
        assert_eq!(s, "n=2; m=0,0; B=2,0; exc=(1,1)->(1,2);(1,2)->(1,1)");
        assert_eq!(s.parse::<EventualInjection>().unwrap(), tau(1, 2));
        // non-canonical: trailing entry is pure translation
        assert!("n=1; m=0; B=1; exc=(1,1)->(1,1)"
            .parse::<EventualInjection>()
            .is_err());
        // incomplete table
        assert!("n=1; m=0; B=2; exc=(1,1)->(1,2)"
            .parse::<EventualInjection>()
            .is_err());
        // non-injective
        assert!("n=2; m=0,0; B=1,1; exc=(1,1)->(1,1);(2,1)->(1,1)"
            .parse::<EventualInjection>()
            .is_err());
    }

    #[test]
    fn from_table_rejects_tail_collisions() {
        // (1,1) -> (1,3) collides with the tail image of (1,3)
        let err = EventualInjection::from_table(vec![0], vec![vec![RayPoint::new(1, 3)]]);
        assert!(err.is_err());
        // negative translation must be covered by the table
        let err = EventualInjection::from_table(vec![-1], vec![vec![]]);
        assert!(err.is_err());
        let ok = EventualInjection::from_table(vec![-1], vec![vec![RayPoint::new(1, 1)]]);
        // (1,1) -> (1,1), (1,x) -> (1,x-1) for x >= 2 is not injective
        assert!(ok.is_err());
    }
}
