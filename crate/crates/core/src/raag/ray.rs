use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{BallCube, DevelopedBall, GeometryError, GroupElement, Letter, Raag, WallKey};
use crate::graph::{bit, VertexSet};

/// Largest horizon accepted by ray computations.
pub const MAX_HORIZON: usize = 1024;

fn check_horizon(h: usize) -> Result<(), GeometryError> {
    if h > MAX_HORIZON {
        Err(GeometryError::HorizonExceeded {
            horizon: h,
            limit: MAX_HORIZON,
        })
    } else {
        Ok(())
    }
}

fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// The ray `base · u p p p ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicRay {
    pub base: GroupElement,
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayJson {
    pub base: String,
    pub prefix: String,
    pub period: String,
}

impl PeriodicRay {
    pub fn new(base: GroupElement, prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self, GeometryError> {
        if period.is_empty() {
            return Err(GeometryError::InvalidRay("empty period".into()));
        }
        Ok(PeriodicRay { base, prefix, period })
    }

    /// Parse a ray from words for its base, prefix and period.
    pub fn parse(raag: &Raag, base: &str, prefix: &str, period: &str) -> Result<Self, GeometryError> {
        Self::new(raag.parse(base)?, raag.parse_word(prefix)?, raag.parse_word(period)?)
    }

    pub fn to_json(&self, raag: &Raag) -> RayJson {
        RayJson {
            base: raag.format(&self.base),
            prefix: raag.format_word(&self.prefix),
            period: raag.format_word(&self.period),
        }
    }

    pub fn from_json(raag: &Raag, j: &RayJson) -> Result<Self, GeometryError> {
        Self::parse(raag, &j.base, &j.prefix, &j.period)
    }

    pub fn letter(&self, t: usize) -> Letter {
        if t < self.prefix.len() {
            self.prefix[t]
        } else {
            self.period[(t - self.prefix.len()) % self.period.len()]
        }
    }

    /// The first `n` letters.
    pub fn word(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|t| self.letter(t)).collect()
    }

    /// Vertices at parameters `0..=n`.
    pub fn points(&self, raag: &Raag, n: usize) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.base.clone());
        for t in 0..n {
            let next = raag.mul_letter(&out[t], self.letter(t));
            out.push(next);
        }
        out
    }

    fn check_length(&self, horizon: usize) -> usize {
        horizon.max(self.prefix.len() + 4 * self.period.len())
    }

    /// Check that the ray is geodesic up to the horizon (and at least four
    /// periods past the prefix).
    pub fn validate(&self, raag: &Raag, horizon: usize) -> Result<(), GeometryError> {
        check_horizon(horizon)?;
        let w = self.word(self.check_length(horizon));
        if raag.reduced_length(&w) != w.len() {
            return Err(GeometryError::InvalidRay(format!(
                "{} is not geodesic",
                raag.format_word(&w)
            )));
        }
        Ok(())
    }

    /// No two consecutive letters commute, so every turn is a corner of
    /// angle at least π/2 in the link.
    pub fn is_straight(&self, raag: &Raag, horizon: usize) -> bool {
        let w = self.word(self.check_length(horizon));
        w.windows(2).all(|p| !raag.commute(p[0], p[1]))
    }

    fn walls(&self, raag: &Raag, pts: &[GroupElement]) -> Vec<WallKey> {
        (0..pts.len() - 1).map(|t| raag.wall_key(&pts[t], self.letter(t))).collect()
    }
}

/// Bounded answer to whether two rays are asymptotic or meet at a right
/// angle or more.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleVerdict {
    Parallel,
    RightAngleOrMore,
    Undetermined,
}

impl Raag {
    /// Compare two rays out to `horizon`.
    ///
    /// `Parallel`: every wall the first ray crosses in `[H/2, H)` is crossed
    /// by the second within `2H`, and the distance from the second ray to
    /// the first is constant at period boundaries in `[H, 2H]`.
    /// `RightAngleOrMore`: some wall crossed by the first ray before `H/2` is
    /// never crossed by the second within `2H`, and the nearest point of the
    /// first ray to the second stays fixed over `[H, 2H]`.
    pub fn ray_angle_class(&self, r1: &PeriodicRay, r2: &PeriodicRay, horizon: usize) -> Result<AngleVerdict, GeometryError> {
        check_horizon(2 * horizon)?;
        r1.validate(self, 2 * horizon)?;
        r2.validate(self, 2 * horizon)?;
        let h = horizon.max(2);
        let p1 = r1.points(self, 3 * h);
        let p2 = r2.points(self, 2 * h);
        let w1 = r1.walls(self, &p1);
        let w2: HashSet<WallKey> = r2.walls(self, &p2).into_iter().collect();

        let nearest = |t: usize| -> (usize, usize) {
            let mut best = (usize::MAX, 0);
            for (s, q) in p1.iter().enumerate() {
                let d = self.distance(&p2[t], q);
                if d < best.0 {
                    best = (d, s);
                }
            }
            best
        };
        let late = r2.prefix.len().max(h);
        let samples: Vec<usize> = (late..=2 * h)
            .filter(|&t| t >= r2.prefix.len() && (t - r2.prefix.len()) % r2.period.len() == 0)
            .collect();
        let near: Vec<(usize, usize)> = samples.iter().map(|&t| nearest(t)).collect();

        let follows = w1[h / 2..h].iter().all(|w| w2.contains(w));
        let steady_distance = !near.is_empty() && near.iter().all(|n| n.0 == near[0].0);
        if follows && steady_distance {
            return Ok(AngleVerdict::Parallel);
        }
        let escapes = w1[..h / 2].iter().any(|w| !w2.contains(w));
        let all_near: Vec<usize> = (h..=2 * h).map(|t| nearest(t).1).collect();
        if escapes && all_near.iter().all(|&s| s == all_near[0]) {
            return Ok(AngleVerdict::RightAngleOrMore);
        }
        Ok(AngleVerdict::Undetermined)
    }

    /// The bi-infinite line `base · u · p^Z` extending a ray backwards.
    pub fn mirror_ray(&self, r: &PeriodicRay, horizon: usize) -> Result<MirrorLine, GeometryError> {
        check_horizon(horizon)?;
        r.validate(self, horizon)?;
        // the segment from parameter -H to H reads p^(2H)
        let reps = (2 * horizon).div_ceil(r.period.len()).max(2);
        let w: Vec<Letter> = r.period.iter().copied().cycle().take(reps * r.period.len()).collect();
        if self.reduced_length(&w) != w.len() {
            return Err(GeometryError::NotGeodesic(self.format_word(&w)));
        }
        let line = MirrorLine {
            base: r.base.clone(),
            prefix: r.prefix.clone(),
            period: r.period.clone(),
        };
        Ok(line)
    }
}

/// The line through `base · u` with period `p` in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorLine {
    pub base: GroupElement,
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl MirrorLine {
    /// Word from `base` to the point with parameter `t`.
    pub fn offset(&self, t: i64) -> Vec<Letter> {
        let mut w = self.prefix.clone();
        let n = t.unsigned_abs() as usize;
        if t >= 0 {
            w.extend(self.period.iter().copied().cycle().take(n));
        } else {
            w.extend(invert(&self.period).into_iter().cycle().take(n));
        }
        w
    }

    pub fn point(&self, raag: &Raag, t: i64) -> GroupElement {
        raag.mul_word(&self.base, &self.offset(t))
    }
}

/// A generating direction of an orthant or half-flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    Ray(PeriodicRay),
    Line(MirrorLine),
}

impl Direction {
    fn offset(&self, t: i64) -> Option<Vec<Letter>> {
        match self {
            Direction::Ray(r) => (t >= 0).then(|| r.word(t as usize)),
            Direction::Line(l) => Some(l.offset(t)),
        }
    }

    fn is_line(&self) -> bool {
        matches!(self, Direction::Line(_))
    }

    fn prefix_len(&self) -> usize {
        match self {
            Direction::Ray(r) => r.prefix.len(),
            Direction::Line(l) => l.prefix.len(),
        }
    }
}

/// A product of rays and lines sharing a base vertex, restricted to a ball
/// and checked to carry the ℓ¹ metric of its parameter lattice.
#[derive(Clone, Debug)]
pub struct Orthant {
    pub base: GroupElement,
    pub directions: Vec<Direction>,
    /// Lattice parameters to ball vertices.
    pub points: BTreeMap<Vec<i64>, usize>,
    /// Unit cubes of the lattice, as ball cubes.
    pub cells: Vec<BallCube>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrthantJson {
    pub base: String,
    pub rays: Vec<RayJson>,
    pub lines: Vec<bool>,
    pub points: Vec<(Vec<i64>, String)>,
    pub cell_counts: Vec<usize>,
}

impl Orthant {
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.points.values().copied().collect()
    }

    /// Whether every vertex of `other` is a vertex of `self`.
    pub fn contains(&self, other: &Orthant) -> bool {
        let mine = self.vertex_set();
        other.points.values().all(|v| mine.contains(v))
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        let mut c = vec![self.points.len()];
        for q in &self.cells {
            let d = q.dim();
            if c.len() <= d {
                c.resize(d + 1, 0);
            }
            c[d] += 1;
        }
        c
    }

    pub fn to_json(&self, ball: &DevelopedBall) -> OrthantJson {
        let raag = ball.raag();
        OrthantJson {
            base: raag.format(&self.base),
            rays: self
                .directions
                .iter()
                .map(|d| match d {
                    Direction::Ray(r) => r.to_json(raag),
                    Direction::Line(l) => RayJson {
                        base: raag.format(&l.base),
                        prefix: raag.format_word(&l.prefix),
                        period: raag.format_word(&l.period),
                    },
                })
                .collect(),
            lines: self.directions.iter().map(Direction::is_line).collect(),
            points: self
                .points
                .iter()
                .map(|(n, &v)| (n.clone(), raag.format(ball.vertex(v))))
                .collect(),
            cell_counts: self.cell_counts(),
        }
    }

    fn build(ball: &DevelopedBall, base: GroupElement, directions: Vec<Direction>) -> Result<Self, GeometryError> {
        let raag = ball.raag();
        let bound = (ball.radius()
            + raag.distance(ball.center(), &base)
            + directions.iter().map(Direction::prefix_len).sum::<usize>()) as i64;
        let k = directions.len();
        let mut points = BTreeMap::new();
        let mut n = vec![0i64; k];
        // enumerate every lattice vector with |n|_1 <= bound
        fn rec(
            i: usize,
            budget: i64,
            n: &mut Vec<i64>,
            dirs: &[Direction],
            f: &mut dyn FnMut(&[i64]),
        ) {
            if i == dirs.len() {
                f(n);
                return;
            }
            let lo = if dirs[i].is_line() { -budget } else { 0 };
            for t in lo..=budget {
                n[i] = t;
                rec(i + 1, budget - t.abs(), n, dirs, f);
            }
            n[i] = 0;
        }
        rec(0, bound, &mut n, &directions, &mut |n: &[i64]| {
            let w: Vec<Letter> = n
                .iter()
                .zip(&directions)
                .flat_map(|(&t, d)| d.offset(t).expect("lattice respects direction ranges"))
                .collect();
            if let Some(v) = ball.index_of(&raag.mul_word(&base, &w)) {
                points.insert(n.to_vec(), v);
            }
        });

        let mut o = Orthant {
            base,
            directions,
            points,
            cells: Vec::new(),
        };
        o.verify(ball)?;
        o.cells = o.unit_cubes(ball)?;
        Ok(o)
    }

    /// ℓ¹ law for every pair of lattice points, and closure under the
    /// intervals between points at distance 2 (local convexity).
    fn verify(&self, ball: &DevelopedBall) -> Result<(), GeometryError> {
        let pts: Vec<(&Vec<i64>, usize)> = self.points.iter().map(|(n, &v)| (n, v)).collect();
        let members: HashSet<usize> = pts.iter().map(|p| p.1).collect();
        if members.len() != pts.len() {
            return Err(GeometryError::SpanObstructed("lattice points coincide".into()));
        }
        let raag = ball.raag();
        let walls: Vec<Vec<u32>> = pts.iter().map(|p| ball.walls_of(p.1)).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let l1: i64 = pts[i].0.iter().zip(pts[j].0).map(|(a, b)| (a - b).abs()).sum();
                let sep = sorted_symmetric_difference(&walls[i], &walls[j]);
                if sep as i64 != l1 {
                    return Err(GeometryError::SpanObstructed(format!(
                        "{} and {} are {} apart, expected {}",
                        raag.format(ball.vertex(pts[i].1)),
                        raag.format(ball.vertex(pts[j].1)),
                        sep,
                        l1
                    )));
                }
                if l1 == 2 {
                    if let Ok(iv) = ball.interval(pts[i].1, pts[j].1) {
                        if let Some(z) = iv.iter().find(|z| !members.contains(z)) {
                            return Err(GeometryError::SpanObstructed(format!(
                                "not convex: geodesic through {}",
                                raag.format(ball.vertex(*z))
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn unit_cubes(&self, ball: &DevelopedBall) -> Result<Vec<BallCube>, GeometryError> {
        let k = self.directions.len();
        let mut cells = BTreeSet::new();
        for n in self.points.keys() {
            for dirs in 1usize..1 << k {
                let corner = |mask: usize| -> Option<usize> {
                    let mut m = n.clone();
                    for (i, x) in m.iter_mut().enumerate() {
                        if mask & dirs & (1 << i) != 0 {
                            *x += 1;
                        }
                    }
                    self.points.get(&m).copied()
                };
                let corners: Option<Vec<usize>> = (0..1usize << k)
                    .filter(|m| m & !dirs == 0)
                    .map(corner)
                    .collect();
                let Some(corners) = corners else { continue };
                cells.insert(cube_from_corners(ball, &corners, dirs)?);
            }
        }
        Ok(cells.into_iter().collect())
    }
}

fn sorted_symmetric_difference(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                n += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                n += 1;
                j += 1;
            }
        }
    }
    n + (a.len() - i) + (b.len() - j)
}

/// The ball cube with the given corners, listed by subsets of the set bits
/// of `dirs` in increasing mask order.
fn cube_from_corners(ball: &DevelopedBall, corners: &[usize], dirs: usize) -> Result<BallCube, GeometryError> {
    let raag = ball.raag();
    let masks: Vec<usize> = (0..=dirs).filter(|m| m & !dirs == 0).collect();
    let c0 = corners[0];
    let mut clique: VertexSet = 0;
    let mut inverse: VertexSet = 0;
    for i in 0..usize::BITS as usize {
        if dirs & (1 << i) == 0 {
            continue;
        }
        let pos = masks.iter().position(|&m| m == 1 << i).expect("unit mask present");
        let target = corners[pos];
        let l = raag
            .letters()
            .find(|&l| ball.step(c0, l) == Some(target))
            .ok_or_else(|| GeometryError::SpanObstructed("unit step is not an edge".into()))?;
        if clique & bit(l.generator()) != 0 {
            return Err(GeometryError::SpanObstructed("repeated generator in a unit cube".into()));
        }
        clique |= bit(l.generator());
        if l.is_inverse() {
            inverse |= bit(l.generator());
        }
    }
    let cube = ball
        .cube_at(c0, clique, inverse)
        .map_err(|_| GeometryError::SpanObstructed("unit square is not a cube of X".into()))?;
    let expected: BTreeSet<usize> = corners.iter().copied().collect();
    let actual: BTreeSet<usize> = ball.cube_corners(cube.base, cube.clique).into_iter().flatten().collect();
    if expected != actual {
        return Err(GeometryError::SpanObstructed("lattice cell does not match a cube".into()));
    }
    Ok(cube)
}

impl DevelopedBall {
    /// The orthant spanned by rays from a common base.
    pub fn span_orthant(&self, rays: &[PeriodicRay], horizon: usize) -> Result<Orthant, GeometryError> {
        let raag = self.raag();
        let Some(first) = rays.first() else {
            return Err(GeometryError::SpanObstructed("no rays".into()));
        };
        for r in rays {
            if r.base != first.base {
                return Err(GeometryError::SpanObstructed("rays must share a base".into()));
            }
            r.validate(raag, horizon)?;
        }
        for (i, r1) in rays.iter().enumerate() {
            for r2 in &rays[i + 1..] {
                let (l1, l2) = (r1.letter(0), r2.letter(0));
                if l1.generator() == l2.generator() || !raag.commute(l1, l2) {
                    return Err(GeometryError::SpanObstructed(format!(
                        "{} and {} span no square at the base",
                        raag.format_letter(l1),
                        raag.format_letter(l2)
                    )));
                }
                let v = raag.ray_angle_class(r1, r2, horizon)?;
                if v != AngleVerdict::RightAngleOrMore {
                    return Err(GeometryError::SpanObstructed(format!("rays classified {v:?}")));
                }
            }
        }
        Orthant::build(self, first.base.clone(), rays.iter().cloned().map(Direction::Ray).collect())
    }

    /// Replace direction `i` of `o` by the mirror line of its ray.
    pub fn double_orthant(&self, o: &Orthant, i: usize, horizon: usize) -> Result<Orthant, GeometryError> {
        let Some(Direction::Ray(r)) = o.directions.get(i) else {
            return Err(GeometryError::InvalidRay(format!("direction {i} is not a ray")));
        };
        let line = self.raag().mirror_ray(r, horizon)?;
        let mut dirs = o.directions.clone();
        dirs[i] = Direction::Line(line);
        Orthant::build(self, o.base.clone(), dirs)
    }
}
