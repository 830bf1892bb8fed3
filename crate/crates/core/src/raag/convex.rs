use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::{BallCube, DevelopedBall, GeometryError, GroupElement, Letter, Raag, WallId, WallKey};
use crate::graph::{bit, VertexSet};

/// The coset `rep · G(Γ')` as a subcomplex of `X(Γ)`; a standard flat when
/// `Γ'` is a clique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardSubcomplex {
    rep: GroupElement,
    subgraph: VertexSet,
}

impl StandardSubcomplex {
    /// Normalises `rep` to the minimal representative of its coset.
    pub fn new(raag: &Raag, rep: &GroupElement, subgraph: VertexSet) -> Self {
        StandardSubcomplex {
            rep: raag.coset_min(rep, subgraph),
            subgraph,
        }
    }

    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn subgraph(&self) -> VertexSet {
        self.subgraph
    }

    pub fn dim(&self) -> usize {
        self.subgraph.count_ones() as usize
    }

    pub fn contains(&self, raag: &Raag, x: &GroupElement) -> bool {
        raag.support(raag.between(&self.rep, x).word()) & !self.subgraph == 0
    }

    /// Nearest vertex to `x`, computed in the group.
    pub fn gate_of(&self, raag: &Raag, x: &GroupElement) -> GroupElement {
        let w = raag.between(&self.rep, x);
        let (p, _) = raag.split_initial(w.word(), self.subgraph);
        raag.mul_word(&self.rep, &p)
    }

    pub fn distance_to(&self, raag: &Raag, x: &GroupElement) -> usize {
        raag.distance(x, &self.gate_of(raag, x))
    }

    /// Whether the wall `key` crosses this subcomplex, i.e. is dual to one
    /// of its edges.
    pub fn crossed_by(&self, raag: &Raag, key: &WallKey) -> bool {
        if self.subgraph & bit(key.generator) == 0 {
            return false;
        }
        // key.coset · G(lk s) must meet rep · G(Γ')
        let w = raag.between(&key.coset, &self.rep);
        let (_, rest) = raag.split_initial(w.word(), raag.link(key.generator));
        let (rest, _) = raag.split_terminal(&rest, self.subgraph);
        rest.is_empty()
    }

    pub fn vertices_in(&self, ball: &DevelopedBall) -> Vec<usize> {
        let raag = ball.raag();
        (0..ball.vertex_count()).filter(|&v| self.contains(raag, ball.vertex(v))).collect()
    }

    /// Edges of the subcomplex inside the ball, as `(v, v s, s)`.
    pub fn edges_in(&self, ball: &DevelopedBall) -> Vec<(usize, usize, usize)> {
        let raag = ball.raag();
        ball.edges()
            .filter(|&(v, _, s)| self.subgraph & bit(s) != 0 && self.contains(raag, ball.vertex(v)))
            .collect()
    }

    pub fn describe(&self, raag: &Raag) -> String {
        format!("{}<{}>", raag.format(&self.rep), raag.graph().names_of(self.subgraph).join(","))
    }
}

/// Coarse intersection of two standard subcomplexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoarseIntersection {
    pub delta: usize,
    /// Ball vertices of `C1` at distance `delta` from `C2`.
    pub y1: Vec<usize>,
    pub y2: Vec<usize>,
    /// Generators spanning `Y1` and `Y2`.
    pub directions: VertexSet,
    /// `(y, gate of y on C2)` for each `y` in `y1` whose gate is in the ball.
    pub pairs: Vec<(usize, usize)>,
    /// `Y1` and `Y2` as standard subcomplexes.
    #[serde(skip)]
    pub y1_subcomplex: Option<StandardSubcomplex>,
    #[serde(skip)]
    pub y2_subcomplex: Option<StandardSubcomplex>,
}

impl DevelopedBall {
    /// Vertices of the interval `I(x, y)`: all vertices on some geodesic.
    pub fn interval(&self, x: usize, y: usize) -> Result<Vec<usize>, GeometryError> {
        let raag = self.raag();
        let target = self.vertex(y).clone();
        let mut seen: HashSet<usize> = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(z) = queue.pop_front() {
            let rest = raag.between(self.vertex(z), &target);
            for (_, l) in raag.initial_letters(rest.word()) {
                let next = self.step(z, l).ok_or_else(|| self.short("interval"))?;
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    /// The median of three vertices, after checking that the three pairwise
    /// intervals lie in the ball.
    pub fn median(&self, x: usize, y: usize, z: usize) -> Result<usize, GeometryError> {
        self.interval(x, y)?;
        self.interval(y, z)?;
        self.interval(x, z)?;
        let raag = self.raag();
        let (vx, vy, vz) = (self.vertex(x), self.vertex(y), self.vertex(z));
        let m = raag.mul(vx, &raag.meet(&raag.between(vx, vy), &raag.between(vx, vz)));
        self.require(&m)
    }

    /// Nearest vertex of `c` to `x`; the geodesics from `x` to it must stay
    /// in the ball.
    pub fn gate(&self, x: usize, c: &StandardSubcomplex) -> Result<usize, GeometryError> {
        let g = c.gate_of(self.raag(), self.vertex(x));
        let gi = self.index_of(&g).ok_or_else(|| self.short("gate"))?;
        self.interval(x, gi)?;
        Ok(gi)
    }

    /// Walls separating two vertices.
    pub fn crossing_walls(&self, x: usize, y: usize) -> Vec<WallId> {
        self.separating_walls(x, y)
    }

    /// Walls dual to the edges of `c` inside the ball.
    pub fn subcomplex_walls(&self, c: &StandardSubcomplex) -> Vec<WallId> {
        let set: BTreeSet<WallId> = c
            .edges_in(self)
            .into_iter()
            .map(|(v, _, s)| self.edge_wall(v, Letter::new(s, false)).expect("ball edges have walls"))
            .collect();
        set.into_iter().collect()
    }

    /// Walls of the ball crossing `c` anywhere in `X(Γ)`.
    pub fn walls_crossing(&self, c: &StandardSubcomplex) -> Vec<WallId> {
        (0..self.wall_count() as WallId)
            .filter(|&w| c.crossed_by(self.raag(), self.wall(w)))
            .collect()
    }

    pub fn coarse_intersection(
        &self,
        c1: &StandardSubcomplex,
        c2: &StandardSubcomplex,
    ) -> Result<CoarseIntersection, GeometryError> {
        let raag = self.raag();
        let (a, b) = (c1.subgraph(), c2.subgraph());
        // minimal element of G(A) rep1^-1 rep2 G(B)
        let mut w = raag.between(c1.rep(), c2.rep()).word().to_vec();
        let mut head: Vec<Letter> = Vec::new();
        loop {
            let (p, rest) = raag.split_initial(&w, a);
            let (rest, s) = raag.split_terminal(&rest, b);
            if p.is_empty() && s.is_empty() {
                break;
            }
            head.extend(p);
            w = rest;
        }
        let delta = w.len();
        let directions = a & b & raag.common_link(raag.support(&w));

        let y1_rep = raag.mul_word(c1.rep(), &head);
        let y1_sub = StandardSubcomplex::new(raag, &y1_rep, directions);
        let y2_rep = raag.mul_word(&y1_rep, &w);
        let y2_sub = StandardSubcomplex::new(raag, &y2_rep, directions);

        let on = |c: &StandardSubcomplex, other: &StandardSubcomplex| -> Vec<usize> {
            (0..self.vertex_count())
                .filter(|&v| {
                    let x = self.vertex(v);
                    c.contains(raag, x) && other.distance_to(raag, x) == delta
                })
                .collect()
        };
        let y1 = on(c1, c2);
        let y2 = on(c2, c1);
        if y1.is_empty() || y2.is_empty() {
            return Err(self.short("coarse intersection"));
        }
        let pairs = y1
            .iter()
            .filter_map(|&y| self.index_of(&c2.gate_of(raag, self.vertex(y))).map(|g| (y, g)))
            .collect();
        Ok(CoarseIntersection {
            delta,
            y1,
            y2,
            directions,
            pairs,
            y1_subcomplex: Some(y1_sub),
            y2_subcomplex: Some(y2_sub),
        })
    }

    /// Move `cube` along the geodesic `path`, sweeping out a product of the
    /// cube with the path.
    pub fn parallel_transport(&self, cube: BallCube, path: &[Letter]) -> Result<Transport, GeometryError> {
        let raag = self.raag();
        if raag.canonicalize(path).len() != path.len() {
            return Err(GeometryError::NotGeodesic(raag.format_word(path)));
        }
        let mut current = cube;
        let mut strip = Vec::with_capacity(path.len());
        for (step, &l) in path.iter().enumerate() {
            let s = l.generator();
            if cube.clique & bit(s) != 0 || cube.clique & !raag.link(s) != 0 {
                return Err(GeometryError::ObstructedTransport {
                    step,
                    letter: raag.format_letter(l),
                });
            }
            let product = self.cube_at(current.base, cube.clique | bit(s), if l.is_inverse() { bit(s) } else { 0 })?;
            let base = self.step(current.base, l).ok_or_else(|| self.short("transport"))?;
            strip.push(product);
            current = BallCube { base, clique: cube.clique };
        }
        Ok(Transport {
            start: cube,
            end: current,
            strip,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub start: BallCube,
    pub end: BallCube,
    /// One product cube per step of the path.
    pub strip: Vec<BallCube>,
}
