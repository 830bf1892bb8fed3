use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::growth::ball_size;
use super::{GeometryError, GroupElement, Letter, Raag};
use crate::graph::{members, FlagComplex, SimplicialGraph, VertexSet};

/// Default limit on the number of vertices of a developed ball.
pub const DEFAULT_CAP: usize = 200_000;

const NONE: u32 = u32::MAX;

pub type WallId = u32;

/// A hyperplane of `X(Γ)`: the wall dual to the `s`-edges `(g, g s)` with
/// `g` in the coset `coset · G(lk s)`. `coset` is the minimal representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WallKey {
    pub generator: usize,
    pub coset: GroupElement,
}

/// A cube of the ball given by its minimal corner and the clique spanned.
/// All edges leave `base` in positive directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallCube {
    pub base: usize,
    pub clique: VertexSet,
}

impl BallCube {
    pub fn dim(&self) -> usize {
        self.clique.count_ones() as usize
    }
}

/// The ball of radius `R` about `center` in the universal cover `X(Γ)`.
///
/// Vertices are ordered by distance from the center and then by the
/// shortlex order of `center^-1 · v`.
#[derive(Clone, Debug)]
pub struct DevelopedBall {
    raag: Raag,
    center: GroupElement,
    radius: usize,
    vertices: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    dist: Vec<u32>,
    /// `nbr[v * 2n + letter]`, `NONE` outside the ball.
    nbr: Vec<u32>,
    /// BFS tree: parent vertex and the wall crossed by the tree edge.
    parent: Vec<u32>,
    tree_wall: Vec<WallId>,
    walls: Vec<WallKey>,
    wall_index: HashMap<WallKey, WallId>,
    edges: Vec<(u32, u32, u8)>,
    cubes: Vec<BallCube>,
}

impl DevelopedBall {
    pub fn new(g: &SimplicialGraph, radius: usize) -> Result<Self, GeometryError> {
        Self::develop(Raag::new(g.clone()), GroupElement::identity(), radius, DEFAULT_CAP)
    }

    pub fn develop(raag: Raag, center: GroupElement, radius: usize, cap: usize) -> Result<Self, GeometryError> {
        let projected = ball_size(raag.graph(), radius);
        if projected > cap as i128 {
            let projected = if projected == i128::MAX {
                "more than 10^38".to_owned()
            } else {
                projected.to_string()
            };
            return Err(GeometryError::CapExceeded { radius, projected, cap });
        }
        let letters: Vec<Letter> = raag.letters().collect();
        let nl = letters.len();

        // relative words, level by level
        let mut rel: Vec<GroupElement> = vec![GroupElement::identity()];
        let mut level_start = vec![0usize];
        let mut seen: std::collections::HashSet<GroupElement> = rel.iter().cloned().collect();
        for k in 0..radius {
            let frontier = &rel[level_start[k]..];
            let mut next: Vec<GroupElement> = frontier
                .par_iter()
                .flat_map_iter(|w| {
                    letters
                        .iter()
                        .map(|&l| raag.mul_letter(w, l))
                        .filter(|u| u.len() == k + 1)
                        .collect::<Vec<_>>()
                })
                .collect();
            next.par_sort_unstable();
            next.dedup();
            next.retain(|u| !seen.contains(u));
            seen.extend(next.iter().cloned());
            level_start.push(rel.len());
            if next.is_empty() {
                break;
            }
            rel.extend(next);
        }
        drop(seen);

        let vertices: Vec<GroupElement> = rel.par_iter().map(|w| raag.mul(&center, w)).collect();
        let dist: Vec<u32> = rel.iter().map(|w| w.len() as u32).collect();
        let index: HashMap<GroupElement, u32> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();

        let nbr: Vec<u32> = vertices
            .par_iter()
            .flat_map_iter(|v| {
                letters
                    .iter()
                    .map(|&l| index.get(&raag.mul_letter(v, l)).copied().unwrap_or(NONE))
                    .collect::<Vec<_>>()
            })
            .collect();

        let mut ball = DevelopedBall {
            raag,
            center,
            radius,
            vertices,
            index,
            dist,
            nbr,
            parent: Vec::new(),
            tree_wall: Vec::new(),
            walls: Vec::new(),
            wall_index: HashMap::new(),
            edges: Vec::new(),
            cubes: Vec::new(),
        };
        ball.build_walls(nl);
        ball.build_cells();
        Ok(ball)
    }

    fn build_walls(&mut self, nl: usize) {
        let n = self.vertices.len();
        let mut parent = vec![NONE; n];
        let mut via = vec![0u8; n];
        for v in 1..n {
            let (l, p) = (0..nl)
                .map(|l| (l, self.nbr[v * nl + l]))
                .find(|&(_, p)| p != NONE && self.dist[p as usize] + 1 == self.dist[v])
                .expect("every non-central vertex has a parent");
            parent[v] = p;
            via[v] = l as u8;
        }
        let keys: Vec<Option<WallKey>> = (0..n)
            .into_par_iter()
            .map(|v| {
                (parent[v] != NONE).then(|| self.wall_key(&self.vertices[v], Letter::from_code(via[v])))
            })
            .collect();
        let mut tree_wall = vec![NONE; n];
        for (v, key) in keys.into_iter().enumerate() {
            if let Some(key) = key {
                let next = self.walls.len() as WallId;
                let id = *self.wall_index.entry(key.clone()).or_insert(next);
                if id == next {
                    self.walls.push(key);
                }
                tree_wall[v] = id;
            }
        }
        self.parent = parent;
        self.tree_wall = tree_wall;
    }

    fn build_cells(&mut self) {
        let n = self.vertices.len();
        let rank = self.raag.rank();
        let mut edges = Vec::new();
        for v in 0..n {
            for s in 0..rank {
                let w = self.step(v, Letter::new(s, false));
                if let Some(w) = w {
                    edges.push((v as u32, w as u32, s as u8));
                }
            }
        }
        self.edges = edges;

        let flag = FlagComplex::new(self.raag.graph().clone());
        let cliques: Vec<VertexSet> = (1..flag.top_size()).flat_map(|k| flag.simplices(k).iter().copied()).collect();
        let cubes: Vec<BallCube> = (0..n)
            .into_par_iter()
            .flat_map_iter(|v| {
                cliques
                    .iter()
                    .filter(|&&c| self.cube_corners(v, c).is_some())
                    .map(|&clique| BallCube { base: v, clique })
                    .collect::<Vec<_>>()
            })
            .collect();
        self.cubes = cubes;
    }

    /// Key of the wall dual to the edge from `x` along `l`.
    pub fn wall_key(&self, x: &GroupElement, l: Letter) -> WallKey {
        self.raag.wall_key(x, l)
    }

    pub fn raag(&self) -> &Raag {
        &self.raag
    }

    pub fn graph(&self) -> &SimplicialGraph {
        self.raag.graph()
    }

    pub fn center(&self) -> &GroupElement {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &GroupElement {
        &self.vertices[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    /// Like [`index_of`](Self::index_of) but with an error naming the vertex.
    pub fn require(&self, g: &GroupElement) -> Result<usize, GeometryError> {
        self.index_of(g).ok_or_else(|| GeometryError::NotInBall(self.raag.format(g)))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Distance from the center.
    pub fn depth(&self, v: usize) -> usize {
        self.dist[v] as usize
    }

    /// Neighbour of `v` along `l`, if inside the ball.
    #[inline]
    pub fn step(&self, v: usize, l: Letter) -> Option<usize> {
        let n = self.nbr[v * 2 * self.raag.rank() + l.code() as usize];
        (n != NONE).then_some(n as usize)
    }

    /// Follow a word from `v`, staying inside the ball.
    pub fn walk(&self, v: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(v, |v, &l| self.step(v, l))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.raag.letters().filter_map(move |l| self.step(v, l).map(|w| (l, w)))
    }

    /// Edges `(v, v s)` with both ends in the ball, as `(v, v s, s)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b, s)| (a as usize, b as usize, s as usize))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Cubes of dimension at least 2.
    pub fn cubes(&self) -> &[BallCube] {
        &self.cubes
    }

    /// Cell counts per dimension, vertices first.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![self.vertices.len(), self.edges.len()];
        for q in &self.cubes {
            let d = q.dim();
            if c.len() <= d {
                c.resize(d + 1, 0);
            }
            c[d] += 1;
        }
        c
    }

    /// Corners of the cube at `base` spanned positively by `clique`, indexed
    /// by subsets of the clique's members in increasing order.
    pub fn cube_corners(&self, base: usize, clique: VertexSet) -> Option<Vec<usize>> {
        let gens: Vec<usize> = members(clique).collect();
        let mut corners = vec![0usize; 1 << gens.len()];
        corners[0] = base;
        for mask in 1usize..corners.len() {
            let top = usize::BITS - 1 - mask.leading_zeros();
            corners[mask] = self.step(corners[mask & !(1 << top)], Letter::new(gens[top as usize], false))?;
        }
        Some(corners)
    }

    /// The cube at `v` spanned by `clique` with a sign per member (`true`
    /// for the inverse direction), normalised to its minimal corner.
    pub fn cube_at(&self, v: usize, clique: VertexSet, inverse: VertexSet) -> Result<BallCube, GeometryError> {
        if !self.raag.graph().is_clique(clique) || inverse & !clique != 0 {
            return Err(GeometryError::NotAClique(self.raag.graph().names_of(clique).join(",")));
        }
        let back: Vec<Letter> = members(inverse).map(|s| Letter::new(s, true)).collect();
        let base = self.walk(v, &back).ok_or_else(|| self.short("cube corner"))?;
        let cube = BallCube { base, clique };
        self.cube_corners(base, clique).ok_or_else(|| self.short("cube corner"))?;
        Ok(cube)
    }

    pub(crate) fn short(&self, what: &str) -> GeometryError {
        GeometryError::InsufficientRadius(format!("{what} leaves the ball of radius {}", self.radius))
    }

    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    pub fn wall(&self, id: WallId) -> &WallKey {
        &self.walls[id as usize]
    }

    pub fn wall_id(&self, key: &WallKey) -> Option<WallId> {
        self.wall_index.get(key).copied()
    }

    /// Wall dual to the ball edge from `v` along `l`.
    pub fn edge_wall(&self, v: usize, l: Letter) -> Option<WallId> {
        self.step(v, l)?;
        self.wall_id(&self.wall_key(&self.vertices[v], l))
    }

    /// Walls separating `v` from the center, sorted.
    pub fn walls_of(&self, mut v: usize) -> Vec<WallId> {
        let mut out = Vec::with_capacity(self.dist[v] as usize);
        while self.parent[v] != NONE {
            out.push(self.tree_wall[v]);
            v = self.parent[v] as usize;
        }
        out.sort_unstable();
        out
    }

    /// Whether `wall` separates `v` from the center.
    pub fn side(&self, v: usize, wall: WallId) -> bool {
        self.walls_of(v).binary_search(&wall).is_ok()
    }

    /// Walls separating two ball vertices, sorted.
    pub fn separating_walls(&self, x: usize, y: usize) -> Vec<WallId> {
        let (a, b) = (self.walls_of(x), self.walls_of(y));
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(p), Some(q)) if p == q => {
                    i += 1;
                    j += 1;
                }
                (Some(p), Some(q)) if p < q => {
                    out.push(*p);
                    i += 1;
                }
                (Some(p), None) => {
                    out.push(*p);
                    i += 1;
                }
                (_, Some(q)) => {
                    out.push(*q);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    /// 1-skeleton distance between ball vertices.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.raag.distance(&self.vertices[x], &self.vertices[y])
    }

    pub fn to_json(&self) -> BallJson {
        let r = &self.raag;
        let g = r.graph();
        BallJson {
            center: r.format(&self.center),
            radius: self.radius,
            vertices: self.vertices.iter().map(|v| r.format(v)).collect(),
            edges: self.edges().map(|(a, b, s)| (a, b, g.name(s).to_owned())).collect(),
            cubes: self
                .cubes
                .iter()
                .map(|c| CubeJson {
                    base: c.base,
                    clique: g.names_of(c.clique),
                    signs: vec![1; c.dim()],
                })
                .collect(),
            walls: self
                .walls
                .iter()
                .enumerate()
                .map(|(id, w)| WallJson {
                    id: id as WallId,
                    generator: g.name(w.generator).to_owned(),
                    coset: r.format(&w.coset),
                })
                .collect(),
        }
    }
}

impl Raag {
    /// Key of the wall dual to the edge from `x` along `l`.
    pub fn wall_key(&self, x: &GroupElement, l: Letter) -> WallKey {
        let s = l.generator();
        let base = if l.is_inverse() {
            self.mul_letter(x, l)
        } else {
            x.clone()
        };
        WallKey {
            generator: s,
            coset: self.coset_min(&base, self.link(s)),
        }
    }
}

impl Letter {
    pub(crate) fn from_code(c: u8) -> Self {
        Letter::new((c >> 1) as usize, c & 1 == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeJson {
    pub base: usize,
    pub clique: Vec<String>,
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallJson {
    pub id: WallId,
    pub generator: String,
    pub coset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub center: String,
    pub radius: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
    pub cubes: Vec<CubeJson>,
    pub walls: Vec<WallJson>,
}
