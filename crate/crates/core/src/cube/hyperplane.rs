use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::link::npc_of_links;
use super::{CubeComplex, CubeId, EdgeEnd, NpcReport, VertexLink};

/// Parallelism classes of edges with a relative orientation per edge.
#[derive(Clone, Debug)]
pub struct HyperplaneIndex {
    /// Class id per edge position in `x.edges()`.
    class: Vec<usize>,
    /// Orientation of each edge relative to its class seed.
    parity: Vec<bool>,
    classes: Vec<Vec<CubeId>>,
    two_sided: Vec<bool>,
    first_edge: CubeId,
}

impl HyperplaneIndex {
    pub fn new(x: &CubeComplex) -> Self {
        let edges = x.edges();
        let first_edge = edges.first().copied().unwrap_or(0);
        let pos = |e: CubeId| e - first_edge;
        let mut nbrs: Vec<Vec<(usize, bool)>> = vec![Vec::new(); edges.len()];
        for &sq in x.cells(2) {
            for c in 0..2 {
                let (e0, f0) = x.face_edge(sq, c, 0);
                let (e1, f1) = x.face_edge(sq, c, 1);
                nbrs[pos(e0)].push((pos(e1), f0 ^ f1));
                nbrs[pos(e1)].push((pos(e0), f0 ^ f1));
            }
        }
        let mut class = vec![usize::MAX; edges.len()];
        let mut parity = vec![false; edges.len()];
        let mut classes = Vec::new();
        let mut two_sided = Vec::new();
        // seed each class at its lowest edge and propagate across squares
        for seed in 0..edges.len() {
            if class[seed] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![edges[seed]];
            let mut consistent = true;
            class[seed] = id;
            let mut queue = VecDeque::from([seed]);
            while let Some(i) = queue.pop_front() {
                for &(j, p) in &nbrs[i] {
                    let want = parity[i] ^ p;
                    if class[j] == usize::MAX {
                        class[j] = id;
                        parity[j] = want;
                        members.push(edges[j]);
                        queue.push_back(j);
                    } else if parity[j] != want {
                        consistent = false;
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
            two_sided.push(consistent);
        }
        HyperplaneIndex {
            class,
            parity,
            classes,
            two_sided,
            first_edge,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, edge: CubeId) -> usize {
        self.class[edge - self.first_edge]
    }

    /// Orientation of `edge` relative to the seed edge of its class.
    pub fn relative_orientation(&self, edge: CubeId) -> bool {
        self.parity[edge - self.first_edge]
    }

    pub fn edges_of(&self, class: usize) -> &[CubeId] {
        &self.classes[class]
    }

    pub fn is_two_sided(&self, class: usize) -> bool {
        self.two_sided[class]
    }

    /// Classes of the two coordinate directions of a square.
    pub fn square_classes(&self, x: &CubeComplex, square: CubeId) -> (usize, usize) {
        // slot x_1 = 0 carries an edge along coordinate 0
        let along0 = x.face_edge(square, 1, 0).0;
        let along1 = x.face_edge(square, 0, 0).0;
        (self.class_of(along0), self.class_of(along1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Hyperplane {
    pub id: usize,
    pub edges: Vec<CubeId>,
    pub two_sided: bool,
}

/// Hyperplanes ordered by their lowest dual edge.
pub fn hyperplanes(x: &CubeComplex) -> Vec<Hyperplane> {
    let idx = HyperplaneIndex::new(x);
    (0..idx.len())
        .map(|id| Hyperplane {
            id,
            edges: idx.classes[id].clone(),
            two_sided: idx.two_sided[id],
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SelfIntersection {
    pub hyperplane: usize,
    pub square: CubeId,
}

/// Two same-class edge-ends at a vertex that span no square corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SelfOsculation {
    pub hyperplane: usize,
    pub vertex: CubeId,
    pub ends: (EdgeEnd, EdgeEnd),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpecialnessReport {
    pub npc: bool,
    pub npc_detail: NpcReport,
    pub hyperplane_count: usize,
    pub self_intersecting: Vec<SelfIntersection>,
    pub self_osculating: Vec<SelfOsculation>,
    pub one_sided: Vec<usize>,
    pub weakly_special: bool,
}

pub fn check_weakly_special(x: &CubeComplex) -> SpecialnessReport {
    let links: Vec<VertexLink> = x.vertices().par_iter().map(|&v| VertexLink::new(x, v)).collect();
    let npc_detail = npc_of_links(&links);
    let idx = HyperplaneIndex::new(x);

    let self_intersecting: Vec<SelfIntersection> = x
        .cells(2)
        .iter()
        .filter_map(|&sq| {
            let (a, b) = idx.square_classes(x, sq);
            (a == b).then_some(SelfIntersection { hyperplane: a, square: sq })
        })
        .collect();

    let self_osculating: Vec<SelfOsculation> = links
        .par_iter()
        .flat_map_iter(|link| {
            let v = link.vertex;
            let ends = &link.vertices;
            let mut out = Vec::new();
            for i in 0..ends.len() {
                for j in i + 1..ends.len() {
                    let (e1, e2) = (ends[i], ends[j]);
                    if e1.edge != e2.edge && idx.class_of(e1.edge) == idx.class_of(e2.edge) && !link.adjacent(i, j) {
                        out.push(SelfOsculation {
                            hyperplane: idx.class_of(e1.edge),
                            vertex: v,
                            ends: (e1, e2),
                        });
                    }
                }
            }
            out
        })
        .collect();

    let one_sided = (0..idx.len()).filter(|&h| !idx.is_two_sided(h)).collect();
    SpecialnessReport {
        npc: npc_detail.npc,
        weakly_special: npc_detail.npc && self_intersecting.is_empty() && self_osculating.is_empty(),
        npc_detail,
        hyperplane_count: idx.len(),
        self_intersecting,
        self_osculating,
        one_sided,
    }
}
