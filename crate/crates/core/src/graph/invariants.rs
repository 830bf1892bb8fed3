use serde::{Deserialize, Serialize};

use super::{bit, members, FlagComplex, GraphError, SimplicialGraph, VertexSet};

/// Same vertices; an edge exactly where the input has none.
pub fn complement_graph(g: &SimplicialGraph) -> SimplicialGraph {
    let all = g.all();
    let adj = (0..g.vertex_count())
        .map(|i| all & !g.neighbors(i) & !bit(i))
        .collect();
    SimplicialGraph::from_parts(g.names().to_vec(), adj)
}

/// Outcome of testing property `P_d`, with a witness for whichever
/// condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PdReport {
    pub d: usize,
    pub holds: bool,
    /// Any two top simplices are joined by a `(d-1)`-gallery.
    pub gallery_connected: bool,
    /// Every vertex has at least `d` neighbours inside some top simplex.
    pub star_condition: bool,
    pub failing_vertex: Option<String>,
    pub disconnected_pair: Option<(Vec<String>, Vec<String>)>,
}

/// Evaluate property `P_d` for `1 <= d <= dim F(g) + 1`.
pub fn property_pd(g: &SimplicialGraph, d: usize) -> Result<PdReport, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let flag = FlagComplex::new(g.clone());
    let max = flag.top_size();
    if d == 0 || d > max {
        return Err(GraphError::RankOutOfRange { d, max });
    }
    let tops = flag.top_simplices();

    // BFS over top simplices, adjacent when they share >= d vertices
    let mut reached = vec![false; tops.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for (j, r) in reached.iter_mut().enumerate() {
            if !*r && (tops[i] & tops[j]).count_ones() as usize >= d {
                *r = true;
                stack.push(j);
            }
        }
    }
    let disconnected_pair = reached
        .iter()
        .position(|r| !r)
        .map(|j| (g.names_of(tops[0]), g.names_of(tops[j])));

    let failing_vertex = (0..g.vertex_count())
        .find(|&v| {
            !tops
                .iter()
                .any(|&t| (t & g.neighbors(v)).count_ones() as usize >= d)
        })
        .map(|v| g.name(v).to_owned());

    let gallery_connected = disconnected_pair.is_none();
    let star_condition = failing_vertex.is_none();
    Ok(PdReport {
        d,
        holds: gallery_connected && star_condition,
        gallery_connected,
        star_condition,
        failing_vertex,
        disconnected_pair,
    })
}

/// `g` as a join `clique * factor_1 * ... * factor_k`.
///
/// `factors` are the vertex sets of the connected components of the
/// complement with at least two vertices; singleton components (vertices
/// adjacent to everything else) make up `clique_factor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JoinDecomposition {
    pub clique_factor: Vec<String>,
    pub factors: Vec<Vec<String>>,
}

impl JoinDecomposition {
    /// Number of join factors, each clique vertex counting as its own
    /// one-point factor.
    pub fn part_count(&self) -> usize {
        self.factors.len() + self.clique_factor.len()
    }

    /// Whether `g` splits as a join of at least two nonempty graphs.
    pub fn is_nontrivial(&self) -> bool {
        self.part_count() >= 2
    }

    /// Rebuild the graph as the join of the induced subgraphs on the parts.
    pub fn reconstruct(&self, g: &SimplicialGraph) -> Result<SimplicialGraph, GraphError> {
        let mut parts: Vec<SimplicialGraph> = self
            .factors
            .iter()
            .map(|f| g.mask_of(f).map(|m| g.induced(m)))
            .collect::<Result<_, _>>()?;
        if !self.clique_factor.is_empty() {
            parts.push(g.induced(g.mask_of(&self.clique_factor)?));
        }
        let mut it = parts.into_iter();
        let first = it.next().ok_or(GraphError::Empty)?;
        it.try_fold(first, |acc, p| acc.join(&p))
    }
}

pub fn join_decomposition(g: &SimplicialGraph) -> Result<JoinDecomposition, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let comp = complement_graph(g);
    let mut clique = 0;
    let mut factors = Vec::new();
    for c in comp.components() {
        if c.count_ones() == 1 {
            clique |= c;
        } else {
            factors.push(g.names_of(c));
        }
    }
    Ok(JoinDecomposition {
        clique_factor: g.names_of(clique),
        factors,
    })
}

/// Pairs of non-adjacent vertices whose join is a top-dimensional
/// cross-polytope in `F(g)`, if one exists.
pub fn find_top_hyperoctahedron(g: &SimplicialGraph) -> Option<Vec<(String, String)>> {
    let k = FlagComplex::new(g.clone()).top_size();
    if k == 0 {
        return None;
    }
    let need = 2 * (k - 1);
    let cands = (0..g.vertex_count())
        .filter(|&v| g.degree(v) >= need)
        .fold(0, |m, v| m | bit(v));

    fn search(g: &SimplicialGraph, cands: VertexSet, left: usize, min_first: usize, pairs: &mut Vec<(usize, usize)>) -> bool {
        if left == 0 {
            return true;
        }
        for u in members(cands).filter(|&u| u >= min_first) {
            for w in members(cands & !g.neighbors(u)).filter(|&w| w > u) {
                let rest = cands & g.neighbors(u) & g.neighbors(w);
                if (rest.count_ones() as usize) < 2 * (left - 1) {
                    continue;
                }
                pairs.push((u, w));
                if search(g, rest, left - 1, u + 1, pairs) {
                    return true;
                }
                pairs.pop();
            }
        }
        false
    }

    let mut pairs = Vec::new();
    search(g, cands, k, 0, &mut pairs).then(|| {
        pairs
            .into_iter()
            .map(|(u, w)| (g.name(u).to_owned(), g.name(w).to_owned()))
            .collect()
    })
}

pub fn has_top_hyperoctahedron(g: &SimplicialGraph) -> bool {
    find_top_hyperoctahedron(g).is_some()
}

/// Display id of a simplex, e.g. `{a,b}`.
pub fn simplex_name(g: &SimplicialGraph, s: VertexSet) -> String {
    format!("{{{}}}", g.names_of(s).join(","))
}

/// Graph on the top simplices of `f`, two being adjacent when they share
/// at least `d` vertices.
///
/// # Panics
/// If `f` has more than [`super::MAX_VERTICES`] top simplices.
pub fn simplex_intersection_graph(f: &FlagComplex, d: usize) -> SimplicialGraph {
    let g = f.base();
    let tops = f.top_simplices();
    let mut named: Vec<(String, VertexSet)> = tops.iter().map(|&t| (simplex_name(g, t), t)).collect();
    named.sort();
    let edges: Vec<(String, String)> = named
        .iter()
        .enumerate()
        .flat_map(|(i, (a, s))| {
            named[i + 1..]
                .iter()
                .filter(move |(_, t)| (s & t).count_ones() as usize >= d)
                .map(move |(b, _)| (a.clone(), b.clone()))
        })
        .collect();
    SimplicialGraph::new(
        named.iter().map(|(n, _)| n.as_str()),
        edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .expect("top simplices exceed the graph capacity")
}
