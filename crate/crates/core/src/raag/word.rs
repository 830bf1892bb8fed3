use std::cmp::Ordering;
use std::fmt;

use super::GeometryError;
use crate::graph::{bit, members, SimplicialGraph, VertexSet};

/// A generator or its inverse. Letters order as `a < a^-1 < b < b^-1 < ...`
/// following the vertex order of the defining graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        debug_assert!(generator < 64);
        Letter((generator as u8) << 1 | inverse as u8)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn code(self) -> u8 {
        self.0
    }
}

/// Canonical form of an element of the right-angled Artin group: the
/// lexicographically least reduced word in its commutation class.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    word: Vec<Letter>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { word: Vec::new() }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Word length, which is the distance to the identity.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement(")?;
        for (i, l) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", l.generator(), if l.is_inverse() { "'" } else { "" })?;
        }
        write!(f, ")")
    }
}

/// Shortlex order.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A right-angled Artin group presented by its defining graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raag {
    graph: SimplicialGraph,
}

impl Raag {
    pub fn new(graph: SimplicialGraph) -> Self {
        Raag { graph }
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Generators commuting with `g`, excluding `g` itself.
    #[inline]
    pub fn link(&self, g: usize) -> VertexSet {
        self.graph.neighbors(g)
    }

    #[inline]
    pub fn commute(&self, a: Letter, b: Letter) -> bool {
        self.graph.adjacent(a.generator(), b.generator())
    }

    /// Every letter over this graph, in letter order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.rank()).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
    }

    pub fn generator_letter(&self, name: &str) -> Result<Letter, GeometryError> {
        self.graph
            .index_of(name)
            .map(|g| Letter::new(g, false))
            .ok_or_else(|| GeometryError::UnknownGenerator(name.to_owned()))
    }

    /// Parse whitespace-separated letters such as `a b^-1 c`. A letter is a
    /// generator name optionally followed by `^-1`, `⁻¹` or `-`. When every
    /// generator name is a single character the separators may be omitted
    /// (`ab⁻¹c`). `1` and the empty string denote the identity.
    pub fn parse_word(&self, s: &str) -> Result<Vec<Letter>, GeometryError> {
        let s = s.trim();
        if s.is_empty() || (s == "1" && self.graph.index_of("1").is_none()) {
            return Ok(Vec::new());
        }
        let compact = !s.contains(char::is_whitespace) && self.graph.names().iter().all(|n| n.chars().count() == 1);
        let tokens: Vec<String> = if compact {
            let mut out: Vec<String> = Vec::new();
            for c in s.chars() {
                match (c, out.last_mut()) {
                    ('^' | '-' | '⁻' | '¹' | '1', Some(last)) if self.graph.index_of(&c.to_string()).is_none() => last.push(c),
                    _ => out.push(c.to_string()),
                }
            }
            out
        } else {
            s.split_whitespace().map(str::to_owned).collect()
        };
        tokens
            .iter()
            .map(|t| {
                let (name, inv) = ["^-1", "⁻¹", "⁻", "-"]
                    .iter()
                    .find_map(|suf| t.strip_suffix(suf).filter(|n| !n.is_empty()).map(|n| (n, true)))
                    .unwrap_or((t.as_str(), false));
                let l = self.generator_letter(name)?;
                Ok(if inv { l.inverse() } else { l })
            })
            .collect()
    }

    pub fn format_letter(&self, l: Letter) -> String {
        let name = self.graph.name(l.generator());
        if l.is_inverse() {
            format!("{name}^-1")
        } else {
            name.to_owned()
        }
    }

    /// Space-separated letters; `1` for the empty word.
    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.format_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn format(&self, g: &GroupElement) -> String {
        self.format_word(&g.word)
    }

    /// Append `x` to a reduced word, cancelling against an inverse that can
    /// be shuffled to the end.
    fn push_reduced(&self, w: &mut Vec<Letter>, x: Letter) {
        for i in (0..w.len()).rev() {
            let y = w[i];
            if y.generator() == x.generator() {
                if y == x.inverse() {
                    w.remove(i);
                    return;
                }
                break;
            }
            if !self.commute(x, y) {
                break;
            }
        }
        w.push(x);
    }

    /// Lexicographically least word in the commutation class of `w`.
    fn lex_least(&self, w: &[Letter]) -> Vec<Letter> {
        let mut rest: Vec<Letter> = w.to_vec();
        let mut out = Vec::with_capacity(w.len());
        while !rest.is_empty() {
            let mut blocked: VertexSet = 0;
            let mut best: Option<(Letter, usize)> = None;
            for (i, &l) in rest.iter().enumerate() {
                let g = l.generator();
                if blocked & bit(g) == 0 && best.map_or(true, |(b, _)| l < b) {
                    best = Some((l, i));
                }
                blocked |= !self.link(g);
                if blocked == u64::MAX {
                    break;
                }
            }
            let (l, i) = best.expect("first letter is never blocked");
            out.push(l);
            rest.remove(i);
        }
        out
    }

    pub fn canonicalize(&self, letters: &[Letter]) -> GroupElement {
        let mut w = Vec::with_capacity(letters.len());
        for &x in letters {
            self.push_reduced(&mut w, x);
        }
        GroupElement { word: self.lex_least(&w) }
    }

    pub fn parse(&self, s: &str) -> Result<GroupElement, GeometryError> {
        Ok(self.canonicalize(&self.parse_word(s)?))
    }

    pub fn generator(&self, name: &str) -> Result<GroupElement, GeometryError> {
        Ok(self.canonicalize(&[self.generator_letter(name)?]))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul_word(a, &b.word)
    }

    pub fn mul_word(&self, a: &GroupElement, w: &[Letter]) -> GroupElement {
        let mut out = a.word.clone();
        for &x in w {
            self.push_reduced(&mut out, x);
        }
        GroupElement { word: self.lex_least(&out) }
    }

    pub fn mul_letter(&self, a: &GroupElement, x: Letter) -> GroupElement {
        self.mul_word(a, &[x])
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let w: Vec<Letter> = a.word.iter().rev().map(|l| l.inverse()).collect();
        GroupElement { word: self.lex_least(&w) }
    }

    /// `a^-1 b`.
    pub fn between(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut w: Vec<Letter> = a.word.iter().rev().map(|l| l.inverse()).collect();
        let mut out = Vec::with_capacity(w.len() + b.len());
        for x in w.drain(..).chain(b.word.iter().copied()) {
            self.push_reduced(&mut out, x);
        }
        GroupElement { word: self.lex_least(&out) }
    }

    /// Distance in the Cayley graph (the 1-skeleton of the universal cover).
    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> usize {
        let mut out = Vec::with_capacity(a.len() + b.len());
        for x in a.word.iter().rev().map(|l| l.inverse()).chain(b.word.iter().copied()) {
            self.push_reduced(&mut out, x);
        }
        out.len()
    }

    /// Length of the reduced form of `w`.
    pub fn reduced_length(&self, w: &[Letter]) -> usize {
        let mut out = Vec::with_capacity(w.len());
        for &x in w {
            self.push_reduced(&mut out, x);
        }
        out.len()
    }

    /// Letters that can be shuffled to the front of the reduced word `w`,
    /// with their positions (first occurrence of each unblocked generator).
    pub fn initial_letters(&self, w: &[Letter]) -> Vec<(usize, Letter)> {
        let mut blocked: VertexSet = 0;
        let mut out = Vec::new();
        for (i, &l) in w.iter().enumerate() {
            let g = l.generator();
            if blocked & bit(g) == 0 {
                out.push((i, l));
            }
            blocked |= !self.link(g);
            if blocked == u64::MAX {
                break;
            }
        }
        out
    }

    /// Letters that can be shuffled to the end of `w`, with positions.
    pub fn terminal_letters(&self, w: &[Letter]) -> Vec<(usize, Letter)> {
        let mut blocked: VertexSet = 0;
        let mut out = Vec::new();
        for (i, &l) in w.iter().enumerate().rev() {
            let g = l.generator();
            if blocked & bit(g) == 0 {
                out.push((i, l));
            }
            blocked |= !self.link(g);
            if blocked == u64::MAX {
                break;
            }
        }
        out
    }

    /// Split a reduced word as `w = p s` with `s` the longest suffix (up to
    /// shuffling) whose letters lie in `gens`. Returns `(p, s)`.
    pub fn split_terminal(&self, w: &[Letter], gens: VertexSet) -> (Vec<Letter>, Vec<Letter>) {
        let mut blocked: VertexSet = 0;
        let mut keep = Vec::with_capacity(w.len());
        let mut strip = Vec::new();
        for &l in w.iter().rev() {
            let g = l.generator();
            if gens & bit(g) != 0 && blocked & bit(g) == 0 {
                strip.push(l);
            } else {
                keep.push(l);
                blocked |= !self.link(g);
            }
        }
        keep.reverse();
        strip.reverse();
        (keep, strip)
    }

    /// Split a reduced word as `w = p s` with `p` the longest prefix (up to
    /// shuffling) whose letters lie in `gens`. Returns `(p, s)`.
    pub fn split_initial(&self, w: &[Letter], gens: VertexSet) -> (Vec<Letter>, Vec<Letter>) {
        let mut blocked: VertexSet = 0;
        let mut strip = Vec::new();
        let mut keep = Vec::with_capacity(w.len());
        for &l in w {
            let g = l.generator();
            if gens & bit(g) != 0 && blocked & bit(g) == 0 {
                strip.push(l);
            } else {
                keep.push(l);
                blocked |= !self.link(g);
            }
        }
        (strip, keep)
    }

    /// Minimal-length representative of the left coset `a G(gens)`.
    pub fn coset_min(&self, a: &GroupElement, gens: VertexSet) -> GroupElement {
        let (p, _) = self.split_terminal(&a.word, gens);
        self.canonicalize(&p)
    }

    /// Greatest common prefix of two elements (their meet in the prefix
    /// order of reduced words).
    pub fn meet(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut u = a.word.clone();
        let mut v = b.word.clone();
        let mut out = Vec::new();
        loop {
            let iu = self.initial_letters(&u);
            let iv = self.initial_letters(&v);
            let common = iu.iter().find_map(|&(i, l)| iv.iter().find(|&&(_, m)| m == l).map(|&(j, _)| (i, j, l)));
            let Some((i, j, l)) = common else { break };
            u.remove(i);
            v.remove(j);
            out.push(l);
        }
        GroupElement { word: self.lex_least(&out) }
    }

    /// Generators occurring in `w`.
    pub fn support(&self, w: &[Letter]) -> VertexSet {
        w.iter().fold(0, |m, l| m | bit(l.generator()))
    }

    /// Generators commuting with every generator of `set` (and not in it).
    pub fn common_link(&self, set: VertexSet) -> VertexSet {
        members(set).fold(self.graph.all(), |m, g| m & self.link(g))
    }
}

/// Canonical form of `letters` over `g`.
pub fn canonicalize(letters: &str, g: &SimplicialGraph) -> Result<GroupElement, GeometryError> {
    Raag::new(g.clone()).parse(letters)
}
