//! Oriented link diagrams given as signed Gauss codes, their directed
//! universes, Euler systems and looped interlacement graphs.
//!
//! Crossings are indexed in order of first occurrence in the code; that
//! order is the vertex order of every graph and matrix produced here. The
//! first occurrence of a crossing is its visit 1.
//!
//! Transitions at a crossing are described relative to the link
//! components: [`Transition::Follow`] pairs each incoming strand with its own
//! outgoing continuation, [`Transition::Cross`] pairs the incoming strand of
//! one visit with the outgoing strand of the other, and [`Transition::Flip`]
//! pairs the two incoming strands and the two outgoing strands.

use crate::algebra::Gf2Matrix;
use crate::graph::MarkedGraph;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One passage of a component through a crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: String,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussErrorKind {
    #[error("empty code")]
    Empty,
    #[error("empty component")]
    EmptyComponent,
    #[error("malformed token `{0}` (expected <id><+|->)")]
    BadToken(String),
    #[error("crossing `{0}` occurs {1} times; every crossing occurs exactly twice")]
    WrongMultiplicity(String, usize),
    #[error("crossing `{0}` carries both signs")]
    SignMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct GaussParseError {
    /// 1-based character column of the offending token.
    pub column: usize,
    pub kind: GaussErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unknown crossing `{0}`")]
    UnknownCrossing(String),
    #[error("crossings `{0}` and `{1}` are not interlaced in the Euler system")]
    NotInterlaced(String, String),
    #[error("transition list has length {found}, universe has {expected} crossings")]
    LengthMismatch { expected: usize, found: usize },
    #[error("an Euler system may not use flip transitions (crossing `{0}`)")]
    FlipInEulerSystem(String),
    #[error("transitions do not form one circuit per connected component")]
    NotEulerian,
    #[error("crossings `{0}` and `{1}` are not adjacent in the looped interlacement graph")]
    NotAdjacent(String, String),
    #[error(transparent)]
    Invalid(#[from] GaussErrorKind),
}

/// An oriented link diagram: each component is a cyclic sequence of passes;
/// components without crossings are only counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    components: Vec<Vec<Pass>>,
    crossing_free: usize,
}

impl LinkDiagram {
    pub fn new(components: Vec<Vec<Pass>>, crossing_free: usize) -> Result<Self, GaussErrorKind> {
        if components.is_empty() && crossing_free == 0 {
            return Err(GaussErrorKind::Empty);
        }
        if components.iter().any(|c| c.is_empty()) {
            return Err(GaussErrorKind::EmptyComponent);
        }
        let mut seen: HashMap<&str, (usize, Sign)> = HashMap::new();
        for pass in components.iter().flatten() {
            let slot = seen.entry(&pass.crossing).or_insert((0, pass.sign));
            if slot.1 != pass.sign {
                return Err(GaussErrorKind::SignMismatch(pass.crossing.clone()));
            }
            slot.0 += 1;
        }
        for pass in components.iter().flatten() {
            let count = seen[pass.crossing.as_str()].0;
            if count != 2 {
                return Err(GaussErrorKind::WrongMultiplicity(pass.crossing.clone(), count));
            }
        }
        Ok(Self {
            components,
            crossing_free,
        })
    }

    /// Builds a diagram from `(crossing, sign)` words, one per component.
    pub fn from_words(words: &[Vec<(&str, Sign)>], crossing_free: usize) -> Result<Self, GaussErrorKind> {
        Self::new(
            words
                .iter()
                .map(|w| {
                    w.iter()
                        .map(|&(c, sign)| Pass {
                            crossing: c.to_string(),
                            sign,
                        })
                        .collect()
                })
                .collect(),
            crossing_free,
        )
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn crossing_free_components(&self) -> usize {
        self.crossing_free
    }

    /// Total number of link components, crossing-free ones included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.crossing_free
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Crossing ids in order of first occurrence.
    pub fn crossings(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for pass in self.components.iter().flatten() {
            if !out.contains(&pass.crossing.as_str()) {
                out.push(&pass.crossing);
            }
        }
        out
    }

    pub fn sign_of(&self, crossing: &str) -> Option<Sign> {
        self.components
            .iter()
            .flatten()
            .find(|p| p.crossing == crossing)
            .map(|p| p.sign)
    }

    /// Writhe: positive minus negative crossings.
    pub fn writhe(&self) -> i64 {
        self.components
            .iter()
            .flatten()
            .map(|p| match p.sign {
                Sign::Positive => 1,
                Sign::Negative => -1,
            })
            .sum::<i64>()
            / 2
    }

    pub(crate) fn into_parts(self) -> (Vec<Vec<Pass>>, usize) {
        (self.components, self.crossing_free)
    }
}

/// Parses `1+,2-,1+,2-|3+,3+|o`: components split on `|`, passes on `,`,
/// `o` for a crossing-free component. Whitespace is ignored.
pub fn parse_gauss(text: &str) -> Result<LinkDiagram, GaussParseError> {
    let mut components = Vec::new();
    let mut crossing_free = 0;
    let mut occurrences: HashMap<String, Vec<(usize, Sign)>> = HashMap::new();
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();

    if chars.iter().all(|c| c.is_whitespace()) {
        return Err(GaussParseError {
            column: 1,
            kind: GaussErrorKind::Empty,
        });
    }
    for component in chars.split(|&c| c == '|') {
        let component_column = column;
        column += component.len() + 1;
        let squeezed: String = component.iter().filter(|c| !c.is_whitespace()).collect();
        if squeezed.is_empty() {
            return Err(GaussParseError {
                column: component_column,
                kind: GaussErrorKind::EmptyComponent,
            });
        }
        if squeezed == "o" {
            crossing_free += 1;
            continue;
        }
        let mut passes = Vec::new();
        let mut token_column = component_column;
        for token in component.split(|&c| c == ',') {
            let offset = token.iter().take_while(|c| c.is_whitespace()).count();
            let here = token_column + offset;
            token_column += token.len() + 1;
            let word: String = token.iter().filter(|c| !c.is_whitespace()).collect();
            let bad = || GaussParseError {
                column: here,
                kind: GaussErrorKind::BadToken(word.clone()),
            };
            let mut it = word.chars();
            let sign = match it.next_back() {
                Some('+') => Sign::Positive,
                Some('-') | Some('\u{2212}') => Sign::Negative,
                _ => return Err(bad()),
            };
            let id: String = it.collect();
            if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(bad());
            }
            occurrences.entry(id.clone()).or_default().push((here, sign));
            passes.push(Pass { crossing: id, sign });
        }
        components.push(passes);
    }
    LinkDiagram::new(components, crossing_free).map_err(|kind| {
        // point at the first token that breaks the rule
        let column = match &kind {
            GaussErrorKind::SignMismatch(id) => {
                let seen = &occurrences[id];
                seen.iter().find(|o| o.1 != seen[0].1).map_or(1, |o| o.0)
            }
            GaussErrorKind::WrongMultiplicity(id, _) => {
                let seen = &occurrences[id];
                seen.get(2).unwrap_or(&seen[0]).0
            }
            _ => 1,
        };
        GaussParseError { column, kind }
    })
}

impl FromStr for LinkDiagram {
    type Err = GaussParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| format!("{}{}", p.crossing, p.sign.symbol()))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        parts.extend(std::iter::repeat_n("o".to_string(), self.crossing_free));
        f.write_str(&parts.join("|"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transition {
    Follow,
    Cross,
    Flip,
}

impl Transition {
    pub const ALL: [Transition; 3] = [Transition::Follow, Transition::Cross, Transition::Flip];

    /// Re-expresses a transition given relative to the link components as
    /// one relative to an Euler system whose own transition here is `system`.
    pub fn relative_to(self, system: Transition) -> Transition {
        match (system, self) {
            (Transition::Cross, Transition::Follow) => Transition::Cross,
            (Transition::Cross, Transition::Cross) => Transition::Follow,
            (_, t) => t,
        }
    }
}

/// The directed 2-in, 2-out universe of a diagram.
///
/// Passes are numbered consecutively component by component; the edge
/// leaving pass `p` enters pass `next[p]`.
#[derive(Debug, Clone)]
pub struct Universe {
    ids: Vec<String>,
    signs: Vec<Sign>,
    /// Passes of visit 1 and visit 2 for each crossing.
    visits: Vec<[usize; 2]>,
    pass_crossing: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    /// Connected component of each crossing.
    component: Vec<usize>,
    connected_components: usize,
    free_loops: usize,
}

/// Half-edges: `2p` is the incoming end at pass `p`, `2p + 1` the outgoing end.
fn incoming(p: usize) -> usize {
    2 * p
}

fn outgoing(p: usize) -> usize {
    2 * p + 1
}

pub fn build_universe(d: &LinkDiagram) -> Universe {
    let ids: Vec<String> = d.crossings().into_iter().map(str::to_string).collect();
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let n = ids.len();
    let mut signs = vec![Sign::Positive; n];
    let mut visits = vec![[usize::MAX; 2]; n];
    let mut pass_crossing = Vec::with_capacity(2 * n);
    let mut next = Vec::with_capacity(2 * n);
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let up = parent[y];
            parent[y] = r;
            y = up;
        }
        r
    }

    for comp in d.components() {
        let start = pass_crossing.len();
        for (k, pass) in comp.iter().enumerate() {
            let x = index[pass.crossing.as_str()];
            signs[x] = pass.sign;
            let p = start + k;
            if visits[x][0] == usize::MAX {
                visits[x][0] = p;
            } else {
                visits[x][1] = p;
            }
            pass_crossing.push(x);
            next.push(if k + 1 == comp.len() { start } else { p + 1 });
        }
        let first = index[comp[0].crossing.as_str()];
        for pass in comp {
            let x = index[pass.crossing.as_str()];
            let (a, b) = (find(&mut parent, first), find(&mut parent, x));
            parent[a] = b;
        }
    }

    let mut roots = HashMap::new();
    let component: Vec<usize> = (0..n)
        .map(|x| {
            let r = find(&mut parent, x);
            let len = roots.len();
            *roots.entry(r).or_insert(len)
        })
        .collect();

    let mut prev = vec![0; next.len()];
    for (p, &q) in next.iter().enumerate() {
        prev[q] = p;
    }
    Universe {
        ids,
        signs,
        visits,
        pass_crossing,
        next,
        prev,
        component,
        connected_components: roots.len() + d.crossing_free_components(),
        free_loops: d.crossing_free_components(),
    }
}

impl Universe {
    pub fn crossing_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pass_crossing.len()
    }

    pub fn crossing_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn sign(&self, x: usize) -> Sign {
        self.signs[x]
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// `c(U)`, free loops included.
    pub fn connected_components(&self) -> usize {
        self.connected_components
    }

    /// Connected component index of crossing `x`.
    pub fn component_of(&self, x: usize) -> usize {
        self.component[x]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, DiagramError> {
        self.ids
            .iter()
            .position(|s| s == id)
            .ok_or_else(|| DiagramError::UnknownCrossing(id.to_string()))
    }

    /// In-degree and out-degree of each crossing in the directed universe.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.crossing_count()];
        for p in 0..self.edge_count() {
            deg[self.pass_crossing[p]].1 += 1;
            deg[self.pass_crossing[self.next[p]]].0 += 1;
        }
        deg
    }

    fn check_len(&self, len: usize) -> Result<(), DiagramError> {
        if len != self.crossing_count() {
            return Err(DiagramError::LengthMismatch {
                expected: self.crossing_count(),
                found: len,
            });
        }
        Ok(())
    }

    fn edge_partner(&self, h: usize) -> usize {
        let p = h / 2;
        if h % 2 == 1 {
            incoming(self.next[p])
        } else {
            outgoing(self.prev[p])
        }
    }

    fn transition_partner(&self, h: usize, transitions: &[Transition]) -> usize {
        let p = h / 2;
        let x = self.pass_crossing[p];
        let [p1, p2] = self.visits[x];
        let other = if p == p1 { p2 } else { p1 };
        let is_in = h.is_multiple_of(2);
        match (transitions[x], is_in) {
            (Transition::Follow, true) => outgoing(p),
            (Transition::Follow, false) => incoming(p),
            (Transition::Cross, true) => outgoing(other),
            (Transition::Cross, false) => incoming(other),
            (Transition::Flip, true) => incoming(other),
            (Transition::Flip, false) => outgoing(other),
        }
    }

    /// Traces the closed walks determined by `transitions`. Each walk is
    /// reported as the sequence of crossings it passes through, starting from
    /// the incoming end of its lowest pass. Free loops are not included.
    pub fn trace(&self, transitions: &[Transition]) -> Vec<Vec<usize>> {
        self.walks(transitions).0
    }

    /// Walks plus, for each pass, the index of the walk through its
    /// incoming end.
    fn walks(&self, transitions: &[Transition]) -> (Vec<Vec<usize>>, Vec<usize>) {
        assert_eq!(transitions.len(), self.crossing_count());
        let mut walk_of = vec![usize::MAX; self.edge_count()];
        let mut walks = Vec::new();
        for p in 0..self.edge_count() {
            if walk_of[p] != usize::MAX {
                continue;
            }
            let start = incoming(p);
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                let t = self.transition_partner(h, transitions);
                for e in [h, t] {
                    if e % 2 == 0 {
                        walk_of[e / 2] = walks.len();
                    }
                }
                walk.push(self.pass_crossing[h / 2]);
                h = self.edge_partner(t);
                if h == start {
                    break;
                }
            }
            walks.push(walk);
        }
        (walks, walk_of)
    }

    /// Number of closed walks determined by the transitions, plus free loops.
    pub fn count_circuits(&self, transitions: &[Transition]) -> usize {
        self.trace(transitions).len() + self.free_loops
    }
}

/// A directed Euler system, recorded by its transition at each crossing.
/// Crossings with transition `Cross` are the marked ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EulerSystem {
    transitions: Vec<Transition>,
}

impl EulerSystem {
    /// Validates that the transitions avoid `Flip` and give one circuit per
    /// connected component.
    pub fn new(u: &Universe, transitions: Vec<Transition>) -> Result<Self, DiagramError> {
        u.check_len(transitions.len())?;
        if let Some(x) = transitions.iter().position(|&t| t == Transition::Flip) {
            return Err(DiagramError::FlipInEulerSystem(u.ids[x].clone()));
        }
        if u.count_circuits(&transitions) != u.connected_components() {
            return Err(DiagramError::NotEulerian);
        }
        Ok(Self { transitions })
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn is_marked(&self, x: usize) -> bool {
        self.transitions[x] == Transition::Cross
    }

    pub fn marked(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.transitions.len()).filter(|&x| self.is_marked(x))
    }

    /// The circuits as double-occurrence words of crossing indices.
    pub fn circuits(&self, u: &Universe) -> Vec<Vec<usize>> {
        u.trace(&self.transitions)
    }
}

/// Starts from the link components and switches `Follow` to `Cross` at the
/// first crossing (in crossing order) joining two distinct circuits, until
/// each connected component carries a single circuit.
pub fn euler_system(u: &Universe) -> EulerSystem {
    let mut transitions = vec![Transition::Follow; u.crossing_count()];
    loop {
        let (_, walk_of) = u.walks(&transitions);
        let joining = (0..u.crossing_count()).find(|&x| {
            let [p1, p2] = u.visits[x];
            transitions[x] == Transition::Follow && walk_of[p1] != walk_of[p2]
        });
        match joining {
            Some(x) => transitions[x] = Transition::Cross,
            None => break,
        }
    }
    EulerSystem { transitions }
}

/// Interlacement in a set of double-occurrence words: `x` and `y` are
/// interlaced when they alternate `x…y…x…y` along a common word.
pub fn interlaced_pairs(words: &[Vec<usize>], n: usize) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for word in words {
        let mut positions: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, &x) in word.iter().enumerate() {
            positions.entry(x).or_default().push(k);
        }
        for (&x, px) in &positions {
            for (&y, py) in &positions {
                if x == y || px.len() != 2 || py.len() != 2 {
                    continue;
                }
                let inside = py.iter().filter(|&&k| px[0] < k && k < px[1]).count();
                m[x][y] = inside == 1;
            }
        }
    }
    m
}

impl EulerSystem {
    pub fn interlaced(&self, u: &Universe, x: usize, y: usize) -> bool {
        x != y && interlaced_pairs(&self.circuits(u), u.crossing_count())[x][y]
    }
}

/// Transposition `C ↦ C∗v∗w∗v` on an interlaced pair: the transitions at `v`
/// and `w` switch between `Follow` and `Cross`.
pub fn transpose(u: &Universe, c: &EulerSystem, v: &str, w: &str) -> Result<EulerSystem, DiagramError> {
    let (i, j) = (u.index_of(v)?, u.index_of(w)?);
    if !c.interlaced(u, i, j) {
        return Err(DiagramError::NotInterlaced(v.to_string(), w.to_string()));
    }
    Ok(transpose_at(c, i, j))
}

pub(crate) fn transpose_at(c: &EulerSystem, i: usize, j: usize) -> EulerSystem {
    let mut transitions = c.transitions.clone();
    for x in [i, j] {
        transitions[x] = match transitions[x] {
            Transition::Follow => Transition::Cross,
            _ => Transition::Follow,
        };
    }
    EulerSystem { transitions }
}

/// The unmarked, unlooped interlacement graph `I(U, C)` with `c(U) - 1`
/// free loops.
pub fn interlacement_graph(u: &Universe, c: &EulerSystem) -> MarkedGraph {
    let n = u.crossing_count();
    let pairs = interlaced_pairs(&c.circuits(u), n);
    let mut g = MarkedGraph::free_loops_only(u.connected_components() - 1);
    for id in &u.ids {
        g.add_vertex(id.clone(), false, false).expect("crossing ids are distinct");
    }
    for (x, row) in pairs.iter().enumerate() {
        for y in (x + 1..n).filter(|&y| row[y]) {
            g.add_edge(&u.ids[x], &u.ids[y]).expect("fresh edge");
        }
    }
    g
}

/// `L(D, C)`: loops at negative crossings, marks where `C` crosses.
pub fn looped_interlacement(u: &Universe, c: &EulerSystem) -> MarkedGraph {
    let mut g = interlacement_graph(u, c);
    for x in 0..u.crossing_count() {
        g.set_looped(x, u.signs[x] == Sign::Negative);
        g.set_marked(x, c.is_marked(x));
    }
    g
}

/// `L(D, C)` for the default Euler system of `d`.
pub fn diagram_graph(d: &LinkDiagram) -> MarkedGraph {
    let u = build_universe(d);
    looped_interlacement(&u, &euler_system(&u))
}

/// Checks that transposing `C` on `v, w` changes `L(D, C)` by the marked
/// pivot on `v, w`.
pub fn graph_transposition_consistency(
    u: &Universe,
    c: &EulerSystem,
    v: &str,
    w: &str,
) -> Result<bool, DiagramError> {
    let g = looped_interlacement(u, c);
    let (i, j) = (u.index_of(v)?, u.index_of(w)?);
    if !g.is_adjacent(i, j) {
        return Err(DiagramError::NotAdjacent(v.to_string(), w.to_string()));
    }
    let transposed = looped_interlacement(u, &transpose_at(c, i, j));
    Ok(transposed == g.marked_pivot_at(i, j))
}

/// Any partition of the universe's edges into undirected circuits, given by
/// a transition at each crossing relative to the link components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircuitPartition {
    pub transitions: Vec<Transition>,
}

impl CircuitPartition {
    pub fn new(u: &Universe, transitions: Vec<Transition>) -> Result<Self, DiagramError> {
        u.check_len(transitions.len())?;
        Ok(Self { transitions })
    }

    pub fn count_circuits(&self, u: &Universe) -> usize {
        u.count_circuits(&self.transitions)
    }
}

pub fn count_circuits(u: &Universe, p: &CircuitPartition) -> usize {
    p.count_circuits(u)
}

/// `I_P(U, C)`: the interlacement matrix of `C` with rows and columns removed
/// where `P` follows `C`, and diagonal entries set where `P` is
/// orientation-inconsistent.
pub fn cohn_lempel_matrix(u: &Universe, c: &EulerSystem, p: &CircuitPartition) -> Gf2Matrix {
    let n = u.crossing_count();
    let pairs = interlaced_pairs(&c.circuits(u), n);
    let relative: Vec<Transition> = (0..n)
        .map(|x| p.transitions[x].relative_to(c.transitions[x]))
        .collect();
    let keep: Vec<usize> = (0..n).filter(|&x| relative[x] != Transition::Follow).collect();
    let mut m = Gf2Matrix::zeros(keep.len(), keep.len());
    for (a, &x) in keep.iter().enumerate() {
        for (b, &y) in keep.iter().enumerate() {
            let entry = if x == y {
                relative[x] == Transition::Flip
            } else {
                pairs[x][y]
            };
            m.set(a, b, entry);
        }
    }
    m
}
