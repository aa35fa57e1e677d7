//! The marked-graph bracket `[G]`, evaluated either as a GF(2)-nullity
//! state sum over vertex subsets or by the local-complement / pivot
//! recursion, plus the reduced bracket and Jones polynomial built on it.

use crate::algebra::gf2::nullity_small;
use crate::algebra::{BracketPoly, Laurent, Monomial};
use crate::graph::{GraphError, MarkedGraph};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Largest vertex count the subset-sum engine accepts.
pub const MAX_NULLITY_VERTICES: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Nullity,
    Recursion,
    /// Runs both engines and fails if they disagree.
    Both,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nullity" => Ok(Method::Nullity),
            "recursion" => Ok(Method::Recursion),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method `{other}` (nullity|recursion|both)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Nullity => "nullity",
            Method::Recursion => "recursion",
            Method::Both => "both",
        })
    }
}

#[derive(Debug, Error)]
pub enum BracketError {
    #[error("engines disagree: nullity gives {nullity}, recursion gives {recursion}")]
    EngineDisagreement {
        nullity: BracketPoly,
        recursion: BracketPoly,
    },
    #[error("graph has {0} vertices; the subset sum handles at most {MAX_NULLITY_VERTICES}")]
    TooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketResult {
    pub bracket: BracketPoly,
    /// `[G]` at `B = A^{-1}`, `d = -A^2 - A^{-2}`, in powers of `A`.
    pub reduced: Laurent,
    /// `V_G` in powers of `t^{1/4}`.
    pub jones: Laurent,
    pub n: usize,
    pub looped_count: usize,
}

impl BracketResult {
    pub fn from_bracket(g: &MarkedGraph, bracket: BracketPoly) -> Self {
        let reduced = bracket.reduce();
        let jones = reduced.jones_normalize(g.len(), g.looped_count());
        Self {
            bracket,
            reduced,
            jones,
            n: g.len(),
            looped_count: g.looped_count(),
        }
    }
}

/// Evaluates `[G]`, `⟨G⟩` and `V_G` with the chosen engine.
pub fn bracket(g: &MarkedGraph, method: Method) -> Result<BracketResult, BracketError> {
    let poly = match method {
        Method::Nullity => checked_nullity(g)?,
        Method::Recursion => bracket_recursive(g),
        Method::Both => {
            let nullity = checked_nullity(g)?;
            let recursion = bracket_recursive(g);
            if nullity != recursion {
                return Err(BracketError::EngineDisagreement { nullity, recursion });
            }
            nullity
        }
    };
    debug_assert!(poly.is_polynomial(), "negative exponent in {poly}");
    Ok(BracketResult::from_bracket(g, poly))
}

fn checked_nullity(g: &MarkedGraph) -> Result<BracketPoly, BracketError> {
    if g.len() > MAX_NULLITY_VERTICES {
        return Err(BracketError::TooLarge(g.len()));
    }
    Ok(bracket_nullity(g))
}

/// `[G] = d^φ Σ_{T ⊆ V} A^{n-|T|} B^{|T|} d^{ν(A(G)_T)}`.
///
/// Panics above [`MAX_NULLITY_VERTICES`] vertices.
pub fn bracket_nullity(g: &MarkedGraph) -> BracketPoly {
    let n = g.len();
    assert!(n <= MAX_NULLITY_VERTICES, "{n} vertices is too many for the subset sum");
    let adjacency: Vec<u64> = (0..n).map(|i| g.neighbor_mask(i)).collect();
    let looped = g.vertices().iter().enumerate().fold(0u64, |m, (i, v)| m | (v.looped as u64) << i);
    let marked = g.vertices().iter().enumerate().fold(0u64, |m, (i, v)| m | (v.marked as u64) << i);

    // (|T|, nullity) -> number of subsets
    let mut tally: HashMap<(u32, usize), u64> = HashMap::new();
    let mut rows = vec![0u64; n];
    for t in 0u64..1 << n {
        let diagonal = looped ^ t;
        let deleted = marked & !diagonal;
        for (i, row) in rows.iter_mut().enumerate() {
            let bit = 1u64 << i;
            *row = if deleted & bit != 0 {
                // a unit row and column stand in for a deleted index
                bit
            } else {
                (adjacency[i] & !deleted) | (diagonal & bit)
            };
        }
        *tally.entry((t.count_ones(), nullity_small(&mut rows))).or_default() += 1;
    }

    let mut out = BracketPoly::zero();
    for ((size, nullity), count) in tally {
        let size = size as i64;
        out.add_term(
            Monomial::new(n as i64 - size, size, (nullity + g.free_loops()) as i64),
            count.into(),
        );
    }
    out
}

fn a_inv_b() -> BracketPoly {
    BracketPoly::monomial(1, Monomial::new(-1, 1, 0))
}

/// Closed form for graphs whose only edges are loops.
fn edgeless_bracket(g: &MarkedGraph) -> BracketPoly {
    let (mut marked, mut unlooped, mut looped) = (0, 0, 0);
    for v in g.vertices() {
        match (v.marked, v.looped) {
            (true, _) => marked += 1,
            (false, false) => unlooped += 1,
            (false, true) => looped += 1,
        }
    }
    let a = BracketPoly::a();
    let b = BracketPoly::b();
    let d = BracketPoly::d();
    let mut out = d.pow(g.free_loops() as u32);
    out = &out * &(&a + &b).pow(marked);
    out = &out * &(&(&a * &d) + &b).pow(unlooped);
    &out * &(&a + &(&b * &d)).pow(looped)
}

/// `[G]` by the recursion on local complements and pivots.
///
/// Marked neighbors are first pivoted apart, then marked vertices,
/// loops and finally edges are eliminated; graphs with no non-loop edges
/// use the closed product form, and disconnected graphs are split into
/// components. Intermediate terms may carry `A^{-1}`.
pub fn bracket_recursive(g: &MarkedGraph) -> BracketPoly {
    let mut memo = HashMap::new();
    recurse(g, &mut memo)
}

/// Bounds memory on large inputs; lookups continue once the table is full.
const MEMO_CAPACITY: usize = 1 << 16;

fn memo_key(g: &MarkedGraph) -> Option<String> {
    (g.len() <= 8).then(|| {
        let mut key = String::with_capacity(g.len() * (g.len() + 2));
        for (i, v) in g.vertices().iter().enumerate() {
            key.push(char::from(b'0' + (v.looped as u8) + 2 * (v.marked as u8)));
            for j in 0..i {
                key.push(if g.is_adjacent(i, j) { '1' } else { '0' });
            }
        }
        key
    })
}

fn recurse(g: &MarkedGraph, memo: &mut HashMap<String, BracketPoly>) -> BracketPoly {
    if g.free_loops() > 0 {
        let rest = recurse(&g.without_free_loops(), memo);
        return &BracketPoly::d().pow(g.free_loops() as u32) * &rest;
    }
    if !g.has_edges() {
        return edgeless_bracket(g);
    }
    let parts = g.connected_components();
    if parts.len() > 1 {
        return parts
            .iter()
            .fold(BracketPoly::one(), |acc, part| &acc * &recurse(&g.induced(part), memo));
    }
    let key = memo_key(g);
    if let Some(hit) = key.as_ref().and_then(|k| memo.get(k)) {
        return hit.clone();
    }
    let value = recursion_step(g, memo);
    if let Some(k) = key.filter(|_| memo.len() < MEMO_CAPACITY) {
        memo.insert(k, value.clone());
    }
    value
}

fn recursion_step(g: &MarkedGraph, memo: &mut HashMap<String, BracketPoly>) -> BracketPoly {
    let n = g.len();
    let a = BracketPoly::a();
    let b = BracketPoly::b();

    // (a) adjacent marked vertices
    if let Some((v, w)) = g
        .edges()
        .find(|&(v, w)| g.vertex(v).marked && g.vertex(w).marked)
    {
        return recurse(&g.marked_pivot_at(v, w), memo);
    }

    // (b), (c): a marked vertex, necessarily without marked neighbors now
    if let Some(v) = (0..n).find(|&v| g.vertex(v).marked && g.degree(v) > 0) {
        let minus = recurse(&g.delete_vertex_at(v), memo);
        let complement = recurse(&g.local_complement_at(v).delete_vertex_at(v), memo);
        return if g.vertex(v).looped {
            &(&b * &minus) + &(&a * &complement)
        } else {
            &(&a * &minus) + &(&b * &complement)
        };
    }

    // (d): every marked vertex is isolated, so no neighbor of v is marked
    if let Some(v) = (0..n).find(|&v| g.vertex(v).looped && g.degree(v) > 0) {
        let mut unlooped = g.clone();
        unlooped.set_looped(v, false);
        let first = recurse(&unlooped, memo);
        let second = recurse(&g.local_complement_at(v).delete_vertex_at(v), memo);
        let coefficient = &a - &(&a_inv_b() * &b);
        return &(&a_inv_b() * &first) + &(&coefficient * &second);
    }

    // (e): what remains with edges is unlooped and unmarked
    let v = (0..n)
        .find(|&v| g.degree(v) > 0)
        .expect("graph has an edge");
    let w = g.neighbors(v).next().expect("v has a neighbor");
    let pivoted = g.pivot_at(v, w);
    let drop_both = |h: &MarkedGraph| h.delete_vertices_at(&[v, w]);
    let first = recurse(&drop_both(&pivoted), memo);
    let second = recurse(&drop_both(&pivoted.local_complement_at(v)), memo);
    let third = recurse(&g.local_complement_at(v).delete_vertex_at(v), memo);
    let a2 = a.pow(2);
    let ab = &a * &b;
    &(&(&a2 * &first) + &(&ab * &second)) + &(&b * &third)
}

/// Reduced bracket `⟨G⟩`.
pub fn reduced_bracket(g: &MarkedGraph) -> Laurent {
    bracket_nullity(g).reduce()
}

/// Jones polynomial `V_G` in powers of `t^{1/4}`.
pub fn jones(g: &MarkedGraph) -> Laurent {
    reduced_bracket(g).jones_normalize(g.len(), g.looped_count())
}

/// Checks `[G] = AB^{-1}[G - {v,v}] + (B - A^2 B^{-1})[G - v]` for a looped,
/// marked `v`.
pub fn check_old_recursion(g: &MarkedGraph, v: &str) -> Result<bool, BracketError> {
    let i = g.index_of(v)?;
    let vertex = g.vertex(i);
    if !(vertex.looped && vertex.marked) {
        return Err(BracketError::Precondition(format!(
            "`{v}` must be looped and marked"
        )));
    }
    let a_over_b = BracketPoly::monomial(1, Monomial::new(1, -1, 0));
    let coefficient = &BracketPoly::b() - &BracketPoly::monomial(1, Monomial::new(2, -1, 0));
    let rhs = &(&a_over_b * &bracket_nullity(&g.delete_loop(v)?))
        + &(&coefficient * &bracket_nullity(&g.delete_vertex_at(i)));
    Ok(bracket_nullity(g) == rhs)
}

/// Checks `[G] = [G^v - {v,v}]` for a looped, marked `v` with no marked neighbor.
pub fn check_reverse(g: &MarkedGraph, v: &str) -> Result<bool, BracketError> {
    let i = g.index_of(v)?;
    let vertex = g.vertex(i);
    if !(vertex.looped && vertex.marked) || g.neighbors(i).any(|x| g.vertex(x).marked) {
        return Err(BracketError::Precondition(format!(
            "`{v}` must be looped and marked with no marked neighbor"
        )));
    }
    let reversed = g.local_complement_at(i).delete_loop(v)?;
    Ok(bracket_nullity(g) == bracket_nullity(&reversed))
}
