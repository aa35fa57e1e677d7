//! Reidemeister-type moves on marked graphs, kink insertion on diagrams and
//! a greedy simplifier.
//!
//! A move with `mirror` set is the same move conjugated by toggling every
//! loop: toggle, apply, toggle back.

use crate::bracket::{jones, reduced_bracket};
use crate::diagram::{LinkDiagram, Pass, Sign};
use crate::graph::{GraphError, MarkedGraph};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Omega1Add,
    Omega1Remove,
    Omega2a,
    Omega2b,
    Omega2c,
    Omega3,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Omega1Add => "omega1add",
            MoveKind::Omega1Remove => "omega1remove",
            MoveKind::Omega2a => "omega2a",
            MoveKind::Omega2b => "omega2b",
            MoveKind::Omega2c => "omega2c",
            MoveKind::Omega3 => "omega3",
        }
    }
}

/// A move together with the vertices it touches.
///
/// For Ω.1 moves the mirror flag doubles as the loop flag of the vertex.
/// For Ω.2b/Ω.2c the optional third vertex is the pivot partner `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub vertices: Vec<String>,
    pub partner: Option<String>,
    pub mirror: bool,
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut args = self.vertices.clone();
        args.extend(self.partner.iter().cloned());
        write!(f, "{}({})", self.kind.name(), args.join(","))?;
        if self.mirror {
            f.write_str(",mirror")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{0} does not apply: {1}")]
    Precondition(String, &'static str),
    #[error("component {component} has no position {position}")]
    BadPosition { component: usize, position: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn ids(g: &MarkedGraph, indices: &[usize]) -> Vec<String> {
    indices.iter().map(|&i| g.vertex(i).id.clone()).collect()
}

/// Adjoins an isolated unmarked vertex.
pub fn omega1_add(g: &MarkedGraph, id: &str, looped: bool) -> Result<MarkedGraph, MoveError> {
    let mut out = g.clone();
    out.add_vertex(id.to_string(), looped, false)?;
    Ok(out)
}

/// Deletes an isolated unmarked vertex.
pub fn omega1_remove(g: &MarkedGraph, id: &str) -> Result<MarkedGraph, MoveError> {
    let v = g.index_of(id)?;
    if g.degree(v) > 0 || g.vertex(v).marked {
        return Err(MoveError::Precondition(
            format!("omega1remove({id})"),
            "vertex must be isolated and unmarked",
        ));
    }
    Ok(g.delete_vertex_at(v))
}

pub fn omega1_candidates(g: &MarkedGraph) -> Vec<MoveInstance> {
    (0..g.len())
        .filter(|&v| g.degree(v) == 0 && !g.vertex(v).marked)
        .map(|v| MoveInstance {
            kind: MoveKind::Omega1Remove,
            vertices: ids(g, &[v]),
            partner: None,
            mirror: g.vertex(v).looped,
        })
        .collect()
}

/// `N(v) \ {w} = N(w) \ {v}`.
fn same_outside_neighbors(g: &MarkedGraph, v: usize, w: usize) -> bool {
    (0..g.len())
        .filter(|&x| x != v && x != w)
        .all(|x| g.is_adjacent(x, v) == g.is_adjacent(x, w))
}

fn is_2a(g: &MarkedGraph, v: usize, w: usize) -> bool {
    let (a, b) = (g.vertex(v), g.vertex(w));
    a.looped && !a.marked && !b.looped && !b.marked && same_outside_neighbors(g, v, w)
}

fn bc_flags(g: &MarkedGraph, v: usize, w: usize) -> bool {
    let (a, b) = (g.vertex(v), g.vertex(w));
    a.looped && a.marked && !b.looped && !b.marked && g.is_adjacent(v, w)
}

fn is_2b(g: &MarkedGraph, v: usize, w: usize) -> bool {
    bc_flags(g, v, w) && g.degree(w) == 1
}

fn is_2c(g: &MarkedGraph, v: usize, w: usize) -> bool {
    bc_flags(g, v, w) && same_outside_neighbors(g, v, w)
}

/// The pivot partner for Ω.2b/Ω.2c: the neighbor of `v` other than `w`
/// with the smallest id.
fn partner(g: &MarkedGraph, v: usize, w: usize) -> Option<usize> {
    g.neighbors(v).filter(|&z| z != w).min_by_key(|&z| &g.vertex(z).id)
}

fn unmirrored_omega2(g: &MarkedGraph, mirror: bool) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for v in 0..g.len() {
        for w in (0..g.len()).filter(|&w| w != v) {
            let kind = if is_2a(g, v, w) && !mirror {
                // the mirror of a twin pair is the same pair with roles swapped
                MoveKind::Omega2a
            } else if is_2b(g, v, w) {
                MoveKind::Omega2b
            } else if is_2c(g, v, w) {
                MoveKind::Omega2c
            } else {
                continue;
            };
            let partner = match kind {
                MoveKind::Omega2a => None,
                _ => partner(g, v, w).map(|z| g.vertex(z).id.clone()),
            };
            out.push(MoveInstance {
                kind,
                vertices: ids(g, &[v, w]),
                partner,
                mirror,
            });
        }
    }
    out
}

/// Every Ω.2 instance on `g`, mirrored ones included.
pub fn omega2_candidates(g: &MarkedGraph) -> Vec<MoveInstance> {
    let mut out = unmirrored_omega2(g, false);
    out.extend(unmirrored_omega2(&g.toggle_all_loops(), true));
    out
}

fn conjugate(
    g: &MarkedGraph,
    mirror: bool,
    f: impl FnOnce(&MarkedGraph) -> Result<MarkedGraph, MoveError>,
) -> Result<MarkedGraph, MoveError> {
    if mirror {
        Ok(f(&g.toggle_all_loops())?.toggle_all_loops())
    } else {
        f(g)
    }
}

pub fn omega2_apply(g: &MarkedGraph, m: &MoveInstance) -> Result<MarkedGraph, MoveError> {
    let stale = |why| MoveError::Precondition(m.to_string(), why);
    let [v, w] = m.vertices.as_slice() else {
        return Err(stale("an omega2 move names two vertices"));
    };
    let (v, w) = (g.index_of(v)?, g.index_of(w)?);
    conjugate(g, m.mirror, |h| match m.kind {
        MoveKind::Omega2a => {
            if !is_2a(h, v, w) {
                return Err(stale("needs a looped and an unlooped unmarked vertex with equal outside neighbors"));
            }
            Ok(h.delete_vertices_at(&[v, w]))
        }
        MoveKind::Omega2b | MoveKind::Omega2c => {
            let holds = if m.kind == MoveKind::Omega2b { is_2b(h, v, w) } else { is_2c(h, v, w) };
            if !holds {
                return Err(stale("vertex flags or neighborhoods do not match"));
            }
            let z = partner(h, v, w);
            if z.map(|z| h.vertex(z).id.as_str()) != m.partner.as_deref() {
                return Err(stale("pivot partner changed"));
            }
            Ok(match z {
                None => h.delete_vertices_at(&[v, w]).add_free_loop(),
                Some(z) => h.marked_pivot_at(v, z).delete_vertices_at(&[v, w]),
            })
        }
        _ => Err(stale("not an omega2 move")),
    })
}

fn is_3a(g: &MarkedGraph, u: usize, v: usize, w: usize) -> bool {
    let t = [u, v, w];
    let flags = [g.vertex(u), g.vertex(v), g.vertex(w)];
    flags.iter().all(|x| !x.marked)
        && flags[0].looped
        && !flags[1].looped
        && !flags[2].looped
        && g.is_adjacent(u, v)
        && g.is_adjacent(u, w)
        && g.is_adjacent(v, w)
        && (0..g.len())
            .filter(|x| !t.contains(x))
            .all(|x| t.iter().filter(|&&y| g.is_adjacent(x, y)).count() % 2 == 0)
}

pub fn omega3_candidates(g: &MarkedGraph) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for (h, mirror) in [(g.clone(), false), (g.toggle_all_loops(), true)] {
        for u in 0..h.len() {
            for v in 0..h.len() {
                for w in v + 1..h.len() {
                    if u != v && u != w && is_3a(&h, u, v, w) {
                        out.push(MoveInstance {
                            kind: MoveKind::Omega3,
                            vertices: ids(&h, &[u, v, w]),
                            partner: None,
                            mirror,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Removes the triangle on `u, v, w`, where `u` is the looped apex (the
/// unlooped one when `mirror` is set).
pub fn omega3_apply(g: &MarkedGraph, u: &str, v: &str, w: &str, mirror: bool) -> Result<MarkedGraph, MoveError> {
    let (iu, iv, iw) = (g.index_of(u)?, g.index_of(v)?, g.index_of(w)?);
    conjugate(g, mirror, |h| {
        if iu == iv || iu == iw || iv == iw || !is_3a(h, iu, iv, iw) {
            return Err(MoveError::Precondition(
                format!("omega3({u},{v},{w})"),
                "needs an unmarked triangle with one looped apex and outside vertices seeing 0 or 2 of it",
            ));
        }
        let mut out = h.clone();
        for (a, b) in [(iu, iv), (iu, iw), (iv, iw)] {
            out.toggle_edge(a, b);
        }
        Ok(out)
    })
}

/// Applies any candidate produced by this module.
pub fn apply(g: &MarkedGraph, m: &MoveInstance) -> Result<MarkedGraph, MoveError> {
    match m.kind {
        MoveKind::Omega1Add => omega1_add(g, &m.vertices[0], m.mirror),
        MoveKind::Omega1Remove => omega1_remove(g, &m.vertices[0]),
        MoveKind::Omega3 => omega3_apply(g, &m.vertices[0], &m.vertices[1], &m.vertices[2], m.mirror),
        _ => omega2_apply(g, m),
    }
}

/// All Ω.1-remove, Ω.2 and Ω.3 candidates, in that order.
pub fn candidates(g: &MarkedGraph) -> Vec<MoveInstance> {
    let mut out = omega1_candidates(g);
    out.extend(omega2_candidates(g));
    out.extend(omega3_candidates(g));
    out
}

/// Applies Ω.1 removals and Ω.2 moves until none is left. Returns the final
/// graph and the moves used.
pub fn simplify_logged(g: &MarkedGraph) -> (MarkedGraph, Vec<MoveInstance>) {
    let mut current = g.clone();
    let mut log = Vec::new();
    loop {
        let next = omega1_candidates(&current)
            .into_iter()
            .chain(omega2_candidates(&current))
            .next();
        let Some(m) = next else { break };
        current = apply(&current, &m).expect("fresh candidate applies");
        log.push(m);
    }
    assert_eq!(jones(&current), jones(g), "simplification changed the Jones polynomial");
    (current, log)
}

pub fn simplify(g: &MarkedGraph) -> MarkedGraph {
    simplify_logged(g).0
}

/// True when `⟨G⟩` is unchanged by the move.
pub fn preserves_reduced_bracket(g: &MarkedGraph, m: &MoveInstance) -> Result<bool, MoveError> {
    Ok(reduced_bracket(&apply(g, m)?) == reduced_bracket(g))
}

fn fresh_crossing_id(d: &LinkDiagram) -> String {
    let used = d.crossings();
    std::iter::once("k".to_string())
        .chain((1..).map(|i| format!("k{i}")))
        .find(|id| !used.contains(&id.as_str()))
        .expect("unbounded supply of ids")
}

/// Inserts a one-crossing kink into component `component` before pass
/// `position`. Components are numbered as listed, crossing-free ones after
/// the others; a crossing-free component takes position 0 only.
pub fn insert_kink(d: &LinkDiagram, component: usize, position: usize, sign: Sign) -> Result<LinkDiagram, MoveError> {
    let bad = MoveError::BadPosition { component, position };
    let id = fresh_crossing_id(d);
    let kink = [
        Pass { crossing: id.clone(), sign },
        Pass { crossing: id, sign },
    ];
    let (mut components, mut crossing_free) = d.clone().into_parts();
    if component < components.len() {
        let comp = &mut components[component];
        if position > comp.len() {
            return Err(bad);
        }
        comp.splice(position..position, kink);
    } else if component < components.len() + crossing_free && position == 0 {
        crossing_free -= 1;
        components.push(kink.to_vec());
    } else {
        return Err(bad);
    }
    Ok(LinkDiagram::new(components, crossing_free).expect("kink keeps the code valid"))
}
