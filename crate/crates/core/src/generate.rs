//! Seeded random and exhaustive generators for diagrams, graphs, circuit
//! partitions and Euler systems.

use crate::diagram::{
    looped_interlacement, transpose_at, CircuitPartition, EulerSystem, LinkDiagram, Pass, Sign,
    Transition, Universe,
};
use crate::graph::MarkedGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Splits `len` items into `parts` nonempty consecutive runs.
fn random_cuts<R: Rng>(rng: &mut R, len: usize, parts: usize) -> Vec<usize> {
    let mut cuts = rand::seq::index::sample(rng, len - 1, parts - 1).into_vec();
    for c in &mut cuts {
        *c += 1;
    }
    cuts.sort_unstable();
    cuts
}

/// A random signed double-occurrence code with `crossings` crossings split
/// into `components` components. Components beyond `2 * crossings` are
/// crossing-free.
pub fn random_diagram<R: Rng>(rng: &mut R, crossings: usize, components: usize) -> LinkDiagram {
    let components = components.max(1);
    let signs: Vec<Sign> = (0..crossings).map(|_| random_sign(rng)).collect();
    let mut word: Vec<usize> = (0..crossings).flat_map(|x| [x, x]).collect();
    word.shuffle(rng);
    let with_crossings = components.min(word.len());
    let mut parts = Vec::new();
    if with_crossings > 0 {
        let mut start = 0;
        for end in random_cuts(rng, word.len(), with_crossings).into_iter().chain([word.len()]) {
            parts.push(
                word[start..end]
                    .iter()
                    .map(|&x| Pass {
                        crossing: (x + 1).to_string(),
                        sign: signs[x],
                    })
                    .collect(),
            );
            start = end;
        }
    }
    LinkDiagram::new(parts, components - with_crossings).expect("generated code is valid")
}

/// A random marked graph on `n` vertices `v0, v1, …` with independent
/// loops, marks and edges, each present with probability one half, and up
/// to two free loops.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> MarkedGraph {
    let mut g = MarkedGraph::free_loops_only(rng.gen_range(0..3));
    for i in 0..n {
        g.add_vertex(format!("v{i}"), rng.gen(), rng.gen()).expect("fresh id");
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen() {
                g.toggle_edge(i, j);
            }
        }
    }
    g
}

pub fn random_partition<R: Rng>(rng: &mut R, u: &Universe) -> CircuitPartition {
    CircuitPartition {
        transitions: (0..u.crossing_count())
            .map(|_| *Transition::ALL.choose(rng).expect("nonempty"))
            .collect(),
    }
}

/// Applies `steps` transpositions on randomly chosen interlaced pairs.
pub fn random_transposed<R: Rng>(rng: &mut R, u: &Universe, c: &EulerSystem, steps: usize) -> EulerSystem {
    let mut c = c.clone();
    for _ in 0..steps {
        let edges: Vec<(usize, usize)> = looped_interlacement(u, &c).edges().collect();
        let Some(&(i, j)) = edges.choose(rng) else { break };
        c = transpose_at(&c, i, j);
    }
    c
}

/// Every marked graph on vertices `v0 … v{n-1}`: all combinations of
/// loops, marks and edges, with no free loops.
pub fn all_graphs(n: usize) -> Vec<MarkedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for loops in 0u32..1 << n {
        for marks in 0u32..1 << n {
            for edges in 0u64..1 << pairs.len() {
                let mut g = MarkedGraph::new();
                for i in 0..n {
                    g.add_vertex(format!("v{i}"), loops >> i & 1 == 1, marks >> i & 1 == 1)
                        .expect("fresh id");
                }
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if edges >> k & 1 == 1 {
                        g.toggle_edge(i, j);
                    }
                }
                out.push(g);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlantedMove {
    Omega2a,
    Omega2b,
    Omega2c,
    Omega3,
}

/// Adds fresh vertices to `g` so that a move of the given kind applies to
/// them; with `mirror`, the planted configuration is the loop-toggled one.
pub fn plant<R: Rng>(rng: &mut R, g: &MarkedGraph, kind: PlantedMove, mirror: bool) -> MarkedGraph {
    let mut h = if mirror { g.toggle_all_loops() } else { g.clone() };
    let old = h.len();
    let fresh = |h: &MarkedGraph, stem: &str| {
        (0..)
            .map(|i| format!("{stem}{i}"))
            .find(|id| !h.contains(id))
            .expect("unbounded supply of ids")
    };
    let add = |h: &mut MarkedGraph, stem: &str, looped: bool, marked: bool| {
        let id = fresh(h, stem);
        h.add_vertex(id, looped, marked).expect("fresh id")
    };
    match kind {
        PlantedMove::Omega2a | PlantedMove::Omega2b | PlantedMove::Omega2c => {
            let marked = kind != PlantedMove::Omega2a;
            let v = add(&mut h, "p", true, marked);
            let w = add(&mut h, "q", false, false);
            if marked || rng.gen() {
                h.toggle_edge(v, w);
            }
            for x in 0..old {
                if rng.gen() {
                    h.toggle_edge(x, v);
                    if kind != PlantedMove::Omega2b {
                        h.toggle_edge(x, w);
                    }
                }
            }
        }
        PlantedMove::Omega3 => {
            let t = [add(&mut h, "r", true, false), add(&mut h, "s", false, false), add(&mut h, "t", false, false)];
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                h.toggle_edge(t[a], t[b]);
            }
            for x in 0..old {
                if let Some((a, b)) = *[None, Some((0, 1)), Some((0, 2)), Some((1, 2))].choose(rng).expect("nonempty") {
                    h.toggle_edge(x, t[a]);
                    h.toggle_edge(x, t[b]);
                }
            }
        }
    }
    if mirror {
        h.toggle_all_loops()
    } else {
        h
    }
}

/// Double-occurrence words on `n` letters, labelled in order of first
/// occurrence, so each word appears once up to relabelling.
pub fn canonical_words(n: usize) -> Vec<Vec<usize>> {
    fn extend(word: &mut Vec<usize>, counts: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == 2 * n {
            out.push(word.clone());
            return;
        }
        let opened = counts.iter().filter(|&&c| c > 0).count();
        for x in 0..n.min(opened + 1) {
            if counts[x] < 2 {
                counts[x] += 1;
                word.push(x);
                extend(word, counts, n, out);
                word.pop();
                counts[x] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![0; n], n, &mut out);
    out
}

/// Every signed code with exactly `n` crossings, up to relabelling: each
/// canonical word, cut into consecutive nonempty components in every way,
/// under every sign assignment. For `n = 0` this is `o` and `o|o`.
pub fn all_codes(n: usize) -> Vec<LinkDiagram> {
    if n == 0 {
        return vec![
            LinkDiagram::new(vec![], 1).expect("valid"),
            LinkDiagram::new(vec![], 2).expect("valid"),
        ];
    }
    let mut out = Vec::new();
    for word in canonical_words(n) {
        for cuts in 0..1u32 << (2 * n - 1) {
            for signs in 0..1u32 << n {
                let mut parts: Vec<Vec<Pass>> = vec![Vec::new()];
                for (k, &x) in word.iter().enumerate() {
                    if k > 0 && cuts >> (k - 1) & 1 == 1 {
                        parts.push(Vec::new());
                    }
                    let sign = if signs >> x & 1 == 1 { Sign::Negative } else { Sign::Positive };
                    parts.last_mut().expect("nonempty").push(Pass {
                        crossing: (x + 1).to_string(),
                        sign,
                    });
                }
                out.push(LinkDiagram::new(parts, 0).expect("valid"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_universe;

    #[test]
    fn graph_enumeration_counts() {
        assert_eq!(all_graphs(0).len(), 1);
        assert_eq!(all_graphs(3).len(), 8 * 8 * 8);
        assert_eq!(all_graphs(4).len(), 16 * 16 * 64);
    }

    #[test]
    fn canonical_word_counts() {
        // (2n)! / (2^n n!)
        let counts: Vec<usize> = (0..=5).map(|n| canonical_words(n).len()).collect();
        assert_eq!(counts, [1, 1, 3, 15, 105, 945]);
        assert_eq!(canonical_words(2), [vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1, 1, 0]]);
    }

    #[test]
    fn code_enumeration() {
        assert_eq!(all_codes(0).len(), 2);
        assert_eq!(all_codes(1).len(), 2 * 2);
        assert_eq!(all_codes(2).len(), 3 * 8 * 4);
        assert!(all_codes(2).iter().any(|d| d.to_string() == "1+,2-|1+,2-"));
    }

    #[test]
    fn random_diagrams_are_valid_and_reproducible() {
        let mut rng = seeded(7);
        for _ in 0..200 {
            let n = rng.gen_range(0..9);
            let k = rng.gen_range(1..4);
            let d = random_diagram(&mut rng, n, k);
            assert_eq!(d.crossing_count(), n);
            assert_eq!(d.component_count(), k);
        }
        let a = random_diagram(&mut seeded(3), 6, 2);
        let b = random_diagram(&mut seeded(3), 6, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn transposed_systems_stay_eulerian() {
        let mut rng = seeded(1);
        for _ in 0..50 {
            let d = random_diagram(&mut rng, 6, 2);
            let u = build_universe(&d);
            let c = random_transposed(&mut rng, &u, &crate::diagram::euler_system(&u), 3);
            assert!(EulerSystem::new(&u, c.transitions().to_vec()).is_ok(), "{d}");
        }
    }

    #[test]
    fn planted_moves_are_found() {
        use crate::moves::{candidates, MoveKind};
        let mut rng = seeded(2);
        for (planted, kinds) in [
            (PlantedMove::Omega2a, &[MoveKind::Omega2a][..]),
            (PlantedMove::Omega2b, &[MoveKind::Omega2b, MoveKind::Omega2c][..]),
            (PlantedMove::Omega2c, &[MoveKind::Omega2b, MoveKind::Omega2c][..]),
            (PlantedMove::Omega3, &[MoveKind::Omega3][..]),
        ] {
            for mirror in [false, true] {
                for _ in 0..20 {
                    let g = random_graph(&mut rng, 4);
                    let h = plant(&mut rng, &g, planted, mirror);
                    assert!(
                        candidates(&h)
                            .iter()
                            .any(|m| kinds.contains(&m.kind) && (m.mirror == mirror || m.kind == MoveKind::Omega2a)),
                        "{planted:?} {mirror} {h}"
                    );
                }
            }
        }
    }
}
