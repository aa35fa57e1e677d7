//! Seeded inputs shared by the benchmarks.

use markedbracket::diagram::LinkDiagram;
use markedbracket::generate::{random_diagram, random_graph, seeded};
use markedbracket::MarkedGraph;

pub fn graphs(n: usize, count: usize) -> Vec<MarkedGraph> {
    let mut rng = seeded(n as u64);
    (0..count).map(|_| random_graph(&mut rng, n)).collect()
}

pub fn diagrams(crossings: usize, components: usize, count: usize) -> Vec<LinkDiagram> {
    let mut rng = seeded(crossings as u64);
    (0..count).map(|_| random_diagram(&mut rng, crossings, components)).collect()
}
