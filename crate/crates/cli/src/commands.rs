use crate::Format;
use markedbracket::bracket::BracketError;
use markedbracket::diagram::{
    build_universe, diagram_graph, euler_system, looped_interlacement, parse_gauss, GaussParseError, LinkDiagram,
    Universe,
};
use markedbracket::generate::{random_diagram, random_partition, seeded, SeededRng};
use markedbracket::graph::GraphParseError;
use markedbracket::moves::{candidates, simplify_logged, MoveError};
use markedbracket::oracle::{verify_diagram, DiagramReport, GuardExceeded};
use markedbracket::{bracket_nullity, bracket_recursive, MarkedGraph, Method};
use serde_json::json;
use std::fmt;
use std::path::PathBuf;

pub const VERIFICATION_FAILED: u8 = 1;

/// Errors that end the run with the usage/parse exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Read(PathBuf, std::io::Error),
    Gauss(GaussParseError),
    Graph(PathBuf, GraphParseError),
    Guard(GuardExceeded),
    Move(MoveError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Read(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Gauss(e) => write!(f, "gauss code: {e}"),
            CliError::Graph(path, e) => write!(f, "{}:{e}", path.display()),
            CliError::Guard(e) => write!(f, "{e}; raise --guard to enumerate anyway"),
            CliError::Move(e) => write!(f, "{e}"),
        }
    }
}

pub enum Loaded {
    Diagram(LinkDiagram, MarkedGraph),
    Graph(MarkedGraph),
}

impl Loaded {
    fn graph(&self) -> &MarkedGraph {
        match self {
            Loaded::Diagram(_, g) | Loaded::Graph(g) => g,
        }
    }

    fn describe(&self) -> String {
        match self {
            Loaded::Diagram(d, _) => d.to_string(),
            Loaded::Graph(g) => g.to_string(),
        }
    }
}

fn parse_diagram(code: &str) -> Result<LinkDiagram, CliError> {
    parse_gauss(code).map_err(CliError::Gauss)
}

pub fn load(gauss: Option<String>, graph: Option<PathBuf>) -> Result<Loaded, CliError> {
    match (gauss, graph) {
        (Some(code), None) => {
            let d = parse_diagram(&code)?;
            let g = diagram_graph(&d);
            Ok(Loaded::Diagram(d, g))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Read(path.clone(), e))?;
            let g = text.parse().map_err(|e| CliError::Graph(path, e))?;
            Ok(Loaded::Graph(g))
        }
        _ => Err(CliError::Usage("give exactly one of --gauss and --graph".into())),
    }
}

fn record(value: serde_json::Value) {
    println!("{value}");
}

pub fn bracket(input: &Loaded, method: Method, format: Format) -> Result<u8, CliError> {
    let r = match markedbracket::bracket(input.graph(), method) {
        Ok(r) => r,
        Err(e @ BracketError::EngineDisagreement { .. }) => {
            println!("FAIL {e}");
            return Ok(VERIFICATION_FAILED);
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    match format {
        Format::Text => {
            println!("[G] = {}", r.bracket);
            println!("<G> = {}", r.reduced);
            println!("V = {}", r.jones.display_in_t());
        }
        Format::Records => record(json!({
            "input": input.describe(),
            "vertices": r.n,
            "looped": r.looped_count,
            "bracket": r.bracket.to_string(),
            "reduced": r.reduced.to_string(),
            "jones": r.jones.display_in_t().to_string(),
        })),
    }
    Ok(0)
}

pub enum VerifySource {
    Given(Loaded),
    Random { crossings: usize, components: usize },
}

/// Partitions checked per random diagram.
const PARTITIONS_PER_RANDOM_DIAGRAM: usize = 10;

/// Number of sampled circuit partitions for which `ν(I_P) = |P| - c(U)` fails.
fn cohn_lempel_failures(u: &Universe, rng: &mut SeededRng, samples: usize) -> usize {
    let c = euler_system(u);
    (0..samples)
        .filter(|_| {
            let p = random_partition(rng, u);
            let m = markedbracket::diagram::cohn_lempel_matrix(u, &c, &p);
            m.nullity() + u.connected_components() != p.count_circuits(u)
        })
        .count()
}

fn report_diagram(report: &DiagramReport, partitions: usize, cl_failures: usize, format: Format) -> bool {
    let passed = report.passed() && cl_failures == 0;
    match format {
        Format::Text if passed => println!(
            "PASS {} ({} Euler systems, {partitions} circuit partitions)",
            report.diagram,
            report.systems.len()
        ),
        Format::Text => {
            print!("{report}");
            if cl_failures > 0 {
                println!("  circuit-nullity formula failed on {cl_failures} of {partitions} partitions");
            }
        }
        Format::Records => record(json!({
            "diagram": report.diagram,
            "passed": passed,
            "state_sum": report.oracle.to_string(),
            "systems": report.systems.iter().map(|s| json!({
                "marked": s.marked,
                "bracket": s.graph_bracket.to_string(),
                "agrees": s.agrees,
            })).collect::<Vec<_>>(),
            "partitions": partitions,
            "partition_failures": cl_failures,
        })),
    }
    passed
}

fn verify_graph(g: &MarkedGraph, format: Format) -> bool {
    let nullity = bracket_nullity(g);
    let engines = nullity == bracket_recursive(g);
    let pivots: Vec<String> = g
        .edges()
        .filter(|&(v, w)| bracket_nullity(&g.marked_pivot_at(v, w)) != nullity)
        .map(|(v, w)| format!("{},{}", g.vertex(v).id, g.vertex(w).id))
        .collect();
    let passed = engines && pivots.is_empty();
    match format {
        Format::Text => {
            let verdict = if passed { "PASS" } else { "FAIL" };
            println!("{verdict} {g}");
            if !engines {
                println!("  nullity and recursion engines disagree");
            }
            for p in &pivots {
                println!("  marked pivot on {p} changes the bracket");
            }
        }
        Format::Records => record(json!({
            "graph": g.to_string(),
            "passed": passed,
            "engines_agree": engines,
            "bad_pivots": pivots,
        })),
    }
    passed
}

pub fn verify(source: VerifySource, trials: usize, seed: u64, guard: usize, format: Format) -> Result<u8, CliError> {
    let mut rng = seeded(seed);
    let (mut total, mut passed) = (0, 0);
    match source {
        VerifySource::Given(Loaded::Graph(g)) => {
            total = 1;
            passed = usize::from(verify_graph(&g, format));
        }
        VerifySource::Given(Loaded::Diagram(d, _)) => {
            let report = verify_diagram(&d, guard).map_err(CliError::Guard)?;
            let failures = cohn_lempel_failures(&build_universe(&d), &mut rng, trials);
            total = 1;
            passed = usize::from(report_diagram(&report, trials, failures, format));
        }
        VerifySource::Random { crossings, components } => {
            if crossings > guard {
                return Err(CliError::Guard(GuardExceeded { crossings, guard }));
            }
            for _ in 0..trials {
                let d = random_diagram(&mut rng, crossings, components);
                let report = verify_diagram(&d, guard).map_err(CliError::Guard)?;
                let failures = cohn_lempel_failures(&build_universe(&d), &mut rng, PARTITIONS_PER_RANDOM_DIAGRAM);
                total += 1;
                passed += usize::from(report_diagram(&report, PARTITIONS_PER_RANDOM_DIAGRAM, failures, format));
            }
        }
    }
    match format {
        Format::Text => println!("{passed}/{total} passed"),
        Format::Records => record(json!({ "summary": { "total": total, "passed": passed } })),
    }
    Ok(if passed == total { 0 } else { VERIFICATION_FAILED })
}

pub fn euler(code: &str, format: Format) -> Result<u8, CliError> {
    let d = parse_diagram(code)?;
    let u = build_universe(&d);
    let c = euler_system(&u);
    let g = looped_interlacement(&u, &c);
    let ids = u.crossing_ids();
    let marks: Vec<&str> = c.marked().map(|x| ids[x].as_str()).collect();
    let circuits: Vec<Vec<&str>> = c
        .circuits(&u)
        .iter()
        .map(|w| w.iter().map(|&x| ids[x].as_str()).collect())
        .collect();
    match format {
        Format::Text => {
            println!("marks: {}", if marks.is_empty() { "none".into() } else { marks.join(" ") });
            for circuit in &circuits {
                println!("circuit: {}", circuit.join(" "));
            }
            if u.free_loops() > 0 {
                println!("crossing-free components: {}", u.free_loops());
            }
            println!(
                "graph: {} vertices, {} edges, φ={}",
                g.len(),
                g.edge_count(),
                g.free_loops()
            );
            println!("{g}");
        }
        Format::Records => record(json!({
            "diagram": d.to_string(),
            "marks": marks,
            "circuits": circuits,
            "crossing_free": u.free_loops(),
            "graph": g.to_string(),
        })),
    }
    Ok(0)
}

pub fn moves(input: &Loaded, apply: Option<usize>, simplify: bool, format: Format) -> Result<u8, CliError> {
    let g = input.graph();
    let before = markedbracket::bracket::jones(g);
    let found = candidates(g);
    let (after_graph, applied) = if simplify {
        let (h, log) = simplify_logged(g);
        (Some(h), log.iter().map(ToString::to_string).collect())
    } else if let Some(k) = apply {
        let m = found
            .get(k)
            .ok_or_else(|| CliError::Usage(format!("no candidate {k}; there are {}", found.len())))?;
        let h = markedbracket::moves::apply(g, m).map_err(CliError::Move)?;
        (Some(h), vec![m.to_string()])
    } else {
        (None, Vec::new())
    };
    let after = after_graph.as_ref().map(markedbracket::bracket::jones);
    let preserved = after.as_ref().is_none_or(|v| *v == before);
    match format {
        Format::Text => {
            println!("V = {}", before.display_in_t());
            if found.is_empty() {
                println!("no moves");
            }
            for (k, m) in found.iter().enumerate() {
                println!("{k}: {m}");
            }
            if let (Some(h), Some(v)) = (&after_graph, &after) {
                for m in &applied {
                    println!("applied {m}");
                }
                println!("graph: {h}");
                println!("V = {}", v.display_in_t());
                if !preserved {
                    println!("FAIL the Jones polynomial changed");
                }
            }
        }
        Format::Records => record(json!({
            "input": input.describe(),
            "jones": before.display_in_t().to_string(),
            "candidates": found.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "applied": applied,
            "result": after_graph.as_ref().map(ToString::to_string),
            "jones_after": after.as_ref().map(|v| v.display_in_t().to_string()),
            "preserved": preserved,
        })),
    }
    Ok(if preserved { 0 } else { VERIFICATION_FAILED })
}
