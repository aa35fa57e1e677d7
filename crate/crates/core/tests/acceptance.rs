//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always printed; exits nonzero if any criterion fails.

use markedbracket::bracket::{bracket_nullity, bracket_recursive, check_old_recursion, check_reverse, jones, reduced_bracket};
use markedbracket::diagram::{
    build_universe, cohn_lempel_matrix, diagram_graph, euler_system, looped_interlacement, parse_gauss,
    CircuitPartition, Sign, Transition,
};
use markedbracket::generate::{
    all_codes, all_graphs, plant, random_diagram, random_graph, random_partition, random_transposed, seeded,
    PlantedMove,
};
use markedbracket::moves::{candidates, insert_kink, omega1_add, MoveKind};
use markedbracket::oracle::{kauffman_state_sum, DEFAULT_GUARD};
use markedbracket::{BracketPoly, Gf2Matrix, MarkedGraph};
use rand::Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).expect("fixture present")
}

fn whitehead_printed() -> BracketPoly {
    BracketPoly::from_terms([
        (1, 5, 0, 3),
        (5, 4, 1, 2),
        (10, 3, 2, 1),
        (8, 2, 3, 0),
        (2, 2, 3, 2),
        (5, 1, 4, 1),
        (1, 0, 5, 2),
    ])
}

fn c1_whitehead() -> Outcome {
    let d = parse_gauss(fixture("whitehead.gauss").trim()).map_err(|e| e.to_string())?;
    let g: MarkedGraph = fixture("whitehead.mg").parse().map_err(|e| format!("{e}"))?;
    let expected = whitehead_printed();
    ensure(d.crossing_count() == 5 && d.component_count() == 2, || format!("{d} is not 5 crossings, 2 components"))?;
    ensure(diagram_graph(&d) == g, || "fixture graph differs from the pipeline graph".into())?;
    let oracle = kauffman_state_sum(&d, DEFAULT_GUARD).map_err(|e| e.to_string())?;
    ensure(oracle == expected, || format!("state sum {oracle}"))?;
    ensure(bracket_nullity(&g) == expected, || format!("nullity {}", bracket_nullity(&g)))?;
    ensure(bracket_recursive(&g) == expected, || format!("recursion {}", bracket_recursive(&g)))?;
    Ok(format!("{expected}"))
}

fn same_cycle(a: &str, b: &str) -> bool {
    let doubled = format!("{b}{b}");
    let reversed: String = a.chars().rev().collect();
    a.len() == b.len() && (doubled.contains(a) || doubled.contains(&reversed))
}

fn c2_cohn_lempel() -> Outcome {
    let d = parse_gauss("1+,2+,3+,4+,5+,6+,7+,8+,1+,4+,7+,2+,5+,8+,3+,6+").unwrap();
    let u = build_universe(&d);
    let c = euler_system(&u);
    let circuit: String = c.circuits(&u)[0].iter().map(|&x| u.crossing_ids()[x].clone()).collect();
    ensure(circuit == "1234567814725836", || format!("Euler circuit {circuit}"))?;
    let partition = |follow: &[&str], flip: &[&str]| {
        let t = u
            .crossing_ids()
            .iter()
            .map(|id| match id.as_str() {
                x if follow.contains(&x) => Transition::Follow,
                x if flip.contains(&x) => Transition::Flip,
                _ => Transition::Cross,
            })
            .collect();
        CircuitPartition::new(&u, t).unwrap()
    };
    let words = |p: &CircuitPartition| -> Vec<String> {
        u.trace(&p.transitions)
            .iter()
            .map(|w| w.iter().map(|&x| u.crossing_ids()[x].clone()).collect())
            .collect()
    };
    let p = partition(&["1", "4"], &["2", "5", "7"]);
    let printed = Gf2Matrix::from_rows(&[
        [1u8, 1, 1, 1, 0, 1],
        [1, 0, 0, 1, 0, 0],
        [1, 0, 1, 1, 0, 1],
        [1, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [1, 0, 1, 0, 1, 0],
    ]);
    let m = cohn_lempel_matrix(&u, &c, &p);
    ensure(m == printed, || format!("matrix\n{m}"))?;
    ensure(m.nullity() == 0, || "nullity of I_P".into())?;
    ensure(p.count_circuits(&u) == 1, || "circuit count of P".into())?;
    let traced = words(&p);
    ensure(same_cycle(&traced[0], "1278345236741856"), || format!("P circuit {}", traced[0]))?;

    let q = partition(&["1", "2", "4", "6"], &["5", "7"]);
    let mq = cohn_lempel_matrix(&u, &c, &q);
    ensure(mq == printed.principal(&[1, 2, 4, 5]), || "P' matrix is not the minor".into())?;
    ensure(mq.nullity() == 2, || "nullity of I_P'".into())?;
    let traced = words(&q);
    ensure(traced.len() == 3, || format!("P' circuits {traced:?}"))?;
    for expected in ["1236", "147658", "254387"] {
        ensure(traced.iter().any(|w| same_cycle(w, expected)), || format!("{expected} missing from {traced:?}"))?;
    }
    Ok("printed matrix, nullities 0 and 2, circuits match".into())
}

fn c3_engines() -> Outcome {
    let mut checked = 0;
    for n in 0..=4 {
        for g in all_graphs(n) {
            ensure(bracket_nullity(&g) == bracket_recursive(&g), || format!("{g}"))?;
            checked += 1;
        }
    }
    let mut rng = seeded(0);
    for _ in 0..1000 {
        let n = rng.gen_range(5..=10);
        let g = random_graph(&mut rng, n);
        ensure(bracket_nullity(&g) == bracket_recursive(&g), || format!("{g}"))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs"))
}

fn c4_pivots() -> Outcome {
    let mut rng = seeded(0);
    let mut pairs = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(&mut rng, n);
        let b = bracket_nullity(&g);
        for (v, w) in g.edges() {
            ensure(bracket_nullity(&g.marked_pivot_at(v, w)) == b, || format!("{g} pivot {v},{w}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} adjacent pairs"))
}

fn c5_oracle() -> Outcome {
    let mut rng = seeded(0);
    let mut diagrams = Vec::new();
    for n in 0..=4 {
        diagrams.extend(all_codes(n));
    }
    let exhaustive = diagrams.len();
    for _ in 0..200 {
        let n = rng.gen_range(5..=8);
        let k = rng.gen_range(1..=3);
        diagrams.push(random_diagram(&mut rng, n, k));
    }
    let mut systems = 0;
    for d in &diagrams {
        let oracle = kauffman_state_sum(d, DEFAULT_GUARD).map_err(|e| e.to_string())?;
        let u = build_universe(d);
        let c = euler_system(&u);
        let mut all = vec![c.clone()];
        for _ in 0..3 {
            let steps = rng.gen_range(1..=3);
            all.push(random_transposed(&mut rng, &u, &c, steps));
        }
        for s in &all {
            let b = bracket_nullity(&looped_interlacement(&u, s));
            ensure(b == oracle, || format!("{d}: state sum {oracle}, graph {b}"))?;
            systems += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive + 200 random codes, {systems} systems"))
}

fn c6_extended_cohn_lempel() -> Outcome {
    let mut rng = seeded(0);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=8);
        let k = rng.gen_range(1..=3);
        let d = random_diagram(&mut rng, n, k);
        let u = build_universe(&d);
        let c = euler_system(&u);
        let p = random_partition(&mut rng, &u);
        let nullity = cohn_lempel_matrix(&u, &c, &p).nullity();
        let circuits = p.count_circuits(&u);
        ensure(nullity + u.connected_components() == circuits, || {
            format!("{d} {:?}: nullity {nullity}, circuits {circuits}", p.transitions)
        })?;
    }
    Ok("1000 pairs".into())
}

fn c7_moves() -> Outcome {
    let mut rng = seeded(0);
    let kinds = [PlantedMove::Omega2a, PlantedMove::Omega2b, PlantedMove::Omega2c, PlantedMove::Omega3];
    let mut applied = 0;
    let mut seen = std::collections::HashSet::new();
    for _ in 0..200 {
        let n = rng.gen_range(0..=6);
        let mut g = random_graph(&mut rng, n);
        for _ in 0..rng.gen_range(1..=2) {
            let kind = kinds[rng.gen_range(0..kinds.len())];
            let mirror = rng.gen();
            g = plant(&mut rng, &g, kind, mirror);
        }
        let (reduced, v) = (reduced_bracket(&g), jones(&g));
        for m in candidates(&g) {
            let h = markedbracket::moves::apply(&g, &m).map_err(|e| e.to_string())?;
            if m.kind != MoveKind::Omega1Remove {
                ensure(reduced_bracket(&h) == reduced, || format!("{m} changes the reduced bracket of {g}"))?;
            }
            ensure(jones(&h) == v, || format!("{m} changes V of {g}"))?;
            seen.insert(m.kind);
            applied += 1;
        }
        for looped in [false, true] {
            let h = omega1_add(&g, "fresh", looped).map_err(|e| e.to_string())?;
            ensure(jones(&h) == v, || format!("omega1add changes V of {g}"))?;
        }
        for (a, b) in g.edges() {
            ensure(jones(&g.marked_pivot_at(a, b)) == v, || format!("pivot {a},{b} changes V of {g}"))?;
        }
    }
    ensure(seen.len() == 5, || format!("only {seen:?} occurred"))?;
    for _ in 0..100 {
        let n = rng.gen_range(0..=6);
        let k = rng.gen_range(1..=3);
        let d = random_diagram(&mut rng, n, k);
        let component = rng.gen_range(0..d.component_count());
        let len = d.components().get(component).map_or(0, Vec::len);
        let position = rng.gen_range(0..=len);
        let sign = if rng.gen() { Sign::Positive } else { Sign::Negative };
        let kinked = insert_kink(&d, component, position, sign).map_err(|e| e.to_string())?;
        ensure(jones(&diagram_graph(&kinked)) == jones(&diagram_graph(&d)), || format!("kink on {d} gives {kinked}"))?;
    }
    Ok(format!("{applied} graph moves, 100 kinks"))
}

fn renamed(g: &MarkedGraph, prefix: &str) -> MarkedGraph {
    let mut h = MarkedGraph::free_loops_only(g.free_loops());
    for v in g.vertices() {
        h.add_vertex(format!("{prefix}{}", v.id), v.looped, v.marked).unwrap();
    }
    for (i, j) in g.edges() {
        h.add_edge(&h.vertex(i).id.clone(), &h.vertex(j).id.clone()).unwrap();
    }
    h
}

fn c8_identities() -> Outcome {
    let mut rng = seeded(0);
    for _ in 0..200 {
        let n = rng.gen_range(0..=7);
        let g = random_graph(&mut rng, n);
        let toggled = bracket_nullity(&g.toggle_all_loops());
        ensure(toggled == bracket_nullity(&g).swap_ab(), || format!("loop toggle on {g}"))?;
    }
    for _ in 0..200 {
        let (n1, n2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let g1 = random_graph(&mut rng, n1);
        let g2 = renamed(&random_graph(&mut rng, n2), "x");
        let union = g1.disjoint_union(&g2).map_err(|e| e.to_string())?;
        ensure(
            bracket_nullity(&union) == &bracket_nullity(&g1) * &bracket_nullity(&g2),
            || format!("union of {g1} and {g2}"),
        )?;
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let mut g = random_graph(&mut rng, n);
        let v = rng.gen_range(0..n);
        g.set_looped(v, true);
        g.set_marked(v, true);
        let id = g.vertex(v).id.clone();
        ensure(check_old_recursion(&g, &id).map_err(|e| e.to_string())?, || format!("old recursion at {id} in {g}"))?;
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let mut g = random_graph(&mut rng, n);
        let v = rng.gen_range(0..n);
        g.set_looped(v, true);
        g.set_marked(v, true);
        let neighbors: Vec<usize> = g.neighbors(v).collect();
        for x in neighbors {
            g.set_marked(x, false);
        }
        let id = g.vertex(v).id.clone();
        ensure(check_reverse(&g, &id).map_err(|e| e.to_string())?, || format!("reversal at {id} in {g}"))?;
    }
    Ok("4 x 200 instances".into())
}

fn c9_known_invariants() -> Outcome {
    let mut names = Vec::new();
    let table = fixture("jones.tsv");
    for line in table.lines() {
        let [name, code, frozen] = line.split('\t').collect::<Vec<_>>()[..] else {
            return Err(format!("bad fixture line {line}"));
        };
        let d = parse_gauss(code).map_err(|e| e.to_string())?;
        let v = jones(&diagram_graph(&d));
        let shown = v.display_in_t().to_string();
        ensure(shown == frozen, || format!("{name}: {shown}, frozen {frozen}"))?;
        let (lo, hi) = (v.min_exponent().unwrap(), v.max_exponent().unwrap());
        let unit = |e| v.coeff(e) == 1.into() || v.coeff(e) == (-1).into();
        ensure(unit(lo) && unit(hi), || format!("{name}: extreme coefficients are not units"))?;
        let (terms, span) = (v.len(), (hi - lo) / 4);
        let shape = match name {
            "trefoil" => terms == 3 && span == 3,
            "figure-eight" => terms == 5 && span == 4 && v == v.invert_variable(),
            "hopf" => terms == 2 && span == 2,
            _ => true,
        };
        ensure(shape, || format!("{name}: {terms} terms, span {span}"))?;
        names.push(name);
    }
    ensure(names.len() >= 3, || "fixtures missing".into())?;
    Ok(names.join(", "))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("Whitehead regression", 1, c1_whitehead),
        ("Cohn-Lempel K4,4 example", 1, c2_cohn_lempel),
        ("engine equivalence", 120, c3_engines),
        ("marked-pivot invariance", 60, c4_pivots),
        ("oracle equivalence", 120, c5_oracle),
        ("extended Cohn-Lempel property", 30, c6_extended_cohn_lempel),
        ("move invariance", 120, c7_moves),
        ("algebraic identities", 60, c8_identities),
        ("known-invariant sanity", 5, c9_known_invariants),
    ];
    let mut failures = 0;
    for (k, (title, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > Duration::from_secs(limit) {
                Err(format!("took {elapsed:.2?}, limit {limit}s"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("PASS {}. {title} ({detail}; {elapsed:.2?})", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {}. {title}: {why}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
