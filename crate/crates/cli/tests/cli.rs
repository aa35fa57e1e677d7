use std::path::PathBuf;
use std::process::{Command, Output};

const WHITEHEAD: &str = "A^5*d^3 + 5*A^4*B*d^2 + 10*A^3*B^2*d + 2*A^2*B^3*d^2 + 8*A^2*B^3 + 5*A*B^4*d + B^5*d^2";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markedbracket"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn graph_file(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn fixture(name: &str) -> String {
    format!("{}/../core/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn bracket_of_a_trefoil_code() {
    let o = run(&["bracket", "--gauss", "1+,2+,3+,1+,2+,3+"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "[G] = A^3*d + 3*A^2*B + 3*A*B^2*d + B^3*d^2\n<G> = -A^5 - A^-3 + A^-7\nV = -t^4 + t^3 + t\n"
    );
}

#[test]
fn bracket_of_the_whitehead_graph_with_both_engines() {
    for method in ["both", "recursion", "nullity"] {
        let o = run(&["bracket", "--graph", &fixture("whitehead.mg"), "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert_eq!(stdout(&o).lines().next().unwrap(), format!("[G] = {WHITEHEAD}"));
    }
}

#[test]
fn bracket_of_an_unknot() {
    let o = run(&["bracket", "--gauss", "o"]);
    assert_eq!(stdout(&o), "[G] = 1\n<G> = 1\nV = 1\n");
}

#[test]
fn bracket_records() {
    let o = run(&["bracket", "--gauss", "1+,2+|1+,2+", "--format", "records"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["jones"], "-t^{5/2} - t^{1/2}");
    assert_eq!(v["vertices"], 2);
    assert_eq!(v["input"], "1+,2+|1+,2+");
}

#[test]
fn verify_a_hopf_code() {
    let o = run(&["verify", "--gauss", "1+,2+|1+,2+"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS 1+,2+|1+,2+"));
}

#[test]
fn verify_random_codes_is_reproducible() {
    let args = ["verify", "--random", "--crossings", "6", "--trials", "100", "--seed", "0"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 100);
    assert!(text.ends_with("100/100 passed\n"));
    assert_eq!(stdout(&run(&args)), text);
    assert_ne!(stdout(&run(&["verify", "--random", "--trials", "5", "--seed", "1"])), stdout(&run(&["verify", "--random", "--trials", "5", "--seed", "2"])));
}

#[test]
fn verify_records() {
    let o = run(&["verify", "--random", "--crossings", "4", "--components", "2", "--trials", "3", "--format", "records"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[..3].iter().all(|l| l["passed"] == true));
    assert_eq!(lines[3]["summary"]["passed"], 3);
}

#[test]
fn verify_a_graph() {
    let o = run(&["verify", "--graph", &fixture("whitehead.mg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS "));
}

#[test]
fn parse_errors_exit_with_two() {
    let o = run(&["verify", "--gauss", "1+,1-"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 4"), "{}", stderr(&o));
    assert!(stderr(&o).contains("both signs"));

    let bad = graph_file("bad.mg", "2 0\na - -\nb - -\ne a c\n");
    let o = run(&["bracket", "--graph", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":4:3: unknown vertex `c`"), "{}", stderr(&o));

    assert_eq!(run(&["bracket"]).status.code(), Some(2));
    assert_eq!(run(&["bracket", "--gauss", "o", "--graph", &bad]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--random", "--crossings", "30"]).status.code(), Some(2));
}

#[test]
fn euler_output() {
    let o = run(&["euler", "--gauss", "1+,2+,3+,1+,2+,3+"]);
    let text = stdout(&o);
    assert!(text.starts_with("marks: none\ncircuit: 1 2 3 1 2 3\ngraph: 3 vertices, 3 edges, φ=0\n"), "{text}");

    let text = stdout(&run(&["euler", "--gauss", "1+,2+|1+,2+"]));
    assert!(text.starts_with("marks: 1\n"), "{text}");
    assert!(text.contains("1 - M"));

    let text = stdout(&run(&["euler", "--gauss", "o|o"]));
    assert!(text.contains("graph: 0 vertices, 0 edges, φ=1"), "{text}");
}

#[test]
fn moves_on_a_twin_pair() {
    let twins = graph_file("twins.mg", "2 0 / v L - / w - -\n");
    let text = stdout(&run(&["moves", "--graph", &twins]));
    let index = text
        .lines()
        .find_map(|l| l.strip_suffix(": omega2a(v,w)"))
        .expect("omega2a listed");
    let o = run(&["moves", "--graph", &twins, "--apply", index]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("applied omega2a(v,w)\ngraph: 0 0 /\nV = 1\n"), "{text}");
}

#[test]
fn moves_on_a_triangle_and_on_nothing() {
    let triangle = graph_file("triangle.mg", "3 0 / u L - / v - - / w - - / e u v / e u w / e v w\n");
    assert!(stdout(&run(&["moves", "--graph", &triangle])).contains("omega3(u,v,w)"));

    let empty = graph_file("empty.mg", "0 0\n");
    assert_eq!(stdout(&run(&["moves", "--graph", &empty])), "V = 1\nno moves\n");
    let o = run(&["moves", "--graph", &empty, "--apply", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no candidate 0"));
}

#[test]
fn moves_simplify() {
    let g = graph_file("simplify.mg", "4 0 / a L M / b - - / c - - / x L - / e a b / e c x\n");
    let o = run(&["moves", "--graph", &g, "--simplify", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["preserved"], true);
    assert_eq!(v["jones"], v["jones_after"]);
    assert!(!v["applied"].as_array().unwrap().is_empty());
}
