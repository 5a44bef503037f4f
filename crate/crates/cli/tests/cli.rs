use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use square_graphic::constructions::{bipartite_double_cover, disjoint_union};
use square_graphic::fixtures;
use square_graphic::formats::{decode_graph6, encode_graph6, parse_graph6_list, write_matrix_json, write_matrix_text};
use square_graphic::{verify, Graph, IntMatrix};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sqgraph"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn g6_file(dir: &Path, name: &str, g: &Graph) -> String {
    write(dir, name, &format!("{}\n", encode_graph6(g)))
}

#[test]
fn square_of_c6_has_two_support_components() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = g6_file(dir.path(), "c6.g6", &Graph::cycle(6));
    let out = run(&["square", &c6]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let s = square_graphic::formats::parse_matrix_text(&text).unwrap();
    assert_eq!(s, Graph::cycle(6).square_matrix());

    let sq = write(dir.path(), "c6.txt", &text);
    let out = run(&["analyze", &sq]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("2 support components: bipartite or disconnected"));
}

#[test]
fn square_json_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let g = g6_file(dir.path(), "g.g6", &fixtures::twelve_g());
    let out = run(&["square", &g, "--json"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<Vec<u64>> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(IntMatrix::from_rows(&rows).unwrap(), fixtures::twelve_g().square_matrix());
}

#[test]
fn rejection_example_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &write_matrix_json(&fixtures::rejection_example()));
    let out = run(&["analyze", &m]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL  rowsum_multiset_feasible"), "{text}");
    assert!(text.contains("average neighbour degree 5/2"), "{text}");

    let out = run(&["realize", &m]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("infeasible: failed necessary conditions"));
}

#[test]
fn analyze_json_has_every_section() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", &write_matrix_text(&fixtures::rejection_example()));
    let out = run(&["analyze", &m, "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["conditions"]["overall"], false);
    assert_eq!(v["conditions"]["rowsum_multiset_feasible"]["passed"], false);
    assert_eq!(v["row_sums"]["rows"][1]["avg_neighbor_degree"]["num"], 5);
    assert_eq!(v["row_sums"]["rows"][1]["avg_neighbor_degree"]["den"], 2);
    assert!(v["c4"]["pair_sum"].is_number());
    assert!(v["support_components"]["component_count"].is_number());
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let asym = write(dir.path(), "a.json", "[[1,0],[1,1]]");
    assert_eq!(code(&run(&["analyze", &asym])), 2);
    assert_eq!(code(&run(&["realize", &asym])), 2);

    let empty = write(dir.path(), "e.txt", "");
    assert_eq!(code(&run(&["analyze", &empty])), 2);
    assert_eq!(code(&run(&["square", &empty])), 2);

    let ragged = write(dir.path(), "r.txt", "2\n1 0\n0\n");
    let out = run(&["analyze", &ragged]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let bad = write(dir.path(), "b.g6", "C~\x7f\n");
    assert_eq!(code(&run(&["square", &bad, "--format", "graph6"])), 2);
    assert_eq!(code(&run(&["square", dir.path().join("missing").to_str().unwrap()])), 2);

    let c3 = g6_file(dir.path(), "c3.g6", &Graph::cycle(3));
    let c4 = g6_file(dir.path(), "c4.g6", &Graph::cycle(4));
    assert_eq!(code(&run(&["iso", &c3, &c4])), 2);
    assert_eq!(code(&run(&["family", &c3, "-k", "0"])), 2);
    assert_eq!(code(&run(&["analyze", &c3, "--format", "graph6"])), 2);
}

#[test]
fn squares_piped_into_realize_are_realized() {
    // Every labeled graph on up to 4 vertices and a spread of larger ones.
    let mut graphs: Vec<Graph> = (0..=4usize)
        .flat_map(|n| (0..1u64 << (n * n.saturating_sub(1) / 2)).map(move |m| Graph::from_mask(n, m)))
        .collect();
    for mask in (0..1u64 << 15).step_by(997) {
        graphs.push(Graph::from_mask(6, mask));
    }
    graphs.push(fixtures::twelve_h());
    for g in graphs {
        let s = g.square_matrix();
        let out = run_stdin(&["realize", "-"], &write_matrix_text(&s));
        assert_eq!(code(&out), 0, "{:?}", g.edges());
        let witness = decode_graph6(stdout(&out).trim()).unwrap();
        assert!(verify(&witness, &s).unwrap());
    }
}

#[test]
fn realize_all_lists_every_witness() {
    let s = Graph::path(3).square_matrix();
    let out = run_stdin(&["realize", "-", "--all", "--json"], &write_matrix_json(&s));
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "realized");
    assert_eq!(v["complete"], true);
    let witnesses = v["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 1);

    let out = run_stdin(&["realize", "-", "--all"], &write_matrix_json(&Graph::empty(3).square_matrix()));
    assert_eq!(code(&out), 0);
    assert_eq!(parse_graph6_list(&stdout(&out)).unwrap(), vec![Graph::empty(3)]);
}

#[test]
fn realize_json_round_trips() {
    let s = Graph::cycle(5).square_matrix();
    let out = run_stdin(&["realize", "-", "--json"], &write_matrix_json(&s));
    assert_eq!(code(&out), 0);
    let outcome: square_graphic::RealizationOutcome = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(outcome.verdict, square_graphic::Verdict::Realized);
    assert!(verify(outcome.witness.as_ref().unwrap(), &s).unwrap());
}

#[test]
fn small_budget_aborts_with_exit_three() {
    let s = fixtures::twelve_g().square_matrix();
    let out = run_stdin(&["realize", "-", "--max-nodes", "10"], &write_matrix_text(&s));
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).starts_with("aborted"));
}

#[test]
fn proven_infeasible_exits_one() {
    // Passes every necessary condition; only the search rules it out.
    let s = IntMatrix::from_diagonal(&[1, 1, 2]);
    let out = run_stdin(&["realize", "-", "--json"], &write_matrix_json(&s));
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "infeasible");
    assert_eq!(v["reason"], "search exhausted");
}

fn family_bundle(g: &Graph, k: &str) -> (i32, serde_json::Value) {
    let dir = tempfile::tempdir().unwrap();
    let input = g6_file(dir.path(), "g.g6", g);
    let out = run(&["family", &input, "-k", k, "--json"]);
    let v = if code(&out) == 0 { serde_json::from_str(&stdout(&out)).unwrap() } else { serde_json::Value::Null };
    (code(&out), v)
}

fn check_bundle(v: &serde_json::Value, n: usize, k: usize) {
    assert_eq!(v["k"], k);
    assert_eq!(v["vertices"], 2 * k * n);
    assert_eq!(v["certification"]["certified"], true);
    assert_eq!(v["certification"]["pairs"].as_array().unwrap().len(), (k + 1) * k / 2);
    let rows: Vec<Vec<u64>> = serde_json::from_value(v["shared_square"].clone()).unwrap();
    let shared = IntMatrix::from_rows(&rows).unwrap();
    let members = v["members"].as_array().unwrap();
    assert_eq!(members.len(), k + 1);
    for m in members {
        assert!(verify(&decode_graph6(m.as_str().unwrap()).unwrap(), &shared).unwrap());
    }
}

#[test]
fn family_of_triangle() {
    let (c, v) = family_bundle(&Graph::cycle(3), "1");
    assert_eq!(c, 0);
    check_bundle(&v, 3, 1);
    let members: Vec<Graph> =
        v["members"].as_array().unwrap().iter().map(|m| decode_graph6(m.as_str().unwrap()).unwrap()).collect();
    assert!(members.contains(&disjoint_union(&Graph::cycle(3), &Graph::cycle(3))));
    assert!(members.contains(&bipartite_double_cover(&Graph::cycle(3))));

    let (c, v) = family_bundle(&Graph::cycle(3), "3");
    assert_eq!(c, 0);
    check_bundle(&v, 3, 3);
}

#[test]
fn family_of_bipartite_graph_exits_one() {
    assert_eq!(family_bundle(&Graph::cycle(6), "1").0, 1);
}

#[test]
fn family_writes_bundle_directory() {
    let dir = tempfile::tempdir().unwrap();
    let input = g6_file(dir.path(), "g.g6", &Graph::complete(4));
    let bundle: PathBuf = dir.path().join("bundle");
    let out = run(&["family", &input, "-k", "2", "--out", bundle.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let members = parse_graph6_list(&std::fs::read_to_string(bundle.join("members.g6")).unwrap()).unwrap();
    let shared = square_graphic::formats::parse_matrix_text(
        &std::fs::read_to_string(bundle.join("shared_square.txt")).unwrap(),
    )
    .unwrap();
    assert_eq!(members.len(), 3);
    assert!(members.iter().all(|m| verify(m, &shared).unwrap()));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(bundle.join("certification.json")).unwrap()).unwrap();
    assert_eq!(cert["certified"], true);

    let json_out = dir.path().join("family.json");
    let out = run(&["family", &input, "-k", "2", "--out", json_out.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json_out).unwrap()).unwrap();
    check_bundle(&v, 4, 2);
}

#[test]
fn union_and_double_cover_of_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = g6_file(dir.path(), "c3.g6", &Graph::cycle(3));
    let union = run(&["union", &c3, &c3]);
    let cover = run(&["double-cover", &c3, "--emit", "edgelist"]);
    assert_eq!((code(&union), code(&cover)), (0, 0));
    let union = decode_graph6(stdout(&union).trim()).unwrap();
    let cover = square_graphic::formats::parse_edge_list(&stdout(&cover)).unwrap();
    assert_eq!(union, disjoint_union(&Graph::cycle(3), &Graph::cycle(3)));
    assert_eq!(cover, bipartite_double_cover(&Graph::cycle(3)));
    assert_eq!(union.square_matrix(), cover.square_matrix());

    let u = g6_file(dir.path(), "u.g6", &union);
    let c = g6_file(dir.path(), "c.g6", &cover);
    let out = run(&["iso", &u, &c]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "not isomorphic");
}

#[test]
fn iso_returns_a_mapping() {
    let dir = tempfile::tempdir().unwrap();
    let a = g6_file(dir.path(), "a.g6", &fixtures::two_triangles());
    let b = g6_file(dir.path(), "b.g6", &Graph::from_edges(6, [(0, 4), (4, 5), (5, 0), (1, 2), (2, 3), (3, 1)]).unwrap());
    let out = run(&["iso", &a, &b, "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "isomorphic");
    let p = square_graphic::Permutation::new(serde_json::from_value(v["mapping"].clone()).unwrap()).unwrap();
    let b = decode_graph6(std::fs::read_to_string(&b).unwrap().trim()).unwrap();
    assert_eq!(fixtures::two_triangles().relabel(&p), b);
}

#[test]
fn twelve_vertex_pair() {
    let dir = tempfile::tempdir().unwrap();
    let g = g6_file(dir.path(), "g.g6", &fixtures::twelve_g());
    let h = g6_file(dir.path(), "h.g6", &fixtures::twelve_h());
    assert_eq!(code(&run(&["iso", &g, &h])), 1);

    let sg = fixtures::twelve_g().square_matrix();
    let sh = fixtures::twelve_h().square_matrix();
    let a = write(dir.path(), "sg.json", &write_matrix_json(&sg));
    let b = write(dir.path(), "sh.txt", &write_matrix_text(&sh));
    let out = run(&["similar", &a, &b, "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let p = square_graphic::Permutation::new(serde_json::from_value(v["mapping"].clone()).unwrap()).unwrap();
    assert_eq!(sg.apply_similarity(&p).unwrap(), sh);

    let other = write(dir.path(), "o.json", &write_matrix_json(&Graph::cycle(12).square_matrix()));
    assert_eq!(code(&run(&["similar", &a, &other])), 1);
}

#[test]
fn count_c4_on_matrix_and_graph() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = g6_file(dir.path(), "k4.g6", &Graph::complete(4));
    let out = run(&["count-c4", &k4, "--format", "graph6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3");

    // C(2, 2) counted twice off the diagonal: pair sum 2, not divisible by 4.
    let m = write(dir.path(), "m.txt", "2\n2 2\n2 2\n");
    let out = run(&["count-c4", &m, "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["divisible_by_4"], false);
}

#[test]
fn writes_to_out_file_and_reports_version() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = g6_file(dir.path(), "c5.g6", &Graph::cycle(5));
    let target = dir.path().join("sq.txt");
    let out = run(&["square", &c5, "--out", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let s = square_graphic::formats::parse_matrix_text(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(s, Graph::cycle(5).square_matrix());

    let out = run(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("sqgraph "));
}
