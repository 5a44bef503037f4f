use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::json;
use square_graphic::analysis::{
    count_c4, necessary_conditions, regular_row_sum_check, row_sum_report, support_components,
    C4Count, RegularCheck,
};
use square_graphic::constructions::{
    are_isomorphic_with, bipartite_double_cover, disjoint_union, duplication_family,
    permutation_similar_with, FamilyError,
};
use square_graphic::formats::{encode_graph6, write_edge_list, write_matrix_json, write_matrix_text};
use square_graphic::realize::{realize_all, Budget, Verdict};
use square_graphic::{Graph, IntMatrix, IsoBudget, IsoError, Permutation};

use crate::args::{GlobalOpts, GraphOutput, InputFormat};
use crate::input::{read_graph, read_matrix};
use crate::{CliError, Exit, Output};

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn emit_graph(g: &Graph, emit: GraphOutput) -> String {
    match emit {
        GraphOutput::Graph6 => format!("{}\n", encode_graph6(g)),
        GraphOutput::Edgelist => write_edge_list(g),
    }
}

fn emit_matrix(m: &IntMatrix, json: bool) -> String {
    if json {
        format!("{}\n", write_matrix_json(m))
    } else {
        write_matrix_text(m)
    }
}

fn realize_budget(opts: &GlobalOpts) -> Budget {
    let default = Budget::default();
    Budget {
        max_nodes: opts.max_nodes.or(default.max_nodes),
        max_time: opts.max_seconds.map(Duration::from_secs).or(default.max_time),
    }
}

fn iso_budget(opts: &GlobalOpts) -> IsoBudget {
    opts.max_nodes.map_or_else(IsoBudget::default, |max_nodes| IsoBudget { max_nodes })
}

fn require_symmetric(m: &IntMatrix, source: &str) -> Result<(), CliError> {
    match m.asymmetry() {
        Some((i, j)) => Err(CliError::input(format!(
            "{source}: matrix is not symmetric: entry ({}, {}) differs from ({}, {})",
            i + 1,
            j + 1,
            j + 1,
            i + 1
        ))),
        None => Ok(()),
    }
}

pub fn square(opts: &GlobalOpts, input: &str) -> Result<Output, CliError> {
    let g = read_graph(input, opts.format)?;
    Ok(Output::new(emit_matrix(&g.square_matrix(), opts.json), Exit::Success))
}

fn describe_c4(c: &C4Count) -> String {
    match c.count() {
        Some(v) => v.to_string(),
        None => format!("not an integer ({} / 4 = {})", c.pair_sum, c.value),
    }
}

pub fn analyze(opts: &GlobalOpts, input: &str) -> Result<Output, CliError> {
    let s = read_matrix(input, opts.format)?;
    require_symmetric(&s, input)?;
    let conditions = necessary_conditions(&s);
    let rows = row_sum_report(&s).expect("symmetry checked");
    let regular = regular_row_sum_check(&s);
    let support = support_components(&s).expect("symmetry checked");
    let c4 = count_c4(&s).expect("symmetry checked");
    let exit = if conditions.overall { Exit::Success } else { Exit::Negative };

    if opts.json {
        let body = json!({
            "dimension": s.dim(),
            "conditions": conditions,
            "row_sums": rows,
            "regular": regular,
            "support_components": support,
            "bipartite_or_disconnected": support.component_count >= 2,
            "c4": c4,
        });
        return Ok(Output::new(to_json(&body), exit));
    }

    let mut out = String::new();
    let _ = writeln!(out, "matrix: {0}x{0}", s.dim());
    let _ = writeln!(out, "necessary conditions:");
    for (name, check) in conditions.checks() {
        let mark = if check.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "  {mark}  {name}: {}", check.reason);
    }
    if conditions.overall {
        let _ = writeln!(out, "verdict: passes every necessary condition (realizability not yet decided)");
    } else {
        let _ = writeln!(
            out,
            "verdict: not the square of any graph (failed: {})",
            conditions.failed().join(", ")
        );
    }
    let _ = writeln!(out, "row sums:");
    for r in &rows.rows {
        let i = r.index + 1;
        let avg = r.avg_neighbor_degree.map_or_else(|| "undefined".to_string(), |a| a.to_string());
        let ok = if r.multiset_feasible { "feasible" } else { "INFEASIBLE" };
        let _ = writeln!(
            out,
            "  v_{i}: row sum {}, s_{i}{i} = {}, average neighbour degree {avg}, multiset {ok}",
            r.row_sum, r.diagonal
        );
    }
    let regular_line = match regular {
        RegularCheck::Holds { k } => format!("diagonal constant {k}, every row sums to {}", k as u128 * k as u128),
        RegularCheck::Fails { k, row } => {
            format!("diagonal constant {k} but row v_{} does not sum to {}", row + 1, k as u128 * k as u128)
        }
        RegularCheck::NotRegular => "diagonal not constant".to_string(),
    };
    let _ = writeln!(out, "regular check: {regular_line}");
    let count = support.component_count;
    if count >= 2 {
        let _ = writeln!(out, "{count} support components: bipartite or disconnected");
    } else {
        let _ = writeln!(out, "{count} support component: connected and nonbipartite if realizable");
    }
    for (c, members) in support.components().iter().enumerate() {
        let names: Vec<String> = members.iter().map(|v| format!("v_{}", v + 1)).collect();
        let _ = writeln!(out, "  component {}: {}", c + 1, names.join(" "));
    }
    let _ = writeln!(out, "4-cycles: {}", describe_c4(&c4));
    Ok(Output::new(out, exit))
}

pub fn count_c4_cmd(opts: &GlobalOpts, input: &str) -> Result<Output, CliError> {
    let s = match opts.format {
        InputFormat::Graph6 | InputFormat::Edgelist => read_graph(input, opts.format)?.square_matrix(),
        _ => read_matrix(input, opts.format)?,
    };
    require_symmetric(&s, input)?;
    let c4 = count_c4(&s).expect("symmetry checked");
    let exit = if c4.divisible_by_4 { Exit::Success } else { Exit::Negative };
    let body = if opts.json { to_json(&c4) } else { format!("{}\n", describe_c4(&c4)) };
    Ok(Output::new(body, exit))
}

pub fn realize(
    opts: &GlobalOpts,
    input: &str,
    all: bool,
    limit: Option<usize>,
) -> Result<Output, CliError> {
    let s = read_matrix(input, opts.format)?;
    require_symmetric(&s, input)?;
    let limit = if all { limit.unwrap_or(usize::MAX) } else { 1 };
    let result = realize_all(&s, limit, realize_budget(opts));
    let exit = match result.verdict {
        Verdict::Realized => Exit::Success,
        Verdict::Infeasible => Exit::Negative,
        Verdict::Aborted => Exit::Aborted,
    };

    if opts.json {
        let body = if all {
            to_json(&result)
        } else {
            to_json(&json!({
                "verdict": result.verdict,
                "witness": result.witnesses.first().map(encode_graph6),
                "nodes_explored": result.nodes_explored,
                "elapsed_ms": result.elapsed.as_millis() as u64,
                "reason": result.reason,
            }))
        };
        return Ok(Output::new(body, exit));
    }

    let body = match result.verdict {
        Verdict::Realized => {
            let parts: Vec<String> = result.witnesses.iter().map(|w| emit_graph(w, opts.emit)).collect();
            let sep = if opts.emit == GraphOutput::Edgelist { "\n" } else { "" };
            parts.join(sep)
        }
        Verdict::Infeasible => format!("infeasible: {}\n", result.reason.unwrap_or_default()),
        Verdict::Aborted => format!("aborted: {}\n", result.reason.unwrap_or_default()),
    };
    let mut out = Output::new(body, exit);
    if all && result.verdict == Verdict::Realized {
        out.note = Some(format!(
            "{} witness(es), {}",
            result.witnesses.len(),
            if result.complete { "complete" } else { "stopped early" }
        ));
    }
    Ok(out)
}

pub fn family(opts: &GlobalOpts, input: &str, k: u64) -> Result<Output, CliError> {
    let g = read_graph(input, opts.format)?;
    let k = usize::try_from(k).map_err(|_| CliError::input("k is too large"))?;
    let f = match duplication_family(&g, k) {
        Ok(f) => f,
        Err(FamilyError::Bipartite) => {
            return Ok(Output::new(format!("{}\n", FamilyError::Bipartite), Exit::Negative))
        }
        Err(FamilyError::Iso(IsoError::BudgetExceeded(n))) => {
            return Ok(Output::new(
                format!("aborted: isomorphism search gave up after {n} branches\n"),
                Exit::Aborted,
            ))
        }
        Err(e) => return Err(CliError::input(e.to_string())),
    };

    let members: Vec<String> = f.members.iter().map(encode_graph6).collect();
    let certification = json!({
        "certified": f.certified(),
        "member_verified": f.member_verified,
        "pairs": f.pairs,
    });
    let bundle = json!({
        "base": encode_graph6(&f.base),
        "k": f.k,
        "vertices": f.shared_square.dim(),
        "shared_square": f.shared_square,
        "members": members,
        "certification": certification,
    });
    let exit = if f.certified() { Exit::Success } else { Exit::Negative };

    let body = if opts.json || opts.out.as_ref().is_some_and(|p| crate::is_json_path(p)) {
        to_json(&bundle)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "base: {}", encode_graph6(&f.base));
        let _ = writeln!(out, "k: {}, {} members on {} vertices", f.k, f.members.len(), f.shared_square.dim());
        for (i, m) in members.iter().enumerate() {
            let ok = if f.member_verified[i] { "square verified" } else { "SQUARE MISMATCH" };
            let _ = writeln!(out, "member {}: {m} ({ok})", i + 1);
        }
        let iso_pairs = f.pairs.iter().filter(|p| p.isomorphic).count();
        let _ = writeln!(
            out,
            "pairs: {} checked, {iso_pairs} isomorphic; certified: {}",
            f.pairs.len(),
            f.certified()
        );
        out
    };
    let mut output = Output::new(body, exit);
    output.bundle = Some(vec![
        ("shared_square.txt".into(), write_matrix_text(&f.shared_square)),
        ("members.g6".into(), members.iter().map(|m| format!("{m}\n")).collect()),
        ("certification.json".into(), to_json(&certification)),
        ("family.json".into(), to_json(&bundle)),
    ]);
    Ok(output)
}

pub fn double_cover(opts: &GlobalOpts, input: &str) -> Result<Output, CliError> {
    let g = read_graph(input, opts.format)?;
    let cover = bipartite_double_cover(&g);
    Ok(Output::new(graph_body(opts, &cover), Exit::Success))
}

pub fn union(opts: &GlobalOpts, first: &str, second: &str) -> Result<Output, CliError> {
    let g = read_graph(first, opts.format)?;
    let h = read_graph(second, opts.format)?;
    Ok(Output::new(graph_body(opts, &disjoint_union(&g, &h)), Exit::Success))
}

fn graph_body(opts: &GlobalOpts, g: &Graph) -> String {
    if opts.json {
        to_json(&json!({ "graph6": encode_graph6(g), "vertices": g.vertex_count(), "edges": g.edges() }))
    } else {
        emit_graph(g, opts.emit)
    }
}

fn permutation_result(
    opts: &GlobalOpts,
    found: Result<Option<Permutation>, IsoError>,
    yes: &str,
    no: &str,
) -> Result<Output, CliError> {
    let found = match found {
        Ok(found) => found,
        Err(IsoError::BudgetExceeded(n)) => {
            let body = if opts.json {
                to_json(&json!({ "verdict": "aborted", "branches": n }))
            } else {
                format!("aborted: search gave up after {n} branches\n")
            };
            return Ok(Output::new(body, Exit::Aborted));
        }
        Err(e) => return Err(CliError::input(e.to_string())),
    };
    let exit = if found.is_some() { Exit::Success } else { Exit::Negative };
    let body = match (&found, opts.json) {
        (Some(p), true) => to_json(&json!({
            "verdict": yes,
            "mapping": p.mapping(),
            "cycles": p.cycle_notation(),
        })),
        (None, true) => to_json(&json!({ "verdict": no })),
        (Some(p), false) => format!(
            "{yes}\ncycles (1-based): {}\nmapping (0-based image of each index): {:?}\n",
            p.cycle_notation(),
            p.mapping()
        ),
        (None, false) => format!("{no}\n"),
    };
    Ok(Output::new(body, exit))
}

pub fn iso(opts: &GlobalOpts, first: &str, second: &str) -> Result<Output, CliError> {
    let g = read_graph(first, opts.format)?;
    let h = read_graph(second, opts.format)?;
    if g.vertex_count() != h.vertex_count() {
        return Err(CliError::input(format!(
            "size mismatch: {first} has {} vertices, {second} has {}",
            g.vertex_count(),
            h.vertex_count()
        )));
    }
    permutation_result(opts, are_isomorphic_with(&g, &h, iso_budget(opts)), "isomorphic", "not isomorphic")
}

pub fn similar(opts: &GlobalOpts, first: &str, second: &str) -> Result<Output, CliError> {
    let a = read_matrix(first, opts.format)?;
    let b = read_matrix(second, opts.format)?;
    if a.dim() != b.dim() {
        return Err(CliError::input(format!(
            "size mismatch: {first} is {0}x{0}, {second} is {1}x{1}",
            a.dim(),
            b.dim()
        )));
    }
    permutation_result(
        opts,
        permutation_similar_with(&a, &b, iso_budget(opts)),
        "similar",
        "not similar",
    )
}
