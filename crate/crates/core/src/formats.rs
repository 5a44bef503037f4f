//! Text formats: graph6, edge lists and integer matrices (JSON or plain text).
//!
//! Every parser here is total: malformed input produces a [`ParseError`]
//! naming the byte offset or line, never a panic.

use thiserror::Error;

use crate::graph::{Graph, GraphError, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("graph6: byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
}

fn g6_err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Graph6 { offset, message: message.into() }
}

fn line_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line { line, message: message.into() }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Largest order graph6 can express (36-bit size field).
pub const GRAPH6_MAX_ORDER: u64 = (1 << 36) - 1;

/// Encodes a graph as a single graph6 line (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let n64 = n as u64;
    if n64 <= 62 {
        out.push(n64 as u8 + 63);
    } else if n64 <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n64 >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n64 <= GRAPH6_MAX_ORDER, "graph too large for graph6");
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n64 >> shift) & 63) as u8 + 63);
        }
    }

    // Upper triangle in column order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = word << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and trailing
/// line terminator are accepted; anything else must be exact, including
/// zero padding bits.
pub fn decode_graph6(input: &str) -> Result<Graph, ParseError> {
    let mut base = 0;
    let mut s = input;
    if let Some(rest) = s.strip_prefix(GRAPH6_HEADER) {
        s = rest;
        base = GRAPH6_HEADER.len();
    }
    let s = s.strip_suffix('\n').unwrap_or(s);
    let s = s.strip_suffix('\r').unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(base + i, format!("invalid byte 0x{b:02x}")));
        }
    }

    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as u64, 1)
    } else if bytes.get(1) != Some(&126) {
        (read_size_field(bytes, 1, 3, base)?, 4)
    } else {
        (read_size_field(bytes, 2, 6, base)?, 8)
    };

    let pairs = n.saturating_mul(n.saturating_sub(1)) / 2;
    let expected = pairs.div_ceil(6);
    let available = (bytes.len() - pos) as u64;
    if available != expected {
        return Err(g6_err(
            base + pos,
            format!("expected {expected} edge bytes for n = {n}, found {available}"),
        ));
    }
    let n = n as usize;

    let mut edges = Vec::new();
    let mut bit = 0u64;
    'outer: for j in 1..n {
        for i in 0..j {
            if bit == pairs {
                break 'outer;
            }
            let byte = bytes[pos + (bit / 6) as usize] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    pos += (bit / 6) as usize;
    if !bit.is_multiple_of(6) {
        let used = bit % 6;
        let pad_mask = (1u8 << (6 - used)) - 1;
        if (bytes[pos] - 63) & pad_mask != 0 {
            return Err(g6_err(base + pos, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 pairs are valid by construction"))
}

fn read_size_field(bytes: &[u8], start: usize, len: usize, base: usize) -> Result<u64, ParseError> {
    if bytes.len() < start + len {
        return Err(g6_err(base + bytes.len(), "truncated size field"));
    }
    let n = bytes[start..start + len]
        .iter()
        .fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64);
    let minimum = if len == 3 { 63 } else { 258_048 };
    if n < minimum {
        return Err(g6_err(base + start, format!("non-canonical size field for n = {n}")));
    }
    Ok(n)
}

/// Lines of meaningful content: `#` starts a comment, blank lines are
/// skipped. Yields 1-indexed line numbers.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_count(line: usize, token: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| line_err(line, format!("expected a nonnegative integer, found {token:?}")))
}

/// Parses the edge-list format: first line `n`, then one `i j` pair per
/// line (0-indexed). `#` comments and blank lines are ignored.
pub fn parse_edge_list(input: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(input);
    let (first, header) = lines.next().ok_or(ParseError::Empty)?;
    let mut tokens = header.split_whitespace();
    let n = parse_count(first, tokens.next().unwrap_or(""))?;
    if tokens.next().is_some() {
        return Err(line_err(first, "first line must hold only the vertex count"));
    }
    let mut pairs = Vec::new();
    for (line, text) in lines {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(line_err(line, format!("expected `i j`, found {} tokens", tokens.len())));
        }
        let a = parse_count(line, tokens[0])?;
        let b = parse_count(line, tokens[1])?;
        match Graph::from_edges(n, [(a, b)]) {
            Ok(_) => pairs.push((a, b)),
            Err(GraphError::SelfLoop(_)) => return Err(line_err(line, format!("self-loop at {a}"))),
            Err(e) => return Err(line_err(line, e.to_string())),
        }
    }
    Ok(Graph::from_edges(n, pairs).expect("pairs validated individually"))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for &(a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Parses the text matrix form: first line `n`, then `n` rows of `n`
/// whitespace-separated nonnegative integers.
pub fn parse_matrix_text(input: &str) -> Result<IntMatrix, ParseError> {
    let mut lines = content_lines(input);
    let (first, header) = lines.next().ok_or(ParseError::Empty)?;
    let mut tokens = header.split_whitespace();
    let n = parse_count(first, tokens.next().unwrap_or(""))?;
    if tokens.next().is_some() {
        return Err(line_err(first, "first line must hold only the dimension"));
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut last = first;
    for (line, text) in lines {
        last = line;
        if rows.len() == n {
            return Err(line_err(line, format!("unexpected row beyond the declared {n}")));
        }
        let row = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>().map_err(|_| {
                    line_err(line, format!("expected a nonnegative integer, found {t:?}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(line_err(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(line_err(last, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(IntMatrix::from_rows(&rows).expect("row lengths checked"))
}

pub fn write_matrix_text(m: &IntMatrix) -> String {
    let mut out = format!("{}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(u64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a JSON array of arrays of nonnegative integers.
pub fn parse_matrix_json(input: &str) -> Result<IntMatrix, ParseError> {
    if input.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let rows: Vec<Vec<u64>> =
        serde_json::from_str(input).map_err(|e| ParseError::Json(e.to_string()))?;
    IntMatrix::from_rows(&rows).map_err(|e| ParseError::Json(e.to_string()))
}

pub fn write_matrix_json(m: &IntMatrix) -> String {
    serde_json::to_string(&m.rows()).expect("matrix serializes")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

/// Guesses the format of a graph input: graph6 when the first byte is
/// printable graph6 (`>= 63`) and the first line decodes, otherwise an
/// edge list.
pub fn detect_graph_format(input: &str) -> GraphFormat {
    let trimmed = input.trim_start();
    match trimmed.as_bytes().first() {
        Some(&b) if b >= 63 => {
            let line = trimmed.lines().next().unwrap_or("");
            if decode_graph6(line).is_ok() {
                GraphFormat::Graph6
            } else {
                GraphFormat::EdgeList
            }
        }
        _ => GraphFormat::EdgeList,
    }
}

/// Parses a graph in the detected format. Graph6 input may hold only one
/// graph (a single non-blank line).
pub fn parse_graph_auto(input: &str) -> Result<Graph, ParseError> {
    match detect_graph_format(input) {
        GraphFormat::Graph6 => parse_graph6_single(input),
        GraphFormat::EdgeList => parse_edge_list(input),
    }
}

/// Exactly one graph6 line, surrounding whitespace ignored.
pub fn parse_graph6_single(input: &str) -> Result<Graph, ParseError> {
    let mut lines = input.lines().filter(|l| !l.trim().is_empty());
    let first = lines.next().ok_or(ParseError::Empty)?;
    if lines.next().is_some() {
        return Err(line_err(2, "expected a single graph6 line"));
    }
    decode_graph6(first.trim())
}

/// Parses a graph6 list, one graph per non-blank line.
pub fn parse_graph6_list(input: &str) -> Result<Vec<Graph>, ParseError> {
    input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            decode_graph6(l.trim()).map_err(|e| line_err(i + 1, e.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // Reference encodings from the graph6 format description.
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
        assert_eq!(encode_graph6(&Graph::empty(1)), "@");
        assert_eq!(encode_graph6(&Graph::complete(2)), "A_");
        assert_eq!(encode_graph6(&Graph::complete(4)), "C~");
        assert_eq!(encode_graph6(&Graph::cycle(3)), "Bw");
        assert_eq!(encode_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(encode_graph6(&Graph::path(4)), "Ch");
        // n = 5, edges 0-2 0-4 1-3 3-4: the example string from the format notes.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn graph6_decodes_known_strings() {
        assert_eq!(decode_graph6("DQc").unwrap().edges(), &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(decode_graph6(">>graph6<<Bw\n").unwrap(), Graph::cycle(3));
        assert_eq!(decode_graph6("?").unwrap(), Graph::empty(0));
    }

    #[test]
    fn graph6_large_order_header() {
        let g = Graph::path(63);
        let s = encode_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert_eq!(decode_graph6(""), Err(ParseError::Empty));
        assert!(matches!(decode_graph6("B"), Err(ParseError::Graph6 { offset: 1, .. })));
        assert!(matches!(decode_graph6("Bww"), Err(ParseError::Graph6 { .. })));
        // C3 with a stray padding bit.
        assert!(matches!(decode_graph6("Bx"), Err(ParseError::Graph6 { offset: 1, .. })));
        assert!(matches!(decode_graph6("B w"), Err(ParseError::Graph6 { offset: 1, .. })));
        // Non-canonical long size field for n = 5.
        assert!(decode_graph6("~??Dhc").is_err());
        assert!(decode_graph6("~~").is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("# triangle\n3\n0 1\n1 2 # closing\n\n2 0\n").unwrap();
        assert_eq!(g, Graph::cycle(3));
        assert_eq!(parse_edge_list("4\n").unwrap(), Graph::empty(4));
        assert_eq!(parse_edge_list(""), Err(ParseError::Empty));
        assert!(matches!(parse_edge_list("2\n0 0\n"), Err(ParseError::Line { line: 2, .. })));
        assert!(matches!(parse_edge_list("2\n0 2\n"), Err(ParseError::Line { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(ParseError::Line { line: 2, .. })));
        assert!(matches!(parse_edge_list("x\n"), Err(ParseError::Line { line: 1, .. })));
    }

    #[test]
    fn matrix_text_parsing() {
        let m = parse_matrix_text("3\n2 1 1\n1 2 1\n1 1 2\n").unwrap();
        assert_eq!(m, Graph::cycle(3).square_matrix());
        assert_eq!(parse_matrix_text(&write_matrix_text(&m)).unwrap(), m);
        assert!(matches!(parse_matrix_text("2\n1 2\n"), Err(ParseError::Line { line: 2, .. })));
        assert!(matches!(parse_matrix_text("2\n1 2\n3\n"), Err(ParseError::Line { line: 3, .. })));
        assert!(matches!(parse_matrix_text("1\n-1\n"), Err(ParseError::Line { line: 2, .. })));
        assert!(matches!(parse_matrix_text("1\n1\n1\n"), Err(ParseError::Line { line: 3, .. })));
        assert_eq!(parse_matrix_text("0\n").unwrap(), IntMatrix::zeros(0));
    }

    #[test]
    fn matrix_json_parsing() {
        let m = parse_matrix_json("[[2,1,1],[1,2,1],[1,1,2]]").unwrap();
        assert_eq!(m, Graph::cycle(3).square_matrix());
        assert_eq!(write_matrix_json(&m), "[[2,1,1],[1,2,1],[1,1,2]]");
        assert!(parse_matrix_json("[[1,2],[3]]").is_err());
        assert!(parse_matrix_json("[[-1]]").is_err());
        assert!(parse_matrix_json("[[1.5]]").is_err());
        assert_eq!(parse_matrix_json("  "), Err(ParseError::Empty));
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_graph_format("Bw\n"), GraphFormat::Graph6);
        assert_eq!(detect_graph_format("3\n0 1\n"), GraphFormat::EdgeList);
        assert_eq!(detect_graph_format("# c\n3\n"), GraphFormat::EdgeList);
        assert_eq!(parse_graph_auto("Dhc").unwrap(), Graph::cycle(5));
        assert_eq!(parse_graph_auto("3\n0 1\n1 2\n2 0").unwrap(), Graph::cycle(3));
    }
}
