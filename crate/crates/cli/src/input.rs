use std::io::Read;
use std::path::Path;

use square_graphic::formats::{
    parse_edge_list, parse_graph6_single, parse_graph_auto, parse_matrix_json, parse_matrix_text,
};
use square_graphic::{Graph, IntMatrix};

use crate::args::InputFormat;
use crate::CliError;

/// Reads a path, or stdin for `-`.
pub fn read_source(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::input(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::input(format!("{source}: {e}")))
    }
}

pub fn read_graph(source: &str, format: InputFormat) -> Result<Graph, CliError> {
    let text = read_source(source)?;
    let parsed = match format {
        InputFormat::Auto => parse_graph_auto(&text),
        InputFormat::Graph6 => parse_graph6_single(&text),
        InputFormat::Edgelist => parse_edge_list(&text),
        InputFormat::MatrixJson | InputFormat::MatrixText => {
            return Err(CliError::input(format!("{source}: this command expects a graph, not a matrix")))
        }
    };
    parsed.map_err(|e| CliError::input(format!("{source}: {e}")))
}

/// JSON for `.json` paths or input whose first non-blank byte is `[`.
fn looks_like_json(source: &str, text: &str) -> bool {
    Path::new(source).extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with('[')
}

pub fn read_matrix(source: &str, format: InputFormat) -> Result<IntMatrix, CliError> {
    let text = read_source(source)?;
    let parsed = match format {
        InputFormat::MatrixJson => parse_matrix_json(&text),
        InputFormat::MatrixText => parse_matrix_text(&text),
        InputFormat::Auto if looks_like_json(source, &text) => parse_matrix_json(&text),
        InputFormat::Auto => parse_matrix_text(&text),
        InputFormat::Graph6 | InputFormat::Edgelist => {
            return Err(CliError::input(format!("{source}: this command expects a matrix, not a graph")))
        }
    };
    parsed.map_err(|e| CliError::input(format!("{source}: {e}")))
}
