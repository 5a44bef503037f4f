#![no_main]

use libfuzzer_sys::fuzz_target;
use square_graphic::formats::{parse_graph6_list, parse_graph_auto};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_graph6_list(text);
    if let Ok(g) = parse_graph_auto(text) {
        assert!(g.edges().iter().all(|&(a, b)| a < b && b < g.vertex_count()));
    }
});
