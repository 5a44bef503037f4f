#![no_main]

use libfuzzer_sys::fuzz_target;
use square_graphic::formats::{parse_matrix_json, write_matrix_json};
use square_graphic::necessary_conditions;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix_json(text) {
        assert_eq!(parse_matrix_json(&write_matrix_json(&m)).as_ref(), Ok(&m));
        if m.dim() <= 64 {
            let _ = necessary_conditions(&m);
        }
    }
});
