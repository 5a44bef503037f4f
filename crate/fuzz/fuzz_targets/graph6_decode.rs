#![no_main]

use libfuzzer_sys::fuzz_target;
use square_graphic::formats::{decode_graph6, encode_graph6};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = decode_graph6(text) {
        let encoded = encode_graph6(&g);
        assert_eq!(decode_graph6(&encoded).as_ref(), Ok(&g));
    }
});
