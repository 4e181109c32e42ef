#![no_main]

use libfuzzer_sys::fuzz_target;

#[allow(dead_code)]
mod bodies {
    include!("../bodies.rs");
}

fuzz_target!(|data: &[u8]| bodies::portrait_text(data));
