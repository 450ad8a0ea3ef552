#![no_main]
use bredon::mackey::table_from_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = table_from_json(s);
    }
});
