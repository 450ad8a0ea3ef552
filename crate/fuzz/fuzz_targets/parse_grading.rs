#![no_main]
use bredon::repring::{parse_grading, GroupSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let group = GroupSpec::new(105).unwrap();
        let _ = parse_grading(&group, s);
    }
});
