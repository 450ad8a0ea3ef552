#![no_main]
use bredon::repring::GroupSpec;
use bredon::ringz::parse_monomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let group = GroupSpec::new(105).unwrap();
        let _ = parse_monomial(&group, s);
    }
});
