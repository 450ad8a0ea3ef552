#![no_main]
use bredon::repring::GroupSpec;
use bredon_cli::coeff::parse_coeff_system;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let group = GroupSpec::new(105).unwrap();
        let _ = parse_coeff_system(&group, s);
    }
});
