#![no_main]

use libfuzzer_sys::fuzz_target;
use pcgroup_core::GroupSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = GroupSpec::parse("fuzz", text) {
        let again = GroupSpec::parse("fuzz", &g.to_text()).expect("printed group reparses");
        assert_eq!(again.presentation(), g.presentation());
        assert_eq!(again.embedding(), g.embedding());
    }
});
