#![no_main]

use libfuzzer_sys::fuzz_target;
use pcgroup_core::zoo::IntMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<IntMatrix>() {
        assert_eq!(m.to_string().parse::<IntMatrix>().unwrap(), m);
    }
});
