#![no_main]

use libfuzzer_sys::fuzz_target;
use pcgroup_core::kex::KexTranscript;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = KexTranscript::parse(text) {
        assert_eq!(KexTranscript::parse(&t.to_text()).expect("printed transcript reparses"), t);
    }
});
