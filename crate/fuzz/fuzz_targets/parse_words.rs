#![no_main]

use libfuzzer_sys::fuzz_target;
use pcgroup_core::conjugacy::SubgroupWord;
use pcgroup_core::{NormalWord, Word};

// One input, three word grammars.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = text.parse::<Word>() {
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }
    if let Ok(x) = text.parse::<NormalWord>() {
        assert_eq!(x.to_string().parse::<NormalWord>().unwrap(), x);
    }
    if let Ok(s) = text.parse::<SubgroupWord>() {
        assert_eq!(s.to_string().parse::<SubgroupWord>().unwrap(), s);
        assert_eq!(s.inverse().inverse(), s);
    }
});
