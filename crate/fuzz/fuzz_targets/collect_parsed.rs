#![no_main]

use libfuzzer_sys::fuzz_target;
use pcgroup_core::collect::is_normal_range;
use pcgroup_core::{parse_presentation, Collector, Word};

// Presentation text, then a line `---`, then a word. Malformed presentations
// may loop; the small step limit must stop them with an error.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((pres, word)) = text.split_once("\n---\n") else { return };
    let (Ok(p), Ok(w)) = (parse_presentation(pres), word.trim().parse::<Word>()) else { return };
    let mut c = Collector::with_step_limit(&p, 20_000);
    if let Ok(x) = c.collect(&w) {
        assert!(is_normal_range(&p, &x));
    }
});
