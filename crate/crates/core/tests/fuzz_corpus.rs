//! Replays the checked-in fuzz seeds through the same round-trip checks the
//! fuzz targets make, so the seeds stay meaningful without a nightly toolchain.

use std::fs;
use std::path::PathBuf;

use pcgroup_core::collect::is_normal_range;
use pcgroup_core::conjugacy::SubgroupWord;
use pcgroup_core::kex::KexTranscript;
use pcgroup_core::zoo::IntMatrix;
use pcgroup_core::{parse_presentation, Collector, GroupSpec, NormalWord, Word};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn presentation_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_presentation") {
        if let Ok(p) = parse_presentation(&text) {
            assert_eq!(parse_presentation(&p.to_text()).unwrap(), p, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn group_file_seeds() {
    for (name, text) in seeds("parse_group_file") {
        let g = GroupSpec::parse("seed", &text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = GroupSpec::parse("seed", &g.to_text()).unwrap();
        assert_eq!(again.presentation(), g.presentation(), "{name}");
        assert_eq!(again.embedding(), g.embedding(), "{name}");
    }
}

#[test]
fn transcript_seeds() {
    for (name, text) in seeds("parse_transcript") {
        let t = KexTranscript::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(KexTranscript::parse(&t.to_text()).unwrap(), t, "{name}");
    }
}

#[test]
fn word_seeds() {
    for (name, text) in seeds("parse_words") {
        let mut any = false;
        if let Ok(w) = text.parse::<Word>() {
            assert_eq!(w.to_string().parse::<Word>().unwrap(), w, "{name}");
            any = true;
        }
        if let Ok(x) = text.parse::<NormalWord>() {
            assert_eq!(x.to_string().parse::<NormalWord>().unwrap(), x, "{name}");
            any = true;
        }
        if let Ok(s) = text.parse::<SubgroupWord>() {
            assert_eq!(s.to_string().parse::<SubgroupWord>().unwrap(), s, "{name}");
            any = true;
        }
        assert!(any, "{name} parses under no grammar");
    }
}

#[test]
fn matrix_seeds() {
    for (name, text) in seeds("parse_matrix") {
        let m: IntMatrix = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(m.to_string().parse::<IntMatrix>().unwrap(), m, "{name}");
    }
}

#[test]
fn collect_seeds() {
    for (name, text) in seeds("collect_parsed") {
        let (pres, word) = text.split_once("\n---\n").expect("separator");
        let p = parse_presentation(pres).unwrap();
        let w: Word = word.trim().parse().unwrap();
        let x = Collector::with_step_limit(&p, 20_000).collect(&w).unwrap();
        assert!(is_normal_range(&p, &x), "{name}");
    }
}
