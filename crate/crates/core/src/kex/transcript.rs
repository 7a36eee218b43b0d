//! Line-oriented transcript files.
//!
//! ```text
//! kex v1 aag
//! group d4
//! sgens 0,1
//! tgens 1,0
//! commitA 1,2
//! commitB 0,3
//! keyA 0,2
//! keyB 0,2
//! ```
//!
//! Lists of normal words are separated by `;`. NCDH transcripts add a
//! `u <normal word>` line and carry a single word per commit.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{AagCommit, AagParams, KexError, NcdhParams};
use crate::word::NormalWord;
use crate::zoo::GroupSpec;

pub const TRANSCRIPT_HEADER: &str = "kex v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Protocol {
    Aag,
    Ncdh,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::Aag => "aag",
            Protocol::Ncdh => "ncdh",
        })
    }
}

impl FromStr for Protocol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aag" => Ok(Protocol::Aag),
            "ncdh" => Ok(Protocol::Ncdh),
            _ => Err(format!("unknown protocol `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KexTranscript {
    pub protocol: Protocol,
    /// Group reference: a builtin name or a group file path.
    pub group: String,
    pub s_gens: Vec<NormalWord>,
    pub t_gens: Vec<NormalWord>,
    pub u: Option<NormalWord>,
    pub commit_a: Vec<NormalWord>,
    pub commit_b: Vec<NormalWord>,
    pub key_a: Option<NormalWord>,
    pub key_b: Option<NormalWord>,
}

fn join(words: &[NormalWord]) -> String {
    words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";")
}

impl KexTranscript {
    pub fn aag(
        group: impl Into<String>,
        params: &AagParams,
        commit_a: &AagCommit,
        commit_b: &AagCommit,
        keys: Option<(NormalWord, NormalWord)>,
    ) -> Self {
        let (key_a, key_b) = keys.map_or((None, None), |(a, b)| (Some(a), Some(b)));
        KexTranscript {
            protocol: Protocol::Aag,
            group: group.into(),
            s_gens: params.s_gens().to_vec(),
            t_gens: params.t_gens().to_vec(),
            u: None,
            commit_a: commit_a.conjugated.clone(),
            commit_b: commit_b.conjugated.clone(),
            key_a,
            key_b,
        }
    }

    pub fn ncdh(
        group: impl Into<String>,
        params: &NcdhParams,
        commit_a: &NormalWord,
        commit_b: &NormalWord,
        keys: Option<(NormalWord, NormalWord)>,
    ) -> Self {
        let (key_a, key_b) = keys.map_or((None, None), |(a, b)| (Some(a), Some(b)));
        KexTranscript {
            protocol: Protocol::Ncdh,
            group: group.into(),
            s_gens: params.s_gens().to_vec(),
            t_gens: params.t_gens().to_vec(),
            u: Some(params.u().clone()),
            commit_a: vec![commit_a.clone()],
            commit_b: vec![commit_b.clone()],
            key_a,
            key_b,
        }
    }

    pub fn aag_params(&self, group: GroupSpec) -> Result<AagParams, KexError> {
        AagParams::new(group, self.s_gens.clone(), self.t_gens.clone())
    }

    pub fn ncdh_params(&self, group: GroupSpec) -> Result<NcdhParams, KexError> {
        let u = self.u.clone().unwrap_or_else(|| NormalWord::identity(group.n()));
        NcdhParams::new(group, u, self.s_gens.clone(), self.t_gens.clone())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{TRANSCRIPT_HEADER} {}\ngroup {}\n", self.protocol, self.group);
        out += &format!("sgens {}\ntgens {}\n", join(&self.s_gens), join(&self.t_gens));
        if let Some(u) = &self.u {
            out += &format!("u {u}\n");
        }
        out += &format!("commitA {}\ncommitB {}\n", join(&self.commit_a), join(&self.commit_b));
        if let Some(k) = &self.key_a {
            out += &format!("keyA {k}\n");
        }
        if let Some(k) = &self.key_b {
            out += &format!("keyB {k}\n");
        }
        out
    }

    /// Strict parser: header first, each field at most once, blank lines
    /// ignored. Checks list shapes, word lengths and key agreement.
    pub fn parse(text: &str) -> Result<Self, TranscriptError> {
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l)).filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(TranscriptError::Missing("kex v1"))?;
        let protocol = header
            .strip_prefix(TRANSCRIPT_HEADER)
            .and_then(|rest| rest.strip_prefix(' '))
            .ok_or_else(|| TranscriptError::Syntax {
                line: hl,
                message: format!("expected `{TRANSCRIPT_HEADER} <aag|ncdh>`"),
            })?
            .parse::<Protocol>()
            .map_err(|message| TranscriptError::Syntax { line: hl, message })?;

        let mut group = None;
        let mut fields: [Option<Vec<NormalWord>>; 7] = Default::default();
        const KEYS: [&str; 7] = ["sgens", "tgens", "u", "commitA", "commitB", "keyA", "keyB"];
        for (line, l) in lines {
            let syntax = |message: String| TranscriptError::Syntax { line, message };
            let (key, value) =
                l.split_once(' ').ok_or_else(|| syntax(format!("expected `<field> <value>`, got `{l}`")))?;
            if key == "group" {
                if group.is_some() {
                    return Err(syntax("duplicate `group`".into()));
                }
                if value.is_empty() || value.trim() != value {
                    return Err(syntax("group reference must be nonempty without surrounding spaces".into()));
                }
                group = Some(value.to_string());
                continue;
            }
            let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| syntax(format!("unknown field `{key}`")))?;
            if fields[slot].is_some() {
                return Err(syntax(format!("duplicate `{key}`")));
            }
            let words = value
                .split(';')
                .map(|w| w.parse::<NormalWord>().map_err(|e| syntax(format!("`{key}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if matches!(key, "u" | "keyA" | "keyB") && words.len() != 1 {
                return Err(syntax(format!("`{key}` holds a single normal word")));
            }
            fields[slot] = Some(words);
        }

        let [s_gens, t_gens, u, commit_a, commit_b, key_a, key_b] = fields;
        let single = |v: Option<Vec<NormalWord>>| v.map(|mut v| v.remove(0));
        let t = KexTranscript {
            protocol,
            group: group.ok_or(TranscriptError::Missing("group"))?,
            s_gens: s_gens.ok_or(TranscriptError::Missing("sgens"))?,
            t_gens: t_gens.ok_or(TranscriptError::Missing("tgens"))?,
            u: single(u),
            commit_a: commit_a.ok_or(TranscriptError::Missing("commitA"))?,
            commit_b: commit_b.ok_or(TranscriptError::Missing("commitB"))?,
            key_a: single(key_a),
            key_b: single(key_b),
        };
        t.check_shape()?;
        Ok(t)
    }

    fn check_shape(&self) -> Result<(), TranscriptError> {
        let invalid = |m: &str| Err(TranscriptError::Invalid(m.to_string()));
        match self.protocol {
            Protocol::Aag => {
                if self.u.is_some() {
                    return invalid("`u` only appears in ncdh transcripts");
                }
                if self.commit_a.len() != self.t_gens.len() || self.commit_b.len() != self.s_gens.len() {
                    return invalid("aag commits must match the peer generator counts");
                }
            }
            Protocol::Ncdh => {
                if self.u.is_none() {
                    return Err(TranscriptError::Missing("u"));
                }
                if self.commit_a.len() != 1 || self.commit_b.len() != 1 {
                    return invalid("ncdh commits hold a single normal word");
                }
            }
        }
        let n = self.s_gens[0].len();
        let all = self
            .s_gens
            .iter()
            .chain(&self.t_gens)
            .chain(&self.u)
            .chain(&self.commit_a)
            .chain(&self.commit_b)
            .chain(&self.key_a)
            .chain(&self.key_b);
        if all.into_iter().any(|w| w.len() != n) {
            return invalid("normal words have different lengths");
        }
        if let (Some(a), Some(b)) = (&self.key_a, &self.key_b) {
            if a != b {
                return invalid("keyA and keyB differ");
            }
        }
        Ok(())
    }
}

impl fmt::Display for KexTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for KexTranscript {
    type Err = TranscriptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KexTranscript::parse(s)
    }
}
