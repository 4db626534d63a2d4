//! Creature files: `# key: value` metadata, then the genome either as
//! `genome: <letters>` or one instruction per line (letter or mnemonic).

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Code};
use crate::synth::TaskList;
use crate::vm::Opcode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreatureFile {
    /// In file order; keys may repeat.
    pub metadata: Vec<(String, String)>,
    pub genome: Code,
}

impl CreatureFile {
    pub fn new(genome: Code) -> Self {
        Self {
            metadata: Vec::new(),
            genome,
        }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.metadata.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Task list from the `task` entries, if any.
    pub fn tasks(&self) -> Result<Option<TaskList>> {
        let joined: Vec<&str> = self.get_all("task").collect();
        if joined.is_empty() {
            return Ok(None);
        }
        joined.join(",").parse().map(Some)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(s, "# {k}: {v}");
        }
        let _ = writeln!(s, "genome: {}", self.genome.letters());
        s
    }
}

fn parse_err(path: &str, line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        column,
        message: message.into(),
    }
}

fn mnemonic(word: &str) -> Option<char> {
    Opcode::ALL
        .iter()
        .find(|op| op.mnemonic().eq_ignore_ascii_case(word))
        .map(|op| op.letter())
}

/// Parses creature text. `origin` names the source in errors and supplies
/// the genome id when there is no `name` entry.
pub fn parse_creature(text: &str, origin: &str) -> Result<CreatureFile> {
    let alphabet = Alphabet::genome();
    let mut metadata = Vec::new();
    let mut inline: Option<String> = None;
    let mut per_line = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let lead = raw.len() - raw.trim_start().len();
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(':') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if inline.is_some() {
            return Err(parse_err(origin, line_no, lead + 1, "content after the genome line"));
        }
        if line.starts_with("genome:") {
            if !per_line.is_empty() {
                return Err(parse_err(origin, line_no, lead + 1, "genome given twice"));
            }
            let offset = raw.find("genome:").expect("prefix present") + "genome:".len();
            let body = &raw[offset..];
            let skip = body.len() - body.trim_start().len();
            let letters = body.trim();
            for (i, c) in letters.chars().enumerate() {
                if !alphabet.contains(c) {
                    return Err(parse_err(
                        origin,
                        line_no,
                        offset + skip + i + 1,
                        format!("unknown instruction letter {c:?}"),
                    ));
                }
            }
            inline = Some(letters.to_string());
            continue;
        }
        if let Some(c) = mnemonic(line) {
            per_line.push(c);
            continue;
        }
        for (i, c) in line.chars().enumerate() {
            if !alphabet.contains(c) {
                return Err(parse_err(
                    origin,
                    line_no,
                    lead + i + 1,
                    format!("unknown instruction {line:?}"),
                ));
            }
        }
        per_line.push_str(line);
    }
    let letters = match inline {
        Some(l) => l,
        None if !per_line.is_empty() => per_line,
        None => return Err(parse_err(origin, text.lines().count().max(1), 1, "missing genome")),
    };
    let id = metadata
        .iter()
        .find(|(k, _)| k == "name")
        .map(|(_, v): &(String, String)| v.clone())
        .unwrap_or_else(|| {
            Path::new(origin)
                .file_stem()
                .map_or_else(|| origin.to_string(), |s| s.to_string_lossy().into_owned())
        });
    Ok(CreatureFile {
        metadata,
        genome: Code::new(id, letters)?,
    })
}

pub fn read_creature(path: impl AsRef<Path>) -> Result<CreatureFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_creature(&text, &path.display().to_string())
}

pub fn write_creature(path: impl AsRef<Path>, creature: &CreatureFile) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, creature.to_text()).map_err(|e| Error::io(path, e))
}
