//! INI-style experiment configuration and D_f spec files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::{FunctionClassSpec, NormSpec, DEFAULT_STEP_CAP};
use crate::registry::{MeasureRegistry, HALSTEAD_MEASURES};
use crate::synth::{default_domain, task_spec, TaskList, DEFAULT_DOMAIN_SEED};
use crate::vm::spec_from_oracle;

use super::creature::read_creature;

/// `key = value` lines. `[section]` headers prefix later keys as
/// `section.key`; `#` and `;` start comments.
pub fn parse_ini(text: &str, origin: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut section = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = name.trim().to_string();
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Parse {
                path: origin.to_string(),
                line: i + 1,
                column: 1,
                message: "expected key = value".into(),
            });
        };
        let key = if section.is_empty() {
            k.trim().to_string()
        } else {
            format!("{section}.{}", k.trim())
        };
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

/// Everything needed to rerun an analysis reproducibly.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Registry order.
    pub measures: Vec<String>,
    pub p: f64,
    pub step_cap: u64,
    pub seed: u64,
    pub domain_seed: u64,
    pub domain_arity: usize,
    pub domain_file: Option<PathBuf>,
    pub expected_file: Option<PathBuf>,
    pub oracle: Option<PathBuf>,
    pub tasks: Option<String>,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub output: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            measures: HALSTEAD_MEASURES.iter().map(|s| s.to_string()).collect(),
            p: 2.0,
            step_cap: DEFAULT_STEP_CAP,
            seed: 0,
            domain_seed: DEFAULT_DOMAIN_SEED,
            domain_arity: 3,
            domain_file: None,
            expected_file: None,
            oracle: None,
            tasks: None,
            a: Vec::new(),
            b: Vec::new(),
            output: PathBuf::from("out"),
        }
    }
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_string).collect()
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("{key}: cannot parse {v:?}")))
}

impl ExperimentConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::default();
        cfg.apply(&parse_ini(&text, &path.display().to_string())?)?;
        Ok(cfg)
    }

    /// Overrides fields from parsed INI entries.
    pub fn apply(&mut self, entries: &BTreeMap<String, String>) -> Result<()> {
        for (k, v) in entries {
            let key = k.rsplit('.').next().unwrap_or(k);
            match key {
                "measures" => self.measures = list(v),
                "p" => self.p = number(key, v)?,
                "step_cap" => self.step_cap = number(key, v)?,
                "seed" => self.seed = number(key, v)?,
                "domain_seed" => self.domain_seed = number(key, v)?,
                "domain_arity" => self.domain_arity = number(key, v)?,
                "domain" => self.domain_file = Some(v.into()),
                "expected" => self.expected_file = Some(v.into()),
                "oracle" => self.oracle = Some(v.into()),
                "tasks" => self.tasks = Some(v.clone()),
                "a" => self.a = list(v),
                "b" => self.b = list(v),
                "output" => self.output = v.into(),
                other => return Err(Error::Config(format!("unknown configuration key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn registry(&self) -> Result<MeasureRegistry> {
        MeasureRegistry::from_names(&self.measures)
    }

    pub fn norm(&self) -> Result<NormSpec> {
        NormSpec::new(self.p)
    }

    /// Sorted `key=value` lines covering every field; hashed into reports.
    pub fn canonical(&self) -> String {
        let opt = |p: &Option<PathBuf>| p.as_ref().map_or(String::new(), |p| p.display().to_string());
        let mut s = String::new();
        let _ = writeln!(s, "a={}", self.a.join(","));
        let _ = writeln!(s, "b={}", self.b.join(","));
        let _ = writeln!(s, "domain={}", opt(&self.domain_file));
        let _ = writeln!(s, "domain_arity={}", self.domain_arity);
        let _ = writeln!(s, "domain_seed={}", self.domain_seed);
        let _ = writeln!(s, "expected={}", opt(&self.expected_file));
        let _ = writeln!(s, "measures={}", self.measures.join(","));
        let _ = writeln!(s, "oracle={}", opt(&self.oracle));
        let _ = writeln!(s, "p={}", self.p);
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "step_cap={}", self.step_cap);
        let _ = writeln!(s, "tasks={}", self.tasks.as_deref().unwrap_or(""));
        s
    }

    /// The function class: domain from a file or the seeded default;
    /// expected outputs from a file, an oracle code or a task list
    /// (`fallback_tasks` when none is configured).
    pub fn spec(&self, fallback_tasks: Option<&TaskList>) -> Result<FunctionClassSpec> {
        let domain = match &self.domain_file {
            Some(p) => read_domain(p)?,
            None => default_domain(self.domain_arity, self.domain_seed),
        };
        if let Some(p) = &self.expected_file {
            return FunctionClassSpec::new(domain, read_expected(p)?, self.step_cap);
        }
        if let Some(p) = &self.oracle {
            return spec_from_oracle(&read_creature(p)?.genome, domain, self.step_cap);
        }
        let tasks = match &self.tasks {
            Some(t) => Some(t.parse::<TaskList>()?),
            None => fallback_tasks.cloned(),
        };
        match tasks {
            Some(t) => task_spec(&t, domain, self.step_cap),
            None => Err(Error::Config(
                "no function class: give expected outputs, an oracle or tasks".into(),
            )),
        }
    }
}

fn parse_u32_line(line: &str, path: &Path, line_no: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if !tok.is_empty() {
            out.push(tok.parse::<u32>().map_err(|_| Error::Parse {
                path: path.display().to_string(),
                line: line_no,
                column: col,
                message: format!("not an unsigned 32-bit integer: {tok:?}"),
            })?);
        }
        col += tok.len() + 1;
    }
    Ok(out)
}

/// One input tuple per line, space-separated; blank and `#` lines skipped.
pub fn read_domain(path: impl AsRef<Path>) -> Result<Vec<Vec<u32>>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_u32_line(l, path, i + 1))
        .collect()
}

/// Expected outputs parallel to a domain file. `#` lines are skipped;
/// a blank line means no outputs.
pub fn read_expected(path: impl AsRef<Path>) -> Result<Vec<Vec<u32>>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_u32_line(l, path, i + 1))
        .collect()
}

pub fn write_spec_files(domain_path: impl AsRef<Path>, expected_path: impl AsRef<Path>, spec: &FunctionClassSpec) -> Result<()> {
    let join = |rows: &[Vec<u32>]| {
        rows.iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect::<String>()
    };
    let (d, e) = (domain_path.as_ref(), expected_path.as_ref());
    std::fs::write(d, join(spec.domain())).map_err(|err| Error::io(d, err))?;
    std::fs::write(e, join(spec.expected())).map_err(|err| Error::io(e, err))
}
