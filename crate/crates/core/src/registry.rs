//! Measure registry and profile construction.
//!
//! A registry is an ordered list of named raw measures. Building a profile
//! evaluates each one, passes unbounded ones through `x / (1 + x)`, and
//! returns the vector in registry order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::evometrics::{ablate, reuse, robustness, spaghetti, AblationOptions};
use crate::metrics::{block_entropy, grasp_content, halstead, halstead_counts, mccabe, GraspWeightTable};
use crate::model::{normalize_unbounded, Alphabet, Code, FunctionClassSpec, Profile};
use crate::structure::{build_cfg, decompose};

/// Everything a measure may need besides the code itself.
#[derive(Debug, Clone, Default)]
pub struct AnalysisContext {
    /// Required by the behavioral measures.
    pub spec: Option<FunctionClassSpec>,
    pub alphabet: Alphabet,
    pub grasp_weights: GraspWeightTable,
    pub ablation: AblationOptions,
}

impl AnalysisContext {
    pub fn with_spec(spec: FunctionClassSpec) -> Self {
        Self {
            spec: Some(spec),
            ..Self::default()
        }
    }

    fn require_spec(&self) -> Result<&FunctionClassSpec> {
        self.spec
            .as_ref()
            .ok_or_else(|| Error::domain("behavioral measure needs a function class"))
    }
}

pub trait RawMeasure: Send + Sync {
    fn compute(&self, code: &Code, ctx: &AnalysisContext) -> Result<f64>;
}

impl<F> RawMeasure for F
where
    F: Fn(&Code, &AnalysisContext) -> Result<f64> + Send + Sync,
{
    fn compute(&self, code: &Code, ctx: &AnalysisContext) -> Result<f64> {
        self(code, ctx)
    }
}

/// A measure returning the same value for every code.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl RawMeasure for Constant {
    fn compute(&self, _: &Code, _: &AnalysisContext) -> Result<f64> {
        Ok(self.0)
    }
}

/// The measures that can be named in a configuration file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Vocabulary,
    Length,
    Difficulty,
    Volume,
    Effort,
    McCabe,
    Grasp,
    BlockEntropy { n: usize },
    Spaghetti,
    Reuse { k: usize, i: usize },
    Redundancy { k: usize },
    Brittleness { k: usize },
    Robustness,
}

impl Builtin {
    /// Parses names such as `difficulty`, `block_entropy:2`, `reuse:2:3`.
    pub fn parse(name: &str) -> Result<Self> {
        let mut parts = name.trim().split(':');
        let head = parts.next().unwrap_or_default();
        let args: Vec<usize> = parts
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad parameter {p:?} in measure {name:?}")))
            })
            .collect::<Result<_>>()?;
        let arg = |i: usize, default: usize| args.get(i).copied().unwrap_or(default);
        let max_args = match head {
            "block_entropy" | "redundancy" | "brittleness" => 1,
            "reuse" => 2,
            _ => 0,
        };
        if args.len() > max_args {
            return Err(Error::Config(format!("too many parameters in measure {name:?}")));
        }
        let m = match head {
            "vocabulary" => Builtin::Vocabulary,
            "length" => Builtin::Length,
            "difficulty" => Builtin::Difficulty,
            "volume" => Builtin::Volume,
            "effort" => Builtin::Effort,
            "mccabe" => Builtin::McCabe,
            "grasp" => Builtin::Grasp,
            "block_entropy" => Builtin::BlockEntropy { n: arg(0, 1) },
            "spaghetti" => Builtin::Spaghetti,
            "reuse" => Builtin::Reuse { k: arg(0, 2), i: arg(1, 2) },
            "redundancy" => Builtin::Redundancy { k: arg(0, 2) },
            "brittleness" => Builtin::Brittleness { k: arg(0, 2) },
            "robustness" => Builtin::Robustness,
            _ => return Err(Error::Config(format!("unknown measure {name:?}"))),
        };
        Ok(m)
    }

    /// Whether raw values can leave [0,1] and must be normalized.
    pub fn needs_normalization(self) -> bool {
        match self {
            Builtin::Vocabulary
            | Builtin::Length
            | Builtin::Difficulty
            | Builtin::Volume
            | Builtin::Effort
            | Builtin::McCabe
            | Builtin::Grasp
            | Builtin::Brittleness { .. } => true,
            Builtin::BlockEntropy { .. }
            | Builtin::Spaghetti
            | Builtin::Reuse { .. }
            | Builtin::Redundancy { .. }
            | Builtin::Robustness => false,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Vocabulary => f.write_str("vocabulary"),
            Builtin::Length => f.write_str("length"),
            Builtin::Difficulty => f.write_str("difficulty"),
            Builtin::Volume => f.write_str("volume"),
            Builtin::Effort => f.write_str("effort"),
            Builtin::McCabe => f.write_str("mccabe"),
            Builtin::Grasp => f.write_str("grasp"),
            Builtin::BlockEntropy { n } => write!(f, "block_entropy:{n}"),
            Builtin::Spaghetti => f.write_str("spaghetti"),
            Builtin::Reuse { k, i } => write!(f, "reuse:{k}:{i}"),
            Builtin::Redundancy { k } => write!(f, "redundancy:{k}"),
            Builtin::Brittleness { k } => write!(f, "brittleness:{k}"),
            Builtin::Robustness => f.write_str("robustness"),
        }
    }
}

impl RawMeasure for Builtin {
    fn compute(&self, code: &Code, ctx: &AnalysisContext) -> Result<f64> {
        let undefined = |what: &str| Error::Undefined(format!("{what} of {}", code.id()));
        match *self {
            Builtin::Vocabulary => Ok(halstead(halstead_counts(code)).vocabulary),
            Builtin::Length => Ok(halstead(halstead_counts(code)).length),
            Builtin::Difficulty => halstead(halstead_counts(code))
                .difficulty
                .ok_or_else(|| undefined("difficulty (no operands)")),
            Builtin::Volume => Ok(halstead(halstead_counts(code)).volume),
            Builtin::Effort => halstead(halstead_counts(code))
                .effort
                .ok_or_else(|| undefined("effort (no operands)")),
            Builtin::McCabe => Ok(mccabe(&build_cfg(code)?).complexity as f64),
            Builtin::Grasp => grasp_content(code.as_bytes(), &ctx.grasp_weights),
            Builtin::BlockEntropy { n } => block_entropy(code.as_bytes(), n, ctx.alphabet.size()),
            Builtin::Spaghetti => Ok(spaghetti(&decompose(code)?).overall),
            Builtin::Reuse { k, i } => reuse(&decompose(code)?, i, k),
            Builtin::Redundancy { k } => {
                Ok(ablate(code, ctx.require_spec()?, k, ctx.ablation)?.redundancy())
            }
            Builtin::Brittleness { k } => {
                ablate(code, ctx.require_spec()?, k, ctx.ablation)?.brittleness()
            }
            Builtin::Robustness => {
                Ok(robustness(code, ctx.require_spec()?, &ctx.alphabet)?.value())
            }
        }
    }
}

#[derive(Clone)]
pub struct RegistryEntry {
    pub name: String,
    pub measure: Arc<dyn RawMeasure>,
    pub needs_normalization: bool,
}

impl fmt::Debug for RegistryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegistryEntry")
            .field("name", &self.name)
            .field("needs_normalization", &self.needs_normalization)
            .finish()
    }
}

#[derive(Debug, Clone, Default)]
pub struct MeasureRegistry {
    entries: Vec<RegistryEntry>,
}

pub const HALSTEAD_MEASURES: [&str; 5] = ["vocabulary", "length", "difficulty", "volume", "effort"];

impl MeasureRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The five Halstead measures: vocabulary, length, difficulty, volume, effort.
    pub fn halstead() -> Self {
        Self::from_names(HALSTEAD_MEASURES).expect("builtin names")
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut reg = Self::new();
        for name in names {
            let b = Builtin::parse(name.as_ref())?;
            reg.push(b.to_string(), b, b.needs_normalization())?;
        }
        if reg.is_empty() {
            return Err(Error::Config("measure registry is empty".into()));
        }
        Ok(reg)
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        measure: impl RawMeasure + 'static,
        needs_normalization: bool,
    ) -> Result<&mut Self> {
        let name = name.into();
        if self.entries.iter().any(|e| e.name == name) {
            return Err(Error::Config(format!("measure {name} registered twice")));
        }
        self.entries.push(RegistryEntry {
            name,
            measure: Arc::new(measure),
            needs_normalization,
        });
        Ok(self)
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Raw (unnormalized) measure values in registry order.
pub fn raw_values(code: &Code, registry: &MeasureRegistry, ctx: &AnalysisContext) -> Result<Vec<f64>> {
    let mut values = Vec::with_capacity(registry.len());
    let mut errors = Vec::new();
    for e in registry.entries() {
        match e.measure.compute(code, ctx) {
            Ok(v) => values.push(v),
            Err(err) => errors.push(Error::Measure {
                name: e.name.clone(),
                reason: err.to_string(),
            }),
        }
    }
    if errors.is_empty() {
        Ok(values)
    } else {
        Err(Error::Profile(errors))
    }
}

/// μ(code): every registry measure, normalized where flagged.
pub fn build_profile(code: &Code, registry: &MeasureRegistry, ctx: &AnalysisContext) -> Result<Profile> {
    let raw = raw_values(code, registry, ctx)?;
    let mut values = Vec::with_capacity(raw.len());
    let mut errors = Vec::new();
    for (e, v) in registry.entries().iter().zip(raw) {
        let v = if e.needs_normalization {
            normalize_unbounded(v)
        } else if (0.0..=1.0).contains(&v) {
            Ok(v)
        } else {
            Err(Error::domain(format!("{v} outside [0,1] for a bounded measure")))
        };
        match v {
            Ok(v) => values.push(v),
            Err(err) => errors.push(Error::Measure {
                name: e.name.clone(),
                reason: err.to_string(),
            }),
        }
    }
    if !errors.is_empty() {
        return Err(Error::Profile(errors));
    }
    Profile::new(values, registry.names())
}
