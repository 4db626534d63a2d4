use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use codestyle::experiment::{run_experiment, write_experiment};
use codestyle::io::{
    config_hash, fingerprint_svg, pca_svg, profile_csv_string, read_creature, write_creature, write_json,
    write_text, CreatureFile, ExperimentConfig, FingerprintReport, ProfileRow,
};
use codestyle::registry::{build_profile, AnalysisContext};
use codestyle::style::{cluster, pca, purity, CodeSetProfiles, StyleFingerprint};
use codestyle::synth::{neutral_variants, synth_allloop, synth_noloop, translate, TaskList, TranslateOptions};
use codestyle::vm::{class_membership, Membership};
use codestyle::{Error, FunctionClassSpec, Result};

const EXIT_USAGE: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "codestyle", version, about = "Style fingerprints for genomes of a small instruction language")]
struct Cli {
    /// INI-style key = value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct MeasureArgs {
    /// Comma-separated measure names in profile order.
    #[arg(long)]
    measures: Option<String>,
}

#[derive(Args, Debug, Default)]
struct SpecArgs {
    /// Task list such as "XOR:2,NOT:3".
    #[arg(long)]
    tasks: Option<String>,
    /// Input tuples, one per line.
    #[arg(long)]
    domain: Option<PathBuf>,
    /// Expected outputs parallel to --domain.
    #[arg(long)]
    expected: Option<PathBuf>,
    /// Creature whose outputs define the class.
    #[arg(long)]
    oracle: Option<PathBuf>,
    #[arg(long)]
    step_cap: Option<u64>,
    #[arg(long)]
    domain_seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Noloop,
    Allloop,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Profiles of creature files as CSV or JSON.
    Analyze {
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        measures: MeasureArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extremal weight vector, θ and η of set A against set B.
    Fingerprint {
        #[arg(long = "a", num_args = 1.., required = true)]
        a: Vec<String>,
        #[arg(long = "b", num_args = 1.., required = true)]
        b: Vec<String>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        measures: MeasureArgs,
    },
    /// First two principal components of the profiles.
    Pca {
        #[arg(required = true)]
        files: Vec<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        measures: MeasureArgs,
    },
    /// Single-linkage clusters of A ∪ B on the fingerprint score.
    Cluster {
        #[arg(long = "a", num_args = 1.., required = true)]
        a: Vec<String>,
        #[arg(long = "b", num_args = 1.., required = true)]
        b: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        p: Option<f64>,
        #[command(flatten)]
        measures: MeasureArgs,
    },
    /// Rewrites a code towards the style of B without leaving its class.
    Translate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long = "b", num_args = 1.., required = true)]
        b: Vec<String>,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the iteration trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        measures: MeasureArgs,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Writes a comparison code for a task list.
    Synth {
        #[arg(long)]
        tasks: String,
        #[arg(long, value_enum, default_value = "noloop")]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class-preserving single-edit variants of a code.
    Neutral {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Reports whether a code is a member of a function class.
    Classcheck {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Ingested creature against its two synthesized comparison codes.
    Experiment {
        #[arg(long)]
        creature: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        tasks: Option<String>,
        #[command(flatten)]
        measures: MeasureArgs,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Degenerate(_) => EXIT_DEGENERATE,
        Error::Parse { .. }
        | Error::InvalidLetter { .. }
        | Error::InvalidAlphabet(_)
        | Error::ErrorClass(_)
        | Error::NotMember
        | Error::Measure { .. } => EXIT_PARSE,
        Error::Profile(errs) => errs.iter().map(exit_code).max().unwrap_or(EXIT_PARSE).max(EXIT_PARSE),
        _ => EXIT_USAGE,
    }
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => ExperimentConfig::from_file(p),
        None => Ok(ExperimentConfig::default()),
    }
}

impl MeasureArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(m) = &self.measures {
            cfg.measures = m.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        }
    }
}

impl SpecArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(t) = &self.tasks {
            cfg.tasks = Some(t.clone());
        }
        if let Some(d) = &self.domain {
            cfg.domain_file = Some(d.clone());
        }
        if let Some(e) = &self.expected {
            cfg.expected_file = Some(e.clone());
        }
        if let Some(o) = &self.oracle {
            cfg.oracle = Some(o.clone());
        }
        if let Some(s) = self.step_cap {
            cfg.step_cap = s;
        }
        if let Some(s) = self.domain_seed {
            cfg.domain_seed = s;
        }
    }
}

fn expand(patterns: &[String]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for pat in patterns {
        let paths = glob::glob(pat).map_err(|e| Error::Config(format!("bad pattern {pat:?}: {e}")))?;
        let before = out.len();
        for p in paths {
            out.push(p.map_err(|e| Error::Config(e.to_string()))?);
        }
        if out.len() == before {
            return Err(Error::Config(format!("no files match {pat:?}")));
        }
    }
    Ok(out)
}

/// The configured class, or `None` when no source for one was given.
fn optional_spec(cfg: &ExperimentConfig, creature: &CreatureFile) -> Result<Option<FunctionClassSpec>> {
    match cfg.spec(creature.tasks()?.as_ref()) {
        Ok(s) => Ok(Some(s)),
        Err(Error::Config(_)) if cfg.domain_file.is_none() && cfg.expected_file.is_none() && cfg.oracle.is_none() => {
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn profiles_of(paths: &[PathBuf], cfg: &ExperimentConfig) -> Result<Vec<ProfileRow>> {
    let registry = cfg.registry()?;
    let mut rows = Vec::with_capacity(paths.len());
    for path in paths {
        let creature = read_creature(path)?;
        let ctx = match optional_spec(cfg, &creature)? {
            Some(s) => AnalysisContext::with_spec(s),
            None => AnalysisContext::default(),
        };
        rows.push(ProfileRow {
            id: creature.genome.id().to_string(),
            profile: build_profile(&creature.genome, &registry, &ctx)?,
        });
    }
    Ok(rows)
}

fn code_set(label: &str, rows: &[ProfileRow]) -> Result<CodeSetProfiles> {
    CodeSetProfiles::new(
        label,
        rows.iter().map(|r| r.profile.clone()).collect(),
        rows.iter().map(|r| r.id.clone()).collect(),
    )
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn degenerate_exit(fp: &StyleFingerprint) -> i32 {
    match fp.degenerate {
        Some(d) => {
            eprintln!("degenerate: {}", d.reason());
            EXIT_DEGENERATE
        }
        None => 0,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let mut cfg = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Analyze {
            files,
            measures,
            spec,
            format,
            out,
        } => {
            measures.apply(&mut cfg);
            spec.apply(&mut cfg);
            let rows = profiles_of(&expand(&files)?, &cfg)?;
            let text = match format {
                Format::Csv => profile_csv_string(&rows, &cfg.measures)?,
                Format::Json => {
                    let value = serde_json::json!({
                        "measure_names": cfg.registry()?.names(),
                        "rows": rows.iter().map(|r| serde_json::json!({
                            "id": r.id,
                            "values": r.profile.values(),
                        })).collect::<Vec<_>>(),
                    });
                    serde_json::to_string_pretty(&value)? + "\n"
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Fingerprint {
            a,
            b,
            p,
            svg,
            out,
            measures,
        } => {
            measures.apply(&mut cfg);
            if let Some(p) = p {
                cfg.p = p;
            }
            cfg.a = a.clone();
            cfg.b = b.clone();
            let ra = profiles_of(&expand(&a)?, &cfg)?;
            let rb = profiles_of(&expand(&b)?, &cfg)?;
            let fp = StyleFingerprint::compute(&code_set("A", &ra)?, &code_set("B", &rb)?, cfg.norm()?)?;
            let report = FingerprintReport::new(&fp, config_hash(&cfg.canonical()));
            emit(out.as_deref(), &report.to_json()?)?;
            if let Some(path) = svg {
                write_text(path, &fingerprint_svg(&fp.measure_names, &fp.w_plus, "w+")?)?;
            }
            Ok(degenerate_exit(&fp))
        }
        Command::Pca {
            files,
            svg,
            out,
            measures,
        } => {
            measures.apply(&mut cfg);
            let rows = profiles_of(&expand(&files)?, &cfg)?;
            let result = pca(&rows.iter().map(|r| r.profile.clone()).collect::<Vec<_>>())?;
            let value = serde_json::json!({
                "ids": rows.iter().map(|r| r.id.clone()).collect::<Vec<_>>(),
                "pca": result,
            });
            emit(out.as_deref(), &(serde_json::to_string_pretty(&value)? + "\n"))?;
            if let Some(path) = svg {
                let labels: Vec<String> = rows.iter().map(|r| r.id.clone()).collect();
                write_text(path, &pca_svg(&result.projections, &labels, "principal components")?)?;
            }
            Ok(0)
        }
        Command::Cluster { a, b, k, p, measures } => {
            measures.apply(&mut cfg);
            if let Some(p) = p {
                cfg.p = p;
            }
            let ra = profiles_of(&expand(&a)?, &cfg)?;
            let rb = profiles_of(&expand(&b)?, &cfg)?;
            let fp = StyleFingerprint::compute(&code_set("A", &ra)?, &code_set("B", &rb)?, cfg.norm()?)?;
            if fp.degenerate == Some(codestyle::Degeneracy::IdenticalProfiles) {
                return Err(Error::Degenerate(codestyle::Degeneracy::IdenticalProfiles));
            }
            let all: Vec<&ProfileRow> = ra.iter().chain(&rb).collect();
            let profiles: Vec<_> = all.iter().map(|r| r.profile.clone()).collect();
            let labels = cluster(&profiles, &fp.w_plus, k)?;
            let truth: Vec<usize> = (0..all.len()).map(|i| usize::from(i >= ra.len())).collect();
            let mut text = String::from("id,set,nu,cluster\n");
            for (i, r) in all.iter().enumerate() {
                let nu: f64 = fp.w_plus.iter().zip(r.profile.values()).map(|(w, x)| w * x).sum();
                let set = if truth[i] == 0 { "A" } else { "B" };
                text.push_str(&format!("{},{set},{nu},{}\n", r.id, labels[i]));
            }
            emit(None, &text)?;
            eprintln!("purity against A/B: {}", purity(&labels, &truth));
            Ok(0)
        }
        Command::Translate {
            code,
            b,
            delta,
            budget,
            seed,
            out,
            trace,
            measures,
            spec,
        } => {
            measures.apply(&mut cfg);
            spec.apply(&mut cfg);
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let original = read_creature(&code)?;
            let class = cfg.spec(original.tasks()?.as_ref())?;
            let b_codes = expand(&b)?
                .iter()
                .map(|p| read_creature(p).map(|c| c.genome))
                .collect::<Result<Vec<_>>>()?;
            let opts = TranslateOptions {
                delta_target: delta,
                budget,
                seed: cfg.seed,
                ..TranslateOptions::default()
            };
            let ctx = AnalysisContext::with_spec(class.clone());
            let (result, tr) = translate(&original.genome, &b_codes, &cfg.registry()?, &ctx, &class, &opts)?;
            let mut creature = original.clone();
            creature.genome = result;
            creature.metadata.push(("translated-toward".into(), b.join(" ")));
            match out {
                Some(p) => write_creature(p, &creature)?,
                None => emit(None, &creature.to_text())?,
            }
            if let Some(p) = trace {
                write_json(p, &tr)?;
            }
            eprintln!(
                "steps {} evaluations {} final delta {} converged {} E(Z) {} bound {}",
                tr.steps.len(),
                tr.evaluations,
                tr.final_delta,
                tr.converged,
                tr.expected_z,
                tr.bound
            );
            Ok(0)
        }
        Command::Synth { tasks, variant, out } => {
            let list: TaskList = tasks.parse()?;
            let (code, name) = match variant {
                Variant::Noloop => (synth_noloop(&list), "noloop"),
                Variant::Allloop => (synth_allloop(&list), "allloop"),
            };
            let creature = list
                .entries()
                .iter()
                .fold(CreatureFile::new(code.with_id(name)).with_meta("name", name), |c, (t, n)| {
                    c.with_meta("task", format!("{t} {n}"))
                })
                .with_meta("variant", name);
            let path = out.unwrap_or_else(|| PathBuf::from(format!("{name}.creature")));
            write_creature(&path, &creature)?;
            eprintln!("wrote {}", path.display());
            Ok(0)
        }
        Command::Neutral {
            code,
            count,
            seed,
            out_dir,
            spec,
        } => {
            spec.apply(&mut cfg);
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let original = read_creature(&code)?;
            let class = cfg.spec(original.tasks()?.as_ref())?;
            let found = neutral_variants(&original.genome, &class, count, cfg.seed)?;
            std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
            let stem = original.genome.id().to_string();
            for (i, v) in found.variants.iter().enumerate() {
                let mut creature = original.clone();
                creature.metadata.retain(|(k, _)| k != "name");
                creature.metadata.insert(0, ("name".into(), format!("{stem}-{i}")));
                creature.genome = v.clone();
                write_creature(out_dir.join(format!("{stem}-{i}.creature")), &creature)?;
            }
            if found.partial {
                eprintln!(
                    "warning: only {} of {count} variants found in {} attempts",
                    found.variants.len(),
                    found.attempts
                );
            }
            Ok(0)
        }
        Command::Classcheck { code, spec } => {
            spec.apply(&mut cfg);
            let creature = read_creature(&code)?;
            let class = cfg.spec(creature.tasks()?.as_ref())?;
            let m = class_membership(&creature.genome, &class);
            let word = match m {
                Membership::Member => "member",
                Membership::NonMember => "non-member",
                Membership::ErrorClass => "error-class",
            };
            println!("{} {word}", creature.genome.id());
            Ok(if m == Membership::ErrorClass { EXIT_PARSE } else { 0 })
        }
        Command::Experiment {
            creature,
            out_dir,
            tasks,
            measures,
        } => {
            measures.apply(&mut cfg);
            if let Some(t) = tasks {
                cfg.tasks = Some(t);
            }
            let input = read_creature(&creature)?;
            let outcome = run_experiment(&input, &cfg)?;
            let dir = out_dir.unwrap_or_else(|| cfg.output.clone());
            for p in write_experiment(&outcome, &cfg, &dir)? {
                eprintln!("wrote {}", p.display());
            }
            let fp = &outcome.fingerprint;
            println!("tasks {}", outcome.tasks);
            println!("ingested code membership {:?}", outcome.a_membership);
            println!("w+ {:?}", fp.w_plus);
            println!("theta {}", fp.theta);
            match fp.eta {
                Some(e) => println!("eta {e}"),
                None => println!("eta undefined ({})", fp.eta_reason().unwrap_or("too-few-codes")),
            }
            println!(
                "pca distances N-L {} A-N {} A-L {}",
                outcome.pca_distance(1, 2),
                outcome.pca_distance(0, 1),
                outcome.pca_distance(0, 2)
            );
            Ok(degenerate_exit(fp))
        }
    }
}
