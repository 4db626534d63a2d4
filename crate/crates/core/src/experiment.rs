//! The comparison run: one ingested creature against its no-loop and
//! all-loop synthesized counterparts.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io::{
    config_hash, fingerprint_svg, pca_svg, write_creature, write_fingerprint_json, write_json, write_profile_csv,
    write_text, CreatureFile, ExperimentConfig, ProfileRow,
};
use crate::model::{Code, FunctionClassSpec};
use crate::registry::{build_profile, AnalysisContext};
use crate::style::{pca, CodeSetProfiles, Pca, StyleFingerprint};
use crate::synth::{synth_allloop, synth_noloop, TaskList};
use crate::vm::{class_membership, Membership};

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub tasks: TaskList,
    pub spec: FunctionClassSpec,
    /// Membership of the ingested code in the task class.
    pub a_membership: Membership,
    /// Ingested, no-loop, all-loop.
    pub codes: Vec<Code>,
    pub labels: Vec<String>,
    pub profiles: Vec<ProfileRow>,
    pub fingerprint: StyleFingerprint,
    pub pca: Pca,
}

impl ExperimentOutcome {
    /// Euclidean distance between two codes in the PCA plane.
    pub fn pca_distance(&self, i: usize, j: usize) -> f64 {
        let (p, q) = (self.pca.projections[i], self.pca.projections[j]);
        ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
    }
}

pub fn run_experiment(creature: &CreatureFile, cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let tasks = match (&cfg.tasks, creature.tasks()?) {
        (Some(t), _) => t.parse::<TaskList>()?,
        (None, Some(t)) => t,
        (None, None) => {
            return Err(Error::Config(format!(
                "{}: no task entries; pass the task list explicitly",
                creature.genome.id()
            )))
        }
    };
    let spec = cfg.spec(Some(&tasks))?;
    let noloop = synth_noloop(&tasks).with_id("noloop");
    let allloop = synth_allloop(&tasks).with_id("allloop");
    for c in [&noloop, &allloop] {
        if class_membership(c, &spec) != Membership::Member {
            return Err(Error::domain(format!("synthesized {} left the task class", c.id())));
        }
    }
    let a_membership = class_membership(&creature.genome, &spec);
    let registry = cfg.registry()?;
    let ctx = AnalysisContext::with_spec(spec.clone());
    let codes = vec![creature.genome.clone(), noloop, allloop];
    let profiles = codes
        .iter()
        .map(|c| {
            Ok(ProfileRow {
                id: c.id().to_string(),
                profile: build_profile(c, &registry, &ctx)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let a = CodeSetProfiles::new("A", vec![profiles[0].profile.clone()], vec![profiles[0].id.clone()])?;
    let b = CodeSetProfiles::new(
        "B",
        profiles[1..].iter().map(|r| r.profile.clone()).collect(),
        profiles[1..].iter().map(|r| r.id.clone()).collect(),
    )?;
    let fingerprint = StyleFingerprint::compute(&a, &b, cfg.norm()?)?;
    let pca = pca(&profiles.iter().map(|r| r.profile.clone()).collect::<Vec<_>>())?;
    Ok(ExperimentOutcome {
        tasks,
        spec,
        a_membership,
        codes,
        labels: vec!["A".into(), "N".into(), "L".into()],
        profiles,
        fingerprint,
        pca,
    })
}

/// Writes tables, report, charts and the synthesized creatures into `dir`.
pub fn write_experiment(outcome: &ExperimentOutcome, cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut out = |name: &str| {
        let p = dir.join(name);
        written.push(p.clone());
        p
    };
    write_profile_csv(out("profiles.csv"), &outcome.profiles, &[])?;
    write_fingerprint_json(out("fingerprint.json"), &outcome.fingerprint, config_hash(&cfg.canonical()))?;
    let fp = &outcome.fingerprint;
    write_text(
        out("fingerprint.svg"),
        &fingerprint_svg(&fp.measure_names, &fp.w_plus, "w+ (A: ingested, B: synthesized)")?,
    )?;
    write_text(
        out("pca.svg"),
        &pca_svg(&outcome.pca.projections, &outcome.labels, "principal components")?,
    )?;
    write_json(out("pca.json"), &outcome.pca)?;
    for (code, variant) in outcome.codes[1..].iter().zip(["noloop", "allloop"]) {
        let creature = outcome
            .tasks
            .entries()
            .iter()
            .fold(CreatureFile::new(code.clone()).with_meta("name", code.id()), |c, (t, n)| {
                c.with_meta("task", format!("{t} {n}"))
            })
            .with_meta("variant", variant);
        write_creature(out(&format!("{variant}.creature")), &creature)?;
    }
    Ok(written)
}
