//! Acceptance criteria, one PASS/FAIL line each. Oracles here are written
//! independently of the library code they check.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use codestyle::evometrics::{ablate, AblationOptions};
use codestyle::experiment::{run_experiment, write_experiment};
use codestyle::io::{read_creature, ExperimentConfig};
use codestyle::metrics::{block_entropy, halstead, HalsteadCounts};
use codestyle::registry::{build_profile, AnalysisContext, MeasureRegistry};
use codestyle::structure::decompose;
use codestyle::style::{cluster, pca_rows, purity, CodeSetProfiles, StyleFingerprint};
use codestyle::synth::{
    default_task_spec, synth_allloop, synth_noloop, translate, TaskList, TranslateOptions,
};
use codestyle::vm::{behavior, class_membership, is_member, spec_from_oracle, Behavior, Membership};
use codestyle::{Code, NormSpec, Profile};
use rand::Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(elapsed: Duration, limit: Duration) -> Check {
    ensure!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    Ok(String::new())
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("m{i}")).collect()
}

fn set(label: &str, rows: &[Vec<f64>]) -> CodeSetProfiles {
    let n = rows[0].len();
    let ps = rows.iter().map(|r| Profile::new(r.clone(), names(n)).unwrap()).collect();
    CodeSetProfiles::from_profiles(label, ps).unwrap()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// E(X) by enumerating every (a, b) pair.
fn mean_separation(a: &[Vec<f64>], b: &[Vec<f64>], w: &[f64]) -> f64 {
    let mut sum = 0.0;
    for x in a {
        for y in b {
            sum += dot(w, x) - dot(w, y);
        }
    }
    sum / (a.len() * b.len()) as f64
}

fn random_rows(rng: &mut impl Rng, sizes: std::ops::RangeInclusive<usize>, n: usize) -> Vec<Vec<f64>> {
    let count = rng.gen_range(sizes);
    (0..count).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect()
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn c1_halstead() -> Check {
    let start = Instant::now();
    let m = halstead(HalsteadCounts {
        n1: 19,
        n2: 3,
        total_operators: 153,
        total_operands: 31,
    });
    let d = m.difficulty.ok_or("difficulty undefined")?;
    let e = m.effort.ok_or("effort undefined")?;
    ensure!((d - 98.1667).abs() <= 1e-4, "difficulty {d}");
    ensure!((m.volume - 820.535).abs() <= 0.005, "volume {}", m.volume);
    ensure!((e - 80549.2).abs() <= 0.5, "effort {e}");
    ensure!(m.vocabulary == 22.0 && m.length == 184.0, "vocabulary {} length {}", m.vocabulary, m.length);
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("D={d:.4} V={:.3} E={e:.1}", m.volume))
}

fn c2_optimality() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(2);
    let mut worst_gap = f64::NEG_INFINITY;
    let mut tried = 0;
    for inst in 0..200 {
        let n = rng.gen_range(1..=8);
        let a = random_rows(&mut rng, 1..=6, n);
        let b = random_rows(&mut rng, 1..=6, n);
        let fp = StyleFingerprint::compute(&set("A", &a), &set("B", &b), NormSpec::euclidean()).map_err(|e| e.to_string())?;
        let best = mean_separation(&a, &b, &fp.w_plus);
        ensure!((best - fp.m).abs() <= 1e-9, "instance {inst}: E(X)={best} but ||u||/M={}", fp.m);
        for _ in 0..100 {
            let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let len = dot(&w, &w).sqrt();
            if len == 0.0 {
                continue;
            }
            w.iter_mut().for_each(|x| *x /= len);
            let other = mean_separation(&a, &b, &w);
            ensure!(other <= best + 1e-12, "instance {inst}: random w beats w+ ({other} > {best})");
            worst_gap = worst_gap.max(other - best);
            tried += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("200 instances, {tried} random w, max E_w - E_w+ = {worst_gap:.2e}"))
}

fn c3_scaling() -> Check {
    let mut rng = common::rng(3);
    let mut checked = 0;
    for inst in 0..60 {
        let n = rng.gen_range(1..=6);
        let a = random_rows(&mut rng, 2..=5, n);
        let b = random_rows(&mut rng, 1..=5, n);
        let (sa, sb) = (set("A", &a), set("B", &b));
        let base = StyleFingerprint::compute(&sa, &sb, NormSpec::euclidean()).map_err(|e| e.to_string())?;
        let Some(eta) = base.eta else { continue };
        for k in [0.1, 0.5] {
            let scale = |s: &CodeSetProfiles| {
                CodeSetProfiles::from_profiles(s.label.clone(), s.profiles().iter().map(|p| p.scaled(k).unwrap()).collect())
                    .unwrap()
            };
            let fp = StyleFingerprint::compute(&scale(&sa), &scale(&sb), NormSpec::euclidean()).map_err(|e| e.to_string())?;
            let eta_k = fp.eta.ok_or("η vanished after scaling")?;
            ensure!(rel_close(eta_k, eta, 1e-9), "instance {inst} k={k}: η {eta_k} vs {eta}");
            ensure!(rel_close(fp.theta, k * base.theta, 1e-9), "instance {inst} k={k}: θ");
            ensure!(rel_close(fp.m, k * base.m, 1e-9), "instance {inst} k={k}: m");
            for (x, y) in fp.w_plus.iter().zip(&base.w_plus) {
                ensure!((x - y).abs() <= 1e-9, "instance {inst} k={k}: w+ moved");
            }
        }
        checked += 1;
    }
    ensure!(checked >= 50, "only {checked} non-degenerate instances");
    Ok(format!("{checked} instances, k in {{0.1, 0.5}}"))
}

fn c4_worked_instance() -> Check {
    let a = vec![vec![1.0, 0.0]];
    let b = vec![vec![0.0, 1.0], vec![0.5, 0.5]];
    let fp = StyleFingerprint::compute(&set("A", &a), &set("B", &b), NormSpec::euclidean()).map_err(|e| e.to_string())?;

    // oracle: enumerate all pairs directly
    let mut u = [0.0; 2];
    for x in &a {
        for y in &b {
            u[0] += x[0] - y[0];
            u[1] += x[1] - y[1];
        }
    }
    let len = (u[0] * u[0] + u[1] * u[1]).sqrt();
    let w = [u[0] / len, u[1] / len];
    let xs: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| dot(&w, x) - dot(&w, y))).collect();
    let ex = xs.iter().sum::<f64>() / xs.len() as f64;
    let var_x = xs.iter().map(|x| (x - ex).powi(2)).sum::<f64>() / xs.len() as f64;
    let union: Vec<&Vec<f64>> = a.iter().chain(&b).collect();
    let mut ey2 = 0.0;
    for p in &union {
        for q in &union {
            ey2 += (dot(&w, p) - dot(&w, q)).powi(2);
        }
    }
    ey2 /= (union.len() * union.len()) as f64;
    let oracle = [ex, var_x, ey2, ey2 / var_x, ex / 2f64.sqrt()];
    let lib = [fp.m, fp.sigma_a2, fp.sigma_ab2, fp.eta.ok_or("η undefined")?, fp.theta];
    let stated = [1.06066, 0.125, 2.0 / 3.0, 5.33333, 0.75];
    let labels = ["m", "σ_A²", "σ_AB²", "η", "θ"];
    for i in 0..5 {
        ensure!((lib[i] - stated[i]).abs() <= 1e-5, "{}: library {} vs stated {}", labels[i], lib[i], stated[i]);
        ensure!((oracle[i] - stated[i]).abs() <= 1e-5, "{}: oracle {} vs stated {}", labels[i], oracle[i], stated[i]);
    }
    Ok(format!("m={:.5} σ_A²={} σ_AB²={:.5} η={:.5} θ={}", lib[0], lib[1], lib[2], lib[3], lib[4]))
}

fn c5_translation() -> Check {
    let registry = MeasureRegistry::halstead();
    let ctx = AnalysisContext::default();
    let cases = [
        ("XOR:1,NOT:2", 1u64),
        ("XOR:2,NOT:3", 2),
        ("AND:1,OR:1", 3),
        ("NOT:2", 4),
        ("EQU:1", 5),
        ("NAND:2,NOR:1", 6),
        ("AND-NOT:1,OR-NOT:1", 7),
        ("XOR:1", 8),
    ];
    let mut summary = Vec::new();
    for (tasks, seed) in cases {
        let tasks: TaskList = tasks.parse().unwrap();
        let spec = default_task_spec(&tasks).unwrap();
        let a = common::drifted(&tasks, 3, seed);
        let base = synth_noloop(&tasks).len();
        let b = vec![
            common::evolved_walk(&tasks, base + 24, seed),
            common::evolved_walk(&tasks, base + 32, seed + 100),
        ];
        let delta = 0.05;
        let opts = TranslateOptions {
            delta_target: delta,
            budget: 10_000,
            seed,
            ..TranslateOptions::default()
        };
        let (out, trace) = translate(&a, &b, &registry, &ctx, &spec, &opts).map_err(|e| e.to_string())?;
        ensure!(trace.initial_norm > delta, "{tasks}: starts inside the target");
        ensure!(is_member(out.letters(), &spec), "{tasks}: translated code left the class");
        ensure!(trace.converged, "{tasks}: not converged, final δ {}", trace.final_delta);
        let mut last = trace.initial_norm;
        for s in &trace.steps {
            ensure!(s.norm_after <= last, "{tasks}: ||v|| increased");
            last = s.norm_after;
        }

        // bound by enumeration over B, from freshly computed profiles
        let prof = |c: &Code| build_profile(c, &registry, &ctx).unwrap().values().to_vec();
        let (pa, pa2) = (prof(&a), prof(&out));
        let pb: Vec<Vec<f64>> = b.iter().map(prof).collect();
        let n = pa.len();
        let mut u = vec![0.0; n];
        let mut v = vec![0.0; n];
        for q in &pb {
            for i in 0..n {
                u[i] += q[i] - pa[i];
                v[i] += q[i] - pa2[i];
            }
        }
        let un = dot(&u, &u).sqrt();
        let w: Vec<f64> = u.iter().map(|x| if un > 0.0 { x / un } else { 0.0 }).collect();
        let ez = pb.iter().map(|q| dot(&w, q) - dot(&w, &pa2)).sum::<f64>() / pb.len() as f64;
        let final_delta = dot(&v, &v).sqrt();
        ensure!(final_delta <= delta, "{tasks}: recomputed δ {final_delta}");
        ensure!(ez.abs() <= final_delta / b.len() as f64 + 1e-15, "{tasks}: |E(Z)| {ez} > δ/#B");
        ensure!(ez.abs() <= delta / b.len() as f64, "{tasks}: |E(Z)| {ez} > target/#B");
        summary.push(format!("{}it", trace.steps.len()));
    }
    Ok(format!("8 runs converged ({})", summary.join(", ")))
}

/// H_n / n from scratch: every possible block over the alphabet is counted
/// by direct comparison at every offset.
fn entropy_oracle(s: &[u8], n: usize, alphabet: &[u8]) -> f64 {
    let mut blocks: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..n {
        blocks = blocks
            .into_iter()
            .flat_map(|b| alphabet.iter().map(move |&c| [b.clone(), vec![c]].concat()))
            .collect();
    }
    let total = (s.len() - n + 1) as f64;
    let mut h = 0.0;
    for blk in blocks {
        let mut count = 0;
        for start in 0..=s.len() - n {
            if (0..n).all(|j| s[start + j] == blk[j]) {
                count += 1;
            }
        }
        if count > 0 {
            let p = count as f64 / total;
            h -= p * p.log(alphabet.len() as f64);
        }
    }
    h / n as f64
}

fn c6_entropy() -> Check {
    for len in [1, 5, 64] {
        for n in 1..=len.min(3) {
            let v = block_entropy(&vec![b'q'; len], n, 20).map_err(|e| e.to_string())?;
            ensure!(v == 0.0, "constant string len {len} n {n}: {v}");
        }
    }
    for s in ["ab", "abab", "aabb", "abba", "babababa"] {
        let v = block_entropy(s.as_bytes(), 1, 2).map_err(|e| e.to_string())?;
        ensure!((v - 1.0).abs() <= 1e-15, "{s}: H_1 {v}");
    }
    let alphabet: Vec<u8> = (b'a'..=b't').collect();
    let mut rng = common::rng(6);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let len = rng.gen_range(1..=64);
        let s: Vec<u8> = (0..len).map(|_| alphabet[rng.gen_range(0..20)]).collect();
        for n in 1..=len.min(3) {
            let got = block_entropy(&s, n, 20).map_err(|e| e.to_string())?;
            let want = entropy_oracle(&s, n, &alphabet);
            worst = worst.max((got - want).abs());
            ensure!((got - want).abs() <= 1e-12, "{:?} n={n}: {got} vs {want}", String::from_utf8_lossy(&s));
        }
    }
    Ok(format!("50 random strings, max deviation {worst:.1e}"))
}

fn c7_comparison_codes() -> Check {
    let start = Instant::now();
    let tasks: TaskList = "XOR:2,NOT:3".parse().unwrap();
    let spec = default_task_spec(&tasks).unwrap();
    let (nl, al) = (synth_noloop(&tasks), synth_allloop(&tasks));
    ensure!(class_membership(&nl, &spec) == Membership::Member, "no-loop code is not a member");
    ensure!(class_membership(&al, &spec) == Membership::Member, "all-loop code is not a member");
    let (Behavior::Table(tn), Behavior::Table(tl)) = (behavior(&nl, &spec), behavior(&al, &spec)) else {
        return Err("error class".into());
    };
    ensure!(tn == tl, "output tables differ");
    // oracle: bitwise evaluation with inputs cycling through each tuple
    for (input, row) in spec.domain().iter().zip(&tn) {
        let x = |i: usize| input[i % input.len()];
        let want = vec![x(0) ^ x(1), x(2) ^ x(3), !x(4), !x(5), !x(6)];
        ensure!(row == &want, "table row for {input:?}");
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{} domain points, tables equal", tn.len()))
}

/// Largest surviving removal and single-removal destroyers by enumerating
/// every subset of units.
fn ablation_oracle(letters: &str, units: &[std::ops::Range<usize>], keep: impl Fn(&str) -> bool) -> (usize, usize) {
    let n = units.len();
    let removed = |mask: u32| -> String {
        letters
            .char_indices()
            .filter(|(pos, _)| !units.iter().enumerate().any(|(i, r)| mask & (1 << i) != 0 && r.contains(pos)))
            .map(|(_, c)| c)
            .collect()
    };
    let mut m = 0;
    for mask in 0..1u32 << n {
        if mask.count_ones() as usize > m && keep(&removed(mask)) {
            m = mask.count_ones() as usize;
        }
    }
    let d = (0..n).filter(|&i| !keep(&removed(1 << i))).count();
    (m, d)
}

fn c8_ablation() -> Check {
    let pool = ["NOT:1", "NAND:1", "NOT:2", "AND:1", "OR-NOT:1"];
    let mut rng = common::rng(8);
    let mut done = 0;
    let mut seed = 0;
    while done < 30 {
        seed += 1;
        ensure!(seed < 2000, "could not generate 30 small codes");
        let tasks: TaskList = pool[rng.gen_range(0..pool.len())].parse().unwrap();
        let spec = default_task_spec(&tasks).unwrap();
        let code = common::drifted(&tasks, rng.gen_range(1..=4), seed);
        let k = rng.gen_range(1..=3);
        let decomp = decompose(&code).map_err(|e| e.to_string())?;
        let units = decomp.units(k - 1).to_vec();
        if units.len() > 10 {
            continue;
        }
        let report = ablate(&code, &spec, k, AblationOptions::default()).map_err(|e| e.to_string())?;
        let (m, d) = ablation_oracle(code.letters(), &units, |s| is_member(s, &spec));
        ensure!(report.exact, "{}: not exhaustive", code.letters());
        ensure!(report.n == units.len(), "{}: n", code.letters());
        ensure!(
            (report.m, report.d) == (m, d),
            "{} k={k}: library (m={}, d={}) vs oracle (m={m}, d={d})",
            code.letters(),
            report.m,
            report.d
        );
        done += 1;
    }
    let chain = Code::new("chain", "oncncjajapa").unwrap();
    let oracle_code = Code::new("o", "oncjapa").unwrap();
    let spec = spec_from_oracle(&oracle_code, codestyle::synth::default_domain(3, 8), 20_000).map_err(|e| e.to_string())?;
    let r = ablate(&chain, &spec, 1, AblationOptions::default()).map_err(|e| e.to_string())?;
    ensure!(r.d == r.n - 2 * r.m, "chain: d={} n={} m={}", r.d, r.n, r.m);
    Ok(format!("30 codes match; chain n={} m={} d={}", r.n, r.m, r.d))
}

fn fig7_holds(outcome: &codestyle::experiment::ExperimentOutcome) -> bool {
    let nl = outcome.pca_distance(1, 2);
    nl < outcome.pca_distance(0, 1) && nl < outcome.pca_distance(0, 2)
}

fn c9_end_to_end() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let creature = read_creature(common::data("sample.creature")).map_err(|e| e.to_string())?;
    let cfg = ExperimentConfig::default();
    let outcome = run_experiment(&creature, &cfg).map_err(|e| e.to_string())?;
    write_experiment(&outcome, &cfg, dir.path()).map_err(|e| e.to_string())?;

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fingerprint.json")).unwrap()).unwrap();
    let w: Vec<f64> = json["w_plus"].as_array().ok_or("no w_plus")?.iter().map(|x| x.as_f64().unwrap()).collect();
    ensure!(w.len() == 5, "w+ has {} components", w.len());
    let ss: f64 = w.iter().map(|x| x * x).sum();
    ensure!((ss - 1.0).abs() <= 1e-12, "||w+||² = {ss}");
    let theta = json["theta"].as_f64().ok_or("no θ")?;
    let eta = json["eta"].as_f64().ok_or("no η")?;
    let bars = std::fs::read_to_string(dir.path().join("fingerprint.svg")).unwrap();
    ensure!(bars.matches(r#"class="bar""#).count() == 5, "bar chart");
    let scatter = std::fs::read_to_string(dir.path().join("pca.svg")).unwrap();
    ensure!(scatter.matches(r#"class="point""#).count() == 3, "scatter");
    ensure!(fig7_holds(&outcome), "sample: synthesized codes are not the closest pair");

    let tasks: TaskList = "XOR:2,NOT:3".parse().unwrap();
    for seed in 1..=3 {
        let walk = codestyle::io::CreatureFile::new(common::evolved_walk(&tasks, 184, seed))
            .with_meta("task", "XOR 2")
            .with_meta("task", "NOT 3");
        let o = run_experiment(&walk, &cfg).map_err(|e| e.to_string())?;
        ensure!(fig7_holds(&o), "walk {seed}: synthesized codes are not the closest pair");
    }
    Ok(format!("θ={theta:.6} η={eta:.4}, N-L closest on sample + 3 seeded walks"))
}

fn c10_pca_and_clusters() -> Check {
    let mut rng = common::rng(10);
    let mut worst = 0.0f64;
    for trial in 0..20 {
        // orthonormal pair in dimension dim via Gram-Schmidt
        let dim = rng.gen_range(2..=6);
        let r1: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r2: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let e: Vec<f64> = r1.iter().map(|x| x / dot(&r1, &r1).sqrt()).collect();
        let p = dot(&r2, &e);
        let f0: Vec<f64> = r2.iter().zip(&e).map(|(x, y)| x - p * y).collect();
        let f: Vec<f64> = f0.iter().map(|x| x / dot(&f0, &f0).sqrt()).collect();
        let (s1, s2) = (0.3, 0.1);
        let rows: Vec<Vec<f64>> = [(s1, &e), (-s1, &e), (s2, &f), (-s2, &f)]
            .iter()
            .map(|(s, v)| v.iter().map(|x| 0.5 + s * x).collect())
            .collect();
        let res = pca_rows(&rows).map_err(|e| e.to_string())?;
        let want_vals = [2.0 * s1 * s1 / 3.0, 2.0 * s2 * s2 / 3.0];
        for (i, want) in [&e, &f].into_iter().enumerate() {
            let got = &res.eigenvectors[i];
            let sign = if dot(got, want) < 0.0 { -1.0 } else { 1.0 };
            let err = got.iter().zip(want.iter()).map(|(g, w)| (g - sign * w).abs()).fold(0.0, f64::max);
            worst = worst.max(err);
            ensure!(err <= 1e-6, "trial {trial}: eigenvector {i} off by {err}");
            ensure!((res.eigenvalues[i] - want_vals[i]).abs() <= 1e-9, "trial {trial}: eigenvalue {i}");
        }
    }

    for trial in 0..10 {
        let dim = rng.gen_range(2..=6);
        let c1: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.1..0.4)).collect();
        let c2: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.6..0.9)).collect();
        let jitter = |c: &[f64], rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
            c.iter().map(|x| x + rng.gen_range(-0.05..0.05)).collect()
        };
        let a: Vec<Vec<f64>> = (0..8).map(|_| jitter(&c1, &mut rng)).collect();
        let b: Vec<Vec<f64>> = (0..8).map(|_| jitter(&c2, &mut rng)).collect();
        let fp = StyleFingerprint::compute(&set("A", &a), &set("B", &b), NormSpec::euclidean()).map_err(|e| e.to_string())?;
        let profiles: Vec<Profile> = a.iter().chain(&b).map(|r| Profile::new(r.clone(), names(dim)).unwrap()).collect();
        let labels = cluster(&profiles, &fp.w_plus, 2).map_err(|e| e.to_string())?;
        let truth: Vec<usize> = (0..16).map(|i| usize::from(i >= 8)).collect();
        let pur = purity(&labels, &truth);
        ensure!(pur == 1.0, "trial {trial}: purity {pur}");
    }
    Ok(format!("20 planted covariances (max eigenvector error {worst:.1e}), 10 planted cluster pairs pure"))
}

fn main() {
    let checks: [(u32, &str, fn() -> Check); 10] = [
        (1, "Halstead reference vector", c1_halstead),
        (2, "extremal weight optimality", c2_optimality),
        (3, "scaling invariance", c3_scaling),
        (4, "worked index instance", c4_worked_instance),
        (5, "translation bound", c5_translation),
        (6, "block entropy", c6_entropy),
        (7, "comparison-code equivalence", c7_comparison_codes),
        (8, "ablation oracle", c8_ablation),
        (9, "end-to-end comparison run", c9_end_to_end),
        (10, "PCA and clustering", c10_pca_and_clusters),
    ];
    let suite = Instant::now();
    let mut failed = BTreeSet::new();
    for (id, name, check) in checks {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{ms} ms]"),
            Err(why) => {
                println!("criterion {id:>2} FAIL  {name}: {why} [{ms} ms]");
                failed.insert(id);
            }
        }
    }
    let total = suite.elapsed();
    println!("acceptance: {} of 10 passed in {:.1} s", 10 - failed.len(), total.as_secs_f64());
    if !failed.is_empty() || total > Duration::from_secs(120) {
        std::process::exit(1);
    }
}
