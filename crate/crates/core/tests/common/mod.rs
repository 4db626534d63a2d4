#![allow(dead_code)]

use std::path::PathBuf;

use codestyle::synth::{default_task_spec, synth_noloop, Edit, TaskList};
use codestyle::vm::is_member;
use codestyle::{Alphabet, Code};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An evolved-looking member of the task class: the no-loop code plus an
/// inert loop template and a halt, grown by class-preserving edits (with
/// nop-heavy insertions) to exactly `len` letters.
pub fn evolved_walk(tasks: &TaskList, len: usize, seed: u64) -> Code {
    let spec = default_task_spec(tasks).unwrap();
    let alphabet = Alphabet::genome();
    let mut rng = rng(seed);
    let mut cur = format!("{}qcrabcbst", synth_noloop(tasks).letters());
    let mut steps = 0;
    while cur.len() != len || steps < 3000 {
        steps += 1;
        let edit = match Edit::random(&cur, &alphabet, &mut rng) {
            Edit::Insert { pos, .. } if rng.gen_bool(0.35) => Edit::Insert {
                pos,
                letter: ['a', 'b', 'c'][rng.gen_range(0..3)],
            },
            other => other,
        };
        let cand = edit.apply(&cur);
        if cand.len() > len || (cand.len() < cur.len() && rng.gen_bool(0.5)) {
            continue;
        }
        if is_member(&cand, &spec) {
            cur = cand;
        }
    }
    Code::new(format!("walk{seed}"), cur).unwrap()
}

/// Random member of a task class reached by `edits` accepted single edits.
pub fn drifted(tasks: &TaskList, edits: usize, seed: u64) -> Code {
    let spec = default_task_spec(tasks).unwrap();
    let alphabet = Alphabet::genome();
    let mut rng = rng(seed);
    let mut cur = synth_noloop(tasks).letters().to_string();
    let mut accepted = 0;
    let mut tries = 0;
    while accepted < edits && tries < 100_000 {
        tries += 1;
        let cand = Edit::random(&cur, &alphabet, &mut rng).apply(&cur);
        if cand != cur && is_member(&cand, &spec) {
            cur = cand;
            accepted += 1;
        }
    }
    Code::new(format!("drift{seed}"), cur).unwrap()
}
