//! Comparison-code synthesis from NAND gadgets, class-preserving mutants
//! and iterative style translation.

mod neutral;
mod translate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Code, FunctionClassSpec, DEFAULT_STEP_CAP};
use crate::vm::Task;

pub use neutral::{neutral_variants, Edit, NeutralVariants};
pub use translate::{translate, TranslateOptions, TranslationStep, TranslationTrace};

/// Ordered `(task, repetitions)` pairs, e.g. `XOR:2,NOT:3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskList(Vec<(Task, usize)>);

impl TaskList {
    pub fn new(entries: Vec<(Task, usize)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("task list is empty"));
        }
        if let Some((t, _)) = entries.iter().find(|(_, n)| *n == 0) {
            return Err(Error::domain(format!("task {t} has repetition count 0")));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[(Task, usize)] {
        &self.0
    }

    /// Tasks in execution order, one per repetition.
    pub fn expanded(&self) -> impl Iterator<Item = Task> + '_ {
        self.0.iter().flat_map(|&(t, n)| std::iter::repeat(t).take(n))
    }

    /// Number of input reads per run.
    pub fn reads(&self) -> usize {
        self.expanded().map(Task::arity).sum()
    }
}

impl FromStr for TaskList {
    type Err = Error;

    /// Accepts `NAME:count` tokens separated by commas; `NAME count` and a
    /// bare `NAME` (count 1) are accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (name, count) = match token.split_once([':', ' ']) {
                Some((n, c)) => {
                    let c = c.trim().parse::<usize>().map_err(|_| {
                        Error::domain(format!("bad repetition count in {token:?}"))
                    })?;
                    (n, c)
                }
                None => (token, 1),
            };
            entries.push((name.parse::<Task>()?, count));
        }
        Self::new(entries)
    }
}

impl fmt::Display for TaskList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, n)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}:{n}")?;
        }
        Ok(())
    }
}

/// Straight-line code for one task: reads its inputs, computes the result
/// with nands (`j`) and writes it with `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub task: Task,
    pub letters: String,
}

impl Gadget {
    pub fn nands(&self) -> usize {
        self.letters.bytes().filter(|&b| b == b'j').count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLibrary {
    gadgets: BTreeMap<Task, Gadget>,
}

const STANDARD_GADGETS: [(Task, &str); 9] = [
    (Task::Not, "oncjp"),
    (Task::Nand, "oocjp"),
    (Task::And, "oocjncjp"),
    (Task::OrNot, "oncjocjp"),
    (Task::Or, "oncjdoncjecjp"),
    (Task::AndNot, "odoncjecjncjp"),
    (Task::Nor, "oncjdoncjecjncjp"),
    (Task::Xor, "oocdcdjadaecejnaejdaecjp"),
    (Task::Equ, "oocdcdjadaecejnaejdaecjncjp"),
];

impl Default for GadgetLibrary {
    fn default() -> Self {
        let gadgets = STANDARD_GADGETS
            .iter()
            .map(|&(task, l)| {
                (
                    task,
                    Gadget {
                        task,
                        letters: l.to_string(),
                    },
                )
            })
            .collect();
        Self { gadgets }
    }
}

impl GadgetLibrary {
    pub fn get(&self, task: Task) -> &Gadget {
        &self.gadgets[&task]
    }

    pub fn gadgets(&self) -> impl Iterator<Item = &Gadget> {
        self.gadgets.values()
    }

    /// Replaces a gadget after checking it computes `task` on a seeded
    /// sample and leaves CX free for loop counters.
    pub fn set(&mut self, task: Task, letters: &str) -> Result<()> {
        let code = Code::new(task.name(), letters)?;
        let list = TaskList::new(vec![(task, 1)])?;
        let spec = task_spec(&list, default_domain(list.reads(), DEFAULT_DOMAIN_SEED), DEFAULT_STEP_CAP)?;
        if !crate::vm::is_member(code.letters(), &spec) {
            return Err(Error::domain(format!("gadget {letters:?} does not compute {task}")));
        }
        if letters.contains(['r', 's', 't']) {
            return Err(Error::domain("gadgets must be straight-line code"));
        }
        self.gadgets.insert(
            task,
            Gadget {
                task,
                letters: letters.to_string(),
            },
        );
        Ok(())
    }
}

/// Every repetition's gadget, back to back.
pub fn synth_noloop(tasks: &TaskList) -> Code {
    synth_noloop_with(tasks, &GadgetLibrary::default())
}

pub fn synth_noloop_with(tasks: &TaskList, lib: &GadgetLibrary) -> Code {
    let letters: String = tasks.expanded().map(|t| lib.get(t).letters.as_str()).collect();
    Code::new(format!("noloop[{tasks}]"), letters).expect("gadgets use genome letters")
}

/// One rep loop per task entry: CX is zeroed, incremented to the count,
/// and the gadget forms the loop body.
pub fn synth_allloop(tasks: &TaskList) -> Code {
    synth_allloop_with(tasks, &GadgetLibrary::default())
}

pub fn synth_allloop_with(tasks: &TaskList, lib: &GadgetLibrary) -> Code {
    let mut letters = String::new();
    for &(t, n) in tasks.entries() {
        letters.push_str("qc");
        letters.push_str(&"hc".repeat(n));
        letters.push('r');
        letters.push_str(&lib.get(t).letters);
        letters.push('s');
    }
    Code::new(format!("allloop[{tasks}]"), letters).expect("gadgets use genome letters")
}

pub const DEFAULT_DOMAIN_SEED: u64 = 20_250_601;
pub const DEFAULT_DOMAIN_POINTS: usize = 16;

/// 16 seeded random tuples followed by all-zeros and all-ones.
pub fn default_domain(arity: usize, seed: u64) -> Vec<Vec<u32>> {
    let arity = arity.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut domain: Vec<Vec<u32>> = (0..DEFAULT_DOMAIN_POINTS)
        .map(|_| (0..arity).map(|_| rng.gen()).collect())
        .collect();
    domain.push(vec![0; arity]);
    domain.push(vec![u32::MAX; arity]);
    domain
}

/// The function class of a task list: outputs follow from the task
/// semantics with inputs consumed in order and cycling through each tuple.
pub fn task_spec(tasks: &TaskList, domain: Vec<Vec<u32>>, step_cap: u64) -> Result<FunctionClassSpec> {
    let mut expected = Vec::with_capacity(domain.len());
    for input in &domain {
        let mut cursor = 0usize;
        let mut next = || {
            let v = if input.is_empty() { 0 } else { input[cursor % input.len()] };
            cursor += 1;
            v
        };
        let outs = tasks
            .expanded()
            .map(|t| {
                let x = next();
                let y = if t.arity() == 2 { next() } else { 0 };
                t.apply(x, y)
            })
            .collect();
        expected.push(outs);
    }
    FunctionClassSpec::new(domain, expected, step_cap)
}

/// `task_spec` over the default domain sized to the task list.
pub fn default_task_spec(tasks: &TaskList) -> Result<FunctionClassSpec> {
    task_spec(tasks, default_domain(3, DEFAULT_DOMAIN_SEED), DEFAULT_STEP_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::build_cfg;
    use crate::vm::{behavior, execute, is_member, Behavior};

    fn sample_tasks() -> TaskList {
        "XOR:2,NOT:3".parse().unwrap()
    }

    #[test]
    fn task_list_syntax() {
        let t = sample_tasks();
        assert_eq!(t.entries(), &[(Task::Xor, 2), (Task::Not, 3)]);
        assert_eq!(t.to_string(), "XOR:2,NOT:3");
        assert_eq!(t.reads(), 7);
        assert_eq!("xor 2, not".parse::<TaskList>().unwrap().entries(), &[(Task::Xor, 2), (Task::Not, 1)]);
        assert!("XOR:0".parse::<TaskList>().is_err());
        assert!("".parse::<TaskList>().is_err());
        assert!("FOO:1".parse::<TaskList>().is_err());
    }

    #[test]
    fn gadget_sizes() {
        let lib = GadgetLibrary::default();
        let sizes: Vec<(Task, usize)> = lib.gadgets().map(|g| (g.task, g.nands())).collect();
        assert_eq!(
            sizes,
            vec![
                (Task::Not, 1),
                (Task::Nand, 1),
                (Task::And, 2),
                (Task::OrNot, 2),
                (Task::Or, 3),
                (Task::AndNot, 3),
                (Task::Nor, 4),
                (Task::Xor, 4),
                (Task::Equ, 5),
            ]
        );
    }

    #[test]
    fn every_gadget_computes_its_task() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in GadgetLibrary::default().gadgets() {
            let code = Code::new("g", g.letters.as_str()).unwrap();
            for _ in 0..16 {
                let (x, y): (u32, u32) = (rng.gen(), rng.gen());
                let res = execute(&code, &[x, y], DEFAULT_STEP_CAP).unwrap();
                assert_eq!(res.outputs, vec![g.task.apply(x, y)], "{}", g.task);
                assert_eq!(res.tasks.get(&g.task), Some(&1), "{} not detected", g.task);
            }
        }
    }

    #[test]
    fn not_gadget_matches_reference() {
        let code = synth_noloop(&"NOT:1".parse().unwrap());
        assert_eq!(code.letters(), "oncjp");
    }

    #[test]
    fn both_variants_share_a_class() {
        let tasks = sample_tasks();
        let spec = default_task_spec(&tasks).unwrap();
        let a = synth_noloop(&tasks);
        let b = synth_allloop(&tasks);
        assert!(is_member(a.letters(), &spec));
        assert!(is_member(b.letters(), &spec));
        let (Behavior::Table(ta), Behavior::Table(tb)) = (behavior(&a, &spec), behavior(&b, &spec)) else {
            panic!("error class");
        };
        assert_eq!(ta, tb);
        let res = execute(&a, &[1, 2, 3], DEFAULT_STEP_CAP).unwrap();
        assert_eq!(res.tasks.get(&Task::Xor), Some(&2));
        assert_eq!(res.tasks.get(&Task::Not), Some(&3));
    }

    #[test]
    fn loop_count_one_is_body_plus_markers() {
        let code = synth_allloop(&"NOT:1".parse().unwrap());
        assert_eq!(code.letters(), "qchcroncjps");
        assert_eq!(build_cfg(&code).unwrap().components(), 1);
    }

    #[test]
    fn every_task_list_entry_is_equivalent() {
        for t in Task::ALL {
            for n in 1..=3 {
                let tasks = TaskList::new(vec![(t, n), (Task::Not, 1)]).unwrap();
                let spec = default_task_spec(&tasks).unwrap();
                assert!(is_member(synth_noloop(&tasks).letters(), &spec), "{tasks}");
                assert!(is_member(synth_allloop(&tasks).letters(), &spec), "{tasks}");
            }
        }
    }

    #[test]
    fn gadget_library_rejects_wrong_circuits() {
        let mut lib = GadgetLibrary::default();
        assert!(lib.set(Task::Xor, "oocjp").is_err());
        assert!(lib.set(Task::Not, "oncjprs").is_err());
        lib.set(Task::Not, "aoncjp").unwrap();
        assert_eq!(lib.get(Task::Not).letters, "aoncjp");
        assert_eq!(lib.get(Task::Not).nands(), 1);
    }

    #[test]
    fn default_domain_shape() {
        let d = default_domain(3, 1);
        assert_eq!(d.len(), 18);
        assert_eq!(d[16], vec![0; 3]);
        assert_eq!(d[17], vec![u32::MAX; 3]);
        assert_eq!(d, default_domain(3, 1));
        assert_ne!(d, default_domain(3, 2));
    }
}
