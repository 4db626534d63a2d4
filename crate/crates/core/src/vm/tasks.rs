//! The nine bitwise logic tasks and their detection on I/O traces.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Task {
    Not,
    Nand,
    And,
    OrNot,
    Or,
    AndNot,
    Nor,
    Xor,
    Equ,
}

impl Task {
    pub const ALL: [Task; 9] = [
        Task::Not,
        Task::Nand,
        Task::And,
        Task::OrNot,
        Task::Or,
        Task::AndNot,
        Task::Nor,
        Task::Xor,
        Task::Equ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Not => "NOT",
            Task::Nand => "NAND",
            Task::And => "AND",
            Task::OrNot => "OR-NOT",
            Task::Or => "OR",
            Task::AndNot => "AND-NOT",
            Task::Nor => "NOR",
            Task::Xor => "XOR",
            Task::Equ => "EQU",
        }
    }

    /// Number of inputs the task consumes.
    pub fn arity(self) -> usize {
        match self {
            Task::Not => 1,
            _ => 2,
        }
    }

    /// Evaluates the task. One-input tasks ignore `y`.
    pub fn apply(self, x: u32, y: u32) -> u32 {
        match self {
            Task::Not => !x,
            Task::Nand => !(x & y),
            Task::And => x & y,
            Task::OrNot => x | !y,
            Task::Or => x | y,
            Task::AndNot => x & !y,
            Task::Nor => !(x | y),
            Task::Xor => x ^ y,
            Task::Equ => !(x ^ y),
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .map(|c| c.to_ascii_uppercase())
            .collect();
        let t = match norm.as_str() {
            "NOT" => Task::Not,
            "NAND" => Task::Nand,
            "AND" => Task::And,
            "ORNOT" | "ORN" => Task::OrNot,
            "OR" => Task::Or,
            "ANDNOT" | "ANDN" => Task::AndNot,
            "NOR" => Task::Nor,
            "XOR" => Task::Xor,
            "EQU" | "XNOR" => Task::Equ,
            _ => return Err(Error::domain(format!("unknown task {s:?}"))),
        };
        Ok(t)
    }
}

/// Multiset of credited tasks.
pub type TaskCounts = BTreeMap<Task, usize>;

/// One input read or output write, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IoEvent {
    Input(u32),
    Output(u32),
}

/// Tasks credited to a single output given the most recent inputs
/// (`older`, `newer`). Both argument orders count for two-input tasks.
pub fn tasks_for_output(output: u32, older: Option<u32>, newer: Option<u32>) -> Vec<Task> {
    let mut credited = Vec::new();
    for task in Task::ALL {
        let hit = match (task.arity(), older, newer) {
            (1, _, Some(y)) => task.apply(y, 0) == output || older.is_some_and(|x| task.apply(x, 0) == output),
            (2, Some(x), Some(y)) => task.apply(x, y) == output || task.apply(y, x) == output,
            _ => false,
        };
        if hit {
            credited.push(task);
        }
    }
    credited
}

/// Credits tasks for every output in an I/O trace using a window of the
/// last two inputs read before it.
pub fn detect_tasks(trace: &[IoEvent]) -> TaskCounts {
    let mut counts = TaskCounts::new();
    let (mut older, mut newer) = (None, None);
    for ev in trace {
        match *ev {
            IoEvent::Input(v) => {
                older = newer;
                newer = Some(v);
            }
            IoEvent::Output(v) => {
                for t in tasks_for_output(v, older, newer) {
                    *counts.entry(t).or_default() += 1;
                }
            }
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: u32 = 0b1100_1010_0101_0011_1111_0000_1001_0110;
    const Y: u32 = 0b1010_0110_1100_0101_0000_1111_0110_1001;

    #[test]
    fn not_is_credited_on_single_input() {
        let c = detect_tasks(&[IoEvent::Input(X), IoEvent::Output(!X)]);
        assert_eq!(c.get(&Task::Not), Some(&1));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn repeated_xor_is_counted_twice() {
        let c = detect_tasks(&[
            IoEvent::Input(X),
            IoEvent::Input(Y),
            IoEvent::Output(X ^ Y),
            IoEvent::Output(X ^ Y),
        ]);
        assert_eq!(c.get(&Task::Xor), Some(&2));
        assert_eq!(c.values().sum::<usize>(), 2);
    }

    #[test]
    fn unrelated_output_earns_nothing() {
        let c = detect_tasks(&[IoEvent::Input(X), IoEvent::Input(Y), IoEvent::Output(12345)]);
        assert!(c.is_empty());
        assert!(detect_tasks(&[IoEvent::Output(!0)]).is_empty());
    }

    #[test]
    fn credited_tasks_are_sound() {
        for out in [X & Y, X | !Y, Y & !X, !(X | Y), X ^ Y, !(X ^ Y)] {
            for t in tasks_for_output(out, Some(X), Some(Y)) {
                let ok = if t.arity() == 1 {
                    t.apply(X, 0) == out || t.apply(Y, 0) == out
                } else {
                    t.apply(X, Y) == out || t.apply(Y, X) == out
                };
                assert!(ok, "{t} credited for {out:#x}");
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("or-not".parse::<Task>().unwrap(), Task::OrNot);
        assert_eq!("ANDN".parse::<Task>().unwrap(), Task::AndNot);
        assert_eq!(" xor ".parse::<Task>().unwrap(), Task::Xor);
        assert!("ECHO".parse::<Task>().is_err());
        for t in Task::ALL {
            assert_eq!(t.name().parse::<Task>().unwrap(), t);
        }
    }
}
