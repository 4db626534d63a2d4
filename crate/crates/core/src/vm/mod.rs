//! Deterministic interpreter for the genome language.
//!
//! A code's function is its I/O behavior: the sequence of values emitted by
//! `io-out` for a given input tuple. Codes that fail to parse or exhaust the
//! step budget have no well-defined function and fall into the error class.

mod isa;
mod program;
mod tasks;

use serde::{Deserialize, Serialize};

pub use isa::{is_nop_letter, Opcode, Register};
pub use program::{Decorated, ParseFailure, Program};
pub use tasks::{detect_tasks, tasks_for_output, IoEvent, Task, TaskCounts};

use crate::error::{Error, Result};
use crate::model::{Code, FunctionClassSpec};

pub const MAX_STACK_DEPTH: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    EndOfCode,
    Halt,
    StepCap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionResult {
    pub outputs: Vec<u32>,
    pub steps_used: u64,
    pub termination: Termination,
    pub tasks: TaskCounts,
    pub trace: Vec<IoEvent>,
}

impl ExecutionResult {
    /// A run that hit the step cap has no well-defined output.
    pub fn is_well_defined(&self) -> bool {
        self.termination != Termination::StepCap
    }
}

/// Register file, stack and I/O cursor of one run.
#[derive(Debug, Clone, Default)]
pub struct MachineState {
    pub ax: u32,
    pub bx: u32,
    pub cx: u32,
    pub stack: Vec<u32>,
    pub input_cursor: usize,
    pub outputs: Vec<u32>,
    pub ip: usize,
    pub steps: u64,
}

impl MachineState {
    fn get(&self, r: Register) -> u32 {
        match r {
            Register::Ax => self.ax,
            Register::Bx => self.bx,
            Register::Cx => self.cx,
        }
    }

    fn set(&mut self, r: Register, v: u32) {
        match r {
            Register::Ax => self.ax = v,
            Register::Bx => self.bx = v,
            Register::Cx => self.cx = v,
        }
    }
}

struct LoopFrame {
    begin: usize,
    remaining: u32,
}

impl Program {
    /// Runs the program on one input tuple. Inputs are read cyclically.
    pub fn run(&self, inputs: &[u32], step_cap: u64) -> ExecutionResult {
        let instrs = self.instructions();
        let mut st = MachineState::default();
        let mut frames: Vec<LoopFrame> = Vec::new();
        let mut trace = Vec::new();
        let termination = loop {
            let Some(ins) = instrs.get(st.ip) else {
                break Termination::EndOfCode;
            };
            if st.steps >= step_cap {
                break Termination::StepCap;
            }
            st.steps += 1;
            let mut next = st.ip + 1;
            let r = ins.target();
            match ins.op {
                Opcode::Nop(_) => {}
                Opcode::Push => {
                    if st.stack.len() < MAX_STACK_DEPTH {
                        st.stack.push(st.get(r));
                    }
                }
                Opcode::Pop => {
                    let v = st.stack.pop().unwrap_or(0);
                    st.set(r, v);
                }
                Opcode::Add => st.set(r, st.bx.wrapping_add(st.cx)),
                Opcode::Sub => st.set(r, st.bx.wrapping_sub(st.cx)),
                Opcode::Inc => st.set(r, st.get(r).wrapping_add(1)),
                Opcode::Dec => st.set(r, st.get(r).wrapping_sub(1)),
                Opcode::Nand => st.set(r, !(st.bx & st.cx)),
                Opcode::IfEqu => {
                    if st.bx != st.cx {
                        next += 1;
                    }
                }
                Opcode::IfLess => {
                    if st.bx >= st.cx {
                        next += 1;
                    }
                }
                Opcode::Swap => std::mem::swap(&mut st.bx, &mut st.cx),
                Opcode::Mov => st.set(r, st.bx),
                Opcode::IoIn => {
                    let v = if inputs.is_empty() {
                        0
                    } else {
                        inputs[st.input_cursor % inputs.len()]
                    };
                    st.input_cursor += 1;
                    trace.push(IoEvent::Input(v));
                    st.set(r, v);
                }
                Opcode::IoOut => {
                    let v = st.get(r);
                    trace.push(IoEvent::Output(v));
                    st.outputs.push(v);
                }
                Opcode::Zero => st.set(r, 0),
                Opcode::RepBegin => {
                    let end = self.partner(st.ip).expect("parsed loops are matched");
                    if st.cx == 0 {
                        next = end + 1;
                    } else {
                        frames.push(LoopFrame {
                            begin: st.ip,
                            remaining: st.cx,
                        });
                    }
                }
                Opcode::RepEnd => {
                    let begin = self.partner(st.ip).expect("parsed loops are matched");
                    if let Some(frame) = frames.last_mut().filter(|f| f.begin == begin) {
                        frame.remaining -= 1;
                        if frame.remaining > 0 {
                            next = begin + 1;
                        } else {
                            frames.pop();
                        }
                    }
                }
                Opcode::Halt => break Termination::Halt,
            }
            st.ip = next;
        };
        let tasks = detect_tasks(&trace);
        ExecutionResult {
            outputs: st.outputs,
            steps_used: st.steps,
            termination,
            tasks,
            trace,
        }
    }
}

/// Parses a code, mapping failures into the error class.
pub fn parse(code: &Code) -> Result<Program> {
    Program::parse(code.letters()).map_err(|e| Error::ErrorClass(e.to_string()))
}

/// Executes a code on one input tuple.
pub fn execute(code: &Code, inputs: &[u32], step_cap: u64) -> Result<ExecutionResult> {
    Ok(parse(code)?.run(inputs, step_cap))
}

/// Output table of a code over a function class's domain, or the error class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Behavior {
    Table(Vec<Vec<u32>>),
    ErrorClass(String),
}

impl Behavior {
    pub fn table(&self) -> Option<&[Vec<u32>]> {
        match self {
            Behavior::Table(t) => Some(t),
            Behavior::ErrorClass(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NonMember,
    ErrorClass,
}

/// Behavior of a raw letter string, which may be empty.
pub fn behavior_of(letters: &str, spec: &FunctionClassSpec) -> Behavior {
    match Program::parse(letters) {
        Ok(p) => behavior_of_program(&p, spec),
        Err(e) => Behavior::ErrorClass(e.to_string()),
    }
}

pub fn behavior_of_program(program: &Program, spec: &FunctionClassSpec) -> Behavior {
    let mut table = Vec::with_capacity(spec.domain().len());
    for input in spec.domain() {
        let res = program.run(input, spec.step_cap());
        if !res.is_well_defined() {
            return Behavior::ErrorClass(format!(
                "step cap {} reached on input {input:?}",
                spec.step_cap()
            ));
        }
        table.push(res.outputs);
    }
    Behavior::Table(table)
}

pub fn behavior(code: &Code, spec: &FunctionClassSpec) -> Behavior {
    behavior_of(code.letters(), spec)
}

/// Membership of a raw letter string. Stops at the first mismatching
/// domain point.
pub fn membership_of(letters: &str, spec: &FunctionClassSpec) -> Membership {
    let program = match Program::parse(letters) {
        Ok(p) => p,
        Err(_) => return Membership::ErrorClass,
    };
    let mut mismatch = false;
    for (input, expected) in spec.domain().iter().zip(spec.expected()) {
        let res = program.run(input, spec.step_cap());
        if !res.is_well_defined() {
            return Membership::ErrorClass;
        }
        if &res.outputs != expected {
            mismatch = true;
            // keep going: a later step-cap hit still means error class
        }
    }
    if mismatch {
        Membership::NonMember
    } else {
        Membership::Member
    }
}

pub fn class_membership(code: &Code, spec: &FunctionClassSpec) -> Membership {
    membership_of(code.letters(), spec)
}

pub fn is_member(letters: &str, spec: &FunctionClassSpec) -> bool {
    membership_of(letters, spec) == Membership::Member
}

/// Function class defined by running an oracle code over a domain.
pub fn spec_from_oracle(
    oracle: &Code,
    domain: Vec<Vec<u32>>,
    step_cap: u64,
) -> Result<FunctionClassSpec> {
    let program = parse(oracle)?;
    let mut expected = Vec::with_capacity(domain.len());
    for input in &domain {
        let res = program.run(input, step_cap);
        if !res.is_well_defined() {
            return Err(Error::ErrorClass(format!(
                "oracle {} exceeded the step cap on {input:?}",
                oracle.id()
            )));
        }
        expected.push(res.outputs);
    }
    FunctionClassSpec::new(domain, expected, step_cap)
}
