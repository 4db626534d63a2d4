use std::ops::Range;

use super::isa::{Opcode, Register};

/// One instruction together with the nop that modifies it, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decorated {
    pub op: Opcode,
    pub modifier: Option<Register>,
    /// Letter positions covered, including the modifier.
    pub span: Range<usize>,
}

impl Decorated {
    /// Register written or read by the instruction; `BX` unless modified.
    pub fn target(&self) -> Register {
        self.modifier.unwrap_or(Register::Bx)
    }
}

/// Why a letter string has no well-defined interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseFailure {
    UnknownLetter { position: usize, letter: char },
    UnmatchedRepBegin { position: usize },
    UnmatchedRepEnd { position: usize },
    /// An if-instruction whose guarded instruction is a loop marker.
    GuardedLoopMarker { position: usize },
}

impl std::fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseFailure::UnknownLetter { position, letter } => {
                write!(f, "unknown letter {letter:?} at {position}")
            }
            ParseFailure::UnmatchedRepBegin { position } => {
                write!(f, "rep-begin at {position} has no matching rep-end")
            }
            ParseFailure::UnmatchedRepEnd { position } => {
                write!(f, "rep-end at {position} has no matching rep-begin")
            }
            ParseFailure::GuardedLoopMarker { position } => {
                write!(f, "if-instruction at {position} guards a loop marker")
            }
        }
    }
}

/// A parsed program: decorated instructions plus matched loop markers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    letters: String,
    instrs: Vec<Decorated>,
    /// For every rep-begin/rep-end, the index of its partner.
    partner: Vec<Option<usize>>,
}

impl Program {
    /// Parses a letter string. An empty string is a valid program with no
    /// behavior; ablation produces those.
    pub fn parse(letters: &str) -> Result<Self, ParseFailure> {
        let bytes = letters.as_bytes();
        let mut instrs = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let op = Opcode::from_letter(bytes[i]).ok_or(ParseFailure::UnknownLetter {
                position: i,
                letter: bytes[i] as char,
            })?;
            let mut end = i + 1;
            let mut modifier = None;
            if !op.is_nop() {
                if let Some(r) = bytes.get(i + 1).and_then(|&b| Register::from_nop(b)) {
                    modifier = Some(r);
                    end += 1;
                }
            }
            instrs.push(Decorated {
                op,
                modifier,
                span: i..end,
            });
            i = end;
        }

        let mut partner = vec![None; instrs.len()];
        let mut open = Vec::new();
        for (idx, ins) in instrs.iter().enumerate() {
            match ins.op {
                Opcode::RepBegin => open.push(idx),
                Opcode::RepEnd => {
                    let begin = open.pop().ok_or(ParseFailure::UnmatchedRepEnd {
                        position: ins.span.start,
                    })?;
                    partner[begin] = Some(idx);
                    partner[idx] = Some(begin);
                }
                _ => {}
            }
            if ins.op.is_conditional() {
                if let Some(next) = instrs.get(idx + 1) {
                    if matches!(next.op, Opcode::RepBegin | Opcode::RepEnd) {
                        return Err(ParseFailure::GuardedLoopMarker {
                            position: ins.span.start,
                        });
                    }
                }
            }
        }
        if let Some(&begin) = open.first() {
            return Err(ParseFailure::UnmatchedRepBegin {
                position: instrs[begin].span.start,
            });
        }

        Ok(Self {
            letters: letters.to_owned(),
            instrs,
            partner,
        })
    }

    pub fn letters(&self) -> &str {
        &self.letters
    }

    pub fn instructions(&self) -> &[Decorated] {
        &self.instrs
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    /// Matching rep-end for a rep-begin (or vice versa).
    pub fn partner(&self, idx: usize) -> Option<usize> {
        self.partner.get(idx).copied().flatten()
    }

    pub fn has_loops(&self) -> bool {
        self.instrs.iter().any(|d| d.op == Opcode::RepBegin)
    }
}
