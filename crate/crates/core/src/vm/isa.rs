//! The instruction alphabet and its letter encoding.

use std::fmt;

/// The three machine registers. Nop letters `a`, `b`, `c` name them when
/// they follow another instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Register {
    Ax,
    Bx,
    Cx,
}

impl Register {
    pub fn from_nop(letter: u8) -> Option<Self> {
        match letter {
            b'a' => Some(Register::Ax),
            b'b' => Some(Register::Bx),
            b'c' => Some(Register::Cx),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Register::Ax => 'a',
            Register::Bx => 'b',
            Register::Cx => 'c',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Opcode {
    Nop(Register),
    Push,
    Pop,
    Add,
    Sub,
    Inc,
    Dec,
    Nand,
    IfEqu,
    IfLess,
    Swap,
    Mov,
    IoIn,
    IoOut,
    Zero,
    RepBegin,
    RepEnd,
    Halt,
}

impl Opcode {
    pub const ALL: [Opcode; 20] = [
        Opcode::Nop(Register::Ax),
        Opcode::Nop(Register::Bx),
        Opcode::Nop(Register::Cx),
        Opcode::Push,
        Opcode::Pop,
        Opcode::Add,
        Opcode::Sub,
        Opcode::Inc,
        Opcode::Dec,
        Opcode::Nand,
        Opcode::IfEqu,
        Opcode::IfLess,
        Opcode::Swap,
        Opcode::Mov,
        Opcode::IoIn,
        Opcode::IoOut,
        Opcode::Zero,
        Opcode::RepBegin,
        Opcode::RepEnd,
        Opcode::Halt,
    ];

    pub fn from_letter(letter: u8) -> Option<Self> {
        let op = match letter {
            b'a' => Opcode::Nop(Register::Ax),
            b'b' => Opcode::Nop(Register::Bx),
            b'c' => Opcode::Nop(Register::Cx),
            b'd' => Opcode::Push,
            b'e' => Opcode::Pop,
            b'f' => Opcode::Add,
            b'g' => Opcode::Sub,
            b'h' => Opcode::Inc,
            b'i' => Opcode::Dec,
            b'j' => Opcode::Nand,
            b'k' => Opcode::IfEqu,
            b'l' => Opcode::IfLess,
            b'm' => Opcode::Swap,
            b'n' => Opcode::Mov,
            b'o' => Opcode::IoIn,
            b'p' => Opcode::IoOut,
            b'q' => Opcode::Zero,
            b'r' => Opcode::RepBegin,
            b's' => Opcode::RepEnd,
            b't' => Opcode::Halt,
            _ => return None,
        };
        Some(op)
    }

    pub fn letter(self) -> char {
        match self {
            Opcode::Nop(r) => r.letter(),
            Opcode::Push => 'd',
            Opcode::Pop => 'e',
            Opcode::Add => 'f',
            Opcode::Sub => 'g',
            Opcode::Inc => 'h',
            Opcode::Dec => 'i',
            Opcode::Nand => 'j',
            Opcode::IfEqu => 'k',
            Opcode::IfLess => 'l',
            Opcode::Swap => 'm',
            Opcode::Mov => 'n',
            Opcode::IoIn => 'o',
            Opcode::IoOut => 'p',
            Opcode::Zero => 'q',
            Opcode::RepBegin => 'r',
            Opcode::RepEnd => 's',
            Opcode::Halt => 't',
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            Opcode::Nop(Register::Ax) => "nop-A",
            Opcode::Nop(Register::Bx) => "nop-B",
            Opcode::Nop(Register::Cx) => "nop-C",
            Opcode::Push => "push",
            Opcode::Pop => "pop",
            Opcode::Add => "add",
            Opcode::Sub => "sub",
            Opcode::Inc => "inc",
            Opcode::Dec => "dec",
            Opcode::Nand => "nand",
            Opcode::IfEqu => "if-equ",
            Opcode::IfLess => "if-less",
            Opcode::Swap => "swap",
            Opcode::Mov => "mov",
            Opcode::IoIn => "io-in",
            Opcode::IoOut => "io-out",
            Opcode::Zero => "zero",
            Opcode::RepBegin => "rep-begin",
            Opcode::RepEnd => "rep-end",
            Opcode::Halt => "halt",
        }
    }

    pub fn is_nop(self) -> bool {
        matches!(self, Opcode::Nop(_))
    }

    pub fn is_conditional(self) -> bool {
        matches!(self, Opcode::IfEqu | Opcode::IfLess)
    }
}

impl fmt::Display for Opcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// Whether a letter is one of the nop/operand letters `a`, `b`, `c`.
pub fn is_nop_letter(letter: u8) -> bool {
    matches!(letter, b'a' | b'b' | b'c')
}
