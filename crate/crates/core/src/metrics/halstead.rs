//! Halstead's software science measures over genome letters.
//!
//! The nop letters `a`, `b`, `c` are operands; every other letter is an
//! operator. Counts therefore always satisfy `N1 + N2 = code length` and
//! `n2 <= 3`.

use serde::{Deserialize, Serialize};

use crate::model::Code;
use crate::vm::is_nop_letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalsteadCounts {
    /// Distinct operators.
    pub n1: u64,
    /// Distinct operands.
    pub n2: u64,
    /// Total operators.
    pub total_operators: u64,
    /// Total operands.
    pub total_operands: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalsteadMeasures {
    pub vocabulary: f64,
    pub length: f64,
    /// `None` when there are no operands.
    pub difficulty: Option<f64>,
    pub volume: f64,
    pub effort: Option<f64>,
}

pub fn halstead_counts(code: &Code) -> HalsteadCounts {
    counts_of_letters(code.letters())
}

pub fn counts_of_letters(letters: &str) -> HalsteadCounts {
    let mut seen = [false; 256];
    let mut c = HalsteadCounts {
        n1: 0,
        n2: 0,
        total_operators: 0,
        total_operands: 0,
    };
    for b in letters.bytes() {
        let operand = is_nop_letter(b);
        if operand {
            c.total_operands += 1;
        } else {
            c.total_operators += 1;
        }
        if !seen[b as usize] {
            seen[b as usize] = true;
            if operand {
                c.n2 += 1;
            } else {
                c.n1 += 1;
            }
        }
    }
    c
}

pub fn halstead(c: HalsteadCounts) -> HalsteadMeasures {
    let vocabulary = (c.n1 + c.n2) as f64;
    let length = (c.total_operators + c.total_operands) as f64;
    let volume = if vocabulary > 0.0 {
        length * vocabulary.log2()
    } else {
        0.0
    };
    let difficulty =
        (c.n2 > 0).then(|| c.n1 as f64 * c.total_operands as f64 / (2.0 * c.n2 as f64));
    HalsteadMeasures {
        vocabulary,
        length,
        difficulty,
        volume,
        effort: difficulty.map(|d| d * volume),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn counts_classify_nops_as_operands() {
        let c = halstead_counts(&Code::new("t", "oncjp").unwrap());
        assert_eq!((c.n1, c.n2, c.total_operators, c.total_operands), (4, 1, 4, 1));
        let c = halstead_counts(&Code::new("t", "aaa").unwrap());
        assert_eq!((c.n1, c.n2, c.total_operators, c.total_operands), (0, 1, 0, 3));
    }

    #[test]
    fn published_counts() {
        let m = halstead(HalsteadCounts {
            n1: 19,
            n2: 3,
            total_operators: 153,
            total_operands: 31,
        });
        assert_eq!(m.vocabulary, 22.0);
        assert_eq!(m.length, 184.0);
        assert!(close(m.difficulty.unwrap(), 98.1667, 1e-4));
        assert!(close(m.volume, 820.535, 5e-3));
        assert!(close(m.effort.unwrap(), 80549.2, 0.5));
    }

    #[test]
    fn unit_counts() {
        let m = halstead(HalsteadCounts {
            n1: 1,
            n2: 1,
            total_operators: 1,
            total_operands: 1,
        });
        assert_eq!((m.vocabulary, m.length, m.volume), (2.0, 2.0, 2.0));
        assert_eq!(m.difficulty, Some(0.5));
        assert_eq!(m.effort, Some(1.0));
        let m = halstead(HalsteadCounts {
            n1: 2,
            n2: 1,
            total_operators: 2,
            total_operands: 1,
        });
        assert_eq!(m.difficulty, Some(1.0));
        assert!(close(m.volume, 3.0 * 3f64.log2(), 1e-12));
        assert!(close(m.volume, 4.75489, 5e-6));
        assert_eq!(m.effort, Some(m.volume));
    }

    #[test]
    fn no_operands_leaves_difficulty_undefined() {
        let m = halstead(halstead_counts(&Code::new("t", "op").unwrap()));
        assert_eq!(m.difficulty, None);
        assert_eq!(m.effort, None);
        assert_eq!(m.volume, 2.0);
    }
}
