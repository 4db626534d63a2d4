//! Level decomposition and control-flow graphs.
//!
//! A code is viewed as a four-tier hierarchy of consecutive substrings:
//!
//! | level | unit                 | boundaries                                   |
//! |-------|----------------------|----------------------------------------------|
//! | 0     | decorated instruction| an instruction plus its modifier nop         |
//! | 1     | basic block          | after `k`/`l`, after the guarded instruction, after `r`, after `s` |
//! | 2     | region               | after `r`, after `s`                         |
//! | 3     | program              | the whole code                               |
//!
//! Region boundaries are a subset of block boundaries, so every tier is
//! nested in the one above. A region is either a loop-free span or the body
//! of an innermost loop.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::model::Code;
use crate::vm::{Opcode, Program};

pub const LEVELS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    letters: String,
    /// `units[k][i]`: letter range of the i-th level-k unit.
    units: [Vec<Range<usize>>; LEVELS],
    /// `counts[k][i]`: number of level-(k-1) units inside unit i of level k.
    /// `counts[0]` is empty.
    counts: [Vec<usize>; LEVELS],
    /// `children[k][i]`: index range of the level-(k-1) units inside unit i.
    children: [Vec<Range<usize>>; LEVELS],
}

fn error_class(code: &Code) -> impl FnOnce(crate::vm::ParseFailure) -> Error + '_ {
    move |e| Error::ErrorClass(format!("{}: {e}", code.id()))
}

/// Positions (in decorated-instruction indices) where a new block starts.
fn block_leaders(p: &Program) -> Vec<bool> {
    let n = p.len();
    let mut leader = vec![false; n + 1];
    leader[0] = true;
    for (i, ins) in p.instructions().iter().enumerate() {
        match ins.op {
            op if op.is_conditional() => {
                if i + 1 < n {
                    leader[i + 1] = true;
                    leader[(i + 2).min(n)] = true;
                }
            }
            Opcode::RepBegin | Opcode::RepEnd => leader[i + 1] = true,
            _ => {}
        }
    }
    leader
}

fn region_leaders(p: &Program) -> Vec<bool> {
    let n = p.len();
    let mut leader = vec![false; n + 1];
    leader[0] = true;
    for (i, ins) in p.instructions().iter().enumerate() {
        if matches!(ins.op, Opcode::RepBegin | Opcode::RepEnd) {
            leader[i + 1] = true;
        }
    }
    leader
}

fn split(n: usize, leader: &[bool]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || leader[i] {
            if start < i {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

impl LevelDecomposition {
    pub fn from_program(p: &Program) -> Self {
        let n = p.len();
        let instrs = p.instructions();
        // instruction-index ranges per level
        let level0: Vec<Range<usize>> = (0..n).map(|i| i..i + 1).collect();
        let blocks = split(n, &block_leaders(p));
        let regions = split(n, &region_leaders(p));
        let program = if n == 0 { vec![] } else { vec![0..n] };
        let by_instr = [level0, blocks, regions, program];

        let to_letters = |r: &Range<usize>| instrs[r.start].span.start..instrs[r.end - 1].span.end;
        let units: [Vec<Range<usize>>; LEVELS] =
            std::array::from_fn(|k| by_instr[k].iter().map(to_letters).collect());

        let mut children: [Vec<Range<usize>>; LEVELS] = Default::default();
        for k in 1..LEVELS {
            let lower = &by_instr[k - 1];
            let mut j = 0;
            for unit in &by_instr[k] {
                let first = j;
                while j < lower.len() && lower[j].end <= unit.end {
                    j += 1;
                }
                children[k].push(first..j);
            }
        }
        let counts = std::array::from_fn(|k| children[k].iter().map(|r| r.len()).collect());

        Self {
            letters: p.letters().to_owned(),
            units,
            counts,
            children,
        }
    }

    pub fn letters(&self) -> &str {
        &self.letters
    }

    /// Letter ranges of the level-k units.
    pub fn units(&self, k: usize) -> &[Range<usize>] {
        &self.units[k]
    }

    pub fn unit_count(&self, k: usize) -> usize {
        self.units[k].len()
    }

    /// η per unit of level k (k ≥ 1).
    pub fn counts(&self, k: usize) -> &[usize] {
        &self.counts[k]
    }

    /// Indices of the level-(k-1) units inside level-k unit `i`.
    pub fn children(&self, k: usize, i: usize) -> Range<usize> {
        self.children[k][i].clone()
    }

    pub fn unit_str(&self, k: usize, i: usize) -> &str {
        &self.letters[self.units[k][i].clone()]
    }

    /// Checks that each tier partitions the code and nests in the next.
    pub fn check_partition(&self) -> bool {
        let len = self.letters.len();
        for k in 0..LEVELS {
            let mut pos = 0;
            for r in &self.units[k] {
                if r.start != pos || r.end <= r.start {
                    return false;
                }
                pos = r.end;
            }
            if pos != len {
                return false;
            }
        }
        for k in 1..LEVELS {
            let lower_total = self.units[k - 1].len();
            if self.counts[k].iter().sum::<usize>() != lower_total {
                return false;
            }
            for (i, unit) in self.units[k].iter().enumerate() {
                for c in self.children[k][i].clone() {
                    let sub = &self.units[k - 1][c];
                    if sub.start < unit.start || sub.end > unit.end {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Level decomposition of a parseable code.
pub fn decompose(code: &Code) -> Result<LevelDecomposition> {
    let p = Program::parse(code.letters()).map_err(error_class(code))?;
    Ok(LevelDecomposition::from_program(&p))
}

/// Multiset of level-(k-1) units across the whole code, keyed by letter string.
pub fn subunit_keys(decomp: &LevelDecomposition, k: usize) -> Result<BTreeMap<String, usize>> {
    check_level(k)?;
    let mut keys = BTreeMap::new();
    for i in 0..decomp.unit_count(k - 1) {
        *keys.entry(decomp.unit_str(k - 1, i).to_owned()).or_default() += 1;
    }
    Ok(keys)
}

/// Multiset of level-(k-1) units inside the level-k unit `i`.
pub fn subunit_keys_within(
    decomp: &LevelDecomposition,
    k: usize,
    i: usize,
) -> Result<BTreeMap<String, usize>> {
    check_level(k)?;
    let mut keys = BTreeMap::new();
    for c in decomp.children(k, i) {
        *keys.entry(decomp.unit_str(k - 1, c).to_owned()).or_default() += 1;
    }
    Ok(keys)
}

pub(crate) fn check_level(k: usize) -> Result<()> {
    if (1..LEVELS).contains(&k) {
        Ok(())
    } else {
        Err(Error::domain(format!("level {k} outside 1..=3")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeKind {
    Fallthrough,
    ConditionalSkip,
    LoopBack,
    LoopSkip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

/// Basic-block control-flow graph. When some edge leaves the program (a
/// skip past the last instruction) a single exit node is appended, and the
/// last block falls through into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlFlowGraph {
    pub blocks: Vec<Range<usize>>,
    pub has_exit: bool,
    pub edges: Vec<Edge>,
}

impl ControlFlowGraph {
    pub fn node_count(&self) -> usize {
        self.blocks.len() + usize::from(self.has_exit)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of weakly connected components.
    pub fn components(&self) -> usize {
        let n = self.node_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

pub fn build_cfg(code: &Code) -> Result<ControlFlowGraph> {
    let p = Program::parse(code.letters()).map_err(error_class(code))?;
    Ok(cfg_of_program(&p))
}

pub fn cfg_of_program(p: &Program) -> ControlFlowGraph {
    let n = p.len();
    let instrs = p.instructions();
    let blocks = split(n, &block_leaders(p));
    let mut block_of = vec![0; n];
    for (b, r) in blocks.iter().enumerate() {
        for i in r.clone() {
            block_of[i] = b;
        }
    }
    // `None` means "past the end of the program"
    let target = |idx: usize| (idx < n).then(|| block_of[idx]);

    let mut pending: Vec<(usize, Option<usize>, EdgeKind)> = Vec::new();
    for (b, r) in blocks.iter().enumerate() {
        let last = r.end - 1;
        if b + 1 < blocks.len() {
            pending.push((b, Some(b + 1), EdgeKind::Fallthrough));
        }
        match instrs[last].op {
            op if op.is_conditional() && last + 1 < n => {
                pending.push((b, target(last + 2), EdgeKind::ConditionalSkip));
            }
            Opcode::RepBegin => {
                let end = p.partner(last).expect("matched");
                pending.push((b, target(end + 1), EdgeKind::LoopSkip));
            }
            Opcode::RepEnd => {
                let begin = p.partner(last).expect("matched");
                pending.push((b, target(begin + 1), EdgeKind::LoopBack));
            }
            _ => {}
        }
    }
    let has_exit = pending.iter().any(|(_, to, _)| to.is_none());
    let exit = blocks.len();
    let mut edges: Vec<Edge> = pending
        .into_iter()
        .map(|(from, to, kind)| Edge {
            from,
            to: to.unwrap_or(exit),
            kind,
        })
        .collect();
    if has_exit && !blocks.is_empty() {
        edges.push(Edge {
            from: blocks.len() - 1,
            to: exit,
            kind: EdgeKind::Fallthrough,
        });
    }
    ControlFlowGraph {
        blocks,
        has_exit,
        edges,
    }
}
