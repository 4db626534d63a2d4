use serde::{Deserialize, Serialize};

use crate::structure::ControlFlowGraph;

/// Complexity above which a routine is considered unstable.
pub const UNSTABLE_THRESHOLD: i64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McCabe {
    pub complexity: i64,
    pub unstable: bool,
}

/// Cyclomatic complexity `E - N + c`, with `c` the number of connected
/// components. Note the conventional form is `E - N + 2P`; this one is
/// two lower on a connected graph.
pub fn mccabe(cfg: &ControlFlowGraph) -> McCabe {
    let complexity =
        cfg.edge_count() as i64 - cfg.node_count() as i64 + cfg.components() as i64;
    McCabe {
        complexity,
        unstable: complexity > UNSTABLE_THRESHOLD,
    }
}
