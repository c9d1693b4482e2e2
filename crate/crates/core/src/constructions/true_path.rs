//! True-path extraction from a finished trace: per level, the leftmost node
//! eligible recurrently in the final third of the horizon.  "Infinitely
//! often" is not decidable from a finite run, so every level carries a
//! stability flag instead of a bare claim.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::natree::tree_cmp;
use super::trace::{NodeId, Trace, TraceEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathConfidence {
    /// Eligible at least twice in the final third.
    Stable,
    /// Seen only once there; a later stage could still move the path.
    HorizonLimited,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLevel {
    pub node: NodeId,
    pub eligible_in_final_third: u64,
    pub confidence: PathConfidence,
}

/// Per level, the tree-leftmost node whose eligibility recurs in the final
/// third of the horizon; stops at the first level with no such node.
pub fn true_path(trace: &Trace) -> Vec<PathLevel> {
    let horizon = trace.horizon;
    let cutoff = horizon - horizon / 3;
    let mut counts: BTreeMap<NodeId, u64> = BTreeMap::new();
    for ev in trace.events() {
        let (s, node) = match ev {
            TraceEvent::LowEligible { s, node } => (*s, node),
            TraceEvent::NaEligible { s, node } => (*s, node),
            _ => continue,
        };
        if s > cutoff {
            *counts.entry(node.clone()).or_insert(0) += 1;
        }
    }
    if counts.is_empty() {
        return Vec::new();
    }
    let min_level = counts.keys().map(NodeId::len).min().unwrap_or(0);
    let mut out = Vec::new();
    let mut level = min_level;
    loop {
        let mut at_level: Vec<(&NodeId, u64)> = counts
            .iter()
            .filter(|(n, _)| n.len() == level)
            .map(|(n, c)| (n, *c))
            .collect();
        if at_level.is_empty() {
            break;
        }
        at_level.sort_by(|a, b| tree_cmp(a.0, b.0));
        let (node, count) = (at_level[0].0.clone(), at_level[0].1);
        out.push(PathLevel {
            node,
            eligible_in_final_third: count,
            confidence: if count >= 2 {
                PathConfidence::Stable
            } else {
                PathConfidence::HorizonLimited
            },
        });
        level += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::natree::run_nonarch_tree;
    use super::super::script::CeScript;
    use super::*;
    use alloc::collections::BTreeMap;

    #[test]
    fn quiet_script_gives_fin_chain() {
        let script = CeScript {
            horizon: 15,
            ..Default::default()
        };
        let (trace, _) = run_nonarch_tree(&script, 15).unwrap();
        let path = true_path(&trace);
        assert!(path.len() >= 3);
        for (lvl, p) in path.iter().enumerate() {
            assert_eq!(p.node.len(), lvl);
            assert!(p.node.iter().all(|&c| c == 1), "fin chain expected");
        }
    }

    #[test]
    fn persistent_growth_selects_infinity_child() {
        let mut w = BTreeMap::new();
        w.insert(0, (1..=18).map(|s| (s, alloc::vec![s])).collect::<Vec<_>>());
        let script = CeScript {
            w,
            horizon: 18,
            ..Default::default()
        };
        let (trace, _) = run_nonarch_tree(&script, 18).unwrap();
        let path = true_path(&trace);
        assert!(path.len() >= 2);
        assert_eq!(path[1].node, alloc::vec![0], "infinity child on the path");
        assert_eq!(path[1].confidence, PathConfidence::Stable);
    }

    #[test]
    fn last_stage_flip_is_horizon_limited() {
        // Quiet except a single W_0 change at the last stage: the
        // infinity child appears exactly once in the final third.
        let mut w = BTreeMap::new();
        w.insert(0, alloc::vec![(18u64, alloc::vec![1u64])]);
        let script = CeScript {
            w,
            horizon: 18,
            ..Default::default()
        };
        let (trace, _) = run_nonarch_tree(&script, 18).unwrap();
        let path = true_path(&trace);
        assert_eq!(path[1].node, alloc::vec![0]);
        assert_eq!(path[1].confidence, PathConfidence::HorizonLimited);
    }
}
