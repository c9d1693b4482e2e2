//! Append-only stage log of a construction run, verifiable offline.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactnum::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RunKind {
    Sigma2,
    Low,
    NonarchTree,
}

impl RunKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RunKind::Sigma2 => "sigma2",
            RunKind::Low => "low",
            RunKind::NonarchTree => "nonarch",
        }
    }
}

/// Tree node address; for the infinity/fin tree, 0 is the infinity child
/// and 1 the fin child.
pub type NodeId = Vec<u64>;

/// One record of a construction trace.  Records carry enough data for the
/// offline verifier to re-check every invariant without the script.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "t", rename_all = "kebab-case"))]
pub enum TraceEvent {
    StageStart {
        s: u64,
    },
    // --- Sigma-2 run ---
    Sigma2Init {
        e: u64,
        lo: Rational,
        hi: Rational,
        n: Option<u64>,
        poly: Option<String>,
    },
    /// Unchanged branch: the interval shrank keeping a root of p_n.
    Sigma2Refine {
        s: u64,
        e: u64,
        lo: Rational,
        hi: Rational,
    },
    /// Changed branch: the interval moved past every root of the held
    /// polynomial; `escapes` lists prefix-polynomial indices whose
    /// avoidance was not possible at this stage.
    Sigma2Avoid {
        s: u64,
        e: u64,
        lo: Rational,
        hi: Rational,
        old_n: Option<u64>,
        new_n: Option<u64>,
        new_poly: Option<String>,
        escapes: Vec<u64>,
    },
    // --- Low (permitting) run ---
    LowStage {
        s: u64,
        l_new: Vec<u64>,
        w_new: Vec<(u64, Vec<u64>)>,
    },
    LowEligible {
        s: u64,
        node: NodeId,
    },
    LowActive {
        s: u64,
        node: NodeId,
        level: u64,
        req: String,
        a: Rational,
        b: Rational,
        prev_a: Rational,
        prev_b: Rational,
        win_a: Rational,
        win_b: Rational,
        window_start: u64,
        permit: Option<u64>,
        redefined: bool,
    },
    /// Eligible but inactive: the level interval reverts to its
    /// window-start values.
    LowKeep {
        s: u64,
        node: NodeId,
        level: u64,
        a: Rational,
        b: Rational,
        window_start: u64,
    },
    // --- Nonarchimedean tree run ---
    NaClosure {
        s: u64,
        desc: String,
    },
    NaEligible {
        s: u64,
        node: NodeId,
    },
    NaFresh {
        s: u64,
        node: NodeId,
        a: Rational,
        b: Rational,
        coord: u32,
    },
    NaReanchor {
        s: u64,
        node: NodeId,
        a: Rational,
        b: Rational,
        coord: u32,
    },
    NaActive {
        s: u64,
        node: NodeId,
    },
    /// The collective step's new integer and everything it standardized.
    NaInteger {
        s: u64,
        n: u64,
        standardized: Vec<NodeId>,
    },
    /// An active node re-picked its anchor; the old x became standard with
    /// the recorded value.
    NaRepick {
        s: u64,
        node: NodeId,
        b_old: Rational,
        b_new: Rational,
        a_new: Rational,
        rho: Rational,
        coord_old: u32,
        coord_new: u32,
    },
    /// An injured node was initialized; its x-difference became standard
    /// with the recorded value.
    NaInit {
        s: u64,
        node: NodeId,
        rho: Rational,
        coord_old: u32,
        coord_new: u32,
    },
    /// Non-injured nodes advance their left endpoints.
    NaLeftStep {
        s: u64,
        node: NodeId,
        a: Rational,
    },
    /// Per-stage snapshot: ranks of the defined x's (higher rank = smaller
    /// infinitesimal) and the classification after the collective step.
    NaSnapshot {
        s: u64,
        ranks: Vec<(NodeId, Rational)>,
        units: Vec<NodeId>,
        infinitesimals: Vec<NodeId>,
        actives: Vec<NodeId>,
    },
    NaEscape {
        s: u64,
        node: NodeId,
        reason: String,
    },
}

impl TraceEvent {
    pub fn stage(&self) -> u64 {
        match self {
            TraceEvent::StageStart { s }
            | TraceEvent::Sigma2Refine { s, .. }
            | TraceEvent::Sigma2Avoid { s, .. }
            | TraceEvent::LowStage { s, .. }
            | TraceEvent::LowEligible { s, .. }
            | TraceEvent::LowActive { s, .. }
            | TraceEvent::LowKeep { s, .. }
            | TraceEvent::NaClosure { s, .. }
            | TraceEvent::NaEligible { s, .. }
            | TraceEvent::NaFresh { s, .. }
            | TraceEvent::NaReanchor { s, .. }
            | TraceEvent::NaActive { s, .. }
            | TraceEvent::NaInteger { s, .. }
            | TraceEvent::NaRepick { s, .. }
            | TraceEvent::NaInit { s, .. }
            | TraceEvent::NaLeftStep { s, .. }
            | TraceEvent::NaSnapshot { s, .. }
            | TraceEvent::NaEscape { s, .. } => *s,
            TraceEvent::Sigma2Init { .. } => 0,
        }
    }
}

/// Append-only trace; stages never decrease.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub kind: Option<RunKind>,
    pub horizon: u64,
    events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new(kind: RunKind, horizon: u64) -> Self {
        Trace {
            kind: Some(kind),
            horizon,
            events: Vec::new(),
        }
    }

    pub fn push(&mut self, ev: TraceEvent) {
        if let Some(last) = self.events.last() {
            debug_assert!(ev.stage() >= last.stage(), "trace stages must not decrease");
        }
        self.events.push(ev);
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn from_events(kind: Option<RunKind>, horizon: u64, events: Vec<TraceEvent>) -> Self {
        Trace {
            kind,
            horizon,
            events,
        }
    }
}
