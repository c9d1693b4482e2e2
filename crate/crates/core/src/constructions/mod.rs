//! Stage-exact simulators for the three priority constructions, driven by
//! scripted computability data, plus the machine-checkable trace they emit.

mod low;
mod natree;
mod script;
mod sigma2;
mod trace;
mod true_path;

pub use low::{run_low, LowState, NodeStatus};
pub use natree::{run_nonarch_tree, NaTreeState};
pub use script::{CeScript, ScriptViolation};
pub use sigma2::{
    eval_univariate, run_sigma2, univariate_poly, SimError, Sigma2Config, Sigma2Index,
    Sigma2State,
};
pub use trace::{NodeId, RunKind, Trace, TraceEvent};
pub use true_path::{true_path, PathConfidence, PathLevel};
