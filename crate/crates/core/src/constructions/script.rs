//! The scripted computability environment: finite stage-indexed
//! enumerations standing in for c.e. sets, an L-enumeration for permitting,
//! and a chip schedule.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Scripted c.e. data driving a construction run.
///
/// `w` maps an index to stagewise additions (monotone by construction);
/// elements are naturals, read as indices into the fixed ordering of the
/// rationals where a rational is needed.  `s_tables` gives, per node label,
/// the cut-pair table (indices into `w`) for the sequence the node
/// diagonalizes against.  `f_map` is the index map of the Sigma-2 run
/// (defaults to the identity).
#[derive(Clone, Debug, Default)]
pub struct CeScript {
    pub w: BTreeMap<u64, Vec<(u64, Vec<u64>)>>,
    pub l: Vec<(u64, Vec<u64>)>,
    pub chips: Vec<(u64, u64)>,
    pub horizon: u64,
    pub indices: Option<u64>,
    pub f_map: BTreeMap<u64, u64>,
    pub s_tables: BTreeMap<u64, Vec<(u64, u64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptViolation(pub String);

impl fmt::Display for ScriptViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "script violation: {}", self.0)
    }
}

impl CeScript {
    pub fn validate(&self) -> Result<(), ScriptViolation> {
        if self.horizon == 0 {
            return Err(ScriptViolation(String::from("horizon must be at least 1")));
        }
        for (e, adds) in &self.w {
            let mut last = 0;
            for (stage, _) in adds {
                if *stage < last {
                    return Err(ScriptViolation(alloc::format!(
                        "W[{}] additions out of stage order",
                        e
                    )));
                }
                last = *stage;
            }
        }
        let mut last = 0;
        for (stage, _) in &self.l {
            if *stage < last {
                return Err(ScriptViolation(String::from(
                    "L additions out of stage order",
                )));
            }
            last = *stage;
        }
        for (e, table) in &self.s_tables {
            for (j, k) in table {
                if !self.w.contains_key(j) || !self.w.contains_key(k) {
                    return Err(ScriptViolation(alloc::format!(
                        "S-table for {} references missing W indices ({}, {})",
                        e,
                        j,
                        k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of simulated cut indices.
    pub fn num_indices(&self) -> u64 {
        self.indices
            .unwrap_or_else(|| self.w.keys().max().map_or(0, |m| m + 1))
    }

    pub fn f_of(&self, e: u64) -> u64 {
        self.f_map.get(&e).copied().unwrap_or(e)
    }

    /// W_{e,stage}: all elements added at stages <= `stage`.
    pub fn w_at(&self, e: u64, stage: u64) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        if let Some(adds) = self.w.get(&e) {
            for (s, els) in adds {
                if *s <= stage {
                    out.extend(els.iter().copied());
                }
            }
        }
        out
    }

    /// Did W_e grow in the window (from, to]?
    pub fn w_changed(&self, e: u64, from: u64, to: u64) -> bool {
        self.w.get(&e).map_or(false, |adds| {
            adds.iter()
                .any(|(s, els)| *s > from && *s <= to && !els.is_empty())
        })
    }

    /// New W_e elements exactly at `stage`.
    pub fn w_new_at(&self, e: u64, stage: u64) -> Vec<u64> {
        self.w.get(&e).map_or(Vec::new(), |adds| {
            adds.iter()
                .filter(|(s, _)| *s == stage)
                .flat_map(|(_, els)| els.iter().copied())
                .collect()
        })
    }

    /// L elements present by `stage`.
    pub fn l_at(&self, stage: u64) -> BTreeSet<u64> {
        self.l
            .iter()
            .filter(|(s, _)| *s <= stage)
            .flat_map(|(_, els)| els.iter().copied())
            .collect()
    }

    /// Smallest element of L_{to} - L_{from}; `None` when no new element
    /// arrived in the window (nothing is permitted to move).
    pub fn l_permit(&self, from: u64, to: u64) -> Option<u64> {
        self.l
            .iter()
            .filter(|(s, _)| *s > from && *s <= to)
            .flat_map(|(_, els)| els.iter().copied())
            .min()
    }

    /// New L elements exactly at `stage`.
    pub fn l_new_at(&self, stage: u64) -> Vec<u64> {
        self.l
            .iter()
            .filter(|(s, _)| *s == stage)
            .flat_map(|(_, els)| els.iter().copied())
            .collect()
    }

    /// The chip recipient at `stage`, if any.
    pub fn chip_at(&self, stage: u64) -> Option<u64> {
        self.chips
            .iter()
            .find(|(s, _)| *s == stage)
            .map(|(_, r)| *r)
    }

    /// Recipients of chips in the window (from, to], ascending and deduped.
    pub fn chips_in_window(&self, from: u64, to: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .chips
            .iter()
            .filter(|(s, _)| *s > from && *s <= to)
            .map(|(_, r)| *r)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}
