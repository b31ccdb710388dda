//! Resumable sweeps. The checkpoint records which work units are finished
//! and the raw solutions found so far; exclusions are applied afterwards.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{plan_units, run_units, CongruenceSpec, SearchConfig, SearchError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub spec: CongruenceSpec,
    pub bound: u64,
    pub depth: u32,
    pub completed_subtrees: Vec<u64>,
    pub partial_solutions: Vec<u64>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Self>, SearchError> {
        match fs::read_to_string(path) {
            Ok(text) => Ok(Some(serde_json::from_str(&text)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Write through a temporary file so an interrupted write never leaves
    /// a truncated checkpoint behind.
    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

pub(super) fn run_with_checkpoint(
    x: u64,
    spec: &CongruenceSpec,
    config: &SearchConfig,
    path: &Path,
) -> Result<Vec<u64>, SearchError> {
    let (depth, units) = plan_units(x, config.split_depth);
    let mut state = match Checkpoint::load(path)? {
        Some(cp) => {
            if cp.spec != *spec || cp.bound != x || cp.depth != depth {
                return Err(SearchError::CheckpointMismatch(format!(
                    "file has spec {} bound {} depth {}, run has spec {} bound {} depth {}",
                    cp.spec, cp.bound, cp.depth, spec, x, depth
                )));
            }
            cp
        }
        None => Checkpoint {
            spec: *spec,
            bound: x,
            depth,
            completed_subtrees: Vec::new(),
            partial_solutions: Vec::new(),
        },
    };
    let done: BTreeSet<u64> = state.completed_subtrees.iter().copied().collect();
    let pending: Vec<u64> = units.into_iter().filter(|u| !done.contains(u)).collect();
    let batch = config.checkpoint_every.max(1);
    for (i, chunk) in pending.chunks(batch).enumerate() {
        if config.batch_limit.is_some_and(|limit| i >= limit) {
            return Err(SearchError::Interrupted { batches: i });
        }
        let found = run_units(chunk, depth, x, spec, config.workers);
        state.partial_solutions.extend(found);
        state.completed_subtrees.extend_from_slice(chunk);
        state.save(path)?;
    }
    Ok(state.partial_solutions)
}
