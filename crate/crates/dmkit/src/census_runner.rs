//! Parallel, checkpointed census runs over family-index ranges.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use dmkit_core::census::{
    count_indices, index_end, sample_index, verify_index_range, verify_sample_range, CensusReport,
    EquivalenceChecker, Mode, TheoremId, EXHAUSTIVE_MAX_N,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::ReportJson;

/// Indices between checkpoints.
pub const CHECKPOINT_INTERVAL: u128 = 1 << 24;
/// Indices per parallel work item.
pub const WORK_CHUNK: u128 = 1 << 12;
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Verify(TheoremId),
    Count,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub task: Task,
    pub mode: Mode,
    pub jobs: Option<usize>,
    /// Written after every checkpoint interval when set.
    pub checkpoint: Option<PathBuf>,
    /// Resume from this checkpoint file.
    pub resume: Option<PathBuf>,
    /// Allows exhaustive runs beyond [`EXHAUSTIVE_MAX_N`].
    pub long_run: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    n: usize,
    task: String,
    mode: String,
    /// Next position to process, as a decimal string.
    next: String,
    report: ReportJson,
}

fn task_name(t: &Task) -> String {
    match t {
        Task::Verify(id) => id.to_string(),
        Task::Count => "count".to_string(),
    }
}

/// Positions are family indices when exhaustive and sample numbers when sampled.
fn position_range(cfg: &RunConfig) -> anyhow::Result<(u128, u128)> {
    match cfg.mode {
        Mode::Exhaustive => {
            if cfg.n > EXHAUSTIVE_MAX_N && !cfg.long_run {
                bail!(
                    "exhaustive census on {} elements needs --long-run (2^{} families)",
                    cfg.n,
                    1u64 << cfg.n
                );
            }
            if cfg.n > 5 {
                bail!("exhaustive census supports at most 5 elements");
            }
            Ok((1, index_end(cfg.n)?))
        }
        Mode::Sampled { seed, count } => {
            sample_index(cfg.n, seed, 0)?;
            Ok((0, count as u128))
        }
    }
}

fn empty_report(cfg: &RunConfig) -> CensusReport {
    match cfg.task {
        Task::Verify(t) => CensusReport::new(cfg.n, Some(t)),
        Task::Count => CensusReport::new(cfg.n, None),
    }
}

fn load_checkpoint(path: &Path, cfg: &RunConfig) -> anyhow::Result<(u128, CensusReport)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading checkpoint {}", path.display()))?;
    let cp: Checkpoint = serde_json::from_str(&text)
        .with_context(|| format!("parsing checkpoint {}", path.display()))?;
    if cp.version != CHECKPOINT_VERSION {
        bail!("checkpoint version {} is not supported", cp.version);
    }
    if cp.n != cfg.n || cp.task != task_name(&cfg.task) || cp.mode != cfg.mode.to_string() {
        bail!("checkpoint {} belongs to a different run", path.display());
    }
    let next = cp.next.parse().context("checkpoint position")?;
    Ok((next, cp.report.to_report()?))
}

fn save_checkpoint(
    path: &Path,
    cfg: &RunConfig,
    next: u128,
    report: &CensusReport,
) -> anyhow::Result<()> {
    let cp = Checkpoint {
        version: CHECKPOINT_VERSION,
        n: cfg.n,
        task: task_name(&cfg.task),
        mode: cfg.mode.to_string(),
        next: next.to_string(),
        report: ReportJson::from_report(report),
    };
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string(&cp)?)
        .with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn process_chunk(
    cfg: &RunConfig,
    checker: Option<&EquivalenceChecker>,
    lo: u128,
    hi: u128,
) -> anyhow::Result<CensusReport> {
    Ok(match (&cfg.mode, checker) {
        (Mode::Exhaustive, Some(c)) => verify_index_range(c, lo..hi)?,
        (Mode::Sampled { seed, .. }, Some(c)) => {
            verify_sample_range(c, *seed, lo as u64..hi as u64)?
        }
        (Mode::Exhaustive, None) => count_indices(cfg.n, lo..hi)?,
        (Mode::Sampled { seed, .. }, None) => {
            let (n, seed) = (cfg.n, *seed);
            count_indices(
                n,
                (lo as u64..hi as u64).map(move |i| sample_index(n, seed, i).expect("checked")),
            )?
        }
    })
}

/// Runs a census, optionally in parallel and resumable. Results do not
/// depend on `jobs` or on where a run was interrupted.
pub fn run(cfg: &RunConfig) -> anyhow::Result<CensusReport> {
    let (start, end) = position_range(cfg)?;
    let checker = match cfg.task {
        Task::Verify(t) => Some(EquivalenceChecker::new(t, cfg.n)?),
        Task::Count => None,
    };
    let (mut pos, mut report) = match &cfg.resume {
        Some(p) => load_checkpoint(p, cfg)?,
        None => (start, empty_report(cfg)),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .context("building thread pool")?;
    while pos < end {
        let block_end = end.min(pos + CHECKPOINT_INTERVAL);
        let chunks: Vec<(u128, u128)> = (0..)
            .map(|k| pos + k * WORK_CHUNK)
            .take_while(|&lo| lo < block_end)
            .map(|lo| (lo, block_end.min(lo + WORK_CHUNK)))
            .collect();
        let parts: Vec<CensusReport> = pool.install(|| {
            chunks
                .par_iter()
                .map(|&(lo, hi)| process_chunk(cfg, checker.as_ref(), lo, hi))
                .collect::<anyhow::Result<Vec<_>>>()
        })?;
        for p in parts {
            report.merge(p);
        }
        pos = block_end;
        if let Some(path) = &cfg.checkpoint {
            save_checkpoint(path, cfg, pos, &report)?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dmkit_core::census::verify_equivalence;

    fn cfg(task: Task, mode: Mode, jobs: usize) -> RunConfig {
        RunConfig {
            n: 3,
            task,
            mode,
            jobs: Some(jobs),
            checkpoint: None,
            resume: None,
            long_run: false,
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = verify_equivalence(3, "exdelta", Mode::Exhaustive).unwrap();
        for jobs in [1, 4] {
            let par = run(&cfg(
                Task::Verify(TheoremId::ExDelta),
                Mode::Exhaustive,
                jobs,
            ))
            .unwrap();
            assert_eq!(par, seq);
        }
    }

    #[test]
    fn resumes_from_checkpoint() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let mode = Mode::Sampled {
            seed: 3,
            count: 500,
        };
        let full = run(&cfg(Task::Count, mode, 2)).unwrap();
        // a checkpoint taken midway, as an interrupted run would leave it
        let mut c = cfg(Task::Count, mode, 2);
        let partial = process_chunk(&c, None, 0, 200).unwrap();
        save_checkpoint(&path, &c, 200, &partial).unwrap();
        c.resume = Some(path.clone());
        assert_eq!(run(&c).unwrap(), full);
        let mut wrong = cfg(Task::Verify(TheoremId::ExDelta), mode, 1);
        wrong.resume = Some(path);
        assert!(run(&wrong).is_err());
    }

    #[test]
    fn long_run_gate() {
        let mut c = cfg(Task::Verify(TheoremId::ExDelta), Mode::Exhaustive, 1);
        c.n = 5;
        assert!(run(&c).is_err());
    }
}
