use std::num::NonZeroUsize;
use std::thread;

use leo_doppler_core::validation::{
    BlockResult, ComparisonReport, ReportGrid, Scenario, ScenarioConfig,
};

use crate::error::Result;

/// Runs a scenario on `threads` worker threads.
///
/// Block `k` goes to worker `k % threads`; results are merged in block order,
/// so the report is identical for every thread count.
pub fn run_scenario_parallel(
    config: &ScenarioConfig,
    grid: ReportGrid,
    threads: NonZeroUsize,
) -> Result<ComparisonReport> {
    let scenario = Scenario::new(*config)?;
    let blocks = scenario.block_count();
    let workers = (threads.get() as u64).min(blocks.max(1));

    let mut per_worker: Vec<Vec<(u64, BlockResult)>> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let scenario = &scenario;
                s.spawn(move || {
                    (w..blocks)
                        .step_by(workers as usize)
                        .map(|b| (b, scenario.simulate_block(b)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation worker panicked"))
            .collect()
    });

    let mut ordered: Vec<(u64, BlockResult)> = per_worker.drain(..).flatten().collect();
    ordered.sort_by_key(|(b, _)| *b);
    Ok(ComparisonReport::from_blocks(
        &scenario,
        ordered.into_iter().map(|(_, r)| r),
        grid,
    )?)
}
