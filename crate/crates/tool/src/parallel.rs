//! Multi-threaded evaluation with the same result as the sequential one.
//!
//! The assignment index range is cut into fixed-size chunks; each chunk is
//! glued into its own collector and the collectors are merged. Merging keeps
//! the least index per graph and adds multiplicities, so the result does not
//! depend on scheduling. Graph checks then run in canonical graph order.

use mbs_core::obstruction::{check_budget, check_dual_graph};
use mbs_core::{AssignmentSpace, DualGraphCollector, EvalError, EvalOptions, GraphReport, MultibranchedSurface, Verdict};
use rayon::prelude::*;

const CHUNK: u128 = 4096;

/// `jobs = 0` uses rayon's default thread count.
pub fn evaluate(x: &MultibranchedSurface, options: &EvalOptions, jobs: usize) -> Result<Verdict, EvalError> {
    let assignments = check_budget(x, options)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| evaluate_in_pool(x, options, assignments))
}

fn evaluate_in_pool(x: &MultibranchedSurface, options: &EvalOptions, assignments: u128) -> Result<Verdict, EvalError> {
    let space = AssignmentSpace::new(x)?;
    let chunks = space.count().div_ceil(CHUNK);
    let collector = (0..chunks)
        .into_par_iter()
        .map(|c| DualGraphCollector::collect_range(&space, c * CHUNK, (c + 1) * CHUNK))
        .try_reduce(DualGraphCollector::new, |a, b| Ok(a.merge(b)))?;
    debug_assert_eq!(collector.assignments(), assignments);

    let reports = collector
        .into_classes()
        .into_par_iter()
        .map(|class| {
            let outcome = check_dual_graph(x, &class.graph, options)?;
            Ok(GraphReport::new(x, class, outcome))
        })
        .collect::<Result<Vec<_>, EvalError>>()?;
    Ok(Verdict::from_reports(x, assignments, reports, *options))
}
