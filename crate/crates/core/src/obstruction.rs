//! The obstruction itself.
//!
//! For a dual graph `G` with first Betti number `m` and a surface with `n`
//! branches, `G` is obstructed when `m > n` (condition 1) or when some
//! spanning forest `T` leaves an `m × n` algebraic degree matrix `A_T` whose
//! maximal minors have gcd different from 1 (condition 2; gcd 0 counts). A
//! connected surface all of whose abstract dual graphs are obstructed does
//! not embed in any homology 3-sphere.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::linalg::{self, IntMatrix, LinalgError};
use crate::model::MultibranchedSurface;
use crate::neighborhood::{
    assignment_count, enumerate_dual_graphs, CyclicAssignment, DualGraph, DualGraphClass,
    NeighborhoodError,
};
use crate::unionfind::UnionFind;

/// Edge set (sector indices, ascending) of a spanning forest: `V - C`
/// non-loop edges with no cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SpanningForest {
    pub edges: Vec<usize>,
}

impl SpanningForest {
    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// Checks that this is a spanning forest of `g`.
    pub fn is_spanning_forest_of(&self, g: &DualGraph) -> bool {
        if self.edges.len() != g.vertex_count() - g.components()
            || self.edges.windows(2).any(|w| w[0] >= w[1])
        {
            return false;
        }
        let mut uf = UnionFind::new(g.vertex_count());
        self.edges.iter().all(|&e| {
            e < g.edge_count() && {
                let (t, h) = g.edges()[e];
                uf.union(t, h)
            }
        })
    }
}

/// Calls `f` on every spanning forest of `g` until it returns `false`.
///
/// Forests are produced in lexicographic order of their edge lists. Loops are
/// never used and parallel edges count as distinct.
pub fn for_each_spanning_forest(g: &DualGraph, mut f: impl FnMut(&SpanningForest) -> bool) {
    let candidates: Vec<usize> = (0..g.edge_count())
        .filter(|&e| g.edges()[e].0 != g.edges()[e].1)
        .collect();
    let need = g.vertex_count() - g.components();
    let mut chosen = SpanningForest::default();
    let uf = UnionFind::new(g.vertex_count());
    forests_from(g, &candidates, 0, need, &mut chosen, uf, &mut f);
}

fn forests_from(
    g: &DualGraph,
    candidates: &[usize],
    pos: usize,
    need: usize,
    chosen: &mut SpanningForest,
    uf: UnionFind,
    f: &mut impl FnMut(&SpanningForest) -> bool,
) -> bool {
    if chosen.edges.len() == need {
        return f(chosen);
    }
    if candidates.len() - pos < need - chosen.edges.len() {
        return true;
    }
    let e = candidates[pos];
    let (t, h) = g.edges()[e];
    let mut with = uf.clone();
    if with.union(t, h) {
        chosen.edges.push(e);
        let go_on = forests_from(g, candidates, pos + 1, need, chosen, with, f);
        chosen.edges.pop();
        if !go_on {
            return false;
        }
    }
    forests_from(g, candidates, pos + 1, need, chosen, uf, f)
}

pub fn spanning_forests(g: &DualGraph) -> Vec<SpanningForest> {
    let mut out = Vec::new();
    for_each_spanning_forest(g, |t| {
        out.push(t.clone());
        true
    });
    out
}

/// Integer matrix of algebraic degrees with its row (sector) labels.
/// Columns are all branches in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMatrix {
    pub matrix: IntMatrix,
    /// Sector index of each row.
    pub sectors: Vec<usize>,
}

impl DegreeMatrix {
    fn for_sectors(x: &MultibranchedSurface, sectors: Vec<usize>) -> Self {
        let n = x.branch_count();
        let rows: Vec<Vec<i64>> = sectors
            .iter()
            .map(|&s| (0..n).map(|b| x.degree_at(s, b)).collect())
            .collect();
        let matrix = IntMatrix::from_rows(n, &rows).expect("rows have n entries");
        DegreeMatrix { matrix, sectors }
    }

    /// All sectors × all branches.
    pub fn full(x: &MultibranchedSurface) -> Self {
        Self::for_sectors(x, (0..x.sector_count()).collect())
    }
}

/// `A_T`: rows for the sectors whose dual edges lie outside `forest`.
pub fn degree_matrix_rows(x: &MultibranchedSurface, forest: &SpanningForest) -> DegreeMatrix {
    let rows = (0..x.sector_count()).filter(|&s| !forest.contains(s)).collect();
    DegreeMatrix::for_sectors(x, rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `m > n`.
    Condition1,
    /// `m ≤ n` and this forest's `A_T` has maximal-minor gcd `gcd ≠ 1`.
    Condition2 {
        forest: SpanningForest,
        gcd: BigInt,
        matrix: DegreeMatrix,
    },
    /// Every checked forest gave gcd 1. `certificate` is a verified
    /// right inverse of the first forest's matrix.
    NoObstruction {
        forests_checked: u64,
        forest: SpanningForest,
        matrix: DegreeMatrix,
        certificate: IntMatrix,
    },
    /// Disconnected candidate, not evaluated because of
    /// [`EvalOptions::assume_connected_duals`].
    Skipped,
}

impl Outcome {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Outcome::Condition1 | Outcome::Condition2 { .. })
    }

    pub fn is_evaluated(&self) -> bool {
        !matches!(self, Outcome::Skipped)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Skip dual graphs that are not connected.
    pub assume_connected_duals: bool,
    /// Only look at the first spanning forest of each graph. Obstructions
    /// found this way are still valid; more graphs may come out unobstructed.
    pub single_forest: bool,
    /// Maximum number of cyclic assignments to enumerate.
    pub budget: u128,
}

pub const DEFAULT_BUDGET: u128 = 1_000_000;

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            assume_connected_duals: false,
            single_forest: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("{} cyclic assignments exceed the budget of {budget}", match .assignments { Some(n) => alloc::format!("{n}"), None => alloc::string::String::from("more than 2^128") })]
    BudgetExceeded { assignments: Option<u128>, budget: u128 },
    #[error(transparent)]
    Neighborhood(#[from] NeighborhoodError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Applies conditions (1) and (2) to one dual graph of `x`.
pub fn check_dual_graph(
    x: &MultibranchedSurface,
    g: &DualGraph,
    options: &EvalOptions,
) -> Result<Outcome, LinalgError> {
    if options.assume_connected_duals && !g.is_connected() {
        return Ok(Outcome::Skipped);
    }
    if g.betti() > x.branch_count() {
        return Ok(Outcome::Condition1);
    }

    let mut result: Option<Result<Outcome, LinalgError>> = None;
    let mut first: Option<(SpanningForest, DegreeMatrix, IntMatrix)> = None;
    let mut checked = 0u64;
    for_each_spanning_forest(g, |forest| {
        let step = (|| {
            let a = degree_matrix_rows(x, forest);
            let gcd = linalg::minor_gcd(&a.matrix)?;
            if !gcd.is_one() {
                verify_witness(g, forest, &a, &gcd)?;
                return Ok(Some(Outcome::Condition2 {
                    forest: forest.clone(),
                    gcd,
                    matrix: a,
                }));
            }
            let b = linalg::right_inverse_certificate(&a.matrix)?
                .ok_or(LinalgError::Verification("gcd 1 but no right inverse"))?;
            checked += 1;
            if first.is_none() {
                first = Some((forest.clone(), a, b));
            }
            Ok(None)
        })();
        match step {
            Ok(None) => !options.single_forest,
            Ok(Some(o)) => {
                result = Some(Ok(o));
                false
            }
            Err(e) => {
                result = Some(Err(e));
                false
            }
        }
    });
    if let Some(r) = result {
        return r;
    }
    let (forest, matrix, certificate) =
        first.ok_or(LinalgError::Verification("graph without spanning forest"))?;
    Ok(Outcome::NoObstruction {
        forests_checked: checked,
        forest,
        matrix,
        certificate,
    })
}

/// Re-derives a condition (2) witness by the independent Smith-form route.
fn verify_witness(
    g: &DualGraph,
    forest: &SpanningForest,
    a: &DegreeMatrix,
    gcd: &BigInt,
) -> Result<(), LinalgError> {
    if !forest.is_spanning_forest_of(g) {
        return Err(LinalgError::Verification("witness is not a spanning forest"));
    }
    if a.matrix.rows() != g.betti() {
        return Err(LinalgError::Verification("row count differs from Betti number"));
    }
    let snf = linalg::smith_normal_form(&a.matrix)?;
    if snf.determinantal_divisor(a.matrix.rows()) != *gcd {
        return Err(LinalgError::Verification("minor gcd disagrees with Smith form"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub graph: DualGraph,
    pub representative: CyclicAssignment,
    pub representative_index: u128,
    pub multiplicity: u128,
    /// First Betti number of the graph.
    pub m: usize,
    /// Number of branches.
    pub n: usize,
    pub outcome: Outcome,
}

impl GraphReport {
    pub fn new(x: &MultibranchedSurface, class: DualGraphClass, outcome: Outcome) -> Self {
        GraphReport {
            m: class.graph.betti(),
            n: x.branch_count(),
            graph: class.graph,
            representative: class.representative,
            representative_index: class.representative_index,
            multiplicity: class.multiplicity,
            outcome,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Does not embed in S³ nor in any homology 3-sphere.
    NotEmbeddable,
    /// Some candidate dual graph is unobstructed; embeddability undecided.
    Inconclusive,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::NotEmbeddable => "NOT_EMBEDDABLE",
            Decision::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    /// One per distinct dual graph, in canonical order.
    pub reports: Vec<GraphReport>,
    pub assignments: u128,
    pub surface_connected: bool,
    pub options: EvalOptions,
}

impl Verdict {
    /// `NotEmbeddable` iff the surface is connected and every evaluated
    /// report is obstructed.
    pub fn from_reports(
        x: &MultibranchedSurface,
        assignments: u128,
        reports: Vec<GraphReport>,
        options: EvalOptions,
    ) -> Self {
        let all_obstructed = reports
            .iter()
            .filter(|r| r.outcome.is_evaluated())
            .all(|r| r.outcome.is_obstructed());
        let decision = if x.is_connected() && all_obstructed {
            Decision::NotEmbeddable
        } else {
            Decision::Inconclusive
        };
        Verdict {
            decision,
            reports,
            assignments,
            surface_connected: x.is_connected(),
            options,
        }
    }

    pub fn distinct_graphs(&self) -> usize {
        self.reports.len()
    }

    /// The first evaluated graph without an obstruction, if any.
    pub fn first_unobstructed(&self) -> Option<&GraphReport> {
        self.reports
            .iter()
            .find(|r| r.outcome.is_evaluated() && !r.outcome.is_obstructed())
    }
}

/// Fails with [`EvalError::BudgetExceeded`] if `x` has more cyclic
/// assignments than `options.budget`; returns the count otherwise.
pub fn check_budget(x: &MultibranchedSurface, options: &EvalOptions) -> Result<u128, EvalError> {
    match assignment_count(x) {
        Some(n) if n <= options.budget => Ok(n),
        other => Err(EvalError::BudgetExceeded {
            assignments: other,
            budget: options.budget,
        }),
    }
}

/// Sequential evaluation of every distinct abstract dual graph of `x`.
pub fn evaluate(x: &MultibranchedSurface, options: &EvalOptions) -> Result<Verdict, EvalError> {
    let assignments = check_budget(x, options)?;
    let mut reports = Vec::new();
    for class in enumerate_dual_graphs(x)? {
        let outcome = check_dual_graph(x, &class.graph, options)?;
        reports.push(GraphReport::new(x, class, outcome));
    }
    Ok(Verdict::from_reports(x, assignments, reports, *options))
}
