//! Generators for the classical examples and the bipartite connectivity
//! construction used to show that every dual graph of `X₂(n)` is a bouquet.
//!
//! * `rp2`: the real projective plane, one disk attached with degree 2.
//! * `x1(d₁, …)`: one planar sector with one boundary circle per `dᵢ`, all on
//!   a single branch.
//! * `x2(n)`: sector `eᵢ` is a disk-with-holes attached with degree `+1` to
//!   every branch `lⱼ`, `j ≠ i`; degree matrix has 0 diagonal and 1 elsewhere.
//! * `x3(k₁, …, kₙ)`: sector `eᵢ` covers `lᵢ` with degree `kᵢ` and
//!   `lᵢ₊₁` with degree `-1` (indices mod n).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::model::{ModelError, MultibranchedSurface};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("x1 needs at least one degree")]
    EmptyDegrees,
    #[error("degrees must be nonzero")]
    ZeroDegree,
    #[error("x2 needs n >= 2, got {0}")]
    X2TooSmall(usize),
    #[error("x3 needs at least two multiplicities, got {0}")]
    X3TooShort(usize),
    #[error("x3 multiplicities must be >= 1, got {0}")]
    X3Multiplicity(i64),
    #[error("malformed circular permutation for m = {m}: {reason}")]
    Permutation { m: usize, reason: &'static str },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A parameterized example surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Rp2,
    X1(Vec<i64>),
    X2(usize),
    X3(Vec<i64>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<MultibranchedSurface, FamilyError> {
        match self {
            FamilySpec::Rp2 => Ok(gen_rp2()),
            FamilySpec::X1(d) => gen_x1(d),
            FamilySpec::X2(n) => gen_x2(*n),
            FamilySpec::X3(k) => gen_x3(k),
        }
    }

    /// For `x3`, whether `k₁ ⋯ kₙ ≥ 3`, the range where the surface is
    /// known to be critical. `None` for other families.
    pub fn x3_in_critical_range(&self) -> Option<bool> {
        match self {
            FamilySpec::X3(k) => Some(
                k.iter()
                    .try_fold(1i64, |acc, &v| acc.checked_mul(v))
                    .is_none_or(|p| p >= 3),
            ),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        fn join(v: &[i64]) -> String {
            v.iter().map(|d| format!("{d}")).collect::<Vec<_>>().join(",")
        }
        match self {
            FamilySpec::Rp2 => "rp2".into(),
            FamilySpec::X1(d) => format!("x1 {}", join(d)),
            FamilySpec::X2(n) => format!("x2 {n}"),
            FamilySpec::X3(k) => format!("x3 {}", join(k)),
        }
    }
}

pub fn gen_rp2() -> MultibranchedSurface {
    gen_x1(&[2]).expect("valid parameters")
}

pub fn gen_x1(degrees: &[i64]) -> Result<MultibranchedSurface, FamilyError> {
    if degrees.is_empty() {
        return Err(FamilyError::EmptyDegrees);
    }
    if degrees.contains(&0) {
        return Err(FamilyError::ZeroDegree);
    }
    let mut b = MultibranchedSurface::builder();
    b.branch("l")?.sector("e", 0)?;
    for &d in degrees {
        b.attach("e", "l", d)?;
    }
    Ok(b.build()?)
}

/// `X₂(n)`. For `n = 2` this is two disjoint disks; the result then reports
/// `is_connected() == false`.
pub fn gen_x2(n: usize) -> Result<MultibranchedSurface, FamilyError> {
    if n < 2 {
        return Err(FamilyError::X2TooSmall(n));
    }
    let mut b = MultibranchedSurface::builder();
    for j in 1..=n {
        b.branch(&format!("l{j}"))?;
    }
    for i in 1..=n {
        let e = format!("e{i}");
        b.sector(&e, 0)?;
        for j in (1..=n).filter(|&j| j != i) {
            b.attach(&e, &format!("l{j}"), 1)?;
        }
    }
    Ok(b.build_allowing_disconnected()?)
}

pub fn gen_x3(k: &[i64]) -> Result<MultibranchedSurface, FamilyError> {
    let n = k.len();
    if n < 2 {
        return Err(FamilyError::X3TooShort(n));
    }
    if let Some(&bad) = k.iter().find(|&&v| v < 1) {
        return Err(FamilyError::X3Multiplicity(bad));
    }
    let mut b = MultibranchedSurface::builder();
    for j in 1..=n {
        b.branch(&format!("l{j}"))?;
    }
    for (i, &ki) in k.iter().enumerate() {
        let e = format!("e{}", i + 1);
        b.sector(&e, 0)?;
        b.attach(&e, &format!("l{}", i + 1), ki)?;
        b.attach(&e, &format!("l{}", (i + 1) % n + 1), -1)?;
    }
    Ok(b.build()?)
}

/// Undirected multigraph on `vertex_count` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges with endpoints ordered and the list sorted.
    pub fn normalized_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e
    }
}

pub fn is_connected(g: &SimpleGraph) -> bool {
    if g.vertex_count == 0 {
        return true;
    }
    let mut uf = UnionFind::new(g.vertex_count);
    let mut parts = g.vertex_count;
    for &(a, b) in &g.edges {
        if uf.union(a, b) {
            parts -= 1;
        }
    }
    parts == 1
}

/// Vertex index of `v_i^+` (1-based `i`) in [`bipartite_graph`].
pub fn plus_vertex(i: usize) -> usize {
    i - 1
}

/// Vertex index of `v_i^-` (1-based `i`) in a graph with `n` of each kind.
pub fn minus_vertex(n: usize, i: usize) -> usize {
    n + i - 1
}

/// The bipartite graph on `v₁⁺…vₙ⁺, v₁⁻…vₙ⁻`: for every `m`, the circular
/// permutation `b₁ … bₙ₋₁` of `{1..n} \ {m}` (given as `perms[m - 1]`)
/// contributes the edges `{v_{bₖ}⁺, v_{bₖ₊₁}⁻}`, cyclically.
///
/// For `n = 2` each cycle has length one and yields `{v_b⁺, v_b⁻}`.
pub fn bipartite_graph(perms: &[Vec<usize>]) -> Result<SimpleGraph, FamilyError> {
    let n = perms.len();
    let mut edges = Vec::new();
    for (mi, perm) in perms.iter().enumerate() {
        let m = mi + 1;
        if perm.len() + 1 != n {
            return Err(FamilyError::Permutation { m, reason: "wrong length" });
        }
        let mut seen = alloc::vec![false; n + 1];
        for &b in perm {
            if b == 0 || b > n {
                return Err(FamilyError::Permutation { m, reason: "entry out of range" });
            }
            if b == m {
                return Err(FamilyError::Permutation { m, reason: "contains m" });
            }
            if core::mem::replace(&mut seen[b], true) {
                return Err(FamilyError::Permutation { m, reason: "repeated entry" });
            }
        }
        for (k, &b) in perm.iter().enumerate() {
            let next = perm[(k + 1) % perm.len()];
            edges.push((plus_vertex(b), minus_vertex(n, next)));
        }
    }
    Ok(SimpleGraph {
        vertex_count: 2 * n,
        edges,
    })
}
