//! Abstract regular neighborhoods and their dual graphs.
//!
//! Near a branch every attachment of degree `d` contributes `|d|` local
//! sheets ("prongs") of sign `sgn d`. Fixing a cyclic order of the prongs at
//! every branch determines how the parallel copies `e × {+1}` and
//! `e × {-1}` of the sectors close up into surfaces `R_j`; those surfaces are
//! the vertices of the abstract dual graph and each sector is a directed edge
//! from the surface containing its `-` copy to the one containing its `+`
//! copy.
//!
//! Face rule: in the transverse disk of a branch, a prong of sign `+1` has
//! the `+` copy on its counterclockwise face and the `-` copy on its
//! clockwise face; sign `-1` swaps them. Between consecutive prongs `p`, `q`
//! (`q` counterclockwise after `p`) an annulus joins the counterclockwise
//! face of `p` to the clockwise face of `q`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::model::{ModelError, MultibranchedSurface};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NeighborhoodError {
    #[error("number of cyclic assignments does not fit in 128 bits")]
    TooManyAssignments,
    #[error("assignment does not list every prong of branch {branch} exactly once")]
    MalformedAssignment { branch: usize },
    #[error("non-orientable closed surface produced while gluing at branch {branch}")]
    Orientation { branch: usize },
}

/// Which parallel copy of a sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }

    fn unit(self) -> i8 {
        match self {
            Side::Minus => -1,
            Side::Plus => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Side::Minus => '-',
            Side::Plus => '+',
        }
    }
}

/// `e × {+1}` or `e × {-1}` for sector index `sector`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideNode {
    pub sector: usize,
    pub side: Side,
}

impl SideNode {
    pub fn new(sector: usize, side: Side) -> Self {
        SideNode { sector, side }
    }

    fn slot(self) -> usize {
        2 * self.sector + (self.side == Side::Plus) as usize
    }

    fn from_slot(slot: usize) -> Self {
        SideNode {
            sector: slot / 2,
            side: if slot % 2 == 1 { Side::Plus } else { Side::Minus },
        }
    }

    pub fn label(self, x: &MultibranchedSurface) -> String {
        let mut s = x.sectors()[self.sector].id.clone();
        s.push(self.side.symbol());
        s
    }
}

/// One local sheet of a sector at a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prong {
    pub branch: usize,
    pub sector: usize,
    /// Position of the attachment in the sector's boundary list.
    pub attachment: usize,
    /// In `0..|degree|`.
    pub sheet: u64,
    /// `+1` or `-1`, the sign of the attachment degree.
    pub sign: i8,
}

impl Prong {
    /// Copy facing counterclockwise in the transverse disk.
    pub fn face_ccw(&self) -> SideNode {
        let side = if self.sign > 0 { Side::Plus } else { Side::Minus };
        SideNode::new(self.sector, side)
    }

    /// Copy facing clockwise in the transverse disk.
    pub fn face_cw(&self) -> SideNode {
        let ccw = self.face_ccw();
        SideNode::new(self.sector, ccw.side.flip())
    }
}

/// Whether the orientation carried by `face` (the sector orientation on the
/// `+` copy, its reverse on the `-` copy) has its normal pointing the way the
/// face looks (`facing = +1` counterclockwise, `-1` clockwise).
fn normal_points_out(prong: &Prong, face: SideNode, facing: i8) -> bool {
    // sign +1 sheets have their positive normal counterclockwise
    let normal = prong.sign * face.side.unit();
    normal == facing
}

/// Prongs at branch index `branch`, ordered by sector, attachment, sheet.
pub fn prongs_by_index(x: &MultibranchedSurface, branch: usize) -> Vec<Prong> {
    let mut out = Vec::new();
    for (s, sector) in x.sectors().iter().enumerate() {
        for (ai, a) in sector.boundary.iter().enumerate() {
            if a.branch != branch {
                continue;
            }
            let sign = if a.degree > 0 { 1 } else { -1 };
            for sheet in 0..a.degree.unsigned_abs() {
                out.push(Prong {
                    branch,
                    sector: s,
                    attachment: ai,
                    sheet,
                    sign,
                });
            }
        }
    }
    out
}

pub fn prongs_at(x: &MultibranchedSurface, branch: &str) -> Result<Vec<Prong>, ModelError> {
    let b = x
        .branch_index(branch)
        .ok_or_else(|| ModelError::UnknownBranch(branch.into()))?;
    Ok(prongs_by_index(x, b))
}

fn factorial(n: u128) -> Option<u128> {
    (1..=n).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// `Π_l (k(l) - 1)!`, computed from degrees alone; `None` past `u128`.
pub fn assignment_count(x: &MultibranchedSurface) -> Option<u128> {
    (0..x.branch_count()).try_fold(1u128, |acc, b| {
        let k = x.prong_count(b);
        acc.checked_mul(factorial(k.saturating_sub(1))?)
    })
}

/// Cyclic order of the prongs at every branch. Each order lists indices into
/// [`prongs_by_index`] and, in canonical form, starts with prong 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicAssignment {
    pub orders: Vec<Vec<usize>>,
}

impl CyclicAssignment {
    /// Rotates the order at `branch` left by `by` places. The result is
    /// generally not canonical; gluing does not care.
    pub fn rotated(&self, branch: usize, by: usize) -> Self {
        let mut out = self.clone();
        let o = &mut out.orders[branch];
        if !o.is_empty() {
            let by = by % o.len();
            o.rotate_left(by);
        }
        out
    }

    /// Mirror image of the cyclic order at `branch`, in canonical form.
    pub fn reflected(&self, branch: usize) -> Self {
        let mut out = self.clone();
        out.orders[branch].reverse();
        out.canonicalize();
        out
    }

    /// Rotates every order so that its least prong comes first.
    pub fn canonicalize(&mut self) {
        for o in &mut self.orders {
            if let Some(pos) = o.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) {
                o.rotate_left(pos);
            }
        }
    }
}

/// All cyclic assignments of a surface, indexable for parallel partitioning.
///
/// Index order: the last branch varies fastest; within a branch the orders
/// `0, σ(1), …, σ(k-1)` follow the lexicographic order of `σ`.
#[derive(Clone, Debug)]
pub struct AssignmentSpace {
    prongs: Vec<Vec<Prong>>,
    radices: Vec<u128>,
    count: u128,
    sectors: usize,
}

impl AssignmentSpace {
    pub fn new(x: &MultibranchedSurface) -> Result<Self, NeighborhoodError> {
        let count = assignment_count(x).ok_or(NeighborhoodError::TooManyAssignments)?;
        let prongs: Vec<Vec<Prong>> = (0..x.branch_count()).map(|b| prongs_by_index(x, b)).collect();
        let radices = prongs
            .iter()
            .map(|p| factorial(p.len().saturating_sub(1) as u128).unwrap_or(u128::MAX))
            .collect();
        Ok(AssignmentSpace {
            prongs,
            radices,
            count,
            sectors: x.sector_count(),
        })
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn prongs(&self, branch: usize) -> &[Prong] {
        &self.prongs[branch]
    }

    /// Assignment number `index` (`index < count`).
    pub fn get(&self, mut index: u128) -> CyclicAssignment {
        assert!(index < self.count, "assignment index out of range");
        let mut orders = alloc::vec![Vec::new(); self.prongs.len()];
        for b in (0..self.prongs.len()).rev() {
            let r = index % self.radices[b];
            index /= self.radices[b];
            orders[b] = unrank_cycle(self.prongs[b].len(), r);
        }
        CyclicAssignment { orders }
    }

    pub fn iter(&self) -> Assignments<'_> {
        self.range(0, self.count)
    }

    /// Assignments with index in `start..end`.
    pub fn range(&self, start: u128, end: u128) -> Assignments<'_> {
        Assignments {
            space: self,
            next: start,
            end: end.min(self.count),
        }
    }

    /// Annulus joins `(face_ccw(p), face_cw(q))` for every pair of
    /// consecutive prongs, branch by branch, in cyclic order.
    pub fn joins(&self, a: &CyclicAssignment) -> Result<Vec<(SideNode, SideNode)>, NeighborhoodError> {
        let mut out = Vec::new();
        self.for_each_join(a, |_, p, q| {
            out.push((p.face_ccw(), q.face_cw()));
            true
        })?;
        Ok(out)
    }

    fn for_each_join(
        &self,
        a: &CyclicAssignment,
        mut f: impl FnMut(usize, &Prong, &Prong) -> bool,
    ) -> Result<(), NeighborhoodError> {
        if a.orders.len() != self.prongs.len() {
            return Err(NeighborhoodError::MalformedAssignment {
                branch: a.orders.len().min(self.prongs.len()),
            });
        }
        for (b, order) in a.orders.iter().enumerate() {
            let prongs = &self.prongs[b];
            if !is_permutation(order, prongs.len()) {
                return Err(NeighborhoodError::MalformedAssignment { branch: b });
            }
            for (i, &pi) in order.iter().enumerate() {
                if !f(b, &prongs[pi], &prongs[order[(i + 1) % order.len()]]) {
                    return Err(NeighborhoodError::Orientation { branch: b });
                }
            }
        }
        Ok(())
    }

    /// Builds the dual graph for one assignment, checking along the way that
    /// every glued surface is orientable.
    pub fn glue(&self, a: &CyclicAssignment) -> Result<DualGraph, NeighborhoodError> {
        let mut uf = UnionFind::new(2 * self.sectors);
        self.for_each_join(a, |_, p, q| {
            let from = p.face_ccw();
            let to = q.face_cw();
            // the wedge from p to q is seen counterclockwise from p, clockwise from q
            let odd = normal_points_out(p, from, 1) != normal_points_out(q, to, -1);
            uf.union_with_parity(from.slot(), to.slot(), odd)
        })?;
        let mut groups: BTreeMap<usize, Vec<SideNode>> = BTreeMap::new();
        for slot in 0..2 * self.sectors {
            groups.entry(uf.root(slot)).or_default().push(SideNode::from_slot(slot));
        }
        Ok(DualGraph::from_partition(self.sectors, groups.into_values().collect()))
    }
}

fn is_permutation(order: &[usize], len: usize) -> bool {
    if order.len() != len {
        return false;
    }
    let mut seen = alloc::vec![false; len];
    order.iter().all(|&i| i < len && !core::mem::replace(&mut seen[i], true))
}

/// `r`-th (lexicographic) cyclic order of `k` items with item 0 fixed first.
fn unrank_cycle(k: usize, mut r: u128) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    let mut pool: Vec<usize> = (1..k).collect();
    let mut out = Vec::with_capacity(k);
    out.push(0);
    for i in 0..k - 1 {
        let f = factorial((k - 2 - i) as u128).unwrap_or(u128::MAX);
        let d = (r / f) as usize;
        r %= f;
        out.push(pool.remove(d));
    }
    out
}

pub struct Assignments<'a> {
    space: &'a AssignmentSpace,
    next: u128,
    end: u128,
}

impl Iterator for Assignments<'_> {
    type Item = CyclicAssignment;

    fn next(&mut self) -> Option<CyclicAssignment> {
        if self.next >= self.end {
            return None;
        }
        let a = self.space.get(self.next);
        self.next += 1;
        Some(a)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.end - self.next).ok();
        (n.unwrap_or(usize::MAX), n)
    }
}

/// Enumerates every cyclic assignment lazily, in index order.
pub fn enumerate_assignments(
    x: &MultibranchedSurface,
) -> Result<impl Iterator<Item = CyclicAssignment>, NeighborhoodError> {
    let space = AssignmentSpace::new(x)?;
    let count = space.count();
    Ok((0..count).map(move |i| space.get(i)))
}

/// Dual graph glue for a single assignment.
pub fn glue(x: &MultibranchedSurface, a: &CyclicAssignment) -> Result<DualGraph, NeighborhoodError> {
    AssignmentSpace::new(x)?.glue(a)
}

/// Abstract dual graph. Vertices are the glued closed surfaces, each given
/// by its sorted set of side nodes; vertices are sorted by their least side
/// node, so equal graphs compare equal. Edge `i` belongs to sector `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualGraph {
    vertices: Vec<Vec<SideNode>>,
    edges: Vec<(usize, usize)>,
    components: usize,
}

impl DualGraph {
    /// Canonicalizes a partition of all `2 · sector_count` side nodes.
    ///
    /// # Panics
    /// If the parts do not partition the side nodes.
    pub fn from_partition(sector_count: usize, mut vertices: Vec<Vec<SideNode>>) -> Self {
        for v in &mut vertices {
            v.sort_unstable();
        }
        vertices.retain(|v| !v.is_empty());
        vertices.sort_unstable();

        let mut vertex_of = alloc::vec![usize::MAX; 2 * sector_count];
        for (vi, v) in vertices.iter().enumerate() {
            for n in v {
                assert!(n.sector < sector_count, "side node out of range");
                assert_eq!(vertex_of[n.slot()], usize::MAX, "side node listed twice");
                vertex_of[n.slot()] = vi;
            }
        }
        assert!(vertex_of.iter().all(|&v| v != usize::MAX), "side node missing");

        let edges: Vec<(usize, usize)> = (0..sector_count)
            .map(|s| {
                (
                    vertex_of[SideNode::new(s, Side::Minus).slot()],
                    vertex_of[SideNode::new(s, Side::Plus).slot()],
                )
            })
            .collect();

        let mut uf = UnionFind::new(vertices.len());
        let mut components = vertices.len();
        for &(t, h) in &edges {
            if uf.union(t, h) {
                components -= 1;
            }
        }
        DualGraph {
            vertices,
            edges,
            components,
        }
    }

    pub fn vertices(&self) -> &[Vec<SideNode>] {
        &self.vertices
    }

    /// `(tail, head)` vertex indices, one per sector.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    /// First Betti number `E - V + C`.
    pub fn betti(&self) -> usize {
        self.edges.len() + self.components - self.vertices.len()
    }

    pub fn is_bouquet(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn loops(&self) -> usize {
        self.edges.iter().filter(|(t, h)| t == h).count()
    }

    /// Canonical text key, e.g. `e-,e+` or `e1+,e2+|e1-,e2-`.
    pub fn key_string(&self, x: &MultibranchedSurface) -> String {
        let mut s = String::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            if vi > 0 {
                s.push('|');
            }
            for (ni, n) in v.iter().enumerate() {
                if ni > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}{}", x.sectors()[n.sector].id, n.side.symbol());
            }
        }
        s
    }
}

/// One distinct dual graph with the least-index assignment producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraphClass {
    pub graph: DualGraph,
    pub representative: CyclicAssignment,
    pub representative_index: u128,
    pub multiplicity: u128,
}

/// Deduplicates glued graphs. Merging collectors built over disjoint index
/// ranges gives the same result regardless of how the ranges were split.
#[derive(Clone, Debug, Default)]
pub struct DualGraphCollector {
    classes: BTreeMap<DualGraph, (u128, CyclicAssignment, u128)>,
    assignments: u128,
}

impl DualGraphCollector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, index: u128, assignment: CyclicAssignment, graph: DualGraph) {
        self.assignments += 1;
        let entry = self.classes.entry(graph).or_insert((index, assignment.clone(), 0));
        if index < entry.0 {
            entry.0 = index;
            entry.1 = assignment;
        }
        entry.2 += 1;
    }

    pub fn merge(mut self, other: DualGraphCollector) -> Self {
        self.assignments += other.assignments;
        for (g, (idx, a, mult)) in other.classes {
            match self.classes.get_mut(&g) {
                Some(e) => {
                    if idx < e.0 {
                        e.0 = idx;
                        e.1 = a;
                    }
                    e.2 += mult;
                }
                None => {
                    self.classes.insert(g, (idx, a, mult));
                }
            }
        }
        self
    }

    /// Glues every assignment with index in `start..end`.
    pub fn collect_range(
        space: &AssignmentSpace,
        start: u128,
        end: u128,
    ) -> Result<Self, NeighborhoodError> {
        let mut c = Self::new();
        for i in start..end.min(space.count()) {
            let a = space.get(i);
            let g = space.glue(&a)?;
            c.insert(i, a, g);
        }
        Ok(c)
    }

    pub fn assignments(&self) -> u128 {
        self.assignments
    }

    /// Distinct graphs in canonical order.
    pub fn into_classes(self) -> Vec<DualGraphClass> {
        self.classes
            .into_iter()
            .map(|(graph, (representative_index, representative, multiplicity))| DualGraphClass {
                graph,
                representative,
                representative_index,
                multiplicity,
            })
            .collect()
    }
}

/// Every distinct abstract dual graph of `x`, in canonical order, with
/// multiplicities summing to [`assignment_count`].
pub fn enumerate_dual_graphs(x: &MultibranchedSurface) -> Result<Vec<DualGraphClass>, NeighborhoodError> {
    let space = AssignmentSpace::new(x)?;
    Ok(DualGraphCollector::collect_range(&space, 0, space.count())?.into_classes())
}
