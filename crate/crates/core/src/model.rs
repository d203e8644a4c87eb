//! Combinatorial model of a compact orientable multibranched surface.
//!
//! A surface is a list of branches (singular circles) and a list of sectors
//! (compact orientable surfaces with boundary). Each boundary circle of a
//! sector covers one branch with a nonzero signed degree. Declaration order
//! of branches, sectors and attachments fixes every later ordering: degree
//! matrix rows and columns, prong order, report order.

use alloc::string::String;
use alloc::vec::Vec;

use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid identifier {0:?}: expected [A-Za-z0-9_]+")]
    InvalidId(String),
    #[error("duplicate branch id {0:?}")]
    DuplicateBranch(String),
    #[error("duplicate sector id {0:?}")]
    DuplicateSector(String),
    #[error("unknown branch {0:?}")]
    UnknownBranch(String),
    #[error("unknown sector {0:?}")]
    UnknownSector(String),
    #[error("attachment of sector {sector:?} to branch {branch:?} has degree 0")]
    ZeroDegree { sector: String, branch: String },
    #[error("no sectors")]
    NoSectors,
    #[error("sector {0:?} has no boundary attachments")]
    SectorWithoutAttachments(String),
    #[error("branch {0:?} is not referenced by any attachment")]
    UnreferencedBranch(String),
    #[error("surface is disconnected")]
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub id: String,
}

/// One boundary circle of a sector, covering `branch` with signed `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Attachment {
    /// Index into [`MultibranchedSurface::branches`].
    pub branch: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sector {
    pub id: String,
    /// Carried for documentation only; nothing downstream reads it.
    pub genus: u32,
    pub boundary: Vec<Attachment>,
}

/// A validated multibranched surface. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultibranchedSurface {
    branches: Vec<Branch>,
    sectors: Vec<Sector>,
    connected: bool,
}

pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl MultibranchedSurface {
    pub fn builder() -> SurfaceBuilder {
        SurfaceBuilder::default()
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    /// Whether the sector/branch incidence graph is connected. Always true
    /// for surfaces produced by [`SurfaceBuilder::build`].
    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn branch_index(&self, id: &str) -> Option<usize> {
        self.branches.iter().position(|b| b.id == id)
    }

    pub fn sector_index(&self, id: &str) -> Option<usize> {
        self.sectors.iter().position(|s| s.id == id)
    }

    /// Signed total degree of sector `sector` over branch `branch`, by index.
    pub fn degree_at(&self, sector: usize, branch: usize) -> i64 {
        self.sectors[sector]
            .boundary
            .iter()
            .filter(|a| a.branch == branch)
            .map(|a| a.degree)
            .sum()
    }

    /// Algebraic degree `ad_e(l)`: the sum of the degrees of every boundary
    /// circle of `sector` attached to `branch`; 0 when there are none.
    pub fn algebraic_degree(&self, sector: &str, branch: &str) -> Result<i64, ModelError> {
        let s = self
            .sector_index(sector)
            .ok_or_else(|| ModelError::UnknownSector(sector.into()))?;
        let b = self
            .branch_index(branch)
            .ok_or_else(|| ModelError::UnknownBranch(branch.into()))?;
        Ok(self.degree_at(s, b))
    }

    /// Number of prongs `k(l) = Σ |degree|` at a branch.
    pub fn prong_count(&self, branch: usize) -> u128 {
        self.sectors
            .iter()
            .flat_map(|s| s.boundary.iter())
            .filter(|a| a.branch == branch)
            .map(|a| a.degree.unsigned_abs() as u128)
            .sum()
    }

    /// Same surface with every id passed through `rename`. Used to check that
    /// nothing downstream depends on the spelling of ids.
    pub fn renamed(
        &self,
        mut branch: impl FnMut(&str) -> String,
        mut sector: impl FnMut(&str) -> String,
    ) -> Self {
        MultibranchedSurface {
            branches: self
                .branches
                .iter()
                .map(|b| Branch { id: branch(&b.id) })
                .collect(),
            sectors: self
                .sectors
                .iter()
                .map(|s| Sector {
                    id: sector(&s.id),
                    genus: s.genus,
                    boundary: s.boundary.clone(),
                })
                .collect(),
            connected: self.connected,
        }
    }
}

/// Incremental construction with the same checks and error cases as the
/// `.mbs` reader: declarations precede use, ids are unique, degrees nonzero.
#[derive(Clone, Debug, Default)]
pub struct SurfaceBuilder {
    branches: Vec<Branch>,
    sectors: Vec<Sector>,
}

impl SurfaceBuilder {
    pub fn branch(&mut self, id: &str) -> Result<&mut Self, ModelError> {
        if !is_valid_id(id) {
            return Err(ModelError::InvalidId(id.into()));
        }
        if self.branches.iter().any(|b| b.id == id) {
            return Err(ModelError::DuplicateBranch(id.into()));
        }
        self.branches.push(Branch { id: id.into() });
        Ok(self)
    }

    pub fn sector(&mut self, id: &str, genus: u32) -> Result<&mut Self, ModelError> {
        if !is_valid_id(id) {
            return Err(ModelError::InvalidId(id.into()));
        }
        if self.sectors.iter().any(|s| s.id == id) {
            return Err(ModelError::DuplicateSector(id.into()));
        }
        self.sectors.push(Sector {
            id: id.into(),
            genus,
            boundary: Vec::new(),
        });
        Ok(self)
    }

    /// Appends one boundary circle to `sector`.
    pub fn attach(&mut self, sector: &str, branch: &str, degree: i64) -> Result<&mut Self, ModelError> {
        let s = self
            .sectors
            .iter()
            .position(|s| s.id == sector)
            .ok_or_else(|| ModelError::UnknownSector(sector.into()))?;
        let b = self
            .branches
            .iter()
            .position(|b| b.id == branch)
            .ok_or_else(|| ModelError::UnknownBranch(branch.into()))?;
        if degree == 0 {
            return Err(ModelError::ZeroDegree {
                sector: sector.into(),
                branch: branch.into(),
            });
        }
        self.sectors[s].boundary.push(Attachment { branch: b, degree });
        Ok(self)
    }

    /// Validates and freezes the surface; rejects disconnected input.
    pub fn build(&self) -> Result<MultibranchedSurface, ModelError> {
        let x = self.build_allowing_disconnected()?;
        if !x.connected {
            return Err(ModelError::Disconnected);
        }
        Ok(x)
    }

    /// Like [`build`](Self::build) but keeps disconnected surfaces, recording
    /// the fact in [`MultibranchedSurface::is_connected`]. Evaluation never
    /// reports an obstruction for such a surface.
    pub fn build_allowing_disconnected(&self) -> Result<MultibranchedSurface, ModelError> {
        if self.sectors.is_empty() {
            return Err(ModelError::NoSectors);
        }
        if let Some(s) = self.sectors.iter().find(|s| s.boundary.is_empty()) {
            return Err(ModelError::SectorWithoutAttachments(s.id.clone()));
        }
        let mut referenced = alloc::vec![false; self.branches.len()];
        for a in self.sectors.iter().flat_map(|s| s.boundary.iter()) {
            referenced[a.branch] = true;
        }
        if let Some(i) = referenced.iter().position(|r| !r) {
            return Err(ModelError::UnreferencedBranch(self.branches[i].id.clone()));
        }

        // sectors are nodes 0..S, branches S..S+B
        let s_count = self.sectors.len();
        let mut uf = UnionFind::new(s_count + self.branches.len());
        for (i, s) in self.sectors.iter().enumerate() {
            for a in &s.boundary {
                uf.union(i, s_count + a.branch);
            }
        }
        let root = uf.root(0);
        let connected = (1..s_count + self.branches.len()).all(|i| uf.root(i) == root);

        Ok(MultibranchedSurface {
            branches: self.branches.clone(),
            sectors: self.sectors.clone(),
            connected,
        })
    }
}
