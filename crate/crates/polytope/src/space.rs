//! Vertex sets of family-variable polytopes, enumerated exhaustively.

use crate::error::{PolyError, Result};
use bnsl_core::model::{enumerate_instance_dags, Family, FamilyIndex, DEFAULT_ENUM_LIMIT};
use bnsl_core::{BnslInstance, DigraphAssignment};

/// The polytope of acyclic digraphs over an instance's permitted sets,
/// held as its 0/1 vertex list over the non-empty families.
#[derive(Clone, Debug)]
pub struct FamilyPolytope {
    inst: BnslInstance,
    idx: FamilyIndex,
    dags: Vec<DigraphAssignment>,
    vertices: Vec<Vec<u8>>,
}

impl FamilyPolytope {
    pub fn full(p: usize) -> Result<Self> {
        Self::capped(p, None)
    }

    pub fn capped(p: usize, kappa: Option<usize>) -> Result<Self> {
        Self::from_instance(BnslInstance::complete(p, kappa))
    }

    pub fn from_instance(inst: BnslInstance) -> Result<Self> {
        let idx = inst.family_index();
        let dags: Vec<DigraphAssignment> =
            enumerate_instance_dags(&inst, DEFAULT_ENUM_LIMIT)?.collect();
        let vertices = dags.iter().map(|g| encode(g, &idx)).collect();
        Ok(FamilyPolytope {
            inst,
            idx,
            dags,
            vertices,
        })
    }

    pub fn p(&self) -> usize {
        self.inst.p()
    }

    pub fn dim(&self) -> usize {
        self.idx.len()
    }

    pub fn instance(&self) -> &BnslInstance {
        &self.inst
    }

    pub fn index(&self) -> &FamilyIndex {
        &self.idx
    }

    pub fn names(&self) -> &[String] {
        self.inst.names()
    }

    pub fn dags(&self) -> &[DigraphAssignment] {
        &self.dags
    }

    pub fn vertices(&self) -> &[Vec<u8>] {
        &self.vertices
    }

    /// Same node set with one permitted set removed.
    pub fn without(&self, child: usize, parents: &[usize]) -> Result<Self> {
        if parents.is_empty() || !self.inst.is_permitted(child, parents) {
            return Err(PolyError::Precondition(format!(
                "{} is not a droppable family",
                Family::new(child, parents.to_vec()).render(self.names())
            )));
        }
        let rows = (0..self.p())
            .map(|i| {
                self.inst
                    .permitted(i)
                    .iter()
                    .filter(|j| !(i == child && j.as_slice() == parents))
                    .map(|j| (j.clone(), 0.0))
                    .collect()
            })
            .collect();
        Self::from_instance(BnslInstance::new(self.names().to_vec(), rows, None)?)
    }
}

pub fn encode(g: &DigraphAssignment, idx: &FamilyIndex) -> Vec<u8> {
    let mut x = vec![0u8; idx.len()];
    for i in 0..g.p() {
        if let Some(k) = idx.position(i, g.parents(i)) {
            x[k] = 1;
        }
    }
    x
}
