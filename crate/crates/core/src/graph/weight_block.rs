//! One-tree spaces restricted to a symplectic weight: the direct sum of the
//! letter-content blocks lying over it.

use std::sync::Arc;

use super::{BlockSpace, GraphError, GraphVector, SpaceSpec};
use crate::linalg::SparseVector;
use crate::weights::contents_of_weight;

#[derive(Debug, Clone)]
pub struct WeightBlock {
    pub weight: Vec<i32>,
    pub parts: Vec<Arc<BlockSpace>>,
    offsets: Vec<usize>,
    len: usize,
}

impl WeightBlock {
    pub fn one_tree(lie_degree: usize, dotted: usize, genus: usize, weight: &[i32]) -> Result<Self, GraphError> {
        let base = SpaceSpec::one_tree(lie_degree, dotted, genus);
        let m = base.homological_degree()?;
        let mut parts = Vec::new();
        let mut offsets = Vec::new();
        let mut len = 0;
        for content in contents_of_weight(weight, m) {
            let block = BlockSpace::cached(&base.clone().with_weight(content))?;
            offsets.push(len);
            len += block.len();
            parts.push(block);
        }
        super::space::check_block_size(len)?;
        Ok(WeightBlock {
            weight: weight.to_vec(),
            parts,
            offsets,
            len,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Dimension modulo IHX.
    pub fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.dim()).sum()
    }

    /// Moves coordinates of part `part` into the coordinates of the whole block.
    pub fn shift(&self, part: usize, v: &SparseVector) -> SparseVector {
        let off = self.offsets[part];
        SparseVector::from_pairs(v.entries().iter().map(|(i, c)| (i + off, c.clone())))
    }

    pub fn ihx_rows(&self) -> impl Iterator<Item = SparseVector> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(move |(k, p)| p.relations.rows().iter().map(move |r| self.shift(k, r)))
    }

    pub fn coords(&self, v: &GraphVector) -> Result<SparseVector, GraphError> {
        let mut pairs = Vec::with_capacity(v.len());
        for (key, c) in v.terms() {
            let (k, i) = self
                .parts
                .iter()
                .enumerate()
                .find_map(|(k, p)| p.index.get(key).map(|&i| (k, i)))
                .ok_or(GraphError::NotInBasis)?;
            pairs.push((self.offsets[k] + i, c.clone()));
        }
        Ok(SparseVector::from_pairs(pairs))
    }
}
