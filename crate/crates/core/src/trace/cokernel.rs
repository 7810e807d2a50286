//! The subalgebra generated by the degree one part, one symplectic weight at a
//! time, and the dimension of the cokernel of the inclusion.

use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::graph::{bracket_h, Expr, GraphError, GraphVector, HairyGraph, WeightBlock};
use crate::linalg::{Eliminator, SubspaceBasis};
use crate::weights::{contents_of_weight, dominant_sp_weights, sp_orbit_size, sp_weight_of_letters, tripod_letters};

#[derive(Debug)]
pub struct MBlock {
    pub space: WeightBlock,
    /// IHX relations joined with the bracket images.
    pub span: SubspaceBasis,
    /// Bracket images independent modulo IHX.
    pub generators: Vec<GraphVector>,
}

impl MBlock {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.space.dim() - self.dim()
    }
}

fn tripod(letters: [crate::tensor::Sym; 3], genus: usize) -> Result<GraphVector, GraphError> {
    let g = HairyGraph::from_trees(vec![letters.map(Expr::color)], genus, false)?;
    GraphVector::from_graph(&g)
}

/// Weight `weight` part of the span of left-nested brackets of `n` tripods,
/// built as the brackets of degree `n - 1` generators with single tripods.
pub fn m_block(n: usize, genus: usize, weight: &[i32]) -> Result<Arc<MBlock>, GraphError> {
    type Cache = Mutex<FxHashMap<(usize, usize, Vec<i32>), Arc<MBlock>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    if n == 0 {
        return Err(GraphError::Spec("Lie degree must be positive".into()));
    }
    let key = (n, genus, weight.to_vec());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let space = WeightBlock::one_tree(n, 0, genus, weight)?;
    let mut elim = Eliminator::new(space.len());
    for row in space.ihx_rows() {
        elim.insert(&row)?;
    }
    let mut generators = Vec::new();
    for letters in tripod_letters(genus) {
        if elim.is_full() {
            break;
        }
        let tw = sp_weight_of_letters(&letters, genus);
        let rest: Vec<i32> = weight.iter().zip(&tw).map(|(x, y)| x - y).collect();
        let t = tripod(letters, genus)?;
        let candidates = if n == 1 {
            if rest.iter().all(|&x| x == 0) {
                vec![t]
            } else {
                Vec::new()
            }
        } else if contents_of_weight(&rest, n + 1).is_empty() {
            Vec::new()
        } else {
            let lower = m_block(n - 1, genus, &rest)?;
            lower
                .generators
                .iter()
                .map(|x| bracket_h(x, &t))
                .collect::<Result<Vec<_>, _>>()?
        };
        for v in candidates {
            if !v.is_zero() && elim.insert(&space.coords(&v)?)? {
                generators.push(v);
            }
        }
    }
    let out = Arc::new(MBlock {
        space,
        span: elim.into_basis(),
        generators,
    });
    Ok(cache.lock().unwrap().entry(key).or_insert(out).clone())
}

/// Dimension of the cokernel in Lie degree `n`, summed over symplectic weights.
pub fn cokernel_dim(n: usize, genus: usize) -> Result<usize, GraphError> {
    let mut total = 0;
    for w in dominant_sp_weights(n + 2, genus) {
        total += m_block(n, genus, &w)?.cokernel_dim() * sp_orbit_size(&w);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_everything() {
        assert_eq!(cokernel_dim(1, 2).unwrap(), 0);
        assert_eq!(cokernel_dim(1, 3).unwrap(), 0);
    }
}
