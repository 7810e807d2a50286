//! GL decompositions of one-tree spaces with two dotted edges and of the
//! corresponding quotient by merged tripod images.

use std::collections::BTreeMap;
use std::fmt;

use hlg_core::graph::{BlockSpace, SpaceSpec};
use hlg_core::tableaux::{format_decomposition, gl_multiplicities, partitions, Partition};
use hlg_core::trace::quotient::omega_tilde_block;

use crate::LabError;

/// Which space a GL table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableSpace {
    /// One-tree graphs with `loops` dotted edges modulo the graph relations.
    Graphs { loops: usize },
    /// The same space modulo the fully merged tripod unions.
    Quotient { loops: usize },
}

impl TableSpace {
    pub fn loops(&self) -> usize {
        match *self {
            TableSpace::Graphs { loops } | TableSpace::Quotient { loops } => loops,
        }
    }

    /// Number of colored hairs at Lie degree `n`.
    pub fn colors(&self, n: usize) -> Option<usize> {
        (n + 2).checked_sub(2 * self.loops())
    }
}

impl fmt::Display for TableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableSpace::Graphs { loops } => write!(f, "C_{{1,{loops}}}"),
            TableSpace::Quotient { loops } => write!(f, "Omega~_{loops}"),
        }
    }
}

fn padded(p: &Partition, len: usize) -> Vec<usize> {
    let mut c = p.parts().to_vec();
    c.resize(len, 0);
    c
}

/// Quotient dimension of every dominant weight block at Lie degree `n`.
pub fn weight_dims(space: TableSpace, n: usize, genus: usize) -> Result<BTreeMap<Partition, usize>, LabError> {
    let Some(m) = space.colors(n) else {
        return Ok(BTreeMap::new());
    };
    let mut out = BTreeMap::new();
    for parts in partitions(m).into_iter().filter(|p| p.len() <= 2 * genus) {
        let mu = Partition::new(parts);
        let content = padded(&mu, 2 * genus);
        let dim = match space {
            TableSpace::Graphs { loops } => {
                BlockSpace::cached(&SpaceSpec::one_tree(n, loops, genus).with_weight(content))?.dim()
            }
            TableSpace::Quotient { loops } => omega_tilde_block(loops, &content, genus)?.dim(),
        };
        out.insert(mu, dim);
    }
    Ok(out)
}

/// GL multiplicities at Lie degree `n`, read off from the dominant weight blocks.
pub fn decomposition(space: TableSpace, n: usize, genus: usize) -> Result<BTreeMap<Partition, usize>, LabError> {
    let Some(m) = space.colors(n) else {
        return Ok(BTreeMap::new());
    };
    if 2 * genus < m {
        return Err(LabError::GenusTooSmall { genus, size: m });
    }
    let dims = weight_dims(space, n, genus)?;
    Ok(gl_multiplicities(m, 2 * genus, &dims)?)
}

/// Smallest genus at which every partition of the hair count is a weight.
pub fn stable_genus(space: TableSpace, n: usize) -> usize {
    space.colors(n).map_or(1, |m| m.div_ceil(2).max(1))
}

/// One row of the table: both decompositions at Lie degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub genus: usize,
    pub graphs: BTreeMap<Partition, usize>,
    pub quotient: BTreeMap<Partition, usize>,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {}",
            format_decomposition(&self.graphs),
            format_decomposition(&self.quotient)
        )
    }
}

pub fn two_loop_row(n: usize) -> Result<TableRow, LabError> {
    let graphs = TableSpace::Graphs { loops: 2 };
    let genus = stable_genus(graphs, n);
    Ok(TableRow {
        n,
        genus,
        graphs: decomposition(graphs, n, genus)?,
        quotient: decomposition(TableSpace::Quotient { loops: 2 }, n, genus)?,
    })
}
