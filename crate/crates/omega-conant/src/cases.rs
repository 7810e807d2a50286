//! Classification of ordered tripod unions by the extra dotted edges on the
//! last tripod that carries any.

use std::fmt;

use hlg_core::graph::{HairyGraph, Slot};

use crate::OmegaError;

/// Shape of the last tripod `Y_i` with extra dotted edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseShape {
    /// Some tripod after the first has no edge to an earlier one.
    NoBackwardEdge,
    /// No tripod carries extra dotted edges.
    Tree,
    /// Only the first tripod carries extra edges, as a self-loop.
    FirstSelfLoop,
    /// Two extra backward edges and no self-loop.
    TwoBackward,
    /// One extra edge, which is a self-loop.
    SelfLoop,
    /// One extra backward edge, the third leaf colored.
    BackwardColored,
    /// One extra backward edge, the third leaf dotted towards a later tripod.
    BackwardForward,
}

impl CaseShape {
    pub const ALL: [CaseShape; 7] = [
        CaseShape::NoBackwardEdge,
        CaseShape::Tree,
        CaseShape::FirstSelfLoop,
        CaseShape::TwoBackward,
        CaseShape::SelfLoop,
        CaseShape::BackwardColored,
        CaseShape::BackwardForward,
    ];
}

impl fmt::Display for CaseShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseShape::NoBackwardEdge => "no-backward-edge",
            CaseShape::Tree => "tree",
            CaseShape::FirstSelfLoop => "first-self-loop",
            CaseShape::TwoBackward => "(i)",
            CaseShape::SelfLoop => "(ii)",
            CaseShape::BackwardColored => "(iii)-colored",
            CaseShape::BackwardForward => "(iii)-forward",
        };
        f.write_str(s)
    }
}

#[derive(Default, Clone)]
struct TripodEdges {
    self_loops: usize,
    backward: usize,
    forward: usize,
}

pub fn case_shape(g: &HairyGraph) -> Result<CaseShape, OmegaError> {
    let n = g.tree_count();
    if !g.ordered() || g.lie_degree() != n {
        return Err(OmegaError::Shape("an ordered union of tripods".into()));
    }
    let owner = g.tree_of();
    let mut tripods = vec![TripodEdges::default(); n];
    for (_, t, h) in g.dotted_edges() {
        let (i, j) = (owner[t].min(owner[h]), owner[t].max(owner[h]));
        if i == j {
            tripods[i].self_loops += 1;
        } else {
            tripods[j].backward += 1;
            tripods[i].forward += 1;
        }
    }
    if tripods.iter().skip(1).any(|y| y.backward == 0) {
        return Ok(CaseShape::NoBackwardEdge);
    }
    let extra = |i: usize, y: &TripodEdges| if i == 0 { y.self_loops } else { y.self_loops + y.backward - 1 };
    let Some(last) = (0..n).rev().find(|&i| extra(i, &tripods[i]) > 0) else {
        return Ok(CaseShape::Tree);
    };
    if last == 0 {
        return Ok(CaseShape::FirstSelfLoop);
    }
    let y = &tripods[last];
    Ok(match (extra(last, y), y.self_loops) {
        (2, 0) => CaseShape::TwoBackward,
        (1, 1) => CaseShape::SelfLoop,
        (1, 0) if y.forward > 0 => CaseShape::BackwardForward,
        (1, 0) => {
            debug_assert!(g
                .leaves()
                .any(|l| owner[l] == last && matches!(g.slot(l), Slot::Color(_))));
            CaseShape::BackwardColored
        }
        _ => return Err(OmegaError::Shape(format!("a tripod with at most three edges at {last}"))),
    })
}
