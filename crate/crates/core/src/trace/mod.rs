//! Trace maps from trees to one-tree graphs with dotted edges, the merging map
//! on ordered unions of trees, and the iterated bracket of tripods.

pub mod cokernel;
pub mod loops;
pub mod quotient;

use crate::graph::{bracket_h, GraphError, GraphVector, HairyGraph, Node, Slot};
use crate::linalg::Rational;
use crate::tensor::pairing_sign;

/// All sets of disjoint unordered leaf pairs of size `size` (or of every size
/// when `size` is `None`), each pair listed as `(earlier, later)`.
fn matchings(leaves: &[usize], size: Option<usize>) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        rest: &[usize],
        size: Option<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if size == Some(cur.len()) {
            out.push(cur.clone());
            return;
        }
        let Some((&first, tail)) = rest.split_first() else {
            if size.is_none() {
                out.push(cur.clone());
            }
            return;
        };
        // `first` stays unpaired.
        rec(tail, size, cur, out);
        for (i, &other) in tail.iter().enumerate() {
            cur.push((first, other));
            let mut remaining = tail.to_vec();
            remaining.remove(i);
            rec(&remaining, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(leaves, size, &mut Vec::new(), &mut out);
    out
}

/// Adds the dotted edges of `pairs` (tail first), returning the product of the
/// pairings of the removed colors, or `None` when it vanishes.
fn attach(g: &HairyGraph, pairs: &[(usize, usize)]) -> Option<(i64, HairyGraph)> {
    let mut coeff = 1;
    let mut out = g.clone();
    let mut edge = g.fresh_edge_id();
    for &(t, h) in pairs {
        let (Slot::Color(x), Slot::Color(y)) = (g.slot(t), g.slot(h)) else {
            return None;
        };
        coeff *= pairing_sign(x, y);
        if coeff == 0 {
            return None;
        }
        out.set_slot(t, Slot::Dot { edge, head: false });
        out.set_slot(h, Slot::Dot { edge, head: true });
        edge += 1;
    }
    Some((coeff, out))
}

fn colored_leaves(g: &HairyGraph) -> Vec<usize> {
    g.leaves().filter(|&l| matches!(g.slot(l), Slot::Color(_))).collect()
}

/// `Tr_r`: adds `r` dotted edges in all unordered ways, each directed from the
/// earlier leaf and weighted by the pairing `(tail color . head color)`.
pub fn trace_r(x: &GraphVector, r: usize) -> Result<GraphVector, GraphError> {
    let mut out = GraphVector::zero(x.genus(), false);
    for (g, c) in x.graphs() {
        if g.tree_count() != 1 || g.dotted_count() != 0 {
            return Err(GraphError::Shape("one tree without dotted edges".into()));
        }
        if r > g.lie_degree() / 2 + 1 {
            return Err(GraphError::Spec(format!("r={r} exceeds n/2+1 for n={}", g.lie_degree())));
        }
        for pairs in matchings(&colored_leaves(&g), Some(r)) {
            if let Some((k, h)) = attach(&g, &pairs) {
                out.add_graph(&h, &(c * &Rational::from_int(k)))?;
            }
        }
    }
    Ok(out)
}

/// `Tr`: the sum of `Tr_r` over every number of dotted edges.
pub fn trace(x: &GraphVector) -> Result<GraphVector, GraphError> {
    let mut out = GraphVector::zero(x.genus(), false);
    for (g, c) in x.graphs() {
        let single = GraphVector::from_graph(&g)?;
        for r in 0..=g.lie_degree() / 2 + 1 {
            out.add_scaled(c, &trace_r(&single, r)?);
        }
    }
    Ok(out)
}

/// `Tr^ord` on an ordered tuple of tripod combinations: the disjoint union with
/// every set of dotted edges.
pub fn trace_ord(xs: &[GraphVector]) -> Result<GraphVector, GraphError> {
    let genus = xs.iter().map(|x| x.genus()).max().unwrap_or(0);
    let mut unions: Vec<(HairyGraph, Rational)> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let mut next = Vec::new();
        for (g, c) in x.graphs() {
            if g.tree_count() != 1 || g.lie_degree() != 1 || g.dotted_count() != 0 {
                return Err(GraphError::Shape("tripods".into()));
            }
            let mut g = g.with_genus(genus);
            g.set_ordered(true);
            if i == 0 {
                next.push((g, c.clone()));
            } else {
                for (u, d) in &unions {
                    next.push((u.disjoint_union(&g), d * c));
                }
            }
        }
        unions = next;
    }
    let mut out = GraphVector::zero(genus, true);
    for (u, c) in unions {
        for pairs in matchings(&colored_leaves(&u), None) {
            if let Some((k, h)) = attach(&u, &pairs) {
                out.add_graph(&h, &(&c * &Rational::from_int(k)))?;
            }
        }
    }
    Ok(out)
}

/// Terms of `beta` on one graph: for each dotted edge between the first two
/// trees, the graph with that edge made solid, with sign `-1` when the edge
/// points into the first tree.
pub fn beta_terms(g: &HairyGraph) -> Result<Vec<(i64, HairyGraph)>, GraphError> {
    if g.tree_count() < 2 {
        return Err(GraphError::Shape("at least two trees".into()));
    }
    let owner = g.tree_of();
    let mut out = Vec::new();
    for (_, t, h) in g.dotted_edges() {
        let sign = match (owner[t], owner[h]) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => continue,
        };
        let mut merged = g.glue(t, h)?;
        merged.set_ordered(g.ordered());
        out.push((sign, merged));
    }
    Ok(out)
}

pub fn beta(x: &GraphVector) -> Result<GraphVector, GraphError> {
    let mut out = GraphVector::zero(x.genus(), true);
    for (g, c) in x.graphs() {
        for (s, h) in beta_terms(&g)? {
            out.add_graph(&h, &(c * &Rational::from_int(s)))?;
        }
    }
    Ok(out)
}

/// `beta` applied until one tree remains, on explicit graphs.
pub fn beta_power_terms(g: &HairyGraph) -> Result<Vec<(i64, HairyGraph)>, GraphError> {
    let mut cur = vec![(1i64, g.clone())];
    while cur.first().is_some_and(|(_, h)| h.tree_count() > 1) {
        let mut next = Vec::new();
        for (c, h) in cur {
            for (s, m) in beta_terms(&h)? {
                next.push((c * s, m));
            }
        }
        cur = next;
    }
    for (_, h) in &mut cur {
        h.set_ordered(false);
    }
    Ok(cur)
}

/// `beta^{k-1}` into one-tree graphs.
pub fn beta_power(x: &GraphVector) -> Result<GraphVector, GraphError> {
    let mut out = GraphVector::zero(x.genus(), false);
    for (g, c) in x.graphs() {
        for (s, h) in beta_power_terms(&g)? {
            out.add_graph(&h, &(c * &Rational::from_int(s)))?;
        }
    }
    Ok(out)
}

/// Left-nested bracket `[[X1, X2], ...], Xn]`.
pub fn br(xs: &[GraphVector]) -> Result<GraphVector, GraphError> {
    let (first, rest) = xs.split_first().ok_or_else(|| GraphError::Shape("a nonempty tuple".into()))?;
    let mut acc = first.clone();
    for x in rest {
        acc = bracket_h(&acc, x)?;
    }
    Ok(acc)
}

/// The pure tree part of a one-tree graph seen from `root`'s neighbor, used to
/// read hairs hanging off a path.
pub(crate) fn off_path_neighbor(g: &HairyGraph, v: usize, prev: usize, next: usize) -> usize {
    match &g.nodes()[v] {
        Node::Tri { nbrs } => *nbrs.iter().find(|&&x| x != prev && x != next).unwrap(),
        Node::Leaf { .. } => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_counts() {
        let leaves: Vec<usize> = (0..6).collect();
        assert_eq!(matchings(&leaves, Some(1)).len(), 15);
        assert_eq!(matchings(&leaves, Some(3)).len(), 15);
        // Partial matchings of 6 points: telephone number T(6) = 76.
        assert_eq!(matchings(&leaves, None).len(), 76);
    }
}
