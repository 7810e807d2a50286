//! One-loop graphs: expansion into wheels and the dihedral normal form.
//!
//! The wheel `W(x1 ... xm)` is the tree rooted at the tail of its dotted edge,
//! running along a path to the head with hair `xi` at the i-th vertex on the
//! right of the direction of travel.

use crate::graph::{lie_word, Expr, GraphError, GraphVector, HairyGraph, Node, Slot};
use crate::linalg::Rational;
use crate::tensor::{Sym, TensorVector, Word};

use super::off_path_neighbor;

pub fn wheel(word: &[Sym], genus: usize) -> Result<HairyGraph, GraphError> {
    let hairs = word
        .iter()
        .map(|&s| (crate::graph::Side::Right, Expr::color(s)))
        .collect::<Vec<_>>();
    let (last, init) = hairs.split_last().ok_or_else(|| GraphError::Shape("a nonempty word".into()))?;
    let end = Expr::node(last.1.clone(), Expr::head(1));
    let body = Expr::path(init.to_vec(), end);
    HairyGraph::rooted(Slot::Dot { edge: 1, head: false }, body, genus)
}

/// Path of nodes from leaf `from` to leaf `to` inside one tree.
pub(crate) fn tree_path(g: &HairyGraph, from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.nodes().len()];
    let mut stack = vec![from];
    parent[from] = from;
    while let Some(x) = stack.pop() {
        let nbrs: Vec<usize> = match &g.nodes()[x] {
            Node::Leaf { nbr, .. } => vec![*nbr],
            Node::Tri { nbrs } => nbrs.to_vec(),
        };
        for y in nbrs {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Rewrites a one-tree graph with one dotted edge as a combination of wheels
/// modulo IHX, returned as the combination of their hair words.
pub fn wheel_expansion(g: &HairyGraph) -> Result<TensorVector, GraphError> {
    let edges = g.dotted_edges();
    if g.tree_count() != 1 || edges.len() != 1 {
        return Err(GraphError::Shape("one tree with one dotted edge".into()));
    }
    let (_, t, h) = edges[0];
    let path = tree_path(g, t, h);
    let mut acc = TensorVector::word(Vec::new(), g.genus());
    for w in path.windows(3) {
        let (prev, v, next) = (w[0], w[1], w[2]);
        let hair = off_path_neighbor(g, v, prev, next);
        let (first, _) = g.children(v, prev);
        let sign = if first == hair { 1 } else { -1 };
        let lie = lie_word(g, hair, v).scaled(&Rational::from_int(sign));
        acc = crate::lie::tensor_product(&acc, &lie);
    }
    Ok(acc)
}

/// Signs of the dihedral relations `W(x1 x2 ... xm) = rotation * W(x2 ... xm x1)`
/// and `W(x) = reflection * W(reverse x)` in the one-loop quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralSigns {
    pub rotation: i64,
    pub reflection: i64,
}

/// Frozen values, checked against the brute-force quotient in the test suite.
pub fn dihedral_signs(m: usize) -> DihedralSigns {
    DihedralSigns {
        rotation: 1,
        reflection: if m % 2 == 1 { 1 } else { -1 },
    }
}

/// Minimal word of the dihedral orbit and the sign relating `w` to it, or
/// `None` when the orbit relations force the class to vanish.
pub fn dihedral_normal_form(w: &[Sym], signs: DihedralSigns) -> Option<(i64, Word)> {
    let m = w.len();
    let mut best: Option<(Word, i64, bool)> = None;
    for reflect in [false, true] {
        let base: Word = if reflect { w.iter().rev().copied().collect() } else { w.to_vec() };
        let base_sign = if reflect { signs.reflection } else { 1 };
        for k in 0..m.max(1) {
            let mut rotated = base[k.min(m)..].to_vec();
            rotated.extend_from_slice(&base[..k.min(m)]);
            let sign = base_sign * signs.rotation.pow(k as u32);
            match &mut best {
                Some((b, s, clash)) if *b == rotated => {
                    if *s != sign {
                        *clash = true;
                    }
                }
                Some((b, _, _)) if *b < rotated => {}
                _ => best = Some((rotated, sign, false)),
            }
        }
    }
    let (word, sign, clash) = best.unwrap();
    (!clash).then_some((sign, word))
}

/// Class in the one-loop quotient, as a combination of normal-form wheel words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneLoopClass {
    pub terms: TensorVector,
}

impl OneLoopClass {
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
}

pub fn reduce_words(t: &TensorVector) -> OneLoopClass {
    let mut out = TensorVector::zero(t.genus());
    for (w, c) in t.terms() {
        // Degree one classes vanish: the looped tripod is its own merged image.
        if w.len() < 2 {
            continue;
        }
        if let Some((s, nf)) = dihedral_normal_form(w, dihedral_signs(w.len())) {
            out.add_term(nf, c * &Rational::from_int(s));
        }
    }
    OneLoopClass { terms: out }
}

pub fn one_loop_reduce(x: &GraphVector) -> Result<OneLoopClass, GraphError> {
    let mut acc = TensorVector::zero(x.genus());
    for (g, c) in x.graphs() {
        acc.add_scaled(c, &wheel_expansion(&g)?);
    }
    Ok(reduce_words(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{a, b};

    #[test]
    fn wheel_expands_to_its_word() {
        let w = vec![a(1), b(2), a(2)];
        let g = wheel(&w, 2).unwrap();
        assert_eq!(wheel_expansion(&g).unwrap(), TensorVector::word(w, 2));
    }

    #[test]
    fn reflection_is_structural() {
        for w in [vec![a(1), b(2), a(2)], vec![a(1), b(2), a(2), b(1)]] {
            let s = dihedral_signs(w.len()).reflection;
            let x = GraphVector::from_graph(&wheel(&w, 2).unwrap()).unwrap();
            let rev: Vec<_> = w.iter().rev().copied().collect();
            let y = GraphVector::from_graph(&wheel(&rev, 2).unwrap()).unwrap();
            assert_eq!(x, y.scaled(&Rational::from_int(s)));
        }
    }
}
