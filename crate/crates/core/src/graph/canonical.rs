//! Canonical encodings of hairy graphs.
//!
//! A tree is written in pre-order from a root leaf, children of each vertex in
//! the order chosen for that vertex. The key of a graph is the concatenation of
//! its tree encodings. Among all encodings produced by a deterministic search
//! (root leaves of minimal label, children ordered by their encoding with
//! unnumbered dotted ends made anonymous, ties explored both ways, trees taken
//! greedily), the lexicographically smallest one is the key. Dotted edges are
//! numbered by first appearance and oriented from the first end to the second.

use rustc_hash::FxHashMap;

use super::{GraphError, HairyGraph, Node, Slot};

pub type Key = Vec<u16>;

pub(crate) const NODE: u16 = 0;
pub(crate) const COLOR_BASE: u16 = 1;
const DOT_ANON: u16 = 999;
pub(crate) const DOT_BASE: u16 = 1000;

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    /// Canonical number of each dotted edge, 0 while unnumbered.
    number: Vec<u16>,
    next: u16,
    odd: bool,
    used: u64,
}

struct Search<'a> {
    g: &'a HairyGraph,
    local_edge: FxHashMap<u16, usize>,
}

impl Search<'_> {
    fn edge(&self, slot: Slot) -> Option<(usize, bool)> {
        match slot {
            Slot::Dot { edge, head } => Some((self.local_edge[&edge], head)),
            Slot::Color(_) => None,
        }
    }

    fn anon_token(&self, slot: Slot, st: &State) -> u16 {
        match slot {
            Slot::Color(s) => COLOR_BASE + s as u16,
            Slot::Dot { .. } => {
                let (e, _) = self.edge(slot).unwrap();
                if st.number[e] == 0 {
                    DOT_ANON
                } else {
                    DOT_BASE + st.number[e]
                }
            }
        }
    }

    fn token(&self, slot: Slot, st: &mut State) -> u16 {
        match self.edge(slot) {
            None => self.anon_token(slot, st),
            Some((e, head)) => {
                if st.number[e] == 0 {
                    st.next += 1;
                    st.number[e] = st.next;
                    if head {
                        st.odd = !st.odd;
                    }
                }
                DOT_BASE + st.number[e]
            }
        }
    }

    /// Encoding invariant under reordering children, with unnumbered dots anonymous.
    fn anon(&self, node: usize, parent: usize, st: &State) -> Vec<u16> {
        match &self.g.nodes[node] {
            Node::Leaf { slot, .. } => vec![self.anon_token(*slot, st)],
            Node::Tri { .. } => {
                let (x, y) = self.g.children(node, parent);
                let (mut ax, mut ay) = (self.anon(x, node, st), self.anon(y, node, st));
                if ay < ax {
                    std::mem::swap(&mut ax, &mut ay);
                }
                let mut out = Vec::with_capacity(1 + ax.len() + ay.len());
                out.push(NODE);
                out.extend(ax);
                out.extend(ay);
                out
            }
        }
    }

    fn encode(&self, node: usize, parent: usize, st: State) -> Vec<(Vec<u16>, State)> {
        match &self.g.nodes[node] {
            Node::Leaf { slot, .. } => {
                let mut st = st;
                let t = self.token(*slot, &mut st);
                vec![(vec![t], st)]
            }
            Node::Tri { .. } => {
                let (x, y) = self.g.children(node, parent);
                let (ax, ay) = (self.anon(x, node, &st), self.anon(y, node, &st));
                let mut orders = Vec::with_capacity(2);
                if ax <= ay {
                    orders.push((x, y, false));
                }
                if ay <= ax {
                    orders.push((y, x, true));
                }
                let mut best: Vec<(Vec<u16>, State)> = Vec::new();
                for (first, second, swap) in orders {
                    let mut s0 = st.clone();
                    if swap {
                        s0.odd = !s0.odd;
                    }
                    for (e1, s1) in self.encode(first, node, s0) {
                        for (e2, s2) in self.encode(second, node, s1) {
                            let mut e = Vec::with_capacity(1 + e1.len() + e2.len());
                            e.push(NODE);
                            e.extend_from_slice(&e1);
                            e.extend(e2);
                            keep_min(&mut best, e, s2);
                        }
                    }
                }
                best
            }
        }
    }

    fn tree_candidates(&self, leaves: &[usize], st: &State) -> Vec<(Vec<u16>, State)> {
        let min_tok = leaves.iter().map(|&l| self.anon_token(self.g.slot(l), st)).min().unwrap();
        let mut best = Vec::new();
        for &l in leaves {
            let slot = self.g.slot(l);
            if self.anon_token(slot, st) != min_tok {
                continue;
            }
            let mut s = st.clone();
            let t = self.token(slot, &mut s);
            for (e, s2) in self.encode(self.g.neighbor(l), l, s) {
                let mut full = Vec::with_capacity(1 + e.len());
                full.push(t);
                full.extend(e);
                keep_min(&mut best, full, s2);
            }
        }
        best
    }
}

fn keep_min(best: &mut Vec<(Vec<u16>, State)>, e: Vec<u16>, s: State) {
    match best.first().map(|(b, _)| e.cmp(b)) {
        Some(std::cmp::Ordering::Greater) => {}
        Some(std::cmp::Ordering::Less) | None => {
            best.clear();
            best.push((e, s));
        }
        Some(std::cmp::Ordering::Equal) => {
            if !best.iter().any(|(_, t)| *t == s) {
                best.push((e, s));
            }
        }
    }
}

/// Returns `(sign, key)` with `x = sign * decode(key)`; sign 0 means the graph
/// equals its own negative.
pub fn canonicalize(g: &HairyGraph) -> Result<(i8, Key), GraphError> {
    if g.roots.len() > 64 {
        return Err(GraphError::Shape("at most 64 trees".into()));
    }
    let edges = g.dotted_edges();
    let local_edge: FxHashMap<u16, usize> = edges.iter().enumerate().map(|(i, e)| (e.0, i)).collect();
    let search = Search { g, local_edge };
    let owner = g.tree_of();
    let mut tree_leaves = vec![Vec::new(); g.roots.len()];
    for l in g.leaves() {
        tree_leaves[owner[l]].push(l);
    }
    let mut key = Vec::new();
    let mut states = vec![State {
        number: vec![0; edges.len()],
        next: 0,
        odd: false,
        used: 0,
    }];
    for pos in 0..g.roots.len() {
        let mut best: Vec<(Vec<u16>, State)> = Vec::new();
        for st in &states {
            let choices: Vec<usize> = if g.ordered {
                vec![pos]
            } else {
                (0..g.roots.len()).filter(|t| st.used & (1 << t) == 0).collect()
            };
            for t in choices {
                let mut s = st.clone();
                s.used |= 1 << t;
                // Moving tree t into position `pos` passes over the unused trees before it.
                let passed = (0..t).filter(|u| st.used & (1 << u) == 0).count();
                if passed % 2 == 1 {
                    s.odd = !s.odd;
                }
                for (e, s2) in search.tree_candidates(&tree_leaves[t], &s) {
                    keep_min(&mut best, e, s2);
                }
            }
        }
        key.extend_from_slice(&best[0].0);
        states = best.into_iter().map(|(_, s)| s).collect();
    }
    let odd = states[0].odd;
    if states.iter().any(|s| s.odd != odd) {
        return Ok((0, key));
    }
    Ok((if odd { -1 } else { 1 }, key))
}

/// Rebuilds the representative graph of a key.
pub(crate) fn decode(key: &[u16], genus: usize, ordered: bool) -> HairyGraph {
    fn slot_of(tok: u16, seen: &mut Vec<bool>) -> Slot {
        if tok >= DOT_BASE {
            let k = (tok - DOT_BASE) as usize;
            if seen.len() <= k {
                seen.resize(k + 1, false);
            }
            let head = seen[k];
            seen[k] = true;
            Slot::Dot { edge: k as u16, head }
        } else {
            Slot::Color((tok - COLOR_BASE) as u8)
        }
    }
    fn sub(key: &[u16], pos: &mut usize, parent: usize, nodes: &mut Vec<Node>, seen: &mut Vec<bool>) -> usize {
        let tok = key[*pos];
        *pos += 1;
        let me = nodes.len();
        if tok == NODE {
            nodes.push(Node::Tri { nbrs: [parent, 0, 0] });
            let x = sub(key, pos, me, nodes, seen);
            let y = sub(key, pos, me, nodes, seen);
            nodes[me] = Node::Tri { nbrs: [parent, x, y] };
        } else {
            nodes.push(Node::Leaf {
                slot: slot_of(tok, seen),
                nbr: parent,
            });
        }
        me
    }
    let mut nodes = Vec::new();
    let mut roots = Vec::new();
    let mut seen = Vec::new();
    let mut pos = 0;
    while pos < key.len() {
        let root = nodes.len();
        let slot = slot_of(key[pos], &mut seen);
        pos += 1;
        nodes.push(Node::Leaf { slot, nbr: 0 });
        let top = sub(key, &mut pos, root, &mut nodes, &mut seen);
        nodes[root] = Node::Leaf { slot, nbr: top };
        roots.push(root);
    }
    HairyGraph::from_parts(nodes, roots, genus, ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Expr;
    use crate::tensor::{a, b};

    fn tripod(x: Expr, y: Expr, z: Expr) -> HairyGraph {
        HairyGraph::from_trees(vec![[x, y, z]], 2, false).unwrap()
    }

    #[test]
    fn tripod_rotation_and_flip() {
        let g1 = tripod(Expr::color(a(1)), Expr::color(b(1)), Expr::color(a(2)));
        let g2 = tripod(Expr::color(b(1)), Expr::color(a(2)), Expr::color(a(1)));
        let g3 = tripod(Expr::color(b(1)), Expr::color(a(1)), Expr::color(a(2)));
        let (s1, k1) = canonicalize(&g1).unwrap();
        let (s2, k2) = canonicalize(&g2).unwrap();
        let (s3, k3) = canonicalize(&g3).unwrap();
        assert_eq!(k1, k2);
        assert_eq!(k1, k3);
        assert_eq!(s1, s2);
        assert_eq!(s1, -s3);
    }

    #[test]
    fn symmetric_tripod_vanishes() {
        let g = tripod(Expr::color(a(1)), Expr::color(a(1)), Expr::color(a(2)));
        assert_eq!(canonicalize(&g).unwrap().0, 0);
    }

    #[test]
    fn decode_roundtrip() {
        let g = HairyGraph::from_trees(
            vec![[
                Expr::node(Expr::color(a(1)), Expr::tail(7)),
                Expr::node(Expr::head(7), Expr::color(b(2))),
                Expr::color(a(2)),
            ]],
            2,
            false,
        )
        .unwrap();
        let (s, k) = canonicalize(&g).unwrap();
        assert_ne!(s, 0);
        let d = decode(&k, 2, false);
        d.validate().unwrap();
        assert_eq!(canonicalize(&d).unwrap(), (1, k));
    }
}
