//! Hairy Lie graphs: numbered unions of unitrivalent trees whose leaves carry
//! either an H-color or one end of a directed dotted edge.

mod canonical;
mod space;
mod template;
mod vector;
mod weight_block;

use std::collections::BTreeSet;
use std::fmt;

use crate::linalg::LinalgError;
use crate::tensor::{check_letter, Sym, TensorError};

pub use canonical::{canonicalize, Key};
pub(crate) use space::lie_word;
pub use space::{
    bracket_h, enumerate_basis, ihx_element, ihx_moves, ihx_relations, ihx_vectors, internal_edges, space_dim,
    set_block_limit, tree_to_derivation, vanishes_mod_ihx, BlockSpace, SpaceSpec,
};
pub use template::{parse_graph, parse_graph_vector};
pub use vector::GraphVector;
pub use weight_block::WeightBlock;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("dotted edge {0} does not have exactly one head and one tail")]
    UnpairedDot(u16),
    #[error("template parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inconsistent space: {0}")]
    Spec(String),
    #[error("operation needs {0}")]
    Shape(String),
    #[error("graph missing from the block basis")]
    NotInBasis,
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lie(#[from] crate::lie::LieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Color(Sym),
    Dot { edge: u16, head: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf { slot: Slot, nbr: usize },
    /// Neighbors in cyclic order.
    Tri { nbrs: [usize; 3] },
}

/// Side of a hair relative to the direction of travel, for counterclockwise
/// cyclic orders in planar pictures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A subtree hanging below a parent: `Node(x, y)` has cyclic order (parent, x, y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Leaf(Slot),
    Node(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn color(s: Sym) -> Self {
        Expr::Leaf(Slot::Color(s))
    }

    pub fn tail(edge: u16) -> Self {
        Expr::Leaf(Slot::Dot { edge, head: false })
    }

    pub fn head(edge: u16) -> Self {
        Expr::Leaf(Slot::Dot { edge, head: true })
    }

    pub fn node(x: Expr, y: Expr) -> Self {
        Expr::Node(Box::new(x), Box::new(y))
    }

    /// A path leaving the parent vertex: `hairs` are met in travel order, each
    /// on the given side of the direction of travel, and the path ends in `end`.
    pub fn path(hairs: Vec<(Side, Expr)>, end: Expr) -> Self {
        hairs.into_iter().rev().fold(end, |acc, (side, h)| match side {
            Side::Left => Expr::node(acc, h),
            Side::Right => Expr::node(h, acc),
        })
    }

    /// Left-nested `[[x1, x2], x3] ...`.
    pub fn left_comb(items: Vec<Expr>) -> Self {
        let mut it = items.into_iter();
        let mut acc = it.next().expect("nonempty comb");
        for x in it {
            acc = Expr::node(acc, x);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HairyGraph {
    nodes: Vec<Node>,
    /// One leaf per tree; list position is the tree numbering.
    roots: Vec<usize>,
    genus: usize,
    ordered: bool,
}

impl HairyGraph {
    /// Builds a graph from trees given by their top vertex `(x, y, z)` in cyclic order.
    pub fn from_trees(trees: Vec<[Expr; 3]>, genus: usize, ordered: bool) -> Result<Self, GraphError> {
        let mut g = HairyGraph {
            nodes: Vec::new(),
            roots: Vec::new(),
            genus,
            ordered,
        };
        for [x, y, z] in trees {
            let top = g.nodes.len();
            g.nodes.push(Node::Tri { nbrs: [0; 3] });
            let ix = g.build(&x, top);
            let iy = g.build(&y, top);
            let iz = g.build(&z, top);
            g.nodes[top] = Node::Tri { nbrs: [ix, iy, iz] };
            let root = g.first_leaf_from(top);
            g.roots.push(root);
        }
        g.validate()?;
        Ok(g)
    }

    /// A single tree given by a root leaf and the subtree at its neighbor.
    pub fn rooted(root: Slot, body: Expr, genus: usize) -> Result<Self, GraphError> {
        match body {
            Expr::Node(x, y) => HairyGraph::from_trees(vec![[Expr::Leaf(root), *x, *y]], genus, false),
            Expr::Leaf(_) => Err(GraphError::Malformed("tree without trivalent vertex".into())),
        }
    }

    /// Graph with the given canonical key.
    pub fn from_key(key: &[u16], genus: usize, ordered: bool) -> Self {
        canonical::decode(key, genus, ordered)
    }

    /// A one-tree graph from explicit nodes, rooted at its first leaf.
    pub fn one_tree_from_nodes(nodes: Vec<Node>, genus: usize) -> Result<Self, GraphError> {
        let root = nodes
            .iter()
            .position(|n| matches!(n, Node::Leaf { .. }))
            .ok_or_else(|| GraphError::Malformed("no leaves".into()))?;
        let g = HairyGraph::from_parts(nodes, vec![root], genus, false);
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_parts(nodes: Vec<Node>, roots: Vec<usize>, genus: usize, ordered: bool) -> Self {
        HairyGraph {
            nodes,
            roots,
            genus,
            ordered,
        }
    }

    fn build(&mut self, e: &Expr, parent: usize) -> usize {
        let me = self.nodes.len();
        match e {
            Expr::Leaf(slot) => self.nodes.push(Node::Leaf { slot: *slot, nbr: parent }),
            Expr::Node(x, y) => {
                self.nodes.push(Node::Tri { nbrs: [parent, 0, 0] });
                let ix = self.build(x, me);
                let iy = self.build(y, me);
                self.nodes[me] = Node::Tri { nbrs: [parent, ix, iy] };
            }
        }
        me
    }

    fn first_leaf_from(&self, start: usize) -> usize {
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            match &self.nodes[cur] {
                Node::Leaf { .. } => return cur,
                Node::Tri { nbrs } => {
                    let next = if nbrs[0] != prev { nbrs[0] } else { nbrs[1] };
                    prev = cur;
                    cur = next;
                }
            }
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ordered(&self) -> bool {
        self.ordered
    }

    pub fn set_ordered(&mut self, ordered: bool) {
        self.ordered = ordered;
    }

    pub fn with_genus(mut self, genus: usize) -> Self {
        self.genus = genus;
        self
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn tree_count(&self) -> usize {
        self.roots.len()
    }

    pub fn lie_degree(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Tri { .. })).count()
    }

    pub fn dotted_count(&self) -> usize {
        self.leaves().filter(|&l| matches!(self.slot(l), Slot::Dot { head: true, .. })).count()
    }

    pub fn homological_degree(&self) -> usize {
        self.leaves().filter(|&l| matches!(self.slot(l), Slot::Color(_))).count()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| matches!(self.nodes[i], Node::Leaf { .. }))
    }

    pub fn slot(&self, leaf: usize) -> Slot {
        match self.nodes[leaf] {
            Node::Leaf { slot, .. } => slot,
            Node::Tri { .. } => panic!("node {leaf} is not a leaf"),
        }
    }

    pub fn set_slot(&mut self, leaf: usize, slot: Slot) {
        match &mut self.nodes[leaf] {
            Node::Leaf { slot: s, .. } => *s = slot,
            Node::Tri { .. } => panic!("node {leaf} is not a leaf"),
        }
    }

    pub fn neighbor(&self, leaf: usize) -> usize {
        match self.nodes[leaf] {
            Node::Leaf { nbr, .. } => nbr,
            Node::Tri { .. } => panic!("node {leaf} is not a leaf"),
        }
    }

    /// Counts of each color letter, indexed by letter code.
    pub fn content(&self) -> Vec<usize> {
        let mut c = vec![0; 2 * self.genus];
        for l in self.leaves() {
            if let Slot::Color(s) = self.slot(l) {
                c[s as usize] += 1;
            }
        }
        c
    }

    /// The (tail, head) leaves of each dotted edge, keyed by edge id.
    pub fn dotted_edges(&self) -> Vec<(u16, usize, usize)> {
        let mut ends: std::collections::BTreeMap<u16, (usize, usize)> = Default::default();
        for l in self.leaves() {
            if let Slot::Dot { edge, head } = self.slot(l) {
                let e = ends.entry(edge).or_insert((usize::MAX, usize::MAX));
                if head {
                    e.1 = l;
                } else {
                    e.0 = l;
                }
            }
        }
        ends.into_iter().map(|(e, (t, h))| (e, t, h)).collect()
    }

    pub fn fresh_edge_id(&self) -> u16 {
        self.dotted_edges().last().map_or(1, |e| e.0 + 1)
    }

    /// Tree index of every node.
    pub fn tree_of(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.nodes.len()];
        for (t, &r) in self.roots.iter().enumerate() {
            let mut stack = vec![r];
            while let Some(x) = stack.pop() {
                if owner[x] != usize::MAX {
                    continue;
                }
                owner[x] = t;
                match &self.nodes[x] {
                    Node::Leaf { nbr, .. } => stack.push(*nbr),
                    Node::Tri { nbrs } => stack.extend_from_slice(nbrs),
                }
            }
        }
        owner
    }

    /// Children of `node` seen from `parent`, in cyclic order after the parent.
    pub fn children(&self, node: usize, parent: usize) -> (usize, usize) {
        match &self.nodes[node] {
            Node::Tri { nbrs } => {
                let k = nbrs.iter().position(|&x| x == parent).expect("parent is adjacent");
                (nbrs[(k + 1) % 3], nbrs[(k + 2) % 3])
            }
            Node::Leaf { .. } => panic!("leaf has no children"),
        }
    }

    pub(crate) fn replace_nbr(&mut self, node: usize, old: usize, new: usize) {
        match &mut self.nodes[node] {
            Node::Leaf { nbr, .. } => {
                debug_assert_eq!(*nbr, old);
                *nbr = new;
            }
            Node::Tri { nbrs } => {
                let k = nbrs.iter().position(|&x| x == old).expect("old neighbor present");
                nbrs[k] = new;
            }
        }
    }

    /// Reverses the cyclic order at a trivalent vertex.
    pub fn flip_vertex(&mut self, node: usize) {
        if let Node::Tri { nbrs } = &mut self.nodes[node] {
            nbrs.swap(1, 2);
        }
    }

    /// Reverses the direction of a dotted edge.
    pub fn flip_edge(&mut self, edge: u16) {
        for l in 0..self.nodes.len() {
            if let Node::Leaf {
                slot: Slot::Dot { edge: e, head },
                ..
            } = &mut self.nodes[l]
            {
                if *e == edge {
                    *head = !*head;
                }
            }
        }
    }

    /// Disjoint union with the trees of `other` appended after ours.
    pub fn disjoint_union(&self, other: &HairyGraph) -> HairyGraph {
        let off = self.nodes.len();
        let shift_edges = self.fresh_edge_id();
        let mut nodes = self.nodes.clone();
        for n in &other.nodes {
            nodes.push(match n {
                Node::Leaf { slot, nbr } => Node::Leaf {
                    slot: match slot {
                        Slot::Dot { edge, head } => Slot::Dot {
                            edge: edge + shift_edges,
                            head: *head,
                        },
                        s => *s,
                    },
                    nbr: nbr + off,
                },
                Node::Tri { nbrs } => Node::Tri {
                    nbrs: nbrs.map(|x| x + off),
                },
            });
        }
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().map(|r| r + off));
        HairyGraph {
            nodes,
            roots,
            genus: self.genus.max(other.genus),
            ordered: self.ordered,
        }
    }

    /// Removes leaves `l1`, `l2` and joins their neighbors by an edge. When the
    /// leaves lie in different trees the merged tree takes the position of the
    /// earlier one and the later tree is dropped from the numbering.
    pub fn glue(&self, l1: usize, l2: usize) -> Result<HairyGraph, GraphError> {
        let owner = self.tree_of();
        let (t1, t2) = (owner[l1], owner[l2]);
        if t1 == t2 {
            return Err(GraphError::Shape("leaves in different trees".into()));
        }
        if matches!(self.nodes[self.neighbor(l1)], Node::Leaf { .. })
            && matches!(self.nodes[self.neighbor(l2)], Node::Leaf { .. })
        {
            return Err(GraphError::Malformed("gluing two struts".into()));
        }
        let mut g = self.clone();
        let x = g.neighbor(l1);
        let y = g.neighbor(l2);
        g.replace_nbr(x, l1, y);
        g.replace_nbr(y, l2, x);
        let (keep, drop) = (t1.min(t2), t1.max(t2));
        let start = if matches!(g.nodes[x], Node::Tri { .. }) { x } else { y };
        g.roots[keep] = g.first_leaf_avoiding(start, &[l1, l2]);
        g.roots.remove(drop);
        Ok(g.compact())
    }

    fn first_leaf_avoiding(&self, start: usize, removed: &[usize]) -> usize {
        let mut stack = vec![start];
        let mut seen = BTreeSet::new();
        while let Some(x) = stack.pop() {
            if removed.contains(&x) || !seen.insert(x) {
                continue;
            }
            match &self.nodes[x] {
                Node::Leaf { .. } => return x,
                Node::Tri { nbrs } => stack.extend(nbrs.iter().rev()),
            }
        }
        panic!("tree without leaves")
    }

    /// Drops nodes unreachable from the roots and renumbers the rest.
    pub(crate) fn compact(&self) -> HairyGraph {
        let owner = self.tree_of();
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for i in 0..self.nodes.len() {
            if owner[i] != usize::MAX {
                map[i] = nodes.len();
                nodes.push(self.nodes[i].clone());
            }
        }
        for n in &mut nodes {
            match n {
                Node::Leaf { nbr, .. } => *nbr = map[*nbr],
                Node::Tri { nbrs } => *nbrs = nbrs.map(|x| map[x]),
            }
        }
        HairyGraph {
            nodes,
            roots: self.roots.iter().map(|&r| map[r]).collect(),
            genus: self.genus,
            ordered: self.ordered,
        }
    }

    /// Moves tree `from` to position `to` in the numbering.
    pub fn move_tree(&mut self, from: usize, to: usize) {
        let r = self.roots.remove(from);
        self.roots.insert(to, r);
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::Malformed(m));
        for (i, n) in self.nodes.iter().enumerate() {
            match n {
                Node::Leaf { slot, nbr } => {
                    if *nbr >= self.nodes.len() {
                        return bad(format!("leaf {i} points outside the graph"));
                    }
                    if let Slot::Color(s) = slot {
                        check_letter(*s, self.genus)?;
                    }
                    if !self.adjacent(*nbr, i) {
                        return bad(format!("half-edge {i}-{nbr} is not paired"));
                    }
                    if matches!(self.nodes[*nbr], Node::Leaf { .. }) {
                        return bad(format!("leaves {i} and {nbr} form a strut"));
                    }
                }
                Node::Tri { nbrs } => {
                    for &x in nbrs {
                        if x >= self.nodes.len() || !self.adjacent(x, i) {
                            return bad(format!("half-edge {i}-{x} is not paired"));
                        }
                    }
                    if nbrs[0] == nbrs[1] || nbrs[1] == nbrs[2] || nbrs[0] == nbrs[2] {
                        return bad(format!("vertex {i} has a repeated neighbor"));
                    }
                }
            }
        }
        let owner = self.tree_of();
        if owner.iter().any(|&o| o == usize::MAX) {
            return bad("node not reachable from any root".into());
        }
        for &r in &self.roots {
            if !matches!(self.nodes.get(r), Some(Node::Leaf { .. })) {
                return bad("tree root is not a leaf".into());
            }
        }
        // A tree is acyclic when it has one fewer edge than nodes.
        let mut per_tree = vec![(0usize, 0usize); self.roots.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            per_tree[owner[i]].0 += 1;
            per_tree[owner[i]].1 += match n {
                Node::Leaf { .. } => 1,
                Node::Tri { .. } => 3,
            };
        }
        if per_tree.iter().any(|&(v, h)| h != 2 * (v - 1)) {
            return bad("component is not a tree".into());
        }
        for (e, t, h) in self.dotted_edges() {
            if t == usize::MAX || h == usize::MAX {
                return Err(GraphError::UnpairedDot(e));
            }
        }
        let mut seen = BTreeSet::new();
        for l in self.leaves() {
            if let Slot::Dot { edge, head } = self.slot(l) {
                if !seen.insert((edge, head)) {
                    return Err(GraphError::UnpairedDot(edge));
                }
            }
        }
        Ok(())
    }

    fn adjacent(&self, x: usize, y: usize) -> bool {
        match &self.nodes[x] {
            Node::Leaf { nbr, .. } => *nbr == y,
            Node::Tri { nbrs } => nbrs.contains(&y),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Color(s) => write!(f, "h:{}", crate::tensor::letter_name(*s)),
            Slot::Dot { edge, head } => write!(f, "d:{}{}", edge, if *head { 'H' } else { 'T' }),
        }
    }
}

impl fmt::Display for HairyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, &root) in self.roots.iter().enumerate() {
            if t > 0 {
                write!(f, " | ")?;
            }
            let top = self.neighbor(root);
            let (x, y) = self.children(top, root);
            write!(f, "T({}, ", self.slot(root))?;
            self.fmt_sub(f, x, top)?;
            write!(f, ", ")?;
            self.fmt_sub(f, y, top)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl HairyGraph {
    fn fmt_sub(&self, f: &mut fmt::Formatter<'_>, node: usize, parent: usize) -> fmt::Result {
        match &self.nodes[node] {
            Node::Leaf { slot, .. } => write!(f, "{slot}"),
            Node::Tri { .. } => {
                let (x, y) = self.children(node, parent);
                write!(f, "T(")?;
                self.fmt_sub(f, x, node)?;
                write!(f, ", ")?;
                self.fmt_sub(f, y, node)?;
                write!(f, ")")
            }
        }
    }
}
