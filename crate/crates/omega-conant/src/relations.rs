//! The relations of `Ω` as graph surgery on one-tree graphs.
//!
//! (C1) kills a dotted edge joining two leaves at one vertex. (C2) slides a
//! colored hair across a dotted edge, keeping its side relative to the loop.
//! (C3) sums over which of the three edges at a vertex stays solid when the
//! other two are dotted edges pointing away from it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use hlg_core::graph::{BlockSpace, GraphVector, HairyGraph, Node, Slot, SpaceSpec};
use hlg_core::linalg::{Eliminator, Rational, SparseVector, SubspaceBasis};

use crate::OmegaError;

/// Which relation families to impose, on top of IHX.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationSet {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

impl RelationSet {
    pub const ALL: RelationSet = RelationSet {
        c1: true,
        c2: true,
        c3: true,
    };
}

fn leaf_nbr(g: &HairyGraph, l: usize) -> usize {
    g.neighbor(l)
}

fn tri(nodes: &[Node], v: usize) -> Option<[usize; 3]> {
    match nodes[v] {
        Node::Tri { nbrs } => Some(nbrs),
        Node::Leaf { .. } => None,
    }
}

fn leaf_slot(nodes: &[Node], i: usize) -> Option<Slot> {
    match nodes[i] {
        Node::Leaf { slot, .. } => Some(slot),
        Node::Tri { .. } => None,
    }
}

fn replace_in(nodes: &mut [Node], at: usize, map: &[(usize, usize)]) {
    if let Node::Tri { nbrs } = &mut nodes[at] {
        for x in nbrs.iter_mut() {
            if let Some(&(_, to)) = map.iter().find(|(from, _)| from == x) {
                *x = to;
            }
        }
    }
}

fn set_leaf_nbr(nodes: &mut [Node], leaf: usize, to: usize) {
    if let Node::Leaf { nbr, .. } = &mut nodes[leaf] {
        *nbr = to;
    }
}

/// `nbrs` rotated so that `first` comes first.
fn rotated(nbrs: [usize; 3], first: usize) -> [usize; 3] {
    let k = nbrs.iter().position(|&x| x == first).expect("neighbor");
    [nbrs[k], nbrs[(k + 1) % 3], nbrs[(k + 2) % 3]]
}

/// Whether some dotted edge joins two leaves at the same vertex.
pub fn has_c1_loop(g: &HairyGraph) -> bool {
    g.dotted_edges()
        .into_iter()
        .any(|(_, t, h)| leaf_nbr(g, t) == leaf_nbr(g, h))
}

/// Graphs equal to `g` by one slide of a colored hair across a dotted edge.
pub fn c2_partners(g: &HairyGraph) -> Vec<HairyGraph> {
    let mut out = Vec::new();
    for (_, t, h) in g.dotted_edges() {
        for (x, y) in [(t, h), (h, t)] {
            let v = leaf_nbr(g, x);
            let m = leaf_nbr(g, y);
            if m == v {
                continue;
            }
            let Some(around) = tri(g.nodes(), v) else { continue };
            let [_, after, before] = rotated(around, x);
            for (c, n, left) in [(before, after, true), (after, before, false)] {
                if !matches!(leaf_slot(g.nodes(), c), Some(Slot::Color(_))) || tri(g.nodes(), n).is_none() {
                    continue;
                }
                let mut nodes = g.nodes().to_vec();
                set_leaf_nbr(&mut nodes, x, n);
                set_leaf_nbr(&mut nodes, y, v);
                if n == m {
                    replace_in(&mut nodes, n, &[(v, x), (y, v)]);
                } else {
                    replace_in(&mut nodes, n, &[(v, x)]);
                    replace_in(&mut nodes, m, &[(y, v)]);
                }
                nodes[v] = Node::Tri {
                    nbrs: if left { [m, y, c] } else { [m, c, y] },
                };
                if let Ok(slid) = HairyGraph::one_tree_from_nodes(nodes, g.genus()) {
                    out.push(slid);
                }
            }
        }
    }
    out
}

/// The (C3) sums at every vertex carrying two dotted leaves, as graph vectors.
pub fn c3_sums(g: &HairyGraph) -> Result<Vec<GraphVector>, OmegaError> {
    let mut out = Vec::new();
    for v in 0..g.nodes().len() {
        let Some(nbrs) = tri(g.nodes(), v) else { continue };
        let dotted: Vec<usize> = nbrs
            .iter()
            .copied()
            .filter(|&l| matches!(leaf_slot(g.nodes(), l), Some(Slot::Dot { .. })))
            .collect();
        if dotted.len() != 2 {
            continue;
        }
        let Some(&r0) = nbrs.iter().find(|x| !dotted.contains(x)) else { continue };
        if tri(g.nodes(), r0).is_none() {
            continue;
        }
        let mut base = g.clone();
        let mut far = Vec::new();
        for &l in &dotted {
            let Slot::Dot { edge, head } = g.slot(l) else { unreachable!() };
            if head {
                base.flip_edge(edge);
            }
            let other = g
                .dotted_edges()
                .into_iter()
                .find(|&(e, _, _)| e == edge)
                .map(|(_, t, h)| if t == l { h } else { t })
                .unwrap();
            far.push(other);
        }
        if far.iter().any(|&h| leaf_nbr(g, h) == v) {
            continue;
        }
        let [_, l1, l2] = rotated(nbrs, r0);
        let heads: HashMap<usize, usize> = dotted.iter().copied().zip(far.iter().copied()).collect();
        let mut sum = GraphVector::from_graph(&base)?;
        for (pos, l) in [(1, l1), (2, l2)] {
            let h = heads[&l];
            let r = leaf_nbr(g, h);
            let mut nodes = base.nodes().to_vec();
            let mut at_v = [r0, l1, l2];
            at_v[0] = l;
            at_v[pos] = r;
            nodes[v] = Node::Tri { nbrs: at_v };
            set_leaf_nbr(&mut nodes, h, r0);
            if r == r0 {
                replace_in(&mut nodes, r0, &[(v, h), (h, v)]);
            } else {
                replace_in(&mut nodes, r0, &[(v, h)]);
                replace_in(&mut nodes, r, &[(h, v)]);
            }
            let term = HairyGraph::one_tree_from_nodes(nodes, g.genus())?;
            sum.add_graph(&term, &Rational::one())?;
        }
        out.push(sum);
    }
    Ok(out)
}

/// One block of one-tree graphs with the IHX relations and the chosen
/// relation families.
#[derive(Debug)]
pub struct OmegaBlock {
    pub block: Arc<BlockSpace>,
    pub relations: SubspaceBasis,
}

impl OmegaBlock {
    pub fn dim(&self) -> usize {
        self.block.len() - self.relations.rank()
    }

    pub fn residue(&self, v: &GraphVector) -> Result<SparseVector, OmegaError> {
        Ok(self.relations.residue(&self.block.coords(v)?)?)
    }

    pub fn is_zero(&self, v: &GraphVector) -> Result<bool, OmegaError> {
        Ok(self.residue(v)?.is_zero())
    }
}

pub fn omega_block(
    lie_degree: usize,
    loops: usize,
    content: &[usize],
    genus: usize,
    set: RelationSet,
) -> Result<Arc<OmegaBlock>, OmegaError> {
    type CacheKey = (usize, usize, Vec<usize>, usize, (bool, bool, bool));
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<OmegaBlock>>>> = OnceLock::new();
    let key = (lie_degree, loops, content.to_vec(), genus, (set.c1, set.c2, set.c3));
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let spec = SpaceSpec::one_tree(lie_degree, loops, genus).with_weight(content.to_vec());
    let block = BlockSpace::cached(&spec)?;
    let mut elim = Eliminator::new(block.len());
    for row in block.relations.rows() {
        elim.insert(row)?;
    }
    for k in &block.basis {
        if elim.is_full() {
            break;
        }
        let g = HairyGraph::from_key(k, genus, false);
        if set.c1 && has_c1_loop(&g) {
            elim.insert(&block.coords(&GraphVector::from_graph(&g)?)?)?;
        }
        if set.c2 {
            for slid in c2_partners(&g) {
                let mut d = GraphVector::from_graph(&g)?;
                d.add_graph(&slid, &Rational::from_int(-1))?;
                elim.insert(&block.coords(&d)?)?;
            }
        }
        if set.c3 {
            for s in c3_sums(&g)? {
                elim.insert(&block.coords(&s)?)?;
            }
        }
    }
    let out = Arc::new(OmegaBlock {
        block,
        relations: elim.into_basis(),
    });
    Ok(cache.lock().unwrap().entry(key).or_insert(out).clone())
}

/// Whether `x` is zero in `Ω`.
pub fn omega_is_zero(x: &GraphVector) -> Result<bool, OmegaError> {
    if x.ordered() {
        return Err(OmegaError::Shape("one-tree graphs".into()));
    }
    let mut parts: HashMap<(usize, usize, Vec<usize>), GraphVector> = HashMap::new();
    for (key, c) in x.terms() {
        let g = x.representative(key);
        if g.tree_count() != 1 {
            return Err(OmegaError::Shape("one-tree graphs".into()));
        }
        parts
            .entry((g.lie_degree(), g.dotted_count(), g.content()))
            .or_insert_with(|| GraphVector::zero(x.genus(), false))
            .add_key(key.clone(), c.clone());
    }
    for ((n, r, content), part) in parts {
        if !omega_block(n, r, &content, x.genus(), RelationSet::ALL)?.is_zero(&part)? {
            return Ok(false);
        }
    }
    Ok(true)
}
