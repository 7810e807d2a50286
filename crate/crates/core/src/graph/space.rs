//! Spanning sets, IHX relations and dimensions of one-tree graph spaces, and
//! the link to the derivation model.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use super::{canonicalize, GraphError, GraphVector, HairyGraph, Key, Node, Slot};
use crate::lie::{dominant_contents, orbit_size, tensor_commutator};
use crate::linalg::{echelonize, Rational, SparseVector, SubspaceBasis};
use crate::tensor::{pairing_sign, Sym, TensorVector};

/// Parameters of a graph space: `trees` trees, Lie degree `lie_degree`,
/// `dotted` dotted edges, colors in H of genus `genus`, optionally one GL weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSpec {
    pub trees: usize,
    pub ordered: bool,
    pub lie_degree: usize,
    pub dotted: usize,
    pub genus: usize,
    pub weight: Option<Vec<usize>>,
}

impl SpaceSpec {
    pub fn one_tree(lie_degree: usize, dotted: usize, genus: usize) -> Self {
        SpaceSpec {
            trees: 1,
            ordered: false,
            lie_degree,
            dotted,
            genus,
            weight: None,
        }
    }

    pub fn with_weight(mut self, weight: Vec<usize>) -> Self {
        self.weight = Some(weight);
        self
    }

    /// Number of H-colored leaves, from `n + 2k = m + 2r`.
    pub fn homological_degree(&self) -> Result<usize, GraphError> {
        let total = self.lie_degree + 2 * self.trees;
        if total < 2 * self.dotted || self.trees == 0 || self.lie_degree < self.trees {
            return Err(GraphError::Spec(format!(
                "n={} k={} r={} admit no graphs",
                self.lie_degree, self.trees, self.dotted
            )));
        }
        Ok(total - 2 * self.dotted)
    }

    fn check(&self) -> Result<usize, GraphError> {
        let m = self.homological_degree()?;
        if let Some(w) = &self.weight {
            if w.len() != 2 * self.genus || w.iter().sum::<usize>() != m {
                return Err(GraphError::Spec(format!("weight {w:?} does not fit m={m}, g={}", self.genus)));
            }
        }
        Ok(m)
    }
}

/// Calls `f` on every unrooted binary tree with leaves `0..leaves`; nodes
/// `0..leaves` are the leaves, the rest trivalent.
pub(crate) fn labelled_trees(leaves: usize, f: &mut dyn FnMut(&[Node])) {
    assert!(leaves >= 3);
    let placeholder = Node::Leaf {
        slot: Slot::Color(0),
        nbr: leaves,
    };
    let mut nodes = vec![placeholder; leaves];
    nodes.push(Node::Tri {
        nbrs: [0, 1, 2],
    });
    fn rec(nodes: &mut Vec<Node>, next: usize, leaves: usize, f: &mut dyn FnMut(&[Node])) {
        if next == leaves {
            f(nodes);
            return;
        }
        let mut edges = Vec::new();
        for j in 0..next {
            if let Node::Leaf { nbr, .. } = nodes[j] {
                edges.push((j, nbr));
            }
        }
        for t in leaves..nodes.len() {
            if let Node::Tri { nbrs } = nodes[t] {
                for x in nbrs {
                    if x >= leaves && x > t {
                        edges.push((t, x));
                    }
                }
            }
        }
        for (x, y) in edges {
            let t = nodes.len();
            let saved = nodes.clone();
            nodes.push(Node::Tri { nbrs: [x, y, next] });
            replace(nodes, x, y, t);
            replace(nodes, y, x, t);
            nodes[next] = Node::Leaf {
                slot: Slot::Color(0),
                nbr: t,
            };
            rec(nodes, next + 1, leaves, f);
            *nodes = saved;
        }
    }
    fn replace(nodes: &mut [Node], at: usize, old: usize, new: usize) {
        match &mut nodes[at] {
            Node::Leaf { nbr, .. } => *nbr = new,
            Node::Tri { nbrs } => {
                let k = nbrs.iter().position(|&z| z == old).unwrap();
                nbrs[k] = new;
            }
        }
    }
    rec(&mut nodes, 3, leaves, f);
}

fn slot_list(content: &[usize], dotted: usize) -> Vec<Slot> {
    let mut slots = Vec::new();
    for (s, &k) in content.iter().enumerate() {
        slots.extend(std::iter::repeat(Slot::Color(s as Sym)).take(k));
    }
    for e in 1..=dotted as u16 {
        slots.push(Slot::Dot { edge: e, head: false });
        slots.push(Slot::Dot { edge: e, head: true });
    }
    slots
}

/// Canonical graphs of one weight block with nonzero class, in key order.
fn block_basis(spec: &SpaceSpec, content: &[usize]) -> Vec<Key> {
    let slots = slot_list(content, spec.dotted);
    let leaves = slots.len();
    let mut keys = BTreeSet::new();
    labelled_trees(leaves, &mut |nodes| {
        let mut nodes = nodes.to_vec();
        for (i, s) in slots.iter().enumerate() {
            if let Node::Leaf { slot, .. } = &mut nodes[i] {
                *slot = *s;
            }
        }
        let g = HairyGraph::from_parts(nodes, vec![0], spec.genus, spec.ordered);
        let (sign, key) = canonicalize(&g).expect("one tree");
        if sign != 0 {
            keys.insert(key);
        }
    });
    keys.into_iter().collect()
}

pub fn enumerate_basis(spec: &SpaceSpec) -> Result<Vec<Key>, GraphError> {
    let m = spec.check()?;
    if spec.trees != 1 {
        return Err(GraphError::Spec("spanning sets are enumerated for one-tree spaces".into()));
    }
    match &spec.weight {
        Some(w) => Ok(block_basis(spec, w)),
        None => {
            let mut out = Vec::new();
            for c in crate::lie::all_contents(m, 2 * spec.genus) {
                out.extend(block_basis(spec, &c));
            }
            Ok(out)
        }
    }
}

/// The three graphs `(I, T2, T3)` of the IHX relation `I = T2 + T3` at the
/// internal edge `u`-`v`.
pub fn ihx_moves(g: &HairyGraph, u: usize, v: usize) -> [HairyGraph; 3] {
    let (a, b) = g.children(u, v);
    let (c, d) = g.children(v, u);
    let mut t2 = g.clone();
    t2.nodes[u] = Node::Tri { nbrs: [a, v, d] };
    t2.nodes[v] = Node::Tri { nbrs: [u, b, c] };
    t2.replace_nbr(d, v, u);
    t2.replace_nbr(b, u, v);
    let mut t3 = g.clone();
    t3.nodes[u] = Node::Tri { nbrs: [a, c, v] };
    t3.nodes[v] = Node::Tri { nbrs: [u, b, d] };
    t3.replace_nbr(c, v, u);
    t3.replace_nbr(b, u, v);
    [g.clone(), t2, t3]
}

/// Internal edges `(u, v)` with `u < v`.
pub fn internal_edges(g: &HairyGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (u, n) in g.nodes.iter().enumerate() {
        if let Node::Tri { nbrs } = n {
            for &v in nbrs {
                if v > u && matches!(g.nodes[v], Node::Tri { .. }) {
                    out.push((u, v));
                }
            }
        }
    }
    out
}

pub fn ihx_element(g: &HairyGraph, u: usize, v: usize) -> Result<GraphVector, GraphError> {
    let [i, t2, t3] = ihx_moves(g, u, v);
    let mut out = GraphVector::zero(g.genus, g.ordered);
    out.add_graph(&i, &Rational::one())?;
    out.add_graph(&t2, &Rational::from_int(-1))?;
    out.add_graph(&t3, &Rational::from_int(-1))?;
    Ok(out)
}

/// IHX vectors at every internal edge of every basis graph.
pub fn ihx_vectors(
    basis: &[Key],
    index: &FxHashMap<Key, usize>,
    genus: usize,
    ordered: bool,
) -> Result<Vec<SparseVector>, GraphError> {
    let mut rows = Vec::new();
    let probe = GraphVector::zero(genus, ordered);
    for k in basis {
        let g = probe.representative(k);
        for (u, v) in internal_edges(&g) {
            let r = ihx_element(&g, u, v)?;
            if !r.is_zero() {
                rows.push(r.to_sparse(index)?);
            }
        }
    }
    Ok(rows)
}

/// One weight block of a one-tree space: its spanning graphs and IHX span.
static BLOCK_LIMIT: AtomicUsize = AtomicUsize::new(usize::MAX);

/// Largest spanning set a block may have before building it fails with a resource error.
pub fn set_block_limit(limit: usize) {
    BLOCK_LIMIT.store(limit, Ordering::Relaxed);
}

pub(crate) fn check_block_size(len: usize) -> Result<(), GraphError> {
    let limit = BLOCK_LIMIT.load(Ordering::Relaxed);
    if len > limit {
        return Err(GraphError::Resource(format!("block of size {len} exceeds the limit {limit}")));
    }
    Ok(())
}

#[derive(Debug)]
pub struct BlockSpace {
    pub spec: SpaceSpec,
    pub basis: Vec<Key>,
    pub index: FxHashMap<Key, usize>,
    pub relations: SubspaceBasis,
}

impl BlockSpace {
    pub fn build(spec: &SpaceSpec) -> Result<BlockSpace, GraphError> {
        if spec.weight.is_none() {
            return Err(GraphError::Spec("a block needs a weight".into()));
        }
        let basis = enumerate_basis(spec)?;
        check_block_size(basis.len())?;
        let index: FxHashMap<Key, usize> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let rows = ihx_vectors(&basis, &index, spec.genus, spec.ordered)?;
        let relations = echelonize(&rows, basis.len())?;
        Ok(BlockSpace {
            spec: spec.clone(),
            basis,
            index,
            relations,
        })
    }

    /// Shared, memoized block.
    pub fn cached(spec: &SpaceSpec) -> Result<Arc<BlockSpace>, GraphError> {
        static CACHE: OnceLock<Mutex<FxHashMap<SpaceSpec, Arc<BlockSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().unwrap().get(spec) {
            return Ok(b.clone());
        }
        let b = Arc::new(BlockSpace::build(spec)?);
        Ok(cache.lock().unwrap().entry(spec.clone()).or_insert(b).clone())
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - self.relations.rank()
    }

    pub fn coords(&self, v: &GraphVector) -> Result<SparseVector, GraphError> {
        v.to_sparse(&self.index)
    }

    /// Whether `v` vanishes modulo IHX.
    pub fn is_zero(&self, v: &GraphVector) -> Result<bool, GraphError> {
        Ok(self.relations.residue(&self.coords(v)?)?.is_zero())
    }

    pub fn vector(&self, coords: &SparseVector) -> GraphVector {
        let mut out = GraphVector::zero(self.spec.genus, self.spec.ordered);
        for (i, c) in coords.entries() {
            out.add_key(self.basis[*i].clone(), c.clone());
        }
        out
    }
}

/// Whether a combination of one-tree graphs vanishes modulo IHX, checked in
/// each (Lie degree, dotted edges, weight) block separately.
pub fn vanishes_mod_ihx(v: &GraphVector) -> Result<bool, GraphError> {
    if v.ordered() {
        return Err(GraphError::Shape("one-tree graphs".into()));
    }
    let mut blocks: FxHashMap<(usize, usize, Vec<usize>), GraphVector> = FxHashMap::default();
    for (key, c) in v.terms() {
        let g = v.representative(key);
        if g.tree_count() != 1 {
            return Err(GraphError::Shape("one-tree graphs".into()));
        }
        blocks
            .entry((g.lie_degree(), g.dotted_count(), g.content()))
            .or_insert_with(|| GraphVector::zero(v.genus(), false))
            .add_key(key.clone(), c.clone());
    }
    for ((n, r, content), part) in blocks {
        let spec = SpaceSpec::one_tree(n, r, v.genus()).with_weight(content);
        if !BlockSpace::cached(&spec)?.is_zero(&part)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn ihx_relations(spec: &SpaceSpec) -> Result<SubspaceBasis, GraphError> {
    let basis = enumerate_basis(spec)?;
    let index: FxHashMap<Key, usize> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let rows = ihx_vectors(&basis, &index, spec.genus, spec.ordered)?;
    Ok(echelonize(&rows, basis.len())?)
}

/// Dimension of the quotient by IHX, per weight block; without a weight, the
/// sum over dominant weights times their orbit sizes.
pub fn space_dim(spec: &SpaceSpec) -> Result<usize, GraphError> {
    let m = spec.check()?;
    if spec.weight.is_some() {
        return Ok(BlockSpace::cached(spec)?.dim());
    }
    let mut total = 0;
    for c in dominant_contents(m, 2 * spec.genus) {
        let block = BlockSpace::cached(&spec.clone().with_weight(c.clone()))?;
        total += block.dim() * orbit_size(&c);
    }
    Ok(total)
}

fn require_plain_tree(g: &HairyGraph) -> Result<(), GraphError> {
    if g.tree_count() != 1 || g.dotted_count() != 0 {
        return Err(GraphError::Shape("one tree without dotted edges".into()));
    }
    Ok(())
}

pub(crate) fn lie_word(g: &HairyGraph, node: usize, parent: usize) -> TensorVector {
    match g.nodes[node] {
        Node::Leaf {
            slot: Slot::Color(s), ..
        } => TensorVector::word(vec![s], g.genus),
        Node::Leaf { .. } => unreachable!("plain trees have colored leaves"),
        Node::Tri { .. } => {
            let (x, y) = g.children(node, parent);
            tensor_commutator(&lie_word(g, x, node), &lie_word(g, y, node))
        }
    }
}

/// Sum over leaves of `color (x) (Lie word of the tree rooted there)`.
pub fn tree_to_derivation(x: &GraphVector) -> Result<TensorVector, GraphError> {
    let mut out = TensorVector::zero(x.genus());
    for (g, c) in x.graphs() {
        require_plain_tree(&g)?;
        for l in g.leaves() {
            let Slot::Color(s) = g.slot(l) else { unreachable!() };
            for (w, d) in lie_word(&g, g.neighbor(l), l).terms() {
                let mut full = vec![s];
                full.extend_from_slice(w);
                out.add_term(full, c * d);
            }
        }
    }
    Ok(out)
}

/// Sum over leaf pairs `(l in x, l' in y)` of `(c(l) . c(l'))` times the tree
/// glued along `l` and `l'`.
pub fn bracket_h(x: &GraphVector, y: &GraphVector) -> Result<GraphVector, GraphError> {
    let genus = x.genus().max(y.genus());
    let mut out = GraphVector::zero(genus, false);
    for (gx, cx) in x.graphs() {
        require_plain_tree(&gx)?;
        for (gy, cy) in y.graphs() {
            require_plain_tree(&gy)?;
            let u = gx.disjoint_union(&gy);
            let off = gx.nodes.len();
            let coeff = cx * cy;
            for l in gx.leaves() {
                let Slot::Color(s) = gx.slot(l) else { unreachable!() };
                for l2 in gy.leaves() {
                    let Slot::Color(t) = gy.slot(l2) else { unreachable!() };
                    let p = pairing_sign(s, t);
                    if p != 0 {
                        let glued = u.glue(l, l2 + off)?;
                        out.add_graph(&glued, &(&coeff * &Rational::from_int(p)))?;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_factorial(n: usize) -> usize {
        (1..=n).rev().step_by(2).product()
    }

    #[test]
    fn labelled_tree_counts() {
        for leaves in 3..=7 {
            let mut count = 0;
            labelled_trees(leaves, &mut |_| count += 1);
            assert_eq!(count, double_factorial(2 * leaves - 5));
        }
    }

    #[test]
    fn tripod_space() {
        // Colorings of a tripod at genus 1: only letters with some repeat exist,
        // and a repeated letter next to the same vertex kills the graph.
        let spec = SpaceSpec::one_tree(1, 0, 1);
        assert_eq!(enumerate_basis(&spec).unwrap().len(), 0);
        assert_eq!(space_dim(&SpaceSpec::one_tree(1, 0, 2)).unwrap(), 4);
    }
}
