//! The two-loop quotient as graphs modulo IHX and the span of `Θ_R`, and the
//! passage from two-loop graphs to theta symbols.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use hlg_core::graph::{BlockSpace, GraphVector, SpaceSpec};
use hlg_core::linalg::{Eliminator, Rational, SubspaceBasis, TrackedEliminator};
use hlg_core::tensor::Sym;

use crate::cores::{theta_graph, Connector};
use crate::formal::{symbols_with_content, ThetaTerm, ThetaVector};
use crate::Omega2Error;

/// `Θ_R(t,u,v,w)`: the sum of the three theta graphs over the solid connector.
pub fn theta_r_graph(t: &[Sym], u: &[Sym], v: &[Sym], w: &[Sym], genus: usize) -> Result<GraphVector, Omega2Error> {
    let mut out = GraphVector::zero(genus, false);
    for c in [Connector::Left, Connector::Middle, Connector::Right] {
        out.add_graph(&theta_graph(c, t, u, v, w, genus)?, &Rational::one())?;
    }
    Ok(out)
}

/// One letter-content block of two-loop graphs with the IHX relations and
/// every `Θ_R` of that content.
#[derive(Debug)]
pub struct RBlock {
    pub content: Vec<usize>,
    pub block: Arc<BlockSpace>,
    pub relations: SubspaceBasis,
}

impl RBlock {
    pub fn dim(&self) -> usize {
        self.block.len() - self.relations.rank()
    }

    pub fn contains(&self, v: &GraphVector) -> Result<bool, Omega2Error> {
        Ok(self.relations.residue(&self.block.coords(v)?)?.is_zero())
    }
}

fn two_loop_block(content: &[usize], genus: usize) -> Result<Arc<BlockSpace>, Omega2Error> {
    let m: usize = content.iter().sum();
    Ok(BlockSpace::cached(&SpaceSpec::one_tree(m + 2, 2, genus).with_weight(content.to_vec()))?)
}

pub fn r_block(content: &[usize], genus: usize) -> Result<Arc<RBlock>, Omega2Error> {
    type Cache = Mutex<HashMap<(Vec<usize>, usize), Arc<RBlock>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (content.to_vec(), genus);
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let block = two_loop_block(content, genus)?;
    let mut elim = Eliminator::new(block.len());
    for row in block.relations.rows() {
        elim.insert(row)?;
    }
    for x in symbols_with_content(content) {
        if elim.is_full() {
            break;
        }
        elim.insert(&block.coords(&theta_r_graph(&x.t, &x.u, &x.v, &x.w, genus)?)?)?;
    }
    let out = Arc::new(RBlock {
        content: content.to_vec(),
        block,
        relations: elim.into_basis(),
    });
    Ok(cache.lock().unwrap().entry(key).or_insert(out).clone())
}

fn split_by_content(x: &GraphVector) -> Result<BTreeMap<Vec<usize>, GraphVector>, Omega2Error> {
    let mut parts: BTreeMap<Vec<usize>, GraphVector> = BTreeMap::new();
    for (key, c) in x.terms() {
        let g = x.representative(key);
        if g.tree_count() != 1 || g.dotted_count() != 2 {
            return Err(Omega2Error::Graph(hlg_core::graph::GraphError::Shape(
                "one tree with two dotted edges".into(),
            )));
        }
        parts
            .entry(g.content())
            .or_insert_with(|| GraphVector::zero(x.genus(), false))
            .add_key(key.clone(), c.clone());
    }
    Ok(parts)
}

/// Whether `x` lies in the span of the IHX relations and the `Θ_R` graphs.
pub fn r_membership(x: &GraphVector) -> Result<bool, Omega2Error> {
    for (content, part) in split_by_content(x)? {
        if !r_block(&content, x.genus())?.contains(&part)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// IHX relations followed by the theta graphs of every canonical symbol.
struct ThetaSolver {
    block: Arc<BlockSpace>,
    elim: TrackedEliminator,
    offset: usize,
    symbols: Vec<ThetaTerm>,
}

fn theta_solver(content: &[usize], genus: usize) -> Result<ThetaSolver, Omega2Error> {
    let block = two_loop_block(content, genus)?;
    let mut elim = TrackedEliminator::new(block.len());
    let offset = block.relations.rows().len();
    for row in block.relations.rows() {
        elim.push(row)?;
    }
    let mut symbols: Vec<ThetaTerm> = symbols_with_content(content)
        .iter()
        .filter_map(|x| x.canonical().map(|(_, c)| c))
        .collect();
    symbols.sort();
    symbols.dedup();
    for x in &symbols {
        let g = theta_graph(Connector::Middle, &x.t, &x.u, &x.v, &x.w, genus)?;
        elim.push(&block.coords(&GraphVector::from_graph(&g)?)?)?;
    }
    Ok(ThetaSolver {
        block,
        elim,
        offset,
        symbols,
    })
}

/// A combination of theta symbols whose graph agrees with `x` modulo IHX.
pub fn reduce_to_theta(x: &GraphVector) -> Result<ThetaVector, Omega2Error> {
    let mut out = ThetaVector::zero();
    for (content, part) in split_by_content(x)? {
        let solver = theta_solver(&content, x.genus())?;
        let coeffs = solver
            .elim
            .express(&solver.block.coords(&part)?)?
            .ok_or_else(|| Omega2Error::NotTheta(format!("graph of content {content:?}")))?;
        for (i, c) in coeffs.entries() {
            if *i >= solver.offset {
                out.add(&solver.symbols[i - solver.offset], c);
            }
        }
    }
    Ok(out)
}

/// Dimension of the two-loop quotient in one letter content.
pub fn two_loop_quotient_dim(content: &[usize], genus: usize) -> Result<usize, Omega2Error> {
    Ok(r_block(content, genus)?.dim())
}
