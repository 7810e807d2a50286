//! The quotients of one-tree spaces by merged images of ordered tripod unions.
//!
//! A union of tripods with dotted edges is described, up to sign, by the
//! multiset of colors on each tripod and a multigraph of dotted edges (loops
//! allowed) between the tripods. The merge of all trees is nonzero only when
//! every tripod after the first has an edge to an earlier one.

use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use super::beta_power_terms;
use crate::graph::{enumerate_basis, BlockSpace, Expr, GraphError, GraphVector, HairyGraph, Slot, SpaceSpec, WeightBlock};
use crate::lie::{dominant_contents, orbit_size};
use crate::linalg::{Eliminator, Rational, SparseVector, SubspaceBasis};
use crate::tensor::{a, b, Sym};
use crate::weights::{contents_of_weight, dominant_sp_weights, sp_orbit_size};

/// Ways to spread the letters of `content` over `slots` tripods, at most three per tripod.
fn color_distributions(content: &[usize], slots: usize) -> Vec<Vec<Vec<Sym>>> {
    let letters: Vec<Sym> = content
        .iter()
        .enumerate()
        .flat_map(|(s, &k)| std::iter::repeat(s as Sym).take(k))
        .collect();
    let mut out = Vec::new();
    fn rec(letters: &[Sym], i: usize, cur: &mut Vec<Vec<Sym>>, out: &mut Vec<Vec<Vec<Sym>>>) {
        if i == letters.len() {
            out.push(cur.clone());
            return;
        }
        // Equal letters go to non-decreasing tripods so each multiset split appears once.
        let start = if i > 0 && letters[i - 1] == letters[i] {
            cur.iter().rposition(|t| t.last() == Some(&letters[i])).unwrap_or(0)
        } else {
            0
        };
        for t in start..cur.len() {
            if cur[t].len() < 3 {
                cur[t].push(letters[i]);
                rec(letters, i + 1, cur, out);
                cur[t].pop();
            }
        }
    }
    rec(&letters, 0, &mut vec![Vec::new(); slots], &mut out);
    out
}

/// Multigraphs with the given degrees as `(i, j, multiplicity)` with `i <= j`,
/// where every vertex after the first has an edge to an earlier vertex.
fn connected_multigraphs(degrees: &[usize]) -> Vec<Vec<(usize, usize, usize)>> {
    struct Ctx<'a> {
        n: usize,
        out: &'a mut Vec<Vec<(usize, usize, usize)>>,
    }
    fn rec(
        ctx: &mut Ctx,
        i: usize,
        j: usize,
        rem: &mut Vec<usize>,
        back: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize, usize)>,
    ) {
        if i == ctx.n {
            ctx.out.push(cur.clone());
            return;
        }
        if j == i {
            if i > 0 && !back[i] {
                return;
            }
            for l in 0..=rem[i] / 2 {
                rem[i] -= 2 * l;
                if l > 0 {
                    cur.push((i, i, l));
                }
                rec(ctx, i, i + 1, rem, back, cur);
                if l > 0 {
                    cur.pop();
                }
                rem[i] += 2 * l;
            }
            return;
        }
        if j == ctx.n {
            if rem[i] == 0 {
                rec(ctx, i + 1, i + 1, rem, back, cur);
            }
            return;
        }
        for k in 0..=rem[i].min(rem[j]) {
            rem[i] -= k;
            rem[j] -= k;
            let saved = back[j];
            if k > 0 {
                back[j] = true;
                cur.push((i, j, k));
            }
            rec(ctx, i, j + 1, rem, back, cur);
            if k > 0 {
                cur.pop();
            }
            back[j] = saved;
            rem[i] += k;
            rem[j] += k;
        }
    }
    let mut out = Vec::new();
    let n = degrees.len();
    let mut ctx = Ctx { n, out: &mut out };
    rec(&mut ctx, 0, 0, &mut degrees.to_vec(), &mut vec![false; n], &mut Vec::new());
    out
}

/// Calls `f` on a representative of every ordered tripod union with `tripods`
/// trees, colors `content` and `edges` dotted edges whose full merge can be nonzero.
pub fn for_each_tripod_union(
    content: &[usize],
    tripods: usize,
    genus: usize,
    f: &mut dyn FnMut(&HairyGraph) -> Result<(), GraphError>,
) -> Result<(), GraphError> {
    for colors in color_distributions(content, tripods) {
        let degrees: Vec<usize> = colors.iter().map(|c| 3 - c.len()).collect();
        if degrees.iter().sum::<usize>() % 2 == 1 {
            continue;
        }
        for edges in connected_multigraphs(&degrees) {
            let mut slots: Vec<Vec<Expr>> = colors.iter().map(|c| c.iter().map(|&s| Expr::color(s)).collect()).collect();
            let mut id = 1u16;
            for &(i, j, k) in &edges {
                for _ in 0..k {
                    slots[i].push(Expr::tail(id));
                    slots[j].push(Expr::head(id));
                    id += 1;
                }
            }
            let trees = slots
                .into_iter()
                .map(|v| <[Expr; 3]>::try_from(v).expect("three slots per tripod"))
                .collect();
            f(&HairyGraph::from_trees(trees, genus, true)?)?;
        }
    }
    Ok(())
}

/// One GL-weight block of the quotient: the one-tree block and the span of
/// IHX relations together with all merged tripod unions.
#[derive(Debug)]
pub struct OmegaBlock {
    pub block: Arc<BlockSpace>,
    pub relations: SubspaceBasis,
}

impl OmegaBlock {
    pub fn dim(&self) -> usize {
        self.block.len() - self.relations.rank()
    }

    pub fn residue(&self, v: &GraphVector) -> Result<SparseVector, GraphError> {
        Ok(self.relations.residue(&self.block.coords(v)?)?)
    }

    pub fn is_zero(&self, v: &GraphVector) -> Result<bool, GraphError> {
        Ok(self.residue(v)?.is_zero())
    }
}

/// Lie degree of the one-tree graphs with `loops` dotted edges and `m` colors.
pub fn loop_lie_degree(loops: usize, m: usize) -> Result<usize, GraphError> {
    (m + 2 * loops)
        .checked_sub(2)
        .filter(|&n| n >= 1)
        .ok_or_else(|| GraphError::Spec(format!("no graphs with r={loops}, m={m}")))
}

pub fn omega_tilde_block(loops: usize, content: &[usize], genus: usize) -> Result<Arc<OmegaBlock>, GraphError> {
    type Cache = Mutex<FxHashMap<(usize, Vec<usize>, usize), Arc<OmegaBlock>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let key = (loops, content.to_vec(), genus);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let m: usize = content.iter().sum();
    let n = loop_lie_degree(loops, m)?;
    let spec = SpaceSpec::one_tree(n, loops, genus).with_weight(content.to_vec());
    let block = BlockSpace::cached(&spec)?;
    let mut elim = Eliminator::new(block.len());
    for row in block.relations.rows() {
        elim.insert(row)?;
    }
    if !elim.is_full() {
        let mut scratch = GraphVector::zero(genus, false);
        for_each_tripod_union(content, n, genus, &mut |u| {
            if elim.is_full() {
                return Ok(());
            }
            scratch = GraphVector::zero(genus, false);
            for (s, h) in beta_power_terms(u)? {
                scratch.add_graph(&h, &Rational::from_int(s))?;
            }
            if !scratch.is_zero() {
                elim.insert(&block.coords(&scratch)?)?;
            }
            Ok(())
        })?;
    }
    let out = Arc::new(OmegaBlock {
        block,
        relations: elim.into_basis(),
    });
    Ok(cache.lock().unwrap().entry(key).or_insert(out).clone())
}

/// Total dimension of the quotient with `loops` dotted edges and `m` colors.
pub fn omega_tilde_dim(loops: usize, m: usize, genus: usize) -> Result<usize, GraphError> {
    if loops == 0 {
        return Ok(0);
    }
    let mut total = 0;
    for c in dominant_contents(m, 2 * genus) {
        total += omega_tilde_block(loops, &c, genus)?.dim() * orbit_size(&c);
    }
    Ok(total)
}

/// Graphs whose colors at the leaves marked by the extra letter pair of genus
/// `genus + 1` are replaced by the invariant `sum_k a_k (x) b_k - b_k (x) a_k`.
fn omega_insertions(
    lie_degree: usize,
    loops: usize,
    genus: usize,
    content: &[usize],
) -> Result<Vec<GraphVector>, GraphError> {
    let mut marked = content.to_vec();
    marked.extend([1, 1]);
    let spec = SpaceSpec::one_tree(lie_degree, loops, genus + 1).with_weight(marked);
    let (x, y) = (a(genus + 1), b(genus + 1));
    let mut out = Vec::new();
    for key in enumerate_basis(&spec)? {
        let g = HairyGraph::from_key(&key, genus + 1, false);
        let find = |s| g.leaves().find(|&l| g.slot(l) == Slot::Color(s)).expect("marked leaf");
        let (lx, ly) = (find(x), find(y));
        let mut v = GraphVector::zero(genus, false);
        for k in 1..=genus {
            for (p, q, sign) in [(a(k), b(k), 1), (b(k), a(k), -1)] {
                let mut h = g.clone().with_genus(genus);
                h.set_slot(lx, Slot::Color(p));
                h.set_slot(ly, Slot::Color(q));
                v.add_graph(&h, &Rational::from_int(sign))?;
            }
        }
        if !v.is_zero() {
            out.push(v);
        }
    }
    Ok(out)
}

/// Dimension of the top-level part of the quotient in symplectic weight
/// `weight`: the quotient modulo the images of colorings with an invariant pair.
pub fn omega_tilde_top_block(loops: usize, m: usize, genus: usize, weight: &[i32]) -> Result<usize, GraphError> {
    let n = loop_lie_degree(loops, m)?;
    let space = WeightBlock::one_tree(n, loops, genus, weight)?;
    let mut elim = Eliminator::new(space.len());
    for (k, content) in contents_of_weight(weight, m).iter().enumerate() {
        let omega = omega_tilde_block(loops, content, genus)?;
        for row in omega.relations.rows() {
            elim.insert(&space.shift(k, row))?;
        }
    }
    if m >= 2 {
        for content in contents_of_weight(weight, m - 2) {
            if elim.is_full() {
                break;
            }
            for v in omega_insertions(n, loops, genus, &content)? {
                elim.insert(&space.coords(&v)?)?;
            }
        }
    }
    Ok(space.len() - elim.rank())
}

/// Dimension of the top-level part of the quotient with `loops` dotted edges and `m` colors.
pub fn top_restrict(loops: usize, m: usize, genus: usize) -> Result<usize, GraphError> {
    if loops == 0 {
        return Ok(0);
    }
    let mut total = 0;
    for w in dominant_sp_weights(m, genus) {
        total += omega_tilde_top_block(loops, m, genus, &w)? * sp_orbit_size(&w);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributions_respect_capacity() {
        let d = color_distributions(&[2, 1], 2);
        // {0,0,1} over two tripods of capacity three, equal letters unordered.
        assert_eq!(d.len(), 6);
        assert!(d.iter().all(|v| v.iter().all(|t| t.len() <= 3)));
    }

    #[test]
    fn multigraph_enumeration() {
        // Two vertices of degree 3 joined: (1 loop + 1 edge) or 3 parallel edges.
        let g = connected_multigraphs(&[3, 3]);
        assert_eq!(g.len(), 2);
    }
}
