//! Homomorphisms from the degree six two-loop graphs onto `Λ⁴H`.
//!
//! A homomorphism is fixed by its values `k` on seven uncolored theta graphs
//! `J¹ … J⁷`, with parameters named `p q r s t u v`. The theta graph with
//! hair counts `abcde` has all hairs hanging down and counts them on five
//! segments from left to right: the outer left arc, the inner left arc, the
//! middle edge, the inner right arc and the outer right arc. Both dotted
//! edges point from right to left.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use hlg_core::graph::{BlockSpace, Expr, GraphVector, HairyGraph, Side, Slot, SpaceSpec};
use hlg_core::linalg::{left_kernel, Eliminator, Rational, SparseVector, SubspaceBasis, TrackedEliminator};
use hlg_core::tensor::Sym;

use crate::formal::symbols_with_content;
use crate::presentation::theta_r_graph;
use crate::Omega2Error;

pub const PARAMETERS: [char; 7] = ['p', 'q', 'r', 's', 't', 'u', 'v'];

/// Values of `k` on the 22 uncolored shapes of the degree six block, one
/// `shape<TAB>form` line each.
pub const K_TABLE: &str = include_str!("../data/k_values.tsv");

pub const J_SHAPES: [&str; 7] = ["40000", "20200", "10210", "30100", "20110", "02020", "03010"];

/// Hair counts on the five segments of the theta graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(pub [usize; 5]);

impl Shape {
    pub fn hairs(&self) -> usize {
        self.0.iter().sum()
    }
}

impl FromStr for Shape {
    type Err = Omega2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Omega2Error::Parse(s.to_string()))?;
        <[usize; 5]>::try_from(digits).map(Shape).map_err(|_| Omega2Error::Parse(s.to_string()))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|d| write!(f, "{d}"))
    }
}

/// The theta graph of `shape` with hairs colored by `colors` from left to right.
pub fn shape_graph(shape: Shape, colors: &[Sym], genus: usize) -> Result<HairyGraph, Omega2Error> {
    if colors.len() != shape.hairs() {
        return Err(Omega2Error::Shape(format!("{shape} needs {} colors", shape.hairs())));
    }
    let mut rest = colors;
    let mut segments = Vec::new();
    for &k in &shape.0 {
        let (seg, tail) = rest.split_at(k);
        segments.push(seg);
        rest = tail;
    }
    let hang = |side: Side, seg: &[Sym], reversed: bool| -> Vec<(Side, Expr)> {
        let it: Box<dyn Iterator<Item = &Sym>> = if reversed { Box::new(seg.iter().rev()) } else { Box::new(seg.iter()) };
        it.map(|&s| (side, Expr::color(s))).collect()
    };
    let (outer, inner) = (1, 2);
    let outer_left = Expr::path(hang(Side::Left, segments[0], true), Expr::head(outer));
    let inner_left = Expr::path(hang(Side::Right, segments[1], false), Expr::head(inner));
    let inner_right = Expr::path(hang(Side::Left, segments[3], true), Expr::tail(inner));
    let outer_right = Expr::path(hang(Side::Right, segments[4], false), Expr::tail(outer));
    let middle = Expr::path(hang(Side::Right, segments[2], false), Expr::node(outer_right, inner_right));
    Ok(HairyGraph::from_trees(vec![[middle, inner_left, outer_left]], genus, false)?)
}

/// A linear form in the seven parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KForm(pub [Rational; 7]);

impl KForm {
    pub fn zero() -> Self {
        KForm(std::array::from_fn(|_| Rational::zero()))
    }

    /// The form on the six parameters `p … u` after substituting `v = -(q+r+s+t)/2`.
    pub fn reduced(&self) -> [Rational; 6] {
        let half = &self.0[6] * &Rational::new(-1, 2);
        std::array::from_fn(|i| match i {
            1..=4 => &self.0[i] + &half,
            _ => self.0[i].clone(),
        })
    }

    pub fn eval(&self, params: &[Rational; 7]) -> Rational {
        self.0.iter().zip(params).fold(Rational::zero(), |acc, (a, b)| &acc + &(a * b))
    }
}

impl FromStr for KForm {
    type Err = Omega2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Omega2Error::Parse(s.to_string());
        let mut out = KForm::zero();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(out);
        }
        let mut chars = compact.chars().peekable();
        while chars.peek().is_some() {
            let mut sign = 1;
            if let Some(&c) = chars.peek() {
                if c == '+' || c == '-' {
                    sign = if c == '-' { -1 } else { 1 };
                    chars.next();
                }
            }
            let mut digits = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(c);
                chars.next();
            }
            let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            let name = chars.next().ok_or_else(bad)?;
            let i = PARAMETERS.iter().position(|&p| p == name).ok_or_else(bad)?;
            out.0[i] = &out.0[i] + &Rational::from_int(sign * coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.0.iter().zip(PARAMETERS) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, "-")?,
                (false, false) => write!(f, "+")?,
                (true, false) => {}
            }
            if mag != Rational::one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{name}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn recolor(g: &HairyGraph, map: &HashMap<Sym, Sym>) -> HairyGraph {
    let mut h = g.clone();
    for l in g.leaves() {
        if let Slot::Color(s) = g.slot(l) {
            h.set_slot(l, Slot::Color(map.get(&s).copied().unwrap_or(s)));
        }
    }
    h
}

/// The multilinear block of degree six two-loop graphs in four distinct
/// letters, modulo IHX and `x + σx` for every transposition `σ` of the letters.
#[derive(Debug)]
pub struct AlternatingBlock {
    pub genus: usize,
    pub letters: [Sym; 4],
    pub block: Arc<BlockSpace>,
    pub relations: SubspaceBasis,
    solver: TrackedEliminator,
    offset: usize,
    with_r: OnceLock<SubspaceBasis>,
}

impl AlternatingBlock {
    pub fn build(genus: usize) -> Result<Self, Omega2Error> {
        if genus < 2 {
            return Err(Omega2Error::Shape("genus at least 2".into()));
        }
        let letters: [Sym; 4] = [0, 1, 2, 3];
        let mut content = vec![0; 2 * genus];
        content[..4].fill(1);
        let block = BlockSpace::cached(&SpaceSpec::one_tree(6, 2, genus).with_weight(content))?;
        let mut elim = Eliminator::new(block.len());
        for row in block.relations.rows() {
            elim.insert(row)?;
        }
        for key in block.basis.iter() {
            let g = HairyGraph::from_key(key, genus, false);
            for i in 0..3 {
                let swap = HashMap::from([(letters[i], letters[i + 1]), (letters[i + 1], letters[i])]);
                let mut v = GraphVector::from_graph(&g)?;
                v.add_graph(&recolor(&g, &swap), &Rational::one())?;
                elim.insert(&block.coords(&v)?)?;
            }
        }
        let relations = elim.into_basis();
        let mut solver = TrackedEliminator::new(block.len());
        for row in relations.rows() {
            solver.push(row)?;
        }
        let offset = relations.rows().len();
        for shape in J_SHAPES {
            let g = shape_graph(shape.parse()?, &letters, genus)?;
            solver.push(&block.coords(&GraphVector::from_graph(&g)?)?)?;
        }
        Ok(AlternatingBlock {
            genus,
            letters,
            block,
            relations,
            solver,
            offset,
            with_r: OnceLock::new(),
        })
    }

    /// Cached block per genus.
    pub fn cached(genus: usize) -> Result<Arc<Self>, Omega2Error> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<AlternatingBlock>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().unwrap().get(&genus) {
            return Ok(b.clone());
        }
        let b = Arc::new(AlternatingBlock::build(genus)?);
        Ok(cache.lock().unwrap().entry(genus).or_insert(b).clone())
    }

    /// Multiplicity of `Λ⁴H`: the dimension of the alternating quotient.
    pub fn multiplicity(&self) -> usize {
        self.block.len() - self.relations.rank()
    }

    /// The linear relations among the images of `J¹ … J⁷`, as coefficient vectors.
    pub fn j_relations(&self) -> Result<Vec<KForm>, Omega2Error> {
        let residues = J_SHAPES
            .iter()
            .map(|shape| {
                let g = shape_graph(shape.parse()?, &self.letters, self.genus)?;
                let v = self.block.coords(&GraphVector::from_graph(&g)?)?;
                Ok(self.relations.residue(&v)?)
            })
            .collect::<Result<Vec<SparseVector>, Omega2Error>>()?;
        Ok(left_kernel(&residues, self.block.len())?
            .into_iter()
            .map(|k| {
                let mut f = KForm::zero();
                for (i, c) in k.entries() {
                    f.0[*i] = c.clone();
                }
                f
            })
            .collect())
    }

    /// `k(x)` for a graph vector in the block's letters.
    fn k_of_block_vector(&self, v: &GraphVector) -> Result<KForm, Omega2Error> {
        let coeffs = self
            .solver
            .express(&self.block.coords(v)?)?
            .ok_or_else(|| Omega2Error::Shape("outside the span of the seven generators".into()))?;
        let mut f = KForm::zero();
        for (i, c) in coeffs.entries() {
            if *i >= self.offset {
                f.0[i - self.offset] = c.clone();
            }
        }
        Ok(f)
    }

    /// `k(x)` as a linear form in the parameters, where `π(x) = k(x) c1∧c2∧c3∧c4`
    /// for the letters `c1 < c2 < c3 < c4` of `x`, or zero when a letter repeats.
    pub fn k_eval(&self, x: &GraphVector) -> Result<KForm, Omega2Error> {
        let mut total = KForm::zero();
        let mut by_content: BTreeMap<Vec<usize>, GraphVector> = BTreeMap::new();
        for (key, c) in x.terms() {
            let g = x.representative(key);
            if g.tree_count() != 1 || g.dotted_count() != 2 || g.lie_degree() != 6 {
                return Err(Omega2Error::Shape("degree six graphs with two dotted edges".into()));
            }
            by_content
                .entry(g.content())
                .or_insert_with(|| GraphVector::zero(self.genus, false))
                .add_key(key.clone(), c.clone());
        }
        let mut letters_seen: Option<Vec<Sym>> = None;
        for (content, part) in by_content {
            if content.iter().any(|&k| k > 1) {
                continue;
            }
            let letters: Vec<Sym> = content.iter().positions(|&k| k == 1).map(|s| s as Sym).collect();
            if letters_seen.get_or_insert_with(|| letters.clone()) != &letters {
                return Err(Omega2Error::Shape("terms with different letter sets".into()));
            }
            let map: HashMap<Sym, Sym> = letters.iter().copied().zip(self.letters).collect();
            let mut moved = GraphVector::zero(self.genus, false);
            for (g, c) in part.graphs() {
                moved.add_graph(&recolor(&g.with_genus(self.genus), &map), c)?;
            }
            let f = self.k_of_block_vector(&moved)?;
            for i in 0..7 {
                total.0[i] = &total.0[i] + &f.0[i];
            }
        }
        Ok(total)
    }

    /// `π(x)` as coefficients on `c1∧c2∧c3∧c4` with increasing letters.
    pub fn pi_eval(&self, params: &[Rational; 7], x: &GraphVector) -> Result<BTreeMap<[Sym; 4], Rational>, Omega2Error> {
        if !constraint().eval(params).is_zero() {
            return Err(Omega2Error::Constraint);
        }
        let mut out = BTreeMap::new();
        let mut by_letters: BTreeMap<Vec<usize>, GraphVector> = BTreeMap::new();
        for (key, c) in x.terms() {
            let g = x.representative(key);
            by_letters
                .entry(g.content())
                .or_insert_with(|| GraphVector::zero(x.genus(), false))
                .add_key(key.clone(), c.clone());
        }
        for (content, part) in by_letters {
            let letters: Vec<Sym> = content.iter().positions(|&k| k == 1).map(|s| s as Sym).collect();
            let value = self.k_eval(&part)?.eval(params);
            if letters.len() == 4 && !value.is_zero() {
                out.insert(<[Sym; 4]>::try_from(letters).unwrap(), value);
            }
        }
        Ok(out)
    }

    fn theta_r_rows(&self) -> Result<Vec<GraphVector>, Omega2Error> {
        let mut content = vec![0; 2 * self.genus];
        content[..4].fill(1);
        symbols_with_content(&content)
            .iter()
            .map(|x| theta_r_graph(&x.t, &x.u, &x.v, &x.w, self.genus))
            .collect()
    }

    /// Whether `x`, in the block's letters, lies in the span of the alternating
    /// relations and the `Θ_R` graphs.
    pub fn in_r_mod_alternation(&self, x: &GraphVector) -> Result<bool, Omega2Error> {
        let span = match self.with_r.get() {
            Some(s) => s,
            None => {
                let mut elim = Eliminator::new(self.block.len());
                for row in self.relations.rows() {
                    elim.insert(row)?;
                }
                for v in self.theta_r_rows()? {
                    elim.insert(&self.block.coords(&v)?)?;
                }
                self.with_r.get_or_init(|| elim.into_basis())
            }
        };
        Ok(span.residue(&self.block.coords(x)?)?.is_zero())
    }

    /// Parameters `(p, …, u)` for which `π` kills every `Θ_R` in the block's letters.
    pub fn factorization_conditions(&self) -> Result<SubspaceBasis, Omega2Error> {
        let mut rows = Eliminator::new(6);
        for v in self.theta_r_rows()? {
            let f = self.k_eval(&v)?;
            rows.insert(&SparseVector::from_pairs(f.reduced().into_iter().enumerate()))?;
        }
        let rows = rows.into_basis();
        let columns: Vec<SparseVector> = (0..6)
            .map(|j| {
                SparseVector::from_pairs(
                    rows.rows()
                        .iter()
                        .enumerate()
                        .map(|(i, r)| (i, r.get(j))),
                )
            })
            .collect();
        let kernel = left_kernel(&columns, rows.rows().len().max(1))?;
        Ok(hlg_core::linalg::echelonize(&kernel, 6)?)
    }
}

/// `q + r + s + t + 2v`.
pub fn constraint() -> KForm {
    "q+r+s+t+2v".parse().expect("constant form")
}

/// The full seven-parameter tuple from `(p, …, u)`.
pub fn complete_parameters(six: &[Rational; 6]) -> [Rational; 7] {
    let v = &(&(&six[1] + &six[2]) + &(&six[3] + &six[4])) * &Rational::new(-1, 2);
    std::array::from_fn(|i| if i < 6 { six[i].clone() } else { v.clone() })
}

/// Uncolored shapes as a formatted list, for reports.
pub fn format_shapes(shapes: &[Shape]) -> String {
    shapes.iter().map(|s| s.to_string()).join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_roundtrip() {
        for s in ["-q+r-2t+u", "2q", "0", "p-s", "-s-v"] {
            assert_eq!(s.parse::<KForm>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn reduced_form_drops_v() {
        let f: KForm = "2v".parse().unwrap();
        let want: [Rational; 6] = std::array::from_fn(|i| Rational::from_int(if (1..=4).contains(&i) { -1 } else { 0 }));
        assert_eq!(f.reduced(), want);
    }
}
