//! Dashed-line elements: a tree template summed over colorings of its marked
//! leaf pairs by a coloring set of vector pairs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use hlg_core::graph::{parse_graph, GraphVector, HairyGraph, Slot};
use hlg_core::linalg::{rank, Rational, SparseVector};
use hlg_core::tensor::{a, b, check_letter, letter_name, parse_letter, Sym};

use crate::LabError;

const MARKER_BASE: usize = 100;

/// A vector of H as a combination of basis letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HVector(BTreeMap<Sym, Rational>);

impl HVector {
    pub fn letter(s: Sym) -> Self {
        HVector(BTreeMap::from([(s, Rational::one())]))
    }

    pub fn neg(&self) -> Self {
        HVector(self.0.iter().map(|(&s, c)| (s, -c)).collect())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Sym, &Rational)> {
        self.0.iter().map(|(&s, c)| (s, c))
    }

    fn coords(&self) -> SparseVector {
        SparseVector::from_pairs(self.0.iter().map(|(&s, c)| (s as usize, c.clone())))
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&s, c) in &self.0 {
            let letter = letter_name(s);
            if c == &Rational::one() {
                write!(f, "{}{letter}", if first { "" } else { "+" })?;
            } else if c == &Rational::from_int(-1) {
                write!(f, "-{letter}")?;
            } else {
                write!(f, "{}{c}{letter}", if first || c < &Rational::zero() { "" } else { "+" })?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for HVector {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let letter = parse_letter(body.trim()).ok_or_else(|| LabError::Template(format!("bad vector `{s}`")))?;
        Ok(HVector(BTreeMap::from([(letter, Rational::from_int(sign))])))
    }
}

/// Ordered list of vector pairs used to color dashed lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringSet {
    pub pairs: Vec<(HVector, HVector)>,
}

impl ColoringSet {
    pub fn new(pairs: Vec<(HVector, HVector)>) -> Self {
        ColoringSet { pairs }
    }

    /// `{(a_j, b_j), (-b_j, a_j)}` for every `j` in `indices`.
    pub fn hyperbolic(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ColoringSet::new(Vec::new());
        for j in indices {
            s.push_with_reverse(HVector::letter(a(j)), HVector::letter(b(j)));
        }
        s
    }

    /// Adds `(x, y)` and `(-y, x)`.
    pub fn push_with_reverse(&mut self, x: HVector, y: HVector) {
        let reversed = (y.neg(), x.clone());
        self.pairs.push((x, y));
        self.pairs.push(reversed);
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether `(x, y) -> (-y, x)` maps the set to itself up to the sign of each pair.
    pub fn is_reversal_closed(&self) -> bool {
        self.pairs
            .iter()
            .all(|(x, y)| self.pairs.contains(&(y.neg(), x.clone())) || self.pairs.contains(&(y.clone(), x.neg())))
    }

    fn letters(&self) -> impl Iterator<Item = Sym> + '_ {
        self.pairs.iter().flat_map(|(x, y)| x.terms().chain(y.terms()).map(|(s, _)| s))
    }

    fn independent(&self, choice: &[usize]) -> Result<bool, LabError> {
        let vectors: Vec<SparseVector> = choice
            .iter()
            .flat_map(|&i| [self.pairs[i].0.coords(), self.pairs[i].1.coords()])
            .collect();
        let dim = 1 + vectors.iter().flat_map(|v| v.entries().iter().map(|e| e.0)).max().unwrap_or(0);
        Ok(rank(&vectors, dim)? == vectors.len())
    }
}

impl fmt::Display for ColoringSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A graph whose leaves include `m` ordered pairs `(v_i, w_i)` to be colored.
#[derive(Debug, Clone)]
pub struct DashedTemplate {
    pub graph: HairyGraph,
    pub pairs: Vec<(usize, usize)>,
}

impl DashedTemplate {
    /// Parses the graph text format with extra leaves `x:<i>v` and `x:<i>w`
    /// for the two ends of dashed line `i`, numbered from 1. Lines starting
    /// with `#` are comments.
    pub fn parse(text: &str, genus: usize) -> Result<Self, LabError> {
        let body: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).join("\n");
        let mut marked = String::new();
        let mut rest = body.as_str();
        while let Some(at) = rest.find("x:") {
            marked.push_str(&rest[..at]);
            let tail = &rest[at + 2..];
            let digits = tail.chars().take_while(|c| c.is_ascii_digit()).count();
            let line: usize = tail[..digits]
                .parse()
                .map_err(|_| LabError::Template(format!("bad dashed end near `{}`", &rest[at..])))?;
            let end = tail[digits..].chars().next();
            let letter = match end {
                Some('v') => format!("a{}", MARKER_BASE + line),
                Some('w') => format!("b{}", MARKER_BASE + line),
                _ => return Err(LabError::Template(format!("dashed end {line} needs v or w"))),
            };
            if line == 0 || MARKER_BASE + line > 127 {
                return Err(LabError::Template(format!("dashed line number {line} out of range")));
            }
            marked.push_str("h:");
            marked.push_str(&letter);
            rest = &tail[digits + 1..];
        }
        marked.push_str(rest);
        let wide = parse_graph(&marked, 127, false)?;
        let mut ends: BTreeMap<usize, (Option<usize>, Option<usize>)> = BTreeMap::new();
        for l in wide.leaves() {
            if let Slot::Color(s) = wide.slot(l) {
                let index = s as usize / 2 + 1;
                if index > MARKER_BASE {
                    let e = ends.entry(index - MARKER_BASE).or_default();
                    let seat = if s == a(index) { &mut e.0 } else { &mut e.1 };
                    if seat.replace(l).is_some() {
                        return Err(LabError::Template(format!("dashed end repeated on line {}", index - MARKER_BASE)));
                    }
                } else if index > genus {
                    return Err(LabError::Template(format!("letter beyond genus {genus}")));
                }
            }
        }
        let mut pairs = Vec::new();
        for (i, (line, (v, w))) in ends.into_iter().enumerate() {
            match (v, w) {
                (Some(v), Some(w)) if line == i + 1 => pairs.push((v, w)),
                _ => return Err(LabError::Template(format!("dashed line {line} incomplete or out of sequence"))),
            }
        }
        let mut graph = wide;
        for &(v, w) in &pairs {
            graph.set_slot(v, Slot::Color(a(1)));
            graph.set_slot(w, Slot::Color(a(1)));
        }
        Ok(DashedTemplate {
            graph: graph.with_genus(genus),
            pairs,
        })
    }

    pub fn lines(&self) -> usize {
        self.pairs.len()
    }

    pub fn genus(&self) -> usize {
        self.graph.genus()
    }
}

/// `X_S`: the sum over ordered choices of distinct pairs of `s`, one per dashed
/// line, whose vectors are linearly independent, of the template colored by them.
pub fn dashed_element(x: &DashedTemplate, s: &ColoringSet) -> Result<GraphVector, LabError> {
    let m = x.lines();
    let mut out = GraphVector::zero(x.genus(), false);
    if let Some(s) = s.letters().find(|&l| check_letter(l, x.genus()).is_err()) {
        return Err(LabError::Template(format!("letter {} beyond genus {}", letter_name(s), x.genus())));
    }
    if m > s.len() {
        return Ok(out);
    }
    for choice in (0..s.len()).permutations(m) {
        if !s.independent(&choice)? {
            continue;
        }
        let mut colorings: Vec<(HairyGraph, Rational)> = vec![(x.graph.clone(), Rational::one())];
        for (&(v, w), &k) in x.pairs.iter().zip(&choice) {
            let (cx, cy) = &s.pairs[k];
            let mut next = Vec::new();
            for (g, c) in &colorings {
                for ((sx, fx), (sy, fy)) in cx.terms().collect_vec().into_iter().cartesian_product(cy.terms().collect_vec()) {
                    let mut h = g.clone();
                    h.set_slot(v, Slot::Color(sx));
                    h.set_slot(w, Slot::Color(sy));
                    next.push((h, &(c * fx) * fy));
                }
            }
            colorings = next;
        }
        for (g, c) in colorings {
            out.add_graph(&g, &c)?;
        }
    }
    Ok(out)
}
