use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use super::canonical::decode;
use super::{canonicalize, GraphError, HairyGraph, Key};
use crate::linalg::{Rational, SparseVector};

/// Linear combination of canonical graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVector {
    terms: BTreeMap<Key, Rational>,
    genus: usize,
    ordered: bool,
}

impl GraphVector {
    pub fn zero(genus: usize, ordered: bool) -> Self {
        GraphVector {
            terms: BTreeMap::new(),
            genus,
            ordered,
        }
    }

    pub fn from_graph(g: &HairyGraph) -> Result<Self, GraphError> {
        let mut v = GraphVector::zero(g.genus(), g.ordered());
        v.add_graph(g, &Rational::one())?;
        Ok(v)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ordered(&self) -> bool {
        self.ordered
    }

    pub fn terms(&self) -> &BTreeMap<Key, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[u16]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_key(&mut self, key: Key, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_graph(&mut self, g: &HairyGraph, c: &Rational) -> Result<(), GraphError> {
        let mut g = g.clone();
        g.set_ordered(self.ordered);
        let (sign, key) = canonicalize(&g)?;
        if sign != 0 {
            self.add_key(key, c * &Rational::from_int(sign as i64));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &GraphVector) {
        for (k, d) in &other.terms {
            self.add_key(k.clone(), c * d);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = GraphVector::zero(self.genus, self.ordered);
        out.add_scaled(c, self);
        out
    }

    pub fn with_genus(mut self, genus: usize) -> Self {
        self.genus = genus;
        self
    }

    /// Terms as explicit representative graphs.
    pub fn graphs(&self) -> impl Iterator<Item = (HairyGraph, &Rational)> + '_ {
        self.terms
            .iter()
            .map(|(k, c)| (decode(k, self.genus, self.ordered), c))
    }

    pub fn representative(&self, key: &[u16]) -> HairyGraph {
        decode(key, self.genus, self.ordered)
    }

    /// Applies a linear map defined on graphs.
    pub fn map<F>(&self, genus: usize, ordered: bool, mut f: F) -> Result<GraphVector, GraphError>
    where
        F: FnMut(&HairyGraph) -> Result<GraphVector, GraphError>,
    {
        let mut out = GraphVector::zero(genus, ordered);
        for (g, c) in self.graphs() {
            out.add_scaled(c, &f(&g)?);
        }
        Ok(out)
    }

    pub fn to_sparse(&self, index: &FxHashMap<Key, usize>) -> Result<SparseVector, GraphError> {
        let mut pairs = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            pairs.push((*index.get(k).ok_or(GraphError::NotInBasis)?, c.clone()));
        }
        Ok(SparseVector::from_pairs(pairs))
    }
}

impl fmt::Display for GraphVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (g, c) in self.graphs() {
            writeln!(f, "{c} {g}")?;
        }
        Ok(())
    }
}
