use std::collections::BTreeMap;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("index {index} out of range for ambient dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Collects `(index, value)` pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in pairs {
            *acc.entry(i).or_default() += &v;
        }
        Self::from_sorted_map(acc)
    }

    pub fn from_sorted_map(map: BTreeMap<usize, Rational>) -> Self {
        SparseVector {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVector {
            entries: vec![(i, Rational::one())],
        }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVector {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v = &*v * c;
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rational, other: &SparseVector) -> SparseVector {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let mut v = a[i].1.clone();
                v.add_mul(c, &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVector { entries: out }
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = Rational::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc.add_mul(&a[i].1, &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    fn check(&self, dim: usize) -> Result<(), LinalgError> {
        match self.max_index() {
            Some(index) if index >= dim => Err(LinalgError::IndexOutOfRange { index, dim }),
            _ => Ok(()),
        }
    }
}

/// Reduced row-echelon basis of a subspace of `Q^ambient_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    rows: Vec<SparseVector>,
    ambient_dim: usize,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            rows: Vec::new(),
            ambient_dim,
        }
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().unwrap().0).collect()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn residue(&self, v: &SparseVector) -> Result<SparseVector, LinalgError> {
        v.check(self.ambient_dim)?;
        let mut out = v.clone();
        for row in &self.rows {
            let (p, _) = row.leading().unwrap();
            let c = out.get(p);
            if !c.is_zero() {
                out = out.axpy(&-c, row);
            }
        }
        Ok(out)
    }
}

/// Incremental semi-echelon form: rows with distinct leading columns, each
/// leading coefficient equal to one. Pivots are the lowest column index.
#[derive(Debug, Clone)]
pub struct Eliminator {
    dim: usize,
    rows: Vec<SparseVector>,
    pivot_row: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl Eliminator {
    pub fn new(dim: usize) -> Self {
        Eliminator {
            dim,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut v = v.clone();
        while let Some((c, coef)) = v.leading() {
            let r = self.pivot_row[c];
            if r == NO_ROW {
                break;
            }
            let coef = -coef;
            v = v.axpy(&coef, &self.rows[r as usize]);
        }
        v
    }

    /// Adds `v` to the span; returns true if the rank grew.
    pub fn insert(&mut self, v: &SparseVector) -> Result<bool, LinalgError> {
        v.check(self.dim)?;
        if self.is_full() {
            return Ok(false);
        }
        let mut r = self.reduce(v);
        match r.leading() {
            None => Ok(false),
            Some((c, lead)) => {
                let inv = lead.recip();
                r.scale(&inv);
                self.pivot_row[c] = self.rows.len() as u32;
                self.rows.push(r);
                Ok(true)
            }
        }
    }

    pub fn contains(&self, v: &SparseVector) -> Result<bool, LinalgError> {
        v.check(self.dim)?;
        Ok(self.reduce(v).is_zero())
    }

    /// Back-substitutes into reduced row-echelon form, rows sorted by pivot.
    pub fn into_basis(self) -> SubspaceBasis {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().unwrap().0);
        let mut pivot_of = vec![NO_ROW; self.dim];
        for (i, r) in rows.iter().enumerate() {
            pivot_of[r.leading().unwrap().0] = i as u32;
        }
        for i in (0..rows.len()).rev() {
            let mut row = std::mem::take(&mut rows[i]);
            let mut k = 1;
            while k < row.nnz() {
                let (c, coef) = row.entries()[k].clone();
                let p = pivot_of[c];
                if p == NO_ROW {
                    k += 1;
                    continue;
                }
                row = row.axpy(&-coef, &rows[p as usize]);
            }
            rows[i] = row;
        }
        SubspaceBasis {
            rows,
            ambient_dim: self.dim,
        }
    }
}

/// Semi-echelon elimination that remembers each row as a combination of the inputs.
#[derive(Debug, Clone)]
pub struct TrackedEliminator {
    inner: Eliminator,
    combos: Vec<SparseVector>,
    inputs: usize,
}

pub enum Tracked {
    /// The input was independent of the previous ones.
    Independent,
    /// The input reduced to zero; the vector is a left-kernel element over the inputs.
    Dependent(SparseVector),
}

impl TrackedEliminator {
    pub fn new(dim: usize) -> Self {
        TrackedEliminator {
            inner: Eliminator::new(dim),
            combos: Vec::new(),
            inputs: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn reduce_tracked(&self, v: &SparseVector, mut combo: SparseVector) -> (SparseVector, SparseVector) {
        let mut v = v.clone();
        while let Some((c, coef)) = v.leading() {
            let r = self.inner.pivot_row[c];
            if r == NO_ROW {
                break;
            }
            let coef = -coef;
            v = v.axpy(&coef, &self.inner.rows[r as usize]);
            combo = combo.axpy(&coef, &self.combos[r as usize]);
        }
        (v, combo)
    }

    pub fn push(&mut self, v: &SparseVector) -> Result<Tracked, LinalgError> {
        v.check(self.inner.dim)?;
        let id = self.inputs;
        self.inputs += 1;
        let (mut r, mut combo) = self.reduce_tracked(v, SparseVector::unit(id));
        match r.leading() {
            None => Ok(Tracked::Dependent(combo)),
            Some((c, lead)) => {
                let inv = lead.recip();
                r.scale(&inv);
                combo.scale(&inv);
                self.inner.pivot_row[c] = self.inner.rows.len() as u32;
                self.inner.rows.push(r);
                self.combos.push(combo);
                Ok(Tracked::Independent)
            }
        }
    }

    /// Coefficients `x` over the pushed inputs with `sum x_i input_i = v`, if any.
    pub fn express(&self, v: &SparseVector) -> Result<Option<SparseVector>, LinalgError> {
        v.check(self.inner.dim)?;
        let (r, combo) = self.reduce_tracked(v, SparseVector::new());
        if r.is_zero() {
            Ok(Some(combo.scaled(&Rational::from_int(-1))))
        } else {
            Ok(None)
        }
    }
}

/// Reduced row-echelon basis of the span of `vectors`.
pub fn echelonize(vectors: &[SparseVector], ambient_dim: usize) -> Result<SubspaceBasis, LinalgError> {
    let mut e = Eliminator::new(ambient_dim);
    for v in vectors {
        e.insert(v)?;
    }
    Ok(e.into_basis())
}

pub fn rank(vectors: &[SparseVector], ambient_dim: usize) -> Result<usize, LinalgError> {
    let mut e = Eliminator::new(ambient_dim);
    for v in vectors {
        e.insert(v)?;
    }
    Ok(e.rank())
}

pub fn member(basis: &SubspaceBasis, v: &SparseVector) -> Result<bool, LinalgError> {
    Ok(basis.residue(v)?.is_zero())
}

pub fn quotient_dim(span_dim: usize, relations: &SubspaceBasis) -> Result<usize, LinalgError> {
    if relations.ambient_dim != span_dim {
        return Err(LinalgError::DimensionMismatch {
            left: span_dim,
            right: relations.ambient_dim,
        });
    }
    Ok(span_dim - relations.rank())
}

/// Basis of the left kernel `{x : sum x_i v_i = 0}` of a list of vectors.
pub fn left_kernel(vectors: &[SparseVector], ambient_dim: usize) -> Result<Vec<SparseVector>, LinalgError> {
    let mut t = TrackedEliminator::new(ambient_dim);
    let mut out = Vec::new();
    for v in vectors {
        if let Tracked::Dependent(k) = t.push(v)? {
            out.push(k);
        }
    }
    Ok(out)
}

pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    let residues = b
        .rows
        .iter()
        .map(|r| a.residue(r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for k in left_kernel(&residues, a.ambient_dim)? {
        let mut v = SparseVector::new();
        for (j, c) in k.entries() {
            v = v.axpy(c, &b.rows[*j]);
        }
        out.push(v);
    }
    echelonize(&out, a.ambient_dim)
}

/// Some `x` with `sum x_i rows_i = rhs`, or `None` when `rhs` is outside the row span.
pub fn solve(rows: &[SparseVector], rhs: &SparseVector) -> Result<Option<SparseVector>, LinalgError> {
    let dim = rows
        .iter()
        .chain(std::iter::once(rhs))
        .filter_map(|r| r.max_index())
        .max()
        .map_or(0, |m| m + 1);
    let mut t = TrackedEliminator::new(dim);
    for r in rows {
        t.push(r)?;
    }
    t.express(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, i64)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().map(|&(i, x)| (i, Rational::from_int(x))))
    }

    #[test]
    fn empty_and_collinear() {
        assert_eq!(echelonize(&[], 3).unwrap().rank(), 0);
        let b = echelonize(&[v(&[(0, 1)]), v(&[(0, 2)])], 2).unwrap();
        assert_eq!(b.rank(), 1);
        assert_eq!(b.rows()[0], v(&[(0, 1)]));
    }

    #[test]
    fn rref_is_reduced() {
        let b = echelonize(&[v(&[(0, 1), (1, 1), (2, 1)]), v(&[(1, 1), (2, 2)])], 3).unwrap();
        assert_eq!(b.rows()[0], v(&[(0, 1), (2, -1)]));
        assert_eq!(b.rows()[1], v(&[(1, 1), (2, 2)]));
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert_eq!(
            echelonize(&[v(&[(5, 1)])], 3),
            Err(LinalgError::IndexOutOfRange { index: 5, dim: 3 })
        );
    }

    #[test]
    fn membership_and_solve() {
        let rows = [v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)])];
        let b = echelonize(&rows, 3).unwrap();
        assert!(member(&b, &v(&[(0, 1), (1, 3), (2, 1)])).unwrap());
        assert!(!member(&b, &v(&[(2, 1)])).unwrap());
        let x = solve(&rows, &v(&[(0, 2), (1, 5), (2, 1)])).unwrap().unwrap();
        assert_eq!(x, v(&[(0, 2), (1, 1)]));
        assert!(solve(&rows, &v(&[(2, 1)])).unwrap().is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = echelonize(&[v(&[(0, 1)]), v(&[(1, 1)])], 3).unwrap();
        let b = echelonize(&[v(&[(1, 1)]), v(&[(2, 1)])], 3).unwrap();
        let c = intersect(&a, &b).unwrap();
        assert_eq!(c.rows(), &[v(&[(1, 1)])]);
    }
}
