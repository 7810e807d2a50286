//! The symplectic space H, pure tensors over its standard basis, and the
//! Hopf structure of the tensor algebra.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{left_kernel, echelonize, LinalgError, Rational, SparseVector, SubspaceBasis, TrackedEliminator};

/// A basis letter of H, packed as `2*(i-1)` for `a_i` and `2*(i-1)+1` for `b_i`.
pub type Sym = u8;

/// A pure tensor: a word in the basis letters. The empty word is the unit.
pub type Word = Vec<Sym>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("letter {letter} exceeds genus {genus}")]
    LetterOutOfGenus { letter: String, genus: usize },
    #[error("slot {slot} out of range for degree {degree}")]
    SlotOutOfRange { slot: usize, degree: usize },
    #[error("contraction slots must differ")]
    SameSlot,
    #[error("cannot parse `{0}` as a pure tensor")]
    Parse(String),
    #[error("expected a homogeneous vector of degree {expected}, found degree {found}")]
    NotHomogeneous { expected: usize, found: usize },
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn a(i: usize) -> Sym {
    assert!(i >= 1);
    (2 * (i - 1)) as Sym
}

pub fn b(i: usize) -> Sym {
    assert!(i >= 1);
    (2 * (i - 1) + 1) as Sym
}

/// One-based index `i` of the letter `a_i` or `b_i`.
pub fn index_of(s: Sym) -> usize {
    s as usize / 2 + 1
}

pub fn is_a(s: Sym) -> bool {
    s % 2 == 0
}

/// The symplectic partner: `a_i <-> b_i`.
pub fn dual(s: Sym) -> Sym {
    s ^ 1
}

pub fn letter_name(s: Sym) -> String {
    format!("{}{}", if is_a(s) { 'a' } else { 'b' }, index_of(s))
}

pub fn parse_letter(s: &str) -> Option<Sym> {
    let (kind, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(k, _)| k));
    let i: usize = rest.parse().ok()?;
    if i == 0 || i > 127 {
        return None;
    }
    match kind {
        "a" => Some(a(i)),
        "b" => Some(b(i)),
        _ => None,
    }
}

/// `(x . y)` with `(a_i . b_j) = delta_ij`, `(b_i . a_j) = -delta_ij`, all else zero.
pub fn pairing_sign(x: Sym, y: Sym) -> i64 {
    if x ^ 1 != y {
        0
    } else if is_a(x) {
        1
    } else {
        -1
    }
}

pub fn pairing(x: Sym, y: Sym, genus: usize) -> Result<Rational, TensorError> {
    check_letter(x, genus)?;
    check_letter(y, genus)?;
    Ok(Rational::from_int(pairing_sign(x, y)))
}

pub fn check_letter(s: Sym, genus: usize) -> Result<(), TensorError> {
    if index_of(s) > genus {
        Err(TensorError::LetterOutOfGenus {
            letter: letter_name(s),
            genus,
        })
    } else {
        Ok(())
    }
}

pub fn check_word(w: &[Sym], genus: usize) -> Result<(), TensorError> {
    w.iter().try_for_each(|&s| check_letter(s, genus))
}

pub fn format_word(w: &[Sym]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|&s| letter_name(s)).collect::<Vec<_>>().join(".")
}

pub fn parse_word(s: &str) -> Result<Word, TensorError> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|p| parse_letter(p.trim()).ok_or_else(|| TensorError::Parse(s.to_string())))
        .collect()
}

/// All ordered splittings `(u_I, u_J)`, starting from `(u, 1)` and ending with `(1, u)`.
pub fn coproduct(w: &[Sym]) -> Vec<(Word, Word)> {
    let m = w.len();
    (0..1u32 << m)
        .rev()
        .map(|mask| {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, &s) in w.iter().enumerate() {
                if mask >> (m - 1 - i) & 1 == 1 {
                    left.push(s);
                } else {
                    right.push(s);
                }
            }
            (left, right)
        })
        .collect()
}

/// `(-1)^m` and the reversed word.
pub fn antipode(w: &[Sym]) -> (i64, Word) {
    let sign = if w.len() % 2 == 0 { 1 } else { -1 };
    (sign, w.iter().rev().copied().collect())
}

pub fn contract(w: &[Sym], i: usize, j: usize) -> Result<(Rational, Word), TensorError> {
    let degree = w.len();
    for slot in [i, j] {
        if slot >= degree {
            return Err(TensorError::SlotOutOfRange { slot, degree });
        }
    }
    if i == j {
        return Err(TensorError::SameSlot);
    }
    let c = pairing_sign(w[i], w[j]);
    let rest = w
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, &s)| s)
        .collect();
    Ok((Rational::from_int(c), rest))
}

/// Occurrence counts ordered `a_1..a_g, b_1..b_g`.
pub fn weight_of(w: &[Sym], genus: usize) -> Result<Vec<usize>, TensorError> {
    check_word(w, genus)?;
    let mut out = vec![0; 2 * genus];
    for &s in w {
        let i = index_of(s) - 1;
        out[if is_a(s) { i } else { genus + i }] += 1;
    }
    Ok(out)
}

/// The torus weight for Sp: `count(a_i) - count(b_i)` per index.
pub fn sp_weight(w: &[Sym], genus: usize) -> Vec<i32> {
    let mut out = vec![0; genus];
    for &s in w {
        out[index_of(s) - 1] += if is_a(s) { 1 } else { -1 };
    }
    out
}

/// A finite rational combination of pure tensors.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    terms: BTreeMap<Word, Rational>,
    genus: usize,
}

impl TensorVector {
    pub fn zero(genus: usize) -> Self {
        TensorVector {
            terms: BTreeMap::new(),
            genus,
        }
    }

    pub fn word(w: Word, genus: usize) -> Self {
        let mut v = Self::zero(genus);
        v.add_term(w, Rational::one());
        v
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Sym]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &TensorVector) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.genus);
        out.add_scaled(c, self);
        out
    }

    /// Degree of every term, or an error when the vector is not homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        if it.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Embedding into a larger genus; the letters are unchanged.
    pub fn stabilize(&self, genus: usize) -> Result<Self, TensorError> {
        if genus < self.genus {
            return Err(TensorError::GenusMismatch(self.genus, genus));
        }
        Ok(TensorVector {
            terms: self.terms.clone(),
            genus,
        })
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}*{}", c, format_word(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sum_i (a_i b_i - b_i a_i)` placed in slots `i < j` of a word of degree `m + 2`.
pub fn omega_insert_at(w: &[Sym], i: usize, j: usize, genus: usize) -> Result<TensorVector, TensorError> {
    let degree = w.len() + 2;
    if i >= j || j >= degree {
        return Err(TensorError::SlotOutOfRange { slot: j, degree });
    }
    let mut out = TensorVector::zero(genus);
    for k in 1..=genus {
        for (x, y, c) in [(a(k), b(k), 1), (b(k), a(k), -1)] {
            let mut word = Vec::with_capacity(degree);
            let mut rest = w.iter();
            for slot in 0..degree {
                if slot == i {
                    word.push(x);
                } else if slot == j {
                    word.push(y);
                } else {
                    word.push(*rest.next().unwrap());
                }
            }
            out.add_term(word, Rational::from_int(c));
        }
    }
    Ok(out)
}

/// Inserts the symplectic 2-tensor between letters, at `position` in `0..=degree`.
pub fn omega_insert(w: &[Sym], position: usize, genus: usize) -> Result<TensorVector, TensorError> {
    if position > w.len() {
        return Err(TensorError::SlotOutOfRange {
            slot: position,
            degree: w.len(),
        });
    }
    omega_insert_at(w, position, position + 1, genus)
}

/// All words of length `m` in the `2g` letters, lexicographic.
pub fn all_words(m: usize, genus: usize) -> Vec<Word> {
    let n = 2 * genus;
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |s| {
                    let mut x = w.clone();
                    x.push(s as Sym);
                    x
                })
            })
            .collect();
    }
    out
}

/// Index of a word in `all_words(m, genus)`.
pub fn word_index(w: &[Sym], genus: usize) -> usize {
    w.iter().fold(0, |acc, &s| acc * 2 * genus + s as usize)
}

fn contraction_image(w: &[Sym], genus: usize) -> SparseVector {
    let m = w.len();
    let block = (2 * genus).pow(m.saturating_sub(2) as u32);
    let mut pairs = Vec::new();
    let mut slot = 0;
    for i in 0..m {
        for j in i + 1..m {
            let (c, rest) = contract(w, i, j).unwrap();
            if !c.is_zero() {
                pairs.push((slot * block + word_index(&rest, genus), c));
            }
            slot += 1;
        }
    }
    SparseVector::from_pairs(pairs)
}

/// Basis of the harmonic part: the common kernel of all pairwise contractions,
/// in the coordinates of `all_words(m, genus)`.
pub fn harmonic_basis(m: usize, genus: usize) -> Result<SubspaceBasis, TensorError> {
    let words = all_words(m, genus);
    let dim = words.len();
    if m < 2 {
        let rows: Vec<_> = (0..dim).map(SparseVector::unit).collect();
        return Ok(echelonize(&rows, dim)?);
    }
    let target = m * (m - 1) / 2 * (2 * genus).pow(m as u32 - 2);
    let images: Vec<_> = words.iter().map(|w| contraction_image(w, genus)).collect();
    let kernel = left_kernel(&images, target)?;
    Ok(echelonize(&kernel, dim)?)
}

/// Span of every symplectic insertion into every slot pair, in `all_words` coordinates.
pub fn insertion_span(m: usize, genus: usize) -> Result<SubspaceBasis, TensorError> {
    let dim = (2 * genus).pow(m as u32);
    let mut rows = Vec::new();
    if m >= 2 {
        for w in all_words(m - 2, genus) {
            for i in 0..m {
                for j in i + 1..m {
                    let v = omega_insert_at(&w, i, j, genus)?;
                    rows.push(to_sparse(&v));
                }
            }
        }
    }
    Ok(echelonize(&rows, dim)?)
}

fn to_sparse(v: &TensorVector) -> SparseVector {
    SparseVector::from_pairs(v.terms.iter().map(|(w, c)| (word_index(w, v.genus), c.clone())))
}

/// Words of length `m` with a prescribed Sp torus weight.
pub fn words_of_sp_weight(m: usize, genus: usize, weight: &[i32]) -> Vec<Word> {
    fn rec(m: usize, genus: usize, rem: &mut Vec<i32>, cur: &mut Word, out: &mut Vec<Word>) {
        let left = (m - cur.len()) as i32;
        if rem.iter().map(|x| x.abs()).sum::<i32>() > left {
            return;
        }
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in 0..(2 * genus) as Sym {
            let i = index_of(s) - 1;
            let d = if is_a(s) { 1 } else { -1 };
            rem[i] -= d;
            cur.push(s);
            rec(m, genus, rem, cur, out);
            cur.pop();
            rem[i] += d;
        }
    }
    let mut out = Vec::new();
    let mut rem = weight.to_vec();
    rec(m, genus, &mut rem, &mut Vec::new(), &mut out);
    out
}

/// Component of `v` in the harmonic part along the span of symplectic insertions.
///
/// Solved per Sp-weight block: the block is split as harmonic plus insertions,
/// and `v` is expressed in the union of both bases.
pub fn top_project(v: &TensorVector, m: usize) -> Result<TensorVector, TensorError> {
    let genus = v.genus;
    if v.is_zero() {
        return Ok(v.clone());
    }
    match v.degree() {
        Some(d) if d == m => {}
        Some(d) => return Err(TensorError::NotHomogeneous { expected: m, found: d }),
        None => {
            let found = v.terms.keys().map(|w| w.len()).find(|&l| l != m).unwrap_or(m);
            return Err(TensorError::NotHomogeneous { expected: m, found });
        }
    }
    let mut blocks: BTreeMap<Vec<i32>, TensorVector> = BTreeMap::new();
    for (w, c) in &v.terms {
        blocks
            .entry(sp_weight(w, genus))
            .or_insert_with(|| TensorVector::zero(genus))
            .add_term(w.clone(), c.clone());
    }
    let mut out = TensorVector::zero(genus);
    for (weight, part) in blocks {
        let words = words_of_sp_weight(m, genus, &weight);
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let dim = words.len();
        let local = |t: &TensorVector| {
            SparseVector::from_pairs(t.terms.iter().map(|(w, c)| (index[w], c.clone())))
        };
        let mut harmonic_rows = Vec::new();
        if m >= 2 {
            let target_block = (2 * genus).pow(m as u32 - 2);
            let images: Vec<_> = words.iter().map(|w| contraction_image(w, genus)).collect();
            let target = m * (m - 1) / 2 * target_block;
            harmonic_rows = left_kernel(&images, target)?;
        } else {
            harmonic_rows.extend((0..dim).map(SparseVector::unit));
        }
        let mut insert_rows = Vec::new();
        if m >= 2 {
            for w in words_of_sp_weight(m - 2, genus, &weight) {
                for i in 0..m {
                    for j in i + 1..m {
                        insert_rows.push(local(&omega_insert_at(&w, i, j, genus)?));
                    }
                }
            }
        }
        let mut t = TrackedEliminator::new(dim);
        let nh = harmonic_rows.len();
        for r in harmonic_rows.iter().chain(insert_rows.iter()) {
            t.push(r)?;
        }
        let x = t
            .express(&local(&part))?
            .expect("harmonic part and insertions span the block");
        for (k, c) in x.entries() {
            if *k < nh {
                for (j, y) in harmonic_rows[*k].entries() {
                    out.add_term(words[*j].clone(), c * y);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_values() {
        assert_eq!(pairing(a(1), b(1), 1).unwrap(), Rational::one());
        assert_eq!(pairing(a(1), a(2), 2).unwrap(), Rational::zero());
        assert_eq!(pairing(b(1), a(1), 1).unwrap(), Rational::from_int(-1));
        assert!(pairing(a(3), b(1), 2).is_err());
    }

    #[test]
    fn coproduct_order() {
        assert_eq!(coproduct(&[]), vec![(vec![], vec![])]);
        assert_eq!(coproduct(&[a(1)]), vec![(vec![a(1)], vec![]), (vec![], vec![a(1)])]);
        assert_eq!(
            coproduct(&[a(1), a(2)]),
            vec![
                (vec![a(1), a(2)], vec![]),
                (vec![a(1)], vec![a(2)]),
                (vec![a(2)], vec![a(1)]),
                (vec![], vec![a(1), a(2)])
            ]
        );
    }

    #[test]
    fn antipode_values() {
        assert_eq!(antipode(&[]), (1, vec![]));
        assert_eq!(antipode(&[a(1)]), (-1, vec![a(1)]));
        assert_eq!(antipode(&[a(1), a(2)]), (1, vec![a(2), a(1)]));
    }

    #[test]
    fn word_text_roundtrip() {
        let w = parse_word("a1.b2.a3").unwrap();
        assert_eq!(w, vec![a(1), b(2), a(3)]);
        assert_eq!(format_word(&w), "a1.b2.a3");
        assert_eq!(parse_word("1").unwrap(), Vec::<Sym>::new());
        assert!(parse_word("c1").is_err());
        assert!(parse_word("a0").is_err());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract(&[a(1), b(1)], 0, 1).unwrap(), (Rational::one(), vec![]));
        assert_eq!(contract(&[a(1), a(2), a(3)], 0, 1).unwrap(), (Rational::zero(), vec![a(3)]));
        assert!(contract(&[a(1)], 0, 0).is_err());
    }

    #[test]
    fn omega_insert_unit() {
        let v = omega_insert(&[], 0, 1).unwrap();
        assert_eq!(v.coeff(&[a(1), b(1)]), Rational::one());
        assert_eq!(v.coeff(&[b(1), a(1)]), Rational::from_int(-1));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(&[], 2).unwrap(), vec![0, 0, 0, 0]);
        assert_eq!(weight_of(&[a(1), b(1)], 2).unwrap(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn small_harmonic_dims() {
        assert_eq!(harmonic_basis(0, 2).unwrap().rank(), 1);
        assert_eq!(harmonic_basis(1, 2).unwrap().rank(), 4);
        assert_eq!(harmonic_basis(2, 2).unwrap().rank(), 15);
    }
}
