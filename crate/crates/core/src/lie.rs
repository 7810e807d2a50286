//! Free Lie algebra on H in the Lyndon basis, and the derivation model of
//! the symplectic derivation algebra, used as an independent oracle for the
//! graphical model.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::linalg::{echelonize, left_kernel, LinalgError, Rational, SparseVector, SubspaceBasis};
use crate::tensor::{a, b, pairing_sign, Sym, TensorError, TensorVector, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("`{0:?}` is not a Lyndon word")]
    NotLyndon(Word),
    #[error("tensor is not a Lie element: residue at {0:?}")]
    NotLie(Word),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn is_lyndon(w: &[Sym]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| *w < w[k..])
}

/// Lyndon words of length `n` over `alphabet` letters, in lexicographic order (Duval).
pub fn lyndon_words(n: usize, alphabet: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || alphabet == 0 {
        return out;
    }
    let k = alphabet as Sym;
    let mut w: Vec<Sym> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

pub fn lyndon_basis(n: usize, genus: usize) -> Vec<Word> {
    static CACHE: OnceLock<Mutex<FxHashMap<(usize, usize), Vec<Word>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(n, genus)) {
        return v.clone();
    }
    let v = lyndon_words(n, 2 * genus);
    cache.lock().unwrap().insert((n, genus), v.clone());
    v
}

/// Dimension of the degree-`n` part of the free Lie algebra on `k` generators.
pub fn witt_dimension(n: usize, k: usize) -> usize {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d) as i128 * (k as i128).pow((n / d) as u32);
        }
    }
    (total / n as i128) as usize
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Sym]) -> (Word, Word) {
    for k in 1..w.len() {
        if is_lyndon(&w[k..]) {
            return (w[..k].to_vec(), w[k..].to_vec());
        }
    }
    unreachable!("words of length >= 2 have a Lyndon suffix")
}

/// Tensor expansion of the standard bracketing of a Lyndon word.
pub fn expand_lyndon(w: &[Sym], genus: usize) -> TensorVector {
    if w.len() == 1 {
        return TensorVector::word(w.to_vec(), genus);
    }
    let (u, v) = standard_factorization(w);
    tensor_commutator(&expand_lyndon(&u, genus), &expand_lyndon(&v, genus))
}

pub fn tensor_product(x: &TensorVector, y: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero(x.genus().max(y.genus()));
    for (u, c) in x.terms() {
        for (v, d) in y.terms() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.add_term(w, c * d);
        }
    }
    out
}

pub fn tensor_commutator(x: &TensorVector, y: &TensorVector) -> TensorVector {
    let mut out = tensor_product(x, y);
    out.add_scaled(&Rational::from_int(-1), &tensor_product(y, x));
    out
}

/// An element of the free Lie algebra, stored through its tensor expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    tensor: TensorVector,
}

impl LieElement {
    pub fn generator(s: Sym, genus: usize) -> Self {
        LieElement {
            tensor: TensorVector::word(vec![s], genus),
        }
    }

    pub fn lyndon(w: &[Sym], genus: usize) -> Result<Self, LieError> {
        if !is_lyndon(w) {
            return Err(LieError::NotLyndon(w.to_vec()));
        }
        Ok(LieElement {
            tensor: expand_lyndon(w, genus),
        })
    }

    /// Accepts a tensor only if it lies in the free Lie algebra.
    pub fn from_tensor(t: TensorVector) -> Result<Self, LieError> {
        lyndon_coordinates(&t)?;
        Ok(LieElement { tensor: t })
    }

    pub fn expand_to_tensor(&self) -> &TensorVector {
        &self.tensor
    }

    pub fn genus(&self) -> usize {
        self.tensor.genus()
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn coordinates(&self) -> BTreeMap<Word, Rational> {
        lyndon_coordinates(&self.tensor).expect("stored tensors are Lie elements")
    }
}

pub fn lie_bracket(x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    if x.genus() != y.genus() {
        return Err(LieError::GenusMismatch(x.genus(), y.genus()));
    }
    Ok(LieElement {
        tensor: tensor_commutator(&x.tensor, &y.tensor),
    })
}

/// Coefficients in the Lyndon basis, peeling off the smallest word each time:
/// the expansion of a Lyndon word has that word as its smallest term, with
/// coefficient one.
pub fn lyndon_coordinates(t: &TensorVector) -> Result<BTreeMap<Word, Rational>, LieError> {
    let genus = t.genus();
    let mut rest = t.clone();
    let mut out = BTreeMap::new();
    while let Some((w, c)) = rest.terms().iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        if !is_lyndon(&w) {
            return Err(LieError::NotLie(w));
        }
        rest.add_scaled(&-c.clone(), &expand_lyndon(&w, genus));
        out.insert(w, c);
    }
    Ok(out)
}

/// Coordinate system of `H (x) L_{n+1}` for one GL weight: pairs (letter, Lyndon word).
#[derive(Debug, Clone)]
pub struct DerivationCoords {
    pub degree: usize,
    pub genus: usize,
    pub pairs: Vec<(Sym, Word)>,
    index: FxHashMap<(Sym, Word), usize>,
}

impl DerivationCoords {
    /// Pairs whose combined letter multiset has the given occurrence counts
    /// (indexed by letter code).
    pub fn for_content(degree: usize, genus: usize, content: &[usize]) -> Self {
        let mut pairs = Vec::new();
        for s in 0..(2 * genus) as Sym {
            if content[s as usize] == 0 {
                continue;
            }
            let mut rest = content.to_vec();
            rest[s as usize] -= 1;
            for w in lyndon_words_with_content(&rest) {
                pairs.push((s, w));
            }
        }
        let index = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        DerivationCoords {
            degree,
            genus,
            pairs,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, s: Sym, w: &[Sym]) -> Option<usize> {
        self.index.get(&(s, w.to_vec())).copied()
    }

    /// Coordinates of a derivation stored as a tensor whose first letter is the H factor.
    pub fn coordinates(&self, xi: &TensorVector) -> Result<SparseVector, LieError> {
        let mut by_first: BTreeMap<Sym, TensorVector> = BTreeMap::new();
        for (w, c) in xi.terms() {
            by_first
                .entry(w[0])
                .or_insert_with(|| TensorVector::zero(xi.genus()))
                .add_term(w[1..].to_vec(), c.clone());
        }
        let mut pairs = Vec::new();
        for (s, t) in by_first {
            for (w, c) in lyndon_coordinates(&t)? {
                let i = self.index_of(s, &w).ok_or(LieError::NotLie(w.clone()))?;
                pairs.push((i, c));
            }
        }
        Ok(SparseVector::from_pairs(pairs))
    }

    pub fn to_tensor(&self, v: &SparseVector) -> TensorVector {
        let mut out = TensorVector::zero(self.genus);
        for (i, c) in v.entries() {
            let (s, w) = &self.pairs[*i];
            for (u, d) in expand_lyndon(w, self.genus).terms() {
                let mut x = vec![*s];
                x.extend_from_slice(u);
                out.add_term(x, c * d);
            }
        }
        out
    }
}

/// Lyndon words using exactly the given letter counts.
pub fn lyndon_words_with_content(content: &[usize]) -> Vec<Word> {
    let n: usize = content.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut rem = content.to_vec();
    fn rec(n: usize, rem: &mut Vec<usize>, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == n {
            if is_lyndon(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for s in 0..rem.len() {
            if rem[s] == 0 {
                continue;
            }
            // A Lyndon word starts with its smallest letter.
            if let Some(&first) = cur.first() {
                if (s as Sym) < first {
                    continue;
                }
            }
            rem[s] -= 1;
            cur.push(s as Sym);
            rec(n, rem, cur, out);
            cur.pop();
            rem[s] += 1;
        }
    }
    if n > 0 {
        rec(n, &mut rem, &mut cur, &mut out);
    }
    out
}

/// The bracketing map `a (x) u -> [a, u]` on tensors whose first letter is the H factor.
pub fn bracket_map(xi: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero(xi.genus());
    for (w, c) in xi.terms() {
        out.add_term(w.clone(), c.clone());
        let mut rotated = w[1..].to_vec();
        rotated.push(w[0]);
        out.add_term(rotated, -c.clone());
    }
    out
}

/// One GL-weight block of the derivation model: the kernel of the bracketing map.
pub struct HBlock {
    pub coords: DerivationCoords,
    pub kernel: SubspaceBasis,
}

pub fn h_block(n: usize, genus: usize, content: &[usize]) -> Result<HBlock, LieError> {
    let coords = DerivationCoords::for_content(n, genus, content);
    let mut target: FxHashMap<Word, usize> = FxHashMap::default();
    let mut images = Vec::with_capacity(coords.len());
    for (s, w) in &coords.pairs {
        let mut xi = TensorVector::zero(genus);
        for (u, d) in expand_lyndon(w, genus).terms() {
            let mut x = vec![*s];
            x.extend_from_slice(u);
            xi.add_term(x, d.clone());
        }
        let img = bracket_map(&xi);
        let mut pairs = Vec::new();
        for (u, c) in img.terms() {
            let next = target.len();
            let k = *target.entry(u.clone()).or_insert(next);
            pairs.push((k, c.clone()));
        }
        images.push(SparseVector::from_pairs(pairs));
    }
    let kernel = left_kernel(&images, target.len().max(1))?;
    let kernel = echelonize(&kernel, coords.len())?;
    Ok(HBlock { coords, kernel })
}

/// Letter-count vectors of total `size` over `2g` letters whose counts are
/// weakly decreasing: one representative per orbit of letter permutations.
pub fn dominant_contents(size: usize, letters: usize) -> Vec<Vec<usize>> {
    crate::tableaux::partitions(size)
        .into_iter()
        .filter(|p| p.len() <= letters)
        .map(|p| {
            let mut v = p.clone();
            v.resize(letters, 0);
            v
        })
        .collect()
}

/// Number of distinct rearrangements of a count vector.
pub fn orbit_size(content: &[usize]) -> usize {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in content {
        *counts.entry(c).or_default() += 1;
    }
    let mut total: u128 = (1..=content.len() as u128).product();
    for (_, k) in counts {
        total /= (1..=k as u128).product::<u128>();
    }
    total as usize
}

/// `dim h(n)` in the derivation model, summed over letter-permutation orbits of weights.
pub fn h_dim(n: usize, genus: usize) -> Result<usize, LieError> {
    let mut total = 0;
    for c in dominant_contents(n + 2, 2 * genus) {
        total += h_block(n, genus, &c)?.kernel.rank() * orbit_size(&c);
    }
    Ok(total)
}

/// Full basis of `h(n)` in the coordinates of `H (x) L_{n+1}`, blocks laid out by weight.
pub fn h_space(n: usize, genus: usize) -> Result<(Vec<(Sym, Word)>, SubspaceBasis), LieError> {
    let mut coords = Vec::new();
    let mut rows = Vec::new();
    for content in all_contents(n + 2, 2 * genus) {
        let block = h_block(n, genus, &content)?;
        let offset = coords.len();
        coords.extend(block.coords.pairs.iter().cloned());
        for r in block.kernel.rows() {
            rows.push(SparseVector::from_pairs(
                r.entries().iter().map(|(i, c)| (i + offset, c.clone())),
            ));
        }
    }
    let dim = coords.len();
    Ok((coords, echelonize(&rows, dim)?))
}

pub fn all_contents(size: usize, letters: usize) -> Vec<Vec<usize>> {
    fn rec(size: usize, letters: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == letters - 1 {
            cur.push(size);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=size {
            cur.push(k);
            rec(size - k, letters, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if letters > 0 {
        rec(size, letters, &mut Vec::new(), &mut out);
    }
    out
}

/// Action of the derivation attached to `xi` on a tensor: letters `z` go to
/// `sum (x . z) W` for each term `x (x) W` of `xi`, extended as a derivation.
pub fn derivation_apply(xi: &TensorVector, t: &TensorVector) -> TensorVector {
    let mut on_letter: BTreeMap<Sym, TensorVector> = BTreeMap::new();
    let genus = xi.genus().max(t.genus());
    for (w, c) in xi.terms() {
        for z in 0..(2 * genus) as Sym {
            let p = pairing_sign(w[0], z);
            if p != 0 {
                on_letter
                    .entry(z)
                    .or_insert_with(|| TensorVector::zero(genus))
                    .add_term(w[1..].to_vec(), c * &Rational::from_int(p));
            }
        }
    }
    let mut out = TensorVector::zero(genus);
    for (w, c) in t.terms() {
        for (k, z) in w.iter().enumerate() {
            if let Some(img) = on_letter.get(z) {
                for (u, d) in img.terms() {
                    let mut x = w[..k].to_vec();
                    x.extend_from_slice(u);
                    x.extend_from_slice(&w[k + 1..]);
                    out.add_term(x, c * d);
                }
            }
        }
    }
    out
}

/// Bracket of derivations `[D1, D2] = D1 D2 - D2 D1`, returned in the tensor
/// encoding `sum_i a_i (x) D(b_i) - b_i (x) D(a_i)`.
pub fn derivation_bracket(x: &TensorVector, y: &TensorVector) -> TensorVector {
    let genus = x.genus().max(y.genus());
    let mut out = TensorVector::zero(genus);
    for i in 1..=genus {
        for (lead, arg, sign) in [(a(i), b(i), 1), (b(i), a(i), -1)] {
            let z = TensorVector::word(vec![arg], genus);
            let mut d = derivation_apply(x, &derivation_apply(y, &z));
            d.add_scaled(&Rational::from_int(-1), &derivation_apply(y, &derivation_apply(x, &z)));
            for (u, c) in d.terms() {
                let mut w = vec![lead];
                w.extend_from_slice(u);
                out.add_term(w, c * &Rational::from_int(sign));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_counts_match_witt() {
        assert_eq!(lyndon_basis(1, 2).len(), 4);
        assert_eq!(lyndon_basis(2, 2).len(), 6);
        assert_eq!(lyndon_basis(7, 2).len(), 2340);
        for n in 1..=6 {
            for k in 1..=4 {
                assert_eq!(lyndon_words(n, k).len(), witt_dimension(n, k));
            }
        }
    }

    #[test]
    fn bracket_of_generators() {
        let x = LieElement::generator(a(1), 1);
        let y = LieElement::generator(b(1), 1);
        let t = lie_bracket(&x, &y).unwrap();
        assert_eq!(t.expand_to_tensor().coeff(&[a(1), b(1)]), Rational::one());
        assert_eq!(t.expand_to_tensor().coeff(&[b(1), a(1)]), Rational::from_int(-1));
        assert!(lie_bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn leading_term_property() {
        for n in 1..=5 {
            for w in lyndon_words(n, 3) {
                let t = expand_lyndon(&w, 2);
                let (first, c) = t.terms().iter().next().unwrap();
                assert_eq!(first, &w);
                assert!(c.is_one());
            }
        }
    }

    #[test]
    fn small_h_dims() {
        assert_eq!(h_dim(1, 2).unwrap(), 4);
        assert_eq!(h_dim(1, 3).unwrap(), 20);
    }
}
