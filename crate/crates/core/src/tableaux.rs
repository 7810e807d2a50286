//! Partitions, Kostka numbers and recovery of GL multiplicities from
//! dominant weight dimensions.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauxError {
    #[error("size mismatch: |lambda| = {0}, |mu| = {1}")]
    SizeMismatch(usize, usize),
    #[error("weight dimensions are inconsistent: negative multiplicity {mult} for {shape}")]
    Inconsistent { shape: String, mult: i64 },
    #[error("no dimension supplied for dominant weight {0}")]
    MissingWeight(String),
}

/// A partition, weakly decreasing with positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut s = 0;
        let mut t = 0;
        for i in 0..self.len().max(other.len()) {
            s += self.0.get(i).copied().unwrap_or(0);
            t += other.0.get(i).copied().unwrap_or(0);
            if s < t {
                return false;
            }
        }
        true
    }

    /// `dim` of the GL(N) irreducible with this highest weight (hook content formula).
    pub fn gl_dimension(&self, n: usize) -> u128 {
        if self.len() > n {
            return 0;
        }
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let col_len = self.0.iter().filter(|&&r| r > j).count();
                let hook = (row - j) + (col_len - i) - 1;
                num *= (n + j) as u128 - i as u128;
                den *= hook as u128;
            }
        }
        num / den
    }
}

/// Bracket notation with exponents, e.g. `[21^2]`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[0]");
        }
        write!(f, "[")?;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == p {
                k += 1;
            }
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
            i += k;
        }
        write!(f, "]")
    }
}

/// All partitions of `n`, in reverse lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of semistandard tableaux of shape `lambda` with content `mu`.
pub fn kostka(lambda: &Partition, mu: &[usize]) -> Result<usize, TableauxError> {
    let total: usize = mu.iter().sum();
    if lambda.size() != total {
        return Err(TableauxError::SizeMismatch(lambda.size(), total));
    }
    // Fill letters 1, 2, ... in turn; each letter adds a horizontal strip.
    fn rec(shape: &[usize], target: &[usize], mu: &[usize], k: usize) -> usize {
        if k == mu.len() {
            return usize::from(shape == target);
        }
        let mut count = 0;
        strips(shape, target, mu[k], 0, &mut shape.to_vec(), &mut |next| {
            count += rec(next, target, mu, k + 1);
        });
        count
    }
    fn strips(
        shape: &[usize],
        target: &[usize],
        left: usize,
        row: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if row == target.len() {
            if left == 0 {
                f(cur);
            }
            return;
        }
        let base = shape[row];
        let cap = if row == 0 { target[0] } else { target[row].min(shape[row - 1]) };
        let max_add = cap.saturating_sub(base).min(left);
        for add in 0..=max_add {
            cur[row] = base + add;
            strips(shape, target, left - add, row + 1, cur, f);
        }
        cur[row] = base;
    }
    let target = lambda.0.clone();
    let start = vec![0; target.len()];
    Ok(rec(&start, &target, mu, 0))
}

/// Solves `dim_mu = sum_lambda K(lambda, mu) mult_lambda` over the partitions of
/// `size` with at most `rows` parts, given dimensions of the dominant weight
/// spaces. The system is unitriangular in dominance order.
pub fn gl_multiplicities(
    size: usize,
    rows: usize,
    dims: &BTreeMap<Partition, usize>,
) -> Result<BTreeMap<Partition, usize>, TableauxError> {
    let shapes: Vec<Partition> = partitions(size)
        .into_iter()
        .filter(|p| p.len() <= rows)
        .map(Partition)
        .collect();
    let mut mult: BTreeMap<Partition, i64> = BTreeMap::new();
    // `partitions` lists shapes so that dominating ones come first.
    for mu in &shapes {
        let d = *dims.get(mu).ok_or_else(|| TableauxError::MissingWeight(mu.to_string()))? as i64;
        let mut rest = d;
        for (lambda, m) in &mult {
            rest -= kostka(lambda, mu.parts())? as i64 * m;
        }
        if rest < 0 {
            return Err(TableauxError::Inconsistent {
                shape: mu.to_string(),
                mult: rest,
            });
        }
        mult.insert(mu.clone(), rest);
    }
    Ok(mult
        .into_iter()
        .map(|(k, v)| (k, v as usize))
        .collect())
}

/// Renders `3[2] [1^2]`-style strings, omitting zero multiplicities; `∅` when empty.
pub fn format_decomposition(mult: &BTreeMap<Partition, usize>) -> String {
    let mut items: Vec<(&Partition, &usize)> = mult.iter().filter(|(_, &m)| m > 0).collect();
    items.sort_by(|a, b| b.0.cmp(a.0));
    if items.is_empty() {
        return "∅".to_string();
    }
    items
        .iter()
        .map(|(p, &m)| if m == 1 { p.to_string() } else { format!("{m}{p}") })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kostka_small() {
        let p = |v: &[usize]| Partition::new(v.to_vec());
        assert_eq!(kostka(&p(&[2]), &[1, 1]).unwrap(), 1);
        assert_eq!(kostka(&p(&[1, 1]), &[1, 1]).unwrap(), 1);
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]).unwrap(), 2);
        assert_eq!(kostka(&p(&[3, 2]), &[3, 2]).unwrap(), 1);
        assert_eq!(kostka(&p(&[2, 2]), &[1, 1, 1, 1]).unwrap(), 2);
        assert!(kostka(&p(&[2]), &[1]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Partition::new(vec![2, 1, 1]).to_string(), "[21^2]");
        assert_eq!(Partition::new(vec![1, 1, 1, 1]).to_string(), "[1^4]");
        assert_eq!(Partition::new(vec![2, 2]).to_string(), "[2^2]");
    }

    #[test]
    fn hook_content() {
        assert_eq!(Partition::new(vec![2]).gl_dimension(4), 10);
        assert_eq!(Partition::new(vec![1, 1]).gl_dimension(4), 6);
        assert_eq!(Partition::new(vec![2, 1]).gl_dimension(3), 8);
    }

    #[test]
    fn recover_tensor_square() {
        // H (x) H for dim H = 4: weight (2) has dim 1, weight (1,1) has dim 2.
        let mut dims = BTreeMap::new();
        dims.insert(Partition::new(vec![2]), 1);
        dims.insert(Partition::new(vec![1, 1]), 2);
        let m = gl_multiplicities(2, 4, &dims).unwrap();
        assert_eq!(m[&Partition::new(vec![2])], 1);
        assert_eq!(m[&Partition::new(vec![1, 1])], 1);
    }
}
