//! Formal combinations of theta symbols `Theta(t;u;v;w)` and their relations.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use hlg_core::graph::{GraphError, GraphVector};
use hlg_core::linalg::{echelonize, Rational, SparseVector, SubspaceBasis};
use hlg_core::tensor::{antipode, coproduct, format_word, parse_word, Sym, Word};

use crate::cores::{theta_graph, Connector};
use crate::Omega2Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaTerm {
    pub t: Word,
    pub u: Word,
    pub v: Word,
    pub w: Word,
}

fn bar(w: &[Sym]) -> (i64, Word) {
    antipode(w)
}

fn cat(x: &[Sym], y: &[Sym]) -> Word {
    let mut out = x.to_vec();
    out.extend_from_slice(y);
    out
}

impl ThetaTerm {
    pub fn new(t: &[Sym], u: &[Sym], v: &[Sym], w: &[Sym]) -> Self {
        ThetaTerm {
            t: t.to_vec(),
            u: u.to_vec(),
            v: v.to_vec(),
            w: w.to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.t.len() + self.u.len() + self.v.len() + self.w.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Sym> + '_ {
        self.t.iter().chain(&self.u).chain(&self.v).chain(&self.w).copied()
    }

    /// Reflection in the horizontal axis: `(v̄, w̄, t̄, ū)`.
    pub fn flip_vertical(&self) -> (i64, ThetaTerm) {
        let ((a, t), (b, u), (c, v), (d, w)) = (bar(&self.v), bar(&self.w), bar(&self.t), bar(&self.u));
        (a * b * c * d, ThetaTerm { t, u, v, w })
    }

    /// Reflection in the vertical axis: `(ū, t̄, w̄, v̄)`.
    pub fn flip_horizontal(&self) -> (i64, ThetaTerm) {
        let ((a, t), (b, u), (c, v), (d, w)) = (bar(&self.u), bar(&self.t), bar(&self.w), bar(&self.v));
        (a * b * c * d, ThetaTerm { t, u, v, w })
    }

    /// The orbit under the core symmetries with the signs relating each member to `self`.
    pub fn orbit(&self) -> [(i64, ThetaTerm); 4] {
        let (s1, x1) = self.flip_vertical();
        let (s2, x2) = self.flip_horizontal();
        let (s3, x3) = x1.flip_horizontal();
        [(1, self.clone()), (s1, x1), (s2, x2), (s1 * s3, x3)]
    }

    /// Minimal orbit member and the sign with `self = sign * member`, or `None`
    /// when the symmetries force the symbol to vanish.
    pub fn canonical(&self) -> Option<(i64, ThetaTerm)> {
        let orbit = self.orbit();
        let (_, min) = orbit.iter().min_by(|a, b| a.1.cmp(&b.1)).unwrap();
        let signs: Vec<i64> = orbit.iter().filter(|(_, x)| x == min).map(|(s, _)| *s).collect();
        if signs.iter().any(|&s| s != signs[0]) {
            return None;
        }
        Some((signs[0], min.clone()))
    }
}

impl fmt::Display for ThetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Theta({};{};{};{})",
            format_word(&self.t),
            format_word(&self.u),
            format_word(&self.v),
            format_word(&self.w)
        )
    }
}

impl std::str::FromStr for ThetaTerm {
    type Err = Omega2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix("Theta(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Omega2Error::Parse(s.to_string()))?;
        let parts: Vec<Word> = inner
            .split(';')
            .map(parse_word)
            .collect::<Result<_, _>>()
            .map_err(|_| Omega2Error::Parse(s.to_string()))?;
        match parts.as_slice() {
            [t, u, v, w] => Ok(ThetaTerm::new(t, u, v, w)),
            _ => Err(Omega2Error::Parse(s.to_string())),
        }
    }
}

/// Combination of canonical theta symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThetaVector {
    terms: BTreeMap<ThetaTerm, Rational>,
}

impl ThetaVector {
    pub fn zero() -> Self {
        ThetaVector::default()
    }

    pub fn terms(&self) -> &BTreeMap<ThetaTerm, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, x: &ThetaTerm, c: &Rational) {
        let Some((s, key)) = x.canonical() else {
            return;
        };
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry = &*entry + &(c * &Rational::from_int(s));
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &ThetaVector) {
        for (x, d) in &other.terms {
            self.add(x, &(c * d));
        }
    }

    pub fn term(x: &ThetaTerm) -> Self {
        let mut v = ThetaVector::zero();
        v.add(x, &Rational::one());
        v
    }

    /// The graph combination obtained by drawing each symbol on the theta core.
    pub fn to_graph(&self, genus: usize) -> Result<GraphVector, GraphError> {
        let mut out = GraphVector::zero(genus, false);
        for (x, c) in &self.terms {
            out.add_graph(&theta_graph(Connector::Middle, &x.t, &x.u, &x.v, &x.w, genus)?, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, c) in &self.terms {
            writeln!(f, "{c} {x}")?;
        }
        Ok(())
    }
}

/// The handle balance vector `Θ(t,u,v,wa) − Θ(t,u,av,w) − Θ(t,au,v,w) + Θ(ta,u,v,w)`.
pub fn handle_balance(x: &ThetaTerm, a: Sym) -> ThetaVector {
    let mut out = ThetaVector::zero();
    let one = Rational::one();
    let minus = Rational::from_int(-1);
    let (t, u, v, w) = (&x.t, &x.u, &x.v, &x.w);
    out.add(&ThetaTerm::new(t, u, v, &cat(w, &[a])), &one);
    out.add(&ThetaTerm::new(t, u, &cat(&[a], v), w), &minus);
    out.add(&ThetaTerm::new(t, &cat(&[a], u), v, w), &minus);
    out.add(&ThetaTerm::new(&cat(t, &[a]), u, v, w), &one);
    out
}

/// The three-term relation `Θ(t,u,v,w) + Θ(t̄′, t″u, v̄′, wv″) + Θ(tu″, ū′, w″v, w̄′)`
/// with the coproducts expanded.
pub fn gc3_element(x: &ThetaTerm) -> ThetaVector {
    let mut out = ThetaVector::zero();
    out.add(x, &Rational::one());
    let (t, u, v, w) = (&x.t, &x.u, &x.v, &x.w);
    for ((t1, t2), (v1, v2)) in coproduct(t).into_iter().cartesian_product(coproduct(v)) {
        let ((s, tb), (r, vb)) = (bar(&t1), bar(&v1));
        out.add(&ThetaTerm::new(&tb, &cat(&t2, u), &vb, &cat(w, &v2)), &Rational::from_int(s * r));
    }
    for ((u1, u2), (w1, w2)) in coproduct(u).into_iter().cartesian_product(coproduct(w)) {
        let ((s, ub), (r, wb)) = (bar(&u1), bar(&w1));
        out.add(&ThetaTerm::new(&cat(t, &u2), &ub, &cat(&w2, v), &wb), &Rational::from_int(s * r));
    }
    out
}

/// All symbols whose letters have the given occurrence counts.
pub fn symbols_with_content(content: &[usize]) -> Vec<ThetaTerm> {
    let letters: Vec<Sym> = content
        .iter()
        .enumerate()
        .flat_map(|(s, &k)| std::iter::repeat(s as Sym).take(k))
        .collect();
    let m = letters.len();
    let mut out = Vec::new();
    for perm in letters.iter().copied().permutations(m).unique() {
        for cuts in (0..=m).combinations_with_replacement(3) {
            let (i, j, k) = (cuts[0], cuts[1], cuts[2]);
            out.push(ThetaTerm::new(&perm[..i], &perm[i..j], &perm[j..k], &perm[k..]));
        }
    }
    out
}

/// The formal quotient in one letter content: canonical symbols modulo handle
/// balance and the three-term relation (the core symmetries are built in).
#[derive(Debug, Clone)]
pub struct FormalBlock {
    pub content: Vec<usize>,
    pub symbols: Vec<ThetaTerm>,
    pub index: BTreeMap<ThetaTerm, usize>,
    pub relations: SubspaceBasis,
}

impl FormalBlock {
    pub fn build(content: &[usize]) -> Result<Self, Omega2Error> {
        let mut index = BTreeMap::new();
        for x in symbols_with_content(content) {
            if let Some((_, c)) = x.canonical() {
                let next = index.len();
                index.entry(c).or_insert(next);
            }
        }
        let mut symbols = vec![ThetaTerm::new(&[], &[], &[], &[]); index.len()];
        for (x, &i) in &index {
            symbols[i] = x.clone();
        }
        let mut block = FormalBlock {
            content: content.to_vec(),
            symbols,
            index,
            relations: SubspaceBasis::zero(0),
        };
        let mut rows = Vec::new();
        for x in symbols_with_content(content) {
            rows.push(block.coords(&gc3_element(&x))?);
        }
        for a in 0..content.len() {
            if content[a] == 0 {
                continue;
            }
            let mut rest = content.to_vec();
            rest[a] -= 1;
            for x in symbols_with_content(&rest) {
                rows.push(block.coords(&handle_balance(&x, a as Sym))?);
            }
        }
        block.relations = echelonize(&rows, block.symbols.len())?;
        Ok(block)
    }

    pub fn coords(&self, v: &ThetaVector) -> Result<SparseVector, Omega2Error> {
        v.terms
            .iter()
            .map(|(x, c)| {
                self.index
                    .get(x)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Omega2Error::Content(x.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SparseVector::from_pairs)
    }

    pub fn dim(&self) -> usize {
        self.symbols.len() - self.relations.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hlg_core::tensor::{a, b};

    #[test]
    fn bare_gc3_is_three_thetas() {
        let x = ThetaTerm::new(&[], &[], &[], &[]);
        let mut want = ThetaVector::zero();
        want.add(&x, &Rational::from_int(3));
        assert_eq!(gc3_element(&x), want);
    }

    #[test]
    fn text_roundtrip() {
        let x = ThetaTerm::new(&[a(1)], &[], &[b(2), a(1)], &[b(1)]);
        assert_eq!(x.to_string(), "Theta(a1;1;b2.a1;b1)");
        assert_eq!(x.to_string().parse::<ThetaTerm>().unwrap(), x);
    }

    #[test]
    fn symmetry_orbit_signs() {
        let x = ThetaTerm::new(&[a(1)], &[b(1)], &[], &[]);
        for (s, y) in x.orbit() {
            let mut v = ThetaVector::term(&x);
            v.add(&y, &Rational::from_int(-s));
            assert!(v.is_zero());
        }
    }
}
