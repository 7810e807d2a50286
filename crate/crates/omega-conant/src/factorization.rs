//! The trace into `Ω`, the map `Φ` from one-loop wheels to two-loop graphs,
//! and the checks comparing them with the two-loop trace and the merged images.

use hlg_core::graph::{Expr, GraphVector, HairyGraph, Side, Slot};
use hlg_core::linalg::Rational;
use hlg_core::tensor::{pairing_sign, Sym, TensorVector};
use hlg_core::trace::loops::wheel_expansion;
use hlg_core::trace::{beta_power, trace_r};

use crate::relations::omega_is_zero;
use crate::OmegaError;

/// `Tr^C_r`: the trace with `r` dotted edges, read in `Ω`.
pub fn tr_c(x: &GraphVector, r: usize) -> Result<GraphVector, OmegaError> {
    let max = x.graphs().map(|(g, _)| g.lie_degree() / 2 + 1).max().unwrap_or(0);
    if r > max {
        return Ok(GraphVector::zero(x.genus(), false));
    }
    Ok(trace_r(x, r)?)
}

/// An item on the loop of a one-loop picture, met counterclockwise.
#[derive(Debug, Clone, Copy)]
enum LoopItem {
    Hair(Sym),
    Chord { head: bool },
}

/// The graph whose loop is cut by dotted edge 1, starting after its tail and
/// ending at its head; colored hairs point out of the loop and chord ends
/// point into it.
fn loop_graph(items: &[LoopItem], genus: usize) -> Result<HairyGraph, OmegaError> {
    let hairs = items
        .iter()
        .map(|it| match *it {
            LoopItem::Hair(s) => (Side::Right, Expr::color(s)),
            LoopItem::Chord { head } => (Side::Left, if head { Expr::head(2) } else { Expr::tail(2) }),
        })
        .collect();
    let body = Expr::path(hairs, Expr::head(1));
    Ok(HairyGraph::rooted(Slot::Dot { edge: 1, head: false }, body, genus)?)
}

/// `Φ` on the wheel whose hairs, met from the tail of its dotted edge to the
/// head, are `word`.
pub fn phi_word(word: &[Sym], genus: usize) -> Result<GraphVector, OmegaError> {
    let m = word.len();
    let mut out = GraphVector::zero(genus, false);
    for q in 0..m {
        for p in q + 1..m {
            let c = pairing_sign(word[p], word[q]);
            if c == 0 {
                continue;
            }
            let mut items: Vec<LoopItem> = word.iter().map(|&s| LoopItem::Hair(s)).collect();
            items[p] = LoopItem::Chord { head: false };
            items[q] = LoopItem::Chord { head: true };
            let coeff = Rational::from_int(c);
            out.add_graph(&loop_graph(&items, genus)?, &coeff)?;
            items.rotate_left(p);
            out.add_graph(&loop_graph(&items, genus)?, &coeff)?;
        }
    }
    Ok(out)
}

/// `Φ` on a combination of wheel words.
pub fn phi(words: &TensorVector) -> Result<GraphVector, OmegaError> {
    let mut out = GraphVector::zero(words.genus(), false);
    for (w, c) in words.terms() {
        out.add_scaled(c, &phi_word(w, words.genus())?);
    }
    Ok(out)
}

/// The one-loop part of `x` as wheel words, term by term through IHX.
pub fn wheel_words(x: &GraphVector) -> Result<TensorVector, OmegaError> {
    let mut acc = TensorVector::zero(x.genus());
    for (g, c) in x.graphs() {
        acc.add_scaled(c, &wheel_expansion(&g)?);
    }
    Ok(acc)
}

/// `Φ(Tr^C_1(x)) - 3 Tr^C_2(x)`.
pub fn factorization_defect(x: &GraphVector) -> Result<GraphVector, OmegaError> {
    let mut d = phi(&wheel_words(&tr_c(x, 1)?)?)?;
    d.add_scaled(&Rational::from_int(-3), &tr_c(x, 2)?);
    Ok(d)
}

/// Whether `Φ ∘ Tr^C_1 = 3 Tr^C_2` holds on `x` in `Ω`.
pub fn check_factorization(x: &GraphVector) -> Result<bool, OmegaError> {
    for (g, _) in x.graphs() {
        if g.tree_count() != 1 || g.dotted_count() != 0 {
            return Err(OmegaError::Shape("trees without dotted edges".into()));
        }
    }
    omega_is_zero(&factorization_defect(x)?)
}

/// Whether the fully merged image of an ordered union vanishes in `Ω`.
pub fn refinement_check(x: &GraphVector) -> Result<bool, OmegaError> {
    if !x.ordered() {
        return Err(OmegaError::Shape("ordered unions of trees".into()));
    }
    omega_is_zero(&beta_power(x)?)
}
