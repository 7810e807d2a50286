//! Two-loop core graphs with words of hairs on their arcs.
//!
//! Both cores are drawn with a top and a bottom horizontal arc. `v` sits on
//! the top left (`v1` innermost), `w` on the top right (`w1` outermost), `t`
//! on the bottom left (`t1` outermost) and `u` on the bottom right (`u1`
//! innermost). Hairs point away from the core and dotted edges point upward.

use hlg_core::graph::{Expr, GraphError, HairyGraph, Side};
use hlg_core::tensor::Sym;

/// Which of the three vertical connectors of the theta core is solid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connector {
    Left,
    Middle,
    Right,
}

fn hairs(side: Side, letters: impl IntoIterator<Item = Sym>) -> Vec<(Side, Expr)> {
    letters.into_iter().map(|s| (side, Expr::color(s))).collect()
}

fn rev(w: &[Sym]) -> impl Iterator<Item = Sym> + '_ {
    w.iter().rev().copied()
}

/// The theta graph with solid connector `solid`.
pub fn theta_graph(
    solid: Connector,
    t: &[Sym],
    u: &[Sym],
    v: &[Sym],
    w: &[Sym],
    genus: usize,
) -> Result<HairyGraph, GraphError> {
    let (tail, head) = (Expr::tail, Expr::head);
    let top = match solid {
        Connector::Middle => {
            let left_up = Expr::path(hairs(Side::Right, v.iter().copied()), head(1));
            let right_up = Expr::path(hairs(Side::Left, rev(w)), head(2));
            let left_down = Expr::path(hairs(Side::Left, rev(t)), tail(1));
            let right_down = Expr::path(hairs(Side::Right, u.iter().copied()), tail(2));
            [Expr::node(left_down, right_down), right_up, left_up]
        }
        Connector::Left => {
            let east = Expr::path(hairs(Side::Left, rev(w)), head(2));
            let mut around = hairs(Side::Right, v.iter().copied());
            around.extend(hairs(Side::Right, t.iter().copied()));
            around.push((Side::Left, tail(1)));
            around.extend(hairs(Side::Right, u.iter().copied()));
            [head(1), east, Expr::path(around, tail(2))]
        }
        Connector::Right => {
            let west = Expr::path(hairs(Side::Right, v.iter().copied()), head(1));
            let mut around = hairs(Side::Left, rev(w));
            around.extend(hairs(Side::Left, rev(u)));
            around.push((Side::Right, tail(2)));
            around.extend(hairs(Side::Left, rev(t)));
            [head(2), Expr::path(around, tail(1)), west]
        }
    };
    HairyGraph::from_trees(vec![top], genus, false)
}

/// The dumbbell graph: two cycles, each closed by a dotted edge, joined by a handle.
pub fn dumbbell_graph(t: &[Sym], u: &[Sym], v: &[Sym], w: &[Sym], genus: usize) -> Result<HairyGraph, GraphError> {
    let (tail, head) = (Expr::tail, Expr::head);
    let top_left = Expr::path(hairs(Side::Right, v.iter().copied()), head(1));
    let bottom_left = Expr::path(hairs(Side::Left, rev(t)), tail(1));
    let top_right = Expr::path(hairs(Side::Left, rev(w)), head(2));
    let bottom_right = Expr::path(hairs(Side::Right, u.iter().copied()), tail(2));
    let handle = Expr::node(bottom_right, top_right);
    HairyGraph::from_trees(vec![[handle, top_left, bottom_left]], genus, false)
}
