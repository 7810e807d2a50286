//! Worked examples of the trace and merging maps, transcribed from planar pictures.
//!
//! Cyclic orders are read counterclockwise. A path built with `Expr::path`
//! starts at a root leaf; travelling west, hairs below are on the left.

use hlg_core::graph::{Expr, GraphVector, HairyGraph, Side, Slot};
use hlg_core::linalg::Rational;
use hlg_core::tensor::{a, b};
use hlg_core::trace::{beta, trace_r};

/// The ten-leaf caterpillar rooted at its east end, with the given leaves in
/// travel order: seven hairs (below, above, ...) and the two leaves at the west end (above, below).
fn caterpillar(hairs: [Expr; 7], top: Expr, bottom: Expr, root: Slot) -> HairyGraph {
    let sides = [Side::Left, Side::Right, Side::Left, Side::Right, Side::Left, Side::Right, Side::Left];
    let path = sides.into_iter().zip(hairs).collect();
    HairyGraph::rooted(root, Expr::path(path, Expr::node(top, bottom)), 7).unwrap()
}

#[test]
fn second_trace_of_caterpillar() {
    let c = Expr::color;
    let x = caterpillar(
        [c(b(3)), c(a(6)), c(a(2)), c(b(1)), c(b(2)), c(b(5)), c(a(3))],
        c(a(1)),
        c(a(4)),
        Slot::Color(a(7)),
    );
    let got = trace_r(&GraphVector::from_graph(&x).unwrap(), 2).unwrap();

    let (t, h) = (Expr::tail, Expr::head);
    let terms = [
        caterpillar([c(b(3)), c(a(6)), t(2), h(1), h(2), c(b(5)), c(a(3))], t(1), c(a(4)), Slot::Color(a(7))),
        caterpillar([h(2), c(a(6)), c(a(2)), h(1), c(b(2)), c(b(5)), t(2)], t(1), c(a(4)), Slot::Color(a(7))),
        caterpillar([h(2), c(a(6)), t(1), c(b(1)), h(1), c(b(5)), t(2)], c(a(1)), c(a(4)), Slot::Color(a(7))),
    ];
    let mut want = GraphVector::zero(7, false);
    for g in &terms {
        want.add_graph(g, &Rational::one()).unwrap();
    }
    assert_eq!(got, want);
}

/// Tree with vertices at (0,0), (3,0), (6,0), described from the vertex (3,0).
fn first_tree(east: Expr) -> [Expr; 3] {
    let west = Expr::node(Expr::tail(1), Expr::color(a(1)));
    [east, Expr::tail(2), west]
}

#[test]
fn beta_merges_first_two_trees() {
    let (t, h, c) = (Expr::tail, Expr::head, Expr::color);
    let third = || {
        let up = Expr::node(c(b(3)), Expr::node(c(a(3)), c(b(2))));
        [Expr::node(c(a(4)), up), h(1), h(4)]
    };
    let x = HairyGraph::from_trees(
        vec![
            first_tree(Expr::node(t(3), c(b(1)))),
            [Expr::node(t(4), h(2)), c(a(2)), h(3)],
            third(),
        ],
        4,
        true,
    )
    .unwrap();
    let got = beta(&GraphVector::from_graph(&x).unwrap()).unwrap();

    let via_upper_arc = HairyGraph::from_trees(
        vec![
            [
                Expr::node(t(3), c(b(1))),
                Expr::node(Expr::node(c(a(2)), h(3)), t(4)),
                Expr::node(t(1), c(a(1))),
            ],
            third(),
        ],
        4,
        true,
    )
    .unwrap();
    let via_lower_arc = HairyGraph::from_trees(
        vec![
            first_tree(Expr::node(Expr::node(Expr::node(t(4), h(2)), c(a(2))), c(b(1)))),
            third(),
        ],
        4,
        true,
    )
    .unwrap();
    let mut want = GraphVector::zero(4, true);
    want.add_graph(&via_upper_arc, &Rational::one()).unwrap();
    want.add_graph(&via_lower_arc, &Rational::one()).unwrap();
    assert_eq!(got, want);
}
