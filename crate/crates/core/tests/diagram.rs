//! The trace of an iterated bracket of tripods agrees, modulo IHX, with the
//! merge of the traced ordered tuple.

use itertools::Itertools;

use hlg_core::graph::{vanishes_mod_ihx, Expr, GraphVector, HairyGraph};
use hlg_core::linalg::Rational;
use hlg_core::trace::{beta_power, br, trace, trace_ord};

const GENUS: usize = 2;

fn tripod_basis() -> Vec<GraphVector> {
    (0..2 * GENUS as u8)
        .combinations(3)
        .map(|c| {
            let g = HairyGraph::from_trees(vec![[Expr::color(c[0]), Expr::color(c[1]), Expr::color(c[2])]], GENUS, false)
                .unwrap();
            GraphVector::from_graph(&g).unwrap()
        })
        .collect()
}

#[test]
fn trace_of_bracket_matches_merged_trace() {
    let basis = tripod_basis();
    assert_eq!(basis.len(), 4);
    let mut checked = 0;
    let mut nontrivial = 0;
    for n in 1..=3 {
        for tuple in (0..n).map(|_| basis.iter().cloned()).multi_cartesian_product() {
            let lhs = trace(&br(&tuple).unwrap()).unwrap();
            let rhs = beta_power(&trace_ord(&tuple).unwrap()).unwrap();
            if !vanishes_mod_ihx(&rhs).unwrap() {
                nontrivial += 1;
            }
            let mut diff = lhs;
            diff.add_scaled(&Rational::from_int(-1), &rhs);
            assert!(vanishes_mod_ihx(&diff).unwrap(), "tuple {tuple:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 4 + 16 + 64);
    assert!(nontrivial > 0);
    println!("tuples={checked} nonzero={nontrivial}");
}
