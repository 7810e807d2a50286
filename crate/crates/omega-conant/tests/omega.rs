use hlg_core::graph::{bracket_h, BlockSpace, Expr, GraphVector, HairyGraph, Slot, SpaceSpec};
use hlg_core::lie::{all_contents, dominant_contents};
use hlg_core::trace::quotient::{for_each_tripod_union, omega_tilde_block};
use hlg_core::linalg::Rational;
use hlg_core::tensor::Sym;
use std::collections::BTreeMap;

use hlg_omega_conant::cases::{case_shape, CaseShape};
use hlg_omega_conant::factorization::{check_factorization, refinement_check, factorization_defect, phi, phi_word, tr_c, wheel_words};
use hlg_omega_conant::relations::{omega_block, omega_is_zero, RelationSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn one_loop_dims_agree() {
    for m in 1..=3 {
        for c in all_contents(m, 4) {
            let a = omega_block(m, 1, &c, 2, RelationSet::ALL).unwrap().dim();
            let b = omega_tilde_block(1, &c, 2).unwrap().dim();
            assert_eq!(a, b, "{c:?}");
        }
    }
}

#[test]
fn factorization_on_basis() {
    let genus = 2;
    for n in 1..=3 {
        for c in all_contents(n + 2, 2 * genus) {
            let block = BlockSpace::cached(&SpaceSpec::one_tree(n, 0, genus).with_weight(c.clone())).unwrap();
            let mut bad = 0;
            for k in &block.basis {
                let x = GraphVector::from_graph(&HairyGraph::from_key(k, genus, false)).unwrap();
                if !check_factorization(&x).unwrap() {
                    bad += 1;
                }
            }
            if bad > 0 {
                println!("n={n} {c:?}: {bad}/{}", block.basis.len());
            }
            assert_eq!(bad, 0);
        }
    }
}

fn random_tree(rng: &mut impl Rng, leaves: usize, genus: usize) -> GraphVector {
    let color = |rng: &mut dyn rand::RngCore| Expr::color(rng.gen_range(0..2 * genus) as Sym);
    let mut items: Vec<Expr> = (0..leaves - 1).map(|_| color(rng)).collect();
    while items.len() > 2 {
        let i = rng.gen_range(0..items.len() - 1);
        let x = items.remove(i);
        let y = items.remove(i);
        items.insert(i, Expr::node(x, y));
    }
    let y = items.pop().unwrap();
    let x = items.pop().unwrap();
    let root = Slot::Color(rng.gen_range(0..2 * genus) as Sym);
    GraphVector::from_graph(&HairyGraph::rooted(root, Expr::node(x, y), genus).unwrap()).unwrap()
}

fn random_nonzero_trees(seed: u64, leaves: usize, genus: usize, count: usize) -> Vec<GraphVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let x = random_tree(&mut rng, leaves, genus);
        if !x.is_zero() {
            out.push(x);
        }
    }
    out
}

#[test]
fn factorization_on_basis_degree_four() {
    let genus = 2;
    for c in dominant_contents(6, 2 * genus) {
        let block = BlockSpace::cached(&SpaceSpec::one_tree(4, 0, genus).with_weight(c.clone())).unwrap();
        for k in &block.basis {
            let x = GraphVector::from_graph(&HairyGraph::from_key(k, genus, false)).unwrap();
            assert!(check_factorization(&x).unwrap(), "{c:?} {k:?}");
        }
    }
}

#[test]
fn factorization_on_random_degree_five() {
    for x in random_nonzero_trees(5, 7, 2, 20) {
        assert!(check_factorization(&x).unwrap());
    }
}

#[test]
fn two_loop_quotient_first_appears_in_degree_six() {
    let genus = 2;
    for c in dominant_contents(3, 2 * genus) {
        assert_eq!(omega_block(5, 2, &c, genus, RelationSet::ALL).unwrap().dim(), 0, "{c:?}");
    }
    let dims: Vec<usize> = [vec![2, 2, 0, 0], vec![2, 1, 1, 0], vec![1, 1, 1, 1]]
        .iter()
        .map(|c| omega_block(6, 2, c, genus, RelationSet::ALL).unwrap().dim())
        .collect();
    assert_eq!(dims, [2, 3, 4]);
}

#[test]
fn factorization_is_nontrivial_in_degree_six() {
    let (mut lhs_seen, mut rhs_seen) = (false, false);
    for x in random_nonzero_trees(7, 8, 2, 6) {
        let t2 = tr_c(&x, 2).unwrap();
        let p = phi(&wheel_words(&tr_c(&x, 1).unwrap()).unwrap()).unwrap();
        lhs_seen |= !omega_is_zero(&p).unwrap();
        rhs_seen |= !omega_is_zero(&t2).unwrap();
        assert!(omega_is_zero(&factorization_defect(&x).unwrap()).unwrap());
    }
    assert!(lhs_seen && rhs_seen);
}

#[test]
fn traces_of_brackets_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let x = random_tree(&mut rng, 3, 2);
        let y = random_tree(&mut rng, 4, 2);
        let xy = bracket_h(&x, &y).unwrap();
        for r in 1..=2 {
            assert!(omega_is_zero(&tr_c(&xy, r).unwrap()).unwrap());
        }
    }
}

#[test]
fn refinement_holds_for_every_case_shape() {
    let genus = 2;
    let mut seen: BTreeMap<CaseShape, usize> = BTreeMap::new();
    for n in 1..=5usize {
        for r in 1..=n / 2 + 1 {
            let Some(m) = (n + 2).checked_sub(2 * r) else { continue };
            for c in dominant_contents(m, 2 * genus) {
                for_each_tripod_union(&c, n, genus, &mut |u: &HairyGraph| {
                    let shape = case_shape(u).unwrap();
                    let x = GraphVector::from_graph(u)?;
                    if !x.is_zero() {
                        assert!(refinement_check(&x).unwrap(), "{shape} n={n} {c:?}");
                        *seen.entry(shape).or_default() += 1;
                    }
                    Ok(())
                })
                .unwrap();
            }
        }
    }
    println!("{seen:?}");
    for shape in [CaseShape::FirstSelfLoop, CaseShape::TwoBackward, CaseShape::SelfLoop, CaseShape::BackwardColored, CaseShape::BackwardForward] {
        assert!(seen.contains_key(&shape), "{shape} never enumerated");
    }
}

#[test]
fn phi_respects_the_dihedral_relations() {
    let genus = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nonzero = 0;
    for _ in 0..12 {
        let w: Vec<Sym> = (0..6).map(|_| rng.gen_range(0..2 * genus) as Sym).collect();
        let base = phi_word(&w, genus).unwrap();
        nonzero += usize::from(!omega_is_zero(&base).unwrap());
        let mut rotated = w.clone();
        rotated.rotate_left(1);
        let reversed: Vec<Sym> = w.iter().rev().copied().collect();
        let mut d = base.clone();
        d.add_scaled(&Rational::from_int(-1), &phi_word(&rotated, genus).unwrap());
        assert!(omega_is_zero(&d).unwrap(), "rotation {w:?}");
        // Reflection sign (-1)^(m+1) in even length.
        let mut d = base;
        d.add_scaled(&Rational::one(), &phi_word(&reversed, genus).unwrap());
        assert!(omega_is_zero(&d).unwrap(), "reflection {w:?}");
    }
    assert!(nonzero > 0);
}
