use hlg_core::graph::{vanishes_mod_ihx, GraphVector};
use hlg_core::lie::all_contents;
use hlg_core::linalg::Rational;
use hlg_core::tensor::{a, b, Sym};
use hlg_core::trace::quotient::omega_tilde_block;
use hlg_omega2::cores::{dumbbell_graph, theta_graph, Connector};
use hlg_omega2::formal::{gc3_element, handle_balance, symbols_with_content, FormalBlock, ThetaTerm, ThetaVector};
use hlg_omega2::presentation::{r_membership, reduce_to_theta, two_loop_quotient_dim};

const GENUS: usize = 2;

fn theta(t: &[Sym], u: &[Sym], v: &[Sym], w: &[Sym]) -> GraphVector {
    GraphVector::from_graph(&theta_graph(Connector::Middle, t, u, v, w, GENUS).unwrap()).unwrap()
}

fn graph_of(x: &ThetaTerm) -> GraphVector {
    theta(&x.t, &x.u, &x.v, &x.w)
}

#[test]
fn core_symmetries_hold_on_graphs() {
    for content in all_contents(3, 2 * GENUS) {
        for x in symbols_with_content(&content) {
            for (s, y) in x.orbit() {
                let mut d = graph_of(&x);
                d.add_scaled(&Rational::from_int(-s), &graph_of(&y));
                assert!(d.is_zero(), "{x} vs {y}");
            }
        }
    }
}

#[test]
fn handle_balance_vanishes_mod_ihx() {
    for content in all_contents(2, 2 * GENUS) {
        for x in symbols_with_content(&content) {
            for letter in 0..2 * GENUS as Sym {
                let v = handle_balance(&x, letter).to_graph(GENUS).unwrap();
                assert!(vanishes_mod_ihx(&v).unwrap(), "{x} with {letter}");
            }
        }
    }
}

#[test]
fn three_term_relation_lies_in_r() {
    for m in 0..=3 {
        for content in all_contents(m, 2 * GENUS) {
            for x in symbols_with_content(&content) {
                let v = gc3_element(&x).to_graph(GENUS).unwrap();
                assert!(v.is_zero() || r_membership(&v).unwrap(), "{x}");
            }
        }
    }
}

#[test]
fn bare_dumbbell_is_two_thetas() {
    let d = GraphVector::from_graph(&dumbbell_graph(&[], &[], &[], &[], GENUS).unwrap()).unwrap();
    let mut want = ThetaVector::zero();
    want.add(&ThetaTerm::new(&[], &[], &[], &[]), &Rational::from_int(2));
    assert_eq!(reduce_to_theta(&d).unwrap(), want);
    assert!(r_membership(&d).unwrap());
}

#[test]
fn reduce_to_theta_agrees_modulo_ihx() {
    let d = GraphVector::from_graph(&dumbbell_graph(&[a(1)], &[b(2)], &[a(2), b(1)], &[], GENUS).unwrap()).unwrap();
    let mut diff = reduce_to_theta(&d).unwrap().to_graph(GENUS).unwrap();
    diff.add_scaled(&Rational::from_int(-1), &d);
    assert!(vanishes_mod_ihx(&diff).unwrap());
}

#[test]
fn hair_moves_between_left_arcs_in_r() {
    let (t, v, x) = (vec![b(1)], vec![a(2)], a(1));
    let mut e = theta(&t, &[], &[v[0], x], &[]);
    e.add_scaled(&Rational::from_int(-1), &theta(&[x, t[0]], &[], &v, &[]));
    assert!(r_membership(&e).unwrap());
}

#[test]
fn formal_and_graph_quotients_agree() {
    for m in 0..=3 {
        for content in all_contents(m, 2 * GENUS) {
            let formal = FormalBlock::build(&content).unwrap().dim();
            let graphs = two_loop_quotient_dim(&content, GENUS).unwrap();
            let merged = omega_tilde_block(2, &content, GENUS).unwrap().dim();
            assert_eq!((formal, graphs), (merged, merged), "{content:?}");
        }
    }
}
