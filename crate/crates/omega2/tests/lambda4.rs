use hlg_core::graph::GraphVector;
use hlg_core::linalg::{Rational, SparseVector};
use hlg_core::tensor::Sym;
use hlg_omega2::lambda4::{complete_parameters, constraint, K_TABLE, shape_graph, AlternatingBlock, KForm, Shape};
use hlg_omega2::formal::symbols_with_content;
use hlg_omega2::presentation::theta_r_graph;

fn shape_vector(block: &AlternatingBlock, shape: &str, colors: &[Sym]) -> GraphVector {
    let g = shape_graph(shape.parse::<Shape>().unwrap(), colors, block.genus).unwrap();
    GraphVector::from_graph(&g).unwrap()
}

fn ints<const N: usize>(xs: [i64; N]) -> [Rational; N] {
    xs.map(Rational::from_int)
}

#[test]
fn multiplicity_is_six_with_one_relation() {
    for genus in [2, 3] {
        let block = AlternatingBlock::cached(genus).unwrap();
        assert_eq!(block.multiplicity(), 6);
        let rels = block.j_relations().unwrap();
        assert_eq!(rels.len(), 1);
        let scale = &Rational::one() / &rels[0].0[1];
        let normalized = KForm(rels[0].0.clone().map(|c| &c * &scale));
        assert_eq!(normalized, constraint());
    }
}

#[test]
fn k_table_matches_modulo_the_relation() {
    let block = AlternatingBlock::cached(2).unwrap();
    for line in K_TABLE.lines().filter(|l| !l.starts_with('#')) {
        let (shape, want) = line.split_once('\t').unwrap();
        let want: KForm = want.parse().unwrap();
        let got = block.k_eval(&shape_vector(&block, shape, &block.letters)).unwrap();
        assert_eq!(got.reduced(), want.reduced(), "{shape}: {got} vs {want}");
    }
}

#[test]
fn generators_evaluate_to_their_parameters() {
    let block = AlternatingBlock::cached(2).unwrap();
    for (shape, name) in [("40000", "p"), ("20200", "q"), ("02020", "u")] {
        let got = block.k_eval(&shape_vector(&block, shape, &block.letters)).unwrap();
        assert_eq!(got, name.parse().unwrap());
    }
}

#[test]
fn pi_is_alternating_and_kills_core_ihx() {
    let block = AlternatingBlock::cached(2).unwrap();
    let params = complete_parameters(&ints([3, -1, 2, 5, -4, 7]));
    let x = shape_vector(&block, "11011", &[0, 1, 2, 3]);
    let y = shape_vector(&block, "11011", &[1, 0, 2, 3]);
    let px = block.pi_eval(&params, &x).unwrap();
    let py = block.pi_eval(&params, &y).unwrap();
    assert_eq!(px[&[0, 1, 2, 3]], -&py[&[0, 1, 2, 3]]);

    let mut ihx = shape_vector(&block, "20110", &block.letters);
    ihx.add_scaled(&Rational::one(), &shape_vector(&block, "21010", &block.letters));
    ihx.add_scaled(&Rational::from_int(-1), &shape_vector(&block, "30010", &block.letters));
    assert!(block.pi_eval(&params, &ihx).unwrap().is_empty());
}

#[test]
fn pi_rejects_parameters_off_the_constraint() {
    let block = AlternatingBlock::cached(2).unwrap();
    let x = shape_vector(&block, "40000", &block.letters);
    assert!(block.pi_eval(&ints([1, 1, 0, 0, 0, 0, 0]), &x).is_err());
}

#[test]
fn pi_vanishes_on_theta_r_exactly_on_the_factorization_subspace() {
    let block = AlternatingBlock::cached(2).unwrap();
    let good = complete_parameters(&ints([1, -1, 0, -1, 0, 1]));
    let bad = complete_parameters(&ints([0, 0, 2, 0, 3, 0]));
    let mut witnessed = false;
    for x in symbols_with_content(&[1, 1, 1, 1]) {
        let t = theta_r_graph(&x.t, &x.u, &x.v, &x.w, 2).unwrap();
        assert!(block.pi_eval(&good, &t).unwrap().is_empty(), "{x}");
        witnessed |= !block.pi_eval(&bad, &t).unwrap().is_empty();
    }
    assert!(witnessed);
}

#[test]
fn displayed_r_elements_give_the_four_conditions() {
    let block = AlternatingBlock::cached(2).unwrap();
    let cases: [(&[(i64, &str)], &str); 4] = [
        (&[(1, "03010"), (-1, "30001"), (1, "00400")], "2v+2q"),
        (&[(1, "02020"), (1, "20002"), (1, "00400")], "2u+2q"),
        (&[(1, "22000"), (1, "20200"), (-1, "02200")], "p+q"),
        (&[(1, "11101"), (-1, "10210"), (1, "01111")], "-3r+2t"),
    ];
    for (terms, want) in cases {
        let mut v = GraphVector::zero(2, false);
        for (c, shape) in terms {
            v.add_scaled(&Rational::from_int(*c), &shape_vector(&block, shape, &block.letters));
        }
        assert!(block.in_r_mod_alternation(&v).unwrap(), "{terms:?}");
        let want: KForm = want.parse().unwrap();
        assert_eq!(block.k_eval(&v).unwrap().reduced(), want.reduced());
    }
}

#[test]
fn factorization_subspace() {
    let block = AlternatingBlock::cached(2).unwrap();
    let f = block.factorization_conditions().unwrap();
    assert_eq!(f.rank(), 2);
    let member = |xs: [i64; 6]| f.residue(&SparseVector::from_pairs(ints(xs).into_iter().enumerate())).unwrap().is_zero();
    assert!(member([1, -1, 0, -1, 0, 1]));
    assert!(member([0, 0, 2, -5, 3, 0]));
    assert!(!member([0, 0, 2, 0, 3, 0]));
}
