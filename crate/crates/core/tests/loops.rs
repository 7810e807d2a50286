use hlg_core::graph::GraphVector;
use hlg_core::linalg::Rational;
use hlg_core::tensor::Sym;
use hlg_core::trace::loops::{dihedral_signs, wheel};
use hlg_core::trace::quotient::omega_tilde_block;

fn multilinear(m: usize, genus: usize) -> Vec<usize> {
    let mut c = vec![0; 2 * genus];
    for x in c.iter_mut().take(m) {
        *x = 1;
    }
    c
}

#[test]
fn dihedral_signs_match_brute_force_quotient() {
    for m in 1..=4 {
        let genus = 2;
        let block = omega_tilde_block(1, &multilinear(m, genus), genus).unwrap();
        let word: Vec<Sym> = (0..m as Sym).collect();
        let mut rotated = word[1..].to_vec();
        rotated.push(word[0]);
        let w = GraphVector::from_graph(&wheel(&word, genus).unwrap()).unwrap();
        let r = GraphVector::from_graph(&wheel(&rotated, genus).unwrap()).unwrap();
        let mut plus = w.clone();
        plus.add_scaled(&Rational::from_int(-1), &r);
        let mut minus = w.clone();
        minus.add_scaled(&Rational::one(), &r);
        println!(
            "m={m} dim={} rot+ {} rot- {}",
            block.dim(),
            block.is_zero(&plus).unwrap(),
            block.is_zero(&minus).unwrap()
        );
        let s = dihedral_signs(m).rotation;
        let expected = if s == 1 { &plus } else { &minus };
        assert!(block.is_zero(expected).unwrap());
    }
}
