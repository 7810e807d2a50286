use hlg_core::graph::{bracket_h, space_dim, tree_to_derivation, BlockSpace, GraphVector, SpaceSpec};
use hlg_core::lie::{h_block, h_dim, derivation_bracket, dominant_contents, DerivationCoords};
use hlg_core::linalg::member;

#[test]
fn diagram_and_derivation_dims_agree() {
    for g in 1..=3 {
        for n in 1..=4 {
            let d = space_dim(&SpaceSpec::one_tree(n, 0, g)).unwrap();
            let h = h_dim(n, g).unwrap();
            println!("n={n} g={g}: {d} {h}");
            assert_eq!(d, h, "n={n} g={g}");
        }
    }
}

#[test]
fn ihx_and_basis_map_into_kernel() {
    let (n, g) = (3, 2);
    for c in dominant_contents(n + 2, 2 * g) {
        let spec = SpaceSpec::one_tree(n, 0, g).with_weight(c.clone());
        let block = BlockSpace::build(&spec).unwrap();
        let hb = h_block(n, g, &c).unwrap();
        let coords = DerivationCoords::for_content(n, g, &c);
        for row in block.relations.rows() {
            let v = block.vector(row);
            assert!(tree_to_derivation(&v).unwrap().is_zero());
        }
        for k in &block.basis {
            let mut v = GraphVector::zero(g, false);
            v.add_key(k.clone(), 1.into());
            let t = tree_to_derivation(&v).unwrap();
            assert!(member(&hb.kernel, &coords.coordinates(&t).unwrap()).unwrap());
        }
    }
}

fn random_tree(n: usize, g: usize, rng: &mut impl rand::Rng) -> GraphVector {
    use hlg_core::graph::{enumerate_basis, SpaceSpec};
    let m = n + 2;
    let mut c = vec![0; 2 * g];
    for _ in 0..m {
        c[rng.gen_range(0..2 * g)] += 1;
    }
    let basis = enumerate_basis(&SpaceSpec::one_tree(n, 0, g).with_weight(c)).unwrap();
    let mut v = GraphVector::zero(g, false);
    if basis.is_empty() {
        return v;
    }
    v.add_key(basis[rng.gen_range(0..basis.len())].clone(), 1.into());
    v
}

#[test]
fn bracket_intertwines() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 50 {
        let n1 = 1 + checked % 2;
        let n2 = 1 + (checked / 2) % 2;
        let x = random_tree(n1, 2, &mut rng);
        let y = random_tree(n2, 2, &mut rng);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let lhs = tree_to_derivation(&bracket_h(&x, &y).unwrap()).unwrap();
        let rhs = derivation_bracket(&tree_to_derivation(&x).unwrap(), &tree_to_derivation(&y).unwrap());
        assert_eq!(lhs, rhs, "x={x} y={y}");
        checked += 1;
    }
}
