use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hlg_core::graph::{
    bracket_h, canonicalize, ihx_element, internal_edges, vanishes_mod_ihx, Expr, GraphVector, HairyGraph,
};
use hlg_core::lie::{lyndon_basis, witt_dimension};
use hlg_core::tableaux::{gl_multiplicities, kostka, partitions, Partition};
use hlg_core::linalg::{echelonize, member, rank, Rational, SparseVector};
use hlg_core::tensor::{
    all_words, antipode, contract, coproduct, harmonic_basis, insertion_span, pairing, Sym, Word,
};
use hlg_core::trace::loops::one_loop_reduce;
use hlg_core::trace::{beta_power, br, trace, trace_ord, trace_r};

fn small_vectors(dim: usize) -> impl Strategy<Value = Vec<SparseVector>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..6)
        .prop_map(|rows| rows.into_iter().map(|r| SparseVector::from_dense(&r.map_into_rational())).collect())
}

trait IntoRational {
    fn map_into_rational(self) -> Vec<Rational>;
}

impl IntoRational for Vec<i64> {
    fn map_into_rational(self) -> Vec<Rational> {
        self.into_iter().map(Rational::from_int).collect()
    }
}

/// A random graph: `trees` trees with the given leaf counts, `dotted` dotted
/// edges placed on random leaves and random colors elsewhere.
fn random_graph(seed: u64, leaves: &[usize], dotted: usize, genus: usize, ordered: bool) -> Option<HairyGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: usize = leaves.iter().sum();
    if 2 * dotted > total {
        return None;
    }
    let mut slots: Vec<Expr> = (1..=dotted as u16).flat_map(|e| [Expr::tail(e), Expr::head(e)]).collect();
    while slots.len() < total {
        slots.push(Expr::color(rng.gen_range(0..2 * genus) as Sym));
    }
    for i in (1..slots.len()).rev() {
        slots.swap(i, rng.gen_range(0..=i));
    }
    let mut trees = Vec::new();
    let mut rest = slots.into_iter();
    for &k in leaves {
        let mut items: Vec<Expr> = rest.by_ref().take(k).collect();
        while items.len() > 3 {
            let i = rng.gen_range(0..items.len() - 1);
            let x = items.remove(i);
            let y = items.remove(i);
            items.insert(i, Expr::node(x, y));
        }
        let [x, y, z]: [Expr; 3] = items.try_into().ok()?;
        trees.push([x, y, z]);
    }
    HairyGraph::from_trees(trees, genus, ordered).ok()
}

fn colored_leaves(g: &HairyGraph) -> usize {
    g.homological_degree()
}

fn random_tripods(seed: u64, n: usize, genus: usize) -> Vec<GraphVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut letters: Vec<Sym> = (0..2 * genus as Sym).collect();
            for i in (1..letters.len()).rev() {
                letters.swap(i, rng.gen_range(0..=i));
            }
            let leaves = [Expr::color(letters[0]), Expr::color(letters[1]), Expr::color(letters[2])];
            GraphVector::from_graph(&HairyGraph::from_trees(vec![leaves], genus, false).unwrap()).unwrap()
        })
        .collect()
}

fn random_word(len: usize, genus: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..(2 * genus) as Sym, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn echelonize_is_idempotent(vs in small_vectors(5)) {
        let once = echelonize(&vs, 5).unwrap();
        let twice = echelonize(once.rows(), 5).unwrap();
        prop_assert_eq!(once.rows(), twice.rows());
    }

    #[test]
    fn rank_ignores_order(vs in small_vectors(5), seed in any::<u64>()) {
        let mut shuffled = vs.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(rank(&vs, 5).unwrap(), rank(&shuffled, 5).unwrap());
    }

    #[test]
    fn membership_means_rank_unchanged(vs in small_vectors(4), v in prop::collection::vec(-3i64..=3, 4)) {
        let v = SparseVector::from_dense(&v.map_into_rational());
        let basis = echelonize(&vs, 4).unwrap();
        let mut extended = vs.clone();
        extended.push(v.clone());
        prop_assert_eq!(member(&basis, &v).unwrap(), rank(&extended, 4).unwrap() == basis.rank());
    }

    #[test]
    fn pairing_is_antisymmetric(x in 0u8..6, y in 0u8..6) {
        let xy = pairing(x, y, 3).unwrap();
        let yx = pairing(y, x, 3).unwrap();
        prop_assert_eq!(xy, -&yx);
    }

    #[test]
    fn coproduct_is_coassociative(w in (0usize..=4).prop_flat_map(|m| random_word(m, 2))) {
        let left: Vec<(Word, Word, Word)> = coproduct(&w)
            .into_iter()
            .flat_map(|(x, z)| coproduct(&x).into_iter().map(move |(x1, x2)| (x1, x2, z.clone())))
            .sorted()
            .collect();
        let right: Vec<(Word, Word, Word)> = coproduct(&w)
            .into_iter()
            .flat_map(|(x, z)| coproduct(&z).into_iter().map(move |(z1, z2)| (x.clone(), z1, z2)))
            .sorted()
            .collect();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn antipode_twice_is_identity(w in (0usize..=6).prop_flat_map(|m| random_word(m, 3))) {
        let (s1, once) = antipode(&w);
        let (s2, twice) = antipode(&once);
        prop_assert_eq!((s1 * s2, twice), (1, w));
    }

    #[test]
    fn witt_formula_counts_lyndon_words(n in 1usize..=6, genus in 1usize..=2) {
        prop_assert_eq!(lyndon_basis(n, genus).len(), witt_dimension(n, 2 * genus));
    }

    #[test]
    fn canonical_form_is_idempotent(
        seed in any::<u64>(),
        leaves in prop::collection::vec(3usize..=5, 1..=2),
        dotted in 0usize..=2,
        ordered in any::<bool>(),
    ) {
        let Some(g) = random_graph(seed, &leaves, dotted, 2, ordered) else { return Ok(()) };
        let (sign, key) = canonicalize(&g).unwrap();
        prop_assume!(sign != 0);
        let again = HairyGraph::from_key(&key, 2, ordered);
        prop_assert_eq!(canonicalize(&again).unwrap(), (1, key));
    }

    #[test]
    fn degree_formula(seed in any::<u64>(), leaves in prop::collection::vec(3usize..=6, 1..=3), dotted in 0usize..=3) {
        let Some(g) = random_graph(seed, &leaves, dotted, 2, false) else { return Ok(()) };
        prop_assert_eq!(g.lie_degree() + 2 * g.tree_count(), colored_leaves(&g) + 2 * g.dotted_count());
    }

    #[test]
    fn ihx_keeps_the_weight(seed in any::<u64>(), leaves in 4usize..=7, dotted in 0usize..=2) {
        let Some(g) = random_graph(seed, &[leaves], dotted, 2, false) else { return Ok(()) };
        for (u, v) in internal_edges(&g) {
            for (h, _) in ihx_element(&g, u, v).unwrap().graphs() {
                prop_assert_eq!(h.content(), g.content());
            }
        }
    }

    #[test]
    fn trace_lowers_hair_count(seed in any::<u64>(), leaves in 4usize..=7, r in 1usize..=2) {
        let Some(g) = random_graph(seed, &[leaves], 0, 2, false) else { return Ok(()) };
        let x = GraphVector::from_graph(&g).unwrap();
        for (h, _) in trace_r(&x, r).unwrap().graphs() {
            prop_assert_eq!(colored_leaves(&h) + 2 * r, colored_leaves(&g));
            prop_assert_eq!(h.lie_degree(), g.lie_degree());
            prop_assert_eq!(h.dotted_count(), r);
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(seed in any::<u64>(), sizes in prop::collection::vec(3usize..=4, 3)) {
        let trees: Vec<GraphVector> = sizes
            .iter()
            .enumerate()
            .filter_map(|(i, &k)| random_graph(seed.wrapping_add(i as u64), &[k], 0, 2, false))
            .map(|g| GraphVector::from_graph(&g).unwrap())
            .collect();
        prop_assume!(trees.len() == 3);
        let (x, y, z) = (&trees[0], &trees[1], &trees[2]);
        let mut sym = bracket_h(x, y).unwrap();
        sym.add_scaled(&Rational::one(), &bracket_h(y, x).unwrap());
        prop_assert!(vanishes_mod_ihx(&sym).unwrap());
        let mut jacobi = bracket_h(x, &bracket_h(y, z).unwrap()).unwrap();
        jacobi.add_scaled(&Rational::one(), &bracket_h(y, &bracket_h(z, x).unwrap()).unwrap());
        jacobi.add_scaled(&Rational::one(), &bracket_h(z, &bracket_h(x, y).unwrap()).unwrap());
        prop_assert!(vanishes_mod_ihx(&jacobi).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn trace_of_bracket_commutes_with_merging(seed in any::<u64>()) {
        let tuple = random_tripods(seed, 4, 2);
        let mut diff = trace(&br(&tuple).unwrap()).unwrap();
        diff.add_scaled(&Rational::from_int(-1), &beta_power(&trace_ord(&tuple).unwrap()).unwrap());
        prop_assert!(vanishes_mod_ihx(&diff).unwrap());
    }

    #[test]
    fn one_loop_trace_kills_brackets(seed in any::<u64>(), n in 2usize..=4) {
        let tuple = random_tripods(seed, n, 2);
        let x = br(&tuple).unwrap();
        prop_assert!(one_loop_reduce(&trace_r(&x, 1).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn harmonic_part_complements_insertions() {
    for genus in 1..=3 {
        for m in 0..=4usize {
            if genus == 3 && m == 4 {
                continue;
            }
            let harmonic = harmonic_basis(m, genus).unwrap().rank();
            let inserted = insertion_span(m, genus).unwrap().rank();
            assert_eq!(harmonic + inserted, (2 * genus).pow(m as u32), "m={m} g={genus}");
        }
    }
}

#[test]
fn contractions_vanish_on_harmonic_vectors() {
    for (m, genus) in [(2, 2), (3, 2), (4, 2), (3, 3)] {
        let words = all_words(m, genus);
        for row in harmonic_basis(m, genus).unwrap().rows() {
            for (i, j) in (0..m).tuple_combinations() {
                let mut image: std::collections::BTreeMap<Word, Rational> = Default::default();
                for (k, c) in row.entries() {
                    let (s, rest) = contract(&words[*k], i, j).unwrap();
                    let e = image.entry(rest).or_insert_with(Rational::zero);
                    *e = &*e + &(&s * c);
                }
                assert!(image.values().all(|c| c.is_zero()), "m={m} g={genus} slots {i},{j}");
            }
        }
    }
}

fn random_multiplicities() -> impl Strategy<Value = (usize, std::collections::BTreeMap<Partition, usize>)> {
    (1usize..=6).prop_flat_map(|size| {
        let shapes = partitions(size);
        prop::collection::vec(0usize..4, shapes.len()).prop_map(move |ks| {
            let mult = shapes.iter().cloned().map(Partition::new).zip(ks).collect();
            (size, mult)
        })
    })
}

proptest! {
    #[test]
    fn multiplicities_invert_weight_dimensions((size, mult) in random_multiplicities()) {
        let dims: std::collections::BTreeMap<Partition, usize> = partitions(size)
            .into_iter()
            .map(|mu| {
                let d = mult.iter().map(|(lambda, &k)| k * kostka(lambda, &mu).unwrap()).sum();
                (Partition::new(mu), d)
            })
            .collect();
        prop_assert_eq!(gl_multiplicities(size, size, &dims).unwrap(), mult);
    }
}
