use proptest::prelude::*;

use hlg_core::tensor::{Sym, Word};
use hlg_omega2::formal::{gc3_element, ThetaTerm};
use hlg_omega2::presentation::r_membership;

const GENUS: usize = 2;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..(2 * GENUS) as Sym, 0..=max)
}

fn term(max: usize) -> impl Strategy<Value = ThetaTerm> {
    (word(max), word(max), word(max), word(max)).prop_map(|(t, u, v, w)| ThetaTerm { t, u, v, w })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flips_are_commuting_involutions(x in term(3)) {
        let (s1, y) = x.flip_vertical();
        let (s2, back) = y.flip_vertical();
        prop_assert_eq!((s1 * s2, &back), (1, &x));
        let (s3, z) = x.flip_horizontal();
        let (s4, back) = z.flip_horizontal();
        prop_assert_eq!((s3 * s4, &back), (1, &x));
        let (a, vh) = y.flip_horizontal();
        let (b, hv) = z.flip_vertical();
        prop_assert_eq!((s1 * a, vh), (s3 * b, hv));
    }

    #[test]
    fn orbit_keeps_degree_and_letters(x in term(3)) {
        let mut letters: Vec<Sym> = x.letters().collect();
        letters.sort_unstable();
        for (_, y) in x.orbit() {
            let mut other: Vec<Sym> = y.letters().collect();
            other.sort_unstable();
            prop_assert_eq!(&other, &letters);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn three_term_elements_lie_in_r(x in term(2).prop_filter("degree four", |x| x.degree() == 4)) {
        let v = gc3_element(&x).to_graph(GENUS).unwrap();
        prop_assert!(v.is_zero() || r_membership(&v).unwrap());
    }
}
