//! The cokernel dimension computed from brackets of tripods equals the sum of
//! the top-level parts of the loop quotients.

use hlg_core::trace::cokernel::cokernel_dim;
use hlg_core::trace::quotient::top_restrict;

fn loop_side(n: usize, genus: usize) -> usize {
    (1..=n / 2 + 1).map(|r| top_restrict(r, n + 2 - 2 * r, genus).unwrap()).sum()
}

#[test]
fn cokernel_splits_by_loops() {
    for (n, g) in [(1, 2), (2, 3), (3, 3), (4, 4)] {
        let t = std::time::Instant::now();
        let cok = cokernel_dim(n, g).unwrap();
        let loops = loop_side(n, g);
        println!("n={n} g={g} cok={cok} loops={loops} ({:?})", t.elapsed());
        assert_eq!(cok, loops, "n={n} g={g}");
    }
}
