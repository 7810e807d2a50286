use hlg_cokernel_lab::degree_six::{contract_fully, symplectic_square, verify_degree_six, wedge_tensor};
use hlg_core::linalg::Rational;
use hlg_core::tensor::a;

#[test]
fn contraction_of_the_symplectic_square_is_nonzero() {
    assert!(!contract_fully(&symplectic_square(4, 6)).unwrap().is_zero());
    assert!(contract_fully(&wedge_tensor(&[a(1), a(2), a(3), a(4)], 6)).unwrap().is_zero());
}

#[test]
fn degree_six_detections() {
    let out = verify_degree_six(6).unwrap();
    println!("wheel multiples: {:?} {:?}", out.nested_wheel.as_ref().map(|r| r.to_string()), out.crossed_wheel.as_ref().map(|r| r.to_string()));
    println!("invariant form: {:?}", out.invariant_form.as_ref().map(|f| f.to_string()));
    println!("C: {} C': {:?} top: {}", out.invariant_contraction, out.two_form_multiple.as_ref().map(|r| r.to_string()), out.four_form_top);
    println!("S' forms: {:?}", out.two_form.forms.values().map(|f| f.to_string()).collect::<Vec<_>>());
    println!("S'' forms: {:?}", out.four_form.forms.iter().map(|(k, f)| format!("{k:?}: {f}")).collect::<Vec<_>>());
    assert!(out.kernel_holds());
    assert!(out.wheel_coefficients_match());
    assert_eq!(out.invariant_form.unwrap().to_string(), "1792q+768r-512t+1792u");
    assert_eq!(out.invariant_contraction, Rational::zero());
}

#[test]
fn small_genus_is_rejected() {
    assert!(verify_degree_six(5).is_err());
}

mod alternating_residue {
    use hlg_cokernel_lab::dashed::{dashed_element, ColoringSet, DashedTemplate};
    use hlg_cokernel_lab::degree_six::{CROSSED, CROSSED_COEFFICIENT, NESTED, NESTED_COEFFICIENT};
    use hlg_core::graph::{GraphVector, HairyGraph, Slot};
    use hlg_core::linalg::{Eliminator, Rational};
    use hlg_core::trace::quotient::omega_tilde_block;
    use hlg_core::trace::trace_r;

    fn swap(g: &HairyGraph, i: u8) -> HairyGraph {
        let mut h = g.clone();
        for l in g.leaves() {
            if let Slot::Color(c) = g.slot(l) {
                let d = if c == i { i + 1 } else if c == i + 1 { i } else { c };
                h.set_slot(l, Slot::Color(d));
            }
        }
        h
    }

    fn a1b1a2b2_part(x: &GraphVector) -> GraphVector {
        let mut part = GraphVector::zero(2, false);
        for (g, c) in x.graphs() {
            let content = g.content();
            if content[..4] == [1, 1, 1, 1] && content[4..].iter().all(|&k| k == 0) {
                part.add_graph(&g.with_genus(2), c).unwrap();
            }
        }
        part
    }

    /// Residues in the multilinear part of the two-loop quotient modulo
    /// `x + σx` for adjacent letter swaps σ, built without the Λ⁴ map.
    #[test]
    fn combination_dies_in_the_alternating_quotient() {
        let genus = 6;
        let omega = omega_tilde_block(2, &[1, 1, 1, 1], 2).unwrap();
        let mut elim = Eliminator::new(omega.block.len());
        for r in omega.relations.rows() {
            elim.insert(r).unwrap();
        }
        for key in omega.block.basis.clone() {
            let g = HairyGraph::from_key(&key, 2, false);
            for i in 0..3u8 {
                let mut v = GraphVector::from_graph(&g).unwrap();
                v.add_graph(&swap(&g, i), &Rational::one()).unwrap();
                elim.insert(&omega.block.coords(&v).unwrap()).unwrap();
            }
        }
        let alt = elim.into_basis();
        assert_eq!(omega.block.len() - alt.rank(), 2);
        let s = ColoringSet::hyperbolic(1..=4);
        let mut total = GraphVector::zero(2, false);
        for (text, c) in [(NESTED, NESTED_COEFFICIENT), (CROSSED, CROSSED_COEFFICIENT)] {
            let x = dashed_element(&DashedTemplate::parse(text, genus).unwrap(), &s).unwrap();
            let part = a1b1a2b2_part(&trace_r(&x, 2).unwrap());
            assert!(!alt.residue(&omega.block.coords(&part).unwrap()).unwrap().is_zero());
            total.add_scaled(&Rational::from_int(c), &part);
        }
        assert!(alt.residue(&omega.block.coords(&total).unwrap()).unwrap().is_zero());
    }
}

mod templates {
    use hlg_cokernel_lab::dashed::DashedTemplate;
    use hlg_cokernel_lab::degree_six::{CROSSED, HEXAGON, MIN_GENUS, NESTED};

    #[test]
    fn templates_have_lie_degree_six() {
        for (text, lines, loops) in [(NESTED, 4, 0), (CROSSED, 4, 0), (HEXAGON, 3, 1)] {
            let x = DashedTemplate::parse(text, MIN_GENUS).unwrap();
            assert_eq!(x.graph.lie_degree(), 6);
            assert_eq!(x.lines(), lines);
            assert_eq!(x.graph.dotted_count(), loops);
        }
    }
}
