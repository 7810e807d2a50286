//! Degree six detections: a Sp-invariant combination of dashed caterpillars in
//! the kernel of the one-loop trace, and its two-loop trace under the maps
//! to `Λ⁴H`.

use std::collections::BTreeMap;

use itertools::Itertools;

use hlg_core::graph::GraphVector;
use hlg_core::linalg::Rational;
use hlg_core::tensor::{a, b, contract, Sym, TensorVector};
use hlg_core::trace::loops::{one_loop_reduce, OneLoopClass};
use hlg_core::trace::trace_r;
use hlg_omega2::lambda4::{complete_parameters, AlternatingBlock, KForm};

use crate::dashed::{dashed_element, ColoringSet, DashedTemplate, HVector};
use crate::LabError;

pub const NESTED: &str = include_str!("../data/nested.tpl");
pub const CROSSED: &str = include_str!("../data/crossed.tpl");
pub const HEXAGON: &str = include_str!("../data/hexagon.tpl");

pub const NESTED_COEFFICIENT: i64 = -5;
pub const CROSSED_COEFFICIENT: i64 = 2;

/// `(p, q, r, s, t, u)` of the map used for the detections.
pub const DETECTING: [i64; 6] = [1, -1, 0, -1, 0, 1];

pub const MIN_GENUS: usize = 6;

pub fn detecting_parameters() -> [Rational; 7] {
    complete_parameters(&DETECTING.map(Rational::from_int))
}

/// `256(16q+3r+3u-2t)`.
pub fn stated_form() -> KForm {
    "4096q+768r+768u-512t".parse().expect("valid form")
}

/// The wedge `x1∧x2∧x3∧x4` as an alternating sum of words.
pub fn wedge_tensor(letters: &[Sym], genus: usize) -> TensorVector {
    let mut out = TensorVector::zero(genus);
    for perm in (0..letters.len()).permutations(letters.len()) {
        let inversions = perm.iter().tuple_combinations().filter(|(x, y)| x > y).count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out.add_term(perm.iter().map(|&i| letters[i]).collect(), Rational::from_int(sign));
    }
    out
}

/// `C'(x⊗y⊗z⊗w) = (x·y) z⊗w`.
pub fn contract_front(t: &TensorVector) -> Result<TensorVector, LabError> {
    let mut out = TensorVector::zero(t.genus());
    for (w, c) in t.terms() {
        let (k, rest) = contract(w, 0, 1)?;
        if !k.is_zero() {
            out.add_term(rest, c * &k);
        }
    }
    Ok(out)
}

/// `C(x⊗y⊗z⊗w) = (x·y)(z·w)`.
pub fn contract_fully(t: &TensorVector) -> Result<Rational, LabError> {
    let front = contract_front(t)?;
    let mut total = Rational::zero();
    for (w, c) in front.terms() {
        let (k, _) = contract(w, 0, 1)?;
        total = &total + &(c * &k);
    }
    Ok(total)
}

/// Coefficient `λ` with `x = λ·y`, or `None` when `x` is not a multiple of nonzero `y`.
pub fn multiple_of(x: &TensorVector, y: &TensorVector) -> Option<Rational> {
    let (w, c) = y.terms().iter().next()?;
    let ratio = &x.coeff(w) / c;
    (x == &y.scaled(&ratio)).then_some(ratio)
}

fn one_loop_multiple(x: &OneLoopClass, y: &OneLoopClass) -> Option<Rational> {
    multiple_of(&x.terms, &y.terms)
}

/// The linear form of `π` on each `c1∧c2∧c3∧c4`, grouping `x` by letter content.
pub fn wedge_forms(x: &GraphVector) -> Result<BTreeMap<[Sym; 4], KForm>, LabError> {
    let block = AlternatingBlock::cached(2)?;
    let mut groups: BTreeMap<Vec<usize>, GraphVector> = BTreeMap::new();
    for (g, c) in x.graphs() {
        groups
            .entry(g.content())
            .or_insert_with(|| GraphVector::zero(x.genus(), false))
            .add_graph(&g, c)?;
    }
    let mut out = BTreeMap::new();
    for (content, part) in groups {
        if content.iter().any(|&k| k > 1) {
            continue;
        }
        let letters: Vec<Sym> = content.iter().positions(|&k| k == 1).map(|s| s as Sym).collect();
        let form = block.k_eval(&part)?;
        if form.0.iter().any(|c| !c.is_zero()) {
            let key = <[Sym; 4]>::try_from(letters).map_err(|_| LabError::Template("four letters".into()))?;
            out.insert(key, form);
        }
    }
    Ok(out)
}

/// `Σ_k forms[k](params) · wedge(k)` as a tensor.
pub fn evaluate_wedges(forms: &BTreeMap<[Sym; 4], KForm>, params: &[Rational; 7], genus: usize) -> TensorVector {
    let mut out = TensorVector::zero(genus);
    for (letters, f) in forms {
        out.add_scaled(&f.eval(params), &wedge_tensor(letters, genus));
    }
    out
}

/// The common form on the listed wedges when every wedge of `forms` is listed
/// and they all carry the same form modulo the parameter constraint.
pub fn uniform_form(forms: &BTreeMap<[Sym; 4], KForm>, wedges: &[[Sym; 4]]) -> Option<KForm> {
    let first = forms.get(wedges.first()?)?;
    let listed = wedges.iter().all(|w| forms.get(w).is_some_and(|f| f.reduced() == first.reduced()));
    (listed && forms.len() == wedges.len()).then(|| first.clone())
}

fn sorted(mut letters: [Sym; 4]) -> [Sym; 4] {
    letters.sort_unstable();
    letters
}

pub fn combination(s: &ColoringSet, genus: usize) -> Result<GraphVector, LabError> {
    let mut x = GraphVector::zero(genus, false);
    for (text, c) in [(NESTED, NESTED_COEFFICIENT), (CROSSED, CROSSED_COEFFICIENT)] {
        let t = DashedTemplate::parse(text, genus)?;
        x.add_scaled(&Rational::from_int(c), &dashed_element(&t, s)?);
    }
    Ok(x)
}

/// The three coloring sets: hyperbolic pairs 1..4; `(a1, a2)` with pairs 3..5;
/// `(a1, a2)`, `(a3, a4)` with pairs 5, 6.
pub fn coloring_sets() -> [ColoringSet; 3] {
    let pair = |i: usize, j: usize| (HVector::letter(a(i)), HVector::letter(a(j)));
    let s = ColoringSet::hyperbolic(1..=4);
    let mut s1 = ColoringSet::new(Vec::new());
    let (x, y) = pair(1, 2);
    s1.push_with_reverse(x, y);
    s1.pairs.extend(ColoringSet::hyperbolic(3..=5).pairs);
    let mut s2 = ColoringSet::new(Vec::new());
    for (i, j) in [(1, 2), (3, 4)] {
        let (x, y) = pair(i, j);
        s2.push_with_reverse(x, y);
    }
    s2.pairs.extend(ColoringSet::hyperbolic(5..=6).pairs);
    [s, s1, s2]
}

/// Everything computed for one coloring set.
#[derive(Debug, Clone)]
pub struct Detection {
    pub one_loop_vanishes: bool,
    pub forms: BTreeMap<[Sym; 4], KForm>,
    /// `π∘Tr₂` at the detecting parameters, as a tensor.
    pub value: TensorVector,
}

pub fn detect(s: &ColoringSet, genus: usize) -> Result<Detection, LabError> {
    let x = combination(s, genus)?;
    let one_loop_vanishes = one_loop_reduce(&trace_r(&x, 1)?)?.is_zero();
    let forms = wedge_forms(&trace_r(&x, 2)?)?;
    let value = evaluate_wedges(&forms, &detecting_parameters(), genus);
    Ok(Detection {
        one_loop_vanishes,
        forms,
        value,
    })
}

#[derive(Debug, Clone)]
pub struct DegreeSixOutcome {
    pub genus: usize,
    /// `Tr₁` of each caterpillar as a multiple of the dashed hexagon.
    pub nested_wheel: Option<Rational>,
    pub crossed_wheel: Option<Rational>,
    pub invariant: Detection,
    /// The form shared by every `a_i∧b_i∧a_j∧b_j`, if there is one.
    pub invariant_form: Option<KForm>,
    /// `C(π∘Tr₂(X_S))` at the detecting parameters.
    pub invariant_contraction: Rational,
    pub two_form: Detection,
    /// `C'(π∘Tr₂(X_S'))` as a multiple of `a1∧a2`.
    pub two_form_multiple: Option<Rational>,
    pub four_form: Detection,
    /// Coefficient of `a1∧a2∧a3∧a4` in `π∘Tr₂(X_S'')`.
    pub four_form_top: Rational,
}

impl DegreeSixOutcome {
    pub fn wheel_coefficients_match(&self) -> bool {
        self.nested_wheel == Some(Rational::from_int(-4)) && self.crossed_wheel == Some(Rational::from_int(-10))
    }

    pub fn kernel_holds(&self) -> bool {
        self.invariant.one_loop_vanishes && self.two_form.one_loop_vanishes && self.four_form.one_loop_vanishes
    }

    pub fn form_matches(&self) -> bool {
        self.invariant_form
            .as_ref()
            .is_some_and(|f| f.reduced() == stated_form().reduced())
    }

    pub fn detections_hold(&self) -> bool {
        !self.invariant_contraction.is_zero()
            && self.two_form_multiple.as_ref().is_some_and(|m| !m.is_zero())
            && !self.four_form_top.is_zero()
    }

    pub fn all_hold(&self) -> bool {
        self.wheel_coefficients_match() && self.kernel_holds() && self.form_matches() && self.detections_hold()
    }
}

pub fn verify_degree_six(genus: usize) -> Result<DegreeSixOutcome, LabError> {
    if genus < MIN_GENUS {
        return Err(LabError::GenusTooSmall { genus, size: MIN_GENUS });
    }
    let [s, s1, s2] = coloring_sets();
    let hexagon = one_loop_reduce(&dashed_element(&DashedTemplate::parse(HEXAGON, genus)?, &s)?)?;
    let mut wheel = Vec::new();
    for text in [NESTED, CROSSED] {
        let x = dashed_element(&DashedTemplate::parse(text, genus)?, &s)?;
        wheel.push(one_loop_multiple(&one_loop_reduce(&trace_r(&x, 1)?)?, &hexagon));
    }
    let invariant = detect(&s, genus)?;
    let pairs: Vec<[Sym; 4]> = (1..=4)
        .tuple_combinations()
        .map(|(i, j)| sorted([a(i), b(i), a(j), b(j)]))
        .collect();
    let invariant_form = uniform_form(&invariant.forms, &pairs);
    let invariant_contraction = contract_fully(&invariant.value)?;
    let two_form = detect(&s1, genus)?;
    let a1a2 = wedge_tensor(&[a(1), a(2)], genus);
    let two_form_multiple = multiple_of(&contract_front(&two_form.value)?, &a1a2);
    let four_form = detect(&s2, genus)?;
    let top = wedge_tensor(&[a(1), a(2), a(3), a(4)], genus);
    let word = [a(1), a(2), a(3), a(4)];
    let four_form_top = &four_form.value.coeff(&word) / &top.coeff(&word);
    let [nested_wheel, crossed_wheel] = <[Option<Rational>; 2]>::try_from(wheel).expect("two templates");
    Ok(DegreeSixOutcome {
        genus,
        nested_wheel,
        crossed_wheel,
        invariant,
        invariant_form,
        invariant_contraction,
        two_form,
        two_form_multiple,
        four_form,
        four_form_top,
    })
}

/// `Σ_{i<j} a_i∧b_i∧a_j∧b_j` for `i, j ≤ k`, used to express the expected values.
pub fn symplectic_square(k: usize, genus: usize) -> TensorVector {
    let mut out = TensorVector::zero(genus);
    for (i, j) in (1..=k).tuple_combinations() {
        out.add_scaled(&Rational::one(), &wedge_tensor(&[a(i), b(i), a(j), b(j)], genus));
    }
    out
}
