use adlv_core::appendix;
use adlv_core::properties::{self, Tally};
use adlv_core::{Family, RootDatum};

fn clean(name: &str, t: Tally) {
    assert!(t.instances >= 100, "{name}: only {} instances", t.instances);
    assert!(t.ok(), "{name}: {} violations, first {:?}", t.violations.len(), &t.violations[..t.violations.len().min(3)]);
}

#[test]
fn levi_bruhat_conjugation() {
    clean("compare", properties::compare_suite());
}

#[test]
fn coset_reflection_admissibility() {
    clean("f2", properties::f2_suite());
    clean("f4", properties::f4_suite());
}

#[test]
fn maximal_descents_stay_minimal() {
    clean("f3", properties::f3_suite());
}

#[test]
fn outside_agreement_means_conjugate() {
    clean("f5", properties::f5_suite());
}

#[test]
fn chase_moves() {
    for (i, t) in properties::ind_suite().into_iter().enumerate() {
        clean(&format!("ind({})", i + 1), t);
    }
}

#[test]
fn branch_node_coefficient_bounds_all() {
    clean("elementary", properties::elementary_suite());
}

#[test]
fn short_datum_lemmas() {
    clean("add-simple", properties::add_simple_suite());
    clean("positive", properties::positive_suite());
    clean("shrink", properties::shrink_suite());
    clean("teq", properties::teq_suite());
    clean("span", properties::span_suite());
    clean("plus", properties::plus_suite());
}

#[test]
fn weak_dominance_criterion() {
    clean("criterion", properties::criterion_suite());
}

#[test]
fn separation_propagates_in_type_a() {
    let t = (1..=6).map(|n| properties::plus_simple(&RootDatum::adjoint(Family::A, n), -1, 2)).fold(Tally::default(), |mut a, b| {
        a.absorb(b);
        a
    });
    clean("plus-simple (type A)", t);
}

#[test]
fn separation_fails_next_to_a_branch_node() {
    let d = RootDatum::adjoint(Family::D, 4);
    let chi = [-1, 1, -1, 0];
    assert!(appendix::plus_simple_applies(&d, &chi, 3));
    assert!(appendix::plus_simple_violated(&d, &chi, 3));
    // every failure in the box sits next to the branch node
    let t = properties::plus_simple(&d, -1, 2);
    assert_eq!(t.violations.len(), 9);
    assert!(t.violations.iter().all(|v| !v.ends_with("a=1")));
}
