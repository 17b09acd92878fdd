//! Worked examples for the engine, the invariants and the obstruction data.

use cubic_skein::atlas::entry;
use cubic_skein::braid::BraidWord;
use cubic_skein::coeff::{QPoly, ZPoly, ABZT, ALPHA, BETA};
use cubic_skein::engine::{abzt, Engine, FormalSum, Params, PosWord, Rule, Strategy};
use cubic_skein::invariants::{
    chirality_test, invariant, invariant_specialized, Chirality, Family, ParameterSet, Spec,
};
use cubic_skein::numeric::Fp;
use cubic_skein::obstructions::{cpc_couples, cpc_obstruction, trace_equations_r0r1};
use cubic_skein::properties::family_points;
use rand::SeedableRng;

fn sym() -> Engine<ZPoly> {
    Engine::new(Params::symbolic(), Strategy::Canonical)
}

fn word(s: &str) -> BraidWord {
    BraidWord::parse(s).unwrap()
}

fn q(vars: cubic_skein::coeff::Vars, s: &str) -> QPoly {
    QPoly::parse(vars, s).unwrap()
}

#[test]
fn positivize_inverse_letter() {
    let mut e = sym();
    let s = e.positivize(&word("-1"));
    assert_eq!(s.len(), 3);
    assert_eq!(s.coeff(&PosWord::from_pairs(&[(1, 2)])), Some(&abzt(1, [0, 0, 0, 0])));
    assert_eq!(s.coeff(&PosWord::from_pairs(&[(1, 1)])), Some(&abzt(-1, [1, 0, 0, 0])));
    assert_eq!(s.coeff(&PosWord::empty()), Some(&abzt(-1, [0, 1, 0, 0])));
}

#[test]
fn braid_move_and_mixed_rule() {
    let mut e = sym();
    let w = PosWord::from_pairs(&[(2, 1), (1, 1), (2, 1)]);
    let s = FormalSum::single(3, w.clone(), ZPoly::one(ABZT));
    let out = e.apply_rule(&s, Rule::C1, &w, 0).unwrap();
    assert_eq!(out.len(), 1);
    assert!(out.coeff(&PosWord::from_pairs(&[(1, 1), (2, 1), (1, 1)])).is_some());

    let w = PosWord::from_pairs(&[(2, 1), (1, 2), (2, 2)]);
    let s = FormalSum::single(3, w.clone(), ZPoly::one(ABZT));
    let out = e.apply_rule(&s, Rule::C12, &w, 0).unwrap();
    assert_eq!(out.len(), 5);
    assert_eq!(out.coeff(&PosWord::from_pairs(&[(2, 2), (1, 1)])), Some(&abzt(-1, [0, 1, 0, 0])));
    assert!(e.apply_rule(&s, Rule::C21, &w, 0).is_err());
}

#[test]
fn small_traces() {
    let mut e = sym();
    assert_eq!(e.trace_raw(&BraidWord::identity(1)).unwrap(), ZPoly::one(ABZT));
    assert_eq!(e.trace_raw(&word("1")).unwrap(), abzt(1, [0, 0, 1, 0]));
    let t = &(&abzt(1, [1, 0, 0, 1]) + &abzt(1, [0, 1, 1, 0])) + &abzt(1, [0, 0, 0, 0]);
    assert_eq!(e.trace_raw(&word("1^3")).unwrap(), t);
    // b1 b2 b1 -> z b1^2 -> z t
    assert_eq!(e.trace_by_levels(&word("1 2 1")).unwrap(), abzt(1, [0, 0, 1, 1]));
}

#[test]
fn published_specializations() {
    let mut e = sym();
    let f8 = invariant_specialized(&mut e, &word("1 -2 1 -2"), Spec::Beta0).unwrap();
    assert_eq!(f8.value, q(ALPHA, "8 alpha^-3 + 10 + alpha^3"));
    let b = entry("6.2").unwrap().braid.clone();
    let a0 = invariant_specialized(&mut e, &b, Spec::Alpha0).unwrap();
    let b0 = invariant_specialized(&mut e, &b, Spec::Beta0).unwrap();
    let want_a0 = q(BETA, "-16 beta^-3 + 19 - 2 beta^3");
    let want_b0 = q(ALPHA, "-5 - 19/4 alpha^3 - 1/2 alpha^6");
    assert!(cubic_skein::invariants::spec_modulus(Spec::Alpha0).divides(&(&a0.value - &want_a0)).unwrap());
    assert!(cubic_skein::invariants::spec_modulus(Spec::Beta0).divides(&(&b0.value - &want_b0)).unwrap());
}

#[test]
fn chirality_examples() {
    let mut e = sym();
    assert_eq!(chirality_test(&mut e, &word("1^3")).unwrap().verdict, Chirality::ChiralEvidence);
    assert_eq!(chirality_test(&mut e, &word("1 -2 1 -2")).unwrap().verdict, Chirality::Inconclusive);
    assert_eq!(chirality_test(&mut e, &word("1")).unwrap().verdict, Chirality::Inconclusive);
}

#[test]
fn unknot_is_one_in_both_families() {
    let mut e = sym();
    for f in [Family::TypeI, Family::TypeII] {
        let v = invariant(&mut e, &word("1"), f).unwrap();
        assert!(v.value().unwrap().equals(&cubic_skein::coeff::RatFn::one(f.vars())));
    }
}

#[test]
fn type_ii_parameters_satisfy_the_cubic() {
    assert!(ParameterSet::type_ii().cubic_constraint().unwrap().is_zero());
    assert!(ParameterSet::type_ii().multiplicativity_defect().is_zero());
}

#[test]
fn trace_system_t_squared_coefficient() {
    let mut e = sym();
    let (_, eq1) = trace_equations_r0r1(&mut e).unwrap();
    let t2: QPoly = QPoly::from_terms(
        ABZT,
        eq1.to_q().terms().filter(|(m, _)| m.exp(3) == 2 && m.exp(2) == 0).map(|(m, c)| {
            (cubic_skein::coeff::Mono::from_slice(&[m.exp(0), m.exp(1), 0, 0]), c.clone())
        }),
    );
    assert_eq!(t2, q(ABZT, "beta^2 - 2 alpha"));
}

#[test]
fn trivial_couple_vanishes() {
    let mut e = sym();
    let c44 = cpc_couples().into_iter().find(|c| c.label == (4, 4)).unwrap();
    for f in [Family::TypeI, Family::TypeII] {
        let r = cpc_obstruction(&mut e, &c44, f).unwrap();
        assert!(r.zero && r.divisible);
    }
}

/// Two spellings of one braid in B4 whose canonical traces differ at a point
/// of H = 0: the level-4 trace is not well defined modulo H.
#[test]
fn level_four_trace_depends_on_the_spelling() {
    let a = BraidWord::from_letters(&[3, 2, 1, 1, 3, 3, 2, 3, 3]);
    let b = BraidWord::from_letters(&[3, 2, 1, 1, 3, 2, 3, 2, 3]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let pt = &family_points(Family::TypeI, 1, &mut rng)[0];
    let mut e: Engine<Fp> = Engine::new(pt.params.clone(), Strategy::Canonical);
    assert_ne!(e.trace_raw(&a).unwrap(), e.trace_raw(&b).unwrap());
}
