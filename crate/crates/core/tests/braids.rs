use cubic_skein::braid::BraidWord;
use proptest::prelude::*;

fn word() -> impl Strategy<Value = BraidWord> {
    (2usize..6).prop_flat_map(|n| {
        prop::collection::vec((1..n as i32, prop::bool::ANY), 0..12).prop_map(move |ls| {
            let letters: Vec<i32> = ls.into_iter().map(|(g, s)| if s { g } else { -g }).collect();
            BraidWord::with_strands(n, &letters)
        })
    })
}

proptest! {
    #[test]
    fn reverse_and_dagger_are_involutions(w in word()) {
        prop_assert_eq!(w.reverse().reverse(), w.clone());
        prop_assert_eq!(w.dagger().dagger(), w.clone());
        prop_assert_eq!(w.dagger().exponent_sum(), -w.exponent_sum());
    }

    #[test]
    fn inverse_cancels(w in word()) {
        let id = w.concat(&w.inverse());
        prop_assert_eq!(id.exponent_sum(), 0);
        prop_assert_eq!(id.closure_components().components, w.strands());
    }

    #[test]
    fn display_round_trips(w in word()) {
        let back = BraidWord::parse_with_strands(&w.to_string(), Some(w.strands())).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn components_are_stable_under_conjugation(w in word(), g in 1i32..2) {
        let c = BraidWord::with_strands(w.strands(), &[g]);
        let conj = c.concat(&w).concat(&c.inverse());
        prop_assert_eq!(conj.closure_components().components, w.closure_components().components);
    }
}

#[test]
fn parse_rejects_bad_words() {
    assert!(BraidWord::parse("1 0").is_err());
    assert!(BraidWord::parse("1 x").is_err());
    assert!(BraidWord::parse_with_strands("3", Some(3)).is_err());
}

#[test]
fn trefoil_and_figure_eight_closures() {
    let t = BraidWord::parse("1^3").unwrap();
    assert_eq!(t.strands(), 2);
    assert_eq!(t.closure_components().components, 1);
    let f = BraidWord::parse("1 -2 1 -2").unwrap();
    assert_eq!(f.exponent_sum(), 0);
    assert_eq!(f.closure_components().components, 1);
    assert_eq!(BraidWord::parse("1^2").unwrap().closure_components().components, 2);
}
