mod common;

use common::{frac, trace_strands, traced_kind};
use montesinos::tangle::{Axis, Twist};
use montesinos::{are_equivalent, endpoint_pairing, fraction_of, EndpointPairing, Fraction, TwistWord};
use proptest::prelude::*;

fn pairing_name(p: EndpointPairing) -> &'static str {
    match p {
        EndpointPairing::Zero => "zero",
        EndpointPairing::Infinity => "infinity",
        EndpointPairing::One => "one",
    }
}

/// Hand evaluation of the continued fraction `2 + 1/3` via the recurrence
/// `p/q ↦ (k·q + p)/q`, starting from `1/3`.
#[test]
fn seven_thirds_by_hand() {
    let (p, q) = (1i64, 3i64);
    let (p, q) = (2 * q + p, q);
    assert_eq!((p, q), (7, 3));
    let word: TwistWord = "v3 h2".parse().unwrap();
    assert_eq!(fraction_of(&word), Fraction::new(p, q).unwrap());
}

#[test]
fn second_word_for_seven_thirds() {
    // A second diagram of 7/3 obtained by splitting and regrouping moves.
    let a: TwistWord = "v3 h2".parse().unwrap();
    let b = TwistWord::from_fraction(&frac("7/3"));
    let c: TwistWord = "v1 v2 h3 h-1".parse().unwrap();
    assert_ne!(a, c);
    assert!(are_equivalent(&a, &b));
    assert!(are_equivalent(&a, &c));
    assert!(!are_equivalent(&a, &"v2 h3".parse().unwrap()));
}

#[test]
fn two_thirds_pairing_by_strand_tracing() {
    let word: TwistWord = "h2 v1".parse().unwrap();
    assert_eq!(fraction_of(&word), frac("2/3"));
    assert_eq!(traced_kind(&trace_strands(&word)), "zero");
    assert_eq!(endpoint_pairing(&frac("2/3")), EndpointPairing::Zero);
}

#[test]
fn odd_vertical_tangles_join_opposite_corners() {
    for t in [7, 9, 11, 13, 15, -3] {
        let word = TwistWord::new(vec![Twist::vertical(t)]);
        assert_eq!(traced_kind(&trace_strands(&word)), "one");
        assert_eq!(endpoint_pairing(&fraction_of(&word)), EndpointPairing::One);
    }
}

fn twist() -> impl Strategy<Value = Twist> {
    (any::<bool>(), -9i64..=9).prop_map(|(h, count)| Twist {
        axis: if h { Axis::Horizontal } else { Axis::Vertical },
        count,
    })
}

fn word(max_len: usize) -> impl Strategy<Value = TwistWord> {
    prop::collection::vec(twist(), 0..=max_len).prop_map(TwistWord::new)
}

proptest! {
    #[test]
    fn appending_horizontal_adds(w in word(12), k in -20i64..=20) {
        let before = fraction_of(&w);
        let after = fraction_of(&w.clone().then(Twist::horizontal(k)));
        prop_assert_eq!(after, &before + &Fraction::integer(k));
    }

    #[test]
    fn splitting_a_move_is_harmless(w in word(12), pos in 0usize..12, a in -9i64..=9) {
        prop_assume!(!w.moves.is_empty());
        let pos = pos % w.moves.len();
        let m = w.moves[pos];
        let mut split = w.moves.clone();
        split[pos] = Twist { axis: m.axis, count: a };
        split.insert(pos + 1, Twist { axis: m.axis, count: m.count - a });
        prop_assert_eq!(fraction_of(&w), fraction_of(&TwistWord::new(split)));
    }

    #[test]
    fn parity_pairing_matches_strand_tracing(w in word(12)) {
        let traced = traced_kind(&trace_strands(&w));
        prop_assert_eq!(pairing_name(endpoint_pairing(&fraction_of(&w))), traced);
    }

    #[test]
    fn equivalence_is_an_equivalence_relation(ws in prop::collection::vec(word(4), 3..12)) {
        for a in &ws {
            prop_assert!(are_equivalent(a, a));
            for b in &ws {
                prop_assert_eq!(are_equivalent(a, b), are_equivalent(b, a));
                for c in &ws {
                    if are_equivalent(a, b) && are_equivalent(b, c) {
                        prop_assert!(are_equivalent(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn continued_fraction_word_round_trips(p in -500i64..500, q in 1i64..500) {
        let f = Fraction::new(p, q).unwrap();
        let w = TwistWord::from_fraction(&f);
        prop_assert_eq!(fraction_of(&w), f);
        let reparsed: TwistWord = w.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, w);
    }
}
