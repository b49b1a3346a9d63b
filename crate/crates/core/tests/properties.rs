// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;

use proptest::prelude::*;

use fenrw::fuzz::{compare, Walker};
use fenrw::{
    apply_move, board_from_fen, fen_from_board, ApplyOptions, ClockMode, Color, EpMode, FenRecord, Move, PieceKind,
    Special, Square, Validation,
};

fn options() -> impl Strategy<Value = ApplyOptions> {
    (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(ep, clock, strict)| ApplyOptions {
        ep_mode: if ep { EpMode::Always } else { EpMode::AdjacentOnly },
        clock_mode: if clock { ClockMode::Standard } else { ClockMode::Frozen },
        validation: if strict {
            Validation::Strict
        } else {
            Validation::Lenient
        },
    })
}

/// A position and pseudo-move taken a few steps into a seeded walk.
fn walked_pair() -> impl Strategy<Value = (String, String)> {
    (any::<u64>(), 0usize..120).prop_map(|(seed, skip)| Walker::new(seed, ApplyOptions::default()).nth(skip).unwrap())
}

fn material(r: &FenRecord) -> HashMap<char, usize> {
    let mut m = HashMap::new();
    for sq in Square::all() {
        if let Some(p) = r.piece_at(sq) {
            *m.entry(p.letter()).or_default() += 1;
        }
    }
    m
}

fn square() -> impl Strategy<Value = String> {
    (0u8..8, 1u8..=8).prop_map(|(f, r)| Square::new(f, r).unwrap().to_string())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn transition_invariants((fen, mv) in walked_pair()) {
        let opts = ApplyOptions::default();
        let out = apply_move(&fen, &mv, opts).unwrap();
        let before = FenRecord::parse(&fen).unwrap();
        let after = FenRecord::parse(&out.fen_after).unwrap();
        let m: Move = mv.parse().unwrap();
        let mover = before.piece_at(m.from).unwrap();

        prop_assert_eq!(after.side, before.side.flip());
        prop_assert!(after.castling.is_subset_of(&before.castling));
        let bump = u32::from(before.side == Color::Black);
        prop_assert_eq!(after.fullmove, before.fullmove + bump);
        prop_assert!(matches!(out.segments_touched.len(), 1 | 2));
        prop_assert_eq!(out.was_pawn_move, mover.kind == PieceKind::Pawn);

        // Material: minus the captured piece, with the promotion swap.
        let mut expected = material(&before);
        let captured = match out.special {
            Some(Special::EnPassantCapture) => before.piece_at(Square::new(m.to.file(), m.from.rank()).unwrap()),
            Some(Special::CastleKingside | Special::CastleQueenside) => None,
            _ => before.piece_at(m.to),
        };
        if let Some(c) = captured {
            *expected.get_mut(&c.letter()).unwrap() -= 1;
        }
        if let Some(kind) = m.promotion {
            *expected.get_mut(&mover.letter()).unwrap() -= 1;
            let promoted = fenrw::Piece::new(kind, mover.color).letter();
            *expected.entry(promoted).or_default() += 1;
        }
        expected.retain(|_, n| *n > 0);
        if !matches!(out.special, Some(Special::CastleKingside | Special::CastleQueenside)) {
            prop_assert_eq!(material(&after), expected);
        }
    }

    #[test]
    fn output_reparses((fen, mv) in walked_pair(), opts in options()) {
        if let Ok(out) = apply_move(&fen, &mv, opts) {
            prop_assert!(FenRecord::parse_with(&out.fen_after, opts.validation).is_ok());
        }
    }

    // Arbitrary well-formed moves, most of which fail preconditions: both
    // paths must agree on the error kind as well as on successes.
    #[test]
    fn paths_agree_on_arbitrary_moves(
        (fen, _) in walked_pair(),
        from in square(),
        to in square(),
        promo in proptest::option::of(proptest::sample::select(vec!['q', 'r', 'b', 'n'])),
        opts in options(),
    ) {
        prop_assume!(from != to);
        let mut mv = format!("{from}{to}");
        mv.extend(promo);
        let m = compare(&fen, &mv, opts);
        prop_assert!(m.is_none(), "{:?}", m);
    }

    #[test]
    fn array_round_trip((fen, _) in walked_pair()) {
        prop_assert_eq!(fen_from_board(&board_from_fen(&fen).unwrap()), fen.clone());
        let r = FenRecord::parse(&fen).unwrap();
        let b = board_from_fen(&fen).unwrap();
        for sq in Square::all() {
            prop_assert_eq!(r.piece_at(sq), b.piece(sq));
        }
    }

    #[test]
    fn parse_never_panics(s in "\\PC{0,80}") {
        let _ = FenRecord::parse(&s);
        let _ = apply_move(&s, "e2e4", ApplyOptions::default());
    }
}
