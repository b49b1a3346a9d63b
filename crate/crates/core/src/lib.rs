// SPDX-License-Identifier: Apache-2.0

//! Apply chess moves to FEN strings without building a board.
//!
//! [`apply_move`] finds the one or two rank segments a move touches, expands
//! them so every empty square is a '1', moves letters between slots, folds the
//! runs back into digits and recomputes the trailer fields:
//!
//! ```
//! use fenrw::{apply_move, ApplyOptions, ClockMode};
//!
//! let opts = ApplyOptions { clock_mode: ClockMode::Frozen, ..Default::default() };
//! let out = apply_move("7N/1b3RN1/7k/6b1/KBp4p/5q2/6Q1/7n w - - 0 1", "f7f6", opts).unwrap();
//! assert_eq!(out.fen_after, "7N/1b4N1/5R1k/6b1/KBp4p/5q2/6Q1/7n b - - 0 1");
//! assert_eq!(out.segments_touched, vec![1, 2]);
//! ```
//!
//! The [`oracle`] module does the same job through a 64-cell array and is used
//! for differential testing ([`fuzz`]) and as the benchmark baseline
//! ([`bench`]).

pub mod apply;
pub mod bench;
pub mod fen;
pub mod forsyth;
pub mod fuzz;
pub mod oracle;
pub mod segment;

pub use apply::{
    apply_move, apply_to_record, derive_en_passant, parse_move, play_sequence, update_castling_rights, update_clocks,
    ApplyOptions, ApplyOutcome, ClockMode, EpMode, Move, MoveError, SequenceError, Special,
};
pub use fen::{
    parse_fen, piece_at, serialize_fen, CastlingRights, Color, FenError, FenRecord, Piece, PieceKind, Square,
    StrictViolation, Validation,
};
pub use forsyth::{emit_legacy_forsyth, parse_legacy_forsyth, ForsythError};
pub use oracle::{board_from_fen, fen_from_board, oracle_apply, random_pseudo_move, BoardArray};
pub use segment::{contract_rank, expand_rank, file_index, segment_index, ExpandedRank, SegmentError};
