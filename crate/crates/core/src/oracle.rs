// SPDX-License-Identifier: Apache-2.0

//! Array-based reference path: FEN to a 64-cell mailbox, move, back to FEN.
//!
//! Cell 0 is a8 and cell 63 is h1, reading each rank left to right from the
//! top of the board. None of the segment rewriting code is used here; the
//! special-move rules are written out again against the array so the two
//! paths can be compared.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::apply::{ApplyOptions, ClockMode, EpMode, Move, MoveError};
use crate::fen::{CastlingRights, Color, FenError, FenRecord, Piece, PieceKind, Square, Validation};

/// Mailbox board plus the FEN trailer fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardArray {
    pub cells: [Option<Piece>; 64],
    pub side: Color,
    pub castling: CastlingRights,
    pub en_passant: Option<Square>,
    pub halfmove: u32,
    pub fullmove: u32,
}

pub fn cell_index(sq: Square) -> usize {
    (8 - sq.rank() as usize) * 8 + sq.file() as usize
}

fn square_of(cell: usize) -> Square {
    Square::new((cell % 8) as u8, 8 - (cell / 8) as u8).expect("cell in range")
}

impl BoardArray {
    pub fn piece(&self, sq: Square) -> Option<Piece> {
        self.cells[cell_index(sq)]
    }

    fn apply(&mut self, mv: Move, opts: ApplyOptions) -> Result<(), MoveError> {
        let strict = opts.validation == Validation::Strict;
        let from = cell_index(mv.from);
        let to = cell_index(mv.to);
        let mover = self.cells[from].ok_or(MoveError::EmptyOrigin(mv.from))?;
        if mover.color != self.side {
            return Err(MoveError::WrongColor {
                square: mv.from,
                piece: mover,
            });
        }

        let to_rank = mv.to.rank();
        let is_pawn = mover.kind == PieceKind::Pawn;
        let needs_promotion = is_pawn && (to_rank == 1 || to_rank == 8);
        if needs_promotion && mv.promotion.is_none() {
            return Err(MoveError::MissingPromotion(mv.to));
        }
        if !needs_promotion && mv.promotion.is_some() {
            return Err(MoveError::UnexpectedPromotion);
        }

        let target = self.cells[to];
        let mut capture = target.is_some();
        let back_row = match mover.color {
            Color::White => 56,
            Color::Black => 0,
        };

        if mover.kind == PieceKind::King && from == back_row + 4 && (to == back_row + 6 || to == back_row + 2) {
            let (rook_from, rook_to) = if to == back_row + 6 {
                (back_row + 7, back_row + 5)
            } else {
                (back_row, back_row + 3)
            };
            let rook = Piece::new(PieceKind::Rook, mover.color);
            if self.cells[rook_from] != Some(rook) {
                return Err(MoveError::BadCastle(mv.to));
            }
            if strict && matches!(self.cells[rook_to], Some(p) if p.color == mover.color) {
                return Err(MoveError::SelfCapture(square_of(rook_to)));
            }
            capture |= self.cells[rook_to].is_some();
            self.cells[rook_from] = None;
            self.cells[rook_to] = Some(rook);
        }

        if strict && matches!(self.cells[to], Some(p) if p.color == mover.color) {
            return Err(MoveError::SelfCapture(mv.to));
        }

        let step: i32 = if mover.color == Color::White { -8 } else { 8 };
        let file_delta = (from % 8) as i32 - (to % 8) as i32;
        let is_ep_capture = is_pawn
            && self.en_passant == Some(mv.to)
            && file_delta.abs() == 1
            && (to as i32 - from as i32 - step).abs() == 1
            && self.cells[to].is_none();
        if is_ep_capture {
            // The bypassed pawn sits beside the origin, on the target's file.
            let victim = (from / 8) * 8 + to % 8;
            self.cells[victim] = None;
            capture = true;
        }

        let placed = match mv.promotion {
            Some(kind) => Piece::new(kind, mover.color),
            None => mover,
        };
        self.cells[from] = None;
        self.cells[to] = Some(placed);

        // Rights.
        if mover.kind == PieceKind::King {
            if mover.color == Color::White {
                self.castling.white_kingside = false;
                self.castling.white_queenside = false;
            } else {
                self.castling.black_kingside = false;
                self.castling.black_queenside = false;
            }
        }
        for (corner, right) in [
            (56usize, &mut self.castling.white_queenside),
            (63, &mut self.castling.white_kingside),
            (0, &mut self.castling.black_queenside),
            (7, &mut self.castling.black_kingside),
        ] {
            let rook_left = mover.kind == PieceKind::Rook && from == corner;
            let taken = target.is_some() && to == corner;
            if rook_left || taken {
                *right = false;
            }
        }

        // En passant target.
        self.en_passant = None;
        let double_step = is_pawn
            && to as i32 - from as i32 == 2 * step
            && match mover.color {
                Color::White => from / 8 == 6,
                Color::Black => from / 8 == 1,
            };
        if double_step {
            let enemy = Some(Piece::new(PieceKind::Pawn, mover.color.flip()));
            let beside =
                (!to.is_multiple_of(8) && self.cells[to - 1] == enemy) || (to % 8 < 7 && self.cells[to + 1] == enemy);
            if opts.ep_mode == EpMode::Always || beside {
                self.en_passant = Some(square_of((to as i32 - step) as usize));
            }
        }

        if opts.clock_mode == ClockMode::Standard {
            self.halfmove = if is_pawn || capture { 0 } else { self.halfmove + 1 };
            if mover.color == Color::Black {
                self.fullmove += 1;
            }
        }
        self.side = self.side.flip();
        Ok(())
    }
}

/// Lenient [`board_from_fen_with`].
pub fn board_from_fen(fen: &str) -> Result<BoardArray, FenError> {
    board_from_fen_with(fen, Validation::Lenient)
}

pub fn board_from_fen_with(fen: &str, validation: Validation) -> Result<BoardArray, FenError> {
    let record = FenRecord::parse_with(fen, validation)?;
    let mut cells = [None; 64];
    for (row, seg) in record.ranks.iter().enumerate() {
        let mut col = 0;
        for c in seg.chars() {
            match c.to_digit(10) {
                Some(n) => col += n as usize,
                None => {
                    cells[row * 8 + col] = Piece::from_letter(c);
                    col += 1;
                }
            }
        }
    }
    Ok(BoardArray {
        cells,
        side: record.side,
        castling: record.castling,
        en_passant: record.en_passant,
        halfmove: record.halfmove,
        fullmove: record.fullmove,
    })
}

/// Scans the array from a8 to h1 and writes FEN.
pub fn fen_from_board(board: &BoardArray) -> String {
    let mut out = String::with_capacity(90);
    for row in 0..8 {
        if row > 0 {
            out.push('/');
        }
        let mut empty = 0;
        for cell in &board.cells[row * 8..row * 8 + 8] {
            match cell {
                None => empty += 1,
                Some(p) => {
                    if empty > 0 {
                        out.push(char::from_digit(empty, 10).unwrap());
                        empty = 0;
                    }
                    out.push(p.letter());
                }
            }
        }
        if empty > 0 {
            out.push(char::from_digit(empty, 10).unwrap());
        }
    }
    out.push(' ');
    out.push(board.side.as_char());
    out.push(' ');
    out.push_str(&board.castling.to_string());
    out.push(' ');
    match board.en_passant {
        Some(sq) => out.push_str(&sq.to_string()),
        None => out.push('-'),
    }
    out.push_str(&format!(" {} {}", board.halfmove, board.fullmove));
    out
}

/// Reference move application through the array.
pub fn oracle_apply(fen: &str, mv: &str, opts: ApplyOptions) -> Result<String, MoveError> {
    let mut board = board_from_fen_with(fen, opts.validation)?;
    let mv: Move = mv.parse()?;
    board.apply(mv, opts)?;
    let out = fen_from_board(&board);
    if opts.validation == Validation::Strict {
        FenRecord::parse_with(&out, Validation::Strict).map_err(MoveError::ResultRejected)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PseudoMoveError {
    #[error(transparent)]
    Fen(#[from] FenError),
    #[error("side to move has no pieces")]
    NoPieces,
}

const KNIGHT_STEPS: [(i8, i8); 8] = [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)];
const KING_STEPS: [(i8, i8); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
const ROOK_DIRS: [(i8, i8); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
const BISHOP_DIRS: [(i8, i8); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

fn offset(sq: Square, df: i8, dr: i8) -> Option<Square> {
    let f = sq.file() as i8 + df;
    let r = sq.rank() as i8 + dr;
    if (0..8).contains(&f) && (1..=8).contains(&r) {
        Square::new(f as u8, r as u8)
    } else {
        None
    }
}

/// Destinations a piece could plausibly reach, ignoring checks.
fn plausible_targets(board: &BoardArray, from: Square, piece: Piece) -> Vec<Square> {
    let mut out = Vec::new();
    let own = |sq: Square| board.piece(sq).is_some_and(|p| p.color == piece.color);
    let slide = |dirs: &[(i8, i8)], out: &mut Vec<Square>| {
        for &(df, dr) in dirs {
            let mut cur = from;
            while let Some(next) = offset(cur, df, dr) {
                if own(next) {
                    break;
                }
                out.push(next);
                if board.piece(next).is_some() {
                    break;
                }
                cur = next;
            }
        }
    };
    match piece.kind {
        PieceKind::Pawn => {
            let (dir, start) = match piece.color {
                Color::White => (1, 2),
                Color::Black => (-1, 7),
            };
            if let Some(one) = offset(from, 0, dir).filter(|s| board.piece(*s).is_none()) {
                out.push(one);
                if from.rank() == start {
                    out.extend(offset(from, 0, 2 * dir).filter(|s| board.piece(*s).is_none()));
                }
            }
            for df in [-1, 1] {
                if let Some(diag) = offset(from, df, dir) {
                    let enemy = board.piece(diag).is_some_and(|p| p.color != piece.color);
                    if enemy || board.en_passant == Some(diag) {
                        out.push(diag);
                    }
                }
            }
        }
        PieceKind::Knight => out.extend(
            KNIGHT_STEPS
                .iter()
                .filter_map(|&(f, r)| offset(from, f, r))
                .filter(|s| !own(*s)),
        ),
        PieceKind::King => {
            out.extend(
                KING_STEPS
                    .iter()
                    .filter_map(|&(f, r)| offset(from, f, r))
                    .filter(|s| !own(*s)),
            );
            let home = piece.color.home_rank();
            if from == Square::new(4, home).unwrap() {
                let rook = Some(Piece::new(PieceKind::Rook, piece.color));
                if board.piece(Square::new(7, home).unwrap()) == rook {
                    out.push(Square::new(6, home).unwrap());
                }
                if board.piece(Square::new(0, home).unwrap()) == rook {
                    out.push(Square::new(2, home).unwrap());
                }
            }
        }
        PieceKind::Rook => slide(&ROOK_DIRS, &mut out),
        PieceKind::Bishop => slide(&BISHOP_DIRS, &mut out),
        PieceKind::Queen => {
            slide(&ROOK_DIRS, &mut out);
            slide(&BISHOP_DIRS, &mut out);
        }
    }
    out
}

/// A king standing on its home e-square and sent two files sideways is
/// castling; without the matching rook the move would be refused.
fn castle_without_rook(board: &BoardArray, from: Square, to: Square, piece: Piece) -> bool {
    let home = piece.color.home_rank();
    if piece.kind != PieceKind::King || from != Square::new(4, home).unwrap() || to.rank() != home {
        return false;
    }
    let corner = match to.file() {
        6 => 7,
        2 => 0,
        _ => return false,
    };
    board.piece(Square::new(corner, home).unwrap()) != Some(Piece::new(PieceKind::Rook, piece.color))
}

/// A structurally valid move for the side to move, chosen deterministically
/// from `seed`. Mostly piece-shaped moves, sometimes an arbitrary
/// destination; never checked for chess legality.
pub fn random_pseudo_move(fen: &str, seed: u64) -> Result<String, PseudoMoveError> {
    let board = board_from_fen(fen)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origins: Vec<Square> = Square::all()
        .filter(|&s| board.piece(s).is_some_and(|p| p.color == board.side))
        .collect();
    let &from = origins.choose(&mut rng).ok_or(PseudoMoveError::NoPieces)?;
    let piece = board.piece(from).expect("origin occupied");

    let shaped = plausible_targets(&board, from, piece);
    let to = if !shaped.is_empty() && rng.gen_bool(0.8) {
        *shaped.choose(&mut rng).unwrap()
    } else {
        let anywhere: Vec<Square> = Square::all()
            .filter(|&s| s != from && !castle_without_rook(&board, from, s, piece))
            .collect();
        *anywhere.choose(&mut rng).expect("63 other squares")
    };

    let mut text = format!("{from}{to}");
    if piece.kind == PieceKind::Pawn && (to.rank() == 1 || to.rank() == 8) {
        text.push(*['q', 'r', 'b', 'n'].choose(&mut rng).unwrap());
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PROBLEM: &str = "7N/1b3RN1/7k/6b1/KBp4p/5q2/6Q1/7n w - - 0 1";
    const START: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

    #[test]
    fn mailbox_layout() {
        let b = board_from_fen(PROBLEM).unwrap();
        assert_eq!(b.cells[9], Some(Piece::new(PieceKind::Bishop, Color::Black)));
        assert_eq!(b.cells[63], Some(Piece::new(PieceKind::Knight, Color::Black)));
        assert_eq!(cell_index("b7".parse().unwrap()), 9);
        assert_eq!(cell_index("a8".parse().unwrap()), 0);
        assert_eq!(cell_index("h1".parse().unwrap()), 63);
        for i in 0..64 {
            assert_eq!(cell_index(square_of(i)), i);
        }
        let empty = board_from_fen("8/8/8/8/8/8/8/8 w - - 0 1").unwrap();
        assert!(empty.cells.iter().all(Option::is_none));
    }

    #[test]
    fn agrees_with_segment_lookup() {
        let r = FenRecord::parse(PROBLEM).unwrap();
        let b = board_from_fen(PROBLEM).unwrap();
        for sq in Square::all() {
            assert_eq!(b.piece(sq), r.piece_at(sq), "{sq}");
        }
    }

    #[test]
    fn round_trips() {
        for fen in [
            PROBLEM,
            START,
            "8/8/8/8/8/8/8/8 w - - 0 1",
            "r3k2r/8/8/8/8/8/8/R3K2R b Kq e3 12 40",
        ] {
            assert_eq!(fen_from_board(&board_from_fen(fen).unwrap()), fen);
        }
    }

    #[test]
    fn reference_moves() {
        let frozen = ApplyOptions {
            clock_mode: ClockMode::Frozen,
            ..Default::default()
        };
        assert_eq!(
            oracle_apply(PROBLEM, "f7f6", frozen).unwrap(),
            "7N/1b4N1/5R1k/6b1/KBp4p/5q2/6Q1/7n b - - 0 1"
        );
        assert_eq!(
            oracle_apply(PROBLEM, "f7c7", frozen).unwrap(),
            "7N/1bR3N1/7k/6b1/KBp4p/5q2/6Q1/7n b - - 0 1"
        );
        assert_eq!(
            oracle_apply(START, "g1f3", ApplyOptions::default()).unwrap(),
            "rnbqkbnr/pppppppp/8/8/8/5N2/PPPPPPPP/RNBQKB1R b KQkq - 1 1"
        );
        assert_eq!(
            oracle_apply("4k3/8/8/8/8/8/8/4K2R w K - 0 1", "e1g1", ApplyOptions::default()).unwrap(),
            "4k3/8/8/8/8/8/8/5RK1 b - - 1 1"
        );
        assert_eq!(
            oracle_apply("4k3/8/8/3pP3/8/8/8/4K3 w - d6 0 5", "e5d6", ApplyOptions::default()).unwrap(),
            "4k3/8/3P4/8/8/8/8/4K3 b - - 0 5"
        );
        assert_eq!(
            oracle_apply("8/4P3/8/8/8/8/8/k6K w - - 0 1", "e7e8q", ApplyOptions::default()).unwrap(),
            "4Q3/8/8/8/8/8/8/k6K b - - 0 1"
        );
    }

    #[test]
    fn reference_errors() {
        let o = ApplyOptions::default();
        assert_eq!(oracle_apply(PROBLEM, "a3b4", o).unwrap_err().name(), "EmptyOrigin");
        assert_eq!(oracle_apply(PROBLEM, "b7c6", o).unwrap_err().name(), "WrongColor");
        assert_eq!(
            oracle_apply("4k3/8/8/8/8/8/8/4K3 w - - 0 1", "e1g1", o)
                .unwrap_err()
                .name(),
            "BadCastle"
        );
    }

    #[test]
    fn pseudo_moves_are_deterministic() {
        let a: Vec<_> = (0..50).map(|s| random_pseudo_move(START, s).unwrap()).collect();
        let b: Vec<_> = (0..50).map(|s| random_pseudo_move(START, s).unwrap()).collect();
        assert_eq!(a, b);
        assert!(a.iter().any(|m| m != &a[0]));
    }

    #[test]
    fn lone_king_moves_from_a1() {
        for seed in 0..200 {
            let mv = random_pseudo_move("8/8/8/8/8/8/8/K7 w - - 0 1", seed).unwrap();
            assert!(mv.starts_with("a1"), "{mv}");
        }
    }

    #[test]
    fn no_pieces() {
        assert_eq!(
            random_pseudo_move("8/8/8/8/8/8/8/K7 b - - 0 1", 3),
            Err(PseudoMoveError::NoPieces)
        );
    }

    #[test]
    fn pseudo_moves_satisfy_preconditions() {
        // Over many seeds every origin holds a white piece and the move applies.
        let record = FenRecord::parse(START).unwrap();
        for seed in 0..10_000 {
            let mv = random_pseudo_move(START, seed).unwrap();
            let parsed: Move = mv.parse().unwrap();
            assert_eq!(
                record.piece_at(parsed.from).map(|p| p.color),
                Some(Color::White),
                "{mv}"
            );
            oracle_apply(START, &mv, ApplyOptions::default()).unwrap();
        }
    }
}
