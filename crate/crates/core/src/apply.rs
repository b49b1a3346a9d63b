// SPDX-License-Identifier: Apache-2.0

//! Applying a coordinate move directly to FEN text.
//!
//! Only the rank segments holding the origin and destination squares are
//! expanded, edited slot by slot and contracted again. Every other segment is
//! carried over untouched, and the trailer fields are recomputed from the move.
//! Castling rewrites the rook inside the same back-rank segment; an en passant
//! capture clears the bypassed pawn, which sits in the mover's origin segment.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::fen::{CastlingRights, Color, FenError, FenRecord, Piece, PieceKind, Square, Validation};
use crate::segment::{expand_rank, segment_index_of, ExpandedRank, EMPTY_SLOT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Fen(#[from] FenError),
    #[error("malformed move {0:?}")]
    BadMoveSyntax(String),
    #[error("invalid square in move {0:?}")]
    BadSquare(String),
    #[error("invalid promotion piece {0:?}")]
    BadPromotionPiece(char),
    #[error("no piece on {0}")]
    EmptyOrigin(Square),
    #[error("piece {piece} on {square} does not belong to the side to move")]
    WrongColor { square: Square, piece: Piece },
    #[error("pawn reaching {0} needs a promotion piece")]
    MissingPromotion(Square),
    #[error("promotion piece given for a move that does not promote")]
    UnexpectedPromotion,
    #[error("castling to {0} needs a rook on the corner")]
    BadCastle(Square),
    #[error("move captures own piece on {0}")]
    SelfCapture(Square),
    #[error("resulting position fails validation: {0}")]
    ResultRejected(FenError),
}

impl MoveError {
    pub fn name(&self) -> &'static str {
        match self {
            MoveError::Fen(e) => e.name(),
            MoveError::BadMoveSyntax(_) => "BadMoveSyntax",
            MoveError::BadSquare(_) => "BadSquare",
            MoveError::BadPromotionPiece(_) => "BadPromotionPiece",
            MoveError::EmptyOrigin(_) => "EmptyOrigin",
            MoveError::WrongColor { .. } => "WrongColor",
            MoveError::MissingPromotion(_) => "MissingPromotion",
            MoveError::UnexpectedPromotion => "UnexpectedPromotion",
            MoveError::BadCastle(_) => "BadCastle",
            MoveError::SelfCapture(_) => "SelfCapture",
            MoveError::ResultRejected(_) => "ResultRejected",
        }
    }

    /// True for malformed FEN or move text, as opposed to a well-formed move
    /// that cannot be applied to the position.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            MoveError::Fen(_) | MoveError::BadMoveSyntax(_) | MoveError::BadSquare(_) | MoveError::BadPromotionPiece(_)
        )
    }
}

/// Origin, destination and optional promotion piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Square,
    pub to: Square,
    pub promotion: Option<PieceKind>,
}

impl FromStr for Move {
    type Err = MoveError;

    /// Grammar: `[a-h][1-8]-?[a-h][1-8][qrbnQRBN]?`.
    fn from_str(s: &str) -> Result<Move, MoveError> {
        let syntax = || MoveError::BadMoveSyntax(s.to_string());
        if !s.is_ascii() {
            return Err(syntax());
        }
        if s.len() < 4 {
            return Err(syntax());
        }
        let (from, rest) = match s.as_bytes()[2] {
            b'-' => (&s[..2], &s[3..]),
            _ => (&s[..2], &s[2..]),
        };
        if !(2..=3).contains(&rest.len()) || from.contains('-') || rest.contains('-') {
            return Err(syntax());
        }
        let square = |t: &str| t.parse::<Square>().map_err(|_| MoveError::BadSquare(s.to_string()));
        let from = square(from)?;
        let to = square(&rest[..2])?;
        let promotion = match rest.as_bytes().get(2) {
            None => None,
            Some(&c) => match PieceKind::from_letter(c as char) {
                Some(k @ (PieceKind::Queen | PieceKind::Rook | PieceKind::Bishop | PieceKind::Knight)) => Some(k),
                _ => return Err(MoveError::BadPromotionPiece(c as char)),
            },
        };
        if from == to {
            return Err(syntax());
        }
        Ok(Move { from, to, promotion })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.from, self.to)?;
        if let Some(k) = self.promotion {
            write!(f, "{}", k.letter())?;
        }
        Ok(())
    }
}

pub fn parse_move(text: &str) -> Result<Move, MoveError> {
    text.parse()
}

/// When a pawn double step records an en passant square.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum EpMode {
    /// After every double step.
    #[default]
    Always,
    /// Only when the pawn lands beside an enemy pawn ("Pp" or "pP").
    AdjacentOnly,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ClockMode {
    #[default]
    Standard,
    /// Halfmove and fullmove fields are copied through unchanged.
    Frozen,
}

impl FromStr for EpMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "always" => Ok(EpMode::Always),
            "adjacent-only" => Ok(EpMode::AdjacentOnly),
            _ => Err(format!("unknown en passant mode {s:?}")),
        }
    }
}

impl fmt::Display for EpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpMode::Always => "always",
            EpMode::AdjacentOnly => "adjacent-only",
        })
    }
}

impl FromStr for ClockMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(ClockMode::Standard),
            "frozen" => Ok(ClockMode::Frozen),
            _ => Err(format!("unknown clock mode {s:?}")),
        }
    }
}

impl fmt::Display for ClockMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClockMode::Standard => "standard",
            ClockMode::Frozen => "frozen",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ApplyOptions {
    pub ep_mode: EpMode,
    pub clock_mode: ClockMode,
    pub validation: Validation,
}

impl ApplyOptions {
    /// The four en passant × clock mode combinations, lenient validation.
    pub fn mode_matrix() -> [ApplyOptions; 4] {
        let mut out = [ApplyOptions::default(); 4];
        let mut i = 0;
        for ep_mode in [EpMode::Always, EpMode::AdjacentOnly] {
            for clock_mode in [ClockMode::Standard, ClockMode::Frozen] {
                out[i] = ApplyOptions {
                    ep_mode,
                    clock_mode,
                    validation: Validation::Lenient,
                };
                i += 1;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Special {
    CastleKingside,
    CastleQueenside,
    EnPassantCapture,
    Promotion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApplyOutcome {
    pub fen_after: String,
    /// Placement segment indices that were rewritten (0 is rank 8).
    pub segments_touched: Vec<usize>,
    pub was_capture: bool,
    pub was_pawn_move: bool,
    pub special: Option<Special>,
}

/// Up to two expanded segments being edited.
struct Touched {
    first: (usize, ExpandedRank),
    second: Option<(usize, ExpandedRank)>,
}

impl Touched {
    fn open(record: &FenRecord, sq: Square) -> Touched {
        let idx = segment_index_of(sq);
        Touched {
            first: (idx, expand(record, idx)),
            second: None,
        }
    }

    fn include(&mut self, record: &FenRecord, sq: Square) {
        let idx = segment_index_of(sq);
        if self.first.0 == idx || self.second.is_some_and(|(i, _)| i == idx) {
            return;
        }
        assert!(self.second.is_none(), "a move touches at most two segments");
        self.second = Some((idx, expand(record, idx)));
    }

    fn rank(&self, sq: Square) -> &ExpandedRank {
        let idx = segment_index_of(sq);
        match self.second {
            Some((i, ref r)) if i == idx => r,
            _ => {
                debug_assert_eq!(self.first.0, idx);
                &self.first.1
            }
        }
    }

    fn slot(&self, sq: Square) -> u8 {
        self.rank(sq).slot(sq.file())
    }

    fn piece(&self, sq: Square) -> Option<Piece> {
        self.rank(sq).piece(sq.file())
    }

    fn set(&mut self, sq: Square, c: u8) {
        let idx = segment_index_of(sq);
        let rank = match self.second {
            Some((i, ref mut r)) if i == idx => r,
            _ => &mut self.first.1,
        };
        rank.set_slot(sq.file(), c);
    }

    fn indices(&self) -> Vec<usize> {
        let mut v = vec![self.first.0];
        v.extend(self.second.map(|(i, _)| i));
        v.sort_unstable();
        v
    }

    fn write_back(&self, ranks: &mut [String; 8]) {
        ranks[self.first.0] = self.first.1.contract();
        if let Some((i, r)) = &self.second {
            ranks[*i] = r.contract();
        }
    }
}

fn expand(record: &FenRecord, idx: usize) -> ExpandedRank {
    expand_rank(&record.ranks[idx]).expect("parsed segments are valid")
}

fn sq(file: u8, rank: u8) -> Square {
    Square::new(file, rank).expect("on board")
}

/// Applies `mv` to FEN text.
pub fn apply_move(fen: &str, mv: &str, opts: ApplyOptions) -> Result<ApplyOutcome, MoveError> {
    let record = FenRecord::parse_with(fen, opts.validation)?;
    let mv: Move = mv.parse()?;
    apply_to_record(&record, mv, opts).map(|(_, outcome)| outcome)
}

/// Applies a parsed move to a parsed record, returning the new record as well.
pub fn apply_to_record(
    record: &FenRecord,
    mv: Move,
    opts: ApplyOptions,
) -> Result<(FenRecord, ApplyOutcome), MoveError> {
    let Move { from, to, promotion } = mv;
    let mut touched = Touched::open(record, from);
    let mover = touched.piece(from).ok_or(MoveError::EmptyOrigin(from))?;
    if mover.color != record.side {
        return Err(MoveError::WrongColor {
            square: from,
            piece: mover,
        });
    }
    touched.include(record, to);

    let is_pawn = mover.kind == PieceKind::Pawn;
    let promotes = is_pawn && (to.rank() == 1 || to.rank() == 8);
    match (promotes, promotion) {
        (true, None) => return Err(MoveError::MissingPromotion(to)),
        (false, Some(_)) => return Err(MoveError::UnexpectedPromotion),
        _ => {}
    }

    let home = mover.color.home_rank();
    let castle = (mover.kind == PieceKind::King
        && from == sq(4, home)
        && to.rank() == home
        && (to.file() == 6 || to.file() == 2))
        .then(|| {
            if to.file() == 6 {
                (Special::CastleKingside, sq(7, home), sq(5, home))
            } else {
                (Special::CastleQueenside, sq(0, home), sq(3, home))
            }
        });

    let forward: i8 = match mover.color {
        Color::White => 1,
        Color::Black => -1,
    };
    let en_passant_victim = (is_pawn
        && record.en_passant == Some(to)
        && from.file().abs_diff(to.file()) == 1
        && to.rank() as i8 - from.rank() as i8 == forward
        && touched.slot(to) == EMPTY_SLOT)
        .then(|| sq(to.file(), from.rank()));

    let dest_occupant = touched.piece(to);
    let mut captured = dest_occupant;
    let mut special = None;

    if let Some((kind, rook_from, rook_to)) = castle {
        let rook = Piece::new(PieceKind::Rook, mover.color);
        if touched.piece(rook_from) != Some(rook) {
            return Err(MoveError::BadCastle(to));
        }
        let rook_to_occupant = touched.piece(rook_to);
        if opts.validation == Validation::Strict && rook_to_occupant.is_some_and(|p| p.color == mover.color) {
            return Err(MoveError::SelfCapture(rook_to));
        }
        touched.set(rook_from, EMPTY_SLOT);
        touched.set(rook_to, rook.letter() as u8);
        special = Some(kind);
        if captured.is_none() {
            captured = rook_to_occupant;
        }
    }

    if opts.validation == Validation::Strict && touched.piece(to).is_some_and(|p| p.color == mover.color) {
        return Err(MoveError::SelfCapture(to));
    }

    if let Some(victim) = en_passant_victim {
        captured = touched.piece(victim);
        touched.set(victim, EMPTY_SLOT);
        special = Some(Special::EnPassantCapture);
    }

    let landed = match promotion {
        Some(kind) => {
            special = Some(Special::Promotion);
            Piece::new(kind, mover.color)
        }
        None => mover,
    };
    touched.set(from, EMPTY_SLOT);
    touched.set(to, landed.letter() as u8);

    let was_capture = captured.is_some() || en_passant_victim.is_some();
    let corner_capture = if en_passant_victim.is_some() {
        None
    } else {
        dest_occupant
    };
    let castling = update_castling_rights(record.castling, mover, from, to, corner_capture);
    let en_passant = derive_en_passant(touched.rank(to), mover, from, to, opts.ep_mode);
    let (halfmove, fullmove) = update_clocks(record.halfmove, record.fullmove, mover, was_capture, opts.clock_mode);

    let mut ranks = record.ranks.clone();
    touched.write_back(&mut ranks);
    let after = FenRecord {
        ranks,
        side: record.side.flip(),
        castling,
        en_passant,
        halfmove,
        fullmove,
    };
    let fen_after = after.to_string();
    if opts.validation == Validation::Strict {
        FenRecord::parse_with(&fen_after, Validation::Strict).map_err(MoveError::ResultRejected)?;
    }

    let outcome = ApplyOutcome {
        fen_after,
        segments_touched: touched.indices(),
        was_capture,
        was_pawn_move: is_pawn,
        special,
    };
    Ok((after, outcome))
}

/// Drops every castling right the move invalidates. Rights are never gained.
///
/// A king move clears both rights of its color. A rook leaving a corner, or
/// any capture landing on a corner, clears that corner's right.
pub fn update_castling_rights(
    rights: CastlingRights,
    mover: Piece,
    from: Square,
    to: Square,
    captured: Option<Piece>,
) -> CastlingRights {
    let mut out = rights;
    if mover.kind == PieceKind::King {
        match mover.color {
            Color::White => {
                out.white_kingside = false;
                out.white_queenside = false;
            }
            Color::Black => {
                out.black_kingside = false;
                out.black_queenside = false;
            }
        }
    }
    let mut clear_corner = |s: Square| match (s.file(), s.rank()) {
        (0, 1) => out.white_queenside = false,
        (7, 1) => out.white_kingside = false,
        (0, 8) => out.black_queenside = false,
        (7, 8) => out.black_kingside = false,
        _ => {}
    };
    if mover.kind == PieceKind::Rook {
        clear_corner(from);
    }
    if captured.is_some() {
        clear_corner(to);
    }
    out
}

/// En passant target created by a move, read off the segment the pawn landed
/// in. Only a pawn double step from its starting rank creates one; in
/// [`EpMode::AdjacentOnly`] the landing segment must also show "Pp" or "pP"
/// at the pawn's slot.
pub fn derive_en_passant(
    landing: &ExpandedRank,
    mover: Piece,
    from: Square,
    to: Square,
    mode: EpMode,
) -> Option<Square> {
    if mover.kind != PieceKind::Pawn || from.file() != to.file() {
        return None;
    }
    let (start, double, behind) = match mover.color {
        Color::White => (2, 4, 3),
        Color::Black => (7, 5, 6),
    };
    if from.rank() != start || to.rank() != double {
        return None;
    }
    if mode == EpMode::AdjacentOnly {
        let enemy = Piece::new(PieceKind::Pawn, mover.color.flip()).letter() as u8;
        let f = to.file();
        let left = f > 0 && landing.slot(f - 1) == enemy;
        let right = f < 7 && landing.slot(f + 1) == enemy;
        if !left && !right {
            return None;
        }
    }
    Square::new(to.file(), behind)
}

/// Standard mode resets the halfmove clock on a pawn move or capture and bumps
/// the fullmove number after Black moves. Frozen mode returns both unchanged.
pub fn update_clocks(halfmove: u32, fullmove: u32, mover: Piece, was_capture: bool, mode: ClockMode) -> (u32, u32) {
    match mode {
        ClockMode::Frozen => (halfmove, fullmove),
        ClockMode::Standard => {
            let half = if mover.kind == PieceKind::Pawn || was_capture {
                0
            } else {
                halfmove.saturating_add(1)
            };
            let full = match mover.color {
                Color::Black => fullmove.saturating_add(1),
                Color::White => fullmove,
            };
            (half, full)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ply {ply} ({mv}): {source}")]
pub struct SequenceError {
    /// 1-based.
    pub ply: usize,
    pub mv: String,
    #[source]
    pub source: MoveError,
}

/// Plays moves one after another, returning the FEN after each ply.
pub fn play_sequence<S: AsRef<str>>(fen: &str, moves: &[S], opts: ApplyOptions) -> Result<Vec<String>, SequenceError> {
    let mut out = Vec::with_capacity(moves.len());
    let mut current = fen.to_string();
    for (i, mv) in moves.iter().enumerate() {
        let outcome = apply_move(&current, mv.as_ref(), opts).map_err(|source| SequenceError {
            ply: i + 1,
            mv: mv.as_ref().to_string(),
            source,
        })?;
        current = outcome.fen_after;
        out.push(current.clone());
    }
    Ok(out)
}
