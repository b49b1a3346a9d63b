// SPDX-License-Identifier: Apache-2.0

//! FEN text codec.
//!
//! A [`FenRecord`] keeps the placement as its eight slash-separated rank
//! segments (rank 8 first), exactly as they appear in the text. Nothing here
//! builds a board array; squares are resolved by expanding a single segment.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::segment;

/// Errors produced while reading FEN text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FenError {
    #[error("placement has {0} rank segments, expected 8")]
    SegmentCount(usize),
    #[error("rank segment {segment:?} covers {width} squares, expected 8")]
    RankWidth { segment: String, width: usize },
    #[error("invalid piece letter {0:?}")]
    BadPieceLetter(char),
    #[error("rank segment {0:?} has adjacent digits")]
    AdjacentDigits(String),
    #[error("side to move {0:?} is not 'w' or 'b'")]
    BadSideChar(String),
    #[error("invalid castling field {0:?}")]
    BadCastlingField(String),
    #[error("invalid en passant field {0:?}")]
    BadEnPassantField(String),
    #[error("invalid clock value {0:?}")]
    BadClock(String),
    #[error("expected 6 fields, found {0}")]
    FieldCount(usize),
    #[error("strict validation failed: {0}")]
    Strict(StrictViolation),
}

/// Position-level checks applied only under [`Validation::Strict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrictViolation {
    #[error("found {white} white and {black} black kings")]
    KingCount { white: usize, black: usize },
    #[error("pawn on {0}")]
    PawnOnBackRank(Square),
    #[error("en passant square {square} does not match side to move {side}")]
    EnPassantSide { square: Square, side: Color },
}

impl FenError {
    /// Stable variant name, used by the CLI and FFI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            FenError::SegmentCount(_) => "SegmentCount",
            FenError::RankWidth { .. } => "RankWidth",
            FenError::BadPieceLetter(_) => "BadPieceLetter",
            FenError::AdjacentDigits(_) => "AdjacentDigits",
            FenError::BadSideChar(_) => "BadSideChar",
            FenError::BadCastlingField(_) => "BadCastlingField",
            FenError::BadEnPassantField(_) => "BadEnPassantField",
            FenError::BadClock(_) => "BadClock",
            FenError::FieldCount(_) => "FieldCount",
            FenError::Strict(_) => "StrictViolation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }

    /// Rank the pieces of this color start on.
    pub fn home_rank(self) -> u8 {
        match self {
            Color::White => 1,
            Color::Black => 8,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    King,
    Queen,
    Rook,
    Bishop,
    Knight,
    Pawn,
}

impl PieceKind {
    pub const ALL: [PieceKind; 6] = [
        PieceKind::King,
        PieceKind::Queen,
        PieceKind::Rook,
        PieceKind::Bishop,
        PieceKind::Knight,
        PieceKind::Pawn,
    ];

    /// Lowercase letter for the kind.
    pub fn letter(self) -> char {
        match self {
            PieceKind::King => 'k',
            PieceKind::Queen => 'q',
            PieceKind::Rook => 'r',
            PieceKind::Bishop => 'b',
            PieceKind::Knight => 'n',
            PieceKind::Pawn => 'p',
        }
    }

    pub fn from_letter(c: char) -> Option<PieceKind> {
        Some(match c.to_ascii_lowercase() {
            'k' => PieceKind::King,
            'q' => PieceKind::Queen,
            'r' => PieceKind::Rook,
            'b' => PieceKind::Bishop,
            'n' => PieceKind::Knight,
            'p' => PieceKind::Pawn,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Piece {
    pub kind: PieceKind,
    pub color: Color,
}

impl Piece {
    pub const fn new(kind: PieceKind, color: Color) -> Piece {
        Piece { kind, color }
    }

    /// FEN letter: uppercase for white, lowercase for black.
    pub fn letter(self) -> char {
        let c = self.kind.letter();
        match self.color {
            Color::White => c.to_ascii_uppercase(),
            Color::Black => c,
        }
    }

    pub fn from_letter(c: char) -> Option<Piece> {
        if !c.is_ascii_alphabetic() {
            return None;
        }
        let kind = PieceKind::from_letter(c)?;
        let color = if c.is_ascii_uppercase() {
            Color::White
        } else {
            Color::Black
        };
        Some(Piece { kind, color })
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A board square. `file` is 0 for 'a' through 7 for 'h'; `rank` is 1..=8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    file: u8,
    rank: u8,
}

impl Square {
    pub fn new(file: u8, rank: u8) -> Option<Square> {
        (file < 8 && (1..=8).contains(&rank)).then_some(Square { file, rank })
    }

    pub fn file(self) -> u8 {
        self.file
    }

    pub fn rank(self) -> u8 {
        self.rank
    }

    pub fn file_char(self) -> char {
        (b'a' + self.file) as char
    }

    /// All 64 squares, a8 first, in placement reading order.
    pub fn all() -> impl Iterator<Item = Square> {
        (1..=8u8)
            .rev()
            .flat_map(|rank| (0..8u8).map(move |file| Square { file, rank }))
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.file_char(), self.rank)
    }
}

impl FromStr for Square {
    type Err = ();

    fn from_str(s: &str) -> Result<Square, ()> {
        match s.as_bytes() {
            [f @ b'a'..=b'h', r @ b'1'..=b'8'] => Ok(Square {
                file: f - b'a',
                rank: r - b'0',
            }),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CastlingRights {
    pub white_kingside: bool,
    pub white_queenside: bool,
    pub black_kingside: bool,
    pub black_queenside: bool,
}

impl CastlingRights {
    pub const ALL: CastlingRights = CastlingRights {
        white_kingside: true,
        white_queenside: true,
        black_kingside: true,
        black_queenside: true,
    };

    pub const NONE: CastlingRights = CastlingRights {
        white_kingside: false,
        white_queenside: false,
        black_kingside: false,
        black_queenside: false,
    };

    pub fn is_empty(&self) -> bool {
        *self == CastlingRights::NONE
    }

    /// True when every right set in `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &CastlingRights) -> bool {
        (!self.white_kingside || other.white_kingside)
            && (!self.white_queenside || other.white_queenside)
            && (!self.black_kingside || other.black_kingside)
            && (!self.black_queenside || other.black_queenside)
    }
}

impl fmt::Display for CastlingRights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for (set, c) in [
            (self.white_kingside, 'K'),
            (self.white_queenside, 'Q'),
            (self.black_kingside, 'k'),
            (self.black_queenside, 'q'),
        ] {
            if set {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for CastlingRights {
    type Err = FenError;

    /// Accepts the letters in any order; each at most once.
    fn from_str(s: &str) -> Result<CastlingRights, FenError> {
        let bad = || FenError::BadCastlingField(s.to_string());
        if s == "-" {
            return Ok(CastlingRights::NONE);
        }
        if s.is_empty() {
            return Err(bad());
        }
        let mut rights = CastlingRights::NONE;
        for c in s.chars() {
            let flag = match c {
                'K' => &mut rights.white_kingside,
                'Q' => &mut rights.white_queenside,
                'k' => &mut rights.black_kingside,
                'q' => &mut rights.black_queenside,
                _ => return Err(bad()),
            };
            if *flag {
                return Err(bad());
            }
            *flag = true;
        }
        Ok(rights)
    }
}

/// How much beyond the grammar a FEN must satisfy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Validation {
    #[default]
    Lenient,
    /// One king per side, no pawns on ranks 1 and 8, and an en passant square
    /// on the rank the side to move could capture onto.
    Strict,
}

impl FromStr for Validation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lenient" => Ok(Validation::Lenient),
            "strict" => Ok(Validation::Strict),
            _ => Err(format!("unknown validation level {s:?}")),
        }
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Validation::Lenient => "lenient",
            Validation::Strict => "strict",
        })
    }
}

/// A parsed six-field FEN.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FenRecord {
    /// Rank segments, index 0 is rank 8 and index 7 is rank 1.
    pub ranks: [String; 8],
    pub side: Color,
    pub castling: CastlingRights,
    pub en_passant: Option<Square>,
    pub halfmove: u32,
    pub fullmove: u32,
}

impl FenRecord {
    /// Parses with [`Validation::Lenient`].
    pub fn parse(text: &str) -> Result<FenRecord, FenError> {
        FenRecord::parse_with(text, Validation::Lenient)
    }

    pub fn parse_with(text: &str, validation: Validation) -> Result<FenRecord, FenError> {
        let fields: Vec<&str> = text.split_whitespace().collect();

        // Placement errors take precedence over a short field list, so a bare
        // word reports the segment problem.
        let ranks = parse_placement(fields.first().copied().unwrap_or(""))?;
        if fields.len() != 6 {
            return Err(FenError::FieldCount(fields.len()));
        }

        let side = match fields[1] {
            "w" => Color::White,
            "b" => Color::Black,
            other => return Err(FenError::BadSideChar(other.to_string())),
        };
        let castling: CastlingRights = fields[2].parse()?;
        let en_passant = match fields[3] {
            "-" => None,
            ep => {
                let sq: Square = ep.parse().map_err(|_| FenError::BadEnPassantField(ep.to_string()))?;
                if sq.rank != 3 && sq.rank != 6 {
                    return Err(FenError::BadEnPassantField(ep.to_string()));
                }
                Some(sq)
            }
        };
        let halfmove = parse_clock(fields[4])?;
        let fullmove = parse_clock(fields[5])?;
        if fullmove < 1 {
            return Err(FenError::BadClock(fields[5].to_string()));
        }

        let record = FenRecord {
            ranks,
            side,
            castling,
            en_passant,
            halfmove,
            fullmove,
        };
        if validation == Validation::Strict {
            record.check_strict().map_err(FenError::Strict)?;
        }
        Ok(record)
    }

    fn check_strict(&self) -> Result<(), StrictViolation> {
        let (mut white, mut black) = (0, 0);
        for sq in Square::all() {
            match self.piece_at(sq) {
                Some(Piece {
                    kind: PieceKind::King,
                    color,
                }) => match color {
                    Color::White => white += 1,
                    Color::Black => black += 1,
                },
                Some(Piece {
                    kind: PieceKind::Pawn, ..
                }) if sq.rank == 1 || sq.rank == 8 => return Err(StrictViolation::PawnOnBackRank(sq)),
                _ => {}
            }
        }
        if white != 1 || black != 1 {
            return Err(StrictViolation::KingCount { white, black });
        }
        if let Some(square) = self.en_passant {
            let expected = match self.side {
                Color::White => 6,
                Color::Black => 3,
            };
            if square.rank != expected {
                return Err(StrictViolation::EnPassantSide {
                    square,
                    side: self.side,
                });
            }
        }
        Ok(())
    }

    /// The piece on `sq`, found by expanding only that square's rank segment.
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        let seg = &self.ranks[segment::segment_index_of(sq)];
        let mut file = 0u8;
        for c in seg.chars() {
            if let Some(d) = c.to_digit(10) {
                file += d as u8;
                if file > sq.file {
                    return None;
                }
            } else {
                if file == sq.file {
                    return Piece::from_letter(c);
                }
                file += 1;
            }
        }
        None
    }

    /// The placement field, segments joined by '/'.
    pub fn placement(&self) -> String {
        self.ranks.join("/")
    }
}

impl FromStr for FenRecord {
    type Err = FenError;

    fn from_str(s: &str) -> Result<FenRecord, FenError> {
        FenRecord::parse(s)
    }
}

impl fmt::Display for FenRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} ", self.placement(), self.side, self.castling)?;
        match self.en_passant {
            Some(sq) => write!(f, "{sq}")?,
            None => f.write_str("-")?,
        }
        write!(f, " {} {}", self.halfmove, self.fullmove)
    }
}

/// Parses FEN text under lenient validation.
pub fn parse_fen(text: &str) -> Result<FenRecord, FenError> {
    FenRecord::parse(text)
}

pub fn serialize_fen(record: &FenRecord) -> String {
    record.to_string()
}

pub fn piece_at(record: &FenRecord, sq: Square) -> Option<Piece> {
    record.piece_at(sq)
}

fn parse_clock(s: &str) -> Result<u32, FenError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FenError::BadClock(s.to_string()));
    }
    s.parse().map_err(|_| FenError::BadClock(s.to_string()))
}

fn parse_placement(text: &str) -> Result<[String; 8], FenError> {
    let segments: Vec<&str> = text.split('/').collect();
    if segments.len() != 8 {
        return Err(FenError::SegmentCount(segments.len()));
    }
    for seg in &segments {
        check_segment(seg)?;
    }
    Ok(std::array::from_fn(|i| segments[i].to_string()))
}

/// Grammar check for one rank segment.
pub(crate) fn check_segment(seg: &str) -> Result<(), FenError> {
    let mut width = 0usize;
    let mut prev_digit = false;
    for c in seg.chars() {
        match c {
            '1'..='9' => {
                if prev_digit {
                    return Err(FenError::AdjacentDigits(seg.to_string()));
                }
                prev_digit = true;
                width += c as usize - '0' as usize;
            }
            _ if Piece::from_letter(c).is_some() => {
                prev_digit = false;
                width += 1;
            }
            _ => return Err(FenError::BadPieceLetter(c)),
        }
    }
    if width != 8 {
        return Err(FenError::RankWidth {
            segment: seg.to_string(),
            width,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const PROBLEM: &str = "7N/1b3RN1/7k/6b1/KBp4p/5q2/6Q1/7n w - - 0 1";
    const EMPTY: &str = "8/8/8/8/8/8/8/8 w - - 0 1";

    fn sq(s: &str) -> Square {
        s.parse().unwrap()
    }

    #[test]
    fn parses_composed_position() {
        let r = parse_fen(PROBLEM).unwrap();
        assert_eq!(r.side, Color::White);
        assert!(r.castling.is_empty());
        assert_eq!(r.en_passant, None);
        assert_eq!((r.halfmove, r.fullmove), (0, 1));
        assert_eq!(r.ranks[1], "1b3RN1");
        assert_eq!(serialize_fen(&r), PROBLEM);
    }

    #[test]
    fn empty_board() {
        let r = parse_fen(EMPTY).unwrap();
        assert!(Square::all().all(|s| r.piece_at(s).is_none()));
        let mut b = r.clone();
        b.side = Color::Black;
        assert_eq!(serialize_fen(&b), "8/8/8/8/8/8/8/8 b - - 0 1");
    }

    #[test]
    fn field_formatting() {
        let mut r = parse_fen(EMPTY).unwrap();
        r.castling = CastlingRights::ALL;
        r.en_passant = Some(sq("e6"));
        assert_eq!(serialize_fen(&r), "8/8/8/8/8/8/8/8 w KQkq e6 0 1");
    }

    #[test]
    fn castling_accepts_any_order_and_canonicalizes() {
        let r = parse_fen("8/8/8/8/8/8/8/8 w qkQK - 0 1").unwrap();
        assert_eq!(r.castling.to_string(), "KQkq");
        let r = parse_fen("8/8/8/8/8/8/8/8 w kQ - 0 1").unwrap();
        assert_eq!(r.castling.to_string(), "Qk");
    }

    #[test]
    fn tolerates_repeated_spaces() {
        let r = parse_fen("8/8/8/8/8/8/8/8   w  -  -  0   1").unwrap();
        assert_eq!(r.to_string(), EMPTY);
    }

    #[test]
    fn piece_lookup() {
        let r = parse_fen(PROBLEM).unwrap();
        assert_eq!(r.piece_at(sq("f7")), Some(Piece::new(PieceKind::Rook, Color::White)));
        assert_eq!(r.piece_at(sq("a1")), None);
        assert_eq!(r.piece_at(sq("h1")), Some(Piece::new(PieceKind::Knight, Color::Black)));
        assert_eq!(r.piece_at(sq("b7")), Some(Piece::new(PieceKind::Bishop, Color::Black)));
        assert_eq!(r.piece_at(sq("a3")), None);
        assert_eq!(parse_fen(EMPTY).unwrap().piece_at(sq("e4")), None);
    }

    #[test]
    fn rejections() {
        let cases: &[(&str, &str)] = &[
            ("7N/1b3RN1/7k/6b1/KBp4p/5q2/6Q1 w - - 0 1", "SegmentCount"),
            ("garbage", "SegmentCount"),
            ("", "SegmentCount"),
            ("8/8/8/8/8/8/8/9 w - - 0 1", "RankWidth"),
            ("8/8/8/8/8/8/8/7 w - - 0 1", "RankWidth"),
            ("8/8/8/8/8/8/8/ppppppppp w - - 0 1", "RankWidth"),
            ("8/8/8/8/8/8/8/7x w - - 0 1", "BadPieceLetter"),
            ("8/8/8/8/8/8/8/08 w - - 0 1", "BadPieceLetter"),
            ("8/8/8/8/8/8/8/44 w - - 0 1", "AdjacentDigits"),
            ("8/8/8/8/8/8/8/8 x - - 0 1", "BadSideChar"),
            ("8/8/8/8/8/8/8/8 w KK - 0 1", "BadCastlingField"),
            ("8/8/8/8/8/8/8/8 w A - 0 1", "BadCastlingField"),
            ("8/8/8/8/8/8/8/8 w - e4 0 1", "BadEnPassantField"),
            ("8/8/8/8/8/8/8/8 w - i6 0 1", "BadEnPassantField"),
            ("8/8/8/8/8/8/8/8 w - - -1 1", "BadClock"),
            ("8/8/8/8/8/8/8/8 w - - 0 0", "BadClock"),
            ("8/8/8/8/8/8/8/8 w - - x 1", "BadClock"),
            ("8/8/8/8/8/8/8/8 w - - 0", "FieldCount"),
            ("8/8/8/8/8/8/8/8 w - - 0 1 extra", "FieldCount"),
        ];
        for (text, name) in cases {
            let err = parse_fen(text).unwrap_err();
            assert_eq!(err.name(), *name, "{text}: {err}");
        }
    }

    #[test]
    fn strict_checks() {
        let strict = |t: &str| FenRecord::parse_with(t, Validation::Strict);
        assert!(strict(PROBLEM).is_ok());
        assert!(strict("rnbqkbnr/pppp1ppp/8/4p3/4P3/8/PPPP1PPP/RNBQKBNR w KQkq e6 0 2").is_ok());
        assert!(matches!(
            strict(EMPTY),
            Err(FenError::Strict(StrictViolation::KingCount { white: 0, black: 0 }))
        ));
        assert!(matches!(
            strict("4k3/8/8/8/8/8/8/P3K3 w - - 0 1"),
            Err(FenError::Strict(StrictViolation::PawnOnBackRank(_)))
        ));
        assert!(matches!(
            strict("4k3/8/8/8/4P3/8/8/4K3 w - e3 0 1"),
            Err(FenError::Strict(StrictViolation::EnPassantSide { .. }))
        ));
        // Lenient accepts the same texts.
        assert!(parse_fen("4k3/8/8/8/4P3/8/8/4K3 w - e3 0 1").is_ok());
    }

    #[test]
    fn large_halfmove_accepted() {
        let r = parse_fen("8/8/8/8/8/8/8/8 w - - 250 90").unwrap();
        assert_eq!(r.halfmove, 250);
    }

    #[test]
    fn square_text() {
        assert_eq!(sq("e4").to_string(), "e4");
        assert_eq!((sq("a8").file(), sq("a8").rank()), (0, 8));
        assert!("i1".parse::<Square>().is_err());
        assert!("a9".parse::<Square>().is_err());
        assert!("A1".parse::<Square>().is_err());
        assert_eq!(Square::all().next().unwrap(), sq("a8"));
        assert_eq!(Square::all().last().unwrap(), sq("h1"));
    }
}
