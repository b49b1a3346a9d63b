// SPDX-License-Identifier: Apache-2.0

//! The 1883 comma-separated Forsyth notation.
//!
//! Ranks are separated by commas and tokens by spaces: `1 B 6, 2 kt 5, ...`.
//! Knights are written `Kt`/`kt`. Only the placement is represented.

use thiserror::Error;

use crate::fen::{check_segment, Color, Piece, PieceKind};
use crate::segment::{expand_rank, ExpandedRank};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForsythError {
    #[error("unrecognized token {0:?}")]
    BadToken(String),
    #[error("rank group {group} covers {width} squares, expected 8")]
    RankWidth { group: usize, width: usize },
    #[error("found {0} rank groups, expected 8")]
    GroupCount(usize),
}

impl ForsythError {
    pub fn name(&self) -> &'static str {
        match self {
            ForsythError::BadToken(_) => "BadToken",
            ForsythError::RankWidth { .. } => "RankWidth",
            ForsythError::GroupCount(_) => "GroupCount",
        }
    }
}

fn piece_token(tok: &str) -> Option<Piece> {
    let lower = tok.to_ascii_lowercase();
    let kind = match lower.as_str() {
        "k" => PieceKind::King,
        "q" => PieceKind::Queen,
        "r" => PieceKind::Rook,
        "b" => PieceKind::Bishop,
        "kt" => PieceKind::Knight,
        "p" => PieceKind::Pawn,
        _ => return None,
    };
    // "Kt" and "kt" are the only knight spellings; "KT"/"kT" are rejected.
    let white = match tok {
        "Kt" => true,
        "kt" => false,
        _ if tok.len() == 1 => tok.as_bytes()[0].is_ascii_uppercase(),
        _ => return None,
    };
    let color = if white { Color::White } else { Color::Black };
    Some(Piece::new(kind, color))
}

/// Converts legacy text into eight modern rank segments, rank 8 first.
pub fn parse_legacy_forsyth(text: &str) -> Result<[String; 8], ForsythError> {
    let text = text.trim();
    let text = text.strip_suffix('.').unwrap_or(text);
    let groups: Vec<&str> = text.split(',').collect();
    if groups.len() != 8 {
        return Err(ForsythError::GroupCount(groups.len()));
    }

    let mut out: [String; 8] = Default::default();
    for (i, group) in groups.iter().enumerate() {
        let mut seg = String::new();
        let mut width = 0usize;
        let mut run = 0usize;
        for tok in group.split_whitespace() {
            if tok.bytes().all(|b| b.is_ascii_digit()) {
                let n: usize = tok.parse().map_err(|_| ForsythError::BadToken(tok.to_string()))?;
                if n == 0 {
                    return Err(ForsythError::BadToken(tok.to_string()));
                }
                // Adjacent counts merge into one run.
                run += n;
                width += n;
                continue;
            }
            let piece = piece_token(tok).ok_or_else(|| ForsythError::BadToken(tok.to_string()))?;
            if run > 0 {
                seg.push_str(&run.to_string());
                run = 0;
            }
            seg.push(piece.letter());
            width += 1;
        }
        if run > 0 {
            seg.push_str(&run.to_string());
        }
        if width != 8 {
            return Err(ForsythError::RankWidth { group: i + 1, width });
        }
        debug_assert!(check_segment(&seg).is_ok());
        out[i] = seg;
    }
    Ok(out)
}

/// Writes eight rank segments in legacy form.
///
/// # Panics
/// If a segment is not a valid rank segment.
pub fn emit_legacy_forsyth<S: AsRef<str>>(placement: &[S; 8]) -> String {
    placement
        .iter()
        .map(|seg| {
            let seg = seg.as_ref();
            let tokens: Vec<String> = seg
                .chars()
                .map(|c| match Piece::from_letter(c) {
                    Some(p) if p.kind == PieceKind::Knight => {
                        if p.letter().is_ascii_uppercase() { "Kt" } else { "kt" }.to_string()
                    }
                    Some(p) => p.letter().to_string(),
                    None => {
                        assert!(c.is_ascii_digit(), "invalid rank segment {seg:?}");
                        c.to_string()
                    }
                })
                .collect();
            tokens.join(" ")
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Square-by-square comparison of two placements.
pub fn same_placement<A: AsRef<str>, B: AsRef<str>>(a: &[A; 8], b: &[B; 8]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| {
        let x: Option<ExpandedRank> = expand_rank(x.as_ref()).ok();
        let y: Option<ExpandedRank> = expand_rank(y.as_ref()).ok();
        x.is_some() && x == y
    })
}
