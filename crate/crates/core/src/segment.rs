// SPDX-License-Identifier: Apache-2.0

//! Rank segments in compact and expanded form.
//!
//! A compact segment is the run-length text found in a FEN ("1b3RN1"). Its
//! expanded form writes every empty square as a unit digit '1', so it is
//! always eight characters long and slot `i` is file `i` ("1b111RN1").
//! Contraction folds each run of '1' back into its decimal count.

use std::fmt;

use thiserror::Error;

use crate::fen::{check_segment, Piece, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentError {
    #[error("invalid rank segment {0:?}")]
    BadSegment(String),
    #[error("invalid expanded rank {0:?}")]
    BadExpandedRank(String),
    #[error("{0} is out of range")]
    OutOfRange(String),
}

impl SegmentError {
    pub fn name(&self) -> &'static str {
        match self {
            SegmentError::BadSegment(_) => "BadSegment",
            SegmentError::BadExpandedRank(_) => "BadExpandedRank",
            SegmentError::OutOfRange(_) => "OutOfRange",
        }
    }
}

pub const EMPTY_SLOT: u8 = b'1';

/// Eight slots, each a piece letter or '1'.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExpandedRank([u8; 8]);

impl ExpandedRank {
    pub const EMPTY: ExpandedRank = ExpandedRank([EMPTY_SLOT; 8]);

    /// Validates already-expanded text.
    pub fn new(text: &str) -> Result<ExpandedRank, SegmentError> {
        let bytes = text.as_bytes();
        let ok = bytes.len() == 8
            && bytes
                .iter()
                .all(|&b| b == EMPTY_SLOT || Piece::from_letter(b as char).is_some());
        if !ok {
            return Err(SegmentError::BadExpandedRank(text.to_string()));
        }
        let mut slots = [0u8; 8];
        slots.copy_from_slice(bytes);
        Ok(ExpandedRank(slots))
    }

    pub fn slot(&self, file: u8) -> u8 {
        self.0[file as usize]
    }

    pub fn set_slot(&mut self, file: u8, c: u8) {
        debug_assert!(c == EMPTY_SLOT || Piece::from_letter(c as char).is_some());
        self.0[file as usize] = c;
    }

    pub fn piece(&self, file: u8) -> Option<Piece> {
        Piece::from_letter(self.slot(file) as char)
    }

    pub fn as_str(&self) -> &str {
        // Slots only ever hold ASCII.
        std::str::from_utf8(&self.0).expect("ascii slots")
    }

    pub fn contract(&self) -> String {
        let mut out = String::with_capacity(8);
        let mut run = 0u8;
        for &c in &self.0 {
            if c == EMPTY_SLOT {
                run += 1;
            } else {
                if run > 0 {
                    out.push((b'0' + run) as char);
                    run = 0;
                }
                out.push(c as char);
            }
        }
        if run > 0 {
            out.push((b'0' + run) as char);
        }
        out
    }
}

impl fmt::Display for ExpandedRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for ExpandedRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpandedRank({:?})", self.as_str())
    }
}

/// Rewrites each digit `d` of a valid segment as `d` copies of '1'.
pub fn expand_rank(segment: &str) -> Result<ExpandedRank, SegmentError> {
    check_segment(segment).map_err(|_| SegmentError::BadSegment(segment.to_string()))?;
    let mut slots = [EMPTY_SLOT; 8];
    let mut file = 0;
    for b in segment.bytes() {
        if b.is_ascii_digit() {
            file += (b - b'0') as usize;
        } else {
            slots[file] = b;
            file += 1;
        }
    }
    Ok(ExpandedRank(slots))
}

/// Folds runs of '1' in expanded text back into counts.
pub fn contract_rank(expanded: &str) -> Result<String, SegmentError> {
    Ok(ExpandedRank::new(expanded)?.contract())
}

/// Position of a rank's segment in the placement field: rank 8 is first.
pub fn segment_index(rank: u8) -> Result<usize, SegmentError> {
    if !(1..=8).contains(&rank) {
        return Err(SegmentError::OutOfRange(format!("rank {rank}")));
    }
    Ok(8 - rank as usize)
}

pub fn file_index(file: char) -> Result<u8, SegmentError> {
    match file {
        'a'..='h' => Ok(file as u8 - b'a'),
        _ => Err(SegmentError::OutOfRange(format!("file {file:?}"))),
    }
}

pub(crate) fn segment_index_of(sq: Square) -> usize {
    8 - sq.rank() as usize
}
