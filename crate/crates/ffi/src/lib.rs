// SPDX-License-Identifier: Apache-2.0

//! C ABI for `fenrw`.
//!
//! Strings crossing the boundary are NUL-terminated UTF-8. Strings returned
//! through an out-parameter are owned by the caller and must be released with
//! [`fenrw_string_free`]. Every function returns a [`FenrwStatus`]; out
//! parameters are written only on `FENRW_STATUS_OK`.
//!
//! [`FenrwPosition`] is an opaque handle holding a FEN and the options used to
//! advance it one move at a time.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fenrw::{
    apply_move, parse_legacy_forsyth, ApplyOptions, ClockMode, EpMode, FenError, FenRecord, ForsythError, MoveError,
    Special, Validation,
};

/// Result codes. Values are stable.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FenrwStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Panic = 3,

    SegmentCount = 10,
    RankWidth = 11,
    BadPieceLetter = 12,
    AdjacentDigits = 13,
    BadSideChar = 14,
    BadCastlingField = 15,
    BadEnPassantField = 16,
    BadClock = 17,
    FieldCount = 18,
    StrictViolation = 19,

    BadMoveSyntax = 30,
    BadSquare = 31,
    BadPromotionPiece = 32,

    EmptyOrigin = 40,
    WrongColor = 41,
    MissingPromotion = 42,
    UnexpectedPromotion = 43,
    BadCastle = 44,
    SelfCapture = 45,
    ResultRejected = 46,

    LegacyBadToken = 60,
    LegacyRankWidth = 61,
    LegacyGroupCount = 62,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FenrwEpMode {
    Always = 0,
    AdjacentOnly = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FenrwClockMode {
    Standard = 0,
    Frozen = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FenrwValidation {
    Lenient = 0,
    Strict = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FenrwOptions {
    pub ep_mode: FenrwEpMode,
    pub clock_mode: FenrwClockMode,
    pub validation: FenrwValidation,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FenrwSpecial {
    None = 0,
    CastleKingside = 1,
    CastleQueenside = 2,
    EnPassantCapture = 3,
    Promotion = 4,
}

/// Details of an applied move. Unused entries of `segments` are 255.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FenrwMoveInfo {
    pub segment_count: u8,
    pub segments: [u8; 2],
    pub was_capture: bool,
    pub was_pawn_move: bool,
    pub special: FenrwSpecial,
}

/// Opaque position handle.
pub struct FenrwPosition {
    fen: CString,
    opts: ApplyOptions,
}

impl From<FenrwOptions> for ApplyOptions {
    fn from(o: FenrwOptions) -> ApplyOptions {
        ApplyOptions {
            ep_mode: match o.ep_mode {
                FenrwEpMode::Always => EpMode::Always,
                FenrwEpMode::AdjacentOnly => EpMode::AdjacentOnly,
            },
            clock_mode: match o.clock_mode {
                FenrwClockMode::Standard => ClockMode::Standard,
                FenrwClockMode::Frozen => ClockMode::Frozen,
            },
            validation: validation(o.validation),
        }
    }
}

fn validation(v: FenrwValidation) -> Validation {
    match v {
        FenrwValidation::Lenient => Validation::Lenient,
        FenrwValidation::Strict => Validation::Strict,
    }
}

impl From<&FenError> for FenrwStatus {
    fn from(e: &FenError) -> FenrwStatus {
        match e {
            FenError::SegmentCount(_) => FenrwStatus::SegmentCount,
            FenError::RankWidth { .. } => FenrwStatus::RankWidth,
            FenError::BadPieceLetter(_) => FenrwStatus::BadPieceLetter,
            FenError::AdjacentDigits(_) => FenrwStatus::AdjacentDigits,
            FenError::BadSideChar(_) => FenrwStatus::BadSideChar,
            FenError::BadCastlingField(_) => FenrwStatus::BadCastlingField,
            FenError::BadEnPassantField(_) => FenrwStatus::BadEnPassantField,
            FenError::BadClock(_) => FenrwStatus::BadClock,
            FenError::FieldCount(_) => FenrwStatus::FieldCount,
            FenError::Strict(_) => FenrwStatus::StrictViolation,
        }
    }
}

impl From<&MoveError> for FenrwStatus {
    fn from(e: &MoveError) -> FenrwStatus {
        match e {
            MoveError::Fen(f) => f.into(),
            MoveError::BadMoveSyntax(_) => FenrwStatus::BadMoveSyntax,
            MoveError::BadSquare(_) => FenrwStatus::BadSquare,
            MoveError::BadPromotionPiece(_) => FenrwStatus::BadPromotionPiece,
            MoveError::EmptyOrigin(_) => FenrwStatus::EmptyOrigin,
            MoveError::WrongColor { .. } => FenrwStatus::WrongColor,
            MoveError::MissingPromotion(_) => FenrwStatus::MissingPromotion,
            MoveError::UnexpectedPromotion => FenrwStatus::UnexpectedPromotion,
            MoveError::BadCastle(_) => FenrwStatus::BadCastle,
            MoveError::SelfCapture(_) => FenrwStatus::SelfCapture,
            MoveError::ResultRejected(_) => FenrwStatus::ResultRejected,
        }
    }
}

impl From<&ForsythError> for FenrwStatus {
    fn from(e: &ForsythError) -> FenrwStatus {
        match e {
            ForsythError::BadToken(_) => FenrwStatus::LegacyBadToken,
            ForsythError::RankWidth { .. } => FenrwStatus::LegacyRankWidth,
            ForsythError::GroupCount(_) => FenrwStatus::LegacyGroupCount,
        }
    }
}

fn guard(f: impl FnOnce() -> FenrwStatus) -> FenrwStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(FenrwStatus::Panic)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, FenrwStatus> {
    if p.is_null() {
        return Err(FenrwStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| FenrwStatus::InvalidUtf8)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FenrwStatus {
    // FEN and legacy text never contain NUL.
    let c = CString::new(s).expect("no interior NUL");
    *out = c.into_raw();
    FenrwStatus::Ok
}

fn move_info(outcome: &fenrw::ApplyOutcome) -> FenrwMoveInfo {
    let mut segments = [u8::MAX; 2];
    for (slot, &i) in segments.iter_mut().zip(&outcome.segments_touched) {
        *slot = i as u8;
    }
    FenrwMoveInfo {
        segment_count: outcome.segments_touched.len() as u8,
        segments,
        was_capture: outcome.was_capture,
        was_pawn_move: outcome.was_pawn_move,
        special: match outcome.special {
            None => FenrwSpecial::None,
            Some(Special::CastleKingside) => FenrwSpecial::CastleKingside,
            Some(Special::CastleQueenside) => FenrwSpecial::CastleQueenside,
            Some(Special::EnPassantCapture) => FenrwSpecial::EnPassantCapture,
            Some(Special::Promotion) => FenrwSpecial::Promotion,
        },
    }
}

/// Defaults: en passant always, standard clocks, lenient validation.
#[no_mangle]
pub extern "C" fn fenrw_default_options() -> FenrwOptions {
    FenrwOptions {
        ep_mode: FenrwEpMode::Always,
        clock_mode: FenrwClockMode::Standard,
        validation: FenrwValidation::Lenient,
    }
}

/// Static, NUL-terminated name of a status code. Never null.
#[no_mangle]
pub extern "C" fn fenrw_status_name(status: FenrwStatus) -> *const c_char {
    let name: &'static CStr = match status {
        FenrwStatus::Ok => c"Ok",
        FenrwStatus::NullArgument => c"NullArgument",
        FenrwStatus::InvalidUtf8 => c"InvalidUtf8",
        FenrwStatus::Panic => c"Panic",
        FenrwStatus::SegmentCount => c"SegmentCount",
        FenrwStatus::RankWidth => c"RankWidth",
        FenrwStatus::BadPieceLetter => c"BadPieceLetter",
        FenrwStatus::AdjacentDigits => c"AdjacentDigits",
        FenrwStatus::BadSideChar => c"BadSideChar",
        FenrwStatus::BadCastlingField => c"BadCastlingField",
        FenrwStatus::BadEnPassantField => c"BadEnPassantField",
        FenrwStatus::BadClock => c"BadClock",
        FenrwStatus::FieldCount => c"FieldCount",
        FenrwStatus::StrictViolation => c"StrictViolation",
        FenrwStatus::BadMoveSyntax => c"BadMoveSyntax",
        FenrwStatus::BadSquare => c"BadSquare",
        FenrwStatus::BadPromotionPiece => c"BadPromotionPiece",
        FenrwStatus::EmptyOrigin => c"EmptyOrigin",
        FenrwStatus::WrongColor => c"WrongColor",
        FenrwStatus::MissingPromotion => c"MissingPromotion",
        FenrwStatus::UnexpectedPromotion => c"UnexpectedPromotion",
        FenrwStatus::BadCastle => c"BadCastle",
        FenrwStatus::SelfCapture => c"SelfCapture",
        FenrwStatus::ResultRejected => c"ResultRejected",
        FenrwStatus::LegacyBadToken => c"BadToken",
        FenrwStatus::LegacyRankWidth => c"RankWidth",
        FenrwStatus::LegacyGroupCount => c"GroupCount",
    };
    name.as_ptr()
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fenrw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `fen` and writes its canonical form to `*out_fen`.
#[no_mangle]
pub unsafe extern "C" fn fenrw_validate(
    fen: *const c_char,
    validation_level: FenrwValidation,
    out_fen: *mut *mut c_char,
) -> FenrwStatus {
    guard(|| {
        if out_fen.is_null() {
            return FenrwStatus::NullArgument;
        }
        let fen = match read_str(fen) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match FenRecord::parse_with(fen, validation(validation_level)) {
            Ok(r) => write_string(out_fen, r.to_string()),
            Err(e) => (&e).into(),
        }
    })
}

/// Applies `mv` to `fen`. `out_info` may be null.
#[no_mangle]
pub unsafe extern "C" fn fenrw_apply_move(
    fen: *const c_char,
    mv: *const c_char,
    options: FenrwOptions,
    out_fen: *mut *mut c_char,
    out_info: *mut FenrwMoveInfo,
) -> FenrwStatus {
    guard(|| {
        if out_fen.is_null() {
            return FenrwStatus::NullArgument;
        }
        let (fen, mv) = match (read_str(fen), read_str(mv)) {
            (Ok(f), Ok(m)) => (f, m),
            (Err(st), _) | (_, Err(st)) => return st,
        };
        match apply_move(fen, mv, options.into()) {
            Ok(outcome) => {
                if !out_info.is_null() {
                    *out_info = move_info(&outcome);
                }
                write_string(out_fen, outcome.fen_after)
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Converts comma-separated legacy Forsyth text to a FEN placement field.
#[no_mangle]
pub unsafe extern "C" fn fenrw_convert_forsyth(text: *const c_char, out_placement: *mut *mut c_char) -> FenrwStatus {
    guard(|| {
        if out_placement.is_null() {
            return FenrwStatus::NullArgument;
        }
        let text = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_legacy_forsyth(text) {
            Ok(p) => write_string(out_placement, p.join("/")),
            Err(e) => (&e).into(),
        }
    })
}

/// Creates a position handle from `fen`, validated at `options.validation`.
#[no_mangle]
pub unsafe extern "C" fn fenrw_position_new(
    fen: *const c_char,
    options: FenrwOptions,
    out_position: *mut *mut FenrwPosition,
) -> FenrwStatus {
    guard(|| {
        if out_position.is_null() {
            return FenrwStatus::NullArgument;
        }
        let fen = match read_str(fen) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let opts: ApplyOptions = options.into();
        match FenRecord::parse_with(fen, opts.validation) {
            Ok(r) => {
                let handle = FenrwPosition {
                    fen: CString::new(r.to_string()).expect("no interior NUL"),
                    opts,
                };
                *out_position = Box::into_raw(Box::new(handle));
                FenrwStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Advances the position by one move. On error the position is unchanged.
/// `out_info` may be null.
#[no_mangle]
pub unsafe extern "C" fn fenrw_position_apply(
    position: *mut FenrwPosition,
    mv: *const c_char,
    out_info: *mut FenrwMoveInfo,
) -> FenrwStatus {
    guard(|| {
        let Some(pos) = position.as_mut() else {
            return FenrwStatus::NullArgument;
        };
        let mv = match read_str(mv) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let fen = pos.fen.to_str().expect("stored FEN is UTF-8");
        match apply_move(fen, mv, pos.opts) {
            Ok(outcome) => {
                if !out_info.is_null() {
                    *out_info = move_info(&outcome);
                }
                pos.fen = CString::new(outcome.fen_after).expect("no interior NUL");
                FenrwStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// Current FEN of the position. The pointer is borrowed from the handle and
/// stays valid until the next successful `fenrw_position_apply` or
/// `fenrw_position_free`. Returns null for a null handle.
#[no_mangle]
pub unsafe extern "C" fn fenrw_position_fen(position: *const FenrwPosition) -> *const c_char {
    match position.as_ref() {
        Some(pos) => pos.fen.as_ptr(),
        None => ptr::null(),
    }
}

/// Releases a position handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fenrw_position_free(position: *mut FenrwPosition) {
    if !position.is_null() {
        drop(Box::from_raw(position));
    }
}
