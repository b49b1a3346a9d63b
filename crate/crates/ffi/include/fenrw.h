/* SPDX-License-Identifier: Apache-2.0 */

#ifndef FENRW_H
#define FENRW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FenrwEpMode {
  FENRW_EP_MODE_ALWAYS = 0,
  FENRW_EP_MODE_ADJACENT_ONLY = 1,
} FenrwEpMode;

typedef enum FenrwClockMode {
  FENRW_CLOCK_MODE_STANDARD = 0,
  FENRW_CLOCK_MODE_FROZEN = 1,
} FenrwClockMode;

typedef enum FenrwValidation {
  FENRW_VALIDATION_LENIENT = 0,
  FENRW_VALIDATION_STRICT = 1,
} FenrwValidation;

/**
 * Result codes. Values are stable.
 */
typedef enum FenrwStatus {
  FENRW_STATUS_OK = 0,
  FENRW_STATUS_NULL_ARGUMENT = 1,
  FENRW_STATUS_INVALID_UTF8 = 2,
  FENRW_STATUS_PANIC = 3,
  FENRW_STATUS_SEGMENT_COUNT = 10,
  FENRW_STATUS_RANK_WIDTH = 11,
  FENRW_STATUS_BAD_PIECE_LETTER = 12,
  FENRW_STATUS_ADJACENT_DIGITS = 13,
  FENRW_STATUS_BAD_SIDE_CHAR = 14,
  FENRW_STATUS_BAD_CASTLING_FIELD = 15,
  FENRW_STATUS_BAD_EN_PASSANT_FIELD = 16,
  FENRW_STATUS_BAD_CLOCK = 17,
  FENRW_STATUS_FIELD_COUNT = 18,
  FENRW_STATUS_STRICT_VIOLATION = 19,
  FENRW_STATUS_BAD_MOVE_SYNTAX = 30,
  FENRW_STATUS_BAD_SQUARE = 31,
  FENRW_STATUS_BAD_PROMOTION_PIECE = 32,
  FENRW_STATUS_EMPTY_ORIGIN = 40,
  FENRW_STATUS_WRONG_COLOR = 41,
  FENRW_STATUS_MISSING_PROMOTION = 42,
  FENRW_STATUS_UNEXPECTED_PROMOTION = 43,
  FENRW_STATUS_BAD_CASTLE = 44,
  FENRW_STATUS_SELF_CAPTURE = 45,
  FENRW_STATUS_RESULT_REJECTED = 46,
  FENRW_STATUS_LEGACY_BAD_TOKEN = 60,
  FENRW_STATUS_LEGACY_RANK_WIDTH = 61,
  FENRW_STATUS_LEGACY_GROUP_COUNT = 62,
} FenrwStatus;

typedef enum FenrwSpecial {
  FENRW_SPECIAL_NONE = 0,
  FENRW_SPECIAL_CASTLE_KINGSIDE = 1,
  FENRW_SPECIAL_CASTLE_QUEENSIDE = 2,
  FENRW_SPECIAL_EN_PASSANT_CAPTURE = 3,
  FENRW_SPECIAL_PROMOTION = 4,
} FenrwSpecial;

/**
 * Opaque position handle.
 */
typedef struct FenrwPosition FenrwPosition;

typedef struct FenrwOptions {
  enum FenrwEpMode ep_mode;
  enum FenrwClockMode clock_mode;
  enum FenrwValidation validation;
} FenrwOptions;

/**
 * Details of an applied move. Unused entries of `segments` are 255.
 */
typedef struct FenrwMoveInfo {
  uint8_t segment_count;
  uint8_t segments[2];
  bool was_capture;
  bool was_pawn_move;
  enum FenrwSpecial special;
} FenrwMoveInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Defaults: en passant always, standard clocks, lenient validation.
 */
struct FenrwOptions fenrw_default_options(void);

/**
 * Static, NUL-terminated name of a status code. Never null.
 */
const char *fenrw_status_name(enum FenrwStatus status);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void fenrw_string_free(char *s);

/**
 * Parses `fen` and writes its canonical form to `*out_fen`.
 */
enum FenrwStatus fenrw_validate(const char *fen,
                                enum FenrwValidation validation_level,
                                char **out_fen);

/**
 * Applies `mv` to `fen`. `out_info` may be null.
 */
enum FenrwStatus fenrw_apply_move(const char *fen,
                                  const char *mv,
                                  struct FenrwOptions options,
                                  char **out_fen,
                                  struct FenrwMoveInfo *out_info);

/**
 * Converts comma-separated legacy Forsyth text to a FEN placement field.
 */
enum FenrwStatus fenrw_convert_forsyth(const char *text, char **out_placement);

/**
 * Creates a position handle from `fen`, validated at `options.validation`.
 */
enum FenrwStatus fenrw_position_new(const char *fen,
                                    struct FenrwOptions options,
                                    struct FenrwPosition **out_position);

/**
 * Advances the position by one move. On error the position is unchanged.
 * `out_info` may be null.
 */
enum FenrwStatus fenrw_position_apply(struct FenrwPosition *position,
                                      const char *mv,
                                      struct FenrwMoveInfo *out_info);

/**
 * Current FEN of the position. The pointer is borrowed from the handle and
 * stays valid until the next successful `fenrw_position_apply` or
 * `fenrw_position_free`. Returns null for a null handle.
 */
const char *fenrw_position_fen(const struct FenrwPosition *position);

/**
 * Releases a position handle. Null is ignored.
 */
void fenrw_position_free(struct FenrwPosition *position);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FENRW_H */
