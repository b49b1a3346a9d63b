/* SPDX-License-Identifier: Apache-2.0 */

/*
 * Build after `cargo build -p fenrw-ffi --release`:
 *
 *   cc -Icrates/ffi/include crates/ffi/examples/play.c \
 *      target/release/libfenrw_ffi.a -lpthread -ldl -lm -o play
 *   ./play e2e4 e7e5 g1f3
 */

#include <stdio.h>

#include "fenrw.h"

int main(int argc, char **argv) {
    const char *start = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";
    FenrwPosition *pos = NULL;
    FenrwStatus st = fenrw_position_new(start, fenrw_default_options(), &pos);
    if (st != FENRW_STATUS_OK) {
        fprintf(stderr, "%s\n", fenrw_status_name(st));
        return 2;
    }

    for (int i = 1; i < argc; i++) {
        FenrwMoveInfo info;
        st = fenrw_position_apply(pos, argv[i], &info);
        if (st != FENRW_STATUS_OK) {
            fprintf(stderr, "ply %d: %s: %s\n", i, argv[i], fenrw_status_name(st));
            fenrw_position_free(pos);
            return 3;
        }
        printf("%s\n", fenrw_position_fen(pos));
    }

    fenrw_position_free(pos);
    return 0;
}
