#ifndef GGC_H
#define GGC_H

/* Generated by cbindgen from ggc-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible entry point.
typedef enum GgcStatus {
  GgcOk = 0,
  GgcNullPointer = 1,
  GgcInvalidUtf8 = 2,
  GgcParseError = 3,
  GgcCapExceeded = 4,
  GgcInvalidArgument = 5,
  GgcInternalError = 6,
} GgcStatus;

// Which conflict graph a game is played on.
typedef enum GgcMode {
  GgcModeVertex = 0,
  GgcModeEdge = 1,
  GgcModeTotal = 2,
} GgcMode;

// Winner of a solved game.
typedef enum GgcWinner {
  GgcWinnerAlice = 0,
  GgcWinnerBob = 1,
} GgcWinner;

// Opaque graph handle.
typedef struct GgcGraph GgcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a graph6 string into a new graph handle. On success `*out` owns
// the graph; release it with `ggc_graph_free`.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum GgcStatus ggc_graph_parse_g6(const char *text, struct GgcGraph **out);

// Releases a graph handle. A null pointer is a no-op.
//
// # Safety
// `g` must be null or a pointer returned by `ggc_graph_parse_g6`, not yet
// freed.
void ggc_graph_free(struct GgcGraph *g);

// Vertex count, edge count, and maximum degree of a graph.
//
// # Safety
// All pointers must be valid; `g` must be a live graph handle.
enum GgcStatus ggc_graph_counts(const struct GgcGraph *g,
                                uint32_t *out_n,
                                uint32_t *out_m,
                                uint32_t *out_max_degree);

// graph6 encoding of a graph; free the returned string with
// `ggc_string_free`.
//
// # Safety
// `g` must be a live graph handle.
char *ggc_graph_to_g6(const struct GgcGraph *g);

// Game chromatic number of the graph in the given mode (total mode is the
// total game chromatic number).
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum GgcStatus ggc_game_chromatic(const struct GgcGraph *g, enum GgcMode mode, uint32_t *out);

// Game coloring number of the graph in the given mode (total mode is the
// total game coloring number).
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum GgcStatus ggc_game_coloring_number(const struct GgcGraph *g, enum GgcMode mode, uint32_t *out);

// Winner of the coloring game with `k` colors.
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum GgcStatus ggc_coloring_winner(const struct GgcGraph *g,
                                   enum GgcMode mode,
                                   uint32_t k,
                                   enum GgcWinner *out);

// Winner of the marking game with parameter `k`.
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum GgcStatus ggc_marking_winner(const struct GgcGraph *g,
                                  enum GgcMode mode,
                                  uint32_t k,
                                  enum GgcWinner *out);

// Minimum possible maximum outdegree over all orientations.
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum GgcStatus ggc_min_max_outdegree(const struct GgcGraph *g, uint32_t *out);

// Exact chromatic number of the graph's conflict graph in the given mode.
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum GgcStatus ggc_offline_chromatic(const struct GgcGraph *g, enum GgcMode mode, uint32_t *out);

// Message for the most recent error on this thread, or null when none.
// Free the result with `ggc_string_free`.
char *ggc_last_error_message(void);

// Releases a string returned by this library. A null pointer is a no-op.
//
// # Safety
// `s` must be null or a string pointer returned by this library, not yet
// freed.
void ggc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GGC_H */
