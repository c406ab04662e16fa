#ifndef SYNCBURST_H
#define SYNCBURST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SnbStatus {
  SNB_STATUS_OK = 0,
  SNB_STATUS_NULL_POINTER = 1,
  SNB_STATUS_INVALID_ARGUMENT = 2,
  SNB_STATUS_PARSE = 3,
  SNB_STATUS_IO = 4,
  SNB_STATUS_DEGENERATE = 5,
  SNB_STATUS_NUMERIC = 6,
  SNB_STATUS_PANIC = 7,
} SnbStatus;

/**
 * Opaque graph handle.
 */
typedef struct SnbGraph SnbGraph;

/**
 * Opaque layout handle; coordinates are normalized into `[0, 1]`.
 */
typedef struct SnbLayout SnbLayout;

typedef struct SnbRunConfig {
  uint64_t seed;
  /**
   * Iterations are this multiple of n (20 by default).
   */
  uint32_t iterations_multiplier;
  /**
   * Sync parameter for SnB; zero or negative derives it from betweenness.
   */
  double sync_param;
} SnbRunConfig;

typedef struct SnbMetrics {
  size_t crossings;
  double avg_crossing_angle;
  /**
   * NaN when no two edges share a vertex.
   */
  double avg_adjacent_angle;
  double edge_length_stdev;
  double min_pair_distance_scaled;
  double vertex_distribution;
  double drawing_area;
} SnbMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *snb_last_error_message(void);

/**
 * Parses an edge list or GraphML document (NUL-terminated UTF-8).
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
enum SnbStatus snb_graph_parse(const char *text, struct SnbGraph **out);

/**
 * Builds a graph from `m` pairs stored as `edges[2k], edges[2k+1]`.
 *
 * # Safety
 * `edges` must point to `2*m` readable values (may be null when `m` is 0).
 */
enum SnbStatus snb_graph_from_edges(size_t n, const size_t *edges, size_t m, struct SnbGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SnbStatus snb_graph_queen(size_t rows, size_t cols, struct SnbGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SnbStatus snb_graph_wagner(struct SnbGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SnbStatus snb_graph_heawood(struct SnbGraph **out);

/**
 * Preferential-attachment graph with exactly `target_m` edges.
 *
 * # Safety
 * `out` must be writable.
 */
enum SnbStatus snb_graph_scale_free(size_t n,
                                    size_t target_m,
                                    uint64_t seed,
                                    struct SnbGraph **out);

/**
 * Uniformly grown connected graph with `m` edges.
 *
 * # Safety
 * `out` must be writable.
 */
enum SnbStatus snb_graph_random(size_t n, size_t m, uint64_t seed, struct SnbGraph **out);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t snb_graph_vertex_count(const struct SnbGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t snb_graph_edge_count(const struct SnbGraph *g);

/**
 * `s = min(4, 20 / stdev(betweenness))`.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum SnbStatus snb_graph_sync_param(const struct SnbGraph *g, double *out);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void snb_graph_free(struct SnbGraph *g);

struct SnbRunConfig snb_run_config_default(void);

/**
 * Sync-and-Burst layout. A null `config` means the defaults.
 *
 * # Safety
 * `g` must be a live graph handle; `config` null or readable; `out` writable.
 */
enum SnbStatus snb_layout_snb(const struct SnbGraph *g,
                              const struct SnbRunConfig *config,
                              struct SnbLayout **out);

/**
 * Fruchterman-Reingold layout with the same iteration budget; `sync_param` is ignored.
 *
 * # Safety
 * As for [`snb_layout_snb`].
 */
enum SnbStatus snb_layout_fr(const struct SnbGraph *g,
                             const struct SnbRunConfig *config,
                             struct SnbLayout **out);

/**
 * Number of vertices in the layout, or 0 for a null handle.
 *
 * # Safety
 * `l` must be null or a live layout handle.
 */
size_t snb_layout_len(const struct SnbLayout *l);

/**
 * Copies interleaved `x0, y0, x1, y1, ...` into `xy`, which holds `capacity` doubles.
 *
 * # Safety
 * `l` must be a live layout handle; `xy` must hold `capacity` writable doubles.
 */
enum SnbStatus snb_layout_coords(const struct SnbLayout *l, double *xy, size_t capacity);

/**
 * # Safety
 * `l` must be null or a handle not yet freed.
 */
void snb_layout_free(struct SnbLayout *l);

/**
 * Scores `l` as a drawing of `g`.
 *
 * # Safety
 * `g` and `l` must be live handles; `out` must be writable.
 */
enum SnbStatus snb_metrics(const struct SnbGraph *g,
                           const struct SnbLayout *l,
                           struct SnbMetrics *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYNCBURST_H */
