#ifndef MAGSPEC_H
#define MAGSPEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result code of every `mgs_` function.
typedef enum MgsStatus {
  MGS_STATUS_OK = 0,
  MGS_STATUS_NULL_POINTER = 1,
  MGS_STATUS_INVALID_UTF8 = 2,
  MGS_STATUS_PARSE = 3,
  MGS_STATUS_IO = 4,
  MGS_STATUS_INVALID_INPUT = 5,
  // A computed certificate or bracket failed its numerical check.
  MGS_STATUS_VERIFICATION_FAILED = 6,
  // The output buffer is too short; the required length was written.
  MGS_STATUS_BUFFER_TOO_SMALL = 7,
  // A Rust panic was caught at the boundary.
  MGS_STATUS_PANIC = 8,
} MgsStatus;

// Opaque graph handle.
typedef struct MgsGraph MgsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or an empty string.
//
// The pointer stays valid until the next `mgs_` call on the same thread.
const char *mgs_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *mgs_version(void);

// Parses a graph file given as a NUL-terminated JSON string.
//
// # Safety
// `json` must be NUL-terminated and `out` must point to writable storage
// for one pointer.
enum MgsStatus mgs_graph_from_json(const char *json, struct MgsGraph **out);

// Reads a graph file from `path`.
//
// # Safety
// `path` must be NUL-terminated and `out` must point to writable storage
// for one pointer.
enum MgsStatus mgs_graph_load(const char *path, struct MgsGraph **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `graph` must be null or a handle returned by this library that has not
// been freed yet.
void mgs_graph_free(struct MgsGraph *graph);

// Serialises a graph back to JSON.
//
// # Safety
// `graph` must be a live handle and `out` writable storage for one pointer.
enum MgsStatus mgs_graph_to_json(const struct MgsGraph *graph, char **out);

// Writes the numbers of vertices and edges.
//
// # Safety
// `graph` must be a live handle; `vertices` and `edges` must be writable.
enum MgsStatus mgs_graph_counts(const struct MgsGraph *graph, size_t *vertices, size_t *edges);

// Creates a new handle holding the Floquet graph at parameter `t`, with no cocycle.
//
// # Safety
// `graph` must be a live handle and `out` writable storage for one pointer.
enum MgsStatus mgs_graph_floquet(const struct MgsGraph *graph, double t, struct MgsGraph **out);

// Eigenvalues at Floquet parameter `t` in ascending order.
//
// Writes the number of eigenvalues to `len`. If `capacity` is smaller, no
// values are written and [`MgsStatus::BufferTooSmall`] is returned.
//
// # Safety
// `graph` must be a live handle, `len` writable, and `values` valid for
// `capacity` writes (it may be null when `capacity` is 0).
enum MgsStatus mgs_spectrum(const struct MgsGraph *graph,
                            double t,
                            double *values,
                            size_t capacity,
                            size_t *len);

// Tests `σ(a_t) ≼_r σ(b_t)` with tolerance `tol`.
//
// `witness` receives the first failing index (counted from one), or 0.
//
// # Safety
// `a` and `b` must be live handles; `holds` and `witness` must be writable.
enum MgsStatus mgs_shift_less(const struct MgsGraph *a,
                              const struct MgsGraph *b,
                              double t,
                              size_t r,
                              double tol,
                              bool *holds,
                              size_t *witness);

// Certifies an elementary perturbation and returns the certificate as JSON.
//
// `request` is a JSON object with `"operation"` set to one of
// `delete-edge`, `contract-vertices`, `contract-edge`, `contract-pendant`
// or `delete-vertex`, the operands `"edge"`, `"v1"`/`"v2"` or `"vertex"`,
// and an optional `"hypothesis"` (required for custom weights).
//
// # Safety
// `graph` must be a live handle, `request` NUL-terminated, and `out`
// writable storage for one pointer.
enum MgsStatus mgs_certify(const struct MgsGraph *graph, const char *request, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library that has not been
// freed yet.
void mgs_string_free(char *s);

// Frustration index at parameter `t`. `exact` tells whether the value is
// certified minimal.
//
// # Safety
// `graph` must be a live handle; `value` and `exact` must be writable.
enum MgsStatus mgs_frustration_index(const struct MgsGraph *graph,
                                     double t,
                                     double *value,
                                     bool *exact);

// `k`-way Cheeger constant at parameter `t`.
//
// # Safety
// `graph` must be a live handle and `value` writable.
enum MgsStatus mgs_cheeger(const struct MgsGraph *graph, double t, size_t k, double *value);

// Number of spanning trees of the underlying multigraph.
//
// # Safety
// `graph` must be a live handle and `count` writable.
enum MgsStatus mgs_spanning_tree_count(const struct MgsGraph *graph, double *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAGSPEC_H */
