#ifndef HK_H
#define HK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum HkStatus {
  HK_STATUS_OK = 0,
  HK_STATUS_NULL_POINTER = 1,
  HK_STATUS_INVALID_UTF8 = 2,
  HK_STATUS_PARSE_ERROR = 3,
  HK_STATUS_CAP_EXCEEDED = 4,
  HK_STATUS_LIMIT_EXCEEDED = 5,
  HK_STATUS_OUT_OF_RANGE = 6,
  HK_STATUS_INVALID_INPUT = 7,
  HK_STATUS_PANIC = 8,
} HkStatus;

/**
 * A directed graph.
 */
typedef struct HkGraph HkGraph;

/**
 * An enumerated monoid together with the graph it came from.
 */
typedef struct HkMonoid HkMonoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *hk_last_error(void);

/**
 * Parses a graph in the line format or as a DOT digraph.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum HkStatus hk_graph_parse(const char *text, struct HkGraph **out);

/**
 * Builds a graph from a builder expression such as `chain(4)`.
 *
 * # Safety
 * `expr` must be a valid NUL-terminated string; `out` must be writable.
 */
enum HkStatus hk_graph_builder(const char *expr, struct HkGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void hk_graph_free(struct HkGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t hk_graph_vertex_count(const struct HkGraph *g);

/**
 * Enumerates the monoid of `g`, stopping with `CapExceeded` past `cap`
 * elements.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum HkStatus hk_monoid_enumerate(const struct HkGraph *g, size_t cap, struct HkMonoid **out);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void hk_monoid_free(struct HkMonoid *m);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live monoid handle.
 */
size_t hk_monoid_size(const struct HkMonoid *m);

/**
 * Normal form of element `index` in enumeration order, as a newly allocated
 * string (`-` for the identity). Free it with [`hk_string_free`].
 *
 * # Safety
 * `m` must be a live monoid handle; `out` must be writable.
 */
enum HkStatus hk_monoid_normal_form(const struct HkMonoid *m, size_t index, char **out);

/**
 * Number of idempotent elements.
 *
 * # Safety
 * `m` must be a live monoid handle; `out` must be writable.
 */
enum HkStatus hk_monoid_idempotent_count(const struct HkMonoid *m, size_t *out);

/**
 * Checks whether the matrix representation with every edge weight equal to
 * `weight` separates all elements. Writes 1 or 0 to `out`.
 *
 * # Safety
 * `m` must be a live monoid handle; `out` must be writable.
 */
enum HkStatus hk_monoid_check_effective(const struct HkMonoid *m, int64_t weight, int32_t *out);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void hk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HK_H */
