#ifndef PLABICA_H
#define PLABICA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlabicaStatus {
  PLABICA_STATUS_OK = 0,
  PLABICA_STATUS_NULL_POINTER = 1,
  PLABICA_STATUS_INVALID_UTF8 = 2,
  PLABICA_STATUS_OUT_OF_RANGE = 3,
  PLABICA_STATUS_INVALID = 4,
  PLABICA_STATUS_MISMATCH = 5,
  PLABICA_STATUS_MALFORMED = 6,
  PLABICA_STATUS_NOT_REDUCED = 7,
  PLABICA_STATUS_LABEL_ABSENT = 8,
  PLABICA_STATUS_FROZEN = 9,
  PLABICA_STATUS_NOT_MUTABLE = 10,
  PLABICA_STATUS_PRECONDITION = 11,
  PLABICA_STATUS_BUDGET = 12,
  PLABICA_STATUS_UNBOUNDED = 13,
  PLABICA_STATUS_ARITHMETIC = 14,
  PLABICA_STATUS_PARSE = 15,
  PLABICA_STATUS_IO = 16,
  PLABICA_STATUS_PANIC = 17,
} PlabicaStatus;

// Opaque graph handle.
typedef struct PlabicaGraph PlabicaGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds `family` (`rec`, `ch`, `dual-rec` or `dual-ch`) for `Gr(k, n)`.
//
// # Safety
// `family` must be a NUL-terminated string and `out` a valid pointer.
enum PlabicaStatus plabica_graph_build(const char *family,
                                       size_t k,
                                       size_t n,
                                       struct PlabicaGraph **out);

// Parses graph JSON as produced by `plabica_graph_to_json`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum PlabicaStatus plabica_graph_from_json(const char *json, struct PlabicaGraph **out);

// Releases a graph handle; null is ignored.
//
// # Safety
// `g` must come from this library and not have been freed.
void plabica_graph_free(struct PlabicaGraph *g);

// Number of faces, boundary faces included.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum PlabicaStatus plabica_graph_face_count(const struct PlabicaGraph *g, size_t *out);

// `{"k":..,"n":..,"labels":[[..]..],"right_labels":[[..]..]}`.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum PlabicaStatus plabica_graph_labels_json(const struct PlabicaGraph *g, char **out);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum PlabicaStatus plabica_graph_to_json(const struct PlabicaGraph *g, char **out);

// Mutates at the face with left label `label` (e.g. `"1,4,6"`). The input
// handle is left unchanged; the mutated graph goes to `out` and, if
// `new_label` is not null, the replacing label to `new_label`.
//
// # Safety
// `g` must be a live handle, `label` a NUL-terminated string, `out` a
// valid pointer and `new_label` valid or null.
enum PlabicaStatus plabica_graph_mutate(const struct PlabicaGraph *g,
                                        const char *label,
                                        struct PlabicaGraph **out,
                                        char **new_label);

// Applies `σ^shift`, or `σ^shift τ` when `reflected`.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum PlabicaStatus plabica_graph_dihedral_act(const struct PlabicaGraph *g,
                                              int64_t shift,
                                              bool reflected,
                                              struct PlabicaGraph **out);

// The superpotential in the seed of `g` as text, searching at most `budget` mutations per term.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum PlabicaStatus plabica_graph_superpotential(const struct PlabicaGraph *g,
                                                size_t budget,
                                                char **out);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void plabica_string_free(char *s);

// Message for the last failed call on this thread, or null after a
// success. Valid until the next call into the library on this thread.
const char *plabica_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLABICA_H */
