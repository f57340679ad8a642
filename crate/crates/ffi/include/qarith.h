#ifndef QARITH_H
#define QARITH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  QARITH_STATUS_OK = 0,
  QARITH_STATUS_NULL_POINTER = 1,
  QARITH_STATUS_INVALID_UTF8 = 2,
  QARITH_STATUS_PARSE = 3,
  QARITH_STATUS_INVALID_PARAM = 4,
  QARITH_STATUS_UNKNOWN_NAME = 5,
  QARITH_STATUS_POLICY = 6,
  QARITH_STATUS_CAPACITY = 7,
  QARITH_STATUS_DISCONNECTED = 8,
  QARITH_STATUS_INTERNAL = 9,
} QarithStatus;

/**
 * Opaque circuit handle.
 */
typedef struct QarithCircuit QarithCircuit;

/**
 * Resource counts of a circuit.
 */
typedef struct {
  size_t depth;
  size_t t_depth;
  size_t t_count;
  size_t cnot_count;
  size_t measurement_count;
  size_t width;
  size_t kq;
  size_t kq_t;
  /**
   * Toffoli-like gates that were not lowered.
   */
  size_t unexpanded;
} QarithReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next
 * failing call; never null.
 */
const char *qarith_last_error(void);

/**
 * Library version as a static string.
 */
const char *qarith_version(void);

/**
 * Builds an arithmetic circuit at Toffoli level. `family` is one of
 * `ctrl-adder`, `takahashi`, `cla`, `multiplier`.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` a writable pointer.
 */
QarithStatus qarith_circuit_build(const char *family, size_t n, QarithCircuit **out);

/**
 * Parses circuit text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
QarithStatus qarith_circuit_parse(const char *text, QarithCircuit **out);

/**
 * Lowers every Toffoli of `circuit` with `decomp` (`st`, `0at3`, `4at1`,
 * `rt3`, `rt4`, `and`, `barenco`). With `odb`, eligible compute/uncompute
 * pairs use measurement-based uncomputation. The input is left untouched.
 *
 * # Safety
 * `circuit` must be a live handle, `decomp` a NUL-terminated string and
 * `out` a writable pointer.
 */
QarithStatus qarith_circuit_expand(const QarithCircuit *circuit,
                                   const char *decomp,
                                   bool odb,
                                   QarithCircuit **out);

/**
 * Number of operations, or 0 for a null handle.
 *
 * # Safety
 * `circuit` must be null or a live handle.
 */
size_t qarith_circuit_len(const QarithCircuit *circuit);

/**
 * ASAP resource report. With `sequential_t`, T gates never share a layer.
 *
 * # Safety
 * `circuit` must be a live handle and `out` a writable pointer.
 */
QarithStatus qarith_circuit_report(const QarithCircuit *circuit,
                                   bool sequential_t,
                                   QarithReport *out);

/**
 * Circuit text; release with `qarith_string_free`.
 *
 * # Safety
 * `circuit` must be a live handle and `out` a writable pointer.
 */
QarithStatus qarith_circuit_to_text(const QarithCircuit *circuit, char **out);

/**
 * # Safety
 * `circuit` must be null or a handle from this library not yet freed.
 */
void qarith_circuit_free(QarithCircuit *circuit);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void qarith_string_free(char *s);

/**
 * Characteristic path length and clustering coefficient of a shipped
 * coupling graph.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `cpl_out` and `cc_out` writable.
 */
QarithStatus qarith_graph_metrics(const char *name, double *cpl_out, double *cc_out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QARITH_H */
