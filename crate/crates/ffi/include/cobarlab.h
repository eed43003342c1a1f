#ifndef COBARLAB_H
#define COBARLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum CobarStatus {
  COBAR_STATUS_OK = 0,
  COBAR_STATUS_NULL_ARGUMENT = 1,
  COBAR_STATUS_INVALID_UTF8 = 2,
  COBAR_STATUS_PANIC = 3,
  COBAR_STATUS_INVALID_FIELD = 10,
  COBAR_STATUS_PARSE = 11,
  COBAR_STATUS_UNKNOWN_NAME = 12,
  COBAR_STATUS_DEGREE = 13,
  COBAR_STATUS_DIMENSION_MISMATCH = 14,
  COBAR_STATUS_EQUIVARIANCE = 15,
  COBAR_STATUS_MAURER_CARTAN = 16,
  COBAR_STATUS_NOT_CLOSED = 17,
  COBAR_STATUS_D_SQUARED = 18,
  COBAR_STATUS_CODERIVATION = 19,
  COBAR_STATUS_REGIME = 20,
  COBAR_STATUS_WINDOW_NOT_CERTIFIED = 21,
  COBAR_STATUS_NOT_CHAIN_MAP = 22,
  COBAR_STATUS_ARITY = 23,
  COBAR_STATUS_MISMATCH = 24,
  COBAR_STATUS_CHARACTERISTIC = 25,
  COBAR_STATUS_UNSUPPORTED = 26,
  COBAR_STATUS_VALIDATION = 27,
} CobarStatus;

/**
 * A finished report: its verdict as an exit code, a text rendering and a
 * JSON twin.
 */
typedef struct CobarReport CobarReport;

/**
 * A loaded, validated workspace.
 */
typedef struct CobarWorkspace CobarWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *cobarlab_last_error_message(void);

/**
 * Loads a workspace from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum CobarStatus cobarlab_workspace_from_json(const char *json, struct CobarWorkspace **out);

/**
 * Loads one of the bundled workspaces by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum CobarStatus cobarlab_workspace_from_fixture(const char *name, struct CobarWorkspace **out);

/**
 * # Safety
 * `ws` must be null or a handle from this library, freed at most once.
 */
void cobarlab_workspace_free(struct CobarWorkspace *ws);

/**
 * Runs every validator on a JSON workspace. Invalid objects are part of the
 * report, not a failure.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum CobarStatus cobarlab_validate(const char *json, struct CobarReport **out);

/**
 * Builds `Ω_α X` up to `max_weight` on the default window.
 *
 * # Safety
 * `ws` must be a live handle, the names NUL-terminated strings, `out` writable.
 */
enum CobarStatus cobarlab_cobar(const struct CobarWorkspace *ws,
                                const char *coalgebra,
                                const char *twisting,
                                uint32_t max_weight,
                                struct CobarReport **out);

/**
 * Level-by-level weak-equivalence verdicts. Exit code 0, 1 or 2 for stable
 * yes, stable no, unstable.
 *
 * # Safety
 * As for `cobarlab_cobar`; `levels` points to `len` values.
 */
enum CobarStatus cobarlab_weq(const struct CobarWorkspace *ws,
                              const char *morphism,
                              const char *twisting,
                              const uint32_t *levels,
                              uintptr_t len,
                              uintptr_t stability,
                              struct CobarReport **out);

/**
 * Span-membership certificate for a class. Exit code 0 when it stably
 * survives, 1 when stably a boundary, 2 otherwise.
 *
 * # Safety
 * As for `cobarlab_weq`.
 */
enum CobarStatus cobarlab_survives(const struct CobarWorkspace *ws,
                                   const char *coalgebra,
                                   const char *twisting,
                                   const char *class_,
                                   const uint32_t *levels,
                                   uintptr_t len,
                                   uintptr_t stability,
                                   struct CobarReport **out);

/**
 * The full reproduction report; `field` may be null for ℚ.
 *
 * # Safety
 * `field` must be null or NUL-terminated, `out` writable.
 */
enum CobarStatus cobarlab_paper_report(const char *field, struct CobarReport **out);

/**
 * # Safety
 * `r` must be a live report handle.
 */
int32_t cobarlab_report_exit_code(const struct CobarReport *r);

/**
 * Borrowed; valid until the report is freed.
 *
 * # Safety
 * `r` must be a live report handle.
 */
const char *cobarlab_report_text(const struct CobarReport *r);

/**
 * Borrowed; valid until the report is freed.
 *
 * # Safety
 * `r` must be a live report handle.
 */
const char *cobarlab_report_json(const struct CobarReport *r);

/**
 * # Safety
 * `r` must be null or a handle from this library, freed at most once.
 */
void cobarlab_report_free(struct CobarReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COBARLAB_H */
