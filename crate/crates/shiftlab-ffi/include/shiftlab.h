#ifndef SHIFTLAB_H
#define SHIFTLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum SlStatus {
  SlOk = 0,
  /**
   * A required pointer argument was null.
   */
  SlNullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  SlInvalidUtf8 = 2,
  /**
   * The JSON document or word could not be parsed.
   */
  SlParseError = 3,
  /**
   * The request was structurally valid but rejected (reducible matrix,
   * inadmissible word, unsupported operation for the system kind, ...).
   */
  SlInvalidInput = 4,
  /**
   * The system has no natural measure.
   */
  SlNoMeasure = 5,
  /**
   * An iterative computation did not converge within its budget.
   */
  SlNotConverged = 6,
  /**
   * A cross-check between two computations disagreed.
   */
  SlMismatch = 7,
  /**
   * The provided output buffer is too small.
   */
  SlBufferTooSmall = 8,
  /**
   * A panic was caught at the boundary; the handle stays valid.
   */
  SlInternalError = 9,
} SlStatus;

/**
 * Discriminant for the kind of system behind a handle.
 */
typedef enum SlSystemKind {
  SlSft = 0,
  SlSofic = 1,
  SlForbidden = 2,
  SlCountable = 3,
} SlSystemKind;

/**
 * Opaque handle to a loaded shift system.
 */
typedef struct SlSystem SlSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message for the most recent failure on this thread into `buf`
 * (NUL-terminated, truncated to fit). Returns the full message length in
 * bytes, excluding the NUL. A zero-capacity buffer just queries the length.
 */
uintptr_t sl_last_error(char *buf, uintptr_t cap);

/**
 * Parses a system from a JSON document. On success writes a handle that must
 * be released with `sl_system_free`.
 */
enum SlStatus sl_system_from_json(const char *json, struct SlSystem **out);

/**
 * Loads one of the named builtin systems (the same names the CLI accepts,
 * e.g. "golden-mean", "even-shift", "random-walk-z", "context-free").
 */
enum SlStatus sl_system_builtin(const char *name, struct SlSystem **out);

/**
 * Releases a handle. Passing null is a no-op.
 */
void sl_system_free(struct SlSystem *sys);

/**
 * Reports which kind of system the handle holds.
 */
enum SlStatus sl_system_kind(const struct SlSystem *sys, enum SlSystemKind *out);

/**
 * Spectral radius of the system: the Perron eigenvalue of its (possibly
 * truncated) transition structure. `tol` bounds the eigensolve residual.
 */
enum SlStatus sl_spectral_radius(const struct SlSystem *sys, double tol, double *out);

/**
 * Topological entropy, i.e. log of the spectral radius.
 */
enum SlStatus sl_entropy(const struct SlSystem *sys, double tol, double *out);

/**
 * Natural measure of the cylinder on `word` (symbols separated by commas,
 * or one character per symbol). Supported for SFT and sofic handles.
 */
enum SlStatus sl_measure(const struct SlSystem *sys, const char *word, double tol, double *out);

/**
 * Number of admissible words of length `n`, written to `buf` as a decimal
 * string (counts overflow any fixed-width integer).
 */
enum SlStatus sl_word_count(const struct SlSystem *sys, uintptr_t n, char *buf, uintptr_t cap);

/**
 * Number of points of period `n` (sequences fixed by the n-th shift power),
 * written to `buf` as a decimal string.
 */
enum SlStatus sl_periodic_count(const struct SlSystem *sys, uintptr_t n, char *buf, uintptr_t cap);

/**
 * Serializes the system back to its JSON document form.
 */
enum SlStatus sl_system_to_json(const struct SlSystem *sys, char *buf, uintptr_t cap);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SHIFTLAB_H */
