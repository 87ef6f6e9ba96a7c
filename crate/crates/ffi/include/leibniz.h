#ifndef LEIBNIZ_H
#define LEIBNIZ_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LzStatus {
  LZ_STATUS_OK = 0,
  LZ_STATUS_NULL_POINTER = 1,
  LZ_STATUS_INVALID_UTF8 = 2,
  LZ_STATUS_PARSE_ERROR = 3,
  LZ_STATUS_VALIDATION_ERROR = 4,
  LZ_STATUS_IO_ERROR = 5,
  /*
   A mathematical check failed (for example an identity violation).
   */
  LZ_STATUS_MATH_FAILURE = 6,
  /*
   Undecidable, or eigenvalues outside the rationals.
   */
  LZ_STATUS_UNDECIDABLE = 7,
  LZ_STATUS_PANIC = 8,
} LzStatus;

/*
 Opaque algebra handle.
 */
typedef struct LzAlgebra LzAlgebra;

/*
 Message of the last error on this thread, or NULL. The pointer stays
 valid until the next library call on the same thread.
 */
const char *lz_last_error_message(void);

/*
 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LzStatus lz_algebra_from_json(const char *json, struct LzAlgebra **out);

/*
 # Safety
 `path` must be a NUL-terminated string; `out` must be writable.
 */
enum LzStatus lz_algebra_load(const char *path, struct LzAlgebra **out);

/*
 Rationals are strings such as `"3"` or `"-1/2"`.

 # Safety
 `alpha` and `beta` must be NUL-terminated strings; `out` must be writable.
 */
enum LzStatus lz_construct_sl22(const char *alpha, const char *beta, struct LzAlgebra **out);

/*
 # Safety
 `alpha` and `beta` must be NUL-terminated strings; `out` must be writable.
 */
enum LzStatus lz_construct_sl2n(int64_t n,
                                const char *alpha,
                                const char *beta,
                                struct LzAlgebra **out);

/*
 # Safety
 `out` must be writable.
 */
enum LzStatus lz_construct_standard(int64_t n, struct LzAlgebra **out);

/*
 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_algebra_dim(const struct LzAlgebra *alg, size_t *out);

/*
 Canonical JSON file text; release with `lz_string_free`.

 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_algebra_to_json(const struct LzAlgebra *alg, char **out);

/*
 Writes whether the Leibniz identity holds on all basis triples.

 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_verify_leibniz(const struct LzAlgebra *alg, bool *out);

/*
 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_annihilator_dim(const struct LzAlgebra *alg, size_t *out);

/*
 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_is_simple(const struct LzAlgebra *alg, bool *out);

/*
 Classification payload as JSON (the `result` object of the command-line
 report); release with `lz_string_free`.

 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_classify_json(const struct LzAlgebra *alg, char **out);

/*
 Root data for a Cartan subalgebra found with `seed`, as JSON; release
 with `lz_string_free`.

 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum LzStatus lz_roots_json(const struct LzAlgebra *alg, uint64_t seed, char **out);

/*
 # Safety
 `s` must come from this library and not be freed twice; NULL is ignored.
 */
void lz_string_free(char *s);

/*
 # Safety
 `alg` must come from this library and not be freed twice; NULL is ignored.
 */
void lz_algebra_free(struct LzAlgebra *alg);

#endif  /* LEIBNIZ_H */
