#ifndef TJM_H
#define TJM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TjmError {
  TJM_ERROR_OK = 0,
  TJM_ERROR_NULL_POINTER = 1,
  TJM_ERROR_INVALID_UTF8 = 2,
  TJM_ERROR_PARSE = 3,
  TJM_ERROR_OUT_OF_RANGE = 4,
  TJM_ERROR_UNSUPPORTED = 5,
  TJM_ERROR_CONSISTENCY = 6,
  TJM_ERROR_PANIC = 7,
} TjmError;

typedef enum TjmStatus {
  TJM_STATUS_ZERO = 0,
  TJM_STATUS_NON_ZERO = 1,
  TJM_STATUS_UNKNOWN = 2,
} TjmStatus;

/*
 A parsed representation expression.
 */
typedef struct TjmExpr TjmExpr;

/*
 The filtration verdict for `rho1 x rho2`.
 */
typedef struct TjmVerdict TjmVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static string. Do not free.
 */
const char *tjm_version(void);

/*
 Message for the last failed call on this thread, or NULL. The pointer is
 valid until the next failing call on the same thread. Do not free.
 */
const char *tjm_last_error_message(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library and not yet freed.
 */
void tjm_string_free(char *s);

/*
 Parse an expression such as `St(2,nu) x St(2,nu^-1)`.

 # Safety
 `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum TjmError tjm_expr_parse(const char *text, struct TjmExpr **out);

/*
 # Safety
 `e` must be NULL or a handle from [`tjm_expr_parse`] not yet freed.
 */
void tjm_expr_free(struct TjmExpr *e);

/*
 Rank `m` of the group `G_m` the expression lives on; 0 for NULL.

 # Safety
 `e` must be NULL or a live handle.
 */
size_t tjm_expr_rank(const struct TjmExpr *e);

/*
 Canonical text of the expression, or NULL for a NULL handle.

 # Safety
 `e` must be NULL or a live handle.
 */
char *tjm_expr_to_string(const struct TjmExpr *e);

/*
 Zelevinsky dual of a multisegment given as text, e.g. `{[-1/2..1/2]}`.

 # Safety
 `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum TjmError tjm_mw_dual(const char *text, char **out);

/*
 Twisted Jacquet module of `rho1 x rho2` on `G_2n`, with `rho1` of rank `r`.

 # Safety
 `rho1`, `rho2` must be live handles and `out` a writable pointer.
 */
enum TjmError tjm_filtration(size_t n,
                             size_t r,
                             const struct TjmExpr *rho1,
                             const struct TjmExpr *rho2,
                             struct TjmVerdict **out);

/*
 # Safety
 `v` must be NULL or a handle from [`tjm_filtration`] not yet freed.
 */
void tjm_verdict_free(struct TjmVerdict *v);

/*
 Overall status; `Unknown` for a NULL handle.

 # Safety
 `v` must be NULL or a live handle.
 */
enum TjmStatus tjm_verdict_status(const struct TjmVerdict *v);

/*
 The resolved `Delta G_n`-module as text, or NULL when unresolved.

 # Safety
 `v` must be NULL or a live handle.
 */
char *tjm_verdict_module(const struct TjmVerdict *v);

/*
 The full verdict, with per-factor twists, as JSON.

 # Safety
 `v` must be NULL or a live handle.
 */
char *tjm_verdict_json(const struct TjmVerdict *v);

/*
 Whether the adjoint-pole predicate predicts a zero module for `e` on
 `G_2n`.

 # Safety
 `e` must be a live handle and `out` a writable pointer.
 */
enum TjmError tjm_conjecture_predicts_zero(const struct TjmExpr *e, size_t n, bool *out);

/*
 Run the `tjm` command line with `argv[0..argc]` (without the program
 name). Stdin is empty, so expression arguments are required. Both output
 strings are always set on success and must be freed.

 # Safety
 `argv` must point to `argc` NUL-terminated strings; the out pointers
 must be writable.
 */
enum TjmError tjm_run(const char *const *argv,
                      size_t argc,
                      char **out_stdout,
                      char **out_stderr,
                      int *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TJM_H */
