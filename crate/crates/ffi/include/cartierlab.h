/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef CARTIERLAB_H
#define CARTIERLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ClStatus {
  CL_STATUS_OK = 0,
  // Null pointer or text that is not UTF-8.
  CL_STATUS_INVALID_ARGUMENT = 1,
  // Polynomial syntax or unknown variable.
  CL_STATUS_PARSE = 2,
  // Input rejected by the library (non-prime modulus, ring mismatch, ...).
  CL_STATUS_VALIDATION = 3,
  CL_STATUS_NOT_STABILIZED = 4,
  CL_STATUS_RESOURCE_CAP = 5,
  // A panic inside the library.
  CL_STATUS_INTERNAL = 6,
} ClStatus;

// Polynomial in a `ClRing`.
typedef struct ClPoly ClPoly;

// Polynomial ring over a prime field.
typedef struct ClRing ClRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the
// library; valid until the next cartierlab call on this thread.
const char *cl_last_error_message(void);

// Creates `F_p[vars]` from a comma-separated variable list such as `"x,y"`.
//
// # Safety
// `vars` must be a nul-terminated string and `out` a valid pointer.
enum ClStatus cl_ring_new(uint64_t p, const char *vars, struct ClRing **out);

// # Safety
// `ring` must come from `cl_ring_new` and not be freed twice. Null is ignored.
void cl_ring_free(struct ClRing *ring);

// Parses a polynomial such as `"x^2 + 3*y"` in `ring`.
//
// # Safety
// `ring` must be a live handle, `s` a nul-terminated string, `out` valid.
enum ClStatus cl_poly_parse(const struct ClRing *ring, const char *s, struct ClPoly **out);

// # Safety
// `poly` must come from this library and not be freed twice. Null is ignored.
void cl_poly_free(struct ClPoly *poly);

// Canonical text of `poly`; release with `cl_string_free`.
//
// # Safety
// `poly` must be a live handle and `out` valid.
enum ClStatus cl_poly_to_string(const struct ClPoly *poly, char **out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void cl_string_free(char *s);

// `Φ^e(F^e_* h·f)`. A null `h` means `h = 1`.
//
// # Safety
// `f` and a non-null `h` must be live handles in the same ring; `out` valid.
enum ClStatus cl_cartier_apply(uint32_t e,
                               const struct ClPoly *h,
                               const struct ClPoly *f,
                               struct ClPoly **out);

// Test ideal `τ(g^{t_num/t_den})` on the polynomial ring of `g`, written to
// `out_ideal` as its canonical string. `e_max = 0` keeps the default.
// `out_stabilized` may be null.
//
// # Safety
// `g` must be a live handle; `out_ideal` valid; `out_stabilized` valid or null.
enum ClStatus cl_tau(const struct ClPoly *g,
                     uint64_t t_num,
                     uint64_t t_den,
                     uint32_t e_max,
                     char **out_ideal,
                     uint32_t *out_stabilized);

// Runs a JSON job and returns its JSON report, which carries its own error
// block. `out_exit_code` (may be null) receives the CLI exit code.
//
// # Safety
// `job` must be a nul-terminated string; `out_report` valid;
// `out_exit_code` valid or null.
enum ClStatus cl_run_job_json(const char *job, char **out_report, int32_t *out_exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTIERLAB_H */
