#ifndef INVFIELD_INVFIELD_H
#define INVFIELD_INVFIELD_H

/*
 * C interface to libinvfield.
 *
 * Every function returns an invfield_status; on failure a message is
 * available from invfield_last_error() (thread-local, valid until the next
 * call on the same thread). Strings returned through char** are owned by the
 * caller and released with invfield_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  INVFIELD_OK = 0,
  INVFIELD_INVALID_ARGUMENT = 1,
  INVFIELD_DOMAIN = 2,
  INVFIELD_MISMATCH = 3,
  INVFIELD_DIVISION_BY_ZERO = 4,
  INVFIELD_NOT_FOUND = 5,
  INVFIELD_CAP_EXCEEDED = 6,
  INVFIELD_INFEASIBLE = 7,
  INVFIELD_PARSE = 8,
  INVFIELD_IO = 9,
  INVFIELD_INTERNAL = 10
} invfield_status;

typedef struct invfield_poly invfield_poly;
typedef struct invfield_cert invfield_cert;
typedef struct invfield_report invfield_report;

const char* invfield_version(void);
const char* invfield_last_error(void);
const char* invfield_status_name(invfield_status s);
void invfield_string_free(char* s);

/* Invariants. q is a prime power with a built-in modulus. */
invfield_status invfield_invariant(int q, int n, int m, int d, const char* label, invfield_poly** out);
invfield_status invfield_poly_str(const invfield_poly* p, char** out);
invfield_status invfield_poly_equal(const invfield_poly* a, const invfield_poly* b, int* out);
void invfield_poly_free(invfield_poly* p);

/* One "label = polynomial" line per member of a named set
 * (thm_GL, thm_SL, thm_UU, prec_GL, prec_SL, prec_U, pGL, pSL, pU_n1..3). */
invfield_status invfield_dump_set(int q, int n, int m, int d, const char* set_name, char** out);

/* Certificates. theorem is "GL", "SL", "UU" or "pU3". */
invfield_status invfield_cert_build(const char* theorem, int q, int n, int m, int d, invfield_cert** out);
invfield_status invfield_cert_from_json(const char* text, invfield_cert** out);
invfield_status invfield_cert_to_json(const invfield_cert* c, char** out);
size_t invfield_cert_step_count(const invfield_cert* c);
/* Adds the leading numerator monomial of one step; for negative controls. */
invfield_status invfield_cert_corrupt(const invfield_cert* c, size_t step, invfield_cert** out);
/* *passed is 1 iff every step verifies and the chain is closed; text lists one line per step. */
invfield_status invfield_cert_verify(const invfield_cert* c, int* passed, char** text);
void invfield_cert_free(invfield_cert* c);

/* Suites. families: "GL,SL,U"; grid: "n=2,q=2,m=2,d=2;..." (NULL: default
 * grid); suites: "all" or a comma-separated list (NULL: all). Inapplicable
 * explicit suites and malformed input give INVFIELD_INVALID_ARGUMENT. */
invfield_status invfield_suite_run(const char* families, const char* grid, const char* suites, uint64_t seed,
                                   uint64_t cap, int timing, unsigned threads, invfield_report** out);
invfield_status invfield_report_json(const invfield_report* r, char** out);
invfield_status invfield_report_text(const invfield_report* r, char** out);
int invfield_report_all_passed(const invfield_report* r);
/* verdict: "pass", "fail" or "inconclusive". */
size_t invfield_report_count(const invfield_report* r, const char* verdict);
void invfield_report_free(invfield_report* r);

#ifdef __cplusplus
}
#endif

#endif
