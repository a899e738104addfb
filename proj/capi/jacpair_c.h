#ifndef JACPAIR_C_H
#define JACPAIR_C_H

/* C interface to the toolkit.  All functions return an error code
 * (0 = ok); jp_last_error() gives the message for the calling thread.
 * Strings handed out are malloc'd and must be released with jp_free.
 */

#ifdef __cplusplus
extern "C" {
#endif

enum {
  JP_OK = 0,
  JP_SPACE_MISMATCH,
  JP_NOT_INVERTIBLE,
  JP_BAD_LEADING,
  JP_N_OVERFLOW,
  JP_INFINITE_SUPPORT,
  JP_PRIME_DEGREE_EXCEEDED,
  JP_NOT_POLYNOMIAL,
  JP_EDGE_NOT_FOUND,
  JP_BAD_GENERATOR,
  JP_BELOW_FLOOR,
  JP_OBSTRUCTION,
  JP_PRECONDITION_FAILED,
  JP_NONMONIC,
  JP_DEGENERATE,
  JP_NOT_QJ_PAIR,
  JP_MU_DEGENERATE,
  JP_NO_RELATION,
  JP_IRRATIONAL_ROOT,
  JP_VERTEX_INVALID,
  JP_STEP_LIMIT,
  JP_LEVEL_NOT_CLEAN,
  JP_DEPTH_INSUFFICIENT,
  JP_NORMALIZATION_AMBIGUOUS,
  JP_REPRESENTATION_MISMATCH,
  JP_BAD_EXPONENT,
  JP_FRACTIONAL_U_IN_W_FORM,
  JP_SINGULAR_SYSTEM,
  JP_UNKNOWN_ATOM,
  JP_NONMONOMIAL_DIVISOR,
  JP_PARSE_ERROR,
  JP_INTERNAL
};

const char* jp_err_name(int code);
const char* jp_last_error(void);
void jp_free(char* s);

/* Laurent-type series in the Poisson algebra, as an opaque handle. */
typedef struct jp_series jp_series;

int jp_series_parse(const char* json, jp_series** out);
int jp_series_json(const jp_series* s, char** out);
int jp_series_pretty(const jp_series* s, char** out);
void jp_series_release(jp_series* s);

int jp_series_add(const jp_series* a, const jp_series* b, jp_series** out);
int jp_series_mul(const jp_series* a, const jp_series* b, jp_series** out);
int jp_series_bracket(const jp_series* a, const jp_series* b, jp_series** out);
int jp_series_equal(const jp_series* a, const jp_series* b, int* eq);

/* Weyl-algebra element. */
typedef struct jp_weyl jp_weyl;

int jp_weyl_parse(const char* json, jp_weyl** out);
int jp_weyl_json(const jp_weyl* w, char** out);
void jp_weyl_release(jp_weyl* w);

int jp_weyl_product(const jp_weyl* a, const jp_weyl* b, long long depth, jp_weyl** out);
int jp_weyl_bracket(const jp_weyl* a, const jp_weyl* b, long long depth, jp_weyl** out);
/* the u^-1 v^-1 coefficient, rendered "p/q" */
int jp_weyl_trace(const jp_weyl* w, char** out);

/* Cap on exponent denominators for subsequent operations. */
int jp_set_n_cap(long long cap);

/* One-shot JSON dispatch.  Request:
 *   { "op": "bracket" | "newton" | "prime-degree" | "components" |
 *           "expand" | "r0" | "reduce" | "normalize" | "weyl" | "verify",
 *     "depth": <int, optional>,
 *     "fixture": { "id", "kind", "payload", "expected"? } }
 * Response:
 *   { "ok": bool, "verdict": "pass" | "fail", "values": {...},
 *     "floors": {...}, "error"?: { "code", "name", "message" } }
 * Returns JP_OK whenever a response was produced, including failed
 * verdicts; hard errors are reported both in the code and the response.
 */
int jp_run(const char* request_json, char** response_json);

#ifdef __cplusplus
}
#endif

#endif
