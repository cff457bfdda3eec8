/*
 * hlrc - hierarchical locally recoverable codes on fibered surfaces.
 *
 * C interface to the shared library. All functions return an hlrc_status;
 * results come back through out-parameters. Objects are opaque handles with
 * create/destroy pairs. Strings returned through char** are heap-allocated
 * and must be released with hlrc_string_free(). Handles are safe to share
 * across threads for read-only use; creation and destruction are not
 * synchronized.
 *
 * Field elements are passed as canonical indices: an element of GF(p^h) with
 * coefficient vector (c0, c1, ..., c_{h-1}) -- constant term first -- has
 * index c0*p^{h-1} + c1*p^{h-2} + ... + c_{h-1}. Index order is thus
 * lexicographic on coefficient vectors. Use hlrc_field_from_coeffs /
 * hlrc_field_coeffs to convert.
 */

#ifndef HLRC_H
#define HLRC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hlrc_status {
    HLRC_OK = 0,
    HLRC_E_NOT_PRIME = 1,
    HLRC_E_REDUCIBLE_MODULUS = 2,
    HLRC_E_CARDINALITY_CAP_EXCEEDED = 3,
    HLRC_E_DIVISION_BY_ZERO = 4,
    HLRC_E_FIELD_MISMATCH = 5,
    HLRC_E_LAMBDA_DIVISIBLE_BY_CHARACTERISTIC = 6,
    HLRC_E_LAMBDA_NOT_DIVIDING_GROUP_ORDER = 7,
    HLRC_E_UNSUPPORTED_LHS = 8,
    HLRC_E_EMPTY_GAMMA_SET = 9,
    HLRC_E_RHO_OUT_OF_RANGE = 10,
    HLRC_E_CONDITION2_VIOLATED = 11,
    HLRC_E_RANK_DEFICIENT = 12,
    HLRC_E_INSUFFICIENT_SURVIVORS = 13,
    HLRC_E_INSUFFICIENT_BUCKETS = 14,
    HLRC_E_BUDGET_EXCEEDED = 15,
    HLRC_E_BOUND_VIOLATED = 16,
    HLRC_E_FORMULA_MISMATCH = 17,
    HLRC_E_CENSUS_MISMATCH = 18,
    HLRC_E_CONFIG_INVALID = 19,
    HLRC_E_INTERNAL = 20
} hlrc_status;

typedef struct hlrc_field hlrc_field;
typedef struct hlrc_code hlrc_code;

const char* hlrc_version(void);
const char* hlrc_status_name(hlrc_status status);

/* Exit-code contract for tools: 0 ok, 1 violated quantitative claim,
 * 2 configuration or usage error. */
int hlrc_status_exit_code(hlrc_status status);

/* Message describing the most recent failure on this thread. Valid until the
 * next failing call; never NULL. */
const char* hlrc_last_error(void);

void hlrc_string_free(char* s);

/* ---- fields ------------------------------------------------------------ */

/* modulus: ascending coefficients (constant term first), length h+1, monic;
 * pass NULL with modulus_len 0 for the deterministic default (the
 * lexicographically smallest monic irreducible). */
hlrc_status hlrc_field_create(uint32_t p, uint32_t h, const uint32_t* modulus,
                              size_t modulus_len, hlrc_field** out);
void hlrc_field_destroy(hlrc_field* field);

uint32_t hlrc_field_p(const hlrc_field* field);
uint32_t hlrc_field_h(const hlrc_field* field);
uint32_t hlrc_field_q(const hlrc_field* field);

/* Writes the h+1 modulus coefficients; *written receives the count. */
hlrc_status hlrc_field_modulus(const hlrc_field* field, uint32_t* buf, size_t buflen,
                               size_t* written);

hlrc_status hlrc_field_add(const hlrc_field* field, uint32_t a, uint32_t b, uint32_t* out);
hlrc_status hlrc_field_sub(const hlrc_field* field, uint32_t a, uint32_t b, uint32_t* out);
hlrc_status hlrc_field_mul(const hlrc_field* field, uint32_t a, uint32_t b, uint32_t* out);
hlrc_status hlrc_field_neg(const hlrc_field* field, uint32_t a, uint32_t* out);
hlrc_status hlrc_field_inv(const hlrc_field* field, uint32_t a, uint32_t* out);
hlrc_status hlrc_field_pow(const hlrc_field* field, uint32_t a, int64_t e, uint32_t* out);

hlrc_status hlrc_field_from_coeffs(const hlrc_field* field, const uint32_t* coeffs, size_t len,
                                   uint32_t* out);
hlrc_status hlrc_field_coeffs(const hlrc_field* field, uint32_t a, uint32_t* buf, size_t buflen,
                              size_t* written);

/* *out receives 1 when GF(p^h) contains a primitive lambda-th root of unity
 * (lambda | q-1), else 0. */
hlrc_status hlrc_field_has_primitive_root_of_unity(const hlrc_field* field, uint64_t lambda,
                                                   int* out);

/* All y with y^p - y = c ("y^p-y") or y^q0 + y = c ("y^q0+y"). *count
 * receives the number of solutions; up to buflen are stored in buf. */
hlrc_status hlrc_field_solve_additive(const hlrc_field* field, const char* lhs_kind, uint64_t q0,
                                      uint32_t c, uint32_t* buf, size_t buflen, size_t* count);

/* All y with y^lambda = c. */
hlrc_status hlrc_field_solve_kummer_root(const hlrc_field* field, uint64_t lambda, uint32_t c,
                                         uint32_t* buf, size_t buflen, size_t* count);

/* ---- codes -------------------------------------------------------------- */

/* Builds a code from a JSON configuration (the "field", "surface" and "code"
 * sections of the config format; see the README). Validates every parameter
 * condition, assembles the evaluation set, fills the generator matrix and
 * verifies its rank. */
hlrc_status hlrc_code_build(const char* config_json, hlrc_code** out);
void hlrc_code_destroy(hlrc_code* code);

uint32_t hlrc_code_length(const hlrc_code* code);        /* n = |T| */
uint32_t hlrc_code_dimension(const hlrc_code* code);     /* k */
uint64_t hlrc_code_distance_bound(const hlrc_code* code);

/* Full parameter report as JSON (n, k, bounds, rate, local parameters). */
hlrc_status hlrc_code_param_report(const hlrc_code* code, char** json_out);

/* Evaluation set as JSON (ordered points with coefficient-vector entries). */
hlrc_status hlrc_code_points(const hlrc_code* code, char** json_out);

hlrc_status hlrc_code_matrix_entry(const hlrc_code* code, uint32_t row, uint32_t col,
                                   uint32_t* out);

/* message: k canonical indices; codeword: n entries, written by the call. */
hlrc_status hlrc_code_encode(const hlrc_code* code, const uint32_t* message, uint32_t* codeword);

/* Erases the given positions from the codeword and runs the two-level
 * recovery procedure; the detailed report comes back as JSON. */
hlrc_status hlrc_code_simulate(const hlrc_code* code, const uint32_t* codeword,
                               const uint32_t* erasures, size_t n_erasures, char** report_json);

/* Distance audit. mode: "auto", "exhaustive" or "sampled"; trials/seed apply
 * to sampling, budget caps the exhaustive enumeration (0 for the default).
 * Returns HLRC_E_BOUND_VIOLATED when a measured weight falls below the
 * closed-form bound; the audit JSON is produced either way. */
hlrc_status hlrc_code_verify_distance(const hlrc_code* code, const char* mode, uint64_t trials,
                                      uint64_t seed, uint64_t budget, char** audit_json);

/* ---- jobs and presets ---------------------------------------------------- */

/* Runs a full job: action is one of "params", "build", "simulate", "verify",
 * "verify-distance", "verify-census", "sweep", or "auto" (the config's action
 * list). options_json may be NULL or an object with optional keys "out"
 * (directory), "seed", "trials", "budget", "format" ("json"|"csv"|"table").
 * Artifacts and a manifest are written to the output directory. The result
 * JSON carries {"exit_code", "text", "summary", "artifacts"}. Distance-bound
 * or census violations surface as HLRC_E_BOUND_VIOLATED etc. with the result
 * still fully populated. */
hlrc_status hlrc_run_job(const char* config_json, const char* action, const char* options_json,
                         char** result_json);

/* JSON array of bundled preset names. */
hlrc_status hlrc_preset_names(char** json_out);

/* Configuration text of one bundled preset. */
hlrc_status hlrc_preset_config(const char* name, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* HLRC_H */
