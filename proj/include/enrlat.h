/* enrlat - exact-arithmetic toolkit for even lattices and the genus
 * classification behind Enriques polarization degrees.
 *
 * C interface of the shared library. All functions returning enrlat_status
 * set a thread-local error message readable via enrlat_last_error() on
 * failure. Strings returned through char** out-parameters are heap-allocated
 * and must be released with enrlat_string_free().
 */

#ifndef ENRLAT_H_
#define ENRLAT_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum enrlat_status {
    ENRLAT_OK = 0,
    ENRLAT_ERR_INVALID_ARGUMENT = 1,
    ENRLAT_ERR_PARSE = 2,
    ENRLAT_ERR_UNSUPPORTED = 3,
    ENRLAT_ERR_BUDGET = 4,
    ENRLAT_ERR_INVARIANT = 5,
    ENRLAT_ERR_IO = 6,
    ENRLAT_ERR_INTERNAL = 7
} enrlat_status;

/* Opaque lattice handle. */
typedef struct enrlat_lattice enrlat_lattice;

int enrlat_abi_version(void);

/* Last error message of the calling thread; valid until the next failing
 * call. Never NULL. */
const char* enrlat_last_error(void);

void enrlat_string_free(char* s);

/* ---- lattices -------------------------------------------------------- */

/* spec: a named constructor expression ("U", "U(2)", "E8(-1)", "<-4>",
 * "A2(-1)+E7(-1)", "3U+2E8(-1)", "M", "N", "LK3") or a JSON object
 * {"name", "rank", "gram"} / bare Gram array. */
enrlat_status enrlat_lattice_parse(const char* spec, enrlat_lattice** out);

void enrlat_lattice_free(enrlat_lattice* l);

int enrlat_lattice_rank(const enrlat_lattice* l);
int enrlat_lattice_is_even(const enrlat_lattice* l);
enrlat_status enrlat_lattice_signature(const enrlat_lattice* l, int* pos, int* neg);
enrlat_status enrlat_lattice_det(const enrlat_lattice* l, char** decimal);
enrlat_status enrlat_lattice_to_json(const enrlat_lattice* l, char** json);

/* {"name", "rank", "signature", "det", "even", "disc_shape", "summary"} */
enrlat_status enrlat_lattice_info_json(const enrlat_lattice* l, char** json);

/* Root data of a definite lattice:
 * {"half_count", "count", "min_norm_abs", "theta_prefix"} */
enrlat_status enrlat_root_counts_json(const enrlat_lattice* l, char** json);

/* Discriminant form {"divisors", "q", "isotropic_nonzero", "nonisotropic",
 * "sigma_mod8"}; the q table is limited to groups of order <= 4096. */
enrlat_status enrlat_disc_form_json(const enrlat_lattice* l, char** json);

/* Order of the subgroup of O(D_L) generated by all transvections (even-type
 * 2-elementary discriminant forms only):
 * {"nonisotropic", "transvection_group_order"} */
enrlat_status enrlat_disc_group_order_json(const enrlat_lattice* l, char** json);

/* ---- genus and moduli ------------------------------------------------ */

/* options_json (every field optional):
 * {"cache_dir": "", "primes": [2,3], "seed": 0, "budget_secs": 0,
 *  "format": "md", "quick": false}
 * The ENRIQUES_CACHE environment variable overrides cache_dir. */

enrlat_status enrlat_genus_json(int d, const char* options_json, char** json);

/* Genus table artifact for d in [d_min, d_max]; format md | csv | json. */
enrlat_status enrlat_table(int d_min, int d_max, const char* options_json, char** text);

/* Kodaira verdict report for one even polarization degree 2d. */
enrlat_status enrlat_classify_json(int degree, const char* options_json, char** json);

/* First genus class with automorphism group {+-1} in d_lo..d_hi, as
 * {"found": bool, "d": int, "class": {...}}. */
enrlat_status enrlat_find_trivial_aut_json(int d_lo, int d_hi, const char* options_json,
                                           char** json);

/* Runs the verification suite. Returns ENRLAT_OK when the suite ran;
 * *failures receives the number of failed checks and *report the
 * line-per-check text. */
enrlat_status enrlat_verify(const char* options_json, char** report, int* failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ENRLAT_H_ */
