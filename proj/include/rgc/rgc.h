#ifndef RGC_RGC_H
#define RGC_RGC_H

/* C interface to the regenerating-codes toolkit.
 *
 * Conventions:
 *   - Every fallible function returns an int error code (RGC_OK = 0) and
 *     writes results through out-parameters.
 *   - rgc_strerror() names a code; rgc_last_error() returns the calling
 *     thread's most recent failure message (valid until its next failure).
 *   - Nodes are 1-based. Symbols are uint32_t field elements.
 *   - Buffers returned through rgc_*_alloc out-params are released with
 *     rgc_free() / rgc_free_str().
 *   - Handles are destroyed with their matching *_destroy(); destroying
 *     NULL is a no-op. Handles are not thread-safe for concurrent
 *     mutation (dk1 repair and store writes mutate state).
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    RGC_OK = 0,
    RGC_E_INVALID_ARGUMENT = 1,
    RGC_E_NOT_PRIME = 2,
    RGC_E_FIELD_MISMATCH = 3,
    RGC_E_DIVISION_BY_ZERO = 4,
    RGC_E_SHAPE_MISMATCH = 5,
    RGC_E_SINGULAR_MATRIX = 6,
    RGC_E_INDEX_OUT_OF_RANGE = 7,
    RGC_E_INJECTIVITY = 8,
    RGC_E_FIELD_TOO_SMALL = 9,
    RGC_E_INVALID_PARAMS = 10,
    RGC_E_ARITY = 11,
    RGC_E_HELPER_SET = 12,
    RGC_E_UNSUPPORTED_PARITY_REPAIR = 13,
    RGC_E_INDEPENDENCE = 14,
    RGC_E_INVALID_SIGMA = 15,
    RGC_E_BUDGET_EXCEEDED = 16,
    RGC_E_CORRUPTION = 17,
    RGC_E_IO = 18,
    RGC_E_LOCKED = 19,
    RGC_E_INSUFFICIENT_NODES = 20,
    RGC_E_BAD_MANIFEST = 21,
    RGC_E_PANIC = 22 /* unexpected internal exception */
};

const char* rgc_strerror(int code);
const char* rgc_last_error(void);

void rgc_free(void* p);
void rgc_free_str(char* s);

/* ---- code parameters ------------------------------------------------- */

typedef struct {
    size_t n, k, d, alpha, beta, message_len;
    uint32_t q;
} rgc_params_t;

/* Minimum-storage point arithmetic: alpha = (d-k+1)*beta, B = k*alpha. */
int rgc_msr_params(size_t n, size_t k, size_t d, uint32_t q, rgc_params_t* out);

/* ---- systematic-exact MSR code (miser family) ------------------------ */

typedef struct rgc_miser rgc_miser_t;

/* Native shape: n = 2k, d = n-1, canonical Cauchy points and mixing scalar. */
int rgc_miser_construct(size_t k, uint32_t q, rgc_miser_t** out);
/* Any 2k-1 <= d <= n-1 (built by shortening a native parent). */
int rgc_miser_construct_general(size_t n, size_t k, size_t d, uint32_t q,
                                rgc_miser_t** out);
void rgc_miser_destroy(rgc_miser_t* code);

int rgc_miser_params(const rgc_miser_t* code, rgc_params_t* out);
/* Drop i leading message blocks: [n,k,d] -> [n-i,k-i,d-i]. */
int rgc_miser_shorten(const rgc_miser_t* code, size_t i, rgc_miser_t** out);

/* message: B symbols; table_out: n*alpha symbols, node-major. */
int rgc_miser_encode(const rgc_miser_t* code, const uint32_t* message, size_t message_len,
                     uint32_t* table_out, size_t table_len);
/* Which stored symbol every helper passes when `failed` is repaired. */
int rgc_miser_pass_index(const rgc_miser_t* code, size_t failed, size_t* out);
/* One helper's contribution: its stored alpha symbols -> one passed symbol. */
int rgc_miser_repair_symbol(const rgc_miser_t* code, size_t helper, size_t failed,
                            const uint32_t* stored, size_t stored_len, uint32_t* out);
/* Exact repair of systematic node `failed` from d contributions
 * (helpers[i], passed[i]); out: the node's alpha symbols. */
int rgc_miser_repair_systematic(const rgc_miser_t* code, size_t failed,
                                const size_t* helpers, const uint32_t* passed, size_t count,
                                uint32_t* out, size_t out_len);
/* Rebuild the message from k nodes; symbols: k*alpha node-major. */
int rgc_miser_reconstruct(const rgc_miser_t* code, const size_t* nodes, size_t node_count,
                          const uint32_t* symbols, size_t symbols_len, uint32_t* message_out,
                          size_t message_len);

/* ---- d = k+1 MSR code (dk1 family) ----------------------------------- */

typedef struct rgc_dk1 rgc_dk1_t;

/* Default first layer: Vandermonde rows over 0..n-1 (q >= n); r starts 0. */
int rgc_dk1_construct(size_t n, size_t k, uint32_t q, rgc_dk1_t** out);
/* Caller-supplied layers, both n*k row-major. */
int rgc_dk1_construct_explicit(size_t n, size_t k, uint32_t q, const uint32_t* p,
                               const uint32_t* r, rgc_dk1_t** out);
void rgc_dk1_destroy(rgc_dk1_t* code);

int rgc_dk1_params(const rgc_dk1_t* code, rgc_params_t* out);
/* Current auxiliary state, n*k row-major (mutates on repair). */
int rgc_dk1_r_vectors(const rgc_dk1_t* code, uint32_t* out, size_t out_len);

/* message: 2k symbols (u1 then u2); table_out: n*2 node-major. */
int rgc_dk1_encode(const rgc_dk1_t* code, const uint32_t* message, size_t message_len,
                   uint32_t* table_out, size_t table_len);
int rgc_dk1_reconstruct(const rgc_dk1_t* code, const size_t* nodes, size_t node_count,
                        const uint32_t* symbols, size_t symbols_len, uint32_t* message_out,
                        size_t message_len);
/* Per-helper mixing coefficients for repairing `failed`; helpers_out gets
 * the d helper ids sorted ascending, lambda_out their coefficients. */
int rgc_dk1_repair_lambda(const rgc_dk1_t* code, size_t failed, const size_t* helpers,
                          size_t helper_count, size_t* helpers_out, uint32_t* lambda_out);
/* Full repair: passed[i] = lambda[i]*first + second of helper i (sorted
 * order). Rebuilds the node, adopts the refreshed r vector (state change),
 * returns the node's two symbols and its new r vector (k symbols). */
int rgc_dk1_repair(rgc_dk1_t* code, size_t failed, const size_t* helpers,
                   size_t helper_count, const uint32_t* passed, uint32_t symbols_out[2],
                   uint32_t* r_new_out, size_t r_new_len);

/* ---- verifier --------------------------------------------------------- */

typedef struct {
    int ok;
    size_t subsets_checked;
    int sampled;
} rgc_mds_report_t;

/* Every k-subset of nodes must pin down the message (exhaustive up to
 * `budget` subsets; sampled with `seed` if allow_sampling, else
 * RGC_E_BUDGET_EXCEEDED). */
int rgc_miser_verify_mds(const rgc_miser_t* code, size_t budget, int allow_sampling,
                         uint64_t seed, size_t samples, rgc_mds_report_t* out);
int rgc_dk1_verify_mds(const rgc_dk1_t* code, size_t budget, int allow_sampling,
                       uint64_t seed, size_t samples, rgc_mds_report_t* out);

typedef struct {
    int pass;
    size_t desired_rank;   /* rank of the desired component (want alpha) */
    size_t max_interference_rank; /* max rank over interference components (want <= 1) */
} rgc_alignment_report_t;

/* Alignment structure of the vectors parity nodes pass to repair
 * systematic node `failed`. */
int rgc_miser_check_alignment(const rgc_miser_t* code, size_t failed,
                              rgc_alignment_report_t* out);
/* Independence of the alpha-column sets each parity node passes across
 * systematic repairs (1 = pass). */
int rgc_miser_check_passed_independence(const rgc_miser_t* code, int* out);

/* ---- file store -------------------------------------------------------- */

typedef struct rgc_store rgc_store_t;

/* Encode payload into dir (byte payloads need q >= 257). family is
 * "miser" (d = n-1, n >= 2k) or "dk1" (d = k+1). */
int rgc_store_create(const char* dir, const char* family, size_t n, size_t k, uint32_t q,
                     const uint8_t* payload, size_t payload_len, rgc_store_t** out);
int rgc_store_open(const char* dir, rgc_store_t** out);
void rgc_store_destroy(rgc_store_t* store);

int rgc_store_params(const rgc_store_t* store, rgc_params_t* out);
int rgc_store_stripe_count(const rgc_store_t* store, uint64_t* out);
int rgc_store_original_length(const rgc_store_t* store, uint64_t* out);
/* nodes_out: capacity n; *count_out gets the number of survivors. */
int rgc_store_surviving(const rgc_store_t* store, size_t* nodes_out, size_t* count_out);

int rgc_store_fail(rgc_store_t* store, size_t node);
/* helpers = NULL (count 0) picks defaults. symbols_out (optional) gets the
 * downloaded-symbol count; fallback_out (optional) whether the repair went
 * through full reconstruction. verify_after spot-checks the store. */
int rgc_store_repair(rgc_store_t* store, size_t node, const size_t* helpers,
                     size_t helper_count, int verify_after, uint64_t* symbols_out,
                     int* fallback_out);
/* nodes = NULL picks the k lowest survivors. *payload_out is rgc_free()d
 * by the caller. */
int rgc_store_reconstruct(const rgc_store_t* store, const size_t* nodes, size_t node_count,
                          uint8_t** payload_out, size_t* payload_len_out);
/* Bandwidth accounting rendered as text or JSON; free with rgc_free_str. */
int rgc_store_stats_text(const rgc_store_t* store, char** out);
int rgc_store_stats_json(const rgc_store_t* store, char** out);
/* Decode every k-subset of survivors (sampled past `budget`) and compare
 * with the manifest fingerprint. *ok_out = 1 when all pass; detail_out
 * (optional) carries a human-readable summary, freed with rgc_free_str. */
int rgc_store_verify(const rgc_store_t* store, size_t budget, uint64_t seed, int* ok_out,
                     char** detail_out);

#ifdef __cplusplus
}
#endif

#endif /* RGC_RGC_H */
