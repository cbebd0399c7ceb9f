#include "rgc/rgc.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "dk1.hpp"
#include "error.hpp"
#include "miser.hpp"
#include "storage.hpp"
#include "verifier.hpp"

struct rgc_miser {
    rgc::MiserCode code;
};
struct rgc_dk1 {
    rgc::Dk1Code code;
};
struct rgc_store {
    rgc::Store store;
};

namespace {

thread_local std::string t_last_error;

template <typename Fn>
int wrap(Fn&& fn) {
    try {
        fn();
        return RGC_OK;
    } catch (const rgc::Error& e) {
        t_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return RGC_E_PANIC;
    } catch (...) {
        t_last_error = "unknown internal error";
        return RGC_E_PANIC;
    }
}

int fail_arg(const char* what) {
    t_last_error = what;
    return RGC_E_INVALID_ARGUMENT;
}

void fill_params(const rgc::CodeParams& p, rgc_params_t* out) {
    out->n = p.n;
    out->k = p.k;
    out->d = p.d;
    out->alpha = p.alpha;
    out->beta = p.beta;
    out->message_len = p.message_len;
    out->q = p.q;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::size_t> node_list(const size_t* nodes, size_t count) {
    return count ? std::vector<std::size_t>(nodes, nodes + count) : std::vector<std::size_t>{};
}

int run_verify_mds(const rgc::LinearCodeView& view, size_t budget, int allow_sampling,
                   uint64_t seed, size_t samples, rgc_mds_report_t* out) {
    rgc::MdsOptions opts;
    opts.subset_budget = budget;
    opts.allow_sampling = allow_sampling != 0;
    opts.seed = seed;
    opts.samples = samples;
    rgc::MdsReport report = rgc::verify_mds(view, opts);
    out->ok = report.ok ? 1 : 0;
    out->subsets_checked = report.subsets_checked;
    out->sampled = report.sampled ? 1 : 0;
    return RGC_OK;
}

} // namespace

extern "C" {

const char* rgc_strerror(int code) {
    switch (code) {
        case RGC_OK: return "ok";
        case RGC_E_INVALID_ARGUMENT: return "invalid argument";
        case RGC_E_NOT_PRIME: return "field size is not prime";
        case RGC_E_FIELD_MISMATCH: return "operands live in different fields";
        case RGC_E_DIVISION_BY_ZERO: return "division by zero";
        case RGC_E_SHAPE_MISMATCH: return "shape mismatch";
        case RGC_E_SINGULAR_MATRIX: return "singular matrix";
        case RGC_E_INDEX_OUT_OF_RANGE: return "index out of range";
        case RGC_E_INJECTIVITY: return "point sequence repeats a value";
        case RGC_E_FIELD_TOO_SMALL: return "field too small";
        case RGC_E_INVALID_PARAMS: return "invalid code parameters";
        case RGC_E_ARITY: return "wrong number of elements";
        case RGC_E_HELPER_SET: return "illegal helper set";
        case RGC_E_UNSUPPORTED_PARITY_REPAIR: return "parity nodes need full reconstruction";
        case RGC_E_INDEPENDENCE: return "vectors are not independent";
        case RGC_E_INVALID_SIGMA: return "invalid mixing scales";
        case RGC_E_BUDGET_EXCEEDED: return "subset budget exceeded";
        case RGC_E_CORRUPTION: return "stored data is corrupt";
        case RGC_E_IO: return "file system error";
        case RGC_E_LOCKED: return "store is locked";
        case RGC_E_INSUFFICIENT_NODES: return "not enough nodes";
        case RGC_E_BAD_MANIFEST: return "bad manifest";
        case RGC_E_PANIC: return "internal error";
        default: return "unknown error code";
    }
}

const char* rgc_last_error(void) { return t_last_error.c_str(); }

void rgc_free(void* p) { std::free(p); }
void rgc_free_str(char* s) { std::free(s); }

int rgc_msr_params(size_t n, size_t k, size_t d, uint32_t q, rgc_params_t* out) {
    if (!out) return fail_arg("out must not be NULL");
    return wrap([&] { fill_params(rgc::CodeParams::msr(n, k, d, q), out); });
}

/* ---- miser ------------------------------------------------------------ */

int rgc_miser_construct(size_t k, uint32_t q, rgc_miser_t** out) {
    if (!out) return fail_arg("out must not be NULL");
    *out = nullptr;
    return wrap([&] {
        *out = new rgc_miser{rgc::MiserCode::construct(k, rgc::PrimeField(q))};
    });
}

int rgc_miser_construct_general(size_t n, size_t k, size_t d, uint32_t q,
                                rgc_miser_t** out) {
    if (!out) return fail_arg("out must not be NULL");
    *out = nullptr;
    return wrap([&] {
        *out = new rgc_miser{rgc::MiserCode::construct_general(n, k, d, rgc::PrimeField(q))};
    });
}

void rgc_miser_destroy(rgc_miser_t* code) { delete code; }

int rgc_miser_params(const rgc_miser_t* code, rgc_params_t* out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    fill_params(code->code.params(), out);
    return RGC_OK;
}

int rgc_miser_shorten(const rgc_miser_t* code, size_t i, rgc_miser_t** out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    *out = nullptr;
    return wrap([&] { *out = new rgc_miser{code->code.shorten(i)}; });
}

int rgc_miser_encode(const rgc_miser_t* code, const uint32_t* message, size_t message_len,
                     uint32_t* table_out, size_t table_len) {
    if (!code || !message || !table_out) return fail_arg("pointers must not be NULL");
    return wrap([&] {
        const rgc::CodeParams& p = code->code.params();
        if (table_len != p.n * p.alpha) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "table_len must be n*alpha");
        }
        rgc::Matrix table =
            code->code.encode(std::vector<uint32_t>(message, message + message_len));
        for (std::size_t m = 0; m < p.n; ++m) {
            for (std::size_t j = 0; j < p.alpha; ++j) {
                table_out[m * p.alpha + j] = table.at(m, j);
            }
        }
    });
}

int rgc_miser_pass_index(const rgc_miser_t* code, size_t failed, size_t* out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    return wrap([&] { *out = code->code.pass_index(failed); });
}

int rgc_miser_repair_symbol(const rgc_miser_t* code, size_t helper, size_t failed,
                            const uint32_t* stored, size_t stored_len, uint32_t* out) {
    if (!code || !stored || !out) return fail_arg("pointers must not be NULL");
    return wrap([&] {
        rgc::RepairSymbol sym = code->code.repair_symbol(
            helper, failed, std::vector<uint32_t>(stored, stored + stored_len));
        *out = sym.value;
    });
}

int rgc_miser_repair_systematic(const rgc_miser_t* code, size_t failed,
                                const size_t* helpers, const uint32_t* passed, size_t count,
                                uint32_t* out, size_t out_len) {
    if (!code || !helpers || !passed || !out) return fail_arg("pointers must not be NULL");
    return wrap([&] {
        if (out_len != code->code.params().alpha) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "out_len must be alpha");
        }
        std::vector<rgc::RepairSymbol> symbols;
        symbols.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            symbols.push_back(rgc::RepairSymbol{helpers[i], failed, passed[i]});
        }
        std::vector<uint32_t> block = code->code.repair_systematic(failed, symbols);
        std::copy(block.begin(), block.end(), out);
    });
}

int rgc_miser_reconstruct(const rgc_miser_t* code, const size_t* nodes, size_t node_count,
                          const uint32_t* symbols, size_t symbols_len, uint32_t* message_out,
                          size_t message_len) {
    if (!code || !nodes || !symbols || !message_out) {
        return fail_arg("pointers must not be NULL");
    }
    return wrap([&] {
        const rgc::CodeParams& p = code->code.params();
        if (symbols_len != node_count * p.alpha) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "symbols_len must be node_count*alpha");
        }
        if (message_len != p.message_len) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "message_len must be k*alpha");
        }
        rgc::Matrix table(node_count, p.alpha, code->code.field());
        for (size_t i = 0; i < node_count; ++i) {
            for (size_t j = 0; j < p.alpha; ++j) {
                table.set(i, j, symbols[i * p.alpha + j]);
            }
        }
        std::vector<uint32_t> message = code->code.reconstruct(
            std::vector<std::size_t>(nodes, nodes + node_count), table);
        std::copy(message.begin(), message.end(), message_out);
    });
}

/* ---- dk1 --------------------------------------------------------------- */

int rgc_dk1_construct(size_t n, size_t k, uint32_t q, rgc_dk1_t** out) {
    if (!out) return fail_arg("out must not be NULL");
    *out = nullptr;
    return wrap([&] {
        *out = new rgc_dk1{rgc::Dk1Code::construct(n, k, rgc::PrimeField(q))};
    });
}

int rgc_dk1_construct_explicit(size_t n, size_t k, uint32_t q, const uint32_t* p,
                               const uint32_t* r, rgc_dk1_t** out) {
    if (!p || !r || !out) return fail_arg("pointers must not be NULL");
    *out = nullptr;
    return wrap([&] {
        rgc::PrimeField field(q);
        rgc::Matrix pm(n, k, field);
        rgc::Matrix rm(n, k, field);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < k; ++j) {
                pm.set(i, j, p[i * k + j]);
                rm.set(i, j, r[i * k + j]);
            }
        }
        *out = new rgc_dk1{rgc::Dk1Code::construct(n, k, field, pm, rm)};
    });
}

void rgc_dk1_destroy(rgc_dk1_t* code) { delete code; }

int rgc_dk1_params(const rgc_dk1_t* code, rgc_params_t* out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    fill_params(code->code.params(), out);
    return RGC_OK;
}

int rgc_dk1_r_vectors(const rgc_dk1_t* code, uint32_t* out, size_t out_len) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    return wrap([&] {
        const rgc::CodeParams& p = code->code.params();
        if (out_len != p.n * p.k) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "out_len must be n*k");
        }
        const rgc::Matrix& r = code->code.r_vectors();
        for (size_t i = 0; i < p.n; ++i) {
            for (size_t j = 0; j < p.k; ++j) out[i * p.k + j] = r.at(i, j);
        }
    });
}

int rgc_dk1_encode(const rgc_dk1_t* code, const uint32_t* message, size_t message_len,
                   uint32_t* table_out, size_t table_len) {
    if (!code || !message || !table_out) return fail_arg("pointers must not be NULL");
    return wrap([&] {
        const rgc::CodeParams& p = code->code.params();
        if (table_len != p.n * 2) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "table_len must be n*2");
        }
        rgc::Matrix table =
            code->code.encode(std::vector<uint32_t>(message, message + message_len));
        for (size_t m = 0; m < p.n; ++m) {
            table_out[m * 2] = table.at(m, 0);
            table_out[m * 2 + 1] = table.at(m, 1);
        }
    });
}

int rgc_dk1_reconstruct(const rgc_dk1_t* code, const size_t* nodes, size_t node_count,
                        const uint32_t* symbols, size_t symbols_len, uint32_t* message_out,
                        size_t message_len) {
    if (!code || !nodes || !symbols || !message_out) {
        return fail_arg("pointers must not be NULL");
    }
    return wrap([&] {
        const rgc::CodeParams& p = code->code.params();
        if (symbols_len != node_count * 2) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "symbols_len must be node_count*2");
        }
        if (message_len != p.message_len) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "message_len must be 2k");
        }
        rgc::Matrix table(node_count, 2, code->code.field());
        for (size_t i = 0; i < node_count; ++i) {
            table.set(i, 0, symbols[i * 2]);
            table.set(i, 1, symbols[i * 2 + 1]);
        }
        std::vector<uint32_t> message = code->code.reconstruct(
            std::vector<std::size_t>(nodes, nodes + node_count), table);
        std::copy(message.begin(), message.end(), message_out);
    });
}

int rgc_dk1_repair_lambda(const rgc_dk1_t* code, size_t failed, const size_t* helpers,
                          size_t helper_count, size_t* helpers_out, uint32_t* lambda_out) {
    if (!code || !helpers || !helpers_out || !lambda_out) {
        return fail_arg("pointers must not be NULL");
    }
    return wrap([&] {
        rgc::RepairCoefficients coeffs = code->code.repair_coefficients(
            failed, std::vector<std::size_t>(helpers, helpers + helper_count));
        std::copy(coeffs.helpers.begin(), coeffs.helpers.end(), helpers_out);
        std::copy(coeffs.lambda.begin(), coeffs.lambda.end(), lambda_out);
    });
}

int rgc_dk1_repair(rgc_dk1_t* code, size_t failed, const size_t* helpers,
                   size_t helper_count, const uint32_t* passed, uint32_t symbols_out[2],
                   uint32_t* r_new_out, size_t r_new_len) {
    if (!code || !helpers || !passed || !symbols_out || !r_new_out) {
        return fail_arg("pointers must not be NULL");
    }
    return wrap([&] {
        const rgc::CodeParams& p = code->code.params();
        if (r_new_len != p.k) {
            rgc::fail(rgc::ErrorCode::shape_mismatch, "r_new_len must be k");
        }
        rgc::RepairCoefficients coeffs = code->code.repair_coefficients(
            failed, std::vector<std::size_t>(helpers, helpers + helper_count));
        std::array<uint32_t, 2> two = code->code.repair(
            coeffs, std::vector<uint32_t>(passed, passed + helper_count));
        symbols_out[0] = two[0];
        symbols_out[1] = two[1];
        std::copy(coeffs.r_new.begin(), coeffs.r_new.end(), r_new_out);
    });
}

/* ---- verifier ----------------------------------------------------------- */

int rgc_miser_verify_mds(const rgc_miser_t* code, size_t budget, int allow_sampling,
                         uint64_t seed, size_t samples, rgc_mds_report_t* out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    return wrap([&] {
        run_verify_mds(rgc::view_of(code->code), budget, allow_sampling, seed, samples, out);
    });
}

int rgc_dk1_verify_mds(const rgc_dk1_t* code, size_t budget, int allow_sampling,
                       uint64_t seed, size_t samples, rgc_mds_report_t* out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    return wrap([&] {
        run_verify_mds(rgc::view_of(code->code), budget, allow_sampling, seed, samples, out);
    });
}

int rgc_miser_check_alignment(const rgc_miser_t* code, size_t failed,
                              rgc_alignment_report_t* out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    return wrap([&] {
        rgc::Matrix kernels = code->code.repair_kernels(failed);
        rgc::AlignmentReport report =
            rgc::check_alignment(rgc::view_of(code->code), failed, kernels);
        out->pass = report.pass ? 1 : 0;
        out->desired_rank = 0;
        out->max_interference_rank = 0;
        for (std::size_t b = 0; b < report.component_ranks.size(); ++b) {
            if (b + 1 == failed) {
                out->desired_rank = report.component_ranks[b];
            } else if (report.component_ranks[b] > out->max_interference_rank) {
                out->max_interference_rank = report.component_ranks[b];
            }
        }
    });
}

int rgc_miser_check_passed_independence(const rgc_miser_t* code, int* out) {
    if (!code || !out) return fail_arg("code and out must not be NULL");
    return wrap([&] {
        *out = 1;
        const rgc::CodeParams& p = code->code.params();
        for (std::size_t m = p.k + 1; m <= p.n; ++m) {
            rgc::Matrix kernels = code->code.passed_vectors(m);
            rgc::IndependenceReport report =
                rgc::check_passed_vector_independence(kernels, p.alpha);
            if (!report.ok) {
                *out = 0;
                return;
            }
        }
    });
}

/* ---- store --------------------------------------------------------------- */

int rgc_store_create(const char* dir, const char* family, size_t n, size_t k, uint32_t q,
                     const uint8_t* payload, size_t payload_len, rgc_store_t** out) {
    if (!dir || !family || !out || (payload_len > 0 && !payload)) {
        return fail_arg("pointers must not be NULL");
    }
    *out = nullptr;
    return wrap([&] {
        rgc::StoreConfig config{family, n, k, q};
        std::vector<uint8_t> bytes;
        if (payload_len) bytes.assign(payload, payload + payload_len);
        *out = new rgc_store{rgc::Store::create(dir, config, bytes)};
    });
}

int rgc_store_open(const char* dir, rgc_store_t** out) {
    if (!dir || !out) return fail_arg("dir and out must not be NULL");
    *out = nullptr;
    return wrap([&] { *out = new rgc_store{rgc::Store::open(dir)}; });
}

void rgc_store_destroy(rgc_store_t* store) { delete store; }

int rgc_store_params(const rgc_store_t* store, rgc_params_t* out) {
    if (!store || !out) return fail_arg("store and out must not be NULL");
    fill_params(store->store.params(), out);
    return RGC_OK;
}

int rgc_store_stripe_count(const rgc_store_t* store, uint64_t* out) {
    if (!store || !out) return fail_arg("store and out must not be NULL");
    *out = store->store.stripe_count();
    return RGC_OK;
}

int rgc_store_original_length(const rgc_store_t* store, uint64_t* out) {
    if (!store || !out) return fail_arg("store and out must not be NULL");
    *out = store->store.original_length();
    return RGC_OK;
}

int rgc_store_surviving(const rgc_store_t* store, size_t* nodes_out, size_t* count_out) {
    if (!store || !nodes_out || !count_out) return fail_arg("pointers must not be NULL");
    return wrap([&] {
        std::vector<std::size_t> alive = store->store.surviving_nodes();
        std::copy(alive.begin(), alive.end(), nodes_out);
        *count_out = alive.size();
    });
}

int rgc_store_fail(rgc_store_t* store, size_t node) {
    if (!store) return fail_arg("store must not be NULL");
    return wrap([&] { store->store.fail_node(node); });
}

int rgc_store_repair(rgc_store_t* store, size_t node, const size_t* helpers,
                     size_t helper_count, int verify_after, uint64_t* symbols_out,
                     int* fallback_out) {
    if (!store || (helper_count > 0 && !helpers)) return fail_arg("pointers must not be NULL");
    return wrap([&] {
        rgc::LedgerEvent event =
            store->store.repair_node(node, node_list(helpers, helper_count), verify_after != 0);
        if (symbols_out) *symbols_out = event.symbols;
        if (fallback_out) *fallback_out = event.fallback ? 1 : 0;
    });
}

int rgc_store_reconstruct(const rgc_store_t* store, const size_t* nodes, size_t node_count,
                          uint8_t** payload_out, size_t* payload_len_out) {
    if (!store || !payload_out || !payload_len_out || (node_count > 0 && !nodes)) {
        return fail_arg("pointers must not be NULL");
    }
    *payload_out = nullptr;
    *payload_len_out = 0;
    return wrap([&] {
        std::vector<uint8_t> payload = store->store.reconstruct(node_list(nodes, node_count));
        uint8_t* buf = static_cast<uint8_t*>(std::malloc(payload.empty() ? 1 : payload.size()));
        if (!buf) rgc::fail(rgc::ErrorCode::io, "out of memory");
        if (!payload.empty()) std::memcpy(buf, payload.data(), payload.size());
        *payload_out = buf;
        *payload_len_out = payload.size();
    });
}

int rgc_store_stats_text(const rgc_store_t* store, char** out) {
    if (!store || !out) return fail_arg("store and out must not be NULL");
    *out = nullptr;
    return wrap([&] {
        *out = dup_string(store->store.stats().to_text());
        if (!*out) rgc::fail(rgc::ErrorCode::io, "out of memory");
    });
}

int rgc_store_stats_json(const rgc_store_t* store, char** out) {
    if (!store || !out) return fail_arg("store and out must not be NULL");
    *out = nullptr;
    return wrap([&] {
        *out = dup_string(store->store.stats().to_json());
        if (!*out) rgc::fail(rgc::ErrorCode::io, "out of memory");
    });
}

int rgc_store_verify(const rgc_store_t* store, size_t budget, uint64_t seed, int* ok_out,
                     char** detail_out) {
    if (!store || !ok_out) return fail_arg("store and ok_out must not be NULL");
    if (detail_out) *detail_out = nullptr;
    return wrap([&] {
        rgc::StoreVerifyReport report = store->store.verify(budget, seed);
        *ok_out = report.ok ? 1 : 0;
        if (detail_out) {
            *detail_out = dup_string(report.detail);
            if (!*detail_out) rgc::fail(rgc::ErrorCode::io, "out of memory");
        }
    });
}

} // extern "C"
