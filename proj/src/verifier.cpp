#include "verifier.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "subsets.hpp"

namespace rgc {

LinearCodeView::LinearCodeView(CodeParams p, PrimeField f, std::vector<Matrix> gens)
    : params(p), field(f), generators(std::move(gens)) {
    if (generators.size() != params.n) {
        fail(ErrorCode::shape_mismatch, "need one generator per node");
    }
    if (params.message_len != params.k * params.alpha) {
        fail(ErrorCode::invalid_params, "message_len must equal k * alpha");
    }
    for (const Matrix& g : generators) {
        if (g.rows() != params.message_len || g.cols() != params.alpha) {
            fail(ErrorCode::shape_mismatch, "generators must be message_len x alpha");
        }
        if (g.field() != field) {
            fail(ErrorCode::field_mismatch, "generator field differs from view field");
        }
    }
}

LinearCodeView view_of(const MiserCode& code) {
    return LinearCodeView(code.params(), code.field(), code.generators());
}

LinearCodeView view_of(const Dk1Code& code) {
    std::vector<Matrix> gens;
    gens.reserve(code.params().n);
    for (std::size_t node = 1; node <= code.params().n; ++node) {
        gens.push_back(code.generator(node));
    }
    return LinearCodeView(code.params(), code.field(), std::move(gens));
}

MsrPoint msr_params(std::size_t n, std::size_t k, std::size_t d, std::size_t beta) {
    if (k < 1 || beta < 1) {
        fail(ErrorCode::invalid_params, "need k >= 1 and beta >= 1");
    }
    if (d < k || d + 1 > n) {
        fail(ErrorCode::invalid_params,
             "helper count must sit in [k, n-1], got d=" + std::to_string(d) + " for n=" +
                 std::to_string(n) + " k=" + std::to_string(k));
    }
    return MsrPoint{(d - k + 1) * beta, k * (d - k + 1) * beta};
}

bool cutset_bound_ok(const CodeParams& params) {
    std::size_t capacity = 0;
    for (std::size_t i = 0; i < params.k; ++i) {
        capacity += std::min(params.alpha, (params.d - i) * params.beta);
    }
    return params.message_len <= capacity;
}

namespace {

bool subset_invertible(const LinearCodeView& view, const std::vector<std::size_t>& idx) {
    std::vector<Matrix> parts;
    parts.reserve(idx.size());
    for (std::size_t i : idx) parts.push_back(view.generators[i]);
    Matrix stacked = Matrix::hstack(parts);
    return stacked.rank() == view.params.message_len;
}

std::vector<std::size_t> to_node_ids(const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = idx[i] + 1;
    return out;
}

} // namespace

MdsReport verify_mds(const LinearCodeView& view, const MdsOptions& options) {
    const std::size_t n = view.params.n;
    const std::size_t k = view.params.k;
    MdsReport report;
    uint64_t total = binomial_capped(n, k, options.subset_budget);
    if (total > options.subset_budget) {
        if (!options.allow_sampling) {
            fail(ErrorCode::budget_exceeded,
                 "C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds the " +
                     std::to_string(options.subset_budget) +
                     "-subset budget; enable sampling to spot-check");
        }
        report.sampled = true;
        std::mt19937_64 rng(options.seed);
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t s = 0; s < options.samples; ++s) {
            for (std::size_t i = 0; i < k; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, n - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            std::vector<std::size_t> idx(pool.begin(), pool.begin() + k);
            std::sort(idx.begin(), idx.end());
            ++report.subsets_checked;
            if (!subset_invertible(view, idx)) {
                report.failing_subset = to_node_ids(idx);
                return report;
            }
        }
        report.ok = true;
        return report;
    }
    bool all = for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
        ++report.subsets_checked;
        if (!subset_invertible(view, idx)) {
            report.failing_subset = to_node_ids(idx);
            return false;
        }
        return true;
    });
    report.ok = all;
    return report;
}

ComponentReport check_component_nonsingular(const LinearCodeView& view) {
    const std::size_t alpha = view.params.alpha;
    for (std::size_t node = view.params.k + 1; node <= view.params.n; ++node) {
        const Matrix& g = view.generators[node - 1];
        for (std::size_t c = 0; c < view.params.k; ++c) {
            std::vector<std::size_t> rows(alpha);
            for (std::size_t r = 0; r < alpha; ++r) rows[r] = c * alpha + r;
            if (g.select_rows(rows).rank() != alpha) {
                return ComponentReport{false, node, c + 1};
            }
        }
    }
    return ComponentReport{true, 0, 0};
}

AlignmentReport check_alignment_dims(std::size_t k, std::size_t alpha, std::size_t failed,
                                     const Matrix& kernels) {
    if (failed < 1 || failed > k) {
        fail(ErrorCode::index_out_of_range, "failed block outside 1..k");
    }
    if (kernels.rows() != k * alpha || kernels.cols() != alpha) {
        fail(ErrorCode::shape_mismatch, "kernel stack must be (k*alpha) x alpha");
    }
    AlignmentReport report;
    report.component_ranks.resize(k);
    report.pass = true;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::size_t> rows(alpha);
        for (std::size_t r = 0; r < alpha; ++r) rows[r] = c * alpha + r;
        std::size_t rank = kernels.select_rows(rows).rank();
        report.component_ranks[c] = rank;
        if (c + 1 == failed) {
            if (rank != alpha) report.pass = false;
        } else if (rank > 1) {
            report.pass = false;
        }
    }
    return report;
}

AlignmentReport check_alignment(const LinearCodeView& view, std::size_t failed,
                                const Matrix& kernels) {
    return check_alignment_dims(view.params.k, view.params.alpha, failed, kernels);
}

IndependenceReport check_passed_vector_independence(const Matrix& kernels,
                                                    std::size_t alpha) {
    if (alpha == 0) {
        fail(ErrorCode::invalid_params, "alpha must be positive");
    }
    const std::size_t k = kernels.cols();
    IndependenceReport report;
    report.ok = for_each_subset(k, alpha, [&](const std::vector<std::size_t>& idx) {
        if (kernels.select_cols(idx).rank() != alpha) {
            report.failing_subset = to_node_ids(idx);
            return false;
        }
        return true;
    });
    return report;
}

} // namespace rgc
