#ifndef RGC_VERIFIER_HPP
#define RGC_VERIFIER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "dk1.hpp"
#include "matrix.hpp"
#include "miser.hpp"
#include "params.hpp"

namespace rgc {

// Code-agnostic handle the property checks run against: just the parameter
// set and the n nodal generator matrices (message_len x alpha each).
struct LinearCodeView {
    CodeParams params;
    PrimeField field;
    std::vector<Matrix> generators;

    LinearCodeView(CodeParams p, PrimeField f, std::vector<Matrix> gens);
};

LinearCodeView view_of(const MiserCode& code);
// Snapshot of the current r state; repairs invalidate it.
LinearCodeView view_of(const Dk1Code& code);

// Minimum-storage point for (n,k,d,beta): per-node storage and total
// message size. d must sit in [k, n-1].
struct MsrPoint {
    std::size_t alpha;
    std::size_t message_len;
};
MsrPoint msr_params(std::size_t n, std::size_t k, std::size_t d, std::size_t beta);

// True iff message_len respects the storage/repair trade-off:
// message_len <= sum_{i=0}^{k-1} min(alpha, (d-i)*beta).
bool cutset_bound_ok(const CodeParams& params);

struct MdsOptions {
    std::size_t subset_budget = 20000;
    // When the subset count exceeds the budget: sample this many random
    // subsets instead of failing with budget_exceeded.
    bool allow_sampling = false;
    uint64_t seed = 0;
    std::size_t samples = 2000;
};

struct MdsReport {
    bool ok = false;
    std::size_t subsets_checked = 0;
    bool sampled = false;
    // 1-based node ids of the first non-invertible k-subset, when !ok.
    std::vector<std::size_t> failing_subset;
};

// Every k-subset of nodes must pin down the full message: the stacked
// message_len x (k*alpha) generator must be invertible.
MdsReport verify_mds(const LinearCodeView& view, const MdsOptions& options = {});

struct ComponentReport {
    bool ok = false;
    std::size_t node = 0;      // first offending parity node (1-based)
    std::size_t component = 0; // first offending component (1-based)
};

// Each alpha x alpha component of every parity generator must be invertible,
// otherwise some repair subtraction could erase message content.
ComponentReport check_component_nonsingular(const LinearCodeView& view);

struct AlignmentReport {
    bool pass = false;
    // rank of each component of the kernel stack, 1-based by block.
    std::vector<std::size_t> component_ranks;
};

// kernels: message_len x alpha matrix of the columns the parity helpers pass
// when `failed` is repaired. Desired block must have full rank alpha; every
// other block must be aligned to a single direction (rank <= 1).
AlignmentReport check_alignment(const LinearCodeView& view, std::size_t failed,
                                const Matrix& kernels);
// Dimension-level variant for ad-hoc kernel stacks (alpha may be 1).
AlignmentReport check_alignment_dims(std::size_t k, std::size_t alpha, std::size_t failed,
                                     const Matrix& kernels);

struct IndependenceReport {
    bool ok = false;
    // 1-based positions of the first dependent alpha-subset, when !ok.
    std::vector<std::size_t> failing_subset;
};

// kernels: message_len x k matrix of the vectors one parity node passes
// across the k systematic repairs. Every alpha-subset must have rank alpha
// (vacuously true when k < alpha).
IndependenceReport check_passed_vector_independence(const Matrix& kernels, std::size_t alpha);

} // namespace rgc

#endif
