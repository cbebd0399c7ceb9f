#ifndef RGC_MISER_HPP
#define RGC_MISER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "cauchy.hpp"
#include "matrix.hpp"
#include "params.hpp"

namespace rgc {

// One symbol handed over during a repair. Nodes are 1-based throughout the
// public API; `value` is the for_node-specific symbol the helper passes.
struct RepairSymbol {
    std::size_t from_node = 0;
    std::size_t for_node = 0;
    uint32_t value = 0;
};

// Systematic-exact MSR code. Data layout per stripe: the message splits into
// k blocks of alpha symbols; node l <= k stores block l verbatim, node k+m
// stores a mix governed by column m of an alpha x (n-k) Cauchy matrix. Each
// component of a parity generator either scales that Cauchy column (its own
// block) or is a scaled unit column (everyone else's block), which is what
// lets a failed block be cut out of d helper symbols exactly.
//
// Codes with d < n-1 (and every shortened code) are views onto a parent with
// d' = 2k'-1: the first `shortened_by` message blocks are pinned to zero and
// their systematic nodes dropped. Encoding, repair and reconstruction all
// delegate to the parent with the zero blocks reinserted.
//
// Instances are immutable after construction; all operations are const and
// safe to call concurrently.
class MiserCode {
  public:
    // n = 2k, d = n-1. Needs q >= 2k. Cauchy points and the mixing scalar
    // are chosen canonically (default_spec, smallest e with e != 0, e^2 != 1).
    static MiserCode construct(std::size_t k, const PrimeField& field);

    // Any 2k-1 <= d <= n-1, built by shortening a d' = 2k'-1 parent.
    // Optional overrides pin the parent Cauchy points / mixing scalar
    // (used when rebuilding a code from a stored manifest).
    static MiserCode construct_general(std::size_t n, std::size_t k, std::size_t d,
                                       const PrimeField& field,
                                       std::optional<CauchySpec> spec = std::nullopt,
                                       std::optional<uint32_t> epsilon = std::nullopt);

    // n = 2k, d = n-1 with a per-component diagonal scale instead of the
    // single scalar: sigmas[i][j] scales psi_j inside component i's own
    // column. Requires sigmas[i][j] != 0 and sigmas[i][j]*sigmas[j][i] != 1
    // for i != j; the canonical scalar choice is the special case of a
    // constant matrix.
    static MiserCode construct_sigma_variant(std::size_t k, const PrimeField& field,
                                             const std::vector<std::vector<uint32_t>>& sigmas);

    // Drop i leading message blocks and their systematic nodes:
    // [n,k,d] -> [n-i, k-i, d-i]. Requires 0 <= i < k.
    MiserCode shorten(std::size_t i) const;

    const CodeParams& params() const noexcept { return params_; }
    const PrimeField& field() const noexcept { return field_; }
    std::size_t shortened_by() const noexcept { return shortened_by_; }
    const CauchySpec& cauchy_spec() const noexcept { return cauchy_spec_; }
    // alpha x (n-k); column m defines parity node k+1+m (0-based m).
    const Matrix& parity_basis() const noexcept { return psi_; }
    // The uniform mixing scalar, when the code uses one (sigma variants may not).
    std::optional<uint32_t> uniform_epsilon() const;
    // Nodal generator matrices, message_len x alpha each, node id 1..n.
    const std::vector<Matrix>& generators() const noexcept { return generators_; }
    const Matrix& generator(std::size_t node) const;

    bool is_systematic(std::size_t node) const;

    // Symbol table for one stripe: row m-1 holds node m's alpha symbols.
    Matrix encode(const std::vector<uint32_t>& message) const;

    // What `helper` hands over when `failed` (systematic) is being repaired:
    // its pass_index(failed)-th stored symbol.
    std::size_t pass_index(std::size_t failed) const;
    RepairSymbol repair_symbol(std::size_t helper, std::size_t failed,
                               const std::vector<uint32_t>& helper_symbols) const;

    // Exact repair of systematic node `failed` from d one-symbol
    // contributions: all k-1 surviving systematic nodes plus exactly alpha
    // parity nodes must be represented (for d = n-1 that is every survivor).
    // Returns the failed node's alpha symbols.
    std::vector<uint32_t> repair_systematic(std::size_t failed,
                                            const std::vector<RepairSymbol>& symbols) const;

    // The columns the given parity nodes contribute to a repair of `failed`,
    // stacked as a message_len x alpha matrix (alignment checks consume this).
    Matrix repair_kernels(std::size_t failed,
                          std::vector<std::size_t> parity_nodes = {}) const;
    // Columns parity node `node` passes across repairs of nodes 1..k
    // (message_len x k; independence checks consume this).
    Matrix passed_vectors(std::size_t node) const;

    // Rebuild the message from any k distinct nodes' symbols (k x alpha,
    // row per node, same order as `nodes`). Runs the staged elimination:
    // strip known blocks, regroup columns by target block, normalize groups
    // against the parity point matrix, peel revealed symbols, then close
    // out the residual diagonal + 2x2 systems.
    std::vector<uint32_t> reconstruct(const std::vector<std::size_t>& nodes,
                                      const Matrix& symbols) const;

  private:
    MiserCode(CodeParams params, PrimeField field, CauchySpec spec, Matrix psi,
              std::vector<std::vector<uint32_t>> sigma, std::size_t shortened_by);

    // Parent dimensions: the unshortened code has k_p = alpha systematic
    // blocks and the same n-k parity nodes.
    std::size_t parent_k() const noexcept { return params_.alpha; }
    std::size_t parity_count() const noexcept { return psi_.cols(); }
    // Component block (alpha x alpha) of parity column m at parent block pc
    // (both 0-based).
    Matrix parent_component_block(std::size_t pc, std::size_t m) const;
    void build_generators();

    // Staged decode at parent level. known[b] holds block b's alpha symbols
    // for present blocks (zeros for the pinned ones); parity_cols / parity_syms
    // describe the connected parity nodes. Returns all parent blocks.
    std::vector<std::vector<uint32_t>> decode_blocks(
        const std::vector<std::optional<std::vector<uint32_t>>>& known,
        const std::vector<std::size_t>& parity_cols,
        const std::vector<std::vector<uint32_t>>& parity_syms) const;

    CodeParams params_;
    PrimeField field_;
    CauchySpec cauchy_spec_;
    Matrix psi_;
    // sigma_[i][j]: scale on psi_j inside parent component i's own column.
    std::vector<std::vector<uint32_t>> sigma_;
    std::size_t shortened_by_;
    std::vector<Matrix> generators_;
};

} // namespace rgc

#endif
