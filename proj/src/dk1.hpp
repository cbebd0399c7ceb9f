#ifndef RGC_DK1_HPP
#define RGC_DK1_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "matrix.hpp"
#include "params.hpp"

namespace rgc {

// Everything a d = k+1 repair round needs. Helpers are the sorted helper
// ids; the last one plays the distinguished (k+1)-th role and always gets
// lambda = 0. rho/delta combine the d passed symbols into the replacement's
// two symbols; r_new is the refreshed second-layer vector the replacement
// adopts (repair is approximately exact: the first symbol is reproduced
// bit-for-bit, the second re-randomizes its interference vector).
struct RepairCoefficients {
    std::size_t failed = 0;
    std::vector<std::size_t> helpers; // sorted ascending, size d = k+1
    std::vector<uint32_t> lambda;     // per helper; lambda.back() == 0
    std::vector<uint32_t> rho;        // combiner for the first symbol
    std::vector<uint32_t> delta;      // combiner for the second symbol
    std::vector<uint32_t> r_new;      // replacement's new r vector
};

// MSR code at d = k+1 (alpha = 2, message = two length-k blocks u1, u2).
// Node i stores (p_i.u1, p_i.u2 + r_i.u1): a clean first layer plus a
// second layer carrying interference r_i that repairs are free to rewrite.
// The p vectors are fixed for the life of the code (any k of them must be
// independent); the r vectors mutate as nodes get repaired.
class Dk1Code {
  public:
    // Default p vectors: Vandermonde rows over points 0..n-1 (needs q >= n);
    // r starts at zero.
    static Dk1Code construct(std::size_t n, std::size_t k, const PrimeField& field);
    // Caller-supplied layers. p is n x k and should have every k-row-subset
    // invertible; construction rejects the cheap necessary violations
    // (dependent pairs, rank < k) and leaves exhaustive certification to
    // verify_mds, so near-miss inputs stay usable for repair-only work.
    // r is n x k, free.
    static Dk1Code construct(std::size_t n, std::size_t k, const PrimeField& field,
                             const Matrix& p, const Matrix& r);

    const CodeParams& params() const noexcept { return params_; }
    const PrimeField& field() const noexcept { return field_; }
    const Matrix& p_vectors() const noexcept { return p_; }
    const Matrix& r_vectors() const noexcept { return r_; }

    // Symbol table: row i-1 = node i's (first, second) symbols.
    Matrix encode(const std::vector<uint32_t>& u1, const std::vector<uint32_t>& u2) const;
    // Stacked-message convenience: message = u1 followed by u2 (2k symbols).
    Matrix encode(const std::vector<uint32_t>& message) const;

    // Rebuild (u1, u2) from any k distinct nodes (symbols: k x 2, row per
    // node in the order of `nodes`). Returns u1 followed by u2.
    std::vector<uint32_t> reconstruct(const std::vector<std::size_t>& nodes,
                                      const Matrix& symbols) const;

    // Pure function of the current code state; does not mutate anything.
    // helpers must be d = k+1 distinct survivors.
    RepairCoefficients repair_coefficients(std::size_t failed,
                                           const std::vector<std::size_t>& helpers) const;

    // What one helper sends: lambda * first + second of its stored pair.
    static uint32_t helper_symbol(const RepairCoefficients& coeffs, std::size_t helper,
                                  const std::array<uint32_t, 2>& stored,
                                  const PrimeField& field);

    // Rebuild `failed` from the d passed symbols (ordered like
    // coeffs.helpers) and adopt coeffs.r_new as its r vector. Returns the
    // node's two refreshed symbols.
    std::array<uint32_t, 2> repair(const RepairCoefficients& coeffs,
                                   const std::vector<uint32_t>& passed);

    // B x 2 generator of node i under the current r state.
    Matrix generator(std::size_t node) const;

  private:
    Dk1Code(CodeParams params, PrimeField field, Matrix p, Matrix r);
    void validate_first_layer() const;

    CodeParams params_;
    PrimeField field_;
    Matrix p_;
    Matrix r_;
};

} // namespace rgc

#endif
