#ifndef RGC_CAUCHY_HPP
#define RGC_CAUCHY_HPP

#include <vector>

#include "matrix.hpp"

namespace rgc {

// Point sets for an s x t Cauchy matrix with entries 1/(x_i - y_j).
// All x_i and y_j together must be pairwise distinct, which forces
// s + t <= q; every square submatrix of the result is then invertible.
struct CauchySpec {
    std::vector<uint32_t> x;
    std::vector<uint32_t> y;

    // Canonical point choice: y = 0..t-1, x = t..t+s-1.
    static CauchySpec default_spec(std::size_t s, std::size_t t, const PrimeField& field);

    void validate(const PrimeField& field) const;
};

Matrix build_cauchy(const CauchySpec& spec, const PrimeField& field);

} // namespace rgc

#endif
