#ifndef RGC_TESTS_HELPERS_HPP
#define RGC_TESTS_HELPERS_HPP

#include <functional>
#include <random>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace rgc_test {

inline bool raises(rgc::ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const rgc::Error& e) {
        return e.code() == code;
    }
    return false;
}

inline std::vector<uint32_t> random_symbols(std::size_t len, uint32_t q,
                                            std::mt19937_64& rng) {
    std::uniform_int_distribution<uint32_t> pick(0, q - 1);
    std::vector<uint32_t> out(len);
    for (auto& v : out) v = pick(rng);
    return out;
}

inline rgc::Matrix random_matrix(std::size_t rows, std::size_t cols,
                                 const rgc::PrimeField& field, std::mt19937_64& rng) {
    std::uniform_int_distribution<uint32_t> pick(0, field.q() - 1);
    rgc::Matrix m(rows, cols, field);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, pick(rng));
    }
    return m;
}

inline rgc::Matrix random_invertible(std::size_t n, const rgc::PrimeField& field,
                                     std::mt19937_64& rng) {
    while (true) {
        rgc::Matrix m = random_matrix(n, n, field, rng);
        if (m.rank() == n) return m;
    }
}

// Test-only reference decoder: stack the chosen nodal generators into the
// full square system and invert it in one shot. The production decoder must
// agree with this on every input.
inline std::vector<uint32_t> oracle_decode(const std::vector<rgc::Matrix>& generators,
                                           const std::vector<std::size_t>& nodes,
                                           const rgc::Matrix& symbols) {
    std::vector<rgc::Matrix> parts;
    std::vector<uint32_t> y;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        parts.push_back(generators[nodes[i] - 1]);
        std::vector<uint32_t> row = symbols.row(i);
        y.insert(y.end(), row.begin(), row.end());
    }
    rgc::Matrix stacked = rgc::Matrix::hstack(parts);
    // y = u * stacked  =>  u = y * stacked^{-1}
    return stacked.inverse().left_mul(y);
}

} // namespace rgc_test

#endif
