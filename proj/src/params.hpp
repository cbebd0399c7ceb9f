#ifndef RGC_PARAMS_HPP
#define RGC_PARAMS_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace rgc {

// Shape of a regenerating code: n storage nodes, any k suffice to rebuild the
// message, d helpers serve a repair. Each node keeps alpha symbols, helpers
// send beta symbols each, and a message stripe carries message_len = k*alpha
// symbols of F_q.
struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t d = 0;
    std::size_t alpha = 0;
    std::size_t beta = 1;
    std::size_t message_len = 0;
    uint32_t q = 0;

    // Minimum-storage point: alpha = (d - k + 1) * beta, message_len = k * alpha.
    static CodeParams msr(std::size_t n, std::size_t k, std::size_t d, uint32_t q) {
        if (k < 1 || d < k || d > n - 1 || n < 2) {
            fail(ErrorCode::invalid_params,
                 "need 1 <= k <= d <= n-1, got n=" + std::to_string(n) + " k=" +
                     std::to_string(k) + " d=" + std::to_string(d));
        }
        CodeParams p;
        p.n = n;
        p.k = k;
        p.d = d;
        p.alpha = d - k + 1;
        p.beta = 1;
        p.message_len = k * p.alpha;
        p.q = q;
        if (p.alpha < 2) {
            fail(ErrorCode::invalid_params,
                 "per-node storage alpha = d-k+1 must be at least 2 (got d=" +
                     std::to_string(d) + ", k=" + std::to_string(k) + ")");
        }
        return p;
    }

    std::size_t repair_bandwidth() const noexcept { return d * beta; }
};

} // namespace rgc

#endif
