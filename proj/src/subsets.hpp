#ifndef RGC_SUBSETS_HPP
#define RGC_SUBSETS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rgc {

// Visit every size-k subset of {0..n-1} in lexicographic order; fn returning
// false stops the walk early. Returns false iff the walk was stopped.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) return fn(idx);
    while (true) {
        if (!fn(idx)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// C(n, k), saturating at cap+1 so callers can compare against a budget
// without overflow.
inline uint64_t binomial_capped(std::size_t n, std::size_t k, uint64_t cap) {
    if (k > n) return 0;
    uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

} // namespace rgc

#endif
