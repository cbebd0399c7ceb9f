#include "cauchy.hpp"

#include <set>
#include <string>

namespace rgc {

CauchySpec CauchySpec::default_spec(std::size_t s, std::size_t t, const PrimeField& field) {
    if (s == 0 || t == 0) {
        fail(ErrorCode::invalid_argument, "cauchy spec needs s >= 1 and t >= 1");
    }
    if (s + t > field.q()) {
        fail(ErrorCode::field_too_small,
             "F_" + std::to_string(field.q()) + " cannot host " + std::to_string(s + t) +
                 " distinct cauchy points");
    }
    CauchySpec spec;
    spec.y.resize(t);
    for (std::size_t j = 0; j < t; ++j) spec.y[j] = static_cast<uint32_t>(j);
    spec.x.resize(s);
    for (std::size_t i = 0; i < s; ++i) spec.x[i] = static_cast<uint32_t>(t + i);
    return spec;
}

void CauchySpec::validate(const PrimeField& field) const {
    if (x.empty() || y.empty()) {
        fail(ErrorCode::invalid_argument, "cauchy spec needs nonempty point sets");
    }
    if (x.size() + y.size() > field.q()) {
        fail(ErrorCode::field_too_small,
             "F_" + std::to_string(field.q()) + " cannot host " +
                 std::to_string(x.size() + y.size()) + " distinct cauchy points");
    }
    std::set<uint32_t> seen;
    for (uint32_t v : x) {
        if (!field.in_range(v)) {
            fail(ErrorCode::invalid_argument, "cauchy point out of field range");
        }
        if (!seen.insert(v).second) {
            fail(ErrorCode::injectivity, "cauchy point " + std::to_string(v) + " repeats");
        }
    }
    for (uint32_t v : y) {
        if (!field.in_range(v)) {
            fail(ErrorCode::invalid_argument, "cauchy point out of field range");
        }
        if (!seen.insert(v).second) {
            fail(ErrorCode::injectivity, "cauchy point " + std::to_string(v) + " repeats");
        }
    }
}

Matrix build_cauchy(const CauchySpec& spec, const PrimeField& field) {
    spec.validate(field);
    Matrix m(spec.x.size(), spec.y.size(), field);
    for (std::size_t i = 0; i < spec.x.size(); ++i) {
        for (std::size_t j = 0; j < spec.y.size(); ++j) {
            m.set(i, j, field.inv(field.sub(spec.x[i], spec.y[j])));
        }
    }
    return m;
}

} // namespace rgc
