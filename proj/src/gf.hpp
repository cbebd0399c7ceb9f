#ifndef RGC_GF_HPP
#define RGC_GF_HPP

#include <cstdint>
#include <string>

#include "error.hpp"

namespace rgc {

// Prime field F_q. Cheap value type: holds only the modulus.
//
// The checked entry points (element()/FieldElement operators) validate field
// identity and operand range; matrix and decoder hot paths use the raw u32
// variants below after validating once at the boundary.
class PrimeField {
  public:
    // Validates primality (trial division); q >= 2.
    explicit PrimeField(uint32_t q);

    uint32_t q() const noexcept { return q_; }

    bool operator==(const PrimeField& o) const noexcept { return q_ == o.q_; }
    bool operator!=(const PrimeField& o) const noexcept { return q_ != o.q_; }

    // Raw ops on canonical representatives in [0, q). No range checks.
    uint32_t add(uint32_t a, uint32_t b) const noexcept {
        uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const noexcept {
        return a >= b ? a - b : a + q_ - b;
    }
    uint32_t neg(uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const noexcept {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % q_);
    }
    uint32_t pow(uint32_t a, uint64_t e) const noexcept;
    // Multiplicative inverse; a == 0 raises division_by_zero.
    uint32_t inv(uint32_t a) const;
    // Reduce an arbitrary signed value into [0, q).
    uint32_t reduce(int64_t v) const noexcept {
        int64_t r = v % static_cast<int64_t>(q_);
        if (r < 0) r += q_;
        return static_cast<uint32_t>(r);
    }

    bool in_range(uint32_t a) const noexcept { return a < q_; }

  private:
    uint32_t q_;
};

// Element with its field attached. Binary ops check the fields match.
class FieldElement {
  public:
    FieldElement(uint32_t value, const PrimeField& field);

    uint32_t value() const noexcept { return value_; }
    const PrimeField& field() const noexcept { return field_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && value_ == o.value_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    void require_same_field(const FieldElement& o) const;

    uint32_t value_;
    PrimeField field_;
};

} // namespace rgc

#endif
