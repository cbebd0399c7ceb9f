#include "gf.hpp"

namespace rgc {

namespace {

bool is_prime(uint32_t q) {
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (uint64_t f = 3; f * f <= q; f += 2) {
        if (q % f == 0) return false;
    }
    return true;
}

} // namespace

PrimeField::PrimeField(uint32_t q) : q_(q) {
    if (!is_prime(q)) {
        fail(ErrorCode::not_prime, "field order " + std::to_string(q) + " is not prime");
    }
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const noexcept {
    uint64_t base = a % q_;
    uint64_t acc = 1 % q_;
    while (e) {
        if (e & 1) acc = acc * base % q_;
        base = base * base % q_;
        e >>= 1;
    }
    return static_cast<uint32_t>(acc);
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a % q_ == 0) {
        fail(ErrorCode::division_by_zero, "inverse of zero in F_" + std::to_string(q_));
    }
    // Fermat: a^(q-2) = a^-1 for prime q.
    return pow(a % q_, q_ - 2);
}

FieldElement::FieldElement(uint32_t value, const PrimeField& field)
    : value_(value), field_(field) {
    if (!field_.in_range(value)) {
        fail(ErrorCode::invalid_argument,
             "value " + std::to_string(value) + " out of range for F_" +
                 std::to_string(field_.q()));
    }
}

void FieldElement::require_same_field(const FieldElement& o) const {
    if (field_ != o.field_) {
        fail(ErrorCode::field_mismatch,
             "operands live in different fields (F_" + std::to_string(field_.q()) +
                 " vs F_" + std::to_string(o.field_.q()) + ")");
    }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(o);
    return FieldElement(field_.add(value_, o.value_), field_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(o);
    return FieldElement(field_.sub(value_, o.value_), field_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(o);
    return FieldElement(field_.mul(value_, o.value_), field_);
}

FieldElement FieldElement::operator-() const {
    return FieldElement(field_.neg(value_), field_);
}

FieldElement FieldElement::inverse() const {
    return FieldElement(field_.inv(value_), field_);
}

} // namespace rgc
