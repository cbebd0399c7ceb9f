#ifndef RGC_ERROR_HPP
#define RGC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rgc {

// Error taxonomy shared by the C++ core and the C API (codes map 1:1).
enum class ErrorCode : int {
    ok = 0,
    invalid_argument = 1,
    not_prime = 2,
    field_mismatch = 3,
    division_by_zero = 4,
    shape_mismatch = 5,
    singular_matrix = 6,
    index_out_of_range = 7,
    injectivity = 8,
    field_too_small = 9,
    invalid_params = 10,
    arity = 11,
    helper_set = 12,
    unsupported_parity_repair = 13,
    independence = 14,
    invalid_sigma = 15,
    budget_exceeded = 16,
    corruption = 17,
    io = 18,
    locked = 19,
    insufficient_nodes = 20,
    bad_manifest = 21,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace rgc

#endif
