#pragma once

#include <stdexcept>
#include <string>

namespace hlrc {

// Stable error codes. These are mirrored one-to-one by the C API status
// enum, so values must not be reordered.
enum class errc : int {
    ok = 0,
    not_prime = 1,
    reducible_modulus = 2,
    cardinality_cap_exceeded = 3,
    division_by_zero = 4,
    field_mismatch = 5,
    lambda_divisible_by_characteristic = 6,
    lambda_not_dividing_group_order = 7,
    unsupported_lhs = 8,
    empty_gamma_set = 9,
    rho_out_of_range = 10,
    condition2_violated = 11,
    rank_deficient = 12,
    insufficient_survivors = 13,
    insufficient_buckets = 14,
    budget_exceeded = 15,
    bound_violated = 16,
    formula_mismatch = 17,
    census_mismatch = 18,
    config_invalid = 19,
    internal_error = 20,
};

const char* errc_name(errc c) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) {
    throw error(code, msg);
}

} // namespace hlrc
