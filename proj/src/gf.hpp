#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"

namespace hlrc::gf {

// An element of GF(p^h), stored as its canonical index (see Field).
using elt = std::uint32_t;

inline constexpr std::uint64_t default_cardinality_cap = 1ull << 16;

// Exact arithmetic in GF(p^h) = GF(p)[x]/(modulus) with a deterministic
// canonical representation.
//
// An element with coefficient vector (c0, c1, ..., c_{h-1}) -- constant term
// first -- has canonical index c0*p^{h-1} + c1*p^{h-2} + ... + c_{h-1}.
// Ascending index order is therefore lexicographic order on coefficient
// vectors, which is the total order used everywhere for sorting points,
// picking moduli and emitting artifacts.
//
// Multiplication and inversion go through discrete-log tables built once at
// construction; addition is digit-wise mod p (table-backed for small q).
class Field {
public:
    Field(std::uint32_t p, std::uint32_t h,
          std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
          std::uint64_t cardinality_cap = default_cardinality_cap);

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;
    Field(Field&&) = default;
    Field& operator=(Field&&) = default;

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t h() const noexcept { return h_; }
    std::uint32_t q() const noexcept { return q_; }
    // Modulus polynomial, ascending powers (constant term first), length h+1, monic.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    elt zero() const noexcept { return 0; }
    elt one() const noexcept { return one_; }

    // Bounds-checked lookup by canonical index.
    elt element(std::uint64_t canonical_index) const;
    // Coefficient vector (constant term first, length <= h, entries < p) -> element.
    elt from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(elt a) const;
    // n mod p embedded as the constant c0 = n mod p.
    elt from_subfield_int(std::uint64_t n) const;

    elt add(elt a, elt b) const;
    elt sub(elt a, elt b) const;
    elt neg(elt a) const;
    elt mul(elt a, elt b) const;
    elt inv(elt a) const;
    elt div(elt a, elt b) const { return mul(a, inv(b)); }
    elt pow(elt a, long long e) const;

    // True iff GF(p^h) contains a primitive lambda-th root of unity, i.e.
    // lambda | q-1. Requires gcd(lambda, p) = 1.
    bool has_primitive_root_of_unity(std::uint64_t lambda) const;

    // Direct view of the addition table for hot loops, laid out row-major
    // (add(a, b) = table[a*q + b]). Empty when q is too large to tabulate;
    // callers must fall back to add().
    std::span<const elt> add_table() const noexcept { return add_table_; }

    // All y with y^lambda = c, by exhaustive scan, ascending canonical order.
    // Requires lambda | q-1. The result has size 0 or lambda for c != 0, and
    // is exactly {0} for c = 0.
    std::vector<elt> solve_kummer_root(std::uint64_t lambda, elt c) const;

private:
    void check_element(elt a) const;

    std::uint32_t p_ = 0;
    std::uint32_t h_ = 0;
    std::uint32_t q_ = 0;
    elt one_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> place_;   // place_[i] = p^{h-1-i}, the weight of coefficient i
    std::vector<elt> exp_;               // exp_[i] = g^i, i in [0, 2(q-1))
    std::vector<std::uint32_t> log_;     // log_[a] for a != 0
    std::vector<elt> neg_;               // additive inverses
    std::vector<elt> add_table_;         // q*q entries when q is small, else empty
};

// Supported left-hand sides of additive fiber equations L(y) = c:
// y^p - y (Artin-Schreier) and y^q0 + y with q0 a power of p dividing q.
struct AdditiveLhs {
    enum class Kind : std::uint8_t { y_p_minus_y, y_q0_plus_y };

    Kind kind = Kind::y_p_minus_y;
    std::uint64_t q0 = 0; // only meaningful for y_q0_plus_y

    static AdditiveLhs artin_schreier() { return {Kind::y_p_minus_y, 0}; }
    static AdditiveLhs plus_form(std::uint64_t q0) { return {Kind::y_q0_plus_y, q0}; }

    bool operator==(const AdditiveLhs&) const = default;
};

// Raises unsupported_lhs unless lhs is one of the supported forms for field.
void validate_additive_lhs(const Field& field, const AdditiveLhs& lhs);

// Degree of L as a polynomial in y (p, or q0).
std::uint32_t additive_lhs_degree(const Field& field, const AdditiveLhs& lhs);

elt eval_additive(const Field& field, const AdditiveLhs& lhs, elt y);

// All y with L(y) = c, by exhaustive scan, ascending canonical order.
// The result size is 0 or |ker L|.
std::vector<elt> solve_additive(const Field& field, const AdditiveLhs& lhs, elt c);

// ker L = solve_additive(field, lhs, 0).
std::vector<elt> additive_kernel(const Field& field, const AdditiveLhs& lhs);

} // namespace hlrc::gf
