#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surface.hpp"

namespace hlrc {

struct CodeParams {
    std::uint32_t rho1 = 0;
    std::uint32_t rho2 = 0;
    std::uint32_t rho3 = 0;
    bool waive_condition2 = false;
};

// A validated code specification with its evaluation set built.
struct CodeSpec {
    SurfaceSpec surface;
    std::uint32_t eta = 0;
    bool eta_auto = false;
    CodeParams params;
    EvaluationSet T;
    std::vector<std::string> warnings; // waived checks

    std::uint32_t gamma_count() const noexcept {
        return static_cast<std::uint32_t>(T.gammas.size());
    }
    std::uint32_t cover_degree() const noexcept { return surface.cover_degree(); }
    std::uint32_t s_degree() const noexcept { return surface.s_degree(); }
    // M = eta + cover_degree - rho1 - rho2 (may be negative for waived specs)
    std::int64_t truncation_degree() const noexcept {
        return static_cast<std::int64_t>(eta) + cover_degree() - params.rho1 - params.rho2;
    }
};

// Checks all range and inequality conditions and assembles Gamma and T.
// eta = nullopt selects the auto mode (largest admissible eta).
CodeSpec validate_spec(SurfaceSpec surface, std::optional<std::uint32_t> eta, CodeParams params);

struct Monomial {
    std::uint32_t xdeg = 0;
    std::uint32_t ydeg = 0;
    std::uint32_t zdeg = 0;
};

// Monomials x^i y^j z^k with i <= eta - rho1, j <= deg - rho2, k <= |Gamma| - rho3,
// in lexicographic (i, j, k) order. Its size is the code dimension k.
std::vector<Monomial> monomial_basis(const CodeSpec& spec);

std::uint64_t code_dimension(const CodeSpec& spec);

struct GeneratorMatrix {
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    std::vector<Monomial> basis;             // row order
    std::vector<gf::elt> entries;            // row-major k*n
    std::uint32_t rank = 0;

    gf::elt at(std::uint32_t row, std::uint32_t col) const {
        return entries[static_cast<std::size_t>(row) * n + col];
    }
    std::span<const gf::elt> row(std::uint32_t r) const {
        return std::span<const gf::elt>(entries).subspan(static_cast<std::size_t>(r) * n, n);
    }
};

// Fills the evaluation matrix and verifies rank = k by Gaussian elimination
// over the field; a rank drop raises rank_deficient.
GeneratorMatrix generator_matrix(const CodeSpec& spec);

// Rank of an arbitrary row-major matrix over the field (exact arithmetic).
std::uint32_t matrix_rank(const gf::Field& field, std::vector<gf::elt> a, std::uint32_t rows,
                          std::uint32_t cols);

// codeword = message * G
std::vector<gf::elt> encode(const gf::Field& field, const GeneratorMatrix& G,
                            std::span<const gf::elt> message);

enum class BoundBranch : std::uint8_t { product, bezout, tie };

struct DistanceBound {
    std::uint64_t value = 0;        // rho3 * max(product_term, bezout_term)
    std::uint64_t product_term = 0; // rho1 * rho2
    std::int64_t bezout_term = 0;   // deg*rho1 - s*(deg - rho2)
    BoundBranch branch = BoundBranch::product;
};

DistanceBound distance_bound(const CodeSpec& spec);

const char* bound_branch_name(BoundBranch b) noexcept;

struct ParamReport {
    std::uint32_t n = 0;
    std::uint64_t k = 0;
    DistanceBound d;
    double rate = 0.0;
    double relative_distance_bound = 0.0;

    // middle codes, one per fiber
    std::uint64_t n1_lower = 0;                // eta * cover_degree
    std::vector<std::uint32_t> n1_per_gamma;   // exact |T_gamma|
    std::uint64_t k1 = 0;
    std::uint64_t d1 = 0;

    // lower codes, one per pi_{x,z} fiber
    std::uint32_t n2 = 0;
    std::uint32_t k2 = 0;
    std::uint32_t d2 = 0;

    std::vector<std::string> warnings;
};

ParamReport param_report(const CodeSpec& spec);

} // namespace hlrc
