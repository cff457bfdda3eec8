#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "code.hpp"

namespace hlrc {

struct DistanceResult {
    enum class Mode : std::uint8_t { exhaustive, sampled };

    Mode mode = Mode::sampled;
    std::uint64_t min_weight = 0;
    std::vector<std::vector<gf::elt>> witnesses; // minimum-weight messages, up to a few
    std::uint64_t evaluated = 0;                 // messages whose weight was computed
    std::uint64_t seed = 0;                      // sampled mode only
};

inline constexpr std::uint64_t default_distance_budget = 10'000'000;

// True minimum distance by enumerating nonzero messages up to scalar
// multiples ((q^k - 1)/(q - 1) weight computations). Raises budget_exceeded
// when the enumeration would not fit the budget; the caller must fall back to
// sampling in that case.
DistanceResult min_distance_exhaustive(const gf::Field& field, const GeneratorMatrix& G,
                                       std::uint64_t budget = default_distance_budget,
                                       unsigned max_witnesses = 4);

// Minimum weight over `trials` uniformly random nonzero messages. An upper
// bound on the distance only. Deterministic given the seed.
DistanceResult min_weight_sampled(const gf::Field& field, const GeneratorMatrix& G,
                                  std::uint64_t trials, std::uint64_t seed);

// Minimum weight over all messages supported on at most two basis monomials
// (up to scalars). Minimum-weight codewords of evaluation codes tend to be
// sparse in the monomial basis, so this probes far below what uniform
// sampling reaches.
DistanceResult sparse_low_weight_search(const gf::Field& field, const GeneratorMatrix& G);

struct BoundAudit {
    std::uint64_t measured = 0;
    std::uint64_t bound = 0;
    bool exhaustive = false;
    bool pass = false;
    std::int64_t slack = 0; // measured - bound, meaningful for exhaustive results
    std::vector<gf::elt> witness;
};

// PASS iff every measured weight is at least the closed-form bound. The
// witness of a violation is the offending message.
BoundAudit check_bound(const CodeSpec& spec, const std::vector<DistanceResult>& results);

// One checked claim of a census run.
struct CensusRecord {
    std::string what;      // which quantity was counted
    gf::elt gamma = 0;     // fiber label where applicable
    std::uint64_t counted = 0;
    std::uint64_t formula_value = 0;
    bool match = false;
};

// For the cubic-cover Kummer family at base size q (q = 2 mod 3, field
// GF(q^2)): per nonzero gamma, counts the projective points of the fiber
// closure directly in P^2 and compares with (q^3 + 2q^2 + 2q + 7)/3; also
// checks |T_gamma| = q(q+1)m and |pi_x(T_gamma)| = mq.
std::vector<CensusRecord> kummer_family_point_counts(std::uint32_t q);

// For the mixed-power Artin-Schreier family over GF(p^2) with eta = 2p - 1:
// checks |Gamma| = (p-1)^2, |T| = (2p^2 - p)(p-1)^2, and that the excluded
// nonzero gamma are exactly the solutions of gamma^{p-1} = gamma^{1-p}.
std::vector<CensusRecord> as_family_census(std::uint32_t p);

// Builders for the two bundled families (shared with presets and tests).
SurfaceSpec make_as_mixed_power_surface(std::uint32_t p);
SurfaceSpec make_kummer_cubic_cover_surface(std::uint32_t q);

} // namespace hlrc
