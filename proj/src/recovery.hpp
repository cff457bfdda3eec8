#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "code.hpp"

namespace hlrc {

// Nested repair-group structure of an evaluation set: positions sharing
// (x, z) form a lower group (one pi_{x,z} fiber), positions sharing z form a
// middle group (one curve Z_gamma). Within a middle group, lower groups are
// the x-buckets used by the two-layer interpolation.
struct HierarchyMap {
    std::vector<std::uint32_t> lower_id;    // position -> lower group
    std::vector<std::uint32_t> middle_id;   // position -> middle group
    std::vector<std::vector<std::uint32_t>> lower_groups;   // sorted positions
    std::vector<std::vector<std::uint32_t>> middle_groups;  // sorted positions
    std::vector<std::vector<std::uint32_t>> middle_buckets; // middle -> lower ids, by x
};

HierarchyMap build_hierarchy(const EvaluationSet& evalset);

// A codeword with erasures. Symbol values at erased positions are ignored.
struct ReceivedWord {
    std::vector<gf::elt> symbols;
    std::vector<std::uint8_t> erased;

    static ReceivedWord from_codeword(std::vector<gf::elt> codeword,
                                      const std::vector<std::uint32_t>& pattern);
};

struct RecoverOutcome {
    gf::elt value = 0;
    std::uint32_t symbols_accessed = 0;
};

// Interpolates the degree <= deg - rho2 polynomial in y over the lower group
// of position pos and evaluates it at y_pos. Requires at most rho2 - 1
// erasures in the group (raises insufficient_survivors beyond that).
RecoverOutcome recover_lower(const ReceivedWord& word, std::uint32_t pos, const HierarchyMap& map,
                             const CodeSpec& spec);

// Two-layer interpolation across the middle group of position pos: first the
// per-bucket polynomials in y, then each coefficient as a polynomial in x of
// degree <= eta - rho1. Requires at least eta - rho1 + 1 buckets with fewer
// than rho2 erasures (raises insufficient_buckets otherwise).
RecoverOutcome recover_middle(const ReceivedWord& word, std::uint32_t pos, const HierarchyMap& map,
                              const CodeSpec& spec);

struct RecoveryReport {
    enum class Outcome : std::uint8_t { recovered_lower, recovered_middle, failed };

    struct Entry {
        std::uint32_t position = 0;
        Outcome outcome = Outcome::failed;
        gf::elt value = 0;
        std::uint32_t symbols_accessed = 0;
    };

    std::vector<Entry> entries;
    std::uint64_t recovered_lower = 0;
    std::uint64_t recovered_middle = 0;
    std::uint64_t failed = 0;
    std::uint64_t incorrect = 0; // recovered values disagreeing with the input codeword
    std::uint64_t total_symbols_accessed = 0;

    bool all_recovered() const noexcept { return failed == 0; }
};

const char* recovery_outcome_name(RecoveryReport::Outcome o) noexcept;

// Erases `pattern` from `codeword`, then attempts recovery per position:
// lower level first, escalating to the middle level. Recovered values are
// checked against the input codeword; mismatches are counted (never silently
// reported as successes).
RecoveryReport simulate(const std::vector<gf::elt>& codeword,
                        const std::vector<std::uint32_t>& pattern, const HierarchyMap& map,
                        const CodeSpec& spec);

// Pattern generators.
std::vector<std::uint32_t> uniform_pattern(std::uint32_t n, std::uint32_t erasures,
                                           std::mt19937_64& rng);
// rho2 erasures in one lower group: defeats lower recovery, middle succeeds.
std::vector<std::uint32_t> worst_lower_pattern(const HierarchyMap& map, const CodeSpec& spec,
                                               std::mt19937_64& rng);
// rho1*rho2 - 1 erasures in one middle group arranged as rho1 - 1 fully broken
// buckets plus one bucket with rho2 - 1 erasures (the boundary the middle
// level still recovers); with at_failure = true, rho2 erasures in each of
// rho1 buckets instead (the stated unrecoverable pattern).
std::vector<std::uint32_t> worst_middle_pattern(const HierarchyMap& map, const CodeSpec& spec,
                                                std::mt19937_64& rng, bool at_failure = false);

} // namespace hlrc
