#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "recovery.hpp"

using namespace hlrc;
using gf::elt;

namespace {

struct Instance {
    CodeSpec spec;
    GeneratorMatrix G;
    HierarchyMap map;
};

Instance make_as3() {
    CodeSpec spec = validate_spec(fixtures::as_mixed_power(3), 5, {4, 2, 1, false});
    GeneratorMatrix G = generator_matrix(spec);
    HierarchyMap map = build_hierarchy(spec.T);
    return {std::move(spec), std::move(G), std::move(map)};
}

std::vector<elt> random_codeword(const Instance& inst, std::mt19937_64& rng) {
    const gf::Field& field = *inst.spec.surface.field;
    std::vector<elt> msg(inst.G.k);
    for (auto& m : msg) m = static_cast<elt>(rng() % field.q());
    return encode(field, inst.G, msg);
}

} // namespace

TEST_SUITE("recovery") {

TEST_CASE("hierarchy groups of the golden instances") {
    Instance inst = make_as3();
    CHECK(inst.map.lower_groups.size() == 20);  // 60 / 3
    CHECK(inst.map.middle_groups.size() == 4);
    for (const auto& g : inst.map.lower_groups) CHECK(g.size() == 3);
    for (const auto& g : inst.map.middle_groups) CHECK(g.size() == 15); // eta * p
    for (const auto& b : inst.map.middle_buckets) CHECK(b.size() == 5);

    // every position sits in exactly one lower and one middle group
    std::vector<int> seen_lower(60, 0), seen_middle(60, 0);
    for (const auto& g : inst.map.lower_groups)
        for (auto pos : g) seen_lower[pos]++;
    for (const auto& g : inst.map.middle_groups)
        for (auto pos : g) seen_middle[pos]++;
    CHECK(std::count(seen_lower.begin(), seen_lower.end(), 1) == 60);
    CHECK(std::count(seen_middle.begin(), seen_middle.end(), 1) == 60);

    CodeSpec k5 = validate_spec(fixtures::kummer_cubic_cover(5), 10, {6, 2, 1, false});
    HierarchyMap m5 = build_hierarchy(k5.T);
    CHECK(m5.middle_groups.size() == 24);
    for (const auto& g : m5.lower_groups) CHECK(g.size() == 6);
    for (const auto& g : m5.middle_groups) CHECK(g.size() == 60);
    for (const auto& b : m5.middle_buckets) CHECK(b.size() == 10);

    // a degenerate evaluation set with a single fiber: one middle group
    // covering every position
    EvaluationSet single;
    single.eta = 1;
    single.gammas = {0};
    for (gf::elt x = 0; x < 4; ++x)
        for (gf::elt y = 0; y < 2; ++y) single.points.push_back({x, y, 0});
    single.gamma_ranges = {{0, static_cast<std::uint32_t>(single.points.size())}};
    HierarchyMap ms = build_hierarchy(single);
    CHECK(ms.middle_groups.size() == 1);
    CHECK(ms.middle_groups[0].size() == single.points.size());
    CHECK(ms.lower_groups.size() == 4);
}

TEST_CASE("lower recovery round-trips and hits its guarantee boundary") {
    Instance inst = make_as3();
    std::mt19937_64 rng(7);

    for (int trial = 0; trial < 200; ++trial) {
        auto cw = random_codeword(inst, rng);
        const std::uint32_t pos = static_cast<std::uint32_t>(rng() % inst.G.n);
        ReceivedWord w = ReceivedWord::from_codeword(cw, {pos});
        RecoverOutcome out = recover_lower(w, pos, inst.map, inst.spec);
        CHECK(out.value == cw[pos]);
        CHECK(out.symbols_accessed == 2); // deg - rho2 + 1
    }

    // two erasures in one 3-point group exceed the d2 - 1 = rho2 - 1 guarantee
    auto cw = random_codeword(inst, rng);
    const auto& group = inst.map.lower_groups[0];
    ReceivedWord w = ReceivedWord::from_codeword(cw, {group[0], group[1]});
    CHECK_THROWS_AS((void)recover_lower(w, group[0], inst.map, inst.spec), error);
    try {
        (void)recover_lower(w, group[0], inst.map, inst.spec);
    } catch (const error& e) {
        CHECK(e.code() == errc::insufficient_survivors);
    }
}

TEST_CASE("constant-in-y codes recover from a single survivor") {
    // rho2 = deg makes the lower interpolation degree zero
    CodeSpec spec = validate_spec(fixtures::as_mixed_power(3), 5, {4, 3, 1, false});
    GeneratorMatrix G = generator_matrix(spec);
    HierarchyMap map = build_hierarchy(spec.T);
    std::mt19937_64 rng(11);
    std::vector<elt> msg(G.k);
    for (auto& m : msg) m = static_cast<elt>(rng() % 9);
    auto cw = encode(*spec.surface.field, G, msg);

    const auto& group = map.lower_groups[2];
    // erase all but one symbol of the group
    std::vector<std::uint32_t> pattern(group.begin(), group.end() - 1);
    ReceivedWord w = ReceivedWord::from_codeword(cw, pattern);
    for (std::uint32_t pos : pattern) {
        RecoverOutcome out = recover_lower(w, pos, map, spec);
        CHECK(out.value == cw[pos]);
        CHECK(out.symbols_accessed == 1);
    }
}

TEST_CASE("middle recovery survives a fully erased bucket") {
    Instance inst = make_as3();
    std::mt19937_64 rng(23);

    for (int trial = 0; trial < 100; ++trial) {
        auto cw = random_codeword(inst, rng);
        const auto& lower = inst.map.lower_groups[rng() % inst.map.lower_groups.size()];
        std::vector<std::uint32_t> pattern(lower.begin(), lower.end());
        ReceivedWord w = ReceivedWord::from_codeword(cw, pattern);
        for (std::uint32_t pos : pattern) {
            CHECK_THROWS_AS((void)recover_lower(w, pos, inst.map, inst.spec), error);
            RecoverOutcome out = recover_middle(w, pos, inst.map, inst.spec);
            CHECK(out.value == cw[pos]);
            // (eta - rho1 + 1) buckets * (deg - rho2 + 1) reads
            CHECK(out.symbols_accessed == 2 * 2);
            CHECK(out.symbols_accessed <= 15 - 1); // within the middle repair group
        }
    }
}

TEST_CASE("middle recovery at the exact guarantee boundary") {
    Instance inst = make_as3();
    std::mt19937_64 rng(31);

    for (int trial = 0; trial < 100; ++trial) {
        auto cw = random_codeword(inst, rng);
        // rho1*rho2 - 1 = 7 erasures: 3 broken buckets + one bucket one short
        auto pattern = worst_middle_pattern(inst.map, inst.spec, rng, false);
        CHECK(pattern.size() == 7);
        RecoveryReport report = simulate(cw, pattern, inst.map, inst.spec);
        CHECK(report.all_recovered());
        CHECK(report.incorrect == 0);
        // positions in the partially erased bucket recover at the lower level
        CHECK(report.recovered_lower == 1);
        CHECK(report.recovered_middle == 6);
    }
}

TEST_CASE("the stated failure pattern is reported failed") {
    Instance inst = make_as3();
    std::mt19937_64 rng(37);
    auto cw = random_codeword(inst, rng);
    // rho2 erasures in each of rho1 buckets
    auto pattern = worst_middle_pattern(inst.map, inst.spec, rng, true);
    CHECK(pattern.size() == 8);
    RecoveryReport report = simulate(cw, pattern, inst.map, inst.spec);
    CHECK(report.failed == report.entries.size());
    CHECK(report.incorrect == 0);

    // a fully erased middle group fails at both levels
    std::vector<std::uint32_t> whole(inst.map.middle_groups[1].begin(),
                                     inst.map.middle_groups[1].end());
    RecoveryReport r2 = simulate(cw, whole, inst.map, inst.spec);
    CHECK(r2.failed == whole.size());
}

TEST_CASE("simulate escalates per position and reports costs") {
    Instance inst = make_as3();
    std::mt19937_64 rng(41);
    auto cw = random_codeword(inst, rng);

    // single random erasure: recovered at the lower level, cost deg - rho2 + 1
    auto single = uniform_pattern(inst.G.n, 1, rng);
    RecoveryReport r1 = simulate(cw, single, inst.map, inst.spec);
    REQUIRE(r1.entries.size() == 1);
    CHECK(r1.entries[0].outcome == RecoveryReport::Outcome::recovered_lower);
    CHECK(r1.entries[0].symbols_accessed == 2);
    CHECK(r1.incorrect == 0);

    // empty pattern: empty report
    RecoveryReport r0 = simulate(cw, {}, inst.map, inst.spec);
    CHECK(r0.entries.empty());

    // worst-lower pattern: the broken group escalates, everything recovers
    auto wl = worst_lower_pattern(inst.map, inst.spec, rng);
    CHECK(wl.size() == 2);
    RecoveryReport r2 = simulate(cw, wl, inst.map, inst.spec);
    CHECK(r2.all_recovered());
    CHECK(r2.recovered_middle == 2);
}

TEST_CASE("escalation never changes outcomes within the lower guarantee") {
    Instance inst = make_as3();
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        auto cw = random_codeword(inst, rng);
        // at most rho2 - 1 = 1 erasure per lower group: erase one symbol in
        // several distinct groups
        std::vector<std::uint32_t> pattern;
        for (std::size_t g = 0; g < inst.map.lower_groups.size(); g += 2)
            pattern.push_back(inst.map.lower_groups[g][rng() % 3]);
        RecoveryReport report = simulate(cw, pattern, inst.map, inst.spec);
        CHECK(report.all_recovered());
        CHECK(report.recovered_lower == pattern.size()); // no escalation needed
        CHECK(report.incorrect == 0);
        // the middle path agrees wherever it is applicable
        ReceivedWord w = ReceivedWord::from_codeword(cw, pattern);
        for (std::uint32_t pos : pattern) {
            RecoverOutcome out = recover_middle(w, pos, inst.map, inst.spec);
            CHECK(out.value == cw[pos]);
        }
    }
}

TEST_CASE("kummer lower and middle recovery round-trip") {
    CodeSpec spec = validate_spec(fixtures::kummer_cubic_cover(5), 10, {6, 2, 1, false});
    GeneratorMatrix G = generator_matrix(spec);
    HierarchyMap map = build_hierarchy(spec.T);
    const gf::Field& field = *spec.surface.field;
    std::mt19937_64 rng(47);

    std::vector<elt> msg(G.k);
    for (auto& m : msg) m = static_cast<elt>(rng() % field.q());
    auto cw = encode(field, G, msg);

    // one erasure per group recovers at the lower level with 5 reads
    auto single = uniform_pattern(G.n, 1, rng);
    RecoveryReport r1 = simulate(cw, single, map, spec);
    CHECK(r1.entries[0].outcome == RecoveryReport::Outcome::recovered_lower);
    CHECK(r1.entries[0].symbols_accessed == 5); // lambda - rho2 + 1

    // a fully erased bucket recovers at the middle level
    auto pattern = worst_lower_pattern(map, spec, rng);
    RecoveryReport r2 = simulate(cw, pattern, map, spec);
    CHECK(r2.all_recovered());
    CHECK(r2.incorrect == 0);
    for (const auto& e : r2.entries) {
        CHECK(e.outcome == RecoveryReport::Outcome::recovered_middle);
        CHECK(e.symbols_accessed == 5 * 5); // (eta - rho1 + 1)(lambda - rho2 + 1)
        CHECK(e.symbols_accessed <= 60 - 1);
    }
}

} // TEST_SUITE
