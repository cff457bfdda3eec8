// Acceptance suite: one check per release criterion, each printing a single
// PASS/FAIL line with the measured quantities. Exits nonzero when any
// criterion fails. Run with no arguments for all criteria, or pass criterion
// numbers to run a subset.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "job.hpp"
#include "recovery.hpp"
#include "verify.hpp"

using namespace hlrc;
using gf::elt;

namespace {

struct Criterion {
    int number;
    double limit_seconds; // 0 = no stated limit
    std::string detail;
    bool pass = true;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED: ") + what;
        }
    }
    void note(const std::string& what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

BuiltCode build_preset(const char* name) {
    return build_from_config(parse_config_text(preset_config_text(name)));
}

std::uint64_t weight_of(const std::vector<elt>& v) {
    std::uint64_t w = 0;
    for (elt x : v) w += (x != 0);
    return w;
}

// --- criterion 1: the p = 3 golden instance ---------------------------------
void criterion1(Criterion& c) {
    BuiltCode b = build_preset("as-p3-maxdim");
    const gf::Field& field = *b.spec.surface.field;

    c.require(b.G.n == 60, "n must be exactly 60");
    c.require(b.G.k == 16 && b.G.rank == 16, "k must be 16 with full rank");
    ParamReport r = param_report(b.spec);
    c.require(r.n2 == 3 && r.k2 == 2, "lower locals must be n2 = 3, k2 = 2");

    DistanceResult sampled = min_weight_sampled(field, b.G, 100000, 2024);
    DistanceResult sparse = sparse_low_weight_search(field, b.G);
    c.require(sampled.evaluated >= 100000, "at least 1e5 sampled messages");
    c.require(sampled.min_weight >= 8, "sampled weight fell below 8");
    c.require(sparse.min_weight >= 8, "sparse-search weight fell below 8");

    std::ostringstream os;
    os << "n=60 k=16 rank=16 locals(n2=3,k2=2), sampled(1e5) min " << sampled.min_weight
       << ", sparse min " << sparse.min_weight << ", bound 8";
    c.note(os.str());
}

// --- criterion 2: exhaustive distance, frozen regression value --------------
void criterion2(Criterion& c) {
    JobConfig cfg = parse_config_text(preset_config_text("as-p3-maxdim"));
    CodeSpec spec = validate_spec(cfg.surface, 5, {5, 2, 3, false});
    GeneratorMatrix G = generator_matrix(spec);
    c.require(code_dimension(spec) == 4, "k must be 4");

    DistanceResult r = min_distance_exhaustive(*cfg.field, G);
    c.require(r.evaluated == 820, "enumeration must cover 820 projective messages");
    const std::uint64_t bound = distance_bound(spec).value;
    c.require(bound == 33, "closed-form bound must be 33");
    c.require(r.min_weight >= 33, "true distance below the bound");
    c.require(r.min_weight == 36, "regression: exhaustive distance must stay 36");

    std::ostringstream os;
    os << "true d = " << r.min_weight << " from 820 messages, bound 33";
    c.note(os.str());
}

// --- criterion 3: cubic-cover point counts -----------------------------------
void criterion3(Criterion& c) {
    for (std::uint32_t q : {2u, 5u}) {
        auto records = kummer_family_point_counts(q);
        const std::uint64_t expected_projective = q == 2 ? 9 : 64;
        std::size_t projective_checks = 0;
        for (const auto& rec : records) {
            c.require(rec.match, rec.what + " mismatch at q = " + std::to_string(q));
            if (rec.what == "projective_points") {
                ++projective_checks;
                c.require(rec.counted == expected_projective,
                          "projective count at q = " + std::to_string(q));
            }
            if (q == 5 && rec.what == "fiber_points")
                c.require(rec.counted == 60, "fiber size at q = 5 must be 60");
            if (q == 5 && rec.what == "fiber_x_image")
                c.require(rec.counted == 10, "fiber x-image at q = 5 must be 10");
        }
        const std::uint64_t gammas = q * q - 1;
        c.require(projective_checks == gammas,
                  "one projective count per nonzero gamma at q = " + std::to_string(q));
    }
    c.note("per-fiber projective counts 9 (q=2, 3 fibers) and 64 (q=5, 24 fibers); "
           "|T_gamma| = 60 and x-image 10 at q = 5");
}

// --- criterion 4: sharpness witness ------------------------------------------
void criterion4(Criterion& c) {
    BuiltCode b = build_preset("kummer-q5-sharp");
    const gf::Field& field = *b.spec.surface.field;
    c.require(b.G.n == 1440, "n must be 1440");
    c.require(b.G.k == 2, "k must be 2");
    c.require(distance_bound(b.spec).value == 1380, "bound must be 1380");

    // basis {1, z}: the message (1, -1) evaluates 1 - z
    std::vector<elt> msg = {field.one(), field.neg(field.one())};
    const std::uint64_t w = weight_of(encode(field, b.G, msg));
    c.require(w == 1380, "the 1 - z codeword must have weight exactly 1380");

    std::ostringstream os;
    os << "n=1440 k=2, weight(1-z) = " << w << " == bound 1380 (exact)";
    c.note(os.str());
}

// --- criterion 5: recovery guarantees, randomized ----------------------------
struct RecoveryTally {
    std::uint64_t trials = 0;
    std::uint64_t incorrect = 0;
};

void recovery_battery(Criterion& c, const BuiltCode& b, std::uint64_t trials_in_guarantee,
                      std::uint64_t trials_boundary, std::uint64_t trials_failure,
                      std::uint64_t trials_uniform, std::mt19937_64& rng, RecoveryTally& tally) {
    const gf::Field& field = *b.spec.surface.field;
    const std::uint32_t rho2 = b.spec.params.rho2;

    auto random_codeword = [&] {
        std::vector<elt> msg(b.G.k);
        for (auto& m : msg) m = static_cast<elt>(rng() % field.q());
        return encode(field, b.G, msg);
    };

    // (a) at most rho2 - 1 erasures per lower group: full lower-level recovery
    for (std::uint64_t t = 0; t < trials_in_guarantee; ++t) {
        auto cw = random_codeword();
        std::vector<std::uint32_t> pattern;
        for (const auto& group : b.hierarchy.lower_groups)
            if (rng() % 3 == 0)
                for (std::uint32_t i = 0; i < rho2 - 1; ++i)
                    pattern.push_back(group[rng() % group.size()]);
        std::sort(pattern.begin(), pattern.end());
        pattern.erase(std::unique(pattern.begin(), pattern.end()), pattern.end());
        RecoveryReport rep = simulate(cw, pattern, b.hierarchy, b.spec);
        tally.trials++;
        tally.incorrect += rep.incorrect;
        c.require(rep.failed == 0, "failure within the lower guarantee");
        c.require(rep.recovered_middle == 0, "escalation within the lower guarantee");
    }

    // (b) boundary pattern: rho1*rho2 - 1 erasures, middle level recovers
    for (std::uint64_t t = 0; t < trials_boundary; ++t) {
        auto cw = random_codeword();
        auto pattern = worst_middle_pattern(b.hierarchy, b.spec, rng, false);
        RecoveryReport rep = simulate(cw, pattern, b.hierarchy, b.spec);
        tally.trials++;
        tally.incorrect += rep.incorrect;
        c.require(rep.failed == 0, "boundary pattern must recover");
        c.require(rep.entries.size() ==
                      static_cast<std::size_t>(b.spec.params.rho1) * rho2 - 1,
                  "boundary pattern size");
    }

    // (c) the stated failure pattern: rho2 erasures in each of rho1 buckets
    for (std::uint64_t t = 0; t < trials_failure; ++t) {
        auto cw = random_codeword();
        auto pattern = worst_middle_pattern(b.hierarchy, b.spec, rng, true);
        RecoveryReport rep = simulate(cw, pattern, b.hierarchy, b.spec);
        tally.trials++;
        tally.incorrect += rep.incorrect;
        c.require(rep.failed == rep.entries.size(), "the stated failure pattern must fail");
    }

    // (d) uniform random patterns: whatever the outcome, no wrong values
    for (std::uint64_t t = 0; t < trials_uniform; ++t) {
        auto cw = random_codeword();
        auto pattern = uniform_pattern(b.G.n, 1 + rng() % (b.G.n / 4), rng);
        RecoveryReport rep = simulate(cw, pattern, b.hierarchy, b.spec);
        tally.trials++;
        tally.incorrect += rep.incorrect;
    }
}

void criterion5(Criterion& c) {
    std::mt19937_64 rng(777);
    RecoveryTally tally;

    BuiltCode as3 = build_preset("as-p3-maxdim");
    recovery_battery(c, as3, 3500, 1500, 1000, 2000, rng, tally);

    BuiltCode k5 = build_preset("kummer-q5-maxdim");
    recovery_battery(c, k5, 800, 500, 200, 500, rng, tally);

    c.require(tally.trials >= 10000, "at least 1e4 randomized trials");
    c.require(tally.incorrect == 0, "a recovered value disagreed with the codeword");

    std::ostringstream os;
    os << tally.trials << " randomized (codeword, pattern) trials on both golden instances, "
       << tally.incorrect << " incorrect values";
    c.note(os.str());
}

// --- criterion 6: bound-branch law and the parameter-free floor --------------
void criterion6(Criterion& c) {
    JobConfig as_cfg = parse_config_text(preset_config_text("as-p3-maxdim"));
    std::uint32_t checked = 0;
    for (std::uint32_t rho1 = 2; rho1 <= 5; ++rho1)
        for (std::uint32_t rho2 = 2; rho2 <= 3; ++rho2) {
            CodeSpec spec = validate_spec(as_cfg.surface, 5, {rho1, rho2, 1, false});
            DistanceBound b = distance_bound(spec);
            const std::int64_t diff = b.bezout_term - static_cast<std::int64_t>(b.product_term);
            c.require(diff == static_cast<std::int64_t>(3 - rho2) *
                                  (static_cast<std::int64_t>(rho1) - 4),
                      "difference identity at the AS grid");
            if (diff > 0) c.require(rho1 >= 4, "Bezout exceeded with rho1 < s");
            if (rho1 >= 4) c.require(diff >= 0, "rho1 >= s but Bezout lost");
            ++checked;
        }

    JobConfig k_cfg = parse_config_text(preset_config_text("kummer-q5-maxdim"));
    for (std::uint32_t rho1 = 6; rho1 <= 10; ++rho1)
        for (std::uint32_t rho2 = 2; rho2 <= 6; ++rho2)
            for (std::uint32_t rho3 : {1u, 12u, 24u}) {
                CodeSpec spec = validate_spec(k_cfg.surface, 10, {rho1, rho2, rho3, false});
                DistanceBound b = distance_bound(spec);
                const std::int64_t diff =
                    b.bezout_term - static_cast<std::int64_t>(b.product_term);
                c.require(diff == static_cast<std::int64_t>(6 - rho2) *
                                      (static_cast<std::int64_t>(rho1) - 4),
                          "difference identity at the Kummer grid");
                c.require(diff >= 0, "rho1 >= lambda > mu, so Bezout must not lose");
                c.require(b.value >= static_cast<std::uint64_t>(rho3) * (36 - 24 + 4),
                          "parameter-free floor rho3*(lambda^2 - mu*lambda + mu)");
                ++checked;
            }

    std::ostringstream os;
    os << checked << " grid tuples: Bezout-vs-product sign matches (deg-rho2)(rho1-s), "
       << "floor rho3*16 holds on the Kummer grid";
    c.note(os.str());
}

// --- criterion 7: the cone instance ------------------------------------------
void criterion7(Criterion& c) {
    BuiltCode b = build_preset("hermitian-cone-q2");
    const gf::Field& field = *b.spec.surface.field;

    c.require(b.spec.T.size() == 32, "|T| must be q^5 = 32");
    c.require(b.spec.eta == 4, "eta must be q^2 = 4");
    c.require(b.spec.cover_degree() == 2 && b.spec.s_degree() == 3,
              "cover degree q = 2 with s = q + 1 = 3");
    c.require(b.G.k == 12 && b.G.rank == 12, "k = 12 with full rank");
    ParamReport r = param_report(b.spec);
    c.require(r.d.value == 4, "d bound must be max{4, 2*2 - 3*0} = 4");
    c.require(r.n2 == 2 && r.k2 == 1 && r.d2 == 2, "lower locals (2, 1, 2)");

    DistanceResult sampled = min_weight_sampled(field, b.G, 20000, 5);
    DistanceResult sparse = sparse_low_weight_search(field, b.G);
    c.require(sampled.min_weight >= 4 && sparse.min_weight >= 4,
              "sampled weights must respect the bound");

    std::ostringstream os;
    os << "n=32 k=12 rank=12 d>=4, sampled min " << sampled.min_weight << ", sparse min "
       << sparse.min_weight;
    c.note(os.str());
}

// --- criterion 8: adjudication of the two candidate bounds at q = 5 ----------
void criterion8(Criterion& c) {
    BuiltCode b = build_preset("kummer-q5-maxdim");
    const gf::Field& field = *b.spec.surface.field;

    const std::uint64_t general_bound = distance_bound(b.spec).value;
    c.require(general_bound == 20, "general closed form gives 20 at (6,2,1)");
    const std::uint64_t narrative_bound = 28; // the stronger figure quoted for this instance

    DistanceResult sampled = min_weight_sampled(field, b.G, 10000, 11);
    DistanceResult sparse = sparse_low_weight_search(field, b.G);
    const std::uint64_t measured = std::min(sampled.min_weight, sparse.min_weight);

    c.require(measured >= general_bound, "measured weight fell below the general bound 20");
    std::ostringstream os;
    os << "measured min weight " << measured << " (sampled 10000: " << sampled.min_weight
       << ", sparse pairs: " << sparse.min_weight << "); general bound 20 respected"
       << (measured >= narrative_bound ? ", stronger figure 28 also respected"
                                       : ", stronger figure 28 NOT established");
    c.note(os.str());
}

struct Entry {
    int number;
    double limit;
    const char* title;
    void (*fn)(Criterion&);
};

const Entry entries[] = {
    {1, 10.0, "mixed-power golden instance (n, k, locals, sampled floor 8)", criterion1},
    {2, 5.0, "exhaustive distance, k = 4 instance (bound 33, frozen d = 36)", criterion2},
    {3, 30.0, "cubic-cover point counts at q = 2 and q = 5", criterion3},
    {4, 30.0, "sharpness witness: weight(1 - z) = 1380 exactly", criterion4},
    {5, 0.0, "recovery guarantees over 1e4 randomized trials", criterion5},
    {6, 0.0, "bound-branch law and parameter-free floor over full grids", criterion6},
    {7, 0.0, "cone instance: q^5 points, rank, bound respected", criterion7},
    {8, 0.0, "minimum-weight adjudication at q = 5, (6,2,1)", criterion8},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    bool all_pass = true;
    for (const Entry& e : entries) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), e.number) == selected.end())
            continue;

        Criterion c{e.number, e.limit, ""};
        const auto start = std::chrono::steady_clock::now();
        try {
            e.fn(c);
        } catch (const error& err) {
            c.require(false, std::string("unexpected error [") + errc_name(err.code()) + "] " +
                                 err.what());
        } catch (const std::exception& err) {
            c.require(false, std::string("unexpected exception: ") + err.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (e.limit > 0 && seconds >= e.limit) {
            c.pass = false;
            c.detail += (c.detail.empty() ? "" : "; ") + std::string("FAILED: over the ") +
                        std::to_string(e.limit) + "s budget";
        }

        char timing[64];
        if (e.limit > 0)
            std::snprintf(timing, sizeof timing, " (%.2fs, limit %.0fs)", seconds, e.limit);
        else
            std::snprintf(timing, sizeof timing, " (%.2fs)", seconds);
        std::printf("[%s] criterion %d: %s -- %s%s\n", c.pass ? "PASS" : "FAIL", e.number,
                    e.title, c.detail.c_str(), timing);
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 1;
}
