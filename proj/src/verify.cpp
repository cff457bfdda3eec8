#include "verify.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace hlrc {

using gf::elt;
using gf::Field;

namespace {

std::uint64_t weight(std::span<const elt> v) {
    std::uint64_t w = 0;
    for (elt x : v) w += (x != 0);
    return w;
}

} // namespace

DistanceResult min_distance_exhaustive(const Field& field, const GeneratorMatrix& G,
                                       std::uint64_t budget, unsigned max_witnesses) {
    const std::uint64_t q = field.q();

    // message count up to scalars: (q^k - 1)/(q - 1), with overflow guards
    std::uint64_t total = 0;
    {
        std::uint64_t power = 1; // q^(k - 1 - lead) summed over lead
        std::vector<std::uint64_t> powers(G.k);
        for (std::uint32_t i = 0; i < G.k; ++i) {
            powers[i] = power;
            if (power > budget) {
                raise(errc::budget_exceeded,
                      "exhaustive enumeration needs more than " + std::to_string(budget) +
                          " weight computations; use sampled mode");
            }
            power *= q;
        }
        for (std::uint32_t i = 0; i < G.k; ++i) total += powers[i];
        if (total > budget)
            raise(errc::budget_exceeded,
                  "exhaustive enumeration needs " + std::to_string(total) +
                      " weight computations, over the budget " + std::to_string(budget));
    }

    // sanity: no column may be zero (the constant monomial never vanishes)
    for (std::uint32_t c = 0; c < G.n; ++c) {
        bool all_zero = true;
        for (std::uint32_t r = 0; r < G.k && all_zero; ++r) all_zero = G.at(r, c) == 0;
        if (all_zero)
            raise(errc::internal_error,
                  "zero column in the evaluation matrix at position " + std::to_string(c));
    }

    DistanceResult res;
    res.mode = DistanceResult::Mode::exhaustive;
    res.min_weight = G.n + 1;

    std::vector<elt> msg(G.k, 0);
    std::vector<elt> cw(G.n);
    // messages with first nonzero coordinate = 1, one representative per scalar class
    for (std::uint32_t lead = 0; lead < G.k; ++lead) {
        std::fill(msg.begin(), msg.end(), 0);
        msg[lead] = field.one();
        const std::uint32_t free = G.k - lead - 1;
        std::uint64_t combos = 1;
        for (std::uint32_t i = 0; i < free; ++i) combos *= q;
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::uint64_t v = idx;
            for (std::uint32_t i = 0; i < free; ++i) {
                msg[lead + 1 + i] = static_cast<elt>(v % q);
                v /= q;
            }
            cw = encode(field, G, msg);
            const std::uint64_t w = weight(cw);
            ++res.evaluated;
            if (w < res.min_weight) {
                res.min_weight = w;
                res.witnesses.clear();
            }
            if (w == res.min_weight && res.witnesses.size() < max_witnesses)
                res.witnesses.push_back(msg);
        }
    }
    return res;
}

DistanceResult min_weight_sampled(const Field& field, const GeneratorMatrix& G,
                                  std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) raise(errc::config_invalid, "at least one trial is required");
    const std::uint32_t q = field.q();
    std::mt19937_64 rng(seed);

    DistanceResult res;
    res.mode = DistanceResult::Mode::sampled;
    res.seed = seed;
    res.min_weight = G.n + 1;

    std::vector<elt> msg(G.k);
    std::vector<elt> cw(G.n);
    for (std::uint64_t t = 0; t < trials; ++t) {
        bool nonzero = false;
        for (std::uint32_t r = 0; r < G.k; ++r) {
            msg[r] = static_cast<elt>(rng() % q);
            nonzero |= msg[r] != 0;
        }
        if (!nonzero) msg[rng() % G.k] = static_cast<elt>(1 + rng() % (q - 1));

        cw = encode(field, G, msg);
        const std::uint64_t w = weight(cw);
        ++res.evaluated;
        if (w < res.min_weight) {
            res.min_weight = w;
            res.witnesses.assign(1, msg);
        }
    }
    return res;
}

DistanceResult sparse_low_weight_search(const Field& field, const GeneratorMatrix& G) {
    const std::uint32_t q = field.q();

    DistanceResult res;
    res.mode = DistanceResult::Mode::sampled; // an upper bound, like sampling
    res.min_weight = G.n + 1;

    auto consider = [&](std::uint64_t w, std::uint32_t r1, elt c1, std::uint32_t r2, elt c2) {
        ++res.evaluated;
        if (w >= res.min_weight) return;
        res.min_weight = w;
        std::vector<elt> msg(G.k, 0);
        msg[r1] = c1;
        if (r2 != r1) msg[r2] = c2;
        res.witnesses.assign(1, msg);
    };

    // single monomials (scalar multiples have the same weight)
    for (std::uint32_t r = 0; r < G.k; ++r)
        consider(weight(G.row(r)), r, field.one(), r, 0);

    // pairs row1 + c * row2: bucket positions by the ratio killing them
    std::vector<std::uint32_t> hist(q, 0);
    for (std::uint32_t r1 = 0; r1 < G.k; ++r1) {
        const elt* a = &G.entries[static_cast<std::size_t>(r1) * G.n];
        for (std::uint32_t r2 = r1 + 1; r2 < G.k; ++r2) {
            const elt* b = &G.entries[static_cast<std::size_t>(r2) * G.n];
            std::fill(hist.begin(), hist.end(), 0);
            std::uint32_t both_zero = 0;
            for (std::uint32_t c = 0; c < G.n; ++c) {
                if (b[c] == 0) {
                    both_zero += (a[c] == 0);
                } else {
                    ++hist[field.neg(field.div(a[c], b[c]))];
                }
            }
            for (elt cval = 1; cval < q; ++cval)
                consider(G.n - both_zero - hist[cval], r1, field.one(), r2, cval);
        }
    }
    return res;
}

BoundAudit check_bound(const CodeSpec& spec, const std::vector<DistanceResult>& results) {
    if (results.empty()) raise(errc::config_invalid, "no distance results to audit");
    BoundAudit audit;
    audit.bound = distance_bound(spec).value;
    audit.measured = results.front().min_weight;
    for (const auto& r : results) {
        if (r.min_weight <= audit.measured) {
            audit.measured = r.min_weight;
            if (!r.witnesses.empty()) audit.witness = r.witnesses.front();
        }
        if (r.mode == DistanceResult::Mode::exhaustive) audit.exhaustive = true;
    }
    audit.pass = audit.measured >= audit.bound;
    audit.slack = static_cast<std::int64_t>(audit.measured) - static_cast<std::int64_t>(audit.bound);
    return audit;
}

SurfaceSpec make_as_mixed_power_surface(std::uint32_t p) {
    if (p < 3 || p % 2 == 0)
        raise(errc::config_invalid, "the mixed-power family needs an odd prime p");
    auto field = std::make_shared<const Field>(p, 2);
    const elt one = field->one();
    BivariatePoly f = BivariatePoly::from_terms({{p + 1, 2, one}, {2, p + 1, one}});
    return SurfaceSpec::artin_schreier(std::move(field), gf::AdditiveLhs::artin_schreier(),
                                       std::move(f));
}

SurfaceSpec make_kummer_cubic_cover_surface(std::uint32_t q) {
    if (q % 3 != 2) raise(errc::config_invalid, "the cubic-cover family needs q = 2 mod 3");
    // q may be a prime power; recover (p, e) with q = p^e
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    for (std::uint32_t d = 2; d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            std::uint32_t v = q;
            while (v % d == 0) {
                v /= d;
                ++e;
            }
            if (v != 1) raise(errc::config_invalid, "q must be a prime power");
            break;
        }
    }
    auto field = std::make_shared<const Field>(p, 2 * e);
    const std::uint32_t m = (q + 1) / 3;
    const elt minus_one = field->neg(field->one());
    std::vector<elt> roots; // the m solutions of a^m = -1, so prod (x - a z) = x^m + z^m
    for (elt a = 1; a < field->q(); ++a)
        if (field->pow(a, static_cast<long long>(m)) == minus_one) roots.push_back(a);
    if (roots.size() != m)
        raise(errc::internal_error, "expected exactly m roots of a^m = -1");
    KummerProductForm kf{minus_one, m, m, std::move(roots)};
    return SurfaceSpec::kummer(std::move(field), q + 1, std::move(kf));
}

std::vector<CensusRecord> kummer_family_point_counts(std::uint32_t q) {
    SurfaceSpec surface = make_kummer_cubic_cover_surface(q);
    const Field& field = *surface.field;
    const std::uint32_t Q = field.q(); // q^2
    const std::uint32_t m = (q + 1) / 3;
    const std::uint64_t lambda = surface.lambda;
    const std::uint64_t projective_formula =
        (static_cast<std::uint64_t>(q) * q * q + 2ull * q * q + 2ull * q + 7) / 3;
    const std::uint64_t fiber_formula = static_cast<std::uint64_t>(q) * (q + 1) * m;
    const std::uint64_t x_image_formula = static_cast<std::uint64_t>(m) * q;

    // #{y : y^lambda = c} per c, one scan
    std::vector<std::uint32_t> root_count(Q, 0);
    for (elt y = 0; y < Q; ++y) ++root_count[field.pow(y, static_cast<long long>(lambda))];

    std::vector<CensusRecord> out;
    for (elt gamma = 1; gamma < Q; ++gamma) {
        const gf::poly fx = specialize(surface, gamma);

        // projective census of the fiber closure y^lambda = F(x, w) in P^2,
        // over the canonical representatives (x : y : 1), (x : 1 : 0), (1 : 0 : 0)
        std::uint64_t count = 0;
        for (elt x = 0; x < Q; ++x) count += root_count[gf::poly_eval(field, fx, x)];
        auto homog_at_w0 = [&](elt x) {
            // F(x, 0): only a degree-lambda term in x would survive w = 0
            if (static_cast<std::uint64_t>(gf::poly_degree(fx)) == lambda && !fx.empty())
                return field.mul(fx.back(), field.pow(x, static_cast<long long>(lambda)));
            return static_cast<elt>(0);
        };
        for (elt x = 0; x < Q; ++x)
            if (field.one() == homog_at_w0(x)) ++count; // (x : 1 : 0)
        if (homog_at_w0(field.one()) == 0) ++count;     // (1 : 0 : 0)

        out.push_back({"projective_points", gamma, count, projective_formula,
                       count == projective_formula});

        FiberPoints fp = fiber_points(surface, gamma);
        std::uint64_t unramified = 0;
        for (const auto& pt : fp.points) unramified += !pt.ramified;
        out.push_back({"fiber_points", gamma, unramified, fiber_formula,
                       unramified == fiber_formula});
        out.push_back({"fiber_x_image", gamma, fp.x_image.size(), x_image_formula,
                       fp.x_image.size() == x_image_formula});
    }
    return out;
}

std::vector<CensusRecord> as_family_census(std::uint32_t p) {
    SurfaceSpec surface = make_as_mixed_power_surface(p);
    const Field& field = *surface.field;
    const std::uint32_t eta = 2 * p - 1;

    const std::uint64_t gamma_formula = static_cast<std::uint64_t>(p - 1) * (p - 1);
    const std::uint64_t t_formula =
        (2ull * p * p - p) * static_cast<std::uint64_t>(p - 1) * (p - 1);
    const std::uint64_t excluded_formula = 2ull * (p - 1);

    const std::vector<elt> gammas = gamma_set(surface, eta);
    const EvaluationSet T = evaluation_set(surface, eta);

    std::vector<CensusRecord> out;
    out.push_back({"gamma_count", 0, gammas.size(), gamma_formula,
                   gammas.size() == gamma_formula});
    out.push_back({"evaluation_points", 0, T.size(), t_formula, T.size() == t_formula});

    // independent recount: the excluded nonzero gamma must be exactly the
    // solutions of gamma^{p-1} = gamma^{1-p}
    std::uint64_t excluded = 0;
    std::uint64_t set_mismatches = 0;
    for (elt g = 1; g < field.q(); ++g) {
        const bool degenerate =
            field.pow(g, static_cast<long long>(p) - 1) ==
            field.pow(g, 1 - static_cast<long long>(p));
        if (degenerate) ++excluded;
        const bool in_gamma = std::binary_search(gammas.begin(), gammas.end(), g);
        if (degenerate == in_gamma) ++set_mismatches;
    }
    out.push_back({"excluded_gamma", 0, excluded, excluded_formula,
                   excluded == excluded_formula});
    out.push_back({"excluded_gamma_set_mismatches", 0, set_mismatches, 0, set_mismatches == 0});
    return out;
}

} // namespace hlrc
