#include "recovery.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "poly.hpp"

namespace hlrc {

using gf::elt;
using gf::Field;

HierarchyMap build_hierarchy(const EvaluationSet& evalset) {
    HierarchyMap m;
    const std::uint32_t n = evalset.size();
    m.lower_id.assign(n, 0);
    m.middle_id.assign(n, 0);

    for (std::size_t g = 0; g < evalset.gamma_ranges.size(); ++g) {
        const auto [begin, end] = evalset.gamma_ranges[g];
        const std::uint32_t middle = static_cast<std::uint32_t>(m.middle_groups.size());
        std::vector<std::uint32_t> positions;
        std::vector<std::uint32_t> buckets;
        // points are sorted by (x, y) inside a slice, so lower groups are
        // contiguous runs of constant x
        std::uint32_t i = begin;
        while (i < end) {
            std::uint32_t j = i;
            while (j < end && evalset.points[j].x == evalset.points[i].x) ++j;
            const std::uint32_t lower = static_cast<std::uint32_t>(m.lower_groups.size());
            std::vector<std::uint32_t> group;
            for (std::uint32_t t = i; t < j; ++t) {
                m.lower_id[t] = lower;
                m.middle_id[t] = middle;
                group.push_back(t);
                positions.push_back(t);
            }
            m.lower_groups.push_back(std::move(group));
            buckets.push_back(lower);
            i = j;
        }
        m.middle_groups.push_back(std::move(positions));
        m.middle_buckets.push_back(std::move(buckets));
    }
    return m;
}

ReceivedWord ReceivedWord::from_codeword(std::vector<elt> codeword,
                                         const std::vector<std::uint32_t>& pattern) {
    ReceivedWord w;
    w.erased.assign(codeword.size(), 0);
    w.symbols = std::move(codeword);
    for (std::uint32_t pos : pattern) {
        if (pos >= w.symbols.size())
            raise(errc::config_invalid, "erasure index " + std::to_string(pos) + " out of range");
        w.erased[pos] = 1;
    }
    return w;
}

namespace {

std::uint32_t bucket_erasures(const ReceivedWord& word, const std::vector<std::uint32_t>& group) {
    std::uint32_t e = 0;
    for (std::uint32_t pos : group) e += word.erased[pos];
    return e;
}

} // namespace

RecoverOutcome recover_lower(const ReceivedWord& word, std::uint32_t pos, const HierarchyMap& map,
                             const CodeSpec& spec) {
    const Field& field = *spec.surface.field;
    const auto& group = map.lower_groups[map.lower_id[pos]];
    const std::uint32_t need = spec.cover_degree() - spec.params.rho2 + 1;

    std::vector<elt> ys, vals;
    for (std::uint32_t other : group) {
        if (word.erased[other]) continue;
        ys.push_back(spec.T.points[other].y);
        vals.push_back(word.symbols[other]);
        if (ys.size() == need) break;
    }
    if (ys.size() < need)
        raise(errc::insufficient_survivors,
              "lower group of position " + std::to_string(pos) + " has " +
                  std::to_string(bucket_erasures(word, group)) + " erasures; at most rho2 - 1 = " +
                  std::to_string(spec.params.rho2 - 1) + " are recoverable");

    RecoverOutcome out;
    out.value = gf::poly_interpolate_at(field, ys, vals, spec.T.points[pos].y);
    out.symbols_accessed = need;
    return out;
}

RecoverOutcome recover_middle(const ReceivedWord& word, std::uint32_t pos, const HierarchyMap& map,
                              const CodeSpec& spec) {
    const Field& field = *spec.surface.field;
    const std::uint32_t middle = map.middle_id[pos];
    const auto& buckets = map.middle_buckets[middle];
    const std::uint32_t need_buckets = spec.eta - spec.params.rho1 + 1;
    const std::uint32_t need_per_bucket = spec.cover_degree() - spec.params.rho2 + 1;
    const std::uint32_t ydeg = spec.cover_degree() - spec.params.rho2;

    // a bucket is usable iff it has fewer than rho2 erasures
    std::vector<std::uint32_t> usable;
    for (std::uint32_t lower : buckets)
        if (bucket_erasures(word, map.lower_groups[lower]) < spec.params.rho2)
            usable.push_back(lower);
    if (usable.size() < need_buckets)
        raise(errc::insufficient_buckets,
              "middle group " + std::to_string(middle) + " has only " +
                  std::to_string(usable.size()) + " usable x-buckets; " +
                  std::to_string(need_buckets) + " are required");
    usable.resize(need_buckets); // first ones in canonical x order

    RecoverOutcome out;

    // layer 1: per usable bucket, interpolate the polynomial in y and read
    // off its coefficients g_j(a)
    std::vector<elt> xs(need_buckets);
    std::vector<std::vector<elt>> coeff_rows(need_buckets);
    for (std::uint32_t b = 0; b < need_buckets; ++b) {
        const auto& group = map.lower_groups[usable[b]];
        xs[b] = spec.T.points[group.front()].x;
        std::vector<elt> ys, vals;
        for (std::uint32_t other : group) {
            if (word.erased[other]) continue;
            ys.push_back(spec.T.points[other].y);
            vals.push_back(word.symbols[other]);
            if (ys.size() == need_per_bucket) break;
        }
        gf::poly c = gf::poly_interpolate(field, ys, vals);
        c.resize(ydeg + 1, 0);
        coeff_rows[b] = std::move(c);
        out.symbols_accessed += need_per_bucket;
    }

    // layer 2: per y-degree j, interpolate g_j across the buckets and
    // evaluate at the erased position's x; then assemble sum g_j(x) y^j
    const elt x0 = spec.T.points[pos].x;
    const elt y0 = spec.T.points[pos].y;
    std::vector<elt> gj(need_buckets);
    elt value = 0;
    elt ypow = field.one();
    for (std::uint32_t j = 0; j <= ydeg; ++j) {
        for (std::uint32_t b = 0; b < need_buckets; ++b) gj[b] = coeff_rows[b][j];
        const elt gjx = gf::poly_interpolate_at(field, xs, gj, x0);
        value = field.add(value, field.mul(gjx, ypow));
        ypow = field.mul(ypow, y0);
    }
    out.value = value;
    return out;
}

const char* recovery_outcome_name(RecoveryReport::Outcome o) noexcept {
    switch (o) {
        case RecoveryReport::Outcome::recovered_lower: return "RecoveredLower";
        case RecoveryReport::Outcome::recovered_middle: return "RecoveredMiddle";
        case RecoveryReport::Outcome::failed: return "Failed";
    }
    return "unknown";
}

RecoveryReport simulate(const std::vector<elt>& codeword,
                        const std::vector<std::uint32_t>& pattern, const HierarchyMap& map,
                        const CodeSpec& spec) {
    ReceivedWord word = ReceivedWord::from_codeword(codeword, pattern);

    RecoveryReport report;
    std::vector<std::uint32_t> erased;
    for (std::uint32_t pos = 0; pos < word.symbols.size(); ++pos)
        if (word.erased[pos]) erased.push_back(pos);

    for (std::uint32_t pos : erased) {
        RecoveryReport::Entry entry;
        entry.position = pos;
        bool done = false;
        try {
            RecoverOutcome lower = recover_lower(word, pos, map, spec);
            entry.outcome = RecoveryReport::Outcome::recovered_lower;
            entry.value = lower.value;
            entry.symbols_accessed = lower.symbols_accessed;
            ++report.recovered_lower;
            done = true;
        } catch (const error& e) {
            if (e.code() != errc::insufficient_survivors) throw;
        }
        if (!done) {
            try {
                RecoverOutcome middle = recover_middle(word, pos, map, spec);
                entry.outcome = RecoveryReport::Outcome::recovered_middle;
                entry.value = middle.value;
                entry.symbols_accessed = middle.symbols_accessed;
                ++report.recovered_middle;
                done = true;
            } catch (const error& e) {
                if (e.code() != errc::insufficient_buckets) throw;
            }
        }
        if (!done) {
            entry.outcome = RecoveryReport::Outcome::failed;
            ++report.failed;
        } else if (entry.value != codeword[pos]) {
            ++report.incorrect;
        }
        report.total_symbols_accessed += entry.symbols_accessed;
        report.entries.push_back(entry);
    }
    return report;
}

std::vector<std::uint32_t> uniform_pattern(std::uint32_t n, std::uint32_t erasures,
                                           std::mt19937_64& rng) {
    if (erasures > n) raise(errc::config_invalid, "more erasures than positions");
    // partial Fisher-Yates over the index range
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (std::uint32_t i = 0; i < erasures; ++i) {
        const std::uint32_t j = i + static_cast<std::uint32_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(erasures);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::uint32_t> worst_lower_pattern(const HierarchyMap& map, const CodeSpec& spec,
                                               std::mt19937_64& rng) {
    const auto& group = map.lower_groups[rng() % map.lower_groups.size()];
    std::vector<std::uint32_t> out(group.begin(),
                                   group.begin() + std::min<std::size_t>(spec.params.rho2,
                                                                         group.size()));
    return out;
}

std::vector<std::uint32_t> worst_middle_pattern(const HierarchyMap& map, const CodeSpec& spec,
                                                std::mt19937_64& rng, bool at_failure) {
    const std::uint32_t middle = static_cast<std::uint32_t>(rng() % map.middle_groups.size());
    const auto& buckets = map.middle_buckets[middle];
    const std::uint32_t broken = at_failure ? spec.params.rho1 : spec.params.rho1 - 1;
    if (buckets.size() < broken + (at_failure ? 0u : 1u))
        raise(errc::config_invalid, "middle group too small for the requested pattern");

    // choose distinct buckets at random
    std::vector<std::uint32_t> order(buckets.begin(), buckets.end());
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t j = i + rng() % (order.size() - i);
        std::swap(order[i], order[j]);
    }

    std::vector<std::uint32_t> out;
    for (std::uint32_t b = 0; b < broken; ++b) {
        const auto& group = map.lower_groups[order[b]];
        for (std::uint32_t t = 0; t < spec.params.rho2 && t < group.size(); ++t)
            out.push_back(group[t]);
    }
    if (!at_failure) {
        // one additional bucket one erasure short of breaking
        const auto& group = map.lower_groups[order[broken]];
        for (std::uint32_t t = 0; t + 1 < spec.params.rho2 && t < group.size(); ++t)
            out.push_back(group[t]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace hlrc
