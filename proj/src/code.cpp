#include "code.hpp"

#include <algorithm>
#include <string>

namespace hlrc {

using gf::elt;
using gf::Field;

CodeSpec validate_spec(SurfaceSpec surface, std::optional<std::uint32_t> eta, CodeParams params) {
    CodeSpec spec;
    spec.eta_auto = !eta.has_value();
    spec.eta = eta ? *eta : auto_eta(surface);
    spec.surface = std::move(surface);
    spec.params = params;

    const std::uint32_t deg = spec.cover_degree();
    const std::uint32_t s = spec.s_degree();
    const bool kummer = spec.surface.kind == SurfaceSpec::Kind::kummer;

    spec.T = evaluation_set(spec.surface, spec.eta); // raises empty_gamma_set when impossible
    const std::uint32_t gamma_count = spec.gamma_count();

    const std::uint32_t rho1 = params.rho1, rho2 = params.rho2, rho3 = params.rho3;
    const std::uint32_t rho1_min = kummer ? deg : 2;
    if (rho1 < rho1_min || rho1 > spec.eta)
        raise(errc::rho_out_of_range,
              "rho1 = " + std::to_string(rho1) + " must lie in [" + std::to_string(rho1_min) +
                  ", eta = " + std::to_string(spec.eta) + "]");
    if (rho2 < 2 || rho2 > deg)
        raise(errc::rho_out_of_range, "rho2 = " + std::to_string(rho2) +
                                          " must lie in [2, cover degree = " + std::to_string(deg) +
                                          "]");
    if (rho3 < 1 || rho3 > gamma_count)
        raise(errc::rho_out_of_range, "rho3 = " + std::to_string(rho3) + " must lie in [1, |Gamma| = " +
                                          std::to_string(gamma_count) + "]");

    if (!kummer) {
        // deg*eta >= s*(deg - rho2) + deg*(eta - rho1) + 1, the positivity
        // condition behind the Bezout part of the distance bound
        const std::int64_t lhs = static_cast<std::int64_t>(deg) * spec.eta;
        const std::int64_t rhs = static_cast<std::int64_t>(s) * (deg - rho2) +
                                 static_cast<std::int64_t>(deg) * (spec.eta - rho1) + 1;
        if (lhs < rhs) {
            if (!params.waive_condition2)
                raise(errc::condition2_violated,
                      "degree condition violated: " + std::to_string(lhs) + " < " +
                          std::to_string(rhs) + " (waivable; a positive distance bound still holds)");
            spec.warnings.push_back("degree condition waived: " + std::to_string(lhs) + " < " +
                                    std::to_string(rhs));
        }
    }
    return spec;
}

std::vector<Monomial> monomial_basis(const CodeSpec& spec) {
    const std::uint32_t imax = spec.eta - spec.params.rho1;
    const std::uint32_t jmax = spec.cover_degree() - spec.params.rho2;
    const std::uint32_t kmax = spec.gamma_count() - spec.params.rho3;
    std::vector<Monomial> out;
    out.reserve(static_cast<std::size_t>(imax + 1) * (jmax + 1) * (kmax + 1));
    for (std::uint32_t i = 0; i <= imax; ++i)
        for (std::uint32_t j = 0; j <= jmax; ++j)
            for (std::uint32_t k = 0; k <= kmax; ++k) out.push_back({i, j, k});
    return out;
}

std::uint64_t code_dimension(const CodeSpec& spec) {
    return static_cast<std::uint64_t>(spec.eta - spec.params.rho1 + 1) *
           (spec.cover_degree() - spec.params.rho2 + 1) *
           (spec.gamma_count() - spec.params.rho3 + 1);
}

std::uint32_t matrix_rank(const Field& field, std::vector<elt> a, std::uint32_t rows,
                          std::uint32_t cols) {
    const std::span<const elt> add_tbl = field.add_table();
    const std::uint32_t q = field.q();
    std::vector<elt> scale(q);
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < cols && rank < rows; ++col) {
        std::uint32_t pivot = rows;
        for (std::uint32_t r = rank; r < rows; ++r) {
            if (a[static_cast<std::size_t>(r) * cols + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::uint32_t c = col; c < cols; ++c)
                std::swap(a[static_cast<std::size_t>(pivot) * cols + c],
                          a[static_cast<std::size_t>(rank) * cols + c]);
        const elt inv_p = field.inv(a[static_cast<std::size_t>(rank) * cols + col]);
        for (std::uint32_t r = rank + 1; r < rows; ++r) {
            const elt v = a[static_cast<std::size_t>(r) * cols + col];
            if (v == 0) continue;
            // add -factor * pivot row; one scalar table keeps the loop to lookups
            const elt factor = field.neg(field.mul(v, inv_p));
            for (std::uint32_t s = 0; s < q; ++s) scale[s] = field.mul(factor, s);
            elt* dst = &a[static_cast<std::size_t>(r) * cols];
            const elt* src = &a[static_cast<std::size_t>(rank) * cols];
            if (!add_tbl.empty()) {
                for (std::uint32_t c = col; c < cols; ++c)
                    dst[c] = add_tbl[static_cast<std::size_t>(dst[c]) * q + scale[src[c]]];
            } else {
                for (std::uint32_t c = col; c < cols; ++c)
                    dst[c] = field.add(dst[c], scale[src[c]]);
            }
        }
        ++rank;
    }
    return rank;
}

GeneratorMatrix generator_matrix(const CodeSpec& spec) {
    const Field& field = *spec.surface.field;
    GeneratorMatrix G;
    G.basis = monomial_basis(spec);
    G.k = static_cast<std::uint32_t>(G.basis.size());
    G.n = spec.T.size();
    G.entries.assign(static_cast<std::size_t>(G.k) * G.n, 0);

    const std::uint32_t imax = spec.eta - spec.params.rho1;
    const std::uint32_t jmax = spec.cover_degree() - spec.params.rho2;
    const std::uint32_t kmax = spec.gamma_count() - spec.params.rho3;

    std::vector<elt> xp(imax + 1), yp(jmax + 1), zp(kmax + 1);
    for (std::uint32_t c = 0; c < G.n; ++c) {
        const auto& pt = spec.T.points[c];
        xp[0] = yp[0] = zp[0] = field.one();
        for (std::uint32_t i = 1; i <= imax; ++i) xp[i] = field.mul(xp[i - 1], pt.x);
        for (std::uint32_t j = 1; j <= jmax; ++j) yp[j] = field.mul(yp[j - 1], pt.y);
        for (std::uint32_t k = 1; k <= kmax; ++k) zp[k] = field.mul(zp[k - 1], pt.z);
        std::size_t r = 0;
        for (std::uint32_t i = 0; i <= imax; ++i)
            for (std::uint32_t j = 0; j <= jmax; ++j) {
                const elt xy = field.mul(xp[i], yp[j]);
                for (std::uint32_t k = 0; k <= kmax; ++k, ++r)
                    G.entries[r * G.n + c] = field.mul(xy, zp[k]);
            }
    }

    G.rank = matrix_rank(field, G.entries, G.k, G.n);
    if (G.rank != G.k)
        raise(errc::rank_deficient, "evaluation matrix rank " + std::to_string(G.rank) +
                                        " is below the basis size " + std::to_string(G.k));
    return G;
}

std::vector<elt> encode(const Field& field, const GeneratorMatrix& G,
                        std::span<const elt> message) {
    if (message.size() != G.k) raise(errc::config_invalid, "message length must equal k");
    std::vector<elt> out(G.n, 0);
    const std::span<const elt> add_tbl = field.add_table();
    const std::uint32_t q = field.q();
    std::vector<elt> scale(q);
    for (std::uint32_t r = 0; r < G.k; ++r) {
        const elt m = message[r];
        if (m == 0) continue;
        // one scalar row per message symbol keeps the inner loop to lookups
        for (std::uint32_t v = 0; v < q; ++v) scale[v] = field.mul(m, v);
        const elt* row = &G.entries[static_cast<std::size_t>(r) * G.n];
        if (!add_tbl.empty()) {
            for (std::uint32_t c = 0; c < G.n; ++c)
                out[c] = add_tbl[static_cast<std::size_t>(out[c]) * q + scale[row[c]]];
        } else {
            for (std::uint32_t c = 0; c < G.n; ++c) out[c] = field.add(out[c], scale[row[c]]);
        }
    }
    return out;
}

DistanceBound distance_bound(const CodeSpec& spec) {
    const std::uint32_t deg = spec.cover_degree();
    const std::uint32_t s = spec.s_degree();
    const auto& [rho1, rho2, rho3, waive] = spec.params;

    DistanceBound b;
    b.product_term = static_cast<std::uint64_t>(rho1) * rho2;
    b.bezout_term = static_cast<std::int64_t>(deg) * rho1 -
                    static_cast<std::int64_t>(s) * (deg - rho2);
    const std::int64_t best =
        std::max<std::int64_t>(static_cast<std::int64_t>(b.product_term), b.bezout_term);
    b.value = static_cast<std::uint64_t>(rho3) * static_cast<std::uint64_t>(best);
    if (b.bezout_term > static_cast<std::int64_t>(b.product_term))
        b.branch = BoundBranch::bezout;
    else if (b.bezout_term == static_cast<std::int64_t>(b.product_term))
        b.branch = BoundBranch::tie;
    else
        b.branch = BoundBranch::product;
    return b;
}

const char* bound_branch_name(BoundBranch b) noexcept {
    switch (b) {
        case BoundBranch::product: return "product";
        case BoundBranch::bezout: return "bezout";
        case BoundBranch::tie: return "tie";
    }
    return "unknown";
}

ParamReport param_report(const CodeSpec& spec) {
    const std::uint32_t deg = spec.cover_degree();
    ParamReport r;
    r.n = spec.T.size();
    r.k = code_dimension(spec);
    r.d = distance_bound(spec);
    r.rate = static_cast<double>(r.k) / r.n;
    r.relative_distance_bound = static_cast<double>(r.d.value) / r.n;

    r.n1_lower = static_cast<std::uint64_t>(spec.eta) * deg;
    r.n1_per_gamma = spec.T.fiber_sizes();
    r.k1 = static_cast<std::uint64_t>(spec.eta - spec.params.rho1 + 1) *
           (deg - spec.params.rho2 + 1);
    const std::int64_t best = std::max<std::int64_t>(
        static_cast<std::int64_t>(r.d.product_term), r.d.bezout_term);
    r.d1 = static_cast<std::uint64_t>(best);

    r.n2 = deg;
    r.k2 = deg - spec.params.rho2 + 1;
    r.d2 = spec.params.rho2;
    r.warnings = spec.warnings;
    return r;
}

} // namespace hlrc
