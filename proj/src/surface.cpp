#include "surface.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace hlrc {

using gf::elt;
using gf::Field;
using gf::poly;

BivariatePoly BivariatePoly::from_terms(std::vector<Term> terms) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, elt> acc;
    for (const Term& t : terms) acc[{t.xdeg, t.zdeg}] = t.coeff;
    BivariatePoly out;
    for (const auto& [key, coeff] : acc)
        if (coeff != 0) out.terms.push_back({key.first, key.second, coeff});
    return out;
}

std::uint32_t BivariatePoly::deg_x() const noexcept {
    std::uint32_t d = 0;
    for (const Term& t : terms) d = std::max(d, t.xdeg);
    return d;
}

std::uint32_t BivariatePoly::deg_z() const noexcept {
    std::uint32_t d = 0;
    for (const Term& t : terms) d = std::max(d, t.zdeg);
    return d;
}

SurfaceSpec SurfaceSpec::artin_schreier(std::shared_ptr<const Field> field, gf::AdditiveLhs lhs,
                                        BivariatePoly f, bool relaxed_degree) {
    if (!field) raise(errc::internal_error, "null field");
    gf::validate_additive_lhs(*field, lhs);
    if (f.is_zero())
        raise(errc::config_invalid, "the surface right-hand side must be a nonzero polynomial");
    for (const auto& t : f.terms)
        if (t.coeff >= field->q()) raise(errc::field_mismatch, "surface coefficient out of range");

    SurfaceSpec s;
    s.field = std::move(field);
    s.kind = Kind::artin_schreier;
    s.lhs = lhs;
    s.f = std::move(f);
    s.relaxed_degree = relaxed_degree;
    s.cover_degree_ = static_cast<std::uint32_t>(gf::additive_kernel(*s.field, lhs).size());
    s.s_degree_ = s.f.deg_x();
    if (!relaxed_degree && s.s_degree_ < s.cover_degree_ + 1)
        raise(errc::config_invalid,
              "deg_x f = " + std::to_string(s.s_degree_) + " must be at least cover degree + 1 = " +
                  std::to_string(s.cover_degree_ + 1) + " (set relaxed_degree to allow this)");
    return s;
}

SurfaceSpec SurfaceSpec::kummer(std::shared_ptr<const Field> field, std::uint64_t lambda,
                                KummerProductForm kf) {
    if (!field) raise(errc::internal_error, "null field");
    if (lambda < 2) raise(errc::config_invalid, "lambda must be at least 2");
    if (lambda % field->p() == 0)
        raise(errc::lambda_divisible_by_characteristic,
              "lambda = " + std::to_string(lambda) + " shares a factor with the characteristic " +
                  std::to_string(field->p()));
    if (!field->has_primitive_root_of_unity(lambda))
        raise(errc::lambda_not_dividing_group_order,
              "lambda = " + std::to_string(lambda) + " does not divide q-1 = " +
                  std::to_string(field->q() - 1));
    if (kf.c == 0) raise(errc::config_invalid, "the leading coefficient c must be nonzero");
    if (kf.c >= field->q()) raise(errc::field_mismatch, "leading coefficient out of range");
    for (std::size_t i = 0; i < kf.roots.size(); ++i) {
        if (kf.roots[i] == 0) raise(errc::config_invalid, "product-form roots must be nonzero");
        if (kf.roots[i] >= field->q())
            raise(errc::field_mismatch, "product-form root out of range");
        for (std::size_t j = i + 1; j < kf.roots.size(); ++j)
            if (kf.roots[i] == kf.roots[j])
                raise(errc::config_invalid, "product-form roots must be pairwise distinct");
    }
    const std::uint32_t mu = kf.mu();
    if (mu == 0) raise(errc::config_invalid, "mu must be positive");
    if (kf.x_exp > mu - 1)
        raise(errc::config_invalid, "the x exponent must be at most mu - 1");
    if (mu >= lambda || kf.z_exp >= lambda)
        raise(errc::config_invalid, "mu and the z exponent must be smaller than lambda");

    SurfaceSpec s;
    s.field = std::move(field);
    s.kind = Kind::kummer;
    s.lambda = lambda;
    s.kf = std::move(kf);
    s.cover_degree_ = static_cast<std::uint32_t>(lambda);
    s.s_degree_ = mu;
    return s;
}

poly specialize(const Field& field, const BivariatePoly& f, elt gamma) {
    poly out(f.deg_x() + 1, 0);
    for (const auto& t : f.terms) {
        elt zc = field.mul(t.coeff, field.pow(gamma, t.zdeg));
        out[t.xdeg] = field.add(out[t.xdeg], zc);
    }
    gf::poly_trim(out);
    return out;
}

poly specialize(const Field& field, const KummerProductForm& f, elt gamma) {
    elt lead = field.mul(f.c, field.pow(gamma, f.z_exp));
    if (lead == 0) return {};
    poly out = {lead};
    out.insert(out.begin(), f.x_exp, 0); // shift by x^x_exp
    for (elt a : f.roots)
        out = gf::poly_mul(field, out, poly{field.neg(field.mul(a, gamma)), field.one()});
    return out;
}

poly specialize(const SurfaceSpec& surface, elt gamma) {
    const Field& field = *surface.field;
    return surface.kind == SurfaceSpec::Kind::artin_schreier ? specialize(field, surface.f, gamma)
                                                             : specialize(field, surface.kf, gamma);
}

namespace {

// Solution table: sols[c] lists all y with L(y) = c (resp. y^lambda = c),
// ascending. One O(q) pass replaces a scan per x.
std::vector<std::vector<elt>> solution_table(const SurfaceSpec& surface) {
    const Field& field = *surface.field;
    std::vector<std::vector<elt>> sols(field.q());
    if (surface.kind == SurfaceSpec::Kind::artin_schreier) {
        for (elt y = 0; y < field.q(); ++y)
            sols[gf::eval_additive(field, surface.lhs, y)].push_back(y);
    } else {
        const long long lam = static_cast<long long>(surface.lambda);
        for (elt y = 0; y < field.q(); ++y) sols[field.pow(y, lam)].push_back(y);
    }
    return sols;
}

FiberPoints fiber_from_table(const SurfaceSpec& surface, elt gamma,
                             const std::vector<std::vector<elt>>& sols) {
    const Field& field = *surface.field;
    const bool kummer = surface.kind == SurfaceSpec::Kind::kummer;
    FiberPoints fp;
    fp.gamma = gamma;
    const poly fx = specialize(surface, gamma);
    for (elt x = 0; x < field.q(); ++x) {
        const elt c = gf::poly_eval(field, fx, x);
        const auto& ys = sols[c];
        if (ys.empty()) continue;
        const bool ramified = kummer && c == 0;
        for (elt y : ys) fp.points.push_back({x, y, ramified});
        if (!ramified) fp.x_image.push_back(x);
    }
    return fp;
}

bool gamma_admissible_degree(const SurfaceSpec& surface, elt gamma) {
    if (surface.kind == SurfaceSpec::Kind::artin_schreier) {
        const poly fx = specialize(surface, gamma);
        return gf::poly_degree(fx) == static_cast<int>(surface.s_degree());
    }
    return gamma != 0;
}

} // namespace

FiberPoints fiber_points(const SurfaceSpec& surface, elt gamma) {
    return fiber_from_table(surface, gamma, solution_table(surface));
}

std::vector<elt> gamma_set(const SurfaceSpec& surface, std::uint32_t eta) {
    const Field& field = *surface.field;
    const auto sols = solution_table(surface);
    std::vector<elt> out;
    for (elt gamma = 0; gamma < field.q(); ++gamma) {
        if (!gamma_admissible_degree(surface, gamma)) continue;
        FiberPoints fp = fiber_from_table(surface, gamma, sols);
        if (fp.x_image.size() >= eta) out.push_back(gamma);
    }
    if (out.empty())
        raise(errc::empty_gamma_set,
              "no fiber admits " + std::to_string(eta) + " usable x-coordinates");
    return out;
}

std::uint32_t auto_eta(const SurfaceSpec& surface) {
    const Field& field = *surface.field;
    const auto sols = solution_table(surface);
    std::uint32_t best = 0;
    bool any = false;
    for (elt gamma = 0; gamma < field.q(); ++gamma) {
        if (!gamma_admissible_degree(surface, gamma)) continue;
        any = true;
        FiberPoints fp = fiber_from_table(surface, gamma, sols);
        best = std::max(best, static_cast<std::uint32_t>(fp.x_image.size()));
    }
    if (!any || best == 0)
        raise(errc::empty_gamma_set, "no admissible fiber with evaluation points exists");
    return best;
}

EvaluationSet evaluation_set(const SurfaceSpec& surface, std::uint32_t eta) {
    const Field& field = *surface.field;
    const auto sols = solution_table(surface);

    EvaluationSet out;
    out.eta = eta;
    for (elt gamma = 0; gamma < field.q(); ++gamma) {
        if (!gamma_admissible_degree(surface, gamma)) continue;
        FiberPoints fp = fiber_from_table(surface, gamma, sols);
        if (fp.x_image.size() < eta) continue;
        const std::uint32_t begin = out.size();
        for (const auto& pt : fp.points)
            if (!pt.ramified) out.points.push_back({pt.x, pt.y, gamma});
        out.gammas.push_back(gamma);
        out.gamma_ranges.emplace_back(begin, out.size());
    }
    if (out.gammas.empty())
        raise(errc::empty_gamma_set,
              "no fiber admits " + std::to_string(eta) + " usable x-coordinates");

    // Re-verify every emitted point against the surface equation.
    for (std::size_t g = 0; g < out.gammas.size(); ++g) {
        const poly fx = specialize(surface, out.gammas[g]);
        for (std::uint32_t i = out.gamma_ranges[g].first; i < out.gamma_ranges[g].second; ++i) {
            const auto& pt = out.points[i];
            const elt rhs = gf::poly_eval(field, fx, pt.x);
            const elt lhs = surface.kind == SurfaceSpec::Kind::artin_schreier
                                ? gf::eval_additive(field, surface.lhs, pt.y)
                                : field.pow(pt.y, static_cast<long long>(surface.lambda));
            if (lhs != rhs)
                raise(errc::internal_error, "evaluation point fails the surface equation");
        }
    }
    return out;
}

std::vector<std::uint32_t> EvaluationSet::fiber_sizes() const {
    std::vector<std::uint32_t> out;
    out.reserve(gamma_ranges.size());
    for (const auto& [b, e] : gamma_ranges) out.push_back(e - b);
    return out;
}

} // namespace hlrc
