#pragma once

// Shared golden-instance builders for the test suites, constructed directly
// through the core API (independently of preset configs).

#include <memory>

#include "surface.hpp"

namespace fixtures {

using namespace hlrc;

// y^p - y = x^{p+1} z^2 + x^2 z^{p+1} over GF(p^2).
inline SurfaceSpec as_mixed_power(std::uint32_t p) {
    auto field = std::make_shared<const gf::Field>(p, 2);
    const gf::elt one = field->one();
    BivariatePoly f = BivariatePoly::from_terms({{p + 1, 2, one}, {2, p + 1, one}});
    return SurfaceSpec::artin_schreier(field, gf::AdditiveLhs::artin_schreier(), f);
}

// y^{q+1} = -x^m z^m (x^m + z^m) over GF(q^2), with q = 2 mod 3 and m = (q+1)/3.
inline SurfaceSpec kummer_cubic_cover(std::uint32_t q) {
    std::uint32_t p = q, h = 2;
    // q may be a prime power; factor it
    std::uint32_t base = 2;
    while (base * base <= q && q % base != 0) ++base;
    if (q % base == 0 && base < q) {
        std::uint32_t e = 0;
        std::uint32_t v = q;
        while (v % base == 0) {
            v /= base;
            ++e;
        }
        p = base;
        h = 2 * e;
    }
    auto field = std::make_shared<const gf::Field>(p, h);
    const std::uint32_t m = (q + 1) / 3;
    const gf::elt minus_one = field->neg(field->one());
    // roots of a^m = -1 give prod (x - a z) = x^m + z^m
    std::vector<gf::elt> roots;
    for (gf::elt a = 1; a < field->q(); ++a)
        if (field->pow(a, static_cast<long long>(m)) == minus_one) roots.push_back(a);
    KummerProductForm kf{minus_one, m, m, roots};
    return SurfaceSpec::kummer(field, q + 1, kf);
}

// y^q + y = x^{q+1} over GF(q^2): the cone fibration with constant fibers.
inline SurfaceSpec hermitian_cone(std::uint32_t q) {
    std::uint32_t p = q, h = 2;
    std::uint32_t base = 2;
    while (base * base <= q && q % base != 0) ++base;
    if (q % base == 0 && base < q) {
        std::uint32_t e = 0;
        std::uint32_t v = q;
        while (v % base == 0) {
            v /= base;
            ++e;
        }
        p = base;
        h = 2 * e;
    }
    auto field = std::make_shared<const gf::Field>(p, h);
    BivariatePoly f = BivariatePoly::from_terms({{q + 1, 0, field->one()}});
    return SurfaceSpec::artin_schreier(field, gf::AdditiveLhs::plus_form(q), f);
}

} // namespace fixtures
