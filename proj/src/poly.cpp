#include "poly.hpp"

namespace hlrc::gf {

void poly_trim(poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_degree(const poly& a) { return static_cast<int>(a.size()) - 1; }

elt poly_eval(const Field& f, const poly& a, elt x) {
    elt r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
    return r;
}

poly poly_mul(const Field& f, const poly& a, const poly& b) {
    if (a.empty() || b.empty()) return {};
    poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

poly poly_scale(const Field& f, const poly& a, elt c) {
    if (c == 0) return {};
    poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
    return r;
}

poly poly_add(const Field& f, const poly& a, const poly& b) {
    poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        elt av = i < a.size() ? a[i] : 0;
        elt bv = i < b.size() ? b[i] : 0;
        r[i] = f.add(av, bv);
    }
    poly_trim(r);
    return r;
}

poly poly_interpolate(const Field& f, std::span<const elt> xs, std::span<const elt> ys) {
    const std::size_t n = xs.size();
    poly acc; // sum of y_i * L_i(x)
    for (std::size_t i = 0; i < n; ++i) {
        if (ys[i] == 0) continue;
        poly num = {f.one()};
        elt den = f.one();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            num = poly_mul(f, num, poly{f.neg(xs[j]), f.one()});
            den = f.mul(den, f.sub(xs[i], xs[j]));
        }
        acc = poly_add(f, acc, poly_scale(f, num, f.div(ys[i], den)));
    }
    return acc;
}

elt poly_interpolate_at(const Field& f, std::span<const elt> xs, std::span<const elt> ys, elt x0) {
    const std::size_t n = xs.size();
    elt acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (ys[i] == 0) continue;
        elt num = f.one();
        elt den = f.one();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            num = f.mul(num, f.sub(x0, xs[j]));
            den = f.mul(den, f.sub(xs[i], xs[j]));
        }
        acc = f.add(acc, f.mul(ys[i], f.div(num, den)));
    }
    return acc;
}

} // namespace hlrc::gf
