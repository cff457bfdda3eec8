#pragma once

#include <span>
#include <vector>

#include "gf.hpp"

namespace hlrc::gf {

// Univariate polynomials over a Field, ascending coefficients.
// The zero polynomial is the empty vector.
using poly = std::vector<elt>;

void poly_trim(poly& a);

// Degree, with degree(0) = -1.
int poly_degree(const poly& a);

elt poly_eval(const Field& f, const poly& a, elt x);

poly poly_mul(const Field& f, const poly& a, const poly& b);

poly poly_scale(const Field& f, const poly& a, elt c);

poly poly_add(const Field& f, const poly& a, const poly& b);

// Coefficients of the unique polynomial of degree < xs.size() through the
// points (xs[i], ys[i]). The xs must be pairwise distinct.
poly poly_interpolate(const Field& f, std::span<const elt> xs, std::span<const elt> ys);

// Value at x0 of the interpolating polynomial, without forming coefficients.
elt poly_interpolate_at(const Field& f, std::span<const elt> xs, std::span<const elt> ys, elt x0);

} // namespace hlrc::gf
