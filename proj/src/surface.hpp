#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "poly.hpp"

namespace hlrc {

// Sparse bivariate polynomial f(x, z) over a field, used as the right-hand
// side of Artin-Schreier surfaces y^p - y = f(x, z).
struct BivariatePoly {
    struct Term {
        std::uint32_t xdeg = 0;
        std::uint32_t zdeg = 0;
        gf::elt coeff = 0;
    };

    std::vector<Term> terms; // sorted by (xdeg, zdeg), no zero coefficients

    static BivariatePoly from_terms(std::vector<Term> terms);

    bool is_zero() const noexcept { return terms.empty(); }
    std::uint32_t deg_x() const noexcept;
    std::uint32_t deg_z() const noexcept;
};

// f(x, z) = c * x^x_exp * z^z_exp * prod_i (x - a_i z), the shape required
// for Kummer-type surfaces y^lambda = f(x, z).
struct KummerProductForm {
    gf::elt c = 0;
    std::uint32_t x_exp = 0;         // exponent of the bare x factor
    std::uint32_t z_exp = 0;         // exponent of the bare z factor
    std::vector<gf::elt> roots;      // pairwise distinct, nonzero

    std::uint32_t mu() const noexcept {
        return x_exp + static_cast<std::uint32_t>(roots.size());
    }
};

// A fibered surface of one of the two supported kinds. Fibers are cut by
// z = gamma and are Artin-Schreier or Kummer curves over the base field.
struct SurfaceSpec {
    enum class Kind : std::uint8_t { artin_schreier, kummer };

    std::shared_ptr<const gf::Field> field;
    Kind kind = Kind::artin_schreier;

    // Artin-Schreier: L(y) = f(x, z) with L one of the supported additive forms.
    gf::AdditiveLhs lhs;
    BivariatePoly f;
    bool relaxed_degree = false; // skip the deg_x f >= cover_degree + 1 hypothesis

    // Kummer: y^lambda = kf(x, z).
    std::uint64_t lambda = 0;
    KummerProductForm kf;

    static SurfaceSpec artin_schreier(std::shared_ptr<const gf::Field> field,
                                      gf::AdditiveLhs lhs, BivariatePoly f,
                                      bool relaxed_degree = false);
    static SurfaceSpec kummer(std::shared_ptr<const gf::Field> field, std::uint64_t lambda,
                              KummerProductForm kf);

    // Size of the fiber of pi_{x,z} over an unramified point: kernel size of
    // the additive map for Artin-Schreier surfaces, lambda for Kummer ones.
    std::uint32_t cover_degree() const noexcept { return cover_degree_; }

    // The degree parameter entering the distance bounds: deg_x f for
    // Artin-Schreier surfaces, mu for Kummer ones.
    std::uint32_t s_degree() const noexcept { return s_degree_; }

private:
    std::uint32_t cover_degree_ = 0;
    std::uint32_t s_degree_ = 0;
};

// f(x, gamma) as a univariate polynomial in x (ascending coefficients).
gf::poly specialize(const gf::Field& field, const BivariatePoly& f, gf::elt gamma);
gf::poly specialize(const gf::Field& field, const KummerProductForm& f, gf::elt gamma);
gf::poly specialize(const SurfaceSpec& surface, gf::elt gamma);

// All affine points of the fiber Z_gamma, ordered by (x, y).
struct FiberPoints {
    gf::elt gamma = 0;

    struct Pt {
        gf::elt x = 0;
        gf::elt y = 0;
        bool ramified = false; // Kummer only: y = 0 with f(x, gamma) = 0
    };

    std::vector<Pt> points;
    // Distinct x-coordinates of the non-ramified points, ascending. These are
    // the x-values that contribute full pi_{x,z} fibers to the evaluation set.
    std::vector<gf::elt> x_image;
};

FiberPoints fiber_points(const SurfaceSpec& surface, gf::elt gamma);

// Admissible gamma values in canonical order. Artin-Schreier surfaces require
// |x_image| >= eta and no drop in deg_x f(x, gamma); Kummer surfaces require
// |x_image| >= eta and gamma != 0.
std::vector<gf::elt> gamma_set(const SurfaceSpec& surface, std::uint32_t eta);

// Largest eta for which gamma_set would be nonempty: the maximum |x_image|
// over gamma values passing the kind-specific degree/nonzero conditions.
std::uint32_t auto_eta(const SurfaceSpec& surface);

// The evaluation set T, ordered by gamma (canonical order restricted to the
// admissible set), then x, then y. Kummer ramification points are excluded.
struct EvaluationSet {
    std::uint32_t eta = 0;
    std::vector<gf::elt> gammas;

    struct Point {
        gf::elt x = 0;
        gf::elt y = 0;
        gf::elt z = 0;
    };

    std::vector<Point> points;
    // Half-open index range of each gamma slice, aligned with gammas.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> gamma_ranges;

    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(points.size()); }
    std::vector<std::uint32_t> fiber_sizes() const;
};

EvaluationSet evaluation_set(const SurfaceSpec& surface, std::uint32_t eta);

} // namespace hlrc
