#include "gf.hpp"

#include <algorithm>
#include <string>

namespace hlrc {

const char* errc_name(errc c) noexcept {
    switch (c) {
        case errc::ok: return "Ok";
        case errc::not_prime: return "NotPrime";
        case errc::reducible_modulus: return "ReducibleModulus";
        case errc::cardinality_cap_exceeded: return "CardinalityCapExceeded";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::lambda_divisible_by_characteristic: return "LambdaDivisibleByCharacteristic";
        case errc::lambda_not_dividing_group_order: return "LambdaNotDividingGroupOrder";
        case errc::unsupported_lhs: return "UnsupportedLHS";
        case errc::empty_gamma_set: return "EmptyGammaSet";
        case errc::rho_out_of_range: return "RhoOutOfRange";
        case errc::condition2_violated: return "Condition2Violated";
        case errc::rank_deficient: return "RankDeficient";
        case errc::insufficient_survivors: return "InsufficientSurvivors";
        case errc::insufficient_buckets: return "InsufficientBuckets";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::bound_violated: return "BoundViolated";
        case errc::formula_mismatch: return "FormulaMismatch";
        case errc::census_mismatch: return "CensusMismatch";
        case errc::config_invalid: return "ConfigInvalid";
        case errc::internal_error: return "InternalError";
    }
    return "Unknown";
}

} // namespace hlrc

namespace hlrc::gf {

namespace {

constexpr std::uint64_t add_table_max_q = 1024;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomials over GF(p), ascending coefficients. Used only during
// construction (table building); runtime arithmetic goes through the tables.
using pvec = std::vector<std::uint32_t>;

void ptrim(pvec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

pvec pmul(const pvec& a, const pvec& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    pvec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ptrim(r);
    return r;
}

// Remainder of a modulo monic m.
pvec pmod(pvec a, const pvec& m, std::uint32_t p) {
    ptrim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i < dm; ++i) {
                std::uint32_t t = (lead * m[i]) % p;
                std::uint32_t& c = a[shift + i];
                c = (c + p - t) % p;
            }
        }
        a.pop_back();
        ptrim(a);
    }
    return a;
}

pvec ppowmod(pvec base, std::uint64_t e, const pvec& m, std::uint32_t p) {
    pvec r = {1};
    base = pmod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

bool pis_one(const pvec& a) { return a.size() == 1 && a[0] == 1; }

// True iff the monic polynomial m of degree >= 1 is irreducible over GF(p),
// by trial division against every monic polynomial of degree <= deg(m)/2.
bool pirreducible(const pvec& m, std::uint32_t p) {
    const std::size_t deg = m.size() - 1;
    if (deg == 1) return true;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            pvec div(d + 1, 0);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < d; ++i) {
                div[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            div[d] = 1;
            pvec rem = pmod(m, div, p);
            if (rem.empty()) return false;
        }
    }
    return true;
}

} // namespace

Field::Field(std::uint32_t p, std::uint32_t h,
             std::optional<std::vector<std::uint32_t>> modulus,
             std::uint64_t cardinality_cap) : p_(p), h_(h) {
    if (p > cardinality_cap)
        raise(errc::cardinality_cap_exceeded,
              "characteristic " + std::to_string(p) + " exceeds the cardinality cap " +
                  std::to_string(cardinality_cap));
    if (!is_prime(p))
        raise(errc::not_prime, "p = " + std::to_string(p) + " is not prime");
    if (h < 1)
        raise(errc::config_invalid, "extension degree must be >= 1");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < h; ++i) {
        q *= p;
        if (q > cardinality_cap)
            raise(errc::cardinality_cap_exceeded,
                  "q = " + std::to_string(p) + "^" + std::to_string(h) +
                      " exceeds the cardinality cap " + std::to_string(cardinality_cap));
    }
    q_ = static_cast<std::uint32_t>(q);

    if (modulus) {
        modulus_ = std::move(*modulus);
        if (modulus_.size() != static_cast<std::size_t>(h) + 1)
            raise(errc::config_invalid, "modulus must have degree h = " + std::to_string(h));
        for (std::uint32_t c : modulus_)
            if (c >= p)
                raise(errc::config_invalid, "modulus coefficients must lie in [0, p)");
        if (modulus_.back() != 1)
            raise(errc::config_invalid, "modulus must be monic");
        if (!pirreducible(modulus_, p))
            raise(errc::reducible_modulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    } else if (h == 1) {
        modulus_ = {0, 1}; // the polynomial x
    } else {
        // Lexicographically smallest monic irreducible of degree h, with
        // coefficient vectors compared constant term first.
        bool found = false;
        for (std::uint32_t idx = 0; idx < q_ && !found; ++idx) {
            pvec cand(h + 1, 0);
            std::uint32_t v = idx;
            // idx encodes (c0, ..., c_{h-1}) with c0 most significant
            for (std::uint32_t i = 0; i < h; ++i) {
                cand[h - 1 - i] = v % p;
                v /= p;
            }
            cand[h] = 1;
            if (pirreducible(cand, p)) {
                modulus_ = std::move(cand);
                found = true;
            }
        }
        if (!found)
            raise(errc::internal_error, "no irreducible modulus found"); // cannot happen
    }

    place_.resize(h_);
    place_[h_ - 1] = 1;
    for (std::uint32_t i = h_ - 1; i > 0; --i) place_[i - 1] = place_[i] * p_;

    // discrete-log tables from a deterministically chosen generator
    auto pack = [&](const pvec& a) {
        elt v = 0;
        for (std::uint32_t i = 0; i < h_; ++i)
            v += (i < a.size() ? a[i] : 0) * place_[i];
        return v;
    };
    auto unpack = [&](elt v) {
        pvec a(h_, 0);
        for (std::uint32_t i = 0; i < h_; ++i) a[i] = (v / place_[i]) % p_;
        ptrim(a);
        return a;
    };
    one_ = pack({1});

    const std::uint64_t n = q_ - 1;
    const auto factors = prime_factors(n);
    elt gen = 0;
    for (elt cand = 1; cand < q_; ++cand) {
        pvec cv = unpack(cand);
        bool ok = true;
        for (std::uint64_t r : factors) {
            if (pis_one(ppowmod(cv, n / r, modulus_, p_))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = cand;
            break;
        }
    }
    if (gen == 0) raise(errc::internal_error, "no generator found"); // cannot happen

    exp_.resize(2 * n);
    log_.assign(q_, 0);
    pvec cur = {1};
    const pvec gv = unpack(gen);
    for (std::uint64_t i = 0; i < n; ++i) {
        elt v = pack(cur);
        exp_[i] = v;
        exp_[i + n] = v;
        log_[v] = static_cast<std::uint32_t>(i);
        cur = pmod(pmul(cur, gv, p_), modulus_, p_);
    }

    neg_.resize(q_);
    for (elt a = 0; a < q_; ++a) {
        elt r = 0;
        for (std::uint32_t i = 0; i < h_; ++i) {
            std::uint32_t d = (a / place_[i]) % p_;
            if (d != 0) d = p_ - d;
            r += d * place_[i];
        }
        neg_[a] = r;
    }

    if (q_ <= add_table_max_q) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (elt a = 0; a < q_; ++a)
            for (elt b = 0; b < q_; ++b) {
                elt r = 0;
                for (std::uint32_t i = 0; i < h_; ++i) {
                    std::uint32_t d = (a / place_[i]) % p_ + (b / place_[i]) % p_;
                    if (d >= p_) d -= p_;
                    r += d * place_[i];
                }
                add_table_[static_cast<std::size_t>(a) * q_ + b] = r;
            }
    }
}

void Field::check_element(elt a) const {
    if (a >= q_)
        raise(errc::field_mismatch,
              "element index " + std::to_string(a) + " out of range for GF(" + std::to_string(q_) + ")");
}

elt Field::element(std::uint64_t canonical_index) const {
    if (canonical_index >= q_)
        raise(errc::field_mismatch,
              "element index " + std::to_string(canonical_index) + " out of range for GF(" +
                  std::to_string(q_) + ")");
    return static_cast<elt>(canonical_index);
}

elt Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > h_)
        raise(errc::field_mismatch, "coefficient vector longer than the extension degree");
    elt v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] >= p_)
            raise(errc::field_mismatch, "coefficient out of range [0, p)");
        v += coeffs[i] * place_[i];
    }
    return v;
}

std::vector<std::uint32_t> Field::coeffs(elt a) const {
    check_element(a);
    std::vector<std::uint32_t> c(h_);
    for (std::uint32_t i = 0; i < h_; ++i) c[i] = (a / place_[i]) % p_;
    return c;
}

elt Field::from_subfield_int(std::uint64_t n) const {
    return static_cast<elt>((n % p_) * place_[0]);
}

elt Field::add(elt a, elt b) const {
    check_element(a);
    check_element(b);
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    elt r = 0;
    for (std::uint32_t i = 0; i < h_; ++i) {
        std::uint32_t d = (a / place_[i]) % p_ + (b / place_[i]) % p_;
        if (d >= p_) d -= p_;
        r += d * place_[i];
    }
    return r;
}

elt Field::neg(elt a) const {
    check_element(a);
    return neg_[a];
}

elt Field::sub(elt a, elt b) const { return add(a, neg(b)); }

elt Field::mul(elt a, elt b) const {
    check_element(a);
    check_element(b);
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>(log_[a]) + log_[b]];
}

elt Field::inv(elt a) const {
    check_element(a);
    if (a == 0) raise(errc::division_by_zero, "inverse of zero");
    const std::uint32_t n = q_ - 1;
    return exp_[(n - log_[a]) % n];
}

elt Field::pow(elt a, long long e) const {
    check_element(a);
    if (a == 0) {
        if (e < 0) raise(errc::division_by_zero, "negative power of zero");
        return e == 0 ? one_ : 0;
    }
    const long long n = q_ - 1;
    long long r = e % n;
    if (r < 0) r += n;
    const std::uint64_t idx = (static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r)) %
                              static_cast<std::uint64_t>(n);
    return exp_[idx];
}

bool Field::has_primitive_root_of_unity(std::uint64_t lambda) const {
    if (lambda < 1)
        raise(errc::config_invalid, "lambda must be positive");
    // A lambda that is itself a power of p asks for p-power roots of unity,
    // which cannot exist in characteristic p; treat that as a usage error.
    // Any other lambda with p | lambda simply fails the divisibility test.
    std::uint64_t v = lambda;
    while (v % p_ == 0) v /= p_;
    if (v == 1 && lambda > 1)
        raise(errc::lambda_divisible_by_characteristic,
              "lambda = " + std::to_string(lambda) + " is a power of the characteristic " +
                  std::to_string(p_));
    return (static_cast<std::uint64_t>(q_) - 1) % lambda == 0;
}

std::vector<elt> Field::solve_kummer_root(std::uint64_t lambda, elt c) const {
    check_element(c);
    if (!has_primitive_root_of_unity(lambda))
        raise(errc::lambda_not_dividing_group_order,
              "lambda = " + std::to_string(lambda) + " does not divide q-1 = " +
                  std::to_string(q_ - 1));
    std::vector<elt> out;
    if (c == 0) {
        out.push_back(0);
        return out;
    }
    const long long le = static_cast<long long>(lambda);
    for (elt y = 1; y < q_; ++y)
        if (pow(y, le) == c) out.push_back(y);
    return out;
}

void validate_additive_lhs(const Field& field, const AdditiveLhs& lhs) {
    switch (lhs.kind) {
        case AdditiveLhs::Kind::y_p_minus_y:
            return;
        case AdditiveLhs::Kind::y_q0_plus_y: {
            // q0 must be p^j for some 1 <= j <= h, so that y -> y^q0 is a
            // field automorphism power and L is additive on GF(q).
            std::uint64_t v = lhs.q0;
            if (v < field.p()) break;
            while (v % field.p() == 0) v /= field.p();
            if (v != 1) break;
            std::uint64_t q0 = lhs.q0;
            if (static_cast<std::uint64_t>(field.q()) % q0 != 0) break;
            return;
        }
    }
    raise(errc::unsupported_lhs,
          "additive left-hand side must be y^p - y or y^q0 + y with q0 a power of p dividing q");
}

std::uint32_t additive_lhs_degree(const Field& field, const AdditiveLhs& lhs) {
    validate_additive_lhs(field, lhs);
    return lhs.kind == AdditiveLhs::Kind::y_p_minus_y ? field.p()
                                                      : static_cast<std::uint32_t>(lhs.q0);
}

elt eval_additive(const Field& field, const AdditiveLhs& lhs, elt y) {
    if (lhs.kind == AdditiveLhs::Kind::y_p_minus_y)
        return field.sub(field.pow(y, field.p()), y);
    return field.add(field.pow(y, static_cast<long long>(lhs.q0)), y);
}

std::vector<elt> solve_additive(const Field& field, const AdditiveLhs& lhs, elt c) {
    validate_additive_lhs(field, lhs);
    std::vector<elt> out;
    for (elt y = 0; y < field.q(); ++y)
        if (eval_additive(field, lhs, y) == c) out.push_back(y);
    return out;
}

std::vector<elt> additive_kernel(const Field& field, const AdditiveLhs& lhs) {
    return solve_additive(field, lhs, 0);
}

} // namespace hlrc::gf
