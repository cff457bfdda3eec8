#include "hlrc/hlrc.h"

#include <cstring>
#include <string>

#include "job.hpp"

using namespace hlrc;
using nlohmann::json;

struct hlrc_field {
    std::shared_ptr<const gf::Field> f;
};

struct hlrc_code {
    JobConfig config;
    BuiltCode built;
};

namespace {

thread_local std::string g_last_error = "no error";

hlrc_status set_error(errc code, const std::string& msg) {
    g_last_error = msg;
    return static_cast<hlrc_status>(static_cast<int>(code));
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
hlrc_status guarded(Fn&& fn) {
    try {
        fn();
        return HLRC_OK;
    } catch (const error& e) {
        return set_error(e.code(), e.what());
    } catch (const std::exception& e) {
        return set_error(errc::internal_error, e.what());
    } catch (...) {
        return set_error(errc::internal_error, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const gf::Field& deref(const hlrc_field* field) {
    if (!field) raise(errc::config_invalid, "null field handle");
    return *field->f;
}

const hlrc_code& deref(const hlrc_code* code) {
    if (!code) raise(errc::config_invalid, "null code handle");
    return *code;
}

hlrc_status copy_out(const std::vector<gf::elt>& values, uint32_t* buf, size_t buflen,
                     size_t* count) {
    if (count) *count = values.size();
    if (buf) {
        const size_t n = std::min(buflen, values.size());
        for (size_t i = 0; i < n; ++i) buf[i] = values[i];
    }
    return HLRC_OK;
}

} // namespace

extern "C" {

const char* hlrc_version(void) { return tool_version; }

const char* hlrc_status_name(hlrc_status status) {
    return errc_name(static_cast<errc>(static_cast<int>(status)));
}

int hlrc_status_exit_code(hlrc_status status) {
    return exit_code_for(static_cast<errc>(static_cast<int>(status)));
}

const char* hlrc_last_error(void) { return g_last_error.c_str(); }

void hlrc_string_free(char* s) { delete[] s; }

/* ---- fields ------------------------------------------------------------ */

hlrc_status hlrc_field_create(uint32_t p, uint32_t h, const uint32_t* modulus,
                              size_t modulus_len, hlrc_field** out) {
    return guarded([&] {
        if (!out) raise(errc::config_invalid, "null output pointer");
        std::optional<std::vector<uint32_t>> mod;
        if (modulus && modulus_len > 0) mod = std::vector<uint32_t>(modulus, modulus + modulus_len);
        *out = new hlrc_field{std::make_shared<const gf::Field>(p, h, std::move(mod))};
    });
}

void hlrc_field_destroy(hlrc_field* field) { delete field; }

uint32_t hlrc_field_p(const hlrc_field* field) { return field ? field->f->p() : 0; }
uint32_t hlrc_field_h(const hlrc_field* field) { return field ? field->f->h() : 0; }
uint32_t hlrc_field_q(const hlrc_field* field) { return field ? field->f->q() : 0; }

hlrc_status hlrc_field_modulus(const hlrc_field* field, uint32_t* buf, size_t buflen,
                               size_t* written) {
    return guarded([&] {
        const auto& m = deref(field).modulus();
        if (written) *written = m.size();
        if (buf)
            for (size_t i = 0; i < std::min(buflen, m.size()); ++i) buf[i] = m[i];
    });
}

#define HLRC_BINOP(name, expr)                                                              \
    hlrc_status hlrc_field_##name(const hlrc_field* field, uint32_t a, uint32_t b,          \
                                  uint32_t* out) {                                          \
        return guarded([&] {                                                                \
            if (!out) raise(errc::config_invalid, "null output pointer");                   \
            const gf::Field& f = deref(field);                                              \
            *out = expr;                                                                    \
        });                                                                                 \
    }

HLRC_BINOP(add, f.add(a, b))
HLRC_BINOP(sub, f.sub(a, b))
HLRC_BINOP(mul, f.mul(a, b))
#undef HLRC_BINOP

hlrc_status hlrc_field_neg(const hlrc_field* field, uint32_t a, uint32_t* out) {
    return guarded([&] {
        if (!out) raise(errc::config_invalid, "null output pointer");
        *out = deref(field).neg(a);
    });
}

hlrc_status hlrc_field_inv(const hlrc_field* field, uint32_t a, uint32_t* out) {
    return guarded([&] {
        if (!out) raise(errc::config_invalid, "null output pointer");
        *out = deref(field).inv(a);
    });
}

hlrc_status hlrc_field_pow(const hlrc_field* field, uint32_t a, int64_t e, uint32_t* out) {
    return guarded([&] {
        if (!out) raise(errc::config_invalid, "null output pointer");
        *out = deref(field).pow(a, static_cast<long long>(e));
    });
}

hlrc_status hlrc_field_from_coeffs(const hlrc_field* field, const uint32_t* coeffs, size_t len,
                                   uint32_t* out) {
    return guarded([&] {
        if (!out || (!coeffs && len > 0)) raise(errc::config_invalid, "null pointer");
        *out = deref(field).from_coeffs(std::span<const uint32_t>(coeffs, len));
    });
}

hlrc_status hlrc_field_coeffs(const hlrc_field* field, uint32_t a, uint32_t* buf, size_t buflen,
                              size_t* written) {
    return guarded([&] {
        const auto c = deref(field).coeffs(a);
        if (written) *written = c.size();
        if (buf)
            for (size_t i = 0; i < std::min(buflen, c.size()); ++i) buf[i] = c[i];
    });
}

hlrc_status hlrc_field_has_primitive_root_of_unity(const hlrc_field* field, uint64_t lambda,
                                                   int* out) {
    return guarded([&] {
        if (!out) raise(errc::config_invalid, "null output pointer");
        *out = deref(field).has_primitive_root_of_unity(lambda) ? 1 : 0;
    });
}

hlrc_status hlrc_field_solve_additive(const hlrc_field* field, const char* lhs_kind, uint64_t q0,
                                      uint32_t c, uint32_t* buf, size_t buflen, size_t* count) {
    return guarded([&] {
        if (!lhs_kind) raise(errc::config_invalid, "null lhs kind");
        gf::AdditiveLhs lhs;
        if (std::strcmp(lhs_kind, "y^p-y") == 0)
            lhs = gf::AdditiveLhs::artin_schreier();
        else if (std::strcmp(lhs_kind, "y^q0+y") == 0)
            lhs = gf::AdditiveLhs::plus_form(q0);
        else
            raise(errc::unsupported_lhs, std::string("unknown lhs kind '") + lhs_kind + "'");
        copy_out(gf::solve_additive(deref(field), lhs, c), buf, buflen, count);
    });
}

hlrc_status hlrc_field_solve_kummer_root(const hlrc_field* field, uint64_t lambda, uint32_t c,
                                         uint32_t* buf, size_t buflen, size_t* count) {
    return guarded(
        [&] { copy_out(deref(field).solve_kummer_root(lambda, c), buf, buflen, count); });
}

/* ---- codes -------------------------------------------------------------- */

hlrc_status hlrc_code_build(const char* config_json, hlrc_code** out) {
    return guarded([&] {
        if (!config_json || !out) raise(errc::config_invalid, "null pointer");
        auto code = std::make_unique<hlrc_code>();
        code->config = parse_config_text(config_json);
        code->built = build_from_config(code->config);
        *out = code.release();
    });
}

void hlrc_code_destroy(hlrc_code* code) { delete code; }

uint32_t hlrc_code_length(const hlrc_code* code) { return code ? code->built.G.n : 0; }
uint32_t hlrc_code_dimension(const hlrc_code* code) { return code ? code->built.G.k : 0; }

uint64_t hlrc_code_distance_bound(const hlrc_code* code) {
    return code ? distance_bound(code->built.spec).value : 0;
}

hlrc_status hlrc_code_param_report(const hlrc_code* code, char** json_out) {
    return guarded([&] {
        if (!json_out) raise(errc::config_invalid, "null output pointer");
        const auto& c = deref(code);
        ParamReport r = param_report(c.built.spec);
        json j;
        j["n"] = r.n;
        j["k"] = r.k;
        j["rank"] = c.built.G.rank;
        j["distance_bound"] = {{"value", r.d.value},
                               {"product_term", r.d.product_term},
                               {"bezout_term", r.d.bezout_term},
                               {"branch", bound_branch_name(r.d.branch)}};
        j["rate"] = r.rate;
        j["relative_distance_bound"] = r.relative_distance_bound;
        j["eta"] = c.built.spec.eta;
        j["gamma_count"] = c.built.spec.gamma_count();
        j["middle_code"] = {{"n_lower", r.n1_lower},
                            {"n_per_gamma", r.n1_per_gamma},
                            {"k", r.k1},
                            {"d", r.d1}};
        j["lower_code"] = {{"n", r.n2}, {"k", r.k2}, {"d", r.d2}};
        j["warnings"] = r.warnings;
        *json_out = dup_string(j.dump(2));
    });
}

hlrc_status hlrc_code_points(const hlrc_code* code, char** json_out) {
    return guarded([&] {
        if (!json_out) raise(errc::config_invalid, "null output pointer");
        const auto& c = deref(code);
        const gf::Field& field = *c.config.field;
        json pts = json::array();
        for (uint32_t i = 0; i < c.built.spec.T.size(); ++i) {
            const auto& p = c.built.spec.T.points[i];
            pts.push_back({{"index", i},
                           {"x", elt_to_json(field, p.x)},
                           {"y", elt_to_json(field, p.y)},
                           {"z", elt_to_json(field, p.z)}});
        }
        json j;
        j["eta"] = c.built.spec.T.eta;
        j["points"] = std::move(pts);
        *json_out = dup_string(j.dump(2));
    });
}

hlrc_status hlrc_code_matrix_entry(const hlrc_code* code, uint32_t row, uint32_t col,
                                   uint32_t* out) {
    return guarded([&] {
        if (!out) raise(errc::config_invalid, "null output pointer");
        const auto& c = deref(code);
        if (row >= c.built.G.k || col >= c.built.G.n)
            raise(errc::config_invalid, "matrix index out of range");
        *out = c.built.G.at(row, col);
    });
}

hlrc_status hlrc_code_encode(const hlrc_code* code, const uint32_t* message, uint32_t* codeword) {
    return guarded([&] {
        const auto& c = deref(code);
        if (!message || !codeword) raise(errc::config_invalid, "null pointer");
        auto cw = encode(*c.config.field, c.built.G,
                         std::span<const gf::elt>(message, c.built.G.k));
        for (uint32_t i = 0; i < c.built.G.n; ++i) codeword[i] = cw[i];
    });
}

hlrc_status hlrc_code_simulate(const hlrc_code* code, const uint32_t* codeword,
                               const uint32_t* erasures, size_t n_erasures, char** report_json) {
    return guarded([&] {
        const auto& c = deref(code);
        if (!codeword || !report_json || (!erasures && n_erasures > 0))
            raise(errc::config_invalid, "null pointer");
        std::vector<gf::elt> cw(codeword, codeword + c.built.G.n);
        std::vector<uint32_t> pattern(erasures, erasures + n_erasures);
        RecoveryReport report = simulate(cw, pattern, c.built.hierarchy, c.built.spec);

        const gf::Field& field = *c.config.field;
        json entries = json::array();
        for (const auto& e : report.entries) {
            json entry;
            entry["position"] = e.position;
            entry["outcome"] = recovery_outcome_name(e.outcome);
            if (e.outcome != RecoveryReport::Outcome::failed) {
                entry["value"] = elt_to_json(field, e.value);
                entry["symbols_accessed"] = e.symbols_accessed;
            }
            entries.push_back(std::move(entry));
        }
        json j;
        j["erased"] = report.entries.size();
        j["recovered_lower"] = report.recovered_lower;
        j["recovered_middle"] = report.recovered_middle;
        j["failed"] = report.failed;
        j["incorrect"] = report.incorrect;
        j["symbols_accessed"] = report.total_symbols_accessed;
        j["positions"] = std::move(entries);
        *report_json = dup_string(j.dump(2));
    });
}

hlrc_status hlrc_code_verify_distance(const hlrc_code* code, const char* mode, uint64_t trials,
                                      uint64_t seed, uint64_t budget, char** audit_json) {
    return guarded([&] {
        const auto& c = deref(code);
        if (!audit_json) raise(errc::config_invalid, "null output pointer");
        const gf::Field& field = *c.config.field;
        const std::string m = mode ? mode : "auto";
        if (budget == 0) budget = default_distance_budget;
        if (trials == 0) trials = 10000;

        std::vector<DistanceResult> results;
        std::string used_mode;
        if (m == "exhaustive") {
            results.push_back(min_distance_exhaustive(field, c.built.G, budget));
            used_mode = "exhaustive";
        } else if (m == "sampled") {
            results.push_back(min_weight_sampled(field, c.built.G, trials, seed));
            results.push_back(sparse_low_weight_search(field, c.built.G));
            used_mode = "sampled";
        } else if (m == "auto") {
            try {
                results.push_back(min_distance_exhaustive(field, c.built.G, budget));
                used_mode = "exhaustive";
            } catch (const error& e) {
                if (e.code() != errc::budget_exceeded) throw;
                results.push_back(min_weight_sampled(field, c.built.G, trials, seed));
                results.push_back(sparse_low_weight_search(field, c.built.G));
                used_mode = "sampled";
            }
        } else {
            raise(errc::config_invalid, "mode must be auto, exhaustive or sampled");
        }

        BoundAudit audit = check_bound(c.built.spec, results);
        json j;
        j["mode"] = used_mode;
        j["expected"] = audit.bound;
        j["measured"] = audit.measured;
        j["verdict"] = audit.pass ? "PASS" : "FAIL";
        if (audit.exhaustive) j["slack"] = audit.slack;
        if (!audit.pass && !audit.witness.empty()) {
            json w = json::array();
            for (gf::elt v : audit.witness) w.push_back(elt_to_json(field, v));
            j["witness"] = std::move(w);
        }
        *audit_json = dup_string(j.dump(2));
        if (!audit.pass) raise(errc::bound_violated, "measured weight below the distance bound");
    });
}

/* ---- jobs and presets ---------------------------------------------------- */

hlrc_status hlrc_run_job(const char* config_json, const char* action, const char* options_json,
                         char** result_json) {
    return guarded([&] {
        if (!config_json || !result_json) raise(errc::config_invalid, "null pointer");
        JobConfig config = parse_config_text(config_json);

        RunOptions opt;
        opt.action = action ? action : "auto";
        if (options_json && *options_json) {
            json o;
            try {
                o = json::parse(options_json);
            } catch (const json::parse_error& e) {
                raise(errc::config_invalid, std::string("options are not valid JSON: ") + e.what());
            }
            if (!o.is_object()) raise(errc::config_invalid, "options must be a JSON object");
            for (auto it = o.begin(); it != o.end(); ++it) {
                const std::string& key = it.key();
                if (key == "out")
                    opt.out_dir = it.value().get<std::string>();
                else if (key == "seed")
                    opt.seed = it.value().get<uint64_t>();
                else if (key == "trials")
                    opt.trials = it.value().get<uint64_t>();
                else if (key == "budget")
                    opt.budget = it.value().get<uint64_t>();
                else if (key == "format")
                    opt.format = it.value().get<std::string>();
                else
                    raise(errc::config_invalid, "unknown option '" + key + "'");
            }
        }

        JobResult res = run_job(config, opt);
        json j;
        j["exit_code"] = res.exit_code;
        j["text"] = res.text;
        j["summary"] = res.summary;
        j["artifacts"] = res.artifacts;
        *result_json = dup_string(j.dump(2));
        if (res.exit_code == 1)
            raise(res.failure != errc::ok ? res.failure : errc::bound_violated,
                  "a verification audit failed; see the result JSON");
    });
}

hlrc_status hlrc_preset_names(char** json_out) {
    return guarded([&] {
        if (!json_out) raise(errc::config_invalid, "null output pointer");
        *json_out = dup_string(json(preset_names()).dump(2));
    });
}

hlrc_status hlrc_preset_config(const char* name, char** json_out) {
    return guarded([&] {
        if (!name || !json_out) raise(errc::config_invalid, "null pointer");
        *json_out = dup_string(preset_config_text(name));
    });
}

} // extern "C"
