#include "job.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace hlrc {

using gf::elt;
using gf::Field;
using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& path, const std::string& what) {
    raise(errc::config_invalid, path + ": " + what);
}

void expect_keys(const json& obj, const std::vector<std::string>& allowed,
                 const std::string& path) {
    if (!obj.is_object()) bad_config(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            bad_config(path, "unknown key '" + it.key() + "'");
    }
}

std::uint64_t get_uint(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    bad_config(path, "expected a non-negative integer");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

elt elt_from_json(const Field& field, const json& v) {
    if (v.is_number_integer() || v.is_number_unsigned())
        return field.element(get_uint(v, "element"));
    if (v.is_array()) {
        std::vector<std::uint32_t> coeffs;
        for (const auto& c : v)
            coeffs.push_back(static_cast<std::uint32_t>(get_uint(c, "element coefficient")));
        return field.from_coeffs(coeffs);
    }
    raise(errc::config_invalid,
          "field elements must be coefficient arrays or canonical integer indices");
}

json elt_to_json(const Field& field, elt a) { return json(field.coeffs(a)); }

namespace {

std::shared_ptr<const Field> parse_field(const json& doc) {
    expect_keys(doc, {"p", "h", "modulus"}, "field");
    if (!doc.contains("p") || !doc.contains("h")) bad_config("field", "p and h are required");
    const auto p = static_cast<std::uint32_t>(get_uint(doc.at("p"), "field.p"));
    const auto h = static_cast<std::uint32_t>(get_uint(doc.at("h"), "field.h"));
    std::optional<std::vector<std::uint32_t>> modulus;
    if (doc.contains("modulus")) {
        if (!doc.at("modulus").is_array()) bad_config("field.modulus", "expected an array");
        std::vector<std::uint32_t> m;
        for (const auto& c : doc.at("modulus"))
            m.push_back(static_cast<std::uint32_t>(get_uint(c, "field.modulus[]")));
        modulus = std::move(m);
    }
    return std::make_shared<const Field>(p, h, std::move(modulus));
}

gf::AdditiveLhs parse_lhs(const json& v, const Field& field) {
    if (v.is_string()) {
        if (v.get<std::string>() == "y^p-y") return gf::AdditiveLhs::artin_schreier();
        bad_config("surface.lhs", "unknown form '" + v.get<std::string>() + "'");
    }
    expect_keys(v, {"kind", "q0"}, "surface.lhs");
    if (!v.contains("kind")) bad_config("surface.lhs", "kind is required");
    const std::string kind = v.at("kind").get<std::string>();
    if (kind == "y^p-y") return gf::AdditiveLhs::artin_schreier();
    if (kind == "y^q0+y") {
        if (!v.contains("q0")) bad_config("surface.lhs", "q0 is required for y^q0+y");
        auto lhs = gf::AdditiveLhs::plus_form(get_uint(v.at("q0"), "surface.lhs.q0"));
        gf::validate_additive_lhs(field, lhs);
        return lhs;
    }
    bad_config("surface.lhs", "unknown form '" + kind + "'");
}

SurfaceSpec parse_surface(const json& doc, std::shared_ptr<const Field> field) {
    if (!doc.is_object() || !doc.contains("kind")) bad_config("surface", "kind is required");
    const std::string kind = doc.at("kind").get<std::string>();

    if (kind == "artin-schreier") {
        expect_keys(doc, {"kind", "lhs", "f", "relaxed_degree"}, "surface");
        gf::AdditiveLhs lhs = doc.contains("lhs") ? parse_lhs(doc.at("lhs"), *field)
                                                  : gf::AdditiveLhs::artin_schreier();
        if (!doc.contains("f")) bad_config("surface", "f is required");
        const json& fj = doc.at("f");
        if (!fj.is_array()) bad_config("surface.f", "expected an array of terms");
        std::vector<BivariatePoly::Term> terms;
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto& t : fj) {
            expect_keys(t, {"x", "z", "c"}, "surface.f[]");
            if (!t.contains("x") || !t.contains("z") || !t.contains("c"))
                bad_config("surface.f[]", "each term needs x, z and c");
            const auto xd = static_cast<std::uint32_t>(get_uint(t.at("x"), "surface.f[].x"));
            const auto zd = static_cast<std::uint32_t>(get_uint(t.at("z"), "surface.f[].z"));
            if (!seen.insert({xd, zd}).second)
                bad_config("surface.f", "duplicate term for the same (x, z) degrees");
            terms.push_back({xd, zd, elt_from_json(*field, t.at("c"))});
        }
        const bool relaxed = doc.value("relaxed_degree", false);
        return SurfaceSpec::artin_schreier(std::move(field), lhs,
                                           BivariatePoly::from_terms(std::move(terms)), relaxed);
    }

    if (kind == "kummer") {
        expect_keys(doc, {"kind", "lambda", "f"}, "surface");
        if (!doc.contains("lambda")) bad_config("surface", "lambda is required");
        const std::uint64_t lambda = get_uint(doc.at("lambda"), "surface.lambda");
        if (!doc.contains("f")) bad_config("surface", "f is required");
        const json& fj = doc.at("f");
        expect_keys(fj, {"c", "x_exp", "z_exp", "roots"}, "surface.f");
        if (!fj.contains("c") || !fj.contains("roots"))
            bad_config("surface.f", "c and roots are required");
        KummerProductForm kf;
        kf.c = elt_from_json(*field, fj.at("c"));
        if (fj.contains("x_exp"))
            kf.x_exp = static_cast<std::uint32_t>(get_uint(fj.at("x_exp"), "surface.f.x_exp"));
        if (fj.contains("z_exp"))
            kf.z_exp = static_cast<std::uint32_t>(get_uint(fj.at("z_exp"), "surface.f.z_exp"));
        if (!fj.at("roots").is_array()) bad_config("surface.f.roots", "expected an array");
        for (const auto& r : fj.at("roots")) kf.roots.push_back(elt_from_json(*field, r));
        return SurfaceSpec::kummer(std::move(field), lambda, std::move(kf));
    }

    bad_config("surface.kind", "unknown kind '" + kind + "' (artin-schreier or kummer)");
}

const std::vector<std::string> known_actions = {"params", "build", "simulate", "verify-distance",
                                                "verify-census"};

JobConfig::ActionSpec parse_action(const json& v, const std::string& path) {
    JobConfig::ActionSpec spec;
    if (v.is_string()) {
        spec.name = v.get<std::string>();
        spec.options = json::object();
    } else if (v.is_object()) {
        if (!v.contains("action")) bad_config(path, "action name is required");
        spec.name = v.at("action").get<std::string>();
        spec.options = v;
        spec.options.erase("action");
    } else {
        bad_config(path, "expected an action name or object");
    }
    if (std::find(known_actions.begin(), known_actions.end(), spec.name) == known_actions.end())
        bad_config(path, "unknown action '" + spec.name + "'");

    if (spec.name == "simulate") {
        expect_keys(spec.options, {"trials", "seed", "erasures", "pattern"}, path);
        if (spec.options.contains("pattern")) {
            const json& p = spec.options.at("pattern");
            if (p.is_string()) {
                const std::string s = p.get<std::string>();
                if (s != "uniform" && s != "worst-lower" && s != "worst-middle" &&
                    s != "worst-middle-failure")
                    bad_config(path + ".pattern", "unknown generator '" + s + "'");
            } else if (!p.is_array()) {
                bad_config(path + ".pattern", "expected a generator name or an index list");
            }
        }
    } else if (spec.name == "verify-distance") {
        expect_keys(spec.options, {"mode", "trials", "seed", "budget", "sparse"}, path);
        if (spec.options.contains("mode")) {
            const std::string m = spec.options.at("mode").get<std::string>();
            if (m != "auto" && m != "exhaustive" && m != "sampled")
                bad_config(path + ".mode", "unknown mode '" + m + "'");
        }
    } else {
        expect_keys(spec.options, {}, path);
    }
    return spec;
}

std::pair<std::uint32_t, std::uint32_t> parse_range(const json& v, const std::string& path) {
    if (v.is_array() && v.size() == 2)
        return {static_cast<std::uint32_t>(get_uint(v[0], path)),
                static_cast<std::uint32_t>(get_uint(v[1], path))};
    if (v.is_number_integer() || v.is_number_unsigned()) {
        const auto x = static_cast<std::uint32_t>(get_uint(v, path));
        return {x, x};
    }
    bad_config(path, "expected [lo, hi] or a single value");
}

json normalize_surface(const JobConfig& cfg) {
    const Field& field = *cfg.field;
    json s;
    if (cfg.surface.kind == SurfaceSpec::Kind::artin_schreier) {
        s["kind"] = "artin-schreier";
        if (cfg.surface.lhs.kind == gf::AdditiveLhs::Kind::y_p_minus_y)
            s["lhs"] = "y^p-y";
        else
            s["lhs"] = {{"kind", "y^q0+y"}, {"q0", cfg.surface.lhs.q0}};
        json terms = json::array();
        for (const auto& t : cfg.surface.f.terms)
            terms.push_back({{"x", t.xdeg}, {"z", t.zdeg}, {"c", elt_to_json(field, t.coeff)}});
        s["f"] = std::move(terms);
        s["relaxed_degree"] = cfg.surface.relaxed_degree;
    } else {
        s["kind"] = "kummer";
        s["lambda"] = cfg.surface.lambda;
        json roots = json::array();
        for (elt r : cfg.surface.kf.roots) roots.push_back(elt_to_json(field, r));
        s["f"] = {{"c", elt_to_json(field, cfg.surface.kf.c)},
                  {"x_exp", cfg.surface.kf.x_exp},
                  {"z_exp", cfg.surface.kf.z_exp},
                  {"roots", std::move(roots)}};
    }
    return s;
}

} // namespace

JobConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(errc::config_invalid, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config_json(doc);
}

JobConfig parse_config_json(const json& doc) {
    expect_keys(doc, {"field", "surface", "code", "actions", "sweep", "output"}, "config");
    if (!doc.contains("field")) bad_config("config", "field section is required");
    if (!doc.contains("surface")) bad_config("config", "surface section is required");

    JobConfig cfg;
    cfg.field = parse_field(doc.at("field"));
    cfg.surface = parse_surface(doc.at("surface"), cfg.field);

    if (doc.contains("code")) {
        const json& c = doc.at("code");
        expect_keys(c, {"eta", "rho1", "rho2", "rho3", "waive_condition2"}, "code");
        for (const char* key : {"eta", "rho1", "rho2", "rho3"})
            if (!c.contains(key)) bad_config("code", std::string(key) + " is required");
        if (c.at("eta").is_string()) {
            if (c.at("eta").get<std::string>() != "auto")
                bad_config("code.eta", "expected an integer or \"auto\"");
            cfg.eta = std::nullopt;
        } else {
            cfg.eta = static_cast<std::uint32_t>(get_uint(c.at("eta"), "code.eta"));
        }
        cfg.params.rho1 = static_cast<std::uint32_t>(get_uint(c.at("rho1"), "code.rho1"));
        cfg.params.rho2 = static_cast<std::uint32_t>(get_uint(c.at("rho2"), "code.rho2"));
        cfg.params.rho3 = static_cast<std::uint32_t>(get_uint(c.at("rho3"), "code.rho3"));
        cfg.params.waive_condition2 = c.value("waive_condition2", false);
        cfg.has_code = true;
    }

    if (doc.contains("actions")) {
        if (!doc.at("actions").is_array()) bad_config("actions", "expected an array");
        std::size_t i = 0;
        for (const auto& a : doc.at("actions"))
            cfg.actions.push_back(parse_action(a, "actions[" + std::to_string(i++) + "]"));
    }

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        expect_keys(s, {"rho1", "rho2", "rho3"}, "sweep");
        JobConfig::SweepRanges r;
        auto r1 = s.contains("rho1") ? parse_range(s.at("rho1"), "sweep.rho1")
                                     : std::make_pair(cfg.params.rho1, cfg.params.rho1);
        auto r2 = s.contains("rho2") ? parse_range(s.at("rho2"), "sweep.rho2")
                                     : std::make_pair(cfg.params.rho2, cfg.params.rho2);
        auto r3 = s.contains("rho3") ? parse_range(s.at("rho3"), "sweep.rho3")
                                     : std::make_pair(cfg.params.rho3, cfg.params.rho3);
        r.rho1_lo = r1.first; r.rho1_hi = r1.second;
        r.rho2_lo = r2.first; r.rho2_hi = r2.second;
        r.rho3_lo = r3.first; r.rho3_hi = r3.second;
        cfg.sweep = r;
    }

    cfg.formats = {"json", "table"};
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        expect_keys(o, {"dir", "formats"}, "output");
        if (o.contains("dir")) cfg.out_dir = o.at("dir").get<std::string>();
        if (o.contains("formats")) {
            cfg.formats.clear();
            for (const auto& f : o.at("formats")) {
                const std::string name = f.get<std::string>();
                if (name != "json" && name != "csv" && name != "table")
                    bad_config("output.formats", "unknown format '" + name + "'");
                cfg.formats.push_back(name);
            }
            if (cfg.formats.empty()) bad_config("output.formats", "at least one format");
        }
    }

    json norm;
    norm["field"] = {{"p", cfg.field->p()}, {"h", cfg.field->h()},
                     {"modulus", cfg.field->modulus()}};
    norm["surface"] = normalize_surface(cfg);
    if (cfg.has_code) {
        json c;
        c["eta"] = cfg.eta ? json(*cfg.eta) : json("auto");
        c["rho1"] = cfg.params.rho1;
        c["rho2"] = cfg.params.rho2;
        c["rho3"] = cfg.params.rho3;
        c["waive_condition2"] = cfg.params.waive_condition2;
        norm["code"] = std::move(c);
    }
    json acts = json::array();
    for (const auto& a : cfg.actions) {
        json e = a.options;
        e["action"] = a.name;
        acts.push_back(std::move(e));
    }
    norm["actions"] = std::move(acts);
    if (cfg.sweep) {
        norm["sweep"] = {{"rho1", {cfg.sweep->rho1_lo, cfg.sweep->rho1_hi}},
                         {"rho2", {cfg.sweep->rho2_lo, cfg.sweep->rho2_hi}},
                         {"rho3", {cfg.sweep->rho3_lo, cfg.sweep->rho3_hi}}};
    }
    norm["output"] = {{"dir", cfg.out_dir}, {"formats", cfg.formats}};
    cfg.normalized = std::move(norm);
    return cfg;
}

BuiltCode build_from_config(const JobConfig& config) {
    if (!config.has_code)
        raise(errc::config_invalid, "this operation needs a code section in the config");
    BuiltCode built;
    built.spec = validate_spec(config.surface, config.eta, config.params);
    built.G = generator_matrix(built.spec);
    built.hierarchy = build_hierarchy(built.spec.T);
    return built;
}

namespace {

json param_report_json(const JobConfig& cfg, const CodeSpec& spec, const ParamReport& r) {
    json j;
    j["field"] = cfg.normalized.at("field");
    j["surface"] = {{"kind", cfg.normalized.at("surface").at("kind")},
                    {"cover_degree", spec.cover_degree()},
                    {"s", spec.s_degree()}};
    j["eta"] = spec.eta;
    j["eta_auto"] = spec.eta_auto;
    j["gamma_count"] = spec.gamma_count();
    json gammas = json::array();
    for (elt g : spec.T.gammas) gammas.push_back(elt_to_json(*cfg.field, g));
    j["gamma"] = std::move(gammas);
    j["rho1"] = spec.params.rho1;
    j["rho2"] = spec.params.rho2;
    j["rho3"] = spec.params.rho3;
    j["n"] = r.n;
    j["k"] = r.k;
    j["distance_bound"] = {{"value", r.d.value},
                           {"product_term", r.d.product_term},
                           {"bezout_term", r.d.bezout_term},
                           {"branch", bound_branch_name(r.d.branch)}};
    j["rate"] = r.rate;
    j["relative_distance_bound"] = r.relative_distance_bound;
    j["middle_code"] = {{"n_lower", r.n1_lower},
                        {"n_per_gamma", r.n1_per_gamma},
                        {"k", r.k1},
                        {"d", r.d1}};
    j["lower_code"] = {{"n", r.n2}, {"k", r.k2}, {"d", r.d2}};
    j["warnings"] = r.warnings;
    return j;
}

std::string param_report_table(const JobConfig& cfg, const CodeSpec& spec, const ParamReport& r) {
    std::ostringstream os;
    const Field& f = *cfg.field;
    os << "code parameters\n";
    os << "  field: GF(" << f.q() << ") = GF(" << f.p() << "^" << f.h() << "), modulus [";
    for (std::size_t i = 0; i < f.modulus().size(); ++i)
        os << (i ? "," : "") << f.modulus()[i];
    os << "]\n";
    os << "  surface: "
       << (spec.surface.kind == SurfaceSpec::Kind::artin_schreier ? "artin-schreier" : "kummer")
       << ", cover degree " << spec.cover_degree() << ", s = " << spec.s_degree() << "\n";
    os << "  eta = " << spec.eta << (spec.eta_auto ? " (auto)" : "") << ", |Gamma| = "
       << spec.gamma_count() << ", rho = (" << spec.params.rho1 << ", " << spec.params.rho2
       << ", " << spec.params.rho3 << ")\n";
    os << "  n = " << r.n << "   k = " << r.k << "   d >= " << r.d.value
       << "   rate = " << format_double(r.rate)
       << "   rel.distance >= " << format_double(r.relative_distance_bound) << "\n";
    os << "  bound terms: product " << r.d.product_term << ", bezout " << r.d.bezout_term << " ("
       << bound_branch_name(r.d.branch) << ")\n";
    os << "  middle codes: n1 >= " << r.n1_lower << " (exact:";
    for (auto v : r.n1_per_gamma) os << " " << v;
    os << "), k1 = " << r.k1 << ", d1 = " << r.d1 << "\n";
    os << "  lower codes:  n2 = " << r.n2 << ", k2 = " << r.k2 << ", d2 = " << r.d2 << "\n";
    for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
    return os.str();
}

std::string param_report_csv(const ParamReport& r) {
    std::ostringstream os;
    os << "n,k,d_bound,rate,rel_distance_bound,branch,n1_lower,k1,d1,n2,k2,d2\n";
    os << r.n << "," << r.k << "," << r.d.value << "," << format_double(r.rate) << ","
       << format_double(r.relative_distance_bound) << "," << bound_branch_name(r.d.branch) << ","
       << r.n1_lower << "," << r.k1 << "," << r.d1 << "," << r.n2 << "," << r.k2 << "," << r.d2
       << "\n";
    return os.str();
}

std::string coeff_cell(const Field& field, elt a) {
    std::string s;
    for (std::uint32_t c : field.coeffs(a)) {
        if (!s.empty()) s += ' ';
        s += std::to_string(c);
    }
    return s;
}

json points_json(const JobConfig& cfg, const EvaluationSet& T) {
    const Field& field = *cfg.field;
    json j;
    j["eta"] = T.eta;
    json gammas = json::array();
    for (elt g : T.gammas) gammas.push_back(elt_to_json(field, g));
    j["gamma"] = std::move(gammas);
    json pts = json::array();
    for (std::uint32_t i = 0; i < T.size(); ++i) {
        const auto& p = T.points[i];
        pts.push_back({{"index", i},
                       {"x", elt_to_json(field, p.x)},
                       {"y", elt_to_json(field, p.y)},
                       {"z", elt_to_json(field, p.z)}});
    }
    j["points"] = std::move(pts);
    return j;
}

std::string points_csv(const JobConfig& cfg, const EvaluationSet& T) {
    const Field& field = *cfg.field;
    std::ostringstream os;
    os << "index,x,y,z\n";
    for (std::uint32_t i = 0; i < T.size(); ++i) {
        const auto& p = T.points[i];
        os << i << "," << coeff_cell(field, p.x) << "," << coeff_cell(field, p.y) << ","
           << coeff_cell(field, p.z) << "\n";
    }
    return os.str();
}

json matrix_json(const JobConfig& cfg, const CodeSpec& spec, const GeneratorMatrix& G) {
    const Field& field = *cfg.field;
    json j;
    j["field"] = cfg.normalized.at("field");
    json basis = json::array();
    for (const auto& m : G.basis) basis.push_back({m.xdeg, m.ydeg, m.zdeg});
    j["basis"] = std::move(basis);
    json pts = json::array();
    for (const auto& p : spec.T.points)
        pts.push_back({elt_to_json(field, p.x), elt_to_json(field, p.y), elt_to_json(field, p.z)});
    j["points"] = std::move(pts);
    json rows = json::array();
    for (std::uint32_t r = 0; r < G.k; ++r) {
        json row = json::array();
        for (std::uint32_t c = 0; c < G.n; ++c) row.push_back(G.at(r, c));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["rank"] = G.rank;
    return j;
}

std::string matrix_csv(const GeneratorMatrix& G) {
    std::ostringstream os;
    for (std::uint32_t r = 0; r < G.k; ++r) {
        for (std::uint32_t c = 0; c < G.n; ++c) os << (c ? "," : "") << G.at(r, c);
        os << "\n";
    }
    return os.str();
}

struct ActionContext {
    const JobConfig& config;
    const RunOptions& options;
    std::optional<BuiltCode>& built;

    const BuiltCode& code() {
        if (!built) built = build_from_config(config);
        return *built;
    }
};

json run_params_action(ActionContext& ctx, std::vector<std::pair<std::string, std::string>>& files,
                       std::string& table_text) {
    const BuiltCode& b = ctx.code();
    ParamReport r = param_report(b.spec);
    json j = param_report_json(ctx.config, b.spec, r);
    files.emplace_back("params.json", j.dump(2) + "\n");
    files.emplace_back("params.csv", param_report_csv(r));
    table_text = param_report_table(ctx.config, b.spec, r);
    files.emplace_back("params.txt", table_text);
    json out = j;
    out["action"] = "params";
    return out;
}

json run_build_action(ActionContext& ctx, std::vector<std::pair<std::string, std::string>>& files,
                      std::string& table_text) {
    const BuiltCode& b = ctx.code();
    files.emplace_back("points.json", points_json(ctx.config, b.spec.T).dump(2) + "\n");
    files.emplace_back("points.csv", points_csv(ctx.config, b.spec.T));
    files.emplace_back("matrix.json", matrix_json(ctx.config, b.spec, b.G).dump(2) + "\n");
    files.emplace_back("matrix.csv", matrix_csv(b.G));
    json out;
    out["action"] = "build";
    out["n"] = b.G.n;
    out["k"] = b.G.k;
    out["rank"] = b.G.rank;
    std::ostringstream os;
    os << "built generator matrix: k = " << b.G.k << ", n = " << b.G.n << ", rank = " << b.G.rank
       << "\n";
    table_text = os.str();
    return out;
}

json run_simulate_action(ActionContext& ctx, const json& opts,
                         std::vector<std::pair<std::string, std::string>>& files,
                         std::string& table_text) {
    const BuiltCode& b = ctx.code();
    const Field& field = *ctx.config.field;

    std::uint64_t trials = ctx.options.trials.value_or(opts.value("trials", 1ull));
    const std::uint64_t seed = ctx.options.seed.value_or(opts.value("seed", 0ull));
    const std::uint32_t erasures = opts.value("erasures", 1u);
    json pattern_spec = opts.value("pattern", json("uniform"));
    if (trials < 1) trials = 1;

    std::mt19937_64 rng(seed);
    json out;
    out["action"] = "simulate";
    out["trials"] = trials;
    out["seed"] = seed;
    out["pattern"] = pattern_spec;

    std::uint64_t lower = 0, middle = 0, failed = 0, incorrect = 0, accessed = 0, erased = 0;
    json detail = json::array();

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<elt> msg(b.G.k);
        for (auto& m : msg) m = static_cast<elt>(rng() % field.q());
        std::vector<elt> cw = encode(field, b.G, msg);

        std::vector<std::uint32_t> pattern;
        if (pattern_spec.is_array()) {
            for (const auto& v : pattern_spec)
                pattern.push_back(static_cast<std::uint32_t>(get_uint(v, "pattern[]")));
        } else {
            const std::string gen = pattern_spec.get<std::string>();
            if (gen == "uniform")
                pattern = uniform_pattern(b.G.n, erasures, rng);
            else if (gen == "worst-lower")
                pattern = worst_lower_pattern(b.hierarchy, b.spec, rng);
            else if (gen == "worst-middle")
                pattern = worst_middle_pattern(b.hierarchy, b.spec, rng, false);
            else
                pattern = worst_middle_pattern(b.hierarchy, b.spec, rng, true);
        }

        RecoveryReport report = simulate(cw, pattern, b.hierarchy, b.spec);
        lower += report.recovered_lower;
        middle += report.recovered_middle;
        failed += report.failed;
        incorrect += report.incorrect;
        accessed += report.total_symbols_accessed;
        erased += report.entries.size();

        if (trials == 1) {
            for (const auto& e : report.entries) {
                json entry;
                entry["position"] = e.position;
                entry["outcome"] = recovery_outcome_name(e.outcome);
                if (e.outcome != RecoveryReport::Outcome::failed) {
                    entry["value"] = elt_to_json(field, e.value);
                    entry["symbols_accessed"] = e.symbols_accessed;
                }
                detail.push_back(std::move(entry));
            }
        }
    }

    out["erased"] = erased;
    out["recovered_lower"] = lower;
    out["recovered_middle"] = middle;
    out["failed"] = failed;
    out["incorrect"] = incorrect;
    out["symbols_accessed"] = accessed;
    if (trials == 1) out["positions"] = std::move(detail);

    files.emplace_back("recovery_report.json", out.dump(2) + "\n");
    std::ostringstream os;
    os << "recovery simulation: " << trials << " trial(s), " << erased << " erasures total\n"
       << "  recovered at lower level:  " << lower << "\n"
       << "  recovered at middle level: " << middle << "\n"
       << "  failed:                    " << failed << "\n"
       << "  incorrect values:          " << incorrect << "\n";
    table_text = os.str();
    return out;
}

json distance_result_json(const Field& field, const DistanceResult& r) {
    json j;
    j["mode"] = r.mode == DistanceResult::Mode::exhaustive ? "exhaustive" : "sampled";
    j["min_weight"] = r.min_weight;
    j["evaluated"] = r.evaluated;
    if (r.mode == DistanceResult::Mode::sampled) j["seed"] = r.seed;
    json wits = json::array();
    for (const auto& w : r.witnesses) {
        json msg = json::array();
        for (elt v : w) msg.push_back(elt_to_json(field, v));
        wits.push_back(std::move(msg));
    }
    j["witnesses"] = std::move(wits);
    return j;
}

json run_verify_distance_action(ActionContext& ctx, const json& opts,
                                std::vector<std::pair<std::string, std::string>>& files,
                                std::string& table_text, JobResult& result) {
    const BuiltCode& b = ctx.code();
    const Field& field = *ctx.config.field;

    const std::string mode = opts.value("mode", "auto");
    const std::uint64_t trials = ctx.options.trials.value_or(opts.value("trials", 10000ull));
    const std::uint64_t seed = ctx.options.seed.value_or(opts.value("seed", 0ull));
    const std::uint64_t budget =
        ctx.options.budget.value_or(opts.value("budget", default_distance_budget));
    const bool sparse = opts.value("sparse", true);

    std::vector<DistanceResult> results;
    std::string used_mode;
    if (mode == "exhaustive") {
        results.push_back(min_distance_exhaustive(field, b.G, budget));
        used_mode = "exhaustive";
    } else if (mode == "sampled") {
        results.push_back(min_weight_sampled(field, b.G, trials, seed));
        used_mode = "sampled";
    } else {
        try {
            results.push_back(min_distance_exhaustive(field, b.G, budget));
            used_mode = "exhaustive";
        } catch (const error& e) {
            if (e.code() != errc::budget_exceeded) throw;
            results.push_back(min_weight_sampled(field, b.G, trials, seed));
            used_mode = "sampled";
        }
    }
    if (sparse && used_mode == "sampled") results.push_back(sparse_low_weight_search(field, b.G));

    BoundAudit audit = check_bound(b.spec, results);

    json j;
    j["action"] = "verify-distance";
    j["claim"] = "min-weight-vs-distance-bound";
    j["source"] = "distance-bound";
    j["mode"] = used_mode;
    j["sparse_search"] = sparse && used_mode == "sampled";
    j["expected"] = audit.bound;
    j["measured"] = audit.measured;
    j["verdict"] = audit.pass ? "PASS" : "FAIL";
    if (audit.exhaustive) j["slack"] = audit.slack;
    json rj = json::array();
    for (const auto& r : results) rj.push_back(distance_result_json(field, r));
    j["results"] = std::move(rj);
    if (!audit.pass) {
        if (!audit.witness.empty()) {
            json w = json::array();
            for (elt v : audit.witness) w.push_back(elt_to_json(field, v));
            j["witness"] = std::move(w);
        }
        j["error"] = errc_name(errc::bound_violated);
        result.exit_code = std::max(result.exit_code, 1);
        if (result.failure == errc::ok) result.failure = errc::bound_violated;
    }

    files.emplace_back("audit_distance.json", j.dump(2) + "\n");
    std::ostringstream os;
    os << "distance audit (" << used_mode << "): measured " << audit.measured
       << (audit.exhaustive ? " (exact)" : " (upper bound)") << ", bound " << audit.bound << " -> "
       << (audit.pass ? "PASS" : "FAIL") << "\n";
    table_text = os.str();
    return j;
}

json run_verify_census_action(ActionContext& ctx,
                              std::vector<std::pair<std::string, std::string>>& files,
                              std::string& table_text, JobResult& result) {
    const JobConfig& cfg = ctx.config;
    const Field& field = *cfg.field;

    std::vector<CensusRecord> records;
    std::string claim;
    errc failure_code = errc::census_mismatch;
    if (cfg.surface.kind == SurfaceSpec::Kind::artin_schreier) {
        if (field.h() != 2)
            raise(errc::config_invalid, "the census check needs a field GF(p^2)");
        records = as_family_census(field.p());
        claim = "mixed-power-family-census";
    } else {
        if (field.h() % 2 != 0)
            raise(errc::config_invalid, "the point-count check needs a field GF(q^2)");
        std::uint32_t q = 1;
        for (std::uint32_t i = 0; i < field.h() / 2; ++i) q *= field.p();
        records = kummer_family_point_counts(q);
        claim = "cubic-cover-point-counts";
        failure_code = errc::formula_mismatch;
    }

    bool pass = true;
    json rj = json::array();
    for (const auto& r : records) {
        pass = pass && r.match;
        rj.push_back({{"claim", r.what},
                      {"source", claim},
                      {"gamma", elt_to_json(field, r.gamma)},
                      {"expected", r.formula_value},
                      {"measured", r.counted},
                      {"verdict", r.match ? "PASS" : "FAIL"}});
    }

    json j;
    j["action"] = "verify-census";
    j["claim"] = claim;
    j["source"] = claim;
    j["records"] = std::move(rj);
    j["verdict"] = pass ? "PASS" : "FAIL";
    if (!pass) {
        j["error"] = errc_name(failure_code);
        result.exit_code = std::max(result.exit_code, 1);
        if (result.failure == errc::ok) result.failure = failure_code;
    }

    files.emplace_back("audit_census.json", j.dump(2) + "\n");
    std::ostringstream os;
    os << "census audit (" << claim << "): " << records.size() << " checks -> "
       << (pass ? "PASS" : "FAIL") << "\n";
    table_text = os.str();
    return j;
}

json run_sweep_action(ActionContext& ctx, std::vector<std::pair<std::string, std::string>>& files,
                      std::string& table_text) {
    const JobConfig& cfg = ctx.config;
    if (!cfg.sweep) raise(errc::config_invalid, "sweep ranges are missing from the config");
    if (!cfg.has_code) raise(errc::config_invalid, "sweep needs a code section for eta");

    std::ostringstream csv;
    csv << "rho1,rho2,rho3,valid,violation,n,k,d_bound,rate,rel_distance_bound,branch\n";
    json rows = json::array();
    const auto& r = *cfg.sweep;
    for (std::uint32_t r1 = r.rho1_lo; r1 <= r.rho1_hi; ++r1)
        for (std::uint32_t r2 = r.rho2_lo; r2 <= r.rho2_hi; ++r2)
            for (std::uint32_t r3 = r.rho3_lo; r3 <= r.rho3_hi; ++r3) {
                json row;
                row["rho1"] = r1;
                row["rho2"] = r2;
                row["rho3"] = r3;
                try {
                    CodeParams params{r1, r2, r3, cfg.params.waive_condition2};
                    CodeSpec spec = validate_spec(cfg.surface, cfg.eta, params);
                    ParamReport rep = param_report(spec);
                    row["valid"] = true;
                    row["n"] = rep.n;
                    row["k"] = rep.k;
                    row["d_bound"] = rep.d.value;
                    row["rate"] = rep.rate;
                    row["rel_distance_bound"] = rep.relative_distance_bound;
                    row["branch"] = bound_branch_name(rep.d.branch);
                    csv << r1 << "," << r2 << "," << r3 << ",1,," << rep.n << "," << rep.k << ","
                        << rep.d.value << "," << format_double(rep.rate) << ","
                        << format_double(rep.relative_distance_bound) << ","
                        << bound_branch_name(rep.d.branch) << "\n";
                } catch (const error& e) {
                    row["valid"] = false;
                    row["violation"] = errc_name(e.code());
                    csv << r1 << "," << r2 << "," << r3 << ",0," << errc_name(e.code())
                        << ",,,,,,\n";
                }
                rows.push_back(std::move(row));
            }

    files.emplace_back("sweep.csv", csv.str());
    json out;
    out["action"] = "sweep";
    out["rows"] = std::move(rows);
    table_text = csv.str();
    return out;
}

} // namespace

JobResult run_job(const JobConfig& config, const RunOptions& options) {
    std::vector<JobConfig::ActionSpec> actions;
    if (options.action == "auto") {
        actions = config.actions;
        if (actions.empty()) actions.push_back({"params", json::object()});
    } else if (options.action == "sweep") {
        actions.push_back({"sweep", json::object()});
    } else if (options.action == "verify") {
        for (const auto& a : config.actions)
            if (a.name == "verify-distance" || a.name == "verify-census") actions.push_back(a);
        if (actions.empty()) actions.push_back({"verify-distance", json::object()});
    } else if (options.action == "params" || options.action == "build" ||
               options.action == "simulate" || options.action == "verify-distance" ||
               options.action == "verify-census") {
        json opts = json::object();
        for (const auto& a : config.actions)
            if (a.name == options.action) {
                opts = a.options;
                break;
            }
        actions.push_back({options.action, opts});
    } else {
        raise(errc::config_invalid, "unknown action '" + options.action + "'");
    }

    const std::string out_dir = options.out_dir && !options.out_dir->empty()
                                    ? *options.out_dir
                                    : (!config.out_dir.empty() ? config.out_dir : "hlrc_out");
    std::vector<std::string> formats =
        options.format ? std::vector<std::string>{*options.format} : config.formats;

    std::optional<BuiltCode> built;
    ActionContext ctx{config, options, built};

    JobResult result;
    result.summary["tool"] = tool_name;
    result.summary["version"] = tool_version;
    json action_results = json::array();
    std::vector<std::pair<std::string, std::string>> files;
    std::ostringstream tables;

    for (const auto& action : actions) {
        std::string table_text;
        json r;
        if (action.name == "params")
            r = run_params_action(ctx, files, table_text);
        else if (action.name == "build")
            r = run_build_action(ctx, files, table_text);
        else if (action.name == "simulate")
            r = run_simulate_action(ctx, action.options, files, table_text);
        else if (action.name == "verify-distance")
            r = run_verify_distance_action(ctx, action.options, files, table_text, result);
        else if (action.name == "verify-census")
            r = run_verify_census_action(ctx, files, table_text, result);
        else if (action.name == "sweep")
            r = run_sweep_action(ctx, files, table_text);
        else
            raise(errc::config_invalid, "unknown action '" + action.name + "'");
        action_results.push_back(std::move(r));
        tables << table_text;
    }
    result.summary["actions"] = std::move(action_results);
    result.summary["exit_code"] = result.exit_code;

    auto format_enabled = [&](const std::string& name) {
        if (name == "sweep.csv") return true; // the sweep's output is the table itself
        const bool is_csv = name.size() > 4 && name.compare(name.size() - 4, 4, ".csv") == 0;
        const bool is_txt = name.size() > 4 && name.compare(name.size() - 4, 4, ".txt") == 0;
        const bool is_json = !is_csv && !is_txt;
        for (const auto& f : formats) {
            if (f == "json" && is_json) return true;
            if (f == "csv" && is_csv) return true;
            if (f == "table" && is_txt) return true;
        }
        return false;
    };

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    json manifest;
    manifest["tool"] = tool_name;
    manifest["version"] = tool_version;
    manifest["config"] = config.normalized;
    json overrides = json::object();
    overrides["action"] = options.action;
    if (options.seed) overrides["seed"] = *options.seed;
    if (options.trials) overrides["trials"] = *options.trials;
    if (options.budget) overrides["budget"] = *options.budget;
    if (options.format) overrides["format"] = *options.format;
    manifest["overrides"] = std::move(overrides);

    std::vector<std::string> names;
    for (const auto& [name, content] : files) {
        if (!format_enabled(name)) continue;
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << content;
        result.artifacts.push_back(path.string());
        names.push_back(name);
    }
    std::sort(names.begin(), names.end());
    manifest["artifacts"] = names;
    {
        const fs::path path = fs::path(out_dir) / "manifest.json";
        std::ofstream out(path, std::ios::binary);
        out << manifest.dump(2) << "\n";
        result.artifacts.push_back(path.string());
    }
    std::sort(result.artifacts.begin(), result.artifacts.end());

    std::string fmt = "table";
    if (options.format)
        fmt = *options.format;
    else if (std::find(formats.begin(), formats.end(), "table") == formats.end() &&
             !formats.empty())
        fmt = formats.front();
    if (fmt == "json")
        result.text = result.summary.dump(2) + "\n";
    else
        result.text = tables.str();
    return result;
}

int exit_code_for(errc code) noexcept {
    switch (code) {
        case errc::ok:
            return 0;
        case errc::bound_violated:
        case errc::formula_mismatch:
        case errc::census_mismatch:
            return 1;
        default:
            return 2;
    }
}

} // namespace hlrc
