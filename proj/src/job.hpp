#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "recovery.hpp"
#include "verify.hpp"

namespace hlrc {

inline constexpr const char* tool_name = "hlrc";
inline constexpr const char* tool_version = "0.1.0";

// A fully parsed job configuration. Parsing is strict: unknown keys are
// rejected at every level, and all field elements are normalized to their
// canonical form.
struct JobConfig {
    std::shared_ptr<const gf::Field> field;
    SurfaceSpec surface;

    bool has_code = false;
    std::optional<std::uint32_t> eta; // nullopt = "auto"
    CodeParams params;

    struct ActionSpec {
        std::string name;            // params | build | simulate | verify-distance | verify-census
        nlohmann::json options;      // action-specific options, already validated
    };
    std::vector<ActionSpec> actions;

    struct SweepRanges {
        std::uint32_t rho1_lo = 0, rho1_hi = 0;
        std::uint32_t rho2_lo = 0, rho2_hi = 0;
        std::uint32_t rho3_lo = 0, rho3_hi = 0;
    };
    std::optional<SweepRanges> sweep;

    std::string out_dir;                 // empty = not configured
    std::vector<std::string> formats;    // subset of json, csv, table

    nlohmann::json normalized;           // canonical echo, embedded in the manifest
};

JobConfig parse_config_text(const std::string& text);
JobConfig parse_config_json(const nlohmann::json& doc);

// Everything needed to work with a configured code.
struct BuiltCode {
    CodeSpec spec;
    GeneratorMatrix G;
    HierarchyMap hierarchy;
};

BuiltCode build_from_config(const JobConfig& config);

// Field elements in configs and artifacts: arrays are coefficient vectors
// (constant term first), bare integers are canonical indices.
gf::elt elt_from_json(const gf::Field& field, const nlohmann::json& v);
nlohmann::json elt_to_json(const gf::Field& field, gf::elt a);

struct RunOptions {
    // params | build | simulate | verify | sweep | auto ("auto" runs the
    // config's action list in order)
    std::string action = "auto";
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> budget;
    std::optional<std::string> format; // json | csv | table
};

struct JobResult {
    int exit_code = 0;                  // 0 all pass, 1 claim violation (witness written)
    errc failure = errc::ok;            // the first violated claim, when exit_code is 1
    nlohmann::json summary;
    std::string text;                   // rendered output for the selected format
    std::vector<std::string> artifacts; // file paths written, sorted
};

// Executes the selected actions, writes artifacts plus a manifest into the
// output directory, and renders the summary. Configuration problems raise;
// claim violations are reported through exit_code 1 with artifacts intact.
JobResult run_job(const JobConfig& config, const RunOptions& options);

// Bundled preset configurations reproducing the worked instances.
std::vector<std::string> preset_names();
std::string preset_config_text(const std::string& name);

// Exit-code contract shared with the C API and CLI: 0 ok, 1 for violated
// quantitative claims, 2 for configuration and usage errors.
int exit_code_for(errc code) noexcept;

} // namespace hlrc
