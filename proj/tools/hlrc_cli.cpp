// Command-line front end. Everything goes through the C API of the shared
// library; this translation unit holds only argument handling and printing.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hlrc/hlrc.h"

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t budget = 0;
    bool seed_set = false, trials_set = false, budget_set = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config,
                    "job configuration: a JSON file path or preset:NAME")
        ->required();
    cmd->add_option("--out", flags.out, "output directory for artifacts");
    cmd->add_option("--format", flags.format, "output format: json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--seed", flags.seed, "seed for randomized steps")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--trials", flags.trials, "trial count for randomized steps")
        ->each([&flags](const std::string&) { flags.trials_set = true; });
    cmd->add_option("--budget", flags.budget, "budget for exhaustive enumeration")
        ->each([&flags](const std::string&) { flags.budget_set = true; });
}

int fail(hlrc_status status) {
    std::fprintf(stderr, "error [%s]: %s\n", hlrc_status_name(status), hlrc_last_error());
    return hlrc_status_exit_code(status);
}

bool load_config(const std::string& spec, std::string& text) {
    if (spec.rfind("preset:", 0) == 0) {
        char* preset = nullptr;
        const hlrc_status st = hlrc_preset_config(spec.c_str() + 7, &preset);
        if (st != HLRC_OK) {
            std::fprintf(stderr, "error [%s]: %s\n", hlrc_status_name(st), hlrc_last_error());
            return false;
        }
        text.assign(preset);
        hlrc_string_free(preset);
        return true;
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in.good()) {
        std::fprintf(stderr, "error: cannot read config file '%s'\n", spec.c_str());
        return false;
    }
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
    return true;
}

int run_action(const CommonFlags& flags, const std::string& action) {
    std::string config;
    if (!load_config(flags.config, config)) return 2;

    nlohmann::json options = nlohmann::json::object();
    if (!flags.out.empty()) options["out"] = flags.out;
    if (!flags.format.empty()) options["format"] = flags.format;
    if (flags.seed_set) options["seed"] = flags.seed;
    if (flags.trials_set) options["trials"] = flags.trials;
    if (flags.budget_set) options["budget"] = flags.budget;

    char* result = nullptr;
    const hlrc_status status =
        hlrc_run_job(config.c_str(), action.c_str(), options.dump().c_str(), &result);
    if (!result) return fail(status);

    nlohmann::json res = nlohmann::json::parse(result);
    hlrc_string_free(result);
    std::fputs(res.at("text").get<std::string>().c_str(), stdout);
    const int exit_code = res.at("exit_code").get<int>();
    if (status != HLRC_OK && exit_code == 0) return fail(status);
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchical locally recoverable codes on fibered surfaces"};
    app.set_version_flag("--version", hlrc_version());
    app.require_subcommand(1);

    CommonFlags flags;
    std::string preset_name;

    app.add_subcommand("params", "compute and print the code parameter report");
    app.add_subcommand("build", "build the evaluation set and generator matrix");
    app.add_subcommand("simulate", "run erasure-recovery simulations");
    app.add_subcommand("verify", "run the configured verification audits");
    app.add_subcommand("sweep", "tabulate parameters over rho ranges");
    auto* presets = app.add_subcommand("presets", "list bundled presets, or print one as JSON");
    presets->add_option("name", preset_name, "preset to print");

    for (auto* cmd : {app.get_subcommand("params"), app.get_subcommand("build"),
                      app.get_subcommand("simulate"), app.get_subcommand("verify"),
                      app.get_subcommand("sweep")})
        add_common_flags(cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage problems map to exit 2
    }

    if (presets->parsed()) {
        if (preset_name.empty()) {
            char* names = nullptr;
            if (hlrc_preset_names(&names) != HLRC_OK) return 2;
            for (const auto& n : nlohmann::json::parse(names))
                std::printf("%s\n", n.get<std::string>().c_str());
            hlrc_string_free(names);
            return 0;
        }
        char* text = nullptr;
        const hlrc_status st = hlrc_preset_config(preset_name.c_str(), &text);
        if (st != HLRC_OK) return fail(st);
        std::printf("%s\n", text);
        hlrc_string_free(text);
        return 0;
    }

    for (const char* name : {"params", "build", "simulate", "verify", "sweep"})
        if (app.get_subcommand(name)->parsed()) return run_action(flags, name);
    return 2;
}
