#include "job.hpp"

#include <array>

namespace hlrc {

namespace {

struct Preset {
    const char* name;
    const char* text;
};

// Bundled configurations reproducing the worked instances end to end.
constexpr std::array<Preset, 6> presets = {{
    {"as-p3-maxdim", R"({
  "field": {"p": 3, "h": 2},
  "surface": {
    "kind": "artin-schreier",
    "lhs": "y^p-y",
    "f": [
      {"x": 4, "z": 2, "c": [1, 0]},
      {"x": 2, "z": 4, "c": [1, 0]}
    ]
  },
  "code": {"eta": 5, "rho1": 4, "rho2": 2, "rho3": 1},
  "actions": [
    "params",
    "build",
    {"action": "verify-distance", "mode": "sampled", "trials": 100000, "seed": 1},
    "verify-census"
  ],
  "output": {"dir": "hlrc_out", "formats": ["json", "table"]}
})"},
    {"as-p3-rho3", R"({
  "field": {"p": 3, "h": 2},
  "surface": {
    "kind": "artin-schreier",
    "lhs": "y^p-y",
    "f": [
      {"x": 4, "z": 2, "c": [1, 0]},
      {"x": 2, "z": 4, "c": [1, 0]}
    ]
  },
  "code": {"eta": 5, "rho1": 4, "rho2": 2, "rho3": 4},
  "actions": [
    "params",
    {"action": "verify-distance", "mode": "sampled", "trials": 20000, "seed": 1}
  ],
  "sweep": {"rho1": [4, 4], "rho2": [2, 2], "rho3": [1, 4]},
  "output": {"dir": "hlrc_out", "formats": ["json", "table", "csv"]}
})"},
    {"kummer-q5-sharp", R"({
  "field": {"p": 5, "h": 2},
  "surface": {
    "kind": "kummer",
    "lambda": 6,
    "f": {"c": [4, 0], "x_exp": 2, "z_exp": 2, "roots": [[2, 0], [3, 0]]}
  },
  "code": {"eta": 10, "rho1": 10, "rho2": 6, "rho3": 23},
  "actions": [
    "params",
    "build",
    {"action": "verify-distance", "mode": "sampled", "trials": 2000, "seed": 1}
  ],
  "output": {"dir": "hlrc_out", "formats": ["json", "table"]}
})"},
    {"kummer-q5-maxdim", R"({
  "field": {"p": 5, "h": 2},
  "surface": {
    "kind": "kummer",
    "lambda": 6,
    "f": {"c": [4, 0], "x_exp": 2, "z_exp": 2, "roots": [[2, 0], [3, 0]]}
  },
  "code": {"eta": 10, "rho1": 6, "rho2": 2, "rho3": 1},
  "actions": [
    "params",
    {"action": "verify-distance", "mode": "sampled", "trials": 2000, "seed": 1},
    {"action": "simulate", "trials": 200, "seed": 7, "pattern": "worst-lower"}
  ],
  "output": {"dir": "hlrc_out", "formats": ["json", "table"]}
})"},
    {"kummer-q2-pointcount", R"({
  "field": {"p": 2, "h": 2},
  "surface": {
    "kind": "kummer",
    "lambda": 3,
    "f": {"c": [1, 0], "x_exp": 1, "z_exp": 1, "roots": [[1, 0]]}
  },
  "actions": ["verify-census"],
  "output": {"dir": "hlrc_out", "formats": ["json", "table"]}
})"},
    {"hermitian-cone-q2", R"({
  "field": {"p": 2, "h": 2},
  "surface": {
    "kind": "artin-schreier",
    "lhs": {"kind": "y^q0+y", "q0": 2},
    "f": [{"x": 3, "z": 0, "c": [1, 0]}]
  },
  "code": {"eta": "auto", "rho1": 2, "rho2": 2, "rho3": 1},
  "actions": [
    "params",
    "build",
    {"action": "verify-distance", "mode": "sampled", "trials": 20000, "seed": 1}
  ],
  "output": {"dir": "hlrc_out", "formats": ["json", "table"]}
})"},
}};

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    out.reserve(presets.size());
    for (const auto& p : presets) out.emplace_back(p.name);
    return out;
}

std::string preset_config_text(const std::string& name) {
    for (const auto& p : presets)
        if (name == p.name) return p.text;
    raise(errc::config_invalid, "unknown preset '" + name + "'");
}

} // namespace hlrc
