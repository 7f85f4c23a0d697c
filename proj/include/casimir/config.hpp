#pragma once

// Run configuration: a sectioned key = value text format.
//
//   [material]
//   omega_p = 9.0 eV
//   relaxation = perfect
//   ...
//
// Values may carry a unit tag; lists are comma separated. See docs/example.cfg.

#include <map>
#include <string>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/params.hpp"
#include "casimir/verification.hpp"

namespace casimir {

struct ConfigEntry {
    std::string value;
    int line = 0;    // 0 for --set overrides
    int column = 0;  // column of the value
    int key_column = 0;
};

struct ConfigSection {
    int line = 0;
    std::map<std::string, ConfigEntry> entries;
};

/// Parsed but uninterpreted document.
struct ConfigDocument {
    std::map<std::string, ConfigSection> sections;
    int last_line = 0;
};

ConfigDocument parse_config_document(const std::string& text);

/// Applies "section.key=value".
void apply_override(ConfigDocument& doc, const std::string& assignment);

struct OutputSpec {
    std::string format = "csv";
    std::string path;  // empty or "-" writes to stdout
    int precision = 12;
    bool entropy = true;
};

struct RunConfig {
    Material material;
    std::vector<double> a;  // m
    std::vector<double> T;  // K
    std::vector<ResponseModel> models;
    QuadratureConfig quad;
    OutputSpec output;
    VerifyOptions verify;
    std::string echo;  // canonical section.key=value lines that define the numbers
    std::string hash;  // 16 hex digits over echo and the constants table
};

RunConfig build_run_config(const ConfigDocument& doc);

/// Reads, applies overrides and interprets; ConfigError on any problem.
RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides);
RunConfig parse_run_config(const std::string& text, const std::vector<std::string>& overrides);

std::string fnv1a_hex(const std::string& data);

}  // namespace casimir
