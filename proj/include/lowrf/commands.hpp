// Command layer behind the lowrf binary: key=value configuration handling,
// unit conversion at the boundary, CSV emission, and one entry point per
// subcommand. Kept apart from the binary so tests can drive it directly.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowrf {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;
inline constexpr int kExitGateFailure = 4;

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

using KvMap = std::map<std::string, std::string>;

struct KeySpec {
    const char* key;
    const char* default_value;
    const char* help;
};

struct CommandSpec {
    const char* name;
    const char* help;
    std::vector<KeySpec> keys;
    int (*run)(const KvMap& kv, std::ostream& summary);
};

// All subcommands with their accepted keys and defaults.
const std::vector<CommandSpec>& command_specs();

// Parses a "key = value" file ('#' starts a comment), checks every key
// against the command's spec, fills defaults, and applies flag overrides
// on top. Throws ConfigError on unknown keys or malformed lines.
KvMap resolve_config(const CommandSpec& spec, const std::string& config_path,
                     const KvMap& overrides);

// unit conversions used at the CLI boundary
double dbm_to_watts(double dbm);
double db_to_linear(double db);

// shortest round-trippable decimal form, 17 significant digits
std::string format_g17(double v);

int cmd_filter_response(const KvMap& kv, std::ostream& summary);
int cmd_dd_sweep(const KvMap& kv, std::ostream& summary);
int cmd_onebit_sweep(const KvMap& kv, std::ostream& summary);
int cmd_mc_validate(const KvMap& kv, std::ostream& summary);
int cmd_prop1(const KvMap& kv, std::ostream& summary);

}  // namespace lowrf
