#pragma once

#include "dh/instance.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dh {

enum class OutputFormat { Text, Json };

/// Values computed by a command plus its verified identities.
struct Report {
    std::string command;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    CheckReport checks;

    int exit_code() const { return checks.passed() ? 0 : 1; }
    std::string render(OutputFormat fmt) const;
};

struct CommandOptions {
    std::optional<std::string> input;
    OutputFormat format = OutputFormat::Text;
    std::uint64_t seed = 0;
    size_t max_size = kDefaultEnumerationCap;
    int max_r = 4;
    std::optional<int> ord;
    std::optional<int> level;
    std::optional<int> s_plus, s_minus;
};

Report cmd_invariants(const InstanceFile& file, const CommandOptions& opt);
Report cmd_heights(const InstanceFile& file, const CommandOptions& opt);
/// Reads the lfun record of --input, or builds a synthetic instance from --seed/--ord.
Report cmd_lfun_check(const CommandOptions& opt);
/// Uses --s-plus/--s-minus, or the scenario record of --input.
Report cmd_scenario(const CommandOptions& opt);
/// Synthetic lfun instance file for --seed/--ord/--level.
nlohmann::ordered_json cmd_generate(const CommandOptions& opt);
/// Enumeration oracles against the fast paths. Throws CapError before any check
/// when a module to enumerate exceeds --max-size.
Report cmd_oracle(const InstanceFile& file, const CommandOptions& opt);

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCap = 3;

/// Dispatch by subcommand name; writes the report to out and errors to err.
int run_command(const std::string& name, const CommandOptions& opt, std::ostream& out, std::ostream& err);

} // namespace dh
