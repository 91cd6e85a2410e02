#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snnmap/builders.hpp"
#include "snnmap/io.hpp"

namespace snnmap::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kViolation = 1,  // theorem violations or anomalies
    kUsage = 2,      // bad arguments, unreadable or invalid inputs
    kCapped = 3,     // oracle enumeration hit a cap
};

/// Builder family + params, a network file, or an inline network.
struct NetworkSource {
    std::string builder;  // "line", "ring", "hierarchy"; empty when file/inline
    int lmax = 0;
    int k = 0;
    Rational r{1};
    bool self_loop = false;
    std::filesystem::path file;
    std::optional<NetworkSpec> inline_net;

    /// "line:5", "line:5:selfloop", "ring:5", "hierarchy:3:3:2/3", otherwise a file path.
    static NetworkSource parse(const std::string& text);
    [[nodiscard]] NetworkSpec load() const;
};

struct ScheduleSource {
    std::string kind = "pulse0";  // "pulse0", "every", "file", "inline", "random"
    int period = 1;
    std::filesystem::path file;
    std::optional<InputSchedule> inline_schedule;

    /// "pulse0", "every:<k>", "random", otherwise a file path.
    static ScheduleSource parse(const std::string& text);
    [[nodiscard]] InputSchedule load(const NetworkSpec& net, int horizon, std::uint64_t seed) const;
};

struct FailureSource {
    GeneratorPolicy policy;
    std::filesystem::path file;
    std::optional<FailurePattern> inline_pattern;

    [[nodiscard]] bool explicit_pattern() const { return !file.empty() || inline_pattern.has_value(); }
    [[nodiscard]] FailurePattern load_pattern() const;
};

/// Everything one simulation or check needs.
struct RunManifest {
    NetworkSource network;
    std::optional<DerivationParams> params;
    FailureSource failures;
    ScheduleSource schedule;
    std::optional<int> horizon;
    std::optional<NeuronId> actuator;
    std::uint64_t seed = 0;
    std::filesystem::path out;
    std::filesystem::path detailed_file;  // replaces the derived D when set
    std::filesystem::path copies_file;

    [[nodiscard]] int horizon_for(const NetworkSpec& a1) const;
};

io::Json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const io::Json& j, const std::filesystem::path& base_dir = {});

/// Entry point shared by the snnmap binary and the tests; args exclude argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snnmap::cli
