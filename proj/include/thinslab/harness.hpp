#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinslab/ansatz.hpp"
#include "thinslab/propagator.hpp"
#include "thinslab/spectral.hpp"

namespace thinslab {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitNonConvergence = 3,
    kExitThreshold = 4,
};

struct ExperimentConfig {
    std::string scenario = "varspeed";
    Grid grid{256, 2.0 * kPi, 1};
    double s = 0.0;
    double Z = 1.0;
    std::vector<int> Ns{8, 16, 32, 64, 128};
    SlabVariant variant = Frozen{};
    /// Unset: exact for x-independent scenarios, finestep:8*max(Ns) otherwise.
    std::optional<ReferenceMode> reference;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "thinslab-out";
    /// Grid size of the dense operator-norm sweep.
    int norm_points = 128;
    double max_thickness = kDefaultMaxThickness;

    ReferenceMode effective_reference() const;
    /// Ordered key -> value echo, used in reports and the manifest.
    std::map<std::string, std::string> echo() const;
};

/// Parses "8,16,32" or the doubling range "8..128".
std::vector<int> parse_ns(const std::string& text);
/// "exact" or "finestep:<n>".
ReferenceMode parse_reference(const std::string& text);
/// "frozen", "averaged" or "averaged:<quadrature order>".
SlabVariant parse_variant(const std::string& text);

/// Sets one key. Throws ConfigError on unknown keys or malformed values.
void set_option(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Flat "key = value" file; '#' starts a comment. Throws ConfigError.
void load_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// Throws ConfigError when the scenario is unknown or the values are
/// inconsistent (inadmissible Ns, exact reference on an x-dependent symbol).
void validate(const ExperimentConfig& config);

/// Runs the experiment and writes its artifacts under config.output_dir.
/// Returns an ExitCode; errors are reported as one JSON object on `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Registry table: key, z-regularity, flags, description and property.
void list_scenarios(std::ostream& out, bool json = false);

/// Symbol admissibility checks for the configured scenario, without running
/// the experiment.
int check(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Exit code for an exception thrown by the library.
int exit_code_for(const std::exception& e);

/// {"error": {"kind": ..., "message": ...}} on one line.
std::string error_json(const std::exception& e);

}  // namespace thinslab
