#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thinslab/oneway.hpp"
#include "thinslab/symbols.hpp"

namespace thinslab {

/// Medium and aperture of a downward-continuation demo.
struct OnewayDemo {
    AcousticMedium medium;
    ApertureConfig aperture;
};

struct Scenario {
    std::string key;
    std::string description;
    /// Property of the propagator the scenario exercises.
    std::string anchor;
    SymbolSpec spec;
    std::optional<OnewayDemo> demo;
};

/// tau = 24, theta1 = 20 deg, theta2 = 60 deg, default damping scale.
ApertureConfig default_aperture();

/// Registry entries in a fixed order.
const std::vector<Scenario>& scenarios();

/// Throws ConfigError naming the known keys when `key` is not registered.
const Scenario& find_scenario(const std::string& key);

/// Two lateral plane waves, one well inside theta1 (|xi| ~ 0.1 tau) and one
/// beyond theta2 (|xi| ~ tau), snapped to the grid lattice.
Field demo_datum(const Grid& grid, const ApertureConfig& aperture);

}  // namespace thinslab
