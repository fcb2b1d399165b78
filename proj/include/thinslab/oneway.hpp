#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "thinslab/ansatz.hpp"
#include "thinslab/spectral.hpp"
#include "thinslab/symbols.hpp"

namespace thinslab {

/// Smooth acoustic medium. Evaluators take (lateral position, depth).
struct AcousticMedium {
    std::string name;
    std::function<double(const Coord& x, double z)> c;
    std::function<double(const Coord& x, double z)> rho;
    std::pair<double, double> c_bounds{1.0, 1.0};
    std::pair<double, double> rho_bounds{1.0, 1.0};
    bool x_independent = false;
    bool z_independent = true;

    /// c == speed, rho == 1.
    static AcousticMedium homogeneous(double speed = 1.0);
    /// c(x) = 1 + amplitude cos x_0, rho == 1.
    static AcousticMedium lens(double amplitude = 0.1);

    /// Samples c and rho on the grid at `depths`; throws ArgumentError when a
    /// sample leaves its declared bounds or the bounds are not positive.
    void validate(const Grid& grid, const std::vector<double>& depths) const;
};

inline constexpr double kDefaultDampingScale = 2.0;

struct ApertureConfig {
    double theta1 = 0.0;
    double theta2 = 0.0;
    /// Temporal frequency of the time-harmonic reduction.
    double tau = 1.0;
    double damping_scale = kDefaultDampingScale;

    /// Throws ArgumentError unless 0 < theta1 < theta2 < pi/2, tau != 0 and
    /// damping_scale >= 0.
    void validate() const;
};

/// sqrt(c^-2 tau^2 - |xi|^2) where the radicand is at least 2 m^2, with
/// m = cos(theta2) |tau| / 4; below that the radicand is blended into the
/// floor m^2 by a C2 smooth maximum.
ComponentFn build_bplus(const AcousticMedium& medium, const ApertureConfig& aperture);

/// scale |tau| psi((|c xi / tau| - sin theta1) / (sin theta2 - sin theta1))
/// with psi the quintic ramp.
ComponentFn build_damping(const AcousticMedium& medium, const ApertureConfig& aperture);

/// a = -i b_+ + c_damping, named `name`. The spec is x-independent exactly
/// when the medium is.
SymbolSpec oneway_symbol(const AcousticMedium& medium, const ApertureConfig& aperture, const std::string& name);

/// Downward continuation to depth Z with N slabs of the Ansatz. `observer`
/// sees the field at every slab endpoint.
Field downward_continue(const AcousticMedium& medium, const ApertureConfig& aperture, const Field& u0, double Z,
                        int N, const SlabVariant& variant = Frozen{}, const SlabObserver& observer = {},
                        const PropagatorConfig& config = {});

/// Spectral energy split by propagation angle using the medium's speed
/// bounds: inside when |xi| <= sin(theta1) |tau| / c_max, outside when
/// |xi| >= sin(theta2) |tau| / c_min, between otherwise.
struct EnergyPartition {
    double inside = 0.0;
    double between = 0.0;
    double outside = 0.0;

    double total() const { return inside + between + outside; }
};

EnergyPartition partition_energy(const Field& u, const AcousticMedium& medium, const ApertureConfig& aperture);

}  // namespace thinslab
