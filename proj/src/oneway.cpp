#include "thinslab/oneway.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "thinslab/error.hpp"

namespace thinslab {

AcousticMedium AcousticMedium::homogeneous(double speed) {
    AcousticMedium m;
    m.name = "homogeneous";
    m.c = [speed](const Coord&, double) { return speed; };
    m.rho = [](const Coord&, double) { return 1.0; };
    m.c_bounds = {speed, speed};
    m.x_independent = true;
    return m;
}

AcousticMedium AcousticMedium::lens(double amplitude) {
    AcousticMedium m;
    m.name = "lens";
    m.c = [amplitude](const Coord& x, double) { return 1.0 + amplitude * std::cos(x[0]); };
    m.rho = [](const Coord&, double) { return 1.0; };
    m.c_bounds = {1.0 - std::abs(amplitude), 1.0 + std::abs(amplitude)};
    return m;
}

void AcousticMedium::validate(const Grid& grid, const std::vector<double>& depths) const {
    auto [c0, c1] = c_bounds;
    auto [r0, r1] = rho_bounds;
    if (!(c0 > 0.0 && c0 <= c1) || !(r0 > 0.0 && r0 <= r1))
        throw ArgumentError("medium '" + name + "' needs 0 < c0 <= c1 and 0 < rho0 <= rho1");
    for (double z : depths)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Coord x = grid.position(i);
            const double cv = c(x, z);
            const double rv = rho(x, z);
            if (!(cv >= c0 * (1 - 1e-12) && cv <= c1 * (1 + 1e-12)) || !(rv >= r0 * (1 - 1e-12) && rv <= r1 * (1 + 1e-12))) {
                std::ostringstream os;
                os << "medium '" << name << "' leaves its bounds at x = " << x[0] << ", z = " << z << " (c = " << cv
                   << ", rho = " << rv << ")";
                throw ArgumentError(os.str());
            }
        }
}

void ApertureConfig::validate() const {
    std::ostringstream os;
    if (!(0.0 < theta1 && theta1 < theta2 && theta2 < kPi / 2)) {
        os << "aperture needs 0 < theta1 < theta2 < pi/2, got theta1 = " << theta1 << ", theta2 = " << theta2;
        throw ArgumentError(os.str());
    }
    if (tau == 0.0 || !std::isfinite(tau)) throw ArgumentError("aperture needs a finite nonzero tau");
    if (!(damping_scale >= 0.0)) throw ArgumentError("damping scale must be nonnegative");
}

namespace {

// Integral of the quintic ramp S((v+1)/2) from -1 to u: 0 below -1, u above 1.
double ramp_integral(double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return u;
    const double s = (u + 1.0) / 2.0;
    const double s4 = s * s * s * s;
    return 2.0 * (s4 * s * s - 3.0 * s4 * s + 2.5 * s4);
}

// C2 max(t, floor), exact outside [floor - width, floor + width].
double smooth_max(double t, double floor, double width) { return floor + width * ramp_integral((t - floor) / width); }

}  // namespace

ComponentFn build_bplus(const AcousticMedium& medium, const ApertureConfig& aperture) {
    aperture.validate();
    const double tau = aperture.tau;
    const double m = std::cos(aperture.theta2) * std::abs(tau) / 4.0;
    const double floor = m * m;
    const auto c = medium.c;
    return [=](double z, const Coord& x, const Coord& xi) {
        const double cv = c(x, z);
        const double radicand = tau * tau / (cv * cv) - (xi[0] * xi[0] + xi[1] * xi[1]);
        return std::sqrt(smooth_max(radicand, floor, floor));
    };
}

ComponentFn build_damping(const AcousticMedium& medium, const ApertureConfig& aperture) {
    aperture.validate();
    const double tau = aperture.tau;
    const double s1 = std::sin(aperture.theta1);
    const double s2 = std::sin(aperture.theta2);
    const double scale = aperture.damping_scale;
    const auto c = medium.c;
    return [=](double z, const Coord& x, const Coord& xi) {
        const double slowness = std::abs(c(x, z) * norm(xi) / tau);
        return scale * std::abs(tau) * quintic_ramp((slowness - s1) / (s2 - s1));
    };
}

SymbolSpec oneway_symbol(const AcousticMedium& medium, const ApertureConfig& aperture, const std::string& name) {
    SymbolSpec spec;
    spec.name = name;
    spec.b1 = build_bplus(medium, aperture);
    if (aperture.damping_scale > 0.0) spec.c1 = build_damping(medium, aperture);
    spec.z_regularity = ZRegularity::lipschitz();
    // Order one in (tau, xi) jointly; at fixed tau neither part is homogeneous in xi.
    spec.homogeneity_cutoff = std::numeric_limits<double>::infinity();
    spec.x_independent = medium.x_independent;
    spec.z_independent = medium.z_independent;
    return spec;
}

Field downward_continue(const AcousticMedium& medium, const ApertureConfig& aperture, const Field& u0, double Z,
                        int N, const SlabVariant& variant, const SlabObserver& observer,
                        const PropagatorConfig& config) {
    const Subdivision sub = Subdivision::uniform(Z, N);
    medium.validate(u0.grid(), sub.points());
    const SymbolSpec spec = oneway_symbol(medium, aperture, "oneway-" + medium.name);
    return apply_ansatz(spec, sub, variant, u0, Z, config, observer);
}

EnergyPartition partition_energy(const Field& u, const AcousticMedium& medium, const ApertureConfig& aperture) {
    aperture.validate();
    const double inner = std::sin(aperture.theta1) * std::abs(aperture.tau) / medium.c_bounds.second;
    const double outer = std::sin(aperture.theta2) * std::abs(aperture.tau) / medium.c_bounds.first;
    const SpectralField coeffs = forward(u);
    EnergyPartition e;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double r = norm(coeffs.grid().frequency(k));
        const double w = std::norm(coeffs[k]);
        if (r <= inner)
            e.inside += w;
        else if (r >= outer)
            e.outside += w;
        else
            e.between += w;
    }
    return e;
}

}  // namespace thinslab
