#include "thinslab/registry.hpp"

#include <cmath>

#include "thinslab/error.hpp"

namespace thinslab {

ApertureConfig default_aperture() { return {kPi / 9.0, kPi / 3.0, 24.0, kDefaultDampingScale}; }

namespace {

Scenario symbol_scenario(std::string key, std::string description, std::string anchor, SymbolSpec spec) {
    spec.name = key;
    return {std::move(key), std::move(description), std::move(anchor), std::move(spec), std::nullopt};
}

Scenario demo_scenario(std::string key, std::string description, std::string anchor, AcousticMedium medium,
                       ApertureConfig aperture) {
    SymbolSpec spec = oneway_symbol(medium, aperture, key);
    return {std::move(key), std::move(description), std::move(anchor), std::move(spec),
            OnewayDemo{std::move(medium), aperture}};
}

std::vector<Scenario> build() {
    std::vector<Scenario> s;
    s.push_back(symbol_scenario("translation", "a = -i xi; exact lateral shift by the slab thickness",
                                "x-independent multiplier, Ansatz exact", canned::translation()));
    s.push_back(symbol_scenario("halfwave", "a = -i |xi|_sm; constant-speed half-wave operator",
                                "x-independent multiplier, Ansatz exact", canned::halfwave()));
    s.push_back(symbol_scenario("damped", "a = |xi|_sm; pure order-one damping",
                                "contraction on every H^s, Ansatz exact", canned::damped()));
    s.push_back(symbol_scenario("varspeed", "b1 = (1 + 0.3 cos x) xi; x-dependent speed",
                                "Lipschitz in z, convergence rate 1/2", canned::varspeed()));
    s.push_back(symbol_scenario("damped-varspeed", "varspeed plus c1 = 0.5 (1 + 0.5 sin x) |xi|_sm",
                                "nonnegative c1 with P_L, rate 1/2", canned::damped_varspeed()));
    s.push_back(symbol_scenario("hoelder-z", "varspeed modulated by 1 + 0.1 W(z), W a Weierstrass sum with alpha = 1/2",
                                "Hoelder in z, rate alpha/2", canned::hoelder_z()));
    s.push_back(symbol_scenario("ramp-z", "b1 = (1 + z) xi; x-independent, z-dependent",
                                "averaged Ansatz exact, frozen Ansatz first order", canned::ramp_z()));

    AcousticMedium lens = AcousticMedium::lens();
    ApertureConfig undamped = default_aperture();
    undamped.damping_scale = 0.0;
    s.push_back(demo_scenario("oneway-bplus", "one-way symbol b_+ in the lens medium without damping",
                              "real order-one b_+ on the aperture", lens, undamped));
    s.push_back(demo_scenario("oneway-homogeneous", "one-way continuation with angular damping, c == 1",
                              "exact one-way phase shift", AcousticMedium::homogeneous(), default_aperture()));
    s.push_back(demo_scenario("oneway-lens", "one-way continuation with angular damping, c = 1 + 0.1 cos x",
                              "steep angles suppressed, aperture preserved", lens, default_aperture()));
    s.push_back(symbol_scenario("zero", "a == 0", "identity propagator", canned::zero()));
    return s;
}

}  // namespace

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> registry = build();
    return registry;
}

const Scenario& find_scenario(const std::string& key) {
    for (const Scenario& s : scenarios())
        if (s.key == key) return s;
    std::string known;
    for (const Scenario& s : scenarios()) known += (known.empty() ? "" : ", ") + s.key;
    throw ConfigError("unknown scenario '" + key + "' (known: " + known + ")");
}

Field demo_datum(const Grid& grid, const ApertureConfig& aperture) {
    const double unit = 2.0 * kPi / grid.period;
    const double k_in = std::round(0.1 * std::abs(aperture.tau) / unit);
    const double k_out = std::round(std::abs(aperture.tau) / unit);
    return Field::sample(grid, [&](const Coord& x) {
        return std::polar(1.0, k_in * unit * x[0]) + std::polar(1.0, k_out * unit * x[0]);
    });
}

}  // namespace thinslab
