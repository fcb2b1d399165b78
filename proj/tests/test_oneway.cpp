#include <doctest.h>

#include <cmath>

#include "thinslab/error.hpp"
#include "thinslab/oneway.hpp"
#include "thinslab/registry.hpp"
#include "thinslab/symbol_checks.hpp"

using namespace thinslab;

namespace {

const double kTheta1 = kPi / 9.0;
const double kTheta2 = kPi / 3.0;

ApertureConfig unit_aperture(double scale = kDefaultDampingScale) { return {kTheta1, kTheta2, 1.0, scale}; }

Field mode(const Grid& g, int k) {
    return Field::sample(g, [&](const Coord& x) { return std::polar(1.0, k * 2.0 * kPi / g.period * x[0]); });
}

Complex coefficient(const Field& u, int k) {
    const SpectralField c = forward(u);
    const int n = u.grid().n_points;
    return c[std::size_t((k + n) % n)];
}

}  // namespace

TEST_SUITE("oneway") {
    TEST_CASE("b+ values") {
        const auto hom = build_bplus(AcousticMedium::homogeneous(), unit_aperture());
        CHECK(hom(0.0, {0.0, 0.0}, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(hom(0.0, {1.0, 0.0}, {std::sin(kTheta1), 0.0}) == doctest::Approx(std::cos(kTheta1)).epsilon(1e-14));
        const auto lens = build_bplus(AcousticMedium::lens(), unit_aperture());
        CHECK(lens(0.0, {0.0, 0.0}, {0.0, 0.0}) == doctest::Approx(1.0 / 1.1).epsilon(1e-14));
    }

    TEST_CASE("b+ is the true root on the aperture and stays real and positive everywhere") {
        const AcousticMedium m = AcousticMedium::lens();
        const ApertureConfig a{kTheta1, kTheta2, 24.0, 2.0};
        const auto b = build_bplus(m, a);
        for (int i = 0; i < 32; ++i) {
            const Coord x{2.0 * kPi * i / 32, 0.0};
            const double c = m.c(x, 0.0);
            for (int j = 0; j <= 200; ++j) {
                const double xi = 60.0 * j / 200.0;
                const double v = b(0.0, x, {xi, 0.0});
                CHECK(std::isfinite(v));
                CHECK(v > 0.0);
                if (std::abs(c * xi / a.tau) <= std::sin(kTheta2))
                    CHECK(v == doctest::Approx(std::sqrt(a.tau * a.tau / (c * c) - xi * xi)).epsilon(1e-14));
            }
        }
    }

    TEST_CASE("damping values") {
        const auto d = build_damping(AcousticMedium::homogeneous(), unit_aperture(2.0));
        CHECK(d(0.0, {0.0, 0.0}, {0.0, 0.0}) == 0.0);
        CHECK(d(0.0, {0.0, 0.0}, {std::sin(kTheta1), 0.0}) == 0.0);
        CHECK(d(0.0, {0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(2.0));
        CHECK(d(0.0, {0.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(2.0));
        const double mid = d(0.0, {0.0, 0.0}, {std::sin((kTheta1 + kTheta2) / 2), 0.0});
        CHECK(mid > 0.0);
        CHECK(mid < 2.0);
        // Ramp midpoint by slowness is exactly half the scale.
        const double half = d(0.0, {0.0, 0.0}, {(std::sin(kTheta1) + std::sin(kTheta2)) / 2, 0.0});
        CHECK(half == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("damping is nonnegative and nondecreasing along rays") {
        const AcousticMedium m = AcousticMedium::lens();
        for (double tau : {1.0, -3.0, 24.0}) {
            const auto d = build_damping(m, {kTheta1, kTheta2, tau, 2.0});
            for (int i = 0; i < 16; ++i) {
                const Coord x{2.0 * kPi * i / 16, 0.0};
                double prev = 0.0;
                for (int j = 0; j <= 400; ++j) {
                    const double v = d(0.0, x, {2.0 * std::abs(tau) * j / 400.0, 0.0});
                    CHECK(v >= 0.0);
                    CHECK(v >= prev);
                    prev = v;
                }
            }
        }
    }

    TEST_CASE("aperture and medium validation") {
        CHECK_THROWS_AS(ApertureConfig({0.5, 0.4, 1.0, 2.0}).validate(), ArgumentError);
        CHECK_THROWS_AS(ApertureConfig({0.0, 0.4, 1.0, 2.0}).validate(), ArgumentError);
        CHECK_THROWS_AS(ApertureConfig({0.1, kPi / 2, 1.0, 2.0}).validate(), ArgumentError);
        CHECK_THROWS_AS(ApertureConfig({0.1, 0.4, 0.0, 2.0}).validate(), ArgumentError);
        CHECK_THROWS_AS(ApertureConfig({0.1, 0.4, 1.0, -1.0}).validate(), ArgumentError);
        AcousticMedium bad = AcousticMedium::lens(0.2);
        bad.c_bounds = {0.9, 1.1};
        CHECK_THROWS_AS(bad.validate(Grid{64, 2.0 * kPi, 1}, {0.0}), ArgumentError);
        CHECK_NOTHROW(AcousticMedium::lens().validate(Grid{64, 2.0 * kPi, 1}, {0.0, 1.0}));
    }

    TEST_CASE("oneway symbol passes the damping-class check") {
        const ApertureConfig a = default_aperture();
        const SymbolSpec s = oneway_symbol(AcousticMedium::lens(), a, "lens");
        REQUIRE(s.c1);
        CHECK(validate(s, 1.0).empty());
        const PLReport pl = check_PL(freeze(s.c1, 0.0), 2, LatticeSpec{});
        CHECK(pl.pass);
        ApertureConfig undamped = a;
        undamped.damping_scale = 0.0;
        CHECK_FALSE(oneway_symbol(AcousticMedium::lens(), undamped, "b").c1);
        CHECK(oneway_symbol(AcousticMedium::homogeneous(), a, "h").x_independent);
        CHECK_FALSE(s.x_independent);
    }

    TEST_CASE("homogeneous medium: exact one-way phase advance") {
        const Grid g{256, 2.0 * kPi, 1};
        ApertureConfig a = default_aperture();
        a.damping_scale = 0.0;
        for (int k : {0, 2, -5, 8}) {
            const Field u = mode(g, k);
            const Field v = downward_continue(AcousticMedium::homogeneous(), a, u, 1.0, 16);
            const Complex ratio = coefficient(v, k) / coefficient(u, k);
            const Complex expected = std::polar(1.0, std::sqrt(a.tau * a.tau - double(k * k)));
            CHECK(std::abs(ratio - expected) < 1e-9);
        }
    }

    TEST_CASE("steep modes decay at the full damping rate") {
        const Grid g{256, 2.0 * kPi, 1};
        const ApertureConfig a = default_aperture();
        for (int k : {24, -30}) {
            const Field u = mode(g, k);
            const Field v = downward_continue(AcousticMedium::homogeneous(), a, u, 1.0, 16);
            const double ratio = std::abs(coefficient(v, k)) / std::abs(coefficient(u, k));
            CHECK(ratio <= std::exp(-a.damping_scale * a.tau * (1.0 - 1e-9)));
        }
    }

    TEST_CASE("homogeneous continuation never creates new modes") {
        const Grid g{128, 2.0 * kPi, 1};
        Field u = mode(g, 3);
        u += mode(g, -11);
        u += mode(g, 20);
        const Field v = downward_continue(AcousticMedium::homogeneous(), default_aperture(), u, 1.0, 16);
        const SpectralField c = forward(v);
        for (std::size_t k = 0; k < c.size(); ++k) {
            const int w = g.wavenumber(int(k));
            if (w == 3 || w == -11 || w == 20) continue;
            CHECK(std::abs(c[k]) < 1e-10);
        }
    }

    TEST_CASE("lens medium: steep energy suppressed, aperture energy preserved") {
        const Grid g{256, 2.0 * kPi, 1};
        const ApertureConfig a = default_aperture();
        const AcousticMedium m = AcousticMedium::lens();
        const Field u = demo_datum(g, a);
        const EnergyPartition e0 = partition_energy(u, m, a);
        REQUIRE(e0.inside > 0.0);
        REQUIRE(e0.outside > 0.0);
        CHECK(e0.between == doctest::Approx(0.0));
        const Field v = downward_continue(m, a, u, 1.0, 64);
        const EnergyPartition e1 = partition_energy(v, m, a);
        CHECK(e1.outside / e0.outside < 0.1);
        CHECK(std::abs(e1.inside / e0.inside - 1.0) < 0.05);
    }

    TEST_CASE("energy partition sums to the squared L2 norm") {
        const Grid g{64, 2.0 * kPi, 1};
        Field u = mode(g, 1);
        u += mode(g, 5);
        const EnergyPartition e = partition_energy(u, AcousticMedium::homogeneous(), {kTheta1, kTheta2, 8.0, 2.0});
        CHECK(e.total() == doctest::Approx(l2_norm(u) * l2_norm(u)));
        CHECK(e.inside == doctest::Approx(e.total() / 2));
        CHECK(e.between == doctest::Approx(e.total() / 2));
    }
}
