#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thinslab/ansatz.hpp"
#include "thinslab/error.hpp"

using namespace thinslab;

namespace {

const Grid kGrid{128, 2.0 * kPi, 1};

double rel_err(const Field& a, const Field& b, double s) { return sobolev_norm(a - b, s) / sobolev_norm(b, s); }

}  // namespace

TEST_SUITE("ansatz") {
    TEST_CASE("subdivision") {
        const Subdivision p = Subdivision::uniform(1.0, 8);
        CHECK(p.step() == 0.125);
        const auto pts = p.points();
        REQUIRE(pts.size() == 9);
        CHECK(pts.front() == 0.0);
        CHECK(pts.back() == 1.0);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i] > pts[i - 1]);
            CHECK(std::abs(pts[i] - pts[i - 1] - p.step()) < 1e-14);
        }
        CHECK_THROWS_AS(Subdivision::uniform(0.0, 4), SubdivisionError);
        CHECK_THROWS_AS(Subdivision::uniform(1.0, 0), SubdivisionError);
        CHECK_THROWS_AS(Subdivision::uniform(1.0, 4).require_admissible({}), SubdivisionError);
        CHECK_NOTHROW(p.require_admissible({}));
    }

    TEST_CASE("N = 1 is a single slab over [0, Z]") {
        const Field u = default_packet(kGrid);
        const PropagatorConfig wide{1.0};
        const Field w = apply_ansatz(canned::varspeed(), Subdivision::uniform(1.0, 1), Frozen{}, u, 1.0, wide);
        const Field g = thin_slab_apply({0.0, 1.0, canned::varspeed(), Frozen{}}, u, wide);
        CHECK(rel_err(w, g, 0.0) < 1e-14);
        CHECK_THROWS_AS(apply_ansatz(canned::varspeed(), Subdivision::uniform(1.0, 1), Frozen{}, u, 1.0),
                        SubdivisionError);
    }

    TEST_CASE("zero symbol leaves data unchanged") {
        const Field u = default_packet(kGrid);
        for (int n : {1, 3, 16}) {
            const Field w = apply_ansatz(canned::zero(), Subdivision::uniform(0.1, n), Frozen{}, u, 0.07);
            CHECK(rel_err(w, u, 0.0) < 1e-12);
        }
    }

    TEST_CASE("averaged Ansatz on x-independent symbols telescopes to the exact multiplier") {
        const Field u = default_packet(kGrid);
        for (const SymbolSpec& s : {canned::translation(), canned::halfwave(), canned::damped(), canned::ramp_z()})
            for (int n : {8, 13, 64}) {
                const Subdivision p = Subdivision::uniform(1.0, n);
                for (double z : {1.0, 0.61}) {
                    const Field w = apply_ansatz(s, p, Averaged{4}, u, z);
                    const Field e = exact_multiplier_evolution(s, 0.0, z, u);
                    CAPTURE(s.name);
                    CHECK(rel_err(w, e, 1.0) < 1e-11);
                }
            }
    }

    TEST_CASE("at a subdivision point the Ansatz is the k-fold composition") {
        const Field u = default_packet(kGrid);
        const SymbolSpec s = canned::damped_varspeed();
        const Subdivision p = Subdivision::uniform(1.0, 16);
        Field manual = u;
        for (int i = 0; i < 5; ++i) manual = thin_slab_apply({p.point(i), p.point(i + 1), s, Frozen{}}, manual);
        CHECK(rel_err(apply_ansatz(s, p, Frozen{}, u, p.point(5)), manual, 0.0) < 1e-14);
        // One partial slab past z_5.
        const double z = p.point(5) + 0.3 * p.step();
        const Field partial = thin_slab_apply({p.point(5), z, s, Frozen{}}, manual);
        CHECK(rel_err(apply_ansatz(s, p, Frozen{}, u, z), partial, 0.0) < 1e-14);
    }

    TEST_CASE("observer sees every full slab") {
        const Field u = default_packet(kGrid);
        std::vector<int> ks;
        std::vector<double> zs;
        apply_ansatz(canned::varspeed(), Subdivision::uniform(1.0, 8), Frozen{}, u, 1.0, {},
                     [&](int k, double z, const Field&) {
                         ks.push_back(k);
                         zs.push_back(z);
                     });
        REQUIRE(ks.size() == 8);
        CHECK(ks.front() == 1);
        CHECK(ks.back() == 8);
        CHECK(zs.back() == 1.0);
    }

    TEST_CASE("depth outside [0, Z]") {
        const Field u = default_packet(kGrid);
        CHECK_THROWS_AS(apply_ansatz(canned::varspeed(), Subdivision::uniform(1.0, 8), Frozen{}, u, 1.5), ArgumentError);
        CHECK_THROWS_AS(apply_ansatz(canned::varspeed(), Subdivision::uniform(1.0, 8), Frozen{}, u, -0.1),
                        ArgumentError);
    }

    TEST_CASE("reference solutions") {
        const Field u = default_packet(kGrid);
        const Field t = reference_solution(canned::translation(), u, 1.0, ReferenceMode::exact());
        const Field shifted = Field::sample(kGrid, [&](const Coord& x) {
            const double y = x[0] + 1.0 - kPi;
            return std::exp(-y * y / (2 * std::pow(kGrid.period / 40, 2))) * std::polar(1.0, 8.0 * (x[0] + 1.0));
        });
        CHECK(rel_err(t, shifted, 0.0) < 1e-10);

        const Field d = reference_solution(canned::damped(), u, 1.0, ReferenceMode::exact());
        CHECK(l2_norm(d) <= l2_norm(u));

        CHECK_THROWS_AS(reference_solution(canned::varspeed(), u, 1.0, ReferenceMode::exact()), ContractError);
        const Field f = reference_solution(canned::varspeed(), u, 1.0, ReferenceMode::fine_step(64));
        CHECK(rel_err(f, apply_ansatz(canned::varspeed(), Subdivision::uniform(1.0, 64), Averaged{4}, u, 1.0), 0.0) <
              1e-14);
        CHECK(ReferenceMode::exact().describe() == "exact");
        CHECK(ReferenceMode::fine_step(1024).describe() == "finestep:1024");
    }

    TEST_CASE("residual of exact and trivial evolutions") {
        const Field u = default_packet(kGrid);
        const Subdivision p = Subdivision::uniform(1.0, 16);
        const double mid = 2.5 * p.step();
        CHECK(residual_norm(canned::zero(), p, Frozen{}, u, mid, 0.0) == 0.0);
        CHECK(residual_norm(canned::halfwave(), p, Averaged{4}, u, mid, 0.0) < 1e-8 * sobolev_norm(u, 1.0));
        CHECK(residual_norm(canned::damped(), p, Averaged{4}, u, mid, 0.0) < 1e-8 * sobolev_norm(u, 1.0));
        CHECK_THROWS_AS(residual_norm(canned::varspeed(), p, Frozen{}, u, 2 * p.step(), 0.0), PositionError);
        CHECK_THROWS_AS(residual_norm(canned::varspeed(), p, Frozen{}, u, 2 * p.step() + p.step() / 128, 0.0),
                        PositionError);
    }

    TEST_CASE("residual decays on varspeed") {
        const Field u = default_packet(kGrid);
        std::vector<double> lx;
        std::vector<double> ly;
        for (int n : {16, 32, 64}) {
            const Subdivision p = Subdivision::uniform(1.0, n);
            const double r = residual_norm(canned::varspeed(), p, Frozen{}, u, (n / 2 + 0.5) * p.step(), 0.0);
            lx.push_back(std::log(p.step()));
            ly.push_back(std::log(r / sobolev_norm(u, 1.0)));
        }
        CHECK(ly[1] < ly[0]);
        CHECK(ly[2] < ly[1]);
        CHECK(fit_line(lx, ly).slope >= 0.45);
    }

    TEST_CASE("line fit") {
        const std::vector<double> x{0, 1, 2, 3};
        const std::vector<double> y{1, 3, 5, 7};
        const LineFit f = fit_line(x, y);
        CHECK(f.slope == doctest::Approx(2.0));
        CHECK(f.intercept == doctest::Approx(1.0));
        CHECK(f.residual < 1e-12);
        const std::vector<double> noisy{1, 3.2, 4.8, 7};
        CHECK(fit_line(x, noisy).residual > 0.05);
        CHECK_THROWS_AS(fit_line(std::vector<double>{1.0}, std::vector<double>{2.0}), ArgumentError);
    }

    TEST_CASE("convergence study: exact for x-independent symbols") {
        const Field u = default_packet(kGrid);
        const std::vector<int> ns{8, 16, 32};
        const ConvergenceReport r =
            convergence_study(canned::halfwave(), u, 1.0, ns, Averaged{4}, ReferenceMode::exact());
        CHECK(r.exact);
        CHECK_FALSE(r.fitted_slope.has_value());
        for (double e : r.errors) CHECK(e < 1e-10);
        CHECK(r.deltas == std::vector<double>{0.125, 0.0625, 0.03125});
    }

    TEST_CASE("convergence study: varspeed rate") {
        const Field u = default_packet(kGrid);
        const std::vector<int> ns{8, 16, 32, 64};
        const ConvergenceReport r =
            convergence_study(canned::varspeed(), u, 0.0, ns, Frozen{}, ReferenceMode::fine_step(512));
        REQUIRE(r.fitted_slope.has_value());
        CHECK(*r.fitted_slope >= 0.45);
        CHECK(r.monotone());
        for (double e : r.errors) CHECK(e >= 0.0);
        REQUIRE(r.reference_self_error.has_value());
        CHECK(*r.reference_self_error < 0.1 * r.normalized_errors.front());
    }

    TEST_CASE("convergence study: averaged beats frozen on z-dependent symbols") {
        const Field u = default_packet(kGrid);
        const std::vector<int> ns{8, 16, 32};
        for (const SymbolSpec& s : {canned::hoelder_z(), canned::ramp_z()}) {
            const ReferenceMode ref = s.x_independent ? ReferenceMode::exact() : ReferenceMode::fine_step(256);
            const auto frozen = convergence_study(s, u, 0.0, ns, Frozen{}, ref);
            const auto avg = convergence_study(s, u, 0.0, ns, Averaged{4}, ref);
            for (std::size_t i = 0; i < ns.size(); ++i) CHECK(avg.errors[i] < frozen.errors[i]);
        }
    }

    TEST_CASE("convergence study preconditions") {
        const Field u = default_packet(kGrid);
        const std::vector<int> bad{16, 8};
        CHECK_THROWS_AS(convergence_study(canned::varspeed(), u, 0.0, bad, Frozen{}, ReferenceMode::fine_step(256)),
                        ArgumentError);
        const std::vector<int> ns{8, 16};
        CHECK_THROWS_AS(convergence_study(canned::varspeed(), u, 0.0, ns, Frozen{}, ReferenceMode::fine_step(64)),
                        ArgumentError);
        CHECK_THROWS_AS(convergence_study(canned::varspeed(), u, 0.0, ns, Frozen{}, ReferenceMode::exact()),
                        ContractError);
    }

    TEST_CASE("monotone tolerance") {
        ConvergenceReport r;
        r.normalized_errors = {1.0, 0.5, 0.52, 0.3};
        CHECK(r.monotone());
        r.normalized_errors = {1.0, 0.5, 0.6};
        CHECK_FALSE(r.monotone());
    }

    TEST_CASE("uniform bound") {
        const auto family = packet_family(kGrid, 3, 7);
        const std::vector<int> ns{8, 16, 32};
        const auto zero = uniform_bound_check(canned::zero(), family, 0.0, ns);
        CHECK(zero.sup_ratio == doctest::Approx(1.0).epsilon(1e-12));
        const auto damped = uniform_bound_check(canned::damped(), family, 1.0, ns);
        CHECK(damped.sup_ratio <= 1.01);
        CHECK(damped.sup_ratio >= 1.0 - 1e-12);
        const auto vs = uniform_bound_check(canned::varspeed(), family, 0.0, ns);
        CHECK(vs.per_n.size() == 3);
        CHECK(vs.spread() < 0.05);
    }

    TEST_CASE("packet family is deterministic and starts with the default packet") {
        const auto a = packet_family(kGrid, 4, 11);
        const auto b = packet_family(kGrid, 4, 11);
        const auto c = packet_family(kGrid, 4, 12);
        REQUIRE(a.size() == 4);
        CHECK(rel_err(a[0], default_packet(kGrid), 0.0) == 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(rel_err(a[i], b[i], 0.0) == 0.0);
        CHECK(rel_err(a[2], c[2], 0.0) > 1e-3);
    }
}
