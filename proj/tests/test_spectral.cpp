#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thinslab/error.hpp"
#include "thinslab/spectral.hpp"

using namespace thinslab;

TEST_SUITE("spectral") {
    TEST_CASE("grid validation") {
        CHECK_NOTHROW(Grid{8, 1.0, 1}.validate());
        CHECK_THROWS_AS((Grid{4, 1.0, 1}.validate()), GridError);
        CHECK_THROWS_AS((Grid{48, 1.0, 1}.validate()), GridError);
        CHECK_THROWS_AS((Grid{16, 0.0, 1}.validate()), GridError);
        CHECK_THROWS_AS((Grid{16, 1.0, 3}.validate()), GridError);
    }

    TEST_CASE("signed frequency lattice in FFT order") {
        const Grid g{8, 2.0 * kPi, 1};
        const int expected[] = {0, 1, 2, 3, -4, -3, -2, -1};
        for (std::size_t i = 0; i < 8; ++i) CHECK(g.frequency(i)[0] == doctest::Approx(expected[i]));
        const Grid p{8, 4.0, 1};
        CHECK(p.frequency(1)[0] == doctest::Approx(2.0 * kPi / 4.0));
        const Grid g2{8, 2.0 * kPi, 2};
        CHECK(g2.size() == 64);
        CHECK(g2.frequency(8 * 3 + 5)[0] == doctest::Approx(-3.0));
        CHECK(g2.frequency(8 * 3 + 5)[1] == doctest::Approx(3.0));
        CHECK(g2.position(8 * 3 + 5)[0] == doctest::Approx(5.0 * 2.0 * kPi / 8.0));
    }

    TEST_CASE("constant field concentrates at k = 0") {
        const Grid g{8, 2.0 * kPi, 1};
        const Field f = Field::sample(g, [](const Coord&) { return Complex{1.0, 0.0}; });
        const SpectralField F = forward(f);
        CHECK(std::abs(F[0] - std::sqrt(8.0)) < 1e-14);
        for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(F[k]) < 1e-14);
        CHECK(sobolev_norm(F, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-14));
    }

    TEST_CASE("pure mode has a single coefficient at k = 1") {
        const Grid g{16, 3.0, 1};
        const Field f = Field::sample(g, [&](const Coord& x) { return std::polar(1.0, 2.0 * kPi * x[0] / 3.0); });
        const SpectralField F = forward(f);
        for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(F[k]) == doctest::Approx(k == 1 ? 4.0 : 0.0));
        const Field back = inverse(F);
        for (std::size_t j = 0; j < 16; ++j) CHECK(std::abs(back[j] - f[j]) < 1e-14);
    }

    TEST_CASE("forward matches the direct DFT oracle in 1D and 2D") {
        std::mt19937_64 rng(11);
        for (const Grid& g : {Grid{32, 2.0 * kPi, 1}, Grid{64, 5.0, 1}, Grid{8, 2.0 * kPi, 2}, Grid{16, 3.0, 2}}) {
            const auto v = oracle::random_values(g.size(), rng);
            const SpectralField F = forward(Field(g, v));
            const auto ref = oracle::dft(g, v);
            std::vector<Complex> got(F.coeffs().begin(), F.coeffs().end());
            CHECK(oracle::max_abs_diff(got, ref) < 1e-12 * oracle::l2(ref));
        }
    }

    TEST_CASE("Parseval and round trip on 1000 random fields") {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> pick(3, 8);
        std::uniform_int_distribution<int> dim(1, 2);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const int d = dim(rng);
            const Grid g{1 << (d == 1 ? pick(rng) : std::min(pick(rng), 6)), 1.0 + i % 7, d};
            const Field f(g, oracle::random_values(g.size(), rng));
            const SpectralField F = forward(f);
            const double l2 = l2_norm(f);
            worst = std::max(worst, std::abs(sobolev_norm(F, 0.0) - l2) / l2);
            const Field back = inverse(F);
            double err = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) err = std::max(err, std::abs(back[j] - f[j]));
            worst = std::max(worst, err / l2);
        }
        CHECK(worst < 1e-12);
    }

    TEST_CASE("Sobolev norm examples") {
        const Grid g{16, 2.0 * kPi, 1};
        const Field mode = Field::sample(g, [](const Coord& x) { return std::polar(1.0, x[0]); });
        CHECK(sobolev_norm(mode, 1.0) == doctest::Approx(std::sqrt(2.0) * l2_norm(mode)).epsilon(1e-14));
        std::mt19937_64 rng(5);
        const Field r(g, oracle::random_values(g.size(), rng));
        CHECK(sobolev_norm(r, 0.0) == doctest::Approx(l2_norm(r)).epsilon(1e-14));
    }

    TEST_CASE("Sobolev ratio of a bump against the brute-force spectral sum") {
        const Grid g{128, 2.0 * kPi, 1};
        const Field bump = Field::sample(g, [](const Coord& x) { return std::exp(-8.0 * (x[0] - kPi) * (x[0] - kPi)); });
        const std::vector<Complex> v(bump.values().begin(), bump.values().end());
        const double ratio = sobolev_norm(bump, 2.0) / sobolev_norm(bump, 0.0);
        CHECK(ratio == doctest::Approx(oracle::sobolev(g, v, 2.0) / oracle::sobolev(g, v, 0.0)).epsilon(1e-12));
    }

    TEST_CASE("Sobolev norm is monotone in s") {
        std::mt19937_64 rng(17);
        const Grid g{32, 2.0 * kPi, 2};
        for (int i = 0; i < 20; ++i) {
            const Field f(g, oracle::random_values(g.size(), rng));
            double prev = 0.0;
            for (double s = -2.0; s <= 3.0; s += 0.5) {
                const double n = sobolev_norm(f, s);
                CHECK(n >= prev);
                prev = n;
            }
        }
    }

    TEST_CASE("weight operator") {
        const Grid g{16, 2.0 * kPi, 1};
        const Field mode = Field::sample(g, [](const Coord& x) { return std::polar(1.0, x[0]); });
        const Field w = apply_weight(mode, 2.0);
        for (std::size_t j = 0; j < 16; ++j) CHECK(std::abs(w[j] - 2.0 * mode[j]) < 1e-13);

        std::mt19937_64 rng(3);
        const Field f(g, oracle::random_values(g.size(), rng));
        const Field id = apply_weight(f, 0.0);
        for (std::size_t j = 0; j < 16; ++j) CHECK(id[j] == f[j]);
        const Field there_and_back = apply_weight(apply_weight(f, 1.7), -1.7);
        for (std::size_t j = 0; j < 16; ++j) CHECK(std::abs(there_and_back[j] - f[j]) < 1e-12 * l2_norm(f));
    }

    TEST_CASE("weight operator is unitary between weighted norms") {
        std::mt19937_64 rng(99);
        for (const Grid& g : {Grid{64, 2.0 * kPi, 1}, Grid{16, 7.0, 2}})
            for (double r : {-2.0, -0.5, 1.0, 3.0})
                for (double s : {0.0, 1.0, 2.5}) {
                    const Field f(g, oracle::random_values(g.size(), rng));
                    const double lhs = sobolev_norm(apply_weight(f, r), s - r);
                    CHECK(lhs == doctest::Approx(sobolev_norm(f, s)).epsilon(1e-12));
                }
    }

    TEST_CASE("field invariants") {
        const Grid g{8, 1.0, 1};
        CHECK_THROWS_AS(Field(g, std::vector<Complex>(7)), GridError);
        std::vector<Complex> bad(8);
        bad[3] = {std::nan(""), 0.0};
        CHECK_THROWS_AS(Field(g, bad), ArgumentError);
        const Field a(g);
        const Field b(Grid{16, 1.0, 1});
        CHECK_THROWS_AS(a + b, ArgumentError);
    }
}
