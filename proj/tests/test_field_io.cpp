#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "thinslab/error.hpp"
#include "thinslab/field_io.hpp"

using namespace thinslab;

TEST_SUITE("field_io") {
    TEST_CASE("binary round trip is bit exact") {
        std::mt19937_64 rng(1);
        for (const Grid& g : {Grid{32, 2.0 * kPi, 1}, Grid{8, 3.5, 2}}) {
            const Field f(g, oracle::random_values(g.size(), rng));
            std::stringstream buf;
            write_field(buf, f);
            const Field back = read_field(buf);
            CHECK(back.grid() == g);
            for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
        }
    }

    TEST_CASE("header layout") {
        const Grid g{16, 2.5, 1};
        std::stringstream buf;
        write_field(buf, Field(g));
        const std::string bytes = buf.str();
        REQUIRE(bytes.size() == 24 + 16 * 16);
        CHECK(bytes.substr(0, 4) == "TSLB");
        std::uint16_t version = 0;
        std::uint16_t dim = 0;
        std::uint32_t n = 0;
        double period = 0.0;
        std::memcpy(&version, bytes.data() + 4, 2);
        std::memcpy(&dim, bytes.data() + 6, 2);
        std::memcpy(&n, bytes.data() + 8, 4);
        std::memcpy(&period, bytes.data() + 16, 8);
        CHECK(version == 1);
        CHECK(dim == 1);
        CHECK(n == 16);
        CHECK(period == 2.5);
    }

    TEST_CASE("malformed input") {
        std::stringstream bad("XXXXgarbage");
        CHECK_THROWS_AS(read_field(bad), FormatError);
        std::stringstream good;
        write_field(good, Field(Grid{8, 1.0, 1}));
        std::string truncated = good.str().substr(0, 40);
        std::stringstream t(truncated);
        CHECK_THROWS_AS(read_field(t), FormatError);
    }

    TEST_CASE("magnitude CSV") {
        const Grid g{8, 1.0, 1};
        Field f(g);
        f[2] = {3.0, 4.0};
        std::stringstream out;
        write_magnitude_csv(out, f);
        const std::string text = out.str();
        CHECK(text.find("0.25,5") != std::string::npos);
    }
}
