#include <catch2/catch_amalgamated.hpp>

#include "triprop/model.hpp"

#include <random>

using namespace triprop;
using Catch::Approx;

TEST_CASE("minimal config parses with defaults") {
    const auto sys = parse_config(
        R"({"masses":[1,1,1],"K":{"K21":1,"K31":1,"K32":1},"sigma":[0,0,0]})");
    CHECK(sys.hbar == 1.0);
    CHECK(sys.gauge.a == 1.0);
    CHECK(sys.gauge.b == 1.0);
    CHECK(sys.gauge.m == 1.0);
    CHECK_FALSE(sys.driven());
    CHECK(sys.K21 == 1.0);
}

TEST_CASE("non-positive mass is rejected") {
    CHECK_THROWS_WITH(parse_config(R"({"masses":[1,2,-3]})"),
                      Catch::Matchers::ContainsSubstring("non-positive mass"));
}

TEST_CASE("non-monotone tabulated drive is rejected") {
    CHECK_THROWS_WITH(
        parse_config(
            R"({"masses":[1,1,1],"drives":{"g1":[{"table":{"t":[0,0.5,0.25],"v":[0,1,0]}},0,0]}})"),
        Catch::Matchers::ContainsSubstring("non-monotone time grid"));
}

TEST_CASE("validate_system reports each violation") {
    PhysicalSystem sys;
    CHECK(validate_system(sys).empty());

    sys.hbar = 0.0;
    auto diag = validate_system(sys);
    REQUIRE(diag.size() == 1);
    CHECK(diag[0] == "hbar must be positive");

    sys.hbar = 1.0;
    sys.K21 = std::numeric_limits<double>::quiet_NaN();
    diag = validate_system(sys);
    REQUIRE(diag.size() == 1);
    CHECK_THAT(diag[0], Catch::Matchers::ContainsSubstring("coupling not finite"));
}

TEST_CASE("drive specs evaluate as declared") {
    const auto sys = parse_config(R"({
        "masses":[1,1,1],
        "drives":{"g1":[{"const":2.5},{"sin":{"amp":2,"omega":3,"phase":0.5}},
                        {"table":{"t":[0,1,2,3],"v":[0,1,4,9]}}]}
    })");
    CHECK(sys.g1[0](17.0) == 2.5);
    CHECK(sys.g1[1](0.7) == Approx(2.0 * std::sin(3.0 * 0.7 + 0.5)));
    CHECK(sys.g1[2](2.0) == Approx(4.0));
    CHECK(sys.g1[2](1.5) == Approx(2.25).margin(0.2));  // spline between samples
    CHECK(sys.driven());
}

TEST_CASE("parse after serialize is the identity on representable values") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> mass(0.25, 4.0), coup(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        PhysicalSystem sys;
        sys.m1 = mass(rng);
        sys.m2 = mass(rng);
        sys.m3 = mass(rng);
        sys.K21 = coup(rng);
        sys.K31 = coup(rng);
        sys.K32 = coup(rng);
        sys.sigma1 = coup(rng);
        sys.sigma2 = coup(rng);
        sys.sigma3 = coup(rng);
        sys.hbar = mass(rng);
        sys.gauge = {mass(rng), mass(rng), mass(rng)};
        sys.g2[1] = TimeFunction::sinusoid(coup(rng), mass(rng), coup(rng));
        sys.g3[0] = TimeFunction::constant(coup(rng));

        const auto round = parse_config(serialize(sys).dump());
        CHECK(round.m1 == sys.m1);
        CHECK(round.K32 == sys.K32);
        CHECK(round.sigma2 == sys.sigma2);
        CHECK(round.hbar == sys.hbar);
        CHECK(round.gauge.b == sys.gauge.b);
        CHECK(round.g2[1](0.3) == sys.g2[1](0.3));
        CHECK(round.g3[0](1.0) == sys.g3[0](1.0));
    }
}

TEST_CASE("validate accepts exactly what parse accepts") {
    // randomized systems, some deliberately broken: parse succeeds iff the
    // diagnostics list is empty
    std::mt19937 rng(7191);
    std::uniform_real_distribution<double> mass(0.25, 4.0), coup(-2.0, 2.0);
    std::uniform_int_distribution<int> breakage(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        PhysicalSystem sys;
        sys.m1 = mass(rng);
        sys.m2 = mass(rng);
        sys.m3 = mass(rng);
        sys.K21 = coup(rng);
        sys.K31 = coup(rng);
        sys.sigma2 = coup(rng);
        sys.hbar = mass(rng);
        switch (breakage(rng)) {
            case 0: sys.m2 = -sys.m2; break;
            case 1: sys.hbar = 0.0; break;
            case 2: sys.K31 = std::numeric_limits<double>::infinity(); break;
            case 3: sys.gauge.b = -1.0; break;
            default: break;  // leave the system valid
        }
        const bool valid = validate_system(sys).empty();
        bool parsed = true;
        try {
            parse_config(serialize(sys).dump());
        } catch (const std::invalid_argument&) {
            parsed = false;
        }
        CHECK(parsed == valid);
    }
}
