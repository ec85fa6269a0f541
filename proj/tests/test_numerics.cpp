#include <catch2/catch_amalgamated.hpp>

#include "triprop/numerics.hpp"

#include <cmath>

using namespace triprop;
using Catch::Approx;

TEST_CASE("gauss-kronrod handles smooth integrands to tight tolerance") {
    const double got = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
    CHECK(got == Approx(std::sqrt(pi)).epsilon(1e-12));

    const double osc = integrate([](double x) { return std::sin(40.0 * x); }, 0.0, 1.0, 1e-12);
    CHECK(osc == Approx((1.0 - std::cos(40.0)) / 40.0).margin(1e-12));
}

TEST_CASE("gauss-kronrod integrates complex integrands") {
    const cplx got = integrate([](double x) { return std::exp(cplx(0.0, x)); }, 0.0, pi, 1e-12);
    CHECK(got.real() == Approx(0.0).margin(1e-12));
    CHECK(got.imag() == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rk4 with step halving reproduces the harmonic solution") {
    auto deriv = [](double, const std::array<double, 2>& y) {
        return std::array<double, 2>{y[1], -y[0]};
    };
    const auto sol = integrate_ode<2>(deriv, {1.0, 0.0}, 0.0, 10.0);
    CHECK(sol.y.back()[0] == Approx(std::cos(10.0)).margin(1e-9));
    CHECK(sol.y.back()[1] == Approx(-std::sin(10.0)).margin(1e-9));

    // dense cubic Hermite output between the nodes
    const auto mid = sol.at(3.7);
    CHECK(mid[0] == Approx(std::cos(3.7)).margin(1e-9));
    CHECK(mid[1] == Approx(-std::sin(3.7)).margin(1e-9));
}

TEST_CASE("natural cubic spline interpolates smooth data") {
    std::vector<double> x, y;
    for (int i = 0; i <= 40; ++i) {
        x.push_back(i * 0.1);
        y.push_back(std::sin(x.back()));
    }
    CubicSpline s(x, y);
    for (double t : {1.234, 2.5, 3.05})  // interior points
        CHECK(s(t) == Approx(std::sin(t)).margin(2e-5));
    for (double t : {0.05, 3.95})  // natural ends lose accuracy, still O(h^2)
        CHECK(s(t) == Approx(std::sin(t)).margin(5e-4));
}

TEST_CASE("sturm bisection finds the low spectrum of a tridiagonal matrix") {
    // second-difference matrix: eigenvalues 2 - 2 cos(k pi / (n+1))
    const std::size_t n = 400;
    std::vector<double> diag(n, 2.0), off(n - 1, -1.0);
    const auto eig = tridiag_lowest_eigenvalues(diag, off, 4);
    for (std::size_t k = 1; k <= 4; ++k) {
        const double expect = 2.0 - 2.0 * std::cos(k * pi / (n + 1.0));
        CHECK(eig[k - 1] == Approx(expect).margin(1e-12));
    }
}
