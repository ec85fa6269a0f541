#include <catch2/catch_amalgamated.hpp>

#include "triprop/oracle.hpp"
#include "triprop/propagator.hpp"

#include <cmath>

using namespace triprop;
using Catch::Approx;

TEST_CASE("eig2 on a diagonal matrix") {
    const auto e = eig2_symmetric(1.0, 0.0, 2.0);
    CHECK(e.lo == 1.0);
    CHECK(e.hi == 2.0);
    CHECK(e.angle == 0.0);
}

TEST_CASE("eig2 hand-solved off-diagonal case") {
    const auto e = eig2_symmetric(1.0, 0.5, 2.0);
    CHECK(e.lo == Approx((3.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-14));
    CHECK(e.hi == Approx((3.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-14));
    // eigenvector check: (A - lo) v = 0
    const double c = std::cos(e.angle), s = std::sin(e.angle);
    CHECK(1.0 * c + 0.5 * s == Approx(e.lo * c).margin(1e-14));
    CHECK(0.5 * c + 2.0 * s == Approx(e.lo * s).margin(1e-14));
}

TEST_CASE("eig2 degenerate convention") {
    const auto e = eig2_symmetric(3.0, 0.0, 3.0);
    CHECK(e.lo == 3.0);
    CHECK(e.hi == 3.0);
    CHECK(e.angle == 0.0);
}

TEST_CASE("eig2 preserves trace and determinant") {
    for (double a11 : {-1.0, 0.3, 2.0})
        for (double a12 : {-0.7, 0.0, 1.1})
            for (double a22 : {-0.4, 1.7}) {
                const auto e = eig2_symmetric(a11, a12, a22);
                CHECK(e.lo + e.hi == Approx(a11 + a22).margin(1e-13));
                CHECK(e.lo * e.hi == Approx(a11 * a22 - a12 * a12).margin(1e-13));
            }
}

namespace {

// analytic free spreading of a Gaussian at rest
GridState free_gaussian_exact(const GridState& grid, double x0, double width, double t) {
    GridState out = grid;
    const cplx wsq = width * width + cplx(0.0, grid.hbar * t / grid.mass);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out.x(i) - x0;
        out.values[i] = std::pow(width * width / (pi * wsq * wsq), 0.25) *
                        std::exp(-d * d / (2.0 * wsq));
    }
    return out;
}

}  // namespace

TEST_CASE("crank-nicolson free packet follows the analytic spreading law") {
    auto st = gaussian_packet(-12.0, 12.0, 4096, 0.0, 1.0);
    const auto evolved = evolve_grid_tdse(st, [](double, double) { return 0.0; }, 0.0, 1.0, 4096);
    const auto exact = free_gaussian_exact(st, 0.0, 1.0, 1.0);
    CHECK(grid_l2_diff(evolved, exact) < 1e-5);
}

TEST_CASE("crank-nicolson coherent state oscillates on the classical trajectory") {
    const double x0 = 2.0;
    auto st = gaussian_packet(-12.0, 12.0, 16384, x0, 1.0);
    auto V = [](double x, double) { return 0.5 * x * x; };
    const double t = 2.0;
    const auto evolved = evolve_grid_tdse(st, V, 0.0, t, 8192);
    double xbar = 0.0;
    for (std::size_t i = 0; i < evolved.size(); ++i)
        xbar += evolved.x(i) * std::norm(evolved.values[i]) * evolved.dx;
    CHECK(xbar == Approx(x0 * std::cos(t)).margin(1e-5));
}

TEST_CASE("crank-nicolson conserves the norm over many steps") {
    auto st = gaussian_packet(-12.0, 12.0, 1024, 0.5, 1.0);
    auto V = [](double x, double t) { return 0.5 * x * x * (1.0 + 0.1 * std::sin(t)); };
    const auto evolved = evolve_grid_tdse(st, V, 0.0, 2.0, 10000);
    CHECK(std::abs(grid_norm(evolved) - grid_norm(st)) < 1e-10);
}

TEST_CASE("kernel_apply with the free kernel reproduces analytic spreading") {
    auto st = gaussian_packet(-12.0, 12.0, 2048, 0.0, 1.0);
    const double t = 0.8;
    auto kernel = [&](double x_to, double x_from) {
        return free_kernel_1d(1.0, x_from, x_to, t, 1.0).amplitude;
    };
    const auto out = kernel_apply(kernel, st);
    const auto exact = free_gaussian_exact(st, 0.0, 1.0, t);
    CHECK(grid_l2_diff(out, exact) < 1e-5);
}

TEST_CASE("kernel smearing approaches the identity at vanishing time") {
    // tau this small demands an input grid that resolves the quadratic phase,
    // so the smeared values are probed at a handful of points instead of
    // applying the kernel over the whole fine grid
    const double tau = 1e-4;
    const double width = 0.35;
    auto g = [&](double x) {
        return std::exp(-x * x / (2.0 * width * width)) / std::sqrt(width * std::sqrt(pi));
    };
    const std::size_t n = 400001;
    const double x_min = -2.0, dx = 4.0 / static_cast<double>(n - 1);
    double num = 0.0, den = 0.0;
    for (double x0 : {-0.6, -0.3, -0.1, 0.0, 0.2, 0.45, 0.7}) {
        cplx acc{};
        for (std::size_t j = 0; j < n; ++j) {
            const double y = x_min + dx * static_cast<double>(j);
            const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
            acc += w * free_kernel_1d(1.0, y, x0, tau, 1.0).amplitude * g(y);
        }
        acc *= dx;
        num += std::norm(acc - g(x0));
        den += std::norm(g(x0));
    }
    CHECK(std::sqrt(num / den) < 1e-3);
}

TEST_CASE("oscillator kernel against grid evolution near a full period") {
    const double omega = 1.0, tau = 2.0 * pi - 0.4;
    auto st = gaussian_packet(-12.0, 12.0, 2048, 1.0, 1.0);
    auto V = [&](double x, double) { return 0.5 * omega * omega * x * x; };
    const auto grid = evolve_grid_tdse(st, V, 0.0, tau, 16384);
    auto kernel = [&](double x_to, double x_from) {
        return sho_kernel_1d(1.0, omega * omega, x_from, x_to, tau, 1.0).amplitude;
    };
    const auto smeared = kernel_apply(kernel, st);
    CHECK(grid_l2_diff(smeared, grid) < 1e-3);
}

TEST_CASE("free kernel satisfies the composition law") {
    KernelFamily family = [](cplx x_to, cplx x_from, double ta, double tb) {
        return free_kernel_1d(1.0, x_from, x_to, tb - ta, 1.0).amplitude;
    };
    std::vector<std::pair<double, double>> probes = {{0.0, 0.0}, {-0.7, 1.2}, {0.4, 2.0}};
    CHECK(chapman_kolmogorov_residual(family, 0.0, 0.4, 1.0, probes) < 1e-9);
}

TEST_CASE("oscillator kernel satisfies the composition law") {
    KernelFamily family = [](cplx x_to, cplx x_from, double ta, double tb) {
        return sho_kernel_1d(1.0, 1.0, x_from, x_to, tb - ta, 1.0).amplitude;
    };
    std::vector<std::pair<double, double>> probes = {{0.0, 0.3}, {-1.0, 0.8}, {0.5, -0.5}};
    CHECK(chapman_kolmogorov_residual(family, 0.0, 0.3, 0.7, probes) < 1e-6);
}

TEST_CASE("driven kernel satisfies the composition law") {
    auto F = [](double) { return 0.8; };
    KernelFamily family = [&](cplx x_to, cplx x_from, double ta, double tb) {
        const auto di = compute_drive_integrals_1d(1.0, F, ta, tb);
        return driven_kernel_1d(1.0, 1.0, di, x_from, x_to, tb - ta, 1.0).amplitude;
    };
    std::vector<std::pair<double, double>> probes = {{0.0, 0.0}, {-0.6, 0.9}};
    CHECK(chapman_kolmogorov_residual(family, 0.0, 0.35, 0.8, probes) < 1e-5);
}

TEST_CASE("discrete spectrum of the unit oscillator") {
    auto V = [](double x, double) { return 0.5 * x * x; };
    const auto eig = discrete_spectrum(V, SpectrumGrid{}, 5);
    // plain second-order differences at the default grid land within ~1e-4
    for (std::size_t n = 0; n < 5; ++n)
        CHECK(eig[n] == Approx(n + 0.5).margin(2e-4));
    // Richardson extrapolation over dx removes the leading error
    const auto eig2 = discrete_spectrum_extrapolated(V, SpectrumGrid{}, 5);
    for (std::size_t n = 0; n < 5; ++n)
        CHECK(eig2[n] == Approx(n + 0.5).margin(1e-6));
}

TEST_CASE("discrete spectrum converges at second order in dx") {
    auto V = [](double x, double) { return 0.5 * x * x; };
    const auto coarse = discrete_spectrum(V, SpectrumGrid{-12.0, 12.0, 1024}, 1);
    const auto fine = discrete_spectrum(V, SpectrumGrid{-12.0, 12.0, 2047}, 1);  // dx halved
    const double err_coarse = std::abs(coarse[0] - 0.5);
    const double err_fine = std::abs(fine[0] - 0.5);
    CHECK(err_coarse / err_fine == Approx(4.0).epsilon(0.1));
}

TEST_CASE("shifting the potential shifts every eigenvalue by the same amount") {
    auto V = [](double x, double) { return 0.5 * x * x; };
    auto Vs = [](double x, double) { return 0.5 * x * x + 2.5; };
    const auto e0 = discrete_spectrum(V, SpectrumGrid{}, 3);
    const auto e1 = discrete_spectrum(Vs, SpectrumGrid{}, 3);
    for (std::size_t n = 0; n < 3; ++n) CHECK(e1[n] - e0[n] == Approx(2.5).margin(1e-9));
}

TEST_CASE("hard-wall artifact spectrum scales as n squared") {
    auto V = [](double, double) { return 0.0; };
    const auto eig = discrete_spectrum(V, SpectrumGrid{0.0, 1.0, 4096}, 3);
    CHECK(eig[1] / eig[0] == Approx(4.0).epsilon(1e-3));
    CHECK(eig[2] / eig[0] == Approx(9.0).epsilon(1e-3));
}

TEST_CASE("initial packets touching the boundary are rejected") {
    auto st = gaussian_packet(-3.0, 3.0, 256, 2.8, 1.0);
    CHECK_THROWS_AS(evolve_grid_tdse(st, [](double, double) { return 0.0; }, 0.0, 0.1, 16),
                    std::invalid_argument);
}
