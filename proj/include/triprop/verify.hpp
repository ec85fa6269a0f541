#pragma once

// Self-contained verification suites pairing every closed form with an
// independent numerical check. Each suite reports named residuals against
// fixed tolerances; the CLI `verify` command and the acceptance runner both
// drive these.

#include "triprop/model.hpp"
#include "triprop/oracle.hpp"
#include "triprop/propagator.hpp"
#include "triprop/spectrum.hpp"
#include "triprop/timedep.hpp"
#include "triprop/transform.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace triprop {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline CheckResult check(std::string name, double residual, double tolerance) {
    CheckResult c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual < tolerance && std::isfinite(residual);
    return c;
}

inline PhysicalSystem default_probe_system() {
    PhysicalSystem sys;
    sys.m1 = 1.0;
    sys.m2 = 2.0;
    sys.m3 = 0.8;
    sys.K21 = 1.2;
    sys.K31 = 0.4;
    sys.K32 = 0.9;
    sys.sigma1 = 0.3;
    sys.sigma2 = -0.2;
    sys.sigma3 = 0.1;
    sys.g1[0] = TimeFunction::sinusoid(0.4, 1.1, 0.2);
    sys.g2[2] = TimeFunction::constant(0.3);
    return sys;
}

inline std::vector<Endpoints> probe_endpoints() {
    std::vector<Endpoints> out;
    Endpoints ep;
    ep.t_a = 0.0;
    ep.t_b = 0.7;
    ep.r_initial = {Vec3{0.1, 0.0, -0.2}, Vec3{-0.3, 0.2, 0.0}, Vec3{0.0, -0.1, 0.4}};
    ep.r_final = {Vec3{0.0, 0.1, 0.1}, Vec3{0.2, -0.2, 0.3}, Vec3{-0.1, 0.0, 0.0}};
    out.push_back(ep);
    ep.t_b = 1.1;
    for (auto& r : ep.r_final) r = scale(-0.8, r);
    out.push_back(ep);
    ep.t_b = 0.45;
    ep.r_initial[0] = {0.5, -0.3, 0.2};
    out.push_back(ep);
    return out;
}

}  // namespace detail

// 1. Rotation angle kills the cross coupling and the mode frequencies are the
//    eigenvalues of the mass-weighted coupling matrix, over random systems.
inline SuiteResult verify_decoupling() {
    SuiteResult suite;
    suite.name = "decoupling";
    std::mt19937 rng(97531);
    std::uniform_real_distribution<double> mass(0.2, 5.0), coup(-1.5, 1.5), kpos(0.05, 3.0),
        gpar(0.4, 2.5);
    double worst_gamma = 0.0, worst_eig = 0.0, worst_half_angle = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        PhysicalSystem sys;
        sys.m1 = mass(rng);
        sys.m2 = mass(rng);
        sys.m3 = mass(rng);
        sys.K21 = kpos(rng);
        sys.K31 = kpos(rng);
        sys.K32 = kpos(rng);
        sys.sigma1 = coup(rng);
        sys.sigma2 = coup(rng);
        sys.sigma3 = coup(rng);
        sys.gauge = {gpar(rng), gpar(rng), gpar(rng)};
        const auto jac = to_jacobi(sys);
        const auto fr = normal_modes(jac, sys.gauge);
        const double m = sys.gauge.m;
        const double k = jac.lambda / std::sqrt(jac.M1 * jac.M2);
        const double scale =
            m * std::max({std::abs(jac.omega1_sq), std::abs(jac.omega2_sq), std::abs(k), 1e-30});
        const auto rc = rotated_couplings(jac, m, fr.phi);
        worst_gamma = std::max(worst_gamma, std::abs(rc.gamma) / scale);
        const auto e = eig2_symmetric(jac.omega1_sq, k, jac.omega2_sq);
        const double escale = std::max({std::abs(e.lo), std::abs(e.hi), 1e-30});
        worst_eig = std::max(worst_eig, std::abs(fr.Omega1_sq - e.lo) / escale);
        worst_eig = std::max(worst_eig, std::abs(fr.Omega2_sq - e.hi) / escale);
        const double c0 = std::cos(mixing_angle(jac));
        worst_half_angle = std::max(worst_half_angle, std::abs(c0 * c0 - 0.5 * (1.0 + fr.R)));
    }
    suite.checks.push_back(detail::check("cross coupling eliminated (1000 systems)", worst_gamma, 1e-12));
    suite.checks.push_back(detail::check("mode frequencies match 2x2 eigenvalues", worst_eig, 1e-12));
    suite.checks.push_back(
        detail::check("half-angle identity cos^2 = (1+R)/2", worst_half_angle, 1e-12));
    return suite;
}

// 2. Physical-coordinate kernel unchanged across gauge choices.
inline SuiteResult verify_gauge(const std::optional<PhysicalSystem>& configured = std::nullopt) {
    SuiteResult suite;
    suite.name = "gauge";
    const PhysicalSystem sys = configured.value_or(detail::default_probe_system());
    std::mt19937 rng(24680);
    std::uniform_real_distribution<double> gpar(0.4, 2.5);
    std::vector<GaugeChoice> gauges;
    for (int i = 0; i < 5; ++i) gauges.push_back({gpar(rng), gpar(rng), gpar(rng)});
    const auto probes = detail::probe_endpoints();
    const double dev = gauge_sweep_check(
        sys, std::span<const GaugeChoice>(gauges), std::span<const Endpoints>(probes),
        [](const PhysicalSystem& s, const Endpoints& ep) {
            return three_body_kernel(s, ep).amplitude;
        });
    suite.checks.push_back(detail::check("kernel deviation across 5 gauges", dev, 1e-10));
    return suite;
}

// 3. Closed-form kernels propagate packets exactly like the grid solver.
inline SuiteResult verify_kernel_grid(std::size_t grid_points = 2048, double domain = 12.0) {
    SuiteResult suite;
    suite.name = "kernel-grid";
    const auto start = std::chrono::steady_clock::now();

    {
        auto st = gaussian_packet(-domain, domain, grid_points, 0.7, 1.0);
        auto V = [](double x, double) { return 0.5 * x * x; };
        const auto grid = evolve_grid_tdse(st, V, 0.0, 1.0, 4096);
        const auto smeared = kernel_apply(
            [](double x_to, double x_from) {
                return sho_kernel_1d(1.0, 1.0, x_from, x_to, 1.0, 1.0).amplitude;
            },
            st);
        suite.checks.push_back(
            detail::check("oscillator kernel vs grid", grid_l2_diff(smeared, grid), 1e-4));
    }
    {
        const double F0 = 0.5;
        auto st = gaussian_packet(-domain, domain, grid_points, 0.0, 1.0);
        auto V = [&](double x, double) { return 0.5 * x * x - F0 * x; };
        const auto grid = evolve_grid_tdse(st, V, 0.0, 1.0, 4096);
        const auto di = compute_drive_integrals_1d(1.0, [&](double) { return F0; }, 0.0, 1.0);
        const auto smeared = kernel_apply(
            [&](double x_to, double x_from) {
                return driven_kernel_1d(1.0, 1.0, di, x_from, x_to, 1.0, 1.0).amplitude;
            },
            st);
        suite.checks.push_back(
            detail::check("driven kernel vs grid", grid_l2_diff(smeared, grid), 1e-3));
    }
    {
        auto osq = [](double t) { return 1.0 + 0.1 * std::sin(t); };
        const double tau = 1.0;
        const auto erm = solve_ermakov(osq, 0.0, tau);
        const auto sh = zero_shift(0.0, tau);
        auto st = gaussian_packet(-domain, domain, grid_points, 0.5, 1.0);
        auto V = [&](double x, double t) { return 0.5 * osq(t) * x * x; };
        const auto grid = evolve_grid_tdse(st, V, 0.0, tau, 8192);
        const auto smeared = kernel_apply(
            [&](double x_to, double x_from) {
                return td_mode_kernel_1d(erm, sh, 1.0, 1.0, x_from, x_to, 0.0).amplitude;
            },
            st);
        suite.checks.push_back(
            detail::check("time-dependent kernel vs grid", grid_l2_diff(smeared, grid), 1e-3));
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    suite.checks.push_back(detail::check("grid comparison runtime (s)", elapsed, 60.0));
    return suite;
}

// 4. Kernel composition over an intermediate point reproduces the kernel of
//    the combined interval.
inline SuiteResult verify_chapman() {
    SuiteResult suite;
    suite.name = "chapman";
    std::vector<std::pair<double, double>> probes = {{0.0, 0.3}, {-1.0, 0.8}, {0.5, -0.5}};
    {
        KernelFamily family = [](cplx x_to, cplx x_from, double ta, double tb) {
            return sho_kernel_1d(1.0, 1.0, x_from, x_to, tb - ta, 1.0).amplitude;
        };
        suite.checks.push_back(detail::check(
            "oscillator composition", chapman_kolmogorov_residual(family, 0.0, 0.3, 0.7, probes),
            1e-6));
    }
    {
        auto F = [](double) { return 0.8; };
        KernelFamily family = [&](cplx x_to, cplx x_from, double ta, double tb) {
            const auto di = compute_drive_integrals_1d(1.0, F, ta, tb);
            return driven_kernel_1d(1.0, 1.0, di, x_from, x_to, tb - ta, 1.0).amplitude;
        };
        suite.checks.push_back(detail::check(
            "driven composition", chapman_kolmogorov_residual(family, 0.0, 0.35, 0.8, probes),
            1e-6));
    }
    {
        auto osq = [](double t) { return 1.0 + 0.1 * std::sin(t); };
        struct Seg {
            ErmakovSolution erm;
            ModeShift sh;
        };
        std::vector<std::pair<std::pair<double, double>, Seg>> cache;
        auto segment = [&](double ta, double tb) -> const Seg& {
            for (const auto& kv : cache)
                if (kv.first == std::make_pair(ta, tb)) return kv.second;
            Seg seg;
            seg.erm = solve_ermakov(osq, ta, tb);
            seg.sh = zero_shift(ta, tb);
            cache.emplace_back(std::make_pair(ta, tb), std::move(seg));
            return cache.back().second;
        };
        KernelFamily family = [&](cplx x_to, cplx x_from, double ta, double tb) {
            const auto& seg = segment(ta, tb);
            return td_mode_kernel_1d(seg.erm, seg.sh, 1.0, 1.0, x_from, x_to, 0.0).amplitude;
        };
        suite.checks.push_back(detail::check(
            "time-dependent composition",
            chapman_kolmogorov_residual(family, 0.0, 0.6, 1.4, probes), 1e-5));
    }
    return suite;
}

// 5. Level energies against the grid Hamiltonian and exact enumeration counts.
inline SuiteResult verify_spectrum() {
    SuiteResult suite;
    suite.name = "spectrum";
    NormalModeFrame fr;
    fr.Omega1_sq = 1.0;
    fr.Omega2_sq = 2.0;
    fr.M1 = fr.M2 = 1.0;
    fr.c11 = fr.c22 = 1.0;
    double worst = 0.0;
    for (double osq : {fr.Omega1_sq, fr.Omega2_sq}) {
        auto V = [&](double x, double) { return 0.5 * osq * x * x; };
        const auto eig = discrete_spectrum_extrapolated(V, SpectrumGrid{}, 5);
        for (int n = 0; n < 5; ++n) {
            const double expect = (n + 0.5) * std::sqrt(osq);
            worst = std::max(worst, std::abs(eig[n] - expect) / expect);
        }
    }
    suite.checks.push_back(detail::check("energies vs grid spectrum (lowest 5)", worst, 1e-6));

    NormalModeFrame fr2;
    fr2.Omega1_sq = 1.3 * 1.3;
    fr2.Omega2_sq = 2.7 * 2.7;
    fr2.M1 = fr2.M2 = 1.0;
    const double e_max = 13.97;  // generic cap, off the level lattice
    const auto levels = enumerate_levels(fr2, 1.0, e_max);
    const double O1 = std::sqrt(fr2.Omega1_sq), O2 = std::sqrt(fr2.Omega2_sq);
    std::size_t brute = 0;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            for (int c = 0; c < 16; ++c)
                for (int d = 0; d < 16; ++d)
                    for (int e = 0; e < 16; ++e)
                        for (int f = 0; f < 16; ++f)
                            if (O1 * (a + b + c + 1.5) + O2 * (d + e + f + 1.5) <= e_max)
                                ++brute;
    suite.checks.push_back(detail::check(
        "level count vs exhaustive lattice",
        std::abs(static_cast<double>(levels.size()) - static_cast<double>(brute)), 0.5));
    return suite;
}

// 6. A commensurate frequency ratio merges clusters beyond the combinatorial
//    baseline somewhere below ten quanta of the lower mode.
inline SuiteResult verify_degeneracy() {
    SuiteResult suite;
    suite.name = "degeneracy";
    NormalModeFrame fr;
    fr.Omega1_sq = 1.0;
    fr.Omega2_sq = 4.0;  // Omega2 / Omega1 = 2
    fr.M1 = fr.M2 = 1.0;
    const auto levels = enumerate_levels(fr, 1.0, 10.0);
    // strongest excess of a cluster over the largest single-pair count in it
    double best_excess = -1.0;
    std::size_t i = 0;
    while (i < levels.size()) {
        std::size_t j = i;
        std::int64_t baseline = 0;
        while (j < levels.size() && levels[j].energy - levels[i].energy < 1e-9) {
            baseline = std::max(baseline, axis_compositions(levels[j].index.N1()) *
                                              axis_compositions(levels[j].index.N2()));
            ++j;
        }
        best_excess = std::max(
            best_excess, static_cast<double>(static_cast<std::int64_t>(j - i) - baseline));
        i = j;
    }
    // pass iff some cluster exceeds its combinatorial baseline strictly
    suite.checks.push_back(detail::check("hidden-symmetry cluster excess (negated)",
                                         best_excess > 0.0 ? 0.0 : 1.0, 0.5));
    return suite;
}

// 7. Summation identity and the kernel-to-spectrum reconstruction.
inline SuiteResult verify_mehler() {
    SuiteResult suite;
    suite.name = "mehler";
    double worst = 0.0;
    for (double a = -2.0; a <= 2.0; a += 0.25)
        for (double b = -2.0; b <= 2.0; b += 0.25)
            worst = std::max(worst,
                             std::abs(mehler_closed(a, b, 0.5) - mehler_partial(a, b, 0.5, 60)));
    suite.checks.push_back(detail::check("closed vs partial sum (N=60)", worst, 1e-8));

    NormalModeFrame fr;
    fr.Omega1_sq = 1.0;
    fr.Omega2_sq = 1.0;
    fr.M1 = fr.M2 = 1.0;
    suite.checks.push_back(detail::check("spectral reconstruction (beta=1, N=40)",
                                         spectral_reconstruction_check(fr, 1.0, 1.0, 40), 1e-10));
    return suite;
}

// 8. Scale/phase machinery: constant fixed point, the two-solution closed
//    form, and reduction of the time-dependent kernel to the constant one.
inline SuiteResult verify_ermakov() {
    SuiteResult suite;
    suite.name = "ermakov";
    {
        const auto erm = solve_ermakov([](double) { return 4.0; }, 0.0, 2.0);
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double t = 2.0 * i / 40.0;
            worst = std::max(worst, std::abs(erm.s(t) - std::pow(4.0, -0.25)));
            worst = std::max(worst, std::abs(erm.alpha(t) - 2.0 * t));
        }
        suite.checks.push_back(detail::check("constant-frequency fixed point", worst, 1e-9));
    }
    {
        auto osq = [](double t) { return 1.0 + 0.1 * std::sin(t); };
        const auto erm = solve_ermakov(osq, 0.0, 6.0);
        auto lin = [&](double t, const std::array<double, 4>& y) {
            return std::array<double, 4>{y[1], -osq(t) * y[0], y[3], -osq(t) * y[2]};
        };
        const auto uv = integrate_ode<4>(lin, {1.0, 0.0, 0.0, 1.0}, 0.0, 6.0, 1e-12, 256);
        const double W0 = std::sqrt(osq(0.0));
        double worst = 0.0;
        for (int i = 0; i <= 60; ++i) {
            const double t = 6.0 * i / 60.0;
            const auto y = uv.at(t);
            worst = std::max(worst,
                             std::abs(erm.s(t) - std::sqrt(y[0] * y[0] / W0 + W0 * y[2] * y[2])));
        }
        suite.checks.push_back(detail::check("two-solution closed-form cross-check", worst, 1e-8));
    }
    {
        // constant couplings through the time-dependent route
        nlohmann::json doc;
        doc["masses"] = {1.0, 1.0, 1.0};
        doc["K"] = {{"K21", 1.0}, {"K31", 1.0}, {"K32", 1.0}};
        doc["sigma"] = {0.15, 0.15, 0.0};
        doc["drives"] = {{"g1", {{{"const", 0.3}}, 0.0, 0.0}}};
        const auto tds = build_td_system(doc, 0.0, 1.0);
        PhysicalSystem sys;
        sys.K21 = sys.K31 = sys.K32 = 1.0;
        sys.sigma1 = sys.sigma2 = 0.15;
        sys.gauge = {tds.a, tds.b, 1.0};
        sys.g1[0] = TimeFunction::constant(0.3);
        double worst = 0.0;
        for (const auto& ep : detail::probe_endpoints()) {
            const auto td = td_three_body_kernel(tds, ep);
            const auto ref = three_body_kernel(sys, ep);
            worst = std::max(worst, std::abs(td.amplitude - ref.amplitude) / std::abs(ref.amplitude));
        }
        suite.checks.push_back(
            detail::check("time-dependent route reduces to the constant kernel", worst, 1e-8));
    }
    return suite;
}

// 9. Smearing the composite physical-coordinate kernel over a short interval
//    reproduces the test function, pinning the measure factor. The nine mode
//    coordinates separate, so the 9-D quadrature is taken as one 1-D
//    quadrature per coordinate, with every integrand value an evaluation of
//    the full composite kernel and the volume element computed here from the
//    determinant of the coordinate map.
inline SuiteResult verify_delta_limit(
    const std::optional<PhysicalSystem>& configured = std::nullopt) {
    SuiteResult suite;
    suite.name = "delta";
    PhysicalSystem sys;
    if (configured) {
        sys = *configured;
        sys.g1 = sys.g2 = sys.g3 = DriveVector{};  // short-time test is undriven
    } else {
        sys.m1 = sys.m2 = sys.m3 = 1.0;
        sys.K21 = sys.K31 = sys.K32 = 1.0;
        sys.gauge = {1.3, 0.8, 2.0};  // the measure factor must drop out
    }
    const double tau = 1e-4;
    const auto frame = normal_modes(to_jacobi(sys), sys.gauge);

    // per-axis linear map (r1, r2, r3) -> (Y1, Y2, X3) built by probing the
    // library maps with unit vectors; determinant and inverse computed here
    double T[3][3];
    for (int col = 0; col < 3; ++col) {
        Vec3 r1{}, r2{}, r3{};
        (col == 0 ? r1 : col == 1 ? r2 : r3)[0] = 1.0;
        const auto jp = jacobi_coordinates(sys, r1, r2, r3);
        const auto mp = mode_coordinates(frame, jp.X1, jp.X2);
        T[0][col] = mp.Y1[0];
        T[1][col] = mp.Y2[0];
        T[2][col] = jp.X3[0];
    }
    const double det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) -
                       T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
                       T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
    double Tinv[3][3];
    const double idet = 1.0 / det;
    Tinv[0][0] = (T[1][1] * T[2][2] - T[1][2] * T[2][1]) * idet;
    Tinv[0][1] = (T[0][2] * T[2][1] - T[0][1] * T[2][2]) * idet;
    Tinv[0][2] = (T[0][1] * T[1][2] - T[0][2] * T[1][1]) * idet;
    Tinv[1][0] = (T[1][2] * T[2][0] - T[1][0] * T[2][2]) * idet;
    Tinv[1][1] = (T[0][0] * T[2][2] - T[0][2] * T[2][0]) * idet;
    Tinv[1][2] = (T[0][2] * T[1][0] - T[0][0] * T[1][2]) * idet;
    Tinv[2][0] = (T[1][0] * T[2][1] - T[1][1] * T[2][0]) * idet;
    Tinv[2][1] = (T[0][1] * T[2][0] - T[0][0] * T[2][1]) * idet;
    Tinv[2][2] = (T[0][0] * T[1][1] - T[0][1] * T[1][0]) * idet;

    // mode-space coordinates of a physical configuration, as a flat array
    // ordered (slot, axis): slots are Y1, Y2, X3
    auto to_modes = [&](const std::array<Vec3, 3>& r) {
        const auto jp = jacobi_coordinates(sys, r[0], r[1], r[2]);
        const auto mp = mode_coordinates(frame, jp.X1, jp.X2);
        std::array<double, 9> w{};
        for (int a = 0; a < 3; ++a) {
            w[a] = mp.Y1[a];
            w[3 + a] = mp.Y2[a];
            w[6 + a] = jp.X3[a];
        }
        return w;
    };
    auto to_physical = [&](const std::array<double, 9>& w) {
        std::array<Vec3, 3> r{};
        for (int a = 0; a < 3; ++a)
            for (int p = 0; p < 3; ++p)
                r[p][a] = Tinv[p][0] * w[a] + Tinv[p][1] * w[3 + a] + Tinv[p][2] * w[6 + a];
        return r;
    };

    // separable Gaussian test function on the mode coordinates; wide enough
    // that the residual finite-time smearing stays below the tolerance
    const double width = 0.6;
    std::array<double, 9> center{};
    for (int k = 0; k < 9; ++k) center[k] = 0.05 * (k - 4);
    auto g1d = [&](int k, double w) {
        const double d = (w - center[k]) / width;
        return std::exp(-0.5 * d * d);
    };

    auto kernel_to = [&](const std::array<double, 9>& w_from, const std::array<Vec3, 3>& r_to) {
        Endpoints ep;
        ep.t_a = 0.0;
        ep.t_b = tau;
        ep.r_initial = to_physical(w_from);
        ep.r_final = r_to;
        return three_body_kernel(sys, frame, ep).amplitude;
    };

    const double half_span = 5.5 * width;
    const std::size_t quad_n = 528001;  // resolves the quadratic phase at the domain edge
    const double db = 2.0 * half_span / static_cast<double>(quad_n - 1);

    // output configurations vary along one physical coordinate
    double num = 0.0, den = 0.0;
    std::array<cplx, 9> bracket{};
    std::array<bool, 9> bracket_valid{};
    std::array<double, 9> last_w{};
    for (int probe = 0; probe < 7; ++probe) {
        std::array<Vec3, 3> r_to = {Vec3{0.0, 0.05, -0.1}, Vec3{0.1, -0.05, 0.0},
                                    Vec3{-0.05, 0.0, 0.1}};
        r_to[0][0] += -0.45 + 0.15 * probe;
        const auto w_to = to_modes(r_to);
        std::array<double, 9> w_ref{};
        for (int k = 0; k < 9; ++k) w_ref[k] = w_to[k] + 0.13;
        const cplx c_ref = kernel_to(w_ref, r_to);

        cplx product = c_ref;
        for (int k = 0; k < 9; ++k) {
            // brackets whose output coordinate did not change are reusable
            if (!(probe > 0 && bracket_valid[k] && last_w[k] == w_to[k])) {
                cplx acc{};
                auto w = w_ref;
                for (std::size_t j = 0; j < quad_n; ++j) {
                    const double b = center[k] - half_span + db * static_cast<double>(j);
                    w[k] = b;
                    const double trap = (j == 0 || j + 1 == quad_n) ? 0.5 : 1.0;
                    acc += trap * (kernel_to(w, r_to) / c_ref) * g1d(k, b);
                }
                bracket[k] = acc * db;
                bracket_valid[k] = true;
                last_w[k] = w_to[k];
            }
            product *= bracket[k];
        }
        const cplx smeared = product / std::pow(det, 3);
        double expected = 1.0;
        for (int k = 0; k < 9; ++k) expected *= g1d(k, w_to[k]);
        num += std::norm(smeared - expected);
        den += expected * expected;
    }
    suite.checks.push_back(detail::check("short-time smearing reproduces the test function",
                                         std::sqrt(num / den), 1e-3));
    return suite;
}

inline const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"decoupling", "gauge",      "kernel-grid",
                                                   "chapman",    "spectrum",   "degeneracy",
                                                   "mehler",     "ermakov",    "delta"};
    return names;
}

inline SuiteResult run_verify_suite(const std::string& name,
                                    const std::optional<PhysicalSystem>& sys = std::nullopt,
                                    std::size_t grid_points = 2048, double domain = 12.0) {
    if (name == "decoupling") return verify_decoupling();
    if (name == "gauge") return verify_gauge(sys);
    if (name == "kernel-grid") return verify_kernel_grid(grid_points, domain);
    if (name == "chapman") return verify_chapman();
    if (name == "spectrum") return verify_spectrum();
    if (name == "degeneracy") return verify_degeneracy();
    if (name == "mehler") return verify_mehler();
    if (name == "ermakov") return verify_ermakov();
    if (name == "delta") return verify_delta_limit(sys);
    throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace triprop
