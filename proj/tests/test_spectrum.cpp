#include <catch2/catch_amalgamated.hpp>

#include "triprop/oracle.hpp"
#include "triprop/spectrum.hpp"

#include <cmath>

using namespace triprop;
using Catch::Approx;

namespace {

// hand-built decoupled frame with unit masses and chosen mode frequencies
NormalModeFrame plain_frame(double o1_sq, double o2_sq) {
    NormalModeFrame fr;
    fr.Omega1_sq = o1_sq;
    fr.Omega2_sq = o2_sq;
    fr.M1 = fr.M2 = 1.0;
    fr.M3 = 3.0;
    fr.measure = 1.0;
    fr.R = 1.0;
    fr.c11 = 1.0;
    fr.c22 = 1.0;
    return fr;
}

}  // namespace

TEST_CASE("hermite recurrence base cases and a hand value") {
    CHECK(hermite_eval(0, 0.73) == 1.0);
    CHECK(hermite_eval(1, 0.73) == Approx(2.0 * 0.73));
    CHECK(hermite_eval(3, 1.0) == Approx(-4.0));
}

TEST_CASE("hermite orthogonality by quadrature") {
    for (int m = 0; m <= 8; ++m)
        for (int n = m + 1; n <= 8; ++n) {
            const double overlap = integrate(
                [&](double x) {
                    return hermite_scaled(m, x) * hermite_scaled(n, x) * std::exp(-x * x);
                },
                -10.0, 10.0, 1e-12);
            CHECK(std::abs(overlap) < 1e-9);
        }
}

TEST_CASE("hermite recurrence self-consistency in floating point") {
    for (int n = 1; n <= 50; ++n)
        for (double x : {-5.0, -1.3, 0.2, 4.9}) {
            const double lhs = hermite_scaled(n + 1, x);
            const double rhs = x * std::sqrt(2.0 / (n + 1.0)) * hermite_scaled(n, x) -
                               std::sqrt(n / (n + 1.0)) * hermite_scaled(n - 1, x);
            CHECK(lhs == Approx(rhs).margin(1e-12 * std::max(1.0, std::abs(lhs))));
        }
}

TEST_CASE("hermite order guard") {
    CHECK_THROWS_AS(hermite_eval(201, 0.0), std::invalid_argument);
}

TEST_CASE("ground state energy") {
    const auto fr = plain_frame(1.0, 4.0);
    CHECK(energy_level(LevelIndex{}, fr, 1.0) == Approx(1.5 * (1.0 + 2.0)));
}

TEST_CASE("single quantum energy") {
    const auto fr = plain_frame(1.0, 4.0);
    LevelIndex idx;
    idx.n1 = {1, 0, 0};
    CHECK(energy_level(idx, fr, 1.0) == Approx(5.5));
}

TEST_CASE("mode energies agree with the grid Hamiltonian") {
    const auto fr = plain_frame(1.0, 2.0);
    for (double osq : {fr.Omega1_sq, fr.Omega2_sq}) {
        const double omega = std::sqrt(osq);
        auto V = [&](double x, double) { return 0.5 * osq * x * x; };
        const auto eig = discrete_spectrum_extrapolated(V, SpectrumGrid{}, 5);
        for (int n = 0; n < 5; ++n) {
            const double expect = (n + 0.5) * omega;
            CHECK(std::abs(eig[n] - expect) / expect < 1e-6);
        }
    }
}

TEST_CASE("inverted modes have no discrete spectrum") {
    auto fr = plain_frame(-1.0, 4.0);
    fr.mode1_inverted = true;
    CHECK_THROWS_AS(energy_level(LevelIndex{}, fr, 1.0), std::invalid_argument);
}

TEST_CASE("degenerate frequencies give a six-fold first excited cluster") {
    const auto fr = plain_frame(1.0, 1.0);
    const auto levels = enumerate_levels(fr, 1.0, 4.2);
    REQUIRE_FALSE(levels.empty());
    CHECK(levels.front().energy == Approx(3.0));
    CHECK(levels.front().degeneracy == 1);
    // all six single-quantum states coincide
    int count = 0;
    for (const auto& lv : levels)
        if (std::abs(lv.energy - 4.0) < 1e-9) {
            ++count;
            CHECK(lv.degeneracy == 6);
        }
    CHECK(count == 6);
}

TEST_CASE("irrational frequency ratio keeps the combinatorial degeneracies") {
    const auto fr = plain_frame(1.0, 2.0);  // ratio sqrt(2)
    const auto levels = enumerate_levels(fr, 1.0, 8.0);
    for (const auto& lv : levels) {
        const auto expected = axis_compositions(lv.index.N1()) * axis_compositions(lv.index.N2());
        CHECK(lv.degeneracy == expected);
    }
}

TEST_CASE("rational frequency ratio produces accidental degeneracies") {
    const auto fr = plain_frame(1.0, 4.0);  // Omega2 = 2 Omega1
    const auto levels = enumerate_levels(fr, 1.0, 7.0);
    // N1=2,N2=0 and N1=0,N2=1 both sit at E = 6.5
    bool found = false;
    for (const auto& lv : levels)
        if (std::abs(lv.energy - 6.5) < 1e-9) {
            found = true;
            CHECK(lv.degeneracy == 9);  // 6 from (2,0) plus 3 from (0,1)
        }
    CHECK(found);
}

TEST_CASE("enumeration count matches the brute-force lattice count") {
    const auto fr = plain_frame(1.3, 2.7);
    const double e_max = 11.0, hbar = 1.0;
    const auto levels = enumerate_levels(fr, hbar, e_max);
    std::size_t brute = 0;
    const double O1 = std::sqrt(fr.Omega1_sq), O2 = std::sqrt(fr.Omega2_sq);
    for (int a = 0; a < 12; ++a)
        for (int b = 0; b < 12; ++b)
            for (int c = 0; c < 12; ++c)
                for (int d = 0; d < 12; ++d)
                    for (int e = 0; e < 12; ++e)
                        for (int f = 0; f < 12; ++f) {
                            const double en =
                                hbar * (O1 * (a + b + c + 1.5) + O2 * (d + e + f + 1.5));
                            if (en <= e_max) ++brute;
                        }
    CHECK(levels.size() == brute);
}

TEST_CASE("energy below the ground state yields nothing") {
    const auto fr = plain_frame(1.0, 4.0);
    CHECK(enumerate_levels(fr, 1.0, 2.0).empty());
}

TEST_CASE("stationary ground state peaks positive at the origin") {
    const auto fr = plain_frame(1.0, 2.0);
    const cplx at0 = stationary_eigenfunction(LevelIndex{}, fr, 1.0, Vec3{}, Vec3{});
    CHECK(at0.real() > 0.0);
    CHECK(at0.imag() == 0.0);
    for (double d : {0.3, -0.5, 1.0}) {
        const cplx off =
            stationary_eigenfunction(LevelIndex{}, fr, 1.0, Vec3{d, 0, 0}, Vec3{0, d, 0});
        CHECK(std::abs(off) < at0.real());
    }
}

namespace {

// Norm of a product-form state with quanta only on the x axis, using the
// per-axis factorisation: |psi|^2 integrates to
// |psi(0)|^2 * prod_a iint |psi(x e_a, y e_a) / psi(0)|^2 dx dy.
template <class Psi>
double product_state_norm(Psi&& psi, double extent, int npts) {
    const cplx at0 = psi(Vec3{}, Vec3{});
    REQUIRE(std::abs(at0) > 1e-12);
    double total = std::norm(at0);
    for (int axis = 0; axis < 3; ++axis) {
        double integral = 0.0;
        const double h = 2.0 * extent / (npts - 1);
        for (int i = 0; i < npts; ++i)
            for (int j = 0; j < npts; ++j) {
                Vec3 X1{}, X2{};
                X1[axis] = -extent + h * i;
                X2[axis] = -extent + h * j;
                const double wi = (i == 0 || i == npts - 1) ? 0.5 : 1.0;
                const double wj = (j == 0 || j == npts - 1) ? 0.5 : 1.0;
                integral += wi * wj * std::norm(psi(X1, X2) / at0);
            }
        total *= integral * h * h;
    }
    return std::sqrt(total);
}

}  // namespace

TEST_CASE("stationary eigenfunctions are quadrature normalised") {
    // a coupled frame: rotation angle and distinct masses exercise the maps
    PhysicalSystem sys;
    sys.m1 = 1.0;
    sys.m2 = 2.0;
    sys.m3 = 1.5;
    sys.K21 = 1.0;
    sys.K31 = 0.6;
    sys.K32 = 1.1;
    sys.sigma1 = 0.2;
    const auto fr = normal_modes(to_jacobi(sys), sys.gauge);

    LevelIndex ground;
    auto psi_g = [&](const Vec3& X1, const Vec3& X2) {
        return stationary_eigenfunction(ground, fr, 1.0, X1, X2);
    };
    CHECK(product_state_norm(psi_g, 9.0, 501) == Approx(1.0).margin(1e-8));

    LevelIndex excited;
    excited.n1 = {2, 0, 0};
    auto psi_e = [&](const Vec3& X1, const Vec3& X2) {
        return stationary_eigenfunction(excited, fr, 1.0, X1, X2);
    };
    CHECK(product_state_norm(psi_e, 9.0, 501) == Approx(1.0).margin(1e-8));
}

TEST_CASE("stationary eigenfunction solves the decoupled grid Hamiltonian") {
    // per-mode residual || H phi - E phi || / || phi || on a fine grid
    for (double osq : {1.0, 2.0}) {
        const double omega = std::sqrt(osq);
        const int n = 3;
        const double E = (n + 0.5) * omega;
        const std::size_t pts = 32768;
        const double L = 7.0, dx = 2.0 * L / (pts - 1);
        std::vector<double> phi(pts);
        for (std::size_t i = 0; i < pts; ++i)
            phi[i] = sho_eigenfunction_1d(n, 1.0, omega, 1.0, -L + dx * i);
        double res2 = 0.0, nrm2 = 0.0;
        for (std::size_t i = 1; i + 1 < pts; ++i) {
            const double x = -L + dx * i;
            const double hphi = -0.5 * (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (dx * dx) +
                                0.5 * osq * x * x * phi[i];
            res2 += std::pow(hphi - E * phi[i], 2);
            nrm2 += phi[i] * phi[i];
        }
        CHECK(std::sqrt(res2 / nrm2) < 1e-6);
    }
}

TEST_CASE("zero drive reduces the driven form to the stationary one") {
    const auto fr = plain_frame(1.0, 2.0);
    const auto shifts = solve_frame_shifts(fr, 0.0, 2.0);
    const Vec3 X1{0.4, -0.2, 0.1}, X2{-0.3, 0.5, 0.0};
    LevelIndex idx;
    idx.n1 = {1, 0, 0};
    const cplx stat = stationary_eigenfunction(idx, fr, 1.0, X1, X2);
    const cplx driv = driven_eigenfunction(idx, fr, shifts, 1.0, X1, X2, 0.0);
    CHECK(std::abs(stat - driv) < 1e-12 * std::abs(stat));
}

TEST_CASE("constant drive shift approaches the static displacement") {
    // closed form: eta = -(F0/mu Omega^2) [1 - cos(Omega(t-t_mid))/cos(Omega tau/2)]
    const double F0 = 0.6, omega_sq = 1.0, mu = 1.0, t_b = 3.5;
    const auto sh = solve_shift([&](double) { return omega_sq; }, [&](double) { return F0; }, mu,
                                0.0, t_b);
    const double t_mid = 0.5 * t_b;
    for (double t : {0.4, 1.0, 1.9, 2.8, 3.2}) {
        const double expect =
            -(F0 / (mu * omega_sq)) *
            (1.0 -
             std::cos(std::sqrt(omega_sq) * (t - t_mid)) / std::cos(std::sqrt(omega_sq) * t_mid));
        CHECK(sh.eta(t) == Approx(expect).margin(1e-8));
    }
    // where the cosine term vanishes the shift equals the static displacement
    const double t_star = t_mid + 0.5 * pi / std::sqrt(omega_sq);
    CHECK(sh.eta(t_star) == Approx(-F0 / (mu * omega_sq)).margin(1e-8));
}

TEST_CASE("constant drive displaces the ground state Gaussian") {
    auto fr = plain_frame(1.0, 4.0);
    const double F0 = 0.6;
    fr.f1[0] = TimeFunction::constant(F0);  // F1 = c11 * f1 = (F0, 0, 0)
    const double t_b = 3.5;
    const auto shifts = solve_frame_shifts(fr, 0.0, t_b);
    const double t_star = 0.5 * t_b + 0.5 * pi;  // mode-1 shift equals -F0/(m Omega1^2)
    const auto phases = compute_drive_phases(fr, shifts, t_star);
    // |psi|^2 along the mode-1 x coordinate peaks at the classical displacement
    auto density = [&](double x) {
        return std::norm(driven_eigenfunction(LevelIndex{}, fr, shifts, phases, 1.0,
                                              Vec3{x, 0, 0}, Vec3{}, t_star));
    };
    const double d = F0 / 1.0;  // F0 / (m Omega1^2)
    CHECK(density(d) > density(d + 0.4));
    CHECK(density(d) > density(d - 0.4));
    // completing the square: the peak density matches the undisplaced maximum
    auto fr0 = plain_frame(1.0, 4.0);
    const double peak0 =
        std::norm(stationary_eigenfunction(LevelIndex{}, fr0, 1.0, Vec3{}, Vec3{}));
    CHECK(density(d) == Approx(peak0).epsilon(1e-6));
}

TEST_CASE("driven eigenfunctions stay normalised") {
    auto fr = plain_frame(1.0, 4.0);
    fr.f1[0] = TimeFunction::sinusoid(0.5, 0.9, 0.3);
    fr.f2[1] = TimeFunction::constant(0.4);
    const auto shifts = solve_frame_shifts(fr, 0.0, 2.0);
    for (double t : {0.0, 0.8, 1.7}) {
        const auto phases = compute_drive_phases(fr, shifts, t);
        auto psi = [&](const Vec3& X1, const Vec3& X2) {
            return driven_eigenfunction(LevelIndex{}, fr, shifts, phases, 1.0, X1, X2, t);
        };
        CHECK(product_state_norm(psi, 9.0, 501) == Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("mehler identity at zero coupling") {
    for (double a : {-1.0, 0.4})
        for (double b : {0.0, 1.3}) {
            const cplx closed = mehler_closed(a, b, 0.0);
            const cplx partial = mehler_partial(a, b, 0.0, 0);
            const double expect = std::exp(-(a * a + b * b));
            CHECK(std::abs(closed - expect) < 1e-14);
            CHECK(std::abs(partial - expect) < 1e-14);
        }
}

TEST_CASE("mehler closed form at the origin") {
    const cplx v = mehler_closed(0.0, 0.0, 0.5);
    CHECK(v.real() == Approx(1.0 / std::sqrt(0.75)).epsilon(1e-12));
    CHECK(v.imag() == 0.0);
    // the partial sum converges to it
    CHECK(std::abs(mehler_partial(0.0, 0.0, 0.5, 40) - v) < 1e-10);
}

TEST_CASE("mehler partial sums converge over the probe square") {
    for (double a = -2.0; a <= 2.0; a += 0.5)
        for (double b = -2.0; b <= 2.0; b += 0.5)
            CHECK(std::abs(mehler_closed(a, b, 0.5) - mehler_partial(a, b, 0.5, 60)) < 1e-8);
}

TEST_CASE("mehler rejects couplings on or outside the unit disc") {
    CHECK_THROWS_AS(mehler_closed(0.0, 0.0, cplx(1.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(mehler_closed(0.0, 0.0, cplx(0.8, 0.7)), std::invalid_argument);
}

TEST_CASE("spectral reconstruction residual at moderate temperature") {
    const auto fr = plain_frame(1.0, 1.0);
    CHECK(spectral_reconstruction_check(fr, 1.0, 1.0, 40) < 1e-10);
}

TEST_CASE("spectral reconstruction holds away from natural units") {
    auto fr = plain_frame(1.4, 2.2);
    fr.gauge.m = 1.6;
    CHECK(spectral_reconstruction_check(fr, 0.8, 1.2, 40) < 1e-10);
}

TEST_CASE("deep imaginary time needs the ground state only") {
    const auto fr = plain_frame(1.0, 1.0);
    CHECK(spectral_reconstruction_check(fr, 1.0, 10.0, 0) < 1e-4);
}

TEST_CASE("truncating everything leaves the first excited contribution") {
    const auto fr = plain_frame(1.0, 1.0);
    const double res = spectral_reconstruction_check(fr, 1.0, 1.0, 0);
    CHECK(res > 1e-3);  // bounded below by the n=1 term
}

TEST_CASE("spectral reconstruction residual decreases monotonically in N") {
    const auto fr = plain_frame(1.0, 2.0);
    double prev = 1e300;
    for (int N : {0, 2, 4, 8, 16, 32}) {
        const double res = spectral_reconstruction_check(fr, 1.0, 1.0, N);
        CHECK(res <= prev + 1e-14);
        prev = res;
    }
}
