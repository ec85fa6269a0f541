#pragma once

// Discrete spectrum and eigenfunctions of the bound modes: Hermite machinery,
// level enumeration with degeneracy clustering, stationary and driven
// Hermite-Gaussian eigenfunctions, the Mehler summation identity and the
// spectral reconstruction residual connecting kernels to spectra.

#include "triprop/ermakov.hpp"
#include "triprop/numerics.hpp"
#include "triprop/propagator.hpp"
#include "triprop/transform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace triprop {

// Physicists' Hermite polynomial by the three-term recurrence.
inline double hermite_eval(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_eval: negative order");
    if (n > 200) throw std::invalid_argument("hermite_eval: order too large, use the scaled form");
    double hm = 1.0, h = 2.0 * x;
    if (n == 0) return hm;
    for (int k = 1; k < n; ++k) {
        const double hn = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = hn;
    }
    return h;
}

// H_n(x) / sqrt(2^n n!), stable against overflow for large n.
inline double hermite_scaled(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_scaled: negative order");
    double hm = 1.0, h = std::sqrt(2.0) * x;
    if (n == 0) return hm;
    for (int k = 1; k < n; ++k) {
        const double hn =
            x * std::sqrt(2.0 / (k + 1.0)) * h - std::sqrt(k / (k + 1.0)) * hm;
        hm = h;
        h = hn;
    }
    return h;
}

// Normalised 1-D oscillator eigenfunction (real, mass m, frequency omega).
inline double sho_eigenfunction_1d(int n, double m, double omega, double hbar, double y) {
    const double xi = std::sqrt(m * omega / hbar) * y;
    return std::pow(m * omega / (pi * hbar), 0.25) * hermite_scaled(n, xi) *
           std::exp(-0.5 * xi * xi);
}

// ---- levels ------------------------------------------------------------------

struct LevelIndex {
    std::array<int, 3> n1{};  // quanta of the lower mode along x, y, z
    std::array<int, 3> n2{};

    int N1() const { return n1[0] + n1[1] + n1[2]; }
    int N2() const { return n2[0] + n2[1] + n2[2]; }
};

struct Level {
    LevelIndex index;
    double energy = 0.0;
    int degeneracy = 1;
};

inline void require_bound(const NormalModeFrame& frame) {
    if (frame.mode1_inverted || frame.mode2_inverted || frame.Omega1_sq == 0.0 ||
        frame.Omega2_sq == 0.0)
        throw std::invalid_argument("no discrete spectrum: mode not bound");
}

inline double energy_level(const LevelIndex& idx, const NormalModeFrame& frame, double hbar) {
    require_bound(frame);
    for (int a = 0; a < 3; ++a)
        if (idx.n1[a] < 0 || idx.n2[a] < 0)
            throw std::invalid_argument("energy_level: negative quantum number");
    const double O1 = std::sqrt(frame.Omega1_sq), O2 = std::sqrt(frame.Omega2_sq);
    return hbar * (O1 * (idx.N1() + 1.5) + O2 * (idx.N2() + 1.5));
}

// Number of ways to put N quanta into three axes: C(N+2, 2).
inline std::int64_t axis_compositions(int N) {
    return static_cast<std::int64_t>(N + 1) * (N + 2) / 2;
}

// All levels up to e_max, sorted by energy and clustered into degenerate
// groups within `tol` (default picks a scale from the frame).
inline std::vector<Level> enumerate_levels(const NormalModeFrame& frame, double hbar, double e_max,
                                           double tol = -1.0) {
    require_bound(frame);
    const double O1 = std::sqrt(frame.Omega1_sq), O2 = std::sqrt(frame.Omega2_sq);
    if (tol < 0.0) tol = 1e-9 * hbar * std::max(O1, O2);
    std::vector<Level> out;
    const double ground = hbar * 1.5 * (O1 + O2);
    if (e_max < ground) return out;
    {
        // cheap size estimate before materialising the list
        std::int64_t total = 0;
        for (int N1 = 0; ground + hbar * O1 * N1 <= e_max; ++N1)
            for (int N2 = 0; ground + hbar * (O1 * N1 + O2 * N2) <= e_max; ++N2) {
                total += axis_compositions(N1) * axis_compositions(N2);
                if (total > 10'000'000)
                    throw std::invalid_argument(
                        "enumerate_levels: energy cap selects more than 1e7 states");
            }
    }
    const int n1max = static_cast<int>((e_max - ground) / (hbar * O1));
    for (int nx = 0; nx <= n1max; ++nx)
        for (int ny = 0; nx + ny <= n1max; ++ny)
            for (int nz = 0; nx + ny + nz <= n1max; ++nz) {
                const double e1 = hbar * O1 * (nx + ny + nz + 1.5) + hbar * O2 * 1.5;
                if (e1 > e_max + tol) continue;
                const int n2max = static_cast<int>((e_max - e1) / (hbar * O2) + 1);
                for (int mx = 0; mx <= n2max; ++mx)
                    for (int my = 0; mx + my <= n2max; ++my)
                        for (int mz = 0; mx + my + mz <= n2max; ++mz) {
                            Level lv;
                            lv.index.n1 = {nx, ny, nz};
                            lv.index.n2 = {mx, my, mz};
                            lv.energy = e1 + hbar * O2 * (mx + my + mz);
                            if (lv.energy <= e_max) out.push_back(lv);
                        }
            }
    std::sort(out.begin(), out.end(), [](const Level& a, const Level& b) {
        return a.energy < b.energy;
    });
    // degenerate clusters: consecutive levels within tol of the cluster head
    std::size_t head = 0;
    for (std::size_t i = 1; i <= out.size(); ++i) {
        if (i == out.size() || out[i].energy - out[head].energy > tol) {
            for (std::size_t j = head; j < i; ++j)
                out[j].degeneracy = static_cast<int>(i - head);
            head = i;
        }
    }
    return out;
}

// ---- stationary eigenfunctions -------------------------------------------------

/**
 * Undriven eigenfunction of the two bound modes, as a function of the Jacobi
 * vectors. Each Cartesian axis contributes a product of two Hermite-Gaussian
 * factors in the rotated mode coordinates; the prefactor normalises the
 * function against the Jacobi volume element d^3X1 d^3X2.
 */
inline cplx stationary_eigenfunction(const LevelIndex& idx, const NormalModeFrame& frame,
                                     double hbar, const Vec3& X1, const Vec3& X2) {
    require_bound(frame);
    if (frame.driven())
        throw std::invalid_argument("stationary_eigenfunction: drives present, use the driven form");
    const double m = frame.gauge.m;
    const double O1 = std::sqrt(frame.Omega1_sq), O2 = std::sqrt(frame.Omega2_sq);
    const auto mp = mode_coordinates(frame, X1, X2);
    double value = std::pow(std::sqrt(frame.M1 * frame.M2) / m, 1.5);
    for (int a = 0; a < 3; ++a) {
        value *= sho_eigenfunction_1d(idx.n1[a], m, O1, hbar, mp.Y1[a]);
        value *= sho_eigenfunction_1d(idx.n2[a], m, O2, hbar, mp.Y2[a]);
    }
    return value;
}

// ---- driven eigenfunctions ------------------------------------------------------

// Shift solutions for both modes over a fixed evolution window.
struct ModeShiftSet {
    std::array<ModeShift, 3> mode1, mode2;  // one per Cartesian component
    double t_a = 0.0, t_b = 1.0;
};

inline ModeShiftSet solve_frame_shifts(const NormalModeFrame& frame, double t_a, double t_b) {
    require_bound(frame);
    const double m = frame.gauge.m;
    ModeShiftSet out;
    out.t_a = t_a;
    out.t_b = t_b;
    if (!frame.driven()) {
        for (int a = 0; a < 3; ++a) out.mode1[a] = out.mode2[a] = zero_shift(t_a, t_b);
        return out;
    }
    for (int a = 0; a < 3; ++a) {
        auto F1a = [&frame, a](double t) { return frame.F1(t)[a]; };
        auto F2a = [&frame, a](double t) { return frame.F2(t)[a]; };
        out.mode1[a] =
            solve_shift([&frame](double) { return frame.Omega1_sq; }, F1a, m, t_a, t_b);
        out.mode2[a] =
            solve_shift([&frame](double) { return frame.Omega2_sq; }, F2a, m, t_a, t_b);
    }
    return out;
}

// Accumulated drive phases int_{t_a}^t theta eta, one per mode and component.
struct DrivePhases {
    std::array<double, 3> mode1{}, mode2{};
    double t = 0.0;
};

inline DrivePhases compute_drive_phases(const NormalModeFrame& frame, const ModeShiftSet& shifts,
                                        double t) {
    DrivePhases ph;
    ph.t = t;
    for (int a = 0; a < 3; ++a) {
        ph.mode1[a] = shift_drive_phase_integral(
            shifts.mode1[a], [&frame, a](double s) { return frame.F1(s)[a]; }, t);
        ph.mode2[a] = shift_drive_phase_integral(
            shifts.mode2[a], [&frame, a](double s) { return frame.F2(s)[a]; }, t);
    }
    return ph;
}

namespace detail {

// One driven 1-D factor: translated Hermite-Gaussian with the shift phase and
// the oscillator time phase.
inline cplx driven_factor_1d(int n, double m, double omega, double hbar, double x,
                             const ModeShift& sh, double drive_phase, double t, double t_a) {
    const double eta = sh.zero ? 0.0 : sh.eta(t);
    const double eta_dot = sh.zero ? 0.0 : sh.eta_dot(t);
    const double y = x + eta;
    const double base = sho_eigenfunction_1d(n, m, omega, hbar, y);
    const double W = (m / hbar) * (0.5 * eta * eta_dot - y * eta_dot);
    const double phase = W - 0.5 * drive_phase / hbar - (n + 0.5) * omega * (t - t_a);
    return base * std::exp(cplx(0.0, phase));
}

}  // namespace detail

/**
 * Eigenstate-like solution of the driven system: each mode factor is the
 * stationary Hermite-Gaussian displaced by the classical shift eta, carrying
 * the shift boundary phase, the accumulated drive phase and the oscillator
 * time phase. With zero drives and t = t_a it reduces to the stationary
 * eigenfunction.
 */
inline cplx driven_eigenfunction(const LevelIndex& idx, const NormalModeFrame& frame,
                                 const ModeShiftSet& shifts, const DrivePhases& phases,
                                 double hbar, const Vec3& X1, const Vec3& X2, double t) {
    require_bound(frame);
    const double m = frame.gauge.m;
    const double O1 = std::sqrt(frame.Omega1_sq), O2 = std::sqrt(frame.Omega2_sq);
    const auto mp = mode_coordinates(frame, X1, X2);
    cplx value = std::pow(std::sqrt(frame.M1 * frame.M2) / m, 1.5);
    for (int a = 0; a < 3; ++a) {
        value *= detail::driven_factor_1d(idx.n1[a], m, O1, hbar, mp.Y1[a], shifts.mode1[a],
                                          phases.mode1[a], t, shifts.t_a);
        value *= detail::driven_factor_1d(idx.n2[a], m, O2, hbar, mp.Y2[a], shifts.mode2[a],
                                          phases.mode2[a], t, shifts.t_a);
    }
    return value;
}

inline cplx driven_eigenfunction(const LevelIndex& idx, const NormalModeFrame& frame,
                                 const ModeShiftSet& shifts, double hbar, const Vec3& X1,
                                 const Vec3& X2, double t) {
    return driven_eigenfunction(idx, frame, shifts, compute_drive_phases(frame, shifts, t), hbar,
                                X1, X2, t);
}

// ---- Mehler identity -------------------------------------------------------------

// Closed form of sum_n c^n/(2^n n!) H_n(a) H_n(b) exp(-(a^2+b^2)), |c| < 1.
inline cplx mehler_closed(double a, double b, cplx c) {
    if (!(std::abs(c) < 1.0)) throw std::invalid_argument("mehler_closed: needs |c| < 1");
    const cplx one_m_c2 = 1.0 - c * c;
    return std::exp(-(a * a + b * b - 2.0 * a * b * c) / one_m_c2) / std::sqrt(one_m_c2);
}

inline cplx mehler_partial(double a, double b, cplx c, int N) {
    if (N < 0) throw std::invalid_argument("mehler_partial: negative truncation");
    cplx sum = 0.0;
    cplx cn = 1.0;
    for (int n = 0; n <= N; ++n) {
        sum += cn * hermite_scaled(n, a) * hermite_scaled(n, b);
        cn *= c;
    }
    return sum * std::exp(-(a * a + b * b));
}

// ---- spectral reconstruction -------------------------------------------------------

/**
 * Residual between the imaginary-time oscillator kernel and the truncated
 * eigenfunction sum sum_{n<=N} psi_n(y') psi_n(y'') exp(-beta E_n), probed on
 * a grid for each bound mode. Both sides are computed through unrelated code
 * paths (trigonometric continuation vs Hermite recurrence).
 */
inline double spectral_reconstruction_check(const NormalModeFrame& frame, double hbar,
                                            double beta, int N) {
    require_bound(frame);
    if (frame.driven())
        throw std::invalid_argument("spectral_reconstruction_check: undriven frames only");
    const double m = frame.gauge.m;
    double worst = 0.0;
    for (double omega_sq : {frame.Omega1_sq, frame.Omega2_sq}) {
        const double omega = std::sqrt(omega_sq);
        const double scale = std::sqrt(hbar / (m * omega));
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j) {
                const double yp = 0.55 * scale * i;
                const double ypp = 0.55 * scale * j;
                double sum = 0.0;
                for (int n = 0; n <= N; ++n) {
                    sum += sho_eigenfunction_1d(n, m, omega, hbar, yp) *
                           sho_eigenfunction_1d(n, m, omega, hbar, ypp) *
                           std::exp(-beta * hbar * omega * (n + 0.5));
                }
                const cplx kernel =
                    sho_kernel_1d_euclidean(m, omega_sq, yp, ypp, beta * hbar, hbar);
                worst = std::max(worst, std::abs(kernel - sum));
            }
    }
    return worst;
}

}  // namespace triprop
