#pragma once

// Auxiliary solutions carrying a time-dependent oscillator mode: the scale
// function s(t) with s'' + Omega^2(t) s = s^-3 and its phase alpha(t) with
// alpha' s^2 = 1, plus the classical shift eta(t) absorbing a drive through
// eta'' + Omega^2(t) eta = -theta/mu with both endpoints pinned to zero.

#include "triprop/numerics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace triprop {

using ScalarTimeFn = std::function<double(double)>;

struct ErmakovSolution {
    OdeSolution<3> sol;  // state: (s, s_dot, alpha)
    ScalarTimeFn omega_sq;

    double t_a() const { return sol.t0; }
    double t_b() const { return sol.t_end(); }
    double s(double t) const { return sol.at(t)[0]; }
    double s_dot(double t) const { return sol.at(t)[1]; }
    double alpha(double t) const { return sol.at(t)[2]; }
    double alpha_dot(double t) const {
        const double sv = s(t);
        return 1.0 / (sv * sv);
    }
    // total phase advanced over the window
    double delta() const { return sol.y.back()[2] - sol.y.front()[2]; }
};

// Integrates the scale/phase pair from rest at the instantaneous frequency:
// s(t_a) = Omega(t_a)^(-1/2), s'(t_a) = 0. A constant frequency then gives
// the exact fixed point s = Omega^(-1/2), alpha = Omega (t - t_a).
inline ErmakovSolution solve_ermakov(ScalarTimeFn omega_sq, double t_a, double t_b,
                                     double rel_tol = 1e-10, std::size_t initial_steps = 64) {
    const double osq_a = omega_sq(t_a);
    if (!(osq_a > 0.0))
        throw std::invalid_argument("solve_ermakov: Omega^2 must be positive at the start");
    auto deriv = [&omega_sq](double t, const std::array<double, 3>& y) {
        const double s = y[0];
        const double s3 = s * s * s;
        return std::array<double, 3>{y[1], -omega_sq(t) * y[0] + 1.0 / s3, 1.0 / (s * s)};
    };
    ErmakovSolution out;
    out.sol = integrate_ode<3>(deriv, {std::pow(osq_a, -0.25), 0.0, 0.0}, t_a, t_b, rel_tol,
                               initial_steps);
    for (const auto& y : out.sol.y) {
        if (!(y[0] > 0.0) || !std::isfinite(y[0]) || !std::isfinite(y[1]))
            throw std::runtime_error("solve_ermakov: scale function collapsed");
    }
    out.omega_sq = std::move(omega_sq);
    return out;
}

struct ModeShift {
    OdeSolution<2> sol;  // state: (eta, eta_dot)

    double t_a() const { return sol.t0; }
    double t_b() const { return sol.t_end(); }
    double eta(double t) const { return sol.at(t)[0]; }
    double eta_dot(double t) const { return sol.at(t)[1]; }
    bool zero = false;  // fast path when the drive vanishes identically
};

// Two-point solution of eta'' + Omega^2(t) eta = -theta/mu with
// eta(t_a) = eta(t_b) = 0, via shooting on the homogeneous solution. The
// boundary problem is singular exactly at the focal times of the mode.
inline ModeShift solve_shift(const ScalarTimeFn& omega_sq, const ScalarTimeFn& theta, double mu,
                             double t_a, double t_b, double rel_tol = 1e-10,
                             std::size_t initial_steps = 64) {
    // combined state: particular (p, p') from rest plus homogeneous (h, h')
    auto deriv = [&](double t, const std::array<double, 4>& y) {
        const double osq = omega_sq(t);
        return std::array<double, 4>{y[1], -osq * y[0] - theta(t) / mu, y[3], -osq * y[2]};
    };
    const auto both = integrate_ode<4>(deriv, {0.0, 0.0, 0.0, 1.0}, t_a, t_b, rel_tol,
                                       initial_steps);
    double h_scale = 0.0;
    for (const auto& y : both.y) h_scale = std::max(h_scale, std::abs(y[2]));
    const double h_end = both.y.back()[2];
    if (std::abs(h_end) < 1e-8 * h_scale)
        throw CausticError("solve_shift: boundary problem singular (focal time)");
    const double c = -both.y.back()[0] / h_end;
    ModeShift out;
    out.sol.t0 = both.t0;
    out.sol.dt = both.dt;
    out.sol.y.reserve(both.y.size());
    out.sol.ydot.reserve(both.y.size());
    for (std::size_t i = 0; i < both.y.size(); ++i) {
        out.sol.y.push_back({both.y[i][0] + c * both.y[i][2], both.y[i][1] + c * both.y[i][3]});
        out.sol.ydot.push_back(
            {both.ydot[i][0] + c * both.ydot[i][2], both.ydot[i][1] + c * both.ydot[i][3]});
    }
    return out;
}

// Shift solution for an identically-zero drive.
inline ModeShift zero_shift(double t_a, double t_b) {
    ModeShift out;
    out.zero = true;
    out.sol.t0 = t_a;
    out.sol.dt = t_b - t_a;
    out.sol.y = {{0.0, 0.0}, {0.0, 0.0}};
    out.sol.ydot = {{0.0, 0.0}, {0.0, 0.0}};
    return out;
}

// Phase integral int theta(t) eta(t) dt over [t_a, t_upper].
inline double shift_drive_phase_integral(const ModeShift& shift, const ScalarTimeFn& theta,
                                         double t_upper, double quad_tol = 1e-10) {
    if (shift.zero) return 0.0;
    return integrate([&](double t) { return theta(t) * shift.eta(t); }, shift.t_a(), t_upper,
                     quad_tol);
}

}  // namespace triprop
