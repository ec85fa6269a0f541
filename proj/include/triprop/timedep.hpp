#pragma once

// Time-dependent couplings under the solvability constraints: equal reduced
// masses (fixing the gauge ratio a/b) and equal pair frequencies. A fixed
// quarter-turn rotation then decouples the two relative coordinates into
// oscillators with time-dependent frequencies omega^2(t) -/+ lambda(t)/mu,
// each solved exactly through the scale/phase pair of ermakov.hpp. Kernels,
// the composite propagator and the discrete wavefunctions follow.

#include "triprop/ermakov.hpp"
#include "triprop/model.hpp"
#include "triprop/propagator.hpp"
#include "triprop/spectrum.hpp"
#include "triprop/transform.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace triprop {

struct TimeDependentSystem {
    double m1 = 1.0, m2 = 1.0, m3 = 1.0;
    double hbar = 1.0;
    double a = 1.0, b = 1.0;  // a is fixed by the equal-mass constraint, b is free
    double mu = 0.0;          // common reduced mass of both relative coordinates
    double M = 0.0;
    double measure = 1.0;  // (a b)^3
    TimeFunction K21, K31, K32, sigma1, sigma2, sigma3;
    DriveVector f1{}, f2{};  // drives mapped onto the relative coordinates

    double omega_sq(double t) const {
        return detail::jacobi_couplings(m1, m2, m3, K21(t), K31(t), K32(t), sigma1(t), sigma2(t),
                                        sigma3(t), a, b)
            .omega1_sq;
    }

    double lambda(double t) const {
        return detail::jacobi_couplings(m1, m2, m3, K21(t), K31(t), K32(t), sigma1(t), sigma2(t),
                                        sigma3(t), a, b)
            .lambda;
    }

    // mode 1 lives on (X1 - X2)/sqrt2 with omega^2 - lambda/mu,
    // mode 2 on (X1 + X2)/sqrt2 with omega^2 + lambda/mu
    double mode_omega_sq(int mode, double t) const {
        const double l = lambda(t) / mu;
        return omega_sq(t) + (mode == 1 ? -l : +l);
    }

    double mode_theta(int mode, int axis, double t) const {
        const double v1 = f1[axis](t), v2 = f2[axis](t);
        return (mode == 1 ? v1 - v2 : v1 + v2) / std::sqrt(2.0);
    }

    bool driven() const { return !(drive_is_zero(f1) && drive_is_zero(f2)); }

    // residual of the equal-frequency constraint at time t (relative)
    double constraint_residual(double t) const {
        const auto c = detail::jacobi_couplings(m1, m2, m3, K21(t), K31(t), K32(t), sigma1(t),
                                                sigma2(t), sigma3(t), a, b);
        const double scale = std::max({std::abs(c.omega1_sq), std::abs(c.omega2_sq), 1.0});
        return std::abs(c.omega1_sq - c.omega2_sq) / scale;
    }
};

// Verifies the frequency constraint on sampled times; throws naming the first
// offending instant.
inline void check_td_constraints(const TimeDependentSystem& tds, double t_a, double t_b,
                                 double tol = 1e-10) {
    for (const auto* f : {&tds.K21, &tds.K31, &tds.K32, &tds.sigma1, &tds.sigma2, &tds.sigma3})
        require_covers(*f, t_a, t_b, "coupling");
    require_covers(tds.f1, t_a, t_b, "drive");
    require_covers(tds.f2, t_a, t_b, "drive");
    const int samples = 65;
    for (int i = 0; i < samples; ++i) {
        const double t = t_a + (t_b - t_a) * static_cast<double>(i) / (samples - 1);
        const double r = tds.constraint_residual(t);
        if (r > tol)
            throw std::invalid_argument(
                "time-dependent frequencies differ at t = " + std::to_string(t) +
                " (relative residual " + std::to_string(r) + ")");
    }
}

namespace detail {

inline TimeFunction parse_td_scalar(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) return TimeFunction{};
    return parse_scalar_drive(doc.at(key));
}

}  // namespace detail

/**
 * Builds the constrained time-dependent system from a configuration document.
 * Couplings take the scalar drive-spec format ({"const":..} | {"sin":..} |
 * {"table":..}); masses stay constant; only gauge b is free, a follows from
 * the equal-mass condition. The frequency constraint is checked on the given
 * window.
 */
inline TimeDependentSystem build_td_system(const nlohmann::json& doc, double t_a, double t_b,
                                           double tol = 1e-10) {
    TimeDependentSystem tds;
    try {
        const auto masses = doc.at("masses").get<std::vector<double>>();
        if (masses.size() != 3) throw std::invalid_argument("masses must have 3 entries");
        tds.m1 = masses[0];
        tds.m2 = masses[1];
        tds.m3 = masses[2];
        if (doc.contains("K")) {
            const auto& K = doc.at("K");
            tds.K21 = detail::parse_td_scalar(K, "K21");
            tds.K31 = detail::parse_td_scalar(K, "K31");
            tds.K32 = detail::parse_td_scalar(K, "K32");
        }
        if (doc.contains("sigma")) {
            const auto& s = doc.at("sigma");
            if (!s.is_array() || s.size() != 3)
                throw std::invalid_argument("sigma must be an array of 3 scalar specs");
            tds.sigma1 = detail::parse_scalar_drive(s[0]);
            tds.sigma2 = detail::parse_scalar_drive(s[1]);
            tds.sigma3 = detail::parse_scalar_drive(s[2]);
        }
        tds.hbar = doc.value("hbar", 1.0);
        tds.b = doc.contains("gauge") ? doc.at("gauge").value("b", 1.0) : 1.0;
        DriveVector g1{}, g2{}, g3{};
        if (doc.contains("drives")) {
            const auto& d = doc.at("drives");
            if (d.contains("g1")) g1 = detail::parse_drive_vector(d.at("g1"));
            if (d.contains("g2")) g2 = detail::parse_drive_vector(d.at("g2"));
            if (d.contains("g3")) g3 = detail::parse_drive_vector(d.at("g3"));
        }
        if (!(tds.m1 > 0.0) || !(tds.m2 > 0.0) || !(tds.m3 > 0.0))
            throw std::invalid_argument("non-positive mass");
        if (!(tds.hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
        if (!(tds.b > 0.0)) throw std::invalid_argument("gauge constant b must be positive");
        const double m12 = tds.m1 + tds.m2;
        tds.M = m12 + tds.m3;
        tds.a = tds.b * std::sqrt(tds.m1 * tds.m2 * tds.M / (tds.m3 * m12 * m12));
        tds.mu = tds.m1 * tds.m2 / (tds.a * tds.a * m12);
        tds.measure = std::pow(tds.a * tds.b, 3);
        std::tie(tds.f1, tds.f2) = detail::map_drives(tds.m1, tds.m2, tds.a, tds.b, g1, g2, g3);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    check_td_constraints(tds, t_a, t_b, tol);
    return tds;
}

inline TimeDependentSystem build_td_system(const std::string& text, double t_a, double t_b,
                                           double tol = 1e-10) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    return build_td_system(doc, t_a, t_b, tol);
}

// ---- one time-dependent mode kernel -------------------------------------------

/**
 * 1-D propagator of a mode with time-dependent frequency and drive, written
 * in terms of the scale function s, the phase alpha and the endpoint-pinned
 * shift eta. With a constant frequency it reduces exactly to the familiar
 * oscillator kernel, and the tau -> 0 limit is free. The phase across focal
 * points (sin of the elapsed phase vanishing) continues with a quarter turn
 * per crossing, matching the constant-frequency convention.
 */
template <class Y = double>
KernelValue td_mode_kernel_1d(const ErmakovSolution& erm, const ModeShift& shift, double mu,
                              double hbar, Y y_from, Y y_to, double drive_phase_integral) {
    const double delta = erm.delta();
    const double sd = std::sin(delta);
    if (std::abs(sd) < caustic_tolerance && delta > 0.5 * pi) return KernelValue::caustic();
    const double t_a = erm.t_a(), t_b = erm.t_b();
    const double s_a = erm.s(t_a), s_b = erm.s(t_b);
    const double sdot_a = erm.s_dot(t_a), sdot_b = erm.s_dot(t_b);
    const double ad_a = 1.0 / (s_a * s_a), ad_b = 1.0 / (s_b * s_b);
    const double etad_a = shift.zero ? 0.0 : shift.eta_dot(t_a);
    const double etad_b = shift.zero ? 0.0 : shift.eta_dot(t_b);

    KernelValue kv;
    kv.branch_index = static_cast<int>(std::floor(delta / pi));
    const double pref_mod =
        std::sqrt(mu * std::sqrt(ad_a * ad_b) / (2.0 * pi * hbar * std::abs(sd)));
    const double pref_phase = -(pi / 4.0 + 0.5 * pi * kv.branch_index);
    const cplx boundary =
        cplx(0.0, mu / (2.0 * hbar)) *
        ((sdot_b / s_b) * y_to * y_to - (sdot_a / s_a) * y_from * y_from -
         2.0 * etad_b * y_to + 2.0 * etad_a * y_from);
    const cplx main = cplx(0.0, mu / (2.0 * hbar * sd)) *
                      ((ad_b * y_to * y_to + ad_a * y_from * y_from) * std::cos(delta) -
                       2.0 * std::sqrt(ad_a * ad_b) * y_from * y_to);
    const cplx drive = cplx(0.0, -drive_phase_integral / (2.0 * hbar));
    kv.amplitude = pref_mod * std::exp(cplx(0.0, pref_phase) + boundary + main + drive);
    return kv;
}

inline KernelValue td_mode_kernel_1d(const ErmakovSolution& erm, const ModeShift& shift, double mu,
                                     double hbar, double y_from, double y_to,
                                     const ScalarTimeFn& theta) {
    const double phase = shift_drive_phase_integral(shift, theta, erm.t_b());
    return td_mode_kernel_1d(erm, shift, mu, hbar, y_from, y_to, phase);
}

// ---- prepared evolution of both modes ------------------------------------------

struct TdMode {
    bool ermakov_route = true;  // constant (free/inverted) modes bypass the scale solver
    double omega_sq0 = 0.0;
    bool driven = false;
    ErmakovSolution erm;
    std::array<ModeShift, 3> shifts{};
    std::array<double, 3> drive_phase{};      // int theta eta over the full window
    std::array<DriveIntegrals1D, 3> di{};     // constant-route drive integrals
};

inline TdMode solve_td_mode(const TimeDependentSystem& tds, int mode, double t_a, double t_b) {
    TdMode out;
    out.omega_sq0 = tds.mode_omega_sq(mode, t_a);
    out.driven = tds.driven();
    auto osq = [&tds, mode](double t) { return tds.mode_omega_sq(mode, t); };
    // constancy probe decides whether the mode needs the scale machinery at all
    double vmax = 0.0, dev = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double v = osq(t_a + (t_b - t_a) * i / 32.0);
        vmax = std::max(vmax, std::abs(v));
        dev = std::max(dev, std::abs(v - out.omega_sq0));
    }
    const bool constant = dev <= 1e-12 * std::max(vmax, 1.0);
    if (out.omega_sq0 > 0.0) {
        out.erm = solve_ermakov(osq, t_a, t_b);
        for (int axis = 0; axis < 3; ++axis) {
            if (!out.driven) {
                out.shifts[axis] = zero_shift(t_a, t_b);
                continue;
            }
            auto theta = [&tds, mode, axis](double t) { return tds.mode_theta(mode, axis, t); };
            out.shifts[axis] = solve_shift(osq, theta, tds.mu, t_a, t_b);
            out.drive_phase[axis] = shift_drive_phase_integral(out.shifts[axis], theta, t_b);
        }
        return out;
    }
    if (!constant)
        throw std::invalid_argument(
            "time-dependent mode must start with a positive squared frequency");
    // constant free or inverted mode: handled by the closed constant forms
    out.ermakov_route = false;
    if (out.driven) {
        for (int axis = 0; axis < 3; ++axis) {
            auto theta = [&tds, mode, axis](double t) { return tds.mode_theta(mode, axis, t); };
            out.di[axis] = compute_drive_integrals_1d(out.omega_sq0, theta, t_a, t_b);
        }
    }
    return out;
}

struct TdEvolution {
    double t_a = 0.0, t_b = 1.0;
    TdMode mode1, mode2;
};

inline TdEvolution solve_td_evolution(const TimeDependentSystem& tds, double t_a, double t_b) {
    if (!(t_b > t_a)) throw std::invalid_argument("t_b must exceed t_a");
    TdEvolution ev;
    ev.t_a = t_a;
    ev.t_b = t_b;
    ev.mode1 = solve_td_mode(tds, 1, t_a, t_b);
    ev.mode2 = solve_td_mode(tds, 2, t_a, t_b);
    return ev;
}

namespace detail {

template <class Y>
KernelValue td_mode_factor(const TdMode& mode, double mu, double hbar, double tau, Y y_from,
                           Y y_to, int axis) {
    if (mode.ermakov_route)
        return td_mode_kernel_1d(mode.erm, mode.shifts[axis], mu, hbar, y_from, y_to,
                                 mode.drive_phase[axis]);
    if (mode.driven)
        return driven_kernel_1d(mu, mode.omega_sq0, mode.di[axis], y_from, y_to, tau, hbar);
    return sho_kernel_1d(mu, mode.omega_sq0, y_from, y_to, tau, hbar);
}

}  // namespace detail

// Rotated relative coordinates used by the decoupled time-dependent modes.
struct TdModePoint {
    Vec3 x1, x2;
};

inline TdModePoint td_mode_coordinates(const Vec3& X1, const Vec3& X2) {
    TdModePoint p;
    const double inv = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 3; ++i) {
        p.x1[i] = inv * (X1[i] - X2[i]);
        p.x2[i] = inv * (X1[i] + X2[i]);
    }
    return p;
}

inline JacobiPoint td_jacobi_coordinates(const TimeDependentSystem& tds, const Vec3& r1,
                                         const Vec3& r2, const Vec3& r3) {
    PhysicalSystem sys;
    sys.m1 = tds.m1;
    sys.m2 = tds.m2;
    sys.m3 = tds.m3;
    sys.gauge = {tds.a, tds.b, 1.0};
    return jacobi_coordinates(sys, r1, r2, r3);
}

/**
 * Composite propagator of the constrained time-dependent system in physical
 * coordinates: free centre-of-mass kernel times six 1-D mode factors, times
 * the (a b)^3 coordinate measure (the quarter-turn rotation is measure
 * preserving). Equals the constant-coupling composite kernel whenever the
 * couplings happen to be constant.
 */
inline KernelValue td_three_body_kernel(const TimeDependentSystem& tds, const Endpoints& ep) {
    check_td_constraints(tds, ep.t_a, ep.t_b);
    const auto ev = solve_td_evolution(tds, ep.t_a, ep.t_b);
    const auto pa = td_jacobi_coordinates(tds, ep.r_initial[0], ep.r_initial[1], ep.r_initial[2]);
    const auto pb = td_jacobi_coordinates(tds, ep.r_final[0], ep.r_final[1], ep.r_final[2]);
    const auto xa = td_mode_coordinates(pa.X1, pa.X2);
    const auto xb = td_mode_coordinates(pb.X1, pb.X2);
    const double tau = ep.tau();
    KernelValue kv;
    kv.amplitude = tds.measure;
    for (int axis = 0; axis < 3; ++axis) {
        const auto k1 =
            detail::td_mode_factor(ev.mode1, tds.mu, tds.hbar, tau, xa.x1[axis], xb.x1[axis], axis);
        const auto k2 =
            detail::td_mode_factor(ev.mode2, tds.mu, tds.hbar, tau, xa.x2[axis], xb.x2[axis], axis);
        if (k1.caustic_flag || k2.caustic_flag) return KernelValue::caustic();
        kv.amplitude *= k1.amplitude * k2.amplitude;
        kv.branch_index += k1.branch_index + k2.branch_index;
    }
    const auto k3 = free_kernel(tds.M, pa.X3, pb.X3, tau, tds.hbar, 3);
    kv.amplitude *= k3.amplitude;
    return kv;
}

// ---- discrete wavefunctions ------------------------------------------------------

// One 1-D mode factor of the discrete wavefunctions: Hermite-Gaussian in the
// scaled coordinate y/s with the scale phase, the shift translation and its
// phases, and the elapsed-phase time factor. Solves the 1-D equation
// i hbar dpsi/dt = [-hbar^2/(2 mu) d^2/dx^2 + mu Omega^2(t) x^2/2 - theta x] psi.
inline cplx td_mode_wavefunction_1d(int n, double mu, double hbar, double x, double t,
                                    const ErmakovSolution& erm, const ModeShift& sh,
                                    double drive_phase) {
    const double s = erm.s(t);
    const double sdot = erm.s_dot(t);
    const double alpha = erm.alpha(t);
    const double eta = sh.zero ? 0.0 : sh.eta(t);
    const double eta_dot = sh.zero ? 0.0 : sh.eta_dot(t);
    const double y = x + eta;
    const double xi = std::sqrt(mu / hbar) * y / s;
    const double base = std::pow(mu / (pi * hbar), 0.25) / std::sqrt(s) * hermite_scaled(n, xi) *
                        std::exp(-0.5 * xi * xi);
    const double phase = mu / (2.0 * hbar) * (sdot / s) * y * y +
                         (mu / hbar) * (0.5 * eta * eta_dot - y * eta_dot) -
                         0.5 * drive_phase / hbar - (n + 0.5) * alpha;
    return base * std::exp(cplx(0.0, phase));
}

// Accumulated drive phases up to time t for both modes.
struct TdDrivePhases {
    std::array<double, 3> mode1{}, mode2{};
    double t = 0.0;
};

inline TdDrivePhases compute_td_drive_phases(const TimeDependentSystem& tds, const TdEvolution& ev,
                                             double t) {
    TdDrivePhases ph;
    ph.t = t;
    if (!tds.driven()) return ph;
    for (int axis = 0; axis < 3; ++axis) {
        ph.mode1[axis] = shift_drive_phase_integral(
            ev.mode1.shifts[axis], [&](double s) { return tds.mode_theta(1, axis, s); }, t);
        ph.mode2[axis] = shift_drive_phase_integral(
            ev.mode2.shifts[axis], [&](double s) { return tds.mode_theta(2, axis, s); }, t);
    }
    return ph;
}

/**
 * Discrete part of the wavefunctions of the constrained system: per Cartesian
 * axis, the product of the two translated Hermite-Gaussian mode factors in
 * the rotated relative coordinates, each carrying the scale phase, the shift
 * phases and the elapsed-phase factor exp(-i (n + 1/2) alpha_i(t)). For
 * constant couplings and zero drives this is the stationary eigenfunction
 * times exp(-i E (t - t_a) / hbar).
 */
inline cplx td_wavefunction(const LevelIndex& idx, const TimeDependentSystem& tds,
                            const TdEvolution& ev, const TdDrivePhases& phases, const Vec3& X1,
                            const Vec3& X2, double t) {
    if (!ev.mode1.ermakov_route || !ev.mode2.ermakov_route)
        throw std::invalid_argument("td_wavefunction: both modes must be bound");
    const auto xp = td_mode_coordinates(X1, X2);
    cplx value = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
        value *= td_mode_wavefunction_1d(idx.n1[axis], tds.mu, tds.hbar, xp.x1[axis], t,
                                         ev.mode1.erm, ev.mode1.shifts[axis], phases.mode1[axis]);
        value *= td_mode_wavefunction_1d(idx.n2[axis], tds.mu, tds.hbar, xp.x2[axis], t,
                                         ev.mode2.erm, ev.mode2.shifts[axis], phases.mode2[axis]);
    }
    return value;
}

inline cplx td_wavefunction(const LevelIndex& idx, const TimeDependentSystem& tds,
                            const TdEvolution& ev, const Vec3& X1, const Vec3& X2, double t) {
    return td_wavefunction(idx, tds, ev, compute_td_drive_phases(tds, ev, t), X1, X2, t);
}

}  // namespace triprop
