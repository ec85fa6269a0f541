#pragma once

// Closed-form constant-coupling propagators: the free centre-of-mass kernel,
// 1-D and 3-D (driven) harmonic oscillator kernels, and the composite
// physical-coordinate three-body kernel assembled through the normal-mode
// frame. Positions are templated so the kernels can be continued off the
// real axis (entire functions), which the composition oracle relies on.

#include "triprop/model.hpp"
#include "triprop/numerics.hpp"
#include "triprop/transform.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace triprop {

inline constexpr double caustic_tolerance = 1e-10;  // on |sin(Omega tau)|

struct KernelValue {
    cplx amplitude{};
    bool caustic_flag = false;
    int branch_index = 0;  // half-period crossings absorbed into the phase

    static KernelValue caustic() {
        KernelValue kv;
        kv.caustic_flag = true;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        kv.amplitude = cplx(nan, nan);
        return kv;
    }
};

struct Endpoints {
    std::array<Vec3, 3> r_initial{};
    std::array<Vec3, 3> r_final{};
    double t_a = 0.0;
    double t_b = 1.0;

    double tau() const { return t_b - t_a; }
};

// ---- free particle -----------------------------------------------------------

template <class Y = double>
KernelValue free_kernel_1d(double M, Y x_from, Y x_to, double tau, double hbar) {
    if (!(tau > 0.0)) throw std::invalid_argument("free_kernel: tau must be positive");
    const Y d = x_to - x_from;
    KernelValue kv;
    const double mod = std::sqrt(M / (2.0 * pi * hbar * tau));
    kv.amplitude = mod * std::exp(cplx(0.0, -pi / 4.0) + cplx(0.0, M / (2.0 * hbar * tau)) * (d * d));
    return kv;
}

inline KernelValue free_kernel(double M, const Vec3& x_from, const Vec3& x_to, double tau,
                               double hbar, int dim = 3) {
    if (!(tau > 0.0)) throw std::invalid_argument("free_kernel: tau must be positive");
    double dist_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double d = x_to[i] - x_from[i];
        dist_sq += d * d;
    }
    KernelValue kv;
    const double mod = std::pow(M / (2.0 * pi * hbar * tau), 0.5 * dim);
    kv.amplitude = mod * std::exp(cplx(0.0, -dim * pi / 4.0) +
                                  cplx(0.0, M * dist_sq / (2.0 * hbar * tau)));
    return kv;
}

// ---- harmonic oscillator, constant frequency ---------------------------------

namespace detail {

// Prefactor modulus/phase and the exponent factor i m Omega / (2 hbar sin) for
// one 1-D oscillator factor. Negative Omega^2 continues with hyperbolic
// functions (no caustics there); the phase across caustics of the bound case
// follows the tau->0 free limit continuously (a quarter turn per half period).
struct ShoFactor {
    double pref_mod = 0.0;
    double pref_phase = 0.0;
    cplx expo_coeff{};  // multiplies [(y'^2 + y''^2) ct - 2 y' y''] and the drive term
    cplx ct{};          // cos(Omega tau) continuation
    int branch = 0;
    bool caustic = false;
};

inline ShoFactor sho_factor(double m, double omega_sq, double tau, double hbar) {
    ShoFactor f;
    if (omega_sq > 0.0) {
        const double omega = std::sqrt(omega_sq);
        const double st = std::sin(omega * tau);
        // focal points sit at nonzero multiples of pi; omega*tau -> 0 is the
        // regular free limit even though sin vanishes there too
        if (std::abs(st) < caustic_tolerance && omega * tau > 0.5 * pi) {
            f.caustic = true;
            return f;
        }
        f.branch = static_cast<int>(std::floor(omega * tau / pi));
        f.pref_mod = std::sqrt(m * omega / (2.0 * pi * hbar * std::abs(st)));
        f.pref_phase = -(pi / 4.0 + 0.5 * pi * f.branch);
        f.expo_coeff = cplx(0.0, m * omega / (2.0 * hbar * st));
        f.ct = std::cos(omega * tau);
    } else if (omega_sq < 0.0) {
        const double w = std::sqrt(-omega_sq);
        const double sh = std::sinh(w * tau);
        f.pref_mod = std::sqrt(m * w / (2.0 * pi * hbar * sh));
        f.pref_phase = -pi / 4.0;
        f.expo_coeff = cplx(0.0, m * w / (2.0 * hbar * sh));
        f.ct = std::cosh(w * tau);
    } else {
        // free limit: exact tau->0 form of the trigonometric factor
        f.pref_mod = std::sqrt(m / (2.0 * pi * hbar * tau));
        f.pref_phase = -pi / 4.0;
        f.expo_coeff = cplx(0.0, m / (2.0 * hbar * tau));
        f.ct = 1.0;
    }
    return f;
}

}  // namespace detail

template <class Y = double>
KernelValue sho_kernel_1d(double m, double omega_sq, Y y_from, Y y_to, double tau, double hbar) {
    if (!(tau > 0.0)) throw std::invalid_argument("sho_kernel_1d: tau must be positive");
    const auto f = detail::sho_factor(m, omega_sq, tau, hbar);
    if (f.caustic) return KernelValue::caustic();
    KernelValue kv;
    kv.branch_index = f.branch;
    kv.amplitude = f.pref_mod * std::exp(cplx(0.0, f.pref_phase) +
                                         f.expo_coeff *
                                             ((y_from * y_from + y_to * y_to) * f.ct -
                                              2.0 * y_from * y_to));
    return kv;
}

// Imaginary-time (Euclidean) continuation tau -> -i beta of the 1-D factor,
// used when reading the spectrum off the kernel.
inline cplx sho_kernel_1d_euclidean(double m, double omega_sq, double y_from, double y_to,
                                    double beta, double hbar) {
    if (!(omega_sq > 0.0)) throw std::invalid_argument("euclidean kernel needs a bound mode");
    const double omega = std::sqrt(omega_sq);
    const double sh = std::sinh(omega * beta);
    const double ch = std::cosh(omega * beta);
    const double pref = std::sqrt(m * omega / (2.0 * pi * hbar * sh));
    return pref * std::exp(-m * omega / (2.0 * hbar * sh) *
                           ((y_from * y_from + y_to * y_to) * ch - 2.0 * y_from * y_to));
}

// ---- drive integrals ----------------------------------------------------------

// Endpoint-independent pieces of the driven-oscillator phase for one Cartesian
// component: I1 pairs with the final position, I2 with the initial one, I3 is
// the time-ordered double integral.
struct DriveIntegrals1D {
    cplx I1{}, I2{}, I3{};
};

inline DriveIntegrals1D compute_drive_integrals_1d(double omega_sq,
                                                   const std::function<double(double)>& F,
                                                   double t_a, double t_b, double quad_tol = 1e-10) {
    const cplx omega = std::sqrt(cplx(omega_sq == 0.0 ? 1e-24 : omega_sq, 0.0));
    DriveIntegrals1D out;
    out.I1 = integrate(
        [&](double t) { return F(t) * std::sin(omega * (t - t_a)); }, t_a, t_b, quad_tol);
    out.I2 = integrate(
        [&](double t) { return F(t) * std::sin(omega * (t_b - t)); }, t_a, t_b, quad_tol);
    out.I3 = integrate(
        [&](double t) {
            const cplx inner = integrate(
                [&](double s) { return F(s) * std::sin(omega * (s - t_a)); }, t_a, t,
                0.1 * quad_tol);
            return F(t) * std::sin(omega * (t_b - t)) * inner;
        },
        t_a, t_b, quad_tol);
    return out;
}

namespace detail {

// Assembled drive contribution added inside the oscillator exponent bracket.
template <class Y>
cplx drive_bracket(double m, double omega_sq, const DriveIntegrals1D& di, Y y_from, Y y_to) {
    const cplx omega = std::sqrt(cplx(omega_sq == 0.0 ? 1e-24 : omega_sq, 0.0));
    return (2.0 / (m * omega)) * (y_to * di.I1 + y_from * di.I2) -
           (2.0 / (m * m * omega * omega)) * di.I3;
}

}  // namespace detail

// The endpoint-coupled single integral plus the time-ordered double integral
// entering the driven oscillator phase.
inline cplx driving_integral_G(double m, double omega, const std::function<double(double)>& F,
                               double y_from, double y_to, double t_a, double t_b) {
    const auto di = compute_drive_integrals_1d(omega * omega, F, t_a, t_b);
    return detail::drive_bracket(m, omega * omega, di, y_from, y_to);
}

// 1-D driven oscillator kernel with precomputed drive integrals.
template <class Y = double>
KernelValue driven_kernel_1d(double m, double omega_sq, const DriveIntegrals1D& di, Y y_from,
                             Y y_to, double tau, double hbar) {
    if (!(tau > 0.0)) throw std::invalid_argument("driven_kernel_1d: tau must be positive");
    const double omega_eff = (omega_sq == 0.0) ? 1e-24 : omega_sq;
    const auto f = detail::sho_factor(m, omega_eff, tau, hbar);
    if (f.caustic) return KernelValue::caustic();
    KernelValue kv;
    kv.branch_index = f.branch;
    const cplx bracket = (y_from * y_from + y_to * y_to) * f.ct - 2.0 * y_from * y_to +
                         detail::drive_bracket(m, omega_eff, di, y_from, y_to);
    kv.amplitude = f.pref_mod * std::exp(cplx(0.0, f.pref_phase) + f.expo_coeff * bracket);
    return kv;
}

// ---- 3-D mode kernel ----------------------------------------------------------

struct ModeDriveIntegrals {
    std::array<DriveIntegrals1D, 3> comp{};
    bool driven = false;
};

inline ModeDriveIntegrals compute_mode_drive_integrals(double omega_sq,
                                                       const std::function<Vec3(double)>& F,
                                                       double t_a, double t_b) {
    ModeDriveIntegrals out;
    if (!F) return out;
    out.driven = true;
    for (int i = 0; i < 3; ++i) {
        out.comp[i] = compute_drive_integrals_1d(
            omega_sq, [&, i](double t) { return F(t)[i]; }, t_a, t_b);
    }
    return out;
}

// Product of three 1-D driven factors; each Cartesian component separates.
inline KernelValue mode_kernel_3d(double m, double omega_sq, const std::function<Vec3(double)>& F,
                                  const Vec3& y_from, const Vec3& y_to, double t_a, double t_b,
                                  double hbar) {
    const double tau = t_b - t_a;
    const auto di = compute_mode_drive_integrals(omega_sq, F, t_a, t_b);
    KernelValue total;
    total.amplitude = 1.0;
    for (int i = 0; i < 3; ++i) {
        KernelValue part =
            di.driven
                ? driven_kernel_1d(m, omega_sq, di.comp[i], y_from[i], y_to[i], tau, hbar)
                : sho_kernel_1d(m, omega_sq, y_from[i], y_to[i], tau, hbar);
        if (part.caustic_flag) return KernelValue::caustic();
        total.amplitude *= part.amplitude;
        total.branch_index += part.branch_index;
    }
    return total;
}

// ---- composite three-body kernel -----------------------------------------------

/**
 * Exact propagator between physical configurations of the three particles.
 * Endpoints are mapped through the Jacobi and dilation-rotation transforms,
 * the three decoupled kernels are multiplied, and the combined coordinate
 * measure factor restores delta-normalisation in physical coordinates. The
 * result does not depend on the gauge constants (a, b, m).
 */
inline KernelValue three_body_kernel(const PhysicalSystem& sys, const NormalModeFrame& frame,
                                     const Endpoints& ep) {
    if (!(ep.t_b > ep.t_a)) throw std::invalid_argument("three_body_kernel: t_b must exceed t_a");
    require_covers(sys.g1, ep.t_a, ep.t_b, "g1");
    require_covers(sys.g2, ep.t_a, ep.t_b, "g2");
    require_covers(sys.g3, ep.t_a, ep.t_b, "g3");
    const auto pa = jacobi_coordinates(sys, ep.r_initial[0], ep.r_initial[1], ep.r_initial[2]);
    const auto pb = jacobi_coordinates(sys, ep.r_final[0], ep.r_final[1], ep.r_final[2]);
    const auto ma = mode_coordinates(frame, pa.X1, pa.X2);
    const auto mb = mode_coordinates(frame, pb.X1, pb.X2);
    const double m = sys.gauge.m;
    const bool driven = frame.driven();
    std::function<Vec3(double)> F1, F2;
    if (driven) {
        F1 = [frame](double t) { return frame.F1(t); };
        F2 = [frame](double t) { return frame.F2(t); };
    }
    const KernelValue K1 =
        mode_kernel_3d(m, frame.Omega1_sq, F1, ma.Y1, mb.Y1, ep.t_a, ep.t_b, sys.hbar);
    if (K1.caustic_flag) return KernelValue::caustic();
    const KernelValue K2 =
        mode_kernel_3d(m, frame.Omega2_sq, F2, ma.Y2, mb.Y2, ep.t_a, ep.t_b, sys.hbar);
    if (K2.caustic_flag) return KernelValue::caustic();
    const KernelValue K3 = free_kernel(frame.M3, pa.X3, pb.X3, ep.tau(), sys.hbar, 3);
    KernelValue kv;
    kv.amplitude = frame.measure * K1.amplitude * K2.amplitude * K3.amplitude;
    kv.branch_index = K1.branch_index + K2.branch_index + K3.branch_index;
    return kv;
}

inline KernelValue three_body_kernel(const PhysicalSystem& sys, const Endpoints& ep) {
    return three_body_kernel(sys, normal_modes(to_jacobi(sys), sys.gauge), ep);
}

// Names the first mode whose oscillator factor sits on a caustic, for
// diagnostics (mode index 1/2 and the elapsed phase Omega*tau).
struct CausticReport {
    int mode = 0;
    double omega_tau = 0.0;
};

inline std::optional<CausticReport> find_caustic(const NormalModeFrame& frame, double tau) {
    for (int mode = 1; mode <= 2; ++mode) {
        const double osq = (mode == 1) ? frame.Omega1_sq : frame.Omega2_sq;
        if (osq <= 0.0) continue;
        const double ot = std::sqrt(osq) * tau;
        if (std::abs(std::sin(ot)) < caustic_tolerance) return CausticReport{mode, ot};
    }
    return std::nullopt;
}

}  // namespace triprop
