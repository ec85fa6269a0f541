#pragma once

// Coordinate pipeline: the scaled Jacobi transform (relative coordinate,
// mass-centre-of-pair coordinate, centre of mass) followed by a dilation plus
// rotation that removes the residual bilinear coupling. The output frame
// carries the decoupled frequencies, rotated drive forces and the composite
// path-measure factor used by the propagators.

#include "triprop/model.hpp"
#include "triprop/numerics.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace triprop {

struct JacobiFrame {
    double M1 = 0.0, M2 = 0.0, M3 = 0.0;  // reduced pair mass, pair-vs-third mass, total mass
    double omega1_sq = 0.0, omega2_sq = 0.0;
    double lambda = 0.0;     // residual bilinear coupling between the two relative coordinates
    DriveVector f1{}, f2{};  // drives mapped onto the relative coordinates
    double m12 = 0.0;
    double jacobian = 0.0;   // (a*b)^3 measure factor of the coordinate change
    GaugeChoice gauge{};
};

struct RotatedCouplings {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

struct NormalModeFrame {
    double phi = 0.0;  // rotation angle actually used for the mode slots
    double Omega1_sq = 0.0, Omega2_sq = 0.0;  // ordered: Omega1_sq <= Omega2_sq
    double R = 0.0;                           // in [0,1]; 1 when decoupled, 0 when degenerate
    GaugeChoice gauge{};
    double M1 = 0.0, M2 = 0.0, M3 = 0.0;
    double measure = 0.0;  // total path-measure factor (a*b)^3 * (sqrt(M1*M2)/m)^3
    bool mode1_inverted = false, mode2_inverted = false;  // negative Omega^2

    // rotated drive forces: F1 = c11*f1 + c12*f2, F2 = c21*f1 + c22*f2
    double c11 = 0.0, c12 = 0.0, c21 = 0.0, c22 = 0.0;
    DriveVector f1{}, f2{};

    Vec3 F1(double t) const { return add(scale(c11, drive_eval(f1, t)), scale(c12, drive_eval(f2, t))); }
    Vec3 F2(double t) const { return add(scale(c21, drive_eval(f1, t)), scale(c22, drive_eval(f2, t))); }
    bool driven() const { return !(drive_is_zero(f1) && drive_is_zero(f2)); }
};

namespace detail {

// Frequency/coupling combinations produced by the scaled Jacobi change of
// variables, for one set of instantaneous coupling values.
struct JacobiCouplings {
    double omega1_sq, omega2_sq, lambda;
};

inline JacobiCouplings jacobi_couplings(double m1, double m2, double m3, double K21, double K31,
                                        double K32, double s1, double s2, double s3, double a,
                                        double b) {
    const double m12 = m1 + m2;
    const double M = m1 + m2 + m3;
    JacobiCouplings out{};
    out.omega1_sq = (m12 / (m1 * m2)) *
                    (K21 + (m2 * m2 * K31 + m1 * m1 * K32) / (m12 * m12) +
                     (2.0 / m12) * (s1 * m2 - s2 * m1 - s3 * (m1 * m2 / m12)));
    out.omega2_sq = (M / (m3 * m12)) * (K31 + K32 + 2.0 * s3);
    out.lambda = (1.0 / (a * b)) *
                 (s3 * (m2 - m1) / m12 + s1 + s2 + (m2 * K31 - m1 * K32) / m12);
    return out;
}

// drives on the relative coordinates: f1 = (g1 + (m2 g2 - m1 g3)/m12)/a,
// f2 = (g2 + g3)/b, componentwise, as exact linear combinations
inline std::pair<DriveVector, DriveVector> map_drives(double m1, double m2, double a, double b,
                                                      const DriveVector& g1, const DriveVector& g2,
                                                      const DriveVector& g3) {
    std::pair<DriveVector, DriveVector> out;
    const double m12 = m1 + m2;
    for (int i = 0; i < 3; ++i) {
        out.first[i] = TimeFunction::combine(
            {{1.0 / a, g1[i]}, {m2 / (m12 * a), g2[i]}, {-m1 / (m12 * a), g3[i]}});
        out.second[i] = TimeFunction::combine({{1.0 / b, g2[i]}, {1.0 / b, g3[i]}});
    }
    return out;
}

}  // namespace detail

inline JacobiFrame to_jacobi(const PhysicalSystem& sys) {
    if (auto bad = validate_system(sys); !bad.empty())
        throw std::invalid_argument("to_jacobi: " + bad.front());
    const double a = sys.gauge.a, b = sys.gauge.b;
    JacobiFrame jac;
    jac.m12 = sys.m1 + sys.m2;
    jac.M3 = sys.m1 + sys.m2 + sys.m3;
    jac.M1 = sys.m1 * sys.m2 / (a * a * jac.m12);
    jac.M2 = sys.m3 * jac.m12 / (b * b * jac.M3);
    const auto c = detail::jacobi_couplings(sys.m1, sys.m2, sys.m3, sys.K21, sys.K31, sys.K32,
                                            sys.sigma1, sys.sigma2, sys.sigma3, a, b);
    jac.omega1_sq = c.omega1_sq;
    jac.omega2_sq = c.omega2_sq;
    jac.lambda = c.lambda;
    jac.jacobian = std::pow(a * b, 3);
    jac.gauge = sys.gauge;
    std::tie(jac.f1, jac.f2) = detail::map_drives(sys.m1, sys.m2, a, b, sys.g1, sys.g2, sys.g3);
    return jac;
}

// Couplings seen after rotating the dilated coordinates by phi.
inline RotatedCouplings rotated_couplings(const JacobiFrame& jac, double m, double phi) {
    const double k = jac.lambda / std::sqrt(jac.M1 * jac.M2);
    const double c = std::cos(phi), s = std::sin(phi);
    const double s2 = std::sin(2.0 * phi), c2 = std::cos(2.0 * phi);
    RotatedCouplings rc;
    rc.alpha = m * jac.omega1_sq * c * c + m * jac.omega2_sq * s * s - m * k * s2;
    rc.beta = m * jac.omega1_sq * s * s + m * jac.omega2_sq * c * c + m * k * s2;
    rc.gamma = m * (jac.omega1_sq - jac.omega2_sq) * s2 + 2.0 * m * k * c2;
    return rc;
}

// Angle in (-pi/4, pi/4] that kills the bilinear coupling. The degenerate
// frequency case is pushed to pi/4; a vanishing coupling gives zero.
inline double mixing_angle(const JacobiFrame& jac) {
    if (jac.lambda == 0.0) return 0.0;
    const double delta = jac.omega2_sq - jac.omega1_sq;
    const double k = jac.lambda / std::sqrt(jac.M1 * jac.M2);
    if (delta == 0.0) return pi / 4.0;
    return 0.5 * std::atan(2.0 * k / delta);
}

inline NormalModeFrame normal_modes(const JacobiFrame& jac, const GaugeChoice& gauge) {
    if (!(jac.M1 > 0.0) || !(jac.M2 > 0.0))
        throw std::invalid_argument("normal_modes: non-positive reduced masses");
    const double m = gauge.m;
    const double k = jac.lambda / std::sqrt(jac.M1 * jac.M2);
    const double delta = jac.omega2_sq - jac.omega1_sq;
    const double h = std::hypot(delta, 2.0 * k);
    NormalModeFrame fr;
    fr.Omega1_sq = 0.5 * (jac.omega1_sq + jac.omega2_sq - h);
    fr.Omega2_sq = 0.5 * (jac.omega1_sq + jac.omega2_sq + h);
    fr.mode1_inverted = fr.Omega1_sq < 0.0;
    fr.mode2_inverted = fr.Omega2_sq < 0.0;
    fr.R = (jac.lambda == 0.0)
               ? 1.0
               : std::sqrt(jac.M1 * jac.M2) * std::abs(delta) /
                     std::sqrt(4.0 * jac.lambda * jac.lambda + jac.M1 * jac.M2 * delta * delta);
    double phi = mixing_angle(jac);
    {
        // the rotation must place the lower eigenvalue in the first slot;
        // advancing the angle by pi/2 swaps the slots
        const auto rc = rotated_couplings(jac, m, phi);
        if (rc.alpha > rc.beta) phi += pi / 2.0;
    }
    fr.phi = phi;
    fr.gauge = gauge;
    fr.M1 = jac.M1;
    fr.M2 = jac.M2;
    fr.M3 = jac.M3;
    fr.measure = jac.jacobian * std::pow(std::sqrt(jac.M1 * jac.M2) / m, 3);
    const double C = std::cos(phi), S = std::sin(phi);
    fr.c11 = std::sqrt(m / jac.M1) * C;
    fr.c12 = -std::sqrt(m / jac.M2) * S;
    fr.c21 = std::sqrt(m / jac.M1) * S;
    fr.c22 = std::sqrt(m / jac.M2) * C;
    fr.f1 = jac.f1;
    fr.f2 = jac.f2;
    return fr;
}

// ---- endpoint coordinate maps ----------------------------------------------

struct JacobiPoint {
    Vec3 X1, X2, X3;
};

inline JacobiPoint jacobi_coordinates(const PhysicalSystem& sys, const Vec3& r1, const Vec3& r2,
                                      const Vec3& r3) {
    const double a = sys.gauge.a, b = sys.gauge.b;
    const double m12 = sys.m1 + sys.m2;
    const double M = m12 + sys.m3;
    JacobiPoint p;
    for (int i = 0; i < 3; ++i) {
        p.X1[i] = a * (r2[i] - r1[i]);
        p.X2[i] = b * (r3[i] - (sys.m1 * r1[i] + sys.m2 * r2[i]) / m12);
        p.X3[i] = (sys.m1 * r1[i] + sys.m2 * r2[i] + sys.m3 * r3[i]) / M;
    }
    return p;
}

struct ModePoint {
    Vec3 Y1, Y2;
};

// Dilated-rotated mode coordinates of a Jacobi point.
inline ModePoint mode_coordinates(const NormalModeFrame& fr, const Vec3& X1, const Vec3& X2) {
    const double m = fr.gauge.m;
    const double C = std::cos(fr.phi), S = std::sin(fr.phi);
    const double d1 = std::sqrt(fr.M1 / m), d2 = std::sqrt(fr.M2 / m);
    ModePoint p;
    for (int i = 0; i < 3; ++i) {
        p.Y1[i] = d1 * C * X1[i] - d2 * S * X2[i];
        p.Y2[i] = d1 * S * X1[i] + d2 * C * X2[i];
    }
    return p;
}

// ---- gauge independence probe ----------------------------------------------

// Maximum relative deviation of a physical-coordinate kernel across gauge
// choices. `kernel` is invoked as kernel(sys_with_gauge, probe) -> cplx.
template <class KernelFn, class Probe>
double gauge_sweep_check(const PhysicalSystem& sys, std::span<const GaugeChoice> gauges,
                         std::span<const Probe> probes, KernelFn&& kernel) {
    if (gauges.size() < 2) throw std::invalid_argument("gauge_sweep_check needs >= 2 gauges");
    double worst = 0.0;
    for (const auto& probe : probes) {
        cplx ref{};
        bool first = true;
        for (const auto& g : gauges) {
            PhysicalSystem varied = sys;
            varied.gauge = g;
            const cplx val = kernel(varied, probe);
            if (first) {
                ref = val;
                first = false;
            } else {
                worst = std::max(worst, std::abs(val - ref) / std::abs(ref));
            }
        }
    }
    return worst;
}

}  // namespace triprop
