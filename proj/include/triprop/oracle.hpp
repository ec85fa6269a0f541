#pragma once

// Brute-force verification tools kept deliberately independent of the closed
// forms they check: Crank-Nicolson grid evolution of the Schrodinger equation,
// direct quadrature application of kernels, a semigroup-composition residual,
// grid Hamiltonian diagonalisation, and an exact symmetric 2x2 eigensolver.

#include "triprop/numerics.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace triprop {

// ---- exact symmetric 2x2 eigendecomposition ---------------------------------

struct Eig2 {
    double lo = 0.0, hi = 0.0;
    double angle = 0.0;  // eigenvector of `lo` is (cos angle, sin angle)
};

inline Eig2 eig2_symmetric(double a11, double a12, double a22) {
    Eig2 e;
    const double tr = a11 + a22;
    const double disc = std::hypot(a11 - a22, 2.0 * a12);
    e.lo = 0.5 * (tr - disc);
    e.hi = 0.5 * (tr + disc);
    if (a12 == 0.0) {
        e.angle = (a11 <= a22) ? 0.0 : pi / 2.0;
        return e;
    }
    // eigenvector for the low eigenvalue, from the better-conditioned row
    double vx, vy;
    if (std::abs(a11 - e.lo) > std::abs(a22 - e.lo)) {
        vx = a12;
        vy = e.lo - a11;
    } else {
        vx = e.lo - a22;
        vy = a12;
    }
    e.angle = std::atan2(vy, vx);
    if (e.angle <= -pi / 2.0) e.angle += pi;
    if (e.angle > pi / 2.0) e.angle -= pi;
    return e;
}

// ---- grid states -------------------------------------------------------------

struct GridState {
    double x_min = -12.0;
    double dx = 0.0;
    std::vector<cplx> values;
    double mass = 1.0;
    double hbar = 1.0;

    double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
    std::size_t size() const { return values.size(); }
};

using Grid1DPotential = std::function<double(double x, double t)>;

inline double grid_norm(const GridState& st) {
    double s = 0.0;
    for (const auto& v : st.values) s += std::norm(v);
    return std::sqrt(s * st.dx);
}

inline double grid_l2_diff(const GridState& a, const GridState& b) {
    if (a.size() != b.size()) throw std::invalid_argument("grid size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
    return std::sqrt(s * a.dx);
}

// Normalised Gaussian packet exp(ik0 x) * exp(-(x-x0)^2/(2 w^2)).
inline GridState gaussian_packet(double x_min, double x_max, std::size_t n, double x0, double width,
                                 double k0 = 0.0, double mass = 1.0, double hbar = 1.0) {
    GridState st;
    st.x_min = x_min;
    st.dx = (x_max - x_min) / static_cast<double>(n - 1);
    st.mass = mass;
    st.hbar = hbar;
    st.values.resize(n);
    const double norm = 1.0 / std::sqrt(width * std::sqrt(pi));
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (st.x(i) - x0) / width;
        st.values[i] = norm * std::exp(cplx(-0.5 * d * d, k0 * st.x(i)));
    }
    return st;
}

namespace detail {

// Thomas solve for a tridiagonal system with constant off-diagonal `off`.
inline void tridiag_solve_const_off(const std::vector<cplx>& diag, cplx off, std::vector<cplx>& rhs,
                                    std::vector<cplx>& scratch) {
    const std::size_t n = diag.size();
    scratch.resize(n);
    cplx beta = diag[0];
    rhs[0] /= beta;
    for (std::size_t j = 1; j < n; ++j) {
        scratch[j] = off / beta;
        beta = diag[j] - off * scratch[j];
        rhs[j] = (rhs[j] - off * rhs[j - 1]) / beta;
    }
    for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= scratch[j + 1] * rhs[j + 1];
}

}  // namespace detail

/**
 * Crank-Nicolson evolution of i hbar d(psi)/dt = H psi with
 * H = -hbar^2/(2m) d^2/dx^2 + V(x,t), Dirichlet boundaries.
 *
 * The scheme (1 + i dt H/2hbar) psi_next = (1 - i dt H/2hbar) psi is
 * unconditionally unitary on the grid; the potential is evaluated at the
 * midpoint of each step, which keeps second-order accuracy for
 * time-dependent potentials.
 */
inline GridState evolve_grid_tdse(const GridState& state, const Grid1DPotential& V, double t_a,
                                  double t_b, std::size_t steps) {
    if (!(t_b > t_a)) throw std::invalid_argument("evolve_grid_tdse: t_b must exceed t_a");
    const std::size_t n = state.size();
    if (n < 16) throw std::invalid_argument("grid too small");
    const double norm0 = grid_norm(state);
    const double edge0 = (std::norm(state.values.front()) + std::norm(state.values.back())) * state.dx;
    if (edge0 > 1e-12 * norm0 * norm0)
        throw std::invalid_argument("initial packet not negligible at grid boundary");

    GridState st = state;
    const double dt = (t_b - t_a) / static_cast<double>(steps);
    const double kin = st.hbar * st.hbar / (2.0 * st.mass * st.dx * st.dx);
    const cplx half_step = cplx(0.0, dt / (2.0 * st.hbar));
    const cplx off = half_step * (-kin);
    std::vector<cplx> diag(n), rhs(n), scratch(n);
    for (std::size_t s = 0; s < steps; ++s) {
        const double t_mid = t_a + dt * (static_cast<double>(s) + 0.5);
        for (std::size_t j = 0; j < n; ++j) {
            const cplx hd = half_step * (2.0 * kin + V(st.x(j), t_mid));
            diag[j] = 1.0 + hd;
            // rhs = (1 - i dt H / 2hbar) psi
            const cplx left = (j > 0) ? st.values[j - 1] : cplx{};
            const cplx right = (j + 1 < n) ? st.values[j + 1] : cplx{};
            rhs[j] = (1.0 - hd) * st.values[j] - off * (left + right);
        }
        detail::tridiag_solve_const_off(diag, off, rhs, scratch);
        st.values.swap(rhs);
    }
    const double normN = grid_norm(st);
    const double edgeN = (std::norm(st.values.front()) + std::norm(st.values.back())) * st.dx;
    if (edgeN > 1e-8 * normN * normN)
        throw std::runtime_error("evolve_grid_tdse: boundary leakage above tolerance");
    return st;
}

// psi_out(x) = sum_y K(x, y) psi_in(y) dx by trapezoid quadrature.
inline GridState kernel_apply(const std::function<cplx(double x_to, double x_from)>& kernel,
                              const GridState& state) {
    GridState out = state;
    const std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < n; ++j) {
            const cplx term = kernel(state.x(i), state.x(j)) * state.values[j];
            acc += (j == 0 || j + 1 == n) ? 0.5 * term : term;
        }
        out.values[i] = acc * state.dx;
    }
    return out;
}

// ---- semigroup (composition) residual ----------------------------------------

// Kernel family over complex positions; t arguments are the segment ends.
using KernelFamily = std::function<cplx(cplx x_to, cplx x_from, double t_from, double t_to)>;

namespace detail {

struct GaussianFit {
    cplx c1, c2;  // log P(b) = c0 + c1 b + c2 b^2 around the expansion point
};

// Fit the quadratic exponent of P near b0 from branch-safe log ratios.
template <class P>
GaussianFit fit_log_quadratic(P&& prod, double b0) {
    double h = 0.25;
    const cplx p0 = prod(b0);
    if (p0 == cplx{}) throw std::runtime_error("kernel product vanished at expansion point");
    for (int tries = 0; tries < 40; ++tries) {
        const cplx rp = prod(b0 + h) / p0;
        const cplx rm = prod(b0 - h) / p0;
        const cplx lp = std::log(rp), lm = std::log(rm);
        if (std::abs(lp) < 1.0 && std::abs(lm) < 1.0) {
            GaussianFit fit;
            fit.c1 = (lp - lm) / (2.0 * h);
            fit.c2 = (lp + lm) / (2.0 * h * h);
            return fit;
        }
        h *= 0.5;
    }
    throw std::runtime_error("could not fit kernel product exponent");
}

}  // namespace detail

/**
 * Max | int K(c,b; t1->t2) K(b,a; t0->t1) db - K(c,a; t0->t2) | over probe
 * endpoint pairs.
 *
 * The b-integrand of every kernel handled here is exp(quadratic in b) with a
 * purely oscillatory real direction, so the integral is taken along the
 * steepest-descent line through the stationary point, where the integrand
 * decays as a genuine Gaussian and the quadrature truncation is far below
 * the returned residuals. The kernels are entire in the position arguments,
 * which makes the contour shift exact.
 */
inline double chapman_kolmogorov_residual(const KernelFamily& kernel, double t0, double t1,
                                          double t2,
                                          const std::vector<std::pair<double, double>>& probes) {
    double worst = 0.0;
    for (const auto& [a, c] : probes) {
        auto prod = [&](cplx b) { return kernel(c, b, t1, t2) * kernel(b, a, t0, t1); };
        auto fit = detail::fit_log_quadratic(prod, 0.0);
        // stationary point of the exponent; fall back to 0 if c2 is tiny
        double b_center = 0.0;
        if (std::abs(fit.c2) > 1e-12) {
            const cplx bs = -fit.c1 / (2.0 * fit.c2);
            b_center = std::clamp(bs.real(), -50.0, 50.0);
            fit = detail::fit_log_quadratic(prod, b_center);
        }
        const double theta = 0.5 * (pi - std::arg(fit.c2));
        const cplx dir = std::polar(1.0, theta);
        const double width = 1.0 / std::sqrt(std::abs(fit.c2));
        const double span = 9.0 * width;
        const double scale = std::abs(prod(b_center)) * width;
        const cplx integral = integrate(
            [&](double u) { return prod(b_center + dir * u) * dir; }, -span, span,
            std::max(1e-13, 1e-12 * scale));
        worst = std::max(worst, std::abs(integral - kernel(c, a, t0, t2)));
    }
    return worst;
}

// ---- grid Hamiltonian spectrum ------------------------------------------------

struct SpectrumGrid {
    double x_min = -12.0;
    double x_max = 12.0;
    std::size_t n = 2048;
};

// k lowest eigenvalues of the central-difference Hamiltonian for V at fixed t.
inline std::vector<double> discrete_spectrum(const Grid1DPotential& V, const SpectrumGrid& grid,
                                             std::size_t k, double mass = 1.0, double hbar = 1.0,
                                             double t = 0.0) {
    if (k > grid.n) throw std::invalid_argument("discrete_spectrum: k exceeds grid size");
    const double dx = (grid.x_max - grid.x_min) / static_cast<double>(grid.n - 1);
    const double kin = hbar * hbar / (2.0 * mass * dx * dx);
    std::vector<double> diag(grid.n), off(grid.n - 1, -kin);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x_min + dx * static_cast<double>(i);
        const double v = V(x, t);
        if (!std::isfinite(v)) throw std::invalid_argument("potential not finite on grid");
        diag[i] = 2.0 * kin + v;
    }
    return tridiag_lowest_eigenvalues(diag, off, k);
}

// Same spectrum Richardson-extrapolated over dx (the scheme is second order,
// so two grids remove the leading error term).
inline std::vector<double> discrete_spectrum_extrapolated(const Grid1DPotential& V,
                                                          const SpectrumGrid& grid, std::size_t k,
                                                          double mass = 1.0, double hbar = 1.0,
                                                          double t = 0.0) {
    auto coarse = discrete_spectrum(V, grid, k, mass, hbar, t);
    SpectrumGrid fine = grid;
    fine.n = 2 * grid.n - 1;  // halves dx exactly
    auto fined = discrete_spectrum(V, fine, k, mass, hbar, t);
    for (std::size_t i = 0; i < k; ++i) fined[i] = (4.0 * fined[i] - coarse[i]) / 3.0;
    return fined;
}

}  // namespace triprop
