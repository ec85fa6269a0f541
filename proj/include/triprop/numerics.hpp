#pragma once

// Shared numeric kernels: adaptive Gauss-Kronrod quadrature, a classic
// fixed-step RK4 integrator with Richardson step-halving and dense cubic
// Hermite output, natural cubic splines for tabulated data, and a Sturm
// bisection eigensolver for symmetric tridiagonal matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace triprop {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double pi = 3.14159265358979323846;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 add(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 scale(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }

inline double norm2(const Vec3& a) { return dot(a, a); }

class QuadratureError : public std::runtime_error {
  public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown where an oscillator factor sits on a focal point and the kernel has
// no finite value (solvers hit the same condition as a singular boundary
// problem).
class CausticError : public std::runtime_error {
  public:
    explicit CausticError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

inline double absval(double x) { return std::abs(x); }
inline double absval(const cplx& x) { return std::abs(x); }

template <class F, class R>
void gauss_kronrod_panel(F&& f, double a, double b, R& kronrod, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    R gauss{};
    kronrod = R{};
    for (std::size_t i = 0; i < 8; ++i) {
        const double x = gk_nodes[i] * half;
        R fsum = (i == 7) ? f(mid) : R(f(mid - x) + f(mid + x));
        kronrod += fsum * gk_wk[i];
        // odd-indexed Kronrod nodes (and the centre) carry the embedded Gauss rule
        if (i % 2 == 1) gauss += fsum * gk_wg[i / 2];
    }
    kronrod *= half;
    gauss *= half;
    err = absval(R(kronrod - gauss));
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration to an absolute tolerance. The result
// type follows the integrand (double or complex).
template <class F>
auto integrate(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 28)
    -> decltype(f(a)) {
    using R = decltype(f(a));
    if (a == b) return R{};
    struct Frame {
        double a, b, tol;
        int depth;
    };
    R total{};
    std::vector<Frame> stack;
    stack.push_back({a, b, abs_tol, 0});
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        R k{};
        double err = 0.0;
        detail::gauss_kronrod_panel(f, fr.a, fr.b, k, err);
        if (err <= fr.tol || fr.depth >= max_depth) {
            if (err > std::max(fr.tol, 1e-6)) {
                throw QuadratureError("quadrature non-convergence on [" +
                                      std::to_string(fr.a) + ", " + std::to_string(fr.b) + "]");
            }
            total += k;
        } else {
            const double mid = 0.5 * (fr.a + fr.b);
            stack.push_back({fr.a, mid, 0.5 * fr.tol, fr.depth + 1});
            stack.push_back({mid, fr.b, 0.5 * fr.tol, fr.depth + 1});
        }
    }
    return total;
}

// Dense solution of an autonomous-in-form ODE system y' = f(t, y), sampled on
// a uniform grid with node derivatives kept for cubic Hermite interpolation.
template <std::size_t N>
struct OdeSolution {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::array<double, N>> y;      // node states
    std::vector<std::array<double, N>> ydot;   // node derivatives

    double t_end() const { return t0 + dt * static_cast<double>(y.size() - 1); }

    // Cubic Hermite interpolation; exact at nodes, O(h^4) between them.
    std::array<double, N> at(double t) const {
        const auto n = y.size();
        if (n == 1) return y[0];
        double s = (t - t0) / dt;
        auto i = static_cast<std::ptrdiff_t>(std::floor(s));
        i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 2);
        const double u = s - static_cast<double>(i);
        const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        const double h10 = u * (1 - u) * (1 - u);
        const double h01 = u * u * (3 - 2 * u);
        const double h11 = u * u * (u - 1);
        std::array<double, N> out{};
        for (std::size_t k = 0; k < N; ++k) {
            out[k] = h00 * y[i][k] + h10 * dt * ydot[i][k] + h01 * y[i + 1][k] +
                     h11 * dt * ydot[i + 1][k];
        }
        return out;
    }

    std::array<double, N> deriv_at(double t) const {
        const auto n = y.size();
        if (n == 1) return ydot[0];
        double s = (t - t0) / dt;
        auto i = static_cast<std::ptrdiff_t>(std::floor(s));
        i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 2);
        const double u = s - static_cast<double>(i);
        // derivative of the Hermite basis
        const double g00 = 6 * u * (u - 1) / dt;
        const double g10 = (1 - u) * (1 - 3 * u);
        const double g01 = -6 * u * (u - 1) / dt;
        const double g11 = u * (3 * u - 2);
        std::array<double, N> out{};
        for (std::size_t k = 0; k < N; ++k) {
            out[k] = g00 * y[i][k] + g10 * ydot[i][k] + g01 * y[i + 1][k] + g11 * ydot[i + 1][k];
        }
        return out;
    }
};

namespace detail {

template <std::size_t N, class F>
OdeSolution<N> rk4_fixed(F&& f, std::array<double, N> y0, double t_a, double t_b,
                         std::size_t steps) {
    OdeSolution<N> sol;
    sol.t0 = t_a;
    sol.dt = (t_b - t_a) / static_cast<double>(steps);
    sol.y.reserve(steps + 1);
    sol.ydot.reserve(steps + 1);
    auto y = y0;
    sol.y.push_back(y);
    sol.ydot.push_back(f(t_a, y));
    const double h = sol.dt;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = t_a + h * static_cast<double>(i);
        const auto k1 = f(t, y);
        std::array<double, N> tmp;
        for (std::size_t k = 0; k < N; ++k) tmp[k] = y[k] + 0.5 * h * k1[k];
        const auto k2 = f(t + 0.5 * h, tmp);
        for (std::size_t k = 0; k < N; ++k) tmp[k] = y[k] + 0.5 * h * k2[k];
        const auto k3 = f(t + 0.5 * h, tmp);
        for (std::size_t k = 0; k < N; ++k) tmp[k] = y[k] + h * k3[k];
        const auto k4 = f(t + h, tmp);
        for (std::size_t k = 0; k < N; ++k)
            y[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        sol.y.push_back(y);
        sol.ydot.push_back(f(t + h, y));
    }
    return sol;
}

}  // namespace detail

// Classic RK4 with Richardson step-halving: the step count doubles until two
// successive endpoint states agree to `rel_tol` (relative to the state scale).
// Returns the finer run.
template <std::size_t N, class F>
OdeSolution<N> integrate_ode(F&& f, std::array<double, N> y0, double t_a, double t_b,
                             double rel_tol = 1e-10, std::size_t initial_steps = 64,
                             std::size_t max_steps = (1u << 20)) {
    if (!(t_b > t_a)) throw std::invalid_argument("integrate_ode: t_b must exceed t_a");
    std::size_t n = initial_steps;
    auto coarse = detail::rk4_fixed<N>(f, y0, t_a, t_b, n);
    while (true) {
        auto fine = detail::rk4_fixed<N>(f, y0, t_a, t_b, 2 * n);
        double scale = 0.0, diff = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            scale = std::max(scale, std::abs(fine.y.back()[k]));
            diff = std::max(diff, std::abs(fine.y.back()[k] - coarse.y.back()[k]));
        }
        if (diff <= rel_tol * std::max(scale, 1.0) || 2 * n >= max_steps) return fine;
        n *= 2;
        coarse = std::move(fine);
    }
}

// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
  public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const auto n = x_.size();
        if (n < 2 || n != y_.size())
            throw std::invalid_argument("spline needs >= 2 matching samples");
        for (std::size_t i = 1; i < n; ++i) {
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("spline abscissae must be strictly increasing");
        }
        m_.assign(n, 0.0);
        if (n == 2) return;
        // solve the tridiagonal system for second derivatives (natural ends)
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1];
            const double hr = x_[i + 1] - x_[i];
            diag[i] = 2.0 * (hl + hr);
            upper[i] = hr;
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
        }
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double w = (x_[i] - x_[i - 1]) / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }

    double operator()(double t) const {
        const auto n = x_.size();
        auto it = std::upper_bound(x_.begin(), x_.end(), t);
        std::size_t i = static_cast<std::size_t>(
            std::clamp<std::ptrdiff_t>(it - x_.begin() - 1, 0,
                                       static_cast<std::ptrdiff_t>(n) - 2));
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - t) / h;
        const double b = (t - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    double t_min() const { return x_.front(); }
    double t_max() const { return x_.back(); }

  private:
    std::vector<double> x_, y_;
    std::vector<double> m_;  // second derivatives at the nodes
};

// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off) that
// are strictly below x, by the Sturm sequence of the shifted LDL^T recurrence.
inline int tridiag_count_below(const std::vector<double>& diag, const std::vector<double>& off,
                               double x) {
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double e2 = (i == 0) ? 0.0 : off[i - 1] * off[i - 1];
        q = diag[i] - x - e2 / q;
        if (std::abs(q) < tiny) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

// k lowest eigenvalues by bisection on the Sturm count.
inline std::vector<double> tridiag_lowest_eigenvalues(const std::vector<double>& diag,
                                                      const std::vector<double>& off,
                                                      std::size_t k) {
    const auto n = diag.size();
    if (k > n) throw std::invalid_argument("requested more eigenvalues than matrix order");
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    std::vector<double> eig(k);
    for (std::size_t j = 0; j < k; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 100 && (b - a) > 1e-14 * (std::abs(a) + std::abs(b) + 1.0); ++it) {
            const double midpt = 0.5 * (a + b);
            if (tridiag_count_below(diag, off, midpt) > static_cast<int>(j))
                b = midpt;
            else
                a = midpt;
        }
        eig[j] = 0.5 * (a + b);
    }
    return eig;
}

}  // namespace triprop
