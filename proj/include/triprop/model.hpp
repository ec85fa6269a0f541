#pragma once

// Physical input data for the three-body problem: masses, quadratic spring
// couplings K_ij, cross couplings sigma_i, drive forces g_i(t), hbar and the
// scaling gauge (a, b, m). Everything is immutable after construction.

#include "triprop/numerics.hpp"

#include <json.hpp>

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace triprop {

// A scalar function of time: constant, sinusoid A*sin(w*t + p), a cubic
// spline through tabulated samples, or a linear combination of other time
// functions (the coordinate maps produce those).
class TimeFunction {
  public:
    struct Constant {
        double value = 0.0;
    };
    struct Sinusoid {
        double amp = 0.0, omega = 0.0, phase = 0.0;
    };
    struct Table {
        std::vector<double> t, v;
        CubicSpline spline;
    };
    struct Combo {
        std::vector<std::pair<double, std::shared_ptr<const TimeFunction>>> terms;
    };

    TimeFunction() : rep_(Constant{0.0}) {}
    explicit TimeFunction(double c) : rep_(Constant{c}) {}

    static TimeFunction constant(double c) { return TimeFunction(c); }

    static TimeFunction sinusoid(double amp, double omega, double phase) {
        TimeFunction f;
        f.rep_ = Sinusoid{amp, omega, phase};
        return f;
    }

    static TimeFunction table(std::vector<double> t, std::vector<double> v) {
        if (t.size() != v.size() || t.size() < 2)
            throw std::invalid_argument("tabulated drive needs matching t/v with >= 2 samples");
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!(t[i] > t[i - 1]))
                throw std::invalid_argument("non-monotone time grid in tabulated drive");
        TimeFunction f;
        Table tab;
        tab.spline = CubicSpline(t, v);
        tab.t = std::move(t);
        tab.v = std::move(v);
        f.rep_ = std::move(tab);
        return f;
    }

    // c1*f1 + c2*f2 + ..., folding constants where possible
    static TimeFunction combine(std::vector<std::pair<double, TimeFunction>> parts) {
        bool all_constant = true;
        double value = 0.0;
        Combo combo;
        for (auto& [c, f] : parts) {
            if (c == 0.0 || f.is_zero()) continue;
            if (f.is_constant())
                value += c * f(0.0);
            else
                all_constant = false;
            combo.terms.emplace_back(c, std::make_shared<const TimeFunction>(std::move(f)));
        }
        if (all_constant) return TimeFunction(value);
        TimeFunction out;
        out.rep_ = std::move(combo);
        return out;
    }

    double operator()(double t) const {
        if (const auto* c = std::get_if<Constant>(&rep_)) return c->value;
        if (const auto* s = std::get_if<Sinusoid>(&rep_))
            return s->amp * std::sin(s->omega * t + s->phase);
        if (const auto* tab = std::get_if<Table>(&rep_)) return tab->spline(t);
        double sum = 0.0;
        for (const auto& [c, f] : std::get<Combo>(rep_).terms) sum += c * (*f)(t);
        return sum;
    }

    bool is_zero() const {
        const auto* c = std::get_if<Constant>(&rep_);
        return c && c->value == 0.0;
    }

    bool is_constant() const { return std::holds_alternative<Constant>(rep_); }

    // span on which every tabulated part is defined (nullopt = all of R)
    std::optional<std::pair<double, double>> support() const {
        if (const auto* tab = std::get_if<Table>(&rep_))
            return std::make_pair(tab->t.front(), tab->t.back());
        if (const auto* combo = std::get_if<Combo>(&rep_)) {
            std::optional<std::pair<double, double>> out;
            for (const auto& [c, f] : combo->terms) {
                if (auto s = f->support()) {
                    if (!out)
                        out = s;
                    else
                        out = std::make_pair(std::max(out->first, s->first),
                                             std::min(out->second, s->second));
                }
            }
            return out;
        }
        return std::nullopt;
    }

    const std::variant<Constant, Sinusoid, Table, Combo>& rep() const { return rep_; }

  private:
    std::variant<Constant, Sinusoid, Table, Combo> rep_;
};

// One 3-component drive force, one TimeFunction per Cartesian component.
using DriveVector = std::array<TimeFunction, 3>;

inline bool drive_is_zero(const DriveVector& g) {
    return g[0].is_zero() && g[1].is_zero() && g[2].is_zero();
}

// Tabulated components must cover the evolution window they are used on.
inline void require_covers(const TimeFunction& f, double t_a, double t_b, const char* what) {
    if (const auto s = f.support()) {
        const double slack = 1e-12 * (1.0 + std::abs(t_b - t_a));
        if (t_a < s->first - slack || t_b > s->second + slack)
            throw std::invalid_argument(std::string(what) +
                                        ": tabulated grid does not cover the evolution interval");
    }
}

inline void require_covers(const DriveVector& g, double t_a, double t_b, const char* what) {
    for (const auto& c : g) require_covers(c, t_a, t_b, what);
}

inline Vec3 drive_eval(const DriveVector& g, double t) {
    return {g[0](t), g[1](t), g[2](t)};
}

// Arbitrary scaling constants of the coordinate maps. Physical results must
// not depend on them; the defaults are a convenience only.
struct GaugeChoice {
    double a = 1.0;
    double b = 1.0;
    double m = 1.0;
};

struct PhysicalSystem {
    double m1 = 1.0, m2 = 1.0, m3 = 1.0;
    double K21 = 0.0, K31 = 0.0, K32 = 0.0;
    double sigma1 = 0.0, sigma2 = 0.0, sigma3 = 0.0;
    DriveVector g1{}, g2{}, g3{};
    double hbar = 1.0;
    GaugeChoice gauge{};

    bool driven() const {
        return !(drive_is_zero(g1) && drive_is_zero(g2) && drive_is_zero(g3));
    }
};

// Human-readable invariant violations; empty means the system is usable.
inline std::vector<std::string> validate_system(const PhysicalSystem& sys) {
    std::vector<std::string> out;
    auto check_mass = [&](double m, const char* name) {
        if (!(m > 0.0) || !std::isfinite(m)) out.push_back(std::string("non-positive mass: ") + name);
    };
    check_mass(sys.m1, "m1");
    check_mass(sys.m2, "m2");
    check_mass(sys.m3, "m3");
    if (!(sys.hbar > 0.0) || !std::isfinite(sys.hbar)) out.push_back("hbar must be positive");
    auto check_coupling = [&](double k, const char* name) {
        if (!std::isfinite(k)) out.push_back(std::string(name) + " coupling not finite");
    };
    check_coupling(sys.K21, "K21");
    check_coupling(sys.K31, "K31");
    check_coupling(sys.K32, "K32");
    check_coupling(sys.sigma1, "sigma1");
    check_coupling(sys.sigma2, "sigma2");
    check_coupling(sys.sigma3, "sigma3");
    if (!(sys.gauge.a > 0.0)) out.push_back("gauge constant a must be positive");
    if (!(sys.gauge.b > 0.0)) out.push_back("gauge constant b must be positive");
    if (!(sys.gauge.m > 0.0)) out.push_back("gauge mass m must be positive");
    return out;
}

namespace detail {

inline TimeFunction parse_scalar_drive(const nlohmann::json& spec) {
    if (spec.is_number()) return TimeFunction::constant(spec.get<double>());
    if (!spec.is_object()) throw std::invalid_argument("drive spec must be a number or object");
    if (spec.contains("const")) return TimeFunction::constant(spec.at("const").get<double>());
    if (spec.contains("sin")) {
        const auto& s = spec.at("sin");
        return TimeFunction::sinusoid(s.at("amp").get<double>(), s.at("omega").get<double>(),
                                      s.value("phase", 0.0));
    }
    if (spec.contains("table")) {
        const auto& tab = spec.at("table");
        return TimeFunction::table(tab.at("t").get<std::vector<double>>(),
                                   tab.at("v").get<std::vector<double>>());
    }
    throw std::invalid_argument("drive spec needs one of const/sin/table");
}

inline DriveVector parse_drive_vector(const nlohmann::json& spec) {
    DriveVector g{};
    if (spec.is_array()) {
        if (spec.size() != 3) throw std::invalid_argument("drive vector must have 3 components");
        for (int i = 0; i < 3; ++i) g[i] = parse_scalar_drive(spec[i]);
        return g;
    }
    // a single scalar spec is broadcast to the x component only
    g[0] = parse_scalar_drive(spec);
    return g;
}

inline nlohmann::json serialize_scalar_drive(const TimeFunction& f) {
    using nlohmann::json;
    if (const auto* c = std::get_if<TimeFunction::Constant>(&f.rep())) return json{{"const", c->value}};
    if (const auto* s = std::get_if<TimeFunction::Sinusoid>(&f.rep()))
        return json{{"sin", {{"amp", s->amp}, {"omega", s->omega}, {"phase", s->phase}}}};
    if (const auto* tab = std::get_if<TimeFunction::Table>(&f.rep()))
        return json{{"table", {{"t", tab->t}, {"v", tab->v}}}};
    throw std::invalid_argument("derived drive combinations are not serialisable");
}

}  // namespace detail

// Parse a JSON configuration document into a validated PhysicalSystem.
// Schema:
//   { "masses":[m1,m2,m3], "K":{"K21":..,"K31":..,"K32":..}, "sigma":[s1,s2,s3],
//     "drives":{"g1":DriveSpec,"g2":DriveSpec,"g3":DriveSpec},
//     "hbar":1.0, "gauge":{"a":1.0,"b":1.0,"m":1.0} }
// DriveSpec components: {"const":v} | {"sin":{"amp":A,"omega":w,"phase":p}} |
// {"table":{"t":[...],"v":[...]}}.
inline PhysicalSystem system_from_json(const nlohmann::json& doc) {
    PhysicalSystem sys;
    try {
        const auto masses = doc.at("masses").get<std::vector<double>>();
        if (masses.size() != 3) throw std::invalid_argument("masses must have 3 entries");
        sys.m1 = masses[0];
        sys.m2 = masses[1];
        sys.m3 = masses[2];
        if (doc.contains("K")) {
            const auto& K = doc.at("K");
            sys.K21 = K.value("K21", 0.0);
            sys.K31 = K.value("K31", 0.0);
            sys.K32 = K.value("K32", 0.0);
        }
        if (doc.contains("sigma")) {
            const auto s = doc.at("sigma").get<std::vector<double>>();
            if (s.size() != 3) throw std::invalid_argument("sigma must have 3 entries");
            sys.sigma1 = s[0];
            sys.sigma2 = s[1];
            sys.sigma3 = s[2];
        }
        if (doc.contains("drives")) {
            const auto& d = doc.at("drives");
            if (d.contains("g1")) sys.g1 = detail::parse_drive_vector(d.at("g1"));
            if (d.contains("g2")) sys.g2 = detail::parse_drive_vector(d.at("g2"));
            if (d.contains("g3")) sys.g3 = detail::parse_drive_vector(d.at("g3"));
        }
        sys.hbar = doc.value("hbar", 1.0);
        if (doc.contains("gauge")) {
            const auto& g = doc.at("gauge");
            sys.gauge.a = g.value("a", 1.0);
            sys.gauge.b = g.value("b", 1.0);
            sys.gauge.m = g.value("m", 1.0);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    if (auto problems = validate_system(sys); !problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
        throw std::invalid_argument(msg);
    }
    return sys;
}

inline PhysicalSystem parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    return system_from_json(doc);
}

inline nlohmann::json serialize(const PhysicalSystem& sys) {
    using nlohmann::json;
    json doc;
    doc["masses"] = {sys.m1, sys.m2, sys.m3};
    doc["K"] = {{"K21", sys.K21}, {"K31", sys.K31}, {"K32", sys.K32}};
    doc["sigma"] = {sys.sigma1, sys.sigma2, sys.sigma3};
    auto drive3 = [](const DriveVector& g) {
        return json::array({detail::serialize_scalar_drive(g[0]),
                            detail::serialize_scalar_drive(g[1]),
                            detail::serialize_scalar_drive(g[2])});
    };
    doc["drives"] = {{"g1", drive3(sys.g1)}, {"g2", drive3(sys.g2)}, {"g3", drive3(sys.g3)}};
    doc["hbar"] = sys.hbar;
    doc["gauge"] = {{"a", sys.gauge.a}, {"b", sys.gauge.b}, {"m", sys.gauge.m}};
    return doc;
}

}  // namespace triprop
