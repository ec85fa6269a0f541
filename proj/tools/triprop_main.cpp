// Command-line surface over the library: configuration ingestion, the five
// commands (decouple, spectrum, propagate, td-propagate, verify) and JSON/CSV
// emission. No physics happens here.
//
// Exit codes: 0 success, 1 validation/usage error, 2 caustic, 3 verification
// failure. Diagnostics go to standard error; TRIPROP_LOG=debug adds progress
// notes.

#include "triprop/model.hpp"
#include "triprop/propagator.hpp"
#include "triprop/spectrum.hpp"
#include "triprop/timedep.hpp"
#include "triprop/transform.hpp"
#include "triprop/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace triprop;

bool log_enabled() {
    const char* env = std::getenv("TRIPROP_LOG");
    if (env == nullptr) return false;
    const std::string v(env);
    return v == "debug" || v == "info" || v == "1";
}

void log_note(const std::string& msg) {
    if (log_enabled()) std::cerr << "[triprop] " << msg << "\n";
}

// round-trip-exact float formatting keeps outputs byte-identical across runs
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

std::array<Vec3, 3> parse_positions(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_array() || doc.size() != 3)
        throw std::invalid_argument("positions must be a JSON array of three 3-vectors");
    std::array<Vec3, 3> out{};
    for (int p = 0; p < 3; ++p) {
        const auto v = doc[p].get<std::vector<double>>();
        if (v.size() != 3) throw std::invalid_argument("each position needs 3 components");
        out[p] = {v[0], v[1], v[2]};
    }
    return out;
}

std::string kernel_json(const KernelValue& kv) {
    std::ostringstream os;
    os << "{\n  \"re\": " << fmt17(kv.amplitude.real())
       << ",\n  \"im\": " << fmt17(kv.amplitude.imag())
       << ",\n  \"caustic\": " << (kv.caustic_flag ? "true" : "false")
       << ",\n  \"branch\": " << kv.branch_index << "\n}\n";
    return os.str();
}

int run_decouple(const std::string& config_path, const std::string& out_path) {
    const auto sys = parse_config(read_file(config_path));
    const auto jac = to_jacobi(sys);
    const auto fr = normal_modes(jac, sys.gauge);
    std::ostringstream os;
    os << "{\n"
       << "  \"M1\": " << fmt17(jac.M1) << ",\n"
       << "  \"M2\": " << fmt17(jac.M2) << ",\n"
       << "  \"M3\": " << fmt17(jac.M3) << ",\n"
       << "  \"omega1_sq\": " << fmt17(jac.omega1_sq) << ",\n"
       << "  \"omega2_sq\": " << fmt17(jac.omega2_sq) << ",\n"
       << "  \"lambda\": " << fmt17(jac.lambda) << ",\n"
       << "  \"phi\": " << fmt17(fr.phi) << ",\n"
       << "  \"Omega1_sq\": " << fmt17(fr.Omega1_sq) << ",\n"
       << "  \"Omega2_sq\": " << fmt17(fr.Omega2_sq) << ",\n"
       << "  \"R\": " << fmt17(fr.R) << "\n"
       << "}\n";
    emit(os.str(), out_path);
    return 0;
}

int run_spectrum(const std::string& config_path, const std::string& out_path,
                 std::optional<double> e_max) {
    const auto sys = parse_config(read_file(config_path));
    const auto fr = normal_modes(to_jacobi(sys), sys.gauge);
    const double ground =
        1.5 * sys.hbar * (std::sqrt(fr.Omega1_sq) + std::sqrt(fr.Omega2_sq));
    const double cap = e_max.value_or(2.0 * ground);
    const auto levels = enumerate_levels(fr, sys.hbar, cap);
    std::ostringstream os;
    os << "n1x,n1y,n1z,n2x,n2y,n2z,energy,degeneracy\n";
    for (const auto& lv : levels) {
        os << lv.index.n1[0] << ',' << lv.index.n1[1] << ',' << lv.index.n1[2] << ','
           << lv.index.n2[0] << ',' << lv.index.n2[1] << ',' << lv.index.n2[2] << ','
           << fmt17(lv.energy) << ',' << lv.degeneracy << "\n";
    }
    emit(os.str(), out_path);
    return 0;
}

int run_propagate(const std::string& config_path, const std::string& out_path, double tau,
                  const std::string& from, const std::string& to) {
    const auto sys = parse_config(read_file(config_path));
    Endpoints ep;
    ep.t_a = 0.0;
    ep.t_b = tau;
    ep.r_initial = parse_positions(from);
    ep.r_final = parse_positions(to);
    const auto kv = three_body_kernel(sys, ep);
    if (kv.caustic_flag) {
        const auto fr = normal_modes(to_jacobi(sys), sys.gauge);
        if (const auto rep = find_caustic(fr, tau)) {
            std::cerr << "caustic: mode " << rep->mode << " at Omega*tau = " << rep->omega_tau
                      << "\n";
        } else {
            std::cerr << "caustic encountered\n";
        }
        return 2;
    }
    emit(kernel_json(kv), out_path);
    return 0;
}

int run_td_propagate(const std::string& config_path, const std::string& out_path, double tau,
                     const std::string& from, const std::string& to) {
    const auto tds = build_td_system(read_file(config_path), 0.0, tau);
    Endpoints ep;
    ep.t_a = 0.0;
    ep.t_b = tau;
    ep.r_initial = parse_positions(from);
    ep.r_final = parse_positions(to);
    const auto kv = td_three_body_kernel(tds, ep);
    if (kv.caustic_flag) {
        for (int mode = 1; mode <= 2; ++mode) {
            if (tds.mode_omega_sq(mode, 0.0) <= 0.0) continue;
            const auto erm =
                solve_ermakov([&](double t) { return tds.mode_omega_sq(mode, t); }, 0.0, tau);
            if (std::abs(std::sin(erm.delta())) < caustic_tolerance) {
                std::cerr << "caustic: mode " << mode << " at phase " << erm.delta() << "\n";
                return 2;
            }
        }
        std::cerr << "caustic encountered\n";
        return 2;
    }
    emit(kernel_json(kv), out_path);
    return 0;
}

int run_verify(const std::string& config_path, const std::string& out_path,
               const std::string& suite_name, std::size_t grid_points, double domain) {
    std::optional<PhysicalSystem> sys;
    if (!config_path.empty()) sys = parse_config(read_file(config_path));
    std::vector<std::string> names;
    if (suite_name == "all")
        names = verify_suite_names();
    else
        names.push_back(suite_name);
    std::ostringstream os;
    os << "{\n  \"suites\": [";
    bool all_pass = true;
    bool first_suite = true;
    for (const auto& name : names) {
        log_note("running suite " + name);
        const auto suite = run_verify_suite(name, sys, grid_points, domain);
        all_pass = all_pass && suite.pass();
        os << (first_suite ? "\n" : ",\n");
        first_suite = false;
        os << "    {\n      \"name\": \"" << suite.name << "\",\n      \"checks\": [";
        bool first_check = true;
        for (const auto& c : suite.checks) {
            os << (first_check ? "\n" : ",\n");
            first_check = false;
            os << "        {\"name\": \"" << c.name << "\", \"residual\": " << fmt17(c.residual)
               << ", \"tolerance\": " << fmt17(c.tolerance)
               << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
        }
        os << "\n      ],\n      \"pass\": " << (suite.pass() ? "true" : "false") << "\n    }";
    }
    os << "\n  ],\n  \"pass\": " << (all_pass ? "true" : "false") << "\n}\n";
    emit(os.str(), out_path);
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact three-body quadratic-interaction propagators and spectra"};
    app.require_subcommand(1);

    std::string config_path, out_path, from, to, suite = "all";
    double tau = 1.0;
    std::optional<double> e_max;
    std::size_t grid_points = 2048;
    double domain = 12.0;

    auto* decouple = app.add_subcommand("decouple", "emit the decoupled mode frame as JSON");
    decouple->add_option("--config", config_path, "configuration file")->required();
    decouple->add_option("--out", out_path, "output path (default stdout)");

    auto* spectrum =
        app.add_subcommand("spectrum", "enumerate discrete levels below an energy cap as CSV");
    spectrum->add_option("--config", config_path, "configuration file")->required();
    spectrum->add_option("--out", out_path, "output path (default stdout)");
    spectrum->add_option("--max-energy", e_max, "energy cap (default twice the ground state)");

    auto* propagate = app.add_subcommand("propagate", "evaluate the composite kernel as JSON");
    propagate->add_option("--config", config_path, "configuration file")->required();
    propagate->add_option("--out", out_path, "output path (default stdout)");
    propagate->add_option("--tau", tau, "evolution interval")->required();
    propagate->add_option("--from", from, "initial positions [[..],[..],[..]]")->required();
    propagate->add_option("--to", to, "final positions [[..],[..],[..]]")->required();

    auto* td = app.add_subcommand("td-propagate",
                                  "evaluate the time-dependent composite kernel as JSON");
    td->add_option("--config", config_path, "time-dependent configuration file")->required();
    td->add_option("--out", out_path, "output path (default stdout)");
    td->add_option("--tau", tau, "evolution interval")->required();
    td->add_option("--from", from, "initial positions [[..],[..],[..]]")->required();
    td->add_option("--to", to, "final positions [[..],[..],[..]]")->required();

    auto* verify = app.add_subcommand("verify", "run verification suites and emit a JSON report");
    verify->add_option("--config", config_path, "optional configuration for system-level suites");
    verify->add_option("--out", out_path, "output path (default stdout)");
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--grid-points", grid_points, "grid size for the PDE comparisons");
    verify->add_option("--domain", domain, "half-width of the comparison grid");

    CLI11_PARSE(app, argc, argv);

    try {
        if (decouple->parsed()) return run_decouple(config_path, out_path);
        if (spectrum->parsed()) return run_spectrum(config_path, out_path, e_max);
        if (propagate->parsed()) return run_propagate(config_path, out_path, tau, from, to);
        if (td->parsed()) return run_td_propagate(config_path, out_path, tau, from, to);
        if (verify->parsed()) return run_verify(config_path, out_path, suite, grid_points, domain);
    } catch (const CausticError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
