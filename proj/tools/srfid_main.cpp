// srfid command-line front end: dielectric data in, deterministic CSV out.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srfid/constants.hpp"
#include "srfid/csv.hpp"
#include "srfid/dielectric.hpp"
#include "srfid/emitters.hpp"
#include "srfid/errors.hpp"
#include "srfid/fidelity.hpp"
#include "srfid/green_free.hpp"
#include "srfid/green_planar.hpp"
#include "srfid/green_sphere.hpp"

namespace {

using srfid::complexd;

// Exit codes, one per failure family so scripts can branch on them.
enum ExitCode : int {
    exit_ok = 0,
    exit_other = 1,
    exit_usage = 2,
    exit_missing_file = 3,
    exit_parse = 4,
    exit_range = 5,
    exit_convergence = 6,
    exit_domain = 7,
};

struct Sweep {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log = false;
};

Sweep parse_sweep(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ':')) parts.push_back(cell);
    if (parts.size() != 3 && parts.size() != 4)
        throw CLI::ValidationError("sweep", "expected min:max:count[:log], got '" + spec + "'");
    Sweep s;
    try {
        size_t pos = 0;
        s.min = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw std::invalid_argument(parts[0]);
        s.max = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw std::invalid_argument(parts[1]);
        s.count = std::stoi(parts[2], &pos);
        if (pos != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("sweep", "malformed numbers in '" + spec + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] != "log")
            throw CLI::ValidationError("sweep", "unknown sweep modifier '" + parts[3] + "'");
        s.log = true;
    }
    if (s.count < 1) throw CLI::ValidationError("sweep", "count must be >= 1");
    if (s.count > 1 && !(s.max > s.min))
        throw CLI::ValidationError("sweep", "need min < max for count > 1");
    if (s.log && !(s.min > 0.0))
        throw CLI::ValidationError("sweep", "log spacing needs min > 0");
    return s;
}

std::vector<double> build_grid(const Sweep& s) {
    std::vector<double> g;
    g.reserve(static_cast<size_t>(s.count));
    if (s.count == 1) {
        g.push_back(s.min);
        return g;
    }
    for (int i = 0; i < s.count; ++i) {
        const double t = static_cast<double>(i) / (s.count - 1);
        g.push_back(s.log ? s.min * std::pow(s.max / s.min, t)
                          : s.min + (s.max - s.min) * t);
    }
    g.back() = s.max;  // pin the endpoint against rounding
    return g;
}

// Parse "dx,dy,dz".
srfid::Vec3 parse_vec3(const std::string& spec) {
    std::vector<double> v;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            size_t pos = 0;
            v.push_back(std::stod(cell, &pos));
            if (pos != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw CLI::ValidationError("dipole", "malformed component '" + cell + "'");
        }
    }
    if (v.size() != 3) throw CLI::ValidationError("dipole", "expected dx,dy,dz");
    return {v[0], v[1], v[2]};
}

// --model lorentz:<eps_inf>:<f,w,g;...> with f in eV^2, w and g in eV;
// or --model vacuum.
srfid::Medium parse_model(const std::string& spec) {
    if (spec == "vacuum") {
        srfid::LorentzModel m;
        m.eps_inf = 1.0;
        m.id = "vacuum";
        return m;
    }
    const std::string prefix = "lorentz:";
    if (spec.rfind(prefix, 0) != 0)
        throw CLI::ValidationError("model", "unknown model '" + spec + "'");
    const std::string body = spec.substr(prefix.size());
    const auto colon = body.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("model", "expected lorentz:<eps_inf>:<f,w,g;...>");
    srfid::LorentzModel m;
    m.id = "lorentz";
    try {
        size_t pos = 0;
        const std::string eps_inf_str = body.substr(0, colon);
        m.eps_inf = std::stod(eps_inf_str, &pos);
        if (pos != eps_inf_str.size()) throw std::invalid_argument(eps_inf_str);
    } catch (const std::exception&) {
        throw CLI::ValidationError("model", "malformed eps_inf");
    }
    const double ev = srfid::constants::ev_to_angular_frequency(1.0);
    std::stringstream groups(body.substr(colon + 1));
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<double> v;
        std::stringstream ss(group);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t pos = 0;
                v.push_back(std::stod(cell, &pos));
                if (pos != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw CLI::ValidationError("model", "malformed oscillator number '" + cell + "'");
            }
        }
        if (v.size() != 3)
            throw CLI::ValidationError("model", "each oscillator needs f,w,g");
        m.oscillators.push_back({v[0] * ev * ev, v[1] * ev, v[2] * ev});
    }
    srfid::validate(m);
    return m;
}

int threads_from_env() {
    const char* s = std::getenv("SRFID_THREADS");
    if (!s) return 0;
    try {
        return std::max(1, std::stoi(s));
    } catch (const std::exception&) {
        return 0;
    }
}

// Common options shared by the physics subcommands.
struct CommonOpts {
    std::optional<double> omega;
    std::optional<double> ev;
    std::optional<std::string> eps_path;
    std::optional<std::string> model_spec;
    std::string output;
    double tol = 1e-10;
    int lmax = 200;
    std::optional<std::string> sweep_x, sweep_z, sweep_radius, sweep_theta, sweep_arc,
        sweep_omega, sweep_ev;
    double x = 0.0, z = 0.0, radius = 0.0, theta = 0.0;
    std::optional<double> arc;
};

void add_frequency_flags(CLI::App* cmd, CommonOpts& o, bool required) {
    auto* om = cmd->add_option("--omega", o.omega, "transition angular frequency (rad/s)");
    auto* ev = cmd->add_option("--ev", o.ev, "transition energy (eV)");
    om->excludes(ev);
    ev->excludes(om);
    (void)required;
}

void add_medium_flags(CLI::App* cmd, CommonOpts& o) {
    auto* eps = cmd->add_option("--eps", o.eps_path, "dielectric table CSV path");
    auto* model =
        cmd->add_option("--model", o.model_spec, "lorentz:<eps_inf>:<f,w,g;...> (eV^2, eV, eV) or vacuum");
    eps->excludes(model);
    model->excludes(eps);
}

void add_series_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "multipole series stop tolerance");
    cmd->add_option("--lmax", o.lmax, "retarded multipole cap (<= 200)");
}

void add_output_flag(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--output", o.output, "write CSV here instead of stdout");
}

double resolve_omega(const CommonOpts& o) {
    if (o.omega) return *o.omega;
    if (o.ev) return srfid::constants::ev_to_angular_frequency(*o.ev);
    throw CLI::RequiredError("--omega or --ev");
}

srfid::Medium resolve_medium(const CommonOpts& o) {
    if (o.eps_path) return srfid::load_dielectric_table_file(*o.eps_path);
    if (o.model_spec) return parse_model(*o.model_spec);
    throw CLI::RequiredError("--eps or --model");
}

// The one-sweep rule: collect whichever sweep flags were set.
struct ActiveSweep {
    std::string param;  // "x", "z", "radius", "theta", "arc", "omega", "ev"
    Sweep sweep;
};

std::optional<ActiveSweep> pick_sweep(const CommonOpts& o) {
    std::vector<std::pair<std::string, const std::optional<std::string>*>> all = {
        {"x", &o.sweep_x},         {"z", &o.sweep_z},       {"radius", &o.sweep_radius},
        {"theta", &o.sweep_theta}, {"arc", &o.sweep_arc},   {"omega", &o.sweep_omega},
        {"ev", &o.sweep_ev},
    };
    std::optional<ActiveSweep> found;
    for (const auto& [name, val] : all) {
        if (!val->has_value()) continue;
        if (found)
            throw CLI::ValidationError("sweep", "at most one --sweep-<param> may be given");
        found = ActiveSweep{name, parse_sweep(**val)};
    }
    return found;
}

// Sweeps capture per-point failures as CSV comments; a single-point run lets
// the typed exception propagate so the process exit code reflects it.
srfid::FidelityCurve eval_curve(const std::function<double(double)>& gen,
                                const std::vector<double>& grid, bool single_point,
                                std::string param, std::string geometry, double omega,
                                std::string medium) {
    if (!single_point)
        return srfid::scan(gen, grid, param, geometry, omega, medium, threads_from_env());
    srfid::FidelityCurve c;
    c.parameter_name = std::move(param);
    c.geometry = std::move(geometry);
    c.omega = omega;
    c.medium_id = std::move(medium);
    c.samples.push_back({grid[0], gen(grid[0]), true, ""});
    return c;
}

void write_rows(std::ostream& os, const std::string& header,
                const std::string& columns, const srfid::FidelityCurve& curve) {
    os << header << "\n" << columns << "\n";
    for (const auto& pt : curve.samples) {
        if (pt.ok) {
            os << srfid::csv::format_double(pt.parameter) << ","
               << srfid::csv::format_double(pt.sigma) << "\n";
        } else {
            os << "# error param=" << srfid::csv::format_double(pt.parameter) << " "
               << pt.error << "\n";
        }
    }
}

int emit(const CommonOpts& o, const std::string& header, const std::string& columns,
         const srfid::FidelityCurve& curve) {
    if (o.output.empty()) {
        write_rows(std::cout, header, columns, curve);
        return exit_ok;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << o.output << "'\n";
        return exit_missing_file;
    }
    write_rows(out, header, columns, curve);
    return exit_ok;
}

std::string kv(const std::string& k, double v) {
    return " " + k + "=" + srfid::csv::format_double(v);
}

void warn_nonret(double k0, double scale, const std::string& geom) {
    if (k0 * scale > 0.1)
        std::cerr << "warning: k0*" << geom << "-scale = " << srfid::csv::format_double(k0 * scale)
                  << " > 0.1; the non-retarded approximation is stretched here\n";
}

// ---- fidelity free ---------------------------------------------------------

int run_fidelity_free(const CommonOpts& o) {
    const double omega = resolve_omega(o);
    const auto active = pick_sweep(o);
    if (active && active->param != "x" && active->param != "omega" && active->param != "ev")
        throw CLI::ValidationError("sweep", "fidelity free sweeps x, omega, or ev");

    std::string param = "x";
    std::vector<double> grid{o.x};
    std::function<double(double)> gen = [omega](double x) { return srfid::sigma_free(x, omega); };
    if (active) {
        param = active->param;
        grid = build_grid(active->sweep);
        if (param == "omega")
            gen = [&o](double w) { return srfid::sigma_free(o.x, w); };
        else if (param == "ev")
            gen = [&o](double e) {
                return srfid::sigma_free(o.x, srfid::constants::ev_to_angular_frequency(e));
            };
    }
    const auto curve = eval_curve(gen, grid, !active, param, "free", omega, "none");
    std::string header = "# srfid fidelity-free";
    header += kv("omega", omega) + kv("x", o.x) + " sweep=" + param;
    return emit(o, header, "param,sigma", curve);
}

// ---- fidelity plane --------------------------------------------------------

int run_fidelity_plane(const CommonOpts& o) {
    const double omega = resolve_omega(o);
    const auto medium = resolve_medium(o);
    if (!(o.z > 0.0)) throw CLI::ValidationError("geometry", "--z must be > 0");
    const auto active = pick_sweep(o);
    if (active && active->param != "x" && active->param != "z" && active->param != "omega" &&
        active->param != "ev")
        throw CLI::ValidationError("sweep", "fidelity plane sweeps x, z, omega, or ev");

    const double k0 = omega / srfid::constants::c;
    warn_nonret(k0, std::max(o.x, 2.0 * o.z), "plane");

    std::string param = "x";
    std::vector<double> grid{o.x};
    std::function<double(double)> gen = [&, omega](double x) {
        return srfid::sigma_plane(x, o.z, omega, srfid::permittivity(medium, omega));
    };
    if (active) {
        param = active->param;
        grid = build_grid(active->sweep);
        if (param == "z")
            gen = [&, omega](double z) {
                return srfid::sigma_plane(o.x, z, omega, srfid::permittivity(medium, omega));
            };
        else if (param == "omega")
            gen = [&](double w) {
                return srfid::sigma_plane(o.x, o.z, w, srfid::permittivity(medium, w));
            };
        else if (param == "ev")
            gen = [&](double e) {
                const double w = srfid::constants::ev_to_angular_frequency(e);
                return srfid::sigma_plane(o.x, o.z, w, srfid::permittivity(medium, w));
            };
    }
    const auto curve =
        eval_curve(gen, grid, !active, param, "plane", omega, srfid::medium_id(medium));
    std::string header = "# srfid fidelity-plane";
    header += kv("omega", omega) + kv("x", o.x) + kv("z", o.z) +
              " medium=" + srfid::medium_id(medium) + " sweep=" + param;
    return emit(o, header, "param,sigma", curve);
}

// ---- fidelity sphere -------------------------------------------------------

int run_fidelity_sphere(const CommonOpts& o) {
    const double omega = resolve_omega(o);
    const auto medium = resolve_medium(o);
    if (!(o.radius > 0.0)) throw CLI::ValidationError("geometry", "--radius must be > 0");
    if (!(o.z > 0.0)) throw CLI::ValidationError("geometry", "--z must be > 0");
    if (o.arc && o.theta != 0.0)
        throw CLI::ValidationError("geometry", "--arc and --theta are mutually exclusive");
    srfid::MieSeriesControl ctl{o.tol, o.lmax};
    srfid::validate(ctl);

    const auto active = pick_sweep(o);
    if (active && active->param == "x")
        throw CLI::ValidationError("sweep", "fidelity sphere sweeps arc, theta, radius, z, omega, or ev");

    const double theta0 = o.arc ? *o.arc / (o.radius + o.z) : o.theta;
    const double k0 = omega / srfid::constants::c;
    {
        srfid::SphereGeometry probe{o.radius, o.z, theta0};
        srfid::validate(probe);
        warn_nonret(k0, std::max(probe.chord(), 2.0 * o.z), "sphere");
    }

    std::string param = "arc";
    std::vector<double> grid{theta0 * (o.radius + o.z)};
    std::function<double(double)> gen = [&, omega](double arc) {
        const auto g = srfid::SphereGeometry::from_arc(o.radius, o.z, arc);
        return srfid::sigma_sphere(g, omega, srfid::permittivity(medium, omega), ctl);
    };
    if (active) {
        param = active->param;
        grid = build_grid(active->sweep);
        if (param == "theta")
            gen = [&, omega](double th) {
                const srfid::SphereGeometry g{o.radius, o.z, th};
                return srfid::sigma_sphere(g, omega, srfid::permittivity(medium, omega), ctl);
            };
        else if (param == "radius")
            gen = [&, omega, theta0](double R) {
                srfid::SphereGeometry g{R, o.z, theta0};
                if (o.arc) g = srfid::SphereGeometry::from_arc(R, o.z, *o.arc);
                return srfid::sigma_sphere(g, omega, srfid::permittivity(medium, omega), ctl);
            };
        else if (param == "z")
            gen = [&, omega, theta0](double z) {
                srfid::SphereGeometry g{o.radius, z, theta0};
                if (o.arc) g = srfid::SphereGeometry::from_arc(o.radius, z, *o.arc);
                return srfid::sigma_sphere(g, omega, srfid::permittivity(medium, omega), ctl);
            };
        else if (param == "omega")
            gen = [&, theta0](double w) {
                const srfid::SphereGeometry g{o.radius, o.z, theta0};
                return srfid::sigma_sphere(g, w, srfid::permittivity(medium, w), ctl);
            };
        else if (param == "ev")
            gen = [&, theta0](double e) {
                const double w = srfid::constants::ev_to_angular_frequency(e);
                const srfid::SphereGeometry g{o.radius, o.z, theta0};
                return srfid::sigma_sphere(g, w, srfid::permittivity(medium, w), ctl);
            };
    }
    const auto curve =
        eval_curve(gen, grid, !active, param, "sphere", omega, srfid::medium_id(medium));
    std::string header = "# srfid fidelity-sphere";
    header += kv("omega", omega) + kv("radius", o.radius) + kv("z", o.z) +
              kv("theta", theta0) + " medium=" + srfid::medium_id(medium) + " sweep=" + param;
    return emit(o, header, "param,sigma", curve);
}

// ---- rate ------------------------------------------------------------------

struct EmitterOpts {
    std::optional<std::string> dipole;
    std::optional<std::string> dipole_debye;
};

void add_dipole_flags(CLI::App* cmd, EmitterOpts& e) {
    auto* d = cmd->add_option("--dipole", e.dipole, "dipole dx,dy,dz (C m)");
    auto* dd = cmd->add_option("--dipole-debye", e.dipole_debye, "dipole dx,dy,dz (debye)");
    d->excludes(dd);
    dd->excludes(d);
}

srfid::Vec3 resolve_dipole(const EmitterOpts& e) {
    if (e.dipole) return parse_vec3(*e.dipole);
    srfid::Vec3 d{0.0, 0.0, 1.0};
    if (e.dipole_debye) d = parse_vec3(*e.dipole_debye);
    for (auto& c : d) c *= srfid::constants::debye;
    return d;
}

// The scattering-part coincidence mode density at height z (plane) or on a
// sphere of radius R at height z, as a function of omega.
// crossing to the sphere only swaps the coincidence series; both geometries
// use the non-retarded forms (the retarded sphere series is available in the
// library but needs l > 200 once z << R, so the CLI stays uniform here).
srfid::GreenTensor scattering_density(double omega, double z, double radius,
                                      const srfid::Medium& medium,
                                      const srfid::MieSeriesControl& ctl) {
    const complexd eps = srfid::permittivity(medium, omega);
    if (radius > 0.0) {
        const double r = radius + z;
        return srfid::g_sphere_coincident_nonret(r, omega, radius, eps, ctl, nullptr).imag_part();
    }
    return srfid::g1_planar_coincident_nonret(z, omega, eps).imag_part();
}

int run_rate(const CommonOpts& o, const EmitterOpts& eo) {
    const double omega = resolve_omega(o);
    const auto medium = resolve_medium(o);
    if (!(o.z > 0.0)) throw CLI::ValidationError("geometry", "--z must be > 0");
    srfid::MieSeriesControl ctl{o.tol, o.lmax};
    srfid::validate(ctl);
    const bool sphere = o.radius > 0.0;
    const srfid::Vec3 dipole = resolve_dipole(eo);

    const double k0 = omega / srfid::constants::c;
    warn_nonret(k0, 2.0 * o.z, sphere ? "sphere" : "plane");

    const auto active = pick_sweep(o);
    if (active && active->param != "z" && active->param != "radius" &&
        active->param != "omega" && active->param != "ev")
        throw CLI::ValidationError("sweep", "rate sweeps z, radius, omega, or ev");
    if (active && active->param == "radius" && !sphere)
        throw CLI::ValidationError("sweep", "--sweep-radius needs a sphere geometry");

    auto rate_at = [&](double z, double radius, double w) {
        const srfid::Emitter em{w, dipole, {0.0, 0.0, radius + z}};
        const auto imG = scattering_density(w, z, radius, medium, ctl);
        return srfid::purcell_rates(em, imG).total();
    };

    std::string param = "z";
    std::vector<double> grid{o.z};
    std::function<double(double)> gen = [&, omega](double z) { return rate_at(z, o.radius, omega); };
    if (active) {
        param = active->param;
        grid = build_grid(active->sweep);
        if (param == "radius")
            gen = [&, omega](double R) { return rate_at(o.z, R, omega); };
        else if (param == "omega")
            gen = [&](double w) { return rate_at(o.z, o.radius, w); };
        else if (param == "ev")
            gen = [&](double e) {
                return rate_at(o.z, o.radius, srfid::constants::ev_to_angular_frequency(e));
            };
    }
    const auto curve = eval_curve(gen, grid, !active, param, sphere ? "sphere" : "plane",
                                  omega, srfid::medium_id(medium));
    std::string header = "# srfid rate";
    header += kv("omega", omega) + kv("z", o.z);
    if (sphere) header += kv("radius", o.radius);
    header += kv("dipole_x", dipole[0]) + kv("dipole_y", dipole[1]) + kv("dipole_z", dipole[2]);
    header += " medium=" + srfid::medium_id(medium) + " sweep=" + param;
    return emit(o, header, "param,rate_per_s", curve);
}

// ---- shift -----------------------------------------------------------------

int run_shift(const CommonOpts& o, const EmitterOpts& eo, const std::string& grid_spec) {
    const double omega = resolve_omega(o);
    const auto medium = resolve_medium(o);
    if (!(o.z > 0.0)) throw CLI::ValidationError("geometry", "--z must be > 0");
    srfid::MieSeriesControl ctl{o.tol, o.lmax};
    srfid::validate(ctl);
    const bool sphere = o.radius > 0.0;
    const srfid::Vec3 dipole = resolve_dipole(eo);

    // Integration window: table support by default; --grid min:max overrides;
    // analytic models have unbounded support, so --grid is required there.
    std::vector<double> breakpoints;
    double wlo = 0.0, whi = 0.0;
    if (const auto* table = std::get_if<srfid::DielectricTable>(&medium)) {
        wlo = table->omega_min();
        whi = table->omega_max();
        for (double e : table->energy_ev)
            breakpoints.push_back(srfid::constants::ev_to_angular_frequency(e));
    } else if (grid_spec.empty()) {
        throw CLI::RequiredError("--grid min:max (analytic models have unbounded support)");
    }
    if (!grid_spec.empty()) {
        const auto colon = grid_spec.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("grid", "expected --grid min:max in rad/s");
        try {
            wlo = std::stod(grid_spec.substr(0, colon));
            whi = std::stod(grid_spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("grid", "malformed --grid numbers");
        }
    }

    const double k0max = whi / srfid::constants::c;
    warn_nonret(k0max, 2.0 * o.z, sphere ? "sphere" : "plane");

    auto shift_at = [&](double z) {
        const srfid::Emitter em{omega, dipole, {0.0, 0.0, o.radius + z}};
        auto imG = [&](double w) {
            return scattering_density(w, z, o.radius, medium, ctl);
        };
        // Piecewise integration over table segments keeps the quadrature on
        // smooth pieces; a plain window otherwise.
        std::vector<double> edges;
        edges.push_back(wlo);
        for (double b : breakpoints)
            if (b > wlo && b < whi) edges.push_back(b);
        edges.push_back(whi);
        double total = 0.0;
        for (size_t i = 0; i + 1 < edges.size(); ++i)
            total += srfid::frequency_shift(em, imG, {edges[i], edges[i + 1]});
        return total;
    };

    const auto active = pick_sweep(o);
    if (active && active->param != "z")
        throw CLI::ValidationError("sweep", "shift sweeps z only");
    std::string param = "z";
    std::vector<double> grid{o.z};
    std::function<double(double)> gen = shift_at;
    if (active) grid = build_grid(active->sweep);

    const auto curve = eval_curve(gen, grid, !active, param, sphere ? "sphere" : "plane",
                                  omega, srfid::medium_id(medium));
    std::string header = "# srfid shift";
    header += kv("omega", omega) + kv("z", o.z);
    if (sphere) header += kv("radius", o.radius);
    header += kv("grid_min", wlo) + kv("grid_max", whi);
    header += kv("dipole_x", dipole[0]) + kv("dipole_y", dipole[1]) + kv("dipole_z", dipole[2]);
    header += " medium=" + srfid::medium_id(medium) + " sweep=" + param;
    return emit(o, header, "param,shift_rad_per_s", curve);
}

// ---- dielectric inspect ----------------------------------------------------

int run_inspect(const CommonOpts& o) {
    const auto medium = resolve_medium(o);
    const auto active = pick_sweep(o);
    if (active && active->param != "ev")
        throw CLI::ValidationError("sweep", "dielectric inspect sweeps ev only");

    std::vector<double> energies;
    if (active) {
        energies = build_grid(active->sweep);
    } else if (const auto* table = std::get_if<srfid::DielectricTable>(&medium)) {
        energies = table->energy_ev;
    } else {
        throw CLI::RequiredError("--sweep-ev (models have no intrinsic grid)");
    }

    std::ostringstream body;
    body << "# srfid dielectric-inspect medium=" << srfid::medium_id(medium) << "\n";
    body << "param,re_eps,im_eps\n";
    for (double e : energies) {
        const complexd eps = srfid::permittivity(medium, srfid::constants::ev_to_angular_frequency(e));
        body << srfid::csv::format_double(e) << "," << srfid::csv::format_double(eps.real())
             << "," << srfid::csv::format_double(eps.imag()) << "\n";
    }
    if (o.output.empty()) {
        std::cout << body.str();
        return exit_ok;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << o.output << "'\n";
        return exit_missing_file;
    }
    out << body.str();
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"superradiance fidelity and Purcell-rate toolkit"};
    app.require_subcommand(1);

    CommonOpts opt;
    EmitterOpts eopt;
    std::string shift_grid;

    auto add_sweeps = [&](CLI::App* cmd, std::initializer_list<const char*> names) {
        for (const char* n : names) {
            const std::string name = n;
            if (name == "x") cmd->add_option("--sweep-x", opt.sweep_x, "sweep x: min:max:count[:log]");
            if (name == "z") cmd->add_option("--sweep-z", opt.sweep_z, "sweep z: min:max:count[:log]");
            if (name == "radius")
                cmd->add_option("--sweep-radius", opt.sweep_radius, "sweep radius: min:max:count[:log]");
            if (name == "theta")
                cmd->add_option("--sweep-theta", opt.sweep_theta, "sweep theta: min:max:count[:log]");
            if (name == "arc")
                cmd->add_option("--sweep-arc", opt.sweep_arc, "sweep arc length: min:max:count[:log]");
            if (name == "omega")
                cmd->add_option("--sweep-omega", opt.sweep_omega, "sweep omega: min:max:count[:log]");
            if (name == "ev")
                cmd->add_option("--sweep-ev", opt.sweep_ev, "sweep energy: min:max:count[:log]");
        }
    };

    auto* fid = app.add_subcommand("fidelity", "superradiance fidelity sigma");
    fid->require_subcommand(1);

    auto* ffree = fid->add_subcommand("free", "two emitters in free space");
    add_frequency_flags(ffree, opt, true);
    ffree->add_option("--x", opt.x, "emitter separation (m)");
    add_sweeps(ffree, {"x", "omega", "ev"});
    add_output_flag(ffree, opt);

    auto* fplane = fid->add_subcommand("plane", "two emitters above a half-space");
    add_frequency_flags(fplane, opt, true);
    add_medium_flags(fplane, opt);
    fplane->add_option("--x", opt.x, "lateral separation (m)");
    fplane->add_option("--z", opt.z, "height above the surface (m)");
    add_sweeps(fplane, {"x", "z", "omega", "ev"});
    add_output_flag(fplane, opt);

    auto* fsphere = fid->add_subcommand("sphere", "two emitters on a sphere");
    add_frequency_flags(fsphere, opt, true);
    add_medium_flags(fsphere, opt);
    fsphere->add_option("--radius", opt.radius, "sphere radius (m)");
    fsphere->add_option("--z", opt.z, "height above the surface (m)");
    fsphere->add_option("--theta", opt.theta, "angular separation (rad)");
    fsphere->add_option("--arc", opt.arc, "arc-length separation (m)");
    add_series_flags(fsphere, opt);
    add_sweeps(fsphere, {"arc", "theta", "radius", "z", "omega", "ev"});
    add_output_flag(fsphere, opt);

    auto* rate = app.add_subcommand("rate", "Purcell-modified decay rate");
    add_frequency_flags(rate, opt, true);
    add_medium_flags(rate, opt);
    rate->add_option("--z", opt.z, "height above the surface (m)");
    rate->add_option("--radius", opt.radius, "sphere radius (m); omit for a plane");
    add_dipole_flags(rate, eopt);
    add_series_flags(rate, opt);
    add_sweeps(rate, {"z", "radius", "omega", "ev"});
    add_output_flag(rate, opt);

    auto* shift = app.add_subcommand("shift", "environment-induced frequency shift");
    add_frequency_flags(shift, opt, true);
    add_medium_flags(shift, opt);
    shift->add_option("--z", opt.z, "height above the surface (m)");
    shift->add_option("--radius", opt.radius, "sphere radius (m); omit for a plane");
    shift->add_option("--grid", shift_grid, "integration window min:max (rad/s)");
    add_dipole_flags(shift, eopt);
    add_series_flags(shift, opt);
    add_sweeps(shift, {"z"});
    add_output_flag(shift, opt);

    auto* diel = app.add_subcommand("dielectric", "dielectric data utilities");
    diel->require_subcommand(1);
    auto* inspect = diel->add_subcommand("inspect", "tabulate eps(E) as CSV");
    add_medium_flags(inspect, opt);
    add_sweeps(inspect, {"ev"});
    add_output_flag(inspect, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (ffree->parsed()) return run_fidelity_free(opt);
        if (fplane->parsed()) return run_fidelity_plane(opt);
        if (fsphere->parsed()) return run_fidelity_sphere(opt);
        if (rate->parsed()) return run_rate(opt, eopt);
        if (shift->parsed()) return run_shift(opt, eopt, shift_grid);
        if (inspect->parsed()) return run_inspect(opt);
        std::cerr << "error: no subcommand\n";
        return exit_usage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const srfid::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_missing_file;
    } catch (const srfid::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const srfid::RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_range;
    } catch (const srfid::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_convergence;
    } catch (const srfid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_other;
    }
}
