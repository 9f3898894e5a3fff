#include "srfid/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "srfid/constants.hpp"

namespace srfid {

namespace {

bool blank_or_comment(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::vector<double> parse_row(const std::string& line, size_t ncols, long line_no) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &pos);
        } catch (const std::exception&) {
            throw ParseError("expected a decimal number, got '" + cell + "'", line_no);
        }
        if (cell.find_first_not_of(" \t\r", pos) != std::string::npos)
            throw ParseError("trailing garbage after number in '" + cell + "'", line_no);
        if (!std::isfinite(v)) throw ParseError("non-finite value", line_no);
        out.push_back(v);
    }
    if (out.size() != ncols)
        throw ParseError("expected " + std::to_string(ncols) + " comma-separated columns, got " +
                             std::to_string(out.size()),
                         line_no);
    return out;
}

} // namespace

double DielectricTable::omega_min() const {
    return constants::ev_to_angular_frequency(energy_ev.front());
}

double DielectricTable::omega_max() const {
    return constants::ev_to_angular_frequency(energy_ev.back());
}

DielectricTable load_dielectric_table(std::istream& in, std::string id) {
    DielectricTable t;
    t.id = std::move(id);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_or_comment(line)) continue;
        const auto row = parse_row(line, 3, line_no);
        if (row[0] < 0.0) throw ParseError("negative photon energy", line_no);
        if (!t.energy_ev.empty() && row[0] <= t.energy_ev.back())
            throw ParseError("photon energies must be strictly increasing", line_no);
        if (row[2] < 0.0) throw ParseError("negative Im eps violates passivity", line_no);
        t.energy_ev.push_back(row[0]);
        t.eps.emplace_back(row[1], row[2]);
    }
    if (t.energy_ev.size() < 2)
        throw ParseError("dielectric table needs at least two samples", line_no);
    return t;
}

DielectricTable load_dielectric_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open dielectric table '" + path + "'");
    auto pos = path.find_last_of("/\\");
    return load_dielectric_table(in, pos == std::string::npos ? path : path.substr(pos + 1));
}

void load_imag_axis_samples(std::istream& in, DielectricTable& table) {
    std::vector<double> xi, eps_xi;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_or_comment(line)) continue;
        const auto row = parse_row(line, 2, line_no);
        if (row[0] < 0.0) throw ParseError("negative imaginary frequency", line_no);
        if (!xi.empty() && row[0] <= xi.back())
            throw ParseError("imaginary frequencies must be strictly increasing", line_no);
        if (row[1] < 1.0) throw ParseError("eps(i xi) must be real and >= 1", line_no);
        if (!eps_xi.empty() && row[1] > eps_xi.back() * (1.0 + 1e-12))
            throw ParseError("eps(i xi) must decrease monotonically", line_no);
        xi.push_back(row[0]);
        eps_xi.push_back(row[1]);
    }
    if (xi.size() < 2) throw ParseError("imaginary-axis table needs at least two samples", line_no);
    table.xi = std::move(xi);
    table.eps_xi = std::move(eps_xi);
}

void load_imag_axis_samples_file(const std::string& path, DielectricTable& table) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open imaginary-axis table '" + path + "'");
    load_imag_axis_samples(in, table);
}

void validate(const LorentzModel& model) {
    if (!(model.eps_inf >= 1.0))
        throw DomainError("LorentzModel: eps_inf must be >= 1");
    for (const auto& o : model.oscillators) {
        if (!(o.f >= 0.0)) throw DomainError("LorentzModel: oscillator strength must be >= 0");
        if (!(o.omega0 > 0.0)) throw DomainError("LorentzModel: resonance must be > 0");
        if (!(o.gamma > 0.0)) throw DomainError("LorentzModel: damping must be > 0");
    }
}

complexd permittivity(const DielectricTable& t, double omega) {
    if (omega < 0.0) throw DomainError("permittivity: omega must be >= 0");
    double ev = constants::angular_frequency_to_ev(omega);
    // The eV -> rad/s -> eV round trip can land an ulp outside the grid; give
    // the endpoints a few ulps of slack and clamp, so that querying exactly
    // omega_min()/omega_max() always succeeds. No actual extrapolation occurs.
    const double ev_lo = t.energy_ev.front(), ev_hi = t.energy_ev.back();
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, ev_hi);
    if (ev < ev_lo - slack || ev > ev_hi + slack)
        throw RangeError("permittivity: " + std::to_string(ev) + " eV outside table coverage [" +
                         std::to_string(ev_lo) + ", " + std::to_string(ev_hi) +
                         "] eV; no extrapolation");
    ev = std::clamp(ev, ev_lo, ev_hi);
    const auto it = std::upper_bound(t.energy_ev.begin(), t.energy_ev.end(), ev);
    if (it == t.energy_ev.end()) return t.eps.back();
    const auto hi = static_cast<size_t>(it - t.energy_ev.begin());
    if (hi == 0) return t.eps.front();
    const double w = (ev - t.energy_ev[hi - 1]) / (t.energy_ev[hi] - t.energy_ev[hi - 1]);
    return t.eps[hi - 1] * (1.0 - w) + t.eps[hi] * w;
}

complexd permittivity(const LorentzModel& m, double omega) {
    if (omega < 0.0) throw DomainError("permittivity: omega must be >= 0");
    validate(m);
    complexd acc(m.eps_inf, 0.0);
    for (const auto& o : m.oscillators)
        acc += o.f / complexd(o.omega0 * o.omega0 - omega * omega, -o.gamma * omega);
    return acc;
}

complexd permittivity(const Medium& med, double omega) {
    return std::visit([omega](const auto& m) { return permittivity(m, omega); }, med);
}

double permittivity_imag_axis(const DielectricTable& t, double xi) {
    if (xi < 0.0) throw DomainError("permittivity_imag_axis: xi must be >= 0");
    if (!t.xi.empty()) {
        if (xi < t.xi.front() || xi > t.xi.back())
            throw RangeError("permittivity_imag_axis: xi outside stored imaginary-axis coverage");
        const auto it = std::upper_bound(t.xi.begin(), t.xi.end(), xi);
        if (it == t.xi.end()) return t.eps_xi.back();
        const auto hi = static_cast<size_t>(it - t.xi.begin());
        if (hi == 0) return t.eps_xi.front();
        const double w = (xi - t.xi[hi - 1]) / (t.xi[hi] - t.xi[hi - 1]);
        return t.eps_xi[hi - 1] * (1.0 - w) + t.eps_xi[hi] * w;
    }
    // Kramers-Kronig from the tabulated absorption, trapezoid on the grid.
    double acc = 0.0;
    double w_prev = 0.0, g_prev = 0.0;
    for (size_t k = 0; k < t.energy_ev.size(); ++k) {
        const double w = constants::ev_to_angular_frequency(t.energy_ev[k]);
        const double g = w * t.eps[k].imag() / (w * w + xi * xi);
        if (k > 0) acc += 0.5 * (g + g_prev) * (w - w_prev);
        w_prev = w;
        g_prev = g;
    }
    return 1.0 + (2.0 / std::numbers::pi) * acc;
}

double permittivity_imag_axis(const LorentzModel& m, double xi) {
    if (xi < 0.0) throw DomainError("permittivity_imag_axis: xi must be >= 0");
    validate(m);
    double acc = m.eps_inf;
    for (const auto& o : m.oscillators)
        acc += o.f / (o.omega0 * o.omega0 + xi * xi + o.gamma * xi);
    return acc;
}

double permittivity_imag_axis(const Medium& med, double xi) {
    return std::visit([xi](const auto& m) { return permittivity_imag_axis(m, xi); }, med);
}

std::string medium_id(const Medium& med) {
    return std::visit([](const auto& m) { return m.id; }, med);
}

complexd fresnel_rp_nonret(complexd eps) {
    if (std::abs(eps + 1.0) < 1e-14 * (1.0 + std::abs(eps)))
        throw PoleError("fresnel_rp_nonret: eps = -1 is the surface-mode pole");
    return (eps - 1.0) / (eps + 1.0);
}

} // namespace srfid
