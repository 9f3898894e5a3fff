// pybind11 bindings for the srfid core: Green tensors, Mie coefficients,
// emitter rates and shifts, and the fidelity pipeline.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srfid/constants.hpp"
#include "srfid/dielectric.hpp"
#include "srfid/emitters.hpp"
#include "srfid/fidelity.hpp"
#include "srfid/green_free.hpp"
#include "srfid/green_planar.hpp"
#include "srfid/green_sphere.hpp"
#include "srfid/special_functions.hpp"

namespace py = pybind11;
using namespace srfid;

namespace {

// 3x3 nested list copy of a GreenTensor for ergonomic Python access.
std::vector<std::vector<complexd>> tensor_entries(const GreenTensor& g) {
    std::vector<std::vector<complexd>> out(3, std::vector<complexd>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = g(i, j);
    return out;
}

} // namespace

PYBIND11_MODULE(_srfid, m) {
    m.doc() = "dyadic Green functions, Purcell rates, and superradiance fidelity";

    // Exception translation: typed C++ errors surface as Python exceptions.
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<FileError>(m, "FileError", PyExc_OSError);
    py::register_exception<ParseError>(m, "ParseDataError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
    py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_ValueError);
    py::register_exception<DegenerateModeDensityError>(m, "DegenerateModeDensityError",
                                                       PyExc_ArithmeticError);

    auto cst = m.def_submodule("constants", "SI constants used throughout");
    cst.attr("c") = constants::c;
    cst.attr("hbar") = constants::hbar;
    cst.attr("e") = constants::e;
    cst.attr("mu0") = constants::mu0;
    cst.attr("eps0") = constants::eps0;
    cst.attr("debye") = constants::debye;
    cst.def("ev_to_angular_frequency", &constants::ev_to_angular_frequency, py::arg("energy_ev"));
    cst.def("angular_frequency_to_ev", &constants::angular_frequency_to_ev, py::arg("omega"));

    py::enum_<Basis>(m, "Basis")
        .value("cartesian", Basis::cartesian)
        .value("spherical_at_point", Basis::spherical_at_point);

    py::class_<GreenTensor>(m, "GreenTensor")
        .def_readonly("basis", &GreenTensor::basis)
        .def("entries", &tensor_entries, "3x3 nested list of complex entries")
        .def("__getitem__",
             [](const GreenTensor& g, std::pair<int, int> ij) {
                 if (ij.first < 0 || ij.first > 2 || ij.second < 0 || ij.second > 2)
                     throw py::index_error("GreenTensor index out of range");
                 return g(ij.first, ij.second);
             })
        .def("imag_part", &GreenTensor::imag_part)
        .def("contract", [](const GreenTensor& g, const Vec3& d) { return contract(d, g); },
             py::arg("dipole"));

    // Special functions (the subset useful for cross-checks from Python).
    auto sf = m.def_submodule("specfun", "spherical special functions");
    sf.def("sph_bessel_j", &specfun::sph_bessel_j, py::arg("l"), py::arg("z"));
    sf.def("sph_hankel1", &specfun::sph_hankel1, py::arg("l"), py::arg("z"));
    sf.def("legendre_p", [](int l, double x) { return specfun::legendre_p(l, x); },
           py::arg("l"), py::arg("x"));
    sf.def("sinc", &specfun::sinc, py::arg("x"));

    // Dielectric data.
    py::class_<DielectricTable>(m, "DielectricTable")
        .def_readonly("energy_ev", &DielectricTable::energy_ev)
        .def_readonly("eps", &DielectricTable::eps)
        .def_readonly("id", &DielectricTable::id)
        .def("omega_min", &DielectricTable::omega_min)
        .def("omega_max", &DielectricTable::omega_max);
    py::class_<LorentzOscillator>(m, "LorentzOscillator")
        .def(py::init([](double f, double omega0, double gamma) {
                 return LorentzOscillator{f, omega0, gamma};
             }),
             py::arg("f"), py::arg("omega0"), py::arg("gamma"))
        .def_readwrite("f", &LorentzOscillator::f)
        .def_readwrite("omega0", &LorentzOscillator::omega0)
        .def_readwrite("gamma", &LorentzOscillator::gamma);
    py::class_<LorentzModel>(m, "LorentzModel")
        .def(py::init<>())
        .def_readwrite("eps_inf", &LorentzModel::eps_inf)
        .def_readwrite("oscillators", &LorentzModel::oscillators)
        .def_readwrite("id", &LorentzModel::id);
    m.def("load_dielectric_table_file", &load_dielectric_table_file, py::arg("path"));
    m.def("permittivity",
          [](const DielectricTable& t, double omega) { return permittivity(t, omega); },
          py::arg("table"), py::arg("omega"));
    m.def("permittivity",
          [](const LorentzModel& t, double omega) { return permittivity(t, omega); },
          py::arg("model"), py::arg("omega"));
    m.def("fresnel_rp_nonret", &fresnel_rp_nonret, py::arg("eps"));

    // Free-space Green function.
    m.def("g0_full", &g0_full, py::arg("separation"), py::arg("omega"));
    m.def("g0_im_twopoint", &g0_im_twopoint, py::arg("rho"), py::arg("omega"));
    m.def("g0_im_coincident", &g0_im_coincident, py::arg("omega"));

    // Planar half-space (non-retarded).
    m.def("fresnel_coefficients",
          [](double k_par, double omega, complexd eps1, complexd eps2) {
              const auto fc = fresnel_coefficients(k_par, omega, eps1, eps2);
              return py::make_tuple(fc.rs, fc.rp);
          },
          py::arg("k_par"), py::arg("omega"), py::arg("eps1"), py::arg("eps2"));
    m.def("g1_planar_coincident_nonret", &g1_planar_coincident_nonret, py::arg("z"),
          py::arg("omega"), py::arg("eps"));
    m.def("g1_planar_zz_twopoint_nonret", &g1_planar_zz_twopoint_nonret, py::arg("x"),
          py::arg("z"), py::arg("omega"), py::arg("eps"));

    // Sphere (Mie).
    py::class_<MieSeriesControl>(m, "MieSeriesControl")
        .def(py::init([](double tol, int l_max_cap) {
                 MieSeriesControl c{tol, l_max_cap};
                 validate(c);
                 return c;
             }),
             py::arg("tol") = 1e-10, py::arg("l_max_cap") = 200)
        .def_readwrite("tol", &MieSeriesControl::tol)
        .def_readwrite("l_max_cap", &MieSeriesControl::l_max_cap);
    py::class_<SphereGeometry>(m, "SphereGeometry")
        .def(py::init([](double radius, double height, double theta_sep) {
                 SphereGeometry g{radius, height, theta_sep};
                 validate(g);
                 return g;
             }),
             py::arg("radius"), py::arg("height"), py::arg("theta_sep"))
        .def_static("from_arc", &SphereGeometry::from_arc, py::arg("radius"),
                    py::arg("height"), py::arg("arc"))
        .def_readonly("radius", &SphereGeometry::radius)
        .def_readonly("height", &SphereGeometry::height)
        .def_readonly("theta_sep", &SphereGeometry::theta_sep)
        .def("r", &SphereGeometry::r)
        .def("arc", &SphereGeometry::arc)
        .def("chord", &SphereGeometry::chord);
    m.def("mie_rs", &mie_rs, py::arg("l"), py::arg("omega"), py::arg("radius"), py::arg("eps"));
    m.def("mie_rp", &mie_rp, py::arg("l"), py::arg("omega"), py::arg("radius"), py::arg("eps"));
    m.def("mie_rp_nonret", &mie_rp_nonret, py::arg("l"), py::arg("omega"), py::arg("radius"),
          py::arg("eps"));
    m.def(
        "g_sphere_coincident",
        [](double r, double omega, double radius, complexd eps, const MieSeriesControl& ctl) {
            return g_sphere_coincident(r, omega, radius, eps, ctl, nullptr);
        },
        py::arg("r"), py::arg("omega"), py::arg("radius"), py::arg("eps"),
        py::arg("ctl") = MieSeriesControl{});
    m.def(
        "g_sphere_coincident_nonret",
        [](double r, double omega, double radius, complexd eps, const MieSeriesControl& ctl) {
            return g_sphere_coincident_nonret(r, omega, radius, eps, ctl, nullptr);
        },
        py::arg("r"), py::arg("omega"), py::arg("radius"), py::arg("eps"),
        py::arg("ctl") = MieSeriesControl{});
    m.def(
        "g_sphere_rr_twopoint_nonret",
        [](const SphereGeometry& g, double omega, complexd eps, const MieSeriesControl& ctl) {
            return g_sphere_rr_twopoint_nonret(g, omega, eps, ctl, nullptr);
        },
        py::arg("geometry"), py::arg("omega"), py::arg("eps"),
        py::arg("ctl") = MieSeriesControl{});
    m.def(
        "g_sphere_rr_twopoint_retarded",
        [](const SphereGeometry& g, double omega, complexd eps, const MieSeriesControl& ctl) {
            return g_sphere_rr_twopoint_retarded(g, omega, eps, ctl, nullptr);
        },
        py::arg("geometry"), py::arg("omega"), py::arg("eps"),
        py::arg("ctl") = MieSeriesControl{});

    // Emitters: rates, shifts, rotational averages.
    py::class_<Emitter>(m, "Emitter")
        .def(py::init([](double omega_t, const Vec3& dipole, const Vec3& position) {
                 Emitter e{omega_t, dipole, position};
                 validate(e);
                 return e;
             }),
             py::arg("omega_t"), py::arg("dipole"),
             py::arg("position") = Vec3{0.0, 0.0, 0.0})
        .def_readwrite("omega_t", &Emitter::omega_t)
        .def_readwrite("dipole", &Emitter::dipole)
        .def_readwrite("position", &Emitter::position);
    py::class_<RateResult>(m, "RateResult")
        .def_readonly("gamma_free", &RateResult::gamma_free)
        .def_readonly("gamma_env", &RateResult::gamma_env)
        .def("total", &RateResult::total);
    m.def("transition_rate", &transition_rate, py::arg("emitter"), py::arg("imG"));
    m.def("einstein_a_rate", &einstein_a_rate, py::arg("emitter"));
    m.def("purcell_rates", &purcell_rates, py::arg("emitter"), py::arg("imG_scattering"));
    py::class_<FrequencyGrid>(m, "FrequencyGrid")
        .def(py::init([](double omega_min, double omega_max) {
                 FrequencyGrid g{omega_min, omega_max};
                 validate(g);
                 return g;
             }),
             py::arg("omega_min"), py::arg("omega_max"))
        .def_readwrite("omega_min", &FrequencyGrid::omega_min)
        .def_readwrite("omega_max", &FrequencyGrid::omega_max);
    m.def("pv_shift_integral", &pv_shift_integral, py::arg("weighted"), py::arg("omega_kn"),
          py::arg("grid"));
    m.def(
        "frequency_shift",
        [](const Emitter& em, const std::function<GreenTensor(double)>& imG,
           const FrequencyGrid& grid) { return frequency_shift(em, imG, grid); },
        py::arg("emitter"), py::arg("imG_of_omega"), py::arg("grid"));
    m.def("rot_avg_planar_coincident", &rot_avg_planar_coincident, py::arg("dipole"));
    m.def("rot_avg_planar_cross", &rot_avg_planar_cross, py::arg("dipole"));
    m.def("rot_avg_sphere", &rot_avg_sphere, py::arg("a_r"), py::arg("a_phi"), py::arg("dipole"));

    // Fidelity pipeline.
    m.def("sigma_free", &sigma_free, py::arg("x"), py::arg("omega"));
    m.def("sigma_plane", &sigma_plane, py::arg("x"), py::arg("z"), py::arg("omega"),
          py::arg("eps"));
    m.def("sigma_plane_small_lambda", &sigma_plane_small_lambda, py::arg("x"), py::arg("z"),
          py::arg("omega"), py::arg("eps"));
    m.def(
        "sigma_sphere",
        [](const SphereGeometry& g, double omega, complexd eps, const MieSeriesControl& ctl) {
            return sigma_sphere(g, omega, eps, ctl);
        },
        py::arg("geometry"), py::arg("omega"), py::arg("eps"),
        py::arg("ctl") = MieSeriesControl{});
    py::class_<ScanPoint>(m, "ScanPoint")
        .def_readonly("parameter", &ScanPoint::parameter)
        .def_readonly("sigma", &ScanPoint::sigma)
        .def_readonly("ok", &ScanPoint::ok)
        .def_readonly("error", &ScanPoint::error);
    py::class_<FidelityCurve>(m, "FidelityCurve")
        .def_readonly("parameter_name", &FidelityCurve::parameter_name)
        .def_readonly("geometry", &FidelityCurve::geometry)
        .def_readonly("omega", &FidelityCurve::omega)
        .def_readonly("medium_id", &FidelityCurve::medium_id)
        .def_readonly("samples", &FidelityCurve::samples);
    m.def("scan", &scan, py::arg("generator"), py::arg("grid"), py::arg("parameter_name"),
          py::arg("geometry"), py::arg("omega"), py::arg("medium_id"),
          py::arg("max_threads") = 1, py::call_guard<py::gil_scoped_release>(),
          "Evaluate generator over the grid. The GIL is released while the "
          "scan runs and re-acquired for each generator call, so "
          "max_threads > 1 serialises on Python generators; it defaults to 1.");
}
