#include "srfid/fidelity.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <utility>

#include "srfid/constants.hpp"
#include "srfid/dielectric.hpp"
#include "srfid/green_free.hpp"
#include "srfid/green_planar.hpp"
#include "srfid/special_functions.hpp"

namespace srfid {

namespace {

constexpr double pi = std::numbers::pi;

double ratio_sigma(double num, double den, const char* who) {
    if (!(den > 0.0))
        throw DegenerateModeDensityError(std::string(who) +
                                         ": coincidence mode density is not positive");
    return 1.0 + num / den;
}

} // namespace

double sigma_free(double x, double omega) {
    if (x < 0.0) throw DomainError("sigma_free: separation must be >= 0");
    if (omega < 0.0) throw DomainError("sigma_free: omega must be >= 0");
    const double k0 = omega / constants::c;
    return 1.0 + specfun::sinc(k0 * x);
}

double sigma_plane(double x, double z, double omega, complexd eps) {
    if (x < 0.0) throw DomainError("sigma_plane: separation must be >= 0");
    if (!(z > 0.0)) throw DomainError("sigma_plane: height must be > 0");
    if (!(omega > 0.0)) throw DomainError("sigma_plane: omega must be > 0");

    const complexd rp = fresnel_rp_nonret(eps);
    // Every non-retarded planar entry is rp times a real factor, so a real rp
    // contributes nothing to the imaginary parts: exact free-space reduction.
    if (rp.imag() == 0.0) return sigma_free(x, omega);

    const double k0 = omega / constants::c;
    const double free_coin = k0 / (6.0 * pi);
    const double num = free_coin * specfun::sinc(k0 * x) +
                       g1_planar_zz_twopoint_nonret(x, z, omega, eps).imag();
    const double den = free_coin + g1_planar_coincident_nonret(z, omega, eps)(2, 2).imag();
    return ratio_sigma(num, den, "sigma_plane");
}

double sigma_plane_small_lambda(double x, double z, double omega, complexd eps) {
    if (!(z > 0.0)) throw DomainError("sigma_plane_small_lambda: height must be > 0");
    if (!(x > 0.0 && z / x < 1.0))
        throw DomainError("sigma_plane_small_lambda: requires z/x < 1");
    if (!(omega > 0.0)) throw DomainError("sigma_plane_small_lambda: omega must be > 0");
    const double im_rp = fresnel_rp_nonret(eps).imag();
    if (im_rp == 0.0)
        throw DegenerateModeDensityError(
            "sigma_plane_small_lambda: Im r_p = 0 (transparent surface) is outside the "
            "Taylor form");
    const double k0 = omega / constants::c;
    const double k0z = k0 * z;
    return 1.0 + (sigma_free(x, omega) - 1.0) * 8.0 * k0z * k0z * k0z / (3.0 * im_rp);
}

double sigma_sphere(const SphereGeometry& geom, double omega, complexd eps,
                    const MieSeriesControl& ctl) {
    validate(geom);
    validate(ctl);
    if (!(omega > 0.0)) throw DomainError("sigma_sphere: omega must be > 0");

    const double chord = geom.chord();
    // The non-retarded multipole terms are (eps-1)/(l(eps+1)+1) times real
    // factors; real eps makes their imaginary parts vanish identically.
    if (eps.imag() == 0.0) return sigma_free(chord, omega);

    const double k0 = omega / constants::c;
    const double free_coin = k0 / (6.0 * pi);
    const double coin_rr =
        g_sphere_coincident_nonret(geom.r(), omega, geom.radius, eps, ctl)(0, 0).imag();
    const double cross_rr = g_sphere_rr_twopoint_nonret(geom, omega, eps, ctl).imag();
    const double num = free_coin * specfun::sinc(k0 * chord) + cross_rr;
    const double den = free_coin + coin_rr;
    return ratio_sigma(num, den, "sigma_sphere");
}

FidelityCurve scan(const std::function<double(double)>& generator,
                   const std::vector<double>& grid, std::string parameter_name,
                   std::string geometry, double omega, std::string medium_id,
                   int max_threads) {
    if (!generator) throw DomainError("scan: empty generator");
    if (grid.empty()) throw RangeError("scan: empty parameter grid");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw RangeError("scan: parameter grid must be strictly increasing");

    FidelityCurve curve;
    curve.parameter_name = std::move(parameter_name);
    curve.geometry = std::move(geometry);
    curve.omega = omega;
    curve.medium_id = std::move(medium_id);
    curve.samples.resize(grid.size());

    auto eval_point = [&](size_t i) {
        ScanPoint& pt = curve.samples[i];
        pt.parameter = grid[i];
        try {
            pt.sigma = generator(grid[i]);
            pt.ok = std::isfinite(pt.sigma);
            if (!pt.ok) {
                pt.sigma = std::numeric_limits<double>::quiet_NaN();
                pt.error = "non-finite sigma";
            }
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.sigma = std::numeric_limits<double>::quiet_NaN();
            pt.error = e.what();
        }
    };

    size_t n_threads = max_threads > 0 ? static_cast<size_t>(max_threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, grid.size());

    if (n_threads <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) eval_point(i);
        return curve;
    }

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
            eval_point(i);
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return curve;
}

} // namespace srfid
