#pragma once

#include <functional>
#include <string>
#include <vector>

#include "srfid/errors.hpp"
#include "srfid/green_sphere.hpp"

namespace srfid {

// sigma = 1 + sinc(k0 x); the free-space superradiance fidelity of two
// emitters separated by x. Series-safe for k0 x -> 0 (-> 2 exactly).
double sigma_free(double x, double omega);

// sigma in front of a planar half-space of permittivity eps (non-retarded
// reflection), both emitters at height z, lateral separation x:
//   1 + [Im G0_zz(x) + Im G_pl,zz(x)] / [Im G0_zz(0) + Im G_pl,zz(0)].
// Im r_p = 0 reduces exactly to sigma_free (transparent surface). A
// non-positive denominator raises DegenerateModeDensityError.
double sigma_plane(double x, double z, double omega, complexd eps);

// Closed small-lambda Taylor form 1 + (sigma_fs - 1) 8 k0^3 z^3 / (3 Im r_p),
// exposed for comparison plots. Requires z/x < 1 and Im r_p != 0.
double sigma_plane_small_lambda(double x, double z, double omega, complexd eps);

// sigma for two emitters on a sphere of radius R at height z, separated by
// the polar angle in geom. The free-space terms use the chord distance
// 2 (R+z) sin(theta/2); the scattering terms use the non-retarded rr series.
double sigma_sphere(const SphereGeometry& geom, double omega, complexd eps,
                    const MieSeriesControl& ctl = {});

struct ScanPoint {
    double parameter = 0.0;
    double sigma = 0.0;
    bool ok = false;
    std::string error;  // diagnostic when !ok; sigma is NaN then
};

struct FidelityCurve {
    std::string parameter_name;  // includes the unit, e.g. "x_m"
    std::string geometry;        // "free" | "plane" | "sphere"
    double omega = 0.0;
    std::string medium_id;
    std::vector<ScanPoint> samples;  // one per grid point, grid order
};

// Evaluates generator over a strictly increasing, non-empty grid. Failures at
// isolated points are captured per point instead of aborting the scan.
// max_threads <= 0 selects the hardware default; points are assembled in grid
// order regardless of completion order.
FidelityCurve scan(const std::function<double(double)>& generator,
                   const std::vector<double>& grid, std::string parameter_name,
                   std::string geometry, double omega, std::string medium_id,
                   int max_threads = 0);

} // namespace srfid
