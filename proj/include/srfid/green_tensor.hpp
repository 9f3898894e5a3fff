#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "srfid/errors.hpp"

namespace srfid {

using complexd = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Frame the 3x3 entries refer to. Cartesian rows/columns are (x, y, z);
// the spherical tag means the local orthonormal triad (e_r, e_theta, e_phi)
// at the evaluation point.
enum class Basis {
    cartesian,
    spherical_at_point,
};

// Dyadic Green function value at a point pair, SI units 1/m.
struct GreenTensor {
    std::array<complexd, 9> entry{};  // row-major
    Basis basis = Basis::cartesian;

    complexd& operator()(int i, int j) { return entry[static_cast<size_t>(3 * i + j)]; }
    const complexd& operator()(int i, int j) const { return entry[static_cast<size_t>(3 * i + j)]; }

    static GreenTensor diagonal(complexd d0, complexd d1, complexd d2,
                                Basis b = Basis::cartesian) {
        GreenTensor g;
        g.basis = b;
        g(0, 0) = d0;
        g(1, 1) = d1;
        g(2, 2) = d2;
        return g;
    }

    static GreenTensor isotropic(complexd v, Basis b = Basis::cartesian) {
        return diagonal(v, v, v, b);
    }

    // Entry-wise imaginary part, returned as a real-valued tensor.
    GreenTensor imag_part() const {
        GreenTensor g;
        g.basis = basis;
        for (size_t k = 0; k < 9; ++k) g.entry[k] = complexd(entry[k].imag(), 0.0);
        return g;
    }

    GreenTensor& operator+=(const GreenTensor& o) {
        if (basis != o.basis)
            throw DomainError("GreenTensor: cannot add tensors expressed in different bases");
        for (size_t k = 0; k < 9; ++k) entry[k] += o.entry[k];
        return *this;
    }

    friend GreenTensor operator+(GreenTensor a, const GreenTensor& b) { return a += b; }

    GreenTensor& operator*=(complexd s) {
        for (auto& v : entry) v *= s;
        return *this;
    }

    friend GreenTensor operator*(complexd s, GreenTensor g) { return g *= s; }
};

// d . G . d for a real vector d.
inline complexd contract(const Vec3& d, const GreenTensor& g) {
    complexd acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += d[static_cast<size_t>(i)] * g(i, j) * d[static_cast<size_t>(j)];
    return acc;
}

inline double norm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

} // namespace srfid
