#include "btops/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "btops/quadrature.hpp"
#include "btops/spectral.hpp"

namespace btops {

namespace {
constexpr double kCurvatureFloor = 1e-9;
}

SpherePoint from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return SpherePoint{st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

std::complex<double> pairing(const HomogeneousRep& x, const HomogeneousRep& xp) {
    return x.z0 * std::conj(xp.z0) + x.z1 * std::conj(xp.z1);
}

HomogeneousRep sphere_to_homogeneous(const SpherePoint& y) {
    // cos(theta/2), sin(theta/2) straight from y3; azimuth 0 at the poles.
    const double c = std::sqrt(std::max(0.0, (1.0 + y.y3) / 2.0));
    const double s = std::sqrt(std::max(0.0, (1.0 - y.y3) / 2.0));
    double phi = 0.0;
    if (y.y1 != 0.0 || y.y2 != 0.0) phi = std::atan2(y.y2, y.y1);
    return HomogeneousRep{{c, 0.0}, std::polar(s, phi)};
}

Perturbation::Perturbation(std::vector<PerturbationTerm> terms)
    : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.l < 1 || t.l > 4) {
            std::ostringstream msg;
            msg << "perturbation degree l=" << t.l << " outside 1..4";
            throw ValidationError(msg.str());
        }
        if (std::abs(t.m) > t.l) {
            std::ostringstream msg;
            msg << "perturbation order |m|=" << std::abs(t.m) << " exceeds l="
                << t.l;
            throw ValidationError(msg.str());
        }
    }
}

double Perturbation::value(const SpherePoint& y) const {
    double v = 0.0;
    for (const auto& t : terms_) v += t.c * real_spherical_harmonic(t.l, t.m, y);
    return v;
}

double Perturbation::laplacian(const SpherePoint& y) const {
    double v = 0.0;
    for (const auto& t : terms_) {
        v += t.c * static_cast<double>(-t.l * (t.l + 1)) *
             real_spherical_harmonic(t.l, t.m, y);
    }
    return v;
}

int Perturbation::max_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.l);
    return d;
}

double volume_density(const ModelGeometry& geom, const SpherePoint& y) {
    const double rho =
        0.5 * (static_cast<double>(geom.degree()) + geom.perturbation().laplacian(y));
    if (rho <= kCurvatureFloor) {
        std::ostringstream msg;
        msg << "curvature density " << rho << " at (" << y.y1 << ", " << y.y2
            << ", " << y.y3 << ")";
        throw NonPositiveCurvature(msg.str());
    }
    return rho;
}

ModelGeometry make_geometry(int k, Perturbation psi) {
    if (k < 1) throw ValidationError("bundle degree k must be >= 1");
    ModelGeometry geom(k, std::move(psi));

    // Positivity sweep over a 64x64 validation grid (Gauss-Legendre latitudes,
    // uniform azimuths), the same node layout quadrature rules use.
    const auto lat = gauss_legendre(64);
    constexpr int n_phi = 64;
    for (const auto& gl : lat) {
        const double st = std::sqrt(std::max(0.0, 1.0 - gl.node * gl.node));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            const SpherePoint y{st * std::cos(phi), st * std::sin(phi), gl.node};
            volume_density(geom, y);  // throws NonPositiveCurvature on failure
        }
    }
    return geom;
}

double total_volume(const ModelGeometry& geom, const QuadratureRule& rule) {
    return integrate(
        rule, [](const SpherePoint&) { return 1.0; }, geom);
}

}  // namespace btops
