#pragma once

#include <complex>
#include <vector>

#include "btops/errors.hpp"

namespace btops {

struct QuadratureRule;

/// Point on the unit sphere S^2 in R^3.
struct SpherePoint {
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 1.0;
};

inline double dot(const SpherePoint& a, const SpherePoint& b) {
    return a.y1 * b.y1 + a.y2 * b.y2 + a.y3 * b.y3;
}

/// Colatitude/azimuth chart, theta in [0,pi], phi in [0,2pi).
SpherePoint from_angles(double theta, double phi);

/// Unit vector (z0, z1) in C^2 lying over [z0 : z1] in the Hopf fibration.
struct HomogeneousRep {
    std::complex<double> z0{1.0, 0.0};
    std::complex<double> z1{0.0, 0.0};
};

/// Hermitian pairing <x, x'> = z0*conj(z0') + z1*conj(z1').
/// Satisfies |<x,x'>|^2 = (1 + y.y')/2 on unit representatives.
std::complex<double> pairing(const HomogeneousRep& x, const HomogeneousRep& xp);

/// Chart fixing: z0 = cos(theta/2), z1 = sin(theta/2) e^{i phi},
/// so y3 = |z0|^2 - |z1|^2 and y1 + i y2 = 2 conj(z0) z1.
/// Azimuth is taken as 0 at the poles.
HomogeneousRep sphere_to_homogeneous(const SpherePoint& y);

struct PerturbationTerm {
    int l = 1;
    int m = 0;
    double c = 0.0;
};

/// Band-limited conformal weight psi = sum c * Y_{l,m} in real orthonormal
/// spherical harmonics, degrees 1..4. The Laplacian is available exactly
/// through the -l(l+1) eigenvalues.
class Perturbation {
public:
    Perturbation() = default;
    explicit Perturbation(std::vector<PerturbationTerm> terms);

    double value(const SpherePoint& y) const;
    double laplacian(const SpherePoint& y) const;

    bool zero() const { return terms_.empty(); }
    int max_degree() const;
    const std::vector<PerturbationTerm>& terms() const { return terms_; }

private:
    std::vector<PerturbationTerm> terms_;
};

/// Polarized sphere: line bundle of degree k with metric h = h_FS^k e^{-psi},
/// Kahler form omega = i Theta(h) and volume form dV = omega.
class ModelGeometry {
public:
    int degree() const { return k_; }
    const Perturbation& perturbation() const { return psi_; }
    bool round() const { return psi_.zero(); }

private:
    ModelGeometry(int k, Perturbation psi) : k_(k), psi_(std::move(psi)) {}
    friend ModelGeometry make_geometry(int k, Perturbation psi);

    int k_ = 1;
    Perturbation psi_;
};

/// Builds the geometry and checks the curvature density on a 64x64 grid.
/// Throws NonPositiveCurvature if the density drops to <= 1e-9 anywhere.
ModelGeometry make_geometry(int k, Perturbation psi = Perturbation{});

/// Density of dV_M against the round area element dA:
///   (k + laplacian(psi))/2,
/// normalized so k = 2, psi = 0 gives 1. Throws NonPositiveCurvature at
/// values <= 1e-9.
double volume_density(const ModelGeometry& geom, const SpherePoint& y);

/// Integral of dV_M; equals 2*pi*k for every admissible perturbation.
double total_volume(const ModelGeometry& geom, const QuadratureRule& rule);

}  // namespace btops
