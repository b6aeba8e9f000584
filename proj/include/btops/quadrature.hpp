#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "btops/geometry.hpp"

namespace btops {

struct GaussLegendreNode {
    double node = 0.0;
    double weight = 0.0;
};

/// Gauss-Legendre rule on [-1,1]; exact for polynomials of degree <= 2n-1.
std::vector<GaussLegendreNode> gauss_legendre(int n);

struct QuadratureNode {
    SpherePoint point;
    double weight = 0.0;  // carries the round area element; sum = 4*pi
};

/// Product rule on S^2: Gauss-Legendre in t = cos(theta) times a uniform
/// azimuthal grid. Exact for polynomials in (y1,y2,y3) of total degree
/// <= min(2*n_t - 1, n_phi - 1).
struct QuadratureRule {
    std::vector<QuadratureNode> nodes;
    int n_t = 0;
    int n_phi = 0;
    int exact_poly_degree = 0;
    bool refinement_checked = false;
};

QuadratureRule product_rule(int n_t, int n_phi);

/// Integral against dV_M = density * dA. Throws NonFiniteIntegrand if the
/// integrand is not finite at a node.
double integrate(const QuadratureRule& rule,
                 const std::function<double(const SpherePoint&)>& f,
                 const ModelGeometry& geom);
std::complex<double> integrate(
    const QuadratureRule& rule,
    const std::function<std::complex<double>(const SpherePoint&)>& f,
    const ModelGeometry& geom);

/// A rule adequate for degree-N section pairings against integrands with
/// extra_degree of extra polynomial growth. Round geometries get the exact
/// rule (degree >= 2kN + extra_degree); perturbed geometries are oversampled
/// x2 and validated by a refinement check on probe Gram entries.
QuadratureRule recommended_rule(int N, const ModelGeometry& geom,
                                int extra_degree = 0);

/// Same, starting from an explicit resolution; throws QuadratureUnderresolved
/// when probe entries keep moving after max_inflations doublings.
QuadratureRule refined_rule(int N, const ModelGeometry& geom, int extra_degree,
                            int start_n_t, int start_n_phi, int max_inflations);

}  // namespace btops
