#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "btops/geometry.hpp"
#include "btops/quadrature.hpp"

namespace btops {

/// Degree-n monomials z0^(n-j) z1^j, j = 0..n, spanning the holomorphic
/// sections of the degree-n bundle. Index 0 concentrates at the north pole.
struct MonomialBasis {
    int n = 0;
    std::vector<std::array<int, 2>> exponents;  // (z0 power, z1 power)
    int dim() const { return n + 1; }
};

MonomialBasis monomial_basis(int k, int N);

/// Raw monomial values at a unit representative.
Eigen::VectorXcd monomial_values(int n, const HomogeneousRep& x);

/// Monomial values carrying the metric factor e^{-N psi/2}; their squared
/// moduli are the pointwise h^N-norms of the monomial sections.
Eigen::VectorXcd weighted_monomials(const ModelGeometry& geom, int N,
                                    const SpherePoint& y,
                                    const HomogeneousRep& x);

/// L2 pairing matrix of the weighted monomials against an optional real
/// multiplier: P_ab = sum_q w_q rho_q f_q conj(m_a(q)) m_b(q). Rows are the
/// conjugated slot, so C^H P C expresses the pairing in a C-column basis.
Eigen::MatrixXcd weighted_pairing(
    const ModelGeometry& geom, int N, const QuadratureRule& rule,
    const std::function<double(const SpherePoint&)>* f = nullptr);

/// Gram matrix of the monomial sections under (h^N, dV_M).
Eigen::MatrixXcd gram_matrix(const ModelGeometry& geom, int N,
                             const QuadratureRule& rule);

/// Round-case norms 2*pi*k * a!(n-a)!/(n+1)!, indexed like the monomials.
std::vector<double> closed_form_norms(int k, int N);

/// Orthonormal basis of the degree-kN sections: columns of coeff express the
/// orthonormal sections over the monomials, conj-transpose(coeff)*gram*coeff = I.
struct SectionBasis {
    ModelGeometry geom;
    int N = 1;
    int n = 1;  // kN
    Eigen::MatrixXcd gram;
    Eigen::MatrixXcd coeff;
    QuadratureRule rule;
    double gram_condition = 1.0;  // of the diagonally equilibrated Gram

    int dim() const { return n + 1; }
};

/// Cholesky orthonormalization (diagonally equilibrated). Throws
/// GramNotPositiveDefinite when the factorization or the residual check
/// fails, which in practice flags underresolved quadrature.
SectionBasis orthonormal_basis(const ModelGeometry& geom, int N,
                               const QuadratureRule& rule);

/// Equivariant values s_j(x) of the orthonormal sections; |s_j(x)| is the
/// h^N-norm at the base point and the phase rotates with weight kN.
Eigen::VectorXcd eval_sections(const SectionBasis& basis,
                               const HomogeneousRep& x);

}  // namespace btops
