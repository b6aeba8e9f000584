#pragma once

#include <complex>

#include <Eigen/Dense>

#include "btops/sections.hpp"

namespace btops {

/// Evaluates the reproducing kernel of the section space and its descendants:
/// the circle-bundle kernel B, the density E_N on the base, the squared-modulus
/// kernel K_N, and coherent states.
struct KernelEvaluator {
    SectionBasis basis;
    double volume = 0.0;  // total dV_M mass under basis.rule

    int dim() const { return basis.dim(); }
};

KernelEvaluator make_kernel_evaluator(SectionBasis basis);

/// B(x, x') = sum_j s_j(x) conj(s_j(x')); conj(B(x', x)) = B(x, x').
std::complex<double> bergman_B(const KernelEvaluator& ev,
                               const HomogeneousRep& x,
                               const HomogeneousRep& xp);

/// E_N(y) = sum_j |s_j(x)|^2, independent of the representative phase.
/// Throws NonPositiveDensity if the value degenerates (<= 1e-14).
double density_E(const KernelEvaluator& ev, const SpherePoint& y);

/// K_N(y, y') = |B(x, x')|^2, phase-invariant and symmetric.
double kernel_K(const KernelEvaluator& ev, const SpherePoint& y,
                const SpherePoint& yp);

/// Coefficients conj(s_j(x)) of the coherent state at x in the orthonormal
/// basis; the squared norm equals E_N at the base point.
Eigen::VectorXcd coherent_state(const KernelEvaluator& ev,
                                const HomogeneousRep& x);

}  // namespace btops
