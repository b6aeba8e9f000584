#pragma once

#include <vector>

#include "btops/approximation.hpp"
#include "btops/kernels.hpp"
#include "btops/test_function.hpp"

namespace btops {

/// Legendre polynomial P_m(t) by the three-term recurrence, m <= 200.
double legendre(int m, double t);

/// Real spherical harmonics, orthonormal against the round area measure:
/// integral of Y_{l,m} Y_{l',m'} dA = delta. l <= 8.
double real_spherical_harmonic(int l, int mm, const SpherePoint& y);

/// Eigenvalue of the round smoothing operator on degree-m harmonics.
/// chi_{0} = 1, chi_{m+1} = chi_m (2N - m)/(2N + m + 2); zero for m > 2N.
double funk_hecke_chi(int m, int N);

/// The same eigenvalue by brute-force quadrature of the zonal kernel
/// against P_m, 2 pi (2N+1)/(4 pi) * integral ((1+t)/2)^{2N} P_m(t) dt.
double funk_hecke_chi_quadrature(int m, int N);

/// Y_{l,0} as a polynomial in y3 (l <= 8), for Toeplitz-side use.
TestFunction zonal_harmonic(int l);

struct SpectralTable {
    int N = 1;
    std::vector<double> chi;  // chi[m], m = 0..2N
};

SpectralTable spectral_table(int N);

struct OperatorChi {
    double chi = 0.0;
    double residual = 0.0;  // max |P_N Y - chi Y| over the grid
};

/// Measures the harmonic eigenvalue by applying the operator to Y_{l,0} on a
/// grid and regressing. Round geometry only. Throws EquivarianceViolation if
/// the residual exceeds 1e-7 (the operator must preserve each harmonic
/// subspace).
OperatorChi chi_via_operator(const KernelEvaluator& ev, int l,
                             const QuadratureRule& rule,
                             const ProbeGrid& grid);

}  // namespace btops
