#pragma once

#include <Eigen/Dense>

#include "btops/sections.hpp"
#include "btops/test_function.hpp"

namespace btops {

/// Compression of multiplication by f to the section space, in the
/// orthonormal basis. Hermitian for real f.
struct ToeplitzMatrix {
    Eigen::MatrixXcd mat;
    int N = 1;
    TestFunction f;

    int dim() const { return static_cast<int>(mat.rows()); }
};

/// Entries T_jk = <f s_k, s_j>_{L2}, assembled with the given rule.
ToeplitzMatrix toeplitz_matrix(const SectionBasis& basis, const TestFunction& f,
                               const QuadratureRule& rule);

double trace_of(const ToeplitzMatrix& T);

/// |tr T - integral of E_N * f dV_M|, the integral taken by independent
/// node-wise quadrature.
double trace_identity_residual(const ToeplitzMatrix& T,
                               const SectionBasis& basis,
                               const QuadratureRule& rule);

/// T - (tr T / dim) * Id.
ToeplitzMatrix traceless(const ToeplitzMatrix& T);

/// Moment-map pairing evaluated through the coherent state at y:
///   <T c, c>/|c|^2 - tr T / dim,
/// the value of the trace-free symbol at the projectivized evaluation
/// functional. Throws NonPositiveDensity when |c|^2 degenerates.
double moment_map_value(const SectionBasis& basis, const ToeplitzMatrix& T,
                        const SpherePoint& y);

}  // namespace btops
