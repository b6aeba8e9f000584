#include "btops/toeplitz.hpp"

#include <cmath>
#include <sstream>

namespace btops {

ToeplitzMatrix toeplitz_matrix(const SectionBasis& basis, const TestFunction& f,
                               const QuadratureRule& rule) {
    std::function<double(const SpherePoint&)> fn =
        [&f](const SpherePoint& y) { return f(y); };
    Eigen::MatrixXcd P = weighted_pairing(basis.geom, basis.N, rule, &fn);
    Eigen::MatrixXcd T = basis.coeff.adjoint() * P * basis.coeff;
    T = 0.5 * (T + T.adjoint()).eval();
    return ToeplitzMatrix{std::move(T), basis.N, f};
}

double trace_of(const ToeplitzMatrix& T) { return T.mat.trace().real(); }

double trace_identity_residual(const ToeplitzMatrix& T,
                               const SectionBasis& basis,
                               const QuadratureRule& rule) {
    // Node-wise integral of E_N * f, organized independently of the matrix
    // assembly: E_N per node from the orthonormal section values.
    double integral = 0.0;
    for (const auto& node : rule.nodes) {
        const Eigen::VectorXcd u =
            eval_sections(basis, sphere_to_homogeneous(node.point));
        integral += node.weight * volume_density(basis.geom, node.point) *
                    T.f(node.point) * u.squaredNorm();
    }
    return std::abs(trace_of(T) - integral);
}

ToeplitzMatrix traceless(const ToeplitzMatrix& T) {
    const double shift = trace_of(T) / T.dim();
    ToeplitzMatrix out{T.mat, T.N, T.f};
    out.mat.diagonal().array() -= shift;
    return out;
}

double moment_map_value(const SectionBasis& basis, const ToeplitzMatrix& T,
                        const SpherePoint& y) {
    const Eigen::VectorXcd c =
        eval_sections(basis, sphere_to_homogeneous(y)).conjugate();
    const double e = c.squaredNorm();
    if (e <= 1e-14) {
        std::ostringstream msg;
        msg << "kernel density " << e << " below floor in moment-map pairing";
        throw NonPositiveDensity(msg.str());
    }
    const double rayleigh = c.dot(T.mat * c).real();
    return rayleigh / e - trace_of(T) / T.dim();
}

}  // namespace btops
