#include "btops/sections.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace btops {

namespace {
constexpr int kMaxDimension = 512;   // desk scale
constexpr int kAssemblyBlock = 1024;  // quadrature nodes per GEMM block
}  // namespace

MonomialBasis monomial_basis(int k, int N) {
    if (k < 1 || N < 1) throw ValidationError("monomial basis needs k, N >= 1");
    MonomialBasis basis;
    basis.n = k * N;
    basis.exponents.reserve(basis.n + 1);
    for (int j = 0; j <= basis.n; ++j)
        basis.exponents.push_back({basis.n - j, j});
    return basis;
}

Eigen::VectorXcd monomial_values(int n, const HomogeneousRep& x) {
    Eigen::VectorXcd m(n + 1);
    // Power chains: m_j = z0^(n-j) z1^j. Underflow far from a monomial's
    // latitude of concentration is benign.
    std::vector<std::complex<double>> p0(n + 1), p1(n + 1);
    p0[0] = 1.0;
    p1[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        p0[i] = p0[i - 1] * x.z0;
        p1[i] = p1[i - 1] * x.z1;
    }
    for (int j = 0; j <= n; ++j) m[j] = p0[n - j] * p1[j];
    return m;
}

Eigen::VectorXcd weighted_monomials(const ModelGeometry& geom, int N,
                                    const SpherePoint& y,
                                    const HomogeneousRep& x) {
    Eigen::VectorXcd m = monomial_values(geom.degree() * N, x);
    if (!geom.round()) {
        m *= std::exp(-0.5 * static_cast<double>(N) *
                      geom.perturbation().value(y));
    }
    return m;
}

Eigen::MatrixXcd weighted_pairing(
    const ModelGeometry& geom, int N, const QuadratureRule& rule,
    const std::function<double(const SpherePoint&)>* f) {
    const int n = geom.degree() * N;
    const int dim = n + 1;
    const auto total = static_cast<Eigen::Index>(rule.nodes.size());

    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd block(dim, kAssemblyBlock);
    Eigen::VectorXd coef(kAssemblyBlock);

    Eigen::Index q = 0;
    while (q < total) {
        const Eigen::Index width =
            std::min<Eigen::Index>(kAssemblyBlock, total - q);
        for (Eigen::Index b = 0; b < width; ++b) {
            const auto& node = rule.nodes[q + b];
            const auto x = sphere_to_homogeneous(node.point);
            block.col(b) = weighted_monomials(geom, N, node.point, x);
            double c = node.weight * volume_density(geom, node.point);
            if (f) {
                const double fv = (*f)(node.point);
                if (!std::isfinite(fv))
                    throw NonFiniteIntegrand(
                        "pairing multiplier not finite at a quadrature node");
                c *= fv;
            }
            coef[b] = c;
        }
        auto V = block.leftCols(width);
        // Rows carry the conjugated slot: P_ab = sum w rho f conj(m_a) m_b.
        P.noalias() +=
            (V * coef.head(width).asDiagonal()).conjugate() * V.transpose();
        q += width;
    }
    return P;
}

Eigen::MatrixXcd gram_matrix(const ModelGeometry& geom, int N,
                             const QuadratureRule& rule) {
    Eigen::MatrixXcd G = weighted_pairing(geom, N, rule, nullptr);
    G = 0.5 * (G + G.adjoint()).eval();
    return G;
}

std::vector<double> closed_form_norms(int k, int N) {
    const int n = k * N;
    std::vector<double> norms(n + 1);
    // norms_j = 2 pi k (n-j)! j! / (n+1)!, by the stable ratio recurrence.
    double v = 2.0 * std::numbers::pi * k / (n + 1);
    for (int j = 0; j <= n; ++j) {
        norms[j] = v;
        if (j < n) v *= static_cast<double>(j + 1) / static_cast<double>(n - j);
    }
    return norms;
}

SectionBasis orthonormal_basis(const ModelGeometry& geom, int N,
                               const QuadratureRule& rule) {
    const int n = geom.degree() * N;
    if (n + 1 > kMaxDimension) {
        std::ostringstream msg;
        msg << "section space dimension " << n + 1 << " exceeds the desk-scale cap "
            << kMaxDimension;
        throw ValidationError(msg.str());
    }

    Eigen::MatrixXcd G = gram_matrix(geom, N, rule);
    const int dim = n + 1;

    Eigen::VectorXd d = G.diagonal().real();
    for (int i = 0; i < dim; ++i) {
        if (!(d[i] > 0.0) || !std::isfinite(d[i]))
            throw GramNotPositiveDefinite("non-positive Gram diagonal");
    }
    const Eigen::VectorXd dinv = d.cwiseSqrt().cwiseInverse();

    // Equilibrate, factor, undo: C = D^{-1/2} Lhat^{-H}.
    Eigen::MatrixXcd Geq = dinv.asDiagonal() * G * dinv.asDiagonal();
    Geq = 0.5 * (Geq + Geq.adjoint()).eval();
    Eigen::LLT<Eigen::MatrixXcd> llt(Geq);
    if (llt.info() != Eigen::Success)
        throw GramNotPositiveDefinite("Cholesky factorization failed");

    Eigen::MatrixXcd C = Eigen::MatrixXcd::Identity(dim, dim);
    llt.matrixU().solveInPlace(C);  // U = Lhat^H
    C = dinv.asDiagonal() * C;

    const double residual =
        ((C.adjoint() * G * C) - Eigen::MatrixXcd::Identity(dim, dim))
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-10) {
        std::ostringstream msg;
        msg << "orthonormality residual " << residual << " exceeds 1e-10";
        throw GramNotPositiveDefinite(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Geq,
                                                       Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    const double cond = (lmin > 0.0) ? lmax / lmin
                                     : std::numeric_limits<double>::infinity();

    SectionBasis basis{geom, N, n, std::move(G), std::move(C), rule, cond};
    return basis;
}

Eigen::VectorXcd eval_sections(const SectionBasis& basis,
                               const HomogeneousRep& x) {
    const double r2 = std::norm(x.z0) + std::norm(x.z1);
    if (std::abs(r2 - 1.0) > 1e-9)
        throw ValidationError("representative is not unit-normalized");
    SpherePoint y{2.0 * std::real(std::conj(x.z0) * x.z1),
                  2.0 * std::imag(std::conj(x.z0) * x.z1),
                  std::norm(x.z0) - std::norm(x.z1)};
    const Eigen::VectorXcd m = weighted_monomials(basis.geom, basis.N, y, x);
    return basis.coeff.transpose() * m;
}

}  // namespace btops
