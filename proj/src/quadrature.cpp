#include "btops/quadrature.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "btops/sections.hpp"

namespace btops {

std::vector<GaussLegendreNode> gauss_legendre(int n) {
    if (n < 1) throw ValidationError("Gauss-Legendre node count must be >= 1");
    std::vector<GaussLegendreNode> out(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pn1 = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = {-std::abs(x), w};
        out[n - 1 - i] = {std::abs(x), w};
    }
    if (n % 2 == 1) out[n / 2].node = 0.0;
    return out;
}

QuadratureRule product_rule(int n_t, int n_phi) {
    if (n_t < 1 || n_phi < 1)
        throw ValidationError("product rule needs n_t >= 1 and n_phi >= 1");
    QuadratureRule rule;
    rule.n_t = n_t;
    rule.n_phi = n_phi;
    rule.exact_poly_degree = std::min(2 * n_t - 1, n_phi - 1);
    rule.nodes.reserve(static_cast<std::size_t>(n_t) * n_phi);
    const auto gl = gauss_legendre(n_t);
    const double wphi = 2.0 * std::numbers::pi / n_phi;
    for (const auto& g : gl) {
        const double st = std::sqrt(std::max(0.0, 1.0 - g.node * g.node));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = wphi * j;
            rule.nodes.push_back(
                {SpherePoint{st * std::cos(phi), st * std::sin(phi), g.node},
                 g.weight * wphi});
        }
    }
    return rule;
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(const SpherePoint&)>& f,
                 const ModelGeometry& geom) {
    double acc = 0.0;
    for (const auto& node : rule.nodes) {
        const double v = f(node.point);
        if (!std::isfinite(v))
            throw NonFiniteIntegrand("integrand not finite at a quadrature node");
        acc += node.weight * volume_density(geom, node.point) * v;
    }
    return acc;
}

std::complex<double> integrate(
    const QuadratureRule& rule,
    const std::function<std::complex<double>(const SpherePoint&)>& f,
    const ModelGeometry& geom) {
    std::complex<double> acc = 0.0;
    for (const auto& node : rule.nodes) {
        const std::complex<double> v = f(node.point);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteIntegrand("integrand not finite at a quadrature node");
        acc += node.weight * volume_density(geom, node.point) * v;
    }
    return acc;
}

namespace {

// Monomial pairing probes used by the refinement check: diagonal entries at
// three representative indices and one near-diagonal entry, all scale-free.
struct ProbeValues {
    double diag[3];
    double offdiag;
};

ProbeValues probe_entries(const ModelGeometry& geom, int N,
                          const QuadratureRule& rule) {
    const int n = geom.degree() * N;
    const int idx[3] = {0, n / 4, n / 2};
    const int ob = std::min(2, n);

    double diag[3] = {0.0, 0.0, 0.0};
    double diag0 = 0.0, diagb = 0.0;
    std::complex<double> off = 0.0;
    for (const auto& node : rule.nodes) {
        const auto x = sphere_to_homogeneous(node.point);
        const auto m = monomial_values(n, x);
        const double w = node.weight * volume_density(geom, node.point) *
                         std::exp(-static_cast<double>(N) *
                                  geom.perturbation().value(node.point));
        for (int i = 0; i < 3; ++i) diag[i] += w * std::norm(m[idx[i]]);
        diag0 += w * std::norm(m[0]);
        diagb += w * std::norm(m[ob]);
        off += w * std::conj(m[0]) * m[ob];
    }
    ProbeValues pv{};
    for (int i = 0; i < 3; ++i) pv.diag[i] = diag[i];
    const double scale = std::sqrt(std::max(diag0 * diagb, 1e-300));
    pv.offdiag = std::abs(off) / scale;
    return pv;
}

bool probes_stable(const ProbeValues& a, const ProbeValues& b) {
    for (int i = 0; i < 3; ++i) {
        const double denom = std::max({std::abs(a.diag[i]), std::abs(b.diag[i]), 1e-300});
        if (std::abs(a.diag[i] - b.diag[i]) / denom > 1e-9) return false;
    }
    return std::abs(a.offdiag - b.offdiag) <= 1e-9;
}

}  // namespace

QuadratureRule refined_rule(int N, const ModelGeometry& geom, int extra_degree,
                            int start_n_t, int start_n_phi, int max_inflations) {
    int n_t = start_n_t;
    int n_phi = start_n_phi;
    for (int round = 0; round <= max_inflations; ++round) {
        QuadratureRule rule = product_rule(n_t, n_phi);
        const QuadratureRule doubled = product_rule(2 * n_t, 2 * n_phi);
        if (probes_stable(probe_entries(geom, N, rule),
                          probe_entries(geom, N, doubled))) {
            rule.refinement_checked = true;
            return rule;
        }
        n_t *= 2;
        n_phi *= 2;
    }
    std::ostringstream msg;
    msg << "probe Gram entries still moving after " << max_inflations
        << " inflations (N=" << N << ", extra_degree=" << extra_degree << ")";
    throw QuadratureUnderresolved(msg.str());
}

QuadratureRule recommended_rule(int N, const ModelGeometry& geom,
                                int extra_degree) {
    if (N < 1) throw ValidationError("tensor power N must be >= 1");
    const int target = 2 * geom.degree() * N + std::max(extra_degree, 0);
    const int n_t = target / 2 + 1;   // 2*n_t - 1 >= target
    const int n_phi = target + 1;     // n_phi - 1 >= target
    if (geom.round()) return product_rule(n_t, n_phi);
    return refined_rule(N, geom, extra_degree, 2 * n_t, 2 * n_phi, 3);
}

}  // namespace btops
