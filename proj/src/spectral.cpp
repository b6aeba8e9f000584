#include "btops/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "btops/quadrature.hpp"

namespace btops {

double legendre(int m, double t) {
    if (m < 0 || m > 200) throw ValidationError("Legendre degree outside 0..200");
    if (m == 0) return 1.0;
    double p0 = 1.0, p1 = t;
    for (int i = 2; i <= m; ++i) {
        const double p2 = ((2.0 * i - 1.0) * t * p1 - (i - 1.0) * p0) / i;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

namespace {

// Unnormalized associated Legendre P_l^m (no Condon-Shortley phase).
double assoc_legendre(int l, int m, double t) {
    double pmm = 1.0;
    if (m > 0) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        double fact = 1.0;
        for (int i = 0; i < m; ++i) {
            pmm *= fact * s;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pmm1 = t * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmm1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = ((2.0 * ll - 1.0) * t * pmm1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmm1;
        pmm1 = pll;
    }
    return pll;
}

double factorial(int n) {
    double v = 1.0;
    for (int i = 2; i <= n; ++i) v *= i;
    return v;
}

}  // namespace

double real_spherical_harmonic(int l, int mm, const SpherePoint& y) {
    if (l < 0 || l > 8) throw ValidationError("harmonic degree outside 0..8");
    if (std::abs(mm) > l) throw ValidationError("harmonic order exceeds degree");
    const int m = std::abs(mm);
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) *
                                  factorial(l - m) / factorial(l + m));
    const double plm = assoc_legendre(l, m, y.y3);
    if (mm == 0) return norm * plm;
    const double phi = std::atan2(y.y2, y.y1);
    const double angular =
        (mm > 0) ? std::cos(m * phi) : std::sin(m * phi);
    return std::numbers::sqrt2 * norm * plm * angular;
}

double funk_hecke_chi(int m, int N) {
    if (m < 0) throw ValidationError("harmonic degree must be >= 0");
    if (N < 1) throw ValidationError("tensor power N must be >= 1");
    if (m > 2 * N) return 0.0;
    double chi = 1.0;
    for (int i = 0; i < m; ++i)
        chi *= static_cast<double>(2 * N - i) / static_cast<double>(2 * N + i + 2);
    return chi;
}

double funk_hecke_chi_quadrature(int m, int N) {
    if (m < 0 || N < 1) throw ValidationError("bad Funk-Hecke arguments");
    // (2N+1)/2 * integral of ((1+t)/2)^(2N) P_m(t) dt, at a resolution exact
    // for the degree-(2N+m) integrand.
    const int nodes = (2 * N + m) / 2 + 2;
    double acc = 0.0;
    for (const auto& g : gauss_legendre(nodes)) {
        acc += g.weight * std::pow(0.5 * (1.0 + g.node), 2 * N) *
               legendre(m, g.node);
    }
    return 0.5 * (2.0 * N + 1.0) * acc;
}

TestFunction zonal_harmonic(int l) {
    if (l < 0 || l > 8) throw ValidationError("zonal harmonic degree outside 0..8");
    // Legendre coefficient recurrence in y3, scaled to the orthonormal Y_{l,0}.
    std::vector<double> p0{1.0}, p1{0.0, 1.0};
    if (l == 0) p1 = p0;
    for (int i = 2; i <= l; ++i) {
        std::vector<double> p2(i + 1, 0.0);
        for (std::size_t j = 0; j < p1.size(); ++j)
            p2[j + 1] += (2.0 * i - 1.0) / i * p1[j];
        for (std::size_t j = 0; j < p0.size(); ++j)
            p2[j] -= (i - 1.0) / i * p0[j];
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    const std::vector<double>& coef = (l == 0) ? p0 : p1;
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi));
    std::map<TestFunction::Exponents, double> terms;
    for (std::size_t j = 0; j < coef.size(); ++j) {
        if (coef[j] != 0.0)
            terms[{0, 0, static_cast<int>(j)}] = norm * coef[j];
    }
    return TestFunction(std::move(terms));
}

SpectralTable spectral_table(int N) {
    SpectralTable table;
    table.N = N;
    table.chi.reserve(2 * N + 1);
    for (int m = 0; m <= 2 * N; ++m) table.chi.push_back(funk_hecke_chi(m, N));
    return table;
}

OperatorChi chi_via_operator(const KernelEvaluator& ev, int l,
                             const QuadratureRule& rule,
                             const ProbeGrid& grid) {
    if (!ev.basis.geom.round())
        throw ValidationError("harmonic eigenvalue measurement needs the round geometry");
    if (l < 0 || l > 200) throw ValidationError("harmonic degree outside 0..200");

    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi));
    const PointFunction Y = [l, norm](const SpherePoint& y) {
        return norm * legendre(l, y.y3);
    };

    double num = 0.0, den = 0.0;
    std::vector<double> applied(grid.points.size());
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double py = apply_PN(ev, Y, rule, grid.points[i]);
        const double yv = Y(grid.points[i]);
        applied[i] = py;
        num += py * yv;
        den += yv * yv;
    }
    OperatorChi out;
    out.chi = num / den;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        out.residual = std::max(
            out.residual, std::abs(applied[i] - out.chi * Y(grid.points[i])));
    }
    if (out.residual > 1e-7) {
        std::ostringstream msg;
        msg << "harmonic subspace not preserved: residual " << out.residual
            << " at l=" << l;
        throw EquivarianceViolation(msg.str());
    }
    return out;
}

}  // namespace btops
