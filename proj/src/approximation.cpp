#include "btops/approximation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace btops {

namespace {

struct KernelIntegral {
    double t = 0.0;  // integral of K_N(y, .) f dV
    double e = 0.0;  // E_N(y)
};

// Direct quadrature of the kernel against f. Per node the kernel value is a
// single contraction B = <m(q), p> with p = conj(C) * u(y), so the cost is
// O(nodes * dim) after an O(dim^2) preparation.
KernelIntegral kernel_integral(const KernelEvaluator& ev, const PointFunction& f,
                               const QuadratureRule& rule, const SpherePoint& y) {
    const SectionBasis& basis = ev.basis;
    const Eigen::VectorXcd u = eval_sections(basis, sphere_to_homogeneous(y));
    const double e = u.squaredNorm();
    if (e <= 1e-14) {
        std::ostringstream msg;
        msg << "kernel density " << e << " at (" << y.y1 << ", " << y.y2 << ", "
            << y.y3 << ")";
        throw NonPositiveDensity(msg.str());
    }
    const Eigen::VectorXcd p = basis.coeff.conjugate() * u;

    double acc = 0.0;
    for (const auto& node : rule.nodes) {
        const double fv = f(node.point);
        if (!std::isfinite(fv))
            throw NonFiniteIntegrand("integrand not finite at a quadrature node");
        const auto x = sphere_to_homogeneous(node.point);
        const Eigen::VectorXcd m =
            weighted_monomials(basis.geom, basis.N, node.point, x);
        const std::complex<double> b = m.dot(p);  // B(y, node)
        acc += node.weight * volume_density(basis.geom, node.point) * fv *
               std::norm(b);
    }
    return {acc, e};
}

PointFunction as_function(const TestFunction& f) {
    return [&f](const SpherePoint& y) { return f(y); };
}

}  // namespace

double apply_tN(const KernelEvaluator& ev, const PointFunction& f,
                const QuadratureRule& rule, const SpherePoint& y) {
    return kernel_integral(ev, f, rule, y).t;
}

double apply_tN(const KernelEvaluator& ev, const TestFunction& f,
                const QuadratureRule& rule, const SpherePoint& y) {
    return apply_tN(ev, as_function(f), rule, y);
}

double apply_PN(const KernelEvaluator& ev, const PointFunction& f,
                const QuadratureRule& rule, const SpherePoint& y) {
    const auto ki = kernel_integral(ev, f, rule, y);
    return ki.t / ki.e;
}

double apply_PN(const KernelEvaluator& ev, const TestFunction& f,
                const QuadratureRule& rule, const SpherePoint& y) {
    return apply_PN(ev, as_function(f), rule, y);
}

double apply_QN(const KernelEvaluator& ev, const TestFunction& f,
                const QuadratureRule& rule, const SpherePoint& y) {
    return ev.volume / ev.dim() * apply_tN(ev, f, rule, y);
}

double apply_P0N(const KernelEvaluator& ev, const ToeplitzMatrix& T,
                 const QuadratureRule& rule, const SpherePoint& y) {
    return apply_PN(ev, T.f, rule, y) - trace_of(T) / T.dim();
}

double trace_mean_deviation(const ToeplitzMatrix& T, const ModelGeometry& geom,
                            const QuadratureRule& rule, const TestFunction& f) {
    const double vol = total_volume(geom, rule);
    const double mean = integrate(rule, as_function(f), geom) / vol;
    return std::abs(trace_of(T) / T.dim() - mean);
}

ProbeGrid ProbeGrid::latitude_longitude(int rows, int cols) {
    if (rows < 2 || cols < 1)
        throw ValidationError("probe grid needs rows >= 2 and cols >= 1");
    ProbeGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.points.reserve(static_cast<std::size_t>(rows - 2) * cols + 2);
    grid.points.push_back(SpherePoint{0.0, 0.0, 1.0});
    for (int i = 1; i + 1 < rows; ++i) {
        const double theta = std::numbers::pi * i / (rows - 1);
        for (int j = 0; j < cols; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / cols;
            grid.points.push_back(from_angles(theta, phi));
        }
    }
    grid.points.push_back(SpherePoint{0.0, 0.0, -1.0});
    return grid;
}

ProbeGrid ProbeGrid::doubled() const {
    return latitude_longitude(2 * rows, 2 * cols);
}

SweepStats error_sweep(const KernelEvaluator& ev, const ToeplitzMatrix& T,
                       const TestFunction& f, const ProbeGrid& grid) {
    SweepStats stats;
    double sum = 0.0;
    for (const auto& y : grid.points) {
        const Eigen::VectorXcd c =
            eval_sections(ev.basis, sphere_to_homogeneous(y)).conjugate();
        const double e = c.squaredNorm();
        if (e <= 1e-14) throw NonPositiveDensity("kernel density degenerate on grid");
        const double t = c.dot(T.mat * c).real();
        const double err = std::abs(t / e - f(y));
        stats.sup_error = std::max(stats.sup_error, err);
        sum += err;
    }
    stats.mean_abs_error = sum / static_cast<double>(grid.points.size());
    return stats;
}

double sup_error(const KernelEvaluator& ev, const TestFunction& f,
                 const QuadratureRule& rule, const ProbeGrid& grid) {
    const ToeplitzMatrix T = toeplitz_matrix(ev.basis, f, rule);
    return error_sweep(ev, T, f, grid).sup_error;
}

SweepStats density_ratio_sweep(const KernelEvaluator& ev,
                               const ProbeGrid& grid) {
    SweepStats stats;
    double sum = 0.0;
    const double scale = 2.0 * std::numbers::pi / ev.basis.N;
    for (const auto& y : grid.points) {
        const double e =
            eval_sections(ev.basis, sphere_to_homogeneous(y)).squaredNorm();
        const double err = std::abs(e * scale - 1.0);
        stats.sup_error = std::max(stats.sup_error, err);
        sum += err;
    }
    stats.mean_abs_error = sum / static_cast<double>(grid.points.size());
    return stats;
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& n_err) {
    if (n_err.size() < 3)
        throw DegenerateFit("rate fit needs at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [n, err] : n_err) {
        if (!(n > 0.0) || !(err > 0.0))
            throw DegenerateFit("rate fit needs positive N and errors");
        const double x = std::log(n);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(n_err.size());
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12)
        throw DegenerateFit("rate fit needs at least two distinct N");
    RateFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.constant = std::exp((sy - fit.slope * sx) / m);
    return fit;
}

ApproxReport convergence_report(const ModelGeometry& geom,
                                const TestFunction& f,
                                const std::vector<int>& N_list,
                                const ProbeGrid& grid, int extra_degree) {
    ApproxReport report;
    std::vector<std::pair<double, double>> points;
    for (int N : N_list) {
        const QuadratureRule rule = recommended_rule(N, geom, extra_degree);
        KernelEvaluator ev = make_kernel_evaluator(orthonormal_basis(geom, N, rule));
        const ToeplitzMatrix T = toeplitz_matrix(ev.basis, f, rule);
        const SweepStats stats = error_sweep(ev, T, f, grid);
        const double dev = trace_mean_deviation(T, geom, rule, f);
        report.records.push_back(
            {N, ev.dim(), stats.sup_error, stats.mean_abs_error, dev});
        points.emplace_back(static_cast<double>(N), stats.sup_error);
    }
    report.fit = rate_fit(points);
    return report;
}

}  // namespace btops
