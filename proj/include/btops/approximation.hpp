#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "btops/kernels.hpp"
#include "btops/toeplitz.hpp"

namespace btops {

using PointFunction = std::function<double(const SpherePoint&)>;

/// t_N f (y) = integral of K_N(y, .) f dV_M, by direct quadrature of the
/// kernel at the rule's nodes (coherent-state contraction, O(nodes * dim)).
double apply_tN(const KernelEvaluator& ev, const PointFunction& f,
                const QuadratureRule& rule, const SpherePoint& y);
double apply_tN(const KernelEvaluator& ev, const TestFunction& f,
                const QuadratureRule& rule, const SpherePoint& y);

/// P_N f = t_N f / E_N. Reproduces constants; contracts degree-m harmonics in
/// the round case.
double apply_PN(const KernelEvaluator& ev, const PointFunction& f,
                const QuadratureRule& rule, const SpherePoint& y);
double apply_PN(const KernelEvaluator& ev, const TestFunction& f,
                const QuadratureRule& rule, const SpherePoint& y);

/// Q_N f = Vol(M)/dim * t_N f; agrees with P_N on the round sphere.
double apply_QN(const KernelEvaluator& ev, const TestFunction& f,
                const QuadratureRule& rule, const SpherePoint& y);

/// Trace-free variant along the kernel route:
///   P0_N f = P_N f - tr T / dim.
/// Matches moment_map_value pointwise.
double apply_P0N(const KernelEvaluator& ev, const ToeplitzMatrix& T,
                 const QuadratureRule& rule, const SpherePoint& y);

/// |tr T / dim - mean of f over (M, dV_M)|.
double trace_mean_deviation(const ToeplitzMatrix& T, const ModelGeometry& geom,
                            const QuadratureRule& rule, const TestFunction& f);

/// Latitude-longitude evaluation grid; rows span [0, pi] inclusive of the
/// poles (stored once each).
struct ProbeGrid {
    int rows = 0;
    int cols = 0;
    std::vector<SpherePoint> points;

    static ProbeGrid latitude_longitude(int rows, int cols);
    ProbeGrid doubled() const;
};

struct SweepStats {
    double sup_error = 0.0;
    double mean_abs_error = 0.0;
};

/// Error sweep of P_N f - f over a grid. Evaluates t_N through the
/// coherent-state Rayleigh form of the assembled Toeplitz matrix, which is
/// the same quadrature sum as apply_tN regrouped for O(dim^2) per point.
SweepStats error_sweep(const KernelEvaluator& ev, const ToeplitzMatrix& T,
                       const TestFunction& f, const ProbeGrid& grid);

/// sup over the grid of |P_N f - f| (assembles the Toeplitz matrix with the
/// given rule).
double sup_error(const KernelEvaluator& ev, const TestFunction& f,
                 const QuadratureRule& rule, const ProbeGrid& grid);

/// sup and mean of |E_N * 2 pi / N - 1| over a grid (leading-order flatness
/// of the density).
SweepStats density_ratio_sweep(const KernelEvaluator& ev,
                               const ProbeGrid& grid);

struct RateFit {
    double slope = 0.0;
    double constant = 0.0;  // error ~ constant * N^slope
};

/// Least squares of log error against log N. Throws DegenerateFit with fewer
/// than 3 points or non-positive errors.
RateFit rate_fit(const std::vector<std::pair<double, double>>& n_err);

struct ApproxRecord {
    int N = 0;
    int dim = 0;
    double sup_error = 0.0;
    double mean_abs_error = 0.0;
    double trace_mean_deviation = 0.0;
};

struct ApproxReport {
    std::vector<ApproxRecord> records;
    RateFit fit;
};

/// Per-N error records for P_N f plus the fitted convergence rate.
ApproxReport convergence_report(const ModelGeometry& geom,
                                const TestFunction& f,
                                const std::vector<int>& N_list,
                                const ProbeGrid& grid, int extra_degree = 8);

}  // namespace btops
