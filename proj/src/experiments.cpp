#include "btops/experiments.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <json.hpp>

#include "btops/approximation.hpp"
#include "btops/spectral.hpp"

namespace btops {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExtraDegree = 8;
constexpr int kProbePoints = 20;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter {
    std::ofstream out;

    CsvWriter(const std::filesystem::path& path, const std::string& header) {
        out.open(path);
        if (!out) throw ValidationError("cannot write " + path.string());
        out << header << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << "\n";
    }
};

std::vector<SpherePoint> seeded_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<SpherePoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double t = unit(rng);
        const double phi = angle(rng);
        const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
        pts.push_back(SpherePoint{st * std::cos(phi), st * std::sin(phi), t});
    }
    return pts;
}

ordered_json rule_info(const QuadratureRule& rule) {
    ordered_json j;
    j["n_t"] = rule.n_t;
    j["n_phi"] = rule.n_phi;
    j["exact_poly_degree"] = rule.exact_poly_degree;
    j["refinement"] = rule.refinement_checked ? "checked" : "exact";
    return j;
}

ordered_json manifest_echo(const Manifest& m) {
    ordered_json j;
    j["experiment"] = m.experiment;
    ordered_json geom;
    geom["k"] = m.k;
    ordered_json psi = ordered_json::array();
    for (const auto& t : m.psi) {
        ordered_json term;
        term["l"] = t.l;
        term["m"] = t.m;
        term["c"] = t.c;
        psi.push_back(term);
    }
    geom["psi"] = psi;
    j["geometry"] = geom;
    j["N_list"] = m.N_list;
    ordered_json f;
    for (const auto& [e, c] : m.f.terms()) {
        std::string key;
        const char* names[3] = {"y1", "y2", "y3"};
        for (int axis = 0; axis < 3; ++axis) {
            if (e[axis] == 0) continue;
            if (!key.empty()) key += '*';
            key += names[axis];
            if (e[axis] > 1) key += '^' + std::to_string(e[axis]);
        }
        if (key.empty()) key = "1";
        f[key] = c;
    }
    j["f"] = f;
    j["grid"] = std::to_string(m.grid_rows) + "x" + std::to_string(m.grid_cols);
    j["seed"] = m.seed;
    return j;
}

struct ExperimentContext {
    const Manifest& manifest;
    ModelGeometry geom;
    ProbeGrid grid;
    std::filesystem::path out;
    ordered_json quadrature = ordered_json::object();
    ordered_json metrics = ordered_json::object();
    ordered_json flags = ordered_json::object();
};

void run_density(ExperimentContext& ctx, CsvWriter& csv) {
    std::vector<std::pair<double, double>> fitpts;
    for (int N : ctx.manifest.N_list) {
        const QuadratureRule rule = recommended_rule(N, ctx.geom, kExtraDegree);
        ctx.quadrature[std::to_string(N)] = rule_info(rule);
        KernelEvaluator ev =
            make_kernel_evaluator(orthonormal_basis(ctx.geom, N, rule));
        const SweepStats stats = density_ratio_sweep(ev, ctx.grid);
        csv.row({std::to_string(N), std::to_string(ev.dim()),
                 fmt(stats.sup_error), fmt(stats.mean_abs_error)});
        fitpts.emplace_back(N, stats.sup_error);
    }
    if (fitpts.size() >= 3) {
        const RateFit fit = rate_fit(fitpts);
        ctx.metrics["slope"] = fit.slope;
        ctx.metrics["constant"] = fit.constant;
        ctx.flags["slope_in_window"] = (fit.slope >= -1.3 && fit.slope <= -0.7);
    }
}

void run_gram_check(ExperimentContext& ctx, CsvWriter& csv) {
    bool herm_ok = true, ortho_ok = true, closed_ok = true, cond_ok = true;
    for (int N : ctx.manifest.N_list) {
        const QuadratureRule rule = recommended_rule(N, ctx.geom, kExtraDegree);
        ctx.quadrature[std::to_string(N)] = rule_info(rule);

        const Eigen::MatrixXcd raw = weighted_pairing(ctx.geom, N, rule);
        const double herm = (raw - raw.adjoint()).cwiseAbs().maxCoeff();

        SectionBasis basis = orthonormal_basis(ctx.geom, N, rule);
        const double ortho =
            ((basis.coeff.adjoint() * basis.gram * basis.coeff) -
             Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()))
                .cwiseAbs()
                .maxCoeff();

        double closed = std::numeric_limits<double>::quiet_NaN();
        if (ctx.geom.round()) {
            const auto norms = closed_form_norms(ctx.geom.degree(), N);
            closed = 0.0;
            for (int a = 0; a < basis.dim(); ++a) {
                for (int b = 0; b < basis.dim(); ++b) {
                    const double expect = (a == b) ? norms[a] : 0.0;
                    const double scale = std::sqrt(norms[a] * norms[b]);
                    closed = std::max(
                        closed, std::abs(basis.gram(a, b) - expect) / scale);
                }
            }
            closed_ok = closed_ok && closed <= 1e-12;
        }
        herm_ok = herm_ok && herm <= 1e-12;
        ortho_ok = ortho_ok && ortho <= 1e-10;
        cond_ok = cond_ok && basis.gram_condition <= 1e6;

        csv.row({std::to_string(N), std::to_string(basis.dim()), fmt(herm),
                 fmt(ortho), fmt(basis.gram_condition), fmt(closed)});
    }
    ctx.flags["hermitian_1e-12"] = herm_ok;
    ctx.flags["orthonormal_1e-10"] = ortho_ok;
    if (ctx.geom.round()) ctx.flags["closed_form_1e-12"] = closed_ok;
    ctx.flags["equilibrated_condition_1e6"] = cond_ok;
}

void run_trace_check(ExperimentContext& ctx, CsvWriter& csv) {
    bool residual_ok = true;
    for (int N : ctx.manifest.N_list) {
        const QuadratureRule rule = recommended_rule(N, ctx.geom, kExtraDegree);
        ctx.quadrature[std::to_string(N)] = rule_info(rule);
        SectionBasis basis = orthonormal_basis(ctx.geom, N, rule);
        const ToeplitzMatrix T = toeplitz_matrix(basis, ctx.manifest.f, rule);
        const double tr = trace_of(T);
        const double integral = integrate(
            rule,
            [&](const SpherePoint& y) {
                return ctx.manifest.f(y) *
                       eval_sections(basis, sphere_to_homogeneous(y))
                           .squaredNorm();
            },
            ctx.geom);
        const double residual = std::abs(tr - integral);
        const double vol = total_volume(ctx.geom, rule);
        const double fmean =
            integrate(
                rule,
                [&](const SpherePoint& y) { return ctx.manifest.f(y); },
                ctx.geom) /
            vol;
        const double tmean = tr / T.dim();
        csv.row({std::to_string(N), std::to_string(T.dim()), fmt(tr),
                 fmt(integral), fmt(residual), fmt(tmean), fmt(fmean),
                 fmt(std::abs(tmean - fmean))});
        residual_ok = residual_ok && residual <= 1e-9;
    }
    ctx.flags["trace_identity_1e-9"] = residual_ok;
}

void run_approx(ExperimentContext& ctx, CsvWriter& csv) {
    const auto pts = seeded_points(ctx.manifest.seed, kProbePoints);
    double dual_max = 0.0;
    double pn1_max = 0.0;
    for (int N : ctx.manifest.N_list) {
        const QuadratureRule rule = recommended_rule(N, ctx.geom, kExtraDegree);
        ctx.quadrature[std::to_string(N)] = rule_info(rule);
        KernelEvaluator ev =
            make_kernel_evaluator(orthonormal_basis(ctx.geom, N, rule));
        const ToeplitzMatrix T = toeplitz_matrix(ev.basis, ctx.manifest.f, rule);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const SpherePoint& y = pts[i];
            const double tn = apply_tN(ev, ctx.manifest.f, rule, y);
            const double en = density_E(ev, y);
            const double pn = tn / en;
            const double qn = ev.volume / ev.dim() * tn;
            const double p0k = pn - trace_of(T) / T.dim();
            const double p0m = moment_map_value(ev.basis, T, y);
            dual_max = std::max(dual_max, std::abs(p0k - p0m));
            const double one = apply_PN(ev, TestFunction::constant(1.0), rule, y);
            pn1_max = std::max(pn1_max, std::abs(one - 1.0));
            csv.row({std::to_string(N), std::to_string(i), fmt(y.y1), fmt(y.y2),
                     fmt(y.y3), fmt(ctx.manifest.f(y)), fmt(pn), fmt(qn),
                     fmt(tn), fmt(en), fmt(p0k), fmt(p0m)});
        }
    }
    ctx.metrics["dual_path_max_diff"] = dual_max;
    ctx.metrics["PN_constant_max_error"] = pn1_max;
    ctx.flags["dual_path_1e-10"] = dual_max <= 1e-10;
    ctx.flags["PN_reproduces_constants_1e-10"] = pn1_max <= 1e-10;
}

void run_convergence(ExperimentContext& ctx, CsvWriter& csv) {
    ApproxReport report;
    std::vector<std::pair<double, double>> fitpts;
    for (int N : ctx.manifest.N_list) {
        const QuadratureRule rule = recommended_rule(N, ctx.geom, kExtraDegree);
        ctx.quadrature[std::to_string(N)] = rule_info(rule);
        KernelEvaluator ev =
            make_kernel_evaluator(orthonormal_basis(ctx.geom, N, rule));
        const ToeplitzMatrix T = toeplitz_matrix(ev.basis, ctx.manifest.f, rule);
        const SweepStats stats = error_sweep(ev, T, ctx.manifest.f, ctx.grid);
        const double dev = trace_mean_deviation(T, ctx.geom, rule, ctx.manifest.f);
        csv.row({std::to_string(N), std::to_string(ev.dim()),
                 fmt(stats.sup_error), fmt(stats.mean_abs_error), fmt(dev)});
        fitpts.emplace_back(N, stats.sup_error);
    }
    if (fitpts.size() >= 3) {
        const RateFit fit = rate_fit(fitpts);
        ctx.metrics["slope"] = fit.slope;
        ctx.metrics["constant"] = fit.constant;
        ctx.flags["slope_in_window"] = (fit.slope >= -1.2 && fit.slope <= -0.8);
    }
}

void run_spectrum(ExperimentContext& ctx, CsvWriter& csv) {
    bool chi0_ok = true, oracle_ok = true, operator_ok = true, below_one = true;
    for (int N : ctx.manifest.N_list) {
        const bool with_operator = ctx.geom.round() && N <= 8;
        std::optional<KernelEvaluator> ev;
        QuadratureRule oprule;
        if (with_operator) {
            oprule = recommended_rule(N, ctx.geom, 2 * N + 3);
            ctx.quadrature[std::to_string(N)] = rule_info(oprule);
            ev = make_kernel_evaluator(orthonormal_basis(ctx.geom, N, oprule));
        }
        const SpectralTable table = spectral_table(N);
        for (int m = 0; m <= 2 * N; ++m) {
            const double closed = table.chi[m];
            const double oracle = funk_hecke_chi_quadrature(m, N);
            double opval = std::numeric_limits<double>::quiet_NaN();
            double opres = std::numeric_limits<double>::quiet_NaN();
            if (with_operator) {
                const OperatorChi oc = chi_via_operator(*ev, m, oprule, ctx.grid);
                opval = oc.chi;
                opres = oc.residual;
                operator_ok = operator_ok && std::abs(opval - closed) <= 1e-8;
            }
            if (m == 0) chi0_ok = chi0_ok && std::abs(closed - 1.0) <= 1e-12;
            if (m >= 1) below_one = below_one && closed < 1.0 - 1e-9;
            oracle_ok = oracle_ok && std::abs(closed - oracle) <= 1e-10;
            csv.row({std::to_string(N), std::to_string(m), fmt(closed),
                     fmt(oracle), fmt(opval), fmt(opres)});
        }
    }
    ctx.flags["chi0_equals_1"] = chi0_ok;
    ctx.flags["closed_form_matches_quadrature_1e-10"] = oracle_ok;
    ctx.flags["operator_matches_closed_form_1e-8"] = operator_ok;
    ctx.flags["contraction_below_one"] = below_one;
}

void run_dual_path(ExperimentContext& ctx, CsvWriter& csv) {
    const auto pts = seeded_points(ctx.manifest.seed, kProbePoints);
    double dual_max = 0.0;
    for (int N : ctx.manifest.N_list) {
        const QuadratureRule rule = recommended_rule(N, ctx.geom, kExtraDegree);
        ctx.quadrature[std::to_string(N)] = rule_info(rule);
        KernelEvaluator ev =
            make_kernel_evaluator(orthonormal_basis(ctx.geom, N, rule));
        const ToeplitzMatrix T = toeplitz_matrix(ev.basis, ctx.manifest.f, rule);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double p0k = apply_P0N(ev, T, rule, pts[i]);
            const double p0m = moment_map_value(ev.basis, T, pts[i]);
            const double diff = std::abs(p0k - p0m);
            dual_max = std::max(dual_max, diff);
            csv.row({std::to_string(N), std::to_string(i), fmt(pts[i].y1),
                     fmt(pts[i].y2), fmt(pts[i].y3), fmt(p0k), fmt(p0m),
                     fmt(diff)});
        }
    }
    ctx.metrics["dual_path_max_diff"] = dual_max;
    ctx.flags["dual_path_1e-10"] = dual_max <= 1e-10;
}

const std::map<std::string, std::string> kHeaders = {
    {"density", "N,d_N,sup_abs_ratio_minus_1,mean_abs_ratio_minus_1"},
    {"gram-check",
     "N,d_N,hermiticity_residual,orthonormality_residual,gram_condition,"
     "closed_form_max_rel_error"},
    {"trace-check",
     "N,d_N,trace,integral_EN_f,residual,trace_mean,f_mean,deviation"},
    {"approx", "N,point,y1,y2,y3,f,P_N_f,Q_N_f,t_N_f,E_N,P0_N_kernel,P0_N_moment"},
    {"convergence", "N,d_N,sup_error,mean_abs_error,trace_mean_deviation"},
    {"spectrum", "N,m,chi_closed_form,chi_quadrature,chi_operator,operator_residual"},
    {"dual-path", "N,point,y1,y2,y3,P0_N_kernel,P0_N_moment,abs_diff"}};

}  // namespace

bool run_experiment(const Manifest& manifest) {
    if (manifest.experiment.empty() || !known_experiment(manifest.experiment))
        throw ValidationError("unknown experiment '" + manifest.experiment + "'");

    ExperimentContext ctx{
        manifest, make_geometry(manifest.k, Perturbation(manifest.psi)),
        ProbeGrid::latitude_longitude(manifest.grid_rows, manifest.grid_cols),
        std::filesystem::path(manifest.out_dir)};

    std::filesystem::create_directories(ctx.out);
    CsvWriter csv(ctx.out / (manifest.experiment + ".csv"),
                  kHeaders.at(manifest.experiment));

    if (manifest.experiment == "density") run_density(ctx, csv);
    else if (manifest.experiment == "gram-check") run_gram_check(ctx, csv);
    else if (manifest.experiment == "trace-check") run_trace_check(ctx, csv);
    else if (manifest.experiment == "approx") run_approx(ctx, csv);
    else if (manifest.experiment == "convergence") run_convergence(ctx, csv);
    else if (manifest.experiment == "spectrum") run_spectrum(ctx, csv);
    else run_dual_path(ctx, csv);

    ordered_json summary;
    summary["manifest"] = manifest_echo(manifest);
    summary["quadrature"] = ctx.quadrature;
    summary["metrics"] = ctx.metrics;
    summary["pass"] = ctx.flags;

    bool all_ok = true;
    for (const auto& [key, val] : ctx.flags.items())
        all_ok = all_ok && val.get<bool>();
    summary["all_passed"] = all_ok;

    std::ofstream js(ctx.out / "summary.json");
    if (!js) throw ValidationError("cannot write summary.json");
    js << summary.dump(2) << "\n";
    return all_ok;
}

}  // namespace btops
