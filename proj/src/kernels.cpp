#include "btops/kernels.hpp"

#include <sstream>

namespace btops {

KernelEvaluator make_kernel_evaluator(SectionBasis basis) {
    const double vol = total_volume(basis.geom, basis.rule);
    return KernelEvaluator{std::move(basis), vol};
}

std::complex<double> bergman_B(const KernelEvaluator& ev,
                               const HomogeneousRep& x,
                               const HomogeneousRep& xp) {
    const Eigen::VectorXcd u = eval_sections(ev.basis, x);
    const Eigen::VectorXcd up = eval_sections(ev.basis, xp);
    return up.dot(u);  // sum_j s_j(x) conj(s_j(x'))
}

double density_E(const KernelEvaluator& ev, const SpherePoint& y) {
    const Eigen::VectorXcd u = eval_sections(ev.basis, sphere_to_homogeneous(y));
    const double e = u.squaredNorm();
    if (e <= 1e-14) {
        std::ostringstream msg;
        msg << "kernel density " << e << " at (" << y.y1 << ", " << y.y2 << ", "
            << y.y3 << ")";
        throw NonPositiveDensity(msg.str());
    }
    return e;
}

double kernel_K(const KernelEvaluator& ev, const SpherePoint& y,
                const SpherePoint& yp) {
    const std::complex<double> b =
        bergman_B(ev, sphere_to_homogeneous(y), sphere_to_homogeneous(yp));
    return std::norm(b);
}

Eigen::VectorXcd coherent_state(const KernelEvaluator& ev,
                                const HomogeneousRep& x) {
    return eval_sections(ev.basis, x).conjugate();
}

}  // namespace btops
