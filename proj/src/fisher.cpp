#include "qnt/fisher.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnt {

FisherMatrix cfim(const OutcomeDistribution& dist, const DistGradient& grad,
                  double eps) {
    if (dist.width != grad.width)
        throw std::invalid_argument("cfim: distribution and gradient widths differ");
    const auto n = grad.partials.cols();
    FisherMatrix f = FisherMatrix::Zero(n, n);
    for (Eigen::Index s = 0; s < dist.probs.size(); ++s) {
        const double p = dist.probs[s];
        if (p <= eps) continue;
        const auto row = grad.partials.row(s);
        f.noalias() += (row.transpose() * row) / p;
    }
    return f;
}

FisherMatrix protocol_qfim(const ProtocolSpec& spec,
                           const Eigen::Ref<const Vector>& theta) {
    for (Eigen::Index j = 0; j < theta.size(); ++j)
        if (!(theta[j] > 0.0 && theta[j] < 1.0))
            throw std::invalid_argument(
                "protocol_qfim: theta must lie strictly inside (0, 1)");
    FisherMatrix f = FisherMatrix::Zero(theta.size(), theta.size());
    for (const ProtocolStep& step : spec.steps) {
        const OutcomeDistribution dist =
            meas_dist(step.circuit, step.basis, spec.n, theta);
        const DistGradient grad =
            meas_dist_grad(step.circuit, step.basis, spec.n, theta);
        f += static_cast<double>(step.copies) * cfim(dist, grad);
    }
    return f;
}

QcrbResult qcrb_trace(const FisherMatrix& f, double kappa_max) {
    QcrbResult out;
    Eigen::SelfAdjointEigenSolver<FisherMatrix> solver(f);
    const Vector& ev = solver.eigenvalues();
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    out.condition_number =
        lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    out.singular = !(out.condition_number < kappa_max);
    if (!out.singular) out.trace_inv = ev.cwiseInverse().sum();
    return out;
}

}  // namespace qnt
