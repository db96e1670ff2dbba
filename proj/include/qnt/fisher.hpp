#pragma once

#include <Eigen/Dense>

#include "qnt/dists.hpp"
#include "qnt/protocols.hpp"

namespace qnt {

using FisherMatrix = Eigen::MatrixXd;

/// Trace of the inverse information matrix with singularity diagnostics.
struct QcrbResult {
    double trace_inv = 0.0;  // meaningful only when !singular
    double condition_number = 0.0;
    bool singular = false;
};

constexpr double kZeroOutcomeEps = 1e-14;
constexpr double kConditionCap = 1e12;

/// F_ij = sum over outcomes with p(s) > eps of (1/p) ∂p/∂θ_i ∂p/∂θ_j.
FisherMatrix cfim(const OutcomeDistribution& dist, const DistGradient& grad,
                  double eps = kZeroOutcomeEps);

/// Weighted per-step information: sum_i m_i * cfim(step_i) over the
/// protocol's measured distributions. Requires theta in the open cube.
FisherMatrix protocol_qfim(const ProtocolSpec& spec,
                           const Eigen::Ref<const Vector>& theta);

QcrbResult qcrb_trace(const FisherMatrix& f, double kappa_max = kConditionCap);

}  // namespace qnt
