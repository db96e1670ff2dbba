#pragma once

#include "qnt/dists.hpp"
#include "qnt/sampling.hpp"

namespace qnt {

/// Singularity guard on |1 - 2 θ̂| for the marginal-inversion estimators.
constexpr double kSingularityEps = 1e-3;

struct EstimatorResult {
    double value = 0.0;  // clamped to [0, 1] when valid
    bool valid = true;   // false iff the singularity guard fired
    bool clamped = false;
    double raw = 0.0;    // pre-clamp value
};

/// Empirical frequency of outcome bit j equal to 1.
double freq_bit_one(const Dataset& data, int j);
/// Empirical frequency of (bit 0 XOR bit j) equal to 1, j >= 1.
double freq_xor(const Dataset& data, int j);
/// Empirical frequency of odd-parity outcomes.
double freq_parity(const Dataset& data);

/// Population counterparts, evaluated on an exact (or empirical) table.
double prob_bit_one(const OutcomeDistribution& dist, int j);
double prob_xor(const OutcomeDistribution& dist, int j);
double prob_parity(const OutcomeDistribution& dist);

/// θ̂ = 1 - P̂[bit = 1]; the direct estimator for independent-Bernoulli laws.
EstimatorResult est_direct(double p_one);

/// Inversion of P[bit = 1] = θ0 + θj - 2 θ0 θj for θj given θ̂0:
/// raw = (p_one - θ̂0) / (1 - 2 θ̂0). Invalid when |1 - 2 θ̂0| < eps.
EstimatorResult invert_m_marginal(double p_one, double theta0_hat,
                                  double eps = kSingularityEps);

/// The symmetric inversion for θ0 given θ̂j, keyed on |1 - 2 θ̂j|.
EstimatorResult invert_for_theta0(double p_one, double thetaj_hat,
                                  double eps = kSingularityEps);

}  // namespace qnt
