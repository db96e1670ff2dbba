#pragma once

#include <string>

#include <Eigen/Core>

#include "qnt/core.hpp"

namespace qnt {

enum class Circuit { Multicast, IndependentEncoding, RootIndependent, BackAndForth };

/// Measurement basis. Eigen is the state's diagonal basis: Z for M/RI
/// states, GHZ for IE/BF states. Z and X are only distinct from Eigen for
/// the GHZ-diagonal circuits (IE/BF).
enum class Basis { Eigen, Z, X };

/// A distribution circuit together with the end-node acting as root.
/// A non-zero root is realized by swapping the roles of theta[0] and
/// theta[root]; the star is otherwise symmetric.
struct CircuitId {
    Circuit kind;
    int root = 0;
};

std::string circuit_name(Circuit c);
std::string basis_name(Basis b);
Circuit circuit_from_name(const std::string& name);
Basis basis_from_name(const std::string& name);

/// Dense table of outcome probabilities over k-bit strings, indexed by the
/// integer value of the label.
struct OutcomeDistribution {
    int width = 0;
    Vector probs;  // size 1 << width

    double prob(const BitString& s) const { return probs[s.value()]; }
};

/// Partials of every outcome probability with respect to every parameter.
/// partials(s.value(), j) = ∂p(s)/∂θ_j.
struct DistGradient {
    int width = 0;
    Eigen::MatrixXd partials;  // (1 << width) rows, n columns
};

/// Outcome width for a circuit: n-1 for M/RI, n for IE/BF.
int dist_width(Circuit kind, int n);

/// Whether (circuit, basis) is a defined measurement combination.
bool basis_defined(Circuit kind, Basis basis);

/// Eigenbasis distribution of the state distributed by `circuit` over an
/// n-channel star with parameters `theta`.
OutcomeDistribution state_dist(CircuitId circuit, int n,
                               const Eigen::Ref<const Vector>& theta);

/// Outcome distribution of measuring the distributed state in `basis`.
OutcomeDistribution meas_dist(CircuitId circuit, Basis basis, int n,
                              const Eigen::Ref<const Vector>& theta);

/// Analytic gradient of meas_dist with respect to theta.
DistGradient meas_dist_grad(CircuitId circuit, Basis basis, int n,
                            const Eigen::Ref<const Vector>& theta);

}  // namespace qnt
