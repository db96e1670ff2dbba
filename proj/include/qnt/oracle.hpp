#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qnt/core.hpp"
#include "qnt/dists.hpp"

// Brute-force density-matrix verifier for the closed forms in dists. Dense
// complex matrices, hard-capped at 6 qubits; never used by estimators.
namespace qnt::oracle {

using Cplx = std::complex<double>;
using DensityMatrix = Eigen::MatrixXcd;

constexpr int kMaxQubits = 6;

enum class MeasBasis { Z, X, GHZ };

/// Number of qubits held at end-nodes after a circuit (n-1 for M/RI, n for IE/BF).
int circuit_qubits(Circuit kind, int n);

/// The measurement basis realizing a dists::Basis for a given circuit.
MeasBasis meas_basis_for(Circuit kind, Basis basis);

/// theta_e * rho + (1 - theta_e) * X_qubit rho X_qubit.
DensityMatrix apply_bitflip(const DensityMatrix& rho, int qubit, double theta_e);

/// Apply a one-qubit gate to `qubit` of rho (qubit 0 is the leftmost label bit).
DensityMatrix apply_one_qubit(const DensityMatrix& rho, int qubit,
                              const Eigen::Matrix2cd& gate);

/// CNOT with one control and a set of targets, applied to rho.
DensityMatrix apply_cnot(const DensityMatrix& rho, int control,
                         const std::vector<int>& targets);

/// Exact joint state of the end-node qubits after running the distribution
/// circuit across an n-channel star with bit-flip channels.
DensityMatrix run_circuit(CircuitId circuit, int n, const Eigen::Ref<const Vector>& theta);

/// The GHZ basis vector |Phi_s> written in the computational basis.
Eigen::VectorXcd ghz_vector(const BitString& s);

/// |<x+|Phi_s>|^2 = 1/2^{n-1} when parity(x) = s_0, else 0.
double ghz_overlap(const BitString& x, const BitString& s);

/// Born-rule outcome distribution of rho in a product Z/X basis or the GHZ basis.
OutcomeDistribution born_distribution(const DensityMatrix& rho, MeasBasis basis);

}  // namespace qnt::oracle
