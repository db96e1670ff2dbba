#pragma once

#include <array>
#include <string>
#include <vector>

#include "qnt/estimators.hpp"

namespace qnt {

enum class Protocol { IE_1STEP, BF_1STEP, IE_2STEP, BF_2STEP, RIM_2STEP, RI_NSTEP };

constexpr std::array<Protocol, 6> kAllProtocols = {
    Protocol::IE_1STEP, Protocol::BF_1STEP,  Protocol::IE_2STEP,
    Protocol::BF_2STEP, Protocol::RIM_2STEP, Protocol::RI_NSTEP};

std::string protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

/// Number of equal-size steps the copy budget is split over (1, 2, or n).
int protocol_step_count(Protocol p, int n);

struct ProtocolStep {
    CircuitId circuit;
    Basis basis = Basis::Eigen;
    int copies = 0;
};

struct ProtocolSpec {
    Protocol id = Protocol::IE_1STEP;
    int n = 0;
    int m_total = 0;
    std::vector<ProtocolStep> steps;
};

struct EstimateReport {
    Protocol id = Protocol::IE_1STEP;
    int m_total = 0;
    std::uint64_t seed = 0;
    std::vector<EstimatorResult> theta_hat;
    double err_l2 = 0.0;  // ||θ̂ - θ_true|| over clamped values
    int invalid_count = 0;
};

/// Step plan for a protocol; m_total must be divisible by the step count.
ProtocolSpec plan_protocol(Protocol id, int n, int m_total);

/// Run the protocol end to end: distribute/measure per step and wire the
/// step statistics into the protocol's estimators. With exact = true the
/// empirical frequencies are replaced by their population values (plug-in
/// mode); seed is then unused.
EstimateReport execute_protocol(const ProtocolSpec& spec, const ParamVector& theta_true,
                                std::uint64_t seed, bool exact = false);

}  // namespace qnt
